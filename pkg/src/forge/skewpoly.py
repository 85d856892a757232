"""The skew polynomial ring F_{q^d}{tau} with tau*lam = lam^q * tau.

Its centre is F_q[t] with t = tau^d.  Besides ring arithmetic this module
covers both Euclidean divisions, the reduced norm, the additive polynomial
phi_a(x) = sum a_i x^(q^i) attached to a skew polynomial, the correspondence
between F_q-subspaces of F_{q^d} and monic separable skew polynomials, and the
explicit linear factorization of 1 - t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ff import FFElem, FieldCtx, FieldError, frobenius_q, hilbert90_solve, trace_to_base

# ---------------------------------------------------------------------------
# skew polynomials
# ---------------------------------------------------------------------------


def _trim(vals: list[int]) -> tuple[int, ...]:
    while vals and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


class SkewPoly:
    """sum_i a_i tau^i with a_i in F_{q^d}; stored as a tuple of mid-field indices."""

    __slots__ = ("ctx", "_c", "_hash")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int | FFElem]):
        self.ctx = ctx
        mid = ctx.mid
        vals = []
        for c in coeffs:
            if isinstance(c, FFElem):
                if c.field is not mid:
                    raise FieldError(f"skew coefficient {c!r} not in {mid}")
                vals.append(c.v)
            else:
                vals.append(int(c))
        self._c = _trim(vals)
        self._hash = None

    # -- constructors
    @classmethod
    def one(cls, ctx: FieldCtx) -> "SkewPoly":
        return cls(ctx, [1])

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "SkewPoly":
        return cls(ctx, [])

    @classmethod
    def tau(cls, ctx: FieldCtx, k: int = 1) -> "SkewPoly":
        return cls(ctx, [0] * k + [1])

    @classmethod
    def one_minus_t(cls, ctx: FieldCtx) -> "SkewPoly":
        mid = ctx.mid
        return cls(ctx, [1] + [0] * (ctx.d - 1) + [mid.neg(1)])

    @classmethod
    def linear(cls, ctx: FieldCtx, a: FFElem) -> "SkewPoly":
        """1 + a*tau."""
        return cls(ctx, [1, a])

    # -- basic accessors
    @property
    def coeffs(self) -> tuple[FFElem, ...]:
        mid = self.ctx.mid
        return tuple(FFElem(mid, v) for v in self._c)

    @property
    def indices(self) -> tuple[int, ...]:
        return self._c

    @property
    def deg(self) -> int:
        """tau-degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def __getitem__(self, i: int) -> FFElem:
        return FFElem(self.ctx.mid, self._c[i] if i < len(self._c) else 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewPoly) and other.ctx is self.ctx and other._c == self._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._c)
        return self._hash

    def __lt__(self, other: "SkewPoly") -> bool:
        return (self.deg, self._c[::-1]) < (other.deg, other._c[::-1])

    # -- arithmetic
    def _check(self, other: "SkewPoly") -> None:
        if not isinstance(other, SkewPoly) or other.ctx is not self.ctx:
            raise FieldError("skew polynomials over different rings")

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        mid = self.ctx.mid
        a, b = self._c, other._c
        n = max(len(a), len(b))
        return SkewPoly(
            self.ctx,
            [mid.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)],
        )

    def __neg__(self) -> "SkewPoly":
        mid = self.ctx.mid
        return SkewPoly(self.ctx, [mid.neg(v) for v in self._c])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FFElem):
            other = SkewPoly(self.ctx, [other])
        return skew_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, FFElem):
            return skew_mul(SkewPoly(self.ctx, [other]), self)
        return NotImplemented

    def __pow__(self, k: int) -> "SkewPoly":
        out = SkewPoly.one(self.ctx)
        for _ in range(k):
            out = out * self
        return out

    def left_scale(self, c: FFElem) -> "SkewPoly":
        """c * self for a scalar c in F_{q^d}."""
        mid = self.ctx.mid
        return SkewPoly(self.ctx, [mid.mul(c.v, v) for v in self._c])

    def monic(self) -> "SkewPoly":
        if not self._c:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        return self.left_scale(FFElem(self.ctx.mid, self.ctx.mid.inv(self._c[-1])))

    def const_one(self) -> "SkewPoly":
        """Left scalar multiple with constant coefficient 1."""
        if not self._c or self._c[0] == 0:
            raise ZeroDivisionError("polynomial divisible by tau has no constant-term-1 associate")
        return self.left_scale(FFElem(self.ctx.mid, self.ctx.mid.inv(self._c[0])))

    def t_coefficients(self) -> list[list[int]]:
        """alpha_0..alpha_{d-1} in F_{q^d}[t] (index lists, low -> high) with self = sum alpha_i(t) tau^i."""
        d = self.ctx.d
        alphas: list[list[int]] = [[] for _ in range(d)]
        for k, v in enumerate(self._c):
            i, j = k % d, k // d
            a = alphas[i]
            a.extend([0] * (j + 1 - len(a)))
            a[j] = v
        return alphas

    def __str__(self) -> str:
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            v = self._c[k]
            if v:
                terms.append(f"{v}*T^{k}" if k else f"{v}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"SkewPoly({self})"

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str) -> "SkewPoly":
        from .ff import parse_poly

        return cls(ctx, parse_poly(text, var="T"))


def skew_mul(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """(lam tau^i)(mu tau^j) = lam mu^(q^i) tau^(i+j), extended bilinearly."""
    a._check(b)
    if not a._c or not b._c:
        return SkewPoly.zero(a.ctx)
    ctx = a.ctx
    mid = ctx.mid
    q = ctx.q
    out = [0] * (len(a._c) + len(b._c) - 1)
    # twisted copies sigma^i(b), one per power of tau in a
    twisted: dict[int, list[int]] = {}
    for i, av in enumerate(a._c):
        if not av:
            continue
        key = i % ctx.d
        if key not in twisted:
            twisted[key] = [frobenius_q(FFElem(mid, bv), key, q).v for bv in b._c]
        for j, bv in enumerate(twisted[key]):
            if bv:
                out[i + j] = mid.add(out[i + j], mid.mul(av, bv))
    return SkewPoly(ctx, out)


def _frob_inv_exp(ctx: FieldCtx, n: int) -> int:
    """k with sigma^k = sigma^(-n) on F_{q^d}."""
    return (-n) % ctx.d


def right_divmod(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(s, r) with a = s*b + r and deg r < deg b."""
    a._check(b)
    if not b._c:
        raise ZeroDivisionError("division by the zero skew polynomial")
    ctx = a.ctx
    mid = ctx.mid
    n = b.deg
    lead_b = FFElem(mid, b._c[-1])
    r = a
    quot = [0] * max(a.deg - n + 1, 0)
    while r.deg >= n:
        m = r.deg
        # c tau^(m-n) * b_n tau^n = c b_n^(q^(m-n)) tau^m
        c = FFElem(mid, r._c[-1]) / frobenius_q(lead_b, m - n, ctx.q)
        quot[m - n] = c.v
        r = r - skew_mul(SkewPoly(ctx, [0] * (m - n) + [c.v]), b)
    return SkewPoly(ctx, quot), r


def left_divmod(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(s, r) with a = b*s + r and deg r < deg b."""
    a._check(b)
    if not b._c:
        raise ZeroDivisionError("division by the zero skew polynomial")
    ctx = a.ctx
    mid = ctx.mid
    n = b.deg
    lead_b = FFElem(mid, b._c[-1])
    r = a
    quot = [0] * max(a.deg - n + 1, 0)
    while r.deg >= n:
        m = r.deg
        # b_n tau^n * c tau^(m-n) = b_n c^(q^n) tau^m
        c = frobenius_q(FFElem(mid, r._c[-1]) / lead_b, _frob_inv_exp(ctx, n), ctx.q)
        quot[m - n] = c.v
        r = r - skew_mul(b, SkewPoly(ctx, [0] * (m - n) + [c.v]))
    return SkewPoly(ctx, quot), r


def left_gcd(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Monic generator of the left ideal R*a + R*b (it right-divides a and b)."""
    a._check(b)
    if not a and not b:
        raise ZeroDivisionError("gcd of two zero polynomials")
    while b:
        _, r = right_divmod(a, b)
        a, b = b, r
    return a.monic()


# ---------------------------------------------------------------------------
# the centre F_q[t]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CenterPoly:
    """sum_i c_i t^i with c_i in F_q (base-level elements of the tower)."""

    ctx: FieldCtx
    coeffs: tuple[FFElem, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        for c in cs:
            if c.field is not self.ctx.base:
                raise FieldError(f"central coefficient {c!r} not in F_{self.ctx.q}")
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_indices(cls, ctx: FieldCtx, idx: Sequence[int]) -> "CenterPoly":
        return cls(ctx, tuple(ctx.base(int(i)) for i in idx))

    @classmethod
    def one_minus_t(cls, ctx: FieldCtx) -> "CenterPoly":
        return cls.from_indices(ctx, [1, ctx.base.neg(1)])

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(c.v for c in self.coeffs)

    def __mul__(self, other: "CenterPoly") -> "CenterPoly":
        if not self.coeffs or not other.coeffs:
            return CenterPoly(self.ctx, ())
        base = self.ctx.base
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = base.add(out[i + j], base.mul(x.v, y.v))
        return CenterPoly.from_indices(self.ctx, out)

    def __pow__(self, k: int) -> "CenterPoly":
        out = CenterPoly.from_indices(self.ctx, [1])
        for _ in range(k):
            out = out * self
        return out

    def to_skew(self) -> SkewPoly:
        """The same element as a skew polynomial (t = tau^d)."""
        d = self.ctx.d
        vals = [0] * (d * max(self.deg, 0) + 1)
        for i, c in enumerate(self.coeffs):
            vals[d * i] = self.ctx.embed(c, "mid").v
        return SkewPoly(self.ctx, vals)

    def evaluate(self, x: FFElem) -> FFElem:
        """Value at x in F_{q^d} or F_{q^{dn}}."""
        name = "mid" if x.field is self.ctx.mid else "top"
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + self.ctx.embed(c, name)
        return acc

    def __str__(self) -> str:
        from .ff import format_poly

        return format_poly(self.indices, "t")


# ---------------------------------------------------------------------------
# reduced norm via the regular representation
# ---------------------------------------------------------------------------


def _padd(F, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    return list(_trim([F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]))


def _psub(F, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return _padd(F, a, [F.neg(v) for v in b])


def _pmul(F, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return list(_trim(out))


def _pdiv_exact(F, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    lead_inv = F.inv(b[-1])
    quot = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = F.mul(r[-1], lead_inv)
        quot[k] = c
        r = _psub(F, r, [0] * k + [F.mul(c, v) for v in b])
    if r:
        raise ArithmeticError("inexact polynomial division in determinant")
    return list(_trim(quot))


def poly_det(F, M: list[list[list[int]]]) -> list[int]:
    """Determinant of a square matrix over F[t] by fraction-free (Bareiss) elimination."""
    n = len(M)
    A = [[list(e) for e in row] for row in M]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return []
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _psub(F, _pmul(F, A[k][k], A[i][j]), _pmul(F, A[i][k], A[k][j]))
                A[i][j] = _pdiv_exact(F, num, prev)
            A[i][k] = []
        prev = A[k][k]
    det = A[n - 1][n - 1]
    if sign < 0:
        det = [F.neg(v) for v in det]
    return det


def regular_matrix(a: SkewPoly) -> list[list[list[int]]]:
    """d x d matrix over F_{q^d}[t] of right multiplication by a on the basis 1, tau, ..., tau^(d-1).

    entry(r, c) = t^[c < r] * sigma^r(alpha_{(c - r) mod d}); it satisfies
    M(a*b) = M(a) M(b).
    """
    ctx = a.ctx
    d, q, mid = ctx.d, ctx.q, ctx.mid
    alphas = a.t_coefficients()
    M = []
    for r in range(d):
        row = []
        for c in range(d):
            alpha = alphas[(c - r) % d]
            entry = [frobenius_q(FFElem(mid, v), r, q).v for v in alpha]
            if c < r and entry:
                entry = [0] + entry
            row.append(list(_trim(entry)))
        M.append(row)
    return M


def reduced_norm(a: SkewPoly) -> CenterPoly:
    """rn(a) = det of the regular representation; coefficients must land in F_q."""
    ctx = a.ctx
    det = poly_det(ctx.mid, regular_matrix(a))
    try:
        return CenterPoly(ctx, tuple(ctx.to_base(FFElem(ctx.mid, v)) for v in det))
    except FieldError as exc:
        raise ArithmeticError(f"reduced norm of {a} left the centre: {exc}") from None


# ---------------------------------------------------------------------------
# additive polynomials, subspaces, flags
# ---------------------------------------------------------------------------


def phi_eval(a: SkewPoly, x: FFElem) -> FFElem:
    """phi_a(x) = sum a_i x^(q^i); coefficients are embedded into x's field if needed."""
    ctx = a.ctx
    name = "mid" if x.field is ctx.mid else "top"
    if x.field is not ctx.level(name):
        raise FieldError(f"{x!r} is neither in F_q^d nor F_q^dn")
    acc = x.field.zero
    xp = x
    for i, v in enumerate(a._c):
        if v:
            acc = acc + ctx.embed(FFElem(ctx.mid, v), name) * xp
        xp = frobenius_q(xp, 1, ctx.q)
    return acc


def rref(rows: Iterable[Sequence[int]], F) -> list[tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) over the field F, on index vectors."""
    M = [list(r) for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    out_row = 0
    for col in range(ncols):
        piv = next((i for i in range(out_row, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[out_row], M[piv] = M[piv], M[out_row]
        inv = F.inv(M[out_row][col])
        M[out_row] = [F.mul(inv, v) for v in M[out_row]]
        for i in range(len(M)):
            if i != out_row and M[i][col]:
                f = M[i][col]
                M[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(M[i], M[out_row])]
        out_row += 1
        if out_row == len(M):
            break
    return [tuple(r) for r in M[:out_row]]


def nullspace(M: Sequence[Sequence[int]], ncols: int, F) -> list[tuple[int, ...]]:
    """Basis of {x : M x = 0} over F."""
    R = rref(M, F)
    pivots = []
    for row in R:
        pivots.append(next(i for i, v in enumerate(row) if v))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [0] * ncols
        x[fcol] = 1
        for row, pc in zip(R, pivots):
            x[pc] = F.neg(row[fcol])
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True, order=True)
class Subspace:
    """An F_q-subspace of F_{q^d}: RREF basis of F_q-coordinates (F_q indices) w.r.t. ctx.mid_basis."""

    basis: tuple[tuple[int, ...], ...]
    ctx: FieldCtx = field(compare=False, repr=False)

    @classmethod
    def span(cls, ctx: FieldCtx, vectors: Iterable[FFElem | Sequence[int]]) -> "Subspace":
        rows = [ctx.coords(v) if isinstance(v, FFElem) else tuple(v) for v in vectors]
        return cls(tuple(rref(rows, ctx.base)) if rows else (), ctx)

    @classmethod
    def full(cls, ctx: FieldCtx) -> "Subspace":
        d = ctx.d
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), ctx)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_elements(self) -> list[FFElem]:
        return [self.ctx.from_coords(r) for r in self.basis]

    def elements(self) -> list[FFElem]:
        ctx = self.ctx
        vecs = self.basis_elements()
        out = []
        fq = ctx.fq_in_mid
        for combo in itertools.product(range(ctx.q), repeat=self.dim):
            acc = ctx.mid.zero
            for c, v in zip(combo, vecs):
                if c:
                    acc = acc + fq[c] * v
            out.append(acc)
        return out

    def contains(self, other: "Subspace") -> bool:
        """other <= self."""
        if other.dim > self.dim:
            return False
        return len(rref(list(self.basis) + list(other.basis), self.ctx.base)) == self.dim

    def __contains__(self, x: FFElem) -> bool:
        return len(rref(list(self.basis) + [self.ctx.coords(x)], self.ctx.base)) == self.dim

    def to_text(self) -> str:
        return ";".join(",".join(str(v) for v in row) for row in self.basis)


@dataclass(frozen=True)
class Flag:
    """Strictly increasing chain W_1 < W_2 < ... < W_r of subspaces."""

    members: tuple[Subspace, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("a flag needs at least one member")
        for small, big in zip(self.members, self.members[1:]):
            if not (small.dim < big.dim and big.contains(small)):
                raise ValueError("flag members must be strictly increasing under containment")


def phi_kernel(a: SkewPoly) -> Subspace:
    """{x in F_{q^d} : phi_a(x) = 0} as an F_q-subspace."""
    if not a:
        raise ZeroDivisionError("kernel of the zero polynomial is everything")
    ctx = a.ctx
    images = [ctx.coords(phi_eval(a, b)) for b in ctx.mid_basis]
    # sum_i c_i images[i] = 0  <=>  (images^T) c = 0
    d = ctx.d
    At = [[images[i][j] for i in range(d)] for j in range(d)]
    return Subspace.span(ctx, nullspace(At, d, ctx.base))


def phi_image(a: SkewPoly) -> Subspace:
    """phi_a(F_{q^d}) as an F_q-subspace (meaningful when a preserves F_{q^d})."""
    ctx = a.ctx
    return Subspace.span(ctx, [phi_eval(a, b) for b in ctx.mid_basis])


def subspace_poly(W: Subspace) -> SkewPoly:
    """Monic skew polynomial whose additive polynomial is prod_{v in W} (x - v)."""
    ctx = W.ctx
    mid = ctx.mid
    prod = [1]  # ordinary polynomial in x, low -> high
    for v in W.elements():
        nv = mid.neg(v.v)
        new = [0] * (len(prod) + 1)
        for i, c in enumerate(prod):
            new[i + 1] = mid.add(new[i + 1], c)
            new[i] = mid.add(new[i], mid.mul(nv, c))
        prod = new
    q = ctx.q
    qpowers = {q**i: i for i in range(W.dim + 1)}
    out = [0] * (W.dim + 1)
    for k, c in enumerate(prod):
        if not c:
            continue
        if k not in qpowers:
            raise ArithmeticError(f"subspace polynomial has a non-additive term x^{k}")
        out[qpowers[k]] = c
    if W.dim == 0:
        # prod_{v in {0}} (x - v) = x, i.e. the identity map
        return SkewPoly.one(ctx)
    return SkewPoly(ctx, out)


def factorize_by_flag(flag: Flag) -> list[SkewPoly]:
    """Factors f_1 ... f_r (left to right) of 1 - t attached to a flag ending at F_{q^d}.

    The partial products f_{r-j+1} ... f_r have kernel W_j; each factor has
    constant coefficient 1, so the product is exactly 1 - t.
    """
    members = flag.members
    ctx = members[0].ctx
    if members[-1].dim != ctx.d:
        raise ValueError("flag must end at F_{q^d}")
    if members[0].dim == 0:
        raise ValueError("flag members must be nonzero")
    partial = [subspace_poly(W).const_one() for W in members]
    factors = [partial[0]]
    for small, big in zip(partial, partial[1:]):
        s, r = right_divmod(big, small)
        if r:
            raise ArithmeticError("flag member kernel is not contained in the next one")
        factors.append(s)
    return factors[::-1]


# ---------------------------------------------------------------------------
# explicit linear factorization of 1 - t
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearFactorization:
    """x_d = 1, x_{d-1}, ..., x_1 and the factors (1 - tau)(1 - x_{d-1}^{1-q} tau)...(1 - x_1^{1-q} tau)."""

    xs: tuple[FFElem, ...]
    factors: tuple[SkewPoly, ...]
    kernels: tuple[tuple[FFElem, ...], ...]  # y-bases of the partial-product kernels

    def product(self) -> SkewPoly:
        out = SkewPoly.one(self.factors[0].ctx)
        for f in self.factors:
            out = out * f
        return out


def _independent(ctx: FieldCtx, ys: Sequence[FFElem]) -> bool:
    return len(rref([ctx.coords(y) for y in ys], ctx.base)) == len(ys)


def linear_factorization(ctx: FieldCtx) -> LinearFactorization:
    """Build x_{d-1}, ..., x_1 inductively so that every partial product has an F_q-rational kernel.

    At step k the previous kernel basis ys is known; x is the smallest nonzero
    u with Tr(y/u) = 0 for all y in ys, and the new basis is x*theta_j with
    theta_0 = 1 and theta_j - theta_j^q = ys[j-1]/x.
    """
    mid, q, d = ctx.mid, ctx.q, ctx.d
    one = mid.one
    xs = [one]
    factors = [SkewPoly(ctx, [1, mid.neg(1)])]
    ys = [one]
    kernels = [tuple(ys)]
    for k in range(1, d):
        x = next(
            (u for u in mid.units() if all(not trace_to_base(y / u, ctx) for y in ys)),
            None,
        )
        if x is None:
            raise ArithmeticError(f"no admissible x at step {k}")
        thetas = [one] + [hilbert90_solve(y / x, ctx) for y in ys]
        ys = [x * th for th in thetas]
        if not _independent(ctx, ys):
            raise ArithmeticError(f"kernel basis at step {k} is linearly dependent")
        xs.append(x)
        coeff = x ** (1 - q)
        factors.append(SkewPoly(ctx, [1, -coeff]))
        kernels.append(tuple(ys))
    return LinearFactorization(tuple(xs), tuple(factors), tuple(kernels))
