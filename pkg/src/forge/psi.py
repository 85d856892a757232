"""Reduction of the skew polynomial ring modulo f into PGL(d, F_{q^{deg f}}).

A skew polynomial a = sum alpha_i(t) tau^i maps to its regular-representation
matrix with t replaced by a root theta of f; projective classes are
represented by scaling the first nonzero entry (row-major) to 1.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from functools import cached_property

from .ff import FFElem, FieldCtx, FieldError, field_ctx, frobenius_q, parse_poly
from .skewpoly import CenterPoly, SkewPoly, reduced_norm, regular_matrix


class NotAUnitError(ArithmeticError):
    """The element reduces to a singular matrix modulo f."""


# ---------------------------------------------------------------------------
# the modulus f
# ---------------------------------------------------------------------------


def _is_irreducible_over_fq(f: CenterPoly) -> bool:
    """f monic of degree D = d*n is irreducible iff a root in F_{q^D} has a Frobenius orbit of size D."""
    ctx = f.ctx
    D = f.deg
    if D != ctx.d * ctx.n:
        raise FieldError("irreducibility test needs deg f = d*n")
    top = ctx.top
    for x in top.elements():
        if not f.evaluate(x):
            orbit = {x}
            y = frobenius_q(x, 1, ctx.q)
            while y != x:
                orbit.add(y)
                y = frobenius_q(y, 1, ctx.q)
            return len(orbit) == D
    return False


@dataclass(frozen=True)
class ModulusF:
    """Irreducible f in F_q[t] of degree d*n and its smallest root theta in F_{q^{dn}}."""

    f: CenterPoly
    theta: FFElem

    @property
    def ctx(self) -> FieldCtx:
        return self.f.ctx

    @classmethod
    def build(cls, f: CenterPoly) -> "ModulusF":
        ctx = f.ctx
        if f.deg != ctx.d * ctx.n:
            raise FieldError(f"deg f = {f.deg} must equal d*n = {ctx.d * ctx.n}")
        if f.coeffs[-1] != ctx.base.one:
            raise FieldError("f must be monic")
        if not _is_irreducible_over_fq(f):
            raise FieldError(f"f = {f} is not irreducible over F_{ctx.q}")
        roots = [x for x in ctx.top.elements() if not f.evaluate(x)]
        return cls(f, roots[0])

    def __str__(self) -> str:
        return str(self.f)


def parse_modulus(p: int, e: int, d: int, text: str) -> ModulusF:
    """``"c*t^k+..."`` (coefficients are F_q indices) or ``"auto:n"``."""
    if text.startswith("auto:"):
        n = int(text.split(":", 1)[1])
        return auto_modulus(field_ctx(p, e, d, n))
    coeffs = parse_poly(text, "t")
    D = len(coeffs) - 1
    if D % d:
        raise FieldError(f"deg f = {D} is not divisible by d = {d}")
    ctx = field_ctx(p, e, d, D // d)
    return ModulusF.build(CenterPoly.from_indices(ctx, coeffs))


def auto_modulus(ctx: FieldCtx) -> ModulusF:
    """Smallest monic irreducible over F_q of degree d*n (never t or 1 - t since d*n >= 2)."""
    import itertools

    D = ctx.d * ctx.n
    for low in itertools.product(range(ctx.q), repeat=D):
        f = CenterPoly.from_indices(ctx, tuple(reversed(low)) + (1,))
        if f.coeffs[0] and _is_irreducible_over_fq(f):
            return ModulusF.build(f)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# projective matrices
# ---------------------------------------------------------------------------


def _matmul(F, A, B):
    n = len(A)
    m = len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = 0
            for k, a in enumerate(Ai):
                if a:
                    b = B[k][j]
                    if b:
                        acc = F.add(acc, F.mul(a, b))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def matrix_det(F, rows) -> int:
    """Determinant over a field by Gaussian elimination (index arithmetic)."""
    A = [list(r) for r in rows]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for r in range(c + 1, n):
            if A[r][c]:
                f = F.mul(A[r][c], inv)
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
    return det


class ProjMatrix:
    """Invertible d x d matrix over F_{q^{dn}} modulo scalars, in canonical form."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field, rows, canonical: bool = False):
        self.field = field
        self.rows = tuple(tuple(int(v) for v in r) for r in rows) if not canonical else rows
        self._hash = hash(self.rows)

    @classmethod
    def canonical(cls, field, rows) -> "ProjMatrix":
        return proj_canonicalize(field, rows)

    @classmethod
    def identity(cls, field, d: int) -> "ProjMatrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), canonical=True)

    def __matmul__(self, other: "ProjMatrix") -> "ProjMatrix":
        return proj_canonicalize(self.field, _matmul(self.field, self.rows, other.rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def det(self) -> int:
        return matrix_det(self.field, self.rows)

    def to_text(self) -> str:
        return ";".join(",".join(str(v) for v in r) for r in self.rows)

    @classmethod
    def from_text(cls, field, text: str) -> "ProjMatrix":
        rows = [tuple(int(v) for v in r.split(",")) for r in text.split(";")]
        return proj_canonicalize(field, rows)

    def __repr__(self) -> str:
        return f"ProjMatrix({self.to_text()})"


def proj_canonicalize(field, rows) -> ProjMatrix:
    """Scale so the first nonzero entry in row-major order is 1; rejects singular matrices."""
    rows = tuple(tuple(int(v) for v in r) for r in rows)
    if matrix_det(field, rows) == 0:
        raise NotAUnitError("singular matrix has no projective class")
    first = next(v for r in rows for v in r if v)
    if first != 1:
        inv = field.inv(first)
        rows = tuple(tuple(field.mul(inv, v) for v in r) for r in rows)
    return ProjMatrix(field, rows, canonical=True)


# ---------------------------------------------------------------------------
# psi and the determinant class
# ---------------------------------------------------------------------------


def lift_matrix(a: SkewPoly, m: ModulusF) -> tuple[tuple[int, ...], ...]:
    """The regular-representation matrix of a with t -> theta (not canonicalized)."""
    ctx = m.ctx
    top = ctx.top
    theta = m.theta.v
    out = []
    for row in regular_matrix(a):
        r = []
        for entry in row:
            acc = 0
            for v in reversed(entry):
                acc = top.add(top.mul(acc, theta), ctx._mid_to_top[v])
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def psi_matrix(a: SkewPoly, m: ModulusF) -> ProjMatrix:
    try:
        return proj_canonicalize(m.ctx.top, lift_matrix(a, m))
    except NotAUnitError:
        raise NotAUnitError(f"{a} is not a unit modulo f") from None


def det_of_lift(a: SkewPoly, m: ModulusF) -> FFElem:
    """det of the uncanonicalized matrix; always equals rn(a)(theta)."""
    top = m.ctx.top
    det = FFElem(top, matrix_det(top, lift_matrix(a, m)))
    if not det:
        raise NotAUnitError(f"{a} is not a unit modulo f")
    expected = reduced_norm(a).evaluate(m.theta)
    if det != expected:
        raise ArithmeticError("determinant of the lift differs from the reduced norm at theta")
    return det


def residue_symbol(A: FFElem, d: int) -> int:
    """+1 if A is a d-th power in the multiplicative group of its field, else -1."""
    if not A:
        raise ZeroDivisionError("residue symbol of zero")
    N = A.field.order - 1
    g = math.gcd(d, N)
    return 1 if (A ** (N // g)) == 1 else -1


@dataclass(frozen=True)
class DetClasses:
    """F_Q^x modulo d-th powers, cyclic of order g = gcd(d, Q - 1); codes are discrete logs mod g."""

    field: object
    d: int

    @cached_property
    def g(self) -> int:
        return math.gcd(self.d, self.field.order - 1)

    def code(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("zero has no determinant class")
        return self.field.log[x] % self.g

    def of_matrix(self, M: ProjMatrix) -> int:
        return self.code(M.det())


def group_order_gl(d: int, Q: int) -> int:
    return math.prod(Q**d - Q**i for i in range(d))


@dataclass(frozen=True)
class ImageClass:
    kind: str  # "PSL" or "PGL"
    order: int
    symbol: int
    verified: bool  # the classification is only proven for odd q


def classify_image(m: ModulusF) -> ImageClass:
    ctx = m.ctx
    d = ctx.d
    Q = ctx.q ** (d * ctx.n)
    symbol = residue_symbol(1 - m.theta, d)
    gl = group_order_gl(d, Q)
    if symbol == 1:
        kind, order = "PSL", gl // (Q - 1) // math.gcd(d, Q - 1)
    else:
        kind, order = "PGL", gl // (Q - 1)
    verified = ctx.q % 2 == 1
    if not verified:
        warnings.warn("PSL/PGL classification assumes odd q; result unverified", stacklevel=2)
    return ImageClass(kind, order, symbol, verified)


def brute_force_is_dth_power(A: FFElem, d: int) -> bool:
    """Independent check: does X^d = A have a solution in A's field?"""
    return any(x**d == A for x in A.field.units())


def _random_skew(ctx: FieldCtx, rng: random.Random, max_deg: int) -> SkewPoly:
    deg = rng.randint(0, max_deg)
    return SkewPoly(ctx, [rng.randrange(ctx.mid.order) for _ in range(deg)] + [rng.randrange(1, ctx.mid.order)])


def psi_soundness(m: ModulusF, samples: int, seed: int, max_deg: int = 5) -> tuple[int, int, int]:
    """(homomorphism failures, det-of-lift failures, pairs tested) on random units."""
    ctx = m.ctx
    rng = random.Random(seed)
    hom_bad = det_bad = tested = 0
    while tested < samples:
        a, b = _random_skew(ctx, rng, max_deg), _random_skew(ctx, rng, max_deg)
        try:
            pa, pb, pab = psi_matrix(a, m), psi_matrix(b, m), psi_matrix(a * b, m)
        except NotAUnitError:
            continue
        tested += 1
        hom_bad += (pa @ pb) != pab
        try:
            det_of_lift(a * b, m)
        except ArithmeticError:
            det_bad += 1
    return hom_bad, det_bad, tested
