"""Exact arithmetic in the finite field tower F_p < F_q < F_{q^d} < F_{q^{dn}}.

Every level is realised directly over the prime field as F_p[u]/(m(u)) with
``m`` the lexicographically smallest monic irreducible of the right degree.
Elements are identified with their *index* ``sum(c_i * p**i)`` where ``c_i``
are the coefficients of the representative polynomial in ``u``; the index is
also the canonical text encoding and the total order used for every
tie-break in the package.

Multiplication goes through exp/log tables of a primitive element, so all
fields are assumed to be desk scale (a few thousand elements at most).
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_TABLE_ORDER = 2187  # largest field for which a full addition table is kept


class FieldError(ValueError):
    """Invalid field operation (mismatched fields, bad construction, ...)."""


# ---------------------------------------------------------------------------
# polynomials over F_p, as coefficient lists low -> high
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over F_p."""
    r = list(a)
    dm = len(m) - 1
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i] % p
        if c:
            for j in range(dm + 1):
                r[i - dm + j] = (r[i - dm + j] - c * m[j]) % p
    return _trim([c % p for c in r[:dm]] if len(r) > dm else [c % p for c in r])


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _monic_polys(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of the given degree, in index order of (c_0..c_{deg-1})."""
    for idx in range(p**degree):
        coeffs = []
        for _ in range(degree):
            idx, c = divmod(idx, p)
            coeffs.append(c)
        yield tuple(coeffs) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(p, k):
            if not _pmod(poly, g, p):
                return False
    return True


def _cache_file() -> Path | None:
    root = os.environ.get("FORGE_CACHE_DIR")
    if not root:
        return None
    return Path(root) / "irreducibles.json"


@lru_cache(maxsize=None)
def find_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of ``degree`` over F_p.

    Candidates are scanned by the index of their non-leading coefficients, so
    over F_3 the answer for degree 2 is ``t^2 + 1`` (returned as ``(1, 0, 1)``).
    When ``FORGE_CACHE_DIR`` is set, results are memoized on disk.
    """
    if degree < 1:
        raise FieldError("degree must be positive")
    key = f"{p}:{degree}"
    path = _cache_file()
    table: dict[str, list[int]] = {}
    if path is not None and path.exists():
        try:
            table = json.loads(path.read_text())
        except (OSError, ValueError):
            table = {}
        if key in table:
            return tuple(table[key])
    for cand in _monic_polys(p, degree):
        if is_irreducible(cand, p):
            if path is not None:
                table[key] = list(cand)
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(json.dumps(table, sort_keys=True))
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------


class GF:
    """The field F_p[u]/(modulus).  Use :func:`gf` to get the shared instance.

    The int-level methods (``add``, ``mul``, ...) operate on element indices
    and are what the matrix and polynomial code uses in hot loops.
    """

    def __init__(self, p: int, modulus: Sequence[int]):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = p**self.degree
        self._digits = [self._to_digits(i) for i in range(self.order)]
        self._build_log_tables()
        if self.order <= MAX_TABLE_ORDER:
            self._add = self._addition_table()
        else:
            self._add = None
        self._neg = [self._from_digits([(-c) % p for c in self._digits[i]]) for i in range(self.order)]

    # -- index <-> coefficient vector
    def _to_digits(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            idx, c = divmod(idx, self.p)
            out.append(c)
        return tuple(out)

    def _from_digits(self, digits: Sequence[int]) -> int:
        idx = 0
        for c in reversed(list(digits) + [0] * (self.degree - len(digits))):
            idx = idx * self.p + (c % self.p)
        return idx

    def _build_log_tables(self) -> None:
        n = self.order - 1
        if n == 1:  # F_2
            self.exp, self.log, self.primitive = [1], [None, 0], 1
            return
        for g in range(1, self.order):
            powers = [1]
            gd = list(self._digits[g])
            cur = [1]
            for _ in range(n - 1):
                cur = _pmod(_pmul(cur, gd, self.p), self.modulus, self.p)
                idx = self._from_digits(cur)
                if idx == 1:
                    break
                powers.append(idx)
            if len(powers) == n:
                self.exp = powers
                self.log = [None] * self.order
                for k, v in enumerate(powers):
                    self.log[v] = k
                self.primitive = g
                return
        raise AssertionError("no primitive element found")

    def _addition_table(self) -> list[list[int]]:
        import numpy as np

        digits = np.array(self._digits, dtype=np.int64).reshape(self.order, self.degree)
        weights = self.p ** np.arange(self.degree, dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        return (s @ weights).tolist()

    # -- int-level arithmetic
    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self.exp[(self.log[a] * k) % (self.order - 1)]

    def scalar(self, c: int) -> int:
        """Index of the prime-field constant ``c``."""
        return c % self.p

    # -- element-level conveniences
    def __call__(self, value: int | Sequence[int]) -> "FFElem":
        if isinstance(value, FFElem):
            if value.field is not self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise FieldError(f"index {value} out of range for {self}")
            return FFElem(self, value)
        return FFElem(self, self._from_digits(value))

    @property
    def zero(self) -> "FFElem":
        return FFElem(self, 0)

    @property
    def one(self) -> "FFElem":
        return FFElem(self, 1)

    @property
    def gen(self) -> "FFElem":
        """The class of ``u``; for a degree-1 field this is the root of the modulus."""
        if self.degree == 1:
            return FFElem(self, (-self.modulus[0]) % self.p)
        return FFElem(self, self.p)

    def elements(self) -> list["FFElem"]:
        return [FFElem(self, i) for i in range(self.order)]

    def units(self) -> list["FFElem"]:
        return [FFElem(self, i) for i in range(1, self.order)]

    def coeffs(self, x: "FFElem") -> tuple[int, ...]:
        return self._digits[x.v]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"


@lru_cache(maxsize=None)
def gf(p: int, modulus: tuple[int, ...]) -> GF:
    return GF(p, modulus)


def standard_field(p: int, degree: int) -> GF:
    """F_{p^degree} defined by the smallest monic irreducible."""
    return gf(p, find_irreducible(p, degree))


class FFElem:
    """An element of a :class:`GF`, identified by its index."""

    __slots__ = ("field", "v")

    def __init__(self, field: GF, v: int):
        self.field = field
        self.v = v

    def _coerce(self, other) -> int:
        if isinstance(other, FFElem):
            if other.field is not self.field:
                raise FieldError(f"mismatched fields {self.field} and {other.field}")
            return other.v
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.sub(o, self.v))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.div(o, self.v))

    def __pow__(self, k: int):
        return FFElem(self.field, self.field.pow(self.v, k))

    def inverse(self) -> "FFElem":
        return FFElem(self.field, self.field.inv(self.v))

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field is other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __lt__(self, other: "FFElem"):
        return self.v < other.v

    def __le__(self, other: "FFElem"):
        return self.v <= other.v

    def __bool__(self):
        return self.v != 0

    def __index__(self):
        return self.v

    def __int__(self):
        return self.v

    @property
    def index(self) -> int:
        return self.v

    def __repr__(self):
        return f"F{self.field.order}({self.v})"

    def __str__(self):
        return str(self.v)


def field_arith(x: FFElem, y: FFElem, op: str) -> FFElem:
    """Dispatch one of add/sub/mul/div/pow (``y`` is an int for pow)."""
    if op == "pow":
        return x ** int(y)
    if not isinstance(y, FFElem) or x.field is not y.field:
        raise FieldError("operands must lie in the same field")
    try:
        return {
            "add": x.__add__,
            "sub": x.__sub__,
            "mul": x.__mul__,
            "div": x.__truediv__,
        }[op](y)
    except KeyError:
        raise FieldError(f"unknown operation {op!r}") from None


# ---------------------------------------------------------------------------
# the tower
# ---------------------------------------------------------------------------


def _embedding_table(src: GF, dst: GF) -> list[int]:
    """Index table of the embedding sending src.gen to the smallest root of src.modulus in dst."""
    if src is dst:
        return list(range(src.order))
    if dst.degree % src.degree:
        raise FieldError(f"cannot embed {src} into {dst}")
    mod = src.modulus
    root = None
    for r in range(dst.order):
        acc = 0
        for c in reversed(mod):
            acc = dst.add(dst.mul(acc, r), dst.scalar(c))
        if acc == 0:
            root = r
            break
    if root is None:
        raise AssertionError("minimal polynomial has no root in the target field")
    powers = [1]
    for _ in range(src.degree - 1):
        powers.append(dst.mul(powers[-1], root))
    table = []
    for i in range(src.order):
        acc = 0
        for c, pw in zip(src._digits[i], powers):
            if c:
                acc = dst.add(acc, dst.mul(dst.scalar(c), pw))
        table.append(acc)
    return table


@dataclass(frozen=True)
class FieldCtx:
    """Configuration of the tower F_p < F_q < F_{q^d} < F_{q^{dn}} with q = p^e.

    ``base``, ``mid`` and ``top`` are the fields F_q, F_{q^d}, F_{q^{dn}}.  The
    embeddings base->mid and mid->top send the generator to the smallest root
    of its modulus; base->top is their composite so the tower commutes.
    """

    p: int
    e: int
    d: int
    n: int = 1

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"p = {self.p} is not prime")
        if self.e < 1 or self.n < 1:
            raise FieldError("e and n must be positive")
        if self.d < 2:
            raise FieldError("d must be at least 2")

    @property
    def q(self) -> int:
        return self.p**self.e

    @cached_property
    def base(self) -> GF:
        return standard_field(self.p, self.e)

    @cached_property
    def mid(self) -> GF:
        return standard_field(self.p, self.e * self.d)

    @cached_property
    def top(self) -> GF:
        return standard_field(self.p, self.e * self.d * self.n)

    @property
    def moduli(self) -> dict[str, tuple[int, ...]]:
        return {"base": self.base.modulus, "mid": self.mid.modulus, "top": self.top.modulus}

    @cached_property
    def _base_to_mid(self) -> list[int]:
        return _embedding_table(self.base, self.mid)

    @cached_property
    def _mid_to_top(self) -> list[int]:
        return _embedding_table(self.mid, self.top)

    @cached_property
    def _mid_to_base(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self._base_to_mid)}

    def level(self, name: str) -> GF:
        return {"base": self.base, "mid": self.mid, "top": self.top}[name]

    def embed(self, x: FFElem, target: str) -> FFElem:
        """Image of ``x`` in the named higher level of the tower."""
        dst = self.level(target)
        if x.field is dst:
            return x
        if x.field is self.base and target == "mid":
            return FFElem(dst, self._base_to_mid[x.v])
        if x.field is self.mid and target == "top":
            return FFElem(dst, self._mid_to_top[x.v])
        if x.field is self.base and target == "top":
            return FFElem(dst, self._mid_to_top[self._base_to_mid[x.v]])
        raise FieldError(f"cannot embed {x.field} into {dst}")

    def to_base(self, x: FFElem) -> FFElem:
        """Preimage in F_q of an element of F_{q^d} fixed by the q-Frobenius."""
        try:
            return FFElem(self.base, self._mid_to_base[x.v])
        except KeyError:
            raise FieldError(f"{x!r} does not lie in F_{self.q}") from None

    @cached_property
    def fq_in_mid(self) -> list[FFElem]:
        """The q elements of F_q inside F_{q^d}, ordered by their F_q index."""
        return [FFElem(self.mid, v) for v in self._base_to_mid]

    def in_fq(self, x: FFElem) -> bool:
        return frobenius_q(x, 1, self.q) == x

    # -- F_q-linear structure of F_{q^d}
    @cached_property
    def mid_basis(self) -> list[FFElem]:
        """F_q-basis 1, u, ..., u^{d-1} of F_{q^d}, u the generator of the mid level."""
        u = self.mid.gen
        out = [self.mid.one]
        for _ in range(self.d - 1):
            out.append(out[-1] * u)
        return out

    @cached_property
    def _coord_table(self) -> dict[int, tuple[int, ...]]:
        mid = self.mid
        table = {}
        basis = [b.v for b in self.mid_basis]
        for combo in itertools.product(range(self.q), repeat=self.d):
            acc = 0
            for c, b in zip(combo, basis):
                if c:
                    acc = mid.add(acc, mid.mul(self._base_to_mid[c], b))
            table[acc] = combo
        if len(table) != mid.order:
            raise AssertionError("mid_basis is not an F_q-basis")
        return table

    def coords(self, x: FFElem) -> tuple[int, ...]:
        """F_q-coordinates (as F_q indices) of x in F_{q^d} w.r.t. :attr:`mid_basis`."""
        return self._coord_table[x.v]

    def from_coords(self, coords: Sequence[int]) -> FFElem:
        mid = self.mid
        acc = mid.zero
        for c, b in zip(coords, self.mid_basis):
            acc = acc + FFElem(mid, self._base_to_mid[c]) * b
        return acc


@lru_cache(maxsize=None)
def field_ctx(p: int, e: int, d: int, n: int = 1) -> FieldCtx:
    return FieldCtx(p, e, d, n)


# ---------------------------------------------------------------------------
# Frobenius, trace, Hilbert 90, roots
# ---------------------------------------------------------------------------


def frobenius_q(x: FFElem, k: int, q: int) -> FFElem:
    """x^(q^k)."""
    f = x.field
    if x.v == 0:
        return x
    e = pow(q, k, f.order - 1)
    return FFElem(f, f.exp[(f.log[x.v] * e) % (f.order - 1)])


def trace_to_base(y: FFElem, ctx: FieldCtx) -> FFElem:
    """Tr_{F_{q^d}/F_q}(y), returned as an element of F_{q^d} lying in F_q."""
    acc = y.field.zero
    z = y
    for _ in range(ctx.d):
        acc = acc + z
        z = frobenius_q(z, 1, ctx.q)
    return acc


def norm_to_base(y: FFElem, ctx: FieldCtx) -> FFElem:
    acc = y.field.one
    z = y
    for _ in range(ctx.d):
        acc = acc * z
        z = frobenius_q(z, 1, ctx.q)
    return acc


def hilbert90_solve(beta: FFElem, ctx: FieldCtx) -> FFElem:
    """Smallest-index theta in F_{q^d} with theta - theta^q = beta."""
    if trace_to_base(beta, ctx):
        raise FieldError("no Hilbert-90 witness: element has nonzero trace")
    for theta in beta.field.elements():
        if theta - frobenius_q(theta, 1, ctx.q) == beta:
            return theta
    raise AssertionError("trace-zero element without a Hilbert-90 witness")


def poly_eval(coeffs: Sequence[FFElem], x: FFElem) -> FFElem:
    """Horner evaluation of sum coeffs[i] x^i (coefficients already in x's field)."""
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_roots(coeffs: Sequence[FFElem], field: GF, ctx: FieldCtx | None = None) -> list[FFElem]:
    """All roots in ``field`` of a nonzero polynomial, by exhaustive scan.

    Coefficients from a lower tower level are embedded first (needs ``ctx``).
    """
    cs = list(coeffs)
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        raise FieldError("zero polynomial has every element as a root")
    if any(c.field is not field for c in cs):
        if ctx is None:
            raise FieldError("coefficients live in another field; pass the tower")
        name = next(k for k in ("base", "mid", "top") if ctx.level(k) is field)
        cs = [ctx.embed(c, name) for c in cs]
    return [x for x in field.elements() if not poly_eval(cs, x)]


# ---------------------------------------------------------------------------
# text encodings
# ---------------------------------------------------------------------------


def format_poly(coeffs: Sequence[int | FFElem], var: str = "t") -> str:
    """``"c_k*t^k+...+c_0"`` with coefficient indices, zero terms omitted."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[k])
        if c == 0:
            continue
        terms.append(f"{c}*{var}^{k}" if k else f"{c}")
    return "+".join(terms) if terms else "0"


def parse_poly(text: str, var: str = "t") -> list[int]:
    """Inverse of :func:`format_poly`; accepts ``c*t^k``, ``c*t``, ``t^k``, ``t`` and ``c`` terms."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    out: dict[int, int] = {}
    for term in text.split("+"):
        if not term:
            raise ValueError(f"malformed polynomial {text!r}")
        if var in term:
            coef, _, power = term.partition(var)
            coef = coef.rstrip("*")
            c = int(coef) if coef else 1
            k = int(power[1:]) if power.startswith("^") else (1 if power == "" else None)
            if k is None:
                raise ValueError(f"malformed term {term!r}")
        else:
            c, k = int(term), 0
        if k in out:
            raise ValueError(f"repeated power {k} in {text!r}")
        out[k] = c
    deg = max(out)
    return [out.get(k, 0) for k in range(deg + 1)]


def iter_index_vectors(q: int, length: int) -> Iterable[tuple[int, ...]]:
    """All length-``length`` tuples over range(q), lexicographic."""
    return itertools.product(range(q), repeat=length)
