"""Generators of the Cayley group: one divisor of 1 - t per proper subspace of F_{q^d}."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .ff import FieldCtx
from .skewpoly import (
    CenterPoly,
    SkewPoly,
    Subspace,
    left_divmod,
    phi_kernel,
    reduced_norm,
    right_divmod,
    subspace_poly,
)


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^d."""
    if not 0 <= k <= d:
        return 0
    num = prod(q**m - 1 for m in range(d - k + 1, d + 1))
    den = prod(q**m - 1 for m in range(1, k + 1))
    return num // den


def enumerate_subspaces(ctx: FieldCtx, k: int) -> list[Subspace]:
    """All k-dimensional F_q-subspaces of F_{q^d}, as RREF bases, sorted lexicographically."""
    d, q = ctx.d, ctx.q
    if not 1 <= k <= d - 1:
        raise ValueError(f"subspace dimension must lie in 1..{d - 1}, got {k}")
    out = []
    for pivots in itertools.combinations(range(d), k):
        # free positions: right of the pivot and not in a pivot column
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            out.append(Subspace(tuple(tuple(r) for r in rows), ctx))
    out.sort()
    return out


@dataclass(frozen=True)
class Generator:
    """Divisor of 1 - t with kernel ``subspace``, normalized to constant term 1."""

    id: int
    subspace: Subspace
    skew: SkewPoly
    complement: int  # id of the generator g' with g' * g = 1 - t

    @property
    def type(self) -> int:
        return self.subspace.dim

    def to_line(self) -> str:
        return f"{self.id} {self.type} [{self.subspace.to_text()}] {self.skew} {self.complement}"


def generator_for_subspace(W: Subspace) -> SkewPoly:
    d = W.ctx.d
    if not 1 <= W.dim <= d - 1:
        raise ValueError("generators need a proper nonzero subspace")
    return subspace_poly(W).const_one()


def fund_set(ctx: FieldCtx) -> list[Generator]:
    """The full generator set, ordered by type and then by subspace."""
    subspaces = [W for k in range(1, ctx.d) for W in enumerate_subspaces(ctx, k)]
    skews = [generator_for_subspace(W) for W in subspaces]
    by_skew = {s: i for i, s in enumerate(skews)}
    one_minus_t = SkewPoly.one_minus_t(ctx)
    gens = []
    for i, (W, s) in enumerate(zip(subspaces, skews)):
        comp, rem = right_divmod(one_minus_t, s)
        if rem or comp.indices[0] != 1:
            raise ArithmeticError(f"generator {s} does not divide 1 - t")
        j = by_skew.get(comp)
        if j is None:
            raise ArithmeticError(f"complement {comp} of {s} is not a generator")
        if comp * s != one_minus_t:
            raise ArithmeticError("complement product mismatch")
        gens.append(Generator(i, W, s, j))
    return gens


def counts_by_type(gens: list[Generator], d: int) -> dict[int, int]:
    return {k: sum(1 for g in gens if g.type == k) for k in range(1, d)}


@dataclass
class BijectionReport:
    ok: bool
    divisors: list[SkewPoly]
    missing: list[SkewPoly]  # divisors that are not generators
    extra: list[SkewPoly]  # generators that are not divisors


def divisor_bijection_check(ctx: FieldCtx) -> BijectionReport:
    """Exhaustively list constant-term-1 divisors of 1 - t of tau-degree 1..d-1 and compare with fund_set."""
    if ctx.mid.order ** (ctx.d - 1) > 10**6:
        raise ValueError("field too large for an exhaustive divisor scan")
    mid = ctx.mid
    one_minus_t = SkewPoly.one_minus_t(ctx)
    divisors = []
    for deg in range(1, ctx.d):
        for middle in itertools.product(range(mid.order), repeat=deg - 1):
            for lead in range(1, mid.order):
                g = SkewPoly(ctx, (1,) + middle + (lead,))
                _, r = left_divmod(one_minus_t, g)
                if not r:
                    divisors.append(g)
    gens = {g.skew for g in fund_set(ctx)}
    found = set(divisors)
    missing = sorted(found - gens)
    extra = sorted(gens - found)
    return BijectionReport(not missing and not extra, divisors, missing, extra)


def generator_checks(ctx: FieldCtx, gens: list[Generator]) -> list[str]:
    """Invariant violations among the generators (empty when all hold)."""
    problems = []
    one_minus_t = SkewPoly.one_minus_t(ctx)
    rn_unit = CenterPoly.one_minus_t(ctx)
    for g in gens:
        if phi_kernel(g.skew) != g.subspace:
            problems.append(f"generator {g.id}: kernel differs from its subspace")
        if g.skew.indices[0] != 1:
            problems.append(f"generator {g.id}: constant term is not 1")
        if reduced_norm(g.skew) != rn_unit ** g.type:
            problems.append(f"generator {g.id}: reduced norm is not (1-t)^{g.type}")
        c = gens[g.complement]
        if c.type != ctx.d - g.type or c.skew * g.skew != one_minus_t:
            problems.append(f"generator {g.id}: complement relation fails")
        if gens[c.complement].id != g.id:
            problems.append(f"generator {g.id}: complement is not an involution")
    return problems
