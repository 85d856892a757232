"""Generator set: subspace enumeration, normalization, complements, divisor bijection."""

import itertools

import pytest

from forge.ff import field_ctx
from forge.genset import (
    counts_by_type,
    divisor_bijection_check,
    enumerate_subspaces,
    fund_set,
    gaussian_binomial,
    generator_checks,
    generator_for_subspace,
)
from forge.skewpoly import CenterPoly, SkewPoly, Subspace, reduced_norm, right_divmod


def brute_force_subspace_count(q, d, k):
    """Distinct spans of k-tuples of vectors in F_q^d that have exactly q^k elements."""
    vecs = list(itertools.product(range(q), repeat=d))
    seen = set()
    for tup in itertools.product(vecs, repeat=k):
        span = frozenset(
            tuple(sum(c * v[i] for c, v in zip(cs, tup)) % q for i in range(d))
            for cs in itertools.product(range(q), repeat=k)
        )
        if len(span) == q**k:
            seen.add(span)
    return len(seen)


@pytest.mark.parametrize("d,k,q", [(2, 1, 3), (3, 1, 3), (3, 2, 3), (2, 1, 5), (4, 2, 2), (4, 2, 3)])
def test_gaussian_binomial(d, k, q):
    assert gaussian_binomial(d, k, q) == brute_force_subspace_count(q, d, k)


def test_gaussian_binomial_edges():
    assert gaussian_binomial(3, 0, 3) == 1
    assert gaussian_binomial(3, 3, 3) == 1
    assert gaussian_binomial(3, 4, 3) == 0


@pytest.mark.parametrize("p,d,k,expected", [(3, 2, 1, 4), (3, 3, 1, 13), (3, 3, 2, 13), (5, 2, 1, 6), (2, 4, 2, 35)])
def test_enumerate_subspaces_counts(p, d, k, expected):
    ctx = field_ctx(p, 1, d)
    subs = enumerate_subspaces(ctx, k)
    assert len(subs) == expected
    assert len(set(subs)) == expected
    assert subs == sorted(subs)
    for W in subs:
        assert W.dim == k
        assert Subspace.span(ctx, W.basis) == W  # already in reduced echelon form


def test_enumerate_subspaces_range():
    ctx = field_ctx(3, 1, 2)
    with pytest.raises(ValueError):
        enumerate_subspaces(ctx, 0)
    with pytest.raises(ValueError):
        enumerate_subspaces(ctx, 2)


def test_generator_examples_q3_d2():
    ctx = field_ctx(3, 1, 2)
    one = Subspace.span(ctx, [ctx.mid.one])
    u = Subspace.span(ctx, [ctx.mid.gen])
    assert generator_for_subspace(one) == SkewPoly(ctx, [1, 2])  # 1 - tau
    assert generator_for_subspace(u) == SkewPoly(ctx, [1, 1])  # 1 + tau
    with pytest.raises(ValueError):
        generator_for_subspace(Subspace.full(ctx))


def test_fund_set_q3_d2():
    ctx = field_ctx(3, 1, 2)
    gens = fund_set(ctx)
    assert [g.to_line() for g in gens] == [
        "0 1 [0,1] 1*T^1 + 1 1",
        "1 1 [1,0] 2*T^1 + 1 0",
        "2 1 [1,1] 6*T^1 + 1 3",
        "3 1 [1,2] 3*T^1 + 1 2",
    ]
    one_minus_t = SkewPoly.one_minus_t(ctx)
    for g in gens:
        assert gens[g.complement].skew * g.skew == one_minus_t


@pytest.mark.parametrize("p,d", [(3, 2), (3, 3), (5, 2), (2, 3), (2, 4)])
def test_fund_set_invariants(p, d):
    ctx = field_ctx(p, 1, d)
    gens = fund_set(ctx)
    counts = counts_by_type(gens, d)
    assert counts == {k: gaussian_binomial(d, k, ctx.q) for k in range(1, d)}
    assert generator_checks(ctx, gens) == []
    assert len({g.skew for g in gens}) == len(gens)
    one_minus_t = SkewPoly.one_minus_t(ctx)
    rn = CenterPoly.one_minus_t(ctx)
    for g in gens:
        assert not right_divmod(one_minus_t, g.skew)[1]
        assert reduced_norm(g.skew) == rn**g.type
        assert gens[gens[g.complement].complement] is g


def test_fund_set_q9_over_f3():
    ctx = field_ctx(3, 2, 2)
    gens = fund_set(ctx)
    assert len(gens) == 10
    assert generator_checks(ctx, gens) == []


@pytest.mark.parametrize("p,d,expected", [(3, 2, 4), (3, 3, 26), (2, 3, 14)])
def test_divisor_bijection(p, d, expected):
    rep = divisor_bijection_check(field_ctx(p, 1, d))
    assert rep.ok
    assert len(rep.divisors) == expected
    assert rep.missing == [] and rep.extra == []


def test_generator_checks_detect_corruption():
    ctx = field_ctx(3, 1, 2)
    gens = fund_set(ctx)
    bad = list(gens)
    bad[0] = type(gens[0])(0, gens[0].subspace, gens[1].skew, gens[0].complement)
    assert generator_checks(ctx, bad)
