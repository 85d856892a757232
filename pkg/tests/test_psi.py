"""The projective representation psi, determinant classes and the PSL/PGL split."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from forge.ff import FFElem, FieldError, frobenius_q
from forge.genset import fund_set
from forge.psi import (
    DetClasses,
    NotAUnitError,
    ProjMatrix,
    auto_modulus,
    brute_force_is_dth_power,
    classify_image,
    det_of_lift,
    group_order_gl,
    lift_matrix,
    matrix_det,
    parse_modulus,
    proj_canonicalize,
    psi_matrix,
    psi_soundness,
    residue_symbol,
)
from forge.skewpoly import CenterPoly, SkewPoly, linear_factorization, reduced_norm


def test_modulus_roots(m_pgl, m_psl, m33):
    for m in (m_pgl, m_psl, m33):
        assert not m.f.evaluate(m.theta)
        assert all(m.f.evaluate(m.ctx.embed(c, "top")) for c in m.ctx.base.elements())


def test_parse_modulus_errors():
    with pytest.raises(FieldError):
        parse_modulus(3, 1, 2, "1*t^2+2")  # t^2 - 1 = (t - 1)(t + 1)
    with pytest.raises(FieldError):
        parse_modulus(3, 1, 2, "1*t^3+2*t^1+1")  # degree 3 not divisible by 2
    with pytest.raises(FieldError):
        parse_modulus(3, 1, 2, "2*t^2+1")  # not monic


def test_auto_modulus_is_smallest(ctx32):
    m = auto_modulus(ctx32)
    assert m.f.indices == (1, 0, 1)
    assert str(parse_modulus(3, 1, 2, "auto:1").f) == "1*t^2+1"


def test_auto_modulus_larger_top():
    m = parse_modulus(3, 1, 2, "auto:2")
    assert m.f.deg == 4 and m.ctx.top.order == 81


# -- canonical projective form


def test_canonicalize_scalars_and_idempotence(m_pgl):
    F = m_pgl.ctx.top
    ident = ProjMatrix.identity(F, 2)
    for c in range(1, F.order):
        assert proj_canonicalize(F, ((c, 0), (0, c))) == ident
    rng = random.Random(1)
    for _ in range(200):
        rows = tuple(tuple(rng.randrange(F.order) for _ in range(2)) for _ in range(2))
        if not matrix_det(F, rows):
            with pytest.raises(NotAUnitError):
                proj_canonicalize(F, rows)
            continue
        M = proj_canonicalize(F, rows)
        c = rng.randrange(1, F.order)
        scaled = tuple(tuple(F.mul(c, v) for v in r) for r in rows)
        assert proj_canonicalize(F, scaled) == M
        assert proj_canonicalize(F, M.rows) == M
        assert ProjMatrix.from_text(F, M.to_text()) == M


def test_det_class_is_scalar_invariant(m33):
    F = m33.ctx.top
    classes = DetClasses(F, 3)
    for c in F.units():
        for x in F.units():
            assert classes.code(F.mul(F.pow(c.v, 3), x.v)) == classes.code(x.v)


# -- psi


def test_psi_of_constant_is_diagonal(m_pgl, m33):
    for m in (m_pgl, m33):
        ctx = m.ctx
        d = ctx.d
        for lam in ctx.mid.units():
            M = lift_matrix(SkewPoly(ctx, [lam]), m)
            for r in range(d):
                for c in range(d):
                    want = ctx.embed(frobenius_q(lam, r, ctx.q), "top").v if r == c else 0
                    assert M[r][c] == want


@pytest.mark.parametrize("which", ["m_pgl", "m33"])
def test_psi_of_linear_factor_pattern(which, request):
    m = request.getfixturevalue(which)
    ctx = m.ctx
    d, q = ctx.d, ctx.q
    top = ctx.top
    for x in ctx.mid.units():
        M = lift_matrix(SkewPoly(ctx, [1, -(x ** (1 - q))]), m)
        xt = ctx.embed(x, "top")
        for r in range(d):
            for c in range(d):
                if r == c:
                    want = top.one
                elif c == r + 1:
                    want = -(xt ** (q**r - q ** (r + 1)))
                elif (r, c) == (d - 1, 0):
                    want = -(m.theta * xt ** (q ** (d - 1) - q**d))
                else:
                    want = top.zero
                assert M[r][c] == want.v


@pytest.mark.parametrize("which", ["m_pgl", "m33"])
def test_psi_homomorphism_and_det(which, request):
    m = request.getfixturevalue(which)
    hom_bad, det_bad, tested = psi_soundness(m, 1000, seed=2)
    assert (hom_bad, det_bad, tested) == (0, 0, 1000)


def test_det_of_lift_examples(m_pgl, m33):
    for m in (m_pgl, m33):
        ctx = m.ctx
        for x in ctx.mid.units():
            a = SkewPoly(ctx, [1, -(x ** (1 - ctx.q))])
            assert det_of_lift(a, m) == 1 - m.theta
        c = CenterPoly.from_indices(ctx, [2, 1])
        assert det_of_lift(c.to_skew(), m) == c.evaluate(m.theta) ** ctx.d


def test_non_unit_rejected(m_pgl):
    # f itself reduces to zero
    f_skew = m_pgl.f.to_skew()
    with pytest.raises(NotAUnitError):
        psi_matrix(f_skew, m_pgl)
    with pytest.raises(NotAUnitError):
        det_of_lift(f_skew, m_pgl)


def test_central_elements_map_to_identity(m_pgl, m33):
    for m in (m_pgl, m33):
        ctx = m.ctx
        ident = ProjMatrix.identity(ctx.top, ctx.d)
        assert psi_matrix(SkewPoly.one_minus_t(ctx), m) == ident
        fac = linear_factorization(ctx)
        prod = ident
        for f in fac.factors:
            prod = prod @ psi_matrix(f, m)
        assert prod == psi_matrix(fac.product(), m) == ident


def test_generator_det_classes(m_pgl, m_psl, m33):
    for m in (m_pgl, m_psl, m33):
        ctx = m.ctx
        classes = DetClasses(ctx.top, ctx.d)
        base = classes.code((1 - m.theta).v)
        for g in fund_set(ctx):
            M = psi_matrix(g.skew, m)
            assert classes.of_matrix(M) == (base * g.type) % classes.g
            assert reduced_norm(g.skew).evaluate(m.theta) == det_of_lift(g.skew, m)


# -- residue symbol and image


def test_residue_symbol_examples(m_pgl, m_psl):
    assert residue_symbol(m_pgl.ctx.top.one, 2) == 1
    assert residue_symbol(1 - m_pgl.theta, 2) == -1
    assert residue_symbol(1 - m_psl.theta, 2) == 1
    assert not brute_force_is_dth_power(1 - m_pgl.theta, 2)
    assert brute_force_is_dth_power(1 - m_psl.theta, 2)
    with pytest.raises(ZeroDivisionError):
        residue_symbol(m_pgl.ctx.top.zero, 2)


@pytest.mark.parametrize("p,deg", [(3, 2), (3, 4), (5, 2), (2, 6)])
def test_residue_symbol_matches_brute_force(p, deg):
    from forge.ff import standard_field

    F = standard_field(p, deg)
    for d in (2, 3, 4):
        for A in F.units():
            assert (residue_symbol(A, d) == 1) == brute_force_is_dth_power(A, d)


def test_classify_image(m_pgl, m_psl, m33):
    pgl = classify_image(m_pgl)
    assert (pgl.kind, pgl.order, pgl.symbol, pgl.verified) == ("PGL", 720, -1, True)
    psl = classify_image(m_psl)
    assert (psl.kind, psl.order) == ("PSL", 360)
    img = classify_image(m33)
    assert img.kind == "PSL"
    assert img.order == group_order_gl(3, 27) // 26


def test_classify_even_q_warns():
    m = parse_modulus(2, 1, 2, "auto:1")
    with pytest.warns(UserWarning):
        img = classify_image(m)
    assert not img.verified


@given(st.integers(1, 80), st.integers(1, 80))
def test_dlog_class_is_a_homomorphism(a, b):
    from forge.ff import standard_field

    F = standard_field(3, 4)
    C = DetClasses(F, 2)
    assert C.code(F.mul(a, b)) == (C.code(a) + C.code(b)) % C.g
    assert (C.code(a) == 0) == (residue_symbol(FFElem(F, a), 2) == 1)
