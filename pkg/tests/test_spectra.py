"""Eigenvalues, character deflation and the Ramanujan bound."""

import json
import math

import numpy as np
import pytest
import scipy.sparse as sp

from forge.cayley import adjacency_matrix, empty_graph
from forge.spectra import (
    EigenCapabilityError,
    character_space,
    eigen_dense,
    eigen_extremal,
    ramanujan_bound,
    ramanujan_check,
)

SQRT12 = 2 * math.sqrt(3)


def test_bound_values():
    assert ramanujan_bound(1, 2, 3) == pytest.approx(SQRT12, abs=1e-12)
    assert ramanujan_bound(1, 3, 3) == pytest.approx(9.0)
    for d in range(2, 6):
        for k in range(1, d):
            assert ramanujan_bound(k, d, 5) == ramanujan_bound(d - k, d, 5)
    with pytest.raises(ValueError):
        ramanujan_bound(0, 3, 3)


def test_characters_pgl(pgl_graph):
    chars = character_space(pgl_graph)
    assert len(chars) == 2
    assert np.allclose(chars[0].vector, 1)
    assert chars[0].eigenvalues[1] == pytest.approx(4)
    assert chars[1].eigenvalues[1] == pytest.approx(-4)
    assert max(r for ch in chars for r in ch.residual.values()) <= 1e-12


def test_characters_psl(psl_graph):
    chars = character_space(psl_graph)
    assert len(chars) == 1
    assert chars[0].eigenvalues[1] == pytest.approx(4)


def test_dense_spectrum_pgl(pgl_graph):
    A = adjacency_matrix(pgl_graph, 1)
    eigs = eigen_dense(A)
    assert len(eigs) == 720
    assert np.sum(np.isclose(eigs, 4, atol=1e-8)) == 1
    assert np.sum(np.isclose(eigs, -4, atol=1e-8)) == 1
    assert abs(eigs.sum()) <= 1e-8 * 720


def test_dense_empty_and_cutoff(m_pgl, pgl_graph):
    G = empty_graph(m_pgl)
    assert list(eigen_dense(adjacency_matrix(G, 1))) == [0.0]
    assert G.n_vertices == 1
    with pytest.raises(EigenCapabilityError):
        eigen_dense(adjacency_matrix(pgl_graph, 1), cutoff=100)


@pytest.mark.parametrize("which", ["pgl_graph", "psl_graph"])
def test_extremal_matches_dense(which, request):
    G = request.getfixturevalue(which)
    A = adjacency_matrix(G, 1)
    chars = [ch.vector.real for ch in character_space(G)]
    res = eigen_extremal(A, 6, deflate=chars, symmetric=True)
    assert np.all(res.residuals <= 1e-9 * 4)
    dense = np.sort(np.abs(eigen_dense(A)))[::-1]
    rest = dense[len(chars):]
    assert np.abs(res.values[0]) == pytest.approx(rest[0], abs=1e-7)
    # Krylov methods may under-count multiplicities, but every value must be in the spectrum
    full = eigen_dense(A)
    assert all(np.min(np.abs(full - v)) <= 1e-7 for v in res.values)
    assert np.abs(res.values[0]) <= SQRT12 + 1e-8


def test_extremal_degrades_to_dense(psl_graph):
    A = adjacency_matrix(psl_graph, 1)
    res = eigen_extremal(A, A.shape[0])
    assert res.method == "dense" and len(res.values) == A.shape[0]


def test_extremal_nonsymmetric_uses_moduli():
    # directed circulant P + 2 P^3: normal, not symmetric, eigenvalues w^j + 2 w^(3j)
    N = 60
    idx = np.arange(N)
    A = sp.csr_matrix(
        (np.r_[np.ones(N), 2 * np.ones(N)], (np.r_[idx, idx], np.r_[(idx + 1) % N, (idx + 3) % N])),
        shape=(N, N),
    )
    w = np.exp(2j * np.pi * idx / N)
    moduli = np.sort(np.abs(w + 2 * w**3))[::-1]
    res = eigen_extremal(A, 3, deflate=[np.ones(N)], symmetric=False)
    assert res.method == "svd"
    assert np.all(np.abs(res.values[:, None] - moduli[None, 1:]).min(axis=1) <= 1e-9)
    assert res.values[0] == pytest.approx(moduli[1], abs=1e-9)


def test_ramanujan_pgl(pgl_graph):
    rep = ramanujan_check(pgl_graph)
    (c,) = rep.colors
    assert sorted(round(z.real, 6) for z in c.trivial) == [-4.0, 4.0]
    assert len(c.eigenvalues) == 720
    assert c.bound == pytest.approx(SQRT12)
    assert c.max_nontrivial <= SQRT12 + 1e-8 and c.margin > 0
    assert rep.passed
    # the undeflated verdict fails because -4 survives
    assert not c.strict_passed and c.strict_max == pytest.approx(4)
    assert rep.character_residual <= 1e-12
    data = json.loads(rep.to_json())
    assert data["passed"] is True and data["colors"][0]["color"] == 1


def test_ramanujan_psl(psl_graph):
    rep = ramanujan_check(psl_graph)
    (c,) = rep.colors
    assert [round(z.real, 6) for z in c.trivial] == [4.0]
    assert c.passed and c.strict_passed
    assert c.max_nontrivial <= SQRT12 + 1e-8
    rows = rep.to_csv().splitlines()
    assert rows[0] == "color,index,re,im,modulus,class"
    assert len(rows) == 361
    assert sum(r.endswith(",trivial") for r in rows) == 1


def test_ramanujan_vacuous(m_pgl):
    rep = ramanujan_check(empty_graph(m_pgl))
    assert rep.passed and rep.colors == []
