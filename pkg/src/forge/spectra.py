"""Spectra of the colored adjacency matrices and the Ramanujan bound check."""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .cayley import CayleyHypergraph, adjacency_matrix, colors
from .genset import gaussian_binomial

DENSE_CUTOFF = 5000
BOUND_TOL = 1e-8
MATCH_RTOL = 1e-6

BOUND_NOTE = (
    "bound c_k = C(d,k) q^(k(d-k)/2); the alternative reading C(d,k) q^((d-1)/2) "
    "agrees at d = 2"
)


class EigenCapabilityError(RuntimeError):
    pass


class CharacterMatchError(RuntimeError):
    """A character eigenvalue has no partner in the computed spectrum."""


def ramanujan_bound(k: int, d: int, q: int) -> float:
    """c_k = C(d, k) * q^(k(d-k)/2)."""
    if not 1 <= k <= d - 1:
        raise ValueError("k must lie in 1..d-1")
    return math.comb(d, k) * q ** (k * (d - k) / 2)


# ---------------------------------------------------------------------------
# character space
# ---------------------------------------------------------------------------


@dataclass
class Character:
    j: int  # chi(label) = exp(2 pi i j label / g)
    vector: np.ndarray
    eigenvalues: dict[int, complex]  # per color
    residual: dict[int, float]


def character_space(G: CayleyHypergraph) -> list[Character]:
    """Character vectors of the realized det-class group, with their exact eigenvalues.

    Every color-k edge shifts the det label by the same class c_k, so
    A_k v_chi = n_k chi(c_k) v_chi; the residual of that identity is recorded.
    """
    # characters of the subgroup of classes the graph actually realizes
    realized = sorted(set(G.det_labels))
    step = G.n_classes // len(realized)
    g = len(realized)
    labels = np.asarray(G.det_labels) // step
    cs = colors(G)
    shift: dict[int, int] = {}
    for s, t, c in G.edges:
        shift.setdefault(c, int(labels[t] - labels[s]) % g)
    mats = {k: adjacency_matrix(G, k) for k in cs}
    nk = {k: gaussian_binomial(G.d, k, G.params["q"]) for k in cs}
    out = []
    for j in range(g):
        v = np.exp(2j * np.pi * j * labels / g)
        eig, res = {}, {}
        for k in cs:
            lam = nk[k] * cmath.exp(2j * math.pi * j * shift[k] / g)
            eig[k] = lam
            res[k] = float(np.max(np.abs(mats[k] @ v - lam * v))) if len(v) else 0.0
        out.append(Character(j, v, eig, res))
    return out


# ---------------------------------------------------------------------------
# eigensolvers
# ---------------------------------------------------------------------------


def eigen_dense(A: sp.spmatrix, symmetric: bool | None = None, cutoff: int = DENSE_CUTOFF) -> np.ndarray:
    """All eigenvalues; symmetric matrices use the Hermitian solver (real output)."""
    N = A.shape[0]
    if N > cutoff:
        raise EigenCapabilityError(f"N = {N} exceeds the dense cutoff {cutoff}; use eigen_extremal")
    if N == 0:
        return np.zeros(0)
    M = A.toarray().astype(float)
    if symmetric is None:
        symmetric = bool(np.array_equal(M, M.T))
    if symmetric:
        return np.linalg.eigvalsh(M)
    return np.linalg.eigvals(M)


@dataclass
class ExtremalResult:
    values: np.ndarray  # eigenvalues (symmetric) or moduli (via singular values)
    residuals: np.ndarray
    method: str


def eigen_extremal(
    A: sp.spmatrix,
    how_many: int,
    deflate: list[np.ndarray] | None = None,
    symmetric: bool = True,
    tol: float = 1e-12,
    maxiter: int | None = None,
) -> ExtremalResult:
    """Largest-modulus eigenvalues after projecting out the span of ``deflate``.

    Symmetric matrices go through Lanczos; otherwise the singular values of
    the (normal) matrix are returned, which equal the eigenvalue moduli.
    """
    N = A.shape[0]
    if how_many >= N - 1:
        vals = eigen_dense(A, symmetric=symmetric, cutoff=max(N, DENSE_CUTOFF))
        return ExtremalResult(np.asarray(vals), np.zeros(len(vals)), "dense")
    basis = None
    if deflate:
        Q, _ = np.linalg.qr(np.column_stack(deflate))
        basis = Q

    def project(x):
        if basis is None:
            return x
        return x - basis @ (basis.conj().T @ x)

    Ad = A.astype(float if symmetric else complex)
    dtype = float if (symmetric and (basis is None or np.isrealobj(basis))) else complex
    if symmetric:
        op = spla.LinearOperator((N, N), matvec=lambda x: project(Ad @ project(x)), dtype=dtype)
        try:
            vals, vecs = spla.eigsh(op, k=how_many, which="LM", tol=tol, maxiter=maxiter)
        except (spla.ArpackNoConvergence, spla.ArpackError) as exc:
            raise EigenCapabilityError(f"Lanczos failed: {exc}") from exc
        res = np.array([np.linalg.norm(Ad @ vecs[:, i] - vals[i] * vecs[:, i]) for i in range(len(vals))])
        order = np.argsort(-np.abs(vals))
        return ExtremalResult(vals[order], res[order], "lanczos")
    op = spla.LinearOperator(
        (N, N),
        matvec=lambda x: project(Ad @ project(x)),
        rmatvec=lambda x: project(Ad.conj().T @ project(x)),
        dtype=complex,
    )
    try:
        u, s, vt = spla.svds(op, k=how_many, tol=tol, maxiter=maxiter)
    except (spla.ArpackNoConvergence, spla.ArpackError) as exc:
        raise EigenCapabilityError(f"svds failed: {exc}") from exc
    res = np.array([np.linalg.norm(Ad @ vt[i].conj() - s[i] * u[:, i]) for i in range(len(s))])
    order = np.argsort(-s)
    return ExtremalResult(s[order], res[order], "svd")


# ---------------------------------------------------------------------------
# the report
# ---------------------------------------------------------------------------


@dataclass
class ColorReport:
    color: int
    n_k: int
    bound: float
    eigenvalues: list[complex]
    trivial: list[complex]  # matched character eigenvalues (as computed)
    trivial_indices: list[int]
    max_nontrivial: float
    margin: float
    passed: bool
    strict_max: float  # max |lambda| with only lambda = n_k removed
    strict_passed: bool
    trace_error: float


@dataclass
class SpectralReport:
    params: dict
    colors: list[ColorReport]
    method: str
    runtime: float
    character_residual: float
    note: str = BOUND_NOTE
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.colors)

    def to_json(self) -> str:
        def enc(z):
            if isinstance(z, complex):
                return [z.real, z.imag]
            raise TypeError(type(z))

        data = asdict(self)
        data["passed"] = self.passed
        return json.dumps(data, default=enc, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["color", "index", "re", "im", "modulus", "class"])
        for c in self.colors:
            triv = set(c.trivial_indices)
            for i, z in enumerate(c.eigenvalues):
                w.writerow([c.color, i, f"{z.real:.12g}", f"{z.imag:.12g}", f"{abs(z):.12g}",
                            "trivial" if i in triv else "nontrivial"])
        return buf.getvalue()


def _match_characters(eigs: np.ndarray, targets: list[complex], tol: float) -> list[int]:
    taken: list[int] = []
    for lam in targets:
        dist = np.abs(eigs - lam)
        if taken:
            dist[taken] = np.inf
        i = int(np.argmin(dist))
        if dist[i] > tol:
            raise CharacterMatchError(f"character eigenvalue {lam} not found (closest off by {dist[i]:.3g})")
        taken.append(i)
    return taken


def ramanujan_check(G: CayleyHypergraph, cutoff: int = DENSE_CUTOFF) -> SpectralReport:
    """Per color: full spectrum, character eigenvalues removed, rest compared with c_k."""
    start = time.perf_counter()
    d, q = G.d, G.params["q"]
    reports = []
    chars = character_space(G)
    char_res = max((r for ch in chars for r in ch.residual.values()), default=0.0)
    for k in colors(G):
        A = adjacency_matrix(G, k)
        nk = gaussian_binomial(d, k, q)
        ck = ramanujan_bound(k, d, q)
        symmetric = 2 * k == d
        eigs = np.asarray(eigen_dense(A, symmetric=symmetric, cutoff=cutoff), dtype=complex)
        targets = [ch.eigenvalues[k] for ch in chars]
        idx = _match_characters(eigs, targets, MATCH_RTOL * nk)
        rest = np.delete(eigs, idx)
        max_nt = float(np.max(np.abs(rest))) if len(rest) else 0.0
        strict_idx = _match_characters(eigs, [complex(nk)], MATCH_RTOL * nk)
        strict_rest = np.delete(eigs, strict_idx)
        strict_max = float(np.max(np.abs(strict_rest))) if len(strict_rest) else 0.0
        reports.append(
            ColorReport(
                color=k,
                n_k=nk,
                bound=ck,
                eigenvalues=[complex(z) for z in eigs],
                trivial=[complex(eigs[i]) for i in idx],
                trivial_indices=idx,
                max_nontrivial=max_nt,
                margin=ck - max_nt,
                passed=max_nt <= ck + BOUND_TOL,
                strict_max=strict_max,
                strict_passed=strict_max <= ck + BOUND_TOL,
                trace_error=abs(complex(np.sum(eigs))),
            )
        )
    return SpectralReport(
        params={k: v for k, v in G.params.items() if k != "depth"},
        colors=reports,
        method="dense-symmetric" if all(2 * c.color == d for c in reports) else "dense",
        runtime=time.perf_counter() - start,
        character_residual=char_res,
    )
