"""Colored Cayley graphs of the generator images in PGL(d, F_{q^{dn}})."""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .genset import Generator, fund_set, gaussian_binomial
from .psi import DetClasses, ModulusF, ProjMatrix, classify_image, psi_matrix


class ClosureCapExceeded(RuntimeError):
    pass


class GeneratorCollision(RuntimeError):
    """Two same-type generators reach the same vertex: the graph would be a multigraph."""


@dataclass
class CayleyHypergraph:
    params: dict
    vertices: list[ProjMatrix]
    edges: list[tuple[int, int, int]]
    generators: list[dict]
    det_labels: list[int]
    n_classes: int
    radius: int | None = None  # None for a full closure
    depth: list[int] = field(default_factory=list)
    index: dict = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.params["d"]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def is_full(self) -> bool:
        return self.radius is None

    def interior(self) -> list[int]:
        """Vertices whose out-edges are all present."""
        if self.is_full:
            return list(range(self.n_vertices))
        return [v for v, dv in enumerate(self.depth) if dv < self.radius]

    def out_neighbors(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in self.vertices]
        for s, t, c in self.edges:
            out[s].append((t, c))
        return out

    # -- serialization
    def to_json(self) -> str:
        return json.dumps(
            {
                "params": self.params,
                "vertices": [v.to_text() for v in self.vertices],
                "edges": [list(e) for e in self.edges],
                "generators": self.generators,
                "det_labels": self.det_labels,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "CayleyHypergraph":
        from .ff import field_ctx

        data = json.loads(text)
        prm = data["params"]
        top = field_ctx(prm["p"], prm["e"], prm["d"], prm["n"]).top
        verts = [ProjMatrix.from_text(top, v) for v in data["vertices"]]
        g = cls(
            params=prm,
            vertices=verts,
            edges=[tuple(e) for e in data["edges"]],
            generators=data["generators"],
            det_labels=data["det_labels"],
            n_classes=prm["det_classes"],
            radius=prm.get("radius"),
            depth=prm.get("depth", []),
        )
        g.index = {v: i for i, v in enumerate(verts)}
        return g

    def to_dot(self) -> str:
        palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown"]
        lines = ["digraph cayley {"]
        for i, lab in enumerate(self.det_labels):
            lines.append(f'  {i} [label="{i}" class={lab}];')
        for s, t, c in self.edges:
            lines.append(f'  {s} -> {t} [color={palette[c % len(palette)]} label={c}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_edge_list(self) -> str:
        return "".join(f"{s} {t} {c}\n" for s, t, c in self.edges)


def generator_images(m: ModulusF, gens: Sequence[Generator] | None = None) -> tuple[list[Generator], list[ProjMatrix]]:
    gens = list(gens) if gens is not None else fund_set(m.ctx)
    return gens, [psi_matrix(g.skew, m) for g in gens]


def _generator_meta(gens: Sequence[Generator], mats: Sequence[ProjMatrix]) -> list[dict]:
    return [
        {
            "id": g.id,
            "type": g.type,
            "subspace": g.subspace.to_text(),
            "skew": str(g.skew),
            "complement": g.complement,
            "matrix": M.to_text(),
        }
        for g, M in zip(gens, mats)
    ]


def bfs_closure(
    m: ModulusF,
    gens: Sequence[Generator] | None = None,
    cap: int = 200_000,
    radius: int | None = None,
    expected_order: int | None = None,
) -> CayleyHypergraph:
    """Breadth-first closure from the identity, children in generator order.

    With ``radius`` the search stops at that word length (a ball); vertices at
    distance < radius carry all their out-edges.
    """
    ctx = m.ctx
    gens, mats = generator_images(m, gens)
    top = ctx.top
    classes = DetClasses(top, ctx.d)
    ident = ProjMatrix.identity(top, ctx.d)
    vertices = [ident]
    index = {ident: 0}
    depth = [0]
    edges: list[tuple[int, int, int]] = []
    queue = deque([0])
    types = [g.type for g in gens]
    while queue:
        v = queue.popleft()
        if radius is not None and depth[v] >= radius:
            continue
        seen: dict[tuple[int, int], int] = {}
        M = vertices[v]
        for gi, (G, k) in enumerate(zip(mats, types)):
            W = M @ G
            w = index.get(W)
            if w is None:
                if len(vertices) >= cap:
                    raise ClosureCapExceeded(f"closure exceeded {cap} vertices")
                w = len(vertices)
                vertices.append(W)
                index[W] = w
                depth.append(depth[v] + 1)
                queue.append(w)
            if (w, k) in seen:
                raise GeneratorCollision(
                    f"generators {seen[(w, k)]} and {gi} map vertex {v} to the same vertex {w}"
                )
            seen[(w, k)] = gi
            edges.append((v, w, k))
    labels = [classes.of_matrix(M) for M in vertices]
    image = classify_image(m)
    params = {
        "p": ctx.p,
        "e": ctx.e,
        "q": ctx.q,
        "d": ctx.d,
        "n": ctx.n,
        "f": str(m.f),
        "theta": m.theta.v,
        "image": image.kind,
        "predicted_order": image.order,
        "det_classes": classes.g,
        "radius": radius,
    }
    if radius is not None:
        params["depth"] = depth
    graph = CayleyHypergraph(
        params=params,
        vertices=vertices,
        edges=edges,
        generators=_generator_meta(gens, mats),
        det_labels=labels,
        n_classes=classes.g,
        radius=radius,
        depth=depth,
        index=index,
    )
    if radius is None and expected_order is not None and len(vertices) != expected_order:
        raise AssertionError(f"closure has {len(vertices)} vertices, expected {expected_order}")
    return graph


def ball(m: ModulusF, radius: int, gens: Sequence[Generator] | None = None, cap: int = 200_000) -> CayleyHypergraph:
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return bfs_closure(m, gens, cap=cap, radius=radius)


def empty_graph(m: ModulusF) -> CayleyHypergraph:
    """Closure of the empty generator list: the identity alone."""
    return bfs_closure(m, gens=[])


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


@dataclass
class RegularityReport:
    ok: bool
    expected: dict[int, int]
    checked: int
    violations: list[str]


def regularity_check(G: CayleyHypergraph) -> RegularityReport:
    d, q = G.d, G.params["q"]
    types = sorted({g["type"] for g in G.generators})
    expected = {k: gaussian_binomial(d, k, q) for k in types}
    out = G.out_neighbors()
    violations = []
    interior = G.interior()
    for v in interior:
        for k, nk in expected.items():
            nbrs = {t for t, c in out[v] if c == k}
            if len(nbrs) != nk:
                violations.append(f"vertex {v}: {len(nbrs)} distinct color-{k} neighbors, expected {nk}")
    return RegularityReport(not violations, expected, len(interior), violations)


@dataclass
class LinkReport:
    ok: bool
    vertices: list[int]
    pairs_checked: int
    containments: int
    counterexamples: list[str]
    containing_per_line: dict[int, int]  # type-2 generator -> number of type-1 images containing its image


def link_check(G: CayleyHypergraph, sample: Sequence[int] | int = (0,), seed: int = 0) -> LinkReport:
    """Flag-incidence test of the link at sampled interior vertices.

    The neighbor x*psi(g) is labeled by the image phi_g(F_{q^d}) (which is the
    kernel of the complement of g).  For generators a, b of types k < k' the
    neighbors must be joined by an edge of color k' - k exactly when
    image(b) is contained in image(a).
    """
    from .ff import field_ctx

    prm = G.params
    ctx = field_ctx(prm["p"], prm["e"], prm["d"], prm["n"])
    if isinstance(sample, int):
        rng = random.Random(seed)
        interior = [v for v in G.interior() if _neighbors_interior(G, v)]
        sample = sorted(rng.sample(interior, min(sample, len(interior))))
    kernels = [_parse_subspace(ctx, gm["subspace"]) for gm in G.generators]
    images = [kernels[gm["complement"]] for gm in G.generators]
    types = [gm["type"] for gm in G.generators]
    out = G.out_neighbors()
    edge_set = set(G.edges)
    counter = []
    pairs = 0
    contained = 0
    containing: dict[int, int] = {}
    for x in sample:
        if not _neighbors_interior(G, x):
            raise ValueError(f"vertex {x} has neighbors outside the explored region")
        via = [t for t, _ in out[x]]
        for a in range(len(types)):
            for b in range(len(types)):
                ka, kb = types[a], types[b]
                if ka >= kb:
                    continue
                pairs += 1
                inc = images[a].contains(images[b])
                has_edge = (via[a], via[b], kb - ka) in edge_set
                if inc:
                    contained += 1
                    if x == sample[0] and ka == 1 and kb == 2:
                        containing[b] = containing.get(b, 0) + 1
                if inc != has_edge:
                    counter.append(f"vertex {x}: generators {a}<{b} containment={inc} edge={has_edge}")
    return LinkReport(not counter, list(sample), pairs, contained, counter, containing)


def _parse_subspace(ctx, text: str):
    from .skewpoly import Subspace

    return Subspace(tuple(tuple(int(v) for v in row.split(",")) for row in text.split(";")), ctx)


def _neighbors_interior(G: CayleyHypergraph, v: int) -> bool:
    if G.is_full:
        return True
    return G.depth[v] + 1 < G.radius


# ---------------------------------------------------------------------------
# matrices and statistics
# ---------------------------------------------------------------------------


def adjacency_matrix(G: CayleyHypergraph, k: int) -> sp.csr_matrix:
    """0/1 matrix with (i, j) = 1 iff a color-k edge i -> j exists."""
    if not G.is_full:
        raise ValueError("adjacency matrices need a full closure")
    N = G.n_vertices
    rows = [s for s, t, c in G.edges if c == k]
    cols = [t for s, t, c in G.edges if c == k]
    A = sp.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(N, N))
    A.sum_duplicates()
    if A.nnz and A.data.max() > 1:
        raise GeneratorCollision(f"multi-edge in color {k}")
    return A


def colors(G: CayleyHypergraph) -> list[int]:
    return sorted({g["type"] for g in G.generators})


def sparse_equal(A: sp.spmatrix, B: sp.spmatrix) -> bool:
    return (A != B).nnz == 0


@dataclass
class StructureReport:
    transpose_ok: bool
    commute_ok: bool
    normal_ok: bool
    details: list[str]


def hecke_structure_check(G: CayleyHypergraph) -> StructureReport:
    """Exact integer checks: A_k^T = A_{d-k}, all A_k commute, each A_k is normal."""
    d = G.d
    cs = colors(G)
    mats = {k: adjacency_matrix(G, k) for k in cs}
    details = []
    transpose_ok = commute_ok = normal_ok = True
    for k in cs:
        if (d - k) in mats and not sparse_equal(mats[k].T.tocsr(), mats[d - k]):
            transpose_ok = False
            details.append(f"A_{k}^T != A_{d - k}")
        A = mats[k]
        if not sparse_equal(A @ A.T, A.T @ A):
            normal_ok = False
            details.append(f"A_{k} is not normal")
    for j in cs:
        for k in cs:
            if j < k and not sparse_equal(mats[j] @ mats[k], mats[k] @ mats[j]):
                commute_ok = False
                details.append(f"A_{j} and A_{k} do not commute")
    return StructureReport(transpose_ok, commute_ok, normal_ok, details)


@dataclass
class GraphStats:
    girth: int | None
    diameter: int
    diameter_lower_bound: float
    det_class_sizes: dict[int, int]
    label_shift_ok: bool
    bipartite: bool


def _undirected(G: CayleyHypergraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in G.vertices]
    for s, t, _ in G.edges:
        if s != t:
            adj[s].add(t)
            adj[t].add(s)
    return adj


def graph_stats(G: CayleyHypergraph) -> GraphStats:
    """Girth and diameter of the underlying undirected graph (computed at vertex 0,
    which suffices for a vertex-transitive Cayley graph) plus the det-class partition."""
    if not G.is_full:
        raise ValueError("graph statistics need a full closure")
    adj = _undirected(G)
    N = len(adj)
    dist = [-1] * N
    parent = [-1] * N
    dist[0] = 0
    queue = deque([0])
    girth = None
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                parent[w] = v
                queue.append(w)
            elif w != parent[v]:
                cyc = dist[v] + dist[w] + 1
                if girth is None or cyc < girth:
                    girth = cyc
    if min(dist) < 0:
        raise AssertionError("graph is not connected")
    diameter = max(dist)
    degree = max(len(a) for a in adj) if N > 1 else 1
    lower = math.log(N, degree) if degree > 1 else 0.0
    sizes: dict[int, int] = {}
    for lab in G.det_labels:
        sizes[lab] = sizes.get(lab, 0) + 1
    shifts = {}
    shift_ok = True
    g = G.n_classes
    for s, t, c in G.edges:
        sh = (G.det_labels[t] - G.det_labels[s]) % g
        if shifts.setdefault(c, sh) != sh:
            shift_ok = False
    colour = [-1] * N
    colour[0] = 0
    bip = True
    queue = deque([0])
    while queue and bip:
        v = queue.popleft()
        for w in adj[v]:
            if colour[w] < 0:
                colour[w] = 1 - colour[v]
                queue.append(w)
            elif colour[w] == colour[v]:
                bip = False
                break
    return GraphStats(girth, diameter, lower, sizes, shift_ok, bip)


def translation_check(G: CayleyHypergraph, samples: int = 10, seed: int = 0) -> bool:
    """Left multiplication by random group elements permutes vertices and preserves colored edges."""
    rng = random.Random(seed)
    edge_set = set(G.edges)
    for _ in range(samples):
        g = G.vertices[rng.randrange(G.n_vertices)]
        perm = []
        for v in G.vertices:
            w = G.index.get(g @ v)
            if w is None:
                return False
            perm.append(w)
        if len(set(perm)) != G.n_vertices:
            return False
        if any((perm[s], perm[t], c) not in edge_set for s, t, c in G.edges):
            return False
    return True
