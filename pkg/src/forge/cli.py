"""``forge`` command line: factor, gens, build, spectra, verify.

Exit codes: 0 all checks pass, 2 a check failed, 3 invalid input, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from threadpoolctl import threadpool_limits

from .cayley import (
    CayleyHypergraph,
    ClosureCapExceeded,
    GeneratorCollision,
    ball,
    bfs_closure,
    graph_stats,
    hecke_structure_check,
    link_check,
    regularity_check,
    translation_check,
)
from .ff import FieldCtx, FieldError, field_ctx
from .genset import counts_by_type, divisor_bijection_check, fund_set, gaussian_binomial, generator_checks
from .psi import (
    ModulusF,
    brute_force_is_dth_power,
    classify_image,
    parse_modulus,
    psi_soundness,
    residue_symbol,
)
from .skewpoly import CenterPoly, SkewPoly, reduced_norm, linear_factorization
from .spectra import DENSE_CUTOFF, EigenCapabilityError, ramanujan_check

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 2, 3, 4


@dataclass
class RunConfig:
    p: int
    e: int
    d: int
    f: str | None = None
    out: str | None = None
    fmt: str = "json"
    ball: int | None = None
    dense_cutoff: int = DENSE_CUTOFF
    cap: int = 200_000
    samples: int = 200
    seed: int = 0
    threads: int = 1
    graph: str | None = None
    csv: str | None = None

    def ctx(self, n: int = 1) -> FieldCtx:
        return field_ctx(self.p, self.e, self.d, n)

    def modulus(self) -> ModulusF:
        if not self.f:
            raise FieldError("--f is required")
        return parse_modulus(self.p, self.e, self.d, self.f)


class InputError(Exception):
    pass


def _linear_factor(ctx: FieldCtx, f: SkewPoly) -> str:
    c = f.indices[1]
    if c == 1:
        return "(1 + T)"
    if c == ctx.mid.neg(1):
        return "(1 - T)"
    return f"(1 + {c}*T)"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_factor(cfg: RunConfig) -> int:
    ctx = cfg.ctx()
    fac = linear_factorization(ctx)
    ok = fac.product() == SkewPoly.one_minus_t(ctx)
    rn_ok = all(reduced_norm(f) == CenterPoly.one_minus_t(ctx) for f in fac.factors)
    if cfg.fmt == "json":
        text = json.dumps(
            {
                "x": [x.v for x in fac.xs],
                "factors": [str(f) for f in fac.factors],
                "product_ok": ok,
                "reduced_norms_ok": rn_ok,
            },
            sort_keys=True,
        )
    else:
        xs = " ".join(f"x_{ctx.d - i}={x.v}" for i, x in enumerate(fac.xs))
        text = f"{xs}\n{''.join(_linear_factor(ctx, f) for f in fac.factors)}\n"
    _emit(text, cfg.out)
    return EXIT_OK if ok and rn_ok else EXIT_FAIL


def cmd_gens(cfg: RunConfig) -> int:
    ctx = cfg.ctx()
    gens = fund_set(ctx)
    _emit("".join(g.to_line() + "\n" for g in gens), cfg.out)
    return EXIT_OK if not generator_checks(ctx, gens) else EXIT_FAIL


def _write_graph(G: CayleyHypergraph, cfg: RunConfig) -> None:
    text = {"json": G.to_json, "dot": G.to_dot, "edges": G.to_edge_list}[cfg.fmt]()
    _emit(text, cfg.out)


def cmd_build(cfg: RunConfig) -> int:
    m = cfg.modulus()
    if cfg.ball is not None:
        G = ball(m, cfg.ball, cap=cfg.cap)
        print(f"partial ball of radius {cfg.ball}: {G.n_vertices} vertices; "
              "regularity holds at interior vertices only; spectra skipped", file=sys.stderr)
    else:
        image = classify_image(m)
        if image.order > cfg.cap:
            print(f"predicted order {image.order} exceeds cap {cfg.cap}", file=sys.stderr)
            return EXIT_CAP
        G = bfs_closure(m, cap=cfg.cap, expected_order=image.order)
    _write_graph(G, cfg)
    return EXIT_OK if regularity_check(G).ok else EXIT_FAIL


def cmd_spectra(cfg: RunConfig) -> int:
    if not cfg.graph:
        raise InputError("--graph is required")
    G = CayleyHypergraph.from_json(Path(cfg.graph).read_text())
    if not G.is_full:
        print("spectra need a full closure; the graph file holds a ball", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = ramanujan_check(G, cutoff=cfg.dense_cutoff)
    except EigenCapabilityError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP
    _emit(report.to_json(), cfg.out)
    if cfg.csv:
        Path(cfg.csv).write_text(report.to_csv())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    m = cfg.modulus()
    ctx = m.ctx
    d, q = ctx.d, ctx.q
    results: list[tuple[str, bool, str]] = []
    skipped: list[str] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        results.append((name, bool(ok), detail))

    t0 = time.perf_counter()
    fac = linear_factorization(field_ctx(ctx.p, ctx.e, d))
    base_ctx = fac.factors[0].ctx
    check("factorization", fac.product() == SkewPoly.one_minus_t(base_ctx)
          and all(reduced_norm(f) == CenterPoly.one_minus_t(base_ctx) for f in fac.factors),
          " ".join(str(f) for f in fac.factors))

    gens = fund_set(ctx)
    counts = counts_by_type(gens, d)
    check("generator counts", all(counts[k] == gaussian_binomial(d, k, q) for k in counts), str(counts))
    problems = generator_checks(ctx, gens)
    check("generator invariants", not problems, "; ".join(problems[:3]))
    if ctx.mid.order ** (d - 1) <= 10**6:
        rep = divisor_bijection_check(ctx)
        check("divisor bijection", rep.ok, f"{len(rep.divisors)} divisors")
    else:
        skipped.append("divisor bijection (field too large)")

    image = classify_image(m)
    sym = residue_symbol(1 - m.theta, d)
    check("residue symbol", (sym == 1) == brute_force_is_dth_power(1 - m.theta, d),
          f"{image.kind} order {image.order}" + ("" if image.verified else " (unverified: even q)"))

    hom_bad, det_bad, tested = psi_soundness(m, cfg.samples, cfg.seed)
    check("psi homomorphism", hom_bad == 0, f"{tested} random pairs")
    check("det of lift = reduced norm", det_bad == 0, f"{tested} random elements")

    full = image.order <= cfg.cap and cfg.ball is None
    try:
        if full:
            G = bfs_closure(m, gens, cap=cfg.cap)
            check("closure size", G.n_vertices == image.order, f"{G.n_vertices} vertices")
        else:
            radius = cfg.ball if cfg.ball is not None else 2
            G = ball(m, radius, gens, cap=cfg.cap)
            skipped.append(f"full closure (order {image.order}); using ball of radius {radius}")
    except GeneratorCollision as exc:
        check("simple regularity", False, str(exc))
        return _report(results, skipped, cfg, t0)
    except ClosureCapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP

    reg = regularity_check(G)
    check("regularity", reg.ok, f"{reg.checked} vertices, degrees {reg.expected}")
    if d >= 3:
        if G.is_full or G.radius >= 2:
            lk = link_check(G, (0,))
            check("link flag incidence", lk.ok, f"{lk.pairs_checked} pairs at root")
        else:
            skipped.append("link check (ball radius < 2)")
    if G.is_full:
        hs = hecke_structure_check(G)
        check("adjacency transpose/commutation", hs.transpose_ok and hs.commute_ok and hs.normal_ok,
              "; ".join(hs.details))
        stats = graph_stats(G)
        check("det-label shifts", stats.label_shift_ok,
              f"girth {stats.girth}, diameter {stats.diameter}, classes {stats.det_class_sizes}")
        check("translation automorphism", translation_check(G, samples=10, seed=cfg.seed), "10 random elements")
        try:
            sr = ramanujan_check(G, cutoff=cfg.dense_cutoff)
            for c in sr.colors:
                check(f"ramanujan color {c.color}", c.passed,
                      f"max |lambda| {c.max_nontrivial:.6f} <= c_{c.color} = {c.bound:.6f}, margin {c.margin:.6f}")
        except EigenCapabilityError as exc:
            skipped.append(f"spectra ({exc})")
    else:
        skipped.append("spectra (partial graph)")
        skipped.append("adjacency structure (partial graph)")
    return _report(results, skipped, cfg, t0)


def _report(results, skipped, cfg: RunConfig, t0: float) -> int:
    ok = all(r[1] for r in results)
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    for s in skipped:
        print(f"SKIP {s}")
    print(f"{'PASS' if ok else 'FAIL'} overall ({time.perf_counter() - t0:.2f}s)")
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(
            {"passed": ok, "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results],
             "skipped": skipped}, sort_keys=True))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, need_f=False):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--e", type=int, default=1)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--f", required=need_f, help='e.g. "1*t^2+1" (F_q indices) or "auto:n"')
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("factor", help="explicit linear factorization of 1 - t")
    common(sp)
    sp.add_argument("--format", dest="fmt", choices=["json", "text"], default="text")
    sp = sub.add_parser("gens", help="list the generator set")
    common(sp)
    for name, help_ in [("build", "build the Cayley graph"), ("verify", "run every check")]:
        sp = sub.add_parser(name, help=help_)
        common(sp, need_f=True)
        sp.add_argument("--format", dest="fmt", choices=["json", "dot", "edges"], default="json")
        sp.add_argument("--ball", type=int)
        sp.add_argument("--cap", type=int, default=200_000)
        sp.add_argument("--dense-cutoff", type=int, default=DENSE_CUTOFF)
        sp.add_argument("--samples", type=int, default=200)
    sp = sub.add_parser("spectra", help="spectral report of a graph file")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--out")
    sp.add_argument("--csv")
    sp.add_argument("--dense-cutoff", type=int, default=DENSE_CUTOFF)
    sp.add_argument("--threads", type=int, default=1)
    return parser


COMMANDS = {"factor": cmd_factor, "gens": cmd_gens, "build": cmd_build, "spectra": cmd_spectra, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    opts = {k: v for k, v in vars(args).items() if k != "command"}
    if args.command == "spectra":
        cfg = RunConfig(p=0, e=0, d=0, **opts)
    else:
        cfg = RunConfig(**opts)
        if cfg.d < 2:
            print("d must be at least 2", file=sys.stderr)
            return EXIT_INPUT
    if cfg.threads < 1:
        print("--threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        # the graph code is single threaded; the flag caps the BLAS pool used by the eigensolvers
        with threadpool_limits(limits=cfg.threads):
            return COMMANDS[args.command](cfg)
    except (FieldError, InputError, ValueError, FileNotFoundError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
