"""Local probes of d = 3 graphs, whose full closures are far beyond desk scale.

For growing radius this reports ball sizes, interior regularity and the
flag-incidence test of the link at random interior vertices.

    python3 scripts/d3_ball_probe.py --p 3 --radius 3 --samples 5
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from dataclasses import dataclass

from forge.cayley import ball, link_check, regularity_check
from forge.ff import field_ctx
from forge.genset import fund_set
from forge.psi import auto_modulus, classify_image


@dataclass
class ProbeConfig:
    p: int = 3
    e: int = 1
    n: int = 1
    radius: int = 3
    samples: int = 5
    seed: int = 0


def probe(cfg: ProbeConfig) -> bool:
    ctx = field_ctx(cfg.p, cfg.e, 3, cfg.n)
    m = auto_modulus(ctx)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        img = classify_image(m)
    gens = fund_set(ctx)
    print(f"q={ctx.q} f={m.f} image={img.kind} order={img.order} generators={len(gens)}")
    ok = True
    for r in range(1, cfg.radius + 1):
        t0 = time.perf_counter()
        B = ball(m, r, gens)
        reg = regularity_check(B)
        line = f"radius {r}: {B.n_vertices} vertices, interior {reg.checked}, regular {reg.ok}"
        ok &= reg.ok
        if r >= 2:
            lk = link_check(B, sample=cfg.samples if r >= 3 else (0,), seed=cfg.seed)
            ok &= lk.ok
            line += f", link ok {lk.ok} at {len(lk.vertices)} vertices ({lk.pairs_checked} pairs)"
        print(line + f" [{time.perf_counter() - t0:.2f}s]")
    return ok


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--radius", type=int, default=3)
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    return 0 if probe(ProbeConfig(**vars(ap.parse_args(argv)))) else 2


if __name__ == "__main__":
    sys.exit(main())
