#!/usr/bin/env python3
"""Profile the pointwise expansion constants of a polynomial family across t.

Prints N(t), E(t), the truncation used and the tail bound on a grid of
evaluation points, cross-checked against the induced discrete measure.

Usage:
    python scripts/expansion_profile.py --family jacobi --alpha 0 --beta 0 --points 9
    python scripts/expansion_profile.py --family hermite --tau 0.5
"""

import argparse

import numpy as np

from stechkin import (
    OrthogonalFamily,
    Symbol,
    best_approx,
    induced_measure,
    opoly_constants,
)


def build_family(args) -> OrthogonalFamily:
    if args.family == "hermite":
        return OrthogonalFamily.hermite()
    if args.family == "laguerre":
        return OrthogonalFamily.laguerre(args.alpha)
    return OrthogonalFamily.jacobi(args.alpha, args.beta)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=("hermite", "laguerre", "jacobi"),
                    default="jacobi")
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--beta", type=float, default=0.0)
    ap.add_argument("--phi", type=float, default=1.0, help="power exponent of phi")
    ap.add_argument("--psi", type=float, default=2.0, help="power exponent of psi")
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=7)
    args = ap.parse_args()

    fam = build_family(args)
    phi, psi = Symbol.power(args.phi), Symbol.power(args.psi)
    spans = {"hermite": (-3.0, 3.0), "laguerre": (0.1, 8.0), "jacobi": (-0.9, 0.9)}
    lo, hi = spans[fam.kind]
    print(f"{'t':>8} {'N(t)':>16} {'E(t)':>16} {'terms':>7} {'tail bound':>12} "
          f"{'vs discrete':>12}")
    worst = 0.0
    for t in np.linspace(lo, hi, args.points):
        pc = opoly_constants(fam, phi, psi, args.tau, float(t))
        mu = induced_measure(fam, float(t), pc.truncation)
        cons = best_approx(mu, phi, psi, args.tau)
        gap = max(abs(pc.N_pt - cons.N), abs(pc.E_pt - cons.E))
        worst = max(worst, gap)
        print(f"{t:>8.3f} {pc.N_pt:>16.10f} {pc.E_pt:>16.10f} {pc.truncation:>7d} "
              f"{pc.tail_bound:>12.2e} {gap:>12.2e}")
    print(f"\nworst discrete-measure gap: {worst:.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
