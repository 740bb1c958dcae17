#!/usr/bin/env python3
"""Audit the parametric solution against the brute-force KKT oracle.

Draws random diagonal instances, solves the norm-constrained minimization
directly, and prints the worst residual of each certified identity.

Usage:
    python scripts/oracle_audit.py --count 200 --seed 11
"""

import argparse

import numpy as np

from stechkin import DiagonalInstance, Symbol, verify_theorems


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-atoms", type=int, default=12)
    ap.add_argument("--threshold", type=float, default=1e-8)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    worst = {"parametric": 0.0, "deviation_at_gtau": 0.0, "norm_of_gtau": 0.0,
             "extremal_equality": 0.0, "coefficient_max": 0.0}
    for _ in range(args.count):
        n = int(rng.integers(2, args.max_atoms + 1))
        locs = rng.uniform(-5, 5, size=n)
        while len(set(locs.tolist())) != n:
            locs = rng.uniform(-5, 5, size=n)
        w = rng.uniform(0.05, 2.0, size=n)
        a, b = sorted(rng.choice([0.5, 1.0, 1.5, 2.0, 3.0, 4.0], size=2, replace=False))
        inst = DiagonalInstance(locations=tuple(locs), weights=tuple(w),
                                phi=Symbol.power(float(a)), psi=Symbol.power(float(b)))
        tau = float(rng.uniform(0.05, 20.0))
        res = verify_theorems(inst, tau)
        for key in worst:
            worst[key] = max(worst[key], getattr(res, key))

    print(f"instances: {args.count}  seed: {args.seed}")
    for key, val in worst.items():
        print(f"  {key:>20}: {val:.3e}")
    bad = max(worst.values())
    print(f"  {'max residual':>20}: {bad:.3e}  "
          f"({'ok' if bad <= args.threshold else 'EXCEEDED'} at {args.threshold:g})")
    return 0 if bad <= args.threshold else 1


if __name__ == "__main__":
    raise SystemExit(main())
