"""Tight five-vector frames in R^3: exact value via the Naimark complement
of the pentagon, compared with numerical minimization in both modes.

    python scripts/question1.py [--restarts 50] [--seed 0]
"""
import argparse
import math

from framelab import angle_set, certify, naimark_complement, pentagon, welch_bound
from framelab.optimize import SolverConfig, minimize_coherence


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--restarts", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    exact = 2 / 3 * math.cos(math.pi / 5)
    comp = naimark_complement(pentagon()).complement
    cert = certify(comp, 1e-10)
    print("pentagon complement (5 vectors in R^3)")
    print(f"  coherence      {cert.coherence:.12f}   (2/3)cos(pi/5) = {exact:.12f}")
    print(f"  tight          {cert.is_tight}   residual {cert.tightness_residual:.2e}")
    print(f"  angle set      {angle_set(comp).values}")
    print(f"  Welch W(5,3)   {welch_bound(5, 3):.12f}")
    print()

    for mode in ("unconstrained", "tight"):
        r = minimize_coherence(SolverConfig(3, 5, "R", mode, restarts=args.restarts, seed=args.seed))
        print(f"{mode:>13}: best coherence {r.best_coherence:.8f}   "
              f"restart {r.best_restart}   tightness residual {r.tightness_residual:.2e}")
    print(f"{'1/sqrt(5)':>13}: {1 / math.sqrt(5):.8f}")
    print(f"{'(2/3)cos(pi/5)':>13}: {exact:.8f}")


if __name__ == "__main__":
    main()
