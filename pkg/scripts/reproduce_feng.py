"""Corrected vs original diffusion for n = 2..4, marked state |1...1>.

Prints probability and amplitude side by side so the n = 3 peak of the
original sequence (0.383 probability, 0.619 amplitude) is easy to read off.

    python scripts/reproduce_feng.py --s-max 10
"""

import argparse

import numpy as np

from iongrover.analytic import predict, w_theta
from iongrover.grover import GroverSpec, optimal_iterations, run
from iongrover.linalg import from_bitstring


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--s-max", type=int, default=10)
    ap.add_argument("--prepared", choices=["zeros", "ones"], default="zeros")
    args = ap.parse_args()

    for n in (2, 3, 4):
        tau = from_bitstring("1" * n)
        gamma = from_bitstring(("0" if args.prepared == "zeros" else "1") * n)
        corr = run(GroverSpec(n, tau=tau, gamma=gamma, max_iterations=args.s_max))
        feng = run(GroverSpec(n, tau=tau, gamma=gamma, variant="feng", max_iterations=args.s_max))
        ideal = predict(w_theta(n), args.s_max).probabilities
        print(f"n = {n}  (first peak of the ideal curve at s = {optimal_iterations(w_theta(n))})")
        print(f"{'s':>3} {'P ideal':>10} {'P corrected':>12} {'P original':>11} {'|amp| original':>15}")
        for c, f, p in zip(corr, feng, ideal):
            print(
                f"{c.s:>3} {p:>10.6f} {c.success_probability:>12.6f} "
                f"{f.success_probability:>11.6f} {f.marked_amplitude_magnitude:>15.6f}"
            )
        pf = np.array([t.success_probability for t in feng])
        af = np.array([t.marked_amplitude_magnitude for t in feng])
        print(f"original: max P = {pf.max():.6f} at s = {pf.argmax()}, max |amp| = {af.max():.6f}\n")


if __name__ == "__main__":
    main()
