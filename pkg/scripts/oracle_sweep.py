"""Random-unitary sweep: dense simulation against sin^2((2s+1) theta).

    python scripts/oracle_sweep.py --trials 500 --s-max 60 --seed 1
"""

import argparse
import math

import numpy as np

from iongrover.analytic import matrix_element, predict
from iongrover.grover import GroverSpec, run
from iongrover.linalg import basis_state, random_unitary


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--s-max", type=int, default=40)
    ap.add_argument("--max-qubits", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    worst = {}
    for _ in range(args.trials):
        n = int(rng.integers(1, args.max_qubits + 1))
        dim = 1 << n
        u = random_unitary(dim, rng)
        g, t = (basis_state(n, int(i)) for i in rng.integers(dim, size=2))
        mag = abs(matrix_element(u, t, g))
        if not 0 < mag < 1:
            continue
        spec = GroverSpec(n, tau=t, gamma=g, variant="general", u=u, max_iterations=args.s_max)
        sim = np.array([tr.success_probability for tr in run(spec)])
        err = float(np.max(np.abs(sim - predict(math.asin(mag), args.s_max).probabilities)))
        worst[n] = max(worst.get(n, 0.0), err)

    for n in sorted(worst):
        print(f"n = {n:2d}  dim = {1 << n:4d}  worst |P_sim - P_closed| = {worst[n]:.3e}")


if __name__ == "__main__":
    main()
