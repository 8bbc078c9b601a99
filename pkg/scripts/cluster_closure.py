"""Mutation-class sizes for small skew-symmetric exchange matrices.

Infinite classes (Kronecker, Markov) stop at the seed budget and say so.
Kronecker variables grow exponentially along its exchange line, so budgets
much beyond 60 get slow.

    python scripts/cluster_closure.py --budget 50
"""

import argparse
import time
from dataclasses import dataclass, field

from zetabench.cluster import Seed, mutation_closure


def path_quiver(n: int) -> list[list[int]]:
    B = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        B[i][i + 1], B[i + 1][i] = 1, -1
    return B


@dataclass
class ClosureConfig:
    budget: int = 50
    cases: dict[str, list[list[int]]] = field(default_factory=lambda: {
        "A1": [[0]],
        "A1 x A1": [[0, 0], [0, 0]],
        "A2": path_quiver(2),
        "A3": path_quiver(3),
        "A4": path_quiver(4),
        "3-cycle": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]],  # mutation-equivalent to A3
        "Kronecker": [[0, 2], [-2, 0]],
        "Markov": [[0, 2, -2], [-2, 0, 2], [2, -2, 0]],
    })


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=ClosureConfig.budget)
    cfg = ClosureConfig(budget=ap.parse_args().budget)
    print(f"{'type':<10} {'clusters':>9} {'variables':>10} {'laurent':>8} {'truncated':>10} {'time':>7}")
    for name, B in cfg.cases.items():
        t0 = time.perf_counter()
        rep = mutation_closure(Seed.initial(B), cfg.budget)
        print(f"{name:<10} {rep.n_clusters:>9} {rep.n_variables:>10} {str(rep.laurent_ok):>8}"
              f" {str(rep.truncated):>10} {time.perf_counter() - t0:6.2f}s", flush=True)


if __name__ == "__main__":
    main()
