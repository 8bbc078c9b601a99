"""Characteristic polynomials of N x N truncations of banded operators.

Shows which low-order coefficient windows stabilise as N grows and the factor
shared by every truncation.

    python scripts/truncation_study.py --sizes 4 6 8 10
"""

import argparse
from dataclasses import dataclass, field

from zetabench.operator_k import BandedOperatorSpec, truncated_charpoly_sequence


def rotation_blocks() -> BandedOperatorSpec:
    return BandedOperatorSpec(lambda i: {i + 1: 1} if i % 2 else {i - 1: -1}, 1, "2x2 rotation blocks")


@dataclass
class TruncationConfig:
    sizes: list[int] = field(default_factory=lambda: [4, 6, 8, 10])
    width: int = 3
    operators: list[BandedOperatorSpec] = field(default_factory=lambda: [
        BandedOperatorSpec.diagonal(1),
        BandedOperatorSpec.tridiagonal(1, 0, 1),
        BandedOperatorSpec.tridiagonal(1, 2, 1),
        rotation_blocks(),
    ])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=TruncationConfig().sizes)
    ap.add_argument("--width", type=int, default=TruncationConfig.width)
    args = ap.parse_args()
    cfg = TruncationConfig(sizes=args.sizes, width=args.width)
    for op in cfg.operators:
        rep = truncated_charpoly_sequence(op, cfg.sizes, cfg.width)
        print(f"== {op.description} (bandwidth {op.bandwidth})")
        for n, P in zip(rep.sizes, rep.polynomials):
            print(f"  N={n:<3} {P.format('s')}")
        for w in rep.windows:
            mark = "stable" if w.stabilizes else "moving"
            print(f"  window s^{w.start}..s^{w.start + w.width - 1}: {mark} {list(w.values)}")
        print(f"  persistent factor: {rep.persistent_factor.format('s')}")


if __name__ == "__main__":
    main()
