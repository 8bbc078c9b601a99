"""Locate sign changes of the archimedean-completed zeta on Re s = 1/2.

Reports each ordinate with its residual and the shift under a halved tolerance.

    python scripts/critical_zeros.py --t-lo 10 --t-hi 60
"""

import argparse
import time
from dataclasses import asdict, dataclass

from zetabench.archimedean import char_a_infinity, find_critical_zeros


@dataclass
class ZeroConfig:
    t_lo: float = 10.0
    t_hi: float = 50.0
    step: float = 0.05
    tol: float = 1e-6


def run(cfg: ZeroConfig) -> list[dict]:
    coarse = find_critical_zeros(cfg.t_lo, cfg.t_hi, cfg.step, cfg.tol)
    fine = find_critical_zeros(cfg.t_lo, cfg.t_hi, cfg.step, cfg.tol / 2)
    rows = []
    for t, t2 in zip(coarse, fine):
        rows.append({"t": t, "residual": abs(char_a_infinity(1, complex(0.5, t))), "shift": abs(t - t2)})
    if len(coarse) != len(fine):
        print(f"warning: {len(coarse)} zeros at tol, {len(fine)} at tol/2")
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(ZeroConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=float, default=default)
    cfg = ZeroConfig(**vars(ap.parse_args()))
    t0 = time.perf_counter()
    rows = run(cfg)
    print(f"{len(rows)} zeros on [{cfg.t_lo}, {cfg.t_hi}] in {time.perf_counter() - t0:.2f}s")
    print(f"{'t':>14} {'|char(1/2+it)|':>16} {'shift at tol/2':>16}")
    for r in rows:
        print(f"{r['t']:14.8f} {r['residual']:16.2e} {r['shift']:16.2e}")


if __name__ == "__main__":
    main()
