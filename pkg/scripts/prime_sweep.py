"""Sweep good primes for a curve: a_p, Hasse ratio, rationality and Weil checks.

    python scripts/prime_sweep.py --a 1 --b 1 --bound 500
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from zetabench.finite_field import (
    CurveSpec,
    count_points_charsum,
    count_points_naive,
    counts_over_extensions,
    primes_up_to,
)
from zetabench.local_zeta import functional_eq_check, local_zeta_curve, rationality_check, weil_rh_check


@dataclass
class SweepConfig:
    a: int = 1
    b: int = 1
    bound: int = 500
    extension_degree: int = 6
    cross_check: bool = True  # run the fibre enumerator too


def sweep(cfg: SweepConfig) -> dict:
    curve = CurveSpec(cfg.a, cfg.b)
    rows, mismatches = [], []
    for p in primes_up_to(cfg.bound):
        if not curve.has_good_reduction(p):
            continue
        rec = count_points_charsum(curve, p)
        if cfg.cross_check and count_points_naive(curve, p).count != rec.count:
            mismatches.append(p)
        z = local_zeta_curve(curve, p)
        rows.append({
            "p": p,
            "a_p": rec.a_p,
            "sato_tate_x": rec.a_p / (2 * p**0.5),
            "rational": rationality_check(z, counts_over_extensions(curve, p, cfg.extension_degree)),
            "weil": weil_rh_check(z.polys[1], p, 1),
            "functional_eq": functional_eq_check(z.polys[1], p, 1),
        })
    return {"config": asdict(cfg), "primes": len(rows), "mismatches": mismatches,
            "all_checks": all(r["rational"] and r["weil"] and r["functional_eq"] for r in rows),
            "rows": rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        kind = (lambda v: v.lower() in ("1", "true", "yes")) if isinstance(default, bool) else type(default)
        ap.add_argument(f"--{name.replace('_', '-')}", type=kind, default=default)
    ap.add_argument("--json", action="store_true", help="dump every row")
    args = ap.parse_args()
    cfg = SweepConfig(**{k: v for k, v in vars(args).items() if k != "json"})
    t0 = time.perf_counter()
    out = sweep(cfg)
    if args.json:
        print(json.dumps(out, indent=2))
        return
    print(f"curve y^2 = x^3 + {cfg.a}x + {cfg.b}, {out['primes']} good primes <= {cfg.bound}"
          f" ({time.perf_counter() - t0:.2f}s)")
    print(f"naive/charsum mismatches: {out['mismatches'] or 'none'}; all local checks: {out['all_checks']}")
    xs = [r["sato_tate_x"] for r in out["rows"]]
    print("histogram of a_p / 2 sqrt(p):")
    for k in range(10):
        lo = -1 + k * 0.2
        n = sum(lo <= x < lo + 0.2 or (k == 9 and x == 1) for x in xs)
        print(f"  [{lo:+.1f}, {lo + 0.2:+.1f})  {'#' * n}")


if __name__ == "__main__":
    main()
