"""Run the disjoint-curve scan over a grid of (g, b) and print a table of counts.

    python3 scripts/run_scan.py --g 2 3 4 --b 8 10 12 --m-max 16 --alpha-max 3
"""

import argparse
import time

from sbverify.divisor import ScanConfig, case1_scan, max_b_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--g", type=int, nargs="+", default=[3])
    ap.add_argument("--b", type=int, nargs="+", default=[12])
    ap.add_argument("--m-max", type=int, default=16)
    ap.add_argument("--alpha-max", type=int, default=3)
    ap.add_argument("--no-noether", action="store_true", help="do not pin sum m_i (needs --sum-max)")
    ap.add_argument("--sum-max", type=int, default=None)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print(f"{'g':>3} {'b':>4} {'bound':>6} {'instances':>14} {'admissible':>11} {'flagged':>8} {'time':>7}")
    for g in args.g:
        for b in args.b:
            cfg = ScanConfig(g, b, args.m_max, args.alpha_max, not args.no_noether, args.sum_max)
            t0 = time.perf_counter()
            rep = case1_scan(cfg, workers=args.workers)
            dt = time.perf_counter() - t0
            print(f"{g:>3} {b:>4} {max_b_bound(g):>6} {rep.witness('instances'):>14} "
                  f"{rep.witness('admissible'):>11} {rep.witness('flagged'):>8} {dt:>6.2f}s")


if __name__ == "__main__":
    main()
