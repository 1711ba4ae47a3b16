"""Sweep the graph scale eps and report which regime gates of the genus-3 assembly hold.

    python3 scripts/epsilon_sweep.py --from -90 --to 0 --step 6
"""

import argparse
import math

from sbverify.config_model import ModelParams, RegimeError, SectionFamily, assemble_G, certify_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--from", dest="lo", type=int, default=-90, help="smallest log2(eps)")
    ap.add_argument("--to", dest="hi", type=int, default=0)
    ap.add_argument("--step", type=int, default=6)
    args = ap.parse_args()

    params = ModelParams()
    cert = certify_bounds(params)
    fam = SectionFamily(params, min(0.25, cert.lambda_max / 2))
    auto = assemble_G(fam, params)
    print(f"N = {auto.N:.4g}, c = {auto.c:.4g}, chosen eps = 2^{int(math.log2(auto.eps))} ({auto.eps:.4g})")
    print(f"{'log2 eps':>9}  result")
    for k in range(args.lo, args.hi + 1, args.step):
        try:
            G = assemble_G(fam, params.with_(eps=2.0**k))
            verdict = "ok, genus %d, min cap density %.6f" % (G.genus, G.cap_min_density)
        except RegimeError as exc:
            verdict = f"outside regime: {exc}"
        print(f"{k:>9}  {verdict}")


if __name__ == "__main__":
    main()
