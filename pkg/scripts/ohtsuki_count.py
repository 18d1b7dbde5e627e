"""Count distinct cross-ratio values over the roots of the end-game polynomial."""

import argparse

from pretzel_surgeon.ohtsuki import bundled_factors, ohtsuki_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, nargs="*", default=[1e-4, 1e-6, 1e-8])
    args = ap.parse_args()
    for f in bundled_factors():
        print("factor", f.coefficients)
    for tol in args.tol:
        rep = ohtsuki_report(tol=tol)
        print(f"tol {tol:.0e}: {rep.distinct} distinct values, multiplicities "
              f"{list(rep.multiplicities)}, max residual {max(rep.residuals):.1e}")


if __name__ == "__main__":
    main()
