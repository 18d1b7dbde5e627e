"""Print the one-signed degeneration types of a triangulation with their slopes."""

import argparse
import time

from pretzel_surgeon.gluing import GluingSystem, pretzel_255
from pretzel_surgeon.ideal_points import format_type, scan_degenerations


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--file", help="gluing-equation JSON (default: bundled (-2,5,5))")
    ap.add_argument("--drop", type=int, default=-1, help="index of the redundant edge equation")
    args = ap.parse_args()
    sys = GluingSystem.load(args.file) if args.file else pretzel_255()
    t0 = time.perf_counter()
    records = scan_degenerations(sys, args.drop)
    print(f"{3 ** sys.n} types scanned in {time.perf_counter() - t0:.3f} s")
    print(f"{'type':20s} {'d (as computed)':28s} {'v(M)':>5s} {'v(L)':>5s}  slope")
    for r in records:
        print(f"{format_type(r.I):20s} {str(r.raw_d):28s} {r.vM:5d} {r.vL:5d}  {r.slope}")


if __name__ == "__main__":
    main()
