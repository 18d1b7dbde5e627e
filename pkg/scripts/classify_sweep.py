"""Classify every (-2,p,q) with 5 <= p <= q <= qmax and tabulate the outcomes."""

import argparse
import collections
import time

from pretzel_surgeon import norm as nm
from pretzel_surgeon.pipeline import ClassifyOptions, classify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qmax", type=int, default=15)
    ap.add_argument("--no-word-level", action="store_true")
    args = ap.parse_args()
    opts = ClassifyOptions(word_level=not args.no_word_level)
    tally = collections.Counter()
    for p in range(5, args.qmax + 1, 2):
        for q in range(p, args.qmax + 1, 2):
            t0 = time.perf_counter()
            led = classify(p, q, opts)
            open_ = [str(e.slope) for e in led.entries if e.status in (nm.ASSERTED, nm.NOT_EXCLUDED)]
            tally[led.conclusion] += 1
            print(f"(-2,{p},{q}) {led.route:4s} {len(led.entries):2d} candidates  {led.conclusion:22s}"
                  f" open: {', '.join(open_) or '-'}  ({time.perf_counter() - t0:.1f} s)")
    print(dict(tally))


if __name__ == "__main__":
    main()
