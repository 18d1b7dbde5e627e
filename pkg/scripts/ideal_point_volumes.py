"""Continue each substitution plan to its ideal points and report limits and volumes."""

import argparse

from pretzel_surgeon.dilog import bloch_wigner_volume
from pretzel_surgeon.gluing import pretzel_255
from pretzel_surgeon.shapes import discover_ideal_points, limit_shapes, load_plans


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--starts", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sys = pretzel_255()
    for name, plan in sorted(load_plans().items()):
        for r in discover_ideal_points(sys, plan, n_starts=args.starts, seed=args.seed):
            vol = bloch_wigner_volume(limit_shapes(sys, plan, r.direct))
            print(f"{name} [{r.branch}] slope {r.slope}, extrapolation drift {r.drift:.1e}, "
                  f"volume {vol:+.6f}")
            for k, z in r.direct.items():
                print(f"    {k} = {z.real:+.9f} {z.imag:+.9f}i")


if __name__ == "__main__":
    main()
