"""Exact norm minima and verdicts for every candidate slope of (-2,5,q), q = 5, 7, 9."""

import argparse

from pretzel_surgeon import norm as nm
from pretzel_surgeon.cusp import candidate_finite_slopes
from pretzel_surgeon.pipeline import ClassifyOptions, _detections
from pretzel_surgeon.slopes import KnotSpec, boundary_slopes


def table(q):
    knot = KnotSpec(5, q)
    counts, _ = _detections(knot, ClassifyOptions())
    bs = boundary_slopes(knot)
    model = nm.assemble_constraints(knot, counts, bs)
    detected = sum(1 for s in counts if s in bs.strict)
    print(f"(-2,5,{q}): S = {nm.minimal_norm(knot)}, lower bounds {model.lower_bounds}, "
          f"boundary slopes {[str(b) for b in model.boundary]}")
    for s in candidate_finite_slopes(knot, bs, detected):
        value, witness = nm.min_norm_over_feasible(model, s)
        v = nm.finite_slope_verdict(model, s, value)
        print(f"  {str(s):6s} min {value:4d} at {witness}  bound {v.bound_used:3d} ({v.bound_label})"
              f"  {v.status}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("q", type=int, nargs="*", default=[5, 7, 9])
    for q in ap.parse_args().q:
        table(q)


if __name__ == "__main__":
    main()
