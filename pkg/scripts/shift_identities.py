"""Compare the two shift identities for (-2,5,q) against random feasible coefficient vectors."""

import argparse
import random

from pretzel_surgeon import norm as nm


def random_feasible(model, rng):
    w = model.weights
    while True:
        rem, vec = model.total, [0] * len(w)
        order = list(range(len(w)))
        rng.shuffle(order)
        for j in order[:-1]:
            vec[j] = rng.randint(0, rem // w[j])
            rem -= vec[j] * w[j]
        if rem % w[order[-1]] == 0:
            vec[order[-1]] = rem // w[order[-1]]
            return vec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(" q   first ok   3S-4a6 ok   3S-8a6 ok")
    for q in range(11, 33, 2):
        model = nm.five_q_model(q)
        checks = [nm.norm_shift_identity(q, random_feasible(model, rng)) for _ in range(args.samples)]
        first = sum(c.first_lhs == c.first_rhs for c in checks)
        shown = sum(c.second_lhs == c.second_rhs for c in checks)
        expanded = sum(c.second_lhs == c.second_rhs_expanded for c in checks)
        print(f"{q:2d}   {first:4d}       {shown:4d}        {expanded:4d}")


if __name__ == "__main__":
    main()
