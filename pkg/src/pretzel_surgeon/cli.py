"""Command-line interface: pretzel-surgeon <subcommand> ...

Exit codes: 0 success, 2 invalid input, 3 inconclusive classification.
"""

from __future__ import annotations

import argparse
import cmath
import json
import logging
import sys
import time

from . import norm as nm
from .cache import ResultCache, cache_key
from .config import load_config
from .cusp import candidate_finite_slopes
from .derivation import derivation_search, replay
from .dilog import bloch_wigner_volume
from .gluing import GluingSystem
from .ideal_points import IdealPointRecord, format_type, scan_degenerations
from .ohtsuki import ohtsuki_report
from .pipeline import (FORMATS, NO_FINITE, ClassifyOptions, _detections, classify,
                       emit_ledger)
from .presentations import abelianization, c5_presentation, surgered_presentation
from .quotients import check_script, script_names
from .shapes import (DEFAULT_SCHEDULE, discover_ideal_points, limit_shapes, load_plans,
                     solve_complete)
from .slopes import KnotSpec, Slope, boundary_slopes
from . import data

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 2, 3
log = logging.getLogger("pretzel_surgeon")


class InvalidInput(ValueError):
    pass


def _knot(text: str) -> KnotSpec:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"--knot expects P,Q, got {text!r}")
    return KnotSpec(p, q)


def _out(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _load_system(args, cfg) -> GluingSystem:
    path = args.file or cfg.data.gluing or data.data_path("pretzel_255_gluing.json")
    args.file = str(path)
    return GluingSystem.load(path)


# --- subcommands -------------------------------------------------------------

def cmd_classify(args, cfg) -> int:
    opts = ClassifyOptions(allow_asserted=args.allow_asserted, word_level=not args.no_word_level,
                           config=cfg)
    led = classify(args.p, args.q, opts)
    sys.stdout.write(emit_ledger(led, args.format))
    return EXIT_OK if led.conclusion == NO_FINITE else EXIT_INCONCLUSIVE


def _model(knot, cfg):
    counts, _ = _detections(knot, ClassifyOptions(config=cfg))
    return nm.assemble_constraints(knot, counts)


def cmd_norm_min(args, cfg) -> int:
    knot = _knot(args.knot)
    s = Slope.parse(args.slope)
    model = _model(knot, cfg)
    value, witness = nm.min_norm_over_feasible(model, s)
    v = nm.finite_slope_verdict(model, s, value)
    _out({"knot": [knot.p, knot.q], "model": model.to_json(), "witness": list(witness),
          "verdict": v.to_json()})
    return EXIT_OK


def cmd_verdicts(args, cfg) -> int:
    knot = _knot(args.knot)
    table = boundary_slopes(knot)
    model = _model(knot, cfg)
    detected = sum(1 for b, L in zip(model.boundary, model.lower_bounds) if L > 0 and b in table.strict)
    out = []
    for s in candidate_finite_slopes(knot, table, detected):
        value, witness = nm.min_norm_over_feasible(model, s)
        rec = nm.finite_slope_verdict(model, s, value).to_json()
        rec["witness"] = list(witness)
        out.append(rec)
    _out({"knot": [knot.p, knot.q], "S": nm.minimal_norm(knot), "verdicts": out})
    return EXIT_OK


def cmd_ideal_scan(args, cfg) -> int:
    t0 = time.perf_counter()
    sys_ = _load_system(args, cfg)
    compute = lambda: [r.to_json() for r in scan_degenerations(sys_)]
    if args.no_cache:
        payload, hit = compute(), False
    else:
        cache = ResultCache(args.cache_dir)
        payload, hit = cache.get_or_compute("ideal-scan", cache_key("ideal-scan", sys_.digest()),
                                            compute)
    records = [IdealPointRecord.from_json(r) for r in payload]
    sys.stderr.write(f"cache {'hit' if hit else 'miss'}; {len(records)} records in "
                     f"{time.perf_counter() - t0:.3f} s\n")
    if args.format == "table":
        for r in records:
            sys.stdout.write(f"{format_type(r.I):24s} d={r.d}  vM={r.vM:3d} vL={r.vL:4d}  "
                             f"slope {r.slope}\n")
    else:
        _out({"system": sys_.name, "digest": sys_.digest(), "records": payload})
    return EXIT_OK


def cmd_continue(args, cfg) -> int:
    sys_ = _load_system(args, cfg)
    plans = load_plans()
    if args.plan not in plans:
        raise InvalidInput(f"unknown plan {args.plan!r}; known: {', '.join(sorted(plans))}")
    plan = plans[args.plan]
    b = cfg.budgets

    def compute():
        out = []
        for res in discover_ideal_points(sys_, plan, DEFAULT_SCHEDULE, n_starts=b.n_starts,
                                         seed=b.seed):
            rec = res.to_json()
            rec["volume"] = bloch_wigner_volume(limit_shapes(sys_, plan, res.direct))
            out.append(rec)
        return out

    if args.no_cache:
        payload, hit = compute(), False
    else:
        key = cache_key("continue", sys_.digest(), {"plan": plan.to_json(), "n_starts": b.n_starts,
                                                    "seed": b.seed})
        payload, hit = ResultCache(args.cache_dir).get_or_compute("continue", key, compute)
    sys.stderr.write(f"cache {'hit' if hit else 'miss'}; {len(payload)} ideal points\n")
    _out({"plan": args.plan, "ideal_points": payload})
    return EXIT_OK


def _parse_shape(text: str):
    text = text.strip()
    if text.lower() in ("none", "-"):
        return None
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise InvalidInput(f"bad shape {text!r}")


def cmd_volume(args, cfg) -> int:
    if args.complete:
        sys_ = _load_system(args, cfg)
        shapes = list(solve_complete(sys_, [cmath.exp(1j * cmath.pi / 3)] * sys_.n))
    elif args.shapes:
        shapes = [_parse_shape(s) for s in args.shapes.split(",")]
    else:
        raise InvalidInput("give --shapes or --complete")
    vol = bloch_wigner_volume(shapes)
    _out({"shapes": [None if z is None else [z.real, z.imag] for z in shapes], "volume": vol})
    return EXIT_OK


def cmd_ohtsuki(args, cfg) -> int:
    rep = ohtsuki_report(tol=args.tol)
    if args.format == "json":
        _out(rep.to_json())
        return EXIT_OK
    for z, r, c in zip(rep.roots, rep.residuals, rep.cross_ratios):
        sys.stdout.write(f"zeta = {z.real:+.12f} {z.imag:+.12f}i  residual {r:.1e}  "
                         f"cross ratio {c.real:+.12f} {c.imag:+.12f}i\n")
    sys.stdout.write(f"distinct cross-ratio values: {rep.distinct} "
                     f"(multiplicities {list(rep.multiplicities)})\n")
    return EXIT_OK


def cmd_group_ab(args, cfg) -> int:
    knot = _knot(args.knot)
    pres = surgered_presentation(knot.p, knot.q, Slope.parse(args.slope))
    ab = abelianization(pres)
    _out({"presentation": pres.to_json(), "abelianization": ab.to_json(), "group": str(ab)})
    return EXIT_OK


DERIVE_PRESETS = {"c5": "C^5", "abc2": "(ABC)^2"}


def cmd_group_derive(args, cfg) -> int:
    KnotSpec(args.p, args.q)
    pres = c5_presentation(args.p, args.q)
    w = pres.word(DERIVE_PRESETS[args.preset])
    b = cfg.budgets
    t0 = time.perf_counter()
    res = derivation_search(pres, w, max_len=b.max_len, max_steps=b.max_steps)
    _out({"presentation": pres.to_json(), "word": pres.format(w), "status": res.status,
          "expansions": res.expansions, "states": res.states,
          "replayed": bool(res.found and replay(pres, res.certificate)),
          "seconds": round(time.perf_counter() - t0, 3),
          "certificate": res.certificate.to_json() if res.found else None})
    return EXIT_OK if res.found else EXIT_INCONCLUSIVE


def cmd_group_quotient(args, cfg) -> int:
    rep = check_script(args.preset, args.p, args.q, max_steps=cfg.budgets.max_steps,
                       word_level=not args.no_word_level)
    _out(rep.to_json())
    return EXIT_OK if rep.abelian_ok and (args.no_word_level or rep.all_proved) else EXIT_INCONCLUSIVE


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pretzel-surgeon",
                                 description="Finite-surgery classification for (-2,p,q) pretzel knots")
    ap.add_argument("--config", help="TOML file with [data] paths and [budgets]")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="elimination ledger for one knot")
    c.add_argument("-p", type=int, required=True)
    c.add_argument("-q", type=int, required=True)
    c.add_argument("--format", default="table", help="|".join(FORMATS))
    c.add_argument("--allow-asserted", action="store_true",
                   help="count asserted-but-unverified exclusions toward the conclusion")
    c.add_argument("--no-word-level", action="store_true",
                   help="skip derivation searches in quotient checks")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("norm-min", help="exact minimum norm of a slope")
    c.add_argument("--knot", required=True)
    c.add_argument("--slope", required=True)
    c.set_defaults(func=cmd_norm_min)

    c = sub.add_parser("verdicts", help="norm verdict for every candidate slope")
    c.add_argument("--knot", required=True)
    c.set_defaults(func=cmd_verdicts)

    for name, func in (("ideal-scan", cmd_ideal_scan), ("continue", cmd_continue)):
        c = sub.add_parser(name)
        c.add_argument("--file", help="gluing-equation JSON (default: bundled (-2,5,5))")
        c.add_argument("--cache-dir", help="cache directory (default: $PRETZEL_SURGEON_CACHE)")
        c.add_argument("--no-cache", action="store_true")
        c.set_defaults(func=func)
        if name == "ideal-scan":
            c.add_argument("--format", default="json", choices=("json", "table"))
        else:
            c.add_argument("--plan", required=True)

    c = sub.add_parser("volume", help="sum of Bloch-Wigner values of shapes")
    c.add_argument("--shapes", help="comma-separated complex shapes, 'none' for degenerate")
    c.add_argument("--complete", action="store_true",
                   help="solve for the complete structure of --file first")
    c.add_argument("--file")
    c.set_defaults(func=cmd_volume)

    c = sub.add_parser("ohtsuki-roots", help="roots of the end-game polynomial")
    c.add_argument("--tol", type=float, default=1e-6)
    c.add_argument("--format", default="table", choices=("json", "table"))
    c.set_defaults(func=cmd_ohtsuki)

    g = sub.add_parser("group", help="presentations, derivations, quotients")
    gs = g.add_subparsers(dest="group_command", required=True)
    c = gs.add_parser("ab")
    c.add_argument("--knot", required=True)
    c.add_argument("--slope", required=True)
    c.set_defaults(func=cmd_group_ab)
    c = gs.add_parser("derive")
    c.add_argument("--preset", required=True, choices=sorted(DERIVE_PRESETS))
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=cmd_group_derive)
    c = gs.add_parser("quotient")
    c.add_argument("--preset", required=True, choices=script_names())
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--no-word-level", action="store_true")
    c.set_defaults(func=cmd_group_quotient)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (ValueError, OSError, KeyError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
