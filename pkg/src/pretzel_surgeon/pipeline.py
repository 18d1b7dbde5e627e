"""End-to-end elimination ledger for finite surgeries on (-2,p,q) pretzel knots.

Every candidate slope gets one terminal status and a reason chain whose last
element is an anchor: a one-line statement of the mathematical fact the
exclusion rests on.  Facts consumed from outside the package (infiniteness of
the Coxeter-type quotients, boundary-slope tables, detection of slopes by
ideal points found in the literature) are named in the chain as such.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import norm as nm
from .config import RunConfig
from .cusp import CandidateSet, candidate_finite_slopes, exceptional_candidates_6thm
from .data import DATA_VERSION
from .gluing import GluingSystem, pretzel_255
from .ideal_points import scan_degenerations
from .ohtsuki import ohtsuki_report
from .quotients import check_script, remark_certificates, remark_redundancy
from .shapes import DEFAULT_SCHEDULE, discover_ideal_points, load_plans
from .slopes import KnotSpec, MERIDIAN, Slope, boundary_slopes, load_tables

SCHEMA = 1
NO_FINITE = "no_nontrivial_finite"
INCONCLUSIVE = "inconclusive"
FORMATS = ("json", "table")
TERMINAL = (nm.EXCLUDED, nm.BOUNDARY_SLOPE, nm.EXCLUDED_BY_GROUP_THEORY)

ANCHOR_BOUNDARY = "anchor: a boundary slope of a small knot is not a finite slope"
ANCHOR_NORM = ("anchor: a finite slope that is not a boundary slope has norm at most S+8, "
               "or at most 2S when it is an even integer")
ANCHOR_EVEN = ("anchor: even surgery maps onto (2,p,q;2), which is infinite for odd 5 <= p <= q "
               "with q >= 11 when p = 5 (Edjvet)")
ANCHOR_GM5 = ("anchor: 2(p+q)-k surgery with k = 1 mod 5 maps onto G^{5,p,q}, which is infinite "
              "for 5 <= p <= q except p = q = 5 (Edjvet-Juhasz)")
ANCHOR_GM3 = ("anchor: 2(p+q)+1 surgery maps onto G^{3,p,q}, which is infinite for 7 <= p <= q "
              "with q >= 21 when p = 7 and (p,q) != (9,9) (Edjvet-Juhasz)")
ANCHOR_SHIFT = ("anchor: ||2q+11|| = ||2q+10|| + S - 4a6 and ||2q+13|| = ||2q+10|| + 3S - 4a6, "
                "with ||2q+10|| >= 2(2q-5) + 4a6 once a1..a4 are not all zero")
ANCHOR_RESIDUAL = ("anchor: asserted without reproduction; a norm argument like the one for "
                   "2q+11 on (-2,5,q) is claimed for p = 7, q <= 19 and p = q = 9")
ANCHOR_MERIDIAN = "anchor: the meridian 1/0 is the trivial filling and is not a candidate"


@dataclass(frozen=True)
class ClassifyOptions:
    allow_asserted: bool = False
    word_level: bool = True
    config: RunConfig = field(default_factory=RunConfig)


@dataclass
class LedgerEntry:
    slope: Slope
    status: str
    reasons: list
    min_norm: Optional[int] = None
    bound: Optional[int] = None
    bound_label: str = ""
    witness: Optional[tuple] = None

    @property
    def anchor(self) -> str:
        return self.reasons[-1]

    def to_json(self) -> dict:
        return {"slope": str(self.slope), "status": self.status, "reasons": list(self.reasons),
                "min_norm": self.min_norm, "bound": self.bound, "bound_label": self.bound_label,
                "witness": list(self.witness) if self.witness is not None else None}


@dataclass
class Ledger:
    knot: KnotSpec
    route: str
    candidates: CandidateSet
    entries: list
    conclusion: str
    S: int
    detections: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def entry(self, s) -> LedgerEntry:
        s = Slope.of(s)
        for e in self.entries:
            if e.slope == s:
                return e
        raise KeyError(str(s))

    def by_status(self, status: str) -> list:
        return [e.slope for e in self.entries if e.status == status]

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "data_version": DATA_VERSION,
                "knot": [self.knot.p, self.knot.q], "route": self.route, "S": self.S,
                "candidates": [str(s) for s in self.candidates],
                "detections": {str(s): c for s, c in sorted(self.detections.items(),
                                                            key=lambda kv: float(kv[0]))},
                "entries": [e.to_json() for e in self.entries],
                "meridian": ANCHOR_MERIDIAN,
                "notes": list(self.notes),
                "conclusion": self.conclusion}


def conclude(entries, allow_asserted: bool) -> str:
    ok = TERMINAL + ((nm.ASSERTED,) if allow_asserted else ())
    return NO_FINITE if all(e.status in ok for e in entries) else INCONCLUSIVE


# --- detection evidence ----------------------------------------------------

def detections_from_triangulation(sys: GluingSystem, n_starts: int = 60, seed: int = 0) -> tuple:
    """Detected slopes with ideal-point counts, and a note per source of evidence."""
    counts, notes = {}, []
    records = scan_degenerations(sys)
    for rec in records:
        counts[rec.slope] = max(counts.get(rec.slope, 0), 1)
    notes.append(f"degeneration scan: {len(records)} one-signed types detecting "
                 + ", ".join(sorted({str(r.slope) for r in records}, key=lambda x: float(Slope.parse(x)))))
    for name, plan in sorted(load_plans().items()):
        found = discover_ideal_points(sys, plan, DEFAULT_SCHEDULE, n_starts=n_starts, seed=seed)
        for res in found:
            counts[res.slope] = counts.get(res.slope, 0) + 1
        if found:
            notes.append(f"continuation {name}: {len(found)} ideal point(s) of slope "
                         f"{found[0].slope} ({', '.join(r.branch for r in found)})")
    return counts, notes


@lru_cache(maxsize=None)
def _bundled_255_detections(n_starts: int, seed: int) -> tuple:
    counts, notes = detections_from_triangulation(pretzel_255(), n_starts, seed)
    return tuple(counts.items()), tuple(notes)


def _detections(knot: KnotSpec, opts: ClassifyOptions) -> tuple:
    b = opts.config.budgets
    if (knot.p, knot.q) == (5, 5):
        if opts.config.data.gluing:
            counts, notes = detections_from_triangulation(
                GluingSystem.load(opts.config.data.gluing), b.n_starts, b.seed)
            return counts, list(notes)
        counts, notes = _bundled_255_detections(b.n_starts, b.seed)
        return dict(counts), list(notes)
    if (knot.p, knot.q) == (5, 7):
        rep = ohtsuki_report()
        return ({Slope(14, 1): 1, Slope(15, 1): 1, Slope(37, 2): 1, Slope(24, 1): rep.distinct},
                ["14, 15 and 37/2 detected by ideal points reported in the literature",
                 f"24 detected by {rep.distinct} ideal points: distinct cross-ratio values "
                 "among the 16 roots of the end-game polynomial"])
    if (knot.p, knot.q) == (5, 9):
        return ({Slope(14, 1): 1, Slope(15, 1): 1, Slope(67, 3): 1},
                ["14, 15 and 67/3 detected by ideal points reported in the literature"])
    raise ValueError(f"no detection evidence for {knot}")


# --- group-theoretic exclusions ---------------------------------------------

@lru_cache(maxsize=None)
def _script_summary(name: str, p: int, q: int, max_steps: int, word_level: bool) -> tuple:
    rep = check_script(name, p, q, max_steps=max_steps, word_level=word_level)
    n = len(rep.checks)
    proved = sum(c.status == "proved" for c in rep.checks)
    return rep.abelian_ok, proved, n


def _quotient_reasons(name: str, knot: KnotSpec, opts: ClassifyOptions) -> tuple:
    ab, proved, n = _script_summary(name, knot.p, knot.q, opts.config.budgets.max_steps,
                                    opts.word_level)
    reasons = [f"substitution script '{name}': {n} source relators map into the abelianized "
               f"target" + ("" if ab else " (FAILED)")]
    if opts.word_level:
        reasons.append(f"word level: {proved}/{n} relator images derived trivial with "
                       "replayed certificates")
        ok = ab and proved == n
    else:
        reasons.append("word-level derivation search skipped")
        ok = ab
    return ok, reasons


def group_exclusion(knot: KnotSpec, s: Slope, opts: ClassifyOptions) -> Optional[LedgerEntry]:
    """A group-theoretic exclusion of s if one of the quotient constructions applies."""
    p, q = knot.p, knot.q
    if not s.is_integral:
        return None
    T = knot.toroidal
    if s.is_even_integer and (p > 5 or q >= 11):
        ok, reasons = _quotient_reasons("even", knot, opts)
        if ok:
            return LedgerEntry(s, nm.EXCLUDED_BY_GROUP_THEORY,
                               [f"{s} is even; adding x^2, y^2, z^2, (yz)^2 gives the "
                                "even-length quotient"] + reasons + [ANCHOR_EVEN])
    k = T - s.num
    if k >= 1 and remark_redundancy(p, q, k) and (p, q) != (5, 5):
        ok, reasons = _quotient_reasons("gm5", knot, opts)
        if k > 1:
            proof = remark_certificates(p, q, k, opts.config.budgets.max_steps)
            ok = ok and proof.ok
            reasons.append(f"k = {k}: the extra relator C^{k - 1} follows from C^5, itself derived "
                           f"in {len(proof.c5.certificate or ())} insertions; "
                           + ("replayed" if proof.ok else "NOT replayed"))
        if ok:
            return LedgerEntry(s, nm.EXCLUDED_BY_GROUP_THEORY,
                               [f"{s} = 2(p+q) - {k} with {k} = 1 mod 5"] + reasons
                               + [f"quotient onto G^(5,{p},{q})", ANCHOR_GM5])
    if s.num == T + 1 and p >= 7 and not (p == 7 and q <= 19) and (p, q) != (9, 9):
        ok, reasons = _quotient_reasons("gm3", knot, opts)
        if ok:
            return LedgerEntry(s, nm.EXCLUDED_BY_GROUP_THEORY,
                               [f"{s} = 2(p+q) + 1"] + reasons
                               + [f"quotient onto G^(3,{p},{q})", ANCHOR_GM3])
    return None


# --- routes -----------------------------------------------------------------

def _tables(opts: ClassifyOptions):
    path = opts.config.data.boundary_slopes
    return load_tables(path) if path else None


def _norm_route(knot: KnotSpec, opts: ClassifyOptions) -> Ledger:
    table = boundary_slopes(knot, _tables(opts))
    counts, notes = _detections(knot, opts)
    model = nm.assemble_constraints(knot, counts, table)
    detected_strict = sum(1 for s in counts if s in table.strict)
    cands = candidate_finite_slopes(knot, table, detected_strict)
    notes.append("lower bounds " + ", ".join(f"a({b})>={L}" for b, L in
                                             zip(table.slopes, model.lower_bounds))
                 + f"; sum of a_j * distance(1/0, beta_j) = S/2 = {model.total}")
    entries = []
    for s in cands:
        value, witness = nm.min_norm_over_feasible(model, s)
        v = nm.finite_slope_verdict(model, s, value)
        quick = nm.norm_lower_bound(model, s, table.slopes)
        chain = [f"candidate: {'; '.join(cands.provenance[s])}",
                 f"lower-bound norm {quick}; exact minimum {value} at a = {witness}",
                 f"{value} {'>' if v.status == nm.EXCLUDED else '<='} {v.bound_used} = {v.bound_label}"]
        if v.status == nm.EXCLUDED:
            entries.append(LedgerEntry(s, nm.EXCLUDED, chain + [ANCHOR_NORM], value, v.bound_used,
                                       v.bound_label, witness))
            continue
        g = group_exclusion(knot, s, opts)
        if g is not None:
            g.reasons = chain + g.reasons
            g.min_norm, g.bound, g.bound_label, g.witness = value, v.bound_used, v.bound_label, witness
            entries.append(g)
        else:
            entries.append(LedgerEntry(s, nm.NOT_EXCLUDED, chain + ["no applicable exclusion"],
                                       value, v.bound_used, v.bound_label, witness))
    return Ledger(knot, "norm", cands, entries, conclude(entries, opts.allow_asserted),
                  nm.minimal_norm(knot), counts, notes)


def _cusp_route(knot: KnotSpec, opts: ClassifyOptions) -> Ledger:
    cands = exceptional_candidates_6thm(knot)
    table = boundary_slopes(knot, _tables(opts))
    T = knot.toroidal
    shift = nm.shift_exclusion(knot.q) if knot.p == 5 else None
    entries = []
    for s in cands:
        base = [f"candidate: {'; '.join(cands.provenance[s])}"]
        if s in table:
            entries.append(LedgerEntry(s, nm.BOUNDARY_SLOPE, base + [
                f"{s} is a boundary slope", ANCHOR_BOUNDARY]))
            continue
        if shift is not None and s in (Slope(2 * knot.q + 11, 1), Slope(2 * knot.q + 13, 1)):
            v = next(v for v in shift.verdicts if v.slope == s)
            entries.append(LedgerEntry(s, v.status, base + [
                f"if a1 = a2 = a3 = a4 = 0: {shift.zero_case}",
                f"otherwise ||{s}|| >= {v.min_norm} {'>' if v.status == nm.EXCLUDED else '<='} "
                f"{v.bound_used} = S+8", ANCHOR_SHIFT, ANCHOR_NORM], None, v.bound_used, "S+8"))
            continue
        g = group_exclusion(knot, s, opts)
        if g is not None:
            g.reasons = base + g.reasons
            entries.append(g)
            continue
        if s.num == T + 1 and (knot.p == 7 and knot.q <= 19 or (knot.p, knot.q) == (9, 9)):
            entries.append(LedgerEntry(s, nm.ASSERTED, base + [
                "outside the hypotheses of the G^(3,p,q) quotient argument", ANCHOR_RESIDUAL]))
            continue
        entries.append(LedgerEntry(s, nm.NOT_EXCLUDED, base + ["no applicable exclusion"]))
    return Ledger(knot, "cusp", cands, entries, conclude(entries, opts.allow_asserted),
                  nm.minimal_norm(knot))


def classify(p: int, q: int, options: Optional[ClassifyOptions] = None) -> Ledger:
    knot = KnotSpec(p, q)
    opts = options or ClassifyOptions()
    if p == 5 and q <= 9:
        led = _norm_route(knot, opts)
    else:
        led = _cusp_route(knot, opts)
    led.entries.sort(key=lambda e: float(e.slope))
    return led


# --- output -----------------------------------------------------------------

def emit_ledger(ledger: Ledger, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(ledger.to_json(), sort_keys=True, indent=2) + "\n"
    if fmt == "table":
        return _table(ledger)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def _table(ledger: Ledger) -> str:
    rows = [("slope", "status", "min_norm", "bound", "anchor")]
    for e in ledger.entries:
        rows.append((str(e.slope), e.status, "" if e.min_norm is None else str(e.min_norm),
                     "" if e.bound is None else f"{e.bound} ({e.bound_label})",
                     e.anchor.removeprefix("anchor: ")))
    rows.append((str(MERIDIAN), "trivial", "", "", ANCHOR_MERIDIAN.removeprefix("anchor: ")))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = [f"knot {ledger.knot}  S = {ledger.S}  route = {ledger.route}"]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r[:4], widths)) + "  " + r[4])
    lines.append(f"conclusion: {ledger.conclusion}")
    return "\n".join(lines) + "\n"
