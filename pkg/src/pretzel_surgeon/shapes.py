"""Numerical shape solutions: the complete structure and curves running into ideal points.

Gluing equations are solved in log form with Newton's method.  Near an ideal point
each degenerating shape is replaced by a local coordinate in a parameter t,

    zero:  z = c t^m       one:  z = 1 - c t^m       inf:  z = 1 / (c t^m),

and the powers of log t cancel row by row (the valuations balance), so the
equations extend analytically to t = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import data
from .gluing import GluingSystem
from .ideal_points import INF, ONE, ZERO, word_valuation
from .slopes import Slope

TWO_PI_I = 2j * math.pi


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12
    max_iter: int = 100
    max_cond: float = 1e10


def newton(func, x0, config: NewtonConfig = NewtonConfig()):
    """Damped Newton iteration for a square complex system; func returns (F, J)."""
    x = np.array(x0, dtype=complex)
    F, J = func(x)
    r = np.linalg.norm(F, np.inf)
    for it in range(config.max_iter):
        if r < config.tol:
            return x, r, it
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"singular Jacobian at iteration {it}") from exc
        lam = 1.0
        while True:
            xn = x + lam * step
            try:
                Fn, Jn = func(xn)
                rn = np.linalg.norm(Fn, np.inf)
            except (ValueError, ZeroDivisionError):
                rn = math.inf
            if np.isfinite(rn) and (rn < r or lam < 1e-3):
                break
            lam *= 0.5
        x, F, J, r = xn, Fn, Jn, rn
        if not np.isfinite(r):
            break
    if r < config.tol:
        return x, r, config.max_iter
    raise ConvergenceError(f"Newton did not converge: residual {r:.3e}")


# -- complete structure ---------------------------------------------------------------

def _log_shapes(z):
    lz = np.log(z)
    lw = np.log(1 - z)
    return lz, -lw, lw - lz + 1j * math.pi


def word_log(row, z) -> complex:
    """Sum of e log z + e' log z' + e'' log z'' with principal branches."""
    lz, l1, l2 = _log_shapes(np.asarray(z, dtype=complex))
    return complex(sum(e * lz[k] + e1 * l1[k] + e2 * l2[k] for k, (e, e1, e2) in enumerate(row)))


def _row_grad(row, z):
    g = np.zeros(len(z), dtype=complex)
    for k, (e, e1, e2) in enumerate(row):
        g[k] = e / z[k] + e1 / (1 - z[k]) + e2 * (-1 / (1 - z[k]) - 1 / z[k])
    return g


def complete_residuals(sys: GluingSystem, z) -> np.ndarray:
    """Edge equations minus 2 pi i, then log M and log L."""
    z = np.asarray(z, dtype=complex)
    out = [word_log(r, z) - TWO_PI_I for r in sys.equations]
    out += [word_log(sys.meridian, z), word_log(sys.longitude, z)]
    return np.array(out)


def solve_complete(sys: GluingSystem, initial_shapes: Sequence[complex],
                   config: NewtonConfig = NewtonConfig(), drop: int = -1) -> np.ndarray:
    z0 = np.asarray(initial_shapes, dtype=complex)
    if z0.shape != (sys.n,):
        raise ValueError(f"need {sys.n} initial shapes")
    if np.any(z0.imag <= 0):
        raise ValueError("initial shapes must lie in the upper half plane")
    drop %= sys.n
    rows = [r for j, r in enumerate(sys.equations) if j != drop] + [sys.meridian]
    rhs = [TWO_PI_I] * (sys.n - 1) + [0]

    def func(z):
        F = np.array([word_log(r, z) - c for r, c in zip(rows, rhs)])
        J = np.array([_row_grad(r, z) for r in rows])
        return F, J

    z, res, _ = newton(func, z0, config)
    full = complete_residuals(sys, z)
    if np.max(np.abs(full)) > 100 * config.tol:
        raise ConvergenceError("solution does not satisfy every gluing equation")
    return z


# -- ideal points ---------------------------------------------------------------------

@dataclass(frozen=True)
class SubstitutionPlan:
    """Local forms of the degenerating shapes; tetrahedra are numbered from 1."""

    name: str
    degenerate: dict          # tetrahedron -> (kind, order)
    normalize: int            # tetrahedron whose coefficient is fixed to 1
    branch_key: Optional[str] = None  # unknown whose imaginary sign labels a branch

    @classmethod
    def from_json(cls, name: str, obj: dict) -> "SubstitutionPlan":
        deg = {int(k): (v[0], int(v[1])) for k, v in obj["degenerate"].items()}
        return cls(name, deg, int(obj["normalize"]), obj.get("branch_key"))

    def to_json(self) -> dict:
        return {"degenerate": {str(k): [kind, m] for k, (kind, m) in sorted(self.degenerate.items())},
                "normalize": self.normalize, "branch_key": self.branch_key}

    def valuations(self, n: int) -> list:
        out = []
        for k in range(1, n + 1):
            kind, m = self.degenerate.get(k, (None, 0))
            out.append({ZERO: (m, 0), ONE: (0, m), INF: (-m, -m)}.get(kind, (0, 0)))
        return out

    def unknowns(self, n: int) -> list:
        names = [f"z{k}" for k in range(1, n + 1) if k not in self.degenerate]
        names += [f"c{k}" for k in sorted(self.degenerate) if k != self.normalize]
        return names


def load_plans() -> dict:
    obj = data.load_json("ideal_point_plans.json")
    return {name: SubstitutionPlan.from_json(name, p) for name, p in obj["plans"].items()}


def plan_slope(sys: GluingSystem, plan: SubstitutionPlan) -> Slope:
    vals = plan.valuations(sys.n)
    vM = word_valuation(vals, sys.meridian)
    vL = word_valuation(vals, sys.longitude)
    if vM == 0:
        raise ValueError("plan gives v(M) = 0")
    return Slope(-vL, vM)


def check_plan(sys: GluingSystem, plan: SubstitutionPlan, drop: int = -1):
    if plan.normalize not in plan.degenerate:
        raise ValueError("the normalized coefficient must belong to a degenerate shape")
    for kind, m in plan.degenerate.values():
        if kind not in (ZERO, ONE, INF) or m < 1:
            raise ValueError(f"bad local form {(kind, m)}")
    vals = plan.valuations(sys.n)
    for lr in sys.log_rows(drop):
        v = sum(a * vz + b * vw for a, b, (vz, vw) in zip(lr.zexp, lr.wexp, vals))
        if v != 0:
            raise ValueError(f"plan {plan.name}: valuations do not balance (row sum {v})")


def _wrap(w: complex) -> complex:
    im = math.remainder(w.imag, 2 * math.pi)
    return complex(w.real, im)


class LocalSystem:
    """Gluing equations in the local coordinates of a plan, as a function of t."""

    def __init__(self, sys: GluingSystem, plan: SubstitutionPlan, drop: int = -1):
        check_plan(sys, plan, drop)
        self.sys, self.plan = sys, plan
        self.rows = sys.log_rows(drop)
        self.names = plan.unknowns(sys.n)
        self.index = {u: i for i, u in enumerate(self.names)}

    def split(self, x):
        """Shapes (None for degenerate) and coefficients per tetrahedron."""
        z, c = {}, {}
        for k in range(1, self.sys.n + 1):
            if k in self.plan.degenerate:
                c[k] = 1.0 + 0j if k == self.plan.normalize else x[self.index[f"c{k}"]]
            else:
                z[k] = x[self.index[f"z{k}"]]
        return z, c

    def shapes(self, x, t: float) -> np.ndarray:
        z, c = self.split(x)
        out = []
        for k in range(1, self.sys.n + 1):
            if k in z:
                out.append(z[k])
                continue
            kind, m = self.plan.degenerate[k]
            u = c[k] * t ** m
            out.append(u if kind == ZERO else 1 - u if kind == ONE else 1 / u)
        return np.array(out, dtype=complex)

    def __call__(self, x, t: float):
        z, c = self.split(x)
        n = self.sys.n
        L1 = np.zeros(n, dtype=complex)
        L2 = np.zeros(n, dtype=complex)
        D1 = [dict() for _ in range(n)]
        D2 = [dict() for _ in range(n)]
        for k in range(1, n + 1):
            i = k - 1
            if k in z:
                zk = z[k]
                if zk == 0 or zk == 1:
                    raise ValueError("shape hit a singular value")
                j = self.index[f"z{k}"]
                L1[i], L2[i] = cmath.log(zk), cmath.log(1 - zk)
                D1[i][j], D2[i][j] = 1 / zk, -1 / (1 - zk)
                continue
            kind, m = self.plan.degenerate[k]
            ck = c[k]
            if ck == 0:
                raise ValueError("coefficient hit zero")
            tm = t ** m
            lp = cmath.log(1 - ck * tm) if tm else 0j
            dlp = -tm / (1 - ck * tm)
            j = self.index.get(f"c{k}")
            if kind == ZERO:
                L1[i], L2[i] = cmath.log(ck), lp
                d1, d2 = 1 / ck, dlp
            elif kind == ONE:
                L1[i], L2[i] = lp, cmath.log(ck)
                d1, d2 = dlp, 1 / ck
            else:
                L1[i], L2[i] = -cmath.log(ck), 1j * math.pi + lp - cmath.log(ck)
                d1, d2 = -1 / ck, dlp - 1 / ck
            if j is not None:
                D1[i][j], D2[i][j] = d1, d2
        F = np.zeros(len(self.rows), dtype=complex)
        J = np.zeros((len(self.rows), len(self.names)), dtype=complex)
        for r, lr in enumerate(self.rows):
            acc = -(0j if lr.sign > 0 else 1j * math.pi)
            for i in range(n):
                a, b = lr.zexp[i], lr.wexp[i]
                if a or b:
                    acc += a * L1[i] + b * L2[i]
                    for j, v in D1[i].items():
                        J[r, j] += a * v
                    for j, v in D2[i].items():
                        J[r, j] += b * v
            F[r] = _wrap(acc)
        return F, J

    def solve(self, x0, t: float, config: NewtonConfig = NewtonConfig()):
        x, res, it = newton(lambda x: self(x, t), x0, config)
        J = self(x, t)[1]
        cond = np.linalg.cond(J)
        if not np.isfinite(cond) or cond > config.max_cond:
            raise ConvergenceError(f"ill-conditioned solution (cond {cond:.2e})")
        return x, res


def richardson_limit(ts: Sequence[float], xs: Sequence[np.ndarray]) -> np.ndarray:
    """Value at t = 0 of the interpolating polynomial through (t_i, x_i)."""
    ts = list(ts)
    out = np.zeros_like(np.asarray(xs[0], dtype=complex))
    for i, ti in enumerate(ts):
        w = 1.0
        for j, tj in enumerate(ts):
            if j != i:
                w *= (0 - tj) / (ti - tj)
        out = out + w * np.asarray(xs[i])
    return out


@dataclass
class ContinuationResult:
    plan: str
    branch: str
    names: list
    ts: list
    path: list
    limit: dict
    direct: dict
    drift: float
    slope: Slope

    def to_json(self) -> dict:
        enc = lambda v: [v.real, v.imag]
        return {"plan": self.plan, "branch": self.branch, "slope": str(self.slope),
                "ts": self.ts, "limit": {k: enc(v) for k, v in self.limit.items()},
                "direct": {k: enc(v) for k, v in self.direct.items()},
                "drift": self.drift}


DEFAULT_SCHEDULE = (1e-1, 1e-2, 1e-3, 1e-4)


def continuation_to_ideal_point(sys: GluingSystem, plan: SubstitutionPlan,
                                t_schedule: Sequence[float] = DEFAULT_SCHEDULE,
                                initial: Optional[dict] = None, order: int = 2,
                                config: NewtonConfig = NewtonConfig(),
                                blowup: float = 1e8) -> ContinuationResult:
    """Follow the curve of solutions along t_schedule and extrapolate to t = 0."""
    ts = [float(t) for t in t_schedule]
    if not ts or any(t <= 0 for t in ts) or any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t schedule must be positive and strictly decreasing")
    local = LocalSystem(sys, plan)
    if initial is None:
        raise ValueError("an initial guess for the unknowns at the first t is required")
    x = np.array([complex(initial[u]) for u in local.names])
    path = []
    for t in ts:
        x, _ = local.solve(x, t, config)
        coef = [abs(x[local.index[u]]) for u in local.names if u.startswith("c")]
        if coef and (min(coef) < 1 / blowup or max(coef) > blowup):
            raise ConvergenceError("a degenerate coefficient tends to 0 or infinity")
        path.append(x.copy())
    k = min(order + 1, len(ts))
    lim = richardson_limit(ts[-k:], path[-k:])
    direct, _ = local.solve(lim, 0.0, config)
    drift = float(np.max(np.abs(direct - lim)))
    label = _branch_label(local.names, direct, plan.branch_key)
    return ContinuationResult(plan.name, label, local.names, ts, path,
                              dict(zip(local.names, lim)), dict(zip(local.names, direct)),
                              drift, plan_slope(sys, plan))


def _branch_label(names, x, key: Optional[str]) -> str:
    if key is None or key not in names:
        return "branch"
    im = x[names.index(key)].imag
    if abs(im) < 1e-9:
        return f"{key}:real"
    return f"{key}:+" if im > 0 else f"{key}:-"


def discover_ideal_points(sys: GluingSystem, plan: SubstitutionPlan,
                          t_schedule: Sequence[float] = DEFAULT_SCHEDULE,
                          n_starts: int = 60, seed: int = 0,
                          config: NewtonConfig = NewtonConfig(), tol: float = 1e-6) -> list:
    """Continue every solution found at the first t to t = 0; keep distinct limits.

    Starting points are drawn from a seeded normal distribution.  Paths whose
    coefficients blow up or whose limit is ill-conditioned are discarded, so the
    survivors are the ideal points of the plan's degeneration pattern.
    """
    local = LocalSystem(sys, plan)
    rng = np.random.default_rng(seed)
    starts = []
    for _ in range(n_starts):
        x0 = 1.5 * (rng.normal(size=len(local.names)) + 1j * rng.normal(size=len(local.names)))
        try:
            x, _ = local.solve(x0, t_schedule[0], config)
        except (ConvergenceError, ValueError):
            continue
        if all(np.max(np.abs(x - y)) > tol for y in starts):
            starts.append(x)
    found = []
    for x in starts:
        try:
            res = continuation_to_ideal_point(sys, plan, t_schedule,
                                              initial=dict(zip(local.names, x)), config=config)
        except (ConvergenceError, ValueError):
            continue
        lim = np.array(list(res.direct.values()))
        if any(np.max(np.abs(lim - np.array(list(r.direct.values())))) < tol for r in found):
            continue
        found.append(res)
    found.sort(key=lambda r: r.branch)
    return found


def limit_shapes(sys: GluingSystem, plan: SubstitutionPlan, limit: dict) -> list:
    """Shapes at the ideal point; degenerate tetrahedra are reported as None."""
    return [None if k in plan.degenerate else complex(limit[f"z{k}"])
            for k in range(1, sys.n + 1)]
