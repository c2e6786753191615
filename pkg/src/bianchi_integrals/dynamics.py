"""Floating-point trajectory integration with invariant-drift monitoring.

The stepper is an embedded Dormand-Prince 5(4) pair with PI step-size
control.  Integration failures (step underflow, step budget exhaustion)
return the partial trajectory with a status instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .multipoly import MultiPoly
from .vectorfields import BianchiModel, build_F


class DomainError(ValueError):
    """An invariant was evaluated outside its domain of definition."""


@dataclass(frozen=True)
class IntegratorConfig:
    t_end: float = 1.0
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_steps: int = 1_000_000
    initial_step: float = 1e-4

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


@dataclass
class Trajectory:
    t: np.ndarray  # accepted step times, shape (N,)
    x: np.ndarray  # states, shape (N, 6)
    status: str  # "completed" | "max_steps" | "step_underflow"
    n_accepted: int
    n_rejected: int

    @property
    def ok(self) -> bool:
        return self.status == "completed"


def rhs(n: Tuple[int, int, int], k: float, x: Sequence[float]) -> np.ndarray:
    """Componentwise float evaluation of the quadratic system."""
    n1, n2, n3 = n
    x1, x2, x3, x4, x5, x6 = x
    F = (
        n1 * n1 * x1 * x1 + n2 * n2 * x2 * x2 + n3 * n3 * x3 * x3
        - 2 * n1 * n2 * x1 * x2 - 2 * n1 * n3 * x1 * x3 - 2 * n2 * n3 * x2 * x3
        + x4 * x4 + x5 * x5 + x6 * x6 - 2 * x4 * x5 - 2 * x4 * x6 - 2 * x5 * x6
    )
    q = 0.25 * (k - 1.0) * F
    return np.array(
        [
            x1 * (-x4 + x5 + x6),
            x2 * (x4 - x5 + x6),
            x3 * (x4 + x5 - x6),
            n1 * x1 * (n1 * x1 - n2 * x2 - n3 * x3) + q,
            n2 * x2 * (-n1 * x1 + n2 * x2 - n3 * x3) + q,
            n3 * x3 * (-n1 * x1 - n2 * x2 + n3 * x3) + q,
        ]
    )


# Dormand-Prince 5(4) tableau.
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
# PI controller exponents for a 5th-order error estimate.
_ALPHA = 0.7 / 5.0
_BETA = 0.4 / 5.0


def integrate(
    model: BianchiModel,
    x0: Sequence[float],
    cfg: IntegratorConfig = IntegratorConfig(),
    k: Optional[float] = None,
) -> Trajectory:
    """Adaptive RK5(4) orbit from t=0 to cfg.t_end; keeps every accepted step."""
    if k is None:
        if model.k is None:
            raise ValueError("symbolic-k model needs an explicit float k")
        k = float(model.k)
    f = lambda x: rhs(model.n, k, x)
    t = 0.0
    y = np.array([float(v) for v in x0])
    ts = [t]
    ys = [y.copy()]
    h = min(cfg.initial_step, cfg.t_end)
    err_prev = 1.0
    accepted = 0
    rejected = 0
    status = "completed"
    k1 = f(y)
    while t < cfg.t_end:
        if accepted + rejected >= cfg.max_steps:
            status = "max_steps"
            break
        if h < 1e-15 * max(1.0, abs(t)):
            status = "step_underflow"
            break
        h = min(h, cfg.t_end - t)
        stages = [k1]
        for s in range(1, 7):
            yi = y + h * sum(a * ki for a, ki in zip(_A[s], stages))
            stages.append(f(yi))
        y5 = y + h * sum(b * ki for b, ki in zip(_B5, stages))
        y4 = y + h * sum(b * ki for b, ki in zip(_B4, stages))
        scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y), np.abs(y5))
        err = float(np.sqrt(np.mean(((y5 - y4) / scale) ** 2)))
        if err <= 1.0:
            t += h
            y = y5
            k1 = stages[6]  # FSAL
            ts.append(t)
            ys.append(y.copy())
            accepted += 1
            err = max(err, 1e-10)
            factor = _SAFETY * err ** (-_ALPHA) * err_prev ** _BETA
            err_prev = err
            h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        else:
            rejected += 1
            h *= max(_MIN_FACTOR, _SAFETY * err ** (-0.2))
    return Trajectory(np.array(ts), np.vstack(ys), status, accepted, rejected)


# -- Invariants ----------------------------------------------------------------


Invariant = Callable[[Sequence[float]], float]


def poly_invariant(p: MultiPoly, k: Optional[Fraction] = None) -> Invariant:
    def fn(x):
        return float(p.evaluate([float(v) for v in x], k=k))

    return fn


def _quadratic_form(n: Tuple[int, int, int]) -> Invariant:
    F = build_F(*n)
    return poly_invariant(F)


def energy_invariant(n: Tuple[int, int, int], k: float) -> Invariant:
    """(x1 x2 x3)^((k-1)/2) * F; defined where x1 x2 x3 > 0."""
    Ffn = _quadratic_form(n)

    def fn(x):
        w = x[0] * x[1] * x[2]
        if w <= 0:
            raise DomainError("x1*x2*x3 <= 0")
        return w ** ((k - 1) / 2) * Ffn(x)

    return fn


def _delta(x) -> float:
    x4, x5, x6 = x[3], x[4], x[5]
    return x4 * x4 + x5 * x5 + x6 * x6 - x4 * x5 - x4 * x6 - x5 * x6


def _ratio(x) -> float:
    s = x[3] + x[4] + x[5]
    d = _delta(x)
    if d < 0:
        raise DomainError("negative discriminant")  # impossible over the reals
    root = math.sqrt(d)
    num = s - 2 * root
    den = s + 2 * root
    if num <= 0 or den <= 0:
        raise DomainError("ratio argument not positive")
    return num / den


def transcendental_invariant_12(k: float) -> Invariant:
    """(x1/x2)^((1-k)/2) * R^((x4-x5)/sqrt(D)) for the type I system."""

    def fn(x):
        base = x[0] / x[1]
        if base <= 0:
            raise DomainError("x1/x2 <= 0")
        d = _delta(x)
        if d <= 0:
            raise DomainError("degenerate discriminant")
        return base ** ((1 - k) / 2) * _ratio(x) ** ((x[3] - x[4]) / math.sqrt(d))

    return fn


def transcendental_invariant_23(k: float) -> Invariant:
    """(x2/x3)^((1-k)/2) * R^((x5-x6)/sqrt(D)) for the type I system."""

    def fn(x):
        base = x[1] / x[2]
        if base <= 0:
            raise DomainError("x2/x3 <= 0")
        d = _delta(x)
        if d <= 0:
            raise DomainError("degenerate discriminant")
        return base ** ((1 - k) / 2) * _ratio(x) ** ((x[4] - x[5]) / math.sqrt(d))

    return fn


def standard_invariants(model: BianchiModel, k: Optional[float] = None) -> Dict[str, Invariant]:
    """The monitored invariants for a model, in report order."""
    if k is None:
        if model.k is None:
            raise ValueError("symbolic-k model needs an explicit float k")
        k = float(model.k)
    x = [MultiPoly.variable(6, i) for i in range(6)]
    out: Dict[str, Invariant] = {}
    if model.tag == "I":
        out["x4-x5"] = poly_invariant(x[3] - x[4])
        out["x4-x6"] = poly_invariant(x[3] - x[5])
        out["trans(x1/x2)"] = transcendental_invariant_12(k)
        out["trans(x2/x3)"] = transcendental_invariant_23(k)
    elif model.tag == "II":
        out["x5-x6"] = poly_invariant(x[4] - x[5])
    out["H"] = energy_invariant(model.n, k)
    return out


@dataclass
class DriftEntry:
    name: str
    initial_value: Optional[float]
    drift: Optional[float]  # max |v(t)-v(0)| / max(1, |v(0)|)
    domain_violation: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "initial_value": self.initial_value,
            "max_relative_drift": self.drift,
            "domain_violation": self.domain_violation,
        }


@dataclass
class DriftReport:
    entries: List[DriftEntry]
    status: str

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "invariants": [e.to_dict() for e in self.entries],
        }

    def entry(self, name: str) -> DriftEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def monitor_invariant(traj: Trajectory, inv: Invariant, name: str) -> DriftEntry:
    """Max relative drift of one invariant along the trajectory.

    Domain failures are flagged; the drift is taken over the points where
    the invariant is defined, and never produces non-finite values.
    """
    violated = False
    value0 = None
    drift = None
    for row in traj.x:
        try:
            v = inv(row)
        except DomainError:
            violated = True
            continue
        if not math.isfinite(v):
            violated = True
            continue
        if value0 is None:
            value0 = v
            drift = 0.0
        else:
            drift = max(drift, abs(v - value0) / max(1.0, abs(value0)))
    return DriftEntry(name, value0, drift, violated)


def drift_report(traj: Trajectory, invariants: Dict[str, Invariant]) -> DriftReport:
    return DriftReport(
        [monitor_invariant(traj, inv, name) for name, inv in invariants.items()],
        traj.status,
    )


def write_trajectory_csv(traj: Trajectory, stream) -> None:
    """CSV with 17 significant digits, one row per accepted step."""
    stream.write("t,x1,x2,x3,x4,x5,x6\n")
    for t, row in zip(traj.t, traj.x):
        stream.write(
            "%.17g,%s\n" % (t, ",".join("%.17g" % v for v in row))
        )
