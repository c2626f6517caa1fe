"""Domain types, per-state rate functions and feasibility checks.

All rates are in nats*Hz: logarithms are natural throughout the library
(base only rescales capacity; bits are offered as a derived output).
Vectors are one entry per secondary user.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError

# Shared numerical tolerances.
TAU_FEAS = 1e-9    # absolute slack tolerance on constraint checks
TAU_RATIO = 1e-12  # relative tolerance below which gain ratios count as tied
TAU_POS = 1e-10    # threshold for "strictly positive" power in case tests

# Canonical order of constraint names on the wire and in reports.
CONSTRAINT_ORDER = ("ptp", "atp", "pip", "aip")


def _as_vector(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidInputError(f"{name} must be a 1-D vector with at least one entry")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def ratios_distinct(h: np.ndarray, g: np.ndarray, tol: float = TAU_RATIO) -> bool:
    """True when all gain ratios h_i/g_i are pairwise distinct within ``tol``
    (relative). Continuous fading makes ties probability zero; generated
    states are redrawn and solver inputs rejected when this fails."""
    r = np.sort(np.asarray(h, dtype=float) / np.asarray(g, dtype=float))
    if r.size < 2:
        return True
    gaps = np.diff(r)
    scale = np.maximum(np.abs(r[1:]), np.abs(r[:-1]))
    return bool(np.all(gaps > tol * scale))


@dataclass(frozen=True)
class FadingState:
    """One realization of the channel power gains for all users.

    ``h[i]`` is the gain of the i-th transmitter to its own receiver and
    ``g[i]`` the gain of the same transmitter to the protected receiver.
    Both must be strictly positive and finite.
    """

    h: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        h = _as_vector(self.h, "h")
        g = _as_vector(self.g, "g")
        if h.shape != g.shape:
            raise DimensionMismatchError(
                f"h has {h.size} entries but g has {g.size}")
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(g))):
            raise InvalidInputError("channel power gains must be finite")
        if np.any(h <= 0.0) or np.any(g <= 0.0):
            raise InvalidInputError("channel power gains must be strictly positive")
        object.__setattr__(self, "h", _freeze(h))
        object.__setattr__(self, "g", _freeze(g))

    @property
    def n_users(self) -> int:
        return self.h.size

    @property
    def ratios(self) -> np.ndarray:
        """Direct-to-interference gain ratios h_i/g_i."""
        return self.h / self.g


@dataclass(frozen=True)
class ConstraintSet:
    """Which power constraints are active, with their limits.

    ``ptp``/``atp`` are per-user peak/average transmit power limits,
    ``pip``/``aip`` the peak/average interference power limits at the
    protected receiver, and ``bandwidth`` the total bandwidth W.
    Absent constraints are ``None``; at least one must be present.
    """

    ptp: Optional[np.ndarray] = None
    atp: Optional[np.ndarray] = None
    pip: Optional[float] = None
    aip: Optional[float] = None
    bandwidth: float = 1.0

    def __post_init__(self):
        for name in ("ptp", "atp"):
            v = getattr(self, name)
            if v is not None:
                v = _as_vector(v, name)
                if np.any(v <= 0.0) or not np.all(np.isfinite(v)):
                    raise InvalidInputError(f"{name} limits must be positive and finite")
                object.__setattr__(self, name, _freeze(v))
        for name in ("pip", "aip"):
            v = getattr(self, name)
            if v is not None:
                v = float(v)
                if not np.isfinite(v) or v <= 0.0:
                    raise InvalidInputError(f"{name} limit must be positive and finite")
                object.__setattr__(self, name, v)
        if all(getattr(self, name) is None for name in CONSTRAINT_ORDER):
            raise InvalidInputError("at least one power constraint must be present")
        if not np.isfinite(self.bandwidth) or self.bandwidth <= 0.0:
            raise InvalidInputError("bandwidth must be positive and finite")
        object.__setattr__(self, "bandwidth", float(self.bandwidth))
        if (self.ptp is not None and self.atp is not None
                and self.ptp.size != self.atp.size):
            raise DimensionMismatchError("ptp and atp limit vectors differ in length")

    @property
    def active(self) -> tuple:
        """Names of the present constraints, in canonical order."""
        return tuple(n for n in CONSTRAINT_ORDER if getattr(self, n) is not None)

    @property
    def has_average(self) -> bool:
        return self.atp is not None or self.aip is not None

    @property
    def label(self) -> str:
        """Wire name of the combination, e.g. ``ptp+pip``."""
        return "+".join(self.active)

    def check_users(self, n: int) -> None:
        for name in ("ptp", "atp"):
            v = getattr(self, name)
            if v is not None and v.size != n:
                raise DimensionMismatchError(
                    f"{name} limit vector has {v.size} entries for {n} users")


@dataclass(frozen=True)
class Allocation:
    """Per-user transmit powers and bandwidths for one fading state."""

    p: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        p = _as_vector(self.p, "p")
        w = _as_vector(self.w, "w")
        if p.shape != w.shape:
            raise DimensionMismatchError(
                f"p has {p.size} entries but w has {w.size}")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(w))):
            raise InvalidInputError("allocation entries must be finite")
        if np.any(p < 0.0) or np.any(w < 0.0):
            raise InvalidInputError("powers and bandwidths must be nonnegative")
        object.__setattr__(self, "p", _freeze(p))
        object.__setattr__(self, "w", _freeze(w))

    @property
    def n_users(self) -> int:
        return self.p.size


@dataclass(frozen=True)
class DualVariables:
    """Multipliers for the average constraints: ``lam[i]`` for the i-th
    average transmit power limit, ``mu`` for the average interference limit.
    All entries are nonnegative and finite."""

    lam: np.ndarray
    mu: float = 0.0

    def __post_init__(self):
        lam = _as_vector(self.lam, "lam")
        if np.any(lam < 0.0) or not np.all(np.isfinite(lam)):
            raise InvalidInputError("lam must be nonnegative and finite")
        mu = float(self.mu)
        if mu < 0.0 or not np.isfinite(mu):
            raise InvalidInputError("mu must be nonnegative and finite")
        object.__setattr__(self, "lam", _freeze(lam))
        object.__setattr__(self, "mu", mu)

    @classmethod
    def zeros(cls, n_users: int) -> "DualVariables":
        return cls(lam=np.zeros(n_users), mu=0.0)

    def gamma(self, g: np.ndarray) -> np.ndarray:
        """Total linear price lam_i + mu*g_i seen by each user (rows of ``g``
        may be 1-D for one state or 2-D for a batch)."""
        return self.lam + self.mu * np.asarray(g, dtype=float)


@dataclass(frozen=True)
class CapacityReport:
    """Ergodic-capacity estimate with realized averages and constraint slacks.

    ``per_constraint_slack`` maps a constraint name to its worst-case slack:
    minimum over states (and users) for per-state constraints, limit minus
    realized mean for average constraints. Satisfied constraints have slack
    >= -TAU_FEAS.
    """

    sum_ergodic_capacity: float
    avg_power: np.ndarray
    avg_interference: float
    per_constraint_slack: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "avg_power", _freeze(_as_vector(self.avg_power, "avg_power")))
        object.__setattr__(self, "per_constraint_slack", dict(self.per_constraint_slack))


@dataclass(frozen=True)
class FeasibilityReport:
    """Slacks of the per-state constraints for one allocation.

    Average constraints are properties of a whole state sample and are
    reported by the capacity estimator instead. Infeasibility is data,
    not an error: inspect ``ok`` or the individual slacks.
    """

    ptp_slack: Optional[np.ndarray]
    pip_slack: Optional[float]
    bandwidth_slack: float

    @property
    def ok(self) -> bool:
        worst = self.bandwidth_slack
        if self.ptp_slack is not None:
            worst = min(worst, float(np.min(self.ptp_slack)))
        if self.pip_slack is not None:
            worst = min(worst, self.pip_slack)
        return worst >= -TAU_FEAS


def _check_pair(state: FadingState, n: int) -> None:
    if state.n_users != n:
        raise DimensionMismatchError(
            f"state has {state.n_users} users but allocation has {n}")


def rate_terms(h: np.ndarray, p: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Per-user rates w_i*ln(1 + h_i p_i / w_i), with w_i = 0 contributing 0
    (the limit value of x*ln(1 + c/x) as x -> 0+)."""
    h = np.asarray(h, dtype=float)
    p = np.asarray(p, dtype=float)
    w = np.asarray(w, dtype=float)
    safe_w = np.where(w > 0.0, w, 1.0)
    terms = safe_w * np.log1p(h * p / safe_w)
    return np.where(w > 0.0, terms, 0.0)


def state_rate(state: FadingState, alloc: Allocation) -> float:
    """Sum rate of one fading state under a given allocation, in nats*Hz."""
    _check_pair(state, alloc.n_users)
    return float(np.sum(rate_terms(state.h, alloc.p, alloc.w)))


def reduced_rate(state: FadingState, p, W: float) -> float:
    """Sum rate W*ln(1 + sum_i h_i p_i / W) with the bandwidth split
    already optimized out; equals ``state_rate`` at the optimal split."""
    p = _as_vector(p, "p")
    _check_pair(state, p.size)
    if np.any(p < 0.0) or not np.all(np.isfinite(p)):
        raise InvalidInputError("powers must be nonnegative and finite")
    if W <= 0.0:
        raise InvalidInputError("W must be positive")
    return float(W * np.log1p(float(state.h @ p) / W))


def reduced_rate_rows(h: np.ndarray, p: np.ndarray, W: float) -> np.ndarray:
    """Row-wise ``reduced_rate`` for batched (state x user) arrays."""
    return W * np.log1p(np.sum(np.asarray(h) * np.asarray(p), axis=-1) / W)


def check_feasible(state: FadingState, alloc: Allocation, cs: ConstraintSet) -> FeasibilityReport:
    """Slacks of the per-state constraints (peak powers, peak interference,
    bandwidth) for one allocation."""
    _check_pair(state, alloc.n_users)
    cs.check_users(state.n_users)
    ptp_slack = None if cs.ptp is None else cs.ptp - alloc.p
    pip_slack = None if cs.pip is None else float(cs.pip - state.g @ alloc.p)
    bw_slack = float(cs.bandwidth - np.sum(alloc.w))
    return FeasibilityReport(ptp_slack=ptp_slack, pip_slack=pip_slack,
                             bandwidth_slack=bw_slack)
