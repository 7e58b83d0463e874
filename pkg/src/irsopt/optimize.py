"""Global solvers for worst-case EE maximization over on/off IRS masks.

Three routes to the optimum plus a baseline:

* ``dp_optimize``      -- sort once, scan the element count M from 0 to L,
                          keep the best stage (O(L log L), globally optimal).
* ``solve_fixed_m``    -- the single-stage subproblem: activate the M
                          largest-amplitude elements.
* ``exhaustive_search``-- enumerate all 2^L masks (the oracle; capped).
* ``all_on_baseline``  -- evaluate the all-on mask only.

All solvers validate the uncertainty radius once per problem and report
infeasibility through the result, never as an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import AssumptionViolatedError, CapacityError, DomainError
from .model import (
    ActivationVector,
    ChannelEstimate,
    LinkBudget,
    PowerModel,
    UncertaintySpec,
    psi_threshold,
)

_LN2 = math.log(2.0)

# Relative slack when testing an SNR against the floor.  The experiment
# construction places the all-on mask exactly on the floor for the extreme
# control settings, where summation order alone decides a strict comparison.
FLOOR_SLACK = 1e-12

DEFAULT_EXHAUSTIVE_CAP = 24


@dataclass(frozen=True)
class ProblemSpec:
    """One robust activation problem: channel estimate, radius, floor, powers."""

    estimate: ChannelEstimate
    uncertainty: UncertaintySpec
    gamma_min: float
    power: PowerModel
    link: LinkBudget

    def __post_init__(self):
        if not (math.isfinite(self.gamma_min) and self.gamma_min >= 0.0):
            raise DomainError(f"gamma_min must be finite and >= 0, got {self.gamma_min}")

    @cached_property
    def psi(self) -> float:
        return psi_threshold(self.estimate)

    def validate(self) -> None:
        """Raise unless the uncertainty radius is admissible for this estimate."""
        if self.uncertainty.delta > self.psi:
            raise AssumptionViolatedError(
                f"uncertainty radius {self.uncertainty.delta} exceeds the admissible "
                f"threshold {self.psi}; the worst-case closed form does not hold"
            )


@dataclass(frozen=True)
class OptimizationResult:
    """Solver outcome; the optional fields are populated iff feasible."""

    feasible: bool
    ee_star: Optional[float] = None
    x_star: Optional[ActivationVector] = None
    m_star: Optional[int] = None
    snr_at_optimum: Optional[float] = None

    @classmethod
    def infeasible(cls) -> "OptimizationResult":
        return cls(feasible=False)


@dataclass(frozen=True)
class DpStage:
    """Diagnostic record for one element count M considered by the DP."""

    m: int
    feasible: bool
    ee: float  # -inf when the stage is infeasible


def _meets_floor(gamma, gamma_min: float):
    """SNR-floor test with relative slack; works on scalars and arrays."""
    return gamma >= gamma_min * (1.0 - FLOOR_SLACK)


def _top_indices(amplitudes: np.ndarray, m: int) -> np.ndarray:
    """Indices of the m largest amplitudes; ties broken by ascending index.

    Selection runs in O(L) so that reconstructing the optimal mask does not
    add a second sort on top of the stage scan.
    """
    n = amplitudes.shape[0]
    if m == 0:
        return np.empty(0, dtype=np.intp)
    if m == n:
        return np.arange(n, dtype=np.intp)
    threshold = amplitudes[np.argpartition(-amplitudes, m - 1)[m - 1]]
    above = np.flatnonzero(amplitudes > threshold)
    fill = np.flatnonzero(amplitudes == threshold)[: m - above.size]
    return np.concatenate((above, fill))


def _stage_table(spec: ProblemSpec):
    """Per-M quantities for the top-M masks, M = 0..L.

    Index m of each returned array describes the mask that activates the m
    largest-amplitude elements.
    """
    est = spec.estimate
    n = est.n_elements
    descending = np.sort(est.cascaded_amplitudes)[::-1]
    f = est.direct_amplitude + np.concatenate(([0.0], np.cumsum(descending)))
    m = np.arange(n + 1)
    # top-M masks have maximal f at each M, so the margin is nonnegative up to rounding
    margin = np.maximum(f - spec.uncertainty.delta * np.sqrt(1.0 + m), 0.0)
    gamma = spec.link.gamma_bar() * margin * margin
    power = spec.power.fixed_power() + n * spec.power.p_off + (spec.power.p_on - spec.power.p_off) * m
    ee = np.log1p(gamma) / (_LN2 * power)
    feasible = _meets_floor(gamma, spec.gamma_min)
    return gamma, ee, feasible


def _top_m_result(spec: ProblemSpec, m: int, gamma: float, ee: float) -> OptimizationResult:
    n = spec.estimate.n_elements
    x = ActivationVector.from_indices(n, _top_indices(spec.estimate.cascaded_amplitudes, m))
    return OptimizationResult(True, ee_star=ee, x_star=x, m_star=m, snr_at_optimum=gamma)


def dp_optimize(spec: ProblemSpec, with_trace: bool = False):
    """Globally maximize worst-case EE subject to the SNR floor.

    Scans the element count M upward and keeps the first stage attaining the
    maximum EE, so EE ties resolve to fewer active elements.  With
    ``with_trace`` the per-M stage values are returned alongside the result
    as a list of DpStage.
    """
    spec.validate()
    gamma, ee, feasible = _stage_table(spec)

    trace = None
    if with_trace:
        trace = [
            DpStage(m, bool(feasible[m]), float(ee[m]) if feasible[m] else -math.inf)
            for m in range(len(ee))
        ]

    if not feasible.any():
        result = OptimizationResult.infeasible()
        return (result, trace) if with_trace else result

    masked = np.where(feasible, ee, -np.inf)
    m_star = int(np.argmax(masked))  # first maximum: smallest M wins ties
    result = _top_m_result(spec, m_star, float(gamma[m_star]), float(ee[m_star]))
    return (result, trace) if with_trace else result


def solve_fixed_m(spec: ProblemSpec, m: int) -> OptimizationResult:
    """Best mask with exactly m active elements: the m largest amplitudes."""
    spec.validate()
    n = spec.estimate.n_elements
    if not 0 <= m <= n:
        raise DomainError(f"element count must lie in [0, {n}], got {m}")
    gamma, ee, feasible = _stage_table(spec)
    if not feasible[m]:
        return OptimizationResult.infeasible()
    return _top_m_result(spec, m, float(gamma[m]), float(ee[m]))


def all_on_baseline(spec: ProblemSpec) -> OptimizationResult:
    """Evaluate the conventional scheme that activates every element."""
    spec.validate()
    n = spec.estimate.n_elements
    gamma, ee, feasible = _stage_table(spec)
    if not feasible[n]:
        return OptimizationResult.infeasible()
    return _top_m_result(spec, n, float(gamma[n]), float(ee[n]))


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------

_CHUNK_BITS = 17  # masks per enumeration chunk = 2**17


def exhaustive_search(spec: ProblemSpec, max_elements: int = DEFAULT_EXHAUSTIVE_CAP) -> OptimizationResult:
    """Enumerate all 2^L masks; exact but exponential, hence capped.

    Deterministic tie resolution: higher EE, then fewer active elements,
    then the smaller mask integer (bit l of the integer is element l).
    """
    spec.validate()
    est = spec.estimate
    n = est.n_elements
    if n > max_elements:
        raise CapacityError(
            f"exhaustive search over {n} elements exceeds the cap of {max_elements}; "
            "raise max_elements explicitly to override"
        )

    amps = est.cascaded_amplitudes
    alpha0 = est.direct_amplitude
    delta = spec.uncertainty.delta
    gamma_bar = spec.link.gamma_bar()
    base_power = spec.power.fixed_power() + n * spec.power.p_off
    delta_power = spec.power.p_on - spec.power.p_off
    shifts = np.arange(n, dtype=np.uint64)

    best = None  # (-ee, m, mask_int, gamma), minimized lexicographically
    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.float64)
        m = np.bitwise_count(masks).astype(np.int64)
        f = bits @ amps + alpha0
        margin = np.maximum(f - delta * np.sqrt(1.0 + m), 0.0)
        gamma = gamma_bar * margin * margin
        ee = np.log1p(gamma) / (_LN2 * (base_power + delta_power * m))
        ee[~_meets_floor(gamma, spec.gamma_min)] = -np.inf

        top = ee.max()
        if top == -np.inf:
            continue
        ties = np.flatnonzero(ee == top)
        pick = ties[np.lexsort((ties, m[ties]))[0]]
        candidate = (-float(top), int(m[pick]), int(masks[pick]), float(gamma[pick]))
        if best is None or candidate[:3] < best[:3]:
            best = candidate

    if best is None:
        return OptimizationResult.infeasible()

    neg_ee, m_star, mask_int, gamma_star = best
    bits = np.array([(mask_int >> l) & 1 for l in range(n)], dtype=bool)
    return OptimizationResult(
        True,
        ee_star=-neg_ee,
        x_star=ActivationVector(bits),
        m_star=m_star,
        snr_at_optimum=gamma_star,
    )
