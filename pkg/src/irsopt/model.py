"""Closed-form link model: SNR, worst-case SNR under bounded CSI error, power, SE/EE.

All powers are in Watts and all SNRs are linear (dimensionless); dB/dBm
conversions belong to the CLI boundary.  Channel coefficients are stored in
rectangular form, with amplitude/phase derived on demand.

Every function here is pure; instances are immutable and safe to share
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import AssumptionViolatedError, DimensionMismatchError, DomainError

TWO_PI = 2.0 * math.pi

# Relative slack on f(x) - g(x; delta): values this far below zero are treated
# as floating-point noise at the delta = psi boundary and clamped to 0.
MARGIN_TOLERANCE = 1e-12


def principal_angle(theta: float) -> float:
    """Map an angle in radians onto [0, 2*pi)."""
    wrapped = theta % TWO_PI
    # theta % 2pi can round up to exactly 2pi for tiny negative inputs
    return 0.0 if wrapped >= TWO_PI else wrapped


def _principal_angles(theta: np.ndarray) -> np.ndarray:
    wrapped = np.mod(theta, TWO_PI)
    wrapped[wrapped >= TWO_PI] = 0.0
    return wrapped


def _as_complex_vector(values: Sequence | np.ndarray, name: str) -> np.ndarray:
    """Normalize a sequence of ComplexCoeff / complex numbers to a read-only array."""
    if isinstance(values, np.ndarray):
        vec = np.array(values, dtype=np.complex128)
    else:
        items = list(values)
        if items and isinstance(items[0], ComplexCoeff):
            vec = np.array([v.as_complex() for v in items], dtype=np.complex128)
        else:
            vec = np.array(items, dtype=np.complex128)
    if vec.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise DomainError(f"{name} contains non-finite coefficients")
    vec.flags.writeable = False
    return vec


@dataclass(frozen=True)
class ComplexCoeff:
    """One channel coefficient in rectangular form."""

    re: float
    im: float

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexCoeff":
        return cls(float(z.real), float(z.imag))

    @classmethod
    def from_polar(cls, amplitude: float, phase: float) -> "ComplexCoeff":
        if amplitude < 0.0:
            raise DomainError(f"amplitude must be >= 0, got {amplitude}")
        return cls(amplitude * math.cos(phase), amplitude * math.sin(phase))

    def amplitude(self) -> float:
        return math.hypot(self.re, self.im)

    def phase(self) -> float:
        """Principal argument in [0, 2*pi)."""
        return principal_angle(math.atan2(self.im, self.re))

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True, eq=False)
class ChannelEstimate:
    """Estimated direct and cascaded channel coefficients.

    ``direct`` is the Tx-Rx coefficient; ``cascaded[l]`` is the product
    channel through IRS element l+1.  The cascaded vector is stored as a
    read-only complex array so that million-element instances stay cheap.
    """

    direct: ComplexCoeff
    cascaded: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChannelEstimate):
            return NotImplemented
        return self.direct == other.direct and np.array_equal(self.cascaded, other.cascaded)

    def __post_init__(self):
        d = self.direct
        if not isinstance(d, ComplexCoeff):
            object.__setattr__(self, "direct", ComplexCoeff.from_complex(complex(d)))
        object.__setattr__(self, "cascaded", _as_complex_vector(self.cascaded, "cascaded"))
        if self.cascaded.shape[0] < 1:
            raise DomainError("an IRS with zero elements is not modeled; need L >= 1")

    @property
    def n_elements(self) -> int:
        return int(self.cascaded.shape[0])

    @cached_property
    def direct_amplitude(self) -> float:
        return self.direct.amplitude()

    @cached_property
    def direct_phase(self) -> float:
        return self.direct.phase()

    @cached_property
    def cascaded_amplitudes(self) -> np.ndarray:
        amps = np.abs(self.cascaded)
        amps.flags.writeable = False
        return amps

    @cached_property
    def cascaded_phases(self) -> np.ndarray:
        phases = _principal_angles(np.angle(self.cascaded))
        phases.flags.writeable = False
        return phases

    @cached_property
    def amplitude_min(self) -> float:
        """Smallest estimated amplitude over the direct and all cascaded links."""
        return min(self.direct_amplitude, float(self.cascaded_amplitudes.min()))


@dataclass(frozen=True, eq=False)
class CsiError:
    """An additive channel-estimation error vector (direct + cascaded parts)."""

    direct: ComplexCoeff
    cascaded: np.ndarray

    def __post_init__(self):
        d = self.direct
        if not isinstance(d, ComplexCoeff):
            object.__setattr__(self, "direct", ComplexCoeff.from_complex(complex(d)))
        object.__setattr__(self, "cascaded", _as_complex_vector(self.cascaded, "cascaded"))

    @property
    def n_elements(self) -> int:
        return int(self.cascaded.shape[0])

    def euclidean_norm(self) -> float:
        return math.sqrt(
            self.direct.re**2
            + self.direct.im**2
            + float(np.sum(self.cascaded.real**2 + self.cascaded.imag**2))
        )


@dataclass(frozen=True)
class UncertaintySpec:
    """Radius of the ball that bounds the CSI-error Euclidean norm."""

    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise DomainError(f"uncertainty radius must be finite and >= 0, got {self.delta}")


@dataclass(frozen=True, eq=False)
class ActivationVector:
    """Binary on/off mask over the IRS elements."""

    bits: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, ActivationVector):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool).copy()
        if bits.ndim != 1 or bits.shape[0] < 1:
            raise DomainError(f"bits must be a non-empty 1-D vector, got shape {bits.shape}")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @classmethod
    def all_on(cls, n_elements: int) -> "ActivationVector":
        return cls(np.ones(n_elements, dtype=bool))

    @classmethod
    def all_off(cls, n_elements: int) -> "ActivationVector":
        return cls(np.zeros(n_elements, dtype=bool))

    @classmethod
    def from_indices(cls, n_elements: int, on_indices: Iterable[int]) -> "ActivationVector":
        bits = np.zeros(n_elements, dtype=bool)
        bits[list(on_indices)] = True
        return cls(bits)

    @property
    def n_elements(self) -> int:
        return int(self.bits.shape[0])

    def count_on(self) -> int:
        return int(np.count_nonzero(self.bits))


@dataclass(frozen=True, eq=False)
class PhaseShiftVector:
    """Per-element IRS phase shifts in radians, each in [0, 2*pi)."""

    phases: np.ndarray

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=np.float64).copy()
        if phases.ndim != 1:
            raise DomainError(f"phases must be 1-D, got shape {phases.shape}")
        if np.any(phases < 0.0) or np.any(phases >= TWO_PI):
            raise DomainError("every phase shift must lie in [0, 2*pi)")
        phases.flags.writeable = False
        object.__setattr__(self, "phases", phases)

    @property
    def n_elements(self) -> int:
        return int(self.phases.shape[0])


@dataclass(frozen=True)
class PowerModel:
    """Transmit-side and IRS power consumption parameters (Watts)."""

    transmit_power_p: float
    amplifier_efficiency_eta: float
    static_power: float
    p_on: float
    p_off: float

    def __post_init__(self):
        if self.transmit_power_p <= 0.0:
            raise DomainError(f"transmit power must be > 0 W, got {self.transmit_power_p}")
        if not (0.0 < self.amplifier_efficiency_eta <= 1.0):
            raise DomainError(f"amplifier efficiency must be in (0, 1], got {self.amplifier_efficiency_eta}")
        if self.static_power <= 0.0:
            raise DomainError(f"static power must be > 0 W, got {self.static_power}")
        if self.p_on <= 0.0 or self.p_off <= 0.0:
            raise DomainError("per-element powers must be > 0 W")
        if self.p_off > self.p_on:
            raise DomainError(f"p_off ({self.p_off}) must not exceed p_on ({self.p_on})")

    def fixed_power(self) -> float:
        """Power consumed regardless of the IRS state: p/eta + static."""
        return self.transmit_power_p / self.amplifier_efficiency_eta + self.static_power


@dataclass(frozen=True)
class LinkBudget:
    """Transmit power and receiver noise power (Watts)."""

    transmit_power_p: float
    noise_power: float

    def __post_init__(self):
        if self.transmit_power_p <= 0.0:
            raise DomainError(f"transmit power must be > 0 W, got {self.transmit_power_p}")
        if self.noise_power <= 0.0:
            raise DomainError(f"noise power must be > 0 W, got {self.noise_power}")

    def gamma_bar(self) -> float:
        """Transmit SNR p / sigma_w^2."""
        return self.transmit_power_p / self.noise_power


# ---------------------------------------------------------------------------
# Phase design and SNR
# ---------------------------------------------------------------------------


def _require_same_length(est: ChannelEstimate, *others) -> None:
    length = est.n_elements
    for other in others:
        if other.n_elements != length:
            raise DimensionMismatchError(
                f"expected {length} IRS elements, got {other.n_elements} from {type(other).__name__}"
            )


def optimal_phase_shifts(est: ChannelEstimate) -> PhaseShiftVector:
    """Phase shifts that align every cascaded term with the direct link.

    Element l gets (theta_0 - theta_l) mod 2*pi, which rotates the estimated
    cascaded coefficient onto the direct coefficient's phase.
    """
    phases = _principal_angles(est.direct_phase - est.cascaded_phases)
    return PhaseShiftVector(phases)


def f_sum(est: ChannelEstimate, x: ActivationVector) -> float:
    """Aligned-amplitude sum: direct amplitude plus amplitudes of active elements."""
    _require_same_length(est, x)
    return est.direct_amplitude + float(est.cascaded_amplitudes[x.bits].sum())


def g_penalty(x: ActivationVector, u: UncertaintySpec) -> float:
    """Largest aligned perturbation an error of norm <= delta can produce."""
    return u.delta * math.sqrt(1.0 + x.count_on())


def robust_margin(f_value: float, g_value: float) -> float:
    """f - g, clamped to zero within floating-point slack of the boundary.

    A margin more negative than -MARGIN_TOLERANCE * f means the uncertainty
    radius was never validated against the amplitude profile.
    """
    margin = f_value - g_value
    if margin >= 0.0:
        return margin
    if margin >= -MARGIN_TOLERANCE * f_value:
        return 0.0
    raise AssumptionViolatedError(
        f"aligned sum {f_value} is below the uncertainty penalty {g_value}; "
        "the uncertainty radius violates the admissibility bound (check_assumption1)"
    )


def worst_case_snr(est: ChannelEstimate, x: ActivationVector, u: UncertaintySpec, lb: LinkBudget) -> float:
    """Minimum SNR over all CSI errors with Euclidean norm <= delta.

    Closed form: gamma_bar * (f(x) - g(x; delta))^2, valid whenever the
    radius passes check_assumption1.
    """
    margin = robust_margin(f_sum(est, x), g_penalty(x, u))
    return lb.gamma_bar() * margin * margin


def adversarial_error(est: ChannelEstimate, x: ActivationVector, u: UncertaintySpec) -> CsiError:
    """The error vector of norm delta that attains the worst-case SNR.

    Every component is anti-aligned with the direct link's estimated phase;
    the mass is spread equally over the direct link and the active elements.
    """
    _require_same_length(est, x)
    robust_margin(f_sum(est, x), g_penalty(x, u))  # same precondition as worst_case_snr

    n_on = x.count_on()
    lam = u.delta / math.sqrt(1.0 + n_on)
    phi_star = optimal_phase_shifts(est).phases
    err_phases = _principal_angles(est.direct_phase - phi_star + math.pi)
    amps = np.where(x.bits, lam, 0.0)
    cascaded = amps * np.exp(1j * err_phases)
    direct = ComplexCoeff.from_polar(lam, principal_angle(est.direct_phase + math.pi))
    return CsiError(direct, cascaded)


def snr_given_error(
    est: ChannelEstimate,
    err: CsiError,
    x: ActivationVector,
    phi: PhaseShiftVector,
    lb: LinkBudget,
) -> float:
    """SNR for a specific realized CSI error and arbitrary phase shifts."""
    _require_same_length(est, err, x, phi)
    rotation = np.exp(1j * phi.phases)
    total = (
        est.direct.as_complex()
        + err.direct.as_complex()
        + ((est.cascaded + err.cascaded) * rotation)[x.bits].sum()
    )
    return lb.gamma_bar() * float(abs(total)) ** 2


# ---------------------------------------------------------------------------
# Power, SE, EE
# ---------------------------------------------------------------------------


def total_power(pm: PowerModel, n_on: int, n_elements: int) -> float:
    """Total consumed power in Watts for n_on active elements out of n_elements."""
    if not 0 <= n_on <= n_elements:
        raise DomainError(f"n_on must lie in [0, {n_elements}], got {n_on}")
    return pm.fixed_power() + n_elements * pm.p_off + (pm.p_on - pm.p_off) * n_on


def se_from_snr(snr: float) -> float:
    """Spectral efficiency log2(1 + snr) in bits/s/Hz."""
    return math.log1p(snr) / math.log(2.0)


def worst_case_se(est: ChannelEstimate, x: ActivationVector, u: UncertaintySpec, lb: LinkBudget) -> float:
    """Worst-case spectral efficiency in bits/s/Hz."""
    return se_from_snr(worst_case_snr(est, x, u, lb))


def worst_case_ee(
    est: ChannelEstimate,
    x: ActivationVector,
    u: UncertaintySpec,
    lb: LinkBudget,
    pm: PowerModel,
) -> float:
    """Worst-case energy efficiency in bits/s/Hz per Watt."""
    se = worst_case_se(est, x, u, lb)
    return se / total_power(pm, x.count_on(), x.n_elements)


# ---------------------------------------------------------------------------
# Admissibility of the uncertainty radius
# ---------------------------------------------------------------------------


def psi_threshold(est: ChannelEstimate) -> float:
    """Largest uncertainty radius for which the worst-case closed form holds globally.

    Minimizes (alpha_0 + sum of the M smallest cascaded amplitudes) / sqrt(1+M)
    over M in {0..L}; the M = 0 term is alpha_0 itself.
    """
    ascending = np.sort(est.cascaded_amplitudes)
    prefix = np.concatenate(([0.0], np.cumsum(ascending)))
    m = np.arange(est.n_elements + 1)
    return float(np.min((est.direct_amplitude + prefix) / np.sqrt(1.0 + m)))


def check_assumption1(est: ChannelEstimate, u: UncertaintySpec) -> bool:
    """True iff delta <= psi, i.e. the closed form is valid for every mask."""
    return u.delta <= psi_threshold(est)


def check_assumption2(est: ChannelEstimate, u: UncertaintySpec) -> bool:
    """Stronger, simpler bound: delta at most the smallest estimated amplitude."""
    return u.delta <= est.amplitude_min
