"""Random channel-estimate generation: path loss, Rician fading, ULA steering.

The direct link is circularly-symmetric Gaussian with distance-dependent
variance.  Each cascaded coefficient is the product of Tx-IRS and IRS-Rx
Rician coefficients (LOS steering phase plus scattered part), scaled by the
element's amplitude attenuation.

Generation is deterministic in the seed; independent realizations should use
seeds derived from distinct spawn keys (see ``realization_seed``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, DomainError
from .model import ChannelEstimate, ComplexCoeff


@dataclass(frozen=True, eq=False)
class Geometry:
    """Positions of transmitter, receiver and IRS in meters."""

    tx: np.ndarray
    rx: np.ndarray
    irs: np.ndarray

    def __post_init__(self):
        for name in ("tx", "rx", "irs"):
            point = np.asarray(getattr(self, name), dtype=np.float64).copy()
            if point.shape != (3,):
                raise DomainError(f"{name} must be a 3-vector, got shape {point.shape}")
            point.flags.writeable = False
            object.__setattr__(self, name, point)
        for a, b in (("tx", "rx"), ("tx", "irs"), ("rx", "irs")):
            if np.array_equal(getattr(self, a), getattr(self, b)):
                raise DomainError(f"{a} and {b} must not coincide")

    def distance_direct(self) -> float:
        return float(np.linalg.norm(self.rx - self.tx))

    def distance_tx_irs(self) -> float:
        return float(np.linalg.norm(self.irs - self.tx))

    def distance_irs_rx(self) -> float:
        return float(np.linalg.norm(self.rx - self.irs))


@dataclass(frozen=True)
class PathLossParams:
    """Distance-dependent power loss: c_ref * (d / d_ref) ** -exponent."""

    c_ref: float
    d_ref: float
    exponent: float

    def __post_init__(self):
        for name in ("c_ref", "d_ref", "exponent"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True, eq=False)
class FadingParams:
    """Small-scale fading parameters for the two IRS hops.

    Rician factors are linear power ratios (math.inf selects pure LOS);
    ``element_spacing_ratio`` is inter-element spacing over wavelength;
    ``beta`` holds the per-element amplitude attenuations.
    """

    rician_k_u: float
    rician_k_v: float
    element_spacing_ratio: float
    beta: np.ndarray

    def __post_init__(self):
        if self.rician_k_u < 0.0 or self.rician_k_v < 0.0:
            raise DomainError("Rician factors must be >= 0")
        if self.element_spacing_ratio <= 0.0:
            raise DomainError(f"element spacing ratio must be > 0, got {self.element_spacing_ratio}")
        beta = np.asarray(self.beta, dtype=np.float64).copy()
        if beta.ndim != 1 or beta.shape[0] < 1:
            raise DomainError(f"beta must be a non-empty 1-D vector, got shape {beta.shape}")
        if np.any(beta < 0.0) or np.any(beta > 1.0):
            raise DomainError("every amplitude attenuation must lie in [0, 1]")
        beta.flags.writeable = False
        object.__setattr__(self, "beta", beta)

    @property
    def n_elements(self) -> int:
        return int(self.beta.shape[0])


@dataclass(frozen=True)
class SteeringAngles:
    """Inclination/azimuth of arrival (Tx side) and departure (Rx side), radians."""

    inclination_aoa: float
    azimuth_aoa: float
    inclination_aod: float
    azimuth_aod: float

    def __post_init__(self):
        for name in ("inclination_aoa", "inclination_aod"):
            if not 0.0 <= getattr(self, name) <= math.pi:
                raise DomainError(f"{name} must lie in [0, pi]")
        for name in ("azimuth_aoa", "azimuth_aod"):
            if not -math.pi < getattr(self, name) <= math.pi:
                raise DomainError(f"{name} must lie in (-pi, pi]")


def path_loss(params: PathLossParams, distance: float) -> float:
    """Linear power attenuation at the given distance in meters."""
    if distance <= 0.0:
        raise DomainError(f"distance must be > 0 m, got {distance}")
    return params.c_ref * (distance / params.d_ref) ** (-params.exponent)


def _spherical_direction(vector: np.ndarray) -> tuple[float, float]:
    """Inclination from +z in [0, pi] and azimuth from +x in (-pi, pi]."""
    norm = float(np.linalg.norm(vector))
    unit = vector / norm
    inclination = math.acos(max(-1.0, min(1.0, float(unit[2]))))
    azimuth = math.atan2(float(unit[1]), float(unit[0]))
    if azimuth <= -math.pi:
        azimuth = math.pi
    return inclination, azimuth


def steering_angles(geom: Geometry) -> SteeringAngles:
    """Arrival/departure angles seen by an IRS whose array runs along the x-axis.

    Arrival is the direction IRS -> Tx, departure the direction IRS -> Rx,
    both expressed as spherical angles in the global frame.
    """
    incl_a, az_a = _spherical_direction(geom.tx - geom.irs)
    incl_d, az_d = _spherical_direction(geom.rx - geom.irs)
    return SteeringAngles(incl_a, az_a, incl_d, az_d)


def los_vector(
    n_elements: int,
    spacing_ratio: float,
    angles: SteeringAngles,
    which: str = "arrival",
) -> np.ndarray:
    """Unit-amplitude LOS steering phasors along the element index.

    Entry l is exp(j*2*pi*spacing_ratio*l*sin(inclination)*cos(azimuth)) for
    l = 0..n_elements-1, using the arrival or departure angle pair.
    """
    if n_elements < 1:
        raise DomainError(f"need at least one element, got {n_elements}")
    if which == "arrival":
        inclination, azimuth = angles.inclination_aoa, angles.azimuth_aoa
    elif which == "departure":
        inclination, azimuth = angles.inclination_aod, angles.azimuth_aod
    else:
        raise DomainError(f"which must be 'arrival' or 'departure', got {which!r}")
    projection = math.sin(inclination) * math.cos(azimuth)
    indices = np.arange(n_elements, dtype=np.float64)
    return np.exp(1j * (2.0 * math.pi * spacing_ratio * projection) * indices)


def _rician_weights(k_factor: float) -> tuple[float, float]:
    if math.isinf(k_factor):
        return 1.0, 0.0
    return math.sqrt(k_factor / (1.0 + k_factor)), math.sqrt(1.0 / (1.0 + k_factor))


def realization_seed(seed: int, *key: int) -> np.random.SeedSequence:
    """Derive the substream for one realization; stable under reordering."""
    return np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))


def sample_estimate(
    geom: Geometry,
    pl_direct: PathLossParams,
    pl_tx_irs: PathLossParams,
    pl_irs_rx: PathLossParams,
    fading: FadingParams,
    n_elements: int,
    seed,
) -> ChannelEstimate:
    """Draw one random channel estimate.

    The direct coefficient is complex Gaussian with the direct-link path loss
    as variance; each hop coefficient mixes the LOS steering phasor with a
    standard complex Gaussian scatter term by the Rician weights.

    Scatter draws are interleaved per element, so for a fixed seed the
    estimate over the first L' < L elements is exactly the truncation of the
    estimate over L elements; sweeps over the element count can therefore use
    common random numbers.
    """
    if n_elements < 1:
        raise DomainError(f"need at least one element, got {n_elements}")
    if fading.n_elements != n_elements:
        raise DimensionMismatchError(
            f"beta holds {fading.n_elements} attenuations but {n_elements} elements requested"
        )
    rng = np.random.default_rng(seed)

    rho_direct = path_loss(pl_direct, geom.distance_direct())
    rho_u = path_loss(pl_tx_irs, geom.distance_tx_irs())
    rho_v = path_loss(pl_irs_rx, geom.distance_irs_rx())

    # fixed draw order: direct pair first, then 4 draws per element
    direct = math.sqrt(rho_direct / 2.0) * complex(rng.standard_normal(), rng.standard_normal())
    scatter = rng.standard_normal((n_elements, 4))
    u_scatter = (scatter[:, 0] + 1j * scatter[:, 1]) / math.sqrt(2.0)
    v_scatter = (scatter[:, 2] + 1j * scatter[:, 3]) / math.sqrt(2.0)

    angles = steering_angles(geom)
    u_los = los_vector(n_elements, fading.element_spacing_ratio, angles, "arrival")
    v_los = los_vector(n_elements, fading.element_spacing_ratio, angles, "departure")

    los_u, nlos_u = _rician_weights(fading.rician_k_u)
    los_v, nlos_v = _rician_weights(fading.rician_k_v)
    u = math.sqrt(rho_u) * (los_u * u_los + nlos_u * u_scatter)
    v = math.sqrt(rho_v) * (los_v * v_los + nlos_v * v_scatter)

    return ChannelEstimate(ComplexCoeff.from_complex(direct), fading.beta * u * v)
