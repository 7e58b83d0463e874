"""Experiment engine: derive per-realization problem data, sweep, average, CSV.

A sweep varies one axis (element count, transmit power in dBm, or the
SNR-floor control nu) while holding the rest of the configuration fixed.
Common random numbers: realization r at a given element count always sees
the same channel estimate, whatever the algorithm, tau, or swept value, so
per-realization dominance carries over to the averaged curves.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .channel import (
    FadingParams,
    Geometry,
    PathLossParams,
    realization_seed,
    sample_estimate,
)
from .errors import ConfigError, IrsOptError
from .model import (
    ActivationVector,
    ChannelEstimate,
    LinkBudget,
    PowerModel,
    UncertaintySpec,
    worst_case_snr,
)
from .optimize import (
    ProblemSpec,
    all_on_baseline,
    dp_optimize,
    exhaustive_search,
)

SWEEP_KINDS = ("elements", "power", "nu")
ALGORITHM_NAMES = ("dp", "exhaustive", "baseline")

# sweep_var labels carry the axis unit so downstream tools need no lookup
SWEEP_VAR_LABELS = {"elements": "elements", "power": "power_dbm", "nu": "nu"}

CSV_HEADER = "sweep_var,sweep_value,tau,algorithm,mean_ee,mean_se,mean_m_star,feasibility_rate,realizations"


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


def _default_sweep_values(sweep: str) -> tuple:
    if sweep == "elements":
        return tuple(range(4, 41, 2))
    if sweep == "power":
        return tuple(float(p) for p in range(-10, 41, 5))
    return tuple(round(0.1 * k, 1) for k in range(11))


@dataclass(frozen=True)
class ExperimentConfig:
    """Full experiment description; defaults reproduce the reference setup."""

    geometry: Geometry = field(
        default_factory=lambda: Geometry(
            tx=np.array([0.0, 0.0, 0.0]),
            rx=np.array([100.0, 0.0, 0.0]),
            irs=np.array([50.0, 20.0, 10.0]),
        )
    )
    pl_direct: PathLossParams = PathLossParams(c_ref=1e-5, d_ref=1.0, exponent=3.7)
    pl_tx_irs: PathLossParams = PathLossParams(c_ref=1e-3, d_ref=1.0, exponent=2.2)
    pl_irs_rx: PathLossParams = PathLossParams(c_ref=1e-3, d_ref=1.0, exponent=2.2)
    rician_k_u_db: float = 5.0
    rician_k_v_db: float = 5.0
    element_spacing_ratio: float = 0.5
    beta: float = 0.9
    n_elements: int = 20
    transmit_power_dbm: float = 10.0
    noise_power_dbm: float = -120.0
    eta: float = 0.8
    static_power_mw: float = 10.0
    p_on_mw: float = 1.5
    p_off_mw: float = 0.3
    tau_list: tuple = (0.0, 0.5, 1.0)
    nu: float = 0.7
    sweep: str = "elements"
    sweep_values: tuple = field(default_factory=lambda: _default_sweep_values("elements"))
    realizations: int = 1000
    seed: int = 1
    algorithms: tuple = ("dp", "baseline")
    exhaustive_cap: int = 24

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        if self.sweep not in SWEEP_KINDS:
            raise ConfigError(f"sweep must be one of {SWEEP_KINDS}, got {self.sweep!r}")
        if not self.sweep_values:
            raise ConfigError("sweep_values must be non-empty")
        if self.sweep == "elements":
            if any(int(v) != v or v < 1 for v in self.sweep_values):
                raise ConfigError("elements sweep values must be integers >= 1")
        elif self.sweep == "nu":
            if any(not 0.0 <= v <= 1.0 for v in self.sweep_values):
                raise ConfigError("nu sweep values must lie in [0, 1]")
        else:
            if any(not math.isfinite(v) for v in self.sweep_values):
                raise ConfigError("power sweep values must be finite dBm levels")
        if not self.tau_list:
            raise ConfigError("tau_list must be non-empty")
        if any(not 0.0 <= t <= 1.0 for t in self.tau_list):
            raise ConfigError("every tau must lie in [0, 1]")
        if not 0.0 <= self.nu <= 1.0:
            raise ConfigError(f"nu must lie in [0, 1], got {self.nu}")
        if self.n_elements < 1:
            raise ConfigError(f"n_elements must be >= 1, got {self.n_elements}")
        if not 0.0 < self.eta <= 1.0:
            raise ConfigError(f"eta must lie in (0, 1], got {self.eta}")
        for name in ("static_power_mw", "p_on_mw", "p_off_mw"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.p_off_mw > self.p_on_mw:
            raise ConfigError("p_off_mw must not exceed p_on_mw")
        if not 0.0 <= self.beta <= 1.0:
            raise ConfigError(f"beta must lie in [0, 1], got {self.beta}")
        if self.realizations < 1:
            raise ConfigError(f"realizations must be >= 1, got {self.realizations}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        unknown = set(self.algorithms) - set(ALGORITHM_NAMES)
        if not self.algorithms or unknown:
            raise ConfigError(f"algorithms must be a non-empty subset of {ALGORITHM_NAMES}")
        if "exhaustive" in self.algorithms:
            worst_l = (
                max(int(v) for v in self.sweep_values)
                if self.sweep == "elements"
                else self.n_elements
            )
            if worst_l > self.exhaustive_cap:
                raise ConfigError(
                    f"exhaustive search requested but the sweep reaches {worst_l} elements, "
                    f"above the cap of {self.exhaustive_cap}"
                )

    # -- (de)serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "geometry": {
                "tx": list(self.geometry.tx),
                "rx": list(self.geometry.rx),
                "irs": list(self.geometry.irs),
            },
            "path_loss": {
                key: {"c_ref": pl.c_ref, "d_ref": pl.d_ref, "exponent": pl.exponent}
                for key, pl in (
                    ("direct", self.pl_direct),
                    ("tx_irs", self.pl_tx_irs),
                    ("irs_rx", self.pl_irs_rx),
                )
            },
            "fading": {
                "rician_k_u_db": self.rician_k_u_db,
                "rician_k_v_db": self.rician_k_v_db,
                "element_spacing_ratio": self.element_spacing_ratio,
                "beta": self.beta,
            },
            "n_elements": self.n_elements,
            "transmit_power_dbm": self.transmit_power_dbm,
            "noise_power_dbm": self.noise_power_dbm,
            "eta": self.eta,
            "static_power_mw": self.static_power_mw,
            "p_on_mw": self.p_on_mw,
            "p_off_mw": self.p_off_mw,
            "tau_list": list(self.tau_list),
            "nu": self.nu,
            "sweep": self.sweep,
            "sweep_values": list(self.sweep_values),
            "realizations": self.realizations,
            "seed": self.seed,
            "algorithms": list(self.algorithms),
            "exhaustive_cap": self.exhaustive_cap,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError(f"config must be a JSON object, got {type(raw).__name__}")
        known = {
            "geometry", "path_loss", "fading", "n_elements", "transmit_power_dbm",
            "noise_power_dbm", "eta", "static_power_mw", "p_on_mw", "p_off_mw",
            "tau_list", "nu", "sweep", "sweep_values", "realizations", "seed",
            "algorithms", "exhaustive_cap",
        }
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

        defaults = cls()
        kwargs = {}
        try:
            if "geometry" in raw:
                g = raw["geometry"]
                kwargs["geometry"] = Geometry(
                    tx=np.asarray(g["tx"], dtype=float),
                    rx=np.asarray(g["rx"], dtype=float),
                    irs=np.asarray(g["irs"], dtype=float),
                )
            if "path_loss" in raw:
                pl = raw["path_loss"]
                for key, attr in (("direct", "pl_direct"), ("tx_irs", "pl_tx_irs"), ("irs_rx", "pl_irs_rx")):
                    if key in pl:
                        kwargs[attr] = PathLossParams(**pl[key])
            if "fading" in raw:
                fd = dict(raw["fading"])
                for key in ("rician_k_u_db", "rician_k_v_db", "element_spacing_ratio", "beta"):
                    if key in fd:
                        kwargs[key] = float(fd.pop(key))
                if fd:
                    raise ConfigError(f"unknown fading keys: {sorted(fd)}")
        except (KeyError, TypeError, ValueError, IrsOptError) as exc:
            raise ConfigError(f"malformed config block: {exc}") from exc

        for key in ("n_elements", "realizations", "seed", "exhaustive_cap"):
            if key in raw:
                kwargs[key] = int(raw[key])
        for key in ("transmit_power_dbm", "noise_power_dbm", "eta", "static_power_mw",
                    "p_on_mw", "p_off_mw", "nu"):
            if key in raw:
                kwargs[key] = float(raw[key])
        if "tau_list" in raw:
            kwargs["tau_list"] = tuple(float(t) for t in raw["tau_list"])
        if "sweep" in raw:
            kwargs["sweep"] = str(raw["sweep"])
        if "sweep_values" in raw:
            kwargs["sweep_values"] = tuple(raw["sweep_values"])
        elif "sweep" in raw and raw["sweep"] != defaults.sweep:
            kwargs["sweep_values"] = _default_sweep_values(str(raw["sweep"]))
        if "algorithms" in raw:
            kwargs["algorithms"] = tuple(str(a) for a in raw["algorithms"])

        config = replace(defaults, **kwargs)
        config.validate()
        return config

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(raw)


def default_config(**overrides) -> ExperimentConfig:
    """The reference setup; keyword overrides are applied then re-validated."""
    if "sweep" in overrides and "sweep_values" not in overrides:
        overrides["sweep_values"] = _default_sweep_values(overrides["sweep"])
    config = replace(ExperimentConfig(), **overrides)
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Per-realization derivations
# ---------------------------------------------------------------------------


def derive_uncertainty(est: ChannelEstimate, tau: float) -> UncertaintySpec:
    """Radius tau * (smallest estimated amplitude); admissible for any tau in [0, 1]."""
    if not 0.0 <= tau <= 1.0:
        raise ConfigError(f"tau must lie in [0, 1], got {tau}")
    return UncertaintySpec(tau * est.amplitude_min)


def derive_gamma_min(est: ChannelEstimate, lb: LinkBudget, nu: float) -> float:
    """SNR floor nu * (worst case of the all-on mask at the largest admissible radius).

    Any radius derived by derive_uncertainty then keeps the problem feasible.
    """
    if not 0.0 <= nu <= 1.0:
        raise ConfigError(f"nu must lie in [0, 1], got {nu}")
    x_on = ActivationVector.all_on(est.n_elements)
    return nu * worst_case_snr(est, x_on, UncertaintySpec(est.amplitude_min), lb)


# ---------------------------------------------------------------------------
# Sweep engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRecord:
    """One averaged data point: a (sweep value, tau, algorithm) cell."""

    sweep_var: str
    sweep_value: float
    tau: float
    algorithm: str
    mean_ee: float
    mean_se: float
    mean_m_star: float
    feasibility_rate: float
    realizations: int


def _solver(name: str, config: ExperimentConfig):
    if name == "dp":
        return dp_optimize
    if name == "exhaustive":
        return lambda spec: exhaustive_search(spec, max_elements=config.exhaustive_cap)
    return all_on_baseline


def _generate_estimates(config: ExperimentConfig, n_elements: int) -> list:
    fading = FadingParams(
        rician_k_u=db_to_linear(config.rician_k_u_db),
        rician_k_v=db_to_linear(config.rician_k_v_db),
        element_spacing_ratio=config.element_spacing_ratio,
        beta=np.full(n_elements, config.beta),
    )
    # substreams keyed by realization index only: combined with the
    # interleaved draws in sample_estimate, realization r at L' elements is a
    # truncation of realization r at L > L', extending common random numbers
    # to the element-count axis
    return [
        sample_estimate(
            config.geometry,
            config.pl_direct,
            config.pl_tx_irs,
            config.pl_irs_rx,
            fading,
            n_elements,
            realization_seed(config.seed, r),
        )
        for r in range(config.realizations)
    ]


class _Accumulator:
    __slots__ = ("ee", "se", "m", "feasible", "total")

    def __init__(self):
        self.ee = self.se = self.m = 0.0
        self.feasible = self.total = 0

    def add(self, result) -> None:
        self.total += 1
        if result.feasible:
            self.feasible += 1
            self.ee += result.ee_star
            self.se += math.log1p(result.snr_at_optimum) / math.log(2.0)
            self.m += result.m_star

    def record(self, sweep_var: str, value: float, tau: float, algorithm: str) -> SweepRecord:
        n = self.feasible
        return SweepRecord(
            sweep_var=sweep_var,
            sweep_value=float(value),
            tau=tau,
            algorithm=algorithm,
            mean_ee=self.ee / n if n else math.nan,
            mean_se=self.se / n if n else math.nan,
            mean_m_star=self.m / n if n else math.nan,
            feasibility_rate=n / self.total if self.total else 0.0,
            realizations=self.total,
        )


def run_sweep(config: ExperimentConfig) -> list:
    """Run the configured sweep and return one SweepRecord per (value, tau, algorithm)."""
    config.validate()
    label = SWEEP_VAR_LABELS[config.sweep]
    noise_w = dbm_to_watts(config.noise_power_dbm)
    solvers = {name: _solver(name, config) for name in config.algorithms}

    estimate_cache: dict[int, list] = {}
    records = []
    for value in config.sweep_values:
        n_elements = int(value) if config.sweep == "elements" else config.n_elements
        p_dbm = float(value) if config.sweep == "power" else config.transmit_power_dbm
        nu = float(value) if config.sweep == "nu" else config.nu

        p_w = dbm_to_watts(p_dbm)
        lb = LinkBudget(transmit_power_p=p_w, noise_power=noise_w)
        pm = PowerModel(
            transmit_power_p=p_w,
            amplifier_efficiency_eta=config.eta,
            static_power=config.static_power_mw / 1e3,
            p_on=config.p_on_mw / 1e3,
            p_off=config.p_off_mw / 1e3,
        )

        if n_elements not in estimate_cache:
            estimate_cache[n_elements] = _generate_estimates(config, n_elements)
        estimates = estimate_cache[n_elements]

        cells = {(tau, name): _Accumulator() for tau in config.tau_list for name in config.algorithms}
        for est in estimates:
            gamma_min = derive_gamma_min(est, lb, nu)
            for tau in config.tau_list:
                spec = ProblemSpec(est, derive_uncertainty(est, tau), gamma_min, pm, lb)
                for name in config.algorithms:
                    cells[(tau, name)].add(solvers[name](spec))

        for (tau, name), acc in cells.items():
            if acc.feasible < acc.total:
                warnings.warn(
                    f"{acc.total - acc.feasible}/{acc.total} realizations infeasible at "
                    f"{label}={value}, tau={tau}, algorithm={name}; excluded from means",
                    stacklevel=2,
                )
            records.append(acc.record(label, value, tau, name))
    return records


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def _format_value(value: float) -> str:
    return f"{value:.17e}"


def write_csv(records: Sequence, path) -> None:
    """Write records sorted by (sweep_value, tau, algorithm); full double precision."""
    ordered = sorted(records, key=lambda r: (r.sweep_value, r.tau, r.algorithm))
    lines = [CSV_HEADER]
    for r in ordered:
        lines.append(
            ",".join(
                (
                    r.sweep_var,
                    _format_value(r.sweep_value),
                    _format_value(r.tau),
                    r.algorithm,
                    _format_value(r.mean_ee),
                    _format_value(r.mean_se),
                    _format_value(r.mean_m_star),
                    _format_value(r.feasibility_rate),
                    str(r.realizations),
                )
            )
        )
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write sweep CSV to {path}: {exc}") from exc


def read_csv(path) -> list:
    """Parse a sweep CSV back into SweepRecord rows."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"failed to read sweep CSV from {path}: {exc}") from exc
    lines = [line for line in text.splitlines() if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ConfigError(f"{path} does not start with the sweep CSV header")
    records = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 9:
            raise ConfigError(f"malformed CSV row: {line!r}")
        records.append(
            SweepRecord(
                sweep_var=parts[0],
                sweep_value=float(parts[1]),
                tau=float(parts[2]),
                algorithm=parts[3],
                mean_ee=float(parts[4]),
                mean_se=float(parts[5]),
                mean_m_star=float(parts[6]),
                feasibility_rate=float(parts[7]),
                realizations=int(parts[8]),
            )
        )
    return records
