"""Shared instance generators for the test suite."""

import math

import numpy as np
import pytest

from irsopt import (
    ActivationVector,
    ChannelEstimate,
    ComplexCoeff,
    LinkBudget,
    PowerModel,
    ProblemSpec,
    UncertaintySpec,
    worst_case_snr,
)


def make_estimate(direct_amp, cascaded_amps, direct_phase=0.0, cascaded_phases=None):
    """Build an estimate from explicit amplitudes and phases."""
    cascaded_amps = np.asarray(cascaded_amps, dtype=float)
    if cascaded_phases is None:
        cascaded_phases = np.zeros_like(cascaded_amps)
    cascaded = cascaded_amps * np.exp(1j * np.asarray(cascaded_phases, dtype=float))
    return ChannelEstimate(ComplexCoeff.from_polar(direct_amp, direct_phase), cascaded)


def random_estimate(rng, n_elements, scale=1.0):
    """Random amplitudes (lognormal) and phases (uniform)."""
    direct_amp = scale * rng.lognormal(mean=0.0, sigma=0.7)
    cascaded_amps = scale * rng.lognormal(mean=-0.5, sigma=0.7, size=n_elements)
    return make_estimate(
        direct_amp,
        cascaded_amps,
        direct_phase=rng.uniform(0.0, 2.0 * math.pi),
        cascaded_phases=rng.uniform(0.0, 2.0 * math.pi, size=n_elements),
    )


def random_power_model(rng, transmit_power):
    p_off = rng.uniform(1e-4, 2e-3)
    p_on = p_off if rng.random() < 0.25 else p_off + rng.uniform(0.0, 3e-3)
    return PowerModel(
        transmit_power_p=transmit_power,
        amplifier_efficiency_eta=rng.uniform(0.5, 1.0),
        static_power=rng.uniform(5e-3, 2e-2),
        p_on=p_on,
        p_off=p_off,
    )


def random_problem(rng, n_elements, tau=None, nu=None):
    """A feasible random problem via the radius/floor construction.

    delta = tau * (smallest amplitude) keeps the radius admissible for any
    tau in [0, 1]; the floor is nu times the all-on worst case at the largest
    admissible radius, so the all-on mask always satisfies it.
    """
    est = random_estimate(rng, n_elements)
    tau = rng.choice([0.0, 0.5, 1.0]) if tau is None else tau
    nu = rng.choice([0.0, 0.5, 1.0]) if nu is None else nu
    transmit_power = 10.0 ** rng.uniform(-4.0, 0.0)
    lb = LinkBudget(transmit_power, transmit_power / 10.0 ** rng.uniform(1.0, 6.0))
    pm = random_power_model(rng, transmit_power)
    alpha_min = est.amplitude_min
    gamma_min = nu * worst_case_snr(
        est, ActivationVector.all_on(n_elements), UncertaintySpec(alpha_min), lb
    )
    return ProblemSpec(est, UncertaintySpec(tau * alpha_min), gamma_min, pm, lb)


@pytest.fixture
def rng():
    return np.random.default_rng(20230713)
