import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sshcond.errors import DegeneracyError, DomainError, ParameterError
from sshcond.model import (
    ZERO_TEMPERATURE,
    EpsilonTriple,
    ModelParams,
    band_energy,
    bloch_hamiltonian,
    bloch_state,
    eigenvector,
    epsilon_params,
    fermi_dirac,
    occupation_difference,
    reduce_k,
    resonance_momenta,
    velocity_matrix_element,
)

hoppings = st.tuples(
    st.floats(0.05, 2.0), st.floats(0.05, 1.0)
).map(lambda t: (max(t), min(t)))
phases = st.floats(0.0, math.pi, exclude_max=True)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(g0=0.4, g1=0.6),
        dict(g0=0.5, g1=0.0),
        dict(g0=0.5, g1=-0.1),
        dict(g0=math.nan, g1=0.1),
        dict(g0=math.inf, g1=0.1),
        dict(g0=0.6, g1=0.4, a=0.0),
        dict(g0=0.6, g1=0.4, tau_inv=-1.0),
        dict(g0=0.6, g1=0.4, beta=0.0),
        dict(g0=0.6, g1=0.4, mu=0.1),
        dict(g0=True, g1=0.4),
        dict(g0="0.6", g1=0.4),
    ],
)
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ParameterError):
        ModelParams(**kwargs)


def test_param_properties():
    p = ModelParams(0.7, 0.3, beta=1e3)
    assert p.gap == pytest.approx(0.8)
    assert p.bandwidth_edge == pytest.approx(2.0)
    assert not p.zero_temperature
    assert p.with_beta(ZERO_TEMPERATURE).zero_temperature
    assert ModelParams(0.7, 0.3).to_dict()["beta"] == "inf"


def test_band_edges():
    p = ModelParams(0.7, 0.3)
    assert band_energy(p, 0.0) == pytest.approx(1.0)
    assert band_energy(p, 0.5 * math.pi / p.a) == pytest.approx(0.4)
    assert band_energy(p, 0.3, s=-1) == -band_energy(p, 0.3)


def test_band_energy_vectorized():
    p = ModelParams(0.7, 0.3)
    k = np.linspace(0, 6, 7)
    assert np.allclose(band_energy(p, k), [band_energy(p, float(x)) for x in k])


@pytest.mark.parametrize("k", [-0.1, 2 * math.pi, math.nan])
def test_momentum_outside_zone(k):
    with pytest.raises(DomainError):
        band_energy(ModelParams(0.7, 0.3), k)


def test_bad_band_sign():
    with pytest.raises(DomainError):
        band_energy(ModelParams(0.7, 0.3), 1.0, s=0)


@given(st.floats(-100, 100))
def test_reduce_k_lands_in_zone(k):
    p = ModelParams(0.7, 0.3)
    kr = reduce_k(p, k)
    assert 0 <= kr < math.pi / p.a
    # band energy is zone-periodic
    assert band_energy(p, kr) == pytest.approx(
        math.sqrt((p.g0 - p.g1) ** 2 + 4 * p.g0 * p.g1 * math.cos(k * p.a) ** 2), rel=1e-9
    )


@given(hoppings, phases)
def test_hamiltonian_spectrum_matches_bands(g, ka):
    p = ModelParams(*g, a=1.0)
    h = bloch_hamiltonian(p, ka)
    assert np.allclose(h, h.conj().T)
    ev = np.linalg.eigvalsh(h)
    e = band_energy(p, ka)
    assert np.allclose(ev, [-e, e], atol=1e-12)


@given(hoppings, phases, st.sampled_from([1, -1]))
def test_eigenvector_equation(g, ka, s):
    p = ModelParams(*g, a=1.0)
    v = eigenvector(p, ka, s)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert np.allclose(bloch_hamiltonian(p, ka) @ v, band_energy(p, ka, s) * v, atol=1e-12)


def test_bloch_state_bundle():
    p = ModelParams(0.7, 0.3, a=1.0)
    st_ = bloch_state(p, 0.4, -1)
    assert st_.band == -1 and st_.energy == band_energy(p, 0.4, -1)


def test_degenerate_point():
    p = ModelParams(0.5, 0.5, a=1.0)
    with pytest.raises(DegeneracyError):
        eigenvector(p, 0.5 * math.pi, 1)
    with pytest.raises(DegeneracyError):
        velocity_matrix_element(p, 0.5 * math.pi)


@given(hoppings, st.floats(0.01, math.pi - 0.01))
def test_velocity_element_against_finite_difference(g, ka):
    p = ModelParams(*g, a=1.0)
    h = 1e-6
    dh = (bloch_hamiltonian(p, ka + h) - bloch_hamiltonian(p, ka - h)) / (2 * h)
    up, down = eigenvector(p, ka, 1), eigenvector(p, ka, -1)
    fd = up.conj() @ dh @ down
    assert abs(velocity_matrix_element(p, ka) - fd) <= 1e-6 * (1 + abs(fd))


def test_fermi_dirac_limits():
    assert fermi_dirac(0.0, 10.0) == 0.5
    assert fermi_dirac(1e6, 1e3) == 0.0
    assert fermi_dirac(-1e6, 1e3) == 1.0
    assert fermi_dirac(0.0, ZERO_TEMPERATURE) == 0.5
    assert fermi_dirac(0.1, ZERO_TEMPERATURE) == 0.0
    with pytest.raises(ParameterError):
        fermi_dirac(0.1, 0.0)


@given(st.floats(-50, 50), st.floats(0.1, 1e4))
def test_fermi_dirac_particle_hole(e, beta):
    assert fermi_dirac(e, beta) + fermi_dirac(-e, beta) == pytest.approx(1.0, abs=1e-15)


@given(st.floats(0, 10), st.floats(0.1, 1e4))
def test_occupation_difference(e, beta):
    ref = fermi_dirac(e, beta) - fermi_dirac(-e, beta)
    assert occupation_difference(e, beta) == pytest.approx(ref, abs=1e-15)


def test_epsilon_params_fig2():
    p = ModelParams(0.55, 0.45, tau_inv=0.05, beta=1e3)
    eps = epsilon_params(p, 0.0)
    assert eps.eps1 == pytest.approx(0.01 / 0.2475)
    assert eps.eps3 == pytest.approx(1e3 * math.sqrt(0.2475))
    # eps2 = eps1 - (omega + i/tau)^2 / (4 g0 g1)
    w = complex(0.3, 0.05)
    assert epsilon_params(p, 0.3).eps2 == pytest.approx(eps.eps1 - w * w / 0.99)


@given(hoppings, st.floats(1.0, 1e4))
def test_decay_exponent_identity(g, beta):
    # sqrt(eps1) eps3 = beta (g0 - g1)
    p = ModelParams(*g, beta=beta)
    eps = epsilon_params(p, 0.0)
    assert math.sqrt(eps.eps1) * eps.eps3 == pytest.approx(beta * (p.g0 - p.g1), rel=1e-12)


def test_epsilon_triple_validation():
    with pytest.raises(ParameterError):
        EpsilonTriple(-1.0, 0.1, 1.0)
    with pytest.raises(ParameterError):
        EpsilonTriple(0.1, complex(math.nan, 0), 1.0)
    with pytest.raises(ParameterError):
        EpsilonTriple(0.1, 0.1, 0.0)


@given(hoppings, st.floats(0, 1))
def test_resonance_momenta(g, frac):
    g0, g1 = g
    omega = 2 * (g0 - g1) + frac * 4 * g1
    (ka,) = resonance_momenta(g0, g1, omega)
    assert 2 * math.sqrt((g0 - g1) ** 2 + 4 * g0 * g1 * math.cos(ka) ** 2) == pytest.approx(omega, rel=1e-9)
    assert resonance_momenta(g0, g1, 2 * (g0 + g1) + 0.1) == []
