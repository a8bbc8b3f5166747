import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sshcond.errors import DomainError, PoleError
from sshcond.model import ZERO_TEMPERATURE, EpsilonTriple, ModelParams, epsilon_params
from sshcond.oracle import (
    contour_occupancy,
    integral_I_contour,
    sigma_contour,
    sigma_from_I,
    sigma_interband_bz,
    temperature_correction,
)
from sshcond.presets import PRESETS
from sshcond.quadrature import QuadratureSpec

# sigma / (2 sigma_0 a), from 30-digit mpmath quadrature of the Brillouin-zone integral
FROZEN_SIGMA = {
    ("fig2", 0.0): complex(0.50924908844391873, 0.0),
    ("fig2", 0.2): complex(3.9224572020548737, -0.95955855376863721),
    ("fig2", 0.5): complex(0.54838027221320064, 1.4964002419933088),
    ("fig2", 1.0): complex(0.08616076155213669, 0.69445852109937382),
    ("fig2", 2.0): complex(0.02578843872961242, 0.3463175064255514),
    ("fig2", 2.5): complex(0.0058243786116995588, 0.26663527799497594),
    ("fig3", 0.8): complex(2.5106469254003568, -1.4074802335365468),
    ("fig3", 2.0): complex(0.31230212806523805, 0.69010803519837961),
    ("fig4", 0.5): complex(0.36419674022714861, 0.44957077303256941),
}


@pytest.mark.parametrize("key", sorted(FROZEN_SIGMA))
def test_bz_against_frozen_reference(key):
    pid, omega = key
    res = sigma_interband_bz(PRESETS[pid].params, omega)
    assert res.converged
    assert abs(res.value - FROZEN_SIGMA[key]) <= 1e-10 * abs(FROZEN_SIGMA[key])


@pytest.mark.parametrize("key", sorted(FROZEN_SIGMA))
def test_contour_against_frozen_reference(key):
    pid, omega = key
    res = sigma_contour(PRESETS[pid].params, omega)
    assert abs(res.value - FROZEN_SIGMA[key]) <= 1e-10 * abs(FROZEN_SIGMA[key])


def test_dual_representation_grid(preset):
    for w in np.linspace(0, 3, 20):
        a = sigma_interband_bz(preset.params, float(w)).value
        b = sigma_contour(preset.params, float(w)).value
        assert abs(a - b) <= 1e-8 * abs(a)


@given(
    st.floats(0.51, 0.95),
    st.floats(0.01, 0.5),
    st.one_of(st.just(ZERO_TEMPERATURE), st.floats(1.0, 1e4)),
    st.floats(0.0, 3.0),
)
def test_dual_representation_random(g0, tau_inv, beta, omega):
    p = ModelParams(g0, 1 - g0, tau_inv=tau_inv, beta=beta)
    a = sigma_interband_bz(p, omega).value
    b = sigma_contour(p, omega).value
    assert abs(a - b) <= 1e-8 * abs(a)


def test_reality_symmetry():
    p = PRESETS["fig3"].params
    for w in (0.3, 1.1, 2.4):
        a = sigma_interband_bz(p, w).value
        b = sigma_interband_bz(p, -w).value
        assert b == pytest.approx(a.conjugate(), rel=1e-12)
    assert sigma_interband_bz(p, 0.0).value.imag == 0.0


def test_gapless_chain_is_zero():
    p = ModelParams(0.5, 0.5)
    assert sigma_interband_bz(p, 1.0).value == 0
    assert sigma_contour(p, 1.0).value == 0


def test_undamped_pole_on_path():
    p = ModelParams(0.7, 0.3, tau_inv=0.0)
    with pytest.raises(PoleError):
        sigma_interband_bz(p, 1.0)
    # below the gap the undamped response is purely reactive (capacitive sign)
    val = sigma_interband_bz(p, 0.5).value
    assert val.real == 0.0 and val.imag < 0


def test_passivity_on_presets(preset):
    # Re sigma >= 0 on the preset grid (observed, not a theorem of the formula)
    for w in np.linspace(0.0, 3.0, 31):
        assert sigma_interband_bz(preset.params, float(w)).value.real >= -1e-14


def test_temperature_correction_matches_subtraction():
    p = ModelParams(0.6, 0.4, tau_inv=0.05, beta=20.0)
    for w in (0.3, 0.9):
        direct = temperature_correction(p, w).value
        diff = sigma_interband_bz(p, w).value - sigma_interband_bz(p.with_beta(ZERO_TEMPERATURE), w).value
        assert direct == pytest.approx(diff, rel=1e-8)


def test_temperature_correction_tiny_but_resolved():
    p = PRESETS["fig2"].params
    c = temperature_correction(p, 0.5).value
    assert 0 < abs(c) < 1e-40
    assert temperature_correction(p.with_beta(ZERO_TEMPERATURE), 0.5).value == 0


def test_high_temperature_suppresses_response():
    p = ModelParams(0.6, 0.4, beta=1e-3)
    assert abs(sigma_interband_bz(p, 0.5).value) < 1e-3 * abs(sigma_interband_bz(p.with_beta(1e3), 0.5).value)


def test_contour_errors():
    with pytest.raises(DomainError):
        integral_I_contour(EpsilonTriple(0.0, 0.5 - 0.1j, ZERO_TEMPERATURE))
    with pytest.raises(PoleError):
        integral_I_contour(EpsilonTriple(0.1, -2.0, ZERO_TEMPERATURE))


def test_contour_real_detuning_off_circle():
    # eps2 > 0 real: no pole, real integrand, and a positive-definite denominator
    val = integral_I_contour(EpsilonTriple(0.3, 0.5, ZERO_TEMPERATURE)).value
    assert val.imag == 0 and val.real < 0


def test_contour_occupancy():
    assert np.all(contour_occupancy(0.1, ZERO_TEMPERATURE, np.array([0.0, 1.0])) == -1)
    assert contour_occupancy(0.1, 2.0, 0.0) == pytest.approx(-math.tanh(math.sqrt(0.1)))


def test_sigma_from_I_is_linear():
    p = PRESETS["fig2"].params
    assert sigma_from_I(p, 0.4, 2.0 + 1j) == pytest.approx(2 * sigma_from_I(p, 0.4, 1.0) + sigma_from_I(p, 0.4, 1j))


def test_nonconvergence_flag():
    p = PRESETS["fig2"].params
    res = sigma_interband_bz(p, 0.2, QuadratureSpec(rel_tol=1e-15, abs_tol=0.0, max_subdivisions=1))
    assert not res.converged
    assert res.value == pytest.approx(FROZEN_SIGMA[("fig2", 0.2)], rel=1e-2)


def test_tighter_tolerance_reduces_error():
    p = PRESETS["fig2"].params
    ref = FROZEN_SIGMA[("fig2", 0.2)]
    loose = sigma_interband_bz(p, 0.2, QuadratureSpec(rel_tol=1e-4, abs_tol=0.0)).value
    tight = sigma_interband_bz(p, 0.2, QuadratureSpec(rel_tol=1e-12, abs_tol=0.0)).value
    assert abs(tight - ref) <= abs(loose - ref)
    assert abs(tight - ref) <= 1e-12 * abs(ref)


def test_epsilon_route_consistent():
    # integral_I_contour fed through sigma_from_I equals sigma_contour
    p = PRESETS["fig3"].params
    i = integral_I_contour(epsilon_params(p, 1.3)).value
    assert sigma_from_I(p, 1.3, i) == sigma_contour(p, 1.3).value
