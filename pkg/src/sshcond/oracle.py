"""Reference values of the interband conductivity by adaptive quadrature.

Conductivities are returned in units of ``2 sigma_0 a`` with
``sigma_0 = e^2/4`` (hbar = 1), so the lattice constant drops out.

Two independent routes are provided:

* ``sigma_interband_bz`` integrates over the Brillouin zone in physical
  variables, folding the zone about ka = pi/2.
* ``integral_I_contour`` integrates the dimensionless unit-circle integral
  I(eps1, eps2, eps3) over the full zone, and ``sigma_from_I`` maps it back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, PoleError
from .model import (
    EpsilonTriple,
    ModelParams,
    epsilon_params,
    fermi_dirac,
    resonance_momenta,
    upper_band,
)
from .quadrature import QuadratureSpec, QuadResult, gauss_kronrod

HALF_PI = 0.5 * math.pi


@dataclass
class ConductivitySample:
    """One frequency of a sweep.  ``rel_deviation`` is filled in after the sweep."""

    omega: float
    sigma_quad: complex
    sigma_asym: complex
    rel_deviation: float = math.nan
    quad_error_estimate: float = math.nan
    quad_converged: bool = True


def _seed_points(g0: float, g1: float, omega: float, tau_inv: float) -> list[float]:
    # Peak of |4 eps^2 - (omega + i tau_inv)^2|^{-1} sits where 4 eps^2 = omega^2 - tau_inv^2;
    # the bare resonance 4 eps^2 = omega^2 is seeded as well.
    seeds = set(resonance_momenta(g0, g1, omega))
    shifted = omega * omega - tau_inv * tau_inv
    if shifted > 0:
        seeds.update(resonance_momenta(g0, g1, math.sqrt(shifted)))
    return sorted(s for s in seeds if 0.0 < s < HALF_PI)


def _reject_real_pole(params: ModelParams, omega: float) -> None:
    if params.tau_inv == 0 and params.gap <= abs(omega) <= params.bandwidth_edge:
        raise PoleError(
            f"tau_inv = 0 and omega = {omega} lies inside the transition band "
            f"[{params.gap}, {params.bandwidth_edge}]: pole on the integration path"
        )


def _bz_prefactor(params: ModelParams, omega: float) -> complex:
    w = complex(omega, params.tau_inv)
    # (i/pi) * 2 from folding [0, pi) onto [0, pi/2]
    return 2j / math.pi * (params.g0**2 - params.g1**2) ** 2 * w


def _bz_integral(params: ModelParams, omega: float, occupancy, quad: QuadratureSpec) -> QuadResult:
    g0, g1 = params.g0, params.g1
    w2 = complex(omega, params.tau_inv) ** 2

    def integrand(theta):
        e = upper_band(g0, g1, theta)
        return occupancy(e) / ((4.0 * e * e - w2) * e**3)

    res = gauss_kronrod(integrand, 0.0, HALF_PI, quad, _seed_points(g0, g1, omega, params.tau_inv))
    pref = _bz_prefactor(params, omega)
    return replace(res, value=pref * res.value, error=abs(pref) * res.error)


def sigma_interband_bz(params: ModelParams, omega: float, quad: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """Interband conductivity from the Brillouin-zone integral.

    Returns a ``QuadResult`` whose ``value`` is sigma / (2 sigma_0 a).
    """
    if params.g0 == params.g1:
        return QuadResult(0j, 0.0, True, 0, 0)
    _reject_real_pole(params, omega)
    beta = params.beta

    def occupancy(e):
        return fermi_dirac(e, beta) - fermi_dirac(-e, beta)

    return _bz_integral(params, omega, occupancy, quad)


def temperature_correction(params: ModelParams, omega: float, quad: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """sigma(beta) - sigma(beta = inf), integrated directly.

    The occupancy difference minus its zero-temperature value is 2 f(eps),
    which is exponentially small; integrating it directly keeps full relative
    accuracy where subtracting two conductivities would lose it entirely.
    """
    if params.g0 == params.g1 or params.zero_temperature:
        return QuadResult(0j, 0.0, True, 0, 0)
    _reject_real_pole(params, omega)
    beta = params.beta

    def occupancy(e):
        return 2.0 * fermi_dirac(e, beta)

    # relative accuracy only: the value itself may be far below any absolute floor
    return _bz_integral(params, omega, occupancy, replace(quad, abs_tol=0.0))


def contour_occupancy(eps1: float, eps3: float, r):
    """Occupancy difference -tanh(eps3 sqrt(eps1 + r) / 2) in dimensionless form."""
    if math.isinf(eps3):
        return -np.ones_like(np.asarray(r, dtype=float))
    return -np.tanh(0.5 * eps3 * np.sqrt(eps1 + r))


def integral_I_contour(eps: EpsilonTriple, quad: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """I(eps1, eps2, eps3) from its unit-circle representation.

    On z = exp(2i ka) the contour integral becomes (1/pi) times a real-line
    integral over ka in [0, pi) with r = (z + 1)^2 / z = 4 cos^2(ka).
    """
    eps1, eps2, eps3 = eps.eps1, eps.eps2, eps.eps3
    if eps1 == 0:
        raise DomainError("eps1 = 0: the integrand is not integrable at ka = pi/2")
    if eps2.imag == 0 and -4.0 <= eps2.real <= 0.0:
        raise PoleError(f"eps2 = {eps2} puts a pole of 1/(eps2 + r) on the unit circle")

    def integrand(theta):
        c = np.cos(theta)
        r = 4.0 * c * c
        return contour_occupancy(eps1, eps3, r) / ((eps1 + r) ** 1.5 * (eps2 + r))

    # resonance where r = -Re eps2, mirrored into (pi/2, pi)
    seeds = [HALF_PI]
    if 0.0 < -eps2.real < 4.0:
        t = math.acos(math.sqrt(-eps2.real / 4.0))
        seeds += [t, math.pi - t]
    res = gauss_kronrod(integrand, 0.0, math.pi, quad, seeds)
    return replace(res, value=res.value / math.pi, error=res.error / math.pi)


def sigma_from_I(params: ModelParams, omega: float, I_value: complex) -> complex:
    """Map the dimensionless integral I to sigma / (2 sigma_0 a)."""
    g0, g1 = params.g0, params.g1
    w = complex(omega, params.tau_inv)
    return 0.25j * w * (g0 * g0 - g1 * g1) ** 2 * (g0 * g1) ** -2.5 * complex(I_value)


def sigma_contour(params: ModelParams, omega: float, quad: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """Conductivity via the contour route; zero when the gap closes."""
    if params.g0 == params.g1:
        return QuadResult(0j, 0.0, True, 0, 0)
    _reject_real_pole(params, omega)
    res = integral_I_contour(epsilon_params(params, omega), quad)
    scale = abs(sigma_from_I(params, omega, 1.0))
    return replace(res, value=sigma_from_I(params, omega, res.value), error=scale * res.error)
