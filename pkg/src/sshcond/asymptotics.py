"""Zero-temperature asymptotics of the dimensionless integral I(eps1, eps2).

The approximation is the sum of three pole contributions:

* ``I_term0`` is the leading small-gap term,
* ``I_term1`` is its first correction,
* ``I_term2`` carries the large-gap resonance at eps2 = -4.

``I_zero_temperature_compact`` is the condensed two-line form that drops
terms of relative order eps1 away from resonances.  ``sigma_resonance_limit``
gives the one-term behaviour right at the small-gap resonance.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Literal

from .errors import BranchCutError, DomainError, RegimeWarning
from .model import ModelParams, epsilon_params
from .oracle import sigma_from_I
from .specfun import hyp2f1_onehalfth, hyp2f1_threehalf

Regime = Literal["gap_dominated", "damping_dominated"]

# "much less than" used for the regime checks of the resonance limits
_MUCH_LESS = 0.1


@dataclass(frozen=True)
class AsymptoticTerms:
    i0: complex
    i1: complex
    i2: complex
    total: complex = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "total", self.i0 + self.i1 + self.i2)


def _check_args(eps1: float, eps2: complex) -> complex:
    if not eps1 > 0:
        raise DomainError(f"eps1 must be > 0, got {eps1}")
    eps2 = complex(eps2)
    if eps2 == 0:
        raise DomainError("eps2 must be nonzero")
    return eps2


def I_term0(eps1: float, eps2: complex) -> complex:
    """Leading small-gap term -(1/(pi eps1 eps2)) [1 - (eps1/(3 eps2)) F(1 - eps1/eps2)]."""
    eps2 = _check_args(eps1, eps2)
    q = eps1 / eps2
    return -1.0 / (math.pi * eps1 * eps2) * (1.0 - q / 3.0 * hyp2f1_threehalf(1.0 - q))


def I_term1(eps1: float, eps2: complex) -> complex:
    """First small-gap correction -(1/(24 pi eps2)) F(1 - eps1/eps2)."""
    eps2 = _check_args(eps1, eps2)
    return -hyp2f1_threehalf(1.0 - eps1 / eps2) / (24.0 * math.pi * eps2)


def I_term2(eps2: complex) -> complex:
    """Large-gap term, singular as eps2 -> -4 (where -4/eps2 hits the branch point 1)."""
    eps2 = complex(eps2)
    if eps2 == 0:
        raise DomainError("eps2 must be nonzero")
    z = -4.0 / eps2
    if z == 1:
        raise BranchCutError("eps2 = -4 is the large-gap branch point")
    x = 8.0 / eps2
    return (
        (x - 1.0) * cmath.log(16.0 / eps2) + 1.0 - x * x * hyp2f1_onehalfth(z)
    ) / (16.0 * math.pi * eps2)


def I_zero_temperature(eps1: float, eps2: complex) -> AsymptoticTerms:
    """Asymptotic I at T = 0 for small eps1, as the sum of the three pole terms."""
    return AsymptoticTerms(I_term0(eps1, eps2), I_term1(eps1, eps2), I_term2(eps2))


def I_zero_temperature_compact(eps1: float, eps2: complex) -> complex:
    """Condensed form of the asymptotics written with elementary functions.

    Equals ``I_term0`` plus the part of ``I_term2`` that survives for small
    eps1; ``I_term1`` and the -ln(16/eps2) piece of ``I_term2`` are dropped.
    """
    eps2 = _check_args(eps1, eps2)
    q = eps1 / eps2
    p = eps2 / eps1
    log_term = cmath.log(cmath.sqrt(p) + cmath.sqrt(p - 1.0))
    small = -1.0 / (math.pi * eps1 * eps2) / (1.0 - q) * (1.0 - q / cmath.sqrt(1.0 - q) * log_term)
    z = -4.0 / eps2
    if z == 1:
        raise BranchCutError("eps2 = -4 is the large-gap branch point")
    s = cmath.sqrt(z)
    x = 8.0 / eps2
    large = -(
        -1.0 + x * x * cmath.asin(s) / s / cmath.sqrt(1.0 + 4.0 / eps2) - x * cmath.log(16.0 / eps2)
    ) / (16.0 * math.pi * eps2)
    return small + large


def sigma_asymptotic(params: ModelParams, omega: float) -> complex:
    """sigma / (2 sigma_0 a) from the zero-temperature asymptotics; zero when the gap closes."""
    if params.g0 == params.g1:
        return 0j
    eps = epsilon_params(params, omega)
    return sigma_from_I(params, omega, I_zero_temperature(eps.eps1, eps.eps2).total)


def sigma_resonance_limit(params: ModelParams, omega: float, regime: Regime) -> complex:
    """One-term conductivity at the small-gap resonance, in units of 2 sigma_0 a.

    ``gap_dominated`` (|eps2| << eps1 << 1): leading behaviour of the asymptotic
    formula, -(i/2) (g0+g1)^2 / sqrt(g0 g1) / sqrt(4 (g0-g1)^2 - omega^2 - 2i omega/tau).

    ``damping_dominated`` (eps1 << |eps2| << 1):
    (1/pi) (g0+g1)^2 / sqrt(g0 g1) / sqrt(tau^-2 - 2i omega/tau).

    Both are written in the reduced radicals valid near omega = 2(g0 - g1).
    A ``RegimeWarning`` is emitted when the parameters are outside the
    regime; the value is still returned.
    """
    g0, g1 = params.g0, params.g1
    pref = (g0 + g1) ** 2 / math.sqrt(g0 * g1)
    eps = epsilon_params(params, omega)
    e1, e2 = eps.eps1, abs(eps.eps2)
    if regime not in ("gap_dominated", "damping_dominated"):
        raise ValueError(f"unknown regime {regime!r}")
    if g0 == g1:
        warnings.warn("gapless chain: falling back to the damping-dominated form", RegimeWarning, stacklevel=2)
        regime = "damping_dominated"
    elif regime == "gap_dominated" and not (e2 < _MUCH_LESS * e1 and e1 < _MUCH_LESS):
        warnings.warn(f"gap-dominated limit used with eps1={e1:.3g}, |eps2|={e2:.3g}", RegimeWarning, stacklevel=2)
    elif regime == "damping_dominated" and not (e1 < _MUCH_LESS * e2 and e2 < _MUCH_LESS):
        warnings.warn(f"damping-dominated limit used with eps1={e1:.3g}, |eps2|={e2:.3g}", RegimeWarning, stacklevel=2)
    t = params.tau_inv
    if regime == "gap_dominated":
        radicand = complex(4.0 * (g0 - g1) ** 2 - omega * omega, -2.0 * omega * t)
        return -0.5j * pref / cmath.sqrt(radicand)
    radicand = complex(t * t, -2.0 * omega * t)
    return pref / (math.pi * cmath.sqrt(radicand))
