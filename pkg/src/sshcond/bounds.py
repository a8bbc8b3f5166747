"""Size of the finite-temperature correction and regime diagnostics.

At low temperature sigma(beta) - sigma(inf) is bounded by

    c * (g0+g1)^2 tau / sqrt(g0 g1) * |omega + i/tau| / (2 sqrt(g0 g1 eps1))
      * R(2 tau sqrt(g0 g1 eps1)) * exp(-eps3 sqrt(eps1))

with R the saturating ramp ``check_R`` and c an unspecified O(1) constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import ModelParams, epsilon_params
from .oracle import temperature_correction
from .quadrature import QuadratureSpec

DEFAULT_EPS1_THRESHOLD = 1.0
DEFAULT_DECAY_THRESHOLD = 10.0


def check_R(xi: float) -> float:
    """2 xi / (xi^2 + 1) below 1, then 1; continuous with zero slope at xi = 1."""
    if not xi >= 0:
        raise DomainError(f"xi must be >= 0, got {xi}")
    if xi < 1.0:
        return 2.0 * xi / (xi * xi + 1.0)
    return 1.0


def correction_bound(params: ModelParams, omega: float, c: float = 1.0) -> float:
    """Upper estimate of |sigma(beta) - sigma(inf)| in units of 2 sigma_0 a (real omega)."""
    if not c > 0:
        raise DomainError(f"c must be > 0, got {c}")
    g0, g1 = params.g0, params.g1
    eps = epsilon_params(params, omega)
    if eps.eps1 == 0:
        return math.inf
    decay = math.exp(-eps.eps3 * math.sqrt(eps.eps1)) if math.isfinite(eps.eps3) else 0.0
    if decay == 0.0:
        return 0.0
    if params.tau_inv == 0:
        return math.inf
    tau = 1.0 / params.tau_inv
    gg = math.sqrt(g0 * g1)
    # sqrt(eps1 - eps2) has modulus |omega + i/tau| / (2 sqrt(g0 g1))
    detuning = abs(complex(omega, params.tau_inv)) / (2.0 * gg)
    ramp = check_R(2.0 * tau * gg * math.sqrt(eps.eps1))
    return c * (g0 + g1) ** 2 * tau / gg * detuning / math.sqrt(eps.eps1) * ramp * decay


@dataclass(frozen=True)
class RegimeReport:
    eps1: float
    eps3_sqrt_eps1: float
    bound_value: float
    regime_ok: bool
    notes: str

    def to_dict(self) -> dict:
        return {
            "eps1": self.eps1,
            "eps3_sqrt_eps1": self.eps3_sqrt_eps1,
            "bound_value": self.bound_value,
            "regime_ok": self.regime_ok,
            "notes": self.notes,
        }


def regime_diagnostics(
    params: ModelParams,
    eps1_threshold: float = DEFAULT_EPS1_THRESHOLD,
    decay_threshold: float = DEFAULT_DECAY_THRESHOLD,
) -> RegimeReport:
    """Check small gap (eps1 < threshold) and low temperature (eps3 sqrt(eps1) > threshold).

    ``bound_value`` is ``correction_bound`` with c = 1 at the small-gap
    resonance omega = 2 (g0 - g1).
    """
    eps = epsilon_params(params, params.gap)
    decay = eps.eps3 * math.sqrt(eps.eps1)
    notes = []
    if not eps.eps1 < eps1_threshold:
        notes.append(f"gap not small: eps1 = {eps.eps1:.4g} >= {eps1_threshold:g}")
    if not decay > decay_threshold:
        notes.append(f"temperature not low: eps3*sqrt(eps1) = {decay:.4g} <= {decay_threshold:g}")
    return RegimeReport(
        eps1=eps.eps1,
        eps3_sqrt_eps1=decay,
        bound_value=correction_bound(params, params.gap),
        regime_ok=not notes,
        notes="; ".join(notes) if notes else "within the low-temperature small-gap regime",
    )


@dataclass(frozen=True)
class Calibration:
    c: float
    max_ratio: float  # max measured / bound at c = 1


def calibrate_c(
    params: ModelParams,
    omegas,
    quad: QuadratureSpec = QuadratureSpec(),
    c0: float = 1.0,
) -> Calibration:
    """Smallest c = c0 * 2^k (k >= 0) for which the bound holds on the grid."""
    ratio = 0.0
    for w in omegas:
        measured = abs(temperature_correction(params, float(w), quad).value)
        bound = correction_bound(params, float(w), 1.0)
        if bound == 0.0:
            if measured > 0:
                ratio = math.inf
            continue
        ratio = max(ratio, measured / bound)
    c = c0
    while c < ratio:
        c *= 2.0
    return Calibration(c=c, max_ratio=ratio)


def fit_decay_rate(params: ModelParams, omega: float, eps3_values, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Least-squares slope of ln|sigma(beta) - sigma(inf)| against eps3 (beta = eps3 / sqrt(g0 g1))."""
    gg = math.sqrt(params.g0 * params.g1)
    e3 = np.asarray(list(eps3_values), dtype=float)
    logs = [math.log(abs(temperature_correction(params.with_beta(x / gg), omega, quad).value)) for x in e3]
    slope, _ = np.polyfit(e3, logs, 1)
    return float(slope)
