"""Dimerized tight-binding chain: parameters, bands, Bloch states and occupancy.

Energies are in units with hbar = 1.  The chain has two sites per cell of
length ``2a``; the Brillouin zone used throughout is ``0 <= k < pi/a``.

The offset between the two sublattice sites is fixed to ``a`` by a gauge
choice, so the dimerization parameter never enters any numerics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import expit

from .errors import DegeneracyError, DomainError, ParameterError

Sign = Literal[1, -1]

#: Inverse temperature meaning T = 0: the occupancy difference is exactly -1.
ZERO_TEMPERATURE = math.inf

# |F(k)| below this multiple of (g0 + g1) is treated as a band touching.
_DEGENERACY_RTOL = 1e-14


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs of the chain.

    ``beta = math.inf`` (``ZERO_TEMPERATURE``) selects T = 0.  The chemical
    potential is fixed at zero and exists only so that it can be recorded.
    """

    g0: float
    g1: float
    a: float = 0.5
    tau_inv: float = 0.05
    beta: float = ZERO_TEMPERATURE
    mu: float = 0.0

    def __post_init__(self) -> None:
        for name in ("g0", "g1", "a", "tau_inv", "beta", "mu"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParameterError(f"{name} must be a real number, got {value!r}")
            if math.isnan(value):
                raise ParameterError(f"{name} is NaN")
        if not (self.g0 >= self.g1 > 0):
            raise ParameterError(f"need g0 >= g1 > 0, got g0={self.g0}, g1={self.g1}")
        if not math.isfinite(self.g0):
            raise ParameterError("g0 must be finite")
        if not (0 < self.a < math.inf):
            raise ParameterError(f"need 0 < a < inf, got a={self.a}")
        if not (0 <= self.tau_inv < math.inf):
            raise ParameterError(f"need 0 <= tau_inv < inf, got {self.tau_inv}")
        if not self.beta > 0:
            raise ParameterError(f"need beta > 0, got {self.beta}")
        if self.mu != 0:
            raise ParameterError("only zero chemical potential is supported")

    @property
    def zero_temperature(self) -> bool:
        return math.isinf(self.beta)

    @property
    def gap(self) -> float:
        """Smallest direct band gap, 2(g0 - g1)."""
        return 2.0 * (self.g0 - self.g1)

    @property
    def bandwidth_edge(self) -> float:
        """Largest direct band gap, 2(g0 + g1)."""
        return 2.0 * (self.g0 + self.g1)

    def with_beta(self, beta: float) -> "ModelParams":
        return ModelParams(self.g0, self.g1, self.a, self.tau_inv, beta, self.mu)

    def to_dict(self) -> dict:
        return {
            "g0": self.g0,
            "g1": self.g1,
            "a": self.a,
            "tau_inv": self.tau_inv,
            "beta": "inf" if self.zero_temperature else self.beta,
            "mu": self.mu,
        }


@dataclass(frozen=True)
class EpsilonTriple:
    """Nondimensional gap, detuning and inverse-temperature parameters.

    ``eps3 = math.inf`` stands for zero temperature.
    """

    eps1: float
    eps2: complex
    eps3: float

    def __post_init__(self) -> None:
        if not (self.eps1 >= 0 and math.isfinite(self.eps1)):
            raise ParameterError(f"eps1 must be finite and >= 0, got {self.eps1}")
        if not self.eps3 > 0:
            raise ParameterError(f"eps3 must be > 0, got {self.eps3}")
        object.__setattr__(self, "eps2", complex(self.eps2))
        if not (math.isfinite(self.eps2.real) and math.isfinite(self.eps2.imag)):
            raise ParameterError(f"eps2 must be finite, got {self.eps2}")


@dataclass(frozen=True)
class BlochState:
    k: float
    band: int
    energy: float
    eigenvector: np.ndarray


def _check_k(params: ModelParams, k) -> None:
    kmax = math.pi / params.a
    arr = np.asarray(k, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr >= kmax):
        raise DomainError(f"k must lie in [0, pi/a) = [0, {kmax}); reduce it with reduce_k")


def _check_sign(s: int) -> None:
    if s not in (1, -1):
        raise DomainError(f"band sign must be +1 or -1, got {s!r}")


def reduce_k(params: ModelParams, k):
    """Map any real momentum into the Brillouin zone [0, pi/a)."""
    kmax = math.pi / params.a
    out = np.mod(np.asarray(k, dtype=float), kmax)
    # np.mod can return kmax itself for tiny negative inputs
    out = np.where(out >= kmax, 0.0, out)
    return float(out) if np.ndim(out) == 0 else out


def upper_band(g0: float, g1: float, ka):
    """eps_+(k) as a function of the dimensionless phase ka, no domain checks."""
    c = np.cos(ka)
    return np.sqrt((g0 - g1) ** 2 + 4.0 * g0 * g1 * c * c)


def band_energy(params: ModelParams, k, s: int = 1):
    """Band energy s * sqrt((g0-g1)^2 + 4 g0 g1 cos^2(ka)); vectorized in k."""
    _check_k(params, k)
    _check_sign(s)
    e = s * upper_band(params.g0, params.g1, np.asarray(k, dtype=float) * params.a)
    return float(e) if np.ndim(e) == 0 else e


def _offdiag(params: ModelParams, k: float) -> complex:
    ka = k * params.a
    return complex(np.exp(1j * ka) * (params.g0 + params.g1 * np.exp(-2j * ka)))


def bloch_hamiltonian(params: ModelParams, k: float) -> np.ndarray:
    """The 2x2 Bloch matrix -[[0, F], [conj F, 0]] at momentum k."""
    _check_k(params, k)
    f = _offdiag(params, k)
    return -np.array([[0.0, f], [f.conjugate(), 0.0]], dtype=complex)


def eigenvector(params: ModelParams, k: float, s: int) -> np.ndarray:
    """Unit eigenvector (1, -s e^{-i chi}) / sqrt(2), where e^{i chi} = F/|F|."""
    _check_k(params, k)
    _check_sign(s)
    f = _offdiag(params, k)
    mod = abs(f)
    if mod <= _DEGENERACY_RTOL * (params.g0 + params.g1):
        raise DegeneracyError(f"bands touch at k={k}: eigenvector undefined")
    phase = f.conjugate() / mod  # e^{-i chi}
    return np.array([1.0, -s * phase], dtype=complex) / math.sqrt(2.0)


def bloch_state(params: ModelParams, k: float, s: int) -> BlochState:
    return BlochState(k=k, band=s, energy=band_energy(params, k, s), eigenvector=eigenvector(params, k, s))


def velocity_matrix_element(params: ModelParams, k: float) -> complex:
    """Interband matrix element <+| dH/dk |-> = -i a (g0^2 - g1^2) / eps_+(k)."""
    _check_k(params, k)
    ep = upper_band(params.g0, params.g1, k * params.a)
    if ep <= _DEGENERACY_RTOL * (params.g0 + params.g1):
        raise DegeneracyError(f"eps_+ vanishes at k={k}: velocity matrix element undefined")
    return complex(0.0, -params.a * (params.g0**2 - params.g1**2) / ep)


def fermi_dirac(energy, beta: float):
    """Occupancy 1/(exp(beta*energy) + 1).

    Overflow-safe for any finite product; ``beta = inf`` gives the step
    function with value 1/2 at zero energy.
    """
    if not beta > 0:
        raise ParameterError(f"beta must be > 0, got {beta}")
    e = np.asarray(energy, dtype=float)
    if math.isinf(beta):
        out = np.where(e > 0, 0.0, np.where(e < 0, 1.0, 0.5))
    else:
        out = expit(-beta * e)
    return float(out) if np.ndim(out) == 0 else out


def occupation_difference(energy, beta: float):
    """f(eps) - f(-eps) for eps >= 0, i.e. -tanh(beta*eps/2), computed without cancellation."""
    e = np.asarray(energy, dtype=float)
    if math.isinf(beta):
        out = np.where(e > 0, -1.0, 0.0)
    else:
        out = -np.tanh(0.5 * beta * e)
    return float(out) if np.ndim(out) == 0 else out


def epsilon_params(params: ModelParams, omega: float) -> EpsilonTriple:
    """Nondimensional (eps1, eps2, eps3) at frequency omega."""
    g0, g1 = params.g0, params.g1
    gg = g0 * g1
    eps1 = (g0 - g1) ** 2 / gg
    w = complex(omega, params.tau_inv)
    eps2 = eps1 - w * w / (4.0 * gg)
    eps3 = params.beta * math.sqrt(gg)
    return EpsilonTriple(eps1, eps2, eps3)


def resonance_momenta(g0: float, g1: float, omega: float) -> list[float]:
    """Phases ka in [0, pi/2] where the transition energy 2 eps_+ equals |omega|."""
    c2 = (omega * omega / 4.0 - (g0 - g1) ** 2) / (4.0 * g0 * g1)
    if not (0.0 <= c2 <= 1.0):
        return []
    return [math.acos(math.sqrt(c2))]
