"""Complex special functions: Gamma, Riemann and half-shifted Hurwitz zeta,
and two elementary reductions of the Gauss hypergeometric function.

Everything is scalar and uses principal branches (``cmath``).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import BranchCutError, DomainError, PoleError

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _log_gamma_right(z: complex) -> complex:
    # valid for Re z >= 1/2
    z = z - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_complex(z: complex) -> complex:
    """Gamma function for complex z; reflection is used for Re z < 1/2."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z.real:g}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * cmath.exp(_log_gamma_right(1.0 - z)))
    return cmath.exp(_log_gamma_right(z))


def rgamma_complex(z: complex) -> complex:
    """1/Gamma(z), zero at the poles of Gamma."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        return 0j
    return 1.0 / gamma_complex(z)


@lru_cache(maxsize=8)
def _borwein_coefficients(n: int) -> tuple[float, ...]:
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), in exact rational arithmetic
    terms = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(n * math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        terms.append(acc)
    dn = terms[-1]
    return tuple(float((terms[k] - dn) / dn) for k in range(n))


def _eta(s: complex) -> complex:
    """Dirichlet eta, sum (-1)^k (k+1)^{-s}, with Borwein's Chebyshev acceleration."""
    n = 40 + int(1.5 * abs(s.imag))
    coeffs = _borwein_coefficients(n)
    total = 0j
    for k, c in enumerate(coeffs):
        term = c * cmath.exp(-s * math.log(k + 1))
        total += -term if k % 2 == 0 else term
    return total


def zeta_complex(theta: complex) -> complex:
    """Riemann zeta for Re theta > 0 from the accelerated alternating series."""
    s = complex(theta)
    if not s.real > 0:
        raise DomainError(f"zeta_complex needs Re theta > 0, got {s}")
    if s == 1:
        raise PoleError("zeta has a simple pole at theta = 1")
    return _eta(s) / (1.0 - cmath.exp((1.0 - s) * math.log(2.0)))


def zeta_half(theta: complex) -> complex:
    """Hurwitz zeta at shift 1/2: sum_n (n + 1/2)^{-theta} = (2^theta - 1) zeta(theta).

    Simple pole at theta = 1 with residue 1.
    """
    s = complex(theta)
    if s == 1:
        raise PoleError("zeta(theta, 1/2) has a simple pole at theta = 1 (residue 1)")
    return (cmath.exp(s * math.log(2.0)) - 1.0) * zeta_complex(s)


def _gauss_series(a: float, b: float, c: float, z: complex, tol: float = 1e-17, max_terms: int = 5000) -> complex:
    term = 1.0 + 0j
    total = term
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if abs(term) <= tol * abs(total):
            return total
    raise ArithmeticError(f"hypergeometric series did not converge at z = {z}")


# Below this |z| the closed forms lose digits to cancellation; the Gauss
# series converges quickly there.
_SERIES_RADIUS = 0.1


def _check_cut(z: complex, name: str) -> None:
    if z.imag == 0 and z.real >= 1:
        raise BranchCutError(f"{name}: z = {z.real} lies on the branch cut [1, inf)")


def hyp2f1_threehalf_closed(z: complex) -> complex:
    """(3/z)(z^{-1/2} ln((1 + sqrt z)/sqrt(1 - z)) - 1), principal branches, z != 0."""
    z = complex(z)
    _check_cut(z, "2F1(3/2,1;5/2;z)")
    if z == 0:
        raise DomainError("closed form is 0/0 at z = 0; use hyp2f1_threehalf")
    sz = cmath.sqrt(z)
    return 3.0 / z * (cmath.log((1.0 + sz) / cmath.sqrt(1.0 - z)) / sz - 1.0)


def hyp2f1_threehalf(z: complex) -> complex:
    """2F1(3/2, 1; 5/2; z) on the plane cut along [1, inf)."""
    z = complex(z)
    _check_cut(z, "2F1(3/2,1;5/2;z)")
    if abs(z) < _SERIES_RADIUS:
        return _gauss_series(1.5, 1.0, 2.5, z)
    return hyp2f1_threehalf_closed(z)


def hyp2f1_onehalfth_closed(z: complex) -> complex:
    """(1 - z)^{-1/2} arcsin(sqrt z) / sqrt z, principal branches, z != 0."""
    z = complex(z)
    _check_cut(z, "2F1(1,1;3/2;z)")
    if z == 0:
        raise DomainError("closed form is 0/0 at z = 0; use hyp2f1_onehalfth")
    sz = cmath.sqrt(z)
    return cmath.asin(sz) / (sz * cmath.sqrt(1.0 - z))


def hyp2f1_onehalfth(z: complex) -> complex:
    """2F1(1, 1; 3/2; z) on the plane cut along [1, inf); branch point at z = 1."""
    z = complex(z)
    _check_cut(z, "2F1(1,1;3/2;z)")
    if abs(z) < _SERIES_RADIUS:
        return _gauss_series(1.0, 1.0, 1.5, z)
    return hyp2f1_onehalfth_closed(z)


def hyp2f1_half_closed(z: complex) -> complex:
    """2F1(1/2, 1; 3/2; z) = artanh(sqrt z) / sqrt z, principal branches, z != 0."""
    z = complex(z)
    _check_cut(z, "2F1(1/2,1;3/2;z)")
    if z == 0:
        raise DomainError("closed form is 0/0 at z = 0")
    sz = cmath.sqrt(z)
    return cmath.atanh(sz) / sz
