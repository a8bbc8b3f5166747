"""Three-dimensional Mellin transform of I(eps1, eps2, eps3).

    M(lam, nu, theta) = int int int I * eps1^-lam * eps2^-nu * eps3^-theta  d eps1 d eps2 d eps3

The transform factorizes into four one-dimensional integrals.
* ``tilde_I3_closed`` is the temperature integral over eps3 at fixed
  u = eps1 + r, where r = 4 cos^2(ka).
* ``tilde_I1_closed`` is the eps1 integral of a shifted power.
* ``tilde_I2_closed`` is the eps2 integral of the resonance denominator.
* ``xi_closed`` is the remaining unit-circle integral over z.

The eps3 integral scales as u^((theta-1)/2), because the occupancy depends
on eps3 only through eps3 * sqrt(u).  The eps1 integral is therefore taken
with exponent theta/2 - 2, which ``tilde_I1_closed`` receives as its
``theta`` argument shifted to (theta + 1)/2.

Every closed form comes with a numerical oracle (``numeric_*``) built on
scipy quadrature.  ``numeric_mellin_forward`` integrates the full triple
transform directly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, PoleError
from .quadrature import exp_sinh_nodes, tanh_sinh_nodes
from .specfun import gamma_complex, rgamma_complex, zeta_half

@dataclass(frozen=True)
class MellinPoint:
    lam: complex
    nu: complex
    theta: complex

    def __post_init__(self) -> None:
        for name in ("lam", "nu", "theta"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @property
    def shifted_theta(self) -> complex:
        """(theta + 1)/2, the exponent carried into the eps1 integral."""
        return 0.5 * (self.theta + 1.0)

    @property
    def sigma(self) -> complex:
        """Argument of the unit-circle factor: lam + nu - (theta + 1)/2."""
        return self.lam + self.nu - self.shifted_theta


def in_region_D(p: MellinPoint) -> bool:
    """Strip of absolute convergence of the triple transform.

    With (g1, g2, g3) = real parts of (lam, nu, theta):
    1 < g3 < 2,  g2 > 0,  g3/2 - 1 < g1 < 1,  g1 + g2 < g3/2 - 1/2.
    These also imply g2 < 1/2 and g1 > -1/2.
    """
    g1, g2, g3 = p.lam.real, p.nu.real, p.theta.real
    return 1.0 < g3 < 2.0 and g2 > 0.0 and 0.5 * g3 - 1.0 < g1 < 1.0 and g1 + g2 < 0.5 * g3 - 0.5


def _cpow(base: complex, expo: complex) -> complex:
    base = complex(base)
    if base == 0:
        raise DomainError("power of zero")
    return cmath.exp(expo * cmath.log(base))


def _check_not_negative_real(x: complex, name: str) -> None:
    x = complex(x)
    if x.imag == 0 and x.real <= 0:
        raise DomainError(f"{name} = {x.real} must lie off the closed negative real axis")


def tilde_I3_closed(theta: complex, u: complex) -> complex:
    """int_0^inf eps3^-theta * (-tanh(eps3 sqrt(u) / 2)) d eps3 for 1 < Re theta < 2."""
    theta = complex(theta)
    if theta == 1:
        raise PoleError("tilde_I3 has a simple pole at theta = 1")
    if not 1.0 < theta.real < 2.0:
        raise DomainError(f"need 1 < Re theta < 2, got {theta}")
    _check_not_negative_real(u, "u")
    return (
        -_cpow(2.0 * math.pi, 1.0 - theta)
        * _cpow(u, 0.5 * (theta - 1.0))
        * zeta_half(theta)
        / cmath.sin(0.5 * math.pi * theta)
    )


def tilde_I1_closed(lam: complex, theta: complex, r: complex) -> complex:
    """int_0^inf eps1^-lam (eps1 + r)^(theta - 5/2) d eps1 = r^(theta-lam-3/2) B-type Gamma ratio."""
    lam, theta = complex(lam), complex(theta)
    if not (lam.real < 1.0 and (theta - lam).real < 1.5):
        raise DomainError(f"eps1 integral diverges: need Re lam < 1 and Re(theta - lam) < 3/2, got lam={lam}, theta={theta}")
    _check_not_negative_real(r, "r")
    return (
        _cpow(r, theta - lam - 1.5)
        * gamma_complex(1.0 - lam)
        * gamma_complex(lam - theta + 1.5)
        * rgamma_complex(2.5 - theta)
    )


def tilde_I2_closed(nu: complex, r: complex) -> complex:
    """int_0^inf eps2^-nu / (eps2 + r) d eps2 = r^-nu Gamma(1-nu) Gamma(nu), 0 < Re nu < 1."""
    nu = complex(nu)
    if not 0.0 < nu.real < 1.0:
        raise DomainError(f"need 0 < Re nu < 1, got {nu}")
    _check_not_negative_real(r, "r")
    return _cpow(r, -nu) * gamma_complex(1.0 - nu) * gamma_complex(nu)


def xi_closed(sigma: complex) -> complex:
    """(1/2 pi i) contour integral of z^(sigma+1/2) (1+z)^(-2 sigma-3) over |z| = 1, Re sigma < -1.

    Evaluated as -(1/pi) cos(pi sigma) Gamma(sigma+3/2) Gamma(-2 sigma-2) / Gamma(-sigma-1/2)
    after the reflection cos(pi s) Gamma(s + 3/2) = -pi / Gamma(-s - 1/2), which
    removes the 0 * inf products at half-integer sigma (e.g. Xi(-3/2) = 1).
    """
    sigma = complex(sigma)
    if not sigma.real < -1.0:
        raise DomainError(f"need Re sigma < -1, got {sigma}")
    rg = rgamma_complex(-sigma - 0.5)
    return gamma_complex(-2.0 * sigma - 2.0) * rg * rg


def mellin_I_closed(p: MellinPoint) -> complex:
    """Closed form of the triple Mellin transform.

    -2^(-2 lam - 2 nu - 1) pi^(1/2 - theta) zeta(theta, 1/2) / sin(pi theta / 2)
      * Gamma(1-lam) Gamma(lam + 1 - theta/2) Gamma(1-nu) Gamma(nu) Gamma(theta/2 - lam - nu - 1/2)
      / (Gamma(theta/2 - lam - nu) Gamma(2 - theta/2))
    """
    lam, nu, th = p.lam, p.nu, p.theta
    if th == 1:
        raise PoleError("simple pole at theta = 1 (zeta factor)")
    factors = {
        "Gamma(1-lam)": 1.0 - lam,
        "Gamma(lam+1-theta/2)": lam + 1.0 - 0.5 * th,
        "Gamma(1-nu)": 1.0 - nu,
        "Gamma(nu)": nu,
        "Gamma(theta/2-lam-nu-1/2)": 0.5 * th - lam - nu - 0.5,
    }
    prod = 1.0 + 0j
    for name, z in factors.items():
        try:
            prod *= gamma_complex(z)
        except PoleError as exc:
            raise PoleError(f"{name} is at a pole") from exc
    s = cmath.sin(0.5 * math.pi * th)
    if s == 0:
        raise PoleError("sin(pi theta / 2) vanishes")
    pref = -_cpow(2.0, -2.0 * lam - 2.0 * nu - 1.0) * _cpow(math.pi, 0.5 - th) * zeta_half(th) / s
    return pref * prod * rgamma_complex(0.5 * th - lam - nu) * rgamma_complex(2.0 - 0.5 * th)


def mellin_assembled(p: MellinPoint) -> complex:
    """The transform rebuilt from the component closed forms at unit scale.

    -(2 pi)^(1-theta) zeta(theta,1/2)/sin(pi theta/2) * [tilde_I1 at r=1 with
    theta' = (theta+1)/2] * [tilde_I2 at r=1] * Xi(lam + nu - theta').
    """
    th1 = p.shifted_theta
    i3_unit = tilde_I3_closed(p.theta, 1.0)
    return i3_unit * tilde_I1_closed(p.lam, th1, 1.0) * tilde_I2_closed(p.nu, 1.0) * xi_closed(p.sigma)


def mellin_assembly_check(p: MellinPoint) -> float:
    """Relative deviation between ``mellin_I_closed`` and the component assembly."""
    if not in_region_D(p):
        raise DomainError(f"{p} is outside the convergence region")
    closed = mellin_I_closed(p)
    return abs(mellin_assembled(p) - closed) / abs(closed)


def residue_theta_one(lam: complex, nu: complex) -> complex:
    """Residue of the transform at theta = 1.

    -(1/pi) Gamma(1-lam) Gamma(lam+1/2) Gamma(1-nu) Gamma(nu) Gamma(-lam-nu) / (4^(lam+nu) Gamma(1/2-lam-nu));
    it is also the double Mellin transform of I(eps1, eps2, inf).
    """
    lam, nu = complex(lam), complex(nu)
    g = gamma_complex(1.0 - lam) * gamma_complex(lam + 0.5) * gamma_complex(1.0 - nu) * gamma_complex(nu)
    g *= gamma_complex(-lam - nu) * rgamma_complex(0.5 - lam - nu)
    return -g / (math.pi * _cpow(4.0, lam + nu))


# --- one-dimensional quadrature oracles -------------------------------------


def _quad_complex(f, a: float, b: float, **kw) -> complex:
    opts = dict(epsabs=0.0, epsrel=1e-12, limit=500)
    opts.update(kw)
    re = integrate.quad(lambda x: f(x).real, a, b, **opts)[0]
    im = integrate.quad(lambda x: f(x).imag, a, b, **opts)[0]
    return complex(re, im)


def _binom(p: complex, k: int) -> complex:
    out = 1.0 + 0j
    for j in range(k):
        out *= (p - j) / (j + 1)
    return out


def numeric_power_mellin(s: complex, p: complex, r: float, terms: int = 60) -> complex:
    """int_0^inf x^-s (x + r)^p dx for real r > 0 by quadrature.

    Binomial series handle [0, r/4] and [4r, inf); the middle is integrated
    in log variables.
    """
    s, p = complex(s), complex(p)
    if not r > 0:
        raise DomainError("oracle needs real r > 0")
    lo, hi = 0.25 * r, 4.0 * r
    head = sum(_binom(p, k) * r ** (p - k) * lo ** (k + 1 - s) / (k + 1 - s) for k in range(terms))
    tail = sum(_binom(p, k) * r**k * hi ** (p - s - k + 1) / (s + k - p - 1) for k in range(terms))

    def g(t):
        x = math.exp(t)
        return cmath.exp((1.0 - s) * t + p * cmath.log(x + r))

    return head + _quad_complex(g, math.log(lo), math.log(hi)) + tail


def numeric_tilde_I1(lam: complex, theta: complex, r: float) -> complex:
    return numeric_power_mellin(lam, complex(theta) - 2.5, r)


def numeric_tilde_I2(nu: complex, r: float) -> complex:
    return numeric_power_mellin(nu, -1.0, r)


# tanh(y) = sum_n c_n y^(2n-1) with c_n = 2^(2n) (2^(2n) - 1) B_(2n) / (2n)!
_TANH_COEFFS = (1.0, -1.0 / 3.0, 2.0 / 15.0, -17.0 / 315.0, 62.0 / 2835.0, -1382.0 / 155925.0)


def numeric_tilde_I3(theta: complex, u: float) -> complex:
    """int_0^inf eps^-theta (-tanh(eps sqrt(u)/2)) d eps for real u > 0.

    Taylor series of tanh near 0, quadrature in log variables in the middle
    and the exact power tail beyond the point where tanh = 1 to 1e-17.
    """
    theta = complex(theta)
    if not u > 0:
        raise DomainError("oracle needs real u > 0")
    a = 0.5 * math.sqrt(u)
    lo = 0.02 / a
    hi = 20.0 / a
    head = -sum(c * a ** (2 * n + 1) * lo ** (2 * n + 2 - theta) / (2 * n + 2 - theta) for n, c in enumerate(_TANH_COEFFS))
    tail = -(hi ** (1.0 - theta)) / (theta - 1.0)

    def g(t):
        return -cmath.exp((1.0 - theta) * t) * math.tanh(a * math.exp(t))

    return head + _quad_complex(g, math.log(lo), math.log(hi)) + tail


def numeric_xi(sigma: complex) -> complex:
    """(2/pi) int_0^(pi/2) (2 cos u)^(-2 sigma - 3) du, the unit-circle integral on |z| = 1.

    The endpoint u = pi/2 is integrated in the variable t = log(pi/2 - u).
    """
    sigma = complex(sigma)
    if not sigma.real < -1.0:
        raise DomainError(f"unit-circle integral diverges for Re sigma >= -1, got {sigma}")
    a = -2.0 * sigma - 3.0
    v0 = 0.25

    def body(u):
        return cmath.exp(a * math.log(2.0 * math.cos(u)))

    def end(t):
        # log(2 sin v) with v = e^t, written so that t -> -inf stays finite
        v = math.exp(t)
        log_sinc = math.log(math.sin(v) / v) if v > 1e-6 else -v * v / 6.0
        return cmath.exp(a * (math.log(2.0) + t + log_sinc) + t)

    return 2.0 / math.pi * (_quad_complex(body, 0.0, 0.5 * math.pi - v0) + _quad_complex(end, -math.inf, math.log(v0)))


def numeric_xi_real_axis(sigma: complex) -> complex:
    """Branch-cut form -(1/pi) sin(pi(sigma+1/2)) int_0^1 x^(sigma+1/2) (1-x)^(-2 sigma-3) dx.

    Converges only for -3/2 < Re sigma < -1.
    """
    sigma = complex(sigma)
    if not -1.5 < sigma.real < -1.0:
        raise DomainError("real-axis form needs -3/2 < Re sigma < -1")
    a, b = sigma + 0.5, -2.0 * sigma - 3.0
    # x = 1/(1 + e^-t) puts both endpoint singularities at infinity
    def g(t):
        lx = -math.log1p(math.exp(-t)) if t > -30 else t
        l1x = -math.log1p(math.exp(t)) if t < 30 else -t
        return cmath.exp((a + 1.0) * lx + (b + 1.0) * l1x)

    val = _quad_complex(g, -math.inf, 0.0) + _quad_complex(g, 0.0, math.inf)
    return -cmath.sin(math.pi * (sigma + 0.5)) / math.pi * val


# --- triple-quadrature forward oracle ---------------------------------------


@dataclass(frozen=True)
class SamplingPlan:
    """Double-exponential node layout for the forward transform.

    ``step`` is the node spacing in the DE variable on every axis; halving
    it roughly squares the error.  ``t_max`` bounds the DE variable.
    """

    step: float = 1.0 / 16.0
    t_max: float = 6.0


@dataclass(frozen=True)
class ForwardResult:
    value: complex
    error_estimate: float


def _forward_sum(p: MellinPoint, plan: SamplingPlan, zero_temperature: bool) -> complex:
    lam, nu, th = p.lam, p.nu, p.theta
    eps_nodes = exp_sinh_nodes(plan.step, plan.t_max)
    ls, ws = eps_nodes.log_x, eps_nodes.weights
    log1ps = np.logaddexp(0.0, ls)
    ka = tanh_sinh_nodes(0.5 * math.pi, plan.step, plan.t_max)
    # r = 4 cos^2(ka) = 4 sin^2(pi/2 - ka), kept in log form near ka = pi/2
    dist = np.exp(ka.log_dist_upper)
    logr = np.where(
        dist < 1e-3,
        math.log(4.0) + 2.0 * ka.log_dist_upper + np.log1p(-dist * dist / 3.0),
        np.log(4.0 * np.sin(dist) ** 2 + 1e-300),
    )
    # eps3 = s3 / sqrt(u) makes the occupancy -tanh(s3/2) independent of u, so the
    # eps3 sum splits off as c3 times u^((theta-1)/2); log tanh avoids under/overflow
    log_tanh = np.log(np.tanh(0.5 * np.exp(np.minimum(ls, 50.0))))
    c3 = -np.sum(ws * np.exp((1.0 - th) * ls + log_tanh))
    total = 0j
    for lr, lw in zip(logr, ka.log_weights):
        # eps2 = r s
        h = np.sum(ws * np.exp((1.0 - nu) * (lr + ls) - lr - log1ps))
        # eps1 = r s, u = eps1 + r
        lu = lr + log1ps
        if zero_temperature:
            g = -np.sum(ws * np.exp((1.0 - lam) * (lr + ls) - 1.5 * lu))
        else:
            g = c3 * np.sum(ws * np.exp((1.0 - lam) * (lr + ls) - 1.5 * lu - 0.5 * (1.0 - th) * lu))
        total += math.exp(lw) * h * g
    return 2.0 / math.pi * total


def numeric_mellin_forward(plan: SamplingPlan, p: MellinPoint) -> ForwardResult:
    """Triple transform of I by tensor-product double-exponential quadrature.

    The ka integral is folded onto [0, pi/2].  For every ka node the eps2 and
    eps1 nodes are scaled by r and the eps3 nodes by 1/sqrt(eps1 + r), so
    each axis is resolved at its own natural scale.  On these nodes the eps2
    and eps3 sums separate from the eps1 sum, so the cost is linear in the
    number of nodes per axis times the number of ka nodes.
    The error estimate is the change from doubling the step.
    """
    if not in_region_D(p):
        raise DomainError(f"{p} is outside the convergence region")
    fine = _forward_sum(p, plan, zero_temperature=False)
    coarse = _forward_sum(p, SamplingPlan(2.0 * plan.step, plan.t_max), zero_temperature=False)
    return ForwardResult(complex(fine), float(abs(fine - coarse)))


def numeric_mellin_zero_temperature(plan: SamplingPlan, lam: complex, nu: complex) -> ForwardResult:
    """Double transform over (eps1, eps2) of I(eps1, eps2, inf).

    Converges for -1/2 < Re lam, 0 < Re nu, Re(lam + nu) < 0.
    """
    lam, nu = complex(lam), complex(nu)
    if not (-0.5 < lam.real and 0 < nu.real and (lam + nu).real < 0):
        raise DomainError("double transform needs -1/2 < Re lam, 0 < Re nu, Re(lam + nu) < 0")
    p = MellinPoint(lam, nu, 1.5)
    fine = _forward_sum(p, plan, zero_temperature=True)
    coarse = _forward_sum(p, SamplingPlan(2.0 * plan.step, plan.t_max), zero_temperature=True)
    return ForwardResult(complex(fine), float(abs(fine - coarse)))
