"""The trigonometric kernel integral

    Q(mu, n, gamma; beta) = int_{-pi/2}^{pi/2} |cos(beta - (n+1) phi)|**gamma cos(phi)**mu dphi

with its closed forms for even ``mu = 2m``, the reduced cosine series of
``g_{m,n}`` and the maximisation in ``beta``.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import specfun
from ._search import grid_golden_max
from .quadrature import QuadratureConfig, integrate_panels, kink_points

__all__ = [
    "QSpec",
    "RegimeError",
    "regime",
    "q_integral",
    "q_numeric",
    "q_closed",
    "g_reduced",
    "g_raw",
    "q_maximize",
]

HALF_PI = 0.5 * math.pi


class RegimeError(ValueError):
    """Parameters outside the hypotheses of the closed form."""


@dataclass(frozen=True)
class QSpec:
    m: int
    n: int
    gamma: float
    beta: float = 0.0

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be non-negative integers")
        if not self.gamma > -1:
            raise ValueError(f"gamma must exceed -1, got {self.gamma}")

    @property
    def mu(self):
        return 2 * self.m

    @property
    def regime(self):
        return regime(self.m, self.n, self.gamma)


def regime(m, n, gamma):
    """'low' (m <= n), 'high' (m >= n+1 and gamma admissible) or 'outside'."""
    if m <= n:
        return "low"
    if gamma > 2 * (m // (n + 1)) - 2:
        return "high"
    return "outside"


def _grade_for(exponent):
    """Grading power that turns an end behaviour x**e into at least x**2."""
    if exponent >= 0 and float(exponent).is_integer():
        return 1
    return int(min(64, max(1, math.ceil(3.0 / (exponent + 1.0)))))


def q_integral(mu, n, gamma, beta, cfg=None):
    """Quadrature of Q for real ``mu > -1`` and ``gamma > -1``.

    The integral is folded onto x = pi/2 - |phi| in (0, pi/2] so that
    cos(phi) = sin(x) stays accurate near the end points, then split at the
    kinks of the inner cosine. Returns a :class:`QuadratureResult`.
    """
    if not (mu > -1 and gamma > -1):
        raise ValueError("integrability needs mu > -1 and gamma > -1")
    w = n + 1
    c_plus = beta - w * HALF_PI    # phi =  pi/2 - x  ->  cos(c_plus + w x)
    c_minus = beta + w * HALF_PI   # phi = -pi/2 + x  ->  cos(c_minus - w x)

    def folded(x):
        s = np.sin(x)
        ends = s**mu if mu != 0 else 1.0
        a = np.abs(np.cos(c_plus + w * x))
        b = np.abs(np.cos(c_minus - w * x))
        if gamma != 1:
            a = a**gamma
            b = b**gamma
        return (a + b) * ends

    kinks = {HALF_PI - abs(p) for p in kink_points(beta, n)}
    grade = max(_grade_for(mu), _grade_for(gamma))
    return integrate_panels(folded, 0.0, HALF_PI, sorted(kinks), cfg, grade=grade)


def q_numeric(spec, cfg=None):
    """Q(2m, n, gamma; beta) by panel quadrature."""
    return q_integral(2 * spec.m, spec.n, spec.gamma, spec.beta, cfg).value


def q_closed(m, n, gamma):
    """Closed form of Q(2m, n, gamma; 0).

    For m <= n the kernel does not depend on beta; for m >= n+1 the value at
    beta = 0 is the maximum, provided gamma > 2 floor(m/(n+1)) - 2.
    """
    m, n = int(m), int(n)
    if m < 0 or n < 0:
        raise RegimeError("m and n must be non-negative")
    if not gamma > -1:
        raise RegimeError(f"gamma > -1 is required, got {gamma}")
    base = specfun.double_factorial_ratio(m) * specfun.beta_fn((gamma + 1) / 2, 0.5)
    if m <= n:
        return base
    top = m // (n + 1)
    if not gamma > 2 * top - 2:
        raise RegimeError(
            f"m >= n+1 needs gamma > 2*floor(m/(n+1)) - 2 = {2 * top - 2}, got {gamma}"
        )
    terms = []
    for j in range(1, top + 1):
        # C(2m, k) / 2**(2m) in floating point without overflow
        k = m - j * (n + 1)
        if m <= 500:
            c = math.comb(2 * m, k) / 2.0 ** (2 * m)
        else:
            c = math.exp(
                math.lgamma(2 * m + 1) - math.lgamma(k + 1) - math.lgamma(2 * m - k + 1)
                - 2 * m * math.log(2.0)
            )
        terms.append(c / specfun.beta_fn(gamma / 2 + j + 1, gamma / 2 - j + 1))
    coeff = math.pi * 2.0 ** (1.0 - gamma) / (gamma + 1)
    return base + coeff * math.fsum(terms)


def g_reduced(m, n, theta):
    """sum_{j=0}^{n} cos^{2m}((theta + j pi)/(n+1)) via its reduced cosine series."""
    m, n = int(m), int(n)
    theta = np.asarray(theta, dtype=float)
    out = (n + 1) * specfun.double_factorial_ratio(m) + 0.0 * theta
    if m == 0:
        return out if out.ndim else float(out)
    for s in range(1, m // (n + 1) + 1):
        c = math.comb(2 * m, m - s * (n + 1)) / 2.0 ** (2 * m - 1)
        out = out + (n + 1) * c * np.cos(2 * s * theta)
    return out if out.ndim else float(out)


def g_raw(m, n, theta):
    """Term-by-term evaluation of the same sum, used as a cross-check."""
    theta = np.asarray(theta, dtype=float)
    j = np.arange(n + 1).reshape((-1,) + (1,) * theta.ndim)
    out = np.sum(np.cos((theta + j * math.pi) / (n + 1)) ** (2 * m), axis=0)
    return out if out.ndim else float(out)


def q_maximize(m, n, gamma, cfg=None, points=128):
    """Maximise Q(2m, n, gamma; beta) over beta in [0, pi/2].

    Evenness and pi-periodicity in beta make this interval sufficient.
    Returns ``(beta_star, value)``; flat objectives report beta_star = 0.
    """
    if points < 128:
        raise ValueError("at least 128 grid points are required")

    def f(beta):
        return q_integral(2 * m, n, gamma, beta, cfg).value

    beta_star, value, _, _ = grid_golden_max(f, 0.0, HALF_PI, points=points)
    return beta_star, value
