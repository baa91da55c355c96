"""Gamma, upper incomplete gamma and the exponential integral E_q.

All routines target positive real arguments.  The incomplete gamma uses the
classic regime split (lower series below a+1, continued fraction above) and the
exponential integral is evaluated through the rescaling
E_q(z) = z**(q-1) * Gamma(1-q, z), with a dedicated small-z series for q = 1.
"""

from __future__ import annotations

import math

_EULER_GAMMA = 0.5772156649015328606

# Lanczos rational approximation, g = 7, 9 terms.  Relative error below 1e-13
# for positive argument; coefficients validated against the quadrature oracle
# in the test suite.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
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

_MAX_ITER = 10_000
_EPS = 1e-16


class SpecFunError(ValueError):
    """Domain or convergence failure in a special-function evaluation."""


def gamma_fn(a):
    """Gamma(a) for a > 0."""
    a = float(a)
    if a <= 0:
        raise SpecFunError(f"gamma_fn requires a > 0, got {a}")
    return math.exp(log_gamma(a))


def log_gamma(a):
    """Natural log of Gamma(a) for a > 0, via the Lanczos sum."""
    a = float(a)
    if a <= 0:
        raise SpecFunError(f"log_gamma requires a > 0, got {a}")
    x = a - 1.0
    s = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        s += _LANCZOS_COEFFS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (x + 0.5) * math.log(t) - t + math.log(s)


def upper_gamma(a, x):
    """Upper incomplete gamma Gamma(a, x) for a > 0, x >= 0."""
    a = float(a)
    x = float(x)
    if a <= 0:
        raise SpecFunError(f"upper_gamma requires a > 0, got a={a}")
    if x < 0:
        raise SpecFunError(f"upper_gamma requires x >= 0, got x={x}")
    if x == 0.0:
        return gamma_fn(a)
    if x < a + 1.0:
        # Gamma(a) - lower series
        return gamma_fn(a) * (1.0 - _lower_regularized_series(a, x))
    return _upper_cf(a, x)


def _lower_regularized_series(a, x):
    """P(a, x) by the standard power series, for x < a + 1."""
    term = 1.0 / a
    total = term
    n = a
    for _ in range(_MAX_ITER):
        n += 1.0
        term *= x / n
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + a * math.log(x) - log_gamma(a))
    raise SpecFunError(f"incomplete-gamma series failed to converge (a={a}, x={x})")


def _upper_cf(a, x):
    """Gamma(a, x) by the Lentz continued fraction, valid for x >= a + 1.

    Also valid at a = 0 (used for E_1).
    """
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + a * math.log(x)) * h
    raise SpecFunError(f"incomplete-gamma continued fraction stalled (a={a}, x={x})")


def _e1_series(z):
    # E_1(z) = -gamma - ln z + sum (-1)^(k+1) z^k / (k k!), for small z
    total = -_EULER_GAMMA - math.log(z)
    term = 1.0
    for k in range(1, _MAX_ITER):
        term *= -z / k
        contrib = -term / k
        total += contrib
        if abs(contrib) < abs(total) * _EPS + _EPS:
            return total
    raise SpecFunError(f"E_1 series failed to converge (z={z})")


def expint_E(q, z):
    """Exponential integral E_q(z) = integral_1^inf exp(-z t) t^(-q) dt.

    Requires q in (0, 1] and z > 0.  Negative argument would need analytic
    continuation and is rejected.
    """
    q = float(q)
    z = float(z)
    if not 0.0 < q <= 1.0:
        raise SpecFunError(f"expint_E requires q in (0, 1], got q={q}")
    if z <= 0:
        raise SpecFunError(f"expint_E requires z > 0, got z={z}")
    if q == 1.0:
        return _e1_series(z) if z < 1.0 else _upper_cf(0.0, z)
    return z ** (q - 1.0) * upper_gamma(1.0 - q, z)
