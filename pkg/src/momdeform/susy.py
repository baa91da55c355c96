"""Closed-form machinery for the one-parameter deformations of the
momentum-space partner pair V = p -/+ 1/(2 sqrt(p)).

The particular superpotential is sqrt(p); the one-parameter families come from
the general Riccati solutions

    W_1g = sqrt(p) + mu1 / (g - I1(p)),   W_2g = sqrt(p) + mu2 / (g + I2(p)),

with integrating factors mu1 = exp(4 p^1.5 / 3), mu2 = 1/mu1 and their
antiderivatives I1, I2 from 0.  Family 1 deforms V1 through W_2g; family 2
deforms V2 through W_1g.  Everything touching mu1 runs in log space because it
overflows doubles near p ~ 66.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import quadrature
from .logscale import LogScaledValue

_DEN_GUARD = 1e-14
_ASYMPTOTIC_SWITCH = 30.0
_QUAD_TOL = 1e-12

_LOCK = threading.Lock()
_CACHE = {}


class SingularityError(ArithmeticError):
    """A deformed quantity was evaluated on top of a denominator zero."""


class NonNormalizableError(ValueError):
    """Requested a normalized mode that has no finite norm."""


class Family(enum.Enum):
    FAMILY1 = 1
    FAMILY2 = 2


class GammaStatus(enum.Enum):
    VALID = "valid"
    SINGULAR_POTENTIAL = "singular_potential"
    NON_NORMALIZABLE = "non_normalizable"
    INVALID = "invalid"


class PotentialKind(enum.Enum):
    V1 = 1
    V2 = 2


class SuperpotentialKind(enum.Enum):
    PARTICULAR = "particular"
    GENERAL1 = "general1"
    GENERAL2 = "general2"


@dataclass(frozen=True)
class DeformationParameter:
    family: Family
    gamma: float
    status: GammaStatus


@dataclass(frozen=True)
class Superpotential:
    kind: SuperpotentialKind
    gamma: float | None = None

    def __post_init__(self):
        if self.kind is SuperpotentialKind.PARTICULAR:
            if self.gamma is not None:
                raise ValueError("particular superpotential carries no gamma")
        elif self.gamma is None:
            raise ValueError(f"{self.kind.value} requires gamma")


@dataclass(frozen=True)
class ZeroMode:
    family: Family
    gamma: float | None = None  # None = undeformed
    normalized: bool = False


@dataclass
class GridFunction:
    """Samples of a function on a strictly increasing momentum grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.shape != self.values.shape or self.grid.ndim != 1:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")

    @property
    def step(self):
        h = np.diff(self.grid)
        if not np.allclose(h, h[0], rtol=1e-9, atol=0):
            raise ValueError("grid is not uniform")
        return float(h[0])


def _exponent(p):
    return 4.0 * np.asarray(p, dtype=float) ** 1.5 / 3.0


def w0(p):
    """Particular superpotential sqrt(p)."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise ValueError("w0 requires p >= 0")
    out = np.sqrt(p)
    return float(out) if out.ndim == 0 else out


def mu(index, p):
    """Integrating factor mu1 or mu2 at p, in log-scaled form."""
    if index not in (1, 2):
        raise ValueError("index must be 1 or 2")
    p = float(p)
    if p < 0:
        raise ValueError("mu requires p >= 0")
    sign_exp = 1.0 if index == 1 else -1.0
    return LogScaledValue.from_log(sign_exp * float(_exponent(p)))


def potential(kind, p):
    """Partner potentials: V1 = p - 1/(2 sqrt p), V2 = p + 1/(2 sqrt p)."""
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0):
        raise ValueError("partner potentials diverge at p <= 0")
    half = 0.5 / np.sqrt(p)
    if kind is PotentialKind.V1:
        out = p - half
    elif kind is PotentialKind.V2:
        out = p + half
    else:
        raise ValueError(f"unknown potential kind {kind!r}")
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# antiderivatives of the integrating factors


@lru_cache(maxsize=None)
def _gamma2_scalar(p):
    return quadrature.integrate(lambda t: np.exp(-_exponent(t)), 0.0, p, _QUAD_TOL)


def _gamma2_array(ps):
    uniq, inverse = np.unique(ps, return_inverse=True)
    grid = uniq if uniq[0] == 0.0 else np.concatenate([[0.0], uniq])
    cum = quadrature.cumulative(lambda t: np.exp(-_exponent(t)), grid, _QUAD_TOL)
    vals = cum.values if uniq[0] == 0.0 else cum.values[1:]
    return vals[inverse].reshape(ps.shape)


def gamma2(p):
    """Antiderivative of mu2 from 0: strictly increasing, bounded."""
    arr = np.asarray(p, dtype=float)
    if np.any(arr < 0):
        raise ValueError("gamma2 requires p >= 0")
    if arr.ndim == 0:
        return _gamma2_scalar(float(arr))
    return _gamma2_array(arr)


def gamma2_inf():
    """Limit of gamma2 at infinity, computed once by semi-infinite quadrature.

    Closed form: Gamma(2/3) / 6**(1/3) ~ 0.74520.
    """
    with _LOCK:
        if "gamma2_inf" not in _CACHE:
            _CACHE["gamma2_inf"] = quadrature.integrate_semiinfinite(
                lambda t: np.exp(-_exponent(t)), 0.0, _QUAD_TOL)
        return _CACHE["gamma2_inf"]


# Asymptotic series for the mu1 antiderivative, from repeated integration by
# parts of integral exp(4 t^1.5 / 3) dt: I1(p) ~ mu1(p) * h(p) with
# h = 1/(2 sqrt p) + 1/(8 p^2) + 1/(8 p^3.5) + 7/(32 p^5) + ...
# The two regimes agree to better than 1e-10 relative at the switch point.
def _gamma1_asymptotic_log(p):
    p = np.asarray(p, dtype=float)
    h = (0.5 * p**-0.5 + 0.125 * p**-2.0 + 0.125 * p**-3.5
         + (7.0 / 32.0) * p**-5.0 + (35.0 / 64.0) * p**-6.5
         + (455.0 / 256.0) * p**-8.0)
    return _exponent(p) + np.log(h)


@lru_cache(maxsize=None)
def _log_gamma1_scalar(p):
    if p == 0.0:
        return -math.inf
    if p > _ASYMPTOTIC_SWITCH:
        return float(_gamma1_asymptotic_log(p))
    val = quadrature.integrate(lambda t: np.exp(_exponent(t)), 0.0, p,
                               _QUAD_TOL, rtol=1e-12)
    return math.log(val)


def _log_gamma1_array(ps):
    out = np.empty_like(ps)
    near = ps <= _ASYMPTOTIC_SWITCH
    if np.any(near):
        uniq, inverse = np.unique(ps[near], return_inverse=True)
        grid = uniq if uniq[0] == 0.0 else np.concatenate([[0.0], uniq])
        cum = quadrature.cumulative(lambda t: np.exp(_exponent(t)), grid,
                                    _QUAD_TOL, rtol=1e-12)
        vals = cum.values if uniq[0] == 0.0 else cum.values[1:]
        with np.errstate(divide="ignore"):
            out[near] = np.log(vals)[inverse]
    far = ~near
    if np.any(far):
        out[far] = _gamma1_asymptotic_log(ps[far])
    return out


def log_gamma1(p):
    """Natural log of the mu1 antiderivative from 0 (-inf at p = 0)."""
    arr = np.asarray(p, dtype=float)
    if np.any(arr < 0):
        raise ValueError("gamma1 requires p >= 0")
    if arr.ndim == 0:
        return _log_gamma1_scalar(float(arr))
    return _log_gamma1_array(arr)


def gamma1(p):
    """Antiderivative of mu1 from 0, in log-scaled form (it grows like mu1)."""
    lg = log_gamma1(float(p))
    if lg == -math.inf:
        return LogScaledValue.zero()
    return LogScaledValue.from_log(lg)


# ---------------------------------------------------------------------------
# deformed quantities


def _ratio_family1(gamma, p):
    den = gamma + gamma2(p)
    if np.any(np.abs(den) < _DEN_GUARD):
        raise SingularityError(
            f"denominator gamma + gamma2(p) vanishes (gamma={gamma})")
    return np.exp(-_exponent(p)) / den


def _log_abs_den_family2(gamma, p):
    """(sign, log|gamma - I1(p)|) elementwise."""
    lg1 = log_gamma1(p)
    lg1 = np.asarray(lg1, dtype=float)
    if gamma == 0.0:
        return -np.ones_like(lg1), lg1
    lgam = math.log(abs(gamma))
    if gamma < 0.0:
        return -np.ones_like(lg1), np.logaddexp(lgam, lg1)
    sign = np.where(lgam >= lg1, 1.0, -1.0)
    hi = np.maximum(lgam, lg1)
    lo = np.minimum(lgam, lg1)
    with np.errstate(divide="ignore", invalid="ignore"):
        logden = hi + np.log1p(-np.exp(lo - hi))
    return sign, logden


def _ratio_family2(gamma, p):
    p = np.asarray(p, dtype=float)
    sign, logden = _log_abs_den_family2(gamma, p)
    if np.any(logden < math.log(_DEN_GUARD)) or np.any(~np.isfinite(logden)):
        raise SingularityError(
            f"denominator gamma - gamma1(p) vanishes (gamma={gamma})")
    return sign * np.exp(_exponent(p) - logden)


def _deformation_ratio(family, gamma, p):
    if family is Family.FAMILY1:
        return _ratio_family1(gamma, p)
    if family is Family.FAMILY2:
        return _ratio_family2(gamma, p)
    raise ValueError(f"unknown family {family!r}")


def w_deformed(family, gamma, p):
    """General Riccati solution W_2g (family 1) or W_1g (family 2)."""
    arr = np.asarray(p, dtype=float)
    if np.any(arr < 0):
        raise ValueError("w_deformed requires p >= 0")
    out = np.sqrt(arr) + _deformation_ratio(family, float(gamma), arr)
    return float(out) if np.ndim(out) == 0 else out


def potential_deformed(family, gamma, p):
    """Deformed potential V_1g or V_2g via the analytically expanded form.

    Both families share V_def = V + 4 sqrt(p) r + 2 r**2 where r is the
    deformation term of the corresponding superpotential; this is the
    expansion of V - 2 (d/dp)^2 ln|denominator|.
    """
    arr = np.asarray(p, dtype=float)
    if np.any(arr <= 0):
        raise ValueError("deformed potentials diverge at p <= 0")
    base = potential(PotentialKind.V1 if family is Family.FAMILY1
                     else PotentialKind.V2, arr)
    r = _deformation_ratio(family, float(gamma), arr)
    out = base + 4.0 * np.sqrt(arr) * r + 2.0 * r**2
    return float(out) if np.ndim(out) == 0 else out


def delta_potential(family, gamma, p):
    """Deformation V_def - V of the corresponding partner potential."""
    arr = np.asarray(p, dtype=float)
    if np.any(arr <= 0):
        raise ValueError("delta_potential requires p > 0")
    r = _deformation_ratio(family, float(gamma), arr)
    out = 4.0 * np.sqrt(arr) * r + 2.0 * r**2
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# validity classification


def validate_gamma(family, gamma):
    """Classify a deformation parameter against the singularity and
    normalizability intervals."""
    gamma = float(gamma)
    if not math.isfinite(gamma):
        status = GammaStatus.INVALID
    elif family is Family.FAMILY1:
        if -gamma2_inf() <= gamma <= 0.0:
            status = GammaStatus.SINGULAR_POTENTIAL
        elif -1.0 <= gamma <= 0.0:
            status = GammaStatus.NON_NORMALIZABLE
        else:
            status = GammaStatus.VALID
    elif family is Family.FAMILY2:
        status = GammaStatus.SINGULAR_POTENTIAL if gamma >= 0.0 else GammaStatus.VALID
    else:
        raise ValueError(f"unknown family {family!r}")
    return DeformationParameter(family=family, gamma=gamma, status=status)


# ---------------------------------------------------------------------------
# zero modes


def _family2_norm_constant(gamma):
    """1 / sqrt(integral_0^inf mu1 / (gamma - I1)**2 dp), computed numerically."""
    with _LOCK:
        cached = _CACHE.get(("f2norm", gamma))
    if cached is not None:
        return cached

    def integrand(p):
        p = np.asarray(p, dtype=float)
        _, logden = _log_abs_den_family2(gamma, p)
        return np.exp(_exponent(p) - 2.0 * logden)

    norm2 = quadrature.integrate_semiinfinite(integrand, 0.0, 1e-10)
    const = 1.0 / math.sqrt(norm2)
    with _LOCK:
        _CACHE[("f2norm", gamma)] = const
    return const


def zeromode(mode, p):
    """Evaluate a (possibly deformed, possibly normalized) zero mode at p."""
    arr = np.asarray(p, dtype=float)
    if np.any(arr < 0):
        raise ValueError("zeromode requires p >= 0")
    half_exp = 0.5 * _exponent(arr)

    if mode.gamma is None:
        if mode.family is Family.FAMILY1:
            out = np.exp(-half_exp)
            if mode.normalized:
                out = out / math.sqrt(gamma2_inf())
        else:
            if mode.normalized:
                raise NonNormalizableError(
                    "the undeformed mode exp(2 p^1.5 / 3) has no finite norm")
            out = np.exp(half_exp)
        return float(out) if np.ndim(out) == 0 else out

    gamma = float(mode.gamma)
    if mode.normalized:
        status = validate_gamma(mode.family, gamma).status
        if status is GammaStatus.NON_NORMALIZABLE or (
                mode.family is Family.FAMILY1 and -1.0 <= gamma <= 0.0):
            raise NonNormalizableError(
                f"family-1 deformed modes are not normalizable for gamma in "
                f"[-1, 0] (gamma={gamma})")
        if status is not GammaStatus.VALID:
            raise SingularityError(
                f"gamma={gamma} produces a singular deformed potential "
                f"({status.value})")

    if mode.family is Family.FAMILY1:
        den = gamma + gamma2(arr)
        if np.any(np.abs(den) < _DEN_GUARD):
            raise SingularityError(f"gamma + gamma2(p) vanishes (gamma={gamma})")
        out = np.exp(-half_exp) / den
        if mode.normalized:
            out = out * math.sqrt(gamma * (gamma + gamma2_inf()) / gamma2_inf())
    else:
        sign, logden = _log_abs_den_family2(gamma, arr)
        if np.any(~np.isfinite(logden)) or np.any(logden < math.log(_DEN_GUARD)):
            raise SingularityError(f"gamma - gamma1(p) vanishes (gamma={gamma})")
        out = sign * np.exp(half_exp - logden)
        if mode.normalized:
            out = out * _family2_norm_constant(gamma)
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# asymptotic diagnostics


def bending_critical_p(gamma, p_max=60.0, scan_step=1e-4):
    """Largest zero of W_1g on (0, p_max], or None.

    For negative gamma the superpotential starts at 1/gamma, follows the
    +sqrt(p) branch, then bends onto -sqrt(p); the bend shows up as a final
    sign change located here by a scan plus bisection.
    """
    gamma = float(gamma)
    if gamma >= 0:
        raise ValueError("bending analysis requires gamma < 0")
    n = int(round(p_max / scan_step))
    grid = np.linspace(scan_step, p_max, n)
    w = w_deformed(Family.FAMILY2, gamma, grid)
    sign_change = np.nonzero(np.signbit(w[:-1]) != np.signbit(w[1:]))[0]
    if sign_change.size == 0:
        return None
    k = int(sign_change[-1])
    lo, hi = grid[k], grid[k + 1]
    flo = w[k]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = w_deformed(Family.FAMILY2, gamma, mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    return 0.5 * (lo + hi)
