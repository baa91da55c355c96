"""Sign + log-magnitude representation for overflow-safe products and ratios.

The integrating factor exp(4*p**1.5/3) leaves double range near p ~ 66, so
everything built from it (antiderivatives, zero modes, deformed superpotentials)
is carried as a ``LogScaledValue`` until a final ratio of moderate size is
materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LogScaledValue:
    """A real number stored as sign * exp(log_magnitude).

    sign is -1, 0 or +1; log_magnitude is ignored (kept at -inf) when sign == 0.
    """

    sign: int
    log_magnitude: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign != 0 and not math.isfinite(self.log_magnitude):
            raise ValueError("log_magnitude must be finite for nonzero values")

    @classmethod
    def zero(cls):
        return cls(0, -math.inf)

    @classmethod
    def from_float(cls, x):
        x = float(x)
        if x == 0.0:
            return cls.zero()
        if not math.isfinite(x):
            raise ValueError(f"cannot log-scale non-finite value {x}")
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log_magnitude, sign=1):
        if sign == 0:
            return cls.zero()
        return cls(sign, float(log_magnitude))

    def to_float(self):
        """Materialize as a double; overflows to +/-inf, underflows to 0."""
        if self.sign == 0:
            return 0.0
        try:
            mag = math.exp(self.log_magnitude)
        except OverflowError:
            mag = math.inf
        return self.sign * mag

    def __mul__(self, other):
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return LogScaledValue.zero()
        return LogScaledValue(self.sign * other.sign,
                              self.log_magnitude + other.log_magnitude)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("log-scaled division by zero")
        if self.sign == 0:
            return LogScaledValue.zero()
        return LogScaledValue(self.sign * other.sign,
                              self.log_magnitude - other.log_magnitude)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return LogScaledValue(-self.sign, self.log_magnitude)

    def __add__(self, other):
        other = _coerce(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        la, lb = self.log_magnitude, other.log_magnitude
        if self.sign == other.sign:
            # log-sum-exp, same sign
            hi, lo = max(la, lb), min(la, lb)
            return LogScaledValue(self.sign, hi + math.log1p(math.exp(lo - hi)))
        if la == lb:
            return LogScaledValue.zero()
        # opposite signs: the larger magnitude wins
        if la > lb:
            sign, hi, lo = self.sign, la, lb
        else:
            sign, hi, lo = other.sign, lb, la
        return LogScaledValue(sign, hi + math.log1p(-math.exp(lo - hi)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def _key(self):
        # sortable key consistent with the represented real value
        if self.sign == 0:
            return (0, 0.0)
        return (self.sign, self.sign * self.log_magnitude)

    def __lt__(self, other):
        return self._key() < _coerce(other)._key()

    def __le__(self, other):
        return self._key() <= _coerce(other)._key()

    def __gt__(self, other):
        return self._key() > _coerce(other)._key()

    def __ge__(self, other):
        return self._key() >= _coerce(other)._key()


def _coerce(x):
    if isinstance(x, LogScaledValue):
        return x
    return LogScaledValue.from_float(x)
