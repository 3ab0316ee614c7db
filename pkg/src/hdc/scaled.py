"""Sign/log-magnitude scalars and half-integer gamma values.

Ball volumes, sphere areas and the leakage ratio span hundreds of orders of
magnitude once the dimension reaches the thousands, so they are carried as
``LogScaled`` values: a sign in {-1, 0, +1} and the natural log of the
magnitude, stored as a double-double ``(log_mag, log_lo)``.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _dd
from .errors import DomainError, RangeWarning

__all__ = [
    "LogScaled",
    "ls_mul",
    "ls_div",
    "ls_pow",
    "ls_compare",
    "lgamma_half",
    "stirling_gamma",
]

_LOG10 = (2.302585092994046, -2.1707562233822494e-16)


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class LogScaled:
    """A real number stored as ``sign * exp(log_mag + log_lo)``.

    ``log_mag`` and ``log_lo`` are ignored when ``sign == 0``.
    """

    sign: int
    log_mag: float = 0.0
    log_lo: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if self.sign and not math.isfinite(self.log_mag):
            raise DomainError("log magnitude must be finite for a nonzero value")

    # construction

    @classmethod
    def zero(cls) -> LogScaled:
        return cls(0)

    @classmethod
    def from_log(cls, log_mag: float, sign: int = 1, log_lo: float = 0.0) -> LogScaled:
        if sign == 0:
            return cls(0)
        hi, lo = _dd.two_sum(float(log_mag), float(log_lo))
        return cls(sign, hi, lo)

    @classmethod
    def _from_dd(cls, sign: int, x) -> LogScaled:
        if sign == 0:
            return cls(0)
        return cls(sign, x[0], x[1])

    @classmethod
    def from_float(cls, x: float) -> LogScaled:
        x = float(x)
        if not math.isfinite(x):
            raise DomainError(f"cannot represent {x!r} in log domain")
        if x == 0.0:
            return cls(0)
        sign = 1 if x > 0 else -1
        return cls._from_dd(sign, _dd.log(abs(x)))

    # views

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def log(self) -> float:
        """Natural log of the magnitude (``-inf`` for zero)."""
        if self.sign == 0:
            return -math.inf
        return self.log_mag + self.log_lo

    def log10(self) -> float:
        if self.sign == 0:
            return -math.inf
        hi, lo = _dd.mul((self.log_mag, self.log_lo), (1.0 / _LOG10[0], 0.0))
        # one Newton correction against the double-double ln(10)
        resid = _dd.sub((self.log_mag, self.log_lo), _dd.mul((hi, lo), _LOG10))
        return hi + (lo + resid[0] / _LOG10[0])

    @property
    def underflows(self) -> bool:
        """True when the value is nonzero but rounds to 0.0 as a float."""
        return self.sign != 0 and _dd.exp((self.log_mag, self.log_lo)) == 0.0

    @property
    def overflows(self) -> bool:
        return self.sign != 0 and math.isinf(_dd.exp((self.log_mag, self.log_lo)))

    def to_float(self) -> float:
        """Convert to a plain float.

        Out-of-range magnitudes saturate to ``0.0`` or ``inf`` and emit a
        :class:`RangeWarning` instead of failing silently.
        """
        if self.sign == 0:
            return 0.0
        mag = _dd.exp((self.log_mag, self.log_lo))
        if mag == 0.0:
            warnings.warn(f"log-domain value exp({self.log():.6g}) underflows", RangeWarning, stacklevel=2)
        elif math.isinf(mag):
            warnings.warn(f"log-domain value exp({self.log():.6g}) overflows", RangeWarning, stacklevel=2)
        return self.sign * mag

    def __float__(self) -> float:
        return self.to_float()

    def sci(self, digits: int = 10) -> str:
        """Scientific notation with ``digits`` significant digits, any magnitude."""
        if self.sign == 0:
            return f"{0.0:.{digits - 1}e}"
        l10 = self.log10()
        exponent = math.floor(l10)
        mantissa = 10.0 ** (l10 - exponent)
        text = f"{mantissa:.{digits - 1}f}"
        if text.startswith("10"):
            exponent += 1
            text = f"{mantissa / 10:.{digits - 1}f}"
        sign = "-" if self.sign < 0 else ""
        return f"{sign}{text}e{exponent:+03d}"

    def isclose(self, other: LogScaled, rel_tol: float = 1e-12) -> bool:
        if self.sign != other.sign:
            return False
        if self.sign == 0:
            return True
        return abs(math.expm1(self._diff(other))) <= rel_tol

    def _diff(self, other: LogScaled) -> float:
        d = _dd.sub((self.log_mag, self.log_lo), (other.log_mag, other.log_lo))
        return d[0] + d[1]

    # arithmetic

    def __mul__(self, other):
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(other)
        if self.sign == 0 or other.sign == 0:
            return LogScaled(0)
        s = _dd.add((self.log_mag, self.log_lo), (other.log_mag, other.log_lo))
        return LogScaled._from_dd(self.sign * other.sign, s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(other)
        if other.sign == 0:
            raise DomainError("division by a zero log-domain value")
        if self.sign == 0:
            return LogScaled(0)
        s = _dd.sub((self.log_mag, self.log_lo), (other.log_mag, other.log_lo))
        return LogScaled._from_dd(self.sign * other.sign, s)

    def __rtruediv__(self, other):
        return LogScaled.from_float(other) / self

    def __pow__(self, e):
        e = float(e)
        if self.sign == 0:
            if e > 0:
                return LogScaled(0)
            raise DomainError("zero raised to a non-positive power")
        sign = 1
        if self.sign < 0:
            if not e.is_integer():
                raise DomainError("negative base with non-integer exponent")
            sign = -1 if int(e) % 2 else 1
        return LogScaled._from_dd(sign, _dd.scale((self.log_mag, self.log_lo), e))

    def __neg__(self):
        return LogScaled(-self.sign, self.log_mag, self.log_lo)

    def __abs__(self):
        return LogScaled(abs(self.sign), self.log_mag, self.log_lo)

    # ordering

    def _key(self):
        if self.sign == 0:
            return (0, 0.0)
        return (self.sign, self.sign * self.log())

    def _cmp(self, other: LogScaled) -> int:
        if self.sign != other.sign:
            return (self.sign > other.sign) - (self.sign < other.sign)
        if self.sign == 0:
            return 0
        d = _dd.sub((self.log_mag, self.log_lo), (other.log_mag, other.log_lo))
        c = (d[0] > 0) - (d[0] < 0) or (d[1] > 0) - (d[1] < 0)
        return c * self.sign

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = LogScaled.from_float(other)
        if not isinstance(other, LogScaled):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if isinstance(other, (int, float)):
            other = LogScaled.from_float(other)
        if not isinstance(other, LogScaled):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        if self.sign == 0:
            return hash(0)
        return hash((self.sign, self.log_mag, self.log_lo))

    def __repr__(self):
        if self.sign == 0:
            return "LogScaled(0)"
        return f"LogScaled({self.sci(12)}, log={self.log():.17g})"


def ls_mul(x: LogScaled, y: LogScaled) -> LogScaled:
    return x * y


def ls_div(x: LogScaled, y: LogScaled) -> LogScaled:
    return x / y


def ls_pow(x: LogScaled, e: float) -> LogScaled:
    return x ** e


def ls_compare(x: LogScaled, y: LogScaled) -> int:
    """Three-way comparison: -1, 0 or 1."""
    return x._cmp(y)


def _ln_factors(values: np.ndarray) -> list[np.ndarray]:
    """Logs of exact integers as (hi, lo) arrays; lo is the Sterbenz-exact residual."""
    hi = np.log(values)
    y = np.exp(hi)
    return [hi, (values - y) / y]


@functools.lru_cache(maxsize=4096)
def lgamma_half(n: int) -> LogScaled:
    """Gamma(n/2) for a positive integer ``n``, by the exact recurrence.

    Even n: Gamma(m) = (m-1)!.  Odd n: Gamma(n/2) = sqrt(pi) * prod (2i-1)/2.
    The log factors are summed exactly with ``math.fsum``.
    """
    if int(n) != n or n <= 0:
        raise DomainError(f"lgamma_half needs a positive integer, got {n!r}")
    n = int(n)
    if n % 2 == 0:
        factors = np.arange(2, n // 2, dtype=float)
        extra = []
    else:
        count = (n - 1) // 2
        factors = np.arange(3, 2 * count, 2, dtype=float)
        extra = [*_dd.scale(_dd.LN2, -float(count)), *_dd.scale(_dd.LNPI, 0.5)]
    terms = np.concatenate(_ln_factors(factors)).tolist() + extra
    if not terms:
        return LogScaled.from_log(0.0)
    hi = math.fsum(terms)
    terms.append(-hi)
    lo = math.fsum(terms)
    return LogScaled.from_log(hi, 1, lo)


def stirling_gamma(x: float) -> LogScaled:
    """The approximation Gamma(x) ~ (x-1)^(x-1) e^-(x-1) sqrt(2 pi (x-1)).

    This is the plain leading-order formula with no correction terms.
    """
    if not x > 1:
        raise DomainError(f"stirling_gamma needs x > 1, got {x!r}")
    t = float(x) - 1.0
    lt = _dd.log(t)
    body = _dd.sub(_dd.scale(lt, t), (t, 0.0))
    half = _dd.scale(_dd.add(_dd.add(_dd.LN2, _dd.LNPI), lt), 0.5)
    return LogScaled._from_dd(1, _dd.add(body, half))
