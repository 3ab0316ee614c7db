"""Volumes and surface areas of Euclidean balls in high dimension.

Every quantity is returned as a :class:`~hdc.scaled.LogScaled` so decay
toward zero stays visible long after a plain float would underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import _dd
from .errors import DomainError
from .scaled import LogScaled, lgamma_half

__all__ = [
    "BallQuantity",
    "sphere_area",
    "ball_volume",
    "ball_volume_radius",
    "sphere_area_radius",
    "shell_fraction",
    "prop5_bound",
    "asymptotic_volume",
]

_LOG_PI = LogScaled.from_log(_dd.LNPI[0], log_lo=_dd.LNPI[1])
_LOG_2 = LogScaled.from_log(_dd.LN2[0], log_lo=_dd.LN2[1])


@dataclass(frozen=True)
class BallQuantity:
    dimension: int
    value: LogScaled
    radius: float = field(default=1.0)

    def __post_init__(self):
        if self.dimension < 1 or self.radius <= 0:
            raise DomainError("BallQuantity needs dimension >= 1 and radius > 0")


def _check_dim(n):
    if int(n) != n or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    return int(n)


def _check_radius(r):
    r = float(r)
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"radius must be positive and finite, got {r!r}")
    return r


def sphere_area(n: int) -> LogScaled:
    """Area of the unit sphere bounding the ball in R^n: 2 pi^(n/2) / Gamma(n/2)."""
    n = _check_dim(n)
    return _LOG_2 * _LOG_PI ** (n / 2) / lgamma_half(n)


def ball_volume(n: int) -> LogScaled:
    """Volume of the unit ball in R^n, i.e. ``sphere_area(n) / n``."""
    n = _check_dim(n)
    return sphere_area(n) / LogScaled.from_float(n)


def ball_volume_radius(n: int, radius: float) -> LogScaled:
    n = _check_dim(n)
    r = LogScaled.from_float(_check_radius(radius))
    return r ** n * ball_volume(n)


def sphere_area_radius(n: int, radius: float) -> LogScaled:
    n = _check_dim(n)
    r = LogScaled.from_float(_check_radius(radius))
    return r ** (n - 1) * sphere_area(n)


def shell_fraction(n: int, delta: float) -> float:
    """Fraction of the unit ball's volume within ``delta`` of the boundary.

    Returns 1 - (1 - delta)^n, correctly rounded: the power is taken in
    double-double arithmetic so small shells do not cancel to zero.
    """
    n = _check_dim(n)
    delta = float(delta)
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {delta!r}")
    base = _dd.two_sum(1.0, -delta)
    acc = (1.0, 0.0)
    e = n
    while e:
        if e & 1:
            acc = _dd.mul(acc, base)
        base = _dd.mul(base, base)
        e >>= 1
    rest = _dd.sub((1.0, 0.0), acc)
    return rest[0] + rest[1]


def prop5_bound(n: int) -> LogScaled:
    """Upper bound 2 * 20^(n/2) / n^((n+1)/2) on the unit-ball volume."""
    n = _check_dim(n)
    two = LogScaled.from_float(2.0)
    return two * LogScaled.from_float(20.0) ** (n / 2) / LogScaled.from_float(n) ** ((n + 1) / 2)


def asymptotic_volume(n: int) -> LogScaled:
    """The closing approximant (2 pi e / n)^(n/2) * n^(-1/2) * 2/sqrt(pi).

    Evaluated as printed; its constant is twice the leading Stirling one,
    so ``ball_volume(n) / asymptotic_volume(n)`` tends to 1/2.
    """
    n = _check_dim(n)
    ln_n = _dd.log(float(n))
    # log of 2 pi e / n
    base = _dd.sub(_dd.add(_dd.add(_dd.LN2, _dd.LNPI), (1.0, 0.0)), ln_n)
    logv = _dd.scale(base, n / 2)
    logv = _dd.sub(logv, _dd.scale(ln_n, 0.5))
    logv = _dd.add(logv, _dd.sub(_dd.LN2, _dd.scale(_dd.LNPI, 0.5)))
    return LogScaled.from_log(logv[0], 1, logv[1])
