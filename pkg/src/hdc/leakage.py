"""The inner ball squeezed between the 2^N unit balls of a side-2 box.

The primary balls sit at the corners (+-1, ..., +-1); the central ball
touches each of them, so its radius is sqrt(N) - 1.  Once that exceeds 1 the
central ball pokes out through the faces of the box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _dd
from .ball import ball_volume
from .errors import DomainError
from .scaled import LogScaled

__all__ = [
    "LeakageReport",
    "inner_radius",
    "leakage_ratio",
    "leakage_report",
    "first_leak_dimension",
    "first_ratio_exceeding",
    "growth_envelope",
]

_MAX_SEARCH = 10_000_000


@dataclass(frozen=True)
class LeakageReport:
    dimension: int
    inner_radius: float
    ratio: LogScaled
    leaks: bool


def _check(n, lowest=2):
    if int(n) != n or n < lowest:
        raise DomainError(f"dimension must be an integer >= {lowest}, got {n!r}")
    return int(n)


def inner_radius(n: int) -> float:
    """sqrt(N) - 1, the simplified form of sqrt(N + 1 - 2 sqrt(N))."""
    n = _check(n)
    return math.sqrt(n) - 1.0


def _log_inner_radius(n):
    # ln(sqrt(n) - 1) = ln(n - 1) - ln(sqrt(n) + 1), no cancellation
    return _dd.sub(_dd.log(float(n - 1)), _dd.log(math.sqrt(n) + 1.0))


def leakage_ratio(n: int) -> LogScaled:
    """Volume of the inner ball over the box volume 2^N."""
    n = _check(n)
    r = _dd.scale(_log_inner_radius(n), float(n))
    r = _dd.sub(r, _dd.scale(_dd.LN2, float(n)))
    return LogScaled.from_log(r[0], 1, r[1]) * ball_volume(n)


def leakage_report(n: int) -> LeakageReport:
    r = inner_radius(n)
    return LeakageReport(n, r, leakage_ratio(n), r > 1.0)


def first_leak_dimension() -> int:
    n = 2
    while not inner_radius(n) > 1.0:
        n += 1
    return n


def first_ratio_exceeding(threshold: float) -> int:
    """Least N >= 2 with ``leakage_ratio(N) > threshold``."""
    if not threshold > 0:
        raise DomainError(f"threshold must be positive, got {threshold!r}")
    target = LogScaled.from_float(threshold)
    for n in range(2, _MAX_SEARCH):
        if leakage_ratio(n) > target:
            return n
    raise DomainError(f"no dimension below {_MAX_SEARCH} exceeds {threshold!r}")


def growth_envelope(n: int) -> LogScaled:
    """(pi e / 2)^(N/2) * N^(-1/2) * e^(1/2) / sqrt(pi), as printed."""
    n = _check(n, 3)
    base = _dd.sub(_dd.add(_dd.LNPI, (1.0, 0.0)), _dd.LN2)
    v = _dd.scale(base, n / 2)
    v = _dd.sub(v, _dd.scale(_dd.log(float(n)), 0.5))
    v = _dd.add(v, _dd.sub((0.5, 0.0), _dd.scale(_dd.LNPI, 0.5)))
    return LogScaled.from_log(v[0], 1, v[1])
