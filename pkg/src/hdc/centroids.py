"""Centroids of the k-skeletons of the standard simplex conv(0, e_1, ..., e_N).

By permutation symmetry every skeleton centroid is ``c * (1, ..., 1)``, so a
centroid is represented by its common coordinate ``c``, an exact
:class:`~hdc.exact.QuadraticNumber` in Q(sqrt(k + 1)).
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ResourceLimitError
from .exact import QuadraticNumber, quad_to_decimal, sqrt_canonical

__all__ = [
    "CentroidRecord",
    "centroid_coefficient",
    "centroid_record",
    "coincident_pairs",
    "face_volume",
    "gram_volume",
    "skeleton_centroid_oracle",
    "skeleton_centroid_vector",
    "triangle_centroids",
    "TriangleCentroids",
    "ORACLE_MAX_N",
]

ORACLE_MAX_N = 16


@dataclass(frozen=True)
class CentroidRecord:
    dimension: int
    skeleton: int
    coefficient: QuadraticNumber
    approx: str


def _check(n, k):
    if int(n) != n or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    if int(k) != k or not 0 <= k <= n:
        raise DomainError(f"skeleton dimension must lie in 0..{n}, got {k!r}")
    return int(n), int(k)


def _ratio(num, den):
    g = math.gcd(num, den)
    if den < 0:
        g = -g
    return num // g, den // g


def _coefficient_parts(n, k):
    """Canonical ``((p_num, p_den), (q_num, q_den), d)`` in lowest terms."""
    m = n - k
    t, d = sqrt_canonical(k + 1)
    if d == 1:
        return _ratio(k + m * t, n * (k + 1 + m * t)), (0, 1), 1
    # s^2 = k+1 is not a perfect square here, so k + 1 - m^2 != 0
    g = k + 1 - m * m
    p = _ratio(k - m * m, n * g)
    if m == 0:
        return p, (0, 1), 1
    return p, _ratio(m * t, n * (k + 1) * g), d


def centroid_coefficient(n: int, k: int) -> QuadraticNumber:
    """Common coordinate of the k-skeleton centroid in dimension ``n``.

    (1/n) (k + m s) / ((k+1) + m s) with m = n - k and s = sqrt(k+1),
    rationalized by multiplying through with (k+1) - m s.
    """
    n, k = _check(n, k)
    p, q, d = _coefficient_parts(n, k)
    if d == 1:
        return QuadraticNumber(Fraction(*p))
    return QuadraticNumber(Fraction(*p), Fraction(*q), d)


def centroid_record(n: int, k: int, digits: int = 10) -> CentroidRecord:
    c = centroid_coefficient(n, k)
    return CentroidRecord(n, k, c, quad_to_decimal(c, digits))


def coincident_pairs(n: int) -> list[tuple[int, int]]:
    """All (k1, k2), 1 <= k1 < k2 <= n-1, whose skeleton centroids coincide."""
    if int(n) != n or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n!r}")
    groups = defaultdict(list)
    for k in range(1, n):
        groups[centroid_coefficient(n, k)].append(k)
    pairs = []
    for ks in groups.values():
        pairs.extend(itertools.combinations(ks, 2))
    return sorted(pairs)


def face_volume(k: int, contains_origin: bool) -> QuadraticNumber:
    """k-volume of a k-face: 1/k! at the origin corner, sqrt(k+1)/k! otherwise."""
    if contains_origin:
        return QuadraticNumber(Fraction(1, math.factorial(k)))
    return QuadraticNumber.make(0, Fraction(1, math.factorial(k)), k + 1)


@functools.lru_cache(maxsize=None)
def _det(rows: tuple[tuple[int, ...], ...]) -> int:
    # Bareiss fraction-free elimination
    a = [list(r) for r in rows]
    size = len(a)
    sign, prev = 1, 1
    for i in range(size - 1):
        if a[i][i] == 0:
            for r in range(i + 1, size):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[-1][-1] if size else 1


def gram_volume(vertices) -> tuple[Fraction, int]:
    """k-volume of the simplex spanned by integer ``vertices`` (k+1 of them).

    Returned as ``(coef, d)`` meaning coef * sqrt(d), d square-free.
    """
    base = vertices[0]
    edges = [[x - y for x, y in zip(v, base)] for v in vertices[1:]]
    k = len(edges)
    gram = tuple(tuple(sum(x * y for x, y in zip(u, v)) for v in edges) for u in edges)
    det = _det(gram)
    if det <= 0:
        raise DomainError("degenerate face")
    t, d = sqrt_canonical(det)
    return Fraction(t, math.factorial(k)), d


def _unit(n, j):
    return tuple(1 if i == j else 0 for i in range(1, n + 1))


def skeleton_centroid_vector(n: int, k: int) -> list[QuadraticNumber]:
    """Centroid of the k-skeleton by brute-force enumeration of its k-faces.

    Every face's k-volume comes from its Gram determinant and every face's
    centroid from its vertex average; nothing here uses the closed form.
    """
    n, k = _check(n, k)
    if n > ORACLE_MAX_N:
        raise ResourceLimitError(
            f"face enumeration is limited to n <= {ORACLE_MAX_N} (C(n+1, k+1) faces)"
        )
    points = [tuple([0] * n)] + [_unit(n, j) for j in range(1, n + 1)]
    # accumulators keyed by radicand: total mass and per-coordinate moments
    mass = defaultdict(Fraction)
    moment = defaultdict(lambda: [Fraction(0)] * n)
    for face in itertools.combinations(range(n + 1), k + 1):
        coef, d = gram_volume([points[i] for i in face])
        mass[d] += coef
        row = moment[d]
        for i in face:
            if i:
                row[i - 1] += coef
    total = sum((QuadraticNumber.make(0, c, d) if d > 1 else QuadraticNumber(c))
                for d, c in mass.items())
    coords = []
    for i in range(n):
        num = sum((QuadraticNumber.make(0, row[i], d) if d > 1 else QuadraticNumber(row[i]))
                  for d, row in moment.items())
        coords.append(num / (total * (k + 1)))
    return coords


def skeleton_centroid_oracle(n: int, k: int) -> QuadraticNumber:
    """Average coordinate of the enumerated k-skeleton centroid."""
    coords = skeleton_centroid_vector(n, k)
    return sum(coords, QuadraticNumber(Fraction(0))) / len(coords)


class TriangleCentroids(NamedTuple):
    vertex: np.ndarray
    edge: np.ndarray
    solid: np.ndarray


def triangle_centroids(v1, v2, v3) -> TriangleCentroids:
    """Vertex, perimeter and area centroids of a planar triangle."""
    pts = np.array([v1, v2, v3], dtype=float)
    if pts.shape != (3, 2):
        raise DomainError("expected three points in the plane")
    a, b, c = pts
    cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    scale = max(np.ptp(pts[:, 0]), np.ptp(pts[:, 1]))
    if scale == 0 or abs(cross) <= 1e-12 * scale * scale:
        raise DomainError("degenerate triangle: the points are collinear")

    vertex = pts.mean(axis=0)

    nxt = np.roll(pts, -1, axis=0)
    lengths = np.hypot(*(nxt - pts).T)
    midpoints = (pts + nxt) / 2
    edge = (lengths[:, None] * midpoints).sum(axis=0) / lengths.sum()

    # shoelace area centroid
    w = pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]
    area6 = 3.0 * w.sum()
    solid = ((pts + nxt) * w[:, None]).sum(axis=0) / area6
    return TriangleCentroids(vertex, edge, solid)
