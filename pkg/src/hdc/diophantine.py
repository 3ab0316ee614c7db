"""Dimensions in which two intermediate skeleton centroids coincide.

Skeletons k1 = a^2 - 1 and k2 = b^2 - 1 (2 <= a < b) share a centroid in
dimension N = Q(a, b) = (b^2 + ab + a^2) - (b + a) - 1, and those are the
only coincidences.  This module enumerates the parametrized family and
checks it against an exhaustive exact scan.
"""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .centroids import _coefficient_parts, centroid_coefficient, coincident_pairs
from .exact import QuadraticNumber, quad_to_decimal, sqrt_canonical
from .errors import DomainError

__all__ = [
    "CoincidenceRow",
    "TheoremReport",
    "q_form",
    "enumerate_coincidences",
    "verify_theorem10",
    "no_triple",
    "largest_coincidence_group",
    "rows_to_csv",
    "rows_to_records",
    "CSV_HEADER",
]

CSV_HEADER = ["N", "k1", "k2", "a", "b", "coordinate_exact", "coordinate_decimal"]


@dataclass(frozen=True)
class CoincidenceRow:
    a: int
    b: int
    N: int
    k1: int
    k2: int
    coordinate: QuadraticNumber

    def record(self, digits: int = 10) -> dict:
        return {
            "N": self.N,
            "k1": self.k1,
            "k2": self.k2,
            "a": self.a,
            "b": self.b,
            "coordinate_exact": str(self.coordinate),
            "coordinate_decimal": quad_to_decimal(self.coordinate, digits),
        }


def q_form(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise DomainError("q_form needs positive integers")
    return (b * b + a * b + a * a) - (b + a) - 1


def enumerate_coincidences(n_max: int) -> list[CoincidenceRow]:
    """All rows with 2 <= a < b and N = q_form(a, b) <= n_max, sorted by (N, k1)."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max!r}")
    rows = []
    a = 2
    # q_form(a, a+1) is increasing in a
    while q_form(a, a + 1) <= n_max:
        b = a + 1
        while (n := q_form(a, b)) <= n_max:
            k1, k2 = a * a - 1, b * b - 1
            if 1 <= k1 < k2 <= n - 1:
                rows.append(CoincidenceRow(a, b, n, k1, k2, centroid_coefficient(n, k1)))
            b += 1
        a += 1
    rows.sort(key=lambda r: (r.N, r.k1))
    return rows


@dataclass
class TheoremReport:
    n_max: int
    rows: int = 0
    discrepancies: list[tuple[int, list, list]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.discrepancies


def verify_theorem10(n_max: int, workers: int = 1) -> TheoremReport:
    """Compare the exhaustive pair scan with the parametrized family, N <= n_max."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max!r}")
    expected = defaultdict(list)
    rows = enumerate_coincidences(n_max)
    for r in rows:
        expected[r.N].append((r.k1, r.k2))
    dims = range(2, n_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            found = list(pool.map(coincident_pairs, dims))
    else:
        found = [coincident_pairs(n) for n in dims]
    report = TheoremReport(n_max, rows=len(rows))
    for n, pairs in zip(dims, found):
        want = sorted(expected.get(n, []))
        if pairs != want:
            report.discrepancies.append((n, pairs, want))
    return report


def _squarefree_cores(limit):
    return [0] + [sqrt_canonical(m)[1] for m in range(1, limit + 1)]


def largest_coincidence_group(n: int, cores=None, floor: int = 1) -> int:
    """Size of the largest set of intermediate skeletons sharing a centroid.

    Fields with at most ``floor`` members are skipped, so the result is exact
    whenever it exceeds ``floor``.
    """
    if cores is None:
        cores = _squarefree_cores(n)
    # equal values must lie in the same field, so bucket by sqrt(k+1)'s core first
    buckets = defaultdict(list)
    for k in range(1, n):
        buckets[cores[k + 1]].append(k)
    largest = min(n - 1, 1)
    for ks in buckets.values():
        if len(ks) <= max(largest, floor):
            continue
        counts = defaultdict(int)
        for k in ks:
            counts[_coefficient_parts(n, k)] += 1
        largest = max(largest, max(counts.values()))
    return largest


def no_triple(n_max: int) -> bool:
    """True iff no N <= n_max has three intermediate skeletons with one centroid."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max!r}")
    cores = _squarefree_cores(n_max)
    return all(largest_coincidence_group(n, cores, floor=2) <= 2 for n in range(2, n_max + 1))


def rows_to_records(rows, digits: int = 10) -> list[dict]:
    return [r.record(digits) for r in rows]


def rows_to_csv(rows, digits: int = 10) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows_to_records(rows, digits))
    return buf.getvalue()


def rows_to_json(rows, digits: int = 10) -> str:
    return json.dumps(rows_to_records(rows, digits), indent=2) + "\n"
