"""Quadrature and seeded Monte Carlo checks of the closed forms.

Random numbers come from numpy's counter-based Philox generator keyed by
``(seed, stream, block)``.  Samples are processed in fixed blocks of
``BLOCK`` indices and block sums are combined with ``math.fsum``, so an
estimate depends only on ``(seed, samples)``, never on ``workers``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from .centroids import face_volume
from .errors import DomainError, ResourceLimitError
from .leakage import inner_radius

__all__ = [
    "McEstimate",
    "BLOCK",
    "gaussian_norm_check",
    "mc_ball_volume",
    "mc_shell_fraction",
    "mc_leak_fraction",
    "mc_skeleton_centroid",
    "sample_radii",
    "bernoulli_lower_bound",
]

BLOCK = 1 << 16
STRATA = 64
HALF_WIDTH = 3.0
QUAD_NODES = 64

# stream tags keep different estimators on disjoint counter ranges
_GAUSS, _BALL, _SHELL, _LEAK, _SKELETON, _RADII = range(1, 7)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int

    def interval(self, z: float = 3.0) -> tuple[float, float]:
        return self.mean - z * self.std_error, self.mean + z * self.std_error

    def agrees_with(self, reference: float, z: float = 3.0) -> bool:
        if self.std_error == 0.0:
            return math.isclose(self.mean, reference, rel_tol=1e-12, abs_tol=1e-15)
        return abs(self.mean - reference) <= z * self.std_error

    def to_dict(self) -> dict:
        return asdict(self)


def _check_seed(seed):
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return seed


def _check_samples(samples):
    samples = int(samples)
    if samples < 1:
        raise DomainError(f"sample budget must be positive, got {samples!r}")
    return samples


def _generator(seed, stream, block):
    key = np.array([seed, (stream << 48) | block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _run(samples, seed, stream, kernel, workers=1):
    """Apply ``kernel(rng, start, count)`` per block and fsum the returned sums."""
    blocks = [(b, b * BLOCK, min(BLOCK, samples - b * BLOCK))
              for b in range(-(-samples // BLOCK))]

    def job(block):
        b, start, count = block
        return np.asarray(kernel(_generator(seed, stream, b), start, count), dtype=float)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(job, blocks))
    else:
        parts = [job(blk) for blk in blocks]
    table = np.vstack(parts)
    return np.array([math.fsum(col) for col in table.T])


def _bernoulli(hits, samples, seed, scale=1.0):
    p = float(hits) / samples
    se = math.sqrt(max(p * (1.0 - p), 0.0) / samples)
    return McEstimate(scale * p, scale * se, samples, seed)


def bernoulli_lower_bound(est: McEstimate, level: float = 0.99) -> float:
    """One-sided Clopper-Pearson lower bound for a hit-fraction estimate."""
    hits = round(est.mean * est.samples)
    if hits == 0:
        return 0.0
    return float(stats.beta.ppf(1.0 - level, hits, est.samples - hits + 1))


# Gaussian normalization


def _gauss_quadrature(n):
    nodes, weights = np.polynomial.legendre.leggauss(QUAD_NODES)
    x = HALF_WIDTH * nodes
    w = HALF_WIDTH * weights * np.exp(-np.pi * x * x)
    total = w
    for _ in range(n - 1):
        total = np.multiply.outer(total, w)
    return math.fsum(np.ravel(total))


def gaussian_norm_check(n: int, budget: int = 10**6, seed: int = 0,
                        method: str = "auto", workers: int = 1) -> McEstimate:
    """Estimate the integral of exp(-pi |x|^2) over R^n, whose value is 1.

    ``method`` is ``"quadrature"`` (tensor Gauss-Legendre, n <= 3), ``"mc"``
    (stratified Monte Carlo on the cube [-3, 3]^n, n <= 8) or ``"auto"``.
    The neglected tail outside the cube is below 1e-12 for n <= 8.
    """
    seed = _check_seed(seed)
    if method == "auto":
        method = "quadrature" if n <= 3 else "mc"
    if method == "quadrature":
        if not 1 <= n <= 3:
            raise ResourceLimitError("tensor quadrature is limited to 1 <= n <= 3")
        return McEstimate(_gauss_quadrature(n), 0.0, QUAD_NODES**n, seed)
    if method != "mc":
        raise DomainError(f"unknown method {method!r}")
    if not 1 <= n <= 8:
        raise ResourceLimitError("Monte Carlo Gaussian check is limited to 1 <= n <= 8")
    samples = _check_samples(budget)
    if samples < 2 * STRATA:
        raise DomainError(f"need at least {2 * STRATA} samples for stratification")
    width = 2 * HALF_WIDTH
    volume = width**n

    def kernel(rng, start, count):
        strata = (start + np.arange(count)) % STRATA
        x = rng.random((count, n)) * width - HALF_WIDTH
        x[:, 0] = -HALF_WIDTH + (strata + rng.random(count)) * (width / STRATA)
        f = volume * np.exp(-np.pi * np.einsum("ij,ij->i", x, x))
        return np.concatenate([
            np.bincount(strata, minlength=STRATA),
            np.bincount(strata, weights=f, minlength=STRATA),
            np.bincount(strata, weights=f * f, minlength=STRATA),
        ])

    sums = _run(samples, seed, _GAUSS, kernel, workers)
    cnt, s1, s2 = sums[:STRATA], sums[STRATA:2 * STRATA], sums[2 * STRATA:]
    means = s1 / cnt
    var = np.maximum(s2 / cnt - means**2, 0.0) * cnt / (cnt - 1)
    mean = float(math.fsum(means)) / STRATA
    se = math.sqrt(math.fsum(var / cnt)) / STRATA
    return McEstimate(mean, se, samples, seed)


# ball volume and shells


def mc_ball_volume(n: int, budget: int = 10**6, seed: int = 0, workers: int = 1) -> McEstimate:
    """Hit-or-miss estimate 2^n * P(|x| <= 1) for x uniform in [-1, 1]^n."""
    if not 2 <= n <= 12:
        raise ResourceLimitError("hit-or-miss ball volume is limited to 2 <= n <= 12")
    seed, samples = _check_seed(seed), _check_samples(budget)

    def kernel(rng, start, count):
        x = rng.random((count, n)) * 2.0 - 1.0
        return [np.count_nonzero(np.einsum("ij,ij->i", x, x) <= 1.0)]

    hits = _run(samples, seed, _BALL, kernel, workers)[0]
    return _bernoulli(hits, samples, seed, scale=2.0**n)


def _radii(rng, count, n):
    # 1 - U lies in (0, 1], so radii are never exactly zero
    return (1.0 - rng.random(count)) ** (1.0 / n)


def sample_radii(n: int, count: int, seed: int = 0) -> np.ndarray:
    """Radii of ``count`` uniform points in the unit n-ball (density n r^(n-1))."""
    if n < 1:
        raise DomainError("dimension must be positive")
    seed, count = _check_seed(seed), _check_samples(count)
    out = []
    for b in range(-(-count // BLOCK)):
        c = min(BLOCK, count - b * BLOCK)
        out.append(_radii(_generator(seed, _RADII, b), c, n))
    return np.concatenate(out)


def mc_shell_fraction(n: int, delta: float, budget: int = 10**6, seed: int = 0,
                      workers: int = 1) -> McEstimate:
    """Fraction of uniform ball points with radius above 1 - delta."""
    if n < 1:
        raise DomainError("dimension must be positive")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {delta!r}")
    seed, samples = _check_seed(seed), _check_samples(budget)
    cut = 1.0 - delta

    def kernel(rng, start, count):
        return [np.count_nonzero(_radii(rng, count, n) > cut)]

    hits = _run(samples, seed, _SHELL, kernel, workers)[0]
    return _bernoulli(hits, samples, seed)


# leakage witness


def mc_leak_fraction(n: int, budget: int = 10**6, seed: int = 0, workers: int = 1) -> McEstimate:
    """Fraction of the central ball lying outside the box [-1, 1]^n."""
    radius = inner_radius(n)
    seed, samples = _check_seed(seed), _check_samples(budget)
    chunk = max(1, (1 << 22) // n)

    def kernel(rng, start, count):
        hits = 0
        for lo in range(0, count, chunk):
            c = min(chunk, count - lo)
            z = rng.standard_normal((c, n))
            norm = np.sqrt(np.einsum("ij,ij->i", z, z))
            peak = np.minimum(np.abs(z).max(axis=1) / norm, 1.0)
            hits += np.count_nonzero(radius * _radii(rng, c, n) * peak > 1.0)
        return [hits]

    hits = _run(samples, seed, _LEAK, kernel, workers)[0]
    return _bernoulli(hits, samples, seed)


# skeleton centroids


def mc_skeleton_centroid(n: int, k: int, budget: int = 10**6, seed: int = 0,
                         workers: int = 1) -> tuple[McEstimate, ...]:
    """Per-coordinate mean of points drawn uniformly from the k-skeleton.

    A face is picked with probability proportional to its k-volume, then a
    point inside it from Dirichlet(1, ..., 1) barycentric weights built from
    exponential spacings.
    """
    if not 1 <= n <= 10:
        raise ResourceLimitError("skeleton sampling is limited to 1 <= n <= 10; use the exact path")
    if not 0 <= k <= n:
        raise DomainError(f"skeleton dimension must lie in 0..{n}, got {k!r}")
    seed, samples = _check_seed(seed), _check_samples(budget)
    corner = math.comb(n, k) * float(face_volume(k, True))
    far = math.comb(n, k + 1) * float(face_volume(k, False))
    p_corner = corner / (corner + far)

    def kernel(rng, start, count):
        at_corner = rng.random(count) < p_corner
        chosen = np.argsort(rng.random((count, n)), axis=1)[:, : min(k + 1, n)]
        lam = rng.standard_exponential((count, k + 1))
        lam /= lam.sum(axis=1, keepdims=True)
        # at the corner the (k+1)-th slot is the origin, which has no coordinates
        if k + 1 <= n:
            lam[at_corner, k] = 0.0
        else:
            lam = lam[:, :n]
        x = np.zeros((count, n))
        np.put_along_axis(x, chosen, lam[:, : chosen.shape[1]], axis=1)
        return np.concatenate([x.sum(axis=0), (x * x).sum(axis=0)])

    sums = _run(samples, seed, _SKELETON, kernel, workers)
    out = []
    for i in range(n):
        mean = float(sums[i]) / samples
        var = max(float(sums[n + i]) / samples - mean * mean, 0.0)
        out.append(McEstimate(mean, math.sqrt(var / samples), samples, seed))
    return tuple(out)
