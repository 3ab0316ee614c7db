import math

import numpy as np
import pytest
from scipy import stats

from hdc.ball import ball_volume
from hdc.centroids import centroid_coefficient
from hdc.errors import DomainError, ResourceLimitError
from hdc.oracles import (
    bernoulli_lower_bound,
    gaussian_norm_check,
    mc_ball_volume,
    mc_leak_fraction,
    mc_shell_fraction,
    mc_skeleton_centroid,
    sample_radii,
)


@pytest.mark.parametrize("n, tol", [(1, 1e-8), (2, 1e-6), (3, 1e-6)])
def test_gaussian_quadrature(n, tol):
    est = gaussian_norm_check(n, method="quadrature")
    assert est.std_error == 0.0
    assert abs(est.mean - 1.0) <= tol


def test_gaussian_mc_dimension_eight():
    est = gaussian_norm_check(8, 10**7, seed=0)
    assert est.std_error > 0
    assert est.agrees_with(1.0)


@pytest.mark.parametrize("n", range(1, 6))
def test_gaussian_mc_low_dimensions(n):
    assert gaussian_norm_check(n, 10**6, seed=3, method="mc").agrees_with(1.0)


def test_gaussian_range_limits():
    with pytest.raises(ResourceLimitError):
        gaussian_norm_check(4, method="quadrature")
    with pytest.raises(ResourceLimitError):
        gaussian_norm_check(9, method="mc")


def test_ball_volume_disc():
    assert mc_ball_volume(2, 10**6, seed=0).agrees_with(math.pi)


def test_ball_volume_five():
    assert mc_ball_volume(5, 10**7, seed=0).agrees_with(ball_volume(5).to_float())


@pytest.mark.slow
def test_ball_volume_ten():
    assert mc_ball_volume(10, 10**8, seed=0).agrees_with(math.pi**5 / 120)


@pytest.mark.parametrize("n", [1, 13])
def test_ball_volume_range(n):
    with pytest.raises(ResourceLimitError):
        mc_ball_volume(n, 1000)


def test_ball_volume_calibration():
    reference = 4 * math.pi / 3
    covered = sum(mc_ball_volume(3, 10**5, seed=s).agrees_with(reference) for s in range(200))
    print(f"3-sigma coverage over 200 seeds: {covered}/200")
    assert covered >= 198


def test_shell_fraction_hundred():
    est = mc_shell_fraction(100, 0.01, 10**6, seed=0)
    assert est.agrees_with(1 - 0.99**100)


@pytest.mark.parametrize("delta, value", [(1.0, 1.0), (0.0, 0.0)])
def test_shell_fraction_degenerate(delta, value):
    est = mc_shell_fraction(7, delta, 10**5, seed=2)
    assert est.mean == value and est.std_error == 0.0


@pytest.mark.parametrize("delta", [-0.1, 1.5])
def test_shell_fraction_domain(delta):
    with pytest.raises(DomainError):
        mc_shell_fraction(3, delta, 100)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_no_leak_up_to_four(n):
    est = mc_leak_fraction(n, 10**5, seed=1)
    assert est.mean == 0.0 and est.std_error == 0.0


def test_leak_in_five():
    est = mc_leak_fraction(5, 10**6, seed=1)
    assert est.mean > 0
    assert bernoulli_lower_bound(est, 0.99) > 0


def test_lower_bound_matches_exact_binomial_tail():
    est = mc_leak_fraction(6, 10**5, seed=4)
    hits = round(est.mean * est.samples)
    lb = bernoulli_lower_bound(est, 0.99)
    # at the bound, seeing >= hits successes has probability exactly 1%
    assert math.isclose(stats.binom.sf(hits - 1, est.samples, lb), 0.01, rel_tol=1e-6)


def test_skeleton_triangle_edges():
    target = float(centroid_coefficient(2, 1))
    for est in mc_skeleton_centroid(2, 1, 10**6, seed=0):
        assert est.agrees_with(target)


def test_skeleton_solid_tetrahedron():
    for est in mc_skeleton_centroid(3, 3, 10**6, seed=0):
        assert est.agrees_with(0.25)


@pytest.mark.parametrize("n, k", [(4, 0), (5, 2), (6, 5), (10, 3)])
def test_skeleton_general(n, k):
    target = float(centroid_coefficient(n, k))
    ests = mc_skeleton_centroid(n, k, 4 * 10**5, seed=11)
    assert len(ests) == n
    assert all(e.agrees_with(target, z=4.0) for e in ests)


def test_skeleton_range():
    with pytest.raises(ResourceLimitError):
        mc_skeleton_centroid(13, 3, 1000)
    with pytest.raises(DomainError):
        mc_skeleton_centroid(3, 4, 1000)


@pytest.mark.parametrize("call", [
    lambda w: mc_ball_volume(4, 300_000, seed=9, workers=w),
    lambda w: mc_leak_fraction(6, 300_000, seed=9, workers=w),
    lambda w: gaussian_norm_check(6, 300_000, seed=9, workers=w),
    lambda w: mc_shell_fraction(20, 0.1, 300_000, seed=9, workers=w),
    lambda w: mc_skeleton_centroid(4, 2, 300_000, seed=9, workers=w),
])
def test_worker_count_is_irrelevant(call):
    assert call(1) == call(3) == call(8)


def test_seed_changes_stream():
    assert mc_ball_volume(4, 10**5, seed=1) != mc_ball_volume(4, 10**5, seed=2)
    assert mc_ball_volume(4, 10**5, seed=2**64 - 1).samples == 10**5


def test_bad_seed():
    with pytest.raises(DomainError):
        mc_ball_volume(4, 1000, seed=-1)
    with pytest.raises(DomainError):
        mc_ball_volume(4, 1000, seed=2**64)


def test_radial_law_goodness_of_fit():
    r = sample_radii(5, 10**6, seed=0)
    assert r.min() > 0 and r.max() <= 1
    res = stats.kstest(r, lambda x: np.clip(x, 0, 1) ** 5)
    assert res.pvalue > 1e-3


def test_radial_law_against_rejection_sampling():
    rng = np.random.default_rng(123)
    pts = rng.uniform(-1, 1, size=(4 * 10**5, 5))
    norms = np.sqrt((pts * pts).sum(axis=1))
    rejected = norms[norms <= 1]
    res = stats.ks_2samp(sample_radii(5, 10**5, seed=5), rejected)
    assert res.pvalue > 1e-3


def test_estimate_serializes():
    est = mc_ball_volume(3, 1000, seed=5)
    assert est.to_dict() == {"mean": est.mean, "std_error": est.std_error, "samples": 1000, "seed": 5}
    lo, hi = est.interval()
    assert lo < est.mean < hi
