import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from youngspec.errors import InvalidRangeError, NotHermitianError
from youngspec.matrices import CovarianceMatrix, EntryDistribution, covariance, sample_shaped
from youngspec.partitions import dilate, make_partition, staircase
from youngspec.spectra import (
    GridCDF,
    Spectrum,
    StepCDF,
    eigenvalues,
    empirical_cdf,
    empirical_moment,
    ensemble_moments,
    histogram,
    ks_distance,
    levy_distance,
)
from youngspec.streams import substream

step_cdfs = st.lists(st.floats(-5, 5), min_size=1, max_size=12).map(StepCDF)


def _spec(vals):
    vals = np.asarray(vals, dtype=float)
    return Spectrum(values=np.sort(vals), dim=len(vals))


def test_eigenvalues_diagonal():
    w = CovarianceMatrix(dim=2, scale=1, entries=np.diag([2.0, 3.0]).astype(complex))
    s = eigenvalues(w)
    assert np.allclose(s.values, [2.0, 3.0])


def test_eigenvalues_scalar_case():
    lam = make_partition((1,))
    x = sample_shaped(lam, EntryDistribution("rademacher"), (0, 0))
    x = type(x)(shape=lam, entries=np.array([[2.0 + 0j]]), seed_info=None)
    s = eigenvalues(covariance(x, 1))
    assert np.allclose(s.values, [4.0])


def test_eigenvalue_trace_identity():
    x = sample_shaped(dilate(staircase(2), 3), EntryDistribution("complex-gaussian"), (8, 1))
    w = covariance(x, 3)
    s = eigenvalues(w)
    tr = np.trace(w.entries).real
    assert abs(s.values.sum() - tr) <= 1e-10 * abs(tr)
    frob = np.sum(np.abs(w.entries) ** 2)
    assert abs(np.sum(s.values**2) - frob) <= 1e-9 * frob


def test_eigenpair_residuals():
    # residual contract of the delegated solver on a sampled covariance
    x = sample_shaped(dilate(staircase(3), 4), EntryDistribution("complex-gaussian"), (12, 0))
    w = covariance(x, 4).entries
    vals, vecs = np.linalg.eigh(w)
    norm = np.linalg.norm(w, 2)
    for i in range(len(vals)):
        res = np.linalg.norm(w @ vecs[:, i] - vals[i] * vecs[:, i])
        assert res <= 1e-9 * norm


def test_eigenvalues_rejects_non_hermitian():
    w = CovarianceMatrix(dim=2, scale=1,
                         entries=np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex))
    with pytest.raises(NotHermitianError):
        eigenvalues(w)


def test_empirical_cdf_examples():
    f = empirical_cdf(_spec([1, 2, 3]))
    assert f.eval(2.0) == pytest.approx(2 / 3)
    assert f.eval(0.5) == 0.0
    assert f.eval(3.0) == 1.0
    g = empirical_cdf(_spec([1, 1, 5]))
    assert g.eval(1.0) == pytest.approx(2 / 3)


def test_empirical_moment_examples():
    s = _spec([1, 2, 3])
    assert empirical_moment(s, 2) == pytest.approx(14 / 3)
    assert empirical_moment(s, 0) == 1.0


def test_empirical_moment_matrix_power_oracle():
    x = sample_shaped(dilate(staircase(3), 2), EntryDistribution("real-gaussian"), (55, 0))
    w = covariance(x, 2)
    s = eigenvalues(w)
    m = w.entries
    w3 = m @ m @ m
    oracle = np.trace(w3).real / w.dim
    assert abs(empirical_moment(s, 3) - oracle) <= 1e-8 * abs(oracle)


def test_empirical_moment_consistency_with_cdf():
    s = _spec([0.5, 1.5, 1.5, 4.0])
    f = empirical_cdf(s)
    for k in range(4):
        via_cdf = np.sum(f.atoms**k * f.multiplicities) / f.total
        assert empirical_moment(s, k) == pytest.approx(via_cdf, rel=1e-12)


def test_levy_identity_and_point_masses():
    f = StepCDF([0.0])
    assert levy_distance(f, f) == 0.0
    assert levy_distance(f, StepCDF([0.5])) == pytest.approx(0.5, abs=1e-8)
    assert levy_distance(f, StepCDF([2.0])) == pytest.approx(1.0, abs=1e-8)


@settings(max_examples=40, deadline=None)
@given(step_cdfs, step_cdfs)
def test_levy_symmetry(f, g):
    assert levy_distance(f, g) == pytest.approx(levy_distance(g, f), abs=5e-9)


@settings(max_examples=50, deadline=None)
@given(step_cdfs, step_cdfs, step_cdfs)
def test_levy_triangle_inequality(f, g, h):
    dfh = levy_distance(f, h, tol=1e-13)
    dfg = levy_distance(f, g, tol=1e-13)
    dgh = levy_distance(g, h, tol=1e-13)
    assert dfh <= dfg + dgh + 1e-12


def test_ks_examples():
    f = StepCDF([0.0])
    assert ks_distance(f, f) == 0.0
    assert ks_distance(f, StepCDF([1.0])) == 1.0


@settings(max_examples=20, deadline=None)
@given(step_cdfs, step_cdfs)
def test_ks_dominates_levy(f, g):
    assert ks_distance(f, g) >= levy_distance(f, g) - 1e-9


def test_grid_cdf_eval():
    g = GridCDF([0.0, 1.0, 2.0], [0.0, 0.25, 1.0])
    assert g.eval(-1.0) == 0.0
    assert g.eval(0.5) == pytest.approx(0.125)
    assert g.eval(5.0) == 1.0
    assert g.mass == 1.0


def test_histogram_example():
    h = histogram(_spec([1, 1, 3]), 2, (0.0, 4.0))
    assert np.allclose(h.density, [2 / (3 * 2), 1 / (3 * 2)])
    assert h.mass_in_range() == pytest.approx(1.0)
    assert h.below == 0 and h.above == 0


def test_histogram_overflow_and_empty():
    h = histogram(_spec([0.5, 5.0]), 4, (0.0, 4.0))
    assert h.above == 1 and h.total == 2
    empty = histogram(Spectrum(values=np.array([]), dim=0), 3, (0.0, 1.0))
    assert empty.total == 0 and np.all(empty.density == 0)
    with pytest.raises(InvalidRangeError):
        histogram(_spec([1.0]), 0, (0.0, 1.0))


def test_spectrum_shape_for_dilated_staircase():
    r, n = 2, 5
    x = sample_shaped(dilate(staircase(r), n), EntryDistribution("complex-gaussian"), (3, 0))
    s = eigenvalues(covariance(x, n))
    assert s.dim == r * n == len(s.values)
    assert s.values.min() >= -1e-10 * s.values.max()


def test_ensemble_moment_order_zero_exact():
    em = ensemble_moments(staircase(2), 4, EntryDistribution("rademacher"),
                          k_max=2, replicas=8, seed=5)
    assert em.means[0] == 1.0
    assert em.variances[0] == 0.0


def test_ensemble_first_moment_converges():
    r, n, reps = 2, 20, 200
    em = ensemble_moments(staircase(r), n, EntryDistribution("complex-gaussian"),
                          k_max=1, replicas=reps, seed=77)
    se = math.sqrt(em.variances[1] / reps)
    assert abs(em.means[1] - (r + 1) / 2) < 4 * se


def test_ensemble_deterministic():
    a = ensemble_moments(staircase(2), 6, EntryDistribution("centered-uniform"),
                         k_max=3, replicas=6, seed=21)
    b = ensemble_moments(staircase(2), 6, EntryDistribution("centered-uniform"),
                         k_max=3, replicas=6, seed=21)
    assert np.array_equal(a.means, b.means)
    assert np.array_equal(a.variances, b.variances)
