"""Hermitian spectra, empirical distributions, moments and CDF metrics.

Distance computations work on a small CDF protocol: objects exposing
``eval`` / ``eval_left`` (vectorized, right-continuous values and left
limits) and ``points`` (jump or grid abscissae). Step CDFs come from
spectra; the limit law supplies a piecewise-linear grid CDF.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRangeError, NotHermitianError, SolverFailureError
from .matrices import CovarianceMatrix, EntryDistribution, covariance, sample_shaped
from .partitions import Partition

__all__ = [
    "Spectrum",
    "StepCDF",
    "GridCDF",
    "Histogram",
    "EnsembleMoments",
    "eigenvalues",
    "empirical_cdf",
    "empirical_moment",
    "levy_distance",
    "ks_distance",
    "histogram",
    "ensemble_spectra",
    "ensemble_moments",
]


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues of a Hermitian matrix."""

    values: np.ndarray
    dim: int


def eigenvalues(w: CovarianceMatrix, herm_tol: float = 1e-10) -> Spectrum:
    """Full real spectrum of a Hermitian matrix, ascending."""
    m = w.entries
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"matrix shape {m.shape} is not square")
    scale = float(np.abs(m).max()) if m.size else 0.0
    asym = float(np.abs(m - m.conj().T).max()) if m.size else 0.0
    if scale > 0 and asym > herm_tol * scale:
        raise NotHermitianError(f"asymmetry {asym:.3e} exceeds {herm_tol:.1e} * {scale:.3e}")
    try:
        vals = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - solver failures are exotic
        raise SolverFailureError(str(exc)) from exc
    return Spectrum(values=np.sort(vals.real), dim=m.shape[0])


class StepCDF:
    """Right-continuous step CDF with jump 1/n at each atom (with multiplicity)."""

    def __init__(self, values):
        vals = np.sort(np.asarray(values, dtype=float))
        self._vals = vals
        self._n = len(vals)
        self.atoms, counts = np.unique(vals, return_counts=True)
        self.multiplicities = counts

    @property
    def total(self) -> int:
        return self._n

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        return np.searchsorted(self._vals, x, side="right") / self._n

    def eval_left(self, x):
        x = np.asarray(x, dtype=float)
        return np.searchsorted(self._vals, x, side="left") / self._n

    def points(self) -> np.ndarray:
        return self.atoms


class GridCDF:
    """Piecewise-linear CDF interpolant on an explicit grid."""

    def __init__(self, xs, fs):
        xs = np.asarray(xs, dtype=float)
        fs = np.asarray(fs, dtype=float)
        if xs.ndim != 1 or xs.shape != fs.shape:
            raise ValueError("grid and values must be 1-d and equal length")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(np.diff(fs) < -1e-12):
            raise ValueError("CDF values must be nondecreasing")
        self.xs = xs
        self.fs = np.maximum.accumulate(fs)

    @property
    def mass(self) -> float:
        return float(self.fs[-1])

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        return np.interp(x, self.xs, self.fs, left=0.0, right=self.fs[-1])

    eval_left = eval  # continuous

    def points(self) -> np.ndarray:
        return self.xs


def empirical_cdf(s: Spectrum) -> StepCDF:
    return StepCDF(s.values)


def empirical_moment(s: Spectrum, k: int) -> float:
    """(1/dim) * sum of eigenvalues^k."""
    if k < 0:
        raise ValueError(f"order {k} < 0")
    if k == 0:
        return 1.0
    return float(np.mean(s.values**k))


def _levy_ok(f, g, eps: float, sweep: np.ndarray) -> bool:
    slack = 1e-15
    lo_r = f.eval(sweep - eps) - eps
    lo_l = f.eval_left(sweep - eps) - eps
    hi_r = f.eval(sweep + eps) + eps
    hi_l = f.eval_left(sweep + eps) + eps
    g_r = g.eval(sweep)
    g_l = g.eval_left(sweep)
    if np.any(g_r < lo_r - slack) or np.any(g_l < lo_l - slack):
        return False
    if np.any(g_r > hi_r + slack) or np.any(g_l > hi_l + slack):
        return False
    return True


def levy_distance(f, g, tol: float = 1e-9) -> float:
    """Levy metric between two CDFs by bisection over the slack epsilon.

    The feasibility sweep runs over the union of both CDFs' jump/grid
    points together with their +-epsilon shifts, where the defining
    inequalities attain their suprema for step and piecewise-linear
    inputs. Returns a feasible epsilon within ``tol`` of the infimum.
    """
    base = np.concatenate([np.asarray(f.points(), float), np.asarray(g.points(), float)])
    base = np.unique(base)

    def ok(eps: float) -> bool:
        sweep = np.unique(np.concatenate([base, base - eps, base + eps]))
        return _levy_ok(f, g, eps, sweep)

    lo, hi = 0.0, 1.0
    if ok(0.0):
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def ks_distance(f, g) -> float:
    """Sup-norm distance between two CDFs over their joint evaluation points."""
    pts = np.unique(np.concatenate([np.asarray(f.points(), float), np.asarray(g.points(), float)]))
    d_right = np.abs(f.eval(pts) - g.eval(pts)).max()
    d_left = np.abs(f.eval_left(pts) - g.eval_left(pts)).max()
    return float(max(d_right, d_left))


@dataclass(frozen=True)
class Histogram:
    """Normalized density histogram with explicit overflow accounting."""

    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    below: int
    above: int
    total: int

    def mass_in_range(self) -> float:
        return float(np.sum(self.density * np.diff(self.edges)))


def histogram(s: Spectrum, bins: int, value_range: tuple[float, float]) -> Histogram:
    lo, hi = value_range
    if bins < 1 or not lo < hi:
        raise InvalidRangeError(f"bad histogram spec: bins={bins}, range=({lo}, {hi})")
    edges = np.linspace(lo, hi, bins + 1)
    vals = np.asarray(s.values, dtype=float)
    total = vals.size
    if total == 0:
        zero = np.zeros(bins)
        return Histogram(edges=edges, counts=zero.copy(), density=zero, below=0, above=0, total=0)
    counts, _ = np.histogram(vals, bins=edges)
    below = int(np.sum(vals < lo))
    above = int(np.sum(vals > hi))
    widths = np.diff(edges)
    density = counts / (total * widths)
    return Histogram(edges=edges, counts=counts.astype(float), density=density,
                     below=below, above=above, total=total)


@dataclass(frozen=True)
class EnsembleMoments:
    """Per-order sample mean and unbiased variance of empirical moments."""

    orders: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    replicas: int


def _replica_eigenvalues(args) -> np.ndarray:
    lam_parts, scale, dist, seed, index = args
    lam = Partition(lam_parts)
    x = sample_shaped(lam, dist, (seed, index))
    w = covariance(x, scale)
    return eigenvalues(w).values


def shape_ensemble_spectra(shape: Partition, scale: int, dist: EntryDistribution,
                           replicas: int, seed: int, jobs: int = 1) -> list[np.ndarray]:
    """Eigenvalue arrays for `replicas` draws of W = X X*/scale on a fixed shape.

    Replica i always uses substream (seed, i), so results are identical
    for any `jobs`; outputs are ordered by replica index.
    """
    if replicas < 1:
        raise ValueError(f"replicas {replicas} < 1")
    tasks = [(shape.parts, scale, dist, seed, i) for i in range(replicas)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_replica_eigenvalues, tasks))
    return [_replica_eigenvalues(t) for t in tasks]


def ensemble_spectra(lam: Partition, n: int, dist: EntryDistribution, replicas: int,
                     seed: int, jobs: int = 1) -> list[np.ndarray]:
    """Ensemble spectra for the n-fold dilation of lam, scaled by n."""
    return shape_ensemble_spectra(lam.dilate(n), n, dist, replicas, seed, jobs=jobs)


def ensemble_moments(lam: Partition, n: int, dist: EntryDistribution, k_max: int,
                     replicas: int, seed: int, jobs: int = 1) -> EnsembleMoments:
    """Monte Carlo mean/variance of the empirical moments m_{k,N}, k = 0..k_max."""
    if replicas < 2:
        raise ValueError(f"replicas {replicas} < 2; variance needs at least two")
    spectra = ensemble_spectra(lam, n, dist, replicas, seed, jobs=jobs)
    orders = np.arange(k_max + 1)
    table = np.empty((replicas, k_max + 1))
    for i, vals in enumerate(spectra):
        for k in orders:
            table[i, k] = 1.0 if k == 0 else float(np.mean(vals**k))
    return EnsembleMoments(
        orders=orders,
        means=table.mean(axis=0),
        variances=table.var(axis=0, ddof=1),
        replicas=replicas,
    )
