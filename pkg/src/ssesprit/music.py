"""Single-snapshot MUSIC baseline.

Builds the full Hankel matrix, projects imaging vectors onto the noise
subspace (orthogonal complement of the top-s left singular vectors), and
scans the imaging function J(omega) = 1 / ||P_noise phi(omega)|| on a uniform
grid.  The s largest strict local maxima of the circular grid are refined by
golden-section search; amplitudes follow by least squares.

The grid and the refinement are conventions of this implementation: the
default density is 20 points per resolution length (RL = 1/M) and each peak
is refined within one grid cell to a 1e-10 frequency tolerance.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .esprit import EstimationResult, _FittedSpectrumMixin
from .exceptions import PeakPickingError, RankDeficiencyError
from .hankel import build_pencil, vandermonde
from .numerics import least_squares, svd
from .validation import as_sample_array, check_sparsity, check_split

__all__ = ["Pseudospectrum", "pseudospectrum", "music_estimate", "MusicEstimator"]

DEFAULT_GRID_DENSITY = 20
REFINE_TOL = 1e-10
_RANK_COLLAPSE_CUTOFF = 1e-12
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Pseudospectrum:
    """Imaging function sampled on a strictly increasing grid in [0, 1)."""

    grid: np.ndarray
    values: np.ndarray
    sparsity: int

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["omega", "value"])
            for w, v in zip(self.grid, self.values):
                writer.writerow([repr(float(w)), repr(float(v))])


def _signal_basis(values: np.ndarray, s: int, L: int) -> tuple[np.ndarray, np.ndarray]:
    """Top-s left singular vectors of the full Hankel matrix, plus its profile."""
    pencil = build_pencil(values, L)
    dec = svd(pencil.H)
    sigma = dec.singular_values
    if s >= min(pencil.H.shape):
        raise ValueError(
            f"s={s} leaves no noise subspace for a {pencil.H.shape} Hankel matrix"
        )
    if sigma[s - 1] <= _RANK_COLLAPSE_CUTOFF * sigma[0]:
        raise RankDeficiencyError(
            f"rank collapse: sigma_{s} = {sigma[s - 1]:.3e} below "
            f"{_RANK_COLLAPSE_CUTOFF:g} * sigma_1"
        )
    return dec.U[:, :s], sigma


def _imaging_values(basis: np.ndarray, omegas: np.ndarray) -> np.ndarray:
    """J(omega) = 1 / ||(I - U_s U_s*) phi(omega)|| for each grid frequency.

    The residual norm is computed as ||phi||^2 - ||U_s* phi||^2 (the rows of
    phi have unit modulus, so ||phi||^2 is the row count) and floored at a
    tiny positive value to keep J finite at exact zeros of the noise
    projection.
    """
    rows = basis.shape[0]
    phi = np.exp(-2j * np.pi * np.outer(np.arange(rows), np.asarray(omegas, float)))
    proj = basis.conj().T @ phi
    resid_sq = rows - np.sum(np.abs(proj) ** 2, axis=0)
    resid_sq = np.maximum(resid_sq, rows * 1e-30)
    return 1.0 / np.sqrt(resid_sq)


def _grid(M: int, s: int, grid_density: int) -> np.ndarray:
    n = int(round(grid_density * M))
    if n < 2 * (s + 1):
        raise ValueError(
            f"grid of {n} points is too coarse for {s} modes; raise grid_density"
        )
    return np.arange(n) / n


def pseudospectrum(y, s: int, L: int | None = None,
                   grid_density: int = DEFAULT_GRID_DENSITY) -> Pseudospectrum:
    """Imaging function on the uniform grid (``grid_density`` points per RL)."""
    values = as_sample_array(y)
    M = values.size - 1
    L = check_split(M, L)
    s = check_sparsity(s, M, L)
    basis, _ = _signal_basis(values, s, L)
    grid = _grid(M, s, grid_density)
    return Pseudospectrum(grid=grid, values=_imaging_values(basis, grid), sparsity=s)


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal f on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = f(c)
    fd = f(d)
    while (b - a) > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
    x = 0.5 * (a + b)
    return x, f(x)


def music_estimate(y, s: int, L: int | None = None,
                   grid_density: int = DEFAULT_GRID_DENSITY) -> EstimationResult:
    """MUSIC estimate of s frequencies and amplitudes from noisy samples.

    Returns an :class:`EstimationResult`; its ``eigenvalues`` are the
    unit-circle representatives exp(-2 pi i omega_hat_j) of the estimated
    frequencies, and ``singular_values`` is the profile of the full Hankel
    matrix.
    """
    values = as_sample_array(y)
    M = values.size - 1
    L = check_split(M, L)
    s = check_sparsity(s, M, L)
    basis, sigma = _signal_basis(values, s, L)

    grid = _grid(M, s, grid_density)
    vals = _imaging_values(basis, grid)

    # strict local maxima on the circular grid
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    peak_idx = np.flatnonzero((vals > left) & (vals > right))
    if peak_idx.size < s:
        raise PeakPickingError(
            f"only {peak_idx.size} local maxima on the grid, need {s}"
        )
    top = peak_idx[np.argsort(-vals[peak_idx], kind="stable")[:s]]

    # refine each peak within one grid cell; keep the grid point if the
    # search does not improve on it
    h = 1.0 / grid.size

    def imaging_at(w: float) -> float:
        return float(_imaging_values(basis, np.asarray([w]))[0])

    freqs = np.empty(s)
    for i, idx in enumerate(top):
        w0 = grid[idx]
        w_ref, v_ref = _golden_max(imaging_at, w0 - h, w0 + h, REFINE_TOL)
        freqs[i] = w_ref % 1.0 if v_ref >= vals[idx] else w0

    freqs = np.sort(freqs)
    amps = least_squares(vandermonde(freqs, M).entries, values)
    return EstimationResult(
        frequencies=freqs,
        amplitudes=amps,
        eigenvalues=np.exp(-2j * np.pi * freqs),
        singular_values=sigma,
        sparsity_used=s,
        split_used=L,
    )


class MusicEstimator(_FittedSpectrumMixin, BaseEstimator):
    """Scikit-learn style wrapper around :func:`music_estimate`.

    ``n_modes`` is required (MUSIC does not detect the model order here).
    After ``fit`` the estimator also exposes ``pseudospectrum_``.
    """

    def __init__(self, n_modes: int = 1, split: int | None = None,
                 grid_density: int = DEFAULT_GRID_DENSITY):
        self.n_modes = n_modes
        self.split = split
        self.grid_density = grid_density

    def fit(self, X, y=None):
        result = music_estimate(X, s=self.n_modes, L=self.split,
                                grid_density=self.grid_density)
        self._store(result)
        self.pseudospectrum_ = pseudospectrum(
            X, s=self.n_modes, L=self.split, grid_density=self.grid_density
        )
        return self
