"""Single-snapshot ESPRIT: shift-invariance estimation from one sample vector.

Pipeline: build the Hankel pencil (H1, H2), take the SVD of H1, detect the
number of modes from the singular-value profile when not supplied, solve the
rank-s pencil relation, and read frequencies from the eigenvalue phases.
Amplitudes follow by least squares against the Vandermonde matrix of the
estimated frequencies.

Instead of forming the full (M-L+1) x (M-L+1) pencil solve, the default path
computes the s x s reduced matrix

    inv(Sigma_s) @ U_s* @ H2 @ V_s

whose spectrum equals the nonzero spectrum of the full solve (eig(AB) and
eig(BA) agree away from zero); ``full_pencil=True`` selects the literal full
matrix instead.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .exceptions import RankDeficiencyError, SparsityDetectionError
from .hankel import build_pencil, vandermonde
from .numerics import eigenvalues, least_squares, svd, truncated_pinv
from .validation import as_sample_array, check_sparsity, check_split

__all__ = [
    "EstimationResult",
    "estimate_sparsity",
    "eigenvalue_to_frequency",
    "ss_esprit",
    "full_shift_matrix",
    "EspritEstimator",
]

RANK_COLLAPSE_CUTOFF = 1e-12
GAP_RATIO_THRESHOLD = 10.0


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class EstimationResult:
    """Estimated spectrum plus diagnostics.

    ``frequencies[j]`` is the phase of ``eigenvalues[j]`` mapped to [0, 1);
    the three leading arrays share length ``sparsity_used``.
    ``singular_values`` is the full profile of the pencil's first block.
    """

    frequencies: np.ndarray
    amplitudes: np.ndarray
    eigenvalues: np.ndarray
    singular_values: np.ndarray
    sparsity_used: int
    split_used: int

    def __post_init__(self):
        for name in ("frequencies", "amplitudes", "eigenvalues", "singular_values"):
            object.__setattr__(self, name, _freeze(np.asarray(getattr(self, name))))
        n = self.frequencies.size
        if not (n == self.amplitudes.size == self.eigenvalues.size == self.sparsity_used):
            raise ValueError("result arrays must all have length sparsity_used")

    def to_dict(self) -> dict:
        return {
            "frequencies": [float(w) for w in self.frequencies],
            "amplitudes": [[float(x.real), float(x.imag)] for x in self.amplitudes],
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "singular_values": [float(s) for s in self.singular_values],
            "sparsity_used": int(self.sparsity_used),
            "split_used": int(self.split_used),
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


def estimate_sparsity(
    singular_values,
    noise_norm_hint: float | None = None,
    min_gap_ratio: float = GAP_RATIO_THRESHOLD,
) -> int:
    """Number of modes from a nonincreasing singular-value profile.

    With a noise-norm hint, counts the singular values above it.  Without,
    picks the largest relative gap sigma_j / sigma_{j+1} and accepts only if
    that ratio reaches ``min_gap_ratio``; otherwise the gap is ambiguous and
    the caller must pass the count explicitly.
    """
    sigma = np.asarray(singular_values, dtype=float).ravel()
    if sigma.size == 0:
        raise ValueError("need at least one singular value")
    if noise_norm_hint is not None:
        return int(np.sum(sigma > float(noise_norm_hint)))
    if sigma.size < 2:
        raise SparsityDetectionError(
            "cannot detect a gap in a single singular value; supply the mode count"
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = sigma[:-1] / sigma[1:]
    ratios = np.where(np.isnan(ratios), 0.0, ratios)
    best = int(np.argmax(ratios))
    if not ratios[best] >= min_gap_ratio:
        raise SparsityDetectionError(
            f"largest singular-value gap ratio {ratios[best]:.3g} is below "
            f"{min_gap_ratio:g}; sparsity undetectable, supply the mode count"
        )
    return best + 1


def eigenvalue_to_frequency(lam: complex) -> float:
    """Frequency in [0, 1) from an eigenvalue phase; the modulus is discarded."""
    lam = complex(lam)
    if lam == 0:
        raise ValueError("zero eigenvalue carries no frequency")
    return float(np.mod(-np.angle(lam) / (2.0 * np.pi), 1.0))


def _frequencies_from_eigenvalues(lams: np.ndarray) -> np.ndarray:
    if np.any(lams == 0):
        raise RankDeficiencyError("pencil solve produced a zero eigenvalue")
    return np.mod(-np.angle(lams) / (2.0 * np.pi), 1.0)


def full_shift_matrix(y, s: int, L: int | None = None) -> np.ndarray:
    """Rank-s pencil solve pinv_s(H1) @ H2 as a full (M-L+1) square matrix.

    On clean samples of an s-mode model this is the matrix whose nonzero
    eigenvalues are exactly exp(-2 pi i omega_j).
    """
    values = as_sample_array(y)
    M = values.size - 1
    L = check_split(M, L)
    s = check_sparsity(s, M, L)
    pencil = build_pencil(values, L)
    return truncated_pinv(pencil.H1, s) @ pencil.H2


def ss_esprit(
    y,
    s: int | None = None,
    L: int | None = None,
    *,
    full_pencil: bool = False,
) -> EstimationResult:
    """Estimate frequencies and amplitudes from noisy samples.

    Parameters
    ----------
    y : SampleVector or complex sequence of length M+1
    s : number of modes; detected from the singular-value gap when None
    L : pencil split; defaults to (M+1)//2
    full_pencil : solve the full pencil matrix and retain the s
        largest-modulus eigenvalues, instead of the equivalent s x s
        reduced problem
    """
    values = as_sample_array(y)
    M = values.size - 1
    L = check_split(M, L)
    pencil = build_pencil(values, L)
    dec = svd(pencil.H1)
    sigma = dec.singular_values

    if s is None:
        s = estimate_sparsity(sigma)
    s = check_sparsity(s, M, L)
    if sigma[s - 1] <= RANK_COLLAPSE_CUTOFF * sigma[0]:
        raise RankDeficiencyError(
            f"rank collapse: sigma_{s} = {sigma[s - 1]:.3e} below "
            f"{RANK_COLLAPSE_CUTOFF:g} * sigma_1"
        )

    if full_pencil:
        psi = truncated_pinv(pencil.H1, s) @ pencil.H2
        lam_all = eigenvalues(psi)
        order = np.argsort(-np.abs(lam_all), kind="stable")
        lam = lam_all[order[:s]]
    else:
        U1 = dec.U[:, :s]
        V1 = dec.V[:, :s]
        reduced = (U1.conj().T @ pencil.H2 @ V1) / sigma[:s, None]
        lam = eigenvalues(reduced)
        lam = lam[np.argsort(-np.abs(lam), kind="stable")]

    freqs = _frequencies_from_eigenvalues(lam)
    order = np.argsort(freqs, kind="stable")
    freqs = freqs[order]
    lam = lam[order]
    amps = least_squares(vandermonde(freqs, M).entries, values)
    return EstimationResult(
        frequencies=freqs,
        amplitudes=amps,
        eigenvalues=lam,
        singular_values=sigma,
        sparsity_used=s,
        split_used=L,
    )


class _FittedSpectrumMixin:
    """Shared fitted-attribute handling and resynthesis for the estimators."""

    def _store(self, result: EstimationResult) -> None:
        self.result_ = result
        self.frequencies_ = result.frequencies
        self.amplitudes_ = result.amplitudes
        self.eigenvalues_ = result.eigenvalues
        self.singular_values_ = result.singular_values
        self.n_modes_ = result.sparsity_used
        self.split_ = result.split_used

    def _check_fitted(self) -> None:
        if not hasattr(self, "result_"):
            raise NotFittedError(
                f"{type(self).__name__} is not fitted yet; call fit(y) first"
            )

    def predict(self, t) -> np.ndarray:
        """Evaluate the fitted exponential sum at (possibly non-integer) times."""
        self._check_fitted()
        times = np.asarray(t, dtype=float)
        phases = np.exp(-2j * np.pi * np.outer(times.ravel(), self.frequencies_))
        out = phases @ self.amplitudes_
        return out.reshape(times.shape)

    def fit_predict(self, y, t=None) -> np.ndarray:
        self.fit(y)
        if t is None:
            t = np.arange(len(as_sample_array(y)))
        return self.predict(t)


class EspritEstimator(_FittedSpectrumMixin, BaseEstimator):
    """Scikit-learn style wrapper around :func:`ss_esprit`.

    Parameters
    ----------
    n_modes : number of modes, or None to detect from the spectral gap
    split : pencil split L, or None for (M+1)//2
    full_pencil : use the literal full pencil solve

    Attributes (after fit): ``frequencies_``, ``amplitudes_``,
    ``eigenvalues_``, ``singular_values_``, ``n_modes_``, ``split_``,
    ``result_``.
    """

    def __init__(self, n_modes: int | None = None, split: int | None = None,
                 full_pencil: bool = False):
        self.n_modes = n_modes
        self.split = split
        self.full_pencil = full_pencil

    def fit(self, X, y=None):
        """Fit on a single snapshot of samples (1-D complex array-like)."""
        result = ss_esprit(X, s=self.n_modes, L=self.split,
                           full_pencil=self.full_pencil)
        self._store(result)
        return self
