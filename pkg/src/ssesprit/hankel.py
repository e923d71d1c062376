"""Hankel pencil and Vandermonde constructions.

From samples y_0..y_M and a split 1 <= L with 2L <= M+1 we form the
(L+1) x (M-L+1) Hankel matrix H with H[k, j] = y_{k+j}, and the pencil
(H1, H2) of its first and last L rows.  For a clean line spectrum the pencil
factors through Vandermonde matrices, which is what the shift-invariance
estimators exploit; :func:`decomposition_residual` verifies that factorization
numerically.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .signal_model import SpectralModel
from .validation import as_sample_array, check_split

__all__ = [
    "HankelPencil",
    "VandermondeMatrix",
    "build_pencil",
    "imaging_vector",
    "vandermonde",
    "decomposition_residual",
    "samples_from_pencil",
    "matrix_to_csv",
]


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class HankelPencil:
    """Hankel matrix H plus the (H1, H2) first/last-L-rows pair."""

    H: np.ndarray
    H1: np.ndarray
    H2: np.ndarray
    L: int
    M: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.H.shape


@dataclass(frozen=True)
class VandermondeMatrix:
    """Matrix with entry (k, j) = exp(-2 pi i k omega_j), k = 0..degree."""

    entries: np.ndarray
    degree: int
    frequencies: np.ndarray


def build_pencil(y, L: int | None = None) -> HankelPencil:
    """Hankel matrix and pencil for the given split (default (M+1)//2)."""
    values = as_sample_array(y)
    M = values.size - 1
    L = check_split(M, L)
    idx = np.arange(L + 1)[:, None] + np.arange(M - L + 1)[None, :]
    H = values[idx]
    return HankelPencil(H=_freeze(H), H1=_freeze(H[:-1]), H2=_freeze(H[1:]), L=L, M=M)


def imaging_vector(omega: float, N: int) -> np.ndarray:
    """Column [exp(-2 pi i k omega)] for k = 0..N."""
    if N < 0:
        raise ValueError("degree N must be >= 0")
    # same evaluation order as vandermonde, so the column matches bit for bit
    return np.exp(-2j * np.pi * (np.arange(N + 1) * float(omega)))


def vandermonde(frequencies, N: int) -> VandermondeMatrix:
    """Vandermonde matrix of imaging vectors up to degree N (N+1 rows)."""
    if N < 0:
        raise ValueError("degree N must be >= 0")
    freqs = np.atleast_1d(np.asarray(frequencies, dtype=float))
    entries = np.exp(-2j * np.pi * np.outer(np.arange(N + 1), freqs))
    return VandermondeMatrix(entries=_freeze(entries), degree=int(N), frequencies=_freeze(freqs.copy()))


def decomposition_residual(model: SpectralModel, pencil: HankelPencil) -> float:
    """Largest Frobenius residual of the three Vandermonde factorizations.

    Checks H, H1, and H2 against the factorizations implied by ``model``;
    approximately zero when the pencil was built from clean samples of that
    model.
    """
    L, M = pencil.L, pencil.M
    phi_left = vandermonde(model.frequencies, L).entries          # (L+1) x s
    phi_right = vandermonde(model.frequencies, M - L).entries     # (M-L+1) x s
    lam = np.exp(-2j * np.pi * model.frequencies)
    amp = model.amplitudes
    right = (amp[:, None] * phi_right.T)                          # X * Phi^T
    r_full = np.linalg.norm(pencil.H - phi_left @ right)
    r_first = np.linalg.norm(pencil.H1 - phi_left[:-1] @ right)
    r_last = np.linalg.norm(pencil.H2 - phi_left[:-1] @ (lam[:, None] * right))
    return float(max(r_full, r_first, r_last))


def samples_from_pencil(pencil: HankelPencil) -> np.ndarray:
    """Recover the sample vector from the anti-diagonals of H."""
    M, L = pencil.M, pencil.L
    y = np.empty(M + 1, dtype=np.complex128)
    for m in range(M + 1):
        k = min(m, L)
        y[m] = pencil.H[k, m - k]
    return y


def matrix_to_csv(A, path) -> None:
    """Debug export as rows (row, col, re, im)."""
    arr = np.asarray(A, dtype=np.complex128)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "col", "re", "im"])
        for (r, c), v in np.ndenumerate(arr):
            writer.writerow([r, c, repr(float(v.real)), repr(float(v.imag))])
