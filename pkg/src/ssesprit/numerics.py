"""Dense complex linear-algebra kernels used by the pipeline.

All kernels delegate to LAPACK through numpy.linalg; the contract is the
invariant suite in the tests (reconstruction, orthogonality, Penrose
identities, trace/determinant consistency), not any particular algorithm.
Tolerances are relative to the leading singular value, never absolute.
Non-convergence surfaces as ``numpy.linalg.LinAlgError``; there are no silent
partial results.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import RankDeficiencyError
from .validation import check_matrix

__all__ = [
    "SvdResult",
    "svd",
    "truncated_pinv",
    "eigenvalues",
    "spectral_norm",
    "least_squares",
]

# relative cutoffs, in units of sigma_1
PINV_RANK_CUTOFF = 1e-14
LSTSQ_RANK_CUTOFF = 1e-12


@dataclass(frozen=True)
class SvdResult:
    """Economy SVD: A = U @ diag(singular_values) @ V*.

    U and V have orthonormal columns; singular values are nonincreasing and
    nonnegative.
    """

    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray


def svd(A) -> SvdResult:
    """Economy singular value decomposition of a nonempty complex matrix."""
    arr = check_matrix(A)
    U, sigma, Vh = np.linalg.svd(arr, full_matrices=False)
    return SvdResult(U=U, singular_values=sigma, V=Vh.conj().T)


def truncated_pinv(A, rank: int) -> np.ndarray:
    """Pseudo-inverse built from the top-``rank`` SVD triplet."""
    arr = check_matrix(A)
    rank = int(rank)
    if rank < 1 or rank > min(arr.shape):
        raise ValueError(f"rank {rank} outside 1..{min(arr.shape)}")
    dec = svd(arr)
    sigma = dec.singular_values
    if sigma[rank - 1] <= PINV_RANK_CUTOFF * sigma[0]:
        raise RankDeficiencyError(
            f"singular value {rank} is {sigma[rank - 1]:.3e}, below the "
            f"relative cutoff {PINV_RANK_CUTOFF:g} * sigma_1"
        )
    U1 = dec.U[:, :rank]
    V1 = dec.V[:, :rank]
    return V1 @ (U1.conj().T / sigma[:rank, None])


def eigenvalues(A) -> np.ndarray:
    """All eigenvalues of a square matrix, multiplicities included."""
    arr = check_matrix(A)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"eigenvalues need a square matrix, got {arr.shape}")
    return np.linalg.eigvals(arr)


def spectral_norm(A) -> float:
    """Largest singular value."""
    arr = check_matrix(A)
    return float(np.linalg.svd(arr, compute_uv=False)[0])


def least_squares(A, b) -> np.ndarray:
    """Minimum-residual solution of A x = b via the SVD.

    Requires A to have full column rank relative to LSTSQ_RANK_CUTOFF.
    """
    arr = check_matrix(A)
    rhs = np.asarray(b, dtype=np.complex128).ravel()
    m, n = arr.shape
    if rhs.size != m:
        raise ValueError(f"rhs length {rhs.size} does not match {m} rows")
    if m < n:
        raise RankDeficiencyError("underdetermined system cannot have full column rank")
    dec = svd(arr)
    sigma = dec.singular_values
    if sigma[n - 1] <= LSTSQ_RANK_CUTOFF * sigma[0]:
        raise RankDeficiencyError(
            f"column rank deficient: sigma_min/sigma_1 = "
            f"{sigma[n - 1] / sigma[0] if sigma[0] else 0.0:.3e}"
        )
    return dec.V @ ((dec.U.conj().T @ rhs) / sigma)
