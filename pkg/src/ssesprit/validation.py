"""Input validation helpers shared by the estimators.

These keep the public entry points tolerant of duck-typed input (plain
sequences, ndarrays, or :class:`~ssesprit.signal_model.SampleVector`) while
failing early with a readable message.
"""
from __future__ import annotations

import numpy as np

__all__ = ["as_sample_array", "check_split", "check_sparsity", "check_matrix"]


def as_sample_array(y) -> np.ndarray:
    """Coerce ``y`` (SampleVector, sequence, or ndarray) to complex 1-D.

    The returned array has length M+1 >= 2, i.e. the sample degree M is at
    least 1.
    """
    values = getattr(y, "values", y)
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"samples must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError("need at least two samples (sample degree M >= 1)")
    if not np.all(np.isfinite(arr)):
        raise ValueError("samples contain non-finite entries")
    return arr


def check_split(M: int, L=None) -> int:
    """Validate the pencil split, defaulting to the balanced ``(M+1)//2``."""
    if L is None:
        return (int(M) + 1) // 2
    L = int(L)
    if L < 1 or 2 * L > M + 1:
        raise ValueError(f"split L={L} violates 1 <= L and 2L <= M+1 (M={M})")
    return L


def check_sparsity(s, M: int, L: int) -> int:
    """Validate the number of modes against the sample budget and split."""
    s = int(s)
    if s < 1:
        raise ValueError("number of modes must be >= 1")
    if M + 1 < 2 * s:
        raise ValueError(f"need M+1 >= 2s samples, got M+1={M + 1} for s={s}")
    if s > min(L, M - L + 1):
        raise ValueError(
            f"s={s} exceeds the pencil rank capacity min(L, M-L+1)={min(L, M - L + 1)}"
        )
    return s


def check_matrix(A, name: str = "matrix") -> np.ndarray:
    """Coerce to a nonempty complex 2-D array."""
    arr = np.asarray(A, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be nonempty")
    return arr
