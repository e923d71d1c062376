"""Shared helpers for the test suite."""
from __future__ import annotations

import numpy as np

from ssesprit import AmplitudeLaw, min_separation, random_model, synthesize
from ssesprit.bounds import (
    separation_threshold_general,
    separation_threshold_rl,
    sigma_s_lower_centered,
)
from ssesprit.hankel import build_pencil
from ssesprit.numerics import spectral_norm
from ssesprit.signal_model import derive_seed, make_rng


def leq(a: float, b: float, rel: float = 1e-9) -> bool:
    """a <= b up to a relative slack on the larger magnitude."""
    return a <= b + rel * max(abs(a), abs(b))


def make_admissible_instance(seed: int):
    """Random instance satisfying the separation condition, with noise blocks
    scaled so ||E1|| sits strictly below the sigma_s lower bound.

    Returns (model, M, L, pencil, E1, E2).
    """
    rng = make_rng(seed)
    M = int(rng.integers(60, 141))
    L = (M + 1) // 2
    s = int(rng.integers(2, 9))
    threshold_rl = max(separation_threshold_rl(M),
                       M * separation_threshold_general(M, L))
    low = float(rng.uniform(1.05, 1.9)) * threshold_rl
    if rng.uniform() < 0.5:
        law = AmplitudeLaw.unit_phase()
    else:
        law = AmplitudeLaw.real_range(float(rng.uniform(1.5, 5.0)))
    model = random_model(s, (low, low * 1.1), M, law, seed=derive_seed(seed, 1))
    pencil = build_pencil(synthesize(model, M))

    noise_rng = make_rng(derive_seed(seed, 2))
    eps = noise_rng.standard_normal(M + 1) + 1j * noise_rng.standard_normal(M + 1)
    noise_pencil = build_pencil(eps)
    delta = min_separation(model.frequencies)
    x_min = float(np.abs(model.amplitudes).min())
    target = float(rng.uniform(0.05, 0.8)) * sigma_s_lower_centered(delta, x_min, M)
    scale = target / spectral_norm(noise_pencil.H1)
    return model, M, L, pencil, noise_pencil.H1 * scale, noise_pencil.H2 * scale
