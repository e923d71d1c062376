"""Closed-form stability and resolution certificates for the pencil estimator.

Evaluates, on a concrete instance, the chain of inequalities that controls
how far the noisy pencil solve can drift from the clean one:

* discrete Ingham inequalities: two-sided bounds on the Rayleigh quotient
  ||Phi z||^2 / ||z||^2 of a Vandermonde matrix under a minimum-separation
  hypothesis;
* derived bounds on the extreme singular values of the clean pencil block;
* Weyl's singular-value perturbation bound;
* a Wedin-type pseudo-inverse perturbation bound, chained into the scalar
  eta that dominates the pencil-solve perturbation norm;
* Elsner's eigenvalue bound, converting eta into a Hausdorff distance
  between eigenvalue sets.

Every evaluator is a pure function of its numeric inputs.  Bounds are
reported even where their hypotheses fail (the outside-guarantee region is
exactly what phase-transition studies chart); :class:`BoundReport` carries an
``applicable`` flag instead of refusing to compute.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .esprit import full_shift_matrix
from .hankel import build_pencil, vandermonde
from .numerics import spectral_norm
from .signal_model import (
    NoiseSpec,
    SpectralModel,
    derive_seed,
    make_rng,
    min_separation,
    synthesize,
)
from .validation import check_split

__all__ = [
    "SeparationCheck",
    "separation_threshold_rl",
    "separation_threshold_general",
    "separation_ok",
    "ingham_hypothesis_threshold",
    "ingham_lower",
    "ingham_upper",
    "rayleigh_quotient",
    "sigma_s_lower_general",
    "sigma_1_upper_general",
    "sigma_s_lower_centered",
    "sigma_1_upper_centered",
    "sigma_bounds",
    "h1_pinv_bound",
    "h1hat_pinv_bound",
    "h2eps_norm_bound",
    "WEDIN_SPECTRAL_CONSTANT",
    "wedin_pinv_bound",
    "truncation_pinv_bound",
    "eta_from_norms",
    "EtaBounds",
    "eta_bound",
    "eta_asymptotic",
    "elsner_bound",
    "eigenvalue_hausdorff",
    "weyl_check",
    "ScalingRow",
    "hankel_noise_norm_scaling",
    "BoundReport",
    "evaluate_bounds",
    "min_separation",
]

WEDIN_SPECTRAL_CONSTANT = (1.0 + math.sqrt(5.0)) / 2.0


def _sqrt_or_nan(value: float) -> float:
    return math.sqrt(value) if value >= 0.0 else math.nan


# ---------------------------------------------------------------------------
# separation conditions

@dataclass(frozen=True)
class SeparationCheck:
    """Outcome of the minimum-separation test, threshold in RL units."""

    ok: bool
    threshold_rl: float
    applicable: bool


def separation_threshold_rl(M: int) -> float:
    """Threshold 2 (1 - 4 pi / M)^(-1/2) on rho = delta * M; nan if M <= 4 pi."""
    M = int(M)
    inner = 1.0 - 4.0 * math.pi / M
    if inner <= 0.0:
        return math.nan
    return 2.0 / math.sqrt(inner)


def separation_ok(delta: float, M: int) -> SeparationCheck:
    """Does delta * M clear the balanced-split separation threshold?"""
    threshold = separation_threshold_rl(M)
    if math.isnan(threshold):
        return SeparationCheck(ok=False, threshold_rl=threshold, applicable=False)
    return SeparationCheck(ok=float(delta) * M > threshold, threshold_rl=threshold,
                           applicable=True)


def ingham_hypothesis_threshold(N: int) -> float:
    """Minimum separation (1/N)(1 - 2 pi / N)^(-1/2) required at degree N."""
    N = int(N)
    if N <= 0:
        return math.nan
    inner = 1.0 - 2.0 * math.pi / N
    if inner <= 0.0:
        return math.nan
    return 1.0 / (N * math.sqrt(inner))


def separation_threshold_general(M: int, L: int) -> float:
    """Separation needed for both pencil factors of a general split (absolute)."""
    return max(ingham_hypothesis_threshold(L - 1), ingham_hypothesis_threshold(M - L))


# ---------------------------------------------------------------------------
# discrete Ingham inequalities

def ingham_lower(N: int, delta: float) -> float:
    """Lower bound N (2/pi - 2/(pi N^2 delta^2) - 4/N) on the Rayleigh quotient.

    Valid under the degree-N separation hypothesis; the value is returned
    regardless (it may be negative or vacuous outside the hypothesis).
    """
    N = int(N)
    delta = float(delta)
    if N < 1 or delta <= 0:
        return math.nan
    return N * (2.0 / math.pi - 2.0 / (math.pi * N * N * delta * delta) - 4.0 / N)


def _ingham_upper_even_form(n: int, delta: float) -> float:
    return n * (
        4.0 * math.sqrt(2.0) / math.pi
        + math.sqrt(2.0) / (math.pi * n * n * delta * delta)
        + 3.0 * math.sqrt(2.0) / n
    )


def ingham_upper(N: int, delta: float) -> float:
    """Upper Rayleigh-quotient bound; the odd case is the even form at N+1."""
    N = int(N)
    delta = float(delta)
    if N < 1 or delta <= 0:
        return math.nan
    n = N if N % 2 == 0 else N + 1
    return _ingham_upper_even_form(n, delta)


def rayleigh_quotient(frequencies, degree: int, z) -> float:
    """||Phi^degree z||^2 / ||z||^2 for the Vandermonde matrix of the set."""
    vec = np.asarray(z, dtype=np.complex128).ravel()
    denom = float(np.vdot(vec, vec).real)
    if denom == 0.0:
        raise ValueError("z must be nonzero")
    phi = vandermonde(frequencies, degree).entries
    num = float(np.linalg.norm(phi @ vec) ** 2)
    return num / denom


# ---------------------------------------------------------------------------
# singular-value bounds for the clean pencil block

def sigma_s_lower_general(delta: float, x_min: float, M: int, L: int) -> float:
    """Lower bound on sigma_s(H1) for a general split."""
    a = (L - 1) - 1.0 / ((L - 1) * delta * delta) - 2.0 * math.pi if L > 1 else math.nan
    b = (M - L) - 1.0 / ((M - L) * delta * delta) - 2.0 * math.pi if M > L else math.nan
    return (2.0 * x_min / math.pi) * _sqrt_or_nan(a) * _sqrt_or_nan(b)


def sigma_1_upper_general(delta: float, x_max: float, M: int, L: int) -> float:
    """Upper bound on sigma_1(H1) for a general split."""
    a = L + 1.0 / (4.0 * L * delta * delta) + 3.0 * math.pi / 4.0
    n = M - L + 1
    b = n + 1.0 / (4.0 * n * delta * delta) + 3.0 * math.pi / 4.0
    return (4.0 * math.sqrt(2.0) * x_max / math.pi) * math.sqrt(a) * math.sqrt(b)


def sigma_s_lower_centered(delta: float, x_min: float, M: int) -> float:
    """Lower bound on sigma_s(H1) at the balanced split L = (M+1)//2."""
    return (x_min * M / math.pi) * (
        1.0 - 4.0 / (M * M * delta * delta) - 4.0 * math.pi / M
    )


def sigma_1_upper_centered(delta: float, x_max: float, M: int) -> float:
    """Upper bound on sigma_1(H1) at the balanced split."""
    return (x_max * M * 2.0 * math.sqrt(2.0) / math.pi) * (
        1.0 + 1.0 / (M * M * delta * delta) + 2.0 / M + 3.0 * math.pi / (2.0 * M)
    )


def sigma_bounds(model: SpectralModel, M: int, L: int | None = None) -> tuple[float, float]:
    """(sigma_s lower, sigma_1 upper); balanced-split forms when L is balanced."""
    L = check_split(M, L)
    delta = min_separation(model.frequencies)
    mags = np.abs(model.amplitudes)
    x_min, x_max = float(mags.min()), float(mags.max())
    if L == (M + 1) // 2:
        return (
            sigma_s_lower_centered(delta, x_min, M),
            sigma_1_upper_centered(delta, x_max, M),
        )
    return (
        sigma_s_lower_general(delta, x_min, M, L),
        sigma_1_upper_general(delta, x_max, M, L),
    )


# ---------------------------------------------------------------------------
# pseudo-inverse and norm majorants (balanced split)

def h1_pinv_bound(delta: float, x_min: float, M: int) -> float:
    """Majorant for ||pinv(H1)||_2 = 1/sigma_s at the balanced split."""
    lower = sigma_s_lower_centered(delta, x_min, M)
    return 1.0 / lower if lower > 0 else math.nan


def h1hat_pinv_bound(delta: float, x_min: float, M: int, e1_norm: float) -> float:
    """Majorant for the truncated noisy block: 1/(sigma_s lower - ||E1||)."""
    gap = sigma_s_lower_centered(delta, x_min, M) - float(e1_norm)
    return 1.0 / gap if gap > 0 else math.nan


def h2eps_norm_bound(delta: float, x_max: float, M: int) -> float:
    """Majorant for ||H2 + E2||_2 at the balanced split."""
    return sigma_1_upper_centered(delta, x_max, M)


# ---------------------------------------------------------------------------
# perturbation bounds

def wedin_pinv_bound(pinv_norm_a: float, pinv_norm_b: float,
                     perturbation_norm: float) -> float:
    """Wedin-type bound ((1+sqrt(5))/2) ||A^+|| ||B^+|| ||B - A|| on ||B^+ - A^+||."""
    return WEDIN_SPECTRAL_CONSTANT * pinv_norm_a * pinv_norm_b * perturbation_norm


def truncation_pinv_bound(pinv_norm_a: float, pinv_norm_b: float,
                          e1_norm: float) -> float:
    """Simplified factor-2 form for the rank-truncated perturbation.

    Uses that the truncated noisy block differs from the clean one by at most
    twice the noise norm (the discarded tail is itself below ||E1|| by Weyl).
    """
    return 2.0 * pinv_norm_a * pinv_norm_b * e1_norm


def eta_from_norms(h1_pinv: float, h1hat_pinv: float, h2eps_norm: float,
                   e1_norm: float, e2_norm: float) -> float:
    """eta = ||H1^+|| (2 ||H1hat^+|| ||H2eps|| ||E1|| + ||E2||)."""
    return h1_pinv * (2.0 * h1hat_pinv * h2eps_norm * e1_norm + e2_norm)


@dataclass(frozen=True)
class EtaBounds:
    """Pencil-solve perturbation bound, measured and certified."""

    empirical: float
    certified: float
    applicable: bool
    reason: str = ""


def eta_bound(model: SpectralModel, E1, E2, M: int, L: int | None = None) -> EtaBounds:
    """Evaluate eta from measured norms and from the closed-form majorants.

    The certified value replaces the three matrix-norm factors by their
    balanced-split majorants; it requires the separation condition and
    ||E1|| below the sigma_s lower bound, and is nan otherwise.
    """
    L = check_split(M, L)
    y = synthesize(model, M)
    pencil = build_pencil(y, L)
    E1 = np.asarray(E1, dtype=np.complex128)
    E2 = np.asarray(E2, dtype=np.complex128)
    if E1.shape != pencil.H1.shape or E2.shape != pencil.H2.shape:
        raise ValueError("noise blocks must match the pencil blocks in shape")
    s = model.num_modes
    delta = min_separation(model.frequencies)
    mags = np.abs(model.amplitudes)
    x_min, x_max = float(mags.min()), float(mags.max())

    e1_norm = spectral_norm(E1) if np.any(E1) else 0.0
    e2_norm = spectral_norm(E2) if np.any(E2) else 0.0
    sigma_clean = np.linalg.svd(pencil.H1, compute_uv=False)
    sigma_noisy = np.linalg.svd(pencil.H1 + E1, compute_uv=False)
    h1_pinv = 1.0 / sigma_clean[s - 1] if sigma_clean[s - 1] > 0 else math.inf
    h1hat_pinv = 1.0 / sigma_noisy[s - 1] if sigma_noisy[s - 1] > 0 else math.inf
    h2eps = spectral_norm(pencil.H2 + E2)
    empirical = eta_from_norms(h1_pinv, h1hat_pinv, h2eps, e1_norm, e2_norm)

    reason = ""
    sep = separation_ok(delta, M)
    balanced = L == (M + 1) // 2
    lower = sigma_s_lower_centered(delta, x_min, M)
    if not balanced:
        reason = "certified form needs the balanced split"
    elif not sep.ok:
        reason = "separation condition fails"
    elif not e1_norm < lower:
        reason = "noise norm reaches the sigma_s lower bound"
    applicable = reason == ""
    if applicable:
        certified = eta_from_norms(
            h1_pinv_bound(delta, x_min, M),
            h1hat_pinv_bound(delta, x_min, M, e1_norm),
            h2eps_norm_bound(delta, x_max, M),
            e1_norm,
            e2_norm,
        )
    else:
        certified = math.nan
    return EtaBounds(empirical=empirical, certified=certified,
                     applicable=applicable, reason=reason)


def eta_asymptotic(rho: float, x_min: float, x_max: float,
                   e1_norm: float, e2_norm: float, M: int) -> float:
    """Large-M form of eta in terms of rho = delta * M (informational only)."""
    r2 = rho * rho
    if r2 <= 4.0:
        return math.nan
    shrink = 1.0 - 4.0 / r2
    denom = shrink * x_min - math.pi * e1_norm / M
    if denom <= 0:
        return math.nan
    first = 4.0 * math.sqrt(2.0) * (1.0 + 1.0 / r2) * x_max / denom * (e1_norm / M)
    return math.pi / (x_min * shrink) * (first + e2_norm / M)


def elsner_bound(eta: float, M: int, L: int) -> float:
    """Eigenvalue Hausdorff bound (2 + eta)^(1 - 1/n) eta^(1/n), n = M - L + 1."""
    eta = float(eta)
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    n = int(M) - int(L) + 1
    if n < 1:
        raise ValueError("need M - L + 1 >= 1")
    return (2.0 + eta) ** (1.0 - 1.0 / n) * eta ** (1.0 / n)


def eigenvalue_hausdorff(a, b) -> float:
    """Two-sided max-min distance between complex eigenvalue multisets."""
    av = np.asarray(a, dtype=np.complex128).ravel()
    bv = np.asarray(b, dtype=np.complex128).ravel()
    if av.size == 0 or bv.size == 0:
        raise ValueError("eigenvalue sets must be nonempty")
    dist = np.abs(av[:, None] - bv[None, :])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def weyl_check(A, E) -> bool:
    """max_j |sigma_j(A+E) - sigma_j(A)| <= ||E||_2, with roundoff slack."""
    A = np.asarray(A, dtype=np.complex128)
    E = np.asarray(E, dtype=np.complex128)
    if A.shape != E.shape:
        raise ValueError("A and E must have the same shape")
    sa = np.linalg.svd(A, compute_uv=False)
    se = np.linalg.svd(A + E, compute_uv=False)
    e_norm = np.linalg.svd(E, compute_uv=False)[0] if np.any(E) else 0.0
    slack = 1e-9 * (sa[0] + e_norm)
    return bool(np.max(np.abs(se - sa)) <= e_norm + slack)


# ---------------------------------------------------------------------------
# noise-norm scaling study

@dataclass(frozen=True)
class ScalingRow:
    """Mean noise-block spectral norm at one M, raw and sqrt(M log M) normalized."""

    M: int
    mean_norm: float
    normalized: float


def hankel_noise_norm_scaling(M_list, nu: float, trials: int, seed: int) -> list[ScalingRow]:
    """Tabulate mean ||E1||_2 of pure-noise pencils across sample sizes.

    Each (M, trial) pair gets a derived seed, so rows are reproducible in
    isolation and the table is deterministic.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows = []
    for i, M in enumerate(M_list):
        M = int(M)
        if M < 16:
            raise ValueError("each M must be >= 16")
        L = (M + 1) // 2
        norms = np.empty(trials)
        for t in range(trials):
            rng = make_rng(derive_seed(seed, i, t))
            eps = float(nu) * (
                rng.standard_normal(M + 1) + 1j * rng.standard_normal(M + 1)
            )
            block = build_pencil(eps, L).H1
            norms[t] = np.linalg.svd(block, compute_uv=False)[0] if nu else 0.0
        mean = float(norms.mean())
        rows.append(ScalingRow(M=M, mean_norm=mean,
                               normalized=mean / math.sqrt(M * math.log(M))))
    return rows


# ---------------------------------------------------------------------------
# full report

@dataclass(frozen=True)
class BoundReport:
    """Every certificate evaluated on one instance, with an applicability flag.

    All numeric fields are reported even when ``applicable`` is false (nan
    where a formula leaves its domain); the flag plus ``reason`` say whether
    the guarantee chain is in force.
    """

    M: int
    L: int
    s: int
    delta: float
    rho: float
    x_min: float
    x_max: float
    e1_norm: float
    e2_norm: float
    separation_threshold_rl: float
    separation_ok: bool
    ingham_lower_L: float
    ingham_lower_ML: float
    ingham_upper_L: float
    ingham_upper_ML: float
    sigma_s_lower: float
    sigma_1_upper: float
    h1_pinv_bound: float
    h1hat_pinv_bound: float
    h2eps_norm_bound: float
    eta: float
    eta_certified: float
    eta_asymptotic: float
    elsner_bound: float
    psi_norm: float
    applicable: bool
    reason: str

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float) and math.isnan(value):
                out[f.name] = None
            elif isinstance(value, (np.floating, np.integer)):
                out[f.name] = value.item()
            else:
                out[f.name] = value
        return out

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def csv_header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def csv_row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)]


def evaluate_bounds(
    model: SpectralModel,
    M: int,
    L: int | None = None,
    noise: NoiseSpec | None = None,
    E1=None,
    E2=None,
) -> BoundReport:
    """Evaluate the whole certificate chain on one instance.

    Noise enters either as explicit pencil blocks (E1, E2) or as a
    :class:`NoiseSpec` from which a noise vector is drawn; with neither, the
    instance is treated as noiseless.
    """
    if model.num_modes < 2:
        raise ValueError("bound evaluation needs at least two frequencies")
    M = int(M)
    L = check_split(M, L)
    y = synthesize(model, M)
    pencil = build_pencil(y, L)
    if noise is not None:
        rng = make_rng(noise.seed)
        eps = noise.nu * (rng.standard_normal(M + 1) + 1j * rng.standard_normal(M + 1))
        noise_pencil = build_pencil(eps, L)
        E1, E2 = noise_pencil.H1, noise_pencil.H2
    if E1 is None:
        E1 = np.zeros_like(pencil.H1)
    if E2 is None:
        E2 = np.zeros_like(pencil.H2)
    E1 = np.asarray(E1, dtype=np.complex128)
    E2 = np.asarray(E2, dtype=np.complex128)
    if E1.shape != pencil.H1.shape or E2.shape != pencil.H2.shape:
        raise ValueError("noise blocks must match the pencil blocks in shape")

    s = model.num_modes
    delta = min_separation(model.frequencies)
    rho = delta * M
    mags = np.abs(model.amplitudes)
    x_min, x_max = float(mags.min()), float(mags.max())
    e1_norm = spectral_norm(E1) if np.any(E1) else 0.0
    e2_norm = spectral_norm(E2) if np.any(E2) else 0.0

    sep = separation_ok(delta, M)
    sig_lower, sig_upper = sigma_bounds(model, M, L)
    eta = eta_bound(model, E1, E2, M, L)
    psi_norm = spectral_norm(full_shift_matrix(y, s, L))

    reasons = []
    if not sep.applicable:
        reasons.append("M too small for the separation condition")
    elif not sep.ok:
        reasons.append("separation condition fails")
    if not (math.isfinite(sig_lower) and e1_norm < sig_lower):
        reasons.append("noise norm reaches the sigma_s lower bound")

    return BoundReport(
        M=M,
        L=L,
        s=s,
        delta=delta,
        rho=rho,
        x_min=x_min,
        x_max=x_max,
        e1_norm=e1_norm,
        e2_norm=e2_norm,
        separation_threshold_rl=sep.threshold_rl,
        separation_ok=sep.ok,
        ingham_lower_L=ingham_lower(L - 1, delta),
        ingham_lower_ML=ingham_lower(M - L, delta),
        ingham_upper_L=ingham_upper(L - 1, delta),
        ingham_upper_ML=ingham_upper(M - L, delta),
        sigma_s_lower=sig_lower,
        sigma_1_upper=sig_upper,
        h1_pinv_bound=h1_pinv_bound(delta, x_min, M),
        h1hat_pinv_bound=h1hat_pinv_bound(delta, x_min, M, e1_norm),
        h2eps_norm_bound=h2eps_norm_bound(delta, x_max, M),
        eta=eta.empirical,
        eta_certified=eta.certified,
        eta_asymptotic=eta_asymptotic(rho, x_min, x_max, e1_norm, e2_norm, M),
        elsner_bound=elsner_bound(eta.empirical, M, L) if math.isfinite(eta.empirical) else math.nan,
        psi_norm=psi_norm,
        applicable=not reasons,
        reason="; ".join(reasons),
    )
