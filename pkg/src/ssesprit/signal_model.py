"""Ground-truth signal model, sampling, noise, and torus geometry.

A line spectrum is a finite sum of complex sinusoids

    y(t) = sum_j x_j * exp(-2 pi i omega_j t)

with frequencies ``omega_j`` on the unit torus [0, 1) and nonzero complex
amplitudes ``x_j``.  Sampling at the integer times t = 0..M yields the
length-(M+1) vector every estimator in this package consumes.  Distances and
errors are often quoted in Rayleigh resolution lengths, 1 RL = 1/M.

Randomness policy: every stochastic operation takes an explicit 64-bit seed
and builds its own PCG64 generator, so results are bit-reproducible and
thread-safe.  Seeds for sub-tasks are derived with :func:`derive_seed`
(splitmix64 mixing), never by sharing generator state.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ModelGenerationError

__all__ = [
    "SpectralModel",
    "SampleVector",
    "NoiseSpec",
    "AmplitudeLaw",
    "synthesize",
    "add_noise",
    "nsr",
    "nu_for_target_nsr",
    "torus_distance",
    "pairwise_torus_distances",
    "hausdorff_distance",
    "min_separation",
    "random_model",
    "derive_seed",
    "make_rng",
]

_MASK64 = (1 << 64) - 1
_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# seeding

def _splitmix64(value: int) -> int:
    """One splitmix64 step (golden-ratio increment plus finalizer)."""
    value = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = value
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(*parts: int) -> int:
    """Fold integer parts into one 64-bit seed, order-sensitively.

    Used to split a master seed into independent per-task seeds, e.g.
    ``derive_seed(master, nsr_index, trial_index)``.
    """
    state = 0
    for part in parts:
        state = _splitmix64(state ^ _splitmix64(int(part) & _MASK64))
    return state


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for the given seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & _MASK64))


# ---------------------------------------------------------------------------
# torus geometry

def torus_distance(a: float, b: float) -> float:
    """Wrap-around distance on [0, 1); always in [0, 0.5]."""
    r = abs(float(a) - float(b)) % 1.0
    return min(r, 1.0 - r)


def pairwise_torus_distances(S, T) -> np.ndarray:
    """Matrix of torus distances, shape (len(S), len(T))."""
    S = np.atleast_1d(np.asarray(S, dtype=float))
    T = np.atleast_1d(np.asarray(T, dtype=float))
    diff = np.abs(S[:, None] - T[None, :]) % 1.0
    return np.minimum(diff, 1.0 - diff)


def hausdorff_distance(S, T) -> float:
    """Two-sided max-min torus distance between frequency sets."""
    S = np.atleast_1d(np.asarray(S, dtype=float))
    T = np.atleast_1d(np.asarray(T, dtype=float))
    if S.size == 0 or T.size == 0:
        raise ValueError("hausdorff_distance requires nonempty sets")
    dist = pairwise_torus_distances(S, T)
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def min_separation(frequencies) -> float:
    """Minimum pairwise torus distance of a frequency set (needs >= 2 points)."""
    freqs = np.atleast_1d(np.asarray(frequencies, dtype=float))
    if freqs.size < 2:
        raise ValueError("min_separation needs at least two frequencies")
    dist = pairwise_torus_distances(freqs, freqs)
    np.fill_diagonal(dist, np.inf)
    return float(dist.min())


# ---------------------------------------------------------------------------
# domain types

def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpectralModel:
    """Frequency set on [0, 1) plus nonzero complex amplitudes.

    Frequencies are reduced modulo 1 at construction and must be pairwise
    distinct under the torus metric.
    """

    frequencies: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        freqs = np.mod(np.asarray(self.frequencies, dtype=float).ravel(), 1.0)
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if freqs.size == 0:
            raise ValueError("model needs at least one frequency")
        if freqs.size != amps.size:
            raise ValueError("frequencies and amplitudes must have equal length")
        if not np.all(np.isfinite(freqs)):
            raise ValueError("frequencies must be finite")
        if np.any(amps == 0):
            raise ValueError("amplitudes must be nonzero")
        if freqs.size >= 2 and min_separation(freqs) <= 0.0:
            raise ValueError("frequencies must be pairwise distinct on the torus")
        object.__setattr__(self, "frequencies", _freeze(freqs))
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @property
    def num_modes(self) -> int:
        return int(self.frequencies.size)

    def to_dict(self) -> dict:
        return {
            "frequencies": [float(w) for w in self.frequencies],
            "amplitudes": [[float(x.real), float(x.imag)] for x in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralModel":
        amps = [complex(re, im) for re, im in data["amplitudes"]]
        return cls(np.asarray(data["frequencies"], dtype=float), np.asarray(amps))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "SpectralModel":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class SampleVector:
    """Complex samples at t = 0..M (length M+1, with M >= 1)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.complex128).ravel()
        if arr.size < 2:
            raise ValueError("sample vector needs length M+1 >= 2")
        object.__setattr__(self, "values", _freeze(arr))

    @property
    def M(self) -> int:
        return int(self.values.size - 1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "re", "im"])
            for k, v in enumerate(self.values):
                writer.writerow([k, repr(float(v.real)), repr(float(v.imag))])

    @classmethod
    def from_csv(cls, path) -> "SampleVector":
        rows = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0] == "k":
                    continue
                rows.append((int(row[0]), float(row[1]), float(row[2])))
        rows.sort()
        return cls(np.asarray([complex(re, im) for _, re, im in rows]))


@dataclass(frozen=True)
class NoiseSpec:
    """Per-component Gaussian noise level (std dev of each real part) plus seed."""

    nu: float
    seed: int = 0

    def __post_init__(self):
        if not (float(self.nu) >= 0.0):
            raise ValueError("nu must be nonnegative")
        object.__setattr__(self, "nu", float(self.nu))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class AmplitudeLaw:
    """How random amplitudes are drawn.

    ``unit-phase``: unit modulus with uniform random phase (dynamic range 1).
    ``real-range``: real amplitudes with max/min magnitude pinned exactly to
    ``dynamic_range``; all positive unless ``signed``.
    """

    kind: str = "unit-phase"
    dynamic_range: float = 1.0
    signed: bool = False

    def __post_init__(self):
        if self.kind not in ("unit-phase", "real-range"):
            raise ValueError(f"unknown amplitude law {self.kind!r}")
        if not (float(self.dynamic_range) >= 1.0):
            raise ValueError("dynamic_range must be >= 1")
        object.__setattr__(self, "dynamic_range", float(self.dynamic_range))
        object.__setattr__(self, "signed", bool(self.signed))

    @classmethod
    def unit_phase(cls) -> "AmplitudeLaw":
        return cls(kind="unit-phase")

    @classmethod
    def real_range(cls, dynamic_range: float, signed: bool = False) -> "AmplitudeLaw":
        return cls(kind="real-range", dynamic_range=dynamic_range, signed=signed)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dynamic_range": self.dynamic_range,
            "signed": self.signed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AmplitudeLaw":
        return cls(
            kind=data.get("kind", "unit-phase"),
            dynamic_range=data.get("dynamic_range", 1.0),
            signed=data.get("signed", False),
        )


# ---------------------------------------------------------------------------
# sampling and noise

def synthesize(model: SpectralModel, M: int) -> SampleVector:
    """Clean samples y_k = sum_j x_j exp(-2 pi i omega_j k), k = 0..M."""
    M = int(M)
    if M < 1:
        raise ValueError("M must be >= 1")
    k = np.arange(M + 1)
    phases = np.exp(-2j * np.pi * np.outer(k, model.frequencies))
    return SampleVector(phases @ model.amplitudes)


def add_noise(y, spec: NoiseSpec) -> SampleVector:
    """Add i.i.d. complex Gaussian noise, nu per real component, seeded."""
    values = np.asarray(getattr(y, "values", y), dtype=np.complex128).ravel()
    rng = make_rng(spec.seed)
    eps = spec.nu * (
        rng.standard_normal(values.size) + 1j * rng.standard_normal(values.size)
    )
    return SampleVector(values + eps)


def nsr(y, spec: NoiseSpec) -> float:
    """Noise-to-signal ratio nu * sqrt(2(M+1)) / ||y||_2."""
    values = np.asarray(getattr(y, "values", y), dtype=np.complex128).ravel()
    norm = float(np.linalg.norm(values))
    if norm == 0.0:
        raise ValueError("NSR is undefined for a zero-norm signal")
    return spec.nu * math.sqrt(2.0 * values.size) / norm


def nu_for_target_nsr(y, target_nsr: float) -> float:
    """Noise level nu that realizes the requested NSR for these samples."""
    if target_nsr < 0:
        raise ValueError("target NSR must be nonnegative")
    values = np.asarray(getattr(y, "values", y), dtype=np.complex128).ravel()
    norm = float(np.linalg.norm(values))
    if norm == 0.0:
        raise ValueError("NSR is undefined for a zero-norm signal")
    return float(target_nsr) * norm / math.sqrt(2.0 * values.size)


# ---------------------------------------------------------------------------
# random instances

def _parse_band(min_sep_rl) -> tuple[float, float]:
    if np.isscalar(min_sep_rl):
        low, high = float(min_sep_rl), math.inf
    else:
        low, high = (float(v) for v in min_sep_rl)
    if low < 0 or high < low:
        raise ValueError(f"invalid separation band ({low}, {high})")
    return low, high


def _draw_amplitudes(law: AmplitudeLaw, s: int, rng: np.random.Generator) -> np.ndarray:
    if law.kind == "unit-phase":
        return np.exp(2j * np.pi * rng.uniform(size=s))
    ratio = law.dynamic_range
    if s == 1:
        if ratio != 1.0:
            raise ValueError("dynamic range != 1 needs at least two amplitudes")
        mags = np.ones(1)
    elif ratio == 1.0:
        mags = np.ones(s)
    else:
        u = rng.uniform(size=s)
        span = u.max() - u.min()
        if span == 0.0:  # probability zero, but keep the affine map defined
            u = np.linspace(0.0, 1.0, s)
            span = 1.0
        # magnitudes spread on a log scale between 1 and the ratio, most mass
        # near the weak end; endpoint pinning makes the realized range exact
        mags = ratio ** (((u - u.min()) / span) ** 2)
    signs = rng.choice([-1.0, 1.0], size=s) if law.signed else np.ones(s)
    return (signs * mags).astype(np.complex128)


def _scattered_frequencies(s: int, d_min: float, rng: np.random.Generator,
                           max_draws: int) -> np.ndarray:
    """Uniform draws, rejecting candidates within d_min of an accepted one."""
    draws = 0
    freqs: list[float] = []
    while len(freqs) < s:
        if draws >= max_draws:
            raise ModelGenerationError(
                f"no admissible frequency configuration within {max_draws} draws"
            )
        draws += 1
        cand = float(rng.uniform())
        if all(torus_distance(cand, w) >= d_min for w in freqs):
            freqs.append(cand)
    return np.asarray(freqs)


def _banded_frequencies(s: int, d_min: float, d_max: float,
                        rng: np.random.Generator, max_draws: int) -> np.ndarray:
    """Random chain: consecutive gaps uniform in [d_min, d_max], random start.

    The leftover wrap-around arc must itself stay at least d_min so that all
    pairwise distances respect the floor; configurations that wrap too far
    are redrawn, each attempt costing s draws from the budget.
    """
    draws = 0
    while True:
        if draws >= max_draws:
            raise ModelGenerationError(
                f"no admissible frequency configuration within {max_draws} draws"
            )
        draws += s
        gaps = rng.uniform(d_min, d_max, size=s - 1)
        start = float(rng.uniform())
        if float(gaps.sum()) <= 1.0 - d_min:
            return np.mod(start + np.concatenate([[0.0], np.cumsum(gaps)]), 1.0)


def random_model(
    s: int,
    min_sep_rl,
    M: int,
    amplitude_law: AmplitudeLaw | dict | None = None,
    seed: int = 0,
    *,
    max_draws: int = 10_000,
) -> SpectralModel:
    """Random instance with all pairwise separations at least ``low`` RL.

    ``min_sep_rl`` is either a scalar floor or a band ``(low, high)`` in RL
    units (1 RL = 1/M).  A scalar draws frequencies uniformly, rejecting any
    candidate closer than ``low`` RL to an accepted one.  A finite band draws
    a random chain whose consecutive gaps are uniform in [low, high] RL (the
    realized minimum separation then falls inside the band), placed at a
    uniform random offset on the torus.  Either way sampling is capped at
    ``max_draws`` uniform draws; exhausting the budget raises
    ModelGenerationError.
    """
    s = int(s)
    M = int(M)
    if s < 1:
        raise ValueError("s must be >= 1")
    if M < 1:
        raise ValueError("M must be >= 1")
    low, high = _parse_band(min_sep_rl)
    if amplitude_law is None:
        amplitude_law = AmplitudeLaw.unit_phase()
    elif isinstance(amplitude_law, dict):
        amplitude_law = AmplitudeLaw.from_dict(amplitude_law)
    d_min = low / M
    d_max = high / M
    if s * d_min >= 1.0:
        raise ValueError(
            f"infeasible separation: s*min_sep = {s * d_min:.3g} cycles does not fit on the torus"
        )

    rng = make_rng(seed)
    if s == 1:
        freqs = np.asarray([float(rng.uniform())])
    elif math.isinf(d_max):
        freqs = _scattered_frequencies(s, d_min, rng, max_draws)
    else:
        freqs = _banded_frequencies(s, d_min, d_max, rng, max_draws)
    amps = _draw_amplitudes(amplitude_law, s, rng)
    return SpectralModel(np.sort(freqs), amps)
