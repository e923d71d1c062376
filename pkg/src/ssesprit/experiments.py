"""Monte Carlo harness: NSR sweeps, the two canonical benchmark setups,
and timing comparisons.

Each trial draws a fresh random model, synthesizes clean samples, scales the
noise to hit the target NSR, runs the requested estimators on the same noisy
snapshot, and records the Hausdorff error in RL units (M times the torus
Hausdorff distance).  Trial seeds derive from (master seed, NSR index, trial
index) via splitmix mixing, so any single trial reproduces in isolation.

Estimator failures never abort a sweep: the trial is recorded with infinite
Hausdorff error and counted in the aggregate ``failures`` column, and the
mean Hausdorff error averages the finite trials only.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .esprit import EstimationResult, ss_esprit
from .exceptions import EstimationError
from .music import music_estimate
from .signal_model import (
    AmplitudeLaw,
    NoiseSpec,
    SpectralModel,
    add_noise,
    derive_seed,
    hausdorff_distance,
    nu_for_target_nsr,
    random_model,
    synthesize,
)
from . import svgplot

__all__ = [
    "ExperimentConfig",
    "TrialRecord",
    "MethodAggregate",
    "SweepResult",
    "run_sweep",
    "Figure2Result",
    "run_figure2",
    "timing_comparison",
    "fig1_config",
]

KNOWN_METHODS = ("esprit", "music")


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep definition: instance family, NSR grid, and bookkeeping."""

    M: int
    s: int
    separation_band_rl: tuple[float, float]
    amplitude_law: AmplitudeLaw = field(default_factory=AmplitudeLaw.unit_phase)
    nsr_grid: tuple[float, ...] = (0.0,)
    trials: int = 100
    methods: tuple[str, ...] = ("esprit",)
    success_threshold_rl: float = 1.0
    seed: int = 0
    L_override: int | None = None
    grid_density: int = 20

    def __post_init__(self):
        object.__setattr__(self, "separation_band_rl",
                           tuple(float(v) for v in self.separation_band_rl))
        object.__setattr__(self, "nsr_grid", tuple(float(v) for v in self.nsr_grid))
        object.__setattr__(self, "methods", tuple(self.methods))
        law = self.amplitude_law
        if isinstance(law, dict):
            object.__setattr__(self, "amplitude_law", AmplitudeLaw.from_dict(law))
        if self.M < 1 or self.s < 1:
            raise ValueError("M and s must be >= 1")
        low, high = self.separation_band_rl
        if low > high:
            raise ValueError("separation band must satisfy low <= high")
        if not self.nsr_grid or any(v < 0 for v in self.nsr_grid):
            raise ValueError("nsr_grid must be nonempty with nonnegative entries")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.methods or any(m not in KNOWN_METHODS for m in self.methods):
            raise ValueError(f"methods must be a nonempty subset of {KNOWN_METHODS}")
        if self.success_threshold_rl <= 0:
            raise ValueError("success_threshold_rl must be positive")

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "s": self.s,
            "separation_band_rl": list(self.separation_band_rl),
            "amplitude_law": self.amplitude_law.to_dict(),
            "nsr_grid": list(self.nsr_grid),
            "trials": self.trials,
            "methods": list(self.methods),
            "success_threshold_rl": self.success_threshold_rl,
            "seed": self.seed,
            "L_override": self.L_override,
            "grid_density": self.grid_density,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f: data[f] for f in (
            "M", "s", "separation_band_rl", "amplitude_law", "nsr_grid", "trials",
            "methods", "success_threshold_rl", "seed", "L_override", "grid_density",
        ) if f in data}
        if "amplitude_law" in known:
            known["amplitude_law"] = AmplitudeLaw.from_dict(known["amplitude_law"])
        return cls(**known)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


def fig1_config(seed: int = 0, trials: int = 100,
                methods: tuple[str, ...] = ("esprit",)) -> ExperimentConfig:
    """Phase-transition benchmark: M=100, 20 unit-strength random-phase modes
    separated by 2 to 3 RL, NSR swept 0 to 0.6 in steps of 0.05."""
    return ExperimentConfig(
        M=100,
        s=20,
        separation_band_rl=(2.0, 3.0),
        amplitude_law=AmplitudeLaw.unit_phase(),
        nsr_grid=tuple(round(0.05 * i, 2) for i in range(13)),
        trials=trials,
        methods=methods,
        success_threshold_rl=1.0,
        seed=seed,
    )


@dataclass(frozen=True)
class TrialRecord:
    method: str
    nsr_index: int
    nsr: float
    trial: int
    seed: int
    hausdorff_rl: float
    success: bool
    runtime_ms: float
    error: str | None = None


@dataclass(frozen=True)
class MethodAggregate:
    method: str
    nsr: float
    success_rate: float
    mean_hausdorff_rl: float
    failures: int


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    records: tuple[TrialRecord, ...]
    aggregates: tuple[MethodAggregate, ...]

    def records_for(self, method: str, nsr: float | None = None) -> list[TrialRecord]:
        return [
            r for r in self.records
            if r.method == method and (nsr is None or r.nsr == nsr)
        ]

    def aggregate_for(self, method: str, nsr: float) -> MethodAggregate:
        for agg in self.aggregates:
            if agg.method == method and agg.nsr == nsr:
                return agg
        raise KeyError(f"no aggregate for ({method}, {nsr})")

    def to_csv(self) -> str:
        """Per-trial rows followed by aggregate rows (runtime excluded from
        any determinism comparison; it is wall clock)."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["method", "nsr", "trial", "seed", "hausdorff_rl",
                         "success", "runtime_ms"])
        for r in self.records:
            writer.writerow([
                r.method, repr(r.nsr), r.trial, r.seed, repr(r.hausdorff_rl),
                int(r.success), f"{r.runtime_ms:.3f}",
            ])
        writer.writerow(["method", "nsr", "success_rate", "mean_hausdorff_rl",
                         "failures"])
        for a in self.aggregates:
            writer.writerow([
                a.method, repr(a.nsr), repr(a.success_rate),
                repr(a.mean_hausdorff_rl), a.failures,
            ])
        return buf.getvalue()

    def save_csv(self, path) -> None:
        Path(path).write_text(self.to_csv())

    def success_chart(self) -> str:
        series = [
            (m, list(self.config.nsr_grid),
             [self.aggregate_for(m, v).success_rate for v in self.config.nsr_grid])
            for m in self.config.methods
        ]
        return svgplot.line_chart(series, title="Success rate vs NSR",
                                  xlabel="NSR", ylabel="success rate",
                                  ylim=(-0.02, 1.05))

    def hausdorff_chart(self) -> str:
        series = [
            (m, list(self.config.nsr_grid),
             [self.aggregate_for(m, v).mean_hausdorff_rl for v in self.config.nsr_grid])
            for m in self.config.methods
        ]
        return svgplot.line_chart(series, title="Mean Hausdorff error vs NSR",
                                  xlabel="NSR", ylabel="mean error (RL)")


def _estimate(method: str, y_eps, config: ExperimentConfig) -> EstimationResult:
    if method == "esprit":
        return ss_esprit(y_eps, s=config.s, L=config.L_override)
    if method == "music":
        return music_estimate(y_eps, s=config.s, L=config.L_override,
                              grid_density=config.grid_density)
    raise ValueError(f"unknown method {method!r}")


def _run_trial(method, y_eps, model, config) -> tuple[float, float, str | None]:
    start = time.perf_counter()
    try:
        result = _estimate(method, y_eps, config)
        error = None
        mu_rl = config.M * hausdorff_distance(result.frequencies, model.frequencies)
    except (EstimationError, np.linalg.LinAlgError) as exc:
        error = type(exc).__name__
        mu_rl = math.inf
    runtime_ms = (time.perf_counter() - start) * 1e3
    return mu_rl, runtime_ms, error


def run_sweep(config: ExperimentConfig) -> SweepResult:
    """Run the full (method, NSR, trial) grid; deterministic given the seed."""
    records: list[TrialRecord] = []
    for i_nsr, target in enumerate(config.nsr_grid):
        for trial in range(config.trials):
            trial_seed = derive_seed(config.seed, i_nsr, trial)
            model = random_model(
                config.s, config.separation_band_rl, config.M,
                config.amplitude_law, seed=derive_seed(trial_seed, 1),
            )
            y = synthesize(model, config.M)
            nu = nu_for_target_nsr(y, target)
            y_eps = add_noise(y, NoiseSpec(nu=nu, seed=derive_seed(trial_seed, 2)))
            for method in config.methods:
                mu_rl, runtime_ms, error = _run_trial(method, y_eps, model, config)
                records.append(TrialRecord(
                    method=method, nsr_index=i_nsr, nsr=target, trial=trial,
                    seed=trial_seed, hausdorff_rl=mu_rl,
                    success=mu_rl <= config.success_threshold_rl,
                    runtime_ms=runtime_ms, error=error,
                ))
    records.sort(key=lambda r: (r.method, r.nsr_index, r.trial))
    aggregates = _aggregate(config, records)
    return SweepResult(config=config, records=tuple(records),
                       aggregates=tuple(aggregates))


def _aggregate(config: ExperimentConfig,
               records: list[TrialRecord]) -> list[MethodAggregate]:
    out = []
    for method in config.methods:
        for target in config.nsr_grid:
            group = [r for r in records if r.method == method and r.nsr == target]
            finite = [r.hausdorff_rl for r in group if math.isfinite(r.hausdorff_rl)]
            out.append(MethodAggregate(
                method=method,
                nsr=target,
                success_rate=sum(r.success for r in group) / len(group),
                mean_hausdorff_rl=float(np.mean(finite)) if finite else math.nan,
                failures=sum(1 for r in group if not math.isfinite(r.hausdorff_rl)),
            ))
    return out


@dataclass(frozen=True)
class Figure2Result:
    """Both estimators on one noisy instance of the reconstruction benchmark."""

    model: SpectralModel
    noisy: np.ndarray
    nsr: float
    seed: int
    results: dict
    hausdorff_rl: dict

    def to_dict(self) -> dict:
        return {
            "nsr": self.nsr,
            "seed": self.seed,
            "model": self.model.to_dict(),
            "hausdorff_rl": {k: float(v) for k, v in self.hausdorff_rl.items()},
            "results": {k: v.to_dict() for k, v in self.results.items()},
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    def stem_chart(self) -> str:
        groups = [("true", self.model.frequencies, np.abs(self.model.amplitudes))]
        for name, result in self.results.items():
            groups.append((name, result.frequencies, np.abs(result.amplitudes)))
        return svgplot.stem_chart(groups, title="True vs estimated spectra",
                                  xlabel="frequency", ylabel="|amplitude|")


def run_figure2(
    seed: int = 0,
    *,
    M: int = 100,
    s: int = 15,
    separation_band_rl: tuple[float, float] = (3.0, 4.0),
    dynamic_range: float = 10.0,
    nsr_target: float = 0.10,
    L: int | None = None,
    grid_density: int = 20,
    methods: tuple[str, ...] = ("esprit", "music"),
) -> Figure2Result:
    """Reconstruction benchmark: real positive amplitudes with the given
    dynamic range, 3 to 4 RL separation, one noisy snapshot, both methods."""
    law = AmplitudeLaw.real_range(dynamic_range)
    model = random_model(s, separation_band_rl, M, law, seed=derive_seed(seed, 1))
    y = synthesize(model, M)
    nu = nu_for_target_nsr(y, nsr_target)
    y_eps = add_noise(y, NoiseSpec(nu=nu, seed=derive_seed(seed, 2)))
    config = ExperimentConfig(
        M=M, s=s, separation_band_rl=separation_band_rl, amplitude_law=law,
        nsr_grid=(nsr_target,), trials=1, methods=methods,
        L_override=L, grid_density=grid_density, seed=seed,
    )
    results = {}
    errors = {}
    for method in methods:
        est = _estimate(method, y_eps, config)
        results[method] = est
        errors[method] = M * hausdorff_distance(est.frequencies, model.frequencies)
    return Figure2Result(model=model, noisy=y_eps.values, nsr=nsr_target,
                         seed=seed, results=results, hausdorff_rl=errors)


def timing_comparison(config: ExperimentConfig) -> dict:
    """Mean per-trial estimation wall time (ms) per method, same instances."""
    result = run_sweep(config)
    out = {}
    for method in config.methods:
        times = [r.runtime_ms for r in result.records if r.method == method]
        out[method] = float(np.mean(times))
    return out
