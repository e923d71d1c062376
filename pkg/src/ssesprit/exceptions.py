"""Exception types raised by the estimators and generators."""

__all__ = [
    "EstimationError",
    "SparsityDetectionError",
    "RankDeficiencyError",
    "PeakPickingError",
    "ModelGenerationError",
]


class EstimationError(ValueError):
    """Base class for failures inside an estimation pipeline.

    Monte Carlo harnesses catch this (together with linear-algebra
    convergence errors) and record the trial as failed instead of aborting.
    """


class SparsityDetectionError(EstimationError):
    """No acceptable spectral gap was found; the caller must supply the
    number of modes explicitly."""


class RankDeficiencyError(EstimationError):
    """A matrix required to have full (or given) rank collapsed below the
    relative cutoff."""


class PeakPickingError(EstimationError):
    """The pseudospectrum exposed fewer local maxima than modes requested."""


class ModelGenerationError(RuntimeError):
    """Rejection sampling exhausted its draw budget before producing a
    frequency configuration with the requested separation."""
