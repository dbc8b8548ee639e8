from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    rank:     pivot / singular-value cutoff for rank decisions, relative to matrix scale
    eig:      kernel cutoff when deciding eigenspace dimensions, relative to matrix scale
    residual: relative bound for built-in verification checks
    cluster:  base for the multiplicity-aware eigenvalue clustering radius
    """

    rank: float = 1e-9
    eig: float = 1e-6
    residual: float = 1e-6
    cluster: float = 1e-8

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT = Tolerances()
