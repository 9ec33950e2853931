"""Numerical thresholds shared by every layer.

All thresholds are relative.  Reports embed the instance they were
computed with, so a run can be reproduced from its output alone.
"""
from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class Thresholds:
    # |beta| <= infinite * max(|alpha|, |beta|) marks an infinite pencil eigenvalue
    infinite: float = 1e-12
    # sigma_min(B) <= b_singular * sigma_max(B) means B is treated as singular
    b_singular: float = 1e-14
    # ||A^H A - A A^H|| <= normality * ||A||^2 selects the normal-matrix formulas
    normality: float = 1e-12
    # rank test for orthonormalize
    rank: float = 1e-12
    # conditions (i)-(iv) of the convergence checklist
    subspace_eps: float = 1e-3
    b_condition: float = 1e4
    sep_relative: float = 1e-3
    uniform_separation: float = 10.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (v > 0):
                raise ValueError(f"threshold {f.name} must be positive, got {v!r}")

    def as_dict(self):
        return asdict(self)

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_THRESHOLDS = Thresholds()
