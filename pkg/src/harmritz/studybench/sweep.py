"""Shift sweeps over a rectangle of the complex plane."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..bounds import full_report
from ..config import DEFAULT_THRESHOLDS
from ..errors import ConfigError, EmptyGrid, NumericError
from ..numkernel import eig_dense
from .instances import InstanceSpec, materialize

# points this close to an eigenvalue (relative to max(1, |lambda|)) are skipped
EIGENVALUE_TOL = 1e-12


@dataclass(frozen=True)
class Grid:
    re0: float
    re1: float
    n_re: int
    im0: float
    im1: float
    n_im: int

    def __post_init__(self):
        if self.n_re < 0 or self.n_im < 0:
            raise ConfigError("grid counts must be non-negative")

    @staticmethod
    def _axis(a, b, k):
        if k == 1:
            return np.array([float(a)])
        return np.linspace(float(a), float(b), k)

    def points(self):
        """Row-major: real part outer, imaginary part inner."""
        return [complex(r, i) for r in self._axis(self.re0, self.re1, self.n_re)
                for i in self._axis(self.im0, self.im1, self.n_im)]

    @classmethod
    def parse(cls, text):
        """``re0:re1:n,im0:im1:n``; a bare ``re0:re1:n`` means a real grid."""
        try:
            parts = text.split(",")
            if len(parts) not in (1, 2):
                raise ValueError
            re0, re1, nre = parts[0].split(":")
            if len(parts) == 2:
                im0, im1, nim = parts[1].split(":")
            else:
                im0, im1, nim = "0", "0", "1"
            return cls(float(re0), float(re1), int(nre), float(im0), float(im1), int(nim))
        except ValueError:
            raise ConfigError(f"bad grid {text!r}; expected re0:re1:n,im0:im1:n") from None


# contains tau = 1, where B is nearly singular while tau stays far from the spectrum
EXAMPLE1_GRID = Grid(-3.0, 10.0, 27, -2.0, 2.0, 9)


def default_grid(A, n_re=21, n_im=9):
    """Rectangle bracketing the spectrum of ``A`` with a 30% margin."""
    vals = eig_dense(A).values
    lo_r, hi_r = float(vals.real.min()), float(vals.real.max())
    lo_i, hi_i = float(vals.imag.min()), float(vals.imag.max())
    width = max(hi_r - lo_r, hi_i - lo_i, 1.0)
    pad = 0.3 * width
    return Grid(lo_r - pad, hi_r + pad, n_re, lo_i - pad, hi_i + pad, n_im)


@dataclass
class SweepRecord:
    tau: complex
    skipped: bool
    reason: str = ""
    uniform_separation_ratio: Optional[float] = None
    sin_x_xtilde: Optional[float] = None
    abs_lambda_err: Optional[float] = None
    sigma_min_B: Optional[float] = None
    sigma_max_B: Optional[float] = None
    lam: Optional[complex] = None
    violations: int = 0
    # bound name -> value, None when not applicable
    bounds: Dict[str, Optional[float]] = field(default_factory=dict)


def tau_sweep(spec: InstanceSpec, grid: Grid, thresholds=DEFAULT_THRESHOLDS) -> List[SweepRecord]:
    """One full report per grid point, in grid order."""
    pts = grid.points()
    if not pts:
        raise EmptyGrid("sweep grid has no points")
    base = materialize(spec)
    spectrum = eig_dense(base.A).values
    records = []
    for tau in pts:
        near = np.abs(spectrum - tau) <= EIGENVALUE_TOL * np.maximum(1.0, np.abs(spectrum))
        if near.any():
            records.append(SweepRecord(tau, True, "tau is an eigenvalue of A"))
            continue
        try:
            inst = materialize(spec, tau=tau)
            rep = full_report(inst.A, tau, inst.lam, inst.x, inst.V, thresholds)
        except NumericError as exc:
            records.append(SweepRecord(tau, True, f"{type(exc).__name__}: {exc}"))
            continue
        a = rep.actuals
        records.append(SweepRecord(
            tau, False, "",
            uniform_separation_ratio=rep.uniform_separation_ratio,
            sin_x_xtilde=a.get("sin_x_xtilde"),
            abs_lambda_err=a.get("abs_lambda_err"),
            sigma_min_B=a["sigma_min_B"],
            sigma_max_B=a["sigma_max_B"],
            lam=inst.lam,
            violations=len(rep.violations()),
            bounds={b.name: (b.value if b.applicable else None) for b in rep.bounds},
        ))
    return records
