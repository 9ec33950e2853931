"""The 3x3 worked example: exact and perturbed search subspaces."""
from ..bounds import BoundReport, full_report
from ..config import DEFAULT_THRESHOLDS
from ..errors import ConfigError
from ..extraction import form_harmonic_pencil
from .instances import EXAMPLE1_TAU, InstanceSpec, materialize


def example1(epsilon=None, tau=EXAMPLE1_TAU, thresholds=DEFAULT_THRESHOLDS) -> BoundReport:
    """Full report for ``A = [[2,2,3],[0,1,4],[0,6,6]]``, target eigenpair ``(2, e1)``.

    ``epsilon`` absent (or 0) uses ``K = span{e1, e2}``; otherwise the first
    basis vector gets ``epsilon`` in its third entry.  The instance block of
    the report also carries ``B`` and ``C``.
    """
    if epsilon is not None and not epsilon >= 0:
        raise ConfigError(f"epsilon must be >= 0, got {epsilon!r}")
    spec = InstanceSpec.example1(epsilon, tau)
    inst = materialize(spec)
    B, C = form_harmonic_pencil(inst.A, inst.tau, inst.V)
    extra = {"label": inst.label, "epsilon": float(epsilon or 0.0),
             "B": B.tolist(), "C": C.tolist()}
    return full_report(inst.A, inst.tau, inst.lam, inst.x, inst.V, thresholds, instance=extra)
