"""Seeded random campaigns checking every inequality on many instances.

Failures are collected into the summaries, never raised.  Instance ``i``
of a campaign with seed ``s`` draws from ``default_rng([s, i])``, so any
single instance can be regenerated on its own.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ..bounds import (
    ROUNDING_FLOOR,
    build_context,
    elsner_bound,
    eta_sandwich,
    full_report,
    hermitian_sandwiches,
    sigma_sandwich,
)
from ..config import DEFAULT_THRESHOLDS
from ..errors import ConfigError, NumericError
from ..extraction import harmonic_pairs_pencil, harmonic_pairs_resolvent
from ..numkernel import cond_shifted, eig_dense, normalize, shifted, sin_angle_vec_vec
from .instances import random_complex, random_instance, random_matrix

SIN_LEVELS = (1e-2, 1e-4, 1e-6)
PROFILES = ("general", "normal", "hermitian")
RTOL = 1e-10


@dataclass
class CampaignSummary:
    name: str
    seed: int
    count: int
    checked: int = 0
    violations: List[Dict[str, object]] = field(default_factory=list)
    errors: List[Dict[str, object]] = field(default_factory=list)
    # bound name -> [min, max] of bound / actual over instances with actual > 0
    tightness: Dict[str, List[float]] = field(default_factory=dict)
    inapplicable: Dict[str, int] = field(default_factory=dict)

    @property
    def n_violations(self):
        return len(self.violations)

    def _ratio(self, name, value, actual):
        if actual is None or not actual > 0 or not math.isfinite(value):
            return
        r = value / actual
        lo_hi = self.tightness.setdefault(name, [r, r])
        lo_hi[0] = min(lo_hi[0], r)
        lo_hi[1] = max(lo_hi[1], r)

    def as_dict(self):
        return {
            "name": self.name, "seed": self.seed, "count": self.count,
            "checked": self.checked, "n_violations": self.n_violations,
            "violations": self.violations, "errors": self.errors,
            "tightness": {k: self.tightness[k] for k in sorted(self.tightness)},
            "inapplicable": {k: self.inapplicable[k] for k in sorted(self.inapplicable)},
        }


def _upper_ok(actual, bound, scale=1.0):
    return actual <= bound * (1.0 + RTOL) + ROUNDING_FLOOR * scale


def _lower_ok(actual, bound, scale=1.0):
    return actual >= bound * (1.0 - RTOL) - ROUNDING_FLOOR * scale


def campaign_instance(seed, i, n_max, m_max):
    """Instance ``i`` of :func:`random_campaign`."""
    rng = np.random.default_rng([seed, i])
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, min(m_max, n - 1) + 1))
    return random_instance(rng, n, m, SIN_LEVELS[(i // 3) % 3],
                           decay=float(rng.uniform(0.5, 0.95)),
                           profile=PROFILES[i % 3], near_invariant=bool(i % 2))


def random_campaign(count, n_max=16, m_max=8, seed=0, thresholds=DEFAULT_THRESHOLDS):
    """Full reports on ``count`` random instances.

    Profiles cycle general / normal / Hermitian, ``sin angle(x, K)`` cycles
    through 1e-2, 1e-4, 1e-6 and every other subspace is spanned from other
    eigenvectors (nearly invariant) instead of random directions.
    """
    if not 1 <= m_max < n_max <= 16:
        raise ConfigError(f"need 1 <= m_max < n_max <= 16, got m_max={m_max}, n_max={n_max}")
    out = CampaignSummary("random", seed, count)
    for i in range(count):
        inst = campaign_instance(seed, i, n_max, m_max)
        try:
            rep = full_report(inst.A, inst.tau, inst.lam, inst.x, inst.V, thresholds)
        except NumericError as exc:
            out.errors.append({"index": i, "error": f"{type(exc).__name__}: {exc}"})
            continue
        out.checked += 1
        for b in rep.bounds:
            if not b.applicable:
                out.inapplicable[b.name] = out.inapplicable.get(b.name, 0) + 1
                continue
            if not b.holds(RTOL):
                out.violations.append({"index": i, "bound": b.name, "kind": b.kind,
                                       "value": b.value, "actual": b.actual,
                                       "label": inst.label})
            if b.kind == "upper":
                out._ratio(b.name, b.value, b.actual)
    return out


def sandwich_campaign(count=1000, n_max=12, seed=0):
    """Both sandwiches around ``sin angle(x, (A - tau I) y)`` for random ``y``.

    Half of the ``y`` are random, the rest tilted away from ``x`` by a
    controlled small angle.
    """
    out = CampaignSummary("sandwich", seed, count)
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        n = int(rng.integers(2, n_max + 1))
        inst = random_instance(rng, n, 1, 1e-3, decay=float(rng.uniform(0.5, 0.95)),
                               profile=PROFILES[i % 3])
        x = inst.x
        if i % 2:
            y = random_complex(rng, n)
        else:
            u = random_complex(rng, n)
            u = normalize(u - x * np.vdot(x, u))
            t = 10.0 ** rng.uniform(-7, -1)
            y = math.cos(t) * x + math.sin(t) * u
        y = y * complex(rng.standard_normal(), rng.standard_normal())
        try:
            ctx = build_context(inst.A, inst.tau, inst.lam, x, inst.V)
            actual = sin_angle_vec_vec(x, shifted(inst.A, inst.tau) @ y)
            checks = {"sigma": sigma_sandwich(inst.A, inst.tau, inst.lam, x, y),
                      "eta": eta_sandwich(ctx, y)}
        except NumericError as exc:
            out.errors.append({"index": i, "error": f"{type(exc).__name__}: {exc}"})
            continue
        out.checked += 1
        for fam, (lo, hi) in checks.items():
            if not (_lower_ok(actual, lo) and _upper_ok(actual, hi)):
                out.violations.append({"index": i, "family": fam, "lower": lo,
                                       "upper": hi, "actual": actual})
            out._ratio(f"{fam}_upper", hi, actual)
    return out


def hermitian_sharpness_campaign(count=200, n_max=12, seed=0):
    """Refined Hermitian sandwich against the plain eigenvalue-ratio one (zero shift)."""
    out = CampaignSummary("hermitian_sharpness", seed, count)
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        n = int(rng.integers(2, n_max + 1))
        A = random_matrix(rng, n, "hermitian")
        ed = eig_dense(A)
        k = int(rng.integers(n))
        lam, x = complex(ed.values[k]).real, normalize(ed.vectors[:, k])
        y = x + 10.0 ** rng.uniform(-6, 0) * random_complex(rng, n)
        try:
            (r_lo, r_hi), (q_lo, q_hi) = hermitian_sandwiches(A, lam, x, y)
        except NumericError as exc:
            out.errors.append({"index": i, "error": f"{type(exc).__name__}: {exc}"})
            continue
        out.checked += 1
        actual = sin_angle_vec_vec(x, A @ y)
        ok = (_upper_ok(r_hi, q_hi) and _lower_ok(r_lo, q_lo)
              and _lower_ok(actual, r_lo) and _upper_ok(actual, r_hi))
        if not ok:
            out.violations.append({"index": i, "refined": [r_lo, r_hi], "ratio": [q_lo, q_hi],
                                   "actual": actual})
        out._ratio("refined_upper", r_hi, actual)
        out._ratio("ratio_upper", q_hi, actual)
    return out


def route_equivalence_campaign(count=500, n_max=16, m_max=8, seed=0, rtol=1e-8,
                               kappa_max=1e6, thresholds=DEFAULT_THRESHOLDS):
    """Pencil and resolvent routes must give the same finite harmonic Ritz values.

    Instances with ``kappa(A - tau I) >= kappa_max`` are drawn again (the
    index of the redraw is folded into the seed).
    """
    out = CampaignSummary("route_equivalence", seed, count)
    for i in range(count):
        for attempt in range(20):
            rng = np.random.default_rng([seed, i, attempt])
            n = int(rng.integers(2, n_max + 1))
            m = int(rng.integers(1, min(m_max, n - 1) + 1))
            inst = random_instance(rng, n, m, SIN_LEVELS[i % 3],
                                   decay=float(rng.uniform(0.5, 0.95)), profile=PROFILES[i % 3])
            if cond_shifted(inst.A, inst.tau) < kappa_max:
                break
        else:
            out.errors.append({"index": i, "error": "no instance below kappa_max"})
            continue
        try:
            pen = harmonic_pairs_pencil(inst.A, inst.tau, inst.V, thresholds)
            res = harmonic_pairs_resolvent(inst.A, inst.tau, inst.V, thresholds)
        except NumericError as exc:
            out.errors.append({"index": i, "error": f"{type(exc).__name__}: {exc}"})
            continue
        out.checked += 1
        a = sorted((p.lambda_tilde for p in pen if not p.is_infinite),
                   key=lambda z: (z.real, z.imag))
        b = [p.lambda_tilde for p in res if not p.is_infinite]
        worst = 0.0
        if len(a) != len(b):
            worst = math.inf
        else:
            for z in a:
                j = int(np.argmin([abs(z - w) for w in b]))
                worst = max(worst, abs(z - b.pop(j)) / max(abs(z), 1.0))
        if not worst <= rtol:
            out.violations.append({"index": i, "worst_relative_gap": worst,
                                   "n_finite": [len(a), len(a) if worst < math.inf else -1]})
        out._ratio("route_gap", worst, 1.0)
    return out


def elsner_campaign(count=200, n_max=6, seed=0):
    """Eigenvalue inclusion for random pairs ``(M, M + Delta)``."""
    out = CampaignSummary("elsner", seed, count)
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        n = int(rng.integers(1, n_max + 1))
        M = random_complex(rng, n, n)
        Md = M + 10.0 ** rng.uniform(-8, 0) * random_complex(rng, n, n)
        bound = elsner_bound(M, Md)
        ev, evd = eig_dense(M).values, eig_dense(Md).values
        dist = max(float(np.min(np.abs(evd - v))) for v in ev)
        out.checked += 1
        scale = np.linalg.norm(M, 2) + np.linalg.norm(Md, 2)
        if not _upper_ok(dist, bound, scale):
            out.violations.append({"index": i, "n": n, "bound": bound, "distance": dist})
        out._ratio("elsner", bound, dist)
    return out
