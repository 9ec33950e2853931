"""Rayleigh-Ritz and harmonic Rayleigh-Ritz extraction from a search subspace.

Two harmonic routes are provided.  The pencil route never factors
``A - tau I`` and copes with a singular ``B``; the resolvent route forms
``D = W^H (A - tau I)^{-1} W`` explicitly and is the cross-check.
"""
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .config import DEFAULT_THRESHOLDS
from .errors import NoFinitePair
from .numkernel import (
    PencilEigenvalue,
    as_basis,
    as_matrix,
    eig_dense,
    eig_pencil,
    fix_phase,
    orthonormalize,
    shifted,
    singular_values,
    solve_shifted,
    svd,
)


@dataclass(frozen=True)
class HarmonicRitzPair:
    theta: PencilEigenvalue
    lambda_tilde: complex
    q: np.ndarray
    x_tilde: np.ndarray
    residual: Optional[float]
    petrov_defect: Optional[float]

    @property
    def is_infinite(self):
        return self.theta.is_infinite


@dataclass(frozen=True)
class RitzPair:
    lambda_hat: complex
    p: np.ndarray
    x_hat: np.ndarray
    galerkin_defect: float
    residual: float


@dataclass(frozen=True)
class RefinedVector:
    lambda_ref: complex
    u: np.ndarray
    residual: float


def form_harmonic_pencil(A, tau, V):
    """``B = V^H (A - tau I)^H V`` and ``C = V^H (A - tau I)^H (A - tau I) V``.

    ``C`` is symmetrized, ``B`` is returned as formed.
    """
    Q = as_basis(V).matrix
    S = shifted(A, tau)
    SV = S @ Q
    B = Q.conj().T @ S.conj().T @ Q
    C = SV.conj().T @ SV
    C = 0.5 * (C + C.conj().T)
    return B, C


def _harmonic_pair(A, tau, Q, theta, c, W=None):
    """Assemble a pair from a shifted value and a coefficient vector in K."""
    c = c / np.linalg.norm(c)
    x = Q @ c
    nx = np.linalg.norm(x)
    x, c = x / nx, c / nx
    x, f = fix_phase(x)
    c = c * f
    if theta.is_infinite:
        return HarmonicRitzPair(theta, complex(math.inf, 0.0), c, x, None, None)
    lam = complex(tau) + theta.value
    r = A @ x - lam * x
    if W is None:
        W = shifted(A, tau) @ Q
    return HarmonicRitzPair(theta, lam, c, x, float(np.linalg.norm(r)),
                            float(np.linalg.norm(W.conj().T @ r)))


def harmonic_pairs_pencil(A, tau, V, thresholds=DEFAULT_THRESHOLDS) -> List[HarmonicRitzPair]:
    """Harmonic Ritz pairs by a QZ solve of ``C q = (lambda~ - tau) B q``."""
    A = as_matrix(A, "A")
    Q = as_basis(V).matrix
    B, C = form_harmonic_pencil(A, tau, Q)
    W = shifted(A, tau) @ Q
    return [_harmonic_pair(A, tau, Q, theta, q, W)
            for theta, q in eig_pencil(C, B, thresholds)]


def harmonic_pairs_resolvent(A, tau, V, thresholds=DEFAULT_THRESHOLDS) -> List[HarmonicRitzPair]:
    """Harmonic Ritz pairs as Ritz pairs of ``(A - tau I)^{-1}`` on ``(A - tau I) K``.

    Eigenvalues ``mu`` of ``D = W^H (A - tau I)^{-1} W`` give
    ``lambda~ = tau + 1/mu``; ``mu`` numerically zero is an infinite value.
    Coefficients are pulled back to K through ``(A - tau I) V c = W q_D``.
    """
    A = as_matrix(A, "A")
    Q = as_basis(V).matrix
    SV = shifted(A, tau) @ Q
    W = orthonormalize(SV).matrix
    D = W.conj().T @ solve_shifted(A, tau, W)
    s = singular_values(shifted(A, tau))
    inv_norm = 1.0 / s[-1]
    ed = eig_dense(D)
    pairs = []
    for mu, qd in zip(ed.values, ed.vectors.T):
        mu = complex(mu)
        if abs(mu) > inv_norm * (1.0 + 1e-10):
            raise AssertionError(f"|mu| = {abs(mu):.6e} exceeds ||(A - tau I)^-1|| = {inv_norm:.6e}")
        c, *_ = np.linalg.lstsq(SV, W @ qd, rcond=None)
        if abs(mu) <= thresholds.infinite * inv_norm:
            theta = PencilEigenvalue(1.0 + 0.0j, mu, True)
        else:
            theta = PencilEigenvalue(1.0 + 0.0j, mu, False)
        pairs.append(_harmonic_pair(A, tau, Q, theta, c, SV))
    return pairs


def rayleigh_ritz(A, V) -> List[RitzPair]:
    """Ritz pairs from ``V^H A V p = lambda^ p``."""
    A = as_matrix(A, "A")
    Q = as_basis(V).matrix
    H = Q.conj().T @ A @ Q
    ed = eig_dense(H)
    out = []
    for lam, p in zip(ed.values, ed.vectors.T):
        x = Q @ p
        nx = np.linalg.norm(x)
        x, p = x / nx, p / nx
        x, f = fix_phase(x)
        p = p * f
        r = A @ x - lam * x
        out.append(RitzPair(complex(lam), p, x, float(np.linalg.norm(Q.conj().T @ r)),
                            float(np.linalg.norm(r))))
    return out


def refined_harmonic_vector(A, lambda_tilde, V) -> RefinedVector:
    """Unit vector of K minimizing ``||(A - lambda~ I) u||``."""
    lam = complex(lambda_tilde)
    if not np.isfinite(lam):
        raise ValueError("refined vector needs a finite harmonic Ritz value")
    A = as_matrix(A, "A")
    Q = as_basis(V).matrix
    _, s, Wr = svd(shifted(A, lam) @ Q)
    u = Q @ Wr[:, -1]
    u, _ = fix_phase(u / np.linalg.norm(u))
    return RefinedVector(lam, u, float(s[-1]))


def select_nearest(pairs, tau, rtol=1e-12) -> HarmonicRitzPair:
    """Finite pair with the smallest ``|lambda~ - tau|``.

    Distances within ``rtol`` of the minimum count as ties; ties go to the
    smaller residual, then to the lexicographically smaller
    ``(Re lambda~, Im lambda~)``.
    """
    finite = [p for p in pairs if not p.is_infinite]
    if not finite:
        raise NoFinitePair("all harmonic Ritz values are infinite")
    tau = complex(tau)
    dist = [abs(p.lambda_tilde - tau) for p in finite]
    dmin = min(dist)
    tied = [p for p, d in zip(finite, dist) if d <= dmin * (1.0 + rtol) + 1e-300]
    return min(tied, key=lambda p: (p.residual, p.lambda_tilde.real, p.lambda_tilde.imag))


def nearest_to(pairs, lam):
    """Finite pair with ``lambda~`` closest to ``lam`` (the best-matching pair)."""
    finite = [p for p in pairs if not p.is_infinite]
    if not finite:
        raise NoFinitePair("all harmonic Ritz values are infinite")
    return min(finite, key=lambda p: abs(p.lambda_tilde - complex(lam)))


__all__ = [
    "HarmonicRitzPair", "RitzPair", "RefinedVector", "form_harmonic_pencil",
    "harmonic_pairs_pencil", "harmonic_pairs_resolvent", "rayleigh_ritz",
    "refined_harmonic_vector", "select_nearest", "nearest_to",
]
