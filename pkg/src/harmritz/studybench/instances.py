"""Problem instances: the 3x3 worked example, user arrays, seeded random cases."""
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..errors import ConfigError
from ..numkernel import as_matrix, eig_dense, normalize, orthonormalize

EXAMPLE1_A = np.array([[2, 2, 3], [0, 1, 4], [0, 6, 6]], dtype=np.complex128)
EXAMPLE1_TAU = 1.0
EXAMPLE1_LAMBDA = 2.0
EXAMPLE1_X = np.array([1, 0, 0], dtype=np.complex128)


def example1_subspace(epsilon=None):
    """Raw (not yet orthonormalized) basis ``[e1, e2]``, with ``epsilon`` in entry (3, 1)."""
    V = np.array([[1, 0], [0, 1], [0, 0]], dtype=np.complex128)
    if epsilon:
        V[2, 0] = epsilon
    return V


@dataclass(frozen=True)
class Instance:
    A: np.ndarray
    V: np.ndarray  # orthonormal basis of K
    tau: complex
    lam: complex
    x: np.ndarray
    label: str


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for an instance.

    ``source`` is one of ``example1_exact``, ``example1_perturbed``,
    ``arrays`` (``A`` and ``V`` given, e.g. read from files) or ``random``.
    ``target`` is ``"nearest"`` (eigenvalue closest to ``tau``) or an index
    into the eigenvalues sorted by ``(Re, Im)``.
    """

    source: str
    tau: complex = EXAMPLE1_TAU
    target: Union[str, int] = "nearest"
    epsilon: float = 1e-6
    A: Optional[np.ndarray] = None
    V: Optional[np.ndarray] = None
    n: int = 8
    m: int = 3
    seed: int = 0
    decay: float = 0.8
    sin_angle: float = 1e-4
    label: str = ""

    @classmethod
    def example1(cls, epsilon=None, tau=EXAMPLE1_TAU):
        if epsilon:
            return cls("example1_perturbed", tau=tau, target=1, epsilon=epsilon)
        return cls("example1_exact", tau=tau, target=1)


def sorted_eigenpairs(A):
    ed = eig_dense(A)
    order = sorted(range(len(ed.values)), key=lambda i: (ed.values[i].real, ed.values[i].imag))
    return ed.values[order], ed.vectors[:, order]


def pick_target(A, tau, target):
    vals, vecs = sorted_eigenpairs(A)
    if target == "nearest":
        k = int(np.argmin(np.abs(vals - complex(tau))))
    else:
        k = int(target)
        if not 0 <= k < len(vals):
            raise ConfigError(f"target index {k} out of range for {len(vals)} eigenvalues")
    return complex(vals[k]), normalize(vecs[:, k])


def materialize(spec: InstanceSpec, tau=None) -> Instance:
    """Build the matrices of ``spec``; ``tau`` overrides ``spec.tau`` (used by sweeps)."""
    override = tau
    tau = complex(spec.tau if tau is None else tau)
    if spec.source == "example1_exact":
        A, Vraw = EXAMPLE1_A, example1_subspace(None)
    elif spec.source == "example1_perturbed":
        A, Vraw = EXAMPLE1_A, example1_subspace(spec.epsilon)
    elif spec.source == "arrays":
        if spec.A is None or spec.V is None:
            raise ConfigError("arrays source needs both A and V")
        A, Vraw = as_matrix(spec.A, "A"), as_matrix(spec.V, "V")
        if A.shape[0] != A.shape[1] or Vraw.shape[0] != A.shape[0]:
            raise ConfigError(f"shape mismatch: A {A.shape}, V {Vraw.shape}")
    elif spec.source == "random":
        inst = random_instance(np.random.default_rng(spec.seed), spec.n, spec.m,
                               spec.sin_angle, spec.decay)
        if override is None:
            return inst
        A, Vraw = inst.A, inst.V
    else:
        raise ConfigError(f"unknown instance source {spec.source!r}")
    lam, x = pick_target(A, tau, spec.target)
    V = orthonormalize(Vraw).matrix
    return Instance(A, V, tau, lam, x, spec.label or spec.source)


# ---------------------------------------------------------------------------
# random instances


def random_unitary(rng, n):
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_matrix(rng, n, profile="general", decay=0.8):
    """Random test matrix.

    ``general``: ``U diag(decay^k) W^H`` with Haar-like unitary factors, so
    the singular values decay geometrically; ``normal``: unitary similarity
    of a random complex diagonal; ``hermitian``: same with a real diagonal.
    """
    if profile == "general":
        s = decay ** np.arange(n)
        return (random_unitary(rng, n) * s) @ random_unitary(rng, n).conj().T
    U = random_unitary(rng, n)
    if profile == "normal":
        d = random_complex(rng, n)
    elif profile == "hermitian":
        d = rng.standard_normal(n)
    else:
        raise ValueError(f"unknown profile {profile!r}")
    A = (U * d) @ U.conj().T
    if profile == "hermitian":
        A = 0.5 * (A + A.conj().T)
    return A


def tilted_subspace(rng, x, m, sin_angle, extra=None):
    """Orthonormal basis of an m-dimensional K with ``sin angle(x, K) = sin_angle``.

    K contains ``cos(t) x + sin(t) u`` for a random unit ``u`` orthogonal to
    ``x``; the other ``m - 1`` directions are orthogonal to both, taken from
    ``extra`` columns (e.g. other eigenvectors) when given, else random.
    """
    n = x.shape[0]
    x = normalize(x)
    u = random_complex(rng, n)
    u -= x * np.vdot(x, u)
    u -= x * np.vdot(x, u)
    u = normalize(u)
    c = np.sqrt(max(0.0, 1.0 - sin_angle * sin_angle))
    first = c * x + sin_angle * u
    cols = []
    if m > 1:
        pool = extra if extra is not None and extra.shape[1] >= m - 1 else None
        R = pool[:, : m - 1].copy() if pool is not None else random_complex(rng, n, m - 1)
        base = np.column_stack([x, u])
        for _ in range(2):
            R -= base @ (base.conj().T @ R)
        cols = [R]
    M = np.column_stack([first] + cols) if cols else first.reshape(-1, 1)
    return orthonormalize(M, tol=1e-10).matrix


def _simple_index(vals, rng, rel_gap=1e-6):
    scale = max(1.0, float(np.max(np.abs(vals))))
    order = rng.permutation(len(vals))
    for k in order:
        others = np.delete(vals, k)
        if others.size == 0 or np.min(np.abs(others - vals[k])) > rel_gap * scale:
            return int(k)
    return int(order[0])


def random_instance(rng, n, m, sin_angle, decay=0.8, profile="general", near_invariant=False):
    """Random ``(A, tau, lambda, x, V)`` with ``lambda`` the eigenvalue closest to ``tau``."""
    A = random_matrix(rng, n, profile, decay)
    ed = eig_dense(A)
    k = _simple_index(ed.values, rng)
    lam = complex(ed.values[k])
    x = normalize(ed.vectors[:, k])
    others = np.delete(ed.values, k)
    gap = float(np.min(np.abs(others - lam))) if others.size else 1.0
    rho = rng.uniform(0.05, 0.45)
    phi = rng.uniform(0.0, 2 * np.pi)
    if profile == "hermitian":
        tau = lam + rho * gap * (1.0 if np.cos(phi) >= 0 else -1.0)
    else:
        tau = lam + rho * gap * np.exp(1j * phi)
    extra = np.delete(ed.vectors, k, axis=1) if near_invariant else None
    V = tilted_subspace(rng, x, m, sin_angle, extra)
    label = f"{profile}{'-inv' if near_invariant else ''}"
    return Instance(A, V, complex(tau), lam, x, label)
