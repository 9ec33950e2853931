"""Dense complex linear-algebra kernels.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; every public
routine converts its inputs with :func:`as_matrix` / :func:`as_vector`.
Norms are spectral 2-norms throughout.
"""
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import DEFAULT_THRESHOLDS
from .errors import (
    ConvergenceFailure,
    RankDeficient,
    SingularPencil,
    SingularShift,
    ZeroVector,
)

_EPS = np.finfo(float).eps


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D complex128 array (copy only if needed)."""
    a = np.asarray(M, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def as_vector(x, name="vector"):
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def norm2(M):
    """Spectral norm (largest singular value); 0 for empty arrays."""
    a = np.asarray(M)
    if a.size == 0:
        return 0.0
    if a.ndim == 1:
        return float(np.linalg.norm(a))
    return float(np.linalg.norm(a, 2))


def normalize(x):
    x = as_vector(x)
    nx = np.linalg.norm(x)
    if nx == 0.0:
        raise ZeroVector("cannot normalize the zero vector")
    return x / nx


def fix_phase(v):
    """Scale ``v`` by a unimodular factor so its largest-modulus entry is real positive.

    Returns ``(scaled, factor)``.  Ties go to the first such entry.
    """
    v = np.asarray(v, dtype=np.complex128)
    if v.size == 0:
        return v, 1.0 + 0.0j
    k = int(np.argmax(np.abs(v)))
    if v[k] == 0:
        return v, 1.0 + 0.0j
    f = abs(v[k]) / v[k]
    out = v * f
    out[k] = abs(v[k])
    return out, f


@dataclass(frozen=True)
class OrthonormalBasis:
    """Orthonormal columns plus the measured ``||M^H M - I||``."""

    matrix: np.ndarray
    orthonormality_defect: float

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def dim(self):
        return self.matrix.shape[1]

    def projector(self):
        Q = self.matrix
        return Q @ Q.conj().T

    def project(self, x):
        Q = self.matrix
        return Q @ (Q.conj().T @ x)


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray
    backward_error: np.ndarray


@dataclass(frozen=True)
class PencilEigenvalue:
    """Homogeneous eigenvalue ``(alpha, beta)`` of a pencil ``C - z B``."""

    alpha: complex
    beta: complex
    is_infinite: bool

    @property
    def value(self):
        """``alpha / beta`` for finite eigenvalues, ``complex(inf, 0)`` otherwise."""
        if self.is_infinite:
            return complex(math.inf, 0.0)
        return complex(self.alpha / self.beta)

    @classmethod
    def finite(cls, theta):
        return cls(complex(theta), 1.0 + 0.0j, False)

    @classmethod
    def infinite(cls):
        return cls(1.0 + 0.0j, 0.0j, True)


def orthonormality_defect(Q):
    Q = np.asarray(Q)
    k = Q.shape[1]
    if k == 0:
        return 0.0
    return norm2(Q.conj().T @ Q - np.eye(k))


def orthonormalize(M, tol=None, max_passes=4):
    """Orthonormal basis of ``range(M)`` by classical Gram-Schmidt with reorthogonalization.

    Each column is orthogonalized against the previous ones, then the pass
    is repeated until the correction is negligible (at least twice).  The
    first column is ``M[:, 0] / ||M[:, 0]||`` exactly, and the R factor has a
    positive diagonal, which keeps the result reproducible.

    Raises
    ------
    RankDeficient
        if ``sigma_min(M) <= tol * sigma_max(M)``.
    """
    if tol is None:
        tol = DEFAULT_THRESHOLDS.rank
    M = as_matrix(M)
    n, k = M.shape
    if k == 0:
        return OrthonormalBasis(M.copy(), 0.0)
    if k > n:
        raise RankDeficient(f"{k} columns in dimension {n}")
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol * s[0]:
        raise RankDeficient(
            f"smallest singular value {s[-1]:.3e} <= {tol:.1e} * largest {s[0]:.3e}")
    Q = np.zeros((n, k), dtype=np.complex128)
    for j in range(k):
        v = M[:, j].copy()
        Qj = Q[:, :j]
        for p in range(max_passes):
            h = Qj.conj().T @ v
            v -= Qj @ h
            if p >= 1 and np.linalg.norm(h) <= 1e-3 * np.linalg.norm(v):
                break
        Q[:, j] = v / np.linalg.norm(v)
    defect = orthonormality_defect(Q)
    if defect > 1e-12:
        raise ConvergenceFailure(f"orthonormality defect {defect:.2e} after reorthogonalization")
    return OrthonormalBasis(Q, defect)


def as_basis(V):
    """Accept an :class:`OrthonormalBasis` or orthonormalize a raw array."""
    if isinstance(V, OrthonormalBasis):
        return V
    return orthonormalize(V)


def complement(Q, tol=None):
    """Orthonormal basis of the orthogonal complement of ``range(Q)`` in C^n."""
    Q = as_matrix(Q)
    n, k = Q.shape
    if k == 0:
        return np.eye(n, dtype=np.complex128)
    full, _ = np.linalg.qr(Q, mode="complete")
    C = full[:, k:]
    # one projection pass against Q to sharpen orthogonality
    C = C - Q @ (Q.conj().T @ C)
    if C.shape[1]:
        C = orthonormalize(C, tol=tol).matrix
    return C


def svd(M):
    """Thin SVD ``M = U diag(s) W^H`` with ``s`` descending.

    Returns ``(U, s, W)``; note ``W`` holds the right singular vectors as
    columns, not ``W^H``.
    """
    M = as_matrix(M)
    try:
        U, s, Wh = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return U, s, Wh.conj().T


def singular_values(M):
    M = as_matrix(M)
    if M.size == 0:
        return np.zeros(0)
    try:
        return np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc


def sigma_min(M):
    s = singular_values(M)
    return float(s[-1]) if s.size else math.inf


def eig_dense(M):
    """All eigenpairs of a square matrix (unit-norm eigenvectors)."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"matrix must be square, got {M.shape}")
    try:
        w, X = np.linalg.eig(M)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration did not converge: {exc}") from exc
    X = X / np.linalg.norm(X, axis=0)
    bwd = np.linalg.norm(M @ X - X * w, axis=0)
    return EigenDecomposition(w, X, bwd)


def eig_pencil(C, B, thresholds=DEFAULT_THRESHOLDS):
    """Eigenpairs of the pencil ``C q = theta B q`` by QZ.

    ``B`` may be singular; the corresponding eigenvalues come back flagged
    infinite instead of as huge finite numbers.  Coefficient vectors have
    unit norm.

    Returns a list of ``(PencilEigenvalue, q)``.
    """
    C = as_matrix(C, "C")
    B = as_matrix(B, "B")
    if C.shape != B.shape or C.shape[0] != C.shape[1]:
        raise ValueError(f"pencil matrices must be square and equal size: {C.shape}, {B.shape}")
    m = C.shape[0]
    if m == 0:
        return []
    try:
        w, Q = scipy.linalg.eig(C, B, homogeneous_eigvals=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(f"QZ iteration did not converge: {exc}") from exc
    alpha, beta = w
    nC, nB = norm2(C), norm2(B)
    tiny = 10 * m * _EPS
    out = []
    for j in range(m):
        a, b = complex(alpha[j]), complex(beta[j])
        if abs(a) <= tiny * nC and abs(b) <= tiny * nB:
            raise SingularPencil(f"pencil is singular: (alpha, beta) = ({a:.2e}, {b:.2e})")
        infinite = abs(b) <= thresholds.infinite * max(abs(a), abs(b))
        q = Q[:, j] / np.linalg.norm(Q[:, j])
        out.append((PencilEigenvalue(a, b, infinite), q))
    return out


def shifted(A, tau):
    A = as_matrix(A)
    return A - complex(tau) * np.eye(A.shape[0])


def check_shift(A, tau):
    """Raise :class:`SingularShift` when ``A - tau I`` is singular to working precision.

    Returns the singular values of ``A - tau I``.
    """
    S = shifted(A, tau)
    s = singular_values(S)
    n = S.shape[0]
    if s.size == 0 or s[0] == 0.0 or s[-1] <= 10 * n * _EPS * s[0]:
        raise SingularShift(f"A - tau*I is singular to working precision (tau = {complex(tau)})")
    return s


def solve_shifted(A, tau, RHS):
    """Solve ``(A - tau I) X = RHS`` by LU with partial pivoting."""
    check_shift(A, tau)
    S = shifted(A, tau)
    R = np.asarray(RHS, dtype=np.complex128)
    vec = R.ndim == 1
    R2 = R.reshape(S.shape[0], -1)
    lu = scipy.linalg.lu_factor(S, check_finite=False)
    X = scipy.linalg.lu_solve(lu, R2)
    res = norm2(S @ X - R2)
    if res > 1e-10 * norm2(S) * max(norm2(X), np.finfo(float).tiny):
        raise SingularShift(f"shifted solve residual {res:.2e} too large")
    return X.reshape(-1) if vec else X


def sin_angle_vec_subspace(x, V):
    """``||(I - V V^H) x||`` for unit ``x``, clamped to [0, 1]."""
    x = as_vector(x)
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise ValueError("x must have unit norm")
    Q = as_basis(V).matrix
    if Q.shape[1] == 0:
        return 1.0
    r = x - Q @ (Q.conj().T @ x)
    r = r - Q @ (Q.conj().T @ r)
    return min(1.0, max(0.0, float(np.linalg.norm(r))))


def cos_angle_vec_subspace(x, V):
    x = as_vector(x)
    Q = as_basis(V).matrix
    return min(1.0, float(np.linalg.norm(Q.conj().T @ x)))


def sin_angle_vec_vec(x, y):
    """Sine of the acute angle between ``x`` and ``y``: ``min_alpha ||x - alpha y||`` for unit x.

    Computed as the norm of the projection residual (with one refinement
    sweep), which keeps full relative accuracy for tiny angles, unlike
    ``sqrt(1 - |x^H y|^2)``.
    """
    x = as_vector(x)
    y = as_vector(y)
    ny = np.linalg.norm(y)
    if ny == 0.0:
        raise ZeroVector("angle with the zero vector is undefined")
    nx = np.linalg.norm(x)
    if nx == 0.0:
        raise ZeroVector("angle with the zero vector is undefined")
    x = x / nx
    u = y / ny
    r = x - u * np.vdot(u, x)
    r = r - u * np.vdot(u, r)
    return min(1.0, max(0.0, float(np.linalg.norm(r))))


def cos_angle_vec_vec(x, y):
    """``|x^H y| / (||x|| ||y||)``; the modulus convention for complex vectors."""
    x = as_vector(x)
    y = as_vector(y)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ZeroVector("angle with the zero vector is undefined")
    return min(1.0, float(abs(np.vdot(x, y)) / (nx * ny)))


def sep(lam, G):
    """``min_{||u||=1} ||G u - lam u|| = sigma_min(G - lam I)``; ``inf`` for an empty G."""
    G = as_matrix(G)
    if G.shape[0] != G.shape[1]:
        raise ValueError("G must be square")
    if G.shape[0] == 0:
        return math.inf
    return sigma_min(G - complex(lam) * np.eye(G.shape[0]))


def cond_shifted(A, tau):
    """2-norm condition number of ``A - tau I``."""
    s = check_shift(A, tau)
    return float(s[0] / s[-1])


def is_normal(A, thresholds=DEFAULT_THRESHOLDS):
    A = as_matrix(A)
    nA = norm2(A)
    if nA == 0.0:
        return True
    AH = A.conj().T
    return norm2(AH @ A - A @ AH) <= thresholds.normality * nA * nA


def is_hermitian(A, rtol=1e-12):
    A = as_matrix(A)
    return norm2(A - A.conj().T) <= rtol * max(norm2(A), np.finfo(float).tiny)
