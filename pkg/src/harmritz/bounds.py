"""A-priori error bounds for Ritz and harmonic Ritz approximations.

Every bound is evaluated next to the quantity it bounds, so a report can be
checked inequality by inequality.  Bounds stated for a zero target (the
Chen-Jia and Jia bounds) are evaluated in the shifted frame
``(A - tau I, 0)`` with target eigenvalue ``lambda - tau``.

Conventions: ``sep(mu, G) = sigma_min(G - mu I)``; a vanishing ``sep`` (or
``delta``) gives an infinite bound instead of an error, and an empty
complement (one-dimensional subspace) gives ``sep = inf``.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .config import DEFAULT_THRESHOLDS, Thresholds
from .errors import (
    DegenerateDenominator,
    NoFinitePair,
    NotAnEigenpair,
    NotApplicable,
    NumericError,
    ShiftEqualsEigenvalue,
)
from .extraction import (
    form_harmonic_pencil,
    harmonic_pairs_pencil,
    harmonic_pairs_resolvent,
    nearest_to,
    rayleigh_ritz,
    refined_harmonic_vector,
    select_nearest,
)
from .numkernel import (
    as_basis,
    as_matrix,
    as_vector,
    check_shift,
    complement,
    cos_angle_vec_subspace,
    eig_dense,
    is_hermitian,
    is_normal,
    norm2,
    normalize,
    orthonormalize,
    sep,
    shifted,
    sin_angle_vec_subspace,
    sin_angle_vec_vec,
    singular_values,
    solve_shifted,
)

INF = math.inf


def _safe_div(a, b):
    if b == 0.0:
        return INF if a > 0.0 else 0.0
    return a / b


def _sep_factor(gamma, sepval):
    """``sqrt(1 + gamma^2 / sep^2)`` with ``sep = 0`` -> inf and ``sep = inf`` -> 1."""
    if sepval == INF:
        return 1.0
    if sepval == 0.0:
        return 1.0 if gamma == 0.0 else INF
    return math.sqrt(1.0 + (gamma / sepval) ** 2)


def _times_eps(factor, eps):
    # 0 * inf is taken as 0: with x in K the bounded angle is zero as well
    if eps == 0.0:
        return 0.0
    return factor * eps


def _check_lambda_tau(lam, tau):
    if abs(complex(lam) - complex(tau)) <= 4 * np.finfo(float).eps * max(1.0, abs(complex(lam))):
        raise ShiftEqualsEigenvalue(f"tau = {complex(tau)} equals the target eigenvalue")


def _projector(Q):
    return Q @ Q.conj().T


def _gamma(P, M):
    """``|| P M (I - P) ||``."""
    n = P.shape[0]
    return norm2(P @ M @ (np.eye(n) - P))


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class BoundContext:
    """Quantities attached to one eigenpair, shift and search subspace.

    ``Xhat`` completes ``x`` to a unitary ``[x, Xhat]`` so that
    ``(A - tau I)[x, Xhat] = [x, Xhat] [[lambda - tau, w^H], [0, R]]``.
    ``yhat`` is the unit vector of K closest to ``x``, decomposed as
    ``alpha x + Xhat zhat``.
    """

    A: np.ndarray
    tau: complex
    lam: complex
    x: np.ndarray
    V: np.ndarray
    Xhat: np.ndarray
    R: np.ndarray
    w: np.ndarray
    yhat: np.ndarray
    zhat: np.ndarray
    alpha: complex
    eps: float
    cos_eps: float
    eta1: float
    eta2: float
    etahat2: float
    sigma_max: float
    sigma_min: float
    normal: bool
    thresholds: Thresholds = DEFAULT_THRESHOLDS

    @property
    def m(self):
        return self.V.shape[1]

    @property
    def kappa(self):
        return self.sigma_max / self.sigma_min

    @property
    def gap(self):
        """``|lambda - tau|``."""
        return abs(self.lam - self.tau)

    @property
    def w_proj(self):
        """``cos angle(w, zhat) * ||w|| = |w^H zhat| / ||zhat||`` (0 when zhat = 0)."""
        return _w_projection(self.w, self.zhat)


def _w_projection(w, z):
    nz = np.linalg.norm(z)
    if nz == 0.0 or np.linalg.norm(w) == 0.0:
        return 0.0
    return float(abs(np.vdot(w, z)) / nz)


def build_context(A, tau, lam, x, V, thresholds=DEFAULT_THRESHOLDS) -> BoundContext:
    """Validate ``(lambda, x)`` and collect the block-triangular decomposition data."""
    A = as_matrix(A, "A")
    n = A.shape[0]
    tau, lam = complex(tau), complex(lam)
    x = normalize(x)
    nA = norm2(A)
    res = float(np.linalg.norm(A @ x - lam * x))
    if res > 1e-10 * max(nA, np.finfo(float).tiny):
        raise NotAnEigenpair(f"||A x - lambda x|| = {res:.3e} exceeds 1e-10 * ||A||")
    _check_lambda_tau(lam, tau)
    s = check_shift(A, tau)
    Q = as_basis(V).matrix
    Xhat = complement(x.reshape(-1, 1))
    S = shifted(A, tau)
    R = Xhat.conj().T @ S @ Xhat
    w = Xhat.conj().T @ (A.conj().T @ x)

    px = Q.conj().T @ x
    if np.linalg.norm(px) == 0.0:
        yhat = Q[:, 0].copy()
    else:
        yhat = normalize(Q @ px)
    zhat = Xhat.conj().T @ yhat
    alpha = complex(np.vdot(x, yhat))
    eps = sin_angle_vec_subspace(x, Q)
    cos_eps = cos_angle_vec_subspace(x, Q)
    wp = _w_projection(w, zhat)
    smax, smin = float(s[0]), float(s[-1])
    return BoundContext(
        A=A, tau=tau, lam=lam, x=x, V=Q, Xhat=Xhat, R=R, w=w, yhat=yhat, zhat=zhat,
        alpha=alpha, eps=eps, cos_eps=cos_eps, eta1=wp / smin, eta2=wp / smax,
        etahat2=wp / smax, sigma_max=smax, sigma_min=smin,
        normal=is_normal(A, thresholds), thresholds=thresholds)


# ---------------------------------------------------------------------------
# Ritz vectors (standard projection)


def stewart_bound(A, V, pair, lam, x):
    """``sin angle(x, K) sqrt(1 + gamma^2 / sep(lambda, G)^2)`` for a Ritz pair.

    ``gamma = ||P_K A (I - P_K)||`` and ``G = U^H A U`` with ``U`` spanning
    the complement of the Ritz vector inside K.  Returns ``(value, components)``.
    """
    A = as_matrix(A, "A")
    Q = as_basis(V).matrix
    x = normalize(x)
    eps = sin_angle_vec_subspace(x, Q)
    U = Q @ complement(pair.p.reshape(-1, 1))
    G = U.conj().T @ A @ U
    sepval = sep(lam, G)
    gamma = _gamma(_projector(Q), A)
    value = _times_eps(_sep_factor(gamma, sepval), eps)
    return value, {"gamma": gamma, "sep": sepval, "eps": eps}


# ---------------------------------------------------------------------------
# bounds that need a nonsingular B (zero-target frame)


@dataclass(frozen=True)
class _ZeroFrame:
    A0: np.ndarray
    lam0: complex
    B: np.ndarray
    C: np.ndarray
    Binv_norm: float
    M: np.ndarray  # B^{-1} C


def _zero_frame(A, tau, lam, V, thresholds, require_tau_zero):
    tau = complex(tau)
    if require_tau_zero and tau != 0:
        raise NotApplicable("requires tau=0")
    A0 = shifted(A, tau)
    lam0 = complex(lam) - tau
    B, C = form_harmonic_pencil(A0, 0.0, V)
    sB = singular_values(B)
    if sB[-1] <= thresholds.b_singular * sB[0]:
        raise NotApplicable("B singular")
    M = np.linalg.solve(B, C)
    return _ZeroFrame(A0, lam0, B, C, float(1.0 / sB[-1]), M)


def _g1(M, q):
    Qp = complement(q.reshape(-1, 1))
    return Qp.conj().T @ M @ Qp


def chen_jia_bound(A, V, pair, lam, x, tau=0.0, thresholds=DEFAULT_THRESHOLDS,
                   require_tau_zero=True):
    """``eps sqrt(1 + gamma1^2 ||B^-1||^2 / sep(lambda, G1)^2)``.

    Stated for ``tau = 0``; pass ``require_tau_zero=False`` to evaluate in
    the shifted frame.  ``gamma1 = ||P_K A^H (lambda I - A)(I - P_K)||``.
    """
    Q = as_basis(V).matrix
    fr = _zero_frame(A, tau, lam, Q, thresholds, require_tau_zero)
    eps = sin_angle_vec_subspace(normalize(x), Q)
    G1 = _g1(fr.M, pair.q)
    sepval = sep(fr.lam0, G1)
    n = fr.A0.shape[0]
    gamma1 = _gamma(_projector(Q), fr.A0.conj().T @ (fr.lam0 * np.eye(n) - fr.A0))
    value = _times_eps(_sep_factor(gamma1 * fr.Binv_norm, sepval), eps)
    return value, {"gamma1": gamma1, "Binv_norm": fr.Binv_norm, "sep": sepval, "eps": eps}


def jia_vector_bound(A, V, pair, lam, x, tau=0.0, thresholds=DEFAULT_THRESHOLDS,
                     require_tau_zero=True):
    """``(1 + 2 ||B^-1|| ||A||^2 / (sqrt(1 - eps^2) sep(lambda, G1))) eps``.

    When ``A`` (in the zero frame) is Hermitian definite the components also
    carry the ``kappa(A) ||A||`` variant.
    """
    Q = as_basis(V).matrix
    fr = _zero_frame(A, tau, lam, Q, thresholds, require_tau_zero)
    eps = sin_angle_vec_subspace(normalize(x), Q)
    if eps >= 1.0:
        raise NotApplicable("requires eps<1")
    G1 = _g1(fr.M, pair.q)
    sepval = sep(fr.lam0, G1)
    if sepval == 0.0:
        raise NotApplicable("sep = 0")
    s = singular_values(fr.A0)
    nA = float(s[0])
    root = math.sqrt(1.0 - eps * eps)
    value = (1.0 + 2.0 * fr.Binv_norm * nA * nA / (root * sepval)) * eps
    comps = {"Binv_norm": fr.Binv_norm, "sep": sepval, "norm_A": nA, "eps": eps}
    if is_hermitian(fr.A0):
        ev = np.linalg.eigvalsh(0.5 * (fr.A0 + fr.A0.conj().T))
        if np.all(ev > 0) or np.all(ev < 0):
            kappa = float(s[0] / s[-1])
            comps["hermitian_definite_value"] = (1.0 + 2.0 * kappa * nA / (root * sepval)) * eps
    return value, comps


def jia_value_bounds(A, V, lam, x, tau=0.0, thresholds=DEFAULT_THRESHOLDS,
                     require_tau_zero=True):
    """``(||E|| bound, |lambda - mu| bound)`` for the harmonic Rayleigh quotient ``B^-1 C``.

    ``||E|| <= eps / sqrt(1 - eps^2) ||B^-1|| (|lambda| ||A|| + ||A||^2)`` and
    ``|lambda - mu| <= (2 ||A|| + ||E||)^(1 - 1/m) ||E||^(1/m)``.
    """
    Q = as_basis(V).matrix
    fr = _zero_frame(A, tau, lam, Q, thresholds, require_tau_zero)
    eps = sin_angle_vec_subspace(normalize(x), Q)
    if eps >= 1.0:
        raise NotApplicable("requires eps<1")
    m = Q.shape[1]
    nA = norm2(fr.A0)
    e_bound = eps / math.sqrt(1.0 - eps * eps) * fr.Binv_norm * (abs(fr.lam0) * nA + nA * nA)
    v_bound = elsner_bound_from_norms(2.0 * nA, e_bound, m)
    return e_bound, v_bound, {"Binv_norm": fr.Binv_norm, "norm_A": nA, "eps": eps, "m": m}


# ---------------------------------------------------------------------------
# angle sandwiches


def _sin_cos(x, y):
    s = sin_angle_vec_vec(x, y)
    c = min(1.0, abs(complex(np.vdot(x, y))) / np.linalg.norm(y))
    return s, c


def sigma_sandwich(A, tau, lam, x, y):
    """``(sigma_min / |lambda - tau|, sigma_max / |lambda - tau|) * sin angle(x, y)``.

    Brackets ``sin angle(x, (A - tau I) y)``.  Raw values, not clamped.
    """
    A = as_matrix(A, "A")
    _check_lambda_tau(lam, tau)
    s = check_shift(A, tau)
    x = normalize(x)
    sxy = sin_angle_vec_vec(x, as_vector(y))
    gap = abs(complex(lam) - complex(tau))
    return float(s[-1]) / gap * sxy, float(s[0]) / gap * sxy


def _eta_pair(gap, smin, smax, s, c, wp, normal):
    if normal:
        wp = 0.0
    if s == 0.0:
        return 0.0, 0.0
    lo_t = gap / smin * c + wp / smin * s
    hi_t = gap / smax * c - wp / smax * s
    lower = s / math.sqrt(s * s + lo_t * lo_t)
    upper = s / math.sqrt(s * s + hi_t * hi_t)
    return lower, upper


def eta_sandwich(ctx: BoundContext, y):
    """Two-sided bound on ``sin angle(x, (A - tau I) y)`` using the eta corrections.

    For normal ``A`` the eta terms vanish and the closed normal-matrix form
    is returned.
    """
    y = normalize(y)
    s, c = _sin_cos(ctx.x, y)
    z = ctx.Xhat.conj().T @ y
    wp = _w_projection(ctx.w, z)
    return _eta_pair(ctx.gap, ctx.sigma_min, ctx.sigma_max, s, c, wp, ctx.normal)


def hermitian_sandwiches(A, lam, x, y):
    """For nonsingular Hermitian ``A`` and zero shift, both two-sided bounds on
    ``sin angle(x, A y)``:

    * ``refined``: ``s / sqrt(s^2 + (lambda / lambda_ext)^2 c^2)`` with the
      smallest / largest magnitude eigenvalue,
    * ``ratio``: ``|lambda_min / lambda| s`` and ``|lambda_max / lambda| s``.

    Returns ``((refined_lower, refined_upper), (ratio_lower, ratio_upper))``.
    """
    A = as_matrix(A, "A")
    if not is_hermitian(A):
        raise NotApplicable("requires Hermitian A")
    ev = np.abs(np.linalg.eigvalsh(0.5 * (A + A.conj().T)))
    lmin, lmax = float(ev.min()), float(ev.max())
    if lmin == 0.0:
        raise NotApplicable("requires nonsingular A")
    x = normalize(x)
    s, c = _sin_cos(x, as_vector(y))
    lam = abs(complex(lam))
    if s == 0.0:
        refined = (0.0, 0.0)
    else:
        refined = (s / math.sqrt(s * s + (lam / lmin) ** 2 * c * c),
                   s / math.sqrt(s * s + (lam / lmax) ** 2 * c * c))
    return refined, (lmin / lam * s, lmax / lam * s)


# ---------------------------------------------------------------------------
# harmonic Ritz vectors without B


def _image_basis(A, tau, V):
    return orthonormalize(shifted(A, tau) @ as_basis(V).matrix).matrix


def new_harmonic_vector_bound(A, tau, lam, x, V, pair):
    """``kappa(A - tau I) sqrt(1 + gammahat^2 / sep(1/(lambda - tau), Ghat)^2) eps``.

    ``W`` spans ``(A - tau I) K``, ``Uhat`` the complement of
    ``(A - tau I) x~`` inside it, ``Ghat = Uhat^H (A - tau I)^-1 Uhat`` and
    ``gammahat = ||P_W (A - tau I)^-1 (I - P_W)||``.
    """
    A = as_matrix(A, "A")
    tau, lam = complex(tau), complex(lam)
    _check_lambda_tau(lam, tau)
    if pair.is_infinite:
        raise NotApplicable("infinite harmonic Ritz value")
    s = check_shift(A, tau)
    Q = as_basis(V).matrix
    n = A.shape[0]
    eps = sin_angle_vec_subspace(normalize(x), Q)
    W = _image_basis(A, tau, Q)
    Sinv = solve_shifted(A, tau, np.eye(n))
    u = normalize(shifted(A, tau) @ pair.x_tilde)
    Uhat = W @ complement((W.conj().T @ u).reshape(-1, 1))
    Ghat = Uhat.conj().T @ Sinv @ Uhat
    sepval = sep(1.0 / (lam - tau), Ghat)
    gamma = _gamma(_projector(W), Sinv)
    kappa = float(s[0] / s[-1])
    value = _times_eps(kappa * _sep_factor(gamma, sepval), eps)
    return value, {"kappa": kappa, "gamma_hat": gamma, "sep": sepval, "eps": eps}


def vecharynski_bound(A, tau, lam, x, V, all_pairs, selected):
    """Hermitian-only bound ``kappa(A - tau I) sqrt(1 + gamma^2 / delta^2) eps``.

    ``delta`` is the smallest ``|1/(lambda - tau) - 1/(lambda~_j - tau)|``
    over the harmonic Ritz values other than ``selected`` (an infinite value
    contributes ``|1/(lambda - tau)|``).
    """
    A = as_matrix(A, "A")
    if not is_hermitian(A):
        raise NotApplicable("requires Hermitian A")
    tau, lam = complex(tau), complex(lam)
    _check_lambda_tau(lam, tau)
    s = check_shift(A, tau)
    Q = as_basis(V).matrix
    n = A.shape[0]
    eps = sin_angle_vec_subspace(normalize(x), Q)
    r = 1.0 / (lam - tau)
    others = [p for p in all_pairs if p is not selected]
    delta = INF
    for p in others:
        mu = 0.0 if p.is_infinite else 1.0 / (p.lambda_tilde - tau)
        delta = min(delta, abs(r - mu))
    W = _image_basis(A, tau, Q)
    Sinv = solve_shifted(A, tau, np.eye(n))
    gamma = _gamma(_projector(W), Sinv)
    kappa = float(s[0] / s[-1])
    value = _times_eps(kappa * _sep_factor(gamma, delta), eps)
    return value, {"kappa": kappa, "gamma": gamma, "delta": delta, "eps": eps}


# ---------------------------------------------------------------------------
# harmonic Ritz values without B


def subspace_image_angle_bound(ctx: BoundContext):
    """Upper bound on ``sin angle(x, (A - tau I) K)`` in terms of ``sin angle(x, K)``."""
    s, c = ctx.eps, ctx.cos_eps
    if s == 0.0:
        return 0.0
    eta = 0.0 if ctx.normal else ctx.etahat2
    t = ctx.gap / ctx.sigma_max * c - eta * s
    if t == 0.0:
        return INF
    return s / math.sqrt(s * s + t * t)


def f_norm_bound(ctx: BoundContext):
    """Bound on ``||F||`` where ``1/(lambda - tau)`` is an eigenvalue of ``D + F``.

    Returns ``(value, components)``; the components carry the normal-matrix
    form and the small-angle asymptotic form
    ``kappa / |lambda - tau| * tan angle(x, K)``.
    """
    s, c = ctx.eps, ctx.cos_eps
    if s == 0.0:
        return 0.0, {"normal_form": 0.0, "asymptotic_form": 0.0, "denominator": ctx.gap * c}
    if c == 0.0:
        raise NotApplicable("angle(x,K) = pi/2")
    kappa = ctx.kappa
    asym = kappa / ctx.gap * (s / c)
    wp = ctx.w_proj
    den = ctx.gap * c - s * wp
    scale = ctx.gap * c + s * wp
    if abs(den) <= 1e-14 * scale:
        raise DegenerateDenominator(
            "|lambda - tau| = tan angle(x,K) * cos angle(w,zhat) ||w||")
    exact = kappa * s / abs(den)
    value = asym if ctx.normal else exact
    return value, {"general_form": exact, "normal_form": asym, "asymptotic_form": asym,
                   "denominator": den}


def elsner_bound_from_norms(norm_sum, pert, m):
    """``norm_sum^(1 - 1/m) * pert^(1/m)``."""
    if pert == 0.0:
        return 0.0
    if pert == INF:
        return INF
    return norm_sum ** (1.0 - 1.0 / m) * pert ** (1.0 / m)


def elsner_bound(M, M2):
    """Every eigenvalue of ``M`` lies within this distance of an eigenvalue of ``M2``."""
    M = as_matrix(M)
    M2 = as_matrix(M2)
    n = M.shape[0]
    return elsner_bound_from_norms(norm2(M) + norm2(M2), norm2(M - M2), n)


def harmonic_value_error_bound(ctx: BoundContext, m=None, f_bound=None):
    """Reciprocal-metric bound on the harmonic Ritz value error.

    Returns ``(reciprocal_bound, implied_abs_bound, components)`` where
    ``reciprocal_bound`` bounds ``min_j |1/(lambda - tau) - mu_j|`` over the
    eigenvalues of ``D`` and ``implied_abs_bound`` the corresponding
    ``|lambda - lambda~|`` (``inf`` when the inversion is ill-posed).
    """
    if m is None:
        m = ctx.m
    if m < 1:
        raise ValueError("m must be >= 1")
    if f_bound is None:
        f_bound, _ = f_norm_bound(ctx)
    inv_norm = 1.0 / ctx.sigma_min
    b = elsner_bound_from_norms(2.0 * inv_norm + f_bound, f_bound, m)
    r = 1.0 / ctx.gap
    if b < r:
        implied = b / (r * (r - b))
        ok = True
    else:
        implied = INF
        ok = False
    return b, implied, {"f_bound": f_bound, "inv_norm": inv_norm, "m": m,
                        "inversion_well_posed": ok}


def uniform_separation_ratio(A, tau, eps):
    """``sigma_min(A - tau I) / (||A - tau I|| eps)``; ``inf`` at ``eps = 0``."""
    s = singular_values(shifted(A, tau))
    if eps == 0.0:
        return INF
    return float(s[-1] / (s[0] * eps))


# ---------------------------------------------------------------------------
# report


BOUND_NAMES = (
    "stewart",
    "chen_jia",
    "jia_vector",
    "jia_E_norm",
    "jia_value",
    "new_harmonic_vector",
    "vecharynski",
    "sigma_lower_yhat",
    "sigma_upper_yhat",
    "sigma_lower_xtilde",
    "sigma_upper_xtilde",
    "eta_lower_yhat",
    "eta_upper_yhat",
    "eta_lower_xtilde",
    "eta_upper_xtilde",
    "subspace_image_angle",
    "f_norm",
    "harmonic_value_reciprocal",
    "harmonic_value_error",
)


ROUNDING_FLOOR = 16 * np.finfo(float).eps


@dataclass
class BoundEntry:
    name: str
    value: float
    applicable: bool
    reason: str = ""
    kind: str = "upper"  # "upper": actual <= value; "lower": actual >= value
    actual: Optional[float] = None
    actual_name: str = ""
    components: Dict[str, object] = field(default_factory=dict)
    # magnitude at which the actual is measured (1 for sines); sets the rounding floor
    scale: float = 1.0

    def holds(self, rtol=1e-10):
        """Whether the inequality holds (vacuously for inapplicable or actual-free entries).

        Slack is ``rtol`` relative plus a rounding floor of ``ROUNDING_FLOOR * scale``:
        a sine near 1e-6 is only known to about 1e-10 relative in double precision,
        and some bounds are attained with equality.
        """
        if not self.applicable or self.actual is None:
            return True
        floor = ROUNDING_FLOOR * self.scale
        if self.kind == "upper":
            return self.actual <= self.value * (1.0 + rtol) + floor
        return self.actual >= self.value * (1.0 - rtol) - floor


@dataclass
class BoundReport:
    instance: Dict[str, object]
    thresholds: Dict[str, float]
    actuals: Dict[str, float]
    bounds: List[BoundEntry]
    conditions: Dict[str, bool]
    uniform_separation_ratio: float

    def bound(self, name) -> BoundEntry:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def violations(self, rtol=1e-10):
        return [b for b in self.bounds if not b.holds(rtol)]


def _entry(name, fn, actual=None, actual_name="", kind="upper"):
    """Run ``fn() -> (value, components)``; turn hypothesis failures into flags."""
    try:
        value, comps = fn()
    except NotApplicable as exc:
        return BoundEntry(name, INF, False, exc.reason, kind, actual, actual_name)
    except NumericError as exc:
        return BoundEntry(name, INF, False, f"{type(exc).__name__}: {exc}", kind, actual,
                          actual_name)
    reason = ""
    if value == INF:
        reason = "sep = 0" if kind == "upper" else ""
    return BoundEntry(name, float(value), True, reason, kind, actual, actual_name, comps)


def full_report(A, tau, lam, x, V, thresholds=DEFAULT_THRESHOLDS, instance=None) -> BoundReport:
    """Extract, measure, and evaluate every bound for one instance.

    A failing hypothesis of one theorem only marks that entry inapplicable.
    """
    A = as_matrix(A, "A")
    tau, lam = complex(tau), complex(lam)
    Q = as_basis(V).matrix
    ctx = build_context(A, tau, lam, x, Q, thresholds)
    x = ctx.x
    n, m = Q.shape
    S = shifted(A, tau)

    pairs = harmonic_pairs_pencil(A, tau, Q, thresholds)
    res_pairs = harmonic_pairs_resolvent(A, tau, Q, thresholds)
    try:
        sel = select_nearest(pairs, tau)
        best = nearest_to(pairs, lam)
    except NoFinitePair:
        sel = best = None
    ritz = rayleigh_ritz(A, Q)
    ritz_sel = min(ritz, key=lambda p: abs(p.lambda_hat - lam))

    W = _image_basis(A, tau, Q)
    D = W.conj().T @ solve_shifted(A, tau, W)
    mus = eig_dense(D).values
    r = 1.0 / (lam - tau)
    finite_vals = [p.lambda_tilde for p in pairs if not p.is_infinite]
    sB = singular_values(form_harmonic_pencil(A, tau, Q)[0])
    value_scale = norm2(A) + abs(lam)

    actuals = {
        "sin_x_K": ctx.eps,
        "sin_x_image_K": sin_angle_vec_subspace(x, W),
        "sin_x_xhat": sin_angle_vec_vec(x, ritz_sel.x_hat),
        "reciprocal_err_best": float(np.min(np.abs(r - mus))),
        "abs_lambda_err_best": (float(min(abs(lam - v) for v in finite_vals))
                                if finite_vals else INF),
        "sigma_min_B": float(sB[-1]),
        "sigma_max_B": float(sB[0]),
        "kappa_shift": ctx.kappa,
        "n_infinite": sum(p.is_infinite for p in pairs),
    }
    if sel is not None:
        actuals["lambda_tilde_re"] = sel.lambda_tilde.real
        actuals["lambda_tilde_im"] = sel.lambda_tilde.imag
        actuals["sin_x_xtilde"] = sin_angle_vec_vec(x, sel.x_tilde)
        actuals["abs_lambda_err"] = abs(lam - sel.lambda_tilde)
        actuals["harmonic_residual"] = sel.residual
        actuals["refined_residual"] = refined_harmonic_vector(A, sel.lambda_tilde, Q).residual
        actuals["best_lambda_tilde_re"] = best.lambda_tilde.real
        actuals["best_lambda_tilde_im"] = best.lambda_tilde.imag
        actuals["sin_x_image_xtilde"] = sin_angle_vec_vec(x, S @ sel.x_tilde)
    actuals["sin_x_image_yhat"] = sin_angle_vec_vec(x, S @ ctx.yhat)

    def need_pair():
        if sel is None:
            raise NotApplicable("no finite harmonic Ritz value")
        return sel

    entries = []
    entries.append(_entry("stewart", lambda: stewart_bound(A, Q, ritz_sel, lam, x),
                          actuals["sin_x_xhat"], "sin_x_xhat"))
    entries.append(_entry(
        "chen_jia",
        lambda: chen_jia_bound(A, Q, need_pair(), lam, x, tau, thresholds, require_tau_zero=False),
        actuals.get("sin_x_xtilde"), "sin_x_xtilde"))
    entries.append(_entry(
        "jia_vector",
        lambda: jia_vector_bound(A, Q, need_pair(), lam, x, tau, thresholds, require_tau_zero=False),
        actuals.get("sin_x_xtilde"), "sin_x_xtilde"))

    def jia_vals():
        e, v, comps = jia_value_bounds(A, Q, lam, x, tau, thresholds, require_tau_zero=False)
        return (e, v), comps

    try:
        (e_b, v_b), jcomps = jia_vals()
        entries.append(BoundEntry("jia_E_norm", e_b, True, "", "upper", None, "", jcomps))
        entries.append(BoundEntry("jia_value", v_b, True, "", "upper",
                                  actuals["abs_lambda_err_best"], "abs_lambda_err_best",
                                  {"E_bound": e_b, **jcomps}, value_scale))
    except NotApplicable as exc:
        entries.append(BoundEntry("jia_E_norm", INF, False, exc.reason))
        entries.append(BoundEntry("jia_value", INF, False, exc.reason, "upper",
                                  actuals["abs_lambda_err_best"], "abs_lambda_err_best"))

    entries.append(_entry("new_harmonic_vector",
                          lambda: new_harmonic_vector_bound(A, tau, lam, x, Q, need_pair()),
                          actuals.get("sin_x_xtilde"), "sin_x_xtilde"))
    entries.append(_entry("vecharynski",
                          lambda: vecharynski_bound(A, tau, lam, x, Q, pairs, need_pair()),
                          actuals.get("sin_x_xtilde"), "sin_x_xtilde"))

    for tag, y, act in (("yhat", ctx.yhat, actuals["sin_x_image_yhat"]),
                        ("xtilde", None if sel is None else sel.x_tilde,
                         actuals.get("sin_x_image_xtilde"))):
        def sig(y=y):
            if y is None:
                raise NotApplicable("no finite harmonic Ritz value")
            return sigma_sandwich(A, tau, lam, x, y)

        def eta(y=y):
            if y is None:
                raise NotApplicable("no finite harmonic Ritz value")
            return eta_sandwich(ctx, y)

        for fam, fn in (("sigma", sig), ("eta", eta)):
            try:
                lo, hi = fn()
                entries.append(BoundEntry(f"{fam}_lower_{tag}", lo, True, "", "lower", act,
                                          f"sin_x_image_{tag}"))
                entries.append(BoundEntry(f"{fam}_upper_{tag}", hi, True, "", "upper", act,
                                          f"sin_x_image_{tag}"))
            except NotApplicable as exc:
                entries.append(BoundEntry(f"{fam}_lower_{tag}", INF, False, exc.reason, "lower"))
                entries.append(BoundEntry(f"{fam}_upper_{tag}", INF, False, exc.reason, "upper"))

    entries.append(BoundEntry(
        "subspace_image_angle", subspace_image_angle_bound(ctx), True, "", "upper",
        actuals["sin_x_image_K"], "sin_x_image_K",
        {"etahat2": ctx.etahat2, "normal": ctx.normal}))

    f_entry = _entry("f_norm", lambda: f_norm_bound(ctx))
    entries.append(f_entry)
    if f_entry.applicable:
        b, implied, comps = harmonic_value_error_bound(ctx, m, f_entry.value)
        entries.append(BoundEntry("harmonic_value_reciprocal", b, True, "", "upper",
                                  actuals["reciprocal_err_best"], "reciprocal_err_best", comps,
                                  1.0 / ctx.sigma_min))
        entries.append(BoundEntry(
            "harmonic_value_error", implied, comps["inversion_well_posed"],
            "" if comps["inversion_well_posed"] else "reciprocal bound exceeds 1/|lambda-tau|",
            "upper", actuals["abs_lambda_err_best"], "abs_lambda_err_best", comps, value_scale))
    else:
        entries.append(BoundEntry("harmonic_value_reciprocal", INF, False, f_entry.reason))
        entries.append(BoundEntry("harmonic_value_error", INF, False, f_entry.reason))

    usr = uniform_separation_ratio(A, tau, ctx.eps)
    nh = next(e for e in entries if e.name == "new_harmonic_vector")
    sep_hat = nh.components.get("sep", 0.0) if nh.applicable else 0.0
    kappa_B = (actuals["sigma_max_B"] / actuals["sigma_min_B"]
               if actuals["sigma_min_B"] > 0 else INF)
    conditions = {
        "i": ctx.eps <= thresholds.subspace_eps,
        "ii": kappa_B <= thresholds.b_condition,
        "iii": sep_hat * ctx.sigma_min >= thresholds.sep_relative,
        "iv": usr >= thresholds.uniform_separation,
    }
    inst = {"n": n, "m": m, "tau": tau, "lambda": lam, "frame_zero_target": "A - tau*I",
            "normal": ctx.normal, "hermitian": is_hermitian(A)}
    if sel is not None:
        inst["lambda_tilde"] = sel.lambda_tilde
        inst["best_lambda_tilde"] = best.lambda_tilde
    inst["harmonic_values"] = [p.lambda_tilde for p in pairs]
    inst["pencil_eigenvalues"] = [p.theta.value for p in pairs]
    if instance:
        inst.update(instance)
    return BoundReport(inst, thresholds.as_dict(), actuals, entries, conditions, usr)
