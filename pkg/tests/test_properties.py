import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from harmritz.bounds import full_report
from harmritz.extraction import (
    harmonic_pairs_pencil,
    refined_harmonic_vector,
)
from harmritz.numkernel import (
    cond_shifted,
    eig_dense,
    eig_pencil,
    orthonormalize,
    sep,
    sin_angle_vec_subspace,
    sin_angle_vec_vec,
    svd,
)
from harmritz.shellio import emit_report, format_matrix_market, load_json, parse_matrix_market
from harmritz.shellio.report_io import to_json
from harmritz.studybench.instances import random_instance
from oracles import angle_vec_vec, residual_lstsq

seeds = st.integers(0, 2 ** 32 - 1)
sizes = st.integers(2, 12)
PROP = settings(max_examples=60, deadline=None)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class TestKernelProperties:
    def test_backward_errors_seeded(self):
        for i in range(1000):
            rng = np.random.default_rng([11, i])
            n = int(rng.integers(1, 13))
            M = crandn(rng, n, n)
            nM = np.linalg.norm(M, 2)
            U, s, W = svd(M)
            assert np.linalg.norm(U * s @ W.conj().T - M, 2) <= 1e-12 * nM
            assert np.all(np.diff(s) <= 0) and s[-1] >= 0
            ed = eig_dense(M)
            assert np.all(ed.backward_error <= 1e-10 * nM)

    @PROP
    @given(seeds, sizes)
    def test_orthonormalize_idempotent(self, seed, n):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, n + 1))
        Q = orthonormalize(crandn(rng, n, k)).matrix
        Q2 = orthonormalize(Q).matrix
        assert np.linalg.norm(Q @ Q.conj().T - Q2 @ Q2.conj().T, 2) <= 1e-12

    @PROP
    @given(seeds, sizes, st.floats(-12, 0))
    def test_sin_angle_vec_vec_oracle(self, seed, n, log_t):
        rng = np.random.default_rng(seed)
        x = crandn(rng, n)
        x /= np.linalg.norm(x)
        u = crandn(rng, n)
        u -= x * np.vdot(x, u)
        y = x + 10.0 ** log_t * u
        assert abs(sin_angle_vec_vec(x, y) - angle_vec_vec(x, y, grid=5)) <= 1e-10

    @PROP
    @given(seeds, sizes)
    def test_sin_angle_subspace_zero_iff(self, seed, n):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, n))
        Q = orthonormalize(crandn(rng, n, k)).matrix
        inside = Q @ crandn(rng, k)
        inside /= np.linalg.norm(inside)
        assert sin_angle_vec_subspace(inside, Q) <= 1e-12
        x = crandn(rng, n)
        x /= np.linalg.norm(x)
        s = sin_angle_vec_subspace(x, Q)
        assert abs(s - residual_lstsq(x, Q)) <= 1e-12
        assert (s <= 1e-12) == (np.linalg.norm(x - Q @ (Q.conj().T @ x)) <= 1e-12)

    @PROP
    @given(seeds, st.integers(1, 8))
    def test_sep_zero_at_eigenvalues(self, seed, n):
        rng = np.random.default_rng(seed)
        G = crandn(rng, n, n)
        d = np.diag(crandn(rng, n))
        assert sep(d[0, 0], d) == 0.0
        vals = eig_dense(G).values
        assert sep(vals[0], G) <= 1e-12 * np.linalg.norm(G, 2)
        assert sep(vals[0] + 1.0, G) > 0

    @PROP
    @given(seeds, sizes, st.complex_numbers(max_magnitude=5, allow_nan=False,
                                            allow_infinity=False))
    def test_cond_at_least_one(self, seed, n, tau):
        rng = np.random.default_rng(seed)
        A = crandn(rng, n, n)
        assert cond_shifted(A, tau) >= 1.0
        Q, _ = np.linalg.qr(A)
        assert abs(cond_shifted(Q, 0) - 1) <= 1e-12

    @PROP
    @given(seeds, st.integers(1, 8))
    def test_pencil_identity_b(self, seed, n):
        rng = np.random.default_rng(seed)
        C = crandn(rng, n, n)
        key = lambda z: (round(z.real, 6), round(z.imag, 6))  # noqa: E731
        a = sorted((ev.value for ev, _ in eig_pencil(C, np.eye(n))), key=key)
        b = sorted(eig_dense(C).values, key=key)
        np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-10 * np.linalg.norm(C, 2))


class TestExtractionProperties:
    @PROP
    @given(seeds, st.integers(3, 12), st.floats(-3, 3))
    def test_scaling_covariance(self, seed, n, sigma):
        rng = np.random.default_rng(seed)
        A = crandn(rng, n, n)
        V = orthonormalize(crandn(rng, n, 2)).matrix
        tau = complex(rng.standard_normal(), rng.standard_normal())
        p1 = harmonic_pairs_pencil(A, tau, V)
        p2 = harmonic_pairs_pencil(A + sigma * np.eye(n), tau + sigma, V)
        for a in p1:
            if a.is_infinite:
                continue
            b = min((q for q in p2 if not q.is_infinite),
                    key=lambda q: abs(q.lambda_tilde - a.lambda_tilde - sigma))
            assert abs(b.lambda_tilde - a.lambda_tilde - sigma) <= 1e-10 * max(
                1.0, abs(a.lambda_tilde))
            assert sin_angle_vec_vec(a.x_tilde, b.x_tilde) <= 1e-8

    @PROP
    @given(seeds, st.integers(3, 12))
    def test_refined_dominance(self, seed, n):
        rng = np.random.default_rng(seed)
        A = crandn(rng, n, n)
        V = orthonormalize(crandn(rng, n, 2)).matrix
        for p in harmonic_pairs_pencil(A, 0.1j, V):
            if not p.is_infinite:
                r = refined_harmonic_vector(A, p.lambda_tilde, V)
                assert r.residual <= p.residual * (1 + 1e-12) + 1e-14

    @PROP
    @given(seeds, st.integers(3, 10))
    def test_invariant_exactness(self, seed, n):
        rng = np.random.default_rng(seed)
        X = crandn(rng, n, n)
        lam = np.arange(1, n + 1) * (1 + 0.5j)
        A = X @ np.diag(lam) @ np.linalg.inv(X)
        assume(np.linalg.cond(X) < 1e4)
        pairs = harmonic_pairs_pencil(A, 0.3, X[:, :2])
        got = sorted((p.lambda_tilde for p in pairs), key=lambda z: z.real)
        np.testing.assert_allclose(got, lam[:2], atol=1e-9 * np.abs(lam).max())


class TestBoundProperties:
    @PROP
    @given(seeds, st.integers(2, 10), st.sampled_from(["general", "normal", "hermitian"]),
           st.sampled_from([1e-2, 1e-4, 1e-6]))
    def test_report_has_no_violations(self, seed, n, profile, sin):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(1, n))
        inst = random_instance(rng, n, m, sin, profile=profile)
        rep = full_report(inst.A, inst.tau, inst.lam, inst.x, inst.V)
        assert not rep.violations(), [(b.name, b.value, b.actual) for b in rep.violations()]

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_report_json_deterministic(self, seed):
        inst = random_instance(np.random.default_rng(seed), 5, 2, 1e-3)
        a = emit_report(full_report(inst.A, inst.tau, inst.lam, inst.x, inst.V))
        b = emit_report(full_report(inst.A, inst.tau, inst.lam, inst.x, inst.V))
        assert a == b


class TestSerializationProperties:
    @given(st.floats(allow_nan=False))
    def test_float_round_trip(self, v):
        (back,) = load_json(to_json([v]))
        assert back == v and math.copysign(1, back) == math.copysign(1, v)

    @given(st.lists(st.complex_numbers(allow_nan=False, allow_infinity=False),
                    min_size=1, max_size=12))
    def test_matrix_market_round_trip(self, vals):
        M = np.array(vals, dtype=complex).reshape(-1, 1)
        back = parse_matrix_market(format_matrix_market(M))
        assert np.array_equal(back, M)
