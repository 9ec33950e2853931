import numpy as np
import pytest

from conftest import A1, crandn
from harmritz.errors import RankDeficient, SingularPencil, SingularShift, ZeroVector
from harmritz.numkernel import (
    PencilEigenvalue,
    complement,
    cond_shifted,
    eig_dense,
    eig_pencil,
    fix_phase,
    is_hermitian,
    is_normal,
    orthonormalize,
    sep,
    sin_angle_vec_subspace,
    sin_angle_vec_vec,
    solve_shifted,
    svd,
)
from oracles import angle_vec_vec, pencil_det_roots, poly_roots_real, projector_svd, \
    residual_lstsq, sep_sphere_min


class TestOrthonormalize:
    def test_identity_columns(self):
        B = orthonormalize(np.eye(4)[:, :2])
        assert np.array_equal(B.matrix, np.eye(4)[:, :2])
        assert B.orthonormality_defect == 0.0

    def test_example1_perturbed_first_column(self):
        V = np.array([[1, 0], [0, 1], [1e-6, 0]])
        Q = orthonormalize(V).matrix
        # printed to 15 decimals: 0.999999999999500, 0, 0.000001000000000
        np.testing.assert_allclose(Q[:, 0].real, [0.999999999999500, 0, 0.000001000000000],
                                   atol=5e-16)
        np.testing.assert_allclose(Q[:, 1], [0, 1, 0], atol=0)

    def test_projector_matches_svd(self, rng):
        M = crandn(rng, 6, 3)
        B = orthonormalize(M)
        assert B.orthonormality_defect <= 1e-12
        assert np.linalg.norm(B.projector() - projector_svd(M), 2) <= 1e-12

    def test_idempotent(self, rng):
        Q = orthonormalize(crandn(rng, 7, 4)).matrix
        Q2 = orthonormalize(Q).matrix
        assert np.linalg.norm(Q @ Q.conj().T - Q2 @ Q2.conj().T, 2) <= 1e-12

    def test_rank_deficient(self):
        M = np.array([[1, 2], [2, 4], [3, 6]], dtype=float)
        with pytest.raises(RankDeficient):
            orthonormalize(M)

    def test_complement_unitary(self, rng):
        x = crandn(rng, 5)
        x /= np.linalg.norm(x)
        X = np.column_stack([x, complement(x.reshape(-1, 1))])
        assert np.linalg.norm(X.conj().T @ X - np.eye(5), 2) <= 1e-12


class TestSvd:
    def test_diagonal(self):
        _, s, _ = svd(np.diag([3.0, 1.0]))
        np.testing.assert_allclose(s, [3, 1])

    def test_example1_condition(self):
        _, s, _ = svd(A1 - np.eye(3))
        assert abs(s[0] / s[-1] - 10.006189420283654) <= 1e-9 * 10.006189420283654

    def test_vs_gram_eigenvalues(self, rng):
        M = crandn(rng, 5, 3)
        U, s, W = svd(M)
        ev = np.sqrt(np.sort(np.linalg.eigvalsh(M.conj().T @ M))[::-1])
        np.testing.assert_allclose(s, ev, rtol=1e-10)
        assert np.linalg.norm(U * s @ W.conj().T - M, 2) <= 1e-12 * np.linalg.norm(M, 2)


class TestEigDense:
    def test_example1(self):
        ed = eig_dense(A1)
        np.testing.assert_allclose(sorted(ed.values.real), [-2, 2, 9], atol=1e-12)
        assert np.all(ed.backward_error <= 1e-10 * np.linalg.norm(A1, 2))

    def test_identity(self):
        np.testing.assert_allclose(eig_dense(np.eye(4)).values, np.ones(4))

    def test_companion(self):
        # z^3 - 6 z^2 - z + 30 = (z + 2)(z - 3)(z - 5)
        comp = np.array([[6, 1, -30], [1, 0, 0], [0, 1, 0]], dtype=float)
        oracle = poly_roots_real([1, -6, -1, 30], -10, 10)
        assert len(oracle) == 3
        got = sorted(eig_dense(comp).values.real)
        np.testing.assert_allclose(got, oracle, rtol=1e-9)

    def test_unit_vectors(self, rng):
        ed = eig_dense(crandn(rng, 6, 6))
        np.testing.assert_allclose(np.linalg.norm(ed.vectors, axis=0), 1, atol=1e-12)


class TestEigPencil:
    def test_example1_exact(self):
        C = np.array([[1, 2], [2, 40]])
        B = np.array([[1, 0], [2, 0]])
        out = eig_pencil(C, B)
        finite = [ev.value for ev, _ in out if not ev.is_infinite]
        assert sum(ev.is_infinite for ev, _ in out) == 1
        assert abs(finite[0] - 1) <= 1e-12
        for ev, q in out:
            if ev.is_infinite:
                assert np.linalg.norm(B @ q) <= 1e-10 * np.linalg.norm(B, 2)
            else:
                r = C @ q - ev.value * (B @ q)
                assert np.linalg.norm(r) <= 1e-10 * (40 + abs(ev.value) * np.linalg.norm(B, 2))

    def test_identity_b(self, rng):
        C = crandn(rng, 4, 4)
        vals = sorted((ev.value for ev, _ in eig_pencil(C, np.eye(4))),
                      key=lambda z: (z.real, z.imag))
        ref = sorted(eig_dense(C).values, key=lambda z: (z.real, z.imag))
        np.testing.assert_allclose(vals, ref, rtol=1e-10)

    def test_determinant_oracle(self, rng):
        G = crandn(rng, 4, 4)
        C = G.conj().T @ G + np.eye(4)
        B = crandn(rng, 4, 4)
        got = [ev.value for ev, _ in eig_pencil(C, B) if not ev.is_infinite]
        oracle = pencil_det_roots(C, B)
        assert len(got) == len(oracle) == 4
        for z in oracle:
            assert min(abs(z - g) for g in got) <= 1e-8 * max(1, abs(z))

    def test_singular_pencil(self):
        with pytest.raises(SingularPencil):
            eig_pencil(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))

    def test_infinite_value(self):
        assert PencilEigenvalue.infinite().value == complex(np.inf, 0)
        assert PencilEigenvalue.finite(2 + 1j).value == 2 + 1j


class TestSolveShifted:
    def test_scalar(self):
        np.testing.assert_allclose(solve_shifted(2 * np.eye(3), 0, np.eye(3)), 0.5 * np.eye(3))

    def test_example1_multiply_back(self):
        e1 = np.array([1, 0, 0], dtype=complex)
        X = solve_shifted(A1, 1.0, e1)
        assert np.linalg.norm((A1 - np.eye(3)) @ X - e1) <= 1e-12

    def test_eigenvalue_shift(self):
        with pytest.raises(SingularShift):
            solve_shifted(A1, 2.0, np.eye(3))


class TestAngles:
    def test_vec_subspace_containment(self, rng):
        Q = orthonormalize(crandn(rng, 5, 2)).matrix
        assert sin_angle_vec_subspace(Q[:, 0], Q) <= 1e-15

    def test_example1_perturbed(self):
        V = np.array([[1, 0], [0, 1], [1e-6, 0]])
        s = sin_angle_vec_subspace(np.array([1, 0, 0]), orthonormalize(V))
        assert abs(s - 9.999999999995000e-7) <= 1e-9 * 9.999999999995e-7

    def test_vec_subspace_vs_lstsq(self, rng):
        M = crandn(rng, 6, 3)
        x = crandn(rng, 6)
        x /= np.linalg.norm(x)
        assert abs(sin_angle_vec_subspace(x, orthonormalize(M)) - residual_lstsq(x, M)) <= 1e-12

    def test_vec_vec_trivial(self, rng):
        x = crandn(rng, 4)
        x /= np.linalg.norm(x)
        assert sin_angle_vec_vec(x, (2 - 1j) * x) <= 1e-15
        y = crandn(rng, 4)
        y -= x * np.vdot(x, y)
        assert abs(sin_angle_vec_vec(x, y) - 1) <= 1e-15

    def test_vec_vec_oracle(self, rng):
        x = crandn(rng, 5)
        x /= np.linalg.norm(x)
        y = crandn(rng, 5)
        assert abs(sin_angle_vec_vec(x, y) - angle_vec_vec(x, y)) <= 1e-10

    def test_vec_vec_tiny_angle(self):
        # sqrt(1 - c^2) would return ~1.4e-8 garbage here
        x = np.array([1, 0, 0], dtype=complex)
        y = np.array([1, 1e-9, 0], dtype=complex)
        assert abs(sin_angle_vec_vec(x, y) - 1e-9) <= 1e-20

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            sin_angle_vec_vec(np.ones(3), np.zeros(3))


class TestSep:
    def test_diag(self):
        assert sep(2, np.diag([1.0, 3.0])) == pytest.approx(1.0, abs=1e-15)
        assert sep(1, np.diag([1.0, 3.0])) == 0.0

    def test_empty(self):
        assert sep(1.0, np.zeros((0, 0))) == np.inf

    def test_sphere_oracle(self, rng):
        G = crandn(rng, 4, 4)
        lam = complex(0.3, -0.2)
        ours = sep(lam, G)
        oracle = sep_sphere_min(G, lam, rng)
        assert ours <= oracle * (1 + 1e-12)
        assert oracle <= ours * (1 + 1e-8)


class TestCondShifted:
    def test_example1(self):
        assert cond_shifted(A1, 1.0) == pytest.approx(10.006189420283654, rel=1e-9)

    def test_diag(self):
        assert cond_shifted(np.diag([1.0, 2.0, 5.0]), 0) == pytest.approx(5.0, rel=1e-15)

    def test_unitary(self, rng):
        Q, _ = np.linalg.qr(crandn(rng, 5, 5))
        assert cond_shifted(Q, 0) == pytest.approx(1.0, abs=1e-14)

    def test_singular(self):
        with pytest.raises(SingularShift):
            cond_shifted(A1, 9.0)


class TestPredicates:
    def test_normal(self, rng):
        Q, _ = np.linalg.qr(crandn(rng, 4, 4))
        N = (Q * crandn(rng, 4)) @ Q.conj().T
        assert is_normal(N)
        assert not is_normal(A1)

    def test_hermitian(self):
        assert is_hermitian(np.array([[1, 1j], [-1j, 2]]))
        assert not is_hermitian(A1)

    def test_fix_phase(self):
        v, f = fix_phase(np.array([0.1j, -2j, 1]))
        assert v[1] == 2 and abs(abs(f) - 1) < 1e-15
