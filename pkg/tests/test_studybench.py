import numpy as np
import pytest

from harmritz.errors import ConfigError, EmptyGrid
from harmritz.numkernel import orthonormalize, sin_angle_vec_subspace
from harmritz.studybench import (
    EXAMPLE1_GRID,
    Grid,
    InstanceSpec,
    elsner_campaign,
    example1,
    hermitian_sharpness_campaign,
    materialize,
    oracle_angle_min,
    random_campaign,
    route_equivalence_campaign,
    sandwich_campaign,
    tau_sweep,
)
from harmritz.studybench.instances import random_instance, tilted_subspace


class TestInstances:
    def test_random_reproducible(self):
        a = materialize(InstanceSpec("random", seed=5))
        b = materialize(InstanceSpec("random", seed=5))
        assert np.array_equal(a.A, b.A) and np.array_equal(a.V, b.V)

    def test_example1_perturbed_basis(self):
        inst = materialize(InstanceSpec.example1(1e-6))
        np.testing.assert_allclose(inst.V.real, [[0.999999999999500, 0], [0, 1],
                                                 [0.000001000000000, 0]], atol=5e-16)
        assert inst.lam == pytest.approx(2.0, abs=1e-14)

    def test_tilted_angle(self, rng):
        x = np.eye(6)[:, 2].astype(complex)
        for s in (1e-2, 1e-4, 1e-6):
            V = tilted_subspace(rng, x, 3, s)
            assert sin_angle_vec_subspace(x, V) == pytest.approx(s, rel=1e-9)

    def test_bad_source(self):
        with pytest.raises(ConfigError):
            materialize(InstanceSpec("nope"))

    def test_target_out_of_range(self):
        with pytest.raises(ConfigError):
            materialize(InstanceSpec("example1_exact", target=7))


class TestExample1:
    def test_exact(self):
        rep = example1()
        assert rep.actuals["lambda_tilde_re"] == 2.0
        assert rep.actuals["sin_x_xtilde"] == 0.0
        vals = rep.instance["pencil_eigenvalues"]
        assert sorted(abs(v) for v in vals) == [1.0, np.inf]

    def test_perturbed(self):
        rep = example1(1e-6)
        assert rep.actuals["lambda_tilde_re"] == pytest.approx(2.000001666687963, abs=1e-12)
        assert rep.bound("new_harmonic_vector").value == pytest.approx(1.084005507313452e-5,
                                                                       rel=1e-8)

    def test_negative_epsilon(self):
        with pytest.raises(ConfigError):
            example1(-1.0)


class TestSweep:
    def test_grid_order(self):
        pts = Grid(0, 1, 2, -1, 1, 3).points()
        assert pts == [-1j, 0j, 1j, 1 - 1j, 1 + 0j, 1 + 1j]

    def test_grid_parse(self):
        assert Grid.parse("-3:10:27,-2:2:9") == EXAMPLE1_GRID
        assert Grid.parse("0:1:5").n_im == 1
        with pytest.raises(ConfigError):
            Grid.parse("0:1")

    def test_empty(self):
        with pytest.raises(EmptyGrid):
            tau_sweep(InstanceSpec.example1(1e-6), Grid(0, 1, 0, 0, 0, 1))

    def test_matches_example1(self):
        recs = tau_sweep(InstanceSpec.example1(1e-6), Grid(1, 1, 1, 0, 0, 1))
        rep = example1(1e-6)
        assert recs[0].bounds["new_harmonic_vector"] == rep.bound("new_harmonic_vector").value
        assert recs[0].sin_x_xtilde == rep.actuals["sin_x_xtilde"]
        assert recs[0].uniform_separation_ratio == rep.uniform_separation_ratio

    def test_eigenvalue_skipped(self):
        (rec,) = tau_sweep(InstanceSpec.example1(1e-6), Grid(2, 2, 1, 0, 0, 1))
        assert rec.skipped and "eigenvalue" in rec.reason

    def test_example1_grid_holds(self):
        recs = tau_sweep(InstanceSpec.example1(1e-6), Grid(-3, 10, 20, -2, 2, 20))
        assert len(recs) == 400
        assert sum(r.violations for r in recs) == 0

    def test_near_singular_b_found(self):
        recs = tau_sweep(InstanceSpec.example1(1e-6), EXAMPLE1_GRID)
        hits = [r for r in recs if not r.skipped and r.sigma_min_B < 1e-3 * r.sigma_max_B
                and r.uniform_separation_ratio > 10]
        assert hits
        assert sum(r.skipped for r in recs) == 3  # tau = -2, 2, 9

    def test_tightness_finite(self):
        for r in tau_sweep(InstanceSpec.example1(1e-6), EXAMPLE1_GRID):
            if not r.skipped and r.sin_x_xtilde > 0:
                assert np.isfinite(r.bounds["new_harmonic_vector"] / r.sin_x_xtilde)


class TestCampaigns:
    def test_empty(self):
        s = random_campaign(0, 5, 2, 1)
        assert s.checked == 0 and s.n_violations == 0 and s.tightness == {}

    def test_deterministic(self):
        assert random_campaign(12, 8, 3, 4).as_dict() == random_campaign(12, 8, 3, 4).as_dict()

    def test_bad_sizes(self):
        with pytest.raises(ConfigError):
            random_campaign(1, 4, 4, 0)

    def test_small_runs_clean(self):
        for s in (random_campaign(30, 10, 4, 2), sandwich_campaign(50, seed=2),
                  hermitian_sharpness_campaign(30, seed=2),
                  route_equivalence_campaign(30, seed=2), elsner_campaign(30, seed=2)):
            assert s.n_violations == 0, s.violations
            assert not s.errors


class TestOracleAngle:
    def test_self(self, rng):
        x = rng.standard_normal(4)
        x /= np.linalg.norm(x)
        assert oracle_angle_min(x, x.reshape(-1, 1)) <= 1e-15

    def test_complement(self):
        assert oracle_angle_min(np.eye(4)[:, 0], np.eye(4)[:, 1:]) == 1.0

    def test_matches_kernel(self, rng):
        M = rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3))
        x = rng.standard_normal(6) + 0j
        x /= np.linalg.norm(x)
        ours = sin_angle_vec_subspace(x, orthonormalize(M))
        assert abs(oracle_angle_min(x, M) - ours) <= 1e-10

    def test_random_instance_labels(self, rng):
        assert random_instance(rng, 4, 2, 1e-2, profile="hermitian",
                               near_invariant=True).label == "hermitian-inv"
