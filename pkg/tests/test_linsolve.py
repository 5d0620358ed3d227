import numpy as np
import pytest

from sfdenoise.linsolve import CgmConfig, MaskedDiagOperator, cgm_solve


def random_system(seed, shape=(24, 24), masked=1.0, ridge=0.5, density=0.5):
    rng = np.random.default_rng(seed)
    mask = (rng.random(shape) < density).astype(float)
    rhs = rng.normal(scale=50.0, size=shape)
    return MaskedDiagOperator(mask, masked, ridge), rhs


class TestExamples:
    def test_pure_ridge_is_scaled_identity(self):
        rng = np.random.default_rng(0)
        rhs = rng.normal(size=(8, 8))
        op = MaskedDiagOperator(np.zeros((8, 8)), masked_weight=1.0, ridge_weight=2.0)
        assert np.allclose(cgm_solve(op, rhs), rhs / 2.0, atol=1e-12)

    def test_zero_rhs_returns_zero(self):
        op, _ = random_system(1)
        out = cgm_solve(op, np.zeros((24, 24)))
        assert not out.any()

    def test_matches_entrywise_closed_form(self):
        for seed in range(8):
            masked, ridge = 1.0, 0.25 + 0.1 * seed
            op, rhs = random_system(seed, masked=masked, ridge=ridge)
            exact = rhs / (masked * op.mask + ridge)
            assert np.abs(cgm_solve(op, rhs) - exact).max() <= 1e-8


class TestConvergence:
    def test_binary_mask_needs_two_applications(self):
        op, rhs = random_system(5)
        calls = []

        def counting(x):
            calls.append(1)
            return op(x)

        out = cgm_solve(counting, rhs)
        assert len(calls) <= 2
        exact = rhs / (op.masked_weight * op.mask + op.ridge_weight)
        assert np.abs(out - exact).max() <= 1e-8

    def test_residual_norms_never_increase(self):
        for seed in range(6):
            op, rhs = random_system(seed, masked=1.0, ridge=0.4, density=0.3 + 0.1 * seed)
            norms = [float(np.linalg.norm(rhs))]
            cgm_solve(op, rhs, callback=lambda x, r: norms.append(float(np.linalg.norm(r))))
            for before, after in zip(norms, norms[1:]):
                assert after <= before * (1.0 + 1e-12)

    def test_solution_invariant_under_system_scaling(self):
        op, rhs = random_system(9)
        scaled = MaskedDiagOperator(op.mask, 100.0 * op.masked_weight, 100.0 * op.ridge_weight)
        base = cgm_solve(op, rhs)
        assert np.abs(cgm_solve(scaled, 100.0 * rhs) - base).max() <= 1e-9

    def test_respects_iteration_cap(self):
        op, rhs = random_system(10)
        calls = []

        def counting(x):
            calls.append(1)
            return op(x)

        cgm_solve(counting, rhs, CgmConfig(max_iters=1))
        assert len(calls) == 1


class TestValidation:
    def test_non_finite_rhs_rejected(self):
        op, _ = random_system(2)
        with pytest.raises(ValueError):
            cgm_solve(op, np.full((24, 24), np.nan))

    def test_operator_weights_must_be_positive(self):
        with pytest.raises(ValueError):
            MaskedDiagOperator(np.ones((4, 4)), masked_weight=1.0, ridge_weight=0.0)
        with pytest.raises(ValueError):
            MaskedDiagOperator(np.ones((4, 4)), masked_weight=-1.0, ridge_weight=0.5)

    def test_config_validated(self):
        with pytest.raises(ValueError):
            CgmConfig(max_iters=0)
        with pytest.raises(ValueError):
            CgmConfig(tol=0.0)
