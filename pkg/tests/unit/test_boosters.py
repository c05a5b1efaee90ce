"""
Unit tests for the boosting formulations and their agreement.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.optimize import brentq, minimize, minimize_scalar

from multiboost.analysis import training_error, training_error_bound
from multiboost.boosters import (
    BoostConfig,
    adaboost_discrete,
    adaboost_gradient_view,
    adaboost_m1,
    adaboost_real,
    adaboost_real_additive,
    adaboost_samme,
    entropy_projection_update,
    kl_divergence,
    max_edge,
    mirror_descent_boost,
    optimal_alpha,
    poe_boost,
    poe_posterior,
    pseudo_loss,
    pythagoras_residual,
    three_point_residual,
    totally_corrective_update,
)
from multiboost.boosters.projection import tilt
from multiboost.core import (
    BINARY_CLASSES,
    ConfigError,
    ConstantPlausibility,
    Dataset,
    Dichotomy,
    Ensemble,
    InfeasibleProjectionError,
    KindMismatchError,
    OneHotPlausibility,
    PredictionRule,
    WeightDistribution,
    dichotomy_of,
)
from multiboost.core.weights import PairWeightDistribution
from multiboost.learners import DecisionStump, LearnerSpec, grid_dichotomies, stump_grid
from tests.helpers import random_binary_dataset


def normalizer(w: np.ndarray, eta: np.ndarray, alpha: float) -> float:
    return float(np.sum(w * np.exp(-alpha * eta)))


class TestOptimalAlpha:
    """Test the closed-form coefficient."""

    def test_one_third(self):
        """Test eps = 1/3 gives 1/2 ln 2."""
        assert optimal_alpha(1.0 / 3.0) == pytest.approx(0.5 * math.log(2.0))

    def test_antisymmetric(self):
        """Test alpha(1 - eps) = -alpha(eps)."""
        assert optimal_alpha(0.8) == pytest.approx(-optimal_alpha(0.2))
        assert optimal_alpha(0.5) == 0.0

    def test_infinite_ends(self):
        """Test the unclamped rule is infinite at 0 and 1."""
        assert optimal_alpha(0.0) == math.inf
        assert optimal_alpha(1.0) == -math.inf

    @pytest.mark.parametrize("epsilon", [-0.1, 1.1, float("nan")])
    def test_out_of_range(self, epsilon):
        """Test errors outside [0, 1] are rejected."""
        with pytest.raises(ValueError, match="must lie in"):
            optimal_alpha(epsilon)

    def test_minimizes_normalizer(self):
        """Test alpha minimizes Z(alpha) = sum_i w_i exp(-alpha eta_i) on 1000 random (w, eta) pairs."""
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            m = int(rng.integers(2, 21))
            w = rng.dirichlet(np.ones(m))
            eta = rng.choice([-1.0, 1.0], size=m)
            eta[rng.choice(m, size=2, replace=False)] = [-1.0, 1.0]
            epsilon = float(np.sum(w[eta < 0]))
            alpha = optimal_alpha(epsilon)

            golden = minimize_scalar(lambda a: normalizer(w, eta, a), bracket=(-1.0, 1.0), method="golden")
            assert normalizer(w, eta, alpha) <= golden.fun + 1e-12
            assert golden.x == pytest.approx(alpha, abs=1e-6)
            assert normalizer(w, eta, alpha) == pytest.approx(2.0 * math.sqrt(epsilon * (1.0 - epsilon)), rel=1e-12)

            root = brentq(lambda a: -float(np.sum(w * eta * np.exp(-a * eta))), alpha - 2.0, alpha + 2.0, xtol=1e-14)
            assert root == pytest.approx(alpha, abs=1e-9)


class TestBoostConfig:
    """Test run configuration validation."""

    def test_defaults(self):
        """Test default clamp and stop rules."""
        cfg = BoostConfig(rounds=5)
        assert cfg.eps_clamp == 1e-12
        assert cfg.stop_on_eps_half and cfg.stop_on_perfect
        assert cfg.learner.kind == "stump"

    def test_zero_rounds(self):
        """Test T must be at least 1."""
        with pytest.raises(ValidationError):
            BoostConfig(rounds=0)

    def test_clamp_range(self):
        """Test the clamp must lie in (0, 1/2)."""
        with pytest.raises(ValidationError):
            BoostConfig(rounds=1, eps_clamp=0.5)


class TestDiscrete:
    """Test discrete binary AdaBoost."""

    def test_d1_first_round(self, d1_data):
        """Test the first round on D1."""
        ens, trace = adaboost_discrete(d1_data, BoostConfig(rounds=1))
        record = trace.records[0]
        assert record.hypothesis_id == "stump(f=0,thr=-inf,pol=+1)"
        assert record.epsilon == pytest.approx(1.0 / 3.0)
        assert record.alpha == pytest.approx(0.5 * math.log(2.0))
        np.testing.assert_allclose(record.w_after.w, [0.25, 0.5, 0.25], atol=1e-14)
        assert record.z == pytest.approx(2.0 * math.sqrt(2.0) / 3.0)
        assert record.edge == pytest.approx(1.0 / 3.0)
        assert len(ens) == 1
        assert trace.stop_reason is None

    def test_stops_at_half(self):
        """Test a dataset with no useful stump stops before appending."""
        data = Dataset.from_arrays([[0.0], [0.0]], [1, -1])
        ens, trace = adaboost_discrete(data, BoostConfig(rounds=5))
        assert len(ens) == 0
        assert len(trace) == 0
        assert "1/2" in trace.stop_reason

    def test_fixed_point_without_stop(self):
        """Test with eps = 1/2 and no stop rule the weights stay put and alpha is 0."""
        data = Dataset.from_arrays([[0.0], [0.0]], [1, -1])
        _, trace = adaboost_discrete(data, BoostConfig(rounds=3, stop_on_eps_half=False))
        assert len(trace) == 3
        np.testing.assert_allclose(trace.alphas, 0.0, atol=1e-15)
        np.testing.assert_allclose(trace.weights_after(), 0.5)

    def test_stops_after_perfect_round(self):
        """Test a zero-error hypothesis is appended with a clamped alpha, then the run ends."""
        data = Dataset.from_arrays([[0.0], [1.0]], [-1, 1])
        ens, trace = adaboost_discrete(data, BoostConfig(rounds=10))
        assert len(ens) == 1
        assert trace.records[0].clamped
        assert trace.alphas[0] == pytest.approx(optimal_alpha(1e-12))
        assert trace.stop_reason == "zero weighted error"

    def test_rejects_multiclass(self, multiclass_data):
        """Test binary boosters refuse multiclass data."""
        with pytest.raises(KindMismatchError):
            adaboost_discrete(multiclass_data, BoostConfig(rounds=1))

    def test_trace_metadata(self, d1_data):
        """Test the trace records the algorithm, seed and config."""
        _, trace = adaboost_discrete(d1_data, BoostConfig(rounds=2, seed=7))
        assert trace.algo == "discrete"
        assert trace.seed == 7
        assert trace.config["rounds"] == 2
        np.testing.assert_allclose(trace.initial.w, np.full(3, 1.0 / 3.0))

    @pytest.mark.parametrize("seed", range(20))
    def test_decorrelation(self, seed):
        """Test h_t has zero edge under the weights it produced."""
        data = random_binary_dataset(seed)
        _, trace = adaboost_discrete(data, BoostConfig(rounds=15))
        for record in trace.records:
            if record.clamped:
                continue
            eta = dichotomy_of(record.hypothesis, data)
            assert float(np.dot(record.w_after.w, eta.eta)) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_training_error_bound(self, seed):
        """Test training error never exceeds the product of normalizers."""
        data = random_binary_dataset(seed)
        ens, trace = adaboost_discrete(data, BoostConfig(rounds=15))
        if len(ens) == 0:
            return
        error = training_error(ens, data)
        assert error <= float(np.prod([r.z for r in trace.records])) + 1e-12
        if not any(r.clamped for r in trace.records):
            assert error <= training_error_bound(trace.epsilons) + 1e-12

    def test_custom_learner(self, d1_data, mocker):
        """Test an explicit learner overrides the configured one."""
        learner = mocker.Mock(return_value=DecisionStump(0, 0.5, -1))
        _, trace = adaboost_discrete(d1_data, BoostConfig(rounds=1), learner=learner)
        learner.assert_called_once()
        assert trace.records[0].hypothesis == DecisionStump(0, 0.5, -1)


class TestEquivalence:
    """Test the binary formulations produce the same run."""

    @pytest.mark.parametrize("seed", range(50))
    def test_formulations_agree(self, seed):
        """Test gradient, mirror and product-of-experts runs match discrete AdaBoost."""
        data = random_binary_dataset(seed)
        cfg = BoostConfig(rounds=25, seed=seed)
        _, reference = adaboost_discrete(data, cfg)
        _, gradient = adaboost_gradient_view(data, cfg)
        _, mirror, _ = mirror_descent_boost(data, cfg)
        _, poe = poe_boost(data, cfg)

        for other in (gradient, mirror, poe):
            assert other.hypothesis_ids == reference.hypothesis_ids
            np.testing.assert_allclose(other.alphas, reference.alphas, rtol=0.0, atol=1e-10)
            np.testing.assert_allclose(other.weights_after(), reference.weights_after(), rtol=0.0, atol=1e-10)
            assert other.stop_reason == reference.stop_reason

    @pytest.mark.parametrize("seed", range(50))
    def test_entropy_projection_reproduces_update(self, seed):
        """Test every unclamped update is the KL projection onto its hyperplane."""
        data = random_binary_dataset(seed)
        _, trace = adaboost_discrete(data, BoostConfig(rounds=25))
        for record in trace.records:
            if record.clamped:
                continue
            result = entropy_projection_update(record.w_before, dichotomy_of(record.hypothesis, data))
            assert result.exact
            assert result.alpha == pytest.approx(record.alpha, abs=1e-12)
            np.testing.assert_allclose(result.weights.w, record.w_after.w, rtol=0.0, atol=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_m1_and_samme_on_binary_data(self, seed):
        """Test M1 and SAMME keep discrete AdaBoost's weights with doubled coefficients."""
        data = random_binary_dataset(seed)
        cfg = BoostConfig(rounds=25)
        ens, reference = adaboost_discrete(data, cfg)
        for booster in (adaboost_m1, adaboost_samme):
            other_ens, other = booster(data, cfg)
            assert other.hypothesis_ids == reference.hypothesis_ids
            np.testing.assert_allclose(other.alphas, 2.0 * reference.alphas, rtol=1e-10, atol=1e-10)
            np.testing.assert_allclose(other.weights_after(), reference.weights_after(), rtol=0.0, atol=1e-10)
            if len(ens):
                clear = np.abs(ens.decision_function(data.X)) > 1e-9
                np.testing.assert_array_equal(
                    other_ens.predict_batch(data.X)[clear], ens.predict_batch(data.X)[clear]
                )


class TestProjection:
    """Test the entropy projection view."""

    def test_d1_projection(self):
        """Test projecting uniform weights onto the D1 hyperplane."""
        result = entropy_projection_update(WeightDistribution.uniform(3), Dichotomy(np.array([1, -1, 1])))
        np.testing.assert_allclose(result.weights.w, [0.25, 0.5, 0.25])
        assert result.alpha == pytest.approx(0.5 * math.log(2.0))

    def test_single_sign_is_not_exact(self):
        """Test a one-signed dichotomy falls back to the clamped step."""
        result = entropy_projection_update(WeightDistribution.uniform(2), Dichotomy(np.array([1, 1])))
        assert not result.exact
        assert result.alpha == pytest.approx(optimal_alpha(1e-12))

    def test_kl_divergence(self):
        """Test KL with 0 log 0 = 0."""
        p = np.array([0.5, 0.5, 0.0])
        q = np.array([0.25, 0.25, 0.5])
        assert kl_divergence(p, q) == pytest.approx(math.log(2.0))
        assert kl_divergence(p, p) == 0.0

    @pytest.mark.parametrize("alpha", [-0.4, 0.1, 0.3, 1.2])
    def test_pythagoras_residual_formula(self, rng, alpha):
        """Test the residual equals (alpha* - alpha)(W_prev^T eta - W(alpha)^T eta)."""
        w = WeightDistribution(rng.dirichlet(np.ones(6)))
        eta = Dichotomy(np.array([1, -1, 1, 1, -1, 1]))
        alpha_star = entropy_projection_update(w, eta).alpha
        expected = (alpha_star - alpha) * (np.dot(w.w, eta.eta) - np.dot(tilt(w, eta, alpha).w, eta.eta))
        assert pythagoras_residual(w, eta, alpha) == pytest.approx(expected, abs=1e-12)

    def test_pythagoras_residual_vanishes(self, rng):
        """Test the residual is zero at alpha = 0 and alpha = alpha*."""
        w = WeightDistribution(rng.dirichlet(np.ones(5)))
        eta = Dichotomy(np.array([1, -1, -1, 1, 1]))
        alpha_star = entropy_projection_update(w, eta).alpha
        assert pythagoras_residual(w, eta, 0.0) == pytest.approx(0.0, abs=1e-12)
        assert pythagoras_residual(w, eta, alpha_star) == pytest.approx(0.0, abs=1e-12)

    def test_three_point_identity(self, rng):
        """Test the Bregman three-point identity for a point on the hyperplane."""
        eta = Dichotomy(np.array([1, -1, 1, -1, 1, 1]))
        w_prev = WeightDistribution(rng.dirichlet(np.ones(6)))
        feasible = entropy_projection_update(WeightDistribution(rng.dirichlet(np.ones(6))), eta).weights
        assert float(np.dot(feasible.w, eta.eta)) == pytest.approx(0.0, abs=1e-12)
        assert three_point_residual(w_prev, eta, feasible) == pytest.approx(0.0, abs=1e-10)

    def test_totally_corrective_matches_dual(self, rng):
        """Test cyclic projections agree with minimizing the dual log-partition."""
        m, k = 8, 3
        etas = []
        for _ in range(k):
            signs = np.array([1] * 4 + [-1] * 4)
            etas.append(Dichotomy(rng.permutation(signs)))
        w_ref = WeightDistribution(rng.dirichlet(np.ones(m)))
        A = np.column_stack([eta.eta for eta in etas])

        projected = totally_corrective_update(w_ref, etas, tol=1e-12)
        np.testing.assert_allclose(A.T @ projected.w, 0.0, atol=1e-12)

        def dual(lam):
            scores = w_ref.w * np.exp(-A @ lam)
            value = math.log(scores.sum())
            return value, -(A.T @ scores) / scores.sum()

        result = minimize(dual, np.zeros(k), jac=True, method="BFGS", options={"gtol": 1e-12})
        expected = w_ref.w * np.exp(-A @ result.x)
        np.testing.assert_allclose(projected.w, expected / expected.sum(), atol=1e-6)

    def test_totally_corrective_single_hypothesis(self, rng):
        """Test one constraint reduces to the single projection."""
        eta = Dichotomy(np.array([1, -1, 1, -1]))
        w = WeightDistribution(rng.dirichlet(np.ones(4)))
        np.testing.assert_allclose(
            totally_corrective_update(w, [eta]).w, entropy_projection_update(w, eta).weights.w, atol=1e-12
        )

    def test_totally_corrective_empty(self):
        """Test no constraints returns the reference weights."""
        w = WeightDistribution.uniform(3)
        assert totally_corrective_update(w, []) is w

    def test_single_sign_constraint_is_infeasible(self):
        """Test a one-signed dichotomy is rejected up front."""
        with pytest.raises(InfeasibleProjectionError) as excinfo:
            totally_corrective_update(WeightDistribution.uniform(2), [Dichotomy(np.array([1, 1]))])
        assert excinfo.value.report["constraint"] == 0

    def test_empty_intersection(self):
        """Test hyperplanes with no common point on the simplex exhaust the sweeps."""
        etas = [
            Dichotomy(np.array([1, -1, -1])),
            Dichotomy(np.array([-1, 1, -1])),
            Dichotomy(np.array([-1, -1, 1])),
        ]
        with pytest.raises(InfeasibleProjectionError, match="constraints") as excinfo:
            totally_corrective_update(WeightDistribution.uniform(3), etas, max_sweeps=50)
        assert excinfo.value.report["sweeps"] == 50


class TestMirrorDescent:
    """Test the mirror-descent formulation."""

    def test_dual_on_simplex(self, rng):
        """Test the averaged dual iterate is a distribution over the grid."""
        data = random_binary_dataset(3)
        _, trace, dual = mirror_descent_boost(data, BoostConfig(rounds=10))
        assert dual.shape == (len(stump_grid(data)),)
        assert np.all(dual >= 0)
        assert dual.sum() == pytest.approx(1.0)

    def test_objective_start(self, d1_data):
        """Test the recorded starting objective is the best edge under uniform weights."""
        _, trace, _ = mirror_descent_boost(d1_data, BoostConfig(rounds=1))
        A = grid_dichotomies(d1_data, stump_grid(d1_data))
        assert trace.extras["objective_start"] == pytest.approx(max_edge(WeightDistribution.uniform(3), A))
        assert trace.extras["objective_start"] == pytest.approx(1.0 / 3.0)

    def test_requires_stumps(self, d1_data):
        """Test trees are rejected because the class must be enumerated."""
        cfg = BoostConfig(rounds=1, learner=LearnerSpec.parse("tree:2"))
        with pytest.raises(ConfigError, match="stump"):
            mirror_descent_boost(d1_data, cfg)


class TestProductOfExperts:
    """Test the product-of-experts posterior."""

    def test_single_expert(self):
        """Test one expert gives P(+1 | x) = e^a / (e^a + e^-a) where it says +1."""
        alpha = 0.7
        ens = Ensemble.empty(BINARY_CLASSES, PredictionRule.SIGN).append(alpha, DecisionStump(0, 0.5, 1))
        posterior = poe_posterior(ens, np.array([[1.0], [0.0]]))
        expected = math.exp(alpha) / (math.exp(alpha) + math.exp(-alpha))
        np.testing.assert_allclose(posterior, [expected, 1.0 - expected])

    def test_posterior_agrees_with_sign(self, d1_data):
        """Test the posterior exceeds 1/2 exactly where H(x) > 0."""
        ens, _ = poe_boost(d1_data, BoostConfig(rounds=4))
        posterior = poe_posterior(ens, d1_data.X)
        scores = ens.decision_function(d1_data.X)
        np.testing.assert_array_equal(posterior > 0.5, scores > 0)

    def test_rejects_vote_ensembles(self, multiclass_data):
        """Test multiclass ensembles have no PoE posterior."""
        ens, _ = adaboost_samme(multiclass_data, BoostConfig(rounds=2))
        with pytest.raises(KindMismatchError):
            poe_posterior(ens, multiclass_data.X)


class TestMulticlass:
    """Test M1, SAMME and real AdaBoost on multiclass data."""

    def test_samme_fits_three_groups(self, multiclass_data):
        """Test SAMME with stumps separates three groups."""
        ens, trace = adaboost_samme(multiclass_data, BoostConfig(rounds=3))
        assert trace.algo == "samme"
        assert training_error(ens, multiclass_data) == 0.0
        assert np.all(trace.alphas > 0)

    def test_samme_coefficient(self, multiclass_data):
        """Test alpha = log((1 - eps) / eps) + log(K - 1)."""
        _, trace = adaboost_samme(multiclass_data, BoostConfig(rounds=1))
        eps = trace.epsilons[0]
        assert eps == pytest.approx(1.0 / 3.0)
        assert trace.alphas[0] == pytest.approx(math.log((1 - eps) / eps) + math.log(2.0))

    def test_m1_stops_at_half(self, multiclass_data):
        """Test M1 needs weighted error below 1/2."""
        _, trace = adaboost_m1(multiclass_data, BoostConfig(rounds=10))
        assert trace.algo == "m1"
        assert all(eps < 0.5 for eps in trace.epsilons)
        assert np.all(np.isnan([r.min_margin_l1 for r in trace.records]))

    def test_pseudo_loss_of_constant(self, multiclass_data):
        """Test an uninformative plausibility has pseudo-loss 1/2."""
        h = ConstantPlausibility(0.3, multiclass_data.classes)
        pw = PairWeightDistribution.uniform(multiclass_data)
        assert pseudo_loss(h, multiclass_data, pw) == pytest.approx(0.5)

    def test_pseudo_loss_of_perfect_hypothesis(self):
        """Test a perfect one-hot hypothesis has pseudo-loss 0."""
        data = Dataset.from_arrays([[0.0], [1.0]], [-1, 1])
        h = OneHotPlausibility(DecisionStump(0, 0.5, 1), data.classes)
        assert pseudo_loss(h, data, PairWeightDistribution.uniform(data)) == 0.0

    def test_real_adaboost(self, multiclass_data):
        """Test real AdaBoost keeps pair weights off the true labels and votes positively."""
        ens, trace = adaboost_real(multiclass_data, BoostConfig(rounds=5))
        assert trace.algo == "real"
        assert len(ens) >= 1
        assert np.all(trace.alphas > 0)
        for record in trace.records:
            pair = record.pair_w_after
            assert pair.sum() == pytest.approx(1.0)
            np.testing.assert_array_equal(pair[np.arange(9), multiclass_data.label_index], 0.0)
            np.testing.assert_allclose(record.w_after.w, pair.sum(axis=1) / pair.sum())


class TestRealValued:
    """Test confidence-rated and logistic variants."""

    def test_real_additive(self):
        """Test confidence-rated boosting shrinks every normalizer below 1."""
        data = random_binary_dataset(11)
        ens, trace = adaboost_real_additive(data, BoostConfig(rounds=8))
        assert trace.algo == "real-additive"
        assert all(r.z < 1.0 for r in trace.records)
        np.testing.assert_array_equal(trace.alphas, 1.0)
        if len(ens):
            assert training_error(ens, data) <= float(np.prod([r.z for r in trace.records])) + 1e-12

    def test_logistic_gradient(self):
        """Test the logistic cost uses bounded line-search steps."""
        data = random_binary_dataset(5)
        _, trace = adaboost_gradient_view(data, BoostConfig(rounds=6), cost="logistic")
        assert trace.algo == "gradient-logistic"
        assert np.all(np.isfinite(trace.alphas))
        assert np.all((trace.alphas >= 0.0) & (trace.alphas <= 50.0))

    def test_unknown_cost(self, d1_data):
        """Test an unknown cost is rejected."""
        with pytest.raises(ValueError, match="Unknown margin cost"):
            adaboost_gradient_view(d1_data, BoostConfig(rounds=1), cost="hinge")
