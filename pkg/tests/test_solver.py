"""Optimal actions, thresholds, and agreement with the brute-force oracle."""

import math

import numpy as np
import pytest

import delver as dv
from delver.model import Ability, Action, Detection, ExecutionCost, ModelParams, VerificationCost
from delver.sampling import beta_span, sample_ability, sample_params
from delver.solver import (
    Regime, brute_force_action, golden_section_max, manual_delegation_threshold,
    optimal_action, optimal_verification, oracle_regime, qualification_threshold,
)


def exponential_params(**overrides):
    base = dict(b_w=8.0, l_w=6.0, b_i=14.0, l_i=12.0, xi=0.3, tau=6.4,
                p_a=0.65, c_a=0.0, p_w=0.75,
                detection=Detection("exponential", 1.5),
                verification_cost=VerificationCost("linear", 1.0),
                execution_cost=ExecutionCost("linear_in_efficiency", 5.0))
    base.update(overrides)
    return ModelParams(**base)


class TestOptimalVerification:
    def test_nonpositive_coefficient_gives_zero(self):
        params = exponential_params(p_w=0.1, b_w=1.0, l_w=0.5)
        ability = Ability(2.0, 0.1)
        assert dv.coefficients(params, ability, 0.0).k_w < 0
        assert optimal_verification(params, ability) == 0.0

    def test_zero_reliability_gives_zero(self, reference):
        assert optimal_verification(reference, Ability(0.0, 0.5)) == 0.0

    def test_reference_interior_first_order_point(self, reference):
        got = optimal_verification(reference, Ability(0.5, 0.5))
        assert got == pytest.approx(math.sqrt(2.8) - 1.0, abs=1e-9)

    def test_closed_forms_match_golden_section(self):
        rng = np.random.default_rng(5)
        for _ in range(60):
            params = sample_params(rng)
            if params.verification_cost.kind != "linear":
                continue
            ability = sample_ability(rng, params)
            k_w = dv.coefficients(params, ability, 0.0).k_w
            closed = optimal_verification(params, ability)

            def surplus(s):
                return dv.verification_surplus(params, ability, s)

            searched = golden_section_max(surplus, 0.0, 1.0, tol=1e-10)
            if surplus(0.0) >= surplus(searched):
                searched = 0.0
            assert closed == pytest.approx(searched, abs=1e-6)

    def test_interior_optimum_has_vanishing_derivative(self):
        rng = np.random.default_rng(17)
        checked = 0
        while checked < 40:
            params = sample_params(rng)
            ability = sample_ability(rng, params)
            s_dag = optimal_verification(params, ability)
            if not 1e-4 < s_dag < 1.0 - 1e-4:
                continue
            h = 1e-6
            deriv = (dv.verification_surplus(params, ability, s_dag + h)
                     - dv.verification_surplus(params, ability, s_dag - h)) / (2 * h)
            assert abs(deriv) <= 1e-6 * (1.0 + abs(dv.coefficients(params, ability, 0.0).k_w))
            checked += 1


class TestOptimalAction:
    @pytest.mark.parametrize("point,regime", [
        ((0.1, 0.9), Regime.MANUAL),
        ((0.1, 0.2), Regime.PURE_DELEGATION),
        ((0.9, 0.9), Regime.VERIFIED_DELEGATION),
    ])
    def test_reference_regime_examples(self, reference, point, regime):
        act = optimal_action(reference, Ability(*point))
        assert act.regime == regime
        if regime == Regime.MANUAL:
            assert (act.d_star, act.s_star) == (0, 0.0)
        elif regime == Regime.PURE_DELEGATION:
            assert (act.d_star, act.s_star) == (1, 0.0)
        else:
            assert act.d_star == 1 and act.s_star > 0
        oracle_act, _ = brute_force_action(reference, Ability(*point))
        assert oracle_regime(oracle_act) == regime

    def test_weak_improvement_over_no_ai(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            params = sample_params(rng)
            ability = sample_ability(rng, params)
            act = optimal_action(params, ability)
            u_opt = dv.worker_utility(params, ability, Action(float(act.d_star), act.s_star))
            u_manual = dv.worker_utility(params, ability, Action(0.0, 0.0))
            assert u_opt >= u_manual - 1e-12 * (1.0 + abs(u_manual))


class TestThresholds:
    def test_reference_manual_delegation_threshold(self, reference):
        res = manual_delegation_threshold(reference)
        assert res.bracketed
        assert res.value == pytest.approx(0.72, abs=1e-9)

    def test_equal_abilities_with_free_ai_pushes_threshold_to_one(self, reference):
        params = exponential_params(p_a=0.75, p_w=0.75, c_a=0.0)
        res = manual_delegation_threshold(params)
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_prohibitive_ai_cost_flags_always_manual(self):
        params = exponential_params(c_a=20.0)  # above C_w(0) = 5
        res = manual_delegation_threshold(params)
        assert not res.bracketed
        assert res.value == 0.0
        assert "manual" in res.note

    def test_reference_qualification_threshold(self, reference):
        res = qualification_threshold(reference)
        assert res.bracketed
        assert res.value == pytest.approx(4.0 / 15.0, abs=1e-9)

    def test_qualification_threshold_domain_edges(self, reference):
        q0_at = lambda b: dv.coefficients(reference, Ability(0.0, b), 0.0).g_i
        assert qualification_threshold(reference, tau=q0_at(0.0)).value == pytest.approx(0.0, abs=1e-9)
        assert qualification_threshold(reference, tau=q0_at(1.0)).value == pytest.approx(1.0, abs=1e-9)

    def test_tau_outside_range_is_flagged(self, reference):
        assert not qualification_threshold(reference, tau=1e6).bracketed
        assert not qualification_threshold(reference, tau=-1e6).bracketed

    def test_inverse_efficiency_threshold(self):
        params = exponential_params(execution_cost=ExecutionCost("inverse_efficiency", 2.0))
        res = manual_delegation_threshold(params)
        # delegation gain 2 / beta - 1.4 crosses zero at beta = 10 / 7
        assert res.bracketed
        assert res.value == pytest.approx(2.0 / 1.4, abs=1e-8)


class TestOracle:
    def test_grid_validation(self, reference):
        with pytest.raises(ValueError):
            brute_force_action(reference, Ability(0.5, 0.5), d_steps=1)

    def test_analytic_optimum_dominates_grid(self, reference):
        for point in [(0.1, 0.9), (0.1, 0.2), (0.9, 0.9), (0.4, 0.75)]:
            ability = Ability(*point)
            act = optimal_action(reference, ability)
            u_star = dv.worker_utility(reference, ability, Action(float(act.d_star), act.s_star))
            _, u_oracle = brute_force_action(reference, ability)
            assert u_star >= u_oracle - 1e-6 * (1.0 + abs(u_star))

    def test_oracle_argmax_locations(self, reference):
        act, _ = brute_force_action(reference, Ability(0.1, 0.2))
        assert (act.d, act.s) == (1.0, 0.0)
        act, _ = brute_force_action(reference, Ability(0.9, 0.9), s_steps=4001)
        s_dag = optimal_verification(reference, Ability(0.9, 0.9))
        assert act.d == 1.0
        assert abs(act.s - s_dag) <= 1.0 / 4000 + 1e-12


class TestDirectionalStructure:
    """Monotone responses that the regime boundaries rely on, on random sweeps."""

    def _sweep(self, rng, params, coord, n=60):
        lo, hi = beta_span(params)
        if coord == "alpha":
            fixed = float(rng.uniform(lo, hi))
            return [Ability(float(a), fixed) for a in np.linspace(0.0, 3.0, n)]
        fixed = float(rng.uniform(0.0, 3.0))
        return [Ability(fixed, float(b)) for b in np.linspace(lo, hi, n)]

    def test_delegation_increment_monotone(self):
        rng = np.random.default_rng(31)
        for _ in range(15):
            params = sample_params(rng)
            values = [optimal_action(params, ab).f_w_at_s_dagger
                      for ab in self._sweep(rng, params, "alpha")]
            slack = 1e-9 * (1.0 + max(abs(v) for v in values))
            assert all(b >= a - slack for a, b in zip(values, values[1:]))
            values = [optimal_action(params, ab).f_w_at_s_dagger
                      for ab in self._sweep(rng, params, "beta")]
            slack = 1e-9 * (1.0 + max(abs(v) for v in values))
            assert all(b <= a + slack for a, b in zip(values, values[1:]))

    def test_delegation_choice_never_reverts_in_alpha(self):
        rng = np.random.default_rng(37)
        for _ in range(15):
            params = sample_params(rng)
            ds = [optimal_action(params, ab).d_star for ab in self._sweep(rng, params, "alpha")]
            assert all(b >= a for a, b in zip(ds, ds[1:]))

    def test_effort_nondecreasing_in_efficiency(self):
        rng = np.random.default_rng(41)
        for _ in range(15):
            params = sample_params(rng)
            ss = [optimal_verification(params, ab) for ab in self._sweep(rng, params, "beta")]
            assert all(b >= a - 1e-9 for a, b in zip(ss, ss[1:]))
