"""Worker-optimal actions: verification effort, regime, thresholds, grid oracle.

The worker utility is affine in d, so the optimum is a corner in d and a
one-dimensional concave maximization in s. Closed forms cover the linear
verification cost; golden-section search covers the rest. A brute-force
grid maximizer is kept as an independent oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    EXPONENTIAL, INVERSE_LINEAR, LINEAR,
    Ability, Action, Detection, ModelParams, VerificationCost,
    coefficients, delegation_gain, worker_phi_coefficient, worker_utility,
)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Regime(str, enum.Enum):
    MANUAL = "manual"
    PURE_DELEGATION = "pure_delegation"
    VERIFIED_DELEGATION = "verified_delegation"


@dataclass(frozen=True)
class OptimalAction:
    """Worker-optimal action with the quantities behind the regime call.

    s_dagger is the maximizer of the verification surplus over [0, 1],
    whether or not delegation is chosen; f_w_at_s_dagger is the delegation
    increment there, whose sign decides d_star.
    """

    d_star: int
    s_star: float
    regime: Regime
    s_dagger: float
    f_w_at_s_dagger: float


@dataclass(frozen=True)
class ThresholdResult:
    """A root in beta, or the nearest domain boundary when no sign change exists."""

    value: float
    bracketed: bool
    note: str = ""


def golden_section_max(fn, lo: float, hi: float, tol: float = 1e-9, max_iter: int = 200) -> float:
    """Argmax of a unimodal function on [lo, hi] to argument tolerance tol."""
    a, b = lo, hi
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = fn(d)
    return 0.5 * (a + b)


def maximize_surplus(detection: Detection, alpha: float, vcost: VerificationCost,
                     phi_coefficient: float) -> float:
    """Argmax over [0, 1] of phi_coefficient * phi(s; alpha) - C_v(s).

    Non-positive phi coefficient or zero reliability makes the surplus
    non-increasing, so the argmax is 0. Linear verification cost admits a
    closed-form first-order condition for both detection families; other
    combinations fall back to golden-section search on the strictly
    concave surplus.
    """
    if phi_coefficient <= 0.0 or alpha <= 0.0:
        return 0.0
    if vcost.kind == LINEAR:
        a = detection.scale * alpha
        if detection.kind == INVERSE_LINEAR:
            # k_w * a / (1 + a s)^2 = k  =>  s0 = (sqrt(a k_w / k) - 1) / a
            arg = a * phi_coefficient / vcost.k
            s0 = (math.sqrt(arg) - 1.0) / a if arg > 0 else 0.0
        else:  # exponential: k_w * a e^{-a s} = k  =>  s0 = ln(a k_w / k) / a
            arg = a * phi_coefficient / vcost.k
            s0 = math.log(arg) / a if arg > 1.0 else 0.0
        return min(1.0, max(0.0, s0))

    def surplus(s):
        return phi_coefficient * detection.prob(alpha, s) - vcost.cost(s)

    s0 = golden_section_max(surplus, 0.0, 1.0)
    # the bracket endpoints beat an interior argmax found within tolerance noise
    best = max((surplus(s), s) for s in (0.0, s0, 1.0))
    return best[1]


def optimal_verification(params: ModelParams, ability: Ability) -> float:
    """Optimal verification effort s_dagger, conditional on delegating."""
    return maximize_surplus(params.detection, ability.alpha, params.verification_cost,
                            worker_phi_coefficient(params, ability))


def optimal_action(params: ModelParams, ability: Ability) -> OptimalAction:
    """Worker-optimal (d, s) and its regime.

    The worker delegates exactly when the delegation increment at the best
    verification effort is non-negative (indifference resolves to
    delegation). Delegation with zero verification effort is pure
    delegation; with positive effort, verified delegation.
    """
    s_dag = optimal_verification(params, ability)
    f_w = coefficients(params, ability, s_dag).f_w
    if f_w < 0.0:
        return OptimalAction(0, 0.0, Regime.MANUAL, s_dag, f_w)
    if s_dag == 0.0:
        return OptimalAction(1, 0.0, Regime.PURE_DELEGATION, s_dag, f_w)
    return OptimalAction(1, s_dag, Regime.VERIFIED_DELEGATION, s_dag, f_w)


def _bisect_increasing(fn, lo: float, hi: float, tol: float) -> float:
    """Root of a non-decreasing fn, as the infimum of {x : fn(x) > 0}."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fn(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _bisect_decreasing(fn, lo: float, hi: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fn(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _beta_search_interval(params: ModelParams):
    lo, hi = params.execution_cost.beta_domain()
    if math.isinf(hi):
        hi = 1.0
        # expand until the execution cost is negligible relative to its scale
        while params.execution_cost.cost(hi) > 1e-12 * params.execution_cost.scale and hi < 1e12:
            hi *= 2.0
        lo = 1e-12
    return lo, hi


def manual_delegation_threshold(params: ModelParams, tol: float = 1e-12) -> ThresholdResult:
    """Efficiency level at which pure delegation and manual work break even.

    The delegation gain is strictly decreasing in beta, so a sign change is
    found by bisection; without one, the nearer domain boundary is returned
    flagged.
    """
    lo, hi = _beta_search_interval(params)

    def gain(beta):
        return delegation_gain(params, Ability(0.0, beta))

    if gain(hi) > 0.0:
        return ThresholdResult(hi, False, "delegation beats manual work at every efficiency")
    if gain(lo) < 0.0:
        return ThresholdResult(lo, False, "always manual-or-verified: delegation gain negative everywhere")
    return ThresholdResult(_bisect_decreasing(gain, lo, hi, tol), True)


def qualification_threshold(params: ModelParams, tau: float | None = None,
                            tol: float = 1e-12) -> ThresholdResult:
    """Efficiency at which the no-AI baseline quality reaches tau.

    The baseline g_i is strictly increasing in beta. A tau outside its
    range returns the boundary, flagged.
    """
    if tau is None:
        tau = params.tau
    lo, hi = _beta_search_interval(params)

    def excess(beta):
        return coefficients(params, Ability(0.0, beta), 0.0).g_i - tau

    if excess(lo) > 0.0:
        return ThresholdResult(lo, False, "baseline already above tau at the lowest efficiency")
    if excess(hi) < 0.0:
        return ThresholdResult(hi, False, "baseline below tau at every efficiency")
    return ThresholdResult(_bisect_increasing(excess, lo, hi, tol), True)


def brute_force_action(params: ModelParams, ability: Ability,
                       d_steps: int = 11, s_steps: int = 4001):
    """Exhaustive grid maximization of the worker utility.

    Evaluates success probability and cost directly on a (d, s) grid,
    independent of the affine decomposition, and returns the maximizing
    cell with its utility. Used as an oracle in tests and the CLI.
    """
    if d_steps < 2 or s_steps < 2:
        raise ValueError("grid needs at least 2 steps per axis")
    d = np.linspace(0.0, 1.0, d_steps)[:, None]
    s = np.linspace(0.0, 1.0, s_steps)[None, :]
    phi = params.detection.prob(ability.alpha, s)
    c_w = params.execution_cost.cost(ability.beta)
    c_v = params.verification_cost.cost(s)
    p = (1.0 - d) * params.p_w + d * params.p_a + d * (1.0 - params.p_a) * phi * params.p_w
    cost = (1.0 - d) * c_w + d * (params.c_a + c_v + (1.0 - params.p_a) * phi * c_w)
    u = params.b_w * p - params.l_w * (1.0 - p) - cost
    flat = int(np.argmax(u))
    i, j = divmod(flat, s_steps)
    action = Action(float(d[i, 0]), float(s[0, j]))
    return action, float(u[i, j])


def oracle_regime(action: Action) -> Regime:
    if action.d == 0.0:
        return Regime.MANUAL
    if action.s == 0.0:
        return Regime.PURE_DELEGATION
    return Regime.VERIFIED_DELEGATION
