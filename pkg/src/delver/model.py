"""Core model of delegated work with costly verification.

A worker facing a single task chooses a delegation probability d and a
verification effort s. Utilities for the worker and the institution are
both affine in d once s is fixed, which is what makes the rest of the
library (closed-form optima, regime boundaries, calibration) tractable.
This module holds the parameter containers, the function families for
detection and costs, and the primitive quantities everything else is
built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

EXPONENTIAL = "exponential"
INVERSE_LINEAR = "inverse_linear"
LINEAR = "linear"
LINEAR_QUADRATIC = "linear_quadratic"
LINEAR_IN_EFFICIENCY = "linear_in_efficiency"
INVERSE_EFFICIENCY = "inverse_efficiency"


@dataclass(frozen=True)
class Detection:
    """Error-detection probability family phi(s; alpha).

    kind "exponential": phi = 1 - exp(-scale * alpha * s)
    kind "inverse_linear": phi = 1 - 1 / (1 + scale * alpha * s)

    Both start at phi(0) = 0, are strictly increasing and strictly concave
    in s for alpha > 0, and non-decreasing in alpha.
    """

    kind: str
    scale: float = 2.0

    def __post_init__(self):
        if self.kind not in (EXPONENTIAL, INVERSE_LINEAR):
            raise ValueError(f"unknown detection family: {self.kind!r}")
        if not self.scale > 0:
            raise ValueError("detection scale must be positive")

    def prob(self, alpha, s):
        x = self.scale * alpha * s
        if self.kind == EXPONENTIAL:
            return 1.0 - np.exp(-x)
        return 1.0 - 1.0 / (1.0 + x)

    def slope(self, alpha, s):
        """d phi / d s."""
        x = self.scale * alpha * s
        if self.kind == EXPONENTIAL:
            return self.scale * alpha * np.exp(-x)
        return self.scale * alpha / (1.0 + x) ** 2


@dataclass(frozen=True)
class VerificationCost:
    """Verification cost family C_v(s), zero at zero, increasing, convex.

    kind "linear": C_v = k * s
    kind "linear_quadratic": C_v = s + s^2 / 2  (k unused)
    """

    kind: str
    k: float = 1.0

    def __post_init__(self):
        if self.kind not in (LINEAR, LINEAR_QUADRATIC):
            raise ValueError(f"unknown verification cost family: {self.kind!r}")
        if self.kind == LINEAR and not self.k > 0:
            raise ValueError("linear verification cost needs k > 0")

    def cost(self, s):
        if self.kind == LINEAR:
            return self.k * s
        return s + 0.5 * s * s

    def slope(self, s):
        if self.kind == LINEAR:
            return self.k if np.isscalar(s) else np.full_like(np.asarray(s, float), self.k)
        return 1.0 + s


@dataclass(frozen=True)
class ExecutionCost:
    """Manual execution cost C_w(beta), strictly decreasing in efficiency.

    kind "linear_in_efficiency": C_w = scale * (1 - beta), beta in [0, 1]
    kind "inverse_efficiency":   C_w = scale / beta,       beta in (0, inf)

    Out-of-domain beta raises instead of clamping.
    """

    kind: str
    scale: float

    def __post_init__(self):
        if self.kind not in (LINEAR_IN_EFFICIENCY, INVERSE_EFFICIENCY):
            raise ValueError(f"unknown execution cost family: {self.kind!r}")
        if not self.scale > 0:
            raise ValueError("execution cost scale must be positive")

    def beta_domain(self):
        if self.kind == LINEAR_IN_EFFICIENCY:
            return 0.0, 1.0
        return 0.0, math.inf  # open at 0

    def check_beta(self, beta):
        if self.kind == LINEAR_IN_EFFICIENCY:
            if not 0.0 <= beta <= 1.0:
                raise ValueError(f"beta={beta} outside [0, 1] for {self.kind}")
        elif not beta > 0.0:
            raise ValueError(f"beta={beta} outside (0, inf) for {self.kind}")

    def cost(self, beta):
        self.check_beta(beta)
        if self.kind == LINEAR_IN_EFFICIENCY:
            return self.scale * (1.0 - beta)
        return self.scale / beta


@dataclass(frozen=True)
class Ability:
    """Worker ability pair: verification reliability and execution efficiency."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")


@dataclass(frozen=True)
class Action:
    """A (d, s) pair: delegation probability and verification effort."""

    d: float
    s: float

    def __post_init__(self):
        if not 0.0 <= self.d <= 1.0:
            raise ValueError("d must lie in [0, 1]")
        if not 0.0 <= self.s <= 1.0:
            raise ValueError("s must lie in [0, 1]")


@dataclass(frozen=True)
class ModelParams:
    """Task profile, AI characteristics, and baseline worker characteristics.

    b_w / l_w: worker benefit from success and loss from failure
    b_i / l_i: institutional benefit and loss
    xi:        institutional discount on the worker's cost
    tau:       qualification threshold on institutional utility
    p_a / c_a: AI success probability and execution cost
    p_w:       worker success probability
    """

    b_w: float
    l_w: float
    b_i: float
    l_i: float
    xi: float
    tau: float
    p_a: float
    c_a: float
    p_w: float
    detection: Detection
    verification_cost: VerificationCost
    execution_cost: ExecutionCost

    def __post_init__(self):
        for name in ("b_w", "l_w", "b_i", "l_i", "xi", "tau", "c_a"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        for name in ("p_a", "p_w"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    @property
    def worker_stakes(self):
        return self.b_w + self.l_w

    @property
    def institution_stakes(self):
        return self.b_i + self.l_i

    def dominance_holds(self):
        """Institutional stakes exceed discounted worker stakes."""
        return self.institution_stakes > self.xi * self.worker_stakes

    def with_ai_success(self, p_a):
        return replace(self, p_a=p_a)

    def with_benefit_transfer(self, d_b):
        """Shift d_b of success benefit from the institution to the worker."""
        if not 0.0 <= d_b <= self.b_i:
            raise ValueError("transfer must lie in [0, b_i]")
        return replace(self, b_w=self.b_w + d_b, b_i=self.b_i - d_b)


@dataclass(frozen=True)
class Coefficients:
    """Affine decomposition U = f(s) * d + g for both objectives.

    f_w / f_i are evaluated at a particular s; g_w / g_i are the no-AI
    baselines (g_i equals the pre-AI quality Q0). k_w / k_i are the
    coefficients multiplying phi(s) inside f_w / f_i.
    """

    f_w: float
    g_w: float
    f_i: float
    g_i: float
    k_w: float
    k_i: float


def reference_params() -> ModelParams:
    """The library's reference configuration, used across demos and tests.

    Inverse-linear detection with scale 2, linear verification cost, and
    execution cost 5 * (1 - beta).
    """
    return ModelParams(
        b_w=8.0, l_w=6.0, b_i=14.0, l_i=12.0, xi=0.3, tau=6.4,
        p_a=0.65, c_a=0.0, p_w=0.75,
        detection=Detection(INVERSE_LINEAR, 2.0),
        verification_cost=VerificationCost(LINEAR, 1.0),
        execution_cost=ExecutionCost(LINEAR_IN_EFFICIENCY, 5.0),
    )


def detection_probability(detection: Detection, alpha: float, s: float):
    """Probability of catching an AI error at effort s with reliability alpha."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if not 0.0 <= s <= 1.0:
        raise ValueError("s must lie in [0, 1]")
    return float(detection.prob(alpha, s))


def task_success(params: ModelParams, ability: Ability, action: Action) -> float:
    """Success probability from direct work, direct AI, and corrected AI errors."""
    phi = detection_probability(params.detection, ability.alpha, action.s)
    d = action.d
    return (1.0 - d) * params.p_w + d * params.p_a + d * (1.0 - params.p_a) * phi * params.p_w


def total_cost(params: ModelParams, ability: Ability, action: Action) -> float:
    """Expected cost: manual execution, AI run, verification, and redo after detection."""
    phi = detection_probability(params.detection, ability.alpha, action.s)
    c_w = params.execution_cost.cost(ability.beta)
    c_v = params.verification_cost.cost(action.s)
    d = action.d
    return (1.0 - d) * c_w + d * (params.c_a + c_v + (1.0 - params.p_a) * phi * c_w)


def worker_utility(params: ModelParams, ability: Ability, action: Action) -> float:
    p = task_success(params, ability, action)
    return params.b_w * p - params.l_w * (1.0 - p) - total_cost(params, ability, action)


def institutional_utility(params: ModelParams, ability: Ability, action: Action) -> float:
    p = task_success(params, ability, action)
    return params.b_i * p - params.l_i * (1.0 - p) - params.xi * total_cost(params, ability, action)


def coefficients(params: ModelParams, ability: Ability, s: float) -> Coefficients:
    """Affine coefficients of both utilities in the delegation level."""
    phi = detection_probability(params.detection, ability.alpha, s)
    c_w = params.execution_cost.cost(ability.beta)
    c_v = params.verification_cost.cost(s)
    sw = params.worker_stakes
    si = params.institution_stakes
    k_w = (1.0 - params.p_a) * (sw * params.p_w - c_w)
    k_i = (1.0 - params.p_a) * (si * params.p_w - params.xi * c_w)
    f_w = k_w * phi - c_v - sw * (params.p_w - params.p_a) + c_w - params.c_a
    f_i = k_i * phi - params.xi * c_v - si * (params.p_w - params.p_a) + params.xi * (c_w - params.c_a)
    # baselines written exactly as the utility evaluators compute them at
    # (0, 0), so the identity g = U(0, 0) holds bitwise, not just to rounding
    g_w = params.b_w * params.p_w - params.l_w * (1.0 - params.p_w) - c_w
    g_i = params.b_i * params.p_w - params.l_i * (1.0 - params.p_w) - params.xi * c_w
    return Coefficients(f_w=f_w, g_w=g_w, f_i=f_i, g_i=g_i, k_w=k_w, k_i=k_i)


def worker_phi_coefficient(params: ModelParams, ability: Ability) -> float:
    """Coefficient on phi(s) in the worker's delegation increment."""
    c_w = params.execution_cost.cost(ability.beta)
    return (1.0 - params.p_a) * (params.worker_stakes * params.p_w - c_w)


def verification_surplus(params: ModelParams, ability: Ability, s: float) -> float:
    """Benefit of catching AI errors at effort s, net of verification cost."""
    phi = detection_probability(params.detection, ability.alpha, s)
    k_w = worker_phi_coefficient(params, ability)
    return k_w * phi - params.verification_cost.cost(s)


def delegation_gain(params: ModelParams, ability: Ability) -> float:
    """Utility change from switching manual work to unverified delegation.

    Equals the delegation increment at s = 0 and depends on beta only.
    """
    c_w = params.execution_cost.cost(ability.beta)
    return c_w - params.c_a - params.worker_stakes * (params.p_w - params.p_a)


@dataclass
class AssumptionReport:
    """Outcome of the regularity checks behind the regime characterizations."""

    dominance_ok: bool
    viability_ok: bool
    detection_monotone_ok: bool
    violations: list

    @property
    def all_ok(self):
        return self.dominance_ok and self.viability_ok and self.detection_monotone_ok


def check_assumptions(params: ModelParams, ability_grid: Iterable[Ability],
                      fd_step: float = 1e-5, tol: float = 1e-9) -> AssumptionReport:
    """Check institutional dominance, worker viability, and detection monotonicity.

    Detection monotonicity is checked by central differences in alpha of
    phi(s_dagger(alpha, beta)) at each grid ability, with s_dagger re-solved
    at the shifted alphas. Violations are listed, never raised.
    """
    from .solver import optimal_verification

    violations = []
    dominance_ok = params.dominance_holds()
    if not dominance_ok:
        violations.append(
            f"dominance violated: b_i+l_i={params.institution_stakes} "
            f"<= xi*(b_w+l_w)={params.xi * params.worker_stakes}")

    viability_ok = True
    detection_ok = True
    for ability in ability_grid:
        coef = coefficients(params, ability, 0.0)
        if coef.g_w < 0:
            viability_ok = False
            violations.append(f"negative pre-AI worker utility at {ability}: g_w={coef.g_w:.6g}")
        if coef.k_w < 0:
            viability_ok = False
            violations.append(f"negative phi coefficient at {ability}: k_w={coef.k_w:.6g}")
        a = ability.alpha
        lo = max(a - fd_step, 0.0)
        hi = a + fd_step
        phis = []
        for a_shift in (lo, hi):
            shifted = Ability(a_shift, ability.beta)
            s_dag = optimal_verification(params, shifted)
            phis.append(detection_probability(params.detection, a_shift, s_dag))
        deriv = (phis[1] - phis[0]) / (hi - lo)
        if deriv < -tol:
            detection_ok = False
            violations.append(f"detection not monotone at {ability}: d phi/d alpha={deriv:.3g}")

    return AssumptionReport(dominance_ok=dominance_ok, viability_ok=viability_ok,
                            detection_monotone_ok=detection_ok, violations=violations)
