"""Quality regimes and the separatrices that bound them in ability space.

Quality is institutional utility evaluated at the worker's privately
optimal action. The boundaries psi0 (manual vs verified delegation),
psi1 (pure vs verified delegation), psi (quality improvement), and
psi_tau (qualification) are found by bisection in alpha, relying on the
monotonicity of the underlying quantities. Grid sweeps assemble the whole
map into rows suitable for CSV emission.
"""

from __future__ import annotations

import csv
import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import (
    Ability, Action, ModelParams, coefficients, delegation_gain,
    institutional_utility, verification_surplus,
)
from .solver import (
    OptimalAction, Regime, manual_delegation_threshold, optimal_action,
    optimal_verification, qualification_threshold,
)

UNCHANGED_RTOL = 1e-9
_BRACKET_DOUBLINGS = 10


class QualityLabel(str, enum.Enum):
    IMPROVED = "improved"
    UNCHANGED = "unchanged"
    DEGRADED = "degraded"


class ComplianceLabel(str, enum.Enum):
    GAIN = "gain"
    LOSS = "loss"
    NEITHER = "neither"


@dataclass(frozen=True)
class QualityReport:
    """Quality with AI, the no-AI baseline, and the labels of their comparison."""

    q: float
    q0: float
    gap: float
    quality_label: QualityLabel
    compliance_label: ComplianceLabel


@dataclass(frozen=True)
class RootResult:
    """A boundary location in alpha, flagged when no sign change was found."""

    value: float
    bracketed: bool
    side: str = ""


@dataclass(frozen=True)
class AtlasRow:
    alpha: float
    beta: float
    d_star: int
    s_star: float
    regime: Regime
    q: float
    q0: float
    gap: float
    quality_label: QualityLabel
    compliance_label: ComplianceLabel


def _labels(q, q0, tau):
    tol = UNCHANGED_RTOL * (1.0 + abs(q0))
    gap = q - q0
    if gap > tol:
        quality = QualityLabel.IMPROVED
    elif gap < -tol:
        quality = QualityLabel.DEGRADED
    else:
        quality = QualityLabel.UNCHANGED
    if q >= tau and q0 < tau:
        compliance = ComplianceLabel.GAIN
    elif q < tau and q0 >= tau:
        compliance = ComplianceLabel.LOSS
    else:
        compliance = ComplianceLabel.NEITHER
    return gap, quality, compliance


def evaluate_point(params: ModelParams, ability: Ability,
                   tau: float | None = None) -> tuple[OptimalAction, QualityReport]:
    """Solve the worker problem once and report quality at the optimum."""
    if tau is None:
        tau = params.tau
    act = optimal_action(params, ability)
    q0 = coefficients(params, ability, 0.0).g_i
    q = institutional_utility(params, ability, Action(float(act.d_star), act.s_star))
    gap, quality_label, compliance_label = _labels(q, q0, tau)
    return act, QualityReport(q=q, q0=q0, gap=gap,
                              quality_label=quality_label, compliance_label=compliance_label)


def quality(params: ModelParams, ability: Ability, tau: float | None = None) -> QualityReport:
    return evaluate_point(params, ability, tau)[1]


def _bisect_boundary(fn, alpha_max: float, tol: float) -> RootResult:
    """Infimum of {alpha : fn(alpha) > 0} for non-decreasing fn, with flags."""
    lo = 0.0
    if fn(lo) > 0.0:
        return RootResult(lo, False, "low")
    hi = alpha_max
    doublings = 0
    while fn(hi) <= 0.0:
        if doublings >= _BRACKET_DOUBLINGS:
            return RootResult(hi, False, "high")
        hi *= 2.0
        doublings += 1
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fn(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return RootResult(0.5 * (lo + hi), True)


def psi0(params: ModelParams, beta: float, alpha_max: float = 10.0,
         tol: float = 1e-9) -> RootResult:
    """Boundary between manual work and verified delegation at efficiency beta.

    Defined for beta at or above the manual-delegation threshold, where the
    delegation increment at the optimal verification effort crosses zero.
    The condition is evaluated as surplus-at-optimum > -gain with the
    right side clamped at zero, which the domain guarantees up to rounding;
    this keeps the junction with psi1 exact when the gain is a few ulps
    from zero.
    """
    t = manual_delegation_threshold(params).value
    if beta < t - 1e-9:
        raise ValueError(f"psi0 needs beta >= t={t:.6g}, got {beta}")
    rhs = max(0.0, -delegation_gain(params, Ability(0.0, beta)))

    def f(alpha):
        ability = Ability(alpha, beta)
        s_dag = optimal_verification(params, ability)
        return verification_surplus(params, ability, s_dag) - rhs

    return _bisect_boundary(f, alpha_max, tol)


def psi1(params: ModelParams, beta: float, alpha_max: float = 10.0,
         tol: float = 1e-9) -> RootResult:
    """Boundary between pure and verified delegation at efficiency beta.

    Defined for beta at or below the manual-delegation threshold, where the
    marginal verification surplus at zero effort crosses zero.
    """
    t = manual_delegation_threshold(params).value
    if beta > t + 1e-9:
        raise ValueError(f"psi1 needs beta <= t={t:.6g}, got {beta}")
    c_v0 = float(params.verification_cost.slope(0.0))

    def f(alpha):
        k_w = coefficients(params, Ability(alpha, beta), 0.0).k_w
        return k_w * float(params.detection.slope(alpha, 0.0)) - c_v0

    return _bisect_boundary(f, alpha_max, tol)


def psi_prime(params: ModelParams, beta: float, alpha_max: float = 10.0,
              tol: float = 1e-9) -> RootResult:
    """Reliability at which delegation stops hurting the institution."""

    def f(alpha):
        ability = Ability(alpha, beta)
        s_dag = optimal_verification(params, ability)
        return coefficients(params, ability, s_dag).f_i

    return _bisect_boundary(f, alpha_max, tol)


def psi(params: ModelParams, beta: float, alpha_max: float = 10.0,
        tol: float = 1e-9) -> RootResult:
    """Quality-improvement boundary: above it, AI access raises quality.

    The manual-work boundary is extended by zero below the delegation
    threshold before taking the pointwise maximum with the institutional
    break-even boundary.
    """
    t = manual_delegation_threshold(params).value
    if beta < t:
        base = RootResult(0.0, True)
    else:
        base = psi0(params, beta, alpha_max, tol)
    other = psi_prime(params, beta, alpha_max, tol)
    return other if other.value >= base.value else base


def psi_tau(params: ModelParams, beta: float, tau: float | None = None,
            alpha_max: float = 10.0, tol: float = 1e-9) -> RootResult:
    """Reliability at which quality under delegation reaches tau."""
    if tau is None:
        tau = params.tau

    def f(alpha):
        ability = Ability(alpha, beta)
        s_dag = optimal_verification(params, ability)
        coef = coefficients(params, ability, s_dag)
        return coef.g_i + coef.f_i - tau

    return _bisect_boundary(f, alpha_max, tol)


def separatrix_intersection(params: ModelParams, beta_hi: float | None = None,
                            tol: float = 1e-6) -> tuple[float, float]:
    """(alpha, beta) where the quality boundary meets the manual-work boundary.

    Searches beta above the manual-delegation threshold for the crossing of
    the institutional break-even boundary with psi0.
    """
    t = manual_delegation_threshold(params).value
    if beta_hi is None:
        beta_hi = params.execution_cost.beta_domain()[1]
        if math.isinf(beta_hi):
            beta_hi = max(1.0, 2.0 * t)

    def diff(beta):
        return psi_prime(params, beta).value - psi0(params, beta).value

    lo, hi = t + 1e-6, beta_hi
    if diff(lo) <= 0.0 or diff(hi) >= 0.0:
        raise ValueError("boundaries do not cross in the searched beta interval")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if diff(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    beta_star = 0.5 * (lo + hi)
    return psi0(params, beta_star).value, beta_star


def _row(params, alpha, beta, tau):
    act, rep = evaluate_point(params, Ability(alpha, beta), tau)
    return AtlasRow(alpha=alpha, beta=beta, d_star=act.d_star, s_star=act.s_star,
                    regime=act.regime, q=rep.q, q0=rep.q0, gap=rep.gap,
                    quality_label=rep.quality_label, compliance_label=rep.compliance_label)


def _sweep_one_beta(args):
    params, alphas, beta, tau = args
    return [_row(params, alpha, beta, tau) for alpha in alphas]


def linspace_range(bounds: tuple[float, float, int]) -> np.ndarray:
    start, stop, count = bounds
    if count < 1:
        raise ValueError("range count must be >= 1")
    return np.linspace(start, stop, int(count))


def sweep_grid(params: ModelParams, alpha_range: tuple[float, float, int],
               beta_range: tuple[float, float, int], tau: float | None = None,
               jobs: int = 1) -> list[AtlasRow]:
    """Evaluate the quality map on a grid, beta-major, in deterministic order.

    Rows are ordered by beta first, alpha second, regardless of how many
    workers computed them.
    """
    if tau is None:
        tau = params.tau
    alphas = [float(a) for a in linspace_range(alpha_range)]
    betas = [float(b) for b in linspace_range(beta_range)]
    tasks = [(params, alphas, beta, tau) for beta in betas]
    if jobs > 1 and len(betas) >= 4:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sweep_one_beta, tasks, chunksize=max(1, len(betas) // (4 * jobs))))
    else:
        chunks = [_sweep_one_beta(task) for task in tasks]
    return [row for chunk in chunks for row in chunk]


def boundary_curve(params: ModelParams, which: str, betas,
                   tau: float | None = None, alpha_max: float = 10.0) -> list[tuple[float, float]]:
    """(beta, alpha) samples of one separatrix, restricted to its beta domain."""
    t = manual_delegation_threshold(params).value
    out = []
    for beta in betas:
        beta = float(beta)
        if which == "psi0":
            if beta < t - 1e-9:
                continue
            res = psi0(params, beta, alpha_max)
        elif which == "psi1":
            if beta > t + 1e-9:
                continue
            res = psi1(params, beta, alpha_max)
        elif which == "psi":
            res = psi(params, beta, alpha_max)
        elif which == "psi_tau":
            res = psi_tau(params, beta, tau, alpha_max)
        else:
            raise ValueError(f"unknown boundary {which!r}")
        out.append((beta, res.value))
    return out


def fmt(x: float) -> str:
    return f"{x:.9g}"


ATLAS_HEADER = ["alpha", "beta", "d_star", "s_star", "regime",
                "q", "q0", "gap", "quality", "compliance"]


def write_atlas_csv(rows, fileobj):
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(ATLAS_HEADER)
    for r in rows:
        writer.writerow([fmt(r.alpha), fmt(r.beta), str(r.d_star), fmt(r.s_star),
                         r.regime.value, fmt(r.q), fmt(r.q0), fmt(r.gap),
                         r.quality_label.value, r.compliance_label.value])


def write_boundary_csv(points, fileobj):
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["beta", "alpha"])
    for beta, alpha in points:
        writer.writerow([fmt(beta), fmt(alpha)])
