"""From per-case observational logs to model parameters.

A case log records, per task, whether the worker alone, the AI alone, and
the assisted worker got it right, plus completion times. After cleaning,
the empirical rates and mean times identify the detection probability at
the worker's chosen effort, the effort itself, both ability parameters,
and (through the worker's own first-order condition) the stakes the worker
must be playing for. The calibrated worker can then be classified and
probed with the intervention levers.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .atlas import QualityReport, quality
from .interventions import LeverTarget, minimal_lever
from .model import (
    EXPONENTIAL, LINEAR, LINEAR_IN_EFFICIENCY,
    Ability, Detection, ExecutionCost, ModelParams, VerificationCost, coefficients,
)
from .solver import OptimalAction, optimal_action

CASE_COLUMNS = ["case_id", "worker_correct", "ai_correct", "assisted_correct",
                "worker_time", "assisted_time", "output_unchanged"]


class CalibrationError(ValueError):
    pass


@dataclass(frozen=True)
class CaseRecord:
    case_id: str
    worker_correct: int
    ai_correct: int
    assisted_correct: int
    worker_time: float
    assisted_time: float
    output_unchanged: int


@dataclass(frozen=True)
class CleaningRules:
    """Retention window on worker time (multiples of the mean) and override handling.

    Cases where the AI was right but the worker alone was wrong do not fit
    the error-detection story and are dropped as overrides when enabled.
    """

    time_window: tuple[float, float] = (0.5, 2.0)
    drop_overrides: bool = True


@dataclass(frozen=True)
class CleaningReport:
    n_input: int
    n_time_dropped: int
    n_override_dropped: int
    n_retained: int

    @property
    def override_fraction(self):
        return self.n_override_dropped / self.n_input if self.n_input else 0.0


@dataclass(frozen=True)
class Observables:
    """Empirical aggregates of a cleaned case log. AI execution cost is zero."""

    n: int
    p_w: float
    p_a: float
    p_assisted: float
    c_w: float
    c_a: float
    c_wa: float
    pr_unchanged: float
    cost_assisted: float
    decomposition_ok: bool


@dataclass
class CalibratedWorker:
    """Inverted model quantities for one worker, filled in stages.

    stakes is available once the first-order condition applies (interior
    effort, positive reliability); params and report are attached by
    classification.
    """

    phi_at_s_dagger: float
    c_v_at_s_dagger: float
    t_v_max: float
    t_w_max: float
    s_dagger: float
    alpha: float
    beta: float
    detection_scale: float
    observables: Observables
    boundary: bool = False
    stakes: float | None = None
    params: ModelParams | None = None
    report: QualityReport | None = None


@dataclass(frozen=True)
class InstitutionSpec:
    b_i: float
    l_i: float
    xi: float
    tau: float


@dataclass(frozen=True)
class ClassificationResult:
    worker: CalibratedWorker
    action: OptimalAction
    report: QualityReport
    lever_targets: dict[str, LeverTarget]
    warnings: list[str] = field(default_factory=list)
    min_viable_benefit_share: float = 0.0


def fixture_path() -> Path:
    """Path of the bundled synthetic single-clinician case log."""
    return Path(resources.files("delver").joinpath("data/clinician_cases.csv"))


def _parse_indicator(raw, row_num, col, problems):
    if raw in ("0", "1"):
        return int(raw)
    problems.append(f"row {row_num}: {col} must be 0 or 1, got {raw!r}")
    return 0


def _parse_time(raw, row_num, col, problems):
    try:
        value = float(raw)
    except ValueError:
        problems.append(f"row {row_num}: {col} is not a number: {raw!r}")
        return 1.0
    if value <= 0:
        problems.append(f"row {row_num}: {col} must be positive, got {raw!r}")
        return 1.0
    return value


def read_cases(path) -> list[CaseRecord]:
    """Parse a case CSV; leading '#' lines are comments. Malformed rows raise."""
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or set(reader.fieldnames) != set(CASE_COLUMNS):
        raise CalibrationError(
            f"expected columns {CASE_COLUMNS}, got {reader.fieldnames}")
    problems: list[str] = []
    records = []
    for row_num, row in enumerate(reader, start=2):
        records.append(CaseRecord(
            case_id=row["case_id"],
            worker_correct=_parse_indicator(row["worker_correct"], row_num, "worker_correct", problems),
            ai_correct=_parse_indicator(row["ai_correct"], row_num, "ai_correct", problems),
            assisted_correct=_parse_indicator(row["assisted_correct"], row_num, "assisted_correct", problems),
            worker_time=_parse_time(row["worker_time"], row_num, "worker_time", problems),
            assisted_time=_parse_time(row["assisted_time"], row_num, "assisted_time", problems),
            output_unchanged=_parse_indicator(row["output_unchanged"], row_num, "output_unchanged", problems),
        ))
    if problems:
        raise CalibrationError("malformed rows: " + "; ".join(problems))
    return records


def clean_cases(records: list[CaseRecord],
                rules: CleaningRules = CleaningRules()) -> tuple[list[CaseRecord], CleaningReport]:
    """Apply the time window (around the raw mean) and the override exclusion."""
    n_input = len(records)
    if n_input == 0:
        return [], CleaningReport(0, 0, 0, 0)
    mean_time = sum(r.worker_time for r in records) / n_input
    lo, hi = rules.time_window[0] * mean_time, rules.time_window[1] * mean_time
    in_window = [r for r in records if lo <= r.worker_time <= hi]
    n_time_dropped = n_input - len(in_window)
    if rules.drop_overrides:
        kept = [r for r in in_window if not (r.ai_correct == 1 and r.worker_correct == 0)]
    else:
        kept = in_window
    n_override_dropped = len(in_window) - len(kept)
    return kept, CleaningReport(n_input, n_time_dropped, n_override_dropped, len(kept))


def ingest_and_clean(path, rules: CleaningRules = CleaningRules()):
    return clean_cases(read_cases(path), rules)


def estimate_observables(records: list[CaseRecord]) -> Observables:
    """Empirical rates and mean times; assisted cost nets out the fixed entry time.

    Recorded assisted time includes entering results even when the AI
    output is kept verbatim, so the assisted cost is the mean assisted
    time minus the unchanged-output share of the mean worker time.
    """
    n = len(records)
    if n == 0:
        raise CalibrationError("no records to estimate from")
    p_w = sum(r.worker_correct for r in records) / n
    p_a = sum(r.ai_correct for r in records) / n
    p_assisted = sum(r.assisted_correct for r in records) / n
    c_w = sum(r.worker_time for r in records) / n
    c_wa = sum(r.assisted_time for r in records) / n
    pr_unchanged = sum(r.output_unchanged for r in records) / n
    cost_assisted = c_wa - pr_unchanged * c_w
    return Observables(n=n, p_w=p_w, p_a=p_a, p_assisted=p_assisted,
                       c_w=c_w, c_a=0.0, c_wa=c_wa, pr_unchanged=pr_unchanged,
                       cost_assisted=cost_assisted,
                       decomposition_ok=cost_assisted >= 0.0)


def infer_ability(obs: Observables, t_v_max: float, t_w_max: float,
                  detection_scale: float = 1.0) -> CalibratedWorker:
    """Invert the observables into detection probability, effort, and abilities.

    Uses exponential detection and linear time-denominated costs
    C_v(s) = t_v_max * s and C_w(beta) = t_w_max * (1 - beta), so that
    effort and efficiency land in [0, 1]. A detection probability of one
    (assisted success at its theoretical maximum) is flagged as a boundary
    rather than inverted.
    """
    if obs.p_assisted < obs.p_a:
        raise CalibrationError(
            f"assisted success {obs.p_assisted:.4g} below AI success {obs.p_a:.4g}: "
            "implied detection probability is negative")
    if obs.p_a >= 1.0 or obs.p_w <= 0.0:
        raise CalibrationError("detection probability undefined for p_a=1 or p_w=0")
    phi = (obs.p_assisted - obs.p_a) / ((1.0 - obs.p_a) * obs.p_w)
    if phi > 1.0 + 1e-12:
        raise CalibrationError(f"implied detection probability {phi:.4g} exceeds 1")
    phi = min(phi, 1.0)
    c_v = obs.cost_assisted - (1.0 - obs.p_a) * phi * obs.c_w
    if c_v < 0:
        raise CalibrationError(f"implied verification cost is negative: {c_v:.4g}")
    if t_w_max <= obs.c_w:
        raise CalibrationError("t_w_max must exceed the mean worker time")
    if t_v_max < c_v:
        raise CalibrationError("t_v_max must be at least the implied verification cost")
    s_dagger = c_v / t_v_max
    beta = 1.0 - obs.c_w / t_w_max
    boundary = phi == 1.0
    if boundary:
        alpha = math.inf
    elif phi == 0.0 or s_dagger == 0.0:
        alpha = 0.0
    else:
        alpha = -math.log(1.0 - phi) / (detection_scale * s_dagger)
    worker = CalibratedWorker(
        phi_at_s_dagger=phi, c_v_at_s_dagger=c_v, t_v_max=t_v_max, t_w_max=t_w_max,
        s_dagger=s_dagger, alpha=alpha, beta=beta, detection_scale=detection_scale,
        observables=obs, boundary=boundary)
    if not boundary and alpha > 0.0 and 0.0 < s_dagger < 1.0:
        worker.stakes = infer_stakes(worker)
    return worker


def infer_stakes(worker: CalibratedWorker) -> float:
    """Total stakes b_w + l_w implied by optimality of the observed effort.

    At an interior optimum the marginal detection gain equals the marginal
    verification cost, which pins down the stakes given everything else.
    """
    if worker.boundary or worker.alpha <= 0.0:
        raise CalibrationError("stakes undefined at zero reliability or boundary detection")
    if not 0.0 < worker.s_dagger < 1.0:
        raise CalibrationError("stakes undefined unless the observed effort is interior")
    obs = worker.observables
    a = worker.detection_scale
    marginal = (1.0 - obs.p_a) * a * worker.alpha * math.exp(-a * worker.alpha * worker.s_dagger)
    return (worker.t_v_max + marginal * obs.c_w) / (marginal * obs.p_w)


def assemble_params(worker: CalibratedWorker, institution: InstitutionSpec,
                    benefit_share: float = 0.6) -> ModelParams:
    """Model parameters for a calibrated worker under a given institution.

    Only the stakes total is identified; it is split benefit_share to the
    success benefit and the rest to the failure loss. The optimal action
    depends on the total alone, so the split only moves the worker's
    baseline utility level.
    """
    if worker.stakes is None:
        raise CalibrationError("stakes not identified; cannot assemble parameters")
    if not 0.0 < benefit_share < 1.0:
        raise CalibrationError("benefit_share must lie in (0, 1)")
    obs = worker.observables
    return ModelParams(
        b_w=benefit_share * worker.stakes, l_w=(1.0 - benefit_share) * worker.stakes,
        b_i=institution.b_i, l_i=institution.l_i, xi=institution.xi, tau=institution.tau,
        p_a=obs.p_a, c_a=obs.c_a, p_w=obs.p_w,
        detection=Detection(EXPONENTIAL, worker.detection_scale),
        verification_cost=VerificationCost(LINEAR, worker.t_v_max),
        execution_cost=ExecutionCost(LINEAR_IN_EFFICIENCY, worker.t_w_max),
    )


def classify_calibrated(worker: CalibratedWorker, institution: InstitutionSpec,
                        benefit_share: float = 0.6,
                        levers: tuple[str, ...] = ("alpha", "beta", "p_a")) -> ClassificationResult:
    """Regime and quality of a calibrated worker, plus minimal lever targets.

    Warnings record violated regularity conditions instead of aborting.
    The viable-share bound reports how much of the stakes must sit on the
    benefit side for the pre-AI worker utility to stay non-negative.
    """
    params = assemble_params(worker, institution, benefit_share)
    ability = Ability(worker.alpha, worker.beta)
    warnings = []
    if not params.dominance_holds():
        warnings.append("institutional dominance violated for this parameterization")
    coef = coefficients(params, ability, 0.0)
    if coef.g_w < 0:
        warnings.append(f"pre-AI worker utility is negative at this split: g_w={coef.g_w:.6g}")
    obs = worker.observables
    min_share = 1.0 - obs.p_w + obs.c_w / worker.stakes
    action = optimal_action(params, ability)
    report = quality(params, ability, institution.tau)
    targets = {lever: minimal_lever(params, ability, lever, institution.tau)
               for lever in levers}
    worker = replace_worker(worker, params=params, report=report)
    return ClassificationResult(worker=worker, action=action, report=report,
                                lever_targets=targets, warnings=warnings,
                                min_viable_benefit_share=min_share)


def replace_worker(worker: CalibratedWorker, **changes) -> CalibratedWorker:
    out = CalibratedWorker(**{**worker.__dict__})
    for key, value in changes.items():
        setattr(out, key, value)
    return out


def calibrate_file(path, t_v_max: float, t_w_max: float,
                   institution: InstitutionSpec | None = None,
                   rules: CleaningRules = CleaningRules(),
                   detection_scale: float = 1.0, benefit_share: float = 0.6):
    """Full chain from a case CSV to a classified worker.

    Returns (worker, cleaning_report, classification), with classification
    None when no institution is given.
    """
    records, report = ingest_and_clean(path, rules)
    obs = estimate_observables(records)
    worker = infer_ability(obs, t_v_max, t_w_max, detection_scale)
    classification = None
    if institution is not None:
        classification = classify_calibrated(worker, institution, benefit_share)
        worker = classification.worker
    return worker, report, classification
