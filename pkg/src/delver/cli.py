"""Command-line interface: solve, sweep, intervene, extend, calibrate, check.

Exit codes: 0 on success, 1 on domain or configuration errors (one-line
diagnostic on stderr), 2 on usage errors. Output is deterministic for
identical inputs; floats are printed at 9 significant digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import calibration as cal
from .atlas import (
    boundary_curve, evaluate_point, fmt, psi, psi0, psi1, psi_tau,
    separatrix_intersection, sweep_grid, write_atlas_csv, write_boundary_csv,
)
from .config import ConfigError, load_params, params_to_dict, parse_range
from .extensions import Belief, DifficultyProfile, Rework, believed_action_quality, expected_quality, rework_quality
from .interventions import CostModel, CostTerm, ai_upgrade_gain, incentive_transfer_gain, minimal_lever, worker_upskill
from .model import Ability, check_assumptions, worker_utility, Action
from .sampling import sample_ability, sample_params
from .solver import brute_force_action, manual_delegation_threshold, optimal_action, qualification_threshold


def _jsonable(value):
    if isinstance(value, float):
        return float(f"{value:.9g}")
    return value


def _emit_json(payload):
    print(json.dumps(payload, sort_keys=True, default=_jsonable))


def _emit_lines(pairs):
    for key, value in pairs:
        print(f"{key} {value}")


def _ability(args):
    return Ability(args.alpha, args.beta)


def _solve_payload(params, ability):
    act, rep = evaluate_point(params, ability)
    u_w = worker_utility(params, ability, Action(float(act.d_star), act.s_star))
    return act, rep, u_w


def cmd_solve(args):
    params = load_params(args.config)
    ability = _ability(args)
    act, rep, u_w = _solve_payload(params, ability)
    rows = [("regime", act.regime.value), ("d_star", act.d_star),
            ("s_star", fmt(act.s_star)), ("s_dagger", fmt(act.s_dagger)),
            ("f_w_at_s_dagger", fmt(act.f_w_at_s_dagger)), ("u_w", fmt(u_w))]
    payload = {"regime": act.regime.value, "d_star": act.d_star,
               "s_star": _jsonable(act.s_star), "s_dagger": _jsonable(act.s_dagger),
               "f_w_at_s_dagger": _jsonable(act.f_w_at_s_dagger), "u_w": _jsonable(u_w),
               "config": params_to_dict(params),
               "alpha": _jsonable(ability.alpha), "beta": _jsonable(ability.beta)}
    if args.verify:
        oracle_action, oracle_u = brute_force_action(params, ability)
        rows += [("oracle_d", fmt(oracle_action.d)), ("oracle_s", fmt(oracle_action.s)),
                 ("oracle_u", fmt(oracle_u)), ("analytic_minus_oracle", fmt(u_w - oracle_u))]
        payload.update({"oracle_d": _jsonable(oracle_action.d), "oracle_s": _jsonable(oracle_action.s),
                        "oracle_u": _jsonable(oracle_u),
                        "analytic_minus_oracle": _jsonable(u_w - oracle_u)})
    if args.json:
        _emit_json(payload)
    else:
        _emit_lines(rows)
    return 0


def cmd_quality(args):
    params = load_params(args.config)
    ability = _ability(args)
    tau = args.tau if args.tau is not None else params.tau
    act, rep = evaluate_point(params, ability, tau)
    payload = {"q": _jsonable(rep.q), "q0": _jsonable(rep.q0), "gap": _jsonable(rep.gap),
               "quality": rep.quality_label.value, "compliance": rep.compliance_label.value,
               "regime": act.regime.value, "tau": _jsonable(tau)}
    if args.json:
        _emit_json(payload)
    else:
        _emit_lines([(k, v if isinstance(v, str) else fmt(float(v))) for k, v in payload.items()])
    return 0


def cmd_atlas(args):
    params = load_params(args.config)
    rows = sweep_grid(params, parse_range(args.alpha), parse_range(args.beta),
                      tau=args.tau, jobs=args.jobs)
    with open(args.out, "w", newline="") as fh:
        write_atlas_csv(rows, fh)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_boundary(args):
    params = load_params(args.config)
    betas = np.linspace(*parse_range(args.beta_range))
    points = boundary_curve(params, args.which, betas, tau=args.tau)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_boundary_csv(points, fh)
        print(f"wrote {len(points)} rows to {args.out}")
    else:
        write_boundary_csv(points, sys.stdout)
    return 0


def cmd_oracle(args):
    params = load_params(args.config)
    ability = _ability(args)
    action, u = brute_force_action(params, ability, args.d_steps, args.s_steps)
    payload = {"d": _jsonable(action.d), "s": _jsonable(action.s), "u_w": _jsonable(u)}
    if args.json:
        _emit_json(payload)
    else:
        _emit_lines([("d", fmt(action.d)), ("s", fmt(action.s)), ("u_w", fmt(u))])
    return 0


def _parse_cost_term(text):
    if text == "off":
        return None
    parts = text.split(":")
    kind = parts[0]
    if kind == "linear" and len(parts) == 2:
        return CostTerm("linear", float(parts[1]))
    if kind == "power" and len(parts) == 3:
        return CostTerm("power", float(parts[1]), float(parts[2]))
    raise ConfigError(f"cost term must be linear:C, power:C:RHO, or off; got {text!r}")


def cmd_intervene_worker(args):
    params = load_params(args.config)
    ability = _ability(args)
    model = CostModel(h_alpha=_parse_cost_term(args.h1), h_beta=_parse_cost_term(args.h2))
    plan = worker_upskill(params, ability, model, tau=args.tau)
    payload = {"d_alpha": _jsonable(plan.d_alpha), "d_beta": _jsonable(plan.d_beta),
               "cost": _jsonable(plan.cost), "achieved_q": _jsonable(plan.achieved_q),
               "feasible": plan.feasible}
    if args.json:
        _emit_json(payload)
    else:
        _emit_lines([("d_alpha", fmt(plan.d_alpha)), ("d_beta", fmt(plan.d_beta)),
                     ("cost", fmt(plan.cost)), ("achieved_q", fmt(plan.achieved_q)),
                     ("feasible", int(plan.feasible))])
    return 0


def cmd_intervene_institution(args):
    params = load_params(args.config)

    def gain_at(ability):
        if args.lever == "p_a":
            return ai_upgrade_gain(params, ability, args.delta)
        return incentive_transfer_gain(params, ability, args.delta)

    if args.alpha_range and args.beta_range:
        alphas = np.linspace(*parse_range(args.alpha_range))
        betas = np.linspace(*parse_range(args.beta_range))
        out = sys.stdout if not args.out else open(args.out, "w", newline="")
        try:
            out.write("alpha,beta,lever,delta,gain,new_q\n")
            for beta in betas:
                for alpha in alphas:
                    res = gain_at(Ability(float(alpha), float(beta)))
                    out.write(",".join([fmt(float(alpha)), fmt(float(beta)), res.lever,
                                        fmt(res.delta), fmt(res.gain), fmt(res.new_q)]) + "\n")
        finally:
            if args.out:
                out.close()
                print(f"wrote {len(alphas) * len(betas)} rows to {args.out}")
        return 0
    if args.alpha is None or args.beta is None:
        raise ConfigError("need --alpha and --beta, or --alpha-range and --beta-range")
    res = gain_at(_ability(args))
    _emit_lines([("lever", res.lever), ("delta", fmt(res.delta)),
                 ("gain", fmt(res.gain)), ("new_q", fmt(res.new_q))])
    return 0


def cmd_intervene_minimal(args):
    params = load_params(args.config)
    target = minimal_lever(params, _ability(args), args.lever, tau=args.tau)
    _emit_lines([("lever", target.lever), ("value", fmt(target.value)),
                 ("feasible", int(target.feasible))])
    return 0


def _extension_grid(args, evaluate, header, extra):
    alphas = np.linspace(*parse_range(args.alpha_range))
    betas = np.linspace(*parse_range(args.beta_range))
    out = sys.stdout if not args.out else open(args.out, "w", newline="")
    try:
        out.write(",".join(header) + "\n")
        for beta in betas:
            for alpha in alphas:
                fields = evaluate(Ability(float(alpha), float(beta)))
                out.write(",".join([fmt(float(alpha)), fmt(float(beta))] + extra + fields) + "\n")
    finally:
        if args.out:
            out.close()
            print(f"wrote {len(alphas) * len(betas)} rows to {args.out}")
    return 0


def cmd_extend(args):
    params = load_params(args.config)
    if args.kind == "difficulty":
        profile = DifficultyProfile(difficulty=args.hhat, nodes=args.nodes)

        def evaluate(ability):
            rep = expected_quality(params, ability, profile)
            return [fmt(rep.q), fmt(rep.q0), fmt(rep.gap),
                    rep.quality_label.value, rep.compliance_label.value]

        header = ["alpha", "beta", "difficulty", "nodes", "q", "q0", "gap", "quality", "compliance"]
        extra = ["" if args.hhat is None else fmt(args.hhat), str(args.nodes)]
        return _extension_grid(args, evaluate, header, extra)

    if args.kind == "belief":
        if args.p_hat is None:
            raise ConfigError("extend belief needs --p-hat")
        belief = Belief(args.p_hat)

        def evaluate(ability):
            act, rep = believed_action_quality(params, ability, belief)
            return [str(act.d_star), fmt(act.s_star), act.regime.value,
                    fmt(rep.q), fmt(rep.q0), fmt(rep.gap),
                    rep.quality_label.value, rep.compliance_label.value]

        header = ["alpha", "beta", "p_hat", "d_star", "s_star", "regime",
                  "q", "q0", "gap", "quality", "compliance"]
        return _extension_grid(args, evaluate, header, [fmt(args.p_hat)])

    if args.kappa is None:
        raise ConfigError("extend rework needs --kappa")
    rework = Rework(args.kappa)

    def evaluate(ability):
        act, rep = rework_quality(params, ability, rework)
        return [str(act.d_star), fmt(act.s_star), act.regime.value,
                fmt(rep.q), fmt(rep.q0), fmt(rep.gap),
                rep.quality_label.value, rep.compliance_label.value]

    header = ["alpha", "beta", "kappa", "d_star", "s_star", "regime",
              "q", "q0", "gap", "quality", "compliance"]
    return _extension_grid(args, evaluate, header, [fmt(args.kappa)])


def cmd_calibrate(args):
    records, cleaning = cal.ingest_and_clean(args.cases)
    obs = cal.estimate_observables(records)
    worker = cal.infer_ability(obs, args.tvmax, args.twmax)
    payload = {
        "cleaning": {"n_input": cleaning.n_input, "n_time_dropped": cleaning.n_time_dropped,
                     "n_override_dropped": cleaning.n_override_dropped,
                     "n_retained": cleaning.n_retained,
                     "override_fraction": _jsonable(cleaning.override_fraction)},
        "observables": {"n": obs.n, "p_w": _jsonable(obs.p_w), "p_a": _jsonable(obs.p_a),
                        "p_assisted": _jsonable(obs.p_assisted), "c_w": _jsonable(obs.c_w),
                        "c_wa": _jsonable(obs.c_wa), "pr_unchanged": _jsonable(obs.pr_unchanged),
                        "cost_assisted": _jsonable(obs.cost_assisted)},
        "worker": {"phi_at_s_dagger": _jsonable(worker.phi_at_s_dagger),
                   "c_v_at_s_dagger": _jsonable(worker.c_v_at_s_dagger),
                   "t_v_max": _jsonable(worker.t_v_max), "t_w_max": _jsonable(worker.t_w_max),
                   "detection_scale": _jsonable(worker.detection_scale),
                   "s_dagger": _jsonable(worker.s_dagger),
                   "alpha": _jsonable(worker.alpha), "beta": _jsonable(worker.beta),
                   "stakes": None if worker.stakes is None else _jsonable(worker.stakes),
                   "boundary": worker.boundary},
    }
    if worker.stakes is not None:
        b_i = args.b_i if args.b_i is not None else 0.6 * worker.stakes
        l_i = args.l_i if args.l_i is not None else 0.4 * worker.stakes
        institution = cal.InstitutionSpec(b_i=b_i, l_i=l_i, xi=args.xi, tau=args.tau)
        result = cal.classify_calibrated(worker, institution)
        payload["classification"] = {
            "params": params_to_dict(result.worker.params),
            "regime": result.action.regime.value,
            "d_star": result.action.d_star,
            "s_star": _jsonable(result.action.s_star),
            "f_w_at_s_dagger": _jsonable(result.action.f_w_at_s_dagger),
            "q": _jsonable(result.report.q), "q0": _jsonable(result.report.q0),
            "quality": result.report.quality_label.value,
            "compliance": result.report.compliance_label.value,
            "lever_targets": {name: {"value": _jsonable(t.value), "feasible": t.feasible}
                              for name, t in sorted(result.lever_targets.items())},
            "warnings": result.warnings,
            "min_viable_benefit_share": _jsonable(result.min_viable_benefit_share),
        }
    if args.json:
        _emit_json(payload)
    else:
        print(json.dumps(payload, sort_keys=True, indent=2, default=_jsonable))
    return 0


def cmd_selfcheck(args):
    params = load_params(args.config)
    t = manual_delegation_threshold(params)
    t_tau = qualification_threshold(params)
    _emit_lines([("t", fmt(t.value) + ("" if t.bracketed else " (boundary)")),
                 ("t_tau", fmt(t_tau.value) + ("" if t_tau.bracketed else " (boundary)")),
                 ("dominance", int(params.dominance_holds()))])
    grid = [Ability(a, b) for a in (0.2, 0.8) for b in (0.25, 0.75)]
    report = check_assumptions(params, grid)
    _emit_lines([("assumptions_ok", int(report.all_ok))])
    for issue in report.violations:
        print(f"violation {issue}")
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    failures = 0
    for _ in range(args.samples):
        ability = sample_ability(rng, params)
        act, _, u_w = _solve_payload(params, ability)
        _, oracle_u = brute_force_action(params, ability, d_steps=11, s_steps=2001)
        gap = oracle_u - u_w
        worst = max(worst, gap)
        if gap > 1e-6 * (1.0 + abs(u_w)):
            failures += 1
    _emit_lines([("oracle_spot_checks", args.samples),
                 ("oracle_max_shortfall", fmt(worst)),
                 ("oracle_failures", failures)])
    return 1 if failures else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="delver",
        description="Delegation and verification decisions for AI-assisted work.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_point(p):
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--beta", type=float, required=True)

    p = sub.add_parser("solve", help="optimal action for one worker")
    p.add_argument("--config", required=True)
    add_point(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="compare against the grid oracle")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("quality", help="quality report for one worker")
    p.add_argument("--config", required=True)
    add_point(p)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_quality)

    p = sub.add_parser("atlas", help="quality map on an ability grid, as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--alpha", required=True, help="range start:end:count")
    p.add_argument("--beta", required=True, help="range start:end:count")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="parallel workers for the sweep (default: all cores)")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("boundary", help="one separatrix as (beta, alpha) CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--which", required=True, choices=["psi0", "psi1", "psi", "psi_tau"])
    p.add_argument("--beta-range", required=True)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("oracle", help="brute-force grid maximizer")
    p.add_argument("--config", required=True)
    add_point(p)
    p.add_argument("--d-steps", type=int, default=11)
    p.add_argument("--s-steps", type=int, default=4001)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("intervene", help="worker upskilling and institutional levers")
    isub = p.add_subparsers(dest="mode", required=True)

    pw = isub.add_parser("worker", help="minimum-cost upskilling to reach tau")
    pw.add_argument("--config", required=True)
    add_point(pw)
    pw.add_argument("--tau", type=float, default=None)
    pw.add_argument("--h1", default="linear:1", help="alpha cost: linear:C, power:C:RHO, off")
    pw.add_argument("--h2", default="linear:1", help="beta cost: linear:C, power:C:RHO, off")
    pw.add_argument("--json", action="store_true")
    pw.set_defaults(func=cmd_intervene_worker)

    pi = isub.add_parser("institution", help="AI upgrade or benefit transfer")
    pi.add_argument("--config", required=True)
    pi.add_argument("--lever", required=True, choices=["p_a", "b_transfer"])
    pi.add_argument("--delta", type=float, required=True)
    pi.add_argument("--alpha", type=float, default=None)
    pi.add_argument("--beta", type=float, default=None)
    pi.add_argument("--alpha-range", default=None)
    pi.add_argument("--beta-range", default=None)
    pi.add_argument("--out", default=None)
    pi.set_defaults(func=cmd_intervene_institution)

    pm = isub.add_parser("minimal", help="smallest single lever reaching tau")
    pm.add_argument("--config", required=True)
    add_point(pm)
    pm.add_argument("--lever", required=True, choices=["alpha", "beta", "p_a"])
    pm.add_argument("--tau", type=float, default=None)
    pm.set_defaults(func=cmd_intervene_minimal)

    p = sub.add_parser("extend", help="difficulty, belief, and rework extensions")
    p.add_argument("kind", choices=["difficulty", "belief", "rework"])
    p.add_argument("--config", required=True)
    p.add_argument("--alpha-range", required=True)
    p.add_argument("--beta-range", required=True)
    p.add_argument("--hhat", type=float, default=None, help="pin the difficulty level")
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--p-hat", type=float, default=None, help="believed AI success probability")
    p.add_argument("--kappa", type=float, default=None, help="re-execution discount")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("calibrate", help="invert a case log into model parameters")
    p.add_argument("--cases", required=True)
    p.add_argument("--tvmax", type=float, required=True)
    p.add_argument("--twmax", type=float, required=True)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--b-i", type=float, default=None)
    p.add_argument("--l-i", type=float, default=None)
    p.add_argument("--xi", type=float, default=0.5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("selfcheck", help="thresholds, assumptions, oracle spot checks")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, cal.CalibrationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
