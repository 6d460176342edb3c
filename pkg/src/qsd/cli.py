"""Command-line front end.

Every calculator, constructor and simulation is exposed as a subcommand
emitting CSV or JSON, deterministic for fixed flags and seed.  Exit codes:
0 on success, 1 on validation errors (including unknown flags), 2 when a
requested construction is infeasible.  The environment variable QSD_SEED
supplies the default simulation seed.
"""

import argparse
import json
import os
import sys

import numpy as np

from .bounds import (
    clone_probability,
    estimation_fidelity,
    estimation_shrink,
    multicopy_discrimination,
    ucm_fidelity,
    ucm_shrink,
)
from .entangle import build_plan
from .mcsim import (
    SimConfig,
    run_discrimination,
    run_unambiguous,
    sample_categorical,
    sweep_theta,
    trial_uniforms,
)
from .minerror import (
    Ensemble,
    TwoStateFamily,
    brute_force_two_state,
    error_probability,
    helstrom_bound,
    helstrom_measurement,
    make_symmetric,
    square_root_measurement,
    trine_states,
)
from .povm import outcome_probs
from .qcore import BipartiteState, partial_trace
from .serialize import unambiguous_to_json
from .unambiguous import (
    InfeasibleSuccessError,
    idp_bound,
    interferometer_sim,
    build_interferometer,
    symmetric_unambiguous_optimum,
    unambiguous_povm,
)

DEFAULT_SEED = 12345


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through the
    # validation-error path (exit 1) instead
    def error(self, message):
        raise _UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) if not isinstance(x, str) else x for x in row))
    return "\n".join(lines) + "\n"


def _angle(value: float, degrees: bool) -> float:
    return float(np.radians(value)) if degrees else float(value)


def _default_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QSD_SEED")
    return int(env) if env else DEFAULT_SEED


def _parse_coeffs(text: str) -> np.ndarray:
    try:
        c = np.array([float(x) for x in text.split(",")], dtype=complex)
    except ValueError as exc:
        raise _UsageError(f"could not parse coefficients {text!r}: {exc}") from exc
    norm = np.linalg.norm(c)
    if norm == 0:
        raise ValueError("coefficients must not all vanish")
    return c / norm


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_helstrom(args) -> str:
    eta = args.eta_plus
    if args.theta is None and args.grid is None:
        raise _UsageError("helstrom requires --theta or --grid")
    if args.grid is not None:
        thetas = np.linspace(np.pi / 4 / args.grid, np.pi / 4, args.grid)
    else:
        thetas = [_angle(args.theta, args.degrees)]
    rows = []
    for theta in thetas:
        if not 0.0 < theta <= np.pi / 4 + 1e-12:
            raise ValueError(f"theta {theta} outside (0, pi/4]")
        fam = TwoStateFamily(theta, eta)
        bound = helstrom_bound(eta, fam.overlap)
        achieved = error_probability(fam.ensemble(), helstrom_measurement(fam))
        brute, _ = brute_force_two_state(fam.ensemble(), args.resolution)
        rows.append((theta, bound, achieved, brute))
    return _csv(("theta", "bound", "achieved", "brute_force"), rows)


def _cmd_udp(args) -> str:
    if (args.theta is None) == (args.coeffs is None):
        raise _UsageError("udp requires exactly one of --theta or --coeffs")
    if args.theta is not None:
        theta = _angle(args.theta, args.degrees)
        fam = TwoStateFamily(theta)
        states = fam.states
        overlap = idp_bound(fam.overlap)
        success = args.success if args.success is not None else 1.0 - overlap
        upovm = unambiguous_povm(states, success)
        model = build_interferometer(theta)
        stats = interferometer_sim(theta)
        doc = {
            "theta": theta,
            "overlap": overlap,
            "success_probs": [float(p) for p in upovm.success_probs],
            "inconclusive_prob": float(np.mean(
                [s.conj() @ upovm.inconclusive @ s for s in states]).real),
            "povm": unambiguous_to_json(upovm),
            "interferometer": {
                "transmission": model.transmission,
                "reflection": model.reflection,
                "statistics": stats,
            },
        }
        if args.format == "csv":
            rows = [(name, stats[name]["D+"], stats[name]["D-"], stats[name]["D?"])
                    for name in ("+", "-")]
            return _csv(("input", "D+", "D-", "D?"), rows)
        return json.dumps(doc, indent=2) + "\n"

    coeffs = _parse_coeffs(args.coeffs)
    fam = make_symmetric(coeffs)
    p_success, p_fail = symmetric_unambiguous_optimum(fam)
    success = args.success if args.success is not None else p_success
    upovm = unambiguous_povm(fam.states, success)
    doc = {
        "coefficients": [[c.real, c.imag] for c in coeffs],
        "optimal_success": p_success,
        "inconclusive_prob": p_fail,
        "success_probs": [float(p) for p in upovm.success_probs],
        "povm": unambiguous_to_json(upovm),
    }
    if args.format == "csv":
        rows = [(j, upovm.success_probs[j], p_fail) for j in range(len(fam.states))]
        return _csv(("state", "success_prob", "inconclusive_prob"), rows)
    return json.dumps(doc, indent=2) + "\n"


def _cmd_bounds(args) -> str:
    if args.estimation:
        if args.m is None:
            raise _UsageError("--estimation requires --m")
        fid = estimation_fidelity(args.m)
        shrink = estimation_shrink(args.m)
        rows = [(args.m, fid, shrink, fid - 0.5 * (1.0 + shrink))]
        return _csv(("m", "mean_fidelity", "shrink", "fidelity_identity_residual"), rows)
    if args.m is None or args.n is None:
        raise _UsageError("bounds requires --m and --n (or --estimation --m)")
    m, n, s = args.m, args.n, args.overlap
    p_m = multicopy_discrimination(m, s)
    p_n = multicopy_discrimination(n, s)
    clone = clone_probability(m, n, s)
    shrink = ucm_shrink(m, n)
    fid = ucm_fidelity(m, n)
    rows = [(m, n, s, p_m, p_n, clone, shrink, fid,
             fid - 0.5 * (1.0 + shrink),
             shrink - estimation_shrink(m) / estimation_shrink(n))]
    header = ("m", "n", "overlap", "discrimination_m", "discrimination_n",
              "clone_prob", "ucm_shrink", "ucm_fidelity",
              "fidelity_identity_residual", "shrink_ratio_residual")
    return _csv(header, rows)


def _metric_rows(report, cfg):
    return [(key, report.empirical[key], report.analytic[key],
             report.stderr[key], str(bool(report.passed[key])).lower(),
             cfg.trials, cfg.seed)
            for key in report.empirical]


_METRIC_HEADER = ("metric", "empirical", "analytic", "stderr", "passed", "trials", "seed")


def _cmd_simulate(args) -> str:
    cfg = SimConfig(_default_seed(args), args.trials)
    scenario = args.scenario

    if scenario == "helstrom-sweep":
        thetas = np.radians(np.arange(5.0, 50.0, 5.0))
        rows = sweep_theta(thetas, cfg)
        return _csv(("theta", "analytic", "empirical", "stderr", "trials", "seed"), rows)

    if scenario == "trine":
        states = trine_states()
        report = run_discrimination(Ensemble.uniform(states),
                                    square_root_measurement(states), cfg)
        return _csv(_METRIC_HEADER, _metric_rows(report, cfg))

    if scenario == "idp":
        theta = _angle(args.theta if args.theta is not None else np.pi / 6, args.degrees)
        fam = TwoStateFamily(theta)
        upovm = unambiguous_povm(fam.states, 1.0 - idp_bound(fam.overlap))
        report = run_unambiguous(fam.states, upovm, cfg)
        return _csv(_METRIC_HEADER, _metric_rows(report, cfg))

    if scenario == "symmetric-ud":
        coeffs = _parse_coeffs(args.coeffs if args.coeffs else "0.7071067811865476,0.5,0.5")
        fam = make_symmetric(coeffs)
        p_success, _ = symmetric_unambiguous_optimum(fam)
        upovm = unambiguous_povm(fam.states, p_success)
        report = run_unambiguous(fam.states, upovm, cfg)
        return _csv(_METRIC_HEADER, _metric_rows(report, cfg))

    if scenario == "concentrate":
        theta = _angle(args.theta if args.theta is not None else np.pi / 8, args.degrees)
        amps = np.zeros((2, 2), dtype=complex)
        amps[0, 0], amps[1, 1] = np.cos(theta), np.sin(theta)
        psi = BipartiteState(amps)
        plan = build_plan(psi)
        probs = outcome_probs(plan.filter_povm(), partial_trace(psi, "A"))
        draws = sample_categorical(probs, trial_uniforms(cfg.seed, cfg.trials, 1)[:, 0])
        empirical = float((draws == 0).mean())
        analytic = float(probs[0])
        stderr = float(np.sqrt(analytic * (1.0 - analytic) / cfg.trials))
        passed = abs(empirical - analytic) <= cfg.confidence * stderr
        rows = [("success_rate", empirical, analytic, stderr,
                 str(bool(passed)).lower(), cfg.trials, cfg.seed)]
        return _csv(_METRIC_HEADER, rows)

    raise _UsageError(f"unknown scenario {scenario!r}")


# ---------------------------------------------------------------------------
# parser plumbing

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qsd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("helstrom", help="two-state minimum-error bound and measurement")
    p.add_argument("--theta", type=float, help="state half-angle in radians")
    p.add_argument("--grid", type=int, help="evaluate on an N-point theta grid over (0, pi/4]")
    p.add_argument("--eta-plus", type=float, default=0.5, dest="eta_plus",
                   help="prior probability of the first state (default 0.5)")
    p.add_argument("--resolution", type=float, default=1e-4,
                   help="grid-search angular resolution in radians")
    p.set_defaults(handler=_cmd_helstrom)

    p = sub.add_parser("udp", help="unambiguous discrimination POVM and optimum")
    p.add_argument("--theta", type=float, help="two-state half-angle in radians")
    p.add_argument("--coeffs", type=str,
                   help="comma-separated symmetric-family coefficients (normalised)")
    p.add_argument("--success", type=float,
                   help="requested per-state success probability (default: optimum)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_udp)

    p = sub.add_parser("bounds", help="cloning, separation and estimation limits")
    p.add_argument("--m", type=int, help="initial copy count")
    p.add_argument("--n", type=int, help="final copy count")
    p.add_argument("--overlap", type=float, default=0.5,
                   help="single-copy state overlap (default 0.5)")
    p.add_argument("--estimation", action="store_true",
                   help="tabulate the m-copy estimation optimum instead")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("simulate", help="seeded Monte Carlo measurement runs")
    p.add_argument("--scenario", required=True,
                   choices=("helstrom-sweep", "trine", "idp", "symmetric-ud", "concentrate"))
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: QSD_SEED or 12345)")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--theta", type=float, help="scenario angle where applicable")
    p.add_argument("--coeffs", type=str, help="symmetric-family coefficients")
    p.set_defaults(handler=_cmd_simulate)

    for sp in sub.choices.values():
        sp.add_argument("--degrees", action="store_true",
                        help="interpret angle flags as degrees")
        sp.add_argument("--out", type=str, default="-",
                        help="output path (default: stdout)")
    return parser


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InfeasibleSuccessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write(args.out, text)
    return 0


def entrypoint() -> None:
    raise SystemExit(main())
