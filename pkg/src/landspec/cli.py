"""Command-line front end: scenario files in, CSV artifacts out.

Four subcommands: solve (one balanced path), sweep (sign map over the
fruit share), simulate (time paths, shocks, rent dynamics), and check
(assumptions plus the sign-claim suite). Every run writes its CSVs plus
a run_manifest.txt sidecar into the output directory; outputs are
deterministic, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .comparative import default_epsilon_grid, proposition_suite, sign_map
from .core import (
    ScenarioFormatError,
    ScenarioParams,
    check_assumptions,
    derive_constants,
    load_scenario,
)
from .errors import (
    AssumptionViolated,
    DomainError,
    MissingParameter,
    NoEquilibrium,
    RegionTooNarrow,
    RootNotBracketed,
    ShootingFailed,
)
from .extensions import unbalanced_path
from .monetary import solve_bgp_monetary
from .open_economy import growth_given_phi, simulate, solve_bgp, temporary_shock

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NO_SOLUTION = 2
EXIT_DOMAIN = 3
EXIT_CHECK_FAILED = 4


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


def _write_csv(path: str, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_manifest(outdir: str, command: str, scenario_path: str) -> None:
    lines = [
        f"command = {command}",
        f"scenario_path = {scenario_path}",
        f"output_dir = {outdir}",
        "seedless = true",
        f"tool_version = {__version__}",
    ]
    with open(os.path.join(outdir, "run_manifest.txt"), "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _outdir(args) -> str:
    outdir = os.environ.get("LANDSPEC_OUTDIR") or args.out
    os.makedirs(outdir, exist_ok=True)
    return outdir


def _cmd_solve(args, command: str) -> int:
    params = load_scenario(args.scenario)
    outdir = _outdir(args)
    if args.economy == "open":
        bgp = solve_bgp(params)
        header = ["phi_star", "gross_growth", "phi_bar", "residual", "land_gdp_ratio"]
        row = [bgp.phi_star, bgp.gross_growth, bgp.phi_bar, bgp.residual,
               bgp.land_gdp_ratio]
        reports = check_assumptions(params, "open")
    else:
        mbgp = solve_bgp_monetary(params)
        header = [
            "phi_star",
            "gross_r",
            "gross_growth",
            "ordering_Rc",
            "ordering_g",
            "ordering_r",
            "q0_times_M0_per_K0",
            "min_e",
            "credit_gdp",
        ]
        row = [
            mbgp.phi_star,
            mbgp.gross_r,
            mbgp.gross_growth,
            mbgp.ordering.Rc,
            mbgp.ordering.g,
            mbgp.ordering.r,
            mbgp.q0_times_M0_per_K0,
            mbgp.min_e,
            mbgp.credit_gdp,
        ]
        reports = check_assumptions(params, "monetary", phi_star=mbgp.phi_star)
    _write_csv(os.path.join(outdir, "bgp.csv"), header, [row])
    _write_csv(
        os.path.join(outdir, "assumptions.csv"),
        ["id", "holds", "lhs", "rhs", "slack"],
        [[rep.id, rep.holds, rep.lhs, rep.rhs, rep.slack] for rep in reports],
    )
    _write_manifest(outdir, command, args.scenario)
    for name, value in zip(header, row):
        print(f"{name} = {_fmt(value)}")
    return EXIT_OK


def _sweep_grid(args, params: ScenarioParams, economy: str) -> list[float]:
    given = [args.eps_from is not None, args.eps_to is not None,
             args.steps is not None]
    if not any(given):
        return default_epsilon_grid(params, economy)
    if not all(given):
        raise ValueError("--eps-from, --eps-to and --steps must be given together")
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    if args.steps == 1:
        return [args.eps_from]
    return [float(x) for x in np.linspace(args.eps_from, args.eps_to, args.steps)]


def _cmd_sweep(args, command: str) -> int:
    params = load_scenario(args.scenario)
    outdir = _outdir(args)
    grid = _sweep_grid(args, params, args.economy)
    records = sign_map(params, args.economy, args.wrt, grid)
    _write_csv(
        os.path.join(outdir, "sweep.csv"),
        ["epsilon", "g_star", "phi_star", "gross_r", "derivative", "sign",
         "feasible", "reason"],
        [
            [rec.epsilon, rec.g_star, rec.phi_star, rec.gross_r,
             rec.derivative, rec.sign, rec.feasible, rec.reason]
            for rec in records
        ],
    )
    if args.economy == "monetary":
        rows = []
        for rec in records:
            credit = float("nan")
            if rec.feasible or not math.isnan(rec.phi_star):
                try:
                    credit = solve_bgp_monetary(
                        params.with_changes(epsilon=rec.epsilon)
                    ).credit_gdp
                except (AssumptionViolated, NoEquilibrium, DomainError):
                    credit = float("nan")
            rows.append(
                [rec.epsilon, params.theta, params.theta_x, params.mu,
                 rec.phi_star, rec.gross_r, rec.g_star, credit]
            )
        _write_csv(
            os.path.join(outdir, "monetary_sweep.csv"),
            ["epsilon", "theta", "theta_x", "mu", "phi_star", "gross_r",
             "gross_growth", "credit_gdp"],
            rows,
        )
    _write_manifest(outdir, command, args.scenario)
    flagged = sum(1 for rec in records if not rec.feasible)
    print(f"wrote {len(records)} records ({flagged} infeasible) to sweep.csv")
    return EXIT_OK


_PATH_HEADER = ["t", "K", "P", "phi", "g", "w", "Y"]


def _path_rows(states) -> list[list]:
    return [[s.t, s.K, s.P, s.phi, s.g, s.w, s.Y] for s in states]


def _cmd_simulate(args, command: str) -> int:
    params = load_scenario(args.scenario)
    outdir = _outdir(args)
    path_file = os.path.join(outdir, "path.csv")
    if args.d is not None:
        result = unbalanced_path(params, args.d, args.n0, args.T)
        base = params.with_changes(epsilon=0.0)
        rx = derive_constants(base, "open").Rx_star
        v_over_d = (1.0 + args.d) / (rx - (1.0 + args.d))
        rows = []
        for t, state in enumerate(result.path):
            growth = growth_given_phi(state.phi, base) - 1.0
            p_over_v = (
                state.phi / (v_over_d * state.n) if state.n > 0.0 else float("inf")
            )
            rows.append([t, state.phi, state.n, growth, p_over_v])
        _write_csv(path_file, ["t", "phi", "n", "g", "P_over_V"], rows)
        _write_manifest(outdir, command, args.scenario)
        print(
            f"unbalanced path: phi0 = {_fmt(result.phi0)}, "
            f"converged = {_fmt(result.converged)}"
        )
        return EXIT_OK
    if args.shock_eps is not None:
        if args.shock_at is None:
            raise ValueError("--shock-at is required with --shock-eps")
        paths = temporary_shock(
            params, args.shock_eps, args.shock_at, args.K0, args.T,
            belief=args.belief,
        )
        rows = [["baseline", *row] for row in _path_rows(paths.baseline)]
        rows += [["shocked", *row] for row in _path_rows(paths.shocked)]
        _write_csv(path_file, ["branch", *_PATH_HEADER], rows)
        _write_manifest(outdir, command, args.scenario)
        print(f"wrote shocked and baseline paths ({args.T + 1} rows each)")
        return EXIT_OK
    mode = "explicit" if args.phi0 is not None else "jump_to_bgp"
    states = simulate(params, args.K0, args.T, phi0_mode=mode, phi0=args.phi0)
    _write_csv(path_file, _PATH_HEADER, _path_rows(states))
    _write_manifest(outdir, command, args.scenario)
    print(f"wrote {len(states)} path rows")
    return EXIT_OK


def _cmd_check(args, command: str) -> int:
    params = load_scenario(args.scenario)
    outdir = _outdir(args)
    has_open = params.r is not None
    has_monetary = params.mu is not None
    if not has_open and not has_monetary:
        raise MissingParameter("scenario sets neither r nor mu; nothing to check")
    rows: list[list] = []
    all_ok = True
    if has_open:
        for rep in check_assumptions(params, "open"):
            rows.append(["assumption", rep.id, rep.holds,
                         f"lhs={rep.lhs!r} rhs={rep.rhs!r}"])
            all_ok &= rep.holds
    if has_monetary:
        try:
            phi_star: Optional[float] = solve_bgp_monetary(params).phi_star
        except (NoEquilibrium, AssumptionViolated) as exc:
            rows.append(["assumption", "monetary-bgp-exists", False, str(exc)])
            all_ok = False
            phi_star = None
        if phi_star is not None:
            for rep in check_assumptions(params, "monetary", phi_star=phi_star):
                rows.append(["assumption", rep.id, rep.holds,
                             f"lhs={rep.lhs!r} rhs={rep.rhs!r}"])
                all_ok &= rep.holds
    if all_ok:
        # sign claims are only meaningful inside the assumption region
        results = proposition_suite(
            params_open=params if has_open else None,
            params_monetary=params if has_monetary else None,
        )
        for res in results:
            detail = " ".join(f"{k}={v!r}" for k, v in res.details.items())
            rows.append(["proposition", res.id, res.holds, detail])
            all_ok &= res.holds
    _write_csv(os.path.join(outdir, "check.csv"),
               ["kind", "id", "holds", "detail"], rows)
    _write_manifest(outdir, command, args.scenario)
    width = max(len(str(row[1])) for row in rows)
    for row in rows:
        status = "pass" if row[2] else "FAIL"
        print(f"{row[0]:<11} {str(row[1]):<{width}} {status}")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landspec",
        description="Balanced-growth solver for a two-sector economy with "
        "collateralized credit and land.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--scenario", required=True, help="key = value file")
        p.add_argument("--out", default=".", help="output directory "
                       "(LANDSPEC_OUTDIR overrides)")

    p_solve = sub.add_parser("solve", help="solve one balanced growth path")
    common(p_solve)
    p_solve.add_argument("--economy", required=True,
                         choices=["open", "monetary"])

    p_sweep = sub.add_parser("sweep", help="derivative sign map over the "
                             "fruit share")
    common(p_sweep)
    p_sweep.add_argument("--economy", required=True,
                         choices=["open", "monetary"])
    p_sweep.add_argument("--wrt", required=True,
                         choices=["theta", "theta_x", "r", "mu"])
    p_sweep.add_argument("--eps-from", type=float, default=None)
    p_sweep.add_argument("--eps-to", type=float, default=None)
    p_sweep.add_argument("--steps", type=int, default=None)

    p_sim = sub.add_parser("simulate", help="time paths, shocks, rent dynamics")
    common(p_sim)
    p_sim.add_argument("--T", required=True, type=int, help="horizon")
    p_sim.add_argument("--K0", type=float, default=1.0)
    p_sim.add_argument("--phi0", type=float, default=None,
                       help="start the land share off the balanced path")
    p_sim.add_argument("--shock-eps", type=float, default=None,
                       help="temporarily elevated fruit share")
    p_sim.add_argument("--shock-at", type=int, default=None,
                       help="date of the one-period shock")
    p_sim.add_argument("--belief",
                       choices=["believed_permanent", "anticipated_temporary"],
                       default="believed_permanent")
    p_sim.add_argument("--d", type=float, default=None,
                       help="rent growth rate (switches to rent dynamics)")
    p_sim.add_argument("--n0", type=float, default=0.01,
                       help="initial dividend share for rent dynamics")

    p_check = sub.add_parser("check", help="assumptions and sign-claim suite")
    common(p_check)
    return parser


_HANDLERS = {
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "check": _cmd_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = "landspec " + " ".join(argv)
    handler = _HANDLERS[args.subcommand]
    try:
        return handler(args, command)
    except ScenarioFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NoEquilibrium, RootNotBracketed, ShootingFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (AssumptionViolated, DomainError, MissingParameter,
            RegionTooNarrow, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
