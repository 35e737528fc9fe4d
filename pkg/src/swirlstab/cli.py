"""Command-line driver: ``swirlstab {solve,sweep,validate,grid}``.

Exit codes: 0 ok, 1 configuration error, 2 solver error, 3 validation
tolerance breach. Errors go to stderr as one line of JSON.
"""

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import output
from .config import REFERENCE_CASE, ConfigError, RunConfig, SweepPlan
from .inviscid_model import InviscidProblem
from .runner import SolverError, build_problem, run_sweep, solve_config

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_BREACH = 0, 1, 2, 3

SHOOTING_REF = complex(0.506, -0.139)
COLLOCATION_REF = complex(0.50819, -0.14192)
RC_REF = 0.971
TOL_COLLOCATION = 0.01
TOL_SHOOTING = 0.03
TOL_RC = 0.05


@dataclass(frozen=True)
class _PerturbedInviscid(InviscidProblem):
    """Reference problem with the modal derivative matrix scaled (validation test hook)."""

    deriv_scale: float = 1.0

    def discretize(self):
        basis, flow = super().discretize()
        return replace(basis, deriv=basis.deriv * self.deriv_scale), flow


def rel_err(computed, ref):
    return abs(computed.real - ref.real) / abs(ref.real), abs(computed.imag - ref.imag) / abs(ref.imag)


def reference_report(k, r_c):
    """Report lines and overall verdict for the computed reference-case eigenvalue."""
    ec = rel_err(k, COLLOCATION_REF)
    es = rel_err(k, SHOOTING_REF)
    erc = abs(r_c - RC_REF) / RC_REF
    ok = max(ec) <= TOL_COLLOCATION and max(es) <= TOL_SHOOTING and erc <= TOL_RC
    lines = [
        "reference case: m=-3, a=0, q=0.1, omega=0.01, N=100",
        f"  reference shooting     k = ({SHOOTING_REF.real}, {SHOOTING_REF.imag})",
        f"  reference collocation  k = ({COLLOCATION_REF.real}, {COLLOCATION_REF.imag})"
        f"  r_c = {RC_REF}",
        f"  computed               k = ({k.real:.5f}, {k.imag:.5f})  r_c = {r_c:.4f}",
        f"  error vs collocation   {100 * ec[0]:.2f}% / {100 * ec[1]:.2f}%"
        f"  (limit {100 * TOL_COLLOCATION:g}%)",
        f"  error vs shooting      {100 * es[0]:.2f}% / {100 * es[1]:.2f}%"
        f"  (limit {100 * TOL_SHOOTING:g}%)",
        f"  error in r_c           {100 * erc:.2f}%  (limit {100 * TOL_RC:g}%)",
        "PASS" if ok else "FAIL",
    ]
    return lines, ok


def _fail(code, kind, message):
    print(json.dumps({"error": kind, "message": str(message)}), file=sys.stderr)
    return code


def _load(path, cls):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    return cls.from_json(text)


def _write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def cmd_solve(args):
    cfg = _load(args.config, RunConfig) if args.config else RunConfig()
    res = solve_config(cfg)
    out = Path(args.out)
    _write(out / "spectrum.csv", output.spectrum_csv(res))
    _write(out / "mode.json", output.mode_json(res))
    if args.svg:
        _write(out / "spectrum.svg", output.spectrum_svg(res))
    if res.mode is None:
        print("no confirmed eigenvalue at this resolution")
        return EXIT_OK
    lam = res.mode.eigenvalue
    print(f"{res.mode.kind} eigenvalue ({lam.real:.6f}, {lam.imag:.6f})  "
          f"r_c = {res.mode.r_c:.4f}  converged = {res.converged}")
    return EXIT_OK


def cmd_sweep(args):
    plan = _load(args.config, SweepPlan)
    rows = run_sweep(plan, args.jobs)
    _write(Path(args.out) / "sweep.csv", output.sweep_csv(plan, rows))
    n_bad = sum(out["status"] != "ok" for _, out in rows)
    print(f"{len(rows)} points, {n_bad} failed")
    return EXIT_OK


def cmd_validate(args):
    cfg = REFERENCE_CASE
    problem = None
    if args.perturb_basis:
        problem = _PerturbedInviscid(m=cfg.m, omega=cfg.omega, n_modes=cfg.N,
                                     r_max=cfg.r_max, profile=build_problem(cfg).profile,
                                     mu=cfg.mu, beta=cfg.map_beta,
                                     deriv_scale=1.0 + args.perturb_basis)
    res = solve_config(cfg, problem)
    if res.mode is None:
        print("reference case: no confirmed eigenvalue\nFAIL")
        return EXIT_BREACH
    lines, ok = reference_report(res.mode.eigenvalue, res.mode.r_c)
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_BREACH


def cmd_grid(args):
    cfg = _load(args.config, RunConfig) if args.config else RunConfig()
    np.set_printoptions(precision=6, linewidth=120, threshold=sys.maxsize)
    problem = build_problem(cfg)
    if cfg.model == "inviscid":
        basis, _ = problem.discretize()
        print(f"interior collocation radii ({basis.r_interior.size}):")
        print(basis.r_interior)
        if args.matrices:
            print("modal derivative matrix:")
            print(basis.deriv)
    else:
        grid, ops, _ = problem.discretize()
        print(f"nodes ({grid.n_points}), xi then r:")
        print(grid.xi)
        print(grid.r)
        if args.matrices:
            print("first-derivative matrix:")
            print(ops.d1)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are config errors (exit 1), not argparse's default 2
    def error(self, message):
        sys.exit(_fail(EXIT_CONFIG, "usage", message))


def build_parser():
    p = _Parser(prog="swirlstab",
                description="Linear stability of swirling columnar vortices.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one configuration")
    s.add_argument("--config", help="RunConfig JSON (defaults if omitted)")
    s.add_argument("--out", default=".", help="output directory")
    s.add_argument("--svg", action="store_true", help="also write spectrum.svg")
    s.set_defaults(func=cmd_solve)

    w = sub.add_parser("sweep", help="solve every point of a sweep plan")
    w.add_argument("--config", required=True, help="SweepPlan JSON")
    w.add_argument("--out", default=".", help="output directory")
    w.add_argument("--jobs", type=int, default=1, help="worker processes")
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("validate", help="run the built-in reference case")
    v.add_argument("--perturb-basis", type=float, default=0.0, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("grid", help="print collocation nodes (and matrices)")
    g.add_argument("--config", help="RunConfig JSON (defaults if omitted)")
    g.add_argument("--matrices", action="store_true")
    g.set_defaults(func=cmd_grid)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, "config", exc)
    except SolverError as exc:
        return _fail(EXIT_SOLVER, "solver", exc)


if __name__ == "__main__":
    sys.exit(main())
