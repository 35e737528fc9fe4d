"""Pipeline from a :class:`RunConfig` to a filtered spectrum and its selected mode."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import eigensolve
from .baseflow import QVortexProfile
from .config import RunConfig
from .inviscid_model import InviscidProblem, solve_spatial_inviscid, solve_temporal_inviscid
from .viscous_model import ViscousProblem, solve_spatial_viscous


class SolverError(RuntimeError):
    pass


@dataclass
class SolveResult:
    config: RunConfig
    spectrum: eigensolve.Spectrum
    # None when no eigenvalue survives filtering
    mode: Optional[eigensolve.ModeResult]
    # distance from the selected eigenvalue to its nearest match at N + dN
    partner_distance: float

    @property
    def converged(self):
        return self.mode is not None and bool(self.partner_distance <= self.config.tol)


def build_problem(cfg):
    profile = QVortexProfile(a=cfg.a, q=cfg.q)
    if cfg.model == "inviscid":
        if cfg.analysis == "spatial":
            return InviscidProblem(m=cfg.m, omega=cfg.omega, n_modes=cfg.N, r_max=cfg.r_max,
                                   profile=profile, mu=cfg.mu, beta=cfg.map_beta)
        return InviscidProblem(m=cfg.m, k=cfg.k, n_modes=cfg.N, r_max=cfg.r_max,
                               profile=profile, mu=cfg.mu, beta=cfg.map_beta)
    return ViscousProblem(m=cfg.m, omega=cfg.omega, Re=cfg.Re, n=cfg.N, r_max=cfg.r_max,
                          profile=profile, mu=cfg.mu, beta=cfg.map_beta)


def _solver(cfg):
    if cfg.model == "viscous":
        return solve_spatial_viscous
    return solve_spatial_inviscid if cfg.analysis == "spatial" else solve_temporal_inviscid


def solve_config(cfg, problem=None):
    """Solve at N and N + dN, filter, and select the least stable confirmed mode.

    A spectrum without confirmed eigenvalues is a valid outcome: the result
    then carries ``mode=None``.

    ``problem`` overrides the problem built from ``cfg`` (used to inject a
    modified discretization); its resolution is still taken from ``cfg``.
    """
    problem = build_problem(cfg) if problem is None else problem
    solve = _solver(cfg)
    try:
        lo = solve(problem, cfg.cap)
        hi = solve(problem.with_resolution(cfg.N + cfg.dN), cfg.cap)
        spec = eigensolve.filter_spectrum(lo, hi, cfg.tol, cfg.cap)
        mode = eigensolve.most_unstable(spec, cfg.n_fine) if spec.confirmed.any() else None
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverError(str(exc)) from exc
    if mode is None:
        return SolveResult(cfg, spec, None, float("inf"))
    other = hi.eigenvalues[hi.finite]
    dist = float(np.abs(other - mode.eigenvalue).min()) if other.size else float("inf")
    return SolveResult(cfg, spec, mode, dist)


def _sweep_point(cfg):
    try:
        res = solve_config(cfg)
    except SolverError as exc:
        return {"status": f"error: {exc}"}
    if res.mode is None:
        return {"status": "no confirmed mode"}
    lam = res.mode.eigenvalue
    return {
        "status": "ok",
        "eig_re": lam.real,
        "eig_im": lam.imag,
        "growth_rate": res.mode.growth_rate,
        "r_c": res.mode.r_c,
        "converged": res.converged,
    }


def run_sweep(plan, jobs=1):
    """Solve every plan point; results come back in Cartesian order."""
    points = plan.points()
    if jobs <= 1 or len(points) == 1:
        outcomes = [_sweep_point(p) for p in points]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_sweep_point, points))
    return list(zip(points, outcomes))
