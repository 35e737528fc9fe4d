import pytest

from swirlstab import eigensolve
from swirlstab.baseflow import QVortexProfile
from swirlstab.inviscid_model import InviscidProblem, solve_spatial_inviscid
from swirlstab.viscous_model import ViscousProblem, solve_spatial_viscous

REF = dict(m=-3, omega=0.01, profile=QVortexProfile(a=0.0, q=0.1))


def filtered_mode(solve, problem, n_hi):
    spec = eigensolve.filter_spectrum(solve(problem), solve(problem.with_resolution(n_hi)))
    return spec, eigensolve.most_unstable(spec)


@pytest.fixture(scope="session")
def inviscid_ref():
    """Reference case, inviscid modal solver, N=100 filtered against N=110."""
    return filtered_mode(solve_spatial_inviscid, InviscidProblem(n_modes=100, **REF), 110)


@pytest.fixture(scope="session")
def viscous_ref():
    """Reference case at Re=1e8, viscous nodal solver, N=100 filtered against N=110."""
    return filtered_mode(solve_spatial_viscous, ViscousProblem(Re=1e8, n=100, **REF), 110)


# (criterion, passed, detail) lines collected by the acceptance suite
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'}  {detail}")
