from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swirlstab import eigensolve
from swirlstab.baseflow import QVortexProfile
from swirlstab.inviscid_model import (
    InviscidProblem,
    assemble_inviscid,
    assemble_interior,
    boundary_rows,
    solve_spatial_inviscid,
    solve_temporal_inviscid,
)
from swirlstab.spectral_core import eval_modal_series

import shooting


@dataclass(frozen=True)
class Uniform:
    """Uniform axial flow without swirl."""

    U: float = 1.0

    def evaluate(self, r):
        r = np.asarray(r, dtype=float)
        return self.U + 0 * r, 0 * r, 0 * r, 0 * r


def small(m=-3, profile=QVortexProfile(0.0, 0.1), n=24, **kw):
    kw.setdefault("omega", 0.01)
    return InviscidProblem(m=m, n_modes=n, profile=profile, **kw)


def split(v):
    return np.split(np.asarray(v), 4)


def test_interior_rows_match_equations():
    p = small(m=-2, profile=QVortexProfile(0.3, 0.4), n=20)
    basis, flow = p.discretize()
    rng = np.random.default_rng(1)
    s = rng.normal(size=80) + 1j * rng.normal(size=80)
    k, om, m = 0.7 - 0.2j, 0.3, p.m
    Mk, Mw, Mm, M0 = assemble_interior(flow, basis)
    lhs = (k * Mk + om * Mw + m * Mm + M0) @ s

    f, g, h, pp = split(s)
    r = basis.r_interior
    F, G, H, P = (basis.eta @ c for c in (f, g, h, pp))
    dG, dP = basis.deriv @ g, basis.deriv @ pp
    U, Up, W, Wp = p.profile.evaluate(r)
    gam = -om + m * W / r + k * U
    cont = dG + G / r + m * H / r + k * F
    radial = -gam * G - 2 * W * H / r + dP
    azim = gam * H + (Wp + W / r) * G + m * P / r
    axial = gam * F + Up * G + k * P
    expect = np.concatenate([r * cont, -radial, r * azim, axial])
    assert np.allclose(lhs, expect, rtol=1e-12, atol=1e-12)


def test_continuity_k_block_and_uniform_flow_blocks():
    basis, flow = small(profile=Uniform(2.5), n=16).discretize()
    Mk, _, Mm, _ = assemble_interior(flow, basis)
    nr, n = 14, 16
    assert np.allclose(Mk[:nr, :n], basis.r_interior[:, None] * basis.eta)
    assert np.allclose(Mk[3 * nr :, :n], 2.5 * basis.eta)
    # no swirl: radial and axial rows of Mm vanish
    assert not np.any(Mm[nr : 2 * nr]) and not np.any(Mm[3 * nr :])


def test_no_swirl_axisymmetric_sparsity():
    p = small(m=0, profile=QVortexProfile(0.0, 0.0), n=12)
    basis, flow = p.discretize()
    _, Mw, Mm, M0 = assemble_interior(flow, basis)
    C = 0.2 * Mw + p.m * Mm + M0
    nr, n = 10, 12
    nonzero = {(i, j) for i in range(4) for j in range(4)
               if np.any(C[i * nr : (i + 1) * nr, j * n : (j + 1) * n])}
    assert nonzero == {(0, 1), (1, 1), (1, 3), (2, 2), (3, 0), (3, 1)}


def test_dimension():
    system = assemble_inviscid(InviscidProblem(m=-3, omega=0.01))
    assert system.Mk.shape == (400, 400)


@pytest.mark.parametrize("m", [-4, -1, 0, 1, 3])
def test_eight_boundary_rows(m):
    p = small(m=m)
    system = assemble_inviscid(p)
    assert len(system.boundary_labels) == 8
    assert not np.any(system.Mm[-8:])
    assert system.Mk.shape == (4 * p.n_modes, 4 * p.n_modes)


def test_unit_m_row_origins():
    for m in (-1, 1):
        labels = assemble_inviscid(small(m=m)).boundary_labels
        assert sum("momentum" in lab for lab in labels) == 1


def test_dirichlet_axis_g_row():
    n = 10
    basis, flow = small(m=-3, n=n).discretize()
    row = next(b for b in boundary_rows(-3, flow, basis) if b.label == "axis G=0")
    f, g, h, p = split(row.const)
    assert np.array_equal(g, (-1.0) ** (np.arange(1, n + 1) + 1))
    assert not np.any(f) and not np.any(h) and not np.any(p)
    assert not np.any(row.kpart) and not np.any(row.wpart)


def test_unit_m_wall_rows():
    n = 10
    basis, flow = small(m=1, n=n).discretize()
    rows = {b.label: b for b in boundary_rows(1, flow, basis)}
    assert np.array_equal(split(rows["wall G=0"].const)[1], np.ones(n))
    hrow = rows["wall H-row"]
    R, Uw, Ww = basis.r_max, flow.U_rmax, flow.W_rmax
    one = np.ones(n)
    zero = np.zeros(n)
    assert np.allclose(hrow.kpart, np.concatenate([zero, zero, Uw * R * one, zero]))
    assert np.allclose(hrow.wpart, np.concatenate([zero, zero, -R * one, zero]))
    assert np.allclose(hrow.const, np.concatenate([zero, zero, Ww * one, one]))


@pytest.mark.parametrize("m", [-1, 1])
def test_unit_m_momentum_row_is_dependent(m):
    basis, flow = small(m=m, profile=QVortexProfile(0.2, 0.5)).discretize()
    rows = {b.label: b for b in boundary_rows(m, flow, basis)}
    az, hr, gr = rows["wall azimuthal momentum"], rows["wall H-row"], rows["wall G=0"]
    c = flow.W_rmax + basis.r_max * flow.Wp_rmax
    for part in ("kpart", "wpart", "const"):
        assert np.allclose(getattr(az, part), getattr(hr, part) + c * getattr(gr, part))


def test_axisymmetric_axis_rows_use_derivative_limits():
    basis, flow = small(m=0).discretize()
    rows = {b.label: b for b in boundary_rows(0, flow, basis)}
    assert np.array_equal(split(rows["axis F'=0"].const)[0], basis.axis_deriv)
    assert np.array_equal(split(rows["axis P'=0"].const)[3], basis.axis_deriv)


@given(st.integers(-4, 4), st.complex_numbers(max_magnitude=5), st.floats(-1, 1))
@settings(max_examples=25)
def test_linear_in_k(m, k, om):
    system = assemble_inviscid(small(m=m, n=12))
    M0, M1 = system.matrix(0.0, om), system.matrix(1.0, om)
    assert np.allclose(system.matrix(k, om), M0 + k * (M1 - M0), atol=1e-12)


def test_residuals():
    p = small(m=-2, n=30)
    system = assemble_inviscid(p)
    spec = solve_spatial_inviscid(p)
    scale = sum(np.linalg.norm(M, 2) for M in (system.Mk, system.Momega, system.Mm, system.M0))
    for i in np.flatnonzero(spec.finite):
        k, v = spec.eigenvalues[i], spec.eigenvectors[:, i]
        res = np.linalg.norm(system.matrix(k, p.omega) @ v)
        assert res <= 1e-8 * scale * max(1, abs(k)) * np.linalg.norm(v)


def test_conjugate_pairs(inviscid_ref):
    spec, _ = inviscid_ref
    lam = spec.eigenvalues[spec.finite]
    for z in spec.eigenvalues[spec.confirmed]:
        assert np.min(np.abs(lam - np.conj(z))) <= 1e-3


def test_axisymmetric_jet_conjugate_pairs():
    p = InviscidProblem(m=0, omega=0.2, n_modes=40, profile=QVortexProfile(0.0, 0.0))
    spec = eigensolve.filter_spectrum(solve_spatial_inviscid(p),
                                      solve_spatial_inviscid(p.with_resolution(50)))
    lam = spec.eigenvalues[spec.finite]
    for z in spec.eigenvalues[spec.confirmed]:
        assert np.min(np.abs(lam - np.conj(z))) <= 1e-3


def test_temporal_spectrum_size():
    assert len(solve_temporal_inviscid(InviscidProblem(m=-3, k=0.5, n_modes=30))) == 120


def test_temporal_round_trip():
    p = InviscidProblem(m=-3, k=0.50819)
    spec = eigensolve.filter_spectrum(solve_temporal_inviscid(p), solve_temporal_inviscid(p.with_resolution(110)))
    om = spec.eigenvalues[spec.confirmed]
    assert np.any(np.abs(om.real - 0.01) <= 0.25 * 0.01)


def test_temporal_against_shooting():
    p = InviscidProblem(m=-3, k=0.50819, n_modes=140)
    spec = eigensolve.filter_spectrum(solve_temporal_inviscid(p),
                                      solve_temporal_inviscid(p.with_resolution(150)))
    mode = eigensolve.most_unstable(spec)
    assert abs(mode.eigenvalue - shooting.TEMPORAL_OMEGA) <= 2e-3


def test_plug_flow_neutral():
    p = InviscidProblem(m=-2, k=0.7, n_modes=30, profile=Uniform(1.0))
    spec = solve_temporal_inviscid(p)
    om = spec.eigenvalues[spec.magnitude_ok]
    assert om.size and np.max(np.abs(om.imag)) <= 1e-6


def test_requires_one_parameter():
    with pytest.raises(ValueError):
        InviscidProblem(m=1)
    with pytest.raises(ValueError):
        InviscidProblem(m=1, omega=0.1, k=0.2)
    with pytest.raises(ValueError):
        solve_temporal_inviscid(InviscidProblem(m=1, omega=0.1, n_modes=10))


def test_unit_m_against_shooting():
    p = InviscidProblem(m=-1, omega=0.3, n_modes=100, profile=QVortexProfile(0.0, 0.4))
    spec = eigensolve.filter_spectrum(solve_spatial_inviscid(p),
                                      solve_spatial_inviscid(p.with_resolution(110)))
    lam = spec.eigenvalues[spec.confirmed]
    assert np.min(np.abs(lam - shooting.M1_K)) <= 2e-3
