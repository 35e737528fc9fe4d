import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as C

from swirlstab import eigensolve
from swirlstab.eigensolve import (
    NoPhysicalModeError,
    critical_radius,
    filter_spectrum,
    generalized_eig,
    make_spectrum,
    most_unstable,
    select_index,
)
from swirlstab.inviscid_model import InviscidProblem, assemble_inviscid
from swirlstab.spectral_core import eval_modal_series

from conftest import REF


def det_roots(A, B):
    """Roots of det(A + lam B) from its coefficients, fitted on a circle."""
    n = A.shape[0]
    z = 2.0 * np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
    vals = np.array([np.linalg.det(A + zi * B) for zi in z])
    coeffs = np.linalg.solve(np.vander(z, n + 1), vals)
    return np.roots(coeffs)


def toy_spectrum(lams, kind="spatial"):
    lams = np.asarray(lams, dtype=complex)
    n = len(lams)
    return make_spectrum(np.diag(lams), -np.eye(n), kind, {"r_max": 1.0})


def test_diagonal_pencil():
    lam, _, finite = generalized_eig(np.diag([1.0, 2.0]), -np.eye(2))
    assert finite.all()
    assert np.allclose(np.sort(lam.real), [1, 2]) and np.allclose(lam.imag, 0)


def test_nilpotent_double_zero():
    lam, _, _ = generalized_eig(np.array([[0.0, 1.0], [0.0, 0.0]]), -np.eye(2))
    assert np.allclose(lam, 0.0)


def test_infinite_eigenvalue_flagged():
    lam, _, finite = generalized_eig(np.eye(2), np.diag([1.0, 0.0]))
    assert finite.tolist() == [True, False]
    assert lam[0] == pytest.approx(-1.0) and np.isinf(lam[1])


@pytest.mark.parametrize("seed", range(5))
def test_random_pencil_matches_determinant_roots(seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    B = np.eye(6) + 0.3 * (rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    lam, _, _ = generalized_eig(A, B)
    roots = det_roots(A, B)
    for r in roots:
        assert np.min(np.abs(lam - r)) <= 1e-7 * max(1.0, abs(r))


def test_real_pencil_gives_conjugate_pairs():
    rng = np.random.default_rng(3)
    lam, _, _ = generalized_eig(rng.normal(size=(9, 9)), rng.normal(size=(9, 9)))
    cplx = lam[np.abs(lam.imag) > 0]
    for z in cplx:
        assert np.min(np.abs(cplx - np.conj(z))) <= 1e-13 * abs(z)


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        generalized_eig(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        generalized_eig(np.full((2, 2), np.nan), np.eye(2))


def test_filter_identical_spectra_all_confirmed():
    s = toy_spectrum([1 + 1j, 2 - 1j, 0.5j])
    assert filter_spectrum(s, s).confirmed.all()


def test_filter_drops_unmatched():
    lo = toy_spectrum([1 + 1j, 2 - 1j, 5.0])
    hi = toy_spectrum([1 + 1j, 2 - 1j + 1e-5, 7.0, 8.0])
    assert filter_spectrum(lo, hi).confirmed.tolist() == [True, True, False]


def test_filter_cap_and_unfiltered_access():
    s = toy_spectrum([1.0, 5e3])
    with pytest.raises(ValueError):
        s.confirmed
    assert filter_spectrum(s, s).confirmed.tolist() == [True, False]


def test_filter_checks_metadata():
    a = make_spectrum(np.eye(2), -np.eye(2), "spatial", {"m": 1, "N": 10})
    b = make_spectrum(np.eye(2), -np.eye(2), "spatial", {"m": 2, "N": 20})
    with pytest.raises(ValueError):
        filter_spectrum(a, b)
    with pytest.raises(ValueError):
        filter_spectrum(a, toy_spectrum([1, 1], "temporal"))


def test_select_min_imaginary_part():
    s = filter_spectrum(*[toy_spectrum([1 - 0.1j, 2 - 0.3j, 0.5 + 0.2j])] * 2)
    assert s.eigenvalues[select_index(s)] == pytest.approx(2 - 0.3j)


def test_select_all_stable():
    s = filter_spectrum(*[toy_spectrum([1 + 0.1j, 2 + 0.3j])] * 2)
    mode = most_unstable(s)
    assert mode.eigenvalue == pytest.approx(1 + 0.1j)
    assert mode.growth_rate == pytest.approx(-0.1) and not mode.unstable


def test_select_temporal_max_imaginary_part():
    s = filter_spectrum(*[toy_spectrum([1 - 0.1j, 2 + 0.3j], "temporal")] * 2)
    mode = most_unstable(s)
    assert mode.eigenvalue == pytest.approx(2 + 0.3j) and mode.unstable


def test_select_empty_raises():
    lo, hi = toy_spectrum([1.0]), toy_spectrum([3.0])
    with pytest.raises(NoPhysicalModeError):
        select_index(filter_spectrum(lo, hi))


def modal_sampler(R):
    return lambda v, r: {"G": eval_modal_series(v, R, r), "F": eval_modal_series(v, R, r)}


def test_critical_radius_calculus_oracle():
    R = 10.0
    fit = C.Chebyshev.interpolate(lambda x: (x + 1) * R / 2 * np.exp(-(((x + 1) * R / 2) ** 2)), 63)
    r_c, r, amps, flat = critical_radius(fit.coef, modal_sampler(R), R, n_fine=4000)
    assert r_c == pytest.approx(1 / np.sqrt(2), abs=1e-3)
    assert not flat
    assert amps["G"][np.argmin(np.abs(r - r_c))] == 1.0
    assert np.max(np.abs(amps["G"])) == 1.0


def test_critical_radius_flat_profile():
    c = np.zeros(8, dtype=complex)
    c[0] = 2.0 - 1.0j
    r_c, r, amps, flat = critical_radius(c, modal_sampler(10.0), 10.0, n_fine=1000)
    assert flat and r_c == r[0]
    assert np.allclose(amps["G"], 1.0)


def test_critical_radius_rejects_zero_vector():
    with pytest.raises(ValueError):
        critical_radius(np.zeros(4), modal_sampler(1.0), 1.0)


def test_reference_mode_survives_filter(inviscid_ref):
    spec, mode = inviscid_ref
    assert spec.confirmed[mode.index]
    assert abs(mode.eigenvalue - complex(0.50819, -0.14192)) < 0.01


def test_reference_growth_rate(inviscid_ref):
    assert inviscid_ref[1].growth_rate == pytest.approx(0.14192, rel=0.01)


def test_reference_normalization(inviscid_ref):
    mode = inviscid_ref[1]
    assert np.max(np.abs(mode.amplitudes["G"])) == 1.0


def test_reference_confirmed_residuals(inviscid_ref):
    spec, _ = inviscid_ref
    system = assemble_inviscid(InviscidProblem(n_modes=100, **REF))
    A = system.constant_part(omega=REF["omega"])
    B = system.Mk
    nA, nB = np.linalg.norm(A, 2), np.linalg.norm(B, 2)
    for i in np.flatnonzero(spec.confirmed):
        lam, v = spec.eigenvalues[i], spec.eigenvectors[:, i]
        res = np.linalg.norm(A @ v + lam * B @ v)
        assert res <= 1e-8 * (nA + abs(lam) * nB) * np.linalg.norm(v)


def random_pencil(seed, n=8):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    B = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return A, B


@given(st.integers(0, 2**31), st.floats(1e-6, 1.0), st.floats(1e-6, 1.0))
def test_filter_monotone_in_tol(seed, t1, t2):
    A, B = random_pencil(seed)
    rng = np.random.default_rng(seed + 1)
    lo = make_spectrum(A, B, "spatial")
    hi = make_spectrum(A + 1e-3 * rng.normal(size=A.shape), B, "spatial")
    small, big = sorted((t1, t2))
    c_small = filter_spectrum(lo, hi, tol=small).confirmed
    c_big = filter_spectrum(lo, hi, tol=big).confirmed
    assert np.all(c_big | ~c_small)


@settings(max_examples=30)
@given(st.integers(0, 2**31), st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
def test_selection_scale_invariant(seed, s):
    A, B = random_pencil(seed)
    rng = np.random.default_rng(seed + 1)
    A2 = A + 1e-4 * rng.normal(size=A.shape)
    base = filter_spectrum(make_spectrum(A, B, "spatial"), make_spectrum(A2, B, "spatial"), tol=1e-2)
    scaled = filter_spectrum(make_spectrum(s * A, s * B, "spatial"),
                             make_spectrum(s * A2, s * B, "spatial"), tol=1e-2)
    a = np.sort_complex(base.eigenvalues[base.confirmed])
    b = np.sort_complex(scaled.eigenvalues[scaled.confirmed])
    assert a.shape == b.shape and np.allclose(a, b, atol=1e-10 * max(1, np.abs(a).max(initial=1)))
    if a.size:
        assert abs(base.eigenvalues[select_index(base)]
                   - scaled.eigenvalues[select_index(scaled)]) <= 1e-10 * np.abs(a).max()


@given(st.integers(0, 2**31))
def test_random_residuals(seed):
    A, B = random_pencil(seed)
    lam, V, finite = generalized_eig(A, B)
    nA, nB = np.linalg.norm(A, 2), np.linalg.norm(B, 2)
    for i in np.flatnonzero(finite):
        res = np.linalg.norm(A @ V[:, i] + lam[i] * B @ V[:, i])
        assert res <= 1e-8 * (nA + abs(lam[i]) * nB)
