"""Viscous spatial stability on the nodal (Lagrange) grid.

The dispersion relation is ``(omega M_omega + M + k M_k + k^2 M_k2) S = 0``
with the nodal unknowns stacked in the order the operator table uses:
radial ``G``, azimuthal ``H``, axial ``F`` velocity amplitudes, then
pressure ``P`` (``v_r = iG``, ``v_theta = H``, ``v_z = F``).

For a given real ``omega`` the quadratic pencil in ``k`` is linearized by
augmenting the unknowns with ``k`` times the three velocity stacks.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import eigensolve
from .baseflow import QVortexProfile, sample_profile
from .spectral_core import make_grid, nodal_diff, nodal_interpolate

# block position -> amplitude name
BLOCKS = ("G", "H", "F", "P")
N_VELOCITY = 3

# (row, col) blocks that carry nonzero entries in each operator, before
# boundary rows are imposed
SPARSITY = {
    "Momega": {(0, 0), (1, 1), (2, 2)},
    "Mk2": {(0, 0), (1, 1), (2, 2)},
    "Mk": {(0, 0), (1, 1), (2, 2), (2, 3), (3, 2)},
    "M": {(0, 0), (0, 1), (0, 3), (1, 0), (1, 1), (1, 3), (2, 0), (2, 2), (3, 0), (3, 1)},
}


@dataclass(frozen=True)
class ViscousProblem:
    m: int
    omega: float
    Re: float
    n: int = 100  # polynomial degree; the grid carries n + 1 nodes
    r_max: float = 10.0
    profile: object = field(default_factory=QVortexProfile)
    mu: float = 2.0
    beta: float = 1.0
    literal_table: bool = False

    def __post_init__(self):
        if int(self.m) != self.m:
            raise ValueError(f"azimuthal wavenumber must be an integer, got {self.m}")
        if not self.Re > 0:
            raise ValueError(f"Reynolds number must be positive, got {self.Re}")
        if not np.isfinite(self.omega):
            raise ValueError("omega must be a finite real number")

    def with_resolution(self, n):
        return replace(self, n=n)

    def discretize(self):
        grid = make_grid(self.n + 1, self.r_max, self.mu, self.beta)
        return grid, nodal_diff(grid), sample_profile(self.profile, grid)

    def meta(self):
        return {
            "model": "viscous",
            "m": int(self.m),
            "omega": self.omega,
            "Re": self.Re,
            "N": self.n,
            "r_max": self.r_max,
            "mu": self.mu,
            "beta": self.beta,
            "profile": repr(self.profile),
        }


@dataclass(frozen=True)
class DispersionMatrices:
    M0: np.ndarray
    Mk: np.ndarray
    Mk2: np.ndarray
    n_nodes: int

    def quadratic(self, k):
        return self.M0 + k * self.Mk + k * k * self.Mk2


@dataclass(frozen=True)
class CompanionPair:
    A: np.ndarray
    B: np.ndarray
    n_state: int  # rows/cols of the original quadratic problem


def _blocks(n, entries):
    out = np.zeros((4 * n, 4 * n), dtype=complex)
    for (i, j), blk in entries.items():
        out[i * n : (i + 1) * n, j * n : (j + 1) * n] = blk
    return out


def dispersion_operators(problem, grid, ops, flow):
    """Return the four raw operators ``(M_omega, M, M_k, M_k2)``.

    Rows at the axis node are left zero (``1/r`` is not evaluated there);
    boundary conditions overwrite them.
    """
    n = grid.n_points
    m = int(problem.m)
    inv_re = 0.0 if np.isinf(problem.Re) else 1.0 / problem.Re
    r = grid.r
    on_axis = r == 0.0
    inv_r = np.where(on_axis, 0.0, 1.0 / np.where(on_axis, 1.0, r))
    keep = (~on_axis).astype(float)[:, None]  # zeroes the axis row

    I = np.diag(keep[:, 0]).astype(complex)
    diag = lambda v: np.diag(v * keep[:, 0])
    d1 = ops.d1 * keep
    d2 = ops.d2 * keep
    U, Up, W, Wp = flow.U, flow.Up, flow.W, flow.Wp
    Wr = W * inv_r
    ir2 = inv_r**2

    lap = -inv_re * d2 - inv_re * diag(inv_r) @ d1
    k2_side = 1j * inv_re if problem.literal_table else inv_re
    hoop = 0.0 if problem.literal_table else 1.0
    axial_shear = Wp if problem.literal_table else Up

    Momega = _blocks(n, {(0, 0): I, (1, 1): -1j * I, (2, 2): -1j * I})
    Mk2 = _blocks(n, {(0, 0): 1j * inv_re * I, (1, 1): k2_side * I, (2, 2): k2_side * I})
    Mk = _blocks(n, {(0, 0): diag(-U), (1, 1): diag(1j * U), (2, 2): diag(1j * U),
                     (2, 3): 1j * I, (3, 2): 1j * I})
    M = _blocks(n, {
        (0, 0): diag(-m * Wr + 1j * (m * m + 1) * ir2 * inv_re) + 1j * lap,
        (0, 1): diag(-2.0 * Wr + 2j * m * ir2 * inv_re),
        (0, 3): d1,
        (1, 0): diag(1j * Wp + 1j * Wr + 2.0 * m * ir2 * inv_re),
        (1, 1): diag(1j * m * Wr + (m * m + hoop) * ir2 * inv_re) + lap,
        (1, 3): diag(1j * m * inv_r),
        (2, 0): diag(1j * axial_shear),
        (2, 2): diag(1j * m * Wr + m * m * ir2 * inv_re) + lap,
        (3, 0): 1j * d1 + diag(1j * inv_r),
        (3, 1): diag(1j * m * inv_r),
    })
    return Momega, M, Mk, Mk2


def assemble_dispersion(problem, grid=None, ops=None, flow=None):
    """Quadratic pencil ``M0 + k Mk + k^2 Mk2`` with ``M0 = omega M_omega + M``."""
    if grid is None:
        grid, ops, flow = problem.discretize()
    Momega, M, Mk, Mk2 = dispersion_operators(problem, grid, ops, flow)
    return DispersionMatrices(problem.omega * Momega + M, Mk, Mk2, grid.n_points)


def boundary_row_indices(n_nodes):
    """Row indices replaced by boundary conditions: wall rows, then axis rows."""
    wall = [b * n_nodes for b in range(4)]
    axis = [b * n_nodes + n_nodes - 1 for b in range(4)]
    return wall + axis


def apply_viscous_bcs(mats, m, d1):
    """Replace the 8 boundary rows.

    Wall: ``G = H = F = P = 0``. Axis: ``|m| > 1`` all zero; ``m = 0``
    ``G = H = 0, F' = P' = 0``; ``m = +-1`` ``G +- H = 0, G' = 0, F = 0, P = 0``.
    Boundary rows carry no ``k`` dependence.
    """
    n = mats.n_nodes
    M0, Mk, Mk2 = mats.M0.copy(), mats.Mk.copy(), mats.Mk2.copy()
    rows = boundary_row_indices(n)
    for A in (M0, Mk, Mk2):
        A[rows, :] = 0.0

    def unit(block, node):
        v = np.zeros(4 * n, dtype=complex)
        v[block * n + node] = 1.0
        return v

    def deriv(block, node):
        v = np.zeros(4 * n, dtype=complex)
        v[block * n : (block + 1) * n] = d1[node]
        return v

    wall, ax = 0, n - 1
    for b in range(4):
        M0[b * n + wall] = unit(b, wall)

    g, h, f, p = range(4)
    m = int(m)
    if abs(m) > 1:
        axis_rows = [unit(g, ax), unit(h, ax), unit(f, ax), unit(p, ax)]
    elif m == 0:
        axis_rows = [unit(g, ax), unit(h, ax), deriv(f, ax), deriv(p, ax)]
    else:
        axis_rows = [unit(g, ax) + np.sign(m) * unit(h, ax), deriv(g, ax),
                     unit(f, ax), unit(p, ax)]
    for b, row in enumerate(axis_rows):
        M0[b * n + ax] = row
    return DispersionMatrices(M0, Mk, Mk2, n)


def companion_pencil(M0, Mk, Mk2, n_aux=None):
    """Linearize ``M0 + k Mk + k^2 Mk2`` into ``A + k B``.

    The state is augmented with ``k`` times its first ``n_aux`` entries
    (all of them by default)::

        A = [[M0, 0], [0, I]],   B = [[Mk, Mk2[:, :n_aux]], [-[I 0], 0]]
    """
    M0, Mk, Mk2 = (np.asarray(x, dtype=complex) for x in (M0, Mk, Mk2))
    n = M0.shape[0]
    if not (M0.shape == Mk.shape == Mk2.shape == (n, n)):
        raise ValueError("quadratic pencil matrices must be square and equal-sized")
    n_aux = n if n_aux is None else n_aux
    if np.any(Mk2[:, n_aux:]):
        raise ValueError("k^2 coefficients outside the augmented columns")
    A = np.zeros((n + n_aux, n + n_aux), dtype=complex)
    B = np.zeros_like(A)
    A[:n, :n] = M0
    A[n:, n:] = np.eye(n_aux)
    B[:n, :n] = Mk
    B[:n, n:] = Mk2[:, :n_aux]
    B[n:, :n_aux] = -np.eye(n_aux)
    return CompanionPair(A, B, n)


def companion_linearize(mats):
    return companion_pencil(mats.M0, mats.Mk, mats.Mk2, N_VELOCITY * mats.n_nodes)


def nodal_sampler(grid):
    n = grid.n_points

    def sample(vector, r):
        state = np.asarray(vector)[: 4 * n]
        return {name: nodal_interpolate(grid, state[b * n : (b + 1) * n], r)
                for b, name in enumerate(BLOCKS)}

    return sample


def solve_spatial_viscous(problem, cap=eigensolve.DEFAULT_CAP):
    """Complex wavenumbers of the viscous problem at real ``omega``.

    The raw spectrum has ``7 (N + 1)`` entries; infinite eigenvalues of the
    companion pencil are flagged, not removed.
    """
    grid, ops, flow = problem.discretize()
    mats = apply_viscous_bcs(assemble_dispersion(problem, grid, ops, flow),
                             problem.m, ops.d1)
    pair = companion_linearize(mats)
    return eigensolve.make_spectrum(pair.A, pair.B, "spatial", problem.meta(),
                                    nodal_sampler(grid), cap)
