"""Inviscid stability of a columnar vortex in a shifted Chebyshev basis.

Normal modes ``{v_z, v_r, v_theta, p} = {F, iG, H, P} exp(i(kz + m theta - omega t))``
of the linearized Euler equations satisfy

    G' + G/r + m H/r + k F = 0
    (omega - m W/r - k U) G - 2 W H / r + P' = 0
    (-omega + m W/r + k U) H + (W' + W/r) G + m P / r = 0
    (-omega + m W/r + k U) F + U' G + k P = 0

Each amplitude is expanded as ``sum_k c_k T*_k(r)`` and the equations are
collocated at the interior nodes; eight boundary rows close the system.
The unknown vector is ``(f_1..f_N, g_1..g_N, h_1..h_N, p_1..p_N)`` and the
discrete problem is ``(k Mk + omega Momega + m Mm + M0) s = 0``.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import eigensolve
from .baseflow import QVortexProfile, sample_profile
from .spectral_core import eval_modal_series, make_grid, modal_basis

BLOCKS = ("F", "G", "H", "P")


@dataclass(frozen=True)
class InviscidProblem:
    m: int
    omega: Optional[float] = None
    k: Optional[float] = None
    n_modes: int = 100
    r_max: float = 10.0
    profile: object = field(default_factory=QVortexProfile)
    mu: float = 2.0
    # polynomial collocation in r needs Chebyshev points in r: linear map
    beta: float = 0.0

    def __post_init__(self):
        if int(self.m) != self.m:
            raise ValueError(f"azimuthal wavenumber must be an integer, got {self.m}")
        if (self.omega is None) == (self.k is None):
            raise ValueError("set exactly one of omega (spatial) or k (temporal)")
        if self.n_modes < 8:
            raise ValueError(f"need at least 8 modes, got {self.n_modes}")

    def with_resolution(self, n):
        return replace(self, n_modes=n)

    def discretize(self):
        grid = make_grid(self.n_modes, self.r_max, self.mu, self.beta)
        basis = modal_basis(self.n_modes, grid)
        flow = sample_profile(self.profile, basis.r_interior, self.r_max)
        return basis, flow

    def meta(self):
        return {
            "model": "inviscid",
            "m": int(self.m),
            "omega": self.omega,
            "k": self.k,
            "N": self.n_modes,
            "r_max": self.r_max,
            "mu": self.mu,
            "beta": self.beta,
            "profile": repr(self.profile),
        }


@dataclass(frozen=True)
class BoundaryRow:
    """One boundary equation split by eigen-parameter: ``k*kpart + omega*wpart + const``."""

    label: str
    kpart: np.ndarray
    wpart: np.ndarray
    const: np.ndarray


@dataclass(frozen=True)
class BlockSystem:
    Mk: np.ndarray
    Momega: np.ndarray
    Mm: np.ndarray
    M0: np.ndarray
    m: int
    boundary_labels: tuple = ()

    @property
    def n_modes(self):
        return self.Mk.shape[0] // 4

    def constant_part(self, omega=None, k=None):
        """Fold the fixed parameters into one matrix.

        With ``omega`` given the result is the spatial constant part
        ``omega Momega + m Mm + M0``; with ``k`` it is the temporal one.
        """
        C = self.m * self.Mm + self.M0
        if omega is not None:
            C = C + omega * self.Momega
        if k is not None:
            C = C + k * self.Mk
        return C

    def matrix(self, k, omega):
        return k * self.Mk + omega * self.Momega + self.m * self.Mm + self.M0


def _block(n_rows, n, entries):
    """Assemble a 4x4 block matrix from ``{(row_block, col_block): array}``."""
    out = np.zeros((4 * n_rows, 4 * n), dtype=complex)
    for (i, j), blk in entries.items():
        out[i * n_rows : (i + 1) * n_rows, j * n : (j + 1) * n] = blk
    return out


def assemble_interior(flow, basis):
    """Interior rows of ``(Mk, Momega, Mm, M0)``, shape ``(4(N-2), 4N)`` each.

    Row blocks: continuity times r, negated radial momentum, azimuthal
    momentum times r, axial momentum. Column blocks: f, g, h, p.
    """
    n = basis.n_modes
    nr = n - 2
    eta = basis.eta
    D = basis.deriv
    r = basis.r_interior[:, None]
    U = flow.U[:, None]
    Up = flow.Up[:, None]
    W = flow.W[:, None]
    Wp = flow.Wp[:, None]
    Mk = _block(nr, n, {(0, 0): r * eta, (1, 1): U * eta, (2, 2): r * U * eta,
                        (3, 0): U * eta, (3, 3): eta})
    Mw = _block(nr, n, {(1, 1): -eta, (2, 2): -r * eta, (3, 0): -eta})
    Mm = _block(nr, n, {(0, 2): eta, (1, 1): (W / r) * eta, (2, 2): W * eta,
                        (2, 3): eta, (3, 0): (W / r) * eta})
    M0 = _block(nr, n, {(0, 1): eta + r * D, (1, 2): 2.0 * (W / r) * eta,
                        (1, 3): -D, (2, 1): W * eta + r * Wp * eta, (3, 1): Up * eta})
    return Mk, Mw, Mm, M0


def boundary_rows(m, flow, basis):
    """The eight boundary equations for azimuthal wavenumber ``m``.

    Returned in order: axis rows first, then wall rows. Values on the axis
    use ``T*_k(0) = (-1)^(k+1)``; at the wall ``T*_k(r_max) = 1``.
    """
    n = basis.n_modes
    R = basis.r_max
    Uw, Ww, Wpw = flow.U_rmax, flow.W_rmax, flow.Wp_rmax
    axis = basis.axis_signs
    ones = basis.wall_values
    zero = np.zeros(n)

    def vec(f=zero, g=zero, h=zero, p=zero):
        return np.concatenate([f, g, h, p]).astype(complex)

    Z = vec()

    def row(label, k=None, w=None, c=None):
        return BoundaryRow(label, Z if k is None else k, Z if w is None else w,
                           Z if c is None else c)

    m = int(m)
    if abs(m) > 1:
        return [
            row("axis F=0", c=vec(f=axis)),
            row("axis G=0", c=vec(g=axis)),
            row("axis H=0", c=vec(h=axis)),
            row("axis P=0", c=vec(p=axis)),
            row("wall F=0", c=vec(f=ones)),
            row("wall G=0", c=vec(g=ones)),
            row("wall H=0", c=vec(h=ones)),
            row("wall P=0", c=vec(p=ones)),
        ]

    # 2 W H / r - P' = 0 at the wall, with P'(r_max) = sum p_k 2 (k-1)^2 / r_max
    wall_pressure = row("wall 2WH/r - P'=0",
                        c=vec(h=2.0 * Ww / R * ones, p=-basis.wall_deriv))
    wall_g = row("wall G=0", c=vec(g=ones))

    if m == 0:
        return [
            row("axis G=0", c=vec(g=axis)),
            row("axis H=0", c=vec(h=axis)),
            row("axis F'=0", c=vec(f=basis.axis_deriv)),
            row("axis P'=0", c=vec(p=basis.axis_deriv)),
            wall_pressure,
            wall_g,
            row("wall H(kU-omega)=0", k=vec(h=Uw * ones), w=vec(h=-ones)),
            row("wall F(kU-omega)+kP=0", k=vec(f=Uw * ones, p=ones), w=vec(f=-ones)),
        ]

    s = float(np.sign(m))
    return [
        row("axis G+-H=0", c=vec(g=axis, h=s * axis)),
        row("axis F=0", c=vec(f=axis)),
        row("axis P=0", c=vec(p=axis)),
        wall_pressure,
        wall_g,
        row("wall H-row", k=vec(h=Uw * R * ones), w=vec(h=-R * ones),
            c=vec(h=s * Ww * ones, p=s * ones)),
        row("wall F-row", k=vec(f=Uw * R * ones, p=R * ones), w=vec(f=-R * ones),
            c=vec(f=s * Ww * ones)),
        # azimuthal momentum times r, collocated at the wall
        row("wall azimuthal momentum", k=vec(h=R * Uw * ones), w=vec(h=-R * ones),
            c=vec(g=(Ww + R * Wpw) * ones, h=m * Ww * ones, p=m * ones)),
    ]


def assemble_inviscid(problem, basis=None, flow=None):
    """Full ``4N x 4N`` block system: interior rows then the 8 boundary rows."""
    if basis is None or flow is None:
        basis, flow = problem.discretize()
    Mk, Mw, Mm, M0 = assemble_interior(flow, basis)
    rows = boundary_rows(problem.m, flow, basis)
    zero = np.zeros((len(rows), Mk.shape[1]), dtype=complex)
    Mk = np.vstack([Mk, [b.kpart for b in rows]])
    Mw = np.vstack([Mw, [b.wpart for b in rows]])
    Mm = np.vstack([Mm, zero])
    M0 = np.vstack([M0, [b.const for b in rows]])
    return BlockSystem(Mk, Mw, Mm, M0, int(problem.m), tuple(b.label for b in rows))


def modal_sampler(r_max):
    def sample(vector, r):
        parts = np.split(np.asarray(vector), 4)
        return {name: eval_modal_series(c, r_max, r) for name, c in zip(BLOCKS, parts)}

    return sample


def solve_spatial_inviscid(problem, cap=eigensolve.DEFAULT_CAP):
    """Complex wavenumbers k for real ``problem.omega``: ``(C + k Mk) s = 0``."""
    if problem.omega is None:
        raise ValueError("spatial analysis needs a real omega")
    system = assemble_inviscid(problem)
    C = system.constant_part(omega=float(problem.omega))
    return eigensolve.make_spectrum(
        C, system.Mk, "spatial", problem.meta(),
        modal_sampler(problem.r_max), cap,
    )


def solve_temporal_inviscid(problem, cap=eigensolve.DEFAULT_CAP):
    """Complex frequencies omega for real ``problem.k``; growth iff Im(omega) > 0."""
    if problem.k is None:
        raise ValueError("temporal analysis needs a real k")
    system = assemble_inviscid(problem)
    C = system.constant_part(k=float(problem.k))
    return eigensolve.make_spectrum(
        C, system.Momega, "temporal", problem.meta(),
        modal_sampler(problem.r_max), cap,
    )
