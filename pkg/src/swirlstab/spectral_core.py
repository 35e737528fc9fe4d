"""Radial grids, the algebraic map onto [0, r_max], and spectral differentiation.

Two discretizations live here:

* a nodal one, where unknowns are values at Chebyshev-Lobatto points and
  derivatives come from the Lagrange differentiation matrix, and
* a modal one, where unknowns are coefficients of shifted Chebyshev
  polynomials ``T*_k(r) = T_{k-1}(2 r / r_max - 1)``, ``k = 1..N``.

All arrays follow one ordering: ``xi`` ascending from -1 to +1, so ``r``
descends from ``r_max`` (index 0) to the axis (last index).
"""

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import BarycentricInterpolator


@dataclass(frozen=True)
class RadialGrid:
    n_points: int
    xi: np.ndarray
    r: np.ndarray
    r_max: float
    dr_dxi: np.ndarray
    d2r_dxi2: np.ndarray
    mu: float
    beta: float

    @property
    def interior(self):
        return self.r[1:-1]

    def map(self, xi):
        return _map(np.asarray(xi, dtype=float), self.r_max, self.mu, self.beta)[0]

    def xi_of_r(self, r, iters=80):
        """Invert the map by vectorized bisection (the map is monotone)."""
        r = np.asarray(r, dtype=float)
        lo = np.full(r.shape, -1.0)  # r = r_max
        hi = np.full(r.shape, 1.0)  # r = 0
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            above = self.map(mid) > r
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
        return 0.5 * (lo + hi)


def lobatto_nodes(n_points):
    """Nodes ``cos(pi (j + n - 1) / (n - 1))``, ``j = 0..n-1``, ascending.

    Evaluated through the equivalent sine form so the set is exactly
    symmetric about zero in floating point.
    """
    j = np.arange(n_points)
    return np.sin(np.pi * (2 * j - (n_points - 1)) / (2.0 * (n_points - 1)))


def _map(xi, r_max, mu, beta):
    s = 0.5 * (1.0 - xi)
    e = beta * np.exp(-mu * s)
    g = 1.0 + e
    dg = -mu * e
    d2g = mu * mu * e
    K = (1.0 + beta * np.exp(-mu)) * r_max
    r = K * s / g
    dr_ds = K * (g - s * dg) / g**2
    d2r_ds2 = K * (-s * d2g * g - 2.0 * dg * (g - s * dg)) / g**3
    # ds/dxi = -1/2
    return r, -0.5 * dr_ds, 0.25 * d2r_ds2


def make_grid(n_points, r_max, mu=2.0, beta=1.0):
    """Build a mapped Lobatto grid on ``[0, r_max]``.

    ``beta = 0`` gives the linear map ``r = r_max (1 - xi) / 2``. Larger
    ``beta`` (with ``mu > 0``) pulls nodes towards the axis.
    """
    if n_points < 3:
        raise ValueError(f"need at least 3 grid points, got {n_points}")
    if not r_max > 0:
        raise ValueError(f"r_max must be positive, got {r_max}")
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    xi = lobatto_nodes(n_points)
    r, dr, d2r = _map(xi, float(r_max), float(mu), float(beta))
    if not (np.all(dr < 0) or np.all(dr > 0)):
        raise ValueError(f"map with mu={mu}, beta={beta} is not monotone")
    # pin the endpoints; the closed form already gives them up to rounding
    r[0], r[-1] = r_max, 0.0
    return RadialGrid(n_points, xi, r, float(r_max), dr, d2r, float(mu), float(beta))


# ---------------------------------------------------------------- nodal ----


@dataclass(frozen=True)
class NodalOperators:
    d1: np.ndarray
    d2: np.ndarray
    delta_xi: np.ndarray


def cheb_delta(xi):
    """Chebyshev-Lobatto differentiation matrix from the closed-form entries.

    Corner entries are ``+(2N^2+1)/6`` at ``xi = +1`` and ``-(2N^2+1)/6`` at
    ``xi = -1``; interior diagonal ``-xi_j / (2 (1 - xi_j^2))``; off-diagonal
    ``(c_i / c_j) (-1)^(i+j) / (xi_i - xi_j)`` with ``c = 2`` at the ends.
    """
    xi = np.asarray(xi, dtype=float)
    n = len(xi) - 1
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    idx = np.arange(n + 1)
    sign = (-1.0) ** (idx[:, None] + idx[None, :])
    diff = xi[:, None] - xi[None, :]
    np.fill_diagonal(diff, 1.0)
    D = (c[:, None] / c[None, :]) * sign / diff
    inner = xi[1:-1]
    diag = np.empty(n + 1)
    diag[1:-1] = -inner / (2.0 * (1.0 - inner**2))
    corner = (2.0 * n * n + 1.0) / 6.0
    diag[0] = corner * np.sign(xi[0])
    diag[-1] = corner * np.sign(xi[-1])
    np.fill_diagonal(D, diag)
    return D


def nodal_diff(grid):
    """First and second physical-space derivative matrices on ``grid``."""
    delta = cheb_delta(grid.xi)
    inv = 1.0 / grid.dr_dxi
    d1 = inv[:, None] * delta
    d2 = (inv**2)[:, None] * (delta @ delta) - (grid.d2r_dxi2 * inv**3)[:, None] * delta
    return NodalOperators(d1=d1, d2=d2, delta_xi=delta)


def nodal_interpolate(grid, values, r):
    """Evaluate the nodal interpolant of ``values`` at radii ``r``.

    Interpolation is done in the computational variable, where the nodes are
    Chebyshev-Lobatto points and the barycentric formula is well conditioned.
    """
    xi = grid.xi_of_r(r)
    return BarycentricInterpolator(grid.xi, np.asarray(values))(xi)


# ---------------------------------------------------------------- modal ----


def shifted_cheb_table(r, n_modes, r_max):
    """Return ``T[i, k-1] = T*_k(r_i)`` for ``k = 1..n_modes``."""
    x = 2.0 * np.asarray(r, dtype=float) / r_max - 1.0
    T = np.empty((x.size, n_modes))
    T[:, 0] = 1.0
    if n_modes > 1:
        T[:, 1] = x
    for k in range(2, n_modes):
        T[:, k] = 2.0 * x * T[:, k - 1] - T[:, k - 2]
    return T


def shifted_cheb_deriv(r, n_modes, r_max):
    """``dT*_k/dr`` at interior radii via the neighbour-difference identity.

    ``T*_n' = (r_max/4) (n-1) / (r (r_max - r)) [T*_{n-1} - T*_{n+1}]``.
    Singular at ``r = 0`` and ``r = r_max``.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0) or np.any(r >= r_max):
        raise ValueError("modal derivative is singular at r = 0 and r = r_max")
    T = shifted_cheb_table(r, n_modes + 1, r_max)
    dT = np.zeros((r.size, n_modes))
    n = np.arange(2, n_modes + 1)
    pref = (r_max / 4.0) / (r * (r_max - r))
    # column n-1 holds T*_n; neighbours are columns n-2 and n
    dT[:, 1:] = pref[:, None] * (n - 1) * (T[:, n - 2] - T[:, n])
    return dT


def axis_deriv_values(n_modes, r_max):
    """Limit of ``dT*_k/dr`` at ``r = 0``: ``(2/r_max) (-1)^k (k-1)^2``."""
    k = np.arange(1, n_modes + 1)
    return (2.0 / r_max) * (-1.0) ** k * (k - 1.0) ** 2


def wall_deriv_values(n_modes, r_max):
    """``dT*_k/dr`` at ``r = r_max``: ``2 (k-1)^2 / r_max``."""
    k = np.arange(1, n_modes + 1)
    return 2.0 * (k - 1.0) ** 2 / r_max


@dataclass(frozen=True)
class ModalBasis:
    n_modes: int
    r_max: float
    r_interior: np.ndarray
    eta: np.ndarray
    deriv: np.ndarray
    axis_signs: np.ndarray
    wall_values: np.ndarray

    @property
    def axis_deriv(self):
        return axis_deriv_values(self.n_modes, self.r_max)

    @property
    def wall_deriv(self):
        return wall_deriv_values(self.n_modes, self.r_max)

    def evaluate(self, coeffs, r):
        return eval_modal_series(coeffs, self.r_max, r)


def modal_basis(n_modes, grid):
    """Shifted Chebyshev table and derivative matrix at the grid's interior nodes.

    ``grid`` must carry ``n_modes`` points; rows of ``eta`` and ``deriv``
    correspond to nodes ``j = 2..N-1`` in the grid's ordering.
    """
    if n_modes < 4:
        raise ValueError(f"need at least 4 modes, got {n_modes}")
    if grid.n_points != n_modes:
        raise ValueError(f"grid has {grid.n_points} points, expected {n_modes}")
    r_in = grid.interior.copy()
    if np.any(r_in <= 0.0) or np.any(r_in >= grid.r_max):
        raise ValueError("interior nodes must lie strictly inside (0, r_max)")
    k = np.arange(1, n_modes + 1)
    return ModalBasis(
        n_modes=n_modes,
        r_max=grid.r_max,
        r_interior=r_in,
        eta=shifted_cheb_table(r_in, n_modes, grid.r_max),
        deriv=shifted_cheb_deriv(r_in, n_modes, grid.r_max),
        axis_signs=(-1.0) ** (k + 1),
        wall_values=np.ones(n_modes),
    )


def eval_modal_series(coeffs, r_max, r):
    """Sum ``sum_k c_k T*_k(r)`` by Clenshaw's recurrence."""
    c = np.asarray(coeffs)
    x = 2.0 * np.asarray(r, dtype=float) / r_max - 1.0
    b1 = np.zeros(x.shape, dtype=np.result_type(c, float))
    b2 = np.zeros_like(b1)
    for ck in c[:0:-1]:
        b1, b2 = ck + 2.0 * x * b1 - b2, b1
    return c[0] + x * b1 - b2
