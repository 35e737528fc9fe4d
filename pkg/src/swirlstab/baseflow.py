"""Columnar base flows ``(U(r), 0, W(r))`` and their samples on a grid."""

from dataclasses import dataclass
from typing import Protocol

import numpy as np

# below this radius W and W' come from a Taylor series
SERIES_SWITCH = 1e-3


class Profile(Protocol):
    def evaluate(self, r) -> tuple: ...


@dataclass(frozen=True)
class QVortexProfile:
    """Batchelor (Q-) vortex: ``U = a + exp(-r^2)``, ``W = q (1 - exp(-r^2)) / r``.

    ``a`` sets the free-stream axial velocity and ``q`` the swirl number.
    """

    a: float = 0.0
    q: float = 0.1

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.q)):
            raise ValueError("Q-vortex parameters must be finite")

    def evaluate(self, r):
        return qvortex_eval(self, r)


def qvortex_eval(profile, r):
    """Return ``(U, U', W, W')`` at radius/radii ``r >= 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be non-negative")
    a, q = profile.a, profile.q
    r2 = r * r
    g = np.exp(-r2)
    U = a + g
    Up = -2.0 * r * g

    small = r < SERIES_SWITCH
    rs = np.where(small, 1.0, r)  # dummy radius avoids 0/0 in the unused branch
    one_minus_g = -np.expm1(-rs * rs)
    W_closed = q * one_minus_g / rs
    Wp_closed = 2.0 * q * np.exp(-rs * rs) - q * one_minus_g / (rs * rs)
    W_series = q * r * (1.0 - r2 / 2.0 + r2**2 / 6.0 - r2**3 / 24.0)
    Wp_series = q * (1.0 - 1.5 * r2 + 5.0 * r2**2 / 6.0 - 7.0 * r2**3 / 24.0)
    W = np.where(small, W_series, W_closed)
    Wp = np.where(small, Wp_series, Wp_closed)
    if W.ndim == 0:
        return float(U), float(Up), float(W), float(Wp)
    return U, Up, W, Wp


@dataclass(frozen=True)
class BaseFlowSamples:
    U: np.ndarray
    Up: np.ndarray
    W: np.ndarray
    Wp: np.ndarray
    U_rmax: float
    W_rmax: float
    Wp_rmax: float


def sample_profile(profile, r, r_max=None):
    """Sample any profile at nodes ``r``; wall scalars taken at ``r_max``.

    ``r`` may be a :class:`RadialGrid`, in which case ``r_max`` defaults to
    the grid's truncation radius.
    """
    if hasattr(r, "r_max"):
        r_max = r.r_max if r_max is None else r_max
        r = r.r
    r = np.asarray(r, dtype=float)
    if r_max is None:
        r_max = float(r.max())
    U, Up, W, Wp = (np.asarray(v, dtype=float) for v in profile.evaluate(r))
    Uw, _, Ww, Wpw = profile.evaluate(np.array([r_max]))
    return BaseFlowSamples(U, Up, W, Wp, float(Uw[0]), float(Ww[0]), float(Wpw[0]))
