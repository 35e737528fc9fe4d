"""Dense generalized eigensolver, spurious-mode filtering and mode selection.

Every pencil in this package is written ``(A + lam B) v = 0``; this module
is the one place that turns it into LAPACK's ``A v = lam (-B) v``.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from scipy import linalg

DEFAULT_TOL = 1e-3
DEFAULT_CAP = 1e3

# |beta| below this multiple of eps * ||B|| counts as an infinite eigenvalue
_INF_FACTOR = 1e3


class NoPhysicalModeError(RuntimeError):
    """No eigenvalue survived filtering."""


@dataclass
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    kind: str  # "spatial" (eigenvalue k) or "temporal" (eigenvalue omega)
    finite: np.ndarray
    magnitude_ok: np.ndarray
    # None until compared against a finer resolution
    resolution_confirmed: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)
    # maps (eigenvector, radii) -> {"F","G","H","P": complex samples}
    sampler: Optional[Callable] = field(default=None, repr=False, compare=False)

    @property
    def filtered(self):
        return self.resolution_confirmed is not None

    @property
    def confirmed(self):
        if self.resolution_confirmed is None:
            raise ValueError("spectrum has not been filtered against a finer resolution")
        return self.finite & self.magnitude_ok & self.resolution_confirmed

    def __len__(self):
        return len(self.eigenvalues)


@dataclass
class ModeResult:
    eigenvalue: complex
    growth_rate: float
    kind: str
    unstable: bool
    r_c: float
    r: np.ndarray
    amplitudes: dict
    flat_profile: bool
    index: int
    meta: dict = field(default_factory=dict)


def generalized_eig(A, B):
    """All eigenpairs of ``(A + lam B) v = 0``.

    Returns ``(lam, V, finite)``. Infinite and indeterminate (0/0)
    eigenvalues are flagged, with ``lam`` set to ``inf`` or ``nan``.
    Eigenvector columns have unit 2-norm.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"A must be square, got shape {A.shape}")
    if A.shape != B.shape:
        raise ValueError(f"A and B shapes differ: {A.shape} vs {B.shape}")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
        raise ValueError("pencil contains non-finite entries")
    # a real pencil keeps real arithmetic so complex eigenvalues pair up exactly
    if np.iscomplexobj(A) or np.iscomplexobj(B):
        if np.any(A.imag) or np.any(B.imag):
            A, B = A.astype(complex), B.astype(complex)
        else:
            A, B = A.real.astype(float), B.real.astype(float)
    else:
        A, B = A.astype(float), B.astype(float)
    (alpha, beta), V = linalg.eig(A, -B, homogeneous_eigvals=True)
    n = A.shape[0]
    eps = np.finfo(float).eps
    na = max(np.linalg.norm(A, 1), np.finfo(float).tiny)
    nb = max(np.linalg.norm(B, 1), np.finfo(float).tiny)
    beta_small = np.abs(beta) <= _INF_FACTOR * n * eps * nb
    alpha_small = np.abs(alpha) <= _INF_FACTOR * n * eps * na
    finite = ~beta_small
    lam = np.full(n, np.inf, dtype=complex)
    lam[finite] = alpha[finite] / beta[finite]
    lam[beta_small & alpha_small] = np.nan
    V = V / np.linalg.norm(V, axis=0)
    return lam, V, finite


def make_spectrum(A, B, kind, meta=None, sampler=None, cap=DEFAULT_CAP):
    lam, V, finite = generalized_eig(A, B)
    with np.errstate(invalid="ignore"):
        mag_ok = finite & (np.abs(lam) <= cap)
    return Spectrum(
        eigenvalues=lam,
        eigenvectors=V,
        kind=kind,
        finite=finite,
        magnitude_ok=mag_ok,
        meta=dict(meta or {}),
        sampler=sampler,
    )


_META_KEYS_IGNORED = {"N"}


def filter_spectrum(spec, spec_hi, tol=DEFAULT_TOL, cap=DEFAULT_CAP):
    """Flag eigenvalues of ``spec`` that reappear in the finer ``spec_hi``.

    An eigenvalue is confirmed when it is finite, ``|lam| <= cap`` and some
    finite eigenvalue of ``spec_hi`` lies within ``tol`` of it.
    """
    if spec.kind != spec_hi.kind:
        raise ValueError(f"spectrum kinds differ: {spec.kind} vs {spec_hi.kind}")
    for key in set(spec.meta) | set(spec_hi.meta):
        if key in _META_KEYS_IGNORED:
            continue
        if spec.meta.get(key) != spec_hi.meta.get(key):
            raise ValueError(f"problem metadata differ on {key!r}")

    lam = spec.eigenvalues
    with np.errstate(invalid="ignore"):
        mag_ok = spec.finite & (np.abs(lam) <= cap)
    other = spec_hi.eigenvalues[spec_hi.finite & np.isfinite(spec_hi.eigenvalues)]
    confirmed = np.zeros(len(lam), dtype=bool)
    if other.size:
        idx = np.flatnonzero(mag_ok)
        dist = np.abs(lam[idx, None] - other[None, :]).min(axis=1)
        confirmed[idx] = dist <= tol
    return replace(spec, magnitude_ok=mag_ok, resolution_confirmed=confirmed)


def select_index(spec):
    """Index of the least stable confirmed eigenvalue.

    Spatial: smallest Im(k) (growth in z iff Im(k) < 0). Temporal: largest
    Im(omega). Ties go to the smaller |Re|.
    """
    idx = np.flatnonzero(spec.confirmed)
    if idx.size == 0:
        raise NoPhysicalModeError("no confirmed eigenvalue in spectrum")
    lam = spec.eigenvalues[idx]
    key = lam.imag if spec.kind == "spatial" else -lam.imag
    order = np.lexsort((np.abs(lam.real), key))
    return int(idx[order[0]])


def growth_rate(lam, kind):
    return float(-lam.imag) if kind == "spatial" else float(lam.imag)


def critical_radius(vector, sampler, r_max, n_fine=2000):
    """Locate the peak of |G| for one eigenvector.

    Samples all amplitudes on ``n_fine`` uniformly spaced radii strictly
    inside ``(0, r_max)`` and scales them so that ``G(r_c) = 1``. Returns
    ``(r_c, r, amplitudes, flat)``; ``flat`` marks a constant ``|G|``, for
    which the smallest maximizer is reported.
    """
    if n_fine < 2:
        raise ValueError("n_fine must be at least 2")
    vector = np.asarray(vector)
    if not np.any(vector):
        raise ValueError("eigenvector is identically zero")
    r = np.linspace(0.0, r_max, n_fine + 2)[1:-1]
    amps = sampler(vector, r)
    absG = np.abs(amps["G"])
    i = int(np.argmax(absG))
    peak = absG[i]
    if peak == 0.0:
        raise ValueError("radial velocity amplitude vanishes identically")
    flat = bool(np.ptp(absG) <= 1e-12 * peak)
    scale = amps["G"][i]
    amps = {name: np.asarray(v) / scale for name, v in amps.items()}
    amps["G"][i] = 1.0
    return float(r[i]), r, amps, flat


def most_unstable(spec, n_fine=2000):
    """Select the least stable confirmed mode and locate its critical radius."""
    i = select_index(spec)
    lam = complex(spec.eigenvalues[i])
    rate = growth_rate(lam, spec.kind)
    if spec.sampler is not None:
        r_c, r, amps, flat = critical_radius(
            spec.eigenvectors[:, i], spec.sampler, spec.meta["r_max"], n_fine
        )
    else:
        r_c, r, amps, flat = float("nan"), np.empty(0), {}, False
    return ModeResult(
        eigenvalue=lam,
        growth_rate=rate,
        kind=spec.kind,
        unstable=rate > 0,
        r_c=r_c,
        r=r,
        amplitudes=amps,
        flat_profile=flat,
        index=i,
        meta=dict(spec.meta),
    )
