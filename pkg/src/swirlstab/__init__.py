"""Linear stability of swirling columnar vortices by spectral collocation."""

from .baseflow import QVortexProfile
from .config import RunConfig, SweepPlan
from .eigensolve import ModeResult, Spectrum, filter_spectrum, most_unstable
from .inviscid_model import InviscidProblem, solve_spatial_inviscid, solve_temporal_inviscid
from .runner import solve_config
from .viscous_model import ViscousProblem, solve_spatial_viscous

__all__ = [
    "QVortexProfile",
    "RunConfig",
    "SweepPlan",
    "ModeResult",
    "Spectrum",
    "filter_spectrum",
    "most_unstable",
    "InviscidProblem",
    "solve_spatial_inviscid",
    "solve_temporal_inviscid",
    "solve_config",
    "ViscousProblem",
    "solve_spatial_viscous",
]
