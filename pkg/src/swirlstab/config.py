"""Run configuration and sweep plans (JSON documents).

Defaults, in one place:

=============  ==========  =================================================
key            default     meaning
=============  ==========  =================================================
model          inviscid    ``inviscid`` (modal) or ``viscous`` (nodal)
analysis       spatial     ``spatial`` (eigenvalue k) or ``temporal`` (omega)
m              -3          azimuthal wavenumber
omega          0.01        real frequency, spatial analysis
k              None        real wavenumber, temporal analysis
Re             None        Reynolds number, viscous model only
a, q           0.0, 0.1    Q-vortex free-stream axial velocity, swirl
N              100         modes (inviscid) or polynomial degree (viscous)
dN             10          resolution increment for spurious-mode filtering
r_max          10.0        truncation radius
mu             2.0         map stretch rate
beta           None        map clustering; None -> 0 (inviscid), 1 (viscous)
tol            1e-3        filter distance between resolutions
cap            1e3         magnitude cap for physical eigenvalues
n_fine         2000        samples for eigenfunction reconstruction
=============  ==========  =================================================
"""

import itertools
import json
import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional


class ConfigError(ValueError):
    pass


MODEL_BETA = {"inviscid": 0.0, "viscous": 1.0}


@dataclass(frozen=True)
class RunConfig:
    model: str = "inviscid"
    analysis: str = "spatial"
    m: int = -3
    omega: Optional[float] = 0.01
    k: Optional[float] = None
    Re: Optional[float] = None
    a: float = 0.0
    q: float = 0.1
    N: int = 100
    dN: int = 10
    r_max: float = 10.0
    mu: float = 2.0
    beta: Optional[float] = None
    tol: float = 1e-3
    cap: float = 1e3
    n_fine: int = 2000

    def __post_init__(self):
        self.validate()

    @property
    def map_beta(self):
        return MODEL_BETA[self.model] if self.beta is None else self.beta

    def validate(self):
        if self.model not in MODEL_BETA:
            raise ConfigError(f"model must be 'inviscid' or 'viscous', got {self.model!r}")
        if self.analysis not in ("spatial", "temporal"):
            raise ConfigError(f"analysis must be 'spatial' or 'temporal', got {self.analysis!r}")
        if isinstance(self.m, bool) or int(self.m) != self.m:
            raise ConfigError(f"m must be an integer, got {self.m!r}")
        if self.model == "viscous":
            if self.analysis == "temporal":
                raise ConfigError("temporal analysis is only available for the inviscid model")
            if self.Re is None:
                raise ConfigError("viscous model requires Re")
            if not self.Re > 0:
                raise ConfigError(f"Re must be positive, got {self.Re}")
        if self.analysis == "spatial" and self.omega is None:
            raise ConfigError("spatial analysis requires omega")
        if self.analysis == "temporal" and self.k is None:
            raise ConfigError("temporal analysis requires k")
        for name in ("omega", "k", "Re", "a", "q", "r_max", "mu", "beta", "tol", "cap"):
            v = getattr(self, name)
            if v is None:
                continue
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"{name} must be a number, got {v!r}")
            if not math.isfinite(v) and not (name == "Re" and v == math.inf):
                raise ConfigError(f"{name} must be finite, got {v}")
        min_n = 8 if self.model == "inviscid" else 4
        if int(self.N) != self.N or self.N < min_n:
            raise ConfigError(f"N must be an integer >= {min_n}, got {self.N}")
        if int(self.dN) != self.dN or self.dN < 1:
            raise ConfigError(f"dN must be a positive integer, got {self.dN}")
        if not self.r_max > 0:
            raise ConfigError(f"r_max must be positive, got {self.r_max}")
        if self.map_beta < 0:
            raise ConfigError(f"beta must be non-negative, got {self.beta}")
        if not (self.tol > 0 and self.cap > 0):
            raise ConfigError("tol and cap must be positive")
        if int(self.n_fine) != self.n_fine or self.n_fine < 2:
            raise ConfigError(f"n_fine must be an integer >= 2, got {self.n_fine}")

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)


SWEEP_AXES = ("m", "omega", "q", "a", "Re")


@dataclass(frozen=True)
class SweepPlan:
    base: RunConfig
    axes: dict

    def __post_init__(self):
        if not self.axes:
            raise ConfigError("sweep needs at least one axis")
        for name, values in self.axes.items():
            if name not in SWEEP_AXES:
                raise ConfigError(f"cannot sweep over {name!r}; choose from {SWEEP_AXES}")
            if not isinstance(values, (list, tuple)) or not values:
                raise ConfigError(f"axis {name!r} needs a non-empty list")
        if all(len(v) == 1 for v in self.axes.values()):
            raise ConfigError("sweep needs at least one axis with more than one value")
        # building every point validates every combination up front
        self.points()

    @property
    def names(self):
        return list(self.axes)

    def points(self):
        """Configs in Cartesian order (last axis varies fastest)."""
        combos = itertools.product(*self.axes.values())
        return [replace(self.base, **dict(zip(self.axes, c))) for c in combos]

    def to_dict(self):
        return {"base": self.base.to_dict(), "axes": {k: list(v) for k, v in self.axes.items()}}

    @classmethod
    def from_dict(cls, data):
        if set(data) - {"base", "axes"}:
            raise ConfigError("sweep plan keys are 'base' and 'axes'")
        return cls(RunConfig.from_dict(data.get("base", {})), dict(data.get("axes", {})))

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("sweep plan must be a JSON object")
        return cls.from_dict(data)


REFERENCE_CASE = RunConfig(model="inviscid", analysis="spatial", m=-3, omega=0.01, a=0.0, q=0.1, N=100)
