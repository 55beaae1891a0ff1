"""JSON run configuration for the command-line front end."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .medium import MediumParams

MAX_SWEEP_POINTS = 1_000_000


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class MediumBlock(_Block):
    a: float = Field(1.0, ge=0, allow_inf_nan=False)
    S: float = Field(0.0, allow_inf_nan=False)
    l: int = 1
    alpha: float = Field(100.0, gt=0, allow_inf_nan=False)
    lossless: bool = False
    xi: Union[float, Literal["auto"]] = "auto"
    epsilon: float = Field(0.0, ge=0, allow_inf_nan=False)
    gamma_tilde: float = Field(1e4, gt=0, allow_inf_nan=False)
    delta_tilde: tuple[float, float] = (0.0, 0.0)


class GridBlock(_Block):
    rho_min: float = Field(0.0, ge=0)
    rho_max: float = Field(3.0, gt=0)
    count: int = Field(601, ge=2)

    @model_validator(mode="after")
    def _ordered(self):
        if self.rho_max <= self.rho_min:
            raise ValueError("rho_max must exceed rho_min")
        return self

    def grid(self):
        return np.linspace(self.rho_min, self.rho_max, self.count)


class MapBlock(GridBlock):
    count: int = Field(61, ge=2)
    n_phi: int = Field(64, ge=4)


class Axis(_Block):
    start: float
    stop: float
    count: int = Field(ge=1)

    def values(self):
        return np.linspace(self.start, self.stop, self.count)


class SweepBlock(_Block):
    axes: dict[Literal["S", "a", "alpha", "xi"], Axis] = Field(min_length=1)

    @model_validator(mode="after")
    def _bounded(self):
        total = math.prod(ax.count for ax in self.axes.values())
        if total > MAX_SWEEP_POINTS:
            raise ValueError(f"sweep has {total} combinations, limit is {MAX_SWEEP_POINTS}")
        return self


class ValidateBlock(_Block):
    gamma_tilde: float = Field(1e6, gt=0)
    oracle_tolerance: float = 1e-3
    gamma_scan: tuple[float, ...] = (1e3, 1e4, 1e5, 1e6)
    gamma_slope: float = -1.0
    gamma_slope_tolerance: float = 0.1
    ode_steps: int = Field(1024, ge=16)
    ode_tolerance: float = 1e-10
    order_steps: tuple[int, ...] = (64, 128, 256)
    order: float = 4.0
    order_tolerance: float = 0.2
    unitarity_tolerance: float = 1e-12
    unitarity_n_phi: int = Field(64, ge=1)
    xi_star_range: tuple[float, float] = (1.215, 1.225)


class PhysicalBlock(_Block):
    L_um: float = Field(gt=0)
    sigma_um: float = Field(gt=0)
    lambda_um: float = Field(gt=0)


class RunConfig(_Block):
    medium: MediumBlock = MediumBlock()
    scan: GridBlock = GridBlock()
    map: MapBlock = MapBlock()
    sweep: Optional[SweepBlock] = None
    validate_: ValidateBlock = Field(ValidateBlock(), alias="validate")
    physical: Optional[PhysicalBlock] = None
    output_dir: str = "out"

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    def resolved(self) -> "RunConfig":
        """Copy with ``xi: "auto"`` replaced by the swap detuning."""
        if self.medium.xi != "auto":
            return self
        from .analysis import solve_xi_condition

        xi = solve_xi_condition(self.medium.a, self.medium.S)
        return self.model_copy(update={"medium": self.medium.model_copy(update={"xi": xi})})

    def medium_params(self, **overrides) -> MediumParams:
        m = self.resolved().medium
        kw = dict(a=m.a, S=m.S, l=m.l, alpha=math.inf if m.lossless else m.alpha,
                  xi=m.xi, epsilon=m.epsilon, gamma_tilde=m.gamma_tilde,
                  delta_tilde=m.delta_tilde)
        kw.update(overrides)
        return MediumParams(**kw)

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


class ConfigError(Exception):
    """Configuration could not be parsed or validated."""


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_config(raw, source=str(path))


def parse_config(raw, source="<config>") -> RunConfig:
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        lines = [f"{source}: invalid configuration"]
        for err in exc.errors():
            where = ".".join(str(p) for p in err["loc"]) or "<root>"
            lines.append(f"  {where}: {err['msg']}")
        raise ConfigError("\n".join(lines)) from exc
