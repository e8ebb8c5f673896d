"""Request/response models shared by the service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Command = Literal[
    "generate",
    "color",
    "whiten",
    "census",
    "core",
    "bounds",
    "montecarlo",
    "model-compare",
    "ballsbins-check",
]

STOCHASTIC_COMMANDS = frozenset({"generate", "montecarlo", "model-compare"})


class ExperimentConfig(BaseModel):
    """One experiment. Unknown fields are rejected; every run is fully
    determined by this record (no environment variables, no clock)."""

    model_config = ConfigDict(extra="forbid")

    subcommand: Optional[Command] = None

    # problem size
    n: Optional[int] = Field(None, ge=1)
    m: Optional[int] = Field(None, ge=0)
    d: Optional[float] = Field(None, gt=0.0)
    k: Optional[int] = Field(None, ge=1)
    ell: Optional[float] = Field(None, ge=0.0)
    delta: Optional[float] = Field(None, gt=0.0)

    # randomness
    seed: Optional[int] = Field(None, ge=0)
    trials: Optional[int] = Field(None, ge=1)

    # inputs
    edges: Optional[str] = None
    colors: Optional[str] = None
    nu: Optional[str] = None

    # command-specific switches
    model: Literal["gnm", "multigraph", "planted"] = "gnm"
    mode: Optional[Literal["count", "enumerate", "check", "ensemble"]] = None
    include_colorings: bool = False
    event: Literal["triangle-free"] = "triangle-free"
    ks: Optional[list[int]] = None
    max_mu: int = Field(6, ge=1)
    max_nu: int = Field(4, ge=0)
    lambdas: list[float] = Field(default_factory=lambda: [0.5, 1.0, 5.0])
    budget: Optional[int] = Field(None, ge=1)

    # output
    format: Literal["json", "csv"] = "json"
    output: Optional[str] = None

    @model_validator(mode="after")
    def _m_xor_d(self) -> "ExperimentConfig":
        if self.m is not None and self.d is not None:
            raise ValueError("give m or d, not both")
        return self

    def report_dict(self) -> dict:
        """The config echo embedded in every report: explicitly set,
        non-default fields only, so reruns are byte-identical."""
        return self.model_dump(exclude_none=True, exclude_defaults=True, exclude={"output"})


class HealthResponse(BaseModel):
    status: Literal["ok"] = "ok"
    version: str
    schema_version: str
