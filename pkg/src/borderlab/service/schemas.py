"""Pydantic request/response models for the HTTP surface.

Numbers are rational strings ("p/q" or integer literals); plain JSON integers
are accepted on ingestion.  The heavier domain validation lives in the codec,
so these models only pin the shapes.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field

RationalStr = Union[str, int]


class GraphModel(BaseModel):
    vertices: int
    directed: bool = False
    edges: list[tuple[int, int]] = Field(default_factory=list)


class EnvironmentModel(BaseModel):
    players: int
    supports: list[list[RationalStr]]
    priors: list[list[RationalStr]]
    family: dict[str, Any]


class FeasibleRequest(BaseModel):
    environment: EnvironmentModel
    y: list[list[RationalStr]]
    method: Literal["lp", "border"] = "lp"
    cap: Optional[int] = None


class OptRevRequest(BaseModel):
    environment: EnvironmentModel
    method: Literal["lp", "myerson"] = "lp"
    cap: Optional[int] = None


class OptWelRequest(BaseModel):
    environment: EnvironmentModel
    cap: Optional[int] = None


class WeightsRequest(BaseModel):
    weights: list[RationalStr]
    cap: Optional[int] = None


class ChowComputeRequest(BaseModel):
    function: list[RationalStr]
    cap: Optional[int] = None


class ChowOptRequest(BaseModel):
    a0: RationalStr = "0"
    weights: list[RationalStr]
    cap: Optional[int] = None


class ChowVectorRequest(BaseModel):
    vector: list[RationalStr]
    cap: Optional[int] = None


class ConditionalsRequest(BaseModel):
    conditionals: list[RationalStr]
    cap: Optional[int] = None


class MajorityRequest(BaseModel):
    n: int
    cap: Optional[int] = None


class PartitionRequest(BaseModel):
    weights: list[int]
    cap: Optional[int] = None


class StConnRequest(BaseModel):
    graph: GraphModel
    s: int
    t: int
    k: Optional[int] = None
    cap: Optional[int] = None


class MatroidRequest(BaseModel):
    graph: GraphModel
    s: int
    t: int
    cap: Optional[int] = None


class ResultEnvelope(BaseModel):
    results: dict[str, Any]
    caps: dict[str, Any]


class ErrorEnvelope(BaseModel):
    error: dict[str, Any]
