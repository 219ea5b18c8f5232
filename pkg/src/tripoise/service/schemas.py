"""Request/response models for the HTTP service.

Coordinates travel as rational strings ("p/q" or integers) so the wire
format stays exact end to end.
"""
from __future__ import annotations

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

RationalPair = Tuple[str, str]


class ProblemPayload(BaseModel):
    vertices: List[RationalPair]
    nodes: List[RationalPair] = Field(default_factory=list)
    boundary: Literal["none", "left", "right", "both"] = "none"


class CheckRequest(ProblemPayload):
    trace: bool = False
    witness: bool = False
    nc_filter: bool = True


class CheckResponse(BaseModel):
    poised: bool
    reason: str
    fallback_steps: int
    witness: Optional[List[str]] = None
    trace: Optional[List[str]] = None


class OracleResponse(BaseModel):
    node_count: int
    dimension: int
    square: bool
    determinant: Optional[str] = None
    poised: bool


class FuzzRequest(BaseModel):
    count: int = Field(default=100, ge=1)
    max_n: int = Field(default=6, ge=1)
    seed: int = 0
    nc_filter: bool = True


class FuzzResponse(BaseModel):
    total: int
    agreements: int
    disagreements: int
    fallback_steps: int
    counterexample: Optional[str] = None


class InterpRequest(ProblemPayload):
    data: List[str]
    eval_points: List[RationalPair] = Field(default_factory=list)


class InterpResponse(BaseModel):
    vertex_values: List[str]
    evaluations: List[str]


class GenRequest(BaseModel):
    pattern: str
    n: int = Field(ge=1)
    m: Optional[int] = None
    seed: int = 0


class GenResponse(BaseModel):
    problem: ProblemPayload
    text: str
