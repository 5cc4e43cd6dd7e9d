"""Pydantic request/response models shared by the HTTP service and the CLI."""
from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field


class ContextModel(BaseModel):
    n: int = Field(ge=2)
    k: int = Field(ge=1)


class SphereModel(BaseModel):
    type: Literal["sphere"] = "sphere"
    center: list[float]
    radius: float


class HyperplaneModel(BaseModel):
    type: Literal["hyperplane"] = "hyperplane"
    normal: list[float]
    offset: float


ObjectModel = Annotated[Union[SphereModel, HyperplaneModel], Field(discriminator="type")]


class EncodeRequest(BaseModel):
    context: ContextModel
    objects: list[ObjectModel] = Field(min_length=1)
    tol: Optional[float] = None


class EncodeResponse(BaseModel):
    basis: list[list[float]]
    gram: list[list[float]]
    gram_residual: float


class InvariantModel(BaseModel):
    perp_eigs: list[float]
    tangential_rank: int
    tangential_degenerate: bool


class WitnessModel(BaseModel):
    matrix: list[list[float]]
    lorentz_residual: float
    block_residual: float
    subspace_distance: float


class CongruentRequest(BaseModel):
    context: ContextModel
    a: list[ObjectModel] = Field(min_length=1)
    b: list[ObjectModel] = Field(min_length=1)
    tol: Optional[float] = None
    witness: bool = False


class CongruentResponse(BaseModel):
    congruent: bool
    invariant_a: InvariantModel
    invariant_b: InvariantModel
    witness: Optional[WitnessModel] = None


class TopologyModel(BaseModel):
    kind: str
    m: int
    d: int
    label: str


class OrbitModel(BaseModel):
    acting_block: str
    cohomogeneity: int
    orbit_dim_w1: Optional[int] = None
    orbit_dim_w2: Optional[int] = None


class ClassifyRequest(BaseModel):
    context: ContextModel
    objects: list[ObjectModel] = Field(min_length=1)
    tol: Optional[float] = None


class ClassifyResponse(BaseModel):
    substantial: bool
    codim: int
    invariant: InvariantModel
    topology: TopologyModel
    orbit: Optional[OrbitModel] = None
    canonical: Optional[list[ObjectModel]] = None


class ProfileRequest(BaseModel):
    context: ContextModel
    objects: list[ObjectModel] = Field(min_length=1)
    samples: int = Field(default=64, ge=2)
    tol: Optional[float] = None


class ProfileRow(BaseModel):
    theta: float
    x: list[float]
    theta_x: list[float]
    slice_angle: float
    membership_residual: float


class ProfileResponse(BaseModel):
    case: str
    theta_min: float
    theta_max: float
    rows: list[ProfileRow]


class SelftestRequest(BaseModel):
    seed: int = 0
    perturb: float = 0.0


class SuiteReport(BaseModel):
    name: str
    trials: int
    failures: int
    max_residual: float
    threshold: float
    passed: bool


class SelftestResponse(BaseModel):
    seed: int
    perturb: float
    suites: list[SuiteReport]
    passed: bool


class ErrorResponse(BaseModel):
    error: str
    kind: str
