"""Pydantic request/response models for the therapy service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class DiagnosticModel(BaseModel):
    severity: str
    line: int
    col: int
    message: str
    code: str


class ErrorBody(BaseModel):
    code: str
    message: str
    diagnostics: Optional[list[DiagnosticModel]] = None
    current_revision: Optional[int] = None


class UniverseModel(BaseModel):
    lo: float
    hi: float


class TermModel(BaseModel):
    name: str
    kind: str
    params: list[Any]
    vertices: list[list[float]]


class VariableModel(BaseModel):
    name: str
    role: str
    universe: UniverseModel
    terms: list[TermModel]


class ClauseModel(BaseModel):
    variable: str
    term: str


class FuzzifiedModel(BaseModel):
    variable: str
    crisp: float
    degrees: dict[str, float]


class FiringModel(BaseModel):
    rule_id: Optional[str]
    clause_degrees: list[tuple[str, str, float]]
    alpha: float
    consequent: ClauseModel


class AggregateModel(BaseModel):
    variable: VariableModel
    term_alphas: dict[str, float]


class RecommendationModel(BaseModel):
    low_count: int
    high_count: int
    preferred: int
    note: str


class ResultModel(BaseModel):
    inputs: dict[str, float]
    fuzzified: list[FuzzifiedModel]
    firings: list[FiringModel]
    aggregate: AggregateModel
    crisp_output: float
    recommendation: RecommendationModel
    kb_revision: int


class ConsultRequest(BaseModel):
    inputs: dict[str, float]
    child_id: Optional[str] = None
    resolution: Optional[int] = Field(default=None, ge=2)


class StoredConsultationModel(BaseModel):
    id: str
    child_id: Optional[str]
    created_at: str
    result: ResultModel


class KbGetResponse(BaseModel):
    document: str
    revision: int
    variables: list[VariableModel]


class KbPutRequest(BaseModel):
    document: str
    expected_revision: int


class KbPutResponse(BaseModel):
    revision: int
    warnings: list[DiagnosticModel] = []


class OverrideCreate(BaseModel):
    consultation_id: str
    therapist_value: float
    note: str = ""


class OverrideModel(BaseModel):
    id: str
    consultation_id: Optional[str]
    therapist_value: float
    note: str
    created_at: str
    kb_revision: int


class ChildCreate(BaseModel):
    display_label: str = Field(min_length=1)
    age_years: float = Field(ge=3, le=8)


class ChildModel(BaseModel):
    id: str
    display_label: str
    age_years: float
    created_at: str


class HealthResponse(BaseModel):
    status: str = "ok"
    revision: int
