"""HTTP surface: consultation, knowledge-base management, overrides, children.

Error responses share one body schema: ``{code, message, diagnostics?,
current_revision?}``. Codes: ``invalid-request`` (malformed body),
``invalid-input`` (bad consultation inputs), ``no-rule-fired`` (the rule base
does not cover the inputs), ``invalid-document`` (parse/validation failure),
``stale-revision`` (edit lost the optimistic-concurrency race, body carries
the current revision), ``invalid-override`` and ``not-found``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..document import render_kb
from ..engine import infer
from ..errors import (
    ConsultationError,
    KbDocumentError,
    NoRuleFiredError,
    OutOfUniverseError,
    RevisionConflictError,
)
from ..serde import result_from_dict, result_to_dict, variable_to_dict
from ..store import Edit, KnowledgeBaseStore
from .schemas import (
    ChildCreate,
    ChildModel,
    ConsultRequest,
    DiagnosticModel,
    ErrorBody,
    HealthResponse,
    KbGetResponse,
    KbPutRequest,
    KbPutResponse,
    OverrideCreate,
    OverrideModel,
    StoredConsultationModel,
)
from .storage import CaseStore


class NotFoundError(Exception):
    def __init__(self, what: str):
        super().__init__(what)


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    body = ErrorBody(code=code, message=message, **extra)
    return JSONResponse(status_code=status, content=body.model_dump(exclude_none=True))


def create_app(
    kb_store: KnowledgeBaseStore,
    case_store: CaseStore,
    default_resolution: int = 1001,
    console_dir: Optional[str | Path] = None,
) -> FastAPI:
    app = FastAPI(title="fuzzyplan therapy service", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.kb_store = kb_store
    app.state.case_store = case_store

    @app.exception_handler(RequestValidationError)
    async def _invalid_request(request: Request, exc: RequestValidationError):
        return _error(422, "invalid-request", str(exc.errors()[:1]))

    @app.exception_handler(KbDocumentError)
    async def _invalid_document(request: Request, exc: KbDocumentError):
        diags = [DiagnosticModel(**d.__dict__) for d in exc.diagnostics]
        return _error(422, "invalid-document", str(exc), diagnostics=diags)

    @app.exception_handler(RevisionConflictError)
    async def _stale_revision(request: Request, exc: RevisionConflictError):
        return _error(409, "stale-revision", str(exc), current_revision=exc.current)

    @app.exception_handler(NoRuleFiredError)
    async def _no_rule_fired(request: Request, exc: NoRuleFiredError):
        return _error(422, "no-rule-fired", str(exc))

    @app.exception_handler(ConsultationError)
    async def _bad_consultation(request: Request, exc: ConsultationError):
        return _error(422, "invalid-input", str(exc))

    @app.exception_handler(OutOfUniverseError)
    async def _out_of_universe(request: Request, exc: OutOfUniverseError):
        return _error(422, "invalid-input", str(exc))

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError):
        return _error(404, "not-found", str(exc))

    @app.get("/healthz", response_model=HealthResponse)
    def health():
        return HealthResponse(revision=kb_store.current.revision)

    @app.post("/consult", response_model=StoredConsultationModel)
    def consult(request: ConsultRequest):
        if request.child_id is not None and case_store.get_child(request.child_id) is None:
            raise NotFoundError(f"no child with id '{request.child_id}'")
        kb = kb_store.current  # one snapshot per consultation
        result = infer(kb, request.inputs, request.resolution or default_resolution)
        return case_store.add_consultation(result_to_dict(result), request.child_id)

    @app.get("/kb", response_model=KbGetResponse)
    def kb_get():
        kb = kb_store.current
        return KbGetResponse(
            document=render_kb(kb),
            revision=kb.revision,
            variables=[variable_to_dict(v) for v in kb.variables],
        )

    @app.put("/kb", response_model=KbPutResponse)
    def kb_put(request: KbPutRequest):
        edit = Edit(
            kind="replace_document",
            payload=request.document,
            expected_revision=request.expected_revision,
        )
        new_kb, warnings = kb_store.apply(edit)
        return KbPutResponse(
            revision=new_kb.revision,
            warnings=[DiagnosticModel(**d.__dict__) for d in warnings],
        )

    @app.post("/overrides", response_model=OverrideModel, status_code=201)
    def override_post(request: OverrideCreate):
        stored = case_store.get_consultation(request.consultation_id)
        if stored is None:
            raise NotFoundError(f"no consultation with id '{request.consultation_id}'")
        result = result_from_dict(stored["result"])
        try:
            record = kb_store.record_override(
                result,
                request.therapist_value,
                request.note,
                consultation_id=request.consultation_id,
            )
        except ValueError as exc:
            return _error(422, "invalid-override", str(exc))
        return _override_model(record)

    @app.get("/overrides", response_model=list[OverrideModel])
    def override_list():
        return [_override_model(r) for r in kb_store.list_overrides()]

    @app.post("/children", response_model=ChildModel, status_code=201)
    def child_create(request: ChildCreate):
        return case_store.create_child(request.display_label, request.age_years)

    @app.get("/children", response_model=list[ChildModel])
    def children_list():
        return case_store.list_children()

    @app.get("/children/{child_id}/consultations", response_model=list[StoredConsultationModel])
    def child_consultations(child_id: str):
        if case_store.get_child(child_id) is None:
            raise NotFoundError(f"no child with id '{child_id}'")
        return case_store.list_consultations(child_id)

    if console_dir is not None and Path(console_dir).is_dir():
        app.mount("/", StaticFiles(directory=console_dir, html=True), name="console")

    return app


def _override_model(record) -> OverrideModel:
    return OverrideModel(
        id=record.id,
        consultation_id=record.consultation_id,
        therapist_value=record.therapist_value,
        note=record.note,
        created_at=record.created_at,
        kb_revision=record.kb_revision_at_override,
    )
