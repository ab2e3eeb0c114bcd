"""HTTP API over a journal-backed repository.

One process owns the journal; every route works off the immutable state
snapshot current at call time. Errors use a uniform JSON envelope
``{"error": <code>, "message": <text>}`` with the HTTP status carrying
the class of failure: 400 unusable input, 404 unknown resource, 409
conflicting state, 415 unsupported payload type.
"""

from __future__ import annotations

import json
import os
from contextlib import asynccontextmanager
from dataclasses import dataclass, field, replace
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from patchrepo import repository as repo_ops
from patchrepo.feedback import (
    FeedbackVote,
    InconsistentVote,
    QuestionContext,
    VoteKind,
    feedback_sentence,
    patch_from_feedback,
)
from patchrepo.journal import Repository
from patchrepo.model import Patch, PatchGroup, PatchStatus, parse_patch_type
from patchrepo.patchdoc import (
    PatchDocumentError,
    patch_from_json,
    patch_from_turtle,
    patch_to_json,
    patch_to_turtle,
    patches_to_turtle,
    term_from_json,
)
from patchrepo.rdf.errors import TurtleParseError
from patchrepo.repository import (
    Ordering,
    PatchFilter,
    RepositoryError,
    VotePosition,
)
from patchrepo.sparql import SparqlDialect, export_updates, to_sparql

TURTLE = "text/turtle"
SPARQL_UPDATE = "application/sparql-update"

_ERROR_STATUS = {
    "UnknownPatch": 404,
    "UnknownGroup": 404,
    "ConflictingPosition": 409,
    "TerminalPatch": 409,
    "IllegalTransition": 409,
    "GroupExists": 409,
    "InvalidSubmission": 400,
}


@dataclass(frozen=True)
class ApiConfig:
    """Service settings; ``datasets`` maps dataset IRIs to display labels."""

    repo_base: str = "http://localhost:8000/repo"
    journal_path: str | os.PathLike = "patchrepo.ndjson"
    service_agent: str | None = None
    datasets: dict[str, str] = field(default_factory=dict)
    cors_origins: tuple[str, ...] = ("*",)


def config_from_env(environ=os.environ) -> ApiConfig:
    datasets: dict[str, str] = {}
    raw = environ.get("PATCHREPO_DATASETS")
    if raw:
        datasets = json.loads(raw)
    cors = tuple(
        origin.strip()
        for origin in environ.get("PATCHREPO_CORS", "*").split(",")
        if origin.strip()
    )
    return ApiConfig(
        repo_base=environ.get("PATCHREPO_BASE", "http://localhost:8000/repo"),
        journal_path=environ.get("PATCHREPO_JOURNAL", "patchrepo.ndjson"),
        service_agent=environ.get("PATCHREPO_AGENT"),
        datasets=datasets,
        cors_origins=cors or ("*",),
    )


class BadRequest(Exception):
    def __init__(self, message: str, code: str = "BadRequest"):
        self.code = code
        super().__init__(message)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message})


def _require(data: dict, key: str) -> object:
    if not isinstance(data, dict) or key not in data:
        raise BadRequest(f"missing field {key!r}", "MissingField")
    return data[key]


def _require_str(data: dict, key: str) -> str:
    value = _require(data, key)
    if not isinstance(value, str):
        raise BadRequest(f"field {key!r} must be a string", "InvalidField")
    return value


async def _json_body(request: Request) -> dict:
    try:
        data = json.loads(await request.body())
    except json.JSONDecodeError as exc:
        raise BadRequest(f"request body is not JSON: {exc}", "InvalidJson") from None
    if not isinstance(data, dict):
        raise BadRequest("request body must be a JSON object", "InvalidJson")
    return data


def _patch_response(patch: Patch, created: bool) -> JSONResponse:
    return JSONResponse(
        status_code=201 if created else 200,
        content=patch_to_json(patch),
        headers={"Location": patch.id or ""},
    )


def _parse_status(params) -> PatchStatus | None:
    raw = params.get("status")
    if not raw:
        return None
    try:
        return PatchStatus(raw)
    except ValueError:
        raise BadRequest(f"unknown status {raw!r}", "InvalidStatus") from None


def _parse_filter(params) -> PatchFilter:
    status = _parse_status(params)
    types = []
    for name in params.getlist("type"):
        try:
            types.append(parse_patch_type(name))
        except ValueError as exc:
            raise BadRequest(str(exc), "InvalidPatchType") from None
    return PatchFilter(
        dataset=params.get("dataset"),
        status=status,
        types=frozenset(types),
        subject=params.get("subject"),
        min_advocates=_parse_int(params, "minAdvocates", None),
        agent=params.get("agent"),
        group=params.get("group"),
    )


def _parse_order(params) -> Ordering:
    name = params.get("order", "recent")
    try:
        return {"popular": Ordering.MOST_POPULAR, "recent": Ordering.MOST_RECENT}[name]
    except KeyError:
        raise BadRequest(f"unknown order {name!r}, use popular or recent", "InvalidOrder") from None


def _parse_int(params, key: str, default: int | None) -> int | None:
    raw = params.get(key)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise BadRequest(f"{key} must be an integer", "InvalidField") from None
    if value < 0:
        raise BadRequest(f"{key} must not be negative", "InvalidField")
    return value


def _parse_dialect(params) -> SparqlDialect:
    name = params.get("dialect", SparqlDialect.SPARQL11.value)
    try:
        return SparqlDialect(name)
    except ValueError:
        raise BadRequest(
            f"unknown dialect {name!r}, use legacy or sparql-1.1", "InvalidDialect"
        ) from None


def create_app(config: ApiConfig | None = None) -> FastAPI:
    cfg = config or config_from_env()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        repo = Repository(cfg.journal_path, cfg.repo_base, cfg.service_agent)
        app.state.repository = repo
        try:
            yield
        finally:
            repo.close()

    app = FastAPI(title="patchrepo", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cfg.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(BadRequest)
    async def _bad_request(request, exc: BadRequest):
        return _error(400, exc.code, str(exc))

    @app.exception_handler(TurtleParseError)
    async def _turtle_error(request, exc: TurtleParseError):
        return _error(400, "TurtleParseError", str(exc))

    @app.exception_handler(PatchDocumentError)
    async def _document_error(request, exc: PatchDocumentError):
        return _error(400, exc.code, str(exc))

    @app.exception_handler(InconsistentVote)
    async def _inconsistent_vote(request, exc: InconsistentVote):
        return _error(409, "InconsistentVote", str(exc))

    @app.exception_handler(RepositoryError)
    async def _repository_error(request, exc: RepositoryError):
        return _error(_ERROR_STATUS.get(exc.code, 400), exc.code, str(exc))

    def repo() -> Repository:
        return app.state.repository

    @app.get("/")
    async def service_info():
        state = repo().state
        return {
            "service": "patchrepo",
            "repoBase": cfg.repo_base,
            "patches": len(state.patches),
            "datasets": cfg.datasets,
        }

    # -- submission ------------------------------------------------------------

    def _submitter_from_document(draft: Patch) -> str:
        if len(draft.advocates) != 1:
            raise BadRequest(
                "a patch document must name exactly one advocate, its submitter",
                "AmbiguousSubmitter",
            )
        (submitter,) = draft.advocates
        return submitter

    @app.post("/patches")
    async def submit(request: Request):
        content_type = request.headers.get("content-type", "").split(";")[0].strip().lower()
        if content_type == TURTLE:
            text = (await request.body()).decode("utf-8", errors="replace")
            draft = patch_from_turtle(text)
            submitter = _submitter_from_document(draft)
        elif content_type == "application/json":
            data = await _json_body(request)
            submitter = _require_str(data, "submitter")
            draft = patch_from_json(_require(data, "patch"))
        else:
            return _error(
                415,
                "UnsupportedMediaType",
                f"submit {TURTLE} or application/json, not {content_type or 'nothing'}",
            )
        patch, created = repo().submit_detailed(replace(draft, id=None), submitter)
        return _patch_response(patch, created)

    @app.post("/feedback")
    async def submit_feedback(request: Request):
        data = await _json_body(request)
        raw_context = _require(data, "context")
        if not isinstance(raw_context, dict):
            raise BadRequest("context must be an object", "InvalidField")
        try:
            context = QuestionContext(
                dataset=_require_str(raw_context, "dataset"),
                graph=_require_str(raw_context, "graph"),
                subject=_require_str(raw_context, "subject"),
                property=_require_str(raw_context, "property"),
            )
        except ValueError as exc:
            raise BadRequest(str(exc), "InvalidContext") from None
        raw_vote = _require(data, "vote")
        if not isinstance(raw_vote, dict):
            raise BadRequest("vote must be an object", "InvalidField")
        try:
            kind = VoteKind(_require_str(raw_vote, "kind"))
        except ValueError:
            raise BadRequest(
                f"unknown vote kind {raw_vote.get('kind')!r}", "InvalidVoteKind"
            ) from None
        try:
            vote = FeedbackVote(kind=kind, object=term_from_json(_require(raw_vote, "object")))
        except ValueError as exc:
            raise BadRequest(str(exc), "InvalidVote") from None
        submitter = _require_str(data, "submitter")
        comment = data.get("comment")
        if comment is not None and not isinstance(comment, str):
            raise BadRequest("comment must be a string", "InvalidField")

        draft = patch_from_feedback(context, vote, comment=comment)
        patch, created = repo().submit_detailed(draft, submitter)
        body = patch_to_json(patch)
        body["sentence"] = feedback_sentence(context, vote)
        return JSONResponse(
            status_code=201 if created else 200,
            content=body,
            headers={"Location": patch.id or ""},
        )

    # -- reading ----------------------------------------------------------------

    @app.get("/patches")
    async def list_patches(request: Request):
        params = request.query_params
        criteria = _parse_filter(params)
        order = _parse_order(params)
        offset = _parse_int(params, "offset", 0) or 0
        limit = _parse_int(params, "limit", None)
        state = repo().state
        matched = repo_ops.query_patches(state, criteria, order)
        page = matched[offset:]
        if limit is not None:
            page = page[:limit]
        return {
            "total": len(matched),
            "offset": offset,
            "patches": [patch_to_json(p) for p in page],
        }

    @app.get("/patches/{ref:path}/sparql")
    async def patch_sparql(ref: str, request: Request):
        state = repo().state
        patch = state.patches[repo_ops.resolve_ref(state, ref)]
        dialect = _parse_dialect(request.query_params)
        header = request.query_params.get("header", "true") != "false"
        text = to_sparql(patch.update, dialect, header=header)
        return Response(content=text, media_type=SPARQL_UPDATE)

    @app.get("/patches/{ref:path}")
    async def get_patch(ref: str, request: Request):
        state = repo().state
        patch = state.patches[repo_ops.resolve_ref(state, ref)]
        accept = request.headers.get("accept", "")
        if TURTLE in accept:
            return Response(content=patch_to_turtle(patch), media_type=TURTLE)
        return patch_to_json(patch)

    @app.post("/patches/{ref:path}/votes")
    async def vote(ref: str, request: Request):
        data = await _json_body(request)
        agent = _require_str(data, "agent")
        raw_position = _require_str(data, "position")
        try:
            position = VotePosition(raw_position)
        except ValueError:
            raise BadRequest(
                f"position must be advocate, criticise, or withdrawn, not {raw_position!r}",
                "InvalidPosition",
            ) from None
        patch = repo().vote(ref, agent, position)
        return patch_to_json(patch)

    @app.post("/patches/{ref:path}/status")
    async def set_status(ref: str, request: Request):
        data = await _json_body(request)
        raw_status = _require_str(data, "status")
        try:
            new_status = PatchStatus(raw_status)
        except ValueError:
            raise BadRequest(f"unknown status {raw_status!r}", "InvalidStatus") from None
        actor = data.get("actor")
        if actor is not None and not isinstance(actor, str):
            raise BadRequest("actor must be a string", "InvalidField")
        patch = repo().set_status(ref, new_status, actor=actor)
        return patch_to_json(patch)

    @app.post("/patches/{ref:path}/groups")
    async def add_to_group(ref: str, request: Request):
        data = await _json_body(request)
        patch = repo().assign_group(ref, _require_str(data, "group"))
        return patch_to_json(patch)

    # -- groups -------------------------------------------------------------------

    @app.post("/groups")
    async def create_group(request: Request):
        data = await _json_body(request)
        label = data.get("label")
        comment = data.get("comment")
        for value in (label, comment):
            if value is not None and not isinstance(value, str):
                raise BadRequest("label and comment must be strings", "InvalidField")
        try:
            group = PatchGroup(id=_require_str(data, "id"), label=label, comment=comment)
        except ValueError as exc:
            raise BadRequest(str(exc), "InvalidGroup") from None
        created = repo().create_group(group)
        return JSONResponse(
            status_code=201,
            content={"id": created.id, "label": created.label, "comment": created.comment},
            headers={"Location": created.id},
        )

    @app.get("/groups")
    async def list_groups():
        state = repo().state
        return {
            "groups": [
                {"id": g.id, "label": g.label, "comment": g.comment}
                for g in sorted(state.groups.values(), key=lambda g: g.id)
            ]
        }

    # -- reports and exports --------------------------------------------------------

    @app.get("/reports/popular")
    async def report_popular(request: Request):
        params = request.query_params
        patches = repo_ops.popular_report(
            repo().state,
            dataset=params.get("dataset"),
            limit=_parse_int(params, "limit", 10) or 10,
            offset=_parse_int(params, "offset", 0) or 0,
        )
        return {"patches": [patch_to_json(p) for p in patches]}

    @app.get("/reports/recent")
    async def report_recent(request: Request):
        params = request.query_params
        patches = repo_ops.recent_report(
            repo().state,
            dataset=params.get("dataset"),
            limit=_parse_int(params, "limit", 10) or 10,
            offset=_parse_int(params, "offset", 0) or 0,
        )
        return {"patches": [patch_to_json(p) for p in patches]}

    @app.get("/entities")
    async def list_entities(request: Request):
        subject = request.query_params.get("subject")
        state = repo().state
        if subject is not None:
            patches = repo_ops.entity_report(state, subject)
            return {"subject": subject, "patches": [patch_to_json(p) for p in patches]}
        counts = repo_ops.entities(state, request.query_params.get("dataset"))
        return {"entities": [{"subject": iri, "patches": n} for iri, n in counts]}

    @app.get("/datasets")
    async def list_datasets():
        state = repo().state
        counts: dict[str, int] = {}
        for patch in state.patches.values():
            counts[patch.dataset] = counts.get(patch.dataset, 0) + 1
        known = dict(cfg.datasets)
        for iri in counts:
            known.setdefault(iri, iri)
        return {
            "datasets": [
                {"iri": iri, "label": label, "patches": counts.get(iri, 0)}
                for iri, label in sorted(known.items())
            ]
        }

    @app.get("/datasets/{iri:path}/updates")
    async def dataset_updates(iri: str, request: Request):
        params = request.query_params
        state = repo().state
        dialect = _parse_dialect(params)
        header = params.get("header", "true") != "false"
        criteria = PatchFilter(
            dataset=iri,
            status=_parse_status(params),
            min_advocates=_parse_int(params, "minAdvocates", None),
        )
        feed = repo_ops.update_feed(state, criteria, _parse_order(params))
        text = export_updates([p.update for p in feed], dialect, header=header)
        return Response(content=text, media_type=SPARQL_UPDATE)

    @app.get("/snapshot.ttl")
    async def snapshot():
        state = repo().state
        ordered = sorted(state.patches.values(), key=lambda p: repo_ops.patch_sequence(p.id or ""))
        return Response(content=patches_to_turtle(ordered), media_type=TURTLE)

    return app
