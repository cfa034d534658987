"""HTTP+JSON service over one lexicon store.

Every endpoint is a thin delegate of a core operation; wire payloads use the
interchange-format field names so the system has a single schema. Errors
always carry a machine code:

    {"error": {"code": "UNKNOWN_CLASS", "message": "...", "field": "..."}}

Endpoints (see README for the full table): /entries CRUD, /paradigm/preview,
/paradigm/classes, /links, /entries/{id}/links + /order, /translate,
/analyze, /search, /domains, /merge, /export, /import, /stats.
"""
from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import interchange, lookup
from .interchange import InterchangeError
from .merge import MergePolicy, merge_states
from .model import DIRECTIONS, validate_entry
from .morphology import GenerationError, UnknownClassError, generate_paradigm
from .store import (
    DirectionError,
    DuplicateDomainError,
    DuplicateLinkError,
    IntegrityError,
    LanguageMismatchError,
    LexiconStore,
    LinksExistError,
    NotFoundError,
    PermutationError,
    StoreError,
    StoreNotEmptyError,
    ValidationFailedError,
    build_indexes,
    build_link_tables,
    check_referential_integrity,
    StoreState,
    _derive_counters,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, field: str | None = None,
                 details: list | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.field = field
        self.details = details


def _error_response(err: ApiError) -> JSONResponse:
    body: dict = {"error": {"code": err.code, "message": err.message}}
    if err.field:
        body["error"]["field"] = err.field
    if err.details:
        body["error"]["details"] = err.details
    return JSONResponse(status_code=err.status, content=body)


def _to_api_error(exc: Exception) -> ApiError:
    if isinstance(exc, ApiError):
        return exc
    if isinstance(exc, NotFoundError):
        return ApiError(404, f"{exc.kind.upper()}_NOT_FOUND", str(exc))
    if isinstance(exc, ValidationFailedError):
        violations = [
            {"code": v.code, "message": v.message, "field": v.field}
            for v in exc.verdict.violations
        ]
        code = violations[0]["code"] if len(violations) == 1 else "VALIDATION"
        field = violations[0]["field"] if len(violations) == 1 else None
        return ApiError(422, code, str(exc), field=field, details=violations)
    if isinstance(exc, DuplicateLinkError):
        return ApiError(409, "DUPLICATE_LINK", str(exc))
    if isinstance(exc, DuplicateDomainError):
        return ApiError(409, "DUPLICATE_DOMAIN", str(exc))
    if isinstance(exc, LinksExistError):
        return ApiError(409, "LINKS_EXIST", str(exc))
    if isinstance(exc, StoreNotEmptyError):
        return ApiError(409, "STORE_NOT_EMPTY", str(exc))
    if isinstance(exc, PermutationError):
        return ApiError(422, "BAD_PERMUTATION", str(exc))
    if isinstance(exc, DirectionError):
        return ApiError(422, "BAD_DIRECTION", str(exc))
    if isinstance(exc, LanguageMismatchError):
        return ApiError(422, "LANGUAGE_MISMATCH", str(exc))
    if isinstance(exc, UnknownClassError):
        return ApiError(422, "UNKNOWN_CLASS", str(exc))
    if isinstance(exc, GenerationError):
        return ApiError(422, "GENERATION_FAILS", str(exc))
    if isinstance(exc, InterchangeError):
        return ApiError(422, "BAD_INTERCHANGE", str(exc))
    if isinstance(exc, IntegrityError):
        return ApiError(422, "INTEGRITY", str(exc))
    if isinstance(exc, StoreError):
        return ApiError(500, "STORE_ERROR", str(exc))
    return ApiError(500, "INTERNAL", f"{type(exc).__name__}: {exc}")


def _form_payload(form) -> dict:
    return {
        "features": interchange.bundle_to_payload(form.features),
        "surface": form.surface,
        "origin": form.origin,
    }


def _candidate_payload(c: lookup.TranslationCandidate) -> dict:
    payload = {
        "target_entry": c.target_entry,
        "target_lemma": c.target_lemma,
        "rank": c.rank,
        "domain": c.domain,
        "via_link": c.via_link,
        "matched_as": c.matched_as,
    }
    if c.matched_features is not None:
        payload["matched_features"] = interchange.bundle_to_payload(c.matched_features)
    return payload


async def _json_body(request: Request) -> dict:
    try:
        data = json.loads(await request.body() or b"{}")
    except json.JSONDecodeError as e:
        raise ApiError(400, "BAD_JSON", f"request body is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ApiError(400, "BAD_JSON", "request body must be a JSON object")
    return data


def _check_direction(direction: str) -> str:
    if direction not in DIRECTIONS:
        raise ApiError(422, "BAD_DIRECTION", f"dir must be one of {DIRECTIONS}", field="dir")
    return direction


def create_app(store: LexiconStore) -> FastAPI:
    app = FastAPI(title="lexibase", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(Exception)
    async def handle_any(request: Request, exc: Exception):
        return _error_response(_to_api_error(exc))

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return _error_response(exc)

    # ------------------------------------------------------------- entries
    @app.get("/entries")
    def list_entries(lang: str | None = None, pos: str | None = None,
                     limit: int = Query(50, ge=0, le=1000), offset: int = Query(0, ge=0)):
        state = store.snapshot()
        entries = sorted(state.entries.values(), key=lambda e: interchange.id_sort_key(e.id))
        if lang:
            entries = [e for e in entries if e.language == lang]
        if pos:
            entries = [e for e in entries if e.pos == pos]
        total = len(entries)
        window = entries[offset: offset + limit]
        return {"items": [interchange.entry_to_payload(e) for e in window],
                "total": total, "limit": limit, "offset": offset}

    @app.post("/entries", status_code=201)
    async def create_entry(request: Request):
        data = await _json_body(request)
        entry = interchange.entry_from_payload(data, entry_id="")
        entry_id = store.upsert_entry(entry)
        return interchange.entry_to_payload(store.get_entry(entry_id))

    @app.get("/entries/{entry_id}")
    def get_entry(entry_id: str):
        entry = store.get_entry(entry_id)
        if entry is None:
            raise NotFoundError("entry", entry_id)
        return interchange.entry_to_payload(entry)

    @app.put("/entries/{entry_id}")
    async def update_entry(entry_id: str, request: Request):
        data = await _json_body(request)
        body_id = data.get("id")
        if body_id not in (None, entry_id):
            raise ApiError(422, "ID_MISMATCH", "body id differs from path id", field="id")
        entry = interchange.entry_from_payload(data, entry_id=entry_id)
        store.upsert_entry(entry)
        return interchange.entry_to_payload(store.get_entry(entry_id))

    @app.delete("/entries/{entry_id}")
    def delete_entry(entry_id: str, cascade: bool = False):
        report = store.delete_entry(entry_id, cascade=cascade)
        return {"deleted": report.entry_id,
                "removed_links": list(report.removed_link_ids)}

    # ------------------------------------------------------------ paradigm
    @app.post("/paradigm/preview")
    async def preview_paradigm(request: Request):
        data = await _json_body(request)
        entry = interchange.entry_from_payload(data, entry_id=data.get("id", "draft"))
        verdict = validate_entry(entry, store.registry)
        if not verdict.ok:
            raise ValidationFailedError(verdict)
        forms = generate_paradigm(entry, store.registry)
        return {"forms": [_form_payload(f) for f in forms], "count": len(forms)}

    @app.get("/paradigm/classes")
    def paradigm_classes(lang: str | None = None, pos: str | None = None):
        specs = store.registry.specs()
        items = [
            {"language": s.language, "pos": s.pos,
             "inflection_class": s.inflection_class, "slots": len(s.slots)}
            for s in specs
            if (lang is None or s.language == lang) and (pos is None or s.pos == pos)
        ]
        items.sort(key=lambda d: (d["language"], d["pos"], d["inflection_class"]))
        return {"items": items}

    # --------------------------------------------------------------- links
    @app.post("/links", status_code=201)
    async def create_link(request: Request):
        data = await _json_body(request)
        for name in ("en_entry", "lt_entry"):
            if name not in data:
                raise ApiError(422, "MISSING_FIELD", f"{name} is required", field=name)
        link = store.add_link(
            str(data["en_entry"]), str(data["lt_entry"]),
            domain=data.get("domain"), note=data.get("note"),
        )
        return interchange.link_to_payload(link)

    @app.delete("/links/{link_id}", status_code=204)
    def delete_link(link_id: str):
        store.delete_link(link_id)
        return Response(status_code=204)

    @app.get("/entries/{entry_id}/links")
    def entry_links(entry_id: str, dir: str):
        _check_direction(dir)
        state = store.snapshot()
        if state.entry(entry_id) is None:
            raise NotFoundError("entry", entry_id)
        links = state.links_for_direction(entry_id, dir)
        items = []
        for link in links:
            target = state.entry(link.target_id(dir))
            payload = interchange.link_to_payload(link)
            payload["target_lemma"] = target.lemma if target else None
            payload["rank"] = link.rank(dir)
            items.append(payload)
        return {"items": items, "direction": dir}

    @app.put("/entries/{entry_id}/links/order")
    async def reorder_entry_links(entry_id: str, request: Request, dir: str):
        _check_direction(dir)
        data = await _json_body(request)
        order = data.get("order")
        if not isinstance(order, list):
            raise ApiError(422, "BAD_PERMUTATION", "body must carry 'order': [link ids]",
                           field="order")
        links = store.reorder_links(entry_id, dir, [str(x) for x in order])
        return {"links": [interchange.link_to_payload(l) for l in links],
                "direction": dir}

    # ------------------------------------------------------------- queries
    @app.get("/translate")
    def translate_endpoint(q: str, dir: str, domain: str | None = None,
                           limit: int = Query(50, ge=0, le=1000)):
        _check_direction(dir)
        state = store.snapshot()
        candidates = lookup.translate(state, q, dir, domain=domain, limit=limit)
        return {"query": q, "direction": dir, "domain": domain,
                "candidates": [_candidate_payload(c) for c in candidates]}

    @app.get("/analyze")
    def analyze_endpoint(q: str, lang: str):
        state = store.snapshot()
        hits = lookup.analyze(state, q, lang)
        return {"query": q, "language": lang, "hits": [
            {"entry": entry_id,
             "lemma": state.entries[entry_id].lemma,
             "features": interchange.bundle_to_payload(bundle)}
            for entry_id, bundle in hits
        ]}

    @app.get("/search")
    def search_endpoint(prefix: str = "", lang: str = "EN",
                        limit: int = Query(50, ge=0, le=1000)):
        state = store.snapshot()
        return {"lemmas": lookup.prefix_search(state, prefix, lang, limit)}

    # ------------------------------------------------------------- domains
    @app.get("/domains")
    def list_domains():
        state = store.snapshot()
        items = sorted(state.domains.values(), key=lambda d: interchange.id_sort_key(d.id))
        return {"items": [interchange.domain_to_payload(d) for d in items]}

    @app.post("/domains", status_code=201)
    async def create_domain(request: Request):
        data = await _json_body(request)
        name = data.get("name")
        if not name or not isinstance(name, str):
            raise ApiError(422, "MISSING_FIELD", "non-empty 'name' is required", field="name")
        return interchange.domain_to_payload(store.add_domain(name))

    # ------------------------------------------------- merge/import/export
    @app.post("/merge")
    async def merge_endpoint(request: Request):
        data = await _json_body(request)
        mode = data.get("policy", "union")
        try:
            policy = MergePolicy(mode)
        except ValueError as e:
            raise ApiError(422, "BAD_POLICY", str(e), field="policy")

        def load_side(side: str) -> StoreState:
            path_key, text_key = f"{side}_path", f"{side}_text"
            if path_key in data:
                side_store = LexiconStore(data[path_key], registry=store.registry)
                return side_store.snapshot()
            if text_key in data:
                domains, entries, links = interchange.parse_interchange(data[text_key])
                entry_map = {e.id: e for e in entries}
                domain_map = {d.id: d for d in domains}
                link_map = {l.id: l for l in links}
                check_referential_integrity(entry_map, link_map.values(), domain_map)
                lemma_index, form_index = build_indexes(entry_map.values(), store.registry)
                by_en, by_lt = build_link_tables(link_map.values())
                return StoreState(entry_map, link_map, domain_map, lemma_index,
                                  form_index, by_en, by_lt,
                                  _derive_counters(entry_map, link_map, domain_map))
            raise ApiError(422, "MISSING_FIELD",
                           f"merge needs {path_key} or {text_key}", field=path_key)

        left_state = load_side("left")
        right_state = load_side("right")
        merged, report = merge_states(left_state, right_state, policy)

        response: dict = {"report": report.to_payload()}
        out_path = data.get("out_path")
        if out_path:
            out = LexiconStore(out_path, registry=store.registry, create_if_missing=True)
            try:
                out.populate(merged.domains, merged.entries, merged.links)
                response["stats"] = out.snapshot().stats()
                response["out_path"] = str(out_path)
            finally:
                out.close()
        else:
            response["merged_text"] = interchange.export_text(
                merged.domains, merged.entries, merged.links
            )
        return response

    @app.get("/export")
    def export_endpoint():
        return PlainTextResponse(store.export_text(), media_type="text/plain; charset=utf-8")

    @app.post("/import")
    async def import_endpoint(request: Request, mode: str = "fresh", policy: str = "union"):
        text = (await request.body()).decode("utf-8")
        domains, entries, links = interchange.parse_interchange(text)
        if mode == "fresh":
            store.populate(domains, entries, links)
        elif mode == "merge":
            try:
                merge_policy = MergePolicy(policy)
            except ValueError as e:
                raise ApiError(422, "BAD_POLICY", str(e), field="policy")
            entry_map = {e.id: e for e in entries}
            domain_map = {d.id: d for d in domains}
            link_map = {l.id: l for l in links}
            check_referential_integrity(entry_map, link_map.values(), domain_map)
            lemma_index, form_index = build_indexes(entry_map.values(), store.registry)
            by_en, by_lt = build_link_tables(link_map.values())
            incoming = StoreState(entry_map, link_map, domain_map, lemma_index,
                                  form_index, by_en, by_lt,
                                  _derive_counters(entry_map, link_map, domain_map))
            merged, _report = merge_states(store.snapshot(), incoming, merge_policy)
            store.replace_all(merged.domains, merged.entries, merged.links)
        else:
            raise ApiError(422, "BAD_MODE", "mode must be 'fresh' or 'merge'", field="mode")
        return {"imported": {"domains": len(domains), "entries": len(entries),
                             "links": len(links)},
                "stats": store.snapshot().stats()}

    @app.get("/stats")
    def stats_endpoint():
        payload = store.snapshot().stats()
        payload["store_path"] = str(store.path)
        return payload

    return app


def serve(store_path: str | Path, bind: str = "127.0.0.1:8000",
          registry=None, workbench_dir: str | Path | None = None) -> None:
    """Open the store and run the service until interrupted."""
    import uvicorn

    store = LexiconStore(store_path, registry=registry)
    app = create_app(store)
    if workbench_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=str(workbench_dir), html=True),
                  name="workbench")
    host, _, port_str = bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port_str or "8000"),
                log_level="info")
