"""Versioned line-delimited interchange format (export/import boundary).

Layout: first line is the header ``lexibase-interchange v1``; every further
line is ``<kind>\\t<payload>`` where kind is ``domain`` | ``entry`` | ``link``
and payload is compact JSON with a fixed, documented key order (see
docs/FORMATS.md). JSON string escaping covers embedded tabs/newlines, so the
single literal tab after the kind is unambiguous. Export is byte-deterministic
for a given store state: records sorted by kind (domains, entries, links),
then id; empty/unset fields are omitted under a fixed rule.

The same payload dictionaries travel over the HTTP API, so there is exactly
one schema for an entry in the whole system.
"""
from __future__ import annotations

import json
import re
from typing import Any, Iterable

from .features import FeatureBundle, FeatureError
from .model import DomainTag, LexicalEntry, TranslationLink
from .textnorm import nfc

HEADER = "lexibase-interchange v1"
_HEADER_RE = re.compile(r"^lexibase-interchange v(\d+)$")
SUPPORTED_VERSION = 1

KINDS = ("domain", "entry", "link")

_ID_RE = re.compile(r"^([a-z]+)(\d+)$")


class InterchangeError(ValueError):
    """Malformed interchange data; carries the 1-based record (line) number."""

    def __init__(self, message: str, record: int = 0):
        super().__init__(f"record {record}: {message}" if record else message)
        self.record = record


def id_sort_key(raw_id: str) -> tuple:
    """Store-issued ids ('e12') sort numerically; anything else lexicographically after."""
    m = _ID_RE.match(raw_id)
    if m:
        return (0, m.group(1), int(m.group(2)))
    return (1, raw_id, 0)


# ---------------------------------------------------------------- payloads

def bundle_to_payload(bundle: FeatureBundle) -> dict[str, str]:
    return dict(bundle.items())  # already in canonical feature order


def bundle_from_payload(data: Any) -> FeatureBundle:
    if not isinstance(data, dict):
        raise InterchangeError("feature bundle must be an object")
    try:
        return FeatureBundle(data)
    except FeatureError as e:
        raise InterchangeError(str(e)) from None


def domain_to_payload(domain: DomainTag) -> dict:
    return {"id": domain.id, "name": domain.name}


def domain_from_payload(data: dict) -> DomainTag:
    _require(data, "domain", ("id", "name"))
    return DomainTag(id=str(data["id"]), name=nfc(str(data["name"])))


def entry_to_payload(entry: LexicalEntry, with_id: bool = True) -> dict:
    payload: dict[str, Any] = {}
    if with_id:
        payload["id"] = entry.id
    payload["language"] = entry.language
    payload["pos"] = entry.pos
    payload["lemma"] = entry.lemma
    payload["stems"] = list(entry.stems)
    if entry.inflection_class:
        payload["inflection_class"] = entry.inflection_class
    if entry.gender is not None:
        payload["gender"] = entry.gender
    if entry.regular is not None:
        payload["regular"] = entry.regular
    if entry.defectiveness != "none":
        payload["defectiveness"] = entry.defectiveness
    if entry.domain_tags:
        payload["domain_tags"] = sorted(entry.domain_tags, key=id_sort_key)
    if entry.overrides:
        payload["overrides"] = [
            {"features": bundle_to_payload(b), "surface": s}
            for b, s in sorted(entry.overrides.items(), key=lambda kv: kv[0].canonical())
        ]
    if entry.required_cases:
        payload["required_cases"] = list(entry.required_cases)
    return payload


def entry_from_payload(data: dict, entry_id: str | None = None) -> LexicalEntry:
    _require(data, "entry", ("language", "pos", "lemma", "stems"))
    overrides: dict[FeatureBundle, str] = {}
    for i, item in enumerate(data.get("overrides") or []):
        if not isinstance(item, dict) or "features" not in item or "surface" not in item:
            raise InterchangeError(f"override {i} needs 'features' and 'surface'")
        overrides[bundle_from_payload(item["features"])] = str(item["surface"])
    stems = data["stems"]
    if not isinstance(stems, list):
        raise InterchangeError("'stems' must be a list")
    regular = data.get("regular")
    if regular is not None and not isinstance(regular, bool):
        raise InterchangeError("'regular' must be a boolean")
    return LexicalEntry(
        id=str(entry_id if entry_id is not None else data.get("id", "")),
        language=str(data["language"]),
        pos=str(data["pos"]),
        lemma=str(data["lemma"]),
        stems=tuple(str(s) for s in stems),
        inflection_class=(
            str(data["inflection_class"]) if data.get("inflection_class") else None
        ),
        gender=str(data["gender"]) if data.get("gender") is not None else None,
        regular=regular,
        defectiveness=str(data.get("defectiveness", "none")),
        domain_tags=frozenset(str(t) for t in data.get("domain_tags") or ()),
        overrides=overrides,
        required_cases=tuple(str(c) for c in data.get("required_cases") or ()),
    )


def link_to_payload(link: TranslationLink) -> dict:
    payload: dict[str, Any] = {
        "id": link.id,
        "en_entry": link.en_entry,
        "lt_entry": link.lt_entry,
        "rank_en_lt": link.rank_en_lt,
        "rank_lt_en": link.rank_lt_en,
    }
    if link.domain is not None:
        payload["domain"] = link.domain
    if link.note is not None:
        payload["note"] = link.note
    return payload


def link_from_payload(data: dict) -> TranslationLink:
    _require(data, "link", ("id", "en_entry", "lt_entry", "rank_en_lt", "rank_lt_en"))
    for rank_field in ("rank_en_lt", "rank_lt_en"):
        if not isinstance(data[rank_field], int) or data[rank_field] < 1:
            raise InterchangeError(f"'{rank_field}' must be a positive integer")
    return TranslationLink(
        id=str(data["id"]),
        en_entry=str(data["en_entry"]),
        lt_entry=str(data["lt_entry"]),
        rank_en_lt=data["rank_en_lt"],
        rank_lt_en=data["rank_lt_en"],
        domain=str(data["domain"]) if data.get("domain") is not None else None,
        note=str(data["note"]) if data.get("note") is not None else None,
    )


def _require(data: Any, kind: str, fields: tuple[str, ...]) -> None:
    if not isinstance(data, dict):
        raise InterchangeError(f"{kind} payload must be an object")
    for name in fields:
        if name not in data:
            raise InterchangeError(f"{kind} payload lacks required field {name!r}")


# ------------------------------------------------------------ record lines

def dump_record(kind: str, payload: dict) -> str:
    return kind + "\t" + json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def dump_records(
    domains: Iterable[DomainTag],
    entries: Iterable[LexicalEntry],
    links: Iterable[TranslationLink],
) -> list[str]:
    """Record lines (header excluded) in the canonical export order."""
    lines = []
    for d in sorted(domains, key=lambda d: id_sort_key(d.id)):
        lines.append(dump_record("domain", domain_to_payload(d)))
    for e in sorted(entries, key=lambda e: id_sort_key(e.id)):
        lines.append(dump_record("entry", entry_to_payload(e)))
    for l in sorted(links, key=lambda l: id_sort_key(l.id)):
        lines.append(dump_record("link", link_to_payload(l)))
    return lines


def export_text(domains, entries, links) -> str:
    return "\n".join([HEADER, *dump_records(domains, entries, links)]) + "\n"


def parse_record(line: str, record_no: int):
    kind, sep, body = line.partition("\t")
    if not sep or kind not in KINDS:
        raise InterchangeError(f"expected '<kind>\\t<json>' with kind in {KINDS}", record_no)
    try:
        data = json.loads(body)
    except json.JSONDecodeError as e:
        raise InterchangeError(f"bad JSON payload: {e}", record_no) from None
    try:
        if kind == "domain":
            return kind, domain_from_payload(data)
        if kind == "entry":
            return kind, entry_from_payload(data)
        return kind, link_from_payload(data)
    except InterchangeError as e:
        raise InterchangeError(str(e), record_no) from None


def parse_interchange(
    text: str,
) -> tuple[list[DomainTag], list[LexicalEntry], list[TranslationLink]]:
    """Parse a full interchange document. Raises InterchangeError with record numbers."""
    lines = text.splitlines()
    if not lines:
        raise InterchangeError("empty file: missing header", 1)
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise InterchangeError(f"bad header {lines[0]!r}", 1)
    if int(m.group(1)) != SUPPORTED_VERSION:
        raise InterchangeError(
            f"unsupported interchange version {lines[0]!r}", 1
        )
    domains: list[DomainTag] = []
    entries: list[LexicalEntry] = []
    links: list[TranslationLink] = []
    seen: dict[str, set[str]] = {k: set() for k in KINDS}
    for record_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        kind, obj = parse_record(line, record_no)
        if obj.id in seen[kind]:
            raise InterchangeError(f"duplicate {kind} id {obj.id!r}", record_no)
        seen[kind].add(obj.id)
        if kind == "domain":
            domains.append(obj)
        elif kind == "entry":
            entries.append(obj)
        else:
            links.append(obj)
    return domains, entries, links
