"""Embedded single-file lexicon store.

One UTF-8 file holds the whole lexicon: a private header line (format
version, SHA-256 of the body, id counters) followed by interchange-format
record lines. Commits serialize the full state to a temp file and atomically
rename it over the store path, so a crashed writer leaves either the old or
the new committed state, never a torn one; the checksum turns truncation or
bit rot into a detected corruption error at open.

Concurrency contract: readers take immutable snapshots (`snapshot()`); any
number may read concurrently and a snapshot never changes under a reader.
Writers are serialized by an in-process lock plus a sibling flock for
cross-process exclusion. Surface-form and lemma indexes cover both languages
symmetrically and are rebuilt from entries + paradigm registry at open, so an
indexed form is always derivable from its entry.
"""
from __future__ import annotations

import hashlib
import json
import os
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

try:
    import fcntl
except ImportError:  # pragma: no cover - non-POSIX fallback, single-process only
    fcntl = None

from . import interchange
from .features import LANGUAGES
from .model import (
    DIRECTIONS,
    EN_TO_LT,
    LT_TO_EN,
    DomainTag,
    LexicalEntry,
    TranslationLink,
    ValidationVerdict,
    apply_permutation,
    compact_ranks,
    validate_entry,
)
from .morphology import ParadigmRegistry, generate_paradigm
from .registry import shipped_registry
from .textnorm import match_key

STORE_HEADER_PREFIX = "lexibase-store v"
STORE_VERSION = 1

_ID_PREFIX = {"entry": "e", "link": "l", "domain": "d"}


class StoreError(Exception):
    pass


class CorruptStoreError(StoreError):
    pass


class BadVersionError(StoreError):
    pass


class NotFoundError(StoreError):
    def __init__(self, kind: str, item_id: str):
        super().__init__(f"no such {kind}: {item_id!r}")
        self.kind = kind
        self.item_id = item_id


class ValidationFailedError(StoreError):
    def __init__(self, verdict: ValidationVerdict, subject: str = "entry"):
        detail = "; ".join(f"{v.code}: {v.message}" for v in verdict.violations)
        super().__init__(f"{subject} failed validation: {detail}")
        self.verdict = verdict


class LanguageMismatchError(StoreError):
    pass


class DuplicateLinkError(StoreError):
    pass


class DuplicateDomainError(StoreError):
    pass


class LinksExistError(StoreError):
    def __init__(self, entry_id: str, link_ids: list[str]):
        super().__init__(
            f"entry {entry_id!r} is referenced by links {link_ids}; "
            "pass cascade=True to delete them"
        )
        self.link_ids = link_ids


class PermutationError(StoreError):
    pass


class DirectionError(StoreError):
    pass


class StoreNotEmptyError(StoreError):
    pass


class IntegrityError(StoreError):
    pass


@dataclass(frozen=True)
class DeletionReport:
    entry_id: str
    removed_link_ids: tuple[str, ...] = ()


class StoreState:
    """Immutable committed state; safe to share across threads.

    Mutating store operations build a new StoreState and atomically publish
    it, so holders of an old state keep a consistent snapshot.
    """

    __slots__ = (
        "entries", "links", "domains", "lemma_index", "form_index",
        "links_by_en", "links_by_lt", "counters", "_lemma_pairs",
    )

    def __init__(self, entries, links, domains, lemma_index, form_index,
                 links_by_en, links_by_lt, counters):
        self.entries: dict[str, LexicalEntry] = entries
        self.links: dict[str, TranslationLink] = links
        self.domains: dict[str, DomainTag] = domains
        self.lemma_index: dict[str, dict[str, tuple[str, ...]]] = lemma_index
        self.form_index: dict[str, dict[str, tuple]] = form_index
        self.links_by_en: dict[str, tuple[str, ...]] = links_by_en
        self.links_by_lt: dict[str, tuple[str, ...]] = links_by_lt
        self.counters: dict[str, int] = counters
        self._lemma_pairs: dict[str, list] = {}

    @staticmethod
    def empty() -> "StoreState":
        return StoreState(
            {}, {}, {},
            {lang: {} for lang in LANGUAGES},
            {lang: {} for lang in LANGUAGES},
            {}, {},
            {"entry": 0, "link": 0, "domain": 0},
        )

    # ------------------------------------------------------------- queries
    def entry(self, entry_id: str) -> LexicalEntry | None:
        return self.entries.get(entry_id)

    def link(self, link_id: str) -> TranslationLink | None:
        return self.links.get(link_id)

    def domain(self, domain_id: str) -> DomainTag | None:
        return self.domains.get(domain_id)

    def domain_by_name(self, name: str) -> DomainTag | None:
        for d in self.domains.values():
            if d.name == name:
                return d
        return None

    def links_of(self, entry_id: str) -> list[TranslationLink]:
        entry = self.entries.get(entry_id)
        if entry is None:
            return []
        table = self.links_by_en if entry.language == "EN" else self.links_by_lt
        return [self.links[lid] for lid in table.get(entry_id, ())]

    def links_for_direction(self, entry_id: str, direction: str) -> list[TranslationLink]:
        """The entry's links ranked in `direction`, sorted by that rank."""
        return sorted(self.links_of(entry_id), key=lambda l: l.rank(direction))

    def lemma_hits(self, language: str, query_key: str) -> tuple[str, ...]:
        return self.lemma_index[language].get(query_key, ())

    def form_hits(self, language: str, query_key: str) -> tuple:
        return self.form_index[language].get(query_key, ())

    def sorted_lemma_pairs(self, language: str) -> list[tuple[str, str]]:
        """Sorted unique (match_key, lemma) pairs; computed lazily per state."""
        cached = self._lemma_pairs.get(language)
        if cached is None:
            pairs = {
                (match_key(e.lemma), e.lemma)
                for e in self.entries.values()
                if e.language == language
            }
            cached = sorted(pairs)
            self._lemma_pairs[language] = cached
        return cached

    def form_count(self, language: str) -> int:
        return sum(len(v) for v in self.form_index[language].values())

    def stats(self) -> dict:
        return {
            "entries": len(self.entries),
            "links": len(self.links),
            "domains": len(self.domains),
            "forms": {lang: self.form_count(lang) for lang in LANGUAGES},
        }


# ------------------------------------------------------------- index build

def _entry_index_additions(entry: LexicalEntry, registry: ParadigmRegistry):
    lemma_key = match_key(entry.lemma)
    postings = [
        (match_key(form.surface), (entry.id, form.features))
        for form in generate_paradigm(entry, registry)
    ]
    return lemma_key, postings


def build_indexes(entries: Iterable[LexicalEntry], registry: ParadigmRegistry):
    lemma_index: dict[str, dict[str, tuple]] = {lang: {} for lang in LANGUAGES}
    form_index: dict[str, dict[str, tuple]] = {lang: {} for lang in LANGUAGES}
    lemma_acc: dict[str, dict[str, list]] = {lang: {} for lang in LANGUAGES}
    form_acc: dict[str, dict[str, list]] = {lang: {} for lang in LANGUAGES}
    for entry in entries:
        lemma_key, postings = _entry_index_additions(entry, registry)
        lemma_acc[entry.language].setdefault(lemma_key, []).append(entry.id)
        lang_forms = form_acc[entry.language]
        for key, posting in postings:
            lang_forms.setdefault(key, []).append(posting)
    for lang in LANGUAGES:
        lemma_index[lang] = {k: tuple(v) for k, v in lemma_acc[lang].items()}
        form_index[lang] = {k: tuple(v) for k, v in form_acc[lang].items()}
    return lemma_index, form_index


def build_link_tables(links: Iterable[TranslationLink]):
    by_en: dict[str, list[str]] = {}
    by_lt: dict[str, list[str]] = {}
    for link in links:
        by_en.setdefault(link.en_entry, []).append(link.id)
        by_lt.setdefault(link.lt_entry, []).append(link.id)
    return (
        {k: tuple(v) for k, v in by_en.items()},
        {k: tuple(v) for k, v in by_lt.items()},
    )


def check_referential_integrity(
    entries: dict[str, LexicalEntry],
    links: Iterable[TranslationLink],
    domains: dict[str, DomainTag],
) -> None:
    names = set()
    for d in domains.values():
        if d.name in names:
            raise IntegrityError(f"duplicate domain name {d.name!r}")
        names.add(d.name)
    for e in entries.values():
        for tag in e.domain_tags:
            if tag not in domains:
                raise IntegrityError(f"entry {e.id!r} references missing domain {tag!r}")
    pairs = set()
    rank_sets: dict[tuple[str, str], list[int]] = {}
    for link in links:
        en = entries.get(link.en_entry)
        lt = entries.get(link.lt_entry)
        if en is None:
            raise IntegrityError(f"link {link.id!r} references missing entry {link.en_entry!r}")
        if lt is None:
            raise IntegrityError(f"link {link.id!r} references missing entry {link.lt_entry!r}")
        if en.language != "EN" or lt.language != "LT":
            raise IntegrityError(f"link {link.id!r} endpoints have wrong languages")
        if link.domain is not None and link.domain not in domains:
            raise IntegrityError(f"link {link.id!r} references missing domain {link.domain!r}")
        pair = (link.en_entry, link.lt_entry, link.domain)
        if pair in pairs:
            raise IntegrityError(f"duplicate link for pair {pair}")
        pairs.add(pair)
        rank_sets.setdefault((link.en_entry, EN_TO_LT), []).append(link.rank_en_lt)
        rank_sets.setdefault((link.lt_entry, LT_TO_EN), []).append(link.rank_lt_en)
    for (entry_id, direction), ranks in rank_sets.items():
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise IntegrityError(
                f"ranks for entry {entry_id!r} direction {direction} are not 1..k: "
                f"{sorted(ranks)}"
            )


def _derive_counters(state_entries, state_links, state_domains) -> dict[str, int]:
    counters = {"entry": 0, "link": 0, "domain": 0}
    for kind, ids in (
        ("entry", state_entries), ("link", state_links), ("domain", state_domains)
    ):
        prefix = _ID_PREFIX[kind]
        pattern = re.compile(rf"^{prefix}(\d+)$")
        for raw_id in ids:
            m = pattern.match(raw_id)
            if m:
                counters[kind] = max(counters[kind], int(m.group(1)))
    return counters


# ------------------------------------------------------------------ store

class LexiconStore:
    """Open store handle. All mutations are transactional and durable."""

    def __init__(self, path: str | Path, registry: ParadigmRegistry | None = None,
                 create_if_missing: bool = False):
        self.path = Path(path)
        self.registry = registry if registry is not None else shipped_registry()
        self._write_lock = threading.RLock()
        self._closed = False
        if self.path.exists():
            self._state = self._read_file()
        elif create_if_missing:
            self._state = StoreState.empty()
            with self._write_lock:
                self._commit(self._state)
        else:
            raise StoreError(f"store file {self.path} does not exist (pass create_if_missing)")

    # --------------------------------------------------------- file format
    def _read_file(self) -> StoreState:
        raw = self.path.read_bytes()
        newline = raw.find(b"\n")
        if newline < 0:
            raise CorruptStoreError(f"{self.path}: missing header line")
        header_line = raw[:newline].decode("utf-8", errors="replace")
        body = raw[newline + 1:]
        if not header_line.startswith(STORE_HEADER_PREFIX):
            raise CorruptStoreError(f"{self.path}: not a lexibase store file")
        rest = header_line[len(STORE_HEADER_PREFIX):]
        version_str, _, meta_json = rest.partition("\t")
        try:
            version = int(version_str)
        except ValueError:
            raise CorruptStoreError(f"{self.path}: bad version {version_str!r}") from None
        if version > STORE_VERSION:
            raise BadVersionError(
                f"{self.path}: store version {version} newer than supported {STORE_VERSION}"
            )
        try:
            meta = json.loads(meta_json)
            expected_sha = meta["sha256"]
            counters = {k: int(v) for k, v in meta["counters"].items()}
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            raise CorruptStoreError(f"{self.path}: malformed header metadata") from None
        actual_sha = hashlib.sha256(body).hexdigest()
        if actual_sha != expected_sha:
            raise CorruptStoreError(
                f"{self.path}: checksum mismatch (file truncated or corrupted)"
            )

        entries: dict[str, LexicalEntry] = {}
        links: dict[str, TranslationLink] = {}
        domains: dict[str, DomainTag] = {}
        for record_no, line in enumerate(body.decode("utf-8").splitlines(), start=2):
            if not line.strip():
                continue
            try:
                kind, obj = interchange.parse_record(line, record_no)
            except interchange.InterchangeError as e:
                raise CorruptStoreError(f"{self.path}: {e}") from None
            target = {"entry": entries, "link": links, "domain": domains}[kind]
            if obj.id in target:
                raise CorruptStoreError(f"{self.path}: record {record_no}: duplicate id")
            target[obj.id] = obj
        try:
            check_referential_integrity(entries, links.values(), domains)
        except IntegrityError as e:
            raise CorruptStoreError(f"{self.path}: {e}") from None
        lemma_index, form_index = build_indexes(entries.values(), self.registry)
        links_by_en, links_by_lt = build_link_tables(links.values())
        return StoreState(entries, links, domains, lemma_index, form_index,
                          links_by_en, links_by_lt, counters)

    def _serialize(self, state: StoreState) -> bytes:
        body = "\n".join(
            interchange.dump_records(
                state.domains.values(), state.entries.values(), state.links.values()
            )
        )
        if body:
            body += "\n"
        body_bytes = body.encode("utf-8")
        meta = {
            "sha256": hashlib.sha256(body_bytes).hexdigest(),
            "counters": state.counters,
        }
        header = f"{STORE_HEADER_PREFIX}{STORE_VERSION}\t" + json.dumps(
            meta, separators=(",", ":")
        )
        return header.encode("utf-8") + b"\n" + body_bytes

    def _commit(self, state: StoreState) -> None:
        """Serialize `state`, write atomically, then publish it. Caller holds the lock."""
        data = self._serialize(state)
        tmp = self.path.with_name(self.path.name + f".tmp.{os.getpid()}")
        lock_path = self.path.with_name(self.path.name + ".lock")
        lock_fd = None
        try:
            if fcntl is not None:
                lock_fd = os.open(lock_path, os.O_CREAT | os.O_RDWR, 0o644)
                fcntl.flock(lock_fd, fcntl.LOCK_EX)
            with open(tmp, "wb") as f:
                f.write(data)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp, self.path)
            dir_fd = os.open(self.path.parent, os.O_RDONLY)
            try:
                os.fsync(dir_fd)
            finally:
                os.close(dir_fd)
        except BaseException:
            try:
                if tmp.exists():
                    tmp.unlink()
            except OSError:
                pass
            raise
        finally:
            if lock_fd is not None:
                fcntl.flock(lock_fd, fcntl.LOCK_UN)
                os.close(lock_fd)
        self._state = state

    # ------------------------------------------------------------ plumbing
    def snapshot(self) -> StoreState:
        """Current committed state; immutable, consistent, freely shareable."""
        return self._state

    def close(self) -> None:
        self._closed = True

    def _issue_id(self, counters: dict[str, int], kind: str) -> tuple[str, dict[str, int]]:
        new = dict(counters)
        new[kind] += 1
        return f"{_ID_PREFIX[kind]}{new[kind]}", new

    def _check_open(self) -> None:
        if self._closed:
            raise StoreError("store is closed")

    # ----------------------------------------------------------- mutations
    def upsert_entry(self, entry: LexicalEntry) -> str:
        """Insert (empty id) or update (existing id) an entry; returns its id.

        The lemma and surface-form indexes afterwards reflect exactly the
        entry's current paradigm; stale forms of a previous version are gone.
        """
        self._check_open()
        with self._write_lock:
            state = self._state
            counters = state.counters
            entry_id = entry.id
            if entry_id:
                if entry_id not in state.entries:
                    raise NotFoundError("entry", entry_id)
            else:
                entry_id, counters = self._issue_id(counters, "entry")
            entry = LexicalEntry(**{**_entry_kwargs(entry), "id": entry_id})

            verdict = validate_entry(entry, self.registry)
            if not verdict.ok:
                raise ValidationFailedError(verdict)
            for tag in entry.domain_tags:
                if tag not in state.domains:
                    raise NotFoundError("domain", tag)

            old = state.entries.get(entry_id)
            if old is not None and old.language != entry.language and state.links_of(entry_id):
                raise LanguageMismatchError(
                    f"cannot change language of {entry_id!r} while links reference it"
                )

            entries = dict(state.entries)
            entries[entry_id] = entry
            lemma_index = {lang: idx for lang, idx in state.lemma_index.items()}
            form_index = {lang: idx for lang, idx in state.form_index.items()}
            if old is not None:
                _index_remove(lemma_index, form_index, old, self.registry)
            _index_add(lemma_index, form_index, entry, self.registry)
            new_state = StoreState(
                entries, state.links, state.domains, lemma_index, form_index,
                state.links_by_en, state.links_by_lt, counters,
            )
            self._commit(new_state)
            return entry_id

    def get_entry(self, entry_id: str) -> LexicalEntry | None:
        return self._state.entries.get(entry_id)

    def delete_entry(self, entry_id: str, cascade: bool = False) -> DeletionReport:
        self._check_open()
        with self._write_lock:
            state = self._state
            entry = state.entries.get(entry_id)
            if entry is None:
                raise NotFoundError("entry", entry_id)
            attached = state.links_of(entry_id)
            if attached and not cascade:
                raise LinksExistError(entry_id, [l.id for l in attached])

            removed_ids = {l.id for l in attached}
            links = {lid: l for lid, l in state.links.items() if lid not in removed_ids}
            # re-compact rank sequences of the surviving partners
            partners: set[tuple[str, str]] = set()
            for link in attached:
                other_id = link.lt_entry if entry.language == "EN" else link.en_entry
                other_dir = LT_TO_EN if entry.language == "EN" else EN_TO_LT
                partners.add((other_id, other_dir))
            for other_id, direction in partners:
                table = state.links_by_lt if direction == LT_TO_EN else state.links_by_en
                survivor_ids = [lid for lid in table.get(other_id, ()) if lid not in removed_ids]
                for link in compact_ranks([links[lid] for lid in survivor_ids], direction):
                    links[link.id] = link

            entries = dict(state.entries)
            del entries[entry_id]
            lemma_index = {lang: idx for lang, idx in state.lemma_index.items()}
            form_index = {lang: idx for lang, idx in state.form_index.items()}
            _index_remove(lemma_index, form_index, entry, self.registry)
            links_by_en, links_by_lt = build_link_tables(links.values())
            new_state = StoreState(
                entries, links, state.domains, lemma_index, form_index,
                links_by_en, links_by_lt, state.counters,
            )
            self._commit(new_state)
            return DeletionReport(entry_id, tuple(sorted(removed_ids, key=interchange.id_sort_key)))

    def add_domain(self, name: str) -> DomainTag:
        self._check_open()
        with self._write_lock:
            state = self._state
            if state.domain_by_name(name) is not None:
                raise DuplicateDomainError(f"domain named {name!r} already exists")
            domain_id, counters = self._issue_id(state.counters, "domain")
            domain = DomainTag(domain_id, name)
            domains = dict(state.domains)
            domains[domain_id] = domain
            new_state = StoreState(
                state.entries, state.links, domains, state.lemma_index,
                state.form_index, state.links_by_en, state.links_by_lt, counters,
            )
            self._commit(new_state)
            return domain

    def add_link(self, en_id: str, lt_id: str, domain: str | None = None,
                 note: str | None = None) -> TranslationLink:
        """Create a link at lowest priority (rank k+1) in both directions."""
        self._check_open()
        with self._write_lock:
            state = self._state
            en = state.entries.get(en_id)
            lt = state.entries.get(lt_id)
            if en is None:
                raise NotFoundError("entry", en_id)
            if lt is None:
                raise NotFoundError("entry", lt_id)
            if en.language != "EN" or lt.language != "LT":
                raise LanguageMismatchError(
                    f"link endpoints must be (EN, LT); got ({en.language}, {lt.language})"
                )
            if domain is not None and domain not in state.domains:
                raise NotFoundError("domain", domain)
            for existing_id in state.links_by_en.get(en_id, ()):
                existing = state.links[existing_id]
                if existing.lt_entry == lt_id and existing.domain == domain:
                    raise DuplicateLinkError(
                        f"link ({en_id}, {lt_id}, domain={domain!r}) already exists"
                    )
            link_id, counters = self._issue_id(state.counters, "link")
            link = TranslationLink(
                id=link_id, en_entry=en_id, lt_entry=lt_id,
                rank_en_lt=len(state.links_by_en.get(en_id, ())) + 1,
                rank_lt_en=len(state.links_by_lt.get(lt_id, ())) + 1,
                domain=domain, note=note,
            )
            links = dict(state.links)
            links[link_id] = link
            links_by_en = dict(state.links_by_en)
            links_by_en[en_id] = state.links_by_en.get(en_id, ()) + (link_id,)
            links_by_lt = dict(state.links_by_lt)
            links_by_lt[lt_id] = state.links_by_lt.get(lt_id, ()) + (link_id,)
            new_state = StoreState(
                state.entries, links, state.domains, state.lemma_index,
                state.form_index, links_by_en, links_by_lt, counters,
            )
            self._commit(new_state)
            return link

    def delete_link(self, link_id: str) -> None:
        self._check_open()
        with self._write_lock:
            state = self._state
            link = state.links.get(link_id)
            if link is None:
                raise NotFoundError("link", link_id)
            links = dict(state.links)
            del links[link_id]
            for entry_id, direction in (
                (link.en_entry, EN_TO_LT), (link.lt_entry, LT_TO_EN)
            ):
                table = state.links_by_en if direction == EN_TO_LT else state.links_by_lt
                survivor_ids = [lid for lid in table.get(entry_id, ()) if lid != link_id]
                for compacted in compact_ranks([links[lid] for lid in survivor_ids], direction):
                    links[compacted.id] = compacted
            links_by_en, links_by_lt = build_link_tables(links.values())
            new_state = StoreState(
                state.entries, links, state.domains, state.lemma_index,
                state.form_index, links_by_en, links_by_lt, state.counters,
            )
            self._commit(new_state)

    def reorder_links(self, entry_id: str, direction: str,
                      new_order: list[str]) -> list[TranslationLink]:
        """Reassign the entry's ranks for one direction to follow `new_order`."""
        self._check_open()
        if direction not in DIRECTIONS:
            raise DirectionError(f"direction must be one of {DIRECTIONS}")
        with self._write_lock:
            state = self._state
            entry = state.entries.get(entry_id)
            if entry is None:
                raise NotFoundError("entry", entry_id)
            source_lang = "EN" if direction == EN_TO_LT else "LT"
            if entry.language != source_lang:
                raise DirectionError(
                    f"{direction} ranks belong to {source_lang} entries; "
                    f"{entry_id!r} is {entry.language}"
                )
            current = state.links_of(entry_id)
            try:
                updated = apply_permutation(current, direction, list(new_order))
            except ValueError as e:
                raise PermutationError(str(e)) from None
            links = dict(state.links)
            for link in updated:
                links[link.id] = link
            new_state = StoreState(
                state.entries, links, state.domains, state.lemma_index,
                state.form_index, state.links_by_en, state.links_by_lt, state.counters,
            )
            self._commit(new_state)
            return sorted(updated, key=lambda l: l.rank(direction))

    def populate(self, domains: Iterable[DomainTag], entries: Iterable[LexicalEntry],
                 links: Iterable[TranslationLink], validate: bool = True) -> None:
        """Load everything into an empty store in one transaction (import/merge path)."""
        self._check_open()
        with self._write_lock:
            if self._state.entries or self._state.links or self._state.domains:
                raise StoreNotEmptyError("populate() requires an empty store")
            self._load_all(domains, entries, links, validate)

    def replace_all(self, domains: Iterable[DomainTag], entries: Iterable[LexicalEntry],
                    links: Iterable[TranslationLink], validate: bool = True) -> None:
        """Swap the whole store content in one transaction (merge-import path)."""
        self._check_open()
        with self._write_lock:
            self._load_all(domains, entries, links, validate)

    def _load_all(self, domains, entries, links, validate) -> None:
        with self._write_lock:
            domain_map = {d.id: d for d in domains}
            entry_map = {e.id: e for e in entries}
            link_map = {l.id: l for l in links}
            if validate:
                for entry in entry_map.values():
                    verdict = validate_entry(entry, self.registry)
                    if not verdict.ok:
                        raise ValidationFailedError(verdict, subject=f"entry {entry.id!r}")
            check_referential_integrity(entry_map, link_map.values(), domain_map)
            lemma_index, form_index = build_indexes(entry_map.values(), self.registry)
            links_by_en, links_by_lt = build_link_tables(link_map.values())
            counters = _derive_counters(entry_map, link_map, domain_map)
            new_state = StoreState(
                entry_map, link_map, domain_map, lemma_index, form_index,
                links_by_en, links_by_lt, counters,
            )
            self._commit(new_state)

    # ------------------------------------------------------- export/import
    def export_text(self) -> str:
        state = self._state
        return interchange.export_text(
            state.domains.values(), state.entries.values(), state.links.values()
        )

    def export(self, sink: str | Path | IO[str]) -> int:
        """Write the interchange document to `sink`; returns the record count."""
        text = self.export_text()
        if hasattr(sink, "write"):
            sink.write(text)
        else:
            Path(sink).write_text(text, encoding="utf-8")
        return len(text.splitlines())


def _entry_kwargs(entry: LexicalEntry) -> dict:
    return {
        "id": entry.id, "language": entry.language, "pos": entry.pos,
        "lemma": entry.lemma, "stems": entry.stems,
        "inflection_class": entry.inflection_class, "gender": entry.gender,
        "regular": entry.regular, "defectiveness": entry.defectiveness,
        "domain_tags": entry.domain_tags, "overrides": entry.overrides,
        "required_cases": entry.required_cases,
    }


def _index_add(lemma_index, form_index, entry: LexicalEntry, registry) -> None:
    lemma_key, postings = _entry_index_additions(entry, registry)
    lang_lemmas = dict(lemma_index[entry.language])
    lang_lemmas[lemma_key] = lang_lemmas.get(lemma_key, ()) + (entry.id,)
    lemma_index[entry.language] = lang_lemmas
    lang_forms = dict(form_index[entry.language])
    for key, posting in postings:
        lang_forms[key] = lang_forms.get(key, ()) + (posting,)
    form_index[entry.language] = lang_forms


def _index_remove(lemma_index, form_index, entry: LexicalEntry, registry) -> None:
    lemma_key, postings = _entry_index_additions(entry, registry)
    lang_lemmas = dict(lemma_index[entry.language])
    remaining = tuple(i for i in lang_lemmas.get(lemma_key, ()) if i != entry.id)
    if remaining:
        lang_lemmas[lemma_key] = remaining
    else:
        lang_lemmas.pop(lemma_key, None)
    lemma_index[entry.language] = lang_lemmas
    lang_forms = dict(form_index[entry.language])
    for key, _ in postings:
        kept = tuple(p for p in lang_forms.get(key, ()) if p[0] != entry.id)
        if kept:
            lang_forms[key] = kept
        else:
            lang_forms.pop(key, None)
    form_index[entry.language] = lang_forms


# -------------------------------------------------------------- module API

def open_store(path: str | Path, create_if_missing: bool = False,
               registry: ParadigmRegistry | None = None) -> LexiconStore:
    return LexiconStore(path, registry=registry, create_if_missing=create_if_missing)


def import_store(source: str | Path | IO[str], into_path: str | Path,
                 registry: ParadigmRegistry | None = None) -> LexiconStore:
    """Build a fresh store at `into_path` from an interchange document.

    Indexes are rebuilt from the imported entries, never read from the file.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    domains, entries, links = interchange.parse_interchange(text)
    store = LexiconStore(into_path, registry=registry, create_if_missing=True)
    try:
        store.populate(domains, entries, links)
    except (IntegrityError, ValidationFailedError):
        store.close()
        raise
    return store
