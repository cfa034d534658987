"""Merging two lexicon stores into one under an explicit conflict policy.

Entries match across stores by the identity key (language, pos, lemma,
inflection class) -- deliberately excluding stems, so spelling-identical
lemmas with diverging stem data surface as conflicts instead of silent
duplicates. The merge is a pure function over two snapshots; inputs are never
mutated. Per-direction link ranks are renumbered by a stable interleave
ordered by (original rank, left before right), which preserves both inputs'
internal priority orders.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from .interchange import id_sort_key
from .model import DIRECTIONS, DomainTag, LexicalEntry, TranslationLink
from .morphology import ParadigmRegistry
from .store import LexiconStore, StoreState

MERGE_MODES = ("prefer-left", "prefer-right", "union")


@dataclass(frozen=True)
class MergePolicy:
    mode: str = "union"

    def __post_init__(self):
        if self.mode not in MERGE_MODES:
            raise ValueError(f"merge mode must be one of {MERGE_MODES}")


@dataclass(frozen=True)
class FieldDiff:
    field: str
    left: Any
    right: Any
    resolution: Any


@dataclass(frozen=True)
class Conflict:
    key: tuple[str, str, str, str | None]  # language, pos, lemma, inflection_class
    diffs: tuple[FieldDiff, ...]
    resolution: str  # kept-left | kept-right | union

    def to_payload(self) -> dict:
        language, pos, lemma, cls = self.key
        return {
            "key": {
                "language": language, "pos": pos, "lemma": lemma,
                "inflection_class": cls,
            },
            "diffs": [
                {"field": d.field, "left": d.left, "right": d.right,
                 "resolution": d.resolution}
                for d in self.diffs
            ],
            "resolution": self.resolution,
        }


@dataclass(frozen=True)
class ConflictReport:
    mode: str
    conflicts: tuple[Conflict, ...] = ()

    def to_payload(self) -> dict:
        return {
            "mode": self.mode,
            "conflicts": [c.to_payload() for c in self.conflicts],
        }


@dataclass
class MergedData:
    domains: list[DomainTag] = field(default_factory=list)
    entries: list[LexicalEntry] = field(default_factory=list)
    links: list[TranslationLink] = field(default_factory=list)


def _entry_key(entry: LexicalEntry):
    return (entry.language, entry.pos, entry.lemma, entry.inflection_class)


def _comparable(entry: LexicalEntry, domain_names: dict[str, str]) -> dict:
    """Field view used for diffing; domain tags compared by name, not id."""
    return {
        "stems": list(entry.stems),
        "gender": entry.gender,
        "regular": entry.regular,
        "defectiveness": entry.defectiveness,
        "required_cases": list(entry.required_cases),
        "domain_tags": sorted(domain_names[t] for t in entry.domain_tags),
        "overrides": {b.canonical(): s for b, s in entry.overrides.items()},
    }


def merge_states(
    left: StoreState, right: StoreState, policy: MergePolicy
) -> tuple[MergedData, ConflictReport]:
    """Pure merge of two snapshots; result ids are freshly issued."""
    out = MergedData()
    conflicts: list[Conflict] = []

    # Domains unite by name in every mode: right-only entries keep their tags.
    left_names = {d.id: d.name for d in left.domains.values()}
    right_names = {d.id: d.name for d in right.domains.values()}
    name_to_new: dict[str, str] = {}
    domain_map_left: dict[str, str] = {}
    domain_map_right: dict[str, str] = {}
    next_domain = 1
    for names, mapping, side_domains in (
        (left_names, domain_map_left, left.domains),
        (right_names, domain_map_right, right.domains),
    ):
        for domain_id in sorted(side_domains, key=id_sort_key):
            name = names[domain_id]
            if name not in name_to_new:
                new_id = f"d{next_domain}"
                next_domain += 1
                name_to_new[name] = new_id
                out.domains.append(DomainTag(new_id, name))
            mapping[domain_id] = name_to_new[name]

    # Pair entries by identity key. Several same-key entries on one side are
    # matched pairwise in id order; unmatched extras are copied as-is.
    def grouped(state: StoreState):
        groups: dict[tuple, list[LexicalEntry]] = {}
        for entry in sorted(state.entries.values(), key=lambda e: id_sort_key(e.id)):
            groups.setdefault(_entry_key(entry), []).append(entry)
        return groups

    left_groups = grouped(left)
    right_groups = grouped(right)

    entry_map_left: dict[str, str] = {}
    entry_map_right: dict[str, str] = {}
    next_entry = 1

    def add_entry(entry: LexicalEntry, domain_map: dict[str, str]) -> str:
        nonlocal next_entry
        new_id = f"e{next_entry}"
        next_entry += 1
        out.entries.append(
            replace(
                entry,
                id=new_id,
                domain_tags=frozenset(domain_map[t] for t in entry.domain_tags),
            )
        )
        return new_id

    identity = {new_id: new_id for new_id in name_to_new.values()}
    for key, left_list in left_groups.items():
        right_list = right_groups.get(key, [])
        for i, l_entry in enumerate(left_list):
            if i < len(right_list):
                r_entry = right_list[i]
                merged, diffs, resolution = _merge_entry_pair(
                    l_entry, r_entry, policy, left_names, right_names,
                    domain_map_left, domain_map_right,
                )
                # merged.domain_tags already hold fresh ids
                new_id = add_entry(merged, identity)
                entry_map_left[l_entry.id] = new_id
                entry_map_right[r_entry.id] = new_id
                if diffs:
                    conflicts.append(Conflict(key, tuple(diffs), resolution))
            else:
                entry_map_left[l_entry.id] = add_entry(l_entry, domain_map_left)
        for r_entry in right_list[len(left_list):]:
            entry_map_right[r_entry.id] = add_entry(r_entry, domain_map_right)
    for key, right_list in right_groups.items():
        if key not in left_groups:
            for r_entry in right_list:
                entry_map_right[r_entry.id] = add_entry(r_entry, domain_map_right)

    # Links: re-key endpoints and domains, drop right-side duplicates of the
    # same (en, lt, domain) pair, then renumber ranks per direction by the
    # stable interleave (original rank, left before right).
    staged: list[tuple[int, TranslationLink, TranslationLink]] = []  # (side, original, rekeyed)
    seen_pairs: set[tuple[str, str, str | None]] = set()
    for side, state, entry_map, domain_map in (
        (0, left, entry_map_left, domain_map_left),
        (1, right, entry_map_right, domain_map_right),
    ):
        for link in sorted(state.links.values(), key=lambda l: id_sort_key(l.id)):
            rekeyed = replace(
                link,
                en_entry=entry_map[link.en_entry],
                lt_entry=entry_map[link.lt_entry],
                domain=domain_map[link.domain] if link.domain is not None else None,
            )
            pair = (rekeyed.en_entry, rekeyed.lt_entry, rekeyed.domain)
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)
            staged.append((side, link, rekeyed))

    next_link = 1
    rekeyed_links: list[tuple[int, TranslationLink, TranslationLink]] = []
    for side, original, rekeyed in staged:
        rekeyed = replace(rekeyed, id=f"l{next_link}")
        next_link += 1
        rekeyed_links.append((side, original, rekeyed))

    for direction in DIRECTIONS:
        per_source: dict[str, list[tuple[int, int, int, str]]] = {}
        for idx, (side, original, rekeyed) in enumerate(rekeyed_links):
            source = rekeyed.source_id(direction)
            per_source.setdefault(source, []).append(
                (original.rank(direction), side, idx, rekeyed.id)
            )
        for source, group in per_source.items():
            group.sort()
            for new_rank, (_, _, idx, _) in enumerate(group, start=1):
                side, original, rekeyed = rekeyed_links[idx]
                rekeyed_links[idx] = (side, original, rekeyed.with_rank(direction, new_rank))

    out.links = [rekeyed for _, _, rekeyed in rekeyed_links]
    return out, ConflictReport(policy.mode, tuple(conflicts))


def _merge_entry_pair(
    l_entry: LexicalEntry,
    r_entry: LexicalEntry,
    policy: MergePolicy,
    left_names: dict[str, str],
    right_names: dict[str, str],
    domain_map_left: dict[str, str],
    domain_map_right: dict[str, str],
) -> tuple[LexicalEntry, list[FieldDiff], str]:
    left_view = _comparable(l_entry, left_names)
    right_view = _comparable(r_entry, right_names)

    if policy.mode == "prefer-right":
        winner, w_map, resolution = r_entry, domain_map_right, "kept-right"
    else:
        winner, w_map, resolution = l_entry, domain_map_left, "kept-left"

    diffs: list[FieldDiff] = []
    for field_name in ("stems", "gender", "regular", "defectiveness", "required_cases"):
        if left_view[field_name] != right_view[field_name]:
            diffs.append(FieldDiff(
                field_name, left_view[field_name], right_view[field_name],
                left_view[field_name] if resolution == "kept-left" else right_view[field_name],
            ))

    merged = replace(
        winner,
        domain_tags=frozenset(w_map[t] for t in winner.domain_tags),
    )

    if policy.mode == "union":
        resolution = "union"
        if left_view["domain_tags"] != right_view["domain_tags"]:
            union_tags = frozenset(
                {domain_map_left[t] for t in l_entry.domain_tags}
                | {domain_map_right[t] for t in r_entry.domain_tags}
            )
            diffs.append(FieldDiff(
                "domain_tags", left_view["domain_tags"], right_view["domain_tags"],
                sorted(set(left_view["domain_tags"]) | set(right_view["domain_tags"])),
            ))
            merged = replace(merged, domain_tags=union_tags)
        if left_view["overrides"] != right_view["overrides"]:
            union_overrides = dict(r_entry.overrides)
            union_overrides.update(l_entry.overrides)  # left wins incompatible bundles
            resolved = {b.canonical(): s for b, s in union_overrides.items()}
            diffs.append(FieldDiff(
                "overrides", left_view["overrides"], right_view["overrides"], resolved,
            ))
            merged = replace(merged, overrides=union_overrides)
    else:
        for field_name in ("domain_tags", "overrides"):
            if left_view[field_name] != right_view[field_name]:
                diffs.append(FieldDiff(
                    field_name, left_view[field_name], right_view[field_name],
                    left_view[field_name] if resolution == "kept-left"
                    else right_view[field_name],
                ))

    return merged, diffs, resolution


def merge_stores(
    left: LexiconStore,
    right: LexiconStore,
    policy: MergePolicy,
    out_path: str | Path,
    registry: ParadigmRegistry | None = None,
) -> tuple[LexiconStore, ConflictReport]:
    """Merge two open stores into a fresh store file at `out_path`."""
    merged, report = merge_states(left.snapshot(), right.snapshot(), policy)
    out = LexiconStore(
        out_path,
        registry=registry if registry is not None else left.registry,
        create_if_missing=True,
    )
    try:
        out.populate(merged.domains, merged.entries, merged.links)
    except Exception:
        out.close()
        raise
    return out, report
