"""Lexical entries, domain tags, and the polysemy link model.

A TranslationLink ties one English and one Lithuanian entry together and
carries an independent priority rank per translation direction; for a fixed
source entry and direction the ranks of its links always form the contiguous
sequence 1..k (1 = preferred). Rank bookkeeping helpers live here as pure
functions; the store applies them transactionally.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .features import (
    FeatureBundle,
    FeatureError,
    LANGUAGES,
    NON_INFLECTING_POS,
    POS_VALUES,
    CASES,
)
from .morphology import (
    DEFECTIVENESS_VALUES,
    GenerationError,
    ParadigmRegistry,
    UnknownClassError,
    generate_paradigm,
)
from .textnorm import nfc

EN_TO_LT = "en-lt"
LT_TO_EN = "lt-en"
DIRECTIONS = (EN_TO_LT, LT_TO_EN)


@dataclass(frozen=True)
class DomainTag:
    id: str
    name: str


@dataclass(frozen=True)
class LexicalEntry:
    id: str
    language: str
    pos: str
    lemma: str
    stems: tuple[str, ...]
    inflection_class: str | None = None
    gender: str | None = None
    regular: bool | None = None  # verbs; None = unspecified
    defectiveness: str = "none"
    domain_tags: frozenset[str] = frozenset()
    overrides: Mapping[FeatureBundle, str] = field(default_factory=dict)
    required_cases: tuple[str, ...] = ()  # prepositions

    def __post_init__(self):
        object.__setattr__(self, "lemma", nfc(self.lemma))
        object.__setattr__(self, "stems", tuple(nfc(s) for s in self.stems))
        object.__setattr__(
            self, "overrides", {b: nfc(s) for b, s in dict(self.overrides).items()}
        )
        object.__setattr__(self, "domain_tags", frozenset(self.domain_tags))
        object.__setattr__(self, "required_cases", tuple(self.required_cases))


@dataclass(frozen=True)
class TranslationLink:
    id: str
    en_entry: str
    lt_entry: str
    rank_en_lt: int
    rank_lt_en: int
    domain: str | None = None
    note: str | None = None

    def source_id(self, direction: str) -> str:
        return self.en_entry if direction == EN_TO_LT else self.lt_entry

    def target_id(self, direction: str) -> str:
        return self.lt_entry if direction == EN_TO_LT else self.en_entry

    def rank(self, direction: str) -> int:
        return self.rank_en_lt if direction == EN_TO_LT else self.rank_lt_en

    def with_rank(self, direction: str, rank: int) -> "TranslationLink":
        if direction == EN_TO_LT:
            return replace(self, rank_en_lt=rank)
        return replace(self, rank_lt_en=rank)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    field: str | None = None


@dataclass(frozen=True)
class ValidationVerdict:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def validate_entry(entry: LexicalEntry, registry: ParadigmRegistry) -> ValidationVerdict:
    """Check every LexicalEntry invariant; returns all violations, not just the first."""
    bad: list[Violation] = []

    def flag(code, message, field=None):
        bad.append(Violation(code, message, field))

    if entry.language not in LANGUAGES:
        flag("BAD_LANGUAGE", f"language must be one of {LANGUAGES}", "language")
    if entry.pos not in POS_VALUES:
        flag("BAD_POS", f"unknown part of speech {entry.pos!r}", "pos")
        return ValidationVerdict(tuple(bad))  # later checks are POS-dependent

    if not entry.lemma:
        flag("EMPTY_LEMMA", "lemma must be non-empty", "lemma")
    if not entry.stems or not 1 <= len(entry.stems) <= 3:
        flag("BAD_STEM_COUNT", "entry needs 1..3 principal-part stems", "stems")
    for i, stem in enumerate(entry.stems):
        if not stem:
            flag("EMPTY_STEM", f"stem {i + 1} is empty", "stems")

    if entry.gender is not None and entry.gender not in ("M", "F", "N"):
        flag("BAD_GENDER", f"bad gender {entry.gender!r}", "gender")
    if entry.gender is not None and entry.pos not in ("noun", "adjective"):
        flag("GENDER_POS", "gender applies to nouns and adjectives only", "gender")
    if entry.regular is not None and entry.pos != "verb":
        flag("REGULARITY_POS", "regularity flag applies to verbs only", "regular")
    if entry.defectiveness not in DEFECTIVENESS_VALUES:
        flag(
            "BAD_DEFECTIVENESS",
            f"defectiveness must be one of {DEFECTIVENESS_VALUES}",
            "defectiveness",
        )

    if entry.domain_tags and entry.pos != "noun":
        flag("DOMAIN_TAGS_POS", "domain tags are allowed on nouns only", "domain_tags")
    if entry.required_cases and entry.pos != "preposition":
        flag(
            "REQUIRED_CASES_POS",
            "required cases are allowed on prepositions only",
            "required_cases",
        )
    for case in entry.required_cases:
        if case not in CASES:
            flag("BAD_CASE", f"unknown case {case!r}", "required_cases")

    if entry.pos in NON_INFLECTING_POS:
        if entry.inflection_class:
            flag(
                "CLASS_ON_NONINFLECTING",
                f"{entry.pos} entries carry no inflection class",
                "inflection_class",
            )
        if entry.overrides:
            flag("OVERRIDE_ON_NONINFLECTING", "no slots to override", "overrides")
    else:
        if not entry.inflection_class:
            flag("MISSING_CLASS", f"{entry.pos} entries need an inflection class",
                 "inflection_class")
        elif not registry.has_class(entry.language, entry.pos, entry.inflection_class):
            flag(
                "UNKNOWN_CLASS",
                f"no {entry.language} {entry.pos} paradigm spec named "
                f"{entry.inflection_class!r}",
                "inflection_class",
            )
        else:
            spec = registry.spec(entry.language, entry.pos, entry.inflection_class)
            if len(entry.stems) < spec.max_stem_selector():
                flag(
                    "MISSING_PRINCIPAL_PART",
                    f"class {entry.inflection_class!r} needs "
                    f"{spec.max_stem_selector()} stems",
                    "stems",
                )
            for bundle, surface in entry.overrides.items():
                try:
                    bundle.check_licensed(entry.pos)
                except FeatureError as e:
                    flag("BAD_OVERRIDE_BUNDLE", str(e), "overrides")
                    continue
                if spec.slot_for(bundle) is None:
                    flag(
                        "BAD_OVERRIDE_BUNDLE",
                        f"override {bundle.canonical() or '(empty)'} matches no slot "
                        f"of class {entry.inflection_class!r}",
                        "overrides",
                    )
                if not surface:
                    flag("EMPTY_OVERRIDE", "override surface is empty", "overrides")

    if not bad and entry.inflection_class:
        # belt-and-braces: the paradigm must actually generate
        try:
            generate_paradigm(entry, registry)
        except (GenerationError, UnknownClassError) as e:
            flag("GENERATION_FAILS", str(e), None)
    return ValidationVerdict(tuple(bad))


def ranks_contiguous(links: Iterable[TranslationLink], direction: str) -> bool:
    ranks = sorted(link.rank(direction) for link in links)
    return ranks == list(range(1, len(ranks) + 1))


def compact_ranks(
    links: list[TranslationLink], direction: str
) -> list[TranslationLink]:
    """Reassign 1..k preserving current order; used after deletions."""
    ordered = sorted(links, key=lambda l: l.rank(direction))
    return [link.with_rank(direction, i) for i, link in enumerate(ordered, start=1)]


def apply_permutation(
    links: list[TranslationLink], direction: str, new_order: list[str]
) -> list[TranslationLink]:
    """Reassign ranks 1..k following `new_order` (a permutation of the link ids).

    Raises ValueError naming missing/extra/duplicate ids; the opposite
    direction's ranks are untouched.
    """
    by_id = {link.id: link for link in links}
    if len(set(new_order)) != len(new_order):
        raise ValueError("duplicate link ids in new order")
    missing = set(by_id) - set(new_order)
    extra = set(new_order) - set(by_id)
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"missing {sorted(missing)}")
        if extra:
            parts.append(f"unknown {sorted(extra)}")
        raise ValueError("new order is not a permutation: " + ", ".join(parts))
    return [by_id[link_id].with_rank(direction, i) for i, link_id in enumerate(new_order, 1)]
