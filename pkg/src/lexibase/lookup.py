"""Translation, analysis, and prefix queries over a store snapshot.

All functions are read-only over an immutable StoreState and therefore freely
concurrent. Query text is matched case-insensitively (NFC + casefold); stored
data keeps its exact case.

Candidate ordering for translate() is a strict total order:
domain-matching links first (when a domain is given), then rank ascending,
then target lemma, then link id. A domain filter reorders, it never excludes.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass

from .features import FeatureBundle
from .interchange import id_sort_key
from .model import EN_TO_LT, LT_TO_EN
from .store import StoreState
from .textnorm import match_key

MATCHED_AS_LEMMA = "lemma"
MATCHED_AS_FORM = "form"


@dataclass(frozen=True)
class TranslationCandidate:
    target_entry: str
    target_lemma: str
    rank: int
    domain: str | None
    via_link: str
    matched_as: str  # lemma | form
    matched_features: FeatureBundle | None = None  # set for inflected-form matches


def source_language(direction: str) -> str:
    if direction == EN_TO_LT:
        return "EN"
    if direction == LT_TO_EN:
        return "LT"
    raise ValueError(f"bad direction {direction!r}")


def _resolve_query(state: StoreState, query: str, language: str):
    """Entry ids matching `query`, first as a lemma, else as an inflected form.

    Returns (entry_id -> matched feature bundle or None) preserving hit order.
    """
    key = match_key(query)
    matches: dict[str, FeatureBundle | None] = {}
    for entry_id in state.lemma_hits(language, key):
        matches[entry_id] = None
    if matches:
        return matches
    hits = sorted(
        state.form_hits(language, key),
        key=lambda hit: (id_sort_key(hit[0]), hit[1].canonical()),
    )
    for entry_id, bundle in hits:
        if entry_id not in matches:  # keep the first analysis per entry
            matches[entry_id] = bundle
    return matches


def translate(
    state: StoreState,
    query: str,
    direction: str,
    domain: str | None = None,
    limit: int | None = None,
) -> list[TranslationCandidate]:
    """Priority-ordered translation candidates for a surface string.

    Unknown words yield an empty list. With `domain`, links tagged with that
    domain precede all others; remaining order is by stored rank.
    """
    lang = source_language(direction)
    candidates: list[TranslationCandidate] = []
    for entry_id, matched_bundle in _resolve_query(state, query, lang).items():
        for link in state.links_for_direction(entry_id, direction):
            target = state.entries[link.target_id(direction)]
            candidates.append(
                TranslationCandidate(
                    target_entry=target.id,
                    target_lemma=target.lemma,
                    rank=link.rank(direction),
                    domain=link.domain,
                    via_link=link.id,
                    matched_as=MATCHED_AS_LEMMA if matched_bundle is None else MATCHED_AS_FORM,
                    matched_features=matched_bundle,
                )
            )
    candidates.sort(
        key=lambda c: (
            0 if (domain is not None and c.domain == domain) else 1,
            c.rank,
            c.target_lemma,
            id_sort_key(c.via_link),
        )
    )
    if limit is not None:
        candidates = candidates[: max(limit, 0)]
    return candidates


def analyze(state: StoreState, surface: str, language: str) -> list[tuple[str, FeatureBundle]]:
    """All (entry id, feature bundle) readings of a surface form; [] if none."""
    hits = list(state.form_hits(language, match_key(surface)))
    hits.sort(
        key=lambda hit: (
            state.entries[hit[0]].lemma,
            hit[1].canonical(),
            id_sort_key(hit[0]),
        )
    )
    return hits


def prefix_search(
    state: StoreState, prefix: str, language: str, limit: int = 50
) -> list[str]:
    """Lemmas whose casefolded form starts with the casefolded prefix, sorted."""
    pairs = state.sorted_lemma_pairs(language)
    key = match_key(prefix)
    lo = bisect.bisect_left(pairs, (key, ""))
    out: list[str] = []
    last = None
    for match_k, lemma in pairs[lo:]:
        if not match_k.startswith(key):
            break
        if lemma != last:
            out.append(lemma)
            last = lemma
        if len(out) >= limit:
            break
    return out
