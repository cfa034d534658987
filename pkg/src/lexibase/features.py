"""Morphosyntactic feature system: features, values, POS licensing, bundles.

A FeatureBundle is an immutable, order-free assignment of values to features.
Bundles identify paradigm slots, key irregular-form overrides, and label
analyzed surface forms, so equality and hashing must not depend on the order
features were given in.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping

LANGUAGES = ("EN", "LT")

POS_VALUES = (
    "noun",
    "verb",
    "adjective",
    "pronoun",
    "numeral",
    "adverb",
    "preposition",
    "conjunction",
    "particle",
    "interjection",
)

# POS that never reference an inflection class.
NON_INFLECTING_POS = frozenset({"preposition", "conjunction", "particle", "interjection"})

CASES = ("NOM", "GEN", "DAT", "ACC", "INS", "LOC", "VOC")

# Canonical feature order; also the serialization order everywhere
# (spec files, interchange records, API payloads).
FEATURE_ORDER = (
    "case",
    "number",
    "gender",
    "degree",
    "definiteness",
    "tense",
    "mood",
    "person",
    "vform",
    "voice",
)

FEATURE_VALUES: dict[str, tuple[str, ...]] = {
    "case": CASES,
    "number": ("SG", "PL"),
    "gender": ("M", "F", "N"),
    "degree": ("POS", "CMP", "SUP"),
    "definiteness": ("SIMPLE", "PRONOMINAL"),
    "tense": ("PRES", "PAST", "PAST_FREQ", "FUT"),
    "mood": ("IND", "SBJV", "IMP"),
    "person": ("1", "2", "3"),
    "vform": ("FINITE", "INF", "PARTICIPLE"),
    "voice": ("ACT", "PASS"),
}

# Which features may appear in a bundle for a given POS. Verbs are licensed
# generously because declined participles behave adjectivally.
LICENSED_FEATURES: dict[str, frozenset[str]] = {
    "noun": frozenset({"case", "number"}),
    "adjective": frozenset({"case", "number", "gender", "degree", "definiteness"}),
    "verb": frozenset(
        {"case", "number", "gender", "degree", "tense", "mood", "person", "vform", "voice"}
    ),
    "pronoun": frozenset({"case", "number", "gender", "person"}),
    "numeral": frozenset({"case", "number", "gender"}),
    "adverb": frozenset({"degree"}),
    "preposition": frozenset(),
    "conjunction": frozenset(),
    "particle": frozenset(),
    "interjection": frozenset(),
}

_FEATURE_RANK = {name: i for i, name in enumerate(FEATURE_ORDER)}


class FeatureError(ValueError):
    """Unknown feature, unknown value, duplicate feature, or licensing violation."""


class FeatureBundle:
    """Immutable mapping of feature name -> value, canonically ordered.

    Equal iff the assignments are identical, regardless of construction order.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, assignments: Mapping[str, str] | Iterable[tuple[str, str]] = (), **kw: str):
        pairs: list[tuple[str, str]] = []
        if isinstance(assignments, Mapping):
            pairs.extend(assignments.items())
        else:
            pairs.extend(assignments)
        pairs.extend(kw.items())
        seen: dict[str, str] = {}
        for feat, value in pairs:
            if feat not in FEATURE_VALUES:
                raise FeatureError(f"unknown feature {feat!r}")
            value = str(value)
            if value not in FEATURE_VALUES[feat]:
                raise FeatureError(f"bad value {value!r} for feature {feat!r}")
            if feat in seen and seen[feat] != value:
                raise FeatureError(f"feature {feat!r} assigned twice")
            seen[feat] = value
        items = tuple(sorted(seen.items(), key=lambda kv: _FEATURE_RANK[kv[0]]))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_hash", hash(items))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FeatureBundle is immutable")

    def get(self, feature: str, default: str | None = None) -> str | None:
        for feat, value in self._items:
            if feat == feature:
                return value
        return default

    def __contains__(self, feature: str) -> bool:
        return self.get(feature) is not None

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureBundle):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FeatureBundle({self.canonical() or 'empty'})"

    def items(self) -> tuple[tuple[str, str], ...]:
        return self._items

    def to_dict(self) -> dict[str, str]:
        return dict(self._items)

    def canonical(self) -> str:
        """Canonical text form, e.g. ``case=GEN,number=SG``; empty bundle -> ``""``."""
        return ",".join(f"{f}={v}" for f, v in self._items)

    def merged(self, **kw: str) -> "FeatureBundle":
        d = self.to_dict()
        d.update(kw)
        return FeatureBundle(d)

    def check_licensed(self, pos: str) -> None:
        """Raise FeatureError if any feature is not licensed for `pos`."""
        licensed = LICENSED_FEATURES.get(pos)
        if licensed is None:
            raise FeatureError(f"unknown part of speech {pos!r}")
        for feat, _ in self._items:
            if feat not in licensed:
                raise FeatureError(f"feature {feat!r} not licensed for {pos}")


EMPTY_BUNDLE = FeatureBundle()


def parse_bundle(text: str) -> FeatureBundle:
    """Parse the canonical ``key=value,key=value`` form. ``""`` and ``-`` mean empty."""
    text = text.strip()
    if text in ("", "-"):
        return EMPTY_BUNDLE
    pairs = []
    seen = set()
    for chunk in text.split(","):
        if "=" not in chunk:
            raise FeatureError(f"bad feature assignment {chunk!r}")
        feat, _, value = chunk.partition("=")
        feat = feat.strip()
        if feat in seen:
            raise FeatureError(f"feature {feat!r} assigned twice")
        seen.add(feat)
        pairs.append((feat, value.strip()))
    return FeatureBundle(pairs)
