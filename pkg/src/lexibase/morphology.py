"""Inflectional paradigm generation.

Paradigms are declarative data, not code: a ParadigmSpec lists one slot per
inflected form of a (language, pos, inflection class), each slot holding a
feature bundle, an ending, an optional stem-rewrite rule and a principal-part
stem selector. Generating a paradigm is the concatenation of the (possibly
rewritten) stem with each slot's ending; irregular forms are per-bundle
overrides on the entry, never extra slots.

Spec and rule files (UTF-8 text, see docs/FORMATS.md):

    paradigm LT noun d1          # header: paradigm <lang> <pos> <class>
    case=NOM,number=SG<TAB>as    # slot: bundle, ending[, rule[, stem index]]
    ...

    rule lt-palatal              # rules live in sibling .rules files
    step d$ -> dž                # regex pattern (end-anchored) -> replacement
    step t$ -> č
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

from .features import FeatureBundle, FeatureError, NON_INFLECTING_POS, parse_bundle
from .textnorm import nfc

if TYPE_CHECKING:  # pragma: no cover
    from .model import LexicalEntry

GENERATED = "GENERATED"
OVERRIDE = "OVERRIDE"

DEFECTIVENESS_VALUES = ("none", "singular-only", "plural-only")


class SpecFormatError(ValueError):
    """Malformed spec/rule file; carries source name and line number."""

    def __init__(self, message: str, source: str = "<spec>", line: int = 0):
        super().__init__(f"{source}:{line}: {message}" if line else f"{source}: {message}")
        self.source = source
        self.line = line


class DuplicateSpecError(ValueError):
    """Duplicate (language, pos, class), duplicate slot bundle, or duplicate rule id."""


class UnknownClassError(LookupError):
    """Entry references an inflection class or stem rule absent from the registry."""


class GenerationError(ValueError):
    """Entry data cannot be inflected: bad override bundle or missing principal part."""


@dataclass(frozen=True)
class StemStep:
    pattern: str
    replacement: str
    regex: re.Pattern = field(repr=False, compare=False, hash=False, default=None)  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "regex", re.compile(f"(?:{self.pattern})$"))


@dataclass(frozen=True)
class StemRule:
    """Ordered suffix rewrites; at most the first matching step fires."""

    id: str
    steps: tuple[StemStep, ...] = ()


@dataclass(frozen=True)
class Slot:
    features: FeatureBundle
    ending: str = ""
    stem_rule: str | None = None
    stem_selector: int = 1  # 1-based principal-part index


@dataclass(frozen=True)
class ParadigmSpec:
    language: str
    pos: str
    inflection_class: str
    slots: tuple[Slot, ...]

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.language, self.pos, self.inflection_class)

    def slot_for(self, features: FeatureBundle) -> Slot | None:
        for slot in self.slots:
            if slot.features == features:
                return slot
        return None

    def max_stem_selector(self) -> int:
        return max((s.stem_selector for s in self.slots), default=1)


@dataclass(frozen=True)
class GeneratedForm:
    features: FeatureBundle
    surface: str
    origin: str = GENERATED


def apply_stem_rule(stem: str, rule: StemRule) -> str:
    """Rewrite the end of `stem` per the first matching step; no match keeps it.

    Total and deterministic. A step whose rewrite would empty the stem is
    treated as non-matching so a non-empty stem never becomes empty.
    """
    for step in rule.steps:
        m = step.regex.search(stem)
        if m is None:
            continue
        rewritten = stem[: m.start()] + m.expand(step.replacement)
        if rewritten:
            return rewritten
    return stem


class ParadigmRegistry:
    """Loaded, immutable collection of paradigm specs and stem rules."""

    def __init__(self, specs: Iterable[ParadigmSpec] = (), rules: Iterable[StemRule] = ()):
        self._specs: dict[tuple[str, str, str], ParadigmSpec] = {}
        self._rules: dict[str, StemRule] = {}
        for rule in rules:
            if rule.id in self._rules:
                raise DuplicateSpecError(f"duplicate stem rule {rule.id!r}")
            self._rules[rule.id] = rule
        for spec in specs:
            self._add_spec(spec)

    def _add_spec(self, spec: ParadigmSpec) -> None:
        if spec.key in self._specs:
            raise DuplicateSpecError(
                "duplicate paradigm spec %s %s %s" % spec.key
            )
        seen: set[FeatureBundle] = set()
        for slot in spec.slots:
            if slot.features in seen:
                raise DuplicateSpecError(
                    f"duplicate slot {slot.features.canonical() or '(empty)'} "
                    f"in {spec.language} {spec.pos} {spec.inflection_class}"
                )
            seen.add(slot.features)
            if slot.stem_rule is not None and slot.stem_rule not in self._rules:
                raise UnknownClassError(
                    f"spec {spec.inflection_class!r} references unknown stem rule {slot.stem_rule!r}"
                )
        self._specs[spec.key] = spec

    def has_class(self, language: str, pos: str, inflection_class: str) -> bool:
        return (language, pos, inflection_class) in self._specs

    def spec(self, language: str, pos: str, inflection_class: str) -> ParadigmSpec:
        try:
            return self._specs[(language, pos, inflection_class)]
        except KeyError:
            raise UnknownClassError(
                f"no paradigm spec for {language} {pos} class {inflection_class!r}"
            ) from None

    def rule(self, rule_id: str) -> StemRule:
        try:
            return self._rules[rule_id]
        except KeyError:
            raise UnknownClassError(f"unknown stem rule {rule_id!r}") from None

    def specs(self) -> list[ParadigmSpec]:
        return list(self._specs.values())

    def rules(self) -> list[StemRule]:
        return list(self._rules.values())

    def classes_for(self, language: str, pos: str) -> list[str]:
        return sorted(
            cls for (lang, p, cls) in self._specs if lang == language and p == pos
        )


def _placeholder(tok: str) -> str:
    return "" if tok == "-" else tok


def parse_rules_text(text: str, source: str = "<rules>") -> list[StemRule]:
    rules: list[StemRule] = []
    current_id: str | None = None
    steps: list[StemStep] = []

    def flush():
        if current_id is not None:
            rules.append(StemRule(current_id, tuple(steps)))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("rule "):
            flush()
            current_id = line[5:].strip()
            if not current_id:
                raise SpecFormatError("rule with empty id", source, lineno)
            steps = []
        elif line.startswith("step "):
            if current_id is None:
                raise SpecFormatError("step before any rule header", source, lineno)
            body = line[5:]
            if " -> " not in body:
                raise SpecFormatError("step must be '<pattern> -> <replacement>'", source, lineno)
            pattern, _, replacement = body.partition(" -> ")
            pattern = pattern.strip()
            replacement = _placeholder(replacement.strip())
            try:
                steps.append(StemStep(pattern, replacement))
            except re.error as e:
                raise SpecFormatError(f"bad pattern {pattern!r}: {e}", source, lineno) from None
        else:
            raise SpecFormatError(f"unrecognized line {line!r}", source, lineno)
    flush()
    return rules


def parse_paradigm_text(text: str, source: str = "<paradigm>") -> ParadigmSpec:
    """Parse one paradigm document: header line, then one slot per line."""
    language = pos = cls = None
    slots: list[Slot] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if language is None:
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "paradigm":
                raise SpecFormatError(
                    "expected header 'paradigm <lang> <pos> <class>'", source, lineno
                )
            _, language, pos, cls = parts
            if language not in ("EN", "LT"):
                raise SpecFormatError(f"unknown language {language!r}", source, lineno)
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            raise SpecFormatError("slot needs '<features>\\t<ending>'", source, lineno)
        try:
            bundle = parse_bundle(fields[0])
            bundle.check_licensed(pos)
        except FeatureError as e:
            raise SpecFormatError(str(e), source, lineno) from None
        ending = nfc(_placeholder(fields[1].strip()))
        rule_id = _placeholder(fields[2].strip()) if len(fields) > 2 else ""
        selector_tok = _placeholder(fields[3].strip()) if len(fields) > 3 else ""
        try:
            selector = int(selector_tok) if selector_tok else 1
        except ValueError:
            raise SpecFormatError(f"bad stem index {selector_tok!r}", source, lineno) from None
        if not 1 <= selector <= 3:
            raise SpecFormatError("stem index must be 1..3", source, lineno)
        slots.append(Slot(bundle, ending, rule_id or None, selector))
    if language is None:
        raise SpecFormatError("empty paradigm document", source)
    return ParadigmSpec(language, pos, cls, tuple(slots))


def load_paradigm_specs(
    paradigm_sources: Sequence[Path | str] = (),
    rule_sources: Sequence[Path | str] = (),
) -> ParadigmRegistry:
    """Load spec/rule files into a fresh registry.

    Any parse error or duplicate key fails the whole load. Sources may be
    paths or raw text (anything containing a newline is treated as text).
    """

    def read(src: Path | str) -> tuple[str, str]:
        if isinstance(src, Path) or "\n" not in str(src):
            p = Path(src)
            return p.read_text(encoding="utf-8"), p.name
        return str(src), "<text>"

    rules: list[StemRule] = []
    for src in rule_sources:
        text, name = read(src)
        rules.extend(parse_rules_text(text, name))
    specs: list[ParadigmSpec] = []
    for src in paradigm_sources:
        text, name = read(src)
        specs.append(parse_paradigm_text(text, name))
    return ParadigmRegistry(specs, rules)


def serialize_paradigm(spec: ParadigmSpec) -> str:
    """Inverse of parse_paradigm_text, byte-stable modulo comments/blank lines."""
    lines = [f"paradigm {spec.language} {spec.pos} {spec.inflection_class}"]
    for slot in spec.slots:
        fields = [slot.features.canonical() or "-", slot.ending or "-"]
        if slot.stem_rule or slot.stem_selector != 1:
            fields.append(slot.stem_rule or "-")
        if slot.stem_selector != 1:
            fields.append(str(slot.stem_selector))
        lines.append("\t".join(fields))
    return "\n".join(lines) + "\n"


def serialize_rules(rules: Sequence[StemRule]) -> str:
    lines: list[str] = []
    for rule in rules:
        lines.append(f"rule {rule.id}")
        for step in rule.steps:
            lines.append(f"step {step.pattern} -> {step.replacement or '-'}")
    return "\n".join(lines) + "\n"


def _suppressed(features: FeatureBundle, defectiveness: str) -> bool:
    number = features.get("number")
    if defectiveness == "singular-only":
        return number == "PL"
    if defectiveness == "plural-only":
        return number == "SG"
    return False


def generate_paradigm(entry: "LexicalEntry", registry: ParadigmRegistry) -> list[GeneratedForm]:
    """All inflected forms of `entry`, in spec slot order.

    Slots suppressed by the entry's defectiveness flag are dropped; override
    surfaces replace generated ones for their exact bundle. Non-inflecting
    POS yield an empty paradigm.
    """
    if entry.pos in NON_INFLECTING_POS:
        return []
    if not entry.inflection_class:
        raise UnknownClassError(f"entry {entry.lemma!r} ({entry.pos}) has no inflection class")
    spec = registry.spec(entry.language, entry.pos, entry.inflection_class)

    for bundle in entry.overrides:
        if spec.slot_for(bundle) is None:
            raise GenerationError(
                f"override {bundle.canonical() or '(empty)'} matches no slot of "
                f"class {entry.inflection_class!r}"
            )

    forms: list[GeneratedForm] = []
    for slot in spec.slots:
        if _suppressed(slot.features, entry.defectiveness):
            continue
        override = entry.overrides.get(slot.features)
        if override is not None:
            forms.append(GeneratedForm(slot.features, override, OVERRIDE))
            continue
        try:
            stem = entry.stems[slot.stem_selector - 1]
        except IndexError:
            raise GenerationError(
                f"entry {entry.lemma!r} lacks principal part {slot.stem_selector} "
                f"required by class {entry.inflection_class!r}"
            ) from None
        if slot.stem_rule is not None:
            stem = apply_stem_rule(stem, registry.rule(slot.stem_rule))
        forms.append(GeneratedForm(slot.features, stem + slot.ending, GENERATED))
    return forms


def inflect(
    entry: "LexicalEntry", features: FeatureBundle, registry: ParadigmRegistry
) -> GeneratedForm | None:
    """The unique paradigm member carrying `features`, or None if absent/suppressed."""
    for form in generate_paradigm(entry, registry):
        if form.features == features:
            return form
    return None
