"""lexibase: bilingual English-Lithuanian MT lexicon engine.

Paradigm generation from declarative specs, priority-ranked polysemy links,
a bidirectionally indexed single-file store with import/export/merge, plus an
HTTP API and CLI on top.
"""
from .features import FeatureBundle, FeatureError, parse_bundle
from .lookup import TranslationCandidate, analyze, prefix_search, translate
from .merge import ConflictReport, MergePolicy, merge_states, merge_stores
from .model import (
    DIRECTIONS,
    EN_TO_LT,
    LT_TO_EN,
    DomainTag,
    LexicalEntry,
    TranslationLink,
    validate_entry,
)
from .morphology import (
    GeneratedForm,
    ParadigmRegistry,
    ParadigmSpec,
    Slot,
    StemRule,
    apply_stem_rule,
    generate_paradigm,
    inflect,
    load_paradigm_specs,
)
from .registry import shipped_registry
from .store import LexiconStore, import_store, open_store

__version__ = "0.1.0"

__all__ = [
    "FeatureBundle", "FeatureError", "parse_bundle",
    "TranslationCandidate", "analyze", "prefix_search", "translate",
    "ConflictReport", "MergePolicy", "merge_states", "merge_stores",
    "DIRECTIONS", "EN_TO_LT", "LT_TO_EN",
    "DomainTag", "LexicalEntry", "TranslationLink", "validate_entry",
    "GeneratedForm", "ParadigmRegistry", "ParadigmSpec", "Slot", "StemRule",
    "apply_stem_rule", "generate_paradigm", "inflect", "load_paradigm_specs",
    "shipped_registry",
    "LexiconStore", "import_store", "open_store",
    "__version__",
]
