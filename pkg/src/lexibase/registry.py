"""Loader for the paradigm specs and stem rules shipped under data/."""
from __future__ import annotations

from pathlib import Path

from .morphology import ParadigmRegistry, load_paradigm_specs

DATA_DIR = Path(__file__).parent / "data"

_shipped: ParadigmRegistry | None = None


def shipped_registry() -> ParadigmRegistry:
    """The registry built from the shipped data files; loaded once, immutable."""
    global _shipped
    if _shipped is None:
        _shipped = load_paradigm_specs(
            sorted(DATA_DIR.glob("*.paradigms")),
            sorted(DATA_DIR.glob("*.rules")),
        )
    return _shipped
