"""Unicode discipline shared across the package: NFC on ingest, casefold for matching."""
from __future__ import annotations

import unicodedata


def nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


def match_key(s: str) -> str:
    """Key used for query matching: NFC + casefold. Stored data keeps exact case."""
    return unicodedata.normalize("NFC", s).casefold()
