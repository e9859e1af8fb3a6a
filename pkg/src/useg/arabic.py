"""Arabic character unification and reversible ASCII transliteration.

Two character-level rewrites used by every other stage:

1. ``normalize`` unifies the characters that transcribers spell
   inconsistently and collapses whitespace runs:
     a. Alif variants with Hamza/Madda (أ إ آ) -> bare Alif (ا)
     b. Teh-Marbuta (ة) -> Heh (ه)
     c. Alif-Maksura (ى) -> Yeh (ي)
   Nothing else is touched; in particular diacritics survive.
2. ``to_buckwalter`` / ``from_buckwalter`` convert between Arabic script
   and the Buckwalter ASCII scheme.  The scheme ships as a versioned TSV
   (``data/buckwalter.tsv``) so the mapping is bit-exact and auditable.

All functions are pure; text is canonicalized to Unicode NFC on entry.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from importlib import resources

from .errors import CorpusFormatError, TransliterationError

__all__ = [
    "normalize",
    "to_buckwalter",
    "from_buckwalter",
    "TransliterationTable",
    "default_table",
]

# Rule (a): Hamza-under-Alif, Hamza-over-Alif, Madda-over-Alif -> Alif.
# Rule (b): Teh-Marbuta -> Heh.  Rule (c): Alif-Maksura -> Yeh.
_CHAR_RULES = str.maketrans({
    "أ": "ا",  # أ -> ا
    "إ": "ا",  # إ -> ا
    "آ": "ا",  # آ -> ا
    "ة": "ه",  # ة -> ه
    "ى": "ي",  # ى -> ي
})

_WS_RUN = re.compile(r"\s+")

# Codepoints that must be present in any usable transliteration table:
# the 28 base letters, the Hamza forms, Teh-Marbuta, Alif-Maksura, the
# short-vowel/tanween/shadda/sukun diacritics, and Tatweel.
_REQUIRED_CODEPOINTS = (
    list(range(0x0621, 0x063B)) + [0x0640] + list(range(0x0641, 0x0653))
)


def normalize(text: str) -> str:
    """Return the canonical form of ``text``.

    NFC first, then the three character rules, then whitespace runs
    collapsed to single spaces with outer whitespace stripped.  Idempotent.
    """
    text = unicodedata.normalize("NFC", text)
    text = text.translate(_CHAR_RULES)
    return _WS_RUN.sub(" ", text).strip()


@dataclass(frozen=True)
class TransliterationTable:
    """Bidirectional Arabic <-> Buckwalter character maps.

    ``forward`` maps Arabic codepoints to ASCII symbols and is injective;
    ``reverse`` is its exact inverse.
    """

    forward: dict[str, str]
    reverse: dict[str, str]

    @classmethod
    def from_tsv(cls, path) -> "TransliterationTable":
        """Load a table from a TSV of (codepoint-hex, glyph, ASCII) rows."""
        forward: dict[str, str] = {}
        reverse: dict[str, str] = {}
        with open(path, encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                fields = line.split("\t")
                if len(fields) != 3:
                    raise CorpusFormatError(
                        f"expected 3 TAB-separated fields, got {len(fields)}",
                        line=line_no,
                    )
                hexcp, glyph, ascii_sym = fields
                if chr(int(hexcp, 16)) != glyph:
                    raise CorpusFormatError(
                        f"codepoint {hexcp} does not match glyph {glyph!r}",
                        line=line_no,
                    )
                if glyph in forward or ascii_sym in reverse:
                    raise CorpusFormatError(
                        f"duplicate mapping for {glyph!r}/{ascii_sym!r}",
                        line=line_no,
                    )
                forward[glyph] = ascii_sym
                reverse[ascii_sym] = glyph
        missing = [cp for cp in _REQUIRED_CODEPOINTS if chr(cp) not in forward]
        if missing:
            raise CorpusFormatError(
                "table is missing required codepoints: "
                + ", ".join(f"U+{cp:04X}" for cp in missing)
            )
        return cls(forward=forward, reverse=reverse)


_DEFAULT_TABLE: TransliterationTable | None = None


def default_table() -> TransliterationTable:
    """The packaged Buckwalter table, loaded once."""
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        path = resources.files("useg.data").joinpath("buckwalter.tsv")
        _DEFAULT_TABLE = TransliterationTable.from_tsv(path)
    return _DEFAULT_TABLE


def to_buckwalter(text: str, table: TransliterationTable | None = None) -> str:
    """Transliterate Arabic script to Buckwalter ASCII.

    Unmapped codepoints (digits, Latin code-switched words, punctuation)
    pass through unchanged, so the function is total.
    """
    table = table or default_table()
    text = unicodedata.normalize("NFC", text)
    return "".join(table.forward.get(ch, ch) for ch in text)


def from_buckwalter(text: str, table: TransliterationTable | None = None) -> str:
    """Transliterate Buckwalter ASCII back to Arabic script.

    Whitespace and digits pass through; any other symbol without a
    reverse mapping raises :class:`TransliterationError` with its position.
    """
    table = table or default_table()
    out = []
    for pos, ch in enumerate(text):
        if ch in table.reverse:
            out.append(table.reverse[ch])
        elif ch.isspace() or ch.isdigit():
            out.append(ch)
        else:
            raise TransliterationError(ch, pos)
    return "".join(out)
