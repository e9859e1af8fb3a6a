"""Detaching the proclitic conjunction "و" (w, and) from host words.

Writers frequently glue the conjunction onto the following word
(e.g. "وقال" = "و" + "قال").  A lookup-table classifier splits the prefix
off exactly when the remainder is a known word form.  Two guards keep the
split conservative and make the operation idempotent:

* a candidate must be at least 3 characters long, so the remainder is a
  plausible word of >= 2 characters;
* a token that is itself a lexicon entry is never split (full-word entry
  wins).  This also guarantees idempotence: every token produced by a
  split is either "و" (too short) or a lexicon entry (protected).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .arabic import normalize

logger = logging.getLogger(__name__)

WAW = "و"  # و

__all__ = ["WAW", "WawLexicon", "load_lexicon", "split_waw", "wawanize_turn"]


def _is_arabic_script(word: str) -> bool:
    return all("؀" <= ch <= "ۿ" for ch in word)


@dataclass(frozen=True)
class WawLexicon:
    """Immutable set of normalized word forms accepted as split remainders."""

    words: frozenset[str]
    source: str = "<memory>"

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_words(cls, words, source: str = "<memory>") -> "WawLexicon":
        """Build a lexicon in memory; entries are normalized, "و" dropped."""
        normalized = {normalize(w) for w in words}
        normalized.discard(WAW)
        normalized.discard("")
        return cls(words=frozenset(normalized), source=source)


def load_lexicon(path) -> WawLexicon:
    """Load a one-word-per-line UTF-8 lexicon file.

    ``#``-prefixed lines are comments.  Entries are normalized on load and
    de-duplicated; lines that are not Arabic script (or are the bare
    conjunction) are skipped with a warning naming the line.
    """
    words: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word = normalize(line)
            if not word or not _is_arabic_script(word) or " " in word:
                logger.warning("%s:%d: skipping non-Arabic entry %r",
                               path, line_no, line)
                continue
            if word == WAW:
                logger.warning("%s:%d: skipping bare conjunction entry",
                               path, line_no)
                continue
            words.add(word)
    logger.info("loaded %d lexicon entries from %s", len(words), path)
    return WawLexicon(words=frozenset(words), source=str(path))


def split_waw(token: str, lexicon: WawLexicon) -> list[str]:
    """Split a leading "و" off ``token`` if the remainder is a known word.

    Returns ``["و", rest]`` on a split, otherwise ``[token]`` unchanged.
    """
    if len(token) >= 3 and token.startswith(WAW) and token not in lexicon:
        rest = token[1:]
        if rest in lexicon:
            return [WAW, rest]
    return [token]


def wawanize_turn(tokens, lexicon: WawLexicon) -> list[str]:
    """Apply :func:`split_waw` to every token, preserving order."""
    out: list[str] = []
    for token in tokens:
        out.extend(split_waw(token, lexicon))
    return out
