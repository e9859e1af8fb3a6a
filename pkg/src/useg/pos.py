"""Per-token part-of-speech evidence: conjunction / noun / proper-noun flags.

The classifier only ever consumes three boolean signals per token, so a
full morphological analyzer is not required.  Two interchangeable sources
are provided:

* :class:`LexiconPosProvider` -- closed word lists shipped with the
  package (conjunctions and a small proper-noun gazetteer); everything
  else is tagged ``UNK`` with all flags off.
* :func:`gold_pos_from_corpus` -- derives flags from raw analyzer tags
  stored in a corpus file's POS column, using a configurable
  prefix-to-signal mapping so any tagset can be plugged in.

Providers are deterministic and immutable after construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from typing import Protocol, Sequence, runtime_checkable

from .arabic import normalize
from .errors import UsegError

logger = logging.getLogger(__name__)

UNKNOWN_TAG = "UNK"

_KINDS = ("conj", "noun", "propn")

__all__ = [
    "PosInfo",
    "PosProvider",
    "LexiconPosProvider",
    "TagMapping",
    "gold_pos_from_corpus",
    "UNKNOWN_TAG",
]


@dataclass(frozen=True)
class PosInfo:
    """POS evidence for one token.  Flags are independent signals."""

    tag: str = UNKNOWN_TAG
    is_conjunction: bool = False
    is_noun: bool = False
    is_proper_noun: bool = False


@runtime_checkable
class PosProvider(Protocol):
    """Anything that maps a token sequence to aligned :class:`PosInfo`."""

    name: str

    def tag_tokens(self, tokens: Sequence[str]) -> list[PosInfo]:
        ...


def _read_wordlist(path) -> frozenset[str]:
    words = set()
    for raw in open(path, encoding="utf-8"):
        line = raw.strip()
        if line and not line.startswith("#"):
            words.add(normalize(line))
    return frozenset(words)


@dataclass(frozen=True)
class LexiconPosProvider:
    """Closed-list tagger: conjunction and proper-noun membership only.

    Word lists hold normalized forms (``from_files`` normalizes on
    load); lookups normalize each token, so callers may pass raw text.
    """

    conjunctions: frozenset[str]
    proper_nouns: frozenset[str]
    name: str = "lexicon"

    @classmethod
    def from_files(cls, conjunctions_path=None, proper_nouns_path=None
                   ) -> "LexiconPosProvider":
        """Load word lists, defaulting to the packaged ones."""
        data = resources.files("useg.data")
        conj = _read_wordlist(conjunctions_path
                              or data.joinpath("conjunctions.txt"))
        propn = _read_wordlist(proper_nouns_path
                               or data.joinpath("proper_nouns.txt"))
        return cls(conjunctions=conj, proper_nouns=propn)

    def tag_tokens(self, tokens: Sequence[str]) -> list[PosInfo]:
        infos = []
        for token in tokens:
            word = normalize(token)
            if word in self.conjunctions:
                infos.append(PosInfo(tag="CONJ", is_conjunction=True))
            elif word in self.proper_nouns:
                infos.append(PosInfo(tag="NOUN_PROP", is_proper_noun=True))
            else:
                infos.append(PosInfo())
        return infos


@dataclass(frozen=True)
class TagMapping:
    """Prefix rules translating raw analyzer tags into the three flags."""

    rules: tuple[tuple[str, str], ...]  # (prefix, kind), longest first
    source: str = "<memory>"

    @classmethod
    def load(cls, path) -> "TagMapping":
        """Parse ``TAGPREFIX=conj|noun|propn`` lines."""
        rules = []
        for line_no, raw in enumerate(open(path, encoding="utf-8"), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsegError(f"{path}:{line_no}: expected TAGPREFIX=kind")
            prefix, _, kind = line.partition("=")
            prefix, kind = prefix.strip(), kind.strip()
            if not prefix or kind not in _KINDS:
                raise UsegError(
                    f"{path}:{line_no}: kind must be one of {'|'.join(_KINDS)}"
                )
            rules.append((prefix, kind))
        rules.sort(key=lambda r: len(r[0]), reverse=True)
        return cls(rules=tuple(rules), source=str(path))

    @classmethod
    def default(cls) -> "TagMapping":
        return cls.load(resources.files("useg.data").joinpath("tagmap.cfg"))

    def classify(self, raw_tag: str) -> PosInfo | None:
        """Return flags for ``raw_tag``, or None if no prefix matches."""
        for prefix, kind in self.rules:
            if raw_tag.startswith(prefix):
                return PosInfo(
                    tag=raw_tag,
                    is_conjunction=kind == "conj",
                    is_noun=kind == "noun",
                    is_proper_noun=kind == "propn",
                )
        return None


def gold_pos_from_corpus(raw_tags: Sequence[str | None],
                         mapping: TagMapping) -> list[PosInfo]:
    """Derive flags from raw analyzer tags via ``mapping``.

    Empty or missing tags get all flags off; an unmapped tag does too,
    with one warning per distinct tag name per call.
    """
    infos = []
    warned: set[str] = set()
    for raw in raw_tags:
        raw = raw or ""
        if not raw:
            infos.append(PosInfo(tag=""))
            continue
        info = mapping.classify(raw)
        if info is None:
            if raw not in warned:
                logger.warning("no mapping rule for POS tag %r", raw)
                warned.add(raw)
            info = PosInfo(tag=raw)
        infos.append(info)
    return infos
