"""Sparse sliding-window features for token-level segmentation tagging.

Every feature is a binary indicator named by a string:

    W[-2]=AftH      word (Buckwalter form) two positions to the left
    W[0]=w          the word being tagged
    CONJ[0]         the word being tagged is a conjunction
    NOUN[+1]        the next word is a noun
    PROPN[-1]       the previous word is a proper noun
    T[-1]=I-Seg     previously assigned tag, one position back
    B[-1]=HsAb~w    adjacent-word bigram (only with bigrams enabled)

Out-of-range word slots read ``<PAD>``; out-of-range tag slots read
``<BOS>``.  Offsets render as ``0`` or with an explicit sign (``-2``,
``+1``).  Word features are taken over Buckwalter transliterations, so
feature names stay ASCII.  POS flags fire at every window offset where
the property holds.

An :class:`Alphabet` interns feature strings to dense indices in first
occurrence order.  Training grows it; at prediction time it is frozen
and unseen features are silently dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import UsegError
from .pos import PosInfo

__all__ = [
    "PAD", "BOS",
    "FeatureTemplate", "Alphabet", "FeatureVector",
    "feature_strings", "extract", "build_alphabet",
]

PAD = "<PAD>"
BOS = "<BOS>"

MAX_WINDOW = 5
MAX_PREV_TAGS = 5

_WINDOW_SPEC_RE = re.compile(r"^-(\d+)/\+(\d+)$")


def _fmt_offset(offset: int) -> str:
    return "0" if offset == 0 else f"{offset:+d}"


@dataclass(frozen=True)
class FeatureTemplate:
    """Which features to extract; fully determines the feature space.

    ``window_before``/``window_after`` count word slots on each side of
    the focus token (1..5 each, the sweep range).  ``n_prev_tags``
    counts how many already assigned tags to condition on (0..5).
    ``use_pos`` gates the CONJ/NOUN/PROPN flags; ``bigrams`` adds
    adjacent word-pair features over the window.
    """

    window_before: int = 2
    window_after: int = 2
    n_prev_tags: int = 3
    use_pos: bool = True
    bigrams: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.window_before <= MAX_WINDOW:
            raise UsegError(
                f"window_before must be 1..{MAX_WINDOW}, "
                f"got {self.window_before}"
            )
        if not 1 <= self.window_after <= MAX_WINDOW:
            raise UsegError(
                f"window_after must be 1..{MAX_WINDOW}, "
                f"got {self.window_after}"
            )
        if not 0 <= self.n_prev_tags <= MAX_PREV_TAGS:
            raise UsegError(
                f"n_prev_tags must be 0..{MAX_PREV_TAGS}, "
                f"got {self.n_prev_tags}"
            )

    @property
    def window_spec(self) -> str:
        """The window as it appears on the command line, e.g. ``-2/+2``."""
        return f"-{self.window_before}/+{self.window_after}"

    @classmethod
    def parse_window(cls, spec: str) -> tuple[int, int]:
        m = _WINDOW_SPEC_RE.match(spec.strip())
        if not m:
            raise UsegError(
                f"bad window spec {spec!r} (expected e.g. -2/+2)"
            )
        return int(m.group(1)), int(m.group(2))

    def to_string(self) -> str:
        return (f"window={self.window_spec} prev_tags={self.n_prev_tags} "
                f"use_pos={int(self.use_pos)} bigrams={int(self.bigrams)}")

    @classmethod
    def from_string(cls, text: str) -> "FeatureTemplate":
        fields = dict(
            part.split("=", 1) for part in text.split() if "=" in part
        )
        try:
            before, after = cls.parse_window(fields["window"])
            return cls(
                window_before=before,
                window_after=after,
                n_prev_tags=int(fields["prev_tags"]),
                use_pos=bool(int(fields["use_pos"])),
                bigrams=bool(int(fields["bigrams"])),
            )
        except (KeyError, ValueError) as exc:
            raise UsegError(f"bad template line {text!r}: {exc}") from None


@dataclass(frozen=True)
class FeatureVector:
    """Sorted, duplicate-free indices of the active binary features."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "indices", tuple(sorted(set(self.indices)))
        )

    def __len__(self) -> int:
        return len(self.indices)


class Alphabet:
    """Bijection between feature strings and dense indices.

    Indices are assigned in first occurrence order.  Once frozen, the
    mapping is immutable; encoding then drops unseen features instead of
    growing the index space.
    """

    def __init__(self) -> None:
        self._index: dict[str, int] = {}
        self._items: list[str] = []
        self._frozen = False

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __contains__(self, feature: str) -> bool:
        return feature in self._index

    def __getitem__(self, index: int) -> str:
        return self._items[index]

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> None:
        self._frozen = True

    def intern(self, feature: str) -> int:
        """Index of ``feature``, allocating one if the alphabet is open."""
        index = self._index.get(feature)
        if index is not None:
            return index
        if self._frozen:
            raise UsegError(
                f"alphabet is frozen; unseen feature {feature!r}"
            )
        index = len(self._items)
        self._index[feature] = index
        self._items.append(feature)
        return index

    def lookup(self, feature: str) -> int | None:
        return self._index.get(feature)

    def encode(self, features: Iterable[str]) -> FeatureVector:
        """Map feature strings to indices; drops unseen once frozen."""
        if self._frozen:
            indices = [i for i in map(self._index.get, features)
                       if i is not None]
        else:
            indices = [self.intern(f) for f in features]
        return FeatureVector(indices=tuple(indices))

    @classmethod
    def from_items(cls, items: Sequence[str]) -> "Alphabet":
        alphabet = cls()
        for item in items:
            alphabet.intern(item)
        return alphabet


def feature_strings(
    bw_tokens: Sequence[str],
    pos_infos: Sequence[PosInfo],
    position: int,
    prev_tags: Sequence[str],
    template: FeatureTemplate,
) -> list[str]:
    """Features for the token at ``position`` in one turn.

    ``bw_tokens`` are the Buckwalter forms; ``pos_infos`` aligns with
    them.  ``prev_tags`` holds the tag strings already assigned to
    positions ``0..position-1`` (gold during training, predicted during
    decoding); only the last ``template.n_prev_tags`` entries are used.
    """
    n = len(bw_tokens)
    if len(pos_infos) != n:
        raise UsegError(
            f"{len(pos_infos)} POS entries for {n} tokens"
        )
    if not 0 <= position < n:
        raise UsegError(f"position {position} out of range 0..{n - 1}")
    if len(prev_tags) != position:
        raise UsegError(
            f"expected {position} previous tags, got {len(prev_tags)}"
        )

    offsets = range(-template.window_before, template.window_after + 1)

    def word_at(offset: int) -> str:
        j = position + offset
        return bw_tokens[j] if 0 <= j < n else PAD

    features = [
        f"W[{_fmt_offset(o)}]={word_at(o)}" for o in offsets
    ]
    if template.bigrams:
        features.extend(
            f"B[{_fmt_offset(o)}]={word_at(o)}~{word_at(o + 1)}"
            for o in range(-template.window_before, template.window_after)
        )
    if template.use_pos:
        for o in offsets:
            j = position + o
            if not 0 <= j < n:
                continue
            info = pos_infos[j]
            tail = f"[{_fmt_offset(o)}]"
            if info.is_conjunction:
                features.append("CONJ" + tail)
            if info.is_noun:
                features.append("NOUN" + tail)
            if info.is_proper_noun:
                features.append("PROPN" + tail)
    for k in range(1, template.n_prev_tags + 1):
        tag = prev_tags[position - k] if position - k >= 0 else BOS
        features.append(f"T[-{k}]={tag}")
    return features


def extract(
    bw_tokens: Sequence[str],
    pos_infos: Sequence[PosInfo],
    prev_tags: Sequence[str],
    position: int,
    template: FeatureTemplate,
    alphabet: Alphabet,
) -> FeatureVector:
    """Encode the features of one position against ``alphabet``.

    While the alphabet is open new features grow it; once frozen they
    are dropped, so prediction never changes the feature space.
    """
    return alphabet.encode(feature_strings(
        bw_tokens, pos_infos, position, prev_tags, template,
    ))


def build_alphabet(
    turns: Iterable[tuple[Sequence[str], Sequence[PosInfo], Sequence[str]]],
    template: FeatureTemplate,
) -> Alphabet:
    """Frozen alphabet over every feature the training turns produce.

    Each element of ``turns`` is ``(bw_tokens, pos_infos, tag_strings)``;
    gold tags stand in for the decode-time history.
    """
    alphabet = Alphabet()
    for bw_tokens, pos_infos, tag_strings in turns:
        if len(tag_strings) != len(bw_tokens):
            raise UsegError(
                f"{len(tag_strings)} tags for {len(bw_tokens)} tokens"
            )
        for position in range(len(bw_tokens)):
            alphabet.encode(feature_strings(
                bw_tokens, pos_infos, position,
                tag_strings[:position], template,
            ))
    alphabet.freeze()
    return alphabet
