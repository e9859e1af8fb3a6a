"""Data model and I/O for dialogue corpora (dialogue -> turn -> utterance).

File format (UTF-8, line oriented, diff-able):

    # dialogue: D1 genre=Banks medium=Spoken
    # turn: T1 speaker=Operator
    0<TAB>مساء<TAB>msA'<TAB>_<TAB>B-Seg<TAB>Greeting
    1<TAB>الخير<TAB>Alxyr<TAB>_<TAB>I-Seg<TAB>_
    <blank line ends the turn>

Columns are INDEX SURFACE BUCKWALTER POS TAG DA.  POS and DA may be
``_``; the TAG column may be ``_`` for an untagged corpus (all rows of a
turn must agree).  A dialogue-act label may appear only on B-Seg rows.
Any other ``#`` line is a comment.

Segmentation tags and utterance spans are two views of the same thing;
:func:`tags_to_spans` and :func:`spans_to_tags` convert between them.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .arabic import to_buckwalter
from .errors import CorpusFormatError, UsegError

logger = logging.getLogger(__name__)

__all__ = [
    "SegTag", "Speaker", "Genre", "Medium",
    "Token", "Turn", "Dialogue", "CorpusSplit", "CorpusStats",
    "load_corpus", "save_corpus", "format_corpus",
    "split_corpus", "corpus_stats",
    "tags_to_spans", "spans_to_tags",
]

MISSING = "_"


class SegTag(Enum):
    """Two-way chunk label: does this token start a new utterance?"""

    BSEG = "B-Seg"
    ISEG = "I-Seg"


class Speaker(Enum):
    OPERATOR = "Operator"
    CUSTOMER = "Customer"


class Genre(Enum):
    BANKS = "Banks"
    FLIGHTS = "Flights"
    MNO = "MNO"


class Medium(Enum):
    SPOKEN = "Spoken"
    IM = "IM"


@dataclass(frozen=True)
class Token:
    """One whitespace-delimited word of a turn."""

    surface: str
    buckwalter: str
    index: int
    pos: str | None = None


@dataclass
class Turn:
    """A complete contribution by one speaker, optionally segmented."""

    dialogue_id: str
    turn_id: str
    speaker: Speaker
    tokens: list[Token]
    tags: list[SegTag] | None = None
    da_labels: list[str] | None = None

    def validate(self) -> None:
        if not self.tokens:
            raise UsegError(f"turn {self.turn_id}: no tokens")
        for position, token in enumerate(self.tokens):
            if token.index != position:
                raise UsegError(
                    f"turn {self.turn_id}: token index {token.index} "
                    f"at position {position}"
                )
        if self.tags is not None:
            if len(self.tags) != len(self.tokens):
                raise UsegError(
                    f"turn {self.turn_id}: {len(self.tags)} tags for "
                    f"{len(self.tokens)} tokens"
                )
            if self.tags[0] is not SegTag.BSEG:
                raise UsegError(
                    f"turn {self.turn_id}: first tag must be B-Seg"
                )
        if self.da_labels is not None:
            if self.tags is None:
                raise UsegError(
                    f"turn {self.turn_id}: dialogue acts without tags"
                )
            n_utts = sum(1 for t in self.tags if t is SegTag.BSEG)
            if len(self.da_labels) != n_utts:
                raise UsegError(
                    f"turn {self.turn_id}: {len(self.da_labels)} dialogue "
                    f"acts for {n_utts} utterances"
                )

    def n_utterances(self) -> int:
        """Number of utterances; an untagged turn counts as one."""
        if self.tags is None:
            return 1
        return sum(1 for t in self.tags if t is SegTag.BSEG)


@dataclass
class Dialogue:
    id: str
    genre: Genre
    medium: Medium
    turns: list[Turn] = field(default_factory=list)


@dataclass
class CorpusSplit:
    """Turn-level partition into train/dev/test."""

    train: list[Turn]
    dev: list[Turn]
    test: list[Turn]
    ratios: tuple[float, float, float]


@dataclass(frozen=True)
class CorpusStats:
    n_dialogues: int
    n_turns: int
    n_segmented_turns: int
    n_utterances: int
    n_words: int
    words_per_turn: float
    words_per_utterance: float


def tags_to_spans(tags: Sequence[SegTag]) -> list[tuple[int, int]]:
    """Utterance spans as maximal runs starting at each B-Seg."""
    if not tags:
        return []
    if tags[0] is not SegTag.BSEG:
        raise UsegError("tag sequence must start with B-Seg")
    starts = [i for i, t in enumerate(tags) if t is SegTag.BSEG]
    ends = starts[1:] + [len(tags)]
    return list(zip(starts, ends))


def spans_to_tags(spans: Sequence[tuple[int, int]]) -> list[SegTag]:
    """Inverse of :func:`tags_to_spans` for a contiguous span partition."""
    tags: list[SegTag] = []
    for start, end in spans:
        if start != len(tags) or end <= start:
            raise UsegError(f"spans are not a contiguous partition: "
                            f"({start}, {end}) at position {len(tags)}")
        tags.append(SegTag.BSEG)
        tags.extend([SegTag.ISEG] * (end - start - 1))
    return tags


_DIALOGUE_RE = re.compile(
    r"^# dialogue:\s+(?P<id>\S+)\s+genre=(?P<genre>\S+)\s+medium=(?P<medium>\S+)\s*$"
)
_TURN_RE = re.compile(r"^# turn:\s+(?P<id>\S+)\s+speaker=(?P<speaker>\S+)\s*$")


def _parse_enum(enum_cls, value: str, what: str, line: int):
    try:
        return enum_cls(value)
    except ValueError:
        valid = "|".join(e.value for e in enum_cls)
        raise CorpusFormatError(
            f"unknown {what} {value!r} (expected {valid})", line=line
        ) from None


class _TurnBuilder:
    def __init__(self, dialogue_id: str, turn_id: str, speaker: Speaker,
                 line: int):
        self.dialogue_id = dialogue_id
        self.turn_id = turn_id
        self.speaker = speaker
        self.line = line
        self.tokens: list[Token] = []
        self.raw_tags: list[str] = []
        self.raw_das: list[str] = []

    def add_row(self, fields: list[str], line: int) -> None:
        index_s, surface, buck, pos, tag, da = fields
        try:
            index = int(index_s)
        except ValueError:
            raise CorpusFormatError(f"bad token index {index_s!r}",
                                    line=line) from None
        if index != len(self.tokens):
            raise CorpusFormatError(
                f"turn {self.turn_id}: expected index {len(self.tokens)}, "
                f"got {index}", line=line,
            )
        expected = to_buckwalter(surface)
        if buck != expected:
            raise CorpusFormatError(
                f"turn {self.turn_id}: BUCKWALTER column {buck!r} does not "
                f"match transliterated surface {expected!r}", line=line,
            )
        if tag not in (SegTag.BSEG.value, SegTag.ISEG.value, MISSING):
            raise CorpusFormatError(f"unknown tag {tag!r}", line=line)
        if da != MISSING and tag != SegTag.BSEG.value:
            raise CorpusFormatError(
                f"turn {self.turn_id}: dialogue act on a non-B-Seg row",
                line=line,
            )
        self.tokens.append(Token(
            surface=surface, buckwalter=buck, index=index,
            pos=None if pos == MISSING else pos,
        ))
        self.raw_tags.append(tag)
        self.raw_das.append(da)

    def finish(self) -> Turn:
        if not self.tokens:
            raise CorpusFormatError(
                f"turn {self.turn_id}: empty turn", line=self.line
            )
        tagged = [t != MISSING for t in self.raw_tags]
        if any(tagged) and not all(tagged):
            raise CorpusFormatError(
                f"turn {self.turn_id}: mixed tagged and untagged rows",
                line=self.line,
            )
        tags = None
        da_labels = None
        if all(tagged):
            tags = [SegTag(t) for t in self.raw_tags]
            das = [da for da, tag in zip(self.raw_das, self.raw_tags)
                   if tag == SegTag.BSEG.value]
            labelled = [da != MISSING for da in das]
            if any(labelled):
                if not all(labelled):
                    raise CorpusFormatError(
                        f"turn {self.turn_id}: some utterances lack a "
                        f"dialogue act", line=self.line,
                    )
                da_labels = das
        turn = Turn(
            dialogue_id=self.dialogue_id, turn_id=self.turn_id,
            speaker=self.speaker, tokens=self.tokens,
            tags=tags, da_labels=da_labels,
        )
        try:
            turn.validate()
        except UsegError as exc:
            raise CorpusFormatError(str(exc), line=self.line) from None
        return turn


def load_corpus(path) -> list[Dialogue]:
    """Parse a corpus file into validated :class:`Dialogue` objects."""
    dialogues: list[Dialogue] = []
    current_dialogue: Dialogue | None = None
    builder: _TurnBuilder | None = None

    def close_turn():
        nonlocal builder
        if builder is not None:
            current_dialogue.turns.append(builder.finish())
            builder = None

    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                close_turn()
                continue
            m = _DIALOGUE_RE.match(line)
            if m:
                close_turn()
                current_dialogue = Dialogue(
                    id=m.group("id"),
                    genre=_parse_enum(Genre, m.group("genre"), "genre",
                                      line_no),
                    medium=_parse_enum(Medium, m.group("medium"), "medium",
                                       line_no),
                )
                dialogues.append(current_dialogue)
                continue
            m = _TURN_RE.match(line)
            if m:
                close_turn()
                if current_dialogue is None:
                    raise CorpusFormatError("turn before any dialogue header",
                                            line=line_no)
                builder = _TurnBuilder(
                    dialogue_id=current_dialogue.id,
                    turn_id=m.group("id"),
                    speaker=_parse_enum(Speaker, m.group("speaker"),
                                        "speaker", line_no),
                    line=line_no,
                )
                continue
            if line.startswith("#"):
                continue
            if builder is None:
                raise CorpusFormatError("token row outside any turn",
                                        line=line_no)
            fields = line.split("\t")
            if len(fields) != 6:
                raise CorpusFormatError(
                    f"expected 6 TAB-separated columns, got {len(fields)}",
                    line=line_no,
                )
            builder.add_row(fields, line_no)
        close_turn()

    _report_speaker_runs(dialogues)
    return dialogues


def _report_speaker_runs(dialogues: Iterable[Dialogue]) -> None:
    # Alternation is expected but not enforced; report only.
    runs = 0
    for dialogue in dialogues:
        for prev, cur in zip(dialogue.turns, dialogue.turns[1:]):
            if prev.speaker is cur.speaker:
                runs += 1
    if runs:
        logger.info("%d adjacent turn pairs share a speaker", runs)


def format_corpus(dialogues: Sequence[Dialogue]) -> str:
    """Render dialogues in the canonical column format (round-trips)."""
    lines: list[str] = []
    for dialogue in dialogues:
        lines.append(f"# dialogue: {dialogue.id} "
                     f"genre={dialogue.genre.value} "
                     f"medium={dialogue.medium.value}")
        for turn in dialogue.turns:
            turn.validate()
            lines.append(f"# turn: {turn.turn_id} "
                         f"speaker={turn.speaker.value}")
            utt = -1
            for i, token in enumerate(turn.tokens):
                tag = MISSING if turn.tags is None else turn.tags[i].value
                da = MISSING
                if turn.tags is not None and turn.tags[i] is SegTag.BSEG:
                    utt += 1
                    if turn.da_labels is not None:
                        da = turn.da_labels[utt]
                lines.append("\t".join([
                    str(token.index), token.surface, token.buckwalter,
                    token.pos if token.pos is not None else MISSING,
                    tag, da,
                ]))
            lines.append("")
    return "\n".join(lines) + ("\n" if lines else "")


def save_corpus(dialogues: Sequence[Dialogue], path) -> None:
    """Write dialogues in the canonical column format (round-trips)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_corpus(dialogues))


def _iter_turns(dialogues: Iterable[Dialogue]) -> Iterable[Turn]:
    for dialogue in dialogues:
        yield from dialogue.turns


def split_corpus(dialogues: Sequence[Dialogue],
                 ratios: tuple[float, float, float] = (0.70, 0.20, 0.10),
                 *, shuffle: bool = False, seed: int = 0) -> CorpusSplit:
    """Partition turns into train/dev/test within each genre domain.

    Within a domain, contiguous turn ranges are assigned in document
    order (train, then dev, then test), so each bucket lands within one
    turn of the exact ratio.  ``shuffle`` permutes each domain first with
    a seeded RNG; the default is the deterministic document order.
    """
    import random

    if abs(sum(ratios) - 1.0) > 1e-9:
        raise UsegError(f"ratios must sum to 1, got {ratios}")
    if any(r < 0 for r in ratios) or len(ratios) != 3:
        raise UsegError(f"expected three non-negative ratios, got {ratios}")

    by_genre: dict[Genre, list[Turn]] = {g: [] for g in Genre}
    for dialogue in dialogues:
        by_genre[dialogue.genre].extend(dialogue.turns)

    min_ratio = min(r for r in ratios if r > 0)
    buckets: tuple[list[Turn], list[Turn], list[Turn]] = ([], [], [])
    for genre in Genre:
        turns = by_genre[genre]
        if not turns:
            continue
        n = len(turns)
        if n * min_ratio < 1:
            raise UsegError(
                f"domain {genre.value} has {n} turns; too few to honor a "
                f"{min_ratio:.0%} bucket"
            )
        if shuffle:
            turns = list(turns)
            random.Random(seed).shuffle(turns)
        cut1 = int(n * ratios[0] + 0.5)
        cut2 = int(n * (ratios[0] + ratios[1]) + 0.5)
        buckets[0].extend(turns[:cut1])
        buckets[1].extend(turns[cut1:cut2])
        buckets[2].extend(turns[cut2:])
    return CorpusSplit(train=buckets[0], dev=buckets[1], test=buckets[2],
                       ratios=tuple(ratios))


def corpus_stats(dialogues: Sequence[Dialogue]) -> CorpusStats:
    """Counts by direct enumeration; never from stored constants.

    A turn is *segmented* iff it contains at least two utterances; an
    untagged turn counts as a single utterance.
    """
    n_dialogues = len(dialogues)
    n_turns = n_words = n_utterances = n_segmented = 0
    for turn in _iter_turns(dialogues):
        n_turns += 1
        n_words += len(turn.tokens)
        n_utt = turn.n_utterances()
        n_utterances += n_utt
        if n_utt >= 2:
            n_segmented += 1
    return CorpusStats(
        n_dialogues=n_dialogues,
        n_turns=n_turns,
        n_segmented_turns=n_segmented,
        n_utterances=n_utterances,
        n_words=n_words,
        words_per_turn=n_words / n_turns if n_turns else 0.0,
        words_per_utterance=n_words / n_utterances if n_utterances else 0.0,
    )


def turns_to_dialogues(turns: Sequence[Turn],
                       dialogues: Sequence[Dialogue]) -> list[Dialogue]:
    """Regroup a turn subset into dialogues, preserving metadata and order.

    Used when writing split buckets back to corpus files; a dialogue whose
    turns were divided across buckets is re-declared in each file.
    """
    meta = {d.id: d for d in dialogues}
    out: list[Dialogue] = []
    for turn in turns:
        src = meta[turn.dialogue_id]
        if not out or out[-1].id != turn.dialogue_id:
            out.append(Dialogue(id=src.id, genre=src.genre,
                                medium=src.medium))
        out[-1].turns.append(turn)
    return out
