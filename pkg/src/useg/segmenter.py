"""End-to-end turn segmentation: preprocess, decode tags, emit spans.

The decoder is greedy left-to-right.  Position 0 is always B-Seg (a
turn begins an utterance by construction, so the model never scores
it); each later position is featurized with the tags already predicted
and classified on its own.

POS information comes from the corpus POS column when the tokens carry
one, otherwise from the pipeline's provider; training and decoding use
the same rule so they see the same feature space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arabic import normalize, to_buckwalter
from .corpus import SegTag, Token, Turn, tags_to_spans
from .errors import ModelMismatchError, UsegError
from .features import FeatureTemplate, build_alphabet, extract
from .pos import PosInfo, PosProvider, TagMapping, gold_pos_from_corpus
from .svm import LinearModel, TrainConfig, predict, train
from .wawanizer import WawLexicon, wawanize_turn

__all__ = [
    "SegmenterPipeline", "Segmentation",
    "preprocess", "tag_turn", "segment",
    "turn_pos_infos", "training_examples", "train_pipeline",
]


@dataclass
class SegmenterPipeline:
    """Everything needed to go from raw turn text to utterance spans."""

    lexicon: WawLexicon
    pos: PosProvider
    model: LinearModel


@dataclass
class Segmentation:
    """Decoded tags and the utterance spans they induce."""

    tokens: list[Token]
    tags: list[SegTag]
    utterances: list[tuple[int, int]]

    def __post_init__(self) -> None:
        if len(self.tags) != len(self.tokens):
            raise UsegError(
                f"{len(self.tags)} tags for {len(self.tokens)} tokens"
            )
        if self.utterances != tags_to_spans(self.tags):
            raise UsegError("utterance spans do not match the tags")

    def utterance_texts(self) -> list[str]:
        return [
            " ".join(t.surface for t in self.tokens[start:end])
            for start, end in self.utterances
        ]


def preprocess(raw: str, lexicon: WawLexicon) -> list[Token]:
    """Tokenize, normalize, split conjunctions, attach Buckwalter forms."""
    words = raw.split()
    if not words:
        raise UsegError("empty or whitespace-only turn text")
    normalized = [normalize(word) for word in words]
    surfaces = wawanize_turn(normalized, lexicon)
    return [
        Token(surface=s, buckwalter=to_buckwalter(s), index=i)
        for i, s in enumerate(surfaces)
    ]


def turn_pos_infos(
    tokens: Sequence[Token],
    provider: PosProvider,
    mapping: TagMapping | None = None,
) -> list[PosInfo]:
    """POS flags for one turn; the corpus POS column wins when present."""
    if any(token.pos is not None for token in tokens):
        if mapping is None:
            mapping = TagMapping.default()
        return gold_pos_from_corpus(
            [token.pos or "" for token in tokens], mapping
        )
    return provider.tag_tokens([token.surface for token in tokens])


def tag_turn(pipeline: SegmenterPipeline,
             tokens: Sequence[Token]) -> list[SegTag]:
    """Greedy decode; position 0 forced to B-Seg, the rest classified."""
    if not tokens:
        raise UsegError("cannot tag an empty turn")
    model = pipeline.model
    if not model.alphabet.frozen:
        raise ModelMismatchError("model alphabet must be frozen for tagging")
    alphabet_size = len(model.alphabet)
    bw_tokens = [token.buckwalter for token in tokens]
    pos_infos = turn_pos_infos(tokens, pipeline.pos)
    tags = [SegTag.BSEG]
    for position in range(1, len(tokens)):
        fv = extract(
            bw_tokens, pos_infos, [t.value for t in tags], position,
            model.template, model.alphabet,
        )
        label = predict(model, fv)
        try:
            tags.append(SegTag(label))
        except ValueError:
            raise ModelMismatchError(
                f"model predicts {label!r}, not a segmentation tag"
            ) from None
    assert len(model.alphabet) == alphabet_size, \
        "alphabet grew during tagging"
    return tags


def segment(pipeline: SegmenterPipeline, raw: str) -> Segmentation:
    """Full pipeline over raw turn text."""
    tokens = preprocess(raw, pipeline.lexicon)
    tags = tag_turn(pipeline, tokens)
    return Segmentation(tokens=tokens, tags=tags,
                        utterances=tags_to_spans(tags))


def training_examples(
    turns: Sequence[Turn],
    provider: PosProvider,
    mapping: TagMapping | None = None,
) -> list[tuple[list[str], list[PosInfo], list[str]]]:
    """(buckwalter, pos, gold tag strings) per turn, ready to featurize."""
    data = []
    for turn in turns:
        if turn.tags is None:
            raise UsegError(f"turn {turn.turn_id} has no gold tags")
        data.append((
            [token.buckwalter for token in turn.tokens],
            turn_pos_infos(turn.tokens, provider, mapping),
            [tag.value for tag in turn.tags],
        ))
    return data


def train_pipeline(
    turns: Sequence[Turn],
    lexicon: WawLexicon,
    provider: PosProvider,
    template: FeatureTemplate,
    config: TrainConfig,
) -> SegmenterPipeline:
    """Featurize gold turns, fit the OVR model, assemble the pipeline.

    Gold tags supply the decode-history features during training; every
    position contributes one example (decoding later forces position 0,
    but training on it costs nothing and keeps the example set full).
    """
    if not turns:
        raise UsegError("no training turns")
    data = training_examples(turns, provider)
    alphabet = build_alphabet(data, template)
    examples = []
    for bw_tokens, pos_infos, tag_strings in data:
        for position in range(len(bw_tokens)):
            fv = extract(bw_tokens, pos_infos, tag_strings[:position],
                         position, template, alphabet)
            examples.append((fv, tag_strings[position]))
    model = train(examples, config, alphabet, template)
    return SegmenterPipeline(lexicon=lexicon, pos=provider, model=model)
