"""Command line interface: the full workflow behind one executable.

    useg normalize   apply the character rules to text lines
    useg translit    Arabic <-> Buckwalter per line
    useg wawanize    split leading conjunction waws per line
    useg stats       corpus summary counts
    useg split       per-genre train/dev/test split
    useg train       fit a segmentation model
    useg tag         decode tags for a corpus or raw turns
    useg eval        score predictions against gold
    useg sweep       train/evaluate over a grid of window sizes

Exit codes: 0 success, 1 validation error, 2 I/O error.  Results go to
stdout or ``--out``; diagnostics go to stderr.  ``USEG_DATA_DIR`` may
point at a directory holding replacement lexicon files (same names as
the packaged ones).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from importlib import resources
from pathlib import Path

from .arabic import from_buckwalter, normalize, to_buckwalter
from .corpus import (
    Dialogue, Genre, Turn, corpus_stats, format_corpus, load_corpus,
    save_corpus, split_corpus, tags_to_spans, turns_to_dialogues,
)
from .errors import UsegError
from .features import FeatureTemplate
from .metrics import FORMATS, Metrics, evaluate, report_rows
from .pos import LexiconPosProvider
from .segmenter import (
    SegmenterPipeline, segment, tag_turn, train_pipeline,
)
from .svm import TrainConfig, load_model, save_model
from .wawanizer import load_lexicon, wawanize_turn

logger = logging.getLogger(__name__)

DATA_ENV = "USEG_DATA_DIR"

SWEEP_GRID = "-1/+1,-2/+2,-3/+3,-4/+4,-5/+5"


def _data_path(filename: str, explicit: str | None):
    """Resolve a data file: explicit flag, then $USEG_DATA_DIR, then
    the packaged copy."""
    if explicit:
        return explicit
    env = os.environ.get(DATA_ENV)
    if env:
        candidate = Path(env) / filename
        if candidate.exists():
            return candidate
    return resources.files("useg.data").joinpath(filename)


def _read_lines(path: str | None) -> list[str]:
    if path is None or path == "-":
        return sys.stdin.read().splitlines()
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def _write_output(text: str, out: str | None) -> None:
    if text and not text.endswith("\n"):
        text += "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _build_lexicon(args):
    return load_lexicon(_data_path("waw_lexicon.txt", args.lexicon))


def _build_provider(args) -> LexiconPosProvider:
    return LexiconPosProvider.from_files(
        conjunctions_path=_data_path("conjunctions.txt", args.conjunctions),
        proper_nouns_path=_data_path("proper_nouns.txt", args.proper_nouns),
    )


def _template_from_args(args) -> FeatureTemplate:
    before, after = FeatureTemplate.parse_window(args.window)
    return FeatureTemplate(
        window_before=before,
        window_after=after,
        n_prev_tags=args.prev_tags,
        use_pos=not args.no_pos,
        bigrams=args.bigrams,
    )


def _config_from_args(args) -> TrainConfig:
    return TrainConfig(
        c=args.c,
        max_iters=args.max_iters,
        tol=args.tol,
        shuffle_seed=args.seed,
        class_weight=args.class_weight,
    )


def _all_turns(dialogues) -> list[Turn]:
    return [turn for dialogue in dialogues for turn in dialogue.turns]


def cmd_normalize(args) -> None:
    lines = [normalize(line) for line in _read_lines(args.infile)]
    _write_output("\n".join(lines), args.out)


def cmd_translit(args) -> None:
    convert = from_buckwalter if args.reverse else to_buckwalter
    lines = [convert(line) for line in _read_lines(args.infile)]
    _write_output("\n".join(lines), args.out)


def cmd_wawanize(args) -> None:
    lexicon = _build_lexicon(args)
    lines = [
        " ".join(wawanize_turn([normalize(w) for w in line.split()],
                               lexicon))
        for line in _read_lines(args.infile)
    ]
    _write_output("\n".join(lines), args.out)


_STAT_FIELDS = (
    ("dialogues", "n_dialogues", "{}"),
    ("turns", "n_turns", "{}"),
    ("segmented turns", "n_segmented_turns", "{}"),
    ("utterances", "n_utterances", "{}"),
    ("words", "n_words", "{}"),
    ("words per turn", "words_per_turn", "{:.1f}"),
    ("words per utterance", "words_per_utterance", "{:.1f}"),
)


def cmd_stats(args) -> None:
    import json

    stats = corpus_stats(load_corpus(args.corpus))
    if args.format == "json":
        payload = {attr: getattr(stats, attr)
                   for _, attr, _ in _STAT_FIELDS}
        _write_output(json.dumps(payload, indent=2), args.out)
        return
    rows = [(label, fmt.format(getattr(stats, attr)))
            for label, attr, fmt in _STAT_FIELDS]
    if args.format == "tsv":
        text = "\n".join(f"{attr}\t{fmt.format(getattr(stats, attr))}"
                         for _, attr, fmt in _STAT_FIELDS)
    else:
        width = max(len(label) for label, _ in rows)
        value_width = max(len(value) for _, value in rows)
        text = "\n".join(f"{label:<{width}}  {value:>{value_width}}"
                         for label, value in rows)
    _write_output(text, args.out)


def _parse_ratios(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected three comma-separated ratios, got {text!r}"
        )
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad ratio in {text!r}") from None
    return values


def cmd_split(args) -> None:
    dialogues = load_corpus(args.corpus)
    result = split_corpus(dialogues, args.ratios,
                          shuffle=args.shuffle, seed=args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = []
    for name, turns in (("train", result.train), ("dev", result.dev),
                        ("test", result.test)):
        path = out_dir / f"{name}.useg"
        save_corpus(turns_to_dialogues(turns, dialogues), path)
        summary.append(f"{name}\t{len(turns)}\t{path}")
    _write_output("\n".join(summary), args.out)


def cmd_train(args) -> None:
    template = _template_from_args(args)
    config = _config_from_args(args)
    turns = _all_turns(load_corpus(args.corpus))
    pipeline = train_pipeline(
        turns,
        lexicon=_build_lexicon(args),
        provider=_build_provider(args),
        template=template,
        config=config,
    )
    save_model(pipeline.model, args.model)
    model = pipeline.model
    _write_output(
        f"trained on {len(turns)} turns\n"
        f"classes\t{' '.join(model.classes)}\n"
        f"features\t{len(model.alphabet)}\n"
        f"model\t{args.model}",
        args.out,
    )


def _load_pipeline(args) -> SegmenterPipeline:
    return SegmenterPipeline(
        lexicon=_build_lexicon(args),
        pos=_build_provider(args),
        model=load_model(args.model),
    )


def cmd_tag(args) -> None:
    pipeline = _load_pipeline(args)
    if args.corpus:
        emit = args.emit or "corpus"
        dialogues = load_corpus(args.corpus)
        tagged: list[Dialogue] = []
        for dialogue in dialogues:
            copy = Dialogue(id=dialogue.id, genre=dialogue.genre,
                            medium=dialogue.medium)
            for turn in dialogue.turns:
                copy.turns.append(Turn(
                    dialogue_id=turn.dialogue_id, turn_id=turn.turn_id,
                    speaker=turn.speaker, tokens=turn.tokens,
                    tags=tag_turn(pipeline, turn.tokens),
                ))
            tagged.append(copy)
        if emit == "corpus":
            _write_output(format_corpus(tagged), args.out)
        else:
            blocks = []
            for dialogue in tagged:
                for turn in dialogue.turns:
                    spans = [" ".join(t.surface for t in turn.tokens[a:b])
                             for a, b in tags_to_spans(turn.tags)]
                    blocks.append("\n".join(spans))
            _write_output("\n\n".join(blocks), args.out)
    else:
        emit = args.emit or "utterances"
        if emit == "corpus":
            raise UsegError(
                "--emit corpus requires --corpus input (raw turns carry "
                "no dialogue metadata)"
            )
        blocks = []
        for line in _read_lines(args.raw):
            if not line.strip():
                continue
            blocks.append("\n".join(
                segment(pipeline, line).utterance_texts()
            ))
        _write_output("\n\n".join(blocks), args.out)


def _genre_rows(gold_turns, pred_turns, genres,
                include_first: bool) -> list[tuple[str, Metrics]]:
    rows = []
    for genre in Genre:
        pairs = [(g, p) for g, p, gg in zip(gold_turns, pred_turns, genres)
                 if gg is genre]
        if not pairs:
            continue
        rows.append((genre.value, evaluate(
            [g for g, _ in pairs], [p for _, p in pairs],
            include_first=include_first,
        )))
    return rows


def cmd_eval(args) -> None:
    gold_dialogues = load_corpus(args.gold)
    pred_dialogues = load_corpus(args.pred)
    gold_turns = _all_turns(gold_dialogues)
    pred_turns = _all_turns(pred_dialogues)
    overall = evaluate(gold_turns, pred_turns,
                       include_first=args.include_first)
    rows: list[tuple[str, Metrics]] = []
    if args.by_genre:
        genres = [dialogue.genre for dialogue in gold_dialogues
                  for _ in dialogue.turns]
        rows.extend(_genre_rows(gold_turns, pred_turns, genres,
                                args.include_first))
    rows.append(("overall", overall))
    _write_output(report_rows(rows, args.format), args.out)
    if args.plot:
        from .plots import plot_metrics

        plot_metrics(rows, args.plot)
        logger.info("wrote figure %s", args.plot)


def cmd_sweep(args) -> None:
    config = _config_from_args(args)
    specs = [s.strip() for s in args.windows.split(",") if s.strip()]
    if not specs:
        raise UsegError("empty window list")
    templates = []
    for spec in specs:
        before, after = FeatureTemplate.parse_window(spec)
        templates.append(FeatureTemplate(
            window_before=before, window_after=after,
            n_prev_tags=args.prev_tags, use_pos=not args.no_pos,
            bigrams=args.bigrams,
        ))
    train_turns = _all_turns(load_corpus(args.train))
    dev_turns = _all_turns(load_corpus(args.dev))
    if not dev_turns:
        raise UsegError("dev corpus has no turns")
    lexicon = _build_lexicon(args)
    provider = _build_provider(args)
    sweep_rows: list[tuple[str, Metrics]] = []
    for spec, template in zip(specs, templates):
        pipeline = train_pipeline(train_turns, lexicon, provider,
                                  template, config)
        predicted = [
            Turn(dialogue_id=t.dialogue_id, turn_id=t.turn_id,
                 speaker=t.speaker, tokens=t.tokens,
                 tags=tag_turn(pipeline, t.tokens))
            for t in dev_turns
        ]
        metrics = evaluate(dev_turns, predicted,
                           include_first=args.include_first)
        sweep_rows.append((spec, metrics))
        logger.info("window %s: F1 %.4f", spec, metrics.f1)
    ranked = sorted(sweep_rows, key=lambda row: -row[1].f1)
    best = ranked[0][0]
    labelled = [(f"{spec} *" if spec == best else spec, m)
                for spec, m in ranked]
    _write_output(report_rows(labelled, args.format), args.out)
    if args.plot:
        from .plots import plot_sweep

        plot_sweep(sweep_rows, args.plot)
        logger.info("wrote figure %s", args.plot)


def _add_io_flags(parser, with_in: bool = True) -> None:
    if with_in:
        parser.add_argument("--in", dest="infile", metavar="FILE",
                            help="input file (default stdin)")
    parser.add_argument("--out", metavar="FILE",
                        help="output file (default stdout)")


def _add_lexicon_flags(parser) -> None:
    parser.add_argument("--lexicon", metavar="FILE",
                        help="waw-splitting lexicon (one word per line)")
    parser.add_argument("--conjunctions", metavar="FILE",
                        help="conjunction word list")
    parser.add_argument("--proper-nouns", metavar="FILE",
                        help="proper noun word list")


def _add_template_flags(parser) -> None:
    parser.add_argument("--window", default="-2/+2", metavar="-B/+A",
                        help="context window, e.g. -2/+2 (default)")
    parser.add_argument("--prev-tags", type=int, default=3, metavar="N",
                        help="number of previous-tag features (default 3)")
    parser.add_argument("--no-pos", action="store_true",
                        help="disable CONJ/NOUN/PROPN features")
    parser.add_argument("--bigrams", action="store_true",
                        help="add adjacent word-pair features")


def _add_train_flags(parser) -> None:
    parser.add_argument("--c", type=float, default=1.0,
                        help="SVM regularization trade-off (default 1.0)")
    parser.add_argument("--max-iters", type=int, default=1000,
                        help="maximum training sweeps (default 1000)")
    parser.add_argument("--tol", type=float, default=1e-4,
                        help="stopping tolerance (default 1e-4)")
    parser.add_argument("--class-weight", type=float, default=1.0,
                        help="C multiplier for each subproblem's "
                             "positive class (default 1.0)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="useg",
        description="Arabic dialogue turn-to-utterance segmentation "
                    "toolkit",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for every random choice (default 0)")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress informational logging")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command")

    p = sub.add_parser("normalize", help="apply the character rules")
    _add_io_flags(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("translit", help="Arabic <-> Buckwalter")
    p.add_argument("--reverse", action="store_true",
                   help="Buckwalter to Arabic")
    _add_io_flags(p)
    p.set_defaults(func=cmd_translit)

    p = sub.add_parser("wawanize", help="split leading conjunction waws")
    p.add_argument("--lexicon", metavar="FILE",
                   help="waw-splitting lexicon")
    _add_io_flags(p)
    p.set_defaults(func=cmd_wawanize)

    p = sub.add_parser("stats", help="corpus summary counts")
    p.add_argument("--corpus", required=True, metavar="FILE")
    p.add_argument("--format", choices=FORMATS, default="table")
    _add_io_flags(p, with_in=False)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="per-genre train/dev/test split")
    p.add_argument("--corpus", required=True, metavar="FILE")
    p.add_argument("--out-dir", required=True, metavar="DIR")
    p.add_argument("--ratios", type=_parse_ratios,
                   default=(0.70, 0.20, 0.10), metavar="R,R,R",
                   help="train,dev,test ratios (default 0.7,0.2,0.1)")
    p.add_argument("--shuffle", action="store_true",
                   help="shuffle turns within each genre before cutting")
    _add_io_flags(p, with_in=False)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train", help="fit a segmentation model")
    p.add_argument("--corpus", required=True, metavar="FILE")
    p.add_argument("--model", required=True, metavar="FILE",
                   help="where to write the model")
    _add_template_flags(p)
    _add_train_flags(p)
    _add_lexicon_flags(p)
    _add_io_flags(p, with_in=False)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tag", help="decode segmentation tags")
    p.add_argument("--model", required=True, metavar="FILE")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--corpus", metavar="FILE",
                        help="corpus file to (re)tag")
    source.add_argument("--raw", metavar="FILE",
                        help="plain text, one turn per line")
    p.add_argument("--emit", choices=("corpus", "utterances"),
                   help="output shape (corpus input defaults to corpus "
                        "columns, raw input to utterance lines)")
    _add_lexicon_flags(p)
    _add_io_flags(p, with_in=False)
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("eval", help="score predictions against gold")
    p.add_argument("--gold", required=True, metavar="FILE")
    p.add_argument("--pred", required=True, metavar="FILE")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--include-first", action="store_true",
                   help="count forced first positions in P/R/F1")
    p.add_argument("--by-genre", action="store_true",
                   help="add one row per genre")
    p.add_argument("--plot", metavar="FILE",
                   help="write a bar chart of the metric rows")
    _add_io_flags(p, with_in=False)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep",
                       help="train/evaluate over window settings")
    p.add_argument("--train", required=True, metavar="FILE",
                   help="training corpus")
    p.add_argument("--dev", required=True, metavar="FILE",
                   help="development corpus to score")
    p.add_argument("--windows", default=SWEEP_GRID, metavar="SPECS",
                   help=f"comma-separated windows "
                        f"(default {SWEEP_GRID})")
    p.add_argument("--prev-tags", type=int, default=3, metavar="N")
    p.add_argument("--no-pos", action="store_true")
    p.add_argument("--bigrams", action="store_true")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--include-first", action="store_true")
    p.add_argument("--plot", metavar="FILE",
                   help="write a line chart over the sweep")
    _add_train_flags(p)
    _add_lexicon_flags(p)
    _add_io_flags(p, with_in=False)
    p.set_defaults(func=cmd_sweep)

    return parser


def _merge_window_values(argv: list[str]) -> list[str]:
    """Join window flags with their values so argparse does not read a
    leading ``-1/+1`` as an option string."""
    merged: list[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in ("--window", "--windows") and i + 1 < len(argv):
            merged.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            merged.append(arg)
            i += 1
    return merged


def run(argv: list[str] | None = None) -> int:
    """Parse and dispatch; returns the process exit code."""
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = _build_parser().parse_args(_merge_window_values(list(argv)))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.ERROR if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        args.func(args)
    except UsegError as exc:
        print(f"useg: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"useg: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
