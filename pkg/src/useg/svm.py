"""One-vs-rest linear SVM over sparse binary features, from scratch.

Each class gets an independent L2-regularized L1-hinge binary problem
(positive = that class, negative = everything else), solved in the dual
by coordinate descent:

    min_a  f(a) = 1/2 a'Qa - sum(a)   s.t.  0 <= a_i <= C_i

with Q_ij = y_i y_j x_i.x_j.  The primal weights w = sum a_i y_i x_i
are maintained incrementally, so one coordinate update costs O(nnz).
The bias is an always-on augmented feature, which keeps the dual a pure
box constraint.  Every coordinate step must not increase f; the solver
asserts this on each update.

Training is deterministic: sweep order comes from a generator seeded by
(shuffle_seed, class index), so identical inputs produce bit-identical
model files.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ModelFormatError, ModelMismatchError, UsegError
from .features import Alphabet, FeatureTemplate, FeatureVector

logger = logging.getLogger(__name__)

__all__ = [
    "TrainConfig", "LinearModel",
    "train", "train_binary", "score", "predict",
    "save_model", "load_model",
]

MODEL_HEADER = "USEG-MODEL v1"


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of the dual coordinate-descent trainer.

    ``class_weight`` multiplies the box bound C for the positive
    examples of each one-vs-rest subproblem (1.0 means no reweighting).
    """

    c: float = 1.0
    max_iters: int = 1000
    tol: float = 1e-4
    shuffle_seed: int = 0
    class_weight: float = 1.0

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise UsegError(f"c must be positive, got {self.c}")
        if not self.tol > 0:
            raise UsegError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise UsegError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.class_weight > 0:
            raise UsegError(
                f"class_weight must be positive, got {self.class_weight}"
            )


@dataclass
class LinearModel:
    """Trained OVR model plus everything needed to featurize new input."""

    classes: tuple[str, ...]
    weights: np.ndarray
    bias: np.ndarray
    alphabet: Alphabet
    template: FeatureTemplate

    def __post_init__(self) -> None:
        if not self.classes:
            raise UsegError("model must have at least one class")
        expected = (len(self.classes), len(self.alphabet))
        if self.weights.shape != expected:
            raise UsegError(
                f"weight matrix shape {self.weights.shape}, "
                f"expected {expected}"
            )
        if self.bias.shape != (len(self.classes),):
            raise UsegError(
                f"bias shape {self.bias.shape}, "
                f"expected ({len(self.classes)},)"
            )

    def score(self, fv: FeatureVector) -> dict[str, float]:
        return score(self, fv)

    def predict(self, fv: FeatureVector) -> str:
        return predict(self, fv)


def _solve_dual(
    xs: list[np.ndarray],
    y: np.ndarray,
    c_bound: np.ndarray,
    n_weights: int,
    rng: np.random.Generator,
    tol: float,
    max_iters: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate descent on the box-constrained dual.

    ``xs[i]`` holds the active feature indices of example i (bias slot
    included); all feature values are 1, so Q_ii is just the count.
    Returns the primal weight vector (bias slot last) and the duals.
    """
    n = len(xs)
    alpha = np.zeros(n)
    w = np.zeros(n_weights)
    qii = np.array([ix.size for ix in xs], dtype=float)
    for sweep in range(max_iters):
        worst = 0.0
        for i in rng.permutation(n):
            ix = xs[i]
            g = y[i] * w[ix].sum() - 1.0
            a = alpha[i]
            if a <= 0.0:
                pg = min(g, 0.0)
            elif a >= c_bound[i]:
                pg = max(g, 0.0)
            else:
                pg = g
            if pg == 0.0:
                continue
            worst = max(worst, abs(pg))
            new_a = min(max(a - g / qii[i], 0.0), c_bound[i])
            d = new_a - a
            if d == 0.0:
                continue
            # One-coordinate objective change; must never go up.
            delta = d * g + 0.5 * d * d * qii[i]
            assert delta <= 1e-12, f"dual objective rose by {delta}"
            w[ix] += d * y[i]
            alpha[i] = new_a
        if worst < tol:
            logger.debug("converged after %d sweeps (violation %.3g)",
                         sweep + 1, worst)
            break
    else:
        logger.debug("stopped at max_iters=%d (violation %.3g)",
                     max_iters, worst)
    return w, alpha


def train_binary(
    vectors: Sequence[FeatureVector],
    signs: Sequence[int],
    n_features: int,
    config: TrainConfig,
    class_index: int = 0,
) -> tuple[np.ndarray, float, np.ndarray]:
    """Solve one positive-vs-rest subproblem.

    ``signs`` are +-1.  Returns (weights over ``n_features`` slots,
    bias, dual variables).  ``class_index`` only seeds the sweep order.
    """
    if not vectors:
        raise UsegError("empty training set")
    if len(vectors) != len(signs):
        raise UsegError(f"{len(vectors)} vectors for {len(signs)} labels")
    y = np.asarray(signs, dtype=float)
    if not np.all(np.abs(y) == 1.0):
        raise UsegError("binary labels must be +1 or -1")
    xs = []
    for fv in vectors:
        if fv.indices and fv.indices[-1] >= n_features:
            raise UsegError(
                f"feature index {fv.indices[-1]} out of range "
                f"(alphabet size {n_features})"
            )
        xs.append(np.fromiter(
            (*fv.indices, n_features),
            dtype=np.intp, count=len(fv.indices) + 1,
        ))
    c_bound = np.where(y > 0, config.c * config.class_weight, config.c)
    rng = np.random.default_rng([config.shuffle_seed, class_index])
    w, alpha = _solve_dual(xs, y, c_bound, n_features + 1, rng,
                           config.tol, config.max_iters)
    return w[:n_features], float(w[n_features]), alpha


def train(
    examples: Sequence[tuple[FeatureVector, str]],
    config: TrainConfig,
    alphabet: Alphabet,
    template: FeatureTemplate,
) -> LinearModel:
    """Train one binary subproblem per class, in first-occurrence order."""
    if not examples:
        raise UsegError("empty training set")
    classes: list[str] = []
    for _, label in examples:
        if label not in classes:
            classes.append(label)
    if len(classes) == 1:
        logger.warning(
            "training set has a single class %r; the model will always "
            "predict it", classes[0],
        )
    n_features = len(alphabet)
    vectors = [fv for fv, _ in examples]
    labels = [label for _, label in examples]
    weights = np.zeros((len(classes), n_features))
    bias = np.zeros(len(classes))
    for k, cls in enumerate(classes):
        signs = [1 if label == cls else -1 for label in labels]
        weights[k], bias[k], _ = train_binary(
            vectors, signs, n_features, config, class_index=k,
        )
    return LinearModel(
        classes=tuple(classes), weights=weights, bias=bias,
        alphabet=alphabet, template=template,
    )


def _check_indices(model: LinearModel, fv: FeatureVector) -> None:
    if fv.indices and fv.indices[-1] >= len(model.alphabet):
        raise ModelMismatchError(
            f"feature index {fv.indices[-1]} out of range for alphabet "
            f"of size {len(model.alphabet)}"
        )


def score(model: LinearModel, fv: FeatureVector) -> dict[str, float]:
    """Per-class decision values w_k . fv + bias_k."""
    _check_indices(model, fv)
    indices = list(fv.indices)
    values = model.weights[:, indices].sum(axis=1) + model.bias
    return dict(zip(model.classes, values.tolist()))


def predict(model: LinearModel, fv: FeatureVector) -> str:
    """Highest-scoring class; ties go to the earliest class."""
    _check_indices(model, fv)
    indices = list(fv.indices)
    values = model.weights[:, indices].sum(axis=1) + model.bias
    return model.classes[int(np.argmax(values))]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def save_model(model: LinearModel, path) -> None:
    """Serialize to the versioned text format (exact round trip)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(MODEL_HEADER + "\n")
        fh.write(f"template {model.template.to_string()}\n")
        fh.write("classes " + "\t".join(model.classes) + "\n")
        fh.write(f"alphabet {len(model.alphabet)}\n")
        for index, feature in enumerate(model.alphabet):
            fh.write(f"{index}\t{feature}\n")
        for k, cls in enumerate(model.classes):
            row = model.weights[k]
            nonzero = np.nonzero(row)[0]
            fh.write(f"weights {cls} {len(nonzero)}\n")
            for index in nonzero:
                fh.write(f"{index}:{_fmt(row[index])}\n")
            fh.write(f"bias {cls} {_fmt(model.bias[k])}\n")


class _Lines:
    def __init__(self, path):
        with open(path, encoding="utf-8") as fh:
            self.lines = fh.read().splitlines()
        self.pos = 0

    def next(self, what: str) -> str:
        if self.pos >= len(self.lines):
            raise ModelFormatError(f"unexpected end of file, wanted {what}")
        line = self.lines[self.pos]
        self.pos += 1
        return line


def load_model(path) -> LinearModel:
    """Parse a model file; inverse of :func:`save_model`."""
    reader = _Lines(path)
    header = reader.next("header")
    if header != MODEL_HEADER:
        raise ModelFormatError(
            f"bad header {header!r}, expected {MODEL_HEADER!r}"
        )
    template_line = reader.next("template line")
    if not template_line.startswith("template "):
        raise ModelFormatError(f"bad template line {template_line!r}")
    template = FeatureTemplate.from_string(
        template_line[len("template "):]
    )
    classes_line = reader.next("classes line")
    if not classes_line.startswith("classes "):
        raise ModelFormatError(f"bad classes line {classes_line!r}")
    classes = tuple(classes_line[len("classes "):].split("\t"))
    if not classes or classes == ("",):
        raise ModelFormatError("empty class list")
    alpha_line = reader.next("alphabet size")
    if not alpha_line.startswith("alphabet "):
        raise ModelFormatError(f"bad alphabet line {alpha_line!r}")
    try:
        n_features = int(alpha_line[len("alphabet "):])
    except ValueError:
        raise ModelFormatError(f"bad alphabet size {alpha_line!r}") from None
    items: list[str] = []
    for expected in range(n_features):
        line = reader.next(f"alphabet entry {expected}")
        index_s, sep, feature = line.partition("\t")
        if not sep or index_s != str(expected):
            raise ModelFormatError(
                f"bad alphabet entry {line!r} (wanted index {expected})"
            )
        items.append(feature)
    alphabet = Alphabet.from_items(items)
    if len(alphabet) != n_features:
        raise ModelFormatError("duplicate feature strings in alphabet")
    alphabet.freeze()
    weights = np.zeros((len(classes), n_features))
    bias = np.zeros(len(classes))
    for k, cls in enumerate(classes):
        head = reader.next(f"weights for {cls}")
        parts = head.split(" ")
        if len(parts) != 3 or parts[0] != "weights" or parts[1] != cls:
            raise ModelFormatError(f"bad weights line {head!r}")
        try:
            nnz = int(parts[2])
        except ValueError:
            raise ModelFormatError(f"bad weight count {head!r}") from None
        for _ in range(nnz):
            pair = reader.next("weight pair")
            index_s, sep, value_s = pair.partition(":")
            try:
                index = int(index_s)
                value = float(value_s)
            except ValueError:
                sep = ""
                index = -1
                value = 0.0
            if not sep or not 0 <= index < n_features:
                raise ModelFormatError(f"bad weight pair {pair!r}")
            weights[k, index] = value
        bias_line = reader.next(f"bias for {cls}")
        parts = bias_line.split(" ")
        if len(parts) != 3 or parts[0] != "bias" or parts[1] != cls:
            raise ModelFormatError(f"bad bias line {bias_line!r}")
        try:
            bias[k] = float(parts[2])
        except ValueError:
            raise ModelFormatError(f"bad bias value {bias_line!r}") from None
    if reader.pos != len(reader.lines):
        raise ModelFormatError(
            f"trailing content at line {reader.pos + 1}"
        )
    return LinearModel(classes=classes, weights=weights, bias=bias,
                       alphabet=alphabet, template=template)
