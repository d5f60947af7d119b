"""Lightweight alphabet classifier: multinomial logistic regression.

Linear softmax over normalized 63-d landmark features keeps inference in
the microsecond range and makes the training gradient exactly checkable
against finite differences.  Training is plain mini-batch gradient descent
with a fixed learning rate and a seed-derived shuffle schedule, so the same
data and seed always produce the same model.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from .augment import AugmentConfig, expand_dataset
from .errors import DegenerateHand, DimensionMismatch, InsufficientData
from .landmarks import (
    FEATURE_DIM,
    FEATURE_SPEC_VERSION,
    LABELS,
    LABEL_INDEX,
    NUM_CLASSES,
    LandmarkFrame,
    normalize,
)

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.6


@dataclass
class Model:
    labels: tuple[str, ...]
    weights: np.ndarray  # (C, 63)
    bias: np.ndarray  # (C,)
    threshold: float = DEFAULT_THRESHOLD
    feature_spec_version: int = FEATURE_SPEC_VERSION

    def __post_init__(self):
        self.labels = tuple(self.labels)
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        c = len(self.labels)
        if self.weights.shape != (c, FEATURE_DIM) or self.bias.shape != (c,):
            raise DimensionMismatch(
                f"weights {self.weights.shape} / bias {self.bias.shape} "
                f"inconsistent with {c} labels x {FEATURE_DIM} features"
            )
        if not (np.isfinite(self.weights).all() and np.isfinite(self.bias).all()):
            raise ValueError("non-finite parameters")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold {self.threshold} outside [0, 1]")


@dataclass(frozen=True)
class PredictionEvent:
    seq: int
    label: str | None
    confidence: float
    accepted: bool
    latency_us: float = 0.0
    ts_ms: float = 0.0  # source-frame capture time, carried for debouncing


@dataclass
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 200
    batch_size: int = 64
    l2: float = 1e-4
    augment: AugmentConfig = field(default_factory=AugmentConfig)
    copies_per_sample: int = 10
    seed: int = 0
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if self.learning_rate <= 0 or self.epochs <= 0 or self.batch_size <= 0:
            raise ValueError("learning_rate, epochs and batch_size must be positive")
        if self.l2 < 0:
            raise ValueError("l2 must be >= 0")


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def zero_model(threshold: float = DEFAULT_THRESHOLD) -> Model:
    return Model(
        labels=LABELS,
        weights=np.zeros((NUM_CLASSES, FEATURE_DIM)),
        bias=np.zeros(NUM_CLASSES),
        threshold=threshold,
    )


def predict(
    model: Model, features: np.ndarray, seq: int = 0, ts_ms: float = 0.0
) -> PredictionEvent:
    """Classify one feature vector; accepted iff confidence >= threshold."""
    t0 = time.perf_counter_ns()
    f = np.asarray(features, dtype=np.float64)
    if f.shape != (FEATURE_DIM,):
        raise DimensionMismatch(f"expected {FEATURE_DIM} features, got {f.shape}")
    probs = softmax(model.weights @ f + model.bias)
    idx = int(np.argmax(probs))  # argmax takes the lowest index on ties
    conf = float(probs[idx])
    latency_us = (time.perf_counter_ns() - t0) / 1000.0
    return PredictionEvent(
        seq=seq,
        label=model.labels[idx],
        confidence=conf,
        accepted=conf >= model.threshold,
        latency_us=latency_us,
        ts_ms=ts_ms,
    )


def loss_and_grad(
    weights: np.ndarray,
    bias: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    l2: float = 0.0,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean regularized cross-entropy and its exact gradient.

    x is (n, 63), y is (n,) integer class indices.  Returns
    (loss, d_loss/d_weights, d_loss/d_bias).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if x.ndim != 2 or x.shape[1] != FEATURE_DIM:
        raise DimensionMismatch(f"batch shape {x.shape}")
    if x.shape[0] == 0:
        raise DimensionMismatch("empty batch")
    n = x.shape[0]
    probs = softmax(x @ weights.T + bias)
    ce = -np.log(np.clip(probs[np.arange(n), y], 1e-300, None)).mean()
    loss = ce + 0.5 * l2 * float((weights**2).sum())
    delta = probs
    delta[np.arange(n), y] -= 1.0
    grad_w = delta.T @ x / n + l2 * weights
    grad_b = delta.sum(axis=0) / n
    return float(loss), grad_w, grad_b


def _normalize_dataset(
    data: list[tuple[LandmarkFrame, str]]
) -> tuple[np.ndarray, np.ndarray, int]:
    xs, ys = [], []
    skipped = 0
    for frame, label in data:
        try:
            xs.append(normalize(frame))
        except DegenerateHand:
            skipped += 1
            continue
        ys.append(LABEL_INDEX[label])
    if skipped:
        log.warning("skipped %d degenerate frames during normalization", skipped)
    return np.array(xs), np.array(ys, dtype=np.int64), skipped


def train(data: list[tuple[LandmarkFrame, str]], cfg: TrainConfig) -> Model:
    """Fit the classifier on labeled frames; deterministic given cfg.seed."""
    if len({label for _, label in data}) < 2:
        raise InsufficientData("need at least two distinct labels")
    expanded = expand_dataset(data, cfg.copies_per_sample, cfg.augment)
    x, y, _ = _normalize_dataset(expanded)
    if len(x) == 0:
        raise InsufficientData("no usable frames after normalization")

    w = np.zeros((NUM_CLASSES, FEATURE_DIM))
    b = np.zeros(NUM_CLASSES)
    rng = np.random.default_rng(cfg.seed)
    n = len(x)
    for _ in range(cfg.epochs):
        order = rng.permutation(n)
        for start in range(0, n, cfg.batch_size):
            sel = order[start : start + cfg.batch_size]
            _, gw, gb = loss_and_grad(w, b, x[sel], y[sel], cfg.l2)
            w -= cfg.learning_rate * gw
            b -= cfg.learning_rate * gb
    return Model(labels=LABELS, weights=w, bias=b, threshold=cfg.threshold)


def evaluate(model: Model, data: list[tuple[LandmarkFrame, str]]) -> dict:
    """Top-1 accuracy, per-class accuracy and a truth-row confusion matrix."""
    if not data:
        raise InsufficientData("empty evaluation set")
    x, y, _ = _normalize_dataset(data)
    probs = softmax(x @ model.weights.T + model.bias)
    pred = probs.argmax(axis=1)
    c = len(model.labels)
    confusion = np.zeros((c, c), dtype=np.int64)
    np.add.at(confusion, (y, pred), 1)
    accuracy = float((pred == y).mean())
    per_class = {}
    for i, label in enumerate(model.labels):
        total = confusion[i].sum()
        if total:
            per_class[label] = float(confusion[i, i] / total)
    return {
        "accuracy": accuracy,
        "per_class_accuracy": per_class,
        "confusion": confusion,
    }
