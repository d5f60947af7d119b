"""Offline replay harness and the metric suite.

Replays a scripted frame stream through the full pipeline in a single
thread and scores the transcript against ground truth: Top-1 accuracy on
labeled frames, word error rate, flip rate as the quantitative proxy for
prediction jitter, and per-frame latency percentiles.  Metrics that are
undefined for a script (no labels, no emissions) are reported as None
rather than a vacuous 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import EmptyReference, TooFewEvents
from .landmarks import SPACE


def sequence_edit_distance(ref: list, hyp: list) -> int:
    """Unit-cost edit distance between two sequences of hashable items."""
    if len(ref) < len(hyp):
        ref, hyp = hyp, ref
    if not hyp:
        return len(ref)
    prev = list(range(len(hyp) + 1))
    for i, a in enumerate(ref, start=1):
        cur = [i]
        for j, b in enumerate(hyp, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev[-1]


def wer(reference: list[str], hypothesis: list[str]) -> float:
    """Word-level edit distance over reference length; may exceed 1."""
    if not reference:
        raise EmptyReference("reference word sequence is empty")
    return sequence_edit_distance(reference, hypothesis) / len(reference)


def flip_rate(labels: list[str]) -> float:
    """Fraction of adjacent pairs whose labels differ."""
    if len(labels) < 2:
        raise TooFewEvents("need at least two accepted events")
    changes = sum(a != b for a, b in zip(labels, labels[1:]))
    return changes / (len(labels) - 1)


@dataclass
class MetricsReport:
    frames: int
    accepted_frames: int
    top1_accuracy: float | None
    wer: float | None
    word_accuracy: float | None
    instruction_exact_match: float | None
    flip_rate: float | None
    debounced_flip_rate: float | None
    p50_latency_us: float
    p95_latency_us: float
    p99_latency_us: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    def format_table(self) -> str:
        rows = []
        for key, value in self.to_dict().items():
            if value is None:
                shown = "n/a"
            elif isinstance(value, float):
                shown = f"{value:.6g}"
            else:
                shown = str(value)
            rows.append((key, shown))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def replay(frames, labels, ground_truth, session):
    """Drive the pipeline frame by frame; returns (report, transcript).

    `labels` is a per-frame list of ground-truth labels (entries may be
    None); `ground_truth` may carry "chars", "words" (raw spelled strings)
    and "instructions" (expected instruction texts).
    """
    transcript: list[dict] = []
    latencies: list[float] = []
    accepted_labels: list[str] = []
    committed_per_accept: list[str | None] = []
    pred_labels: list[str | None] = []
    committed: str | None = None

    for frame in frames:
        t0 = time.perf_counter_ns()
        events = session.process_frame(frame)
        latencies.append((time.perf_counter_ns() - t0) / 1000.0)
        transcript.extend(events)
        frame_pred: str | None = None
        frame_accepted = False
        for ev in events:
            kind = ev.get("type")
            if kind == "prediction":
                frame_pred = ev["label"]
                frame_accepted = ev["accepted"]
            elif kind == "char":
                committed = ev["char"]
            elif kind == "word":
                committed = SPACE
        pred_labels.append(frame_pred)
        if frame_accepted and frame_pred is not None:
            accepted_labels.append(frame_pred)
            committed_per_accept.append(committed)

    hyp_raw_words = [ev["raw"] for ev in transcript if ev["type"] == "word"]
    hyp_instructions = [ev["text"] for ev in transcript if ev["type"] == "instruction"]

    gt_words = list(ground_truth.get("words", []))
    gt_instructions = list(ground_truth.get("instructions", []))

    truth_pairs = [
        (p, t) for p, t in zip(pred_labels, labels) if t is not None and p is not None
    ]
    top1 = (
        sum(p == t for p, t in truth_pairs) / len(truth_pairs) if truth_pairs else None
    )

    script_wer = wer(gt_words, hyp_raw_words) if gt_words else None
    word_acc = None
    if gt_words:
        matches = sum(a == b for a, b in zip(gt_words, hyp_raw_words))
        word_acc = matches / max(len(gt_words), len(hyp_raw_words))
    instr_match = None
    if gt_instructions:
        matches = sum(a == b for a, b in zip(gt_instructions, hyp_instructions))
        instr_match = matches / max(len(gt_instructions), len(hyp_instructions))

    raw_flip = debounced_flip = None
    if len(accepted_labels) >= 2:
        raw_flip = flip_rate(accepted_labels)
        # committed-label changes over the same pair count, so the two rates
        # are directly comparable
        seen = [c for c in committed_per_accept if c is not None]
        changes = sum(a != b for a, b in zip(seen, seen[1:]))
        debounced_flip = changes / (len(accepted_labels) - 1)

    lat = np.array(latencies) if latencies else np.array([0.0])
    report = MetricsReport(
        frames=len(frames),
        accepted_frames=len(accepted_labels),
        top1_accuracy=top1,
        wer=script_wer,
        word_accuracy=word_acc,
        instruction_exact_match=instr_match,
        flip_rate=raw_flip,
        debounced_flip_rate=debounced_flip,
        p50_latency_us=float(np.percentile(lat, 50)),
        p95_latency_us=float(np.percentile(lat, 95)),
        p99_latency_us=float(np.percentile(lat, 99)),
    )
    return report, transcript
