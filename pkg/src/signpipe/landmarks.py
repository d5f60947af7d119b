"""Hand-landmark frames and geometric normalization.

A frame is 21 three-dimensional keypoints in the standard hand topology
(0 = wrist, 9 = middle-finger MCP, 4/8/12/16/20 = fingertips).  The
normalizer anchors the wrist at the origin, rescales so the wrist to
middle-MCP bone has unit length, and mirrors right hands into a canonical
left-hand frame, yielding a flat 63-value feature vector that is invariant
to translation, uniform scale, and handedness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateHand, MalformedFrame

NUM_POINTS = 21
FEATURE_DIM = NUM_POINTS * 3
WRIST = 0
MIDDLE_MCP = 9
FINGERTIPS = (4, 8, 12, 16, 20)

# Model files are only valid against the normalization that produced their
# training features; bump when the feature definition changes.
FEATURE_SPEC_VERSION = 1

SPACE = "SPACE"
LETTERS = tuple(chr(c) for c in range(ord("A"), ord("Z") + 1))
LABELS = LETTERS + (SPACE,)
NUM_CLASSES = len(LABELS)
LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}

# Scale anchor below this is not a hand, it is numerical noise.
DEGENERATE_SCALE = 1e-9


class Hand(str, Enum):
    LEFT = "Left"
    RIGHT = "Right"


@dataclass(frozen=True)
class LandmarkFrame:
    """One timestamped 21-point observation in raw sensor space."""

    seq: int
    ts_ms: float
    hand: Hand
    pts: np.ndarray  # (21, 3) float64

    def scale_anchor(self) -> float:
        """Wrist to middle-MCP distance, the anatomical scale reference."""
        return float(np.linalg.norm(self.pts[MIDDLE_MCP] - self.pts[WRIST]))


def validate_frame(
    seq, ts_ms, hand, pts, last_seq: int | None = None
) -> LandmarkFrame:
    """Build a LandmarkFrame from untrusted values or raise MalformedFrame."""
    if not isinstance(seq, int) or isinstance(seq, bool):
        raise MalformedFrame("seq must be an integer")
    if last_seq is not None and seq <= last_seq:
        raise MalformedFrame(f"seq {seq} not after {last_seq}")
    try:
        ts = float(ts_ms)
    except (TypeError, ValueError):
        raise MalformedFrame("ts_ms must be a number") from None
    if not math.isfinite(ts):
        raise MalformedFrame("ts_ms must be finite")
    try:
        hand_enum = Hand(hand)
    except ValueError:
        raise MalformedFrame(f"unknown hand {hand!r}") from None
    try:
        arr = np.asarray(pts, dtype=np.float64)
    except (TypeError, ValueError):
        raise MalformedFrame("points must be numeric") from None
    if arr.shape != (NUM_POINTS, 3):
        raise MalformedFrame(
            f"expected {NUM_POINTS} points of 3 coordinates, got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise MalformedFrame("non-finite coordinate")
    return LandmarkFrame(seq=seq, ts_ms=ts, hand=hand_enum, pts=arr)


def frame_from_dict(obj: dict, last_seq: int | None = None) -> LandmarkFrame:
    """Parse one wire/file record into a validated frame."""
    if not isinstance(obj, dict):
        raise MalformedFrame("frame record must be an object")
    missing = {"seq", "ts_ms", "hand", "pts"} - obj.keys()
    if missing:
        raise MalformedFrame(f"missing fields: {sorted(missing)}")
    return validate_frame(obj["seq"], obj["ts_ms"], obj["hand"], obj["pts"], last_seq)


def frame_to_dict(frame: LandmarkFrame) -> dict:
    return {
        "seq": frame.seq,
        "ts_ms": frame.ts_ms,
        "hand": frame.hand.value,
        "pts": frame.pts.tolist(),
    }


def normalize(frame: LandmarkFrame) -> np.ndarray:
    """Canonicalize a frame into a 63-value feature vector.

    Subtracts the wrist, divides by the wrist->middle-MCP distance, and for
    right hands negates x to mirror into the canonical left-hand frame.
    """
    if frame.pts.shape != (NUM_POINTS, 3):
        raise MalformedFrame(f"bad point array shape {frame.pts.shape}")
    if not np.isfinite(frame.pts).all():
        raise MalformedFrame("non-finite coordinate")
    anchor = frame.scale_anchor()
    if anchor <= DEGENERATE_SCALE:
        raise DegenerateHand(f"scale anchor {anchor:g} below {DEGENERATE_SCALE:g}")
    rel = (frame.pts - frame.pts[WRIST]) / anchor
    if frame.hand is Hand.RIGHT:
        rel = rel * np.array([-1.0, 1.0, 1.0])
    return rel.reshape(FEATURE_DIM)


def frame_from_features(values: np.ndarray, seq: int = 0, ts_ms: float = 0.0) -> LandmarkFrame:
    """Reinterpret a feature vector as a left-hand frame (for round-trip checks)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (FEATURE_DIM,):
        raise MalformedFrame(f"expected {FEATURE_DIM} values, got shape {arr.shape}")
    return LandmarkFrame(seq=seq, ts_ms=ts_ms, hand=Hand.LEFT, pts=arr.reshape(NUM_POINTS, 3))
