"""Procedural prototype poses for the 27 gesture classes.

Each class is described by a small template (per-finger curl level plus a
thumb pose) pushed through a fixed forward-kinematic chain that produces the
21-point topology.  Templates are loosely modeled on the manual alphabet but
chosen first for mutual separation: every pair of prototypes differs in at
least one finger state, which keeps the minimum pairwise feature distance
far above the default training jitter.
"""

from __future__ import annotations

import math

import numpy as np

from .augment import AugmentConfig, expand_dataset, jitter_only_config
from .landmarks import LABELS, Hand, LandmarkFrame

EXT, HALF, CLOSED = "ext", "half", "closed"
OUT, ACROSS = "out", "across"

# Joint bend angles (degrees) per curl level, proximal to distal.
_CURL_ANGLES = {
    EXT: (0.0, 0.0, 0.0),
    HALF: (45.0, 55.0, 30.0),
    CLOSED: (95.0, 100.0, 60.0),
}

# Finger bases and segment lengths in wrist-anchored units where the
# wrist->middle-MCP bone is exactly 1.  Canonical left hand, fingers up.
_FINGERS = {
    "index": ((-0.35, 0.95, 0.0), (0.45, 0.28, 0.20)),
    "middle": ((0.0, 1.0, 0.0), (0.50, 0.32, 0.22)),
    "ring": ((0.32, 0.95, 0.0), (0.46, 0.30, 0.21)),
    "pinky": ((0.60, 0.85, 0.0), (0.36, 0.24, 0.18)),
}

_THUMB_BASE = (-0.45, 0.25, 0.05)
_THUMB_SEGMENTS = (0.32, 0.28, 0.22)
_THUMB_DIRS = {
    OUT: (-0.85, 0.45, 0.10),
    ACROSS: (0.25, 0.55, 0.45),
}

# (index, middle, ring, pinky, thumb) per label; all 27 tuples distinct.
TEMPLATES = {
    "A": (CLOSED, CLOSED, CLOSED, CLOSED, OUT),
    "B": (EXT, EXT, EXT, EXT, ACROSS),
    "C": (HALF, HALF, HALF, HALF, OUT),
    "D": (EXT, CLOSED, CLOSED, CLOSED, ACROSS),
    "E": (CLOSED, CLOSED, CLOSED, CLOSED, ACROSS),
    "F": (CLOSED, EXT, EXT, EXT, ACROSS),
    "G": (EXT, CLOSED, CLOSED, CLOSED, OUT),
    "H": (EXT, EXT, CLOSED, CLOSED, ACROSS),
    "I": (CLOSED, CLOSED, CLOSED, EXT, ACROSS),
    "J": (CLOSED, CLOSED, CLOSED, EXT, OUT),
    "K": (EXT, EXT, CLOSED, CLOSED, OUT),
    "L": (EXT, HALF, CLOSED, CLOSED, OUT),
    "M": (CLOSED, CLOSED, CLOSED, HALF, ACROSS),
    "N": (CLOSED, CLOSED, HALF, HALF, ACROSS),
    "O": (HALF, HALF, HALF, HALF, ACROSS),
    "P": (EXT, HALF, CLOSED, CLOSED, ACROSS),
    "Q": (HALF, CLOSED, CLOSED, CLOSED, OUT),
    "R": (EXT, EXT, HALF, CLOSED, ACROSS),
    "S": (HALF, CLOSED, CLOSED, HALF, ACROSS),
    "T": (CLOSED, HALF, CLOSED, CLOSED, ACROSS),
    "U": (EXT, EXT, HALF, HALF, ACROSS),
    "V": (EXT, EXT, CLOSED, HALF, ACROSS),
    "W": (EXT, EXT, EXT, CLOSED, ACROSS),
    "X": (HALF, CLOSED, CLOSED, CLOSED, ACROSS),
    "Y": (CLOSED, CLOSED, HALF, EXT, OUT),
    "Z": (EXT, CLOSED, HALF, CLOSED, ACROSS),
    "SPACE": (EXT, EXT, EXT, EXT, OUT),
}

assert set(TEMPLATES) == set(LABELS)
assert len(set(TEMPLATES.values())) == len(TEMPLATES), "templates must be distinct"


def _chain(base, direction, lengths, angles_deg):
    """Joint positions of one digit curling out of the palm plane."""
    base = np.asarray(base, dtype=np.float64)
    u = np.asarray(direction, dtype=np.float64)
    u = u / np.linalg.norm(u)
    palm_normal = np.array([0.0, 0.0, 1.0])
    pts = [base]
    total = 0.0
    pos = base
    for length, ang in zip(lengths, angles_deg):
        total += math.radians(ang)
        seg_dir = math.cos(total) * u + math.sin(total) * palm_normal
        pos = pos + length * seg_dir
        pts.append(pos)
    return pts


def prototype_points(label: str) -> np.ndarray:
    """The 21-point pose for one gesture class, wrist at the origin."""
    idx, mid, ring, pinky, thumb = TEMPLATES[label]
    pts = np.zeros((21, 3))
    thumb_angles = (10.0, 20.0, 15.0) if thumb == ACROSS else (0.0, 5.0, 5.0)
    chain = _chain(_THUMB_BASE, _THUMB_DIRS[thumb], _THUMB_SEGMENTS, thumb_angles)
    pts[1:5] = chain
    for slot, (name, curl) in zip(
        (5, 9, 13, 17), zip(("index", "middle", "ring", "pinky"), (idx, mid, ring, pinky))
    ):
        base, lengths = _FINGERS[name]
        direction = np.asarray(base, dtype=np.float64)
        chain = _chain(base, direction, lengths, _CURL_ANGLES[curl])
        pts[slot : slot + 4] = chain
    return pts


def synth_prototypes(seed: int = 0) -> list[tuple[LandmarkFrame, str]]:
    """One prototype frame per label, in label order; deterministic."""
    del seed  # poses are fixed constants; parameter kept for interface stability
    out = []
    for i, label in enumerate(LABELS):
        frame = LandmarkFrame(
            seq=i, ts_ms=i * 33.0, hand=Hand.LEFT, pts=prototype_points(label)
        )
        out.append((frame, label))
    return out


def synth_dataset(
    copies: int, sigma: float = 0.02, seed: int = 0
) -> list[tuple[LandmarkFrame, str]]:
    """Prototypes plus `copies` jittered variants each: 27 * (1 + copies) samples."""
    return expand_dataset(synth_prototypes(), copies, jitter_only_config(sigma, seed))
