"""Training-time landmark augmentation.

Geometric transforms model pose variation: image-plane rotation about the
wrist, isotropic scaling, and horizontal flipping so one model serves both
hands.  Photometric perturbation has no meaning in landmark space, so its
effect on keypoints is simulated directly as Gaussian jitter scaled by hand
size.  Transform order is fixed (rotate, scale, flip, jitter) and every draw
comes from an explicit generator, so results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .landmarks import Hand, LandmarkFrame


@dataclass
class AugmentConfig:
    rot_deg_range: tuple[float, float] = (-25.0, 25.0)
    scale_range: tuple[float, float] = (0.7, 1.3)
    flip_prob: float = 0.5
    jitter_sigma: float = 0.02
    seed: int = 0

    def __post_init__(self):
        self.rot_deg_range = tuple(self.rot_deg_range)
        self.scale_range = tuple(self.scale_range)
        lo, hi = self.rot_deg_range
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise ValueError(f"bad rotation range {self.rot_deg_range}")
        lo, hi = self.scale_range
        if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo <= hi):
            raise ValueError(f"bad scale range {self.scale_range}")
        if not 0.0 <= self.flip_prob <= 1.0:
            raise ValueError(f"flip_prob {self.flip_prob} outside [0, 1]")
        if self.jitter_sigma < 0:
            raise ValueError("jitter_sigma must be >= 0")


def identity_config(seed: int = 0) -> AugmentConfig:
    """A configuration under which augment_frame is the identity."""
    return AugmentConfig(
        rot_deg_range=(0.0, 0.0),
        scale_range=(1.0, 1.0),
        flip_prob=0.0,
        jitter_sigma=0.0,
        seed=seed,
    )


def jitter_only_config(sigma: float, seed: int = 0) -> AugmentConfig:
    """Keypoint jitter without any geometric transform."""
    return AugmentConfig(
        rot_deg_range=(0.0, 0.0),
        scale_range=(1.0, 1.0),
        flip_prob=0.0,
        jitter_sigma=sigma,
        seed=seed,
    )


def augment_frame(
    frame: LandmarkFrame, cfg: AugmentConfig, rng: np.random.Generator
) -> LandmarkFrame:
    """Apply one stochastic rotate/scale/flip/jitter draw to a frame."""
    theta = math.radians(rng.uniform(*cfg.rot_deg_range))
    s = rng.uniform(*cfg.scale_range)
    flip = rng.random() < cfg.flip_prob
    anchor = frame.scale_anchor()
    noise = rng.normal(0.0, cfg.jitter_sigma * anchor, size=frame.pts.shape)

    wrist = frame.pts[0]
    rel = frame.pts - wrist
    c, sn = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -sn, 0.0], [sn, c, 0.0], [0.0, 0.0, 1.0]])
    moved = (rel @ rot.T) * s
    hand = frame.hand
    if flip:
        moved = moved * np.array([-1.0, 1.0, 1.0])
        hand = Hand.RIGHT if hand is Hand.LEFT else Hand.LEFT
    # applied as a wrist-relative delta so the identity config is bit-exact
    pts = frame.pts + (moved - rel) + noise
    return LandmarkFrame(seq=frame.seq, ts_ms=frame.ts_ms, hand=hand, pts=pts)


def expand_dataset(
    data: list[tuple[LandmarkFrame, str]],
    copies_per_sample: int,
    cfg: AugmentConfig,
) -> list[tuple[LandmarkFrame, str]]:
    """Originals plus copies_per_sample augmented variants per sample.

    The per-copy generator is derived from (seed, sample index, copy index),
    so the result is independent of iteration order and safe to parallelize.
    """
    if copies_per_sample < 0:
        raise ValueError("copies_per_sample must be >= 0")
    out: list[tuple[LandmarkFrame, str]] = []
    for i, (frame, label) in enumerate(data):
        out.append((frame, label))
        for j in range(copies_per_sample):
            rng = np.random.default_rng([cfg.seed, i, j])
            out.append((augment_frame(frame, cfg, rng), label))
    return out
