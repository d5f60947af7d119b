import numpy as np
import pytest

from signpipe.augment import augment_frame, jitter_only_config
from signpipe.classifier import PredictionEvent, TrainConfig, train
from signpipe.landmarks import Hand, LandmarkFrame
from signpipe.lexicon import Dictionary
from signpipe.prototypes import synth_dataset, synth_prototypes


def random_frame(rng, seq=0, ts_ms=0.0, hand=Hand.LEFT) -> LandmarkFrame:
    """A valid random frame; anchor distance is ~always far from degenerate."""
    pts = rng.normal(0.0, 1.0, size=(21, 3))
    while np.linalg.norm(pts[9] - pts[0]) <= 1e-6:
        pts = rng.normal(0.0, 1.0, size=(21, 3))
    return LandmarkFrame(seq=seq, ts_ms=ts_ms, hand=hand, pts=pts)


def accepted(seq, label, ts_ms=None):
    return PredictionEvent(
        seq=seq,
        label=label,
        confidence=0.95,
        accepted=True,
        ts_ms=seq * 33.0 if ts_ms is None else ts_ms,
    )


def rejected(seq, ts_ms=None):
    return PredictionEvent(
        seq=seq,
        label="A",
        confidence=0.1,
        accepted=False,
        ts_ms=seq * 33.0 if ts_ms is None else ts_ms,
    )


def spelled_frames(letters, frames_per_letter=12, sigma=0.01, seed=7):
    """Frame stream spelling the given letters from the prototype poses."""
    protos = dict((label, frame) for frame, label in synth_prototypes())
    rng = np.random.default_rng(seed)
    cfg = jitter_only_config(sigma)
    out = []
    seq = 0
    for letter in letters:
        for _ in range(frames_per_letter):
            f = augment_frame(protos[letter], cfg, rng)
            out.append(
                (
                    LandmarkFrame(seq=seq, ts_ms=seq * 33.0, hand=f.hand, pts=f.pts),
                    letter,
                )
            )
            seq += 1
    return out


@pytest.fixture(scope="session")
def trained_model():
    data = synth_dataset(copies=10, sigma=0.02, seed=0)
    return train(data, TrainConfig())


@pytest.fixture()
def task_dictionary():
    return Dictionary(["GRAB", "DROP", "MOVE", "APPLE", "BOTTLE"], name="task")
