"""Regenerate the test fixtures from the real pipeline.

Run from the repository root with the Python package installed:

    python3 frontend/scripts/make_fixtures.py

Writes into frontend/tests/fixtures/:
  model.json        -- trained model reused by the integration test
  transcript.ndjson -- recorded server messages covering every message type
  frames_grab.ndjson / frames_g.ndjson -- client frame messages
"""

import json
import pathlib

from signpipe.augment import jitter_only_config
from signpipe.classifier import TrainConfig, train
from signpipe.cli import default_scene
from signpipe.config import PipelineConfig
from signpipe.landmarks import frame_to_dict, Hand, LandmarkFrame
from signpipe.lexicon import Dictionary
from signpipe.persist import save_model
from signpipe.pipeline import Session
from signpipe.prototypes import prototype_points, synth_dataset

import numpy as np

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

FRAMES_PER_LETTER = 25  # enough to commit under the default K=15/M=8 window


def spelled_messages(letters, start_seq=0, sigma=0.01, seed=7):
    cfg = jitter_only_config(sigma, seed=seed)
    out = []
    seq = start_seq
    for i, letter in enumerate(letters):
        base = prototype_points(letter)
        for j in range(FRAMES_PER_LETTER):
            rng = np.random.default_rng([seed, i, j])
            noise = rng.normal(0.0, cfg.jitter_sigma, size=base.shape)
            frame = LandmarkFrame(seq=seq, ts_ms=seq * 33.0, hand=Hand.LEFT, pts=base + noise)
            out.append({"type": "frame", **frame_to_dict(frame)})
            seq += 1
    return out, seq


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)

    model = train(synth_dataset(copies=10, sigma=0.02, seed=0), TrainConfig())
    save_model(model, FIXTURES / "model.json")

    for name, letters in [
        ("frames_grab.ndjson", ["G", "R", "A", "B", "SPACE"]),
        ("frames_g.ndjson", ["G"]),
    ]:
        msgs, _ = spelled_messages(letters)
        with open(FIXTURES / name, "w") as fh:
            for m in msgs:
                fh.write(json.dumps(m) + "\n")

    # recorded transcript: drive one session through every message type
    session = Session(
        model,
        Dictionary(["GRAB", "DROP", "MOVE", "PUSH", "PLACE", "APPLE", "BOTTLE", "BALL"]),
        default_scene(),
        PipelineConfig(),
    )
    inbound = [{"type": "frame", "seq": 0}]  # malformed -> error
    seq = 1
    for letters in (["A", "P", "P", "L", "E", "SPACE"],):  # noun first -> unknown_verb error
        msgs, seq = spelled_messages(letters, start_seq=seq)
        inbound += msgs
    msgs, seq = spelled_messages(["G", "R", "A", "B", "SPACE", "A", "P", "L", "E", "SPACE"], start_seq=seq)
    inbound += msgs  # accepted words, instruction, immediate exec
    inbound.append({"type": "config", "hold_exec": True})
    msgs, seq = spelled_messages(["M", "O", "V", "E", "SPACE", "B", "A", "L", "SPACE"], start_seq=seq)
    inbound += msgs  # instruction held pending
    inbound.append({"type": "config", "approve": 2})
    msgs, seq = spelled_messages(["X", "Q", "Z", "W", "SPACE"], start_seq=seq)
    inbound += msgs  # word too far from the dictionary -> rejected
    inbound.append({"type": "flush", "ts_ms": seq * 33.0})

    transcript = []
    for msg in inbound:
        transcript.extend(session.handle_message(msg))
    with open(FIXTURES / "transcript.ndjson", "w") as fh:
        for ev in transcript:
            fh.write(json.dumps(ev) + "\n")

    kinds = sorted({ev["type"] for ev in transcript})
    print(f"{len(transcript)} transcript events, types: {kinds}")


if __name__ == "__main__":
    main()
