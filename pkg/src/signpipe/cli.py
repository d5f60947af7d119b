"""Command-line entry points.

Subcommands: train, eval, replay, serve, synth-data, bench.  Every
subcommand accepts --config (falling back to $SIGNPIPE_CONFIG); explicit
flags override config-file values.  Exit codes: 0 success, 1 operational
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import os
import statistics
import sys
import time

import numpy as np

from . import persist
from .classifier import evaluate, predict, train
from .config import PipelineConfig
from .debounce import Debouncer
from .errors import SignPipeError
from .executor import Scene, SceneObject
from .landmarks import normalize
from .lexicon import Dictionary
from .metrics import replay as run_replay
from .pipeline import Session
from .prototypes import synth_dataset, synth_prototypes
from .server import serve as serve_async

log = logging.getLogger(__name__)

DEFAULT_WORDS = [
    "GRAB", "DROP", "MOVE", "PUSH", "PLACE",
    "APPLE", "BOTTLE", "BALL", "CUP", "BOX",
]


def default_scene() -> Scene:
    return Scene(
        bounds=(8, 8),
        gripper_pos=(0, 0),
        objects=[
            SceneObject("APPLE", (3, 0)),
            SceneObject("BOTTLE", (5, 4)),
            SceneObject("BALL", (2, 6)),
        ],
    )


def _load_pipeline_config(args) -> PipelineConfig:
    path = getattr(args, "config", None) or os.environ.get("SIGNPIPE_CONFIG")
    cfg = persist.load_config(path) if path else PipelineConfig()
    if getattr(args, "threshold", None) is not None:
        cfg.threshold = args.threshold
        cfg.train.threshold = args.threshold
    if getattr(args, "epochs", None) is not None:
        cfg.train.epochs = args.epochs
    if getattr(args, "seed", None) is not None:
        cfg.train.seed = args.seed
        cfg.augment.seed = args.seed
    return cfg


def _load_dictionary(args) -> Dictionary:
    if getattr(args, "dict", None):
        return persist.load_dictionary(args.dict)
    return Dictionary(words=list(DEFAULT_WORDS), name="builtin")


def _load_scene(args) -> Scene:
    if getattr(args, "scene", None):
        return persist.load_scene(args.scene)
    return default_scene()


def cmd_synth_data(args) -> int:
    data = synth_dataset(copies=args.copies, sigma=args.sigma, seed=args.seed)
    persist.save_dataset(data, args.out)
    print(f"wrote {len(data)} samples ({len(synth_prototypes())} classes) to {args.out}")
    return 0


def cmd_train(args) -> int:
    cfg = _load_pipeline_config(args)
    data = persist.load_dataset(args.data)
    t0 = time.perf_counter()
    model = train(data, cfg.train)
    elapsed = time.perf_counter() - t0
    persist.save_model(model, args.out)
    report = evaluate(model, data)
    print(
        f"trained on {len(data)} samples in {elapsed:.1f}s; "
        f"training accuracy {report['accuracy']:.4f}; model -> {args.out}"
    )
    return 0


def cmd_eval(args) -> int:
    model = persist.load_model(args.model)
    data = persist.load_dataset(args.data)
    report = evaluate(model, data)
    out = {
        "accuracy": report["accuracy"],
        "per_class_accuracy": report["per_class_accuracy"],
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_replay(args) -> int:
    cfg = _load_pipeline_config(args)
    model = persist.load_model(args.model)
    frames, labels, ground_truth = persist.load_script(args.script)
    session = Session(model, _load_dictionary(args), _load_scene(args), cfg)
    report, transcript = run_replay(frames, labels, ground_truth, session)
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as fh:
            for ev in transcript:
                fh.write(json.dumps(ev) + "\n")
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(report.format_table())
    return 0


def cmd_serve(args) -> int:
    cfg = _load_pipeline_config(args)
    model = persist.load_model(args.model)
    try:
        asyncio.run(
            serve_async(
                model,
                _load_dictionary(args),
                _load_scene(args),
                cfg,
                host=args.host,
                port=args.port,
            )
        )
    except KeyboardInterrupt:
        pass
    except OSError as exc:
        print(f"bind failed: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    cfg = _load_pipeline_config(args)
    if args.model:
        model = persist.load_model(args.model)
    else:
        data = synth_dataset(copies=5, sigma=0.02, seed=0)
        cfg.train.epochs = 30
        model = train(data, cfg.train)
    frames = [f for f, _ in synth_dataset(copies=max(1, args.frames // 27), sigma=0.02, seed=1)]
    frames = frames[: args.frames]

    classify_us = []
    for frame in frames:
        feats = normalize(frame)
        t0 = time.perf_counter_ns()
        predict(model, feats)
        classify_us.append((time.perf_counter_ns() - t0) / 1000.0)

    debouncer = Debouncer(cfg.debounce)
    step_us = []
    for i, frame in enumerate(frames):
        t0 = time.perf_counter_ns()
        feats = normalize(frame)
        pred = predict(model, feats, seq=i, ts_ms=i * 33.0)
        debouncer.step(pred)
        step_us.append((time.perf_counter_ns() - t0) / 1000.0)

    out = {
        "frames": len(frames),
        "classifier_median_us": statistics.median(classify_us),
        "pipeline_step_median_us": statistics.median(step_us),
        "pipeline_step_p99_us": float(np.percentile(step_us, 99)),
    }
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signpipe",
        description="Fingerspelling-to-instruction pipeline tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="pipeline config JSON (default: $SIGNPIPE_CONFIG)")
        p.add_argument("--seed", type=int, help="override RNG seed")

    p = sub.add_parser("synth-data", help="generate a labeled synthetic dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--copies", type=int, default=10)
    p.add_argument("--sigma", type=float, default=0.02)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth_data)

    p = sub.add_parser("train", help="train a model from a dataset")
    common(p)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int)
    p.add_argument("--threshold", type=float)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a model on a dataset")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("replay", help="replay a script and report metrics")
    common(p)
    p.add_argument("--script", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--dict")
    p.add_argument("--scene")
    p.add_argument("--transcript", help="write the event transcript to this JSONL file")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="start the streaming service")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--dict")
    p.add_argument("--scene")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=7325)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bench", help="per-stage latency microbenchmark")
    common(p)
    p.add_argument("--model")
    p.add_argument("--frames", type=int, default=2000)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SignPipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
