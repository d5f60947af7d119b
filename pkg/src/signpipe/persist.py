"""File formats: model, dictionary, scene, dataset, config, replay scripts.

Every persisted type round-trips exactly (save then load reproduces all
numeric fields bit for bit); versioned documents are rejected on mismatch.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .classifier import Model
from .config import PipelineConfig, config_from_dict, config_to_dict
from .errors import MalformedFrame, ParseError, VersionMismatch
from .landmarks import (
    FEATURE_SPEC_VERSION,
    LABELS,
    LandmarkFrame,
    frame_from_dict,
    frame_to_dict,
)
from .lexicon import Dictionary
from .executor import Scene, SceneObject

MODEL_FILE_VERSION = 1


# -- model -------------------------------------------------------------------

def save_model(model: Model, path: str | Path) -> None:
    doc = {
        "version": MODEL_FILE_VERSION,
        "feature_spec_version": model.feature_spec_version,
        "labels": list(model.labels),
        "weights": model.weights.tolist(),
        "bias": model.bias.tolist(),
        "threshold": model.threshold,
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_model(path: str | Path) -> Model:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"model file: {exc}") from exc
    if doc.get("version") != MODEL_FILE_VERSION:
        raise VersionMismatch(f"model file version {doc.get('version')!r}, expected {MODEL_FILE_VERSION}")
    if doc.get("feature_spec_version") != FEATURE_SPEC_VERSION:
        raise VersionMismatch(
            f"feature spec {doc.get('feature_spec_version')!r}, expected {FEATURE_SPEC_VERSION}"
        )
    try:
        return Model(
            labels=tuple(doc["labels"]),
            weights=np.array(doc["weights"], dtype=np.float64),
            bias=np.array(doc["bias"], dtype=np.float64),
            threshold=float(doc["threshold"]),
            feature_spec_version=int(doc["feature_spec_version"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"model file: {exc}") from exc


# -- dictionary --------------------------------------------------------------

def load_dictionary(path: str | Path) -> Dictionary:
    words: list[str] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        word = raw.split("#", 1)[0].strip()
        if not word:
            continue
        if not word.isalpha() or not word.isupper():
            raise ParseError(f"bad word {word!r} (A-Z only)", line=lineno)
        if word in seen:
            raise ParseError(f"duplicate word {word!r}", line=lineno)
        seen.add(word)
        words.append(word)
    if not words:
        raise ParseError("dictionary is empty")
    return Dictionary(words=words, name=Path(path).stem)


def save_dictionary(d: Dictionary, path: str | Path) -> None:
    Path(path).write_text("\n".join(d.words) + "\n", encoding="utf-8")


# -- scene -------------------------------------------------------------------

def scene_to_dict(scene: Scene) -> dict:
    return {
        "bounds": list(scene.bounds),
        "gripper": {
            "pos": list(scene.gripper_pos),
            **({"holding": scene.holding} if scene.holding else {}),
        },
        "objects": [
            {"name": o.name, "pos": list(o.pos), **({"held": True} if o.held else {})}
            for o in scene.objects
        ],
    }


def scene_from_dict(doc: dict) -> Scene:
    try:
        gripper = doc["gripper"]
        return Scene(
            bounds=tuple(doc["bounds"]),
            gripper_pos=tuple(gripper["pos"]),
            holding=gripper.get("holding"),
            objects=[
                SceneObject(
                    name=o["name"], pos=tuple(o["pos"]), held=bool(o.get("held", False))
                )
                for o in doc.get("objects", [])
            ],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"scene: {exc}") from exc


def load_scene(path: str | Path) -> Scene:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"scene file: {exc}") from exc
    return scene_from_dict(doc)


def save_scene(scene: Scene, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scene_to_dict(scene)), encoding="utf-8")


# -- labeled dataset (JSON lines) -------------------------------------------

def save_dataset(data: list[tuple[LandmarkFrame, str]], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for frame, label in data:
            rec = frame_to_dict(frame)
            rec["label"] = label
            fh.write(json.dumps(rec) + "\n")


def load_dataset(path: str | Path) -> list[tuple[LandmarkFrame, str]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"dataset: {exc}", line=lineno) from exc
            label = rec.get("label")
            if label not in LABELS:
                raise ParseError(f"bad label {label!r}", line=lineno)
            try:
                frame = frame_from_dict(rec)
            except MalformedFrame as exc:
                raise ParseError(f"dataset frame: {exc}", line=lineno) from exc
            out.append((frame, label))
    if not out:
        raise ParseError("dataset is empty")
    return out


# -- replay script (meta header + frame lines) -------------------------------

def save_script(
    frames: list[LandmarkFrame | tuple[LandmarkFrame, str | None]],
    ground_truth: dict,
    path: str | Path,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"type": "meta", "ground_truth": ground_truth}) + "\n")
        for item in frames:
            frame, label = item if isinstance(item, tuple) else (item, None)
            rec = {"type": "frame", **frame_to_dict(frame)}
            if label is not None:
                rec["label"] = label
            fh.write(json.dumps(rec) + "\n")


def load_script(path: str | Path):
    """Returns (frames, labels, ground_truth); labels entries may be None."""
    ground_truth: dict = {}
    frames: list[LandmarkFrame] = []
    labels: list[str | None] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"script: {exc}", line=lineno) from exc
            kind = rec.get("type")
            if kind == "meta":
                ground_truth = rec.get("ground_truth", {})
            elif kind == "frame":
                try:
                    frames.append(frame_from_dict(rec))
                except MalformedFrame as exc:
                    raise ParseError(f"script frame: {exc}", line=lineno) from exc
                labels.append(rec.get("label"))
            else:
                raise ParseError(f"unknown record type {kind!r}", line=lineno)
    return frames, labels, ground_truth


# -- config ------------------------------------------------------------------

def load_config(path: str | Path) -> PipelineConfig:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"config file: {exc}") from exc
    return config_from_dict(doc)


def save_config(cfg: PipelineConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg), indent=2), encoding="utf-8")
