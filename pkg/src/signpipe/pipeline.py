"""Per-session wiring of the full pipeline behind the wire protocol.

A Session owns one debouncer, one command buffer and one scene.  Every
inbound frame is validated, normalized, classified, debounced, refined and
(when a command completes) synthesized and executed; each stage's event is
returned as a wire-format dict so the service and the replay harness share
one code path.  All failures are answered in-band; nothing a client sends
can raise out of handle_message.
"""

from __future__ import annotations

import time
from typing import Any

from .classifier import Model, PredictionEvent, predict
from .config import PipelineConfig
from .debounce import Debouncer, CharEvent, WordBoundaryEvent
from .errors import EmptyInput, MalformedFrame, SignPipeError, UnknownVerb
from .executor import (
    CommandBuffer,
    Instruction,
    execute,
    synthesize,
    word_accepted,
)
from .landmarks import LandmarkFrame, frame_from_dict, normalize
from .lexicon import Dictionary, refine
from .persist import scene_to_dict


def error_event(code: str, message: str, recoverable: bool = True) -> dict:
    return {"type": "error", "code": code, "message": message, "recoverable": recoverable}


class Session:
    def __init__(
        self,
        model: Model,
        dictionary: Dictionary,
        scene,
        config: PipelineConfig | None = None,
        session_id: str = "local",
    ):
        self.model = model
        self.dictionary = dictionary
        self.scene = scene
        self.config = config or PipelineConfig()
        self.session_id = session_id
        self.debouncer = Debouncer(self.config.debounce)
        self.buffer = CommandBuffer()
        self.cutoff = self.config.cutoff.as_function()
        self.hold_exec = self.config.hold_exec
        self.next_instruction_id = 1
        self.pending: Instruction | None = None
        self.last_seq: int | None = None

    # -- wire entry point ----------------------------------------------------

    def handle_message(self, obj: Any) -> list[dict]:
        try:
            if not isinstance(obj, dict) or "type" not in obj:
                return [error_event("bad_message", "expected an object with a 'type' field")]
            kind = obj["type"]
            if kind == "frame":
                return self.handle_frame(obj)
            if kind == "flush":
                return self.flush(float(obj.get("ts_ms", 0.0)))
            if kind == "reset":
                self.reset()
                return []
            if kind == "config":
                return self.configure(obj)
            return [error_event("bad_message", f"unknown message type {kind!r}")]
        except SignPipeError as exc:
            return [error_event(exc.code, str(exc), exc.recoverable)]
        except Exception as exc:  # sessions must survive anything a client sends
            return [error_event("internal", f"{type(exc).__name__}: {exc}")]

    def handle_frame(self, obj: dict) -> list[dict]:
        try:
            frame = frame_from_dict(obj, last_seq=self.last_seq)
        except MalformedFrame as exc:
            return [error_event(exc.code, str(exc))]
        return self.process_frame(frame)

    # -- pipeline stages -----------------------------------------------------

    def process_frame(self, frame: LandmarkFrame) -> list[dict]:
        self.last_seq = frame.seq
        out: list[dict] = []
        t0 = time.perf_counter_ns()
        try:
            features = normalize(frame)
        except SignPipeError as exc:
            return [error_event(exc.code, str(exc))]
        pred = predict(self.model, features, seq=frame.seq, ts_ms=frame.ts_ms)
        latency_us = (time.perf_counter_ns() - t0) / 1000.0
        pred = PredictionEvent(
            pred.seq, pred.label, pred.confidence, pred.accepted, latency_us, pred.ts_ms
        )
        out.append(
            {
                "type": "prediction",
                "seq": pred.seq,
                "label": pred.label,
                "confidence": pred.confidence,
                "accepted": pred.accepted,
                "latency_us": latency_us,
            }
        )
        for ev in self.debouncer.step(pred):
            out.extend(self._handle_debounce_event(ev))
        return out

    def _handle_debounce_event(self, ev) -> list[dict]:
        if isinstance(ev, CharEvent):
            return [{"type": "char", "char": ev.char, "ts_ms": ev.ts_ms}]
        assert isinstance(ev, WordBoundaryEvent)
        return self._handle_boundary(ev)

    def _handle_boundary(self, ev: WordBoundaryEvent) -> list[dict]:
        if not ev.raw:
            return []  # spurious boundary, nothing was spelled
        try:
            refined = refine(ev.raw, self.dictionary, self.cutoff)
        except EmptyInput:
            return []
        out = [
            {
                "type": "word",
                "raw": refined.raw,
                "word": refined.word,
                "distance": refined.distance,
                "accepted": refined.accepted,
                "candidates": list(refined.candidates),
                "cause": ev.cause.value,
                "ts_ms": ev.ts_ms,
            }
        ]
        if not refined.accepted:
            return out
        try:
            complete = word_accepted(self.buffer, refined, self.config.grammar)
        except UnknownVerb as exc:
            out.append(error_event(exc.code, str(exc)))
            return out
        if complete:
            instr = synthesize(
                self.buffer, self.config.grammar, self.next_instruction_id, ev.ts_ms
            )
            self.next_instruction_id += 1
            out.append(
                {
                    "type": "instruction",
                    "id": instr.id,
                    "text": instr.text,
                    "words": list(instr.words),
                    "ts_ms": instr.ts_ms,
                }
            )
            if self.hold_exec:
                self.pending = instr
            else:
                out.append(self._execute(instr))
        return out

    def _execute(self, instr: Instruction) -> dict:
        result = execute(self.scene, instr)
        self.scene = result.final_scene
        return {
            "type": "exec",
            "instruction_id": result.instruction_id,
            "success": result.success,
            "steps": result.steps,
            "reason": result.reason,
            "scene": scene_to_dict(result.final_scene),
        }

    # -- control messages ----------------------------------------------------

    def flush(self, ts_ms: float = 0.0) -> list[dict]:
        ev = self.debouncer.flush(ts_ms)
        out = self._handle_boundary(ev) if ev else []
        self.buffer.words.clear()
        self.pending = None
        return out

    def reset(self) -> None:
        self.debouncer = Debouncer(self.config.debounce)
        self.buffer = CommandBuffer()
        self.pending = None

    def configure(self, obj: dict) -> list[dict]:
        out: list[dict] = []
        if "hold_exec" in obj:
            self.hold_exec = bool(obj["hold_exec"])
        if "threshold" in obj:
            t = float(obj["threshold"])
            if not 0.0 <= t <= 1.0:
                return [error_event("bad_message", f"threshold {t} outside [0, 1]")]
            self.model.threshold = t
        if "approve" in obj:
            if self.pending is not None and self.pending.id == obj["approve"]:
                instr, self.pending = self.pending, None
                out.append(self._execute(instr))
            else:
                out.append(error_event("bad_message", "no matching pending instruction"))
        if "reject" in obj:
            if self.pending is not None and self.pending.id == obj["reject"]:
                self.pending = None
        return out
