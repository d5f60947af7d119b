"""Temporal debouncing of the per-frame prediction stream.

Accepted labels enter a sliding window; rejected frames occupy window slots
as gaps so sparse confident frames cannot dominate an uncertain stretch.  A
character commits only after its label has been the strict (unique) mode of
the window for `stable_m` consecutive steps, and the same character cannot
recommit until the mode has moved away, which is what allows doubled letters
after a deliberate pause.  A committed SPACE terminates the buffered word;
so does an idle timeout when the hand disappears mid-word.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum

from .classifier import PredictionEvent
from .errors import OutOfOrder
from .landmarks import SPACE


@dataclass
class DebounceConfig:
    window_k: int = 15
    stable_m: int = 8
    idle_timeout_ms: float = 2000.0

    def __post_init__(self):
        if not 1 <= self.stable_m <= self.window_k:
            raise ValueError(
                f"need 1 <= stable_m <= window_k, got {self.stable_m}/{self.window_k}"
            )
        if self.idle_timeout_ms <= 0:
            raise ValueError("idle_timeout_ms must be > 0")


class BoundaryCause(str, Enum):
    SPACE_GESTURE = "space_gesture"
    IDLE_TIMEOUT = "idle_timeout"
    FLUSH = "flush"


@dataclass(frozen=True)
class CharEvent:
    char: str
    ts_ms: float


@dataclass(frozen=True)
class WordBoundaryEvent:
    raw: str
    cause: BoundaryCause
    ts_ms: float


def strict_mode(window) -> str | None:
    """Unique most frequent non-gap label in the window, or None on ties."""
    counts = Counter(label for label in window if label is not None)
    if not counts:
        return None
    ranked = counts.most_common(2)
    if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
        return None
    return ranked[0][0]


class Debouncer:
    """Per-session state machine; feed events strictly in seq order."""

    def __init__(self, cfg: DebounceConfig | None = None):
        self.cfg = cfg or DebounceConfig()
        self.window: deque[str | None] = deque(maxlen=self.cfg.window_k)
        self.mode_label: str | None = None
        self.mode_run = 0
        self.last_emitted: str | None = None
        self.chars: list[str] = []
        self.last_accept_ts: float | None = None
        self.last_seq: int | None = None

    @property
    def char_buffer(self) -> str:
        return "".join(self.chars)

    def step(self, ev: PredictionEvent) -> list[CharEvent | WordBoundaryEvent]:
        if self.last_seq is not None and ev.seq <= self.last_seq:
            raise OutOfOrder(f"seq {ev.seq} after {self.last_seq}")
        self.last_seq = ev.seq

        out: list[CharEvent | WordBoundaryEvent] = []
        if (
            self.chars
            and self.last_accept_ts is not None
            and ev.ts_ms - self.last_accept_ts > self.cfg.idle_timeout_ms
        ):
            out.append(
                WordBoundaryEvent(self.char_buffer, BoundaryCause.IDLE_TIMEOUT, ev.ts_ms)
            )
            # last_emitted stays: the window mode has not departed yet
            self.chars.clear()

        self.window.append(ev.label if ev.accepted else None)
        mode = strict_mode(self.window)
        if mode is None:
            self.mode_label, self.mode_run = None, 0
        elif mode == self.mode_label:
            if ev.accepted:  # gaps never extend a run
                self.mode_run += 1
        else:
            self.mode_label = mode
            self.mode_run = 1 if ev.accepted else 0
        if mode != self.last_emitted:
            self.last_emitted = None

        if (
            self.mode_label is not None
            and self.mode_run >= self.cfg.stable_m
            and self.last_emitted != self.mode_label
        ):
            self.last_emitted = self.mode_label
            if self.mode_label == SPACE:
                out.append(
                    WordBoundaryEvent(self.char_buffer, BoundaryCause.SPACE_GESTURE, ev.ts_ms)
                )
                self.chars.clear()
            else:
                out.append(CharEvent(self.mode_label, ev.ts_ms))
                self.chars.append(self.mode_label)

        if ev.accepted:
            self.last_accept_ts = ev.ts_ms
        return out

    def flush(self, ts_ms: float = 0.0) -> WordBoundaryEvent | None:
        """Force-terminate any in-progress word and reset the window."""
        ev = None
        if self.chars:
            ev = WordBoundaryEvent(self.char_buffer, BoundaryCause.FLUSH, ts_ms)
        self.window.clear()
        self.mode_label, self.mode_run = None, 0
        self.last_emitted = None
        self.chars.clear()
        self.last_accept_ts = None
        return ev
