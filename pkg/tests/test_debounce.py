import random

import pytest

from signpipe.debounce import (
    BoundaryCause,
    CharEvent,
    DebounceConfig,
    Debouncer,
    WordBoundaryEvent,
    strict_mode,
)
from signpipe.errors import OutOfOrder

from conftest import accepted, rejected

K5M3 = DebounceConfig(window_k=5, stable_m=3)


def run(deb, events):
    out = []
    for ev in events:
        out.extend(deb.step(ev))
    return out


def test_single_emission_for_steady_stream():
    deb = Debouncer(K5M3)
    out = run(deb, [accepted(i, "A") for i in range(10)])
    assert out == [CharEvent("A", 2 * 33.0)]  # committed at the third step
    assert deb.char_buffer == "A"


def test_alternating_labels_never_commit():
    deb = Debouncer(K5M3)
    out = run(deb, [accepted(i, "AB"[i % 2]) for i in range(20)])
    assert out == []


def test_doubled_letter_after_gap():
    deb = Debouncer(K5M3)
    stream = (
        [accepted(i, "A") for i in range(5)]
        + [rejected(i) for i in range(5, 10)]
        + [accepted(i, "A") for i in range(10, 15)]
    )
    out = run(deb, stream)
    assert [ev.char for ev in out if isinstance(ev, CharEvent)] == ["A", "A"]
    assert deb.char_buffer == "AA"


def test_word_termination_via_space():
    deb = Debouncer(K5M3)
    stream = []
    seq = 0
    for label in ["G", "R", "A", "B", "SPACE"]:
        for _ in range(5):
            stream.append(accepted(seq, label))
            seq += 1
    out = run(deb, stream)
    chars = [ev.char for ev in out if isinstance(ev, CharEvent)]
    bounds = [ev for ev in out if isinstance(ev, WordBoundaryEvent)]
    assert chars == ["G", "R", "A", "B"]
    assert len(bounds) == 1
    assert bounds[0].raw == "GRAB"
    assert bounds[0].cause is BoundaryCause.SPACE_GESTURE
    assert deb.char_buffer == ""


def test_rejected_only_stream_never_emits():
    deb = Debouncer(K5M3)
    assert run(deb, [rejected(i) for i in range(50)]) == []


def test_idle_timeout_terminates_word():
    deb = Debouncer(DebounceConfig(window_k=5, stable_m=3, idle_timeout_ms=1000))
    run(deb, [accepted(i, "A", ts_ms=i * 33.0) for i in range(5)])
    assert deb.char_buffer == "A"
    out = deb.step(rejected(100, ts_ms=5000.0))
    assert len(out) == 1
    assert out[0].cause is BoundaryCause.IDLE_TIMEOUT
    assert out[0].raw == "A"
    assert deb.char_buffer == ""


def test_out_of_order_rejected():
    deb = Debouncer(K5M3)
    deb.step(accepted(5, "A"))
    with pytest.raises(OutOfOrder):
        deb.step(accepted(5, "A"))


def test_flush():
    deb = Debouncer(K5M3)
    assert deb.flush() is None
    run(deb, [accepted(i, "G") for i in range(4)] + [accepted(i, "R") for i in range(4, 11)])
    assert deb.char_buffer == "GR"
    ev = deb.flush(ts_ms=999.0)
    assert ev == WordBoundaryEvent("GR", BoundaryCause.FLUSH, 999.0)
    assert len(deb.window) == 0 and deb.mode_run == 0 and deb.char_buffer == ""


def _simulate_modes(labels, k):
    """Independent strict-mode trace used to bound emissions."""
    modes = []
    window = []
    for label in labels:
        window.append(label)
        window = window[-k:]
        modes.append(strict_mode(window))
    return modes


def _brute_mode_changes(labels, k):
    modes = [None] + _simulate_modes(labels, k)
    return sum(a != b for a, b in zip(modes, modes[1:]))


@pytest.mark.parametrize("seed", range(5))
def test_random_stream_properties(seed):
    rng = random.Random(seed)
    alphabet = ["A", "B", "C", "SPACE"]
    for _ in range(200):
        k = rng.randint(2, 8)
        m = rng.randint(1, k)
        cfg = DebounceConfig(window_k=k, stable_m=m, idle_timeout_ms=10**9)
        deb = Debouncer(cfg)
        n = rng.randint(5, 40)
        labels = []
        events = []
        for i in range(n):
            if rng.random() < 0.25:
                events.append(rejected(i))
                labels.append(None)
            else:
                label = rng.choice(alphabet)
                events.append(accepted(i, label))
                labels.append(label)
        per_step = [deb.step(ev) for ev in events]
        out = [ev for step in per_step for ev in step]
        emissions = [
            ev
            for ev in out
            if isinstance(ev, CharEvent)
            or (isinstance(ev, WordBoundaryEvent) and ev.cause is BoundaryCause.SPACE_GESTURE)
        ]
        assert len(emissions) <= _brute_mode_changes(labels, k)
        modes = _simulate_modes(labels, k)
        commits = [
            (i, ev.char)
            for i, step in enumerate(per_step)
            for ev in step
            if isinstance(ev, CharEvent)
        ]
        for (i, a), (j, b) in zip(commits, commits[1:]):
            # a char was the strict mode whenever it committed
            assert modes[j] == b
            if a == b:
                # same character re-commits only after the mode departed
                assert any(modes[t] != a for t in range(i + 1, j))
        # determinism: same stream, same output
        deb2 = Debouncer(cfg)
        assert run(deb2, events) == out
