"""Command buffering, instruction synthesis and the grid-world executor.

Accepted words accumulate in a command buffer until the verb's arity is
satisfied, at which point they are rendered into a plain-language
instruction string ("grab the apple").  The executor is a deterministic
grid mock of the downstream manipulation policy: it parses the instruction
text, resolves the named object (exact match, else a unique fuzzy match at
edit distance <= 1), walks the gripper along a Manhattan path and updates
the scene.  Failures are in-band results, never exceptions, because a bad
command must not kill a live session.

Mock motion conventions (grid cells, steps = gripper cell moves):
  grab X   walk to X and pick it up
  drop     release the held object at the current cell
  place X  walk to X's cell and release the held object there
  move X   walk to X, pick it up, carry it back to the start cell
  push X   walk to X, shove it one cell in +x (or -x at the edge)
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from .errors import EmptyBuffer, UnknownVerb
from .lexicon import RefinedWord, levenshtein

DEFAULT_VERB_ARITY = {"GRAB": 1, "DROP": 0, "MOVE": 1, "PUSH": 1, "PLACE": 1}


@dataclass
class GrammarConfig:
    verb_arity: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_VERB_ARITY))
    templates: dict[str, str] = field(default_factory=dict)


@dataclass
class CommandBuffer:
    words: list[RefinedWord] = field(default_factory=list)
    started_ts: float = 0.0


@dataclass(frozen=True)
class Instruction:
    id: int
    text: str
    words: tuple[str, ...]
    ts_ms: float


@dataclass
class SceneObject:
    name: str
    pos: tuple[int, int]
    held: bool = False


@dataclass
class Scene:
    bounds: tuple[int, int]
    gripper_pos: tuple[int, int]
    objects: list[SceneObject] = field(default_factory=list)
    holding: str | None = None

    def __post_init__(self):
        names = [o.name for o in self.objects]
        if len(names) != len(set(names)):
            raise ValueError("object names must be unique")
        w, h = self.bounds
        for o in self.objects:
            x, y = o.pos
            if not (0 <= x < w and 0 <= y < h):
                raise ValueError(f"{o.name} at {o.pos} outside bounds {self.bounds}")
        if sum(o.held for o in self.objects) > 1:
            raise ValueError("at most one object may be held")

    def find(self, name: str) -> SceneObject | None:
        for o in self.objects:
            if o.name == name:
                return o
        return None


@dataclass(frozen=True)
class ExecResult:
    instruction_id: int
    success: bool
    steps: int
    reason: str
    final_scene: Scene


def word_accepted(buffer: CommandBuffer, w: RefinedWord, grammar: GrammarConfig) -> bool:
    """Append an accepted word; True when the command is arity-complete.

    A non-verb first word is refused outright (buffer left empty) so the
    operator gets immediate feedback instead of a stuck buffer.
    """
    if not w.accepted:
        raise ValueError("only accepted words enter the command buffer")
    if not buffer.words and w.word not in grammar.verb_arity:
        raise UnknownVerb(f"{w.word!r} is not a known verb")
    buffer.words.append(w)
    arity = grammar.verb_arity[buffer.words[0].word]
    return len(buffer.words) - 1 >= arity


def synthesize(
    buffer: CommandBuffer,
    grammar: GrammarConfig,
    instruction_id: int,
    ts_ms: float = 0.0,
) -> Instruction:
    """Render the buffered words into an instruction; clears the buffer."""
    if not buffer.words:
        raise EmptyBuffer("nothing to synthesize")
    words = tuple(w.word for w in buffer.words)
    verb = words[0]
    if verb not in grammar.verb_arity:
        raise UnknownVerb(f"{verb!r} is not a known verb")  # buffer retained
    objects = " ".join(w.lower() for w in words[1:])
    template = grammar.templates.get(verb)
    if template is not None:
        text = template.format(verb=verb.lower(), objects=objects)
    elif objects:
        text = f"{verb.lower()} the {objects}"
    else:
        text = verb.lower()
    buffer.words.clear()
    return Instruction(id=instruction_id, text=text, words=words, ts_ms=ts_ms)


def _l1(a: tuple[int, int], b: tuple[int, int]) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _resolve(scene: Scene, name: str) -> tuple[SceneObject | None, str]:
    obj = scene.find(name)
    if obj is not None:
        return obj, ""
    near = [o for o in scene.objects if levenshtein(o.name, name) <= 1]
    if len(near) == 1:
        return near[0], ""
    if not near:
        return None, f"no object matching {name!r} in scene"
    return None, f"ambiguous object {name!r}: {[o.name for o in near]}"


def execute(scene: Scene, instr: Instruction) -> ExecResult:
    """Simulate one instruction against a copy of the scene."""
    scene = copy.deepcopy(scene)

    def fail(reason: str, steps: int = 0) -> ExecResult:
        return ExecResult(instr.id, False, steps, reason, scene)

    tokens = instr.text.lower().split()
    if not tokens:
        return fail("empty instruction")
    verb = tokens[0]
    obj_name = " ".join(t for t in tokens[1:] if t != "the").upper()
    if verb not in ("grab", "drop", "move", "push", "place"):
        return fail(f"unknown verb {verb!r}")

    held = scene.find(scene.holding) if scene.holding else None
    steps = 0

    if verb == "drop":
        if held is None:
            return fail("drop while holding nothing")
        held.pos = scene.gripper_pos
        held.held = False
        scene.holding = None
        return ExecResult(instr.id, True, steps, "", scene)

    if verb == "grab":
        if held is not None:
            return fail(f"already holding {held.name}")
        obj, why = _resolve(scene, obj_name)
        if obj is None:
            return fail(why)
        steps = _l1(scene.gripper_pos, obj.pos)
        scene.gripper_pos = obj.pos
        obj.held = True
        scene.holding = obj.name
        return ExecResult(instr.id, True, steps, "", scene)

    if verb == "place":
        if held is None:
            return fail("place while holding nothing")
        obj, why = _resolve(scene, obj_name)
        if obj is None:
            return fail(why)
        steps = _l1(scene.gripper_pos, obj.pos)
        scene.gripper_pos = obj.pos
        held.pos = obj.pos
        held.held = False
        scene.holding = None
        return ExecResult(instr.id, True, steps, "", scene)

    if verb == "move":
        if held is not None:
            return fail(f"gripper busy holding {held.name}")
        obj, why = _resolve(scene, obj_name)
        if obj is None:
            return fail(why)
        start = scene.gripper_pos
        steps = 2 * _l1(start, obj.pos)
        obj.pos = start
        scene.gripper_pos = start
        return ExecResult(instr.id, True, steps, "", scene)

    # push
    if held is not None:
        return fail(f"gripper busy holding {held.name}")
    obj, why = _resolve(scene, obj_name)
    if obj is None:
        return fail(why)
    steps = _l1(scene.gripper_pos, obj.pos) + 1
    scene.gripper_pos = obj.pos
    x, y = obj.pos
    w, _ = scene.bounds
    obj.pos = (x + 1, y) if x + 1 < w else (max(x - 1, 0), y)
    return ExecResult(instr.id, True, steps, "", scene)
