import pytest

from signpipe.errors import EmptyBuffer, UnknownVerb
from signpipe.executor import (
    CommandBuffer,
    GrammarConfig,
    Instruction,
    Scene,
    SceneObject,
    execute,
    synthesize,
    word_accepted,
)
from signpipe.lexicon import RefinedWord


def rw(word, raw=None):
    return RefinedWord(raw=raw or word, word=word, distance=0, accepted=True)


def make_scene(**objects):
    return Scene(
        bounds=(8, 8),
        gripper_pos=(0, 0),
        objects=[SceneObject(name, pos) for name, pos in objects.items()],
    )


def instr(text, iid=1):
    return Instruction(id=iid, text=text, words=tuple(text.upper().split()), ts_ms=0.0)


GRAMMAR = GrammarConfig()


class TestSynthesize:
    def test_verb_object(self):
        buf = CommandBuffer(words=[rw("GRAB"), rw("APPLE")])
        out = synthesize(buf, GRAMMAR, instruction_id=1)
        assert out.text == "grab the apple"
        assert out.words == ("GRAB", "APPLE")
        assert buf.words == []  # buffer cleared

    def test_single_verb(self):
        out = synthesize(CommandBuffer(words=[rw("MOVE")]), GRAMMAR, 2)
        assert out.text == "move"

    def test_unknown_verb_retains_buffer(self):
        buf = CommandBuffer(words=[rw("APPLE")])
        with pytest.raises(UnknownVerb):
            synthesize(buf, GRAMMAR, 3)
        assert len(buf.words) == 1

    def test_empty_buffer(self):
        with pytest.raises(EmptyBuffer):
            synthesize(CommandBuffer(), GRAMMAR, 4)

    def test_custom_template(self):
        grammar = GrammarConfig(templates={"GRAB": "pick up the {objects}"})
        out = synthesize(CommandBuffer(words=[rw("GRAB"), rw("CUP")]), grammar, 5)
        assert out.text == "pick up the cup"


class TestWordAccepted:
    def test_verb_pends(self):
        buf = CommandBuffer()
        assert word_accepted(buf, rw("GRAB"), GRAMMAR) is False
        assert [w.word for w in buf.words] == ["GRAB"]

    def test_arity_completion(self):
        buf = CommandBuffer(words=[rw("GRAB")])
        assert word_accepted(buf, rw("APPLE"), GRAMMAR) is True
        assert synthesize(buf, GRAMMAR, 1).text == "grab the apple"

    def test_zero_arity_triggers_immediately(self):
        buf = CommandBuffer()
        assert word_accepted(buf, rw("DROP"), GRAMMAR) is True

    def test_non_verb_first_word_refused(self):
        buf = CommandBuffer()
        with pytest.raises(UnknownVerb):
            word_accepted(buf, rw("APPLE"), GRAMMAR)
        assert buf.words == []

    def test_rejected_word_refused(self):
        bad = RefinedWord(raw="XQZW", word="XQZW", distance=4, accepted=False)
        with pytest.raises(ValueError):
            word_accepted(CommandBuffer(), bad, GRAMMAR)


class TestExecute:
    def test_grab(self):
        scene = make_scene(APPLE=(3, 0))
        res = execute(scene, instr("grab the apple"))
        assert res.success and res.steps == 3
        assert res.final_scene.holding == "APPLE"
        assert res.final_scene.gripper_pos == (3, 0)
        assert scene.holding is None  # input scene untouched

    def test_grab_missing_object(self):
        res = execute(make_scene(BOTTLE=(1, 1)), instr("grab the apple"))
        assert not res.success
        assert "apple" in res.reason.lower() or "APPLE" in res.reason

    def test_fuzzy_object_resolution(self):
        res = execute(make_scene(APPLE=(2, 2)), instr("grab the aple"))
        assert res.success and res.final_scene.holding == "APPLE"

    def test_ambiguous_fuzzy_fails(self):
        scene = Scene(
            bounds=(8, 8),
            gripper_pos=(0, 0),
            objects=[SceneObject("CAT", (1, 1)), SceneObject("CAP", (2, 2))],
        )
        res = execute(scene, instr("grab the cax"))
        assert not res.success and "ambiguous" in res.reason

    def test_drop_after_grab(self):
        scene = make_scene(APPLE=(3, 0))
        scene = execute(scene, instr("grab the apple")).final_scene
        res = execute(scene, instr("drop", iid=2))
        assert res.success and res.steps == 0
        obj = res.final_scene.find("APPLE")
        assert obj.pos == (3, 0) and not obj.held
        assert res.final_scene.holding is None

    def test_drop_holding_nothing(self):
        res = execute(make_scene(APPLE=(3, 0)), instr("drop"))
        assert not res.success and "holding nothing" in res.reason

    def test_place_on_target(self):
        scene = make_scene(APPLE=(3, 0), BOX=(5, 2))
        scene = execute(scene, instr("grab the apple")).final_scene
        res = execute(scene, instr("place the box", iid=2))
        assert res.success and res.steps == 4  # (3,0) -> (5,2)
        assert res.final_scene.find("APPLE").pos == (5, 2)
        assert res.final_scene.holding is None

    def test_move_round_trip(self):
        res = execute(make_scene(BALL=(2, 3)), instr("move the ball"))
        assert res.success and res.steps == 10
        assert res.final_scene.find("BALL").pos == (0, 0)

    def test_push_displaces_one_cell(self):
        res = execute(make_scene(CUP=(4, 4)), instr("push the cup"))
        assert res.success and res.steps == 9
        assert res.final_scene.find("CUP").pos == (5, 4)

    def test_push_at_edge_reverses(self):
        res = execute(make_scene(CUP=(7, 0)), instr("push the cup"))
        assert res.success
        assert res.final_scene.find("CUP").pos == (6, 0)

    def test_invalid_verb_in_band(self):
        res = execute(make_scene(APPLE=(1, 0)), instr("teleport the apple"))
        assert not res.success and "verb" in res.reason

    def test_deterministic_and_conserving(self):
        scene = make_scene(APPLE=(3, 0), BOX=(5, 5), CUP=(7, 7))
        for text in ["grab the apple", "drop", "push the cup", "move the box", "grab the cup"]:
            a = execute(scene, instr(text))
            b = execute(scene, instr(text))
            assert a == b
            assert len(a.final_scene.objects) == 3
            scene = a.final_scene
