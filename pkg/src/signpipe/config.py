"""Runtime configuration covering every tunable stage of the pipeline.

Loaded from a single JSON document; missing fields fall back to the
documented defaults, and CLI flags override file values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .augment import AugmentConfig
from .classifier import DEFAULT_THRESHOLD, TrainConfig
from .debounce import DebounceConfig
from .errors import ParseError
from .executor import GrammarConfig
from .lexicon import half_length_cutoff


@dataclass
class CutoffPolicy:
    """Acceptance cutoff for lexical refinement."""

    policy: str = "half-length"
    max_distance: int = 2

    def as_function(self) -> Callable[[str], int]:
        if self.policy == "half-length":
            return half_length_cutoff
        if self.policy == "fixed":
            limit = self.max_distance
            return lambda s: limit
        raise ParseError(f"unknown cutoff policy {self.policy!r}")


@dataclass
class PipelineConfig:
    augment: AugmentConfig = field(default_factory=AugmentConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    debounce: DebounceConfig = field(default_factory=DebounceConfig)
    cutoff: CutoffPolicy = field(default_factory=CutoffPolicy)
    grammar: GrammarConfig = field(default_factory=GrammarConfig)
    threshold: float = DEFAULT_THRESHOLD
    hold_exec: bool = False  # wait for operator approval before executing


def _pick(obj: dict, cls, **renames):
    kwargs = {}
    for name in cls.__dataclass_fields__:
        key = renames.get(name, name)
        if key in obj:
            kwargs[name] = obj[key]
    return kwargs


def config_from_dict(obj: dict) -> PipelineConfig:
    try:
        aug = AugmentConfig(**_pick(obj.get("augment", {}), AugmentConfig))
        train_kwargs = _pick(obj.get("train", {}), TrainConfig)
        train_kwargs.pop("augment", None)
        train = TrainConfig(augment=aug, **train_kwargs)
        deb = DebounceConfig(**_pick(obj.get("debounce", {}), DebounceConfig))
        cut = CutoffPolicy(**_pick(obj.get("refine", {}), CutoffPolicy))
        cut.as_function()  # validate the policy name early
        grammar = GrammarConfig(**_pick(obj.get("grammar", {}), GrammarConfig))
        for verb, arity in grammar.verb_arity.items():
            if not isinstance(arity, int) or arity < 0:
                raise ParseError(f"bad arity for verb {verb!r}")
        return PipelineConfig(
            augment=aug,
            train=train,
            debounce=deb,
            cutoff=cut,
            grammar=grammar,
            threshold=float(obj.get("threshold", DEFAULT_THRESHOLD)),
            hold_exec=bool(obj.get("hold_exec", False)),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad config: {exc}") from exc


def config_to_dict(cfg: PipelineConfig) -> dict:
    return {
        "augment": {
            "rot_deg_range": list(cfg.augment.rot_deg_range),
            "scale_range": list(cfg.augment.scale_range),
            "flip_prob": cfg.augment.flip_prob,
            "jitter_sigma": cfg.augment.jitter_sigma,
            "seed": cfg.augment.seed,
        },
        "train": {
            "learning_rate": cfg.train.learning_rate,
            "epochs": cfg.train.epochs,
            "batch_size": cfg.train.batch_size,
            "l2": cfg.train.l2,
            "copies_per_sample": cfg.train.copies_per_sample,
            "seed": cfg.train.seed,
            "threshold": cfg.train.threshold,
        },
        "debounce": {
            "window_k": cfg.debounce.window_k,
            "stable_m": cfg.debounce.stable_m,
            "idle_timeout_ms": cfg.debounce.idle_timeout_ms,
        },
        "refine": {"policy": cfg.cutoff.policy, "max_distance": cfg.cutoff.max_distance},
        "grammar": {
            "verb_arity": dict(cfg.grammar.verb_arity),
            "templates": dict(cfg.grammar.templates),
        },
        "threshold": cfg.threshold,
        "hold_exec": cfg.hold_exec,
    }
