"""signpipe: fingerspelled hand-landmark streams to robot instructions.

Pipeline stages: geometric normalization -> softmax alphabet classifier ->
sliding-window debouncing -> dictionary refinement -> instruction synthesis
-> mock grid-world execution, fronted by a newline-delimited JSON service.
"""

from .augment import AugmentConfig, augment_frame, expand_dataset
from .classifier import Model, PredictionEvent, TrainConfig, evaluate, predict, train
from .config import PipelineConfig
from .debounce import CharEvent, DebounceConfig, Debouncer, WordBoundaryEvent
from .executor import ExecResult, Instruction, Scene, SceneObject, execute, synthesize
from .landmarks import LABELS, SPACE, Hand, LandmarkFrame, normalize, validate_frame
from .lexicon import Dictionary, RefinedWord, levenshtein, refine
from .metrics import MetricsReport, flip_rate, replay, wer
from .pipeline import Session
from .prototypes import synth_dataset, synth_prototypes

__version__ = "0.1.0"

__all__ = [
    "AugmentConfig", "augment_frame", "expand_dataset",
    "Model", "PredictionEvent", "TrainConfig", "evaluate", "predict", "train",
    "PipelineConfig",
    "CharEvent", "DebounceConfig", "Debouncer", "WordBoundaryEvent",
    "ExecResult", "Instruction", "Scene", "SceneObject", "execute", "synthesize",
    "LABELS", "SPACE", "Hand", "LandmarkFrame", "normalize", "validate_frame",
    "Dictionary", "RefinedWord", "levenshtein", "refine",
    "MetricsReport", "flip_rate", "replay", "wer",
    "Session",
    "synth_dataset", "synth_prototypes",
    "__version__",
]
