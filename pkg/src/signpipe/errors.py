"""Exception types shared across the pipeline.

Every error that can reach the wire carries a short machine-readable
``code`` so the service can answer in-band instead of dropping a session.
"""


class SignPipeError(Exception):
    code = "error"
    recoverable = True


class MalformedFrame(SignPipeError):
    code = "malformed_frame"

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class DegenerateHand(SignPipeError):
    code = "degenerate_hand"


class DimensionMismatch(SignPipeError):
    code = "dimension_mismatch"


class InsufficientData(SignPipeError):
    code = "insufficient_data"
    recoverable = False


class OutOfOrder(SignPipeError):
    code = "out_of_order"


class EmptyInput(SignPipeError):
    code = "empty_input"


class UnknownVerb(SignPipeError):
    code = "unknown_verb"


class EmptyBuffer(SignPipeError):
    code = "empty_buffer"


class EmptyReference(SignPipeError):
    code = "empty_reference"


class TooFewEvents(SignPipeError):
    code = "too_few_events"


class ParseError(SignPipeError):
    code = "parse_error"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class VersionMismatch(SignPipeError):
    code = "version_mismatch"
    recoverable = False
