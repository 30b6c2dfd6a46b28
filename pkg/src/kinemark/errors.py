"""Exception hierarchy shared across the pipeline stages."""


def _rebuild(cls, args, kwargs, state):
    obj = cls(*args, **kwargs)
    obj.__dict__.update(state)
    return obj


class KinemarkError(Exception):
    """Base class for every error raised by this package.

    Constructor arguments are remembered so subclasses with custom signatures
    survive pickling (e.g. when raised inside a worker process).
    """

    def __new__(cls, *args, **kwargs):
        obj = super().__new__(cls, *args)
        obj._ctor = (args, kwargs)
        return obj

    def __reduce__(self):
        args, kwargs = self._ctor
        state = {k: v for k, v in self.__dict__.items() if k != "_ctor"}
        return _rebuild, (self.__class__, args, kwargs, state)


# --- corpus -----------------------------------------------------------------

class CorpusError(KinemarkError, ValueError):
    pass


class MissingColumn(CorpusError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"missing column {column!r}")


class NonFiniteSample(CorpusError):
    def __init__(self, row, detail="non-finite value"):
        self.row = row
        super().__init__(f"row {row}: {detail}")


class RateMismatch(CorpusError):
    def __init__(self, observed_hz, declared_hz):
        self.observed_hz = observed_hz
        self.declared_hz = declared_hz
        super().__init__(
            f"time column implies {observed_hz:.6g} Hz but {declared_hz:.6g} Hz was declared"
        )


class EmptyRecording(CorpusError):
    pass


class InvalidOutcome(CorpusError):
    pass


class RecordingTooShort(CorpusError):
    def __init__(self, participant_id, required_s, actual_s):
        self.participant_id = participant_id
        self.required_s = required_s
        self.actual_s = actual_s
        super().__init__(
            f"participant {participant_id!r}: needs {required_s:g} s, has {actual_s:g} s"
        )


# --- signal processing --------------------------------------------------------

class SeriesTooShort(KinemarkError, ValueError):
    def __init__(self, length, minimum, context=None):
        self.length = length
        self.minimum = minimum
        self.context = context
        where = f" ({context})" if context else ""
        super().__init__(f"series of length {length} is shorter than {minimum}{where}")


class NonIntegralWindow(KinemarkError, ValueError):
    pass


# --- preprocessing / models -----------------------------------------------------

class InsufficientClass(KinemarkError, ValueError):
    pass


class EmptyMatrix(KinemarkError, ValueError):
    pass


class SingleClassTraining(KinemarkError, ValueError):
    pass


class MinorityTooSmall(KinemarkError, ValueError):
    pass


class NonFiniteInput(KinemarkError, ValueError):
    pass


class SchemaMismatch(KinemarkError, ValueError):
    pass


class LengthMismatch(KinemarkError, ValueError):
    pass


class LeakageError(KinemarkError, RuntimeError):
    """Train and test matrices share a participant."""


# --- harness ------------------------------------------------------------------

class ConfigError(KinemarkError, ValueError):
    pass


class UnsupportedFormat(KinemarkError, ValueError):
    pass


class AbortedRepetition(KinemarkError, RuntimeError):
    def __init__(self, rep_index, cause):
        self.rep_index = rep_index
        self.cause = cause
        super().__init__(f"repetition {rep_index} failed: {cause!r}")
