"""Exception hierarchy shared by all modules."""


class SubwordError(Exception):
    """Base class for toolkit errors."""


class CorpusError(SubwordError):
    """Unreadable or malformed corpus input."""


class AlignmentError(SubwordError):
    """Parallel inputs have different numbers of lines."""


class ModelFormatError(SubwordError):
    """A model or spec file could not be parsed."""


class ScriptMismatchError(SubwordError):
    """Corpora use different writing systems and no mapping was given."""


class DegenerateInputError(SubwordError, ValueError):
    """Statistic undefined for the given input (e.g. zero variance)."""
