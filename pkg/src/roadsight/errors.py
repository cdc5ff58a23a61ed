"""Exception hierarchy shared by every roadsight module."""


class RoadsightError(Exception):
    """Base class for all errors raised by roadsight."""


class InvalidInputError(RoadsightError, ValueError):
    """An argument violates an operation's precondition."""


class InvalidConfigError(RoadsightError, ValueError):
    """A configuration value (learner id, hyperparameter, split) is invalid."""


class DimensionMismatchError(InvalidInputError):
    """Feature dimension does not match what a model was trained on."""


class NoRoadError(RoadsightError):
    """Road extraction found no contour. ``mask`` holds the band mask."""

    def __init__(self, message, mask=None):
        super().__init__(message)
        self.mask = mask


class DataError(RoadsightError):
    """Problem with files on disk: unreadable, missing, malformed."""


class ManifestError(DataError):
    """Dataset ingestion failed; ``problems`` itemizes each offending entry."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ModelFormatError(DataError):
    """Serialized model is malformed or has an unsupported version."""


class BenchmarkError(DataError):
    """Too few usable samples to run a benchmark."""
