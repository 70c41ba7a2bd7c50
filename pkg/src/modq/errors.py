"""Exception types shared across the package."""


class ModqError(Exception):
    """Base class for all modq errors."""


class CorpusError(ModqError):
    """Invalid corpus input: unreadable files, duplicate ids, bad splits."""


class FeatureError(ModqError):
    """Featurization failure, e.g. a comment without an embedding vector."""


class SchemaMismatchError(ModqError):
    """A feature vector or matrix does not match the model's schema."""


class TrainingError(ModqError):
    """Training preconditions violated, e.g. single-class input."""


class ModelFormatError(ModqError):
    """A model file could not be parsed or has an unsupported version."""
