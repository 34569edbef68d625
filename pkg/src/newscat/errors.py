"""Exception types shared across the toolkit."""


class NewscatError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(NewscatError):
    """Bad user-supplied configuration (missing column, bad flag value, ...)."""


class EmptyCorpusError(NewscatError):
    """An operation produced or received a corpus with no usable documents."""


class FeatureContractError(NewscatError):
    """Features handed to a model do not match its input contract."""


class TokenNotFoundError(NewscatError):
    """A token was looked up in a table that does not contain it."""
