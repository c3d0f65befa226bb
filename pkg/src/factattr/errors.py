"""Exception types shared across the package."""


class FactAttrError(Exception):
    """Base class for package errors."""


class TransportError(FactAttrError):
    """Network or HTTP failure talking to an external service. Retryable."""


class QuotaError(FactAttrError):
    """Quota or rate-limit rejection from an external service. Not retried."""


class EmptyQuery(FactAttrError):
    pass


class EmptyGeneration(FactAttrError):
    """The model returned blank output where text was required."""


class ParseError(FactAttrError):
    """Model output could not be parsed into the expected structure."""


class DimMismatch(FactAttrError):
    pass


class ZeroVector(FactAttrError):
    pass


class NoEvidence(FactAttrError):
    """Search produced no usable snippet for a query."""


class EmptyCandidates(FactAttrError):
    """All rerank candidates had empty snippets."""


class EmptyEdit(FactAttrError):
    """The editing model returned blank output."""


class UnknownEntity(FactAttrError):
    pass


class FixtureMiss(FactAttrError):
    """A provider call was not covered by the loaded fixture transcripts."""


class EmptySet(FactAttrError):
    pass


class NotNormalized(FactAttrError):
    """A probability vector does not sum to one."""


class ConfigError(FactAttrError):
    pass
