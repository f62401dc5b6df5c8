"""Exception types shared by all wittforge modules."""


class WittforgeError(Exception):
    """Base class for all library errors."""


class DescriptorMismatch(WittforgeError):
    """Operands belong to different field descriptors."""


class DivisionByZero(WittforgeError, ZeroDivisionError):
    """Division by the zero element of a field."""


class Undecided(WittforgeError):
    """The question is outside the decidable fragment for this descriptor.

    Deliberately distinct from a negative answer: callers must never
    treat Undecided as "no".
    """


class UnsupportedParameters(WittforgeError):
    """Parameters outside the documented caps (p, m, degree, dimension)."""


class WrongDescriptor(WittforgeError):
    """Operation requires a different class of field descriptor."""


class LengthMismatch(WittforgeError):
    """Witt vectors of different lengths were combined."""


class BadLength(WittforgeError):
    """Shift/truncate length parameters out of range."""


class BadParameters(WittforgeError):
    """Numeric parameters violate a precondition (e.g. m > t)."""


class StepInvalid(WittforgeError):
    """A certificate step failed to replay.

    Carries the step index and a reason string.
    """

    def __init__(self, index, reason):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


class CertificateFailed(WittforgeError):
    """An internally produced certificate did not verify (a bug)."""


class NotCentralSimple(WittforgeError):
    """The algebra is not central simple over its base field."""


class SearchExhausted(WittforgeError):
    """A bounded search hit its cap without finding a witness."""


class ChainNotFound(WittforgeError):
    """No chain-lemma data found within the search cap."""


class ObligationUnresolved(WittforgeError):
    """A deferred bound obligation could not be discharged here."""


class PreconditionFails(WittforgeError):
    """A stated precondition was checked and refuted."""


class OracleRefused(WittforgeError):
    """The re-presentation oracle declined the request."""
