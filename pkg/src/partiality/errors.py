"""Exception hierarchy.

Every failure raised by the library derives from :class:`PartialityError`,
which is also a :class:`ValueError` so callers validating input can catch
either.  The ``code`` attribute is a stable kebab-case identifier used by
the CLI when reporting structured errors.
"""


class PartialityError(ValueError):
    code = "error"


class DimensionMismatch(PartialityError):
    code = "dimension-mismatch"


class DimensionTooLarge(PartialityError):
    code = "dimension-too-large"


class UndefinedAtPure(PartialityError):
    code = "undefined-at-pure"


class OutOfRange(PartialityError):
    code = "out-of-range"


class InvalidState(PartialityError):
    code = "invalid-state"


# kernel
class HorizonTooSmall(PartialityError):
    code = "horizon-too-small"


class NotInvariant(PartialityError):
    code = "not-invariant"


class NotMonotone(PartialityError):
    code = "not-monotone"


class NoConvergence(PartialityError):
    code = "no-convergence"


# spectra
class NotHermitian(PartialityError):
    code = "not-hermitian"


class NotPositive(PartialityError):
    code = "not-positive"


class BadTrace(PartialityError):
    code = "bad-trace"


class NumericalDegeneracy(PartialityError):
    code = "numerical-degeneracy"


class OutOfBall(PartialityError):
    code = "out-of-ball"


class NotOrthonormal(PartialityError):
    code = "not-orthonormal"


class NotCommuting(PartialityError):
    code = "not-commuting"


# exactness
class NotAChain(PartialityError):
    code = "not-a-chain"


class LimitMismatch(PartialityError):
    code = "limit-mismatch"


class NotALowerBound(PartialityError):
    code = "not-a-lower-bound"


# cli
class ResolutionTooLarge(PartialityError):
    code = "resolution-too-large"


class ParseError(PartialityError):
    """A state document could not be turned into a domain value.

    ``location`` is a JSON-pointer-like path to the offending node.
    """

    code = "parse-error"

    def __init__(self, message, location=""):
        super().__init__(f"{location or '/'}: {message}")
        self.location = location or "/"
        self.detail = message


class MalformedJson(ParseError):
    code = "malformed-json"


class SchemaViolation(ParseError):
    code = "schema-violation"


class InvariantViolation(ParseError):
    code = "invariant-violation"
