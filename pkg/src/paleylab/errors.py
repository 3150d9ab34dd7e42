"""Exception hierarchy.

Precondition failures derive from ``ValueError`` so callers that only care about
bad input can catch that.  Anything exceeding a configured size cap derives from
:class:`CapExceeded`; the CLI maps those to exit code 3.
"""


class PaleyLabError(Exception):
    """Base class for every error raised by the toolkit."""


class PreconditionError(PaleyLabError, ValueError):
    pass


class CapExceeded(PaleyLabError):
    pass


class InternalConsistencyError(PaleyLabError, AssertionError):
    """Two independent computations of the same quantity disagreed."""


# field_core
class NotPrime(PreconditionError):
    pass


class SizeCapExceeded(CapExceeded):
    pass


class DegreeNotDividing(PreconditionError):
    pass


class ZeroElement(PreconditionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


# cyclotomic
class ConductorCapExceeded(CapExceeded):
    pass


class RingMismatch(PreconditionError):
    pass


# characters / gauss sums
class OrderNotDividing(PreconditionError):
    pass


class TrivialCharacter(PreconditionError):
    pass


class NotCoprime(PreconditionError):
    pass


class CaseNotApplicable(PreconditionError):
    pass


class ParsevalViolation(InternalConsistencyError):
    pass


# graphs
class CongruenceViolation(PreconditionError):
    pass


class NotPeisertField(PreconditionError):
    pass


class NotSquare(PreconditionError):
    pass


# clique solver
class SolverCapExceeded(CapExceeded):
    pass


class AnchorsNotAdjacent(PreconditionError):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


# peisert criteria
class WrongSize(PreconditionError):
    pass


class DegreeMismatch(PreconditionError):
    pass


class NotAClique(PreconditionError):
    pass


# harness
class BruteForceCapExceeded(CapExceeded):
    pass
