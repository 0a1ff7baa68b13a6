"""Exception taxonomy for the qreal library.

Every failure mode raised by the library derives from QRealError, so
callers (and the CLI) can distinguish domain problems from genuine bugs.
"""


class QRealError(Exception):
    """Base class for all library errors."""


class DomainError(QRealError):
    """Input outside the mathematical domain of the operation."""


class DivisionByZero(QRealError, ZeroDivisionError):
    """Exact division by a zero polynomial / rational function."""


class PrecisionExhausted(QRealError):
    """Decimal input does not carry enough digits to certify the next digit."""


class StreamExhausted(QRealError):
    """A digit source ended before the requested order was reached."""


class InsufficientData(QRealError):
    """Not enough coefficients for the requested estimate."""


class SearchBudgetExceeded(QRealError):
    """Adaptive search ran out of its coefficient budget."""


class OutsideRegion(DomainError):
    """q is not in the region required by a certified evaluator."""


class OutsideDisk(DomainError):
    """q is not in the 2 - sqrt(3) convergence disk."""


class OutsideInterval(DomainError):
    """q is not in the negative-axis interval (-(3-sqrt(5))/2, 0)."""


class ToleranceUnreachable(QRealError):
    """Requested tolerance lies below what double precision can certify."""


class NoDecayDetected(QRealError):
    """Term-decay detector did not trigger within the evaluation budget."""


class EnumerationBudget(QRealError):
    """Word enumeration exceeded its node budget."""


class BracketingFailure(QRealError):
    """Root bracket does not contain a sign change."""


class PoleParameter(QRealError):
    """Series parameter sits on (or too close to) a pole."""


class ZeroDenominator(QRealError):
    """Denominator of a functional ratio vanishes numerically."""


class PoleError(QRealError):
    """Evaluation at a pole of the function."""


class UnreachableArgument(QRealError):
    """Argument cannot be reached by the implemented transformation paths."""


class ConvergenceTooSlow(QRealError):
    """Series would need a modular transformation to converge acceptably."""


class BranchAmbiguity(QRealError):
    """Value depends on a continuation path the caller did not supply."""


class EvaluationFailure(QRealError):
    """A numeric evaluation failed along a requested path."""
