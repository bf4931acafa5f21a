"""Exception hierarchy shared by all culab modules."""


class CuError(Exception):
    """Base class for every error raised by culab."""


class ElementModelMismatch(CuError):
    """An element handle was used with a model it does not belong to."""


class NotIncreasing(CuError):
    """A chain descriptor does not describe an increasing sequence."""


class NotT0(CuError):
    """A specialization preorder has two distinct equivalent points."""


class ValidationError(CuError):
    """A model violates one of the ordered-monoid laws.

    ``violations`` holds every violation found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid model")


class UnsupportedModel(CuError):
    """The requested operation has no decision procedure for this model kind."""


class NotAnIdeal(CuError):
    pass


class NotWayBelow(CuError):
    pass


class PreconditionNotEstablished(CuError):
    """A constructive operation was called without its hypotheses being Proven."""


class HypothesisViolated(CuError):
    """Input data violates a stated hypothesis; ``index`` is the first failure."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class NoWitness(CuError):
    """A search that the hypotheses guarantee to succeed came back empty."""


class TheoremViolation(CuError):
    """A constructed object failed a postcondition that a theorem guarantees."""


class ParseError(CuError):
    pass
