"""Exception hierarchy.

Every error raised on bad mathematical input derives from :class:`AlgebraError`;
the CLI maps those to exit code 1. :class:`ParseError` covers malformed text.
"""


class AlgebraError(Exception):
    """Base class for domain-level failures."""


class ParseError(AlgebraError, ValueError):
    pass


class DomainMismatch(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


class Unsupported(AlgebraError):
    pass


class NoEmbedding(AlgebraError):
    pass


class InvalidDomain(AlgebraError, ValueError):
    pass


class CoefficientNotInDomain(AlgebraError):
    pass


class NonIntegralExponent(AlgebraError):
    pass


class InvalidSpec(AlgebraError, ValueError):
    pass


class UnsupportedIBAPair(InvalidSpec):
    pass


class NotAMember(AlgebraError):
    """A polynomial was passed where membership in a composite is required."""


class InfiniteDomain(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    def __init__(self, message, budget=None):
        super().__init__(message)
        self.budget = dict(budget or {})


class NotAField(AlgebraError):
    pass


class NotFieldTower(NotAField):
    pass


class UndecidableCosetTest(AlgebraError):
    pass


class NotApplicable(AlgebraError):
    pass


class DenominatorNotInSystem(AlgebraError):
    pass


class NegativeExponent(AlgebraError):
    pass


class NotInMonoid(AlgebraError):
    pass


class HypothesisViolated(AlgebraError):
    def __init__(self, which, detail=""):
        super().__init__(f"{which}: {detail}" if detail else which)
        self.which = which


class SearchSpaceTooLarge(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class NonMonomialDenominator(AlgebraError):
    pass


class AlphabetMismatch(AlgebraError):
    pass


class LetterOutOfRange(AlgebraError):
    pass


class MalformedLength(AlgebraError):
    pass


class InconsistentPair(AlgebraError):
    def __init__(self, position, recovered):
        super().__init__(
            f"pair at block position {position} decodes inconsistently: "
            f"{recovered[0]} vs {recovered[1]}"
        )
        self.position = position
        self.recovered = recovered


class DecodeError(AlgebraError):
    pass
