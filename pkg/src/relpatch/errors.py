"""Exception hierarchy.  Everything raised on bad input derives from AlgebraError."""


class AlgebraError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class NoEmbedding(AlgebraError):
    pass


class RingMismatch(AlgebraError):
    pass


class ExactDivisionError(AlgebraError, ArithmeticError):
    """An exact division left the ring; indicates an internal inconsistency."""


class NotSurjective(AlgebraError):
    """B -> A/h^k A has no preimage for the requested residue."""


class NotInRing(AlgebraError, ValueError):
    pass


class UnsupportedType(AlgebraError, ValueError):
    pass


class NotARoot(AlgebraError, ValueError):
    pass


class JNotInvariant(AlgebraError, ValueError):
    pass


class NotARelativeRoot(AlgebraError, ValueError):
    pass


class RankMismatch(AlgebraError, ValueError):
    pass


class NotInUnipotent(AlgebraError):
    pass


class OppositeRay(AlgebraError, ValueError):
    pass


class SameRoot(AlgebraError, ValueError):
    """Commutator maps are requested for a root with itself."""


class NotInLevi(AlgebraError):
    pass


class NotInGroup(AlgebraError):
    pass


class NonProperParabolic(AlgebraError):
    pass


class ParseError(Exception):
    """Malformed CLI input (exit code 2)."""
