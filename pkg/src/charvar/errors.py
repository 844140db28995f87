"""Exception hierarchy.

Every domain failure derives from :class:`CharVarError`; the CLI echoes the
class name and exits with status 1.
"""


class CharVarError(Exception):
    """Base class for domain errors."""


class NotCoprime(CharVarError):
    pass


class NotKnot(CharVarError):
    pass


class NotApplicable(CharVarError):
    pass


class BudgetExceeded(CharVarError):
    pass


class AuditMismatch(CharVarError):
    """Two independent counting routes disagreed."""


class SingularConjugator(CharVarError):
    pass


class NonCentral(CharVarError):
    pass


class NotDiagonalizable(CharVarError):
    pass


class IllConditioned(CharVarError):
    pass


class Ambiguous(CharVarError):
    pass


class DeterminantNotOne(CharVarError):
    pass


class PathDeviation(CharVarError):
    """A sampled path point drifted off the representation variety."""
