"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` which the CLI
reports alongside the human message.
"""


class GraphLieError(Exception):
    code = "error"
    exit_status = 1


class NotSpecial(GraphLieError):
    code = "not-special"


class NotDroms(GraphLieError):
    code = "not-droms"


class DuplicateVertex(GraphLieError):
    code = "duplicate-vertex"


class BadConstantTerm(GraphLieError):
    code = "bad-constant-term"


class NonpositiveCoefficient(GraphLieError):
    code = "nonpositive-coefficient"


class NonIntegralDimension(GraphLieError):
    code = "non-integral-dimension"


class BudgetExceeded(GraphLieError):
    code = "budget-exceeded"
    exit_status = 3


class DegreeOutOfRange(GraphLieError):
    code = "degree-out-of-range"


class ArityMismatch(GraphLieError):
    code = "arity-mismatch"


class DerivationLawViolated(GraphLieError):
    code = "derivation-law-violated"


class TerminusInX(GraphLieError):
    code = "terminus-in-x"


class KindMismatch(GraphLieError):
    code = "kind-mismatch"


class BadCoefficients(GraphLieError):
    code = "bad-coefficients"


class ParseError(GraphLieError):
    code = "parse-error"
    exit_status = 2


class UsageError(GraphLieError):
    code = "usage"
