"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class SwitchLabError(Exception):
    code = "error"


class GraphConstructionError(SwitchLabError, ValueError):
    code = "construction"


class VertexRangeError(SwitchLabError, IndexError):
    code = "vertex-range"


class PreconditionError(SwitchLabError, ValueError):
    code = "precondition"


class InfeasibleDegreeError(SwitchLabError, ValueError):
    code = "infeasible"


class DegreeParseError(SwitchLabError, ValueError):
    code = "parse"


class BudgetExceededError(SwitchLabError, RuntimeError):
    code = "budget"


class MembershipError(SwitchLabError, KeyError):
    code = "membership"

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class UndefinedParameterError(SwitchLabError, ValueError):
    code = "undefined-parameter"


class TheoremViolation(SwitchLabError, AssertionError):
    """A finding that contradicts a proven statement. Carries a replayable witness."""

    code = "theorem-violation"

    def __init__(self, message: str, witness: dict | None = None) -> None:
        super().__init__(message)
        self.witness = witness or {}


class RangeError(SwitchLabError, ValueError):
    code = "range"
