"""Exception hierarchy shared by every module."""


class TRWError(Exception):
    """Base class for all toolkit errors."""


class ZeroPolynomial(TRWError, ValueError):
    pass


class NotMonic(TRWError, ValueError):
    pass


class DegreeTooSmall(TRWError, ValueError):
    pass


class WrongDegree(TRWError, ValueError):
    pass


class MissingParameter(TRWError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing parameter"


class InexactDivision(TRWError, ArithmeticError):
    """A division that must be exact left a remainder."""


class NonIntegralDivision(InexactDivision):
    """Inverse Newton recurrence hit a non-integral e_k."""


class InternalDivisibility(TRWError, AssertionError):
    """A divisibility that holds by construction failed: implementation bug."""


class EndpointIsRoot(TRWError, ValueError):
    pass


class NonConvergence(TRWError, RuntimeError):
    pass


class HypothesisViolation(TRWError, ValueError):
    def __init__(self, hypothesis, coefficient=None, detail=""):
        self.hypothesis = hypothesis
        self.coefficient = coefficient
        self.detail = detail
        msg = hypothesis
        if coefficient is not None:
            msg += f" (coefficient of x^{coefficient})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class FamilySyntaxError(TRWError, ValueError):
    def __init__(self, message, line=None, column=None, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        text = message
        if where:
            text = f"{', '.join(where)}: {message}"
        if self.expected:
            text += f" (expected {' or '.join(self.expected)})"
        super().__init__(text)


class NoWitnessInRange(TRWError, ValueError):
    pass


class WitnessCheckFailed(TRWError, AssertionError):
    pass


class NotSquarefree(TRWError, ValueError):
    pass


class AlphaNotTotallyReal(TRWError, ValueError):
    pass


class DegreeConstraintViolated(TRWError, ValueError):
    pass


class NotEventuallySigned(TRWError, ValueError):
    pass


class PreconditionViolated(TRWError, ValueError):
    pass
