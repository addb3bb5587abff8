"""Exception hierarchy shared by all modules and mapped to CLI exit codes."""


class TadicError(Exception):
    """Base class for library errors."""

    exit_code = 1

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class PreconditionError(TadicError, ValueError):
    """An operation was called outside its domain."""

    exit_code = 3


class BudgetExceeded(TadicError):
    """A brute-force enumeration would exceed the point-evaluation budget."""

    exit_code = 2

    def __init__(self, required, budget, formula=""):
        self.required = required
        self.budget = budget
        self.formula = formula
        msg = f"enumeration needs {required} point evaluations, budget is {budget}"
        if formula:
            msg += f" ({formula})"
        super().__init__(msg)

    def to_dict(self):
        d = super().to_dict()
        d.update(required=self.required, budget=self.budget, formula=self.formula)
        return d


class PrecisionError(TadicError):
    """Working precision is insufficient for the requested result."""

    exit_code = 3


class TruncationError(PrecisionError):
    """A truncated operator cannot represent a requested coefficient."""

    def __init__(self, message, minimal_bound=None):
        self.minimal_bound = minimal_bound
        super().__init__(message)


class PropertyViolation(TadicError):
    """A mathematical invariant asserted at runtime failed."""

    exit_code = 1
