"""Exception types shared by every layer of the laboratory."""


class LabError(Exception):
    """Base class for all domain errors raised by circlelab."""


class PrecisionError(LabError):
    """A truncated series cannot decide the requested quantity."""


class PreconditionError(LabError, ValueError):
    """Inputs violate the documented precondition of an operation."""


class BudgetExceeded(LabError):
    """An enumeration would visit more states than the configured budget."""

    def __init__(self, states: int, budget: int, what: str = "enumeration"):
        self.states = states
        self.budget = budget
        self.what = what
        super().__init__(f"{what} needs {states} states, budget is {budget}")


DEFAULT_BUDGET = 10**7


def check_budget(states: int, budget: int | None, what: str = "enumeration") -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if states > limit:
        raise BudgetExceeded(states, limit, what)
