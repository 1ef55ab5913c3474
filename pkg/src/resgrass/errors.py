"""Exceptions shared across the package."""


class InputError(ValueError):
    """Malformed or mathematically invalid arrangement input."""


class DuplicateHyperplaneError(InputError):
    """Two columns of a realization are proportional over F_p."""


class BudgetError(RuntimeError):
    """A brute-force enumeration would exceed the configured candidate budget."""

    def __init__(self, candidates: int, budget: int, what: str = "enumeration"):
        self.candidates = candidates
        self.budget = budget
        super().__init__(
            f"{what} needs {candidates} candidates, over the budget of {budget}"
            " (raise RESGRASS_BUDGET or pass a larger budget to override)"
        )


DEFAULT_BUDGET = 10_000_000


def resolve_budget(budget=None) -> int:
    """Explicit argument, else RESGRASS_BUDGET from the environment, else 1e7."""
    import os

    if budget is not None:
        return int(budget)
    env = os.environ.get("RESGRASS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET
