"""Shared exception types."""


class BudgetExceeded(Exception):
    """An enumeration would visit more states than the configured budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"needs {required} states, budget is {budget}")
