"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An input breaks a documented precondition or type invariant."""


class ConfigError(ContractViolation):
    """A config file is malformed or inconsistent (CLI exit code 2)."""


class BudgetExceeded(RuntimeError):
    """A computation guard tripped (CLI exit code 3).

    Carries the guard name so the CLI can report which limit was hit.
    """

    def __init__(self, guard: str, message: str):
        super().__init__(f"budget guard '{guard}': {message}")
        self.guard = guard
