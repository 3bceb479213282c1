"""Error taxonomy mirrored by the CLI exit codes."""


class ConfigError(Exception):
    """Malformed or inconsistent configuration (exit code 2)."""


class InvariantViolation(Exception):
    """A declared runtime invariant failed (exit code 3)."""


class NumericalAbort(Exception):
    """Solver produced non-finite values or failed to converge (exit code 4)."""
