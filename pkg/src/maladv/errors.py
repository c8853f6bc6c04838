"""Error types shared across the package, mapped to CLI exit codes."""


class ConfigError(Exception):
    """Bad configuration: invalid parameter values, missing sections, etc. Exit code 2."""


class InputError(ValueError):
    """Bad runtime input: shape mismatch, non-binary vector, empty batch. Exit code 3."""


class ParseError(Exception):
    """Malformed data or spec file. Carries the offending line number. Exit code 3."""

    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class InvariantError(RuntimeError):
    """An internal invariant was violated (a bug, not a user error). Exit code 4."""
