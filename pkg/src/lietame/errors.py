"""Exception hierarchy. The CLI maps each class to its own exit code."""


class LietameError(Exception):
    exit_code = 1
    kind = "error"


class InputError(LietameError, ValueError):
    """Bad user input: unknown type label, malformed selector, out-of-range argument."""

    exit_code = 2
    kind = "input"


class StructuralError(InputError):
    """Operands that do not live in the same ring (variable lists differ)."""

    kind = "structural"


class ConsistencyError(LietameError, ArithmeticError):
    """An internal cross-check failed. Always a bug or a violated precondition."""

    exit_code = 3
    kind = "consistency"


class ResourceError(LietameError):
    """A size guard rejected the request before any expensive work started."""

    exit_code = 4
    kind = "resource"
