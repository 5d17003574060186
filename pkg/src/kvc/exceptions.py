"""Exception types shared across the package.

The CLI maps these onto exit codes: malformed input -> 2, refused by a
scale guard -> 3, failed verification -> 1.
"""


class KVCError(Exception):
    """Base class for all package errors."""


class InputFormatError(KVCError, ValueError):
    """Malformed graph, formula or instance input.

    ``line`` is the 1-based line of the offending record when the input
    came from a line-oriented file, otherwise ``None``.
    """

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class ScaleGuardError(KVCError):
    """An exact routine refused an instance above its configured size limit."""


class VerificationError(KVCError):
    """A certificate or reduction failed its independent re-validation."""
