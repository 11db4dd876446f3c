class LatticeError(ValueError):
    """Structural problem with a lattice or a request made of it."""


class UndecidedError(RuntimeError):
    """Raised when a question falls outside the brute-force regime."""

    def __init__(self, message="undecided-by-brute-force"):
        super().__init__(message)


class ExprSyntaxError(LatticeError):
    """Lattice expression could not be parsed or elaborated.

    ``offset`` is the byte offset into the UTF-8 encoded source.
    """

    def __init__(self, message, offset=None):
        self.offset = offset
        self.reason = message
        where = f" at byte {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")
