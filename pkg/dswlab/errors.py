from typing import Any, Dict, Optional


class DSWLabException(Exception):
    pass


class InvalidInput(DSWLabException):
    pass


class DomainError(InvalidInput):
    pass


class DegenerateConfiguration(InvalidInput):
    pass


class PreconditionError(InvalidInput):
    pass


class ResolutionError(InvalidInput):
    pass


class OutOfRegionError(InvalidInput):
    pass


class SolverError(DSWLabException):
    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        self.text = message
        self.diagnostics = diagnostics or {}

        fmt = "{0}"
        if self.diagnostics:
            fmt = "{0} ({1})"
        details = ", ".join(
            "{0}={1!r}".format(k, v) for k, v in sorted(self.diagnostics.items())
        )
        super().__init__(fmt.format(message, details))


class SingularConfiguration(SolverError):
    pass


class InstabilityError(SolverError):
    pass
