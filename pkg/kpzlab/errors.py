# kpzlab/errors.py
"""Exceptions du laboratoire, chacune avec le code de sortie CLI associé."""

from typing import Any, Dict, Optional


class KpzlabError(Exception):
    exit_code: int = 1

    def __init__(self, detail: str, **context: Any):
        super().__init__(detail)
        self.detail = detail
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "detail": self.detail, **self.context}


class UsageError(KpzlabError, ValueError):
    exit_code = 1


class NumericalError(KpzlabError):
    exit_code = 2


class ToleranceError(NumericalError):
    pass


class TableTooSmallError(NumericalError):
    def __init__(self, detail: str = "table-too-small", **context: Any):
        super().__init__(detail, **context)


class NearCriticalError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    def __init__(self, detail: str, last_delta: Optional[float] = None, **context: Any):
        super().__init__(detail, last_delta=last_delta, **context)
        self.last_delta = last_delta


class BlowUpError(NumericalError):
    pass


class AcceptanceError(KpzlabError):
    exit_code = 3
