"""Shared exception types."""

from __future__ import annotations


class ConvergenceError(RuntimeError):
    """An iterative fit or solver failed to reach its tolerance within budget.

    Carries the solver's last report (when available) as ``report``.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
