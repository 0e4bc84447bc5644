"""Exception hierarchy.

``InputError`` covers malformed or insufficient input (CLI exit code 2);
``ModelViolation`` covers signals or graphs that break the hypotheses of a
recovery method, e.g. rank deficiency or complex roots (CLI exit code 1).
"""

from __future__ import annotations


class GraphPronyError(Exception):
    """Base class. ``stage`` names the pipeline step that failed, if any."""

    def __init__(self, message: str, *, stage: str | None = None, details: dict | None = None):
        super().__init__(message)
        self.stage = stage
        self.details = dict(details or {})

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": str(self),
            "stage": self.stage,
            "details": self.details,
        }


class InputError(GraphPronyError, ValueError):
    pass


class MissingSamplesError(InputError):
    def __init__(self, missing, *, stage: str | None = "samples"):
        self.missing = sorted(missing)
        super().__init__(
            f"missing samples at {self.missing}", stage=stage, details={"missing": self.missing}
        )


class SizeGuardError(InputError):
    pass


class ModelViolation(GraphPronyError):
    pass


class RankDeficiencyError(ModelViolation):
    pass


class RootError(ModelViolation):
    pass


class NoSupportError(ModelViolation):
    pass


class DegenerateBasisError(ModelViolation):
    pass


class LocalityError(ModelViolation):
    pass


class AmbiguityWarning(UserWarning):
    """Two different supports of minimal size explain the same samples."""


class HarmonicComponentWarning(UserWarning):
    """Part of a chain lies in the Laplacian kernel and cannot be recovered."""
