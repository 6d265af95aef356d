"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific type that applies.
"""


class ApercutError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatchError(ApercutError, ValueError):
    """Arithmetic combining numbers from different quadratic fields."""


class KindMismatchError(ApercutError, ValueError):
    """Group operation combining points of different kinds or scalar modes."""


class EmptyIntervalError(ApercutError, ValueError):
    """An interval with lower endpoint above the upper endpoint."""


class WindowError(ApercutError, ValueError):
    """A window unusable for model-set generation (e.g. empty interior)."""


class ErosionError(ApercutError, ValueError):
    """An analysis domain problem: eroded core empty, or erosion smaller
    than the translation bound it must protect."""


class ProvenanceError(ApercutError, ValueError):
    """Content hash mismatch between reports that must describe one input."""


class BudgetExceededError(ApercutError, RuntimeError):
    """An enumeration grew past the configured element budget."""
