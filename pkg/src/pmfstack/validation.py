"""Input-validation helpers shared across the package.

Validators either return a normalized ``numpy`` value or raise
``ValueError``/``TypeError`` with a message naming the offending argument,
so estimator methods and CLI commands can rely on uniform error text.
"""

from __future__ import annotations

import math

import numpy as np

#: Tolerance on |sum(pmf) - 1| accepted for probability vectors.  Projections
#: renormalize only when drift exceeds this.
PMF_SUM_TOL = 1e-10


def as_float_vector(values, name: str = "values") -> np.ndarray:
    """Coerce to a non-empty 1-d float64 array with finite entries."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr


def validate_pmf(mass, name: str = "pmf") -> np.ndarray:
    """Validate a probability vector: entries >= 0 and sum within tolerance of 1."""
    arr = as_float_vector(mass, name)
    if np.any(arr < 0):
        raise ValueError(f"{name} must be nonnegative")
    total = float(arr.sum())
    if abs(total - 1.0) > PMF_SUM_TOL:
        raise ValueError(f"{name} must sum to 1 within {PMF_SUM_TOL}, got {total!r}")
    return arr


def as_observations(X, name: str = "X") -> np.ndarray:
    """Coerce raw observations to a 1-d array of nonnegative int64.

    Accepts a 1-d sequence or a single-column 2-d array (the sklearn
    convention).  Float input is allowed only when every entry is integral.
    """
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-d or a single column, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.issubdtype(arr.dtype, np.integer):
        rounded = np.asarray(np.rint(arr), dtype=np.int64)
        if not np.all(np.isfinite(arr)) or np.any(rounded != arr):
            raise ValueError(f"{name} must contain integers")
        arr = rounded
    arr = arr.astype(np.int64, copy=False)
    if np.any(arr < 0):
        raise ValueError(f"{name} must be nonnegative")
    return arr


def check_loss(loss) -> str:
    """Normalize a loss tag to 'l1' or 'l2'."""
    if isinstance(loss, str) and loss.lower() in ("l1", "l2"):
        return loss.lower()
    raise ValueError(f"loss must be 'l1' or 'l2', got {loss!r}")


def check_score_kind(kind) -> str:
    """Normalize a scoring-rule tag to 's1' or 's2'."""
    if isinstance(kind, str) and kind.lower() in ("s1", "s2"):
        return kind.lower()
    raise ValueError(f"score kind must be 's1' or 's2', got {kind!r}")


def check_alpha(alpha) -> float:
    """Validate a miscoverage level strictly inside (0, 1)."""
    a = float(alpha)
    if not math.isfinite(a) or not 0.0 < a < 1.0:
        raise ValueError(f"alpha must lie strictly in (0, 1), got {alpha!r}")
    return a


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    """Validate an integer >= minimum (rejects bools and non-integral floats)."""
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    v = int(value)
    if v < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {v}")
    return v


def pad_common(f, g, name_f: str = "f", name_g: str = "g") -> tuple[np.ndarray, np.ndarray]:
    """Zero-pad the shorter of two vectors so both share one support length."""
    a = as_float_vector(f, name_f)
    b = as_float_vector(g, name_g)
    if a.size < b.size:
        a = np.pad(a, (0, b.size - a.size))
    elif b.size < a.size:
        b = np.pad(b, (0, a.size - b.size))
    return a, b
