"""Frequency data, probability vectors, norms, and reproducible sampling.

Probability mass functions are plain 1-d float arrays on a finite support
``0..m`` with an implicit zero tail; binary operations zero-pad the shorter
operand.  Observed count data travels as a :class:`FrequencyVector`.

Randomness policy: every stochastic routine takes an explicit ``seed``: a
64-bit integer, a ``numpy.random.SeedSequence``, or a ``numpy.random.Generator``.
Integers are expanded through ``SeedSequence`` into a PCG64 generator, and
sub-streams for independent tasks are derived with ``spawn_key`` so that a
single integer reproduces an entire experiment bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .validation import as_observations, check_positive_int, pad_common, validate_pmf

__all__ = [
    "FrequencyVector",
    "as_generator",
    "cdf",
    "derived_generator",
    "empirical",
    "lk_distance",
    "loo_empirical",
    "sample_frequencies",
]


def as_generator(seed) -> np.random.Generator:
    """Return the PCG64 generator for ``seed``.

    A ``numpy.random.Generator`` is passed through unchanged (the caller owns
    its stream); an integer or ``SeedSequence`` creates a fresh PCG64 stream.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    if isinstance(seed, (int, np.integer)) and not isinstance(seed, bool):
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))
    raise TypeError(
        "seed must be an int, numpy.random.SeedSequence or numpy.random.Generator, "
        f"got {type(seed).__name__}"
    )


def derived_generator(seed: int, *key: int) -> np.random.Generator:
    """PCG64 generator for the sub-stream ``key`` of the root ``seed``.

    Distinct keys give statistically independent streams (SeedSequence
    spawn keys), so e.g. replication ``r`` of an experiment can draw from
    ``derived_generator(seed, r)`` regardless of execution order.
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    parts = []
    for k in key:
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or int(k) < 0:
            raise TypeError(f"spawn key entries must be nonnegative integers, got {k!r}")
        parts.append(int(k))
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(parts))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True, eq=False)
class FrequencyVector:
    """Observed counts ``x_0..x_t`` of a sample of nonnegative integers.

    The stored array is trimmed so its last cell is positive: ``t_n`` (the
    largest observed value) is simply ``len(counts) - 1``.  Instances are
    immutable; the counts array is marked read-only.
    """

    counts: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.counts)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("counts must be a non-empty 1-d array")
        if not np.issubdtype(arr.dtype, np.integer):
            as_int = np.asarray(np.rint(arr), dtype=np.int64)
            if not np.all(np.isfinite(np.asarray(arr, dtype=float))) or np.any(as_int != arr):
                raise ValueError("counts must be integers")
            arr = as_int
        arr = arr.astype(np.int64)
        if np.any(arr < 0):
            raise ValueError("counts must be nonnegative")
        positive = np.flatnonzero(arr)
        if positive.size == 0:
            raise ValueError("counts must contain at least one positive cell")
        arr = arr[: int(positive[-1]) + 1].copy()
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @classmethod
    def from_observations(cls, z) -> "FrequencyVector":
        """Tabulate raw observations (nonnegative integers) into counts."""
        obs = as_observations(z, "observations")
        return cls(np.bincount(obs))

    @cached_property
    def n(self) -> int:
        """Sample size (sum of counts)."""
        return int(self.counts.sum())

    @cached_property
    def t_n(self) -> int:
        """Largest observed value, i.e. the last cell with a positive count."""
        return self.counts.size - 1

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"FrequencyVector(counts={self.counts.tolist()}, n={self.n})"


def empirical(freq: FrequencyVector) -> np.ndarray:
    """Relative frequencies ``x_j / n`` on the observed support ``0..t_n``."""
    return freq.counts / freq.n


def loo_empirical(freq: FrequencyVector, j: int) -> np.ndarray:
    """Relative frequencies after removing one count from cell ``j``.

    Returns ``(x - e_j) / (n - 1)``, the empirical pmf of the sample with a
    single observation of value ``j`` deleted.
    """
    j = check_positive_int(j, "j", minimum=0)
    if freq.n < 2:
        raise ValueError("leave-one-out requires a sample of size n >= 2")
    if j > freq.t_n or freq.counts[j] < 1:
        raise ValueError(f"cell {j} has no count to remove")
    out = freq.counts.astype(float)
    out[j] -= 1.0
    out /= freq.n - 1
    return out


def lk_distance(f, g, k=2) -> float:
    """``l_k`` distance between two vectors on the common zero-padded support.

    ``k`` may be any positive integer or ``math.inf`` (sup norm); ``k = 0``
    and fractional orders are rejected.
    """
    a, b = pad_common(f, g, "f", "g")
    diff = np.abs(a - b)
    if k == math.inf:
        return float(diff.max())
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"norm order must be a positive integer or inf, got {k!r}")
    k = int(k)
    if k == 1:
        return float(diff.sum())
    if k == 2:
        return float(math.sqrt(np.dot(diff, diff)))
    return float(np.sum(diff**k) ** (1.0 / k))


def cdf(f) -> np.ndarray:
    """Cumulative sums of a probability vector (its distribution function)."""
    return np.cumsum(validate_pmf(f, "pmf"))


def sample_frequencies(p, n: int, seed) -> FrequencyVector:
    """Multinomial frequency table of an i.i.d. sample of size ``n`` from ``p``.

    Deterministic given ``seed``; trailing cells that receive no counts are
    trimmed, so the result's ``t_n`` is the largest value actually drawn.
    """
    mass = validate_pmf(p, "p")
    n = check_positive_int(n, "n", minimum=1)
    rng = as_generator(seed)
    counts = rng.multinomial(n, mass / mass.sum())
    return FrequencyVector(counts)
