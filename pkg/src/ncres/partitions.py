"""Partitions, dominant GL weights and Littlewood-Richardson products.

Weights are plain tuples of Python ints. A *block weight* is a weakly
decreasing tuple of integers of fixed length (the rank of the group); negative
entries are allowed and encode duals and determinant twists.  Schur sums are
``dict`` objects mapping block weights to positive multiplicities.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import prod
from typing import Dict, Iterator, Optional, Sequence, Tuple

Weight = Tuple[int, ...]
SchurSum = Dict[Weight, int]

__all__ = [
    "Weight",
    "SchurSum",
    "Singular",
    "SINGULAR",
    "UnsupportedPlethysm",
    "normalize_partition",
    "is_dominant",
    "pad",
    "dual_weight",
    "shift_weight",
    "partitions_of",
    "lr_product",
    "lr_coefficients",
    "schur_dim",
    "schur_sum_dim",
    "plethysm",
    "plethysm_sym_wedge2",
    "plethysm_sym_sym2",
    "dotted_weyl_regularize",
]


class UnsupportedPlethysm(ValueError):
    """Raised for any plethysm other than Sym^t(wedge^2) and Sym^t(Sym^2)."""


class Singular:
    """Marker result of :func:`dotted_weyl_regularize` for singular weights."""

    _instance: Optional["Singular"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "SINGULAR"

    def __reduce__(self):
        return (Singular, ())


SINGULAR = Singular()


def normalize_partition(parts: Sequence[int]) -> Weight:
    """Validate a partition and strip trailing zeros."""
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"partition has negative parts: {parts}")
    if not is_dominant(parts):
        raise ValueError(f"partition is not weakly decreasing: {parts}")
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def is_dominant(w: Sequence[int]) -> bool:
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


def pad(w: Sequence[int], rank: int) -> Weight:
    """Pad ``w`` with zeros to length ``rank``.

    Raises ``ValueError`` if ``w`` has a nonzero entry beyond ``rank``.
    """
    w = tuple(w)
    if len(w) > rank:
        if any(w[rank:]):
            raise ValueError(f"weight {w} does not fit in rank {rank}")
        return w[:rank]
    return w + (0,) * (rank - len(w))


def dual_weight(w: Sequence[int]) -> Weight:
    """Highest weight of the dual representation: reverse and negate."""
    return tuple(-x for x in reversed(w))


def shift_weight(w: Sequence[int], c: int) -> Weight:
    return tuple(x + c for x in w)


def partitions_of(n: int, max_length: Optional[int] = None, max_part: Optional[int] = None) -> Iterator[Weight]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        return
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_length == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_length is None else max_length - 1
        for rest in partitions_of(n - first, rest_len, first):
            yield (first,) + rest


# --- Littlewood-Richardson ------------------------------------------------


def _horizontal_strips(shape: Weight, size: int, max_rows: Optional[int]) -> Iterator[Tuple[int, ...]]:
    """Ways to add a horizontal strip of ``size`` boxes to ``shape``.

    Yields per-row box counts (one entry per row of the enlarged shape).
    """
    n_rows = len(shape) + 1
    if max_rows is not None:
        n_rows = min(n_rows, max_rows)
    bounds = []
    for r in range(n_rows):
        if r == 0:
            bounds.append(size)
        else:
            above = shape[r - 1]
            here = shape[r] if r < len(shape) else 0
            bounds.append(above - here)

    def rec(r: int, left: int) -> Iterator[Tuple[int, ...]]:
        if r == n_rows:
            if left == 0:
                yield ()
            return
        for x in range(min(left, bounds[r]), -1, -1):
            for tail in rec(r + 1, left - x):
                yield (x,) + tail

    yield from rec(0, size)


def _lattice_ok(row_counts: Sequence[Dict[int, int]], label: int) -> bool:
    """Check the reading-word lattice condition for labels ``label-1, label``.

    Reading order is row by row from the top, right to left within a row, so
    inside a row the larger label is read first.
    """
    prev = label - 1
    seen_prev = seen = 0
    for counts in row_counts:
        seen += counts.get(label, 0)
        if seen > seen_prev:
            return False
        seen_prev += counts.get(prev, 0)
    return True


@lru_cache(maxsize=None)
def _lr_partitions(lam: Weight, mu: Weight, max_rows: Optional[int]) -> Tuple[Tuple[Weight, int], ...]:
    """LR coefficients c^nu_{lam,mu} by enumerating LR skew tableaux of shape nu/lam."""
    states = [(lam, ())]  # (shape, per-row label counts)
    for label, size in enumerate(mu, start=1):
        new_states = []
        for shape, rows in states:
            for strip in _horizontal_strips(shape, size, max_rows):
                length = max(len(shape), len(strip))
                new_shape = []
                new_rows = []
                for r in range(length):
                    x = strip[r] if r < len(strip) else 0
                    new_shape.append((shape[r] if r < len(shape) else 0) + x)
                    counts = dict(rows[r]) if r < len(rows) else {}
                    if x:
                        counts[label] = x
                    new_rows.append(counts)
                if label > 1 and not _lattice_ok(new_rows, label):
                    continue
                new_states.append((normalize_partition(new_shape), tuple(new_rows)))
        states = new_states
    tally: Counter = Counter(shape for shape, _ in states)
    return tuple(sorted(tally.items()))


def lr_coefficients(lam: Sequence[int], mu: Sequence[int], max_rows: Optional[int] = None) -> SchurSum:
    """Products of Schur functions ``s_lam * s_mu`` for partitions (no rank shift)."""
    lam = normalize_partition(lam)
    mu = normalize_partition(mu)
    if sum(mu) > sum(lam):
        lam, mu = mu, lam
    return dict(_lr_partitions(lam, mu, max_rows))


def lr_product(lam: Sequence[int], mu: Sequence[int], rank: int) -> SchurSum:
    """Decompose ``S^lam (x) S^mu`` for GL(rank).

    Both weights may contain negative entries; they are shifted to partitions,
    multiplied, and shifted back.
    """
    if rank <= 0:
        raise ValueError("rank must be positive")
    lam = pad(lam, rank)
    mu = pad(mu, rank)
    if not (is_dominant(lam) and is_dominant(mu)):
        raise ValueError(f"weights must be weakly decreasing: {lam}, {mu}")
    a = -min(lam[-1], 0)
    b = -min(mu[-1], 0)
    raw = lr_coefficients(shift_weight(lam, a), shift_weight(mu, b), max_rows=rank)
    return {
        shift_weight(pad(nu, rank), -(a + b)): c
        for nu, c in sorted(raw.items(), reverse=True)
    }


def schur_dim(lam: Sequence[int], rank: int) -> int:
    """Weyl dimension formula for GL(rank)."""
    lam = pad(lam, rank)
    num = prod(lam[i] - lam[j] + j - i for i in range(rank) for j in range(i + 1, rank))
    den = prod(j - i for i in range(rank) for j in range(i + 1, rank))
    return num // den


def schur_sum_dim(terms: SchurSum, rank: int) -> int:
    return sum(c * schur_dim(w, rank) for w, c in terms.items())


# --- plethysm ---------------------------------------------------------------


def plethysm_sym_wedge2(t: int, rank: int) -> SchurSum:
    """``Sym^t(wedge^2 V)``: partitions of 2t whose columns all have even length."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return {(0,) * rank: 1}
    if rank < 2:
        return {}
    out = {}
    for lam in partitions_of(2 * t, max_length=rank):
        if len(lam) % 2 == 0 and all(lam[i] == lam[i + 1] for i in range(0, len(lam), 2)):
            out[pad(lam, rank)] = 1
    return out


def plethysm_sym_sym2(t: int, rank: int) -> SchurSum:
    """``Sym^t(Sym^2 V)``: partitions of 2t with all parts even."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if rank < 1:
        raise ValueError("rank must be positive")
    return {
        pad(lam, rank): 1
        for lam in partitions_of(2 * t, max_length=rank)
        if all(p % 2 == 0 for p in lam)
    }


_PLETHYSMS = {
    ("sym", "wedge2"): plethysm_sym_wedge2,
    ("sym", "sym2"): plethysm_sym_sym2,
}


def plethysm(outer: str, inner: str, t: int, rank: int) -> SchurSum:
    """Dispatch to one of the two supported plethysms; anything else raises."""
    try:
        fn = _PLETHYSMS[(outer, inner)]
    except KeyError:
        raise UnsupportedPlethysm(f"plethysm {outer}^{t}({inner}) is not supported") from None
    return fn(t, rank)


# --- dotted Weyl action -----------------------------------------------------


def dotted_weyl_regularize(w: Sequence[int]):
    """Move ``w`` into the dominant chamber under the dotted Weyl action.

    Returns :data:`SINGULAR` if ``w + rho`` has a repeated entry, otherwise
    ``(length, dominant)`` where ``length`` counts the pairs ``i < j`` with
    ``(w + rho)_i < (w + rho)_j``.
    """
    n = len(w)
    if n < 1:
        raise ValueError("weight must be non-empty")
    v = [x + n - 1 - i for i, x in enumerate(w)]
    if len(set(v)) < n:
        return SINGULAR
    inversions = sum(1 for i in range(n) for j in range(i + 1, n) if v[i] < v[j])
    v.sort(reverse=True)
    return inversions, tuple(x - (n - 1 - i) for i, x in enumerate(v))
