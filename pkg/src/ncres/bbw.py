"""Borel-Bott-Weil cohomology of homogeneous bundles on flag varieties.

Block weights of an :class:`~ncres.varieties.IrreducibleBundle` describe the
representation of each tautological block.  The local weight handed to the
dotted Weyl action is built from the duals of the blocks, in block order: for
the forgetful map merging blocks ``j`` and ``j+1`` it is
``dual(w_j) + dual(w_{j+1})`` (concatenation). That is the convention under
which ``H^0(Gr, S^a U^*) = S^a V^*`` and ``H^1(P^1, O(-3))`` is 2-dimensional.

Absolute cohomology tables report, per factor, the weight ``w`` with
``H^i = S^w(V^*)``; pushforwards return bundles on the base in the block
convention again.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import prod
from typing import Dict, Optional, Sequence, Tuple

from .partitions import SINGULAR, Weight, dotted_weyl_regularize, dual_weight, schur_dim
from .varieties import (
    Dual,
    FlagVariety,
    IrreducibleBundle,
    ProductVariety,
    Tensor,
    normalize,
)

__all__ = [
    "CohomologyTable",
    "PushforwardResult",
    "pushforward",
    "pushforward_decomposition",
    "cohomology",
    "cohomology_of_irreducible",
    "ext_table",
    "euler_char",
    "relative_ext_vanishes",
    "RelativeWitness",
]

PushforwardResult = Dict[int, Dict[IrreducibleBundle, int]]
"""Degree shift -> bundles on the base (single-factor, block convention) with multiplicities."""


@dataclass(frozen=True)
class CohomologyTable:
    """Degree -> ``{per-factor V^*-weights: multiplicity}``, plus dimension per degree."""

    entries: Dict[int, Dict[Tuple[Weight, ...], int]] = field(default_factory=dict)
    dims: Dict[int, int] = field(default_factory=dict)

    def dim(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def degrees(self):
        return sorted(self.dims)

    def total_dims(self) -> Dict[int, int]:
        return {d: self.dims[d] for d in sorted(self.dims)}


def _local_weight(blocks: Sequence[Weight], j: int) -> Tuple[int, ...]:
    return dual_weight(blocks[j]) + dual_weight(blocks[j + 1])


def _merge_factor(blocks: Tuple[Weight, ...], j: int):
    """Relative BBW on one factor for the map merging blocks ``j`` and ``j+1``."""
    res = dotted_weyl_regularize(_local_weight(blocks, j))
    if res is SINGULAR:
        return None
    degree, dominant = res
    merged = dual_weight(dominant)
    return degree, blocks[:j] + (merged,) + blocks[j + 2:]


def pushforward(variety: FlagVariety, drop_step: int, e: IrreducibleBundle) -> PushforwardResult:
    """Push ``e`` forward along ``Fl(..., d_j, ...) -> Fl(..., ^d_j, ...)``.

    ``e`` is a single-factor bundle on ``variety``.  The result is either empty
    (singular local weight) or a single bundle on ``variety.drop(drop_step)``
    sitting in degree equal to the number of inversions.
    """
    if not 0 <= drop_step < variety.picard_rank:
        raise IndexError(f"step index {drop_step} out of range for {variety}")
    (blocks,) = e.weights
    if len(blocks) != variety.num_blocks:
        raise ValueError(f"bundle {e} does not live on {variety}")
    res = _merge_factor(blocks, drop_step)
    if res is None:
        return {}
    degree, merged = res
    return {degree: {IrreducibleBundle((merged,)): 1}}


def pushforward_decomposition(variety: FlagVariety, drop_step: int, summands: Dict[IrreducibleBundle, int]) -> PushforwardResult:
    out: Dict[int, Dict[IrreducibleBundle, int]] = defaultdict(lambda: defaultdict(int))
    for e, mult in summands.items():
        for deg, terms in pushforward(variety, drop_step, e).items():
            for b, c in terms.items():
                out[deg][b] += mult * c
    return {d: dict(sorted(out[d].items(), key=lambda kv: kv[0].sort_key())) for d in sorted(out)}


def _factor_cohomology(flag: FlagVariety, blocks: Tuple[Weight, ...], order: Optional[Sequence[int]] = None):
    """Iterate pushforwards down to the point; ``order`` lists the steps to drop (original 0-based indices)."""
    steps = list(range(flag.picard_rank))
    if order is None:
        order = list(reversed(steps))
    order = list(order)
    if sorted(order) != steps:
        raise ValueError(f"order {order} is not a permutation of the steps of {flag}")
    live = list(steps)  # original step indices still present, in flag order
    degree = 0
    for step in order:
        j = live.index(step)
        res = _merge_factor(blocks, j)
        if res is None:
            return None
        d, blocks = res
        degree += d
        live.pop(j)
    (weight,) = blocks
    return degree, dual_weight(weight)


@lru_cache(maxsize=200_000)
def cohomology_of_irreducible(variety: ProductVariety, e: IrreducibleBundle, order: Optional[Tuple[Tuple[int, ...], ...]] = None):
    """``(degree, per-factor V^*-weights)`` or ``None`` if all cohomology vanishes.

    By Borel-Bott-Weil an irreducible bundle has cohomology in at most one degree.
    """
    degree = 0
    weights = []
    for idx, (flag, blocks) in enumerate(zip(variety.factors, e.weights)):
        res = _factor_cohomology(flag, tuple(blocks), None if order is None else order[idx])
        if res is None:
            return None
        degree += res[0]
        weights.append(res[1])
    return degree, tuple(weights)


def _table_from_summands(variety: ProductVariety, summands, order=None) -> CohomologyTable:
    entries: Dict[int, Dict[Tuple[Weight, ...], int]] = defaultdict(lambda: defaultdict(int))
    dims: Dict[int, int] = defaultdict(int)
    for e, mult in summands.items():
        res = cohomology_of_irreducible(variety, e, order)
        if res is None:
            continue
        degree, weights = res
        entries[degree][weights] += mult
        dims[degree] += mult * prod(schur_dim(w, f.n) for w, f in zip(weights, variety.factors))
    return CohomologyTable(
        {d: dict(sorted(entries[d].items(), reverse=True)) for d in sorted(entries)},
        {d: dims[d] for d in sorted(dims)},
    )


def cohomology(variety: ProductVariety, e, order=None) -> CohomologyTable:
    """Cohomology of a bundle expression (or an already normalized decomposition)."""
    summands = e if isinstance(e, dict) else normalize(e, variety)
    if order is not None:
        order = tuple(tuple(o) for o in order)
    return _table_from_summands(variety, summands, order)


def ext_table(variety: ProductVariety, E, F) -> CohomologyTable:
    """``Ext^*(E, F) = H^*(E^vee (x) F)`` for locally free ``E``."""
    return cohomology(variety, Tensor(Dual(E), F))


def euler_char(variety: ProductVariety, e) -> int:
    table = cohomology(variety, e)
    return sum((-1) ** d * n for d, n in table.dims.items())


@dataclass(frozen=True)
class RelativeWitness:
    degree: int
    base_bundle: IrreducibleBundle
    multiplicity: int
    source: IrreducibleBundle


def relative_ext_vanishes(variety: FlagVariety, drop_step: int, E, F, product: Optional[ProductVariety] = None):
    """Whether ``p_* RHom(E, F)`` vanishes for the forgetful map dropping ``drop_step``.

    Returns ``(True, None)`` or ``(False, RelativeWitness)`` for the first
    non-vanishing summand in canonical order.
    """
    summands = normalize(Tensor(Dual(E), F), product or ProductVariety((variety,)))
    for e in summands:
        res = pushforward(variety, drop_step, e)
        for deg in sorted(res):
            for b, c in res[deg].items():
                return False, RelativeWitness(deg, b, c * summands[e], e)
    return True, None


def all_step_orders(flag: FlagVariety):
    return list(permutations(range(flag.picard_rank)))
