"""Tilting criterion ``H^{>0}(X, End F (x) G_t) = 0`` for all ``t >= 0`` with a certified finite bound.

Two gradings are supported: powers ``L^t`` of a line bundle, and the plethysm
family ``Sym^t(wedge^2 B)`` or ``Sym^t(Sym^2 B)`` of a tautological block ``B``
(the last block of its factor).  In both cases a summand's cohomology only
depends on the twist through finitely many patterns, which gives the bound.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from ..bbw import cohomology, cohomology_of_irreducible
from ..partitions import dual_weight, schur_dim
from ..varieties import (
    BlockRef,
    Dual,
    IrreducibleBundle,
    LineBundleClass,
    Plethysm,
    ProductVariety,
    Tensor,
    line_bundle_class_of,
    normalize,
    tensor_irreducibles,
    twist_irreducible,
)
from .types import FAIL, PASS, CheckEntry, CheckReport

__all__ = [
    "LineTwist",
    "PlethysmTwist",
    "UnboundedCheckError",
    "as_grading",
    "graded_piece",
    "tilting_bound",
    "tilting_check",
    "graded_algebra_dims",
]


class UnboundedCheckError(ValueError):
    """No finite bound exists for the requested grading (e.g. a non-ample line bundle)."""

    def __init__(self, message: str, summand=None):
        self.summand = summand
        super().__init__(f"unbounded check: {message}" + (f" (summand {summand})" if summand is not None else ""))


@dataclass(frozen=True)
class LineTwist:
    L: LineBundleClass

    def __str__(self) -> str:
        return f"L^t, L = {self.L}"


@dataclass(frozen=True)
class PlethysmTwist:
    """``Sym^t(wedge^2 B)`` (``inner='wedge2'``) or ``Sym^t(Sym^2 B)`` for block ``B``."""

    factor: int
    block: int
    inner: str = "wedge2"

    def __post_init__(self):
        if self.inner not in ("wedge2", "sym2"):
            raise ValueError(f"inner plethysm must be 'wedge2' or 'sym2', got {self.inner!r}")

    def expr(self, t: int) -> Plethysm:
        return Plethysm(self.inner, t, BlockRef(self.factor, self.block, False))

    def __str__(self) -> str:
        name = "wedge^2" if self.inner == "wedge2" else "Sym^2"
        return f"Sym^t({name} block {self.block + 1} of factor {self.factor + 1})"


Grading = Union[LineTwist, PlethysmTwist]


def as_grading(g) -> Grading:
    if isinstance(g, LineBundleClass):
        return LineTwist(g)
    if isinstance(g, (LineTwist, PlethysmTwist)):
        return g
    raise TypeError(f"not a grading: {g!r}")


def _end(variety: ProductVariety, F) -> Dict[IrreducibleBundle, int]:
    return normalize(Tensor(Dual(F), F), variety)


def graded_piece(variety: ProductVariety, grading: Grading, t: int) -> Dict[IrreducibleBundle, int]:
    if isinstance(grading, LineTwist):
        trivial = IrreducibleBundle(tuple(tuple((0,) * b for b in f.block_sizes) for f in variety.factors))
        return {twist_irreducible(variety, trivial, tuple(t * c for c in grading.L.coeffs)): 1}
    return normalize(grading.expr(t), variety)


def _twisted_terms(variety: ProductVariety, e: IrreducibleBundle, grading: Grading, t: int):
    """Irreducible summands of ``e (x) G_t`` with multiplicities."""
    if isinstance(grading, LineTwist):
        return ((twist_irreducible(variety, e, tuple(t * c for c in grading.L.coeffs)), 1),)
    out = defaultdict(int)
    for g, c in graded_piece(variety, grading, t).items():
        for h, d in tensor_irreducibles(variety, e, g):
            out[h] += c * d
    return tuple(out.items())


def _rho_shifted(blocks) -> List[int]:
    v = [x for b in blocks for x in dual_weight(b)]
    n = len(v)
    return [x + (n - 1 - i) for i, x in enumerate(v)]


def _line_threshold(variety: ProductVariety, e: IrreducibleBundle, L: LineBundleClass) -> int:
    t_min = 0
    for flag, blocks, sl in zip(variety.factors, e.weights, variety.picard_slices()):
        coeffs = L.coeffs[sl]
        v = _rho_shifted(blocks)
        end = 0
        for j, size in enumerate(flag.block_sizes[:-1]):
            end += size
            x0, y0 = v[end - 1], v[end]
            a = coeffs[j]
            if x0 > y0 and a >= 0:
                continue
            if a <= 0:
                raise UnboundedCheckError(
                    f"coefficient {a} at step {j + 1} of {flag} never makes the weight dominant", e)
            t_min = max(t_min, (y0 - x0) // a + 1)
    return t_min


def _plethysm_threshold(variety: ProductVariety, e: IrreducibleBundle, grading: PlethysmTwist) -> int:
    flag = variety.factors[grading.factor]
    if grading.block != flag.num_blocks - 1:
        raise UnboundedCheckError(f"graded block {grading.block + 1} is not the last block of {flag}", e)
    blocks = e.weights[grading.factor]
    w = blocks[grading.block]
    if len(set(w)) > 1:
        raise UnboundedCheckError("summand is not constant on the graded block", e)
    size = flag.block_sizes[grading.block]
    start = flag.n - size
    if start == 0:
        return 0
    c = w[0]
    v = _rho_shifted(blocks[:-1] + ((0,) * size,))
    lowest = min(v[:start])
    # entries of the graded block are rho_p - c - lambda_i; once every part is >= X
    # they all sit below the other blocks
    X = max(0, v[start] - c - lowest + 1)
    half = size // 2 if grading.inner == "wedge2" else size
    step = X if grading.inner == "wedge2" else -(-X // 2)
    return half * step


def tilting_bound(variety: ProductVariety, F, grading) -> Tuple[int, Dict[str, int]]:
    """``(T, per-summand thresholds)``; beyond ``T`` every twisted summand has only ``H^0``."""
    grading = as_grading(grading)
    per = {}
    for e in _end(variety, F):
        if isinstance(grading, LineTwist):
            per[str(e)] = _line_threshold(variety, e, grading.L)
        else:
            per[str(e)] = _plethysm_threshold(variety, e, grading)
    return (max(per.values()) if per else 0), per


def _dim(variety: ProductVariety, weights) -> int:
    d = 1
    for w, f in zip(weights, variety.factors):
        d *= schur_dim(w, f.n)
    return d


def tilting_check(variety: ProductVariety, F, grading) -> CheckReport:
    """Check ``H^{>0}(End F (x) G_t) = 0`` for ``t = 0..T`` where ``T`` is the certified bound.

    Raises :class:`UnboundedCheckError` when no finite bound exists.
    """
    grading = as_grading(grading)
    T, per = tilting_bound(variety, F, grading)
    end = _end(variety, F)
    witness = None
    for t in range(T + 1):
        for e in end:
            for h, _ in _twisted_terms(variety, e, grading, t):
                res = cohomology_of_irreducible(variety, h)
                if res is not None and res[0] > 0:
                    witness = {
                        "t": t,
                        "summand": str(e),
                        "twisted_summand": str(h),
                        "degree": res[0],
                        "dim": _dim(variety, res[1]),
                    }
                    cls = line_bundle_class_of(variety, h)
                    if cls is not None:
                        witness["line_bundle"] = str(cls)
                    break
            if witness:
                break
        if witness:
            break
    report = CheckReport()
    report.add(CheckEntry(
        "tilting",
        FAIL if witness else PASS,
        f"H^>0(End F (x) G_t) = 0 for 0 <= t <= T, grading {grading}",
        witness=witness,
        data={"bound_T": T},
    ))
    report.data["bound_T"] = T
    report.data["thresholds"] = per
    return report


def graded_algebra_dims(variety: ProductVariety, F, grading, t_max: int) -> List[int]:
    """``dim H^0(X, End F (x) G_t)`` for ``t = 0..t_max``."""
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    grading = as_grading(grading)
    end = _end(variety, F)
    dims = []
    for t in range(t_max + 1):
        total = defaultdict(int)
        for e, mult in end.items():
            for h, c in _twisted_terms(variety, e, grading, t):
                total[h] += mult * c
        dims.append(cohomology(variety, dict(total)).dim(0))
    return dims
