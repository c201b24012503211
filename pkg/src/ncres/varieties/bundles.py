"""Bundle expressions over tautological subquotients and their normal form."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod
from typing import Dict, Tuple, Union

from ..partitions import (
    Weight,
    dual_weight,
    is_dominant,
    lr_product,
    pad,
    plethysm,
    schur_dim,
)
from .flags import IrreducibleBundle, LineBundleClass, ProductVariety, line_bundle_weights

__all__ = [
    "Twist",
    "BlockRef",
    "Dual",
    "Tensor",
    "DirectSum",
    "Schur",
    "Plethysm",
    "BundleExpr",
    "Decomposition",
    "normalize",
    "rank",
    "line_bundle_to_expr",
    "tensor_irreducibles",
    "twist_irreducible",
    "direct_sum",
    "tensor",
    "dual",
    "structure_sheaf",
]


@dataclass(frozen=True)
class Twist:
    coeffs: Tuple[int, ...]

    def __str__(self) -> str:
        return "O({})".format(",".join(map(str, self.coeffs)))


@dataclass(frozen=True)
class BlockRef:
    """Block ``block`` (0-based) of factor ``factor`` (0-based), possibly dualized."""

    factor: int
    block: int
    dual: bool = False

    def __str__(self) -> str:
        suffix = f"@{self.factor + 1}" if self.factor else ""
        return f"U{self.block + 1}{suffix}" + ("*" if self.dual else "")


@dataclass(frozen=True)
class Dual:
    arg: "BundleExpr"

    def __str__(self) -> str:
        return f"dual({self.arg})"


@dataclass(frozen=True)
class Tensor:
    left: "BundleExpr"
    right: "BundleExpr"

    def __str__(self) -> str:
        return f"{_wrap(self.left)} * {_wrap(self.right)}"


@dataclass(frozen=True)
class DirectSum:
    left: "BundleExpr"
    right: "BundleExpr"

    def __str__(self) -> str:
        return f"{self.left} + {self.right}"


@dataclass(frozen=True)
class Schur:
    weight: Weight
    ref: BlockRef

    def __str__(self) -> str:
        return "S[{}]({})".format(",".join(map(str, self.weight)), self.ref)


@dataclass(frozen=True)
class Plethysm:
    """``Sym^t(wedge^2 B)`` (``inner == 'wedge2'``) or ``Sym^t(Sym^2 B)`` (``'sym2'``)."""

    inner: str
    t: int
    ref: BlockRef

    def __str__(self) -> str:
        name = {"wedge2": "symwedge2", "sym2": "symsym2"}.get(self.inner, "sym?" + self.inner)
        return f"{name}[{self.t}]({self.ref})"


BundleExpr = Union[Twist, BlockRef, Dual, Tensor, DirectSum, Schur, Plethysm]


def _wrap(e) -> str:
    return f"({e})" if isinstance(e, DirectSum) else str(e)


def structure_sheaf(variety: ProductVariety) -> Twist:
    return Twist((0,) * variety.picard_rank)


def line_bundle_to_expr(c, variety: ProductVariety) -> Twist:
    coeffs = c.coeffs if isinstance(c, LineBundleClass) else tuple(c)
    if len(coeffs) != variety.picard_rank:
        raise ValueError(f"{variety} has Picard rank {variety.picard_rank}, got {len(coeffs)} coefficients")
    return Twist(tuple(coeffs))


def direct_sum(*terms):
    out = terms[0]
    for t in terms[1:]:
        out = DirectSum(out, t)
    return out


def tensor(*terms):
    out = terms[0]
    for t in terms[1:]:
        out = Tensor(out, t)
    return out


def dual(e):
    return Dual(e)


# --- normal form -----------------------------------------------------------

Decomposition = Dict[IrreducibleBundle, int]


def _trivial(variety: ProductVariety) -> IrreducibleBundle:
    return IrreducibleBundle(tuple(
        tuple((0,) * b for b in f.block_sizes) for f in variety.factors
    ))


def _with_block(variety: ProductVariety, ref: BlockRef, w: Weight) -> IrreducibleBundle:
    base = [list(f) for f in _trivial(variety).weights]
    base[ref.factor][ref.block] = w
    return IrreducibleBundle(tuple(tuple(f) for f in base))


def _check_ref(variety: ProductVariety, ref: BlockRef):
    if not 0 <= ref.factor < len(variety.factors):
        raise ValueError(f"factor {ref.factor + 1} out of range for {variety}")
    if not 0 <= ref.block < variety.factors[ref.factor].num_blocks:
        raise ValueError(f"block {ref.block + 1} out of range for factor {variety.factors[ref.factor]}")


def _block_weight(ref: BlockRef, w: Weight, size: int):
    """Weight on a block of rank ``size``; ``None`` if the Schur functor vanishes."""
    w = tuple(w)
    if len(w) > size:
        if any(w[size:]):
            return None
        w = w[:size]
    w = pad(w, size)
    return dual_weight(w) if ref.dual else w


def twist_irreducible(variety: ProductVariety, e: IrreducibleBundle, coeffs) -> IrreducibleBundle:
    """Tensor by the line bundle ``O(coeffs)``: a determinant shift per block."""
    coeffs = tuple(coeffs)
    out = []
    for f, blocks, sl in zip(variety.factors, e.weights, variety.picard_slices()):
        shifts = line_bundle_weights(f, coeffs[sl])
        out.append(tuple(tuple(x + s[0] for x in b) for b, s in zip(blocks, shifts)))
    return IrreducibleBundle(tuple(out))


@lru_cache(maxsize=200_000)
def tensor_irreducibles(variety: ProductVariety, a: IrreducibleBundle, b: IrreducibleBundle) -> Tuple[Tuple[IrreducibleBundle, int], ...]:
    per_block = []
    for f, fa, fb in zip(variety.factors, a.weights, b.weights):
        for size, wa, wb in zip(f.block_sizes, fa, fb):
            per_block.append(tuple(lr_product(wa, wb, size).items()))
    out = defaultdict(int)
    for choice in product(*per_block):
        mult = prod(c for _, c in choice)
        flat = iter(w for w, _ in choice)
        weights = tuple(tuple(next(flat) for _ in range(f.num_blocks)) for f in variety.factors)
        out[IrreducibleBundle(weights)] += mult
    return tuple(out.items())


def _add(acc, terms, scale=1):
    for k, v in terms.items() if isinstance(terms, dict) else terms:
        acc[k] += scale * v


def _sorted(d) -> Decomposition:
    return {k: d[k] for k in sorted(d, key=IrreducibleBundle.sort_key) if d[k]}


@lru_cache(maxsize=50_000)
def _normalize(e, variety: ProductVariety) -> Tuple[Tuple[IrreducibleBundle, int], ...]:
    return tuple(_normalize_uncached(e, variety).items())


def _normalize_uncached(e, variety: ProductVariety) -> Decomposition:
    if isinstance(e, Twist):
        if len(e.coeffs) != variety.picard_rank:
            raise ValueError(f"twist {e} has wrong arity for {variety}")
        return {twist_irreducible(variety, _trivial(variety), e.coeffs): 1}
    if isinstance(e, BlockRef):
        return _normalize_uncached(Schur((1,), e), variety)
    if isinstance(e, Schur):
        _check_ref(variety, e.ref)
        if not is_dominant(e.weight):
            raise ValueError(f"Schur weight {e.weight} is not weakly decreasing")
        size = variety.factors[e.ref.factor].block_sizes[e.ref.block]
        w = _block_weight(e.ref, e.weight, size)
        return {} if w is None else {_with_block(variety, e.ref, w): 1}
    if isinstance(e, Plethysm):
        _check_ref(variety, e.ref)
        size = variety.factors[e.ref.factor].block_sizes[e.ref.block]
        terms = plethysm("sym", e.inner, e.t, size)
        out = defaultdict(int)
        for w, c in terms.items():
            w = dual_weight(w) if e.ref.dual else w
            out[_with_block(variety, e.ref, w)] += c
        return _sorted(out)
    if isinstance(e, Dual):
        return _sorted({k.dual(): v for k, v in normalize(e.arg, variety).items()})
    if isinstance(e, DirectSum):
        out = defaultdict(int)
        _add(out, normalize(e.left, variety))
        _add(out, normalize(e.right, variety))
        return _sorted(out)
    if isinstance(e, Tensor):
        left = normalize(e.left, variety)
        right = normalize(e.right, variety)
        out = defaultdict(int)
        for a, ca in left.items():
            for b, cb in right.items():
                _add(out, tensor_irreducibles(variety, a, b), ca * cb)
        return _sorted(out)
    raise TypeError(f"not a bundle expression: {e!r}")


def normalize(e, variety: ProductVariety) -> Decomposition:
    """Decompose ``e`` into irreducible homogeneous bundles with multiplicities.

    Summands are ordered lexicographically by their concatenated weights.
    """
    return dict(_normalize(e, variety))


def rank(e, variety: ProductVariety) -> int:
    total = 0
    for bundle, mult in normalize(e, variety).items():
        r = 1
        for f, blocks in zip(variety.factors, bundle.weights):
            for size, w in zip(f.block_sizes, blocks):
                r *= schur_dim(w, size)
        total += mult * r
    return total
