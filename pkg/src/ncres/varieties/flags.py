"""Partial flag varieties of GL(n), their products, and Picard-lattice data."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial, prod
from typing import Tuple

from ..partitions import Weight

__all__ = [
    "FlagVariety",
    "ProductVariety",
    "LineBundleClass",
    "IrreducibleBundle",
    "projective_space",
    "grassmannian",
    "parse_variety",
    "canonical_bundle",
    "k0_rank",
    "line_bundle_weights",
    "line_bundle_class_of",
]


@dataclass(frozen=True)
class FlagVariety:
    """``Fl(d_1 < ... < d_s; n)``: flags of subspaces of dimensions ``d_i`` in k^n.

    ``steps == ()`` is the point ``Spec k`` viewed as a homogeneous space of
    GL(n); it only arises as the target of pushforwards.
    """

    n: int
    steps: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(d) for d in self.steps))
        if self.n < 1:
            raise ValueError("ambient dimension must be positive")
        prev = 0
        for d in self.steps:
            if not prev < d < self.n:
                raise ValueError(f"steps must satisfy 0 < d_1 < ... < d_s < n, got {self.steps} for n={self.n}")
            prev = d

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        bounds = (0,) + self.steps + (self.n,)
        return tuple(b - a for a, b in zip(bounds, bounds[1:]))

    @property
    def num_blocks(self) -> int:
        return len(self.steps) + 1

    @property
    def picard_rank(self) -> int:
        return len(self.steps)

    @property
    def dimension(self) -> int:
        sizes = self.block_sizes
        return sum(sizes[i] * sizes[j] for i in range(len(sizes)) for j in range(i + 1, len(sizes)))

    @property
    def is_point(self) -> bool:
        return not self.steps

    def drop(self, step: int) -> "FlagVariety":
        """Base of the forgetful map that forgets the ``step``-th subspace (0-based)."""
        if not 0 <= step < len(self.steps):
            raise IndexError(f"step index {step} out of range for {self}")
        return FlagVariety(self.n, self.steps[:step] + self.steps[step + 1:])

    def __str__(self) -> str:
        if not self.steps:
            return f"pt[GL{self.n}]"
        if self.steps == (1,):
            return f"P{self.n - 1}"
        if len(self.steps) == 1:
            return f"Gr({self.steps[0]},{self.n})"
        return "Fl({};{})".format(",".join(map(str, self.steps)), self.n)


def projective_space(n: int) -> FlagVariety:
    """P^n as the variety of lines in k^(n+1)."""
    return FlagVariety(n + 1, (1,))


def grassmannian(k: int, n: int) -> FlagVariety:
    return FlagVariety(n, (k,))


@dataclass(frozen=True)
class ProductVariety:
    factors: Tuple[FlagVariety, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product needs at least one factor")

    @classmethod
    def of(cls, *factors: FlagVariety) -> "ProductVariety":
        return cls(tuple(factors))

    @property
    def picard_rank(self) -> int:
        return sum(f.picard_rank for f in self.factors)

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors)

    def picard_slices(self):
        """For each factor, the slice of Picard coordinates that belongs to it."""
        out, start = [], 0
        for f in self.factors:
            out.append(slice(start, start + f.picard_rank))
            start += f.picard_rank
        return out

    def __str__(self) -> str:
        return "x".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class LineBundleClass:
    """Picard coordinates in the basis ``det(U_{d_j})^vee`` of every factor."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other: "LineBundleClass") -> "LineBundleClass":
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError("Picard rank mismatch")
        return LineBundleClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LineBundleClass":
        return LineBundleClass(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "LineBundleClass":
        return LineBundleClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "O({})".format(",".join(map(str, self.coeffs)))


@dataclass(frozen=True, order=True)
class IrreducibleBundle:
    """Per factor, one highest weight per tautological block.

    Block weights describe the representation of the block itself, so the
    structure sheaf is all zeros, the tautological sub-bundle ``U`` of P^n has
    U-block weight ``(1,)``, and ``O(1) = det(U)^vee`` has U-block weight ``(-1,)``.
    """

    weights: Tuple[Tuple[Weight, ...], ...]

    def concatenated(self) -> Tuple[int, ...]:
        return tuple(x for factor in self.weights for block in factor for x in block)

    def sort_key(self):
        return self.concatenated()

    def dual(self) -> "IrreducibleBundle":
        return IrreducibleBundle(tuple(
            tuple(tuple(-x for x in reversed(b)) for b in factor) for factor in self.weights
        ))

    def __str__(self) -> str:
        def block(b):
            return "(" + ",".join(map(str, b)) + ")"
        return " x ".join("[" + "|".join(block(b) for b in factor) + "]" for factor in self.weights)


def line_bundle_weights(variety: FlagVariety, coeffs) -> Tuple[Weight, ...]:
    """Block weights of ``O(a_1,...,a_s)`` on one factor.

    ``det(U_{d_j})^vee`` lowers every block inside ``U_{d_j}`` by one, so block
    ``i`` gets the constant ``-(a_i + ... + a_s)``; the last block gets 0.
    """
    coeffs = tuple(coeffs)
    if len(coeffs) != variety.picard_rank:
        raise ValueError(f"{variety} needs {variety.picard_rank} twist coefficients, got {len(coeffs)}")
    out = []
    for i, size in enumerate(variety.block_sizes):
        c = -sum(coeffs[i:])
        out.append((c,) * size)
    return tuple(out)


def line_bundle_class_of(variety: ProductVariety, bundle: IrreducibleBundle):
    """Picard coordinates of an equivariant line bundle, or ``None`` if not a line bundle.

    A uniform shift of all blocks of a factor is a character of GL(n) and does
    not change the underlying line bundle.
    """
    coeffs = []
    for factor, blocks in zip(variety.factors, bundle.weights):
        consts = []
        for b in blocks:
            if len(set(b)) > 1:
                return None
            consts.append(b[0])
        coeffs.extend(consts[j + 1] - consts[j] for j in range(factor.picard_rank))
    return LineBundleClass(tuple(coeffs))


def canonical_bundle(variety: ProductVariety):
    """Equivariant canonical bundle and its Picard class.

    The tangent bundle is graded by ``Hom(block_i, block_j)`` for ``i < j``, so
    block ``j`` of K receives ``(sizes after j) - (sizes before j)``.
    """
    per_factor = []
    for f in variety.factors:
        sizes = f.block_sizes
        blocks = []
        for j, b in enumerate(sizes):
            c = sum(sizes[j + 1:]) - sum(sizes[:j])
            blocks.append((c,) * b)
        per_factor.append(tuple(blocks))
    bundle = IrreducibleBundle(tuple(per_factor))
    return bundle, line_bundle_class_of(variety, bundle)


def k0_rank(variety) -> int:
    """Rank of K_0: product of multinomials n!/(b_1! ... b_{s+1}!)."""
    factors = variety.factors if isinstance(variety, ProductVariety) else (variety,)
    return prod(factorial(f.n) // prod(factorial(b) for b in f.block_sizes) for f in factors)


_FACTOR_RE = re.compile(
    r"""\s*(?:
        P\s*(?P<p>\d+)
      | Gr\s*\(\s*(?P<gk>\d+)\s*,\s*(?P<gn>\d+)\s*\)
      | Fl\s*\(\s*(?P<fs>\d+(?:\s*,\s*\d+)*)\s*;\s*(?P<fn>\d+)\s*\)
    )\s*""",
    re.VERBOSE,
)


def parse_variety(text: str) -> ProductVariety:
    """Parse ``P2``, ``Gr(2,4)``, ``Fl(2,4;6)`` and ``x``-separated products."""
    factors = []
    pos = 0
    text = text.strip()
    while True:
        m = _FACTOR_RE.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse variety at position {pos}: {text!r}")
        if m.group("p") is not None:
            n = int(m.group("p"))
            if n < 1:
                raise ValueError("P0 is a point; projective spaces need n >= 1")
            factors.append(projective_space(n))
        elif m.group("gk") is not None:
            factors.append(grassmannian(int(m.group("gk")), int(m.group("gn"))))
        else:
            steps = tuple(int(x) for x in m.group("fs").split(","))
            factors.append(FlagVariety(int(m.group("fn")), steps))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] not in "x×":
            raise ValueError(f"expected 'x' between factors at position {pos}: {text!r}")
        pos += 1
    return ProductVariety(tuple(factors))
