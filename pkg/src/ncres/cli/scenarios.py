"""Builtin resolution scenarios."""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Sequence

from ..lefschetz import (
    Assumption,
    LefschetzSpec,
    PfaffianLattice,
    PlethysmTwist,
    ResolutionScenario,
    compute_m_r,
)
from ..partitions import partitions_of
from ..varieties import (
    BlockRef,
    FlagVariety,
    LineBundleClass,
    ProductVariety,
    Schur,
    Twist,
    canonical_bundle,
    direct_sum,
    tensor,
)

__all__ = [
    "BUILTINS",
    "ScenarioUsageError",
    "veronese",
    "segre",
    "grassmannian_cone",
    "pfaffian",
    "anticanonical",
    "default_collection",
]


class ScenarioUsageError(ValueError):
    pass


def _cone_assumptions(what: str) -> List[Assumption]:
    return [
        Assumption("divisor_preimage", "cited",
                   f"blowing up the vertex of the cone over {what} gives the total space of L^-1, "
                   "whose zero section is the exceptional divisor (scheme-theoretic preimage of the vertex)"),
        Assumption("rational_singularities", "cited",
                   f"the cone over {what} is normal with rational singularities since H^>0(X, L^t) = 0 for t >= 0"),
        Assumption("admissibility", "derived",
                   "every block is generated by an exceptional collection, hence admissible"),
        Assumption("fullness", "cited",
                   "the exceptional collection generates the derived category (only the K_0 rank is checked)"),
    ]


def _line(variety: ProductVariety, *coeffs: int) -> Twist:
    if len(coeffs) != variety.picard_rank:
        raise ValueError("wrong number of twist coefficients")
    return Twist(tuple(coeffs))


def veronese(n: int, d: int) -> ResolutionScenario:
    if n < 1:
        raise ScenarioUsageError("veronese needs n >= 1")
    try:
        m, r = compute_m_r(n, d)
    except ValueError as exc:
        raise ScenarioUsageError(str(exc)) from None
    X = ProductVariety.of(FlagVariety(n + 1, (1,)))
    full = tuple(_line(X, -i) for i in range(d - 1, -1, -1))
    last = tuple(_line(X, -i) for i in range(r - 1, -1, -1))
    blocks = [full] * (m - 1) + [last]
    spec = LefschetzSpec(X, LineBundleClass((d,)), blocks, "dual")
    E = tuple(_line(X, i) for i in range(d))
    return ResolutionScenario(
        name=f"veronese(n={n}, d={d})",
        kind="cone",
        spec=spec,
        E_generators=E,
        assumptions=tuple(_cone_assumptions(f"the {d}-uple embedding of P{n}")),
        params=(("n", n), ("d", d), ("m", m), ("r", r)),
    )


def segre(m: int) -> ResolutionScenario:
    if m < 2:
        raise ScenarioUsageError("segre needs m >= 2")
    P = FlagVariety(m, (1,))
    X = ProductVariety.of(P, P)
    block = tuple(_line(X, 0, -i) for i in range(m - 1, -1, -1))
    spec = LefschetzSpec(X, LineBundleClass((1, 1)), [block] * m, "dual")
    return ResolutionScenario(
        name=f"segre(m={m})",
        kind="cone",
        spec=spec,
        E_generators=block,
        assumptions=tuple(_cone_assumptions(f"the Segre embedding of P{m - 1}xP{m - 1}")),
        params=(("m", m),),
    )


def _sym_dual(j: int, factor: int = 0, block: int = 0):
    if j == 0:
        return Twist((0,))
    return Schur((j,), BlockRef(factor, block, True))


def grassmannian_cone(m: int, blocks_top: Optional[int] = None) -> ResolutionScenario:
    if m < 4:
        raise ScenarioUsageError("grassmannian_cone needs m >= 4")
    X = ProductVariety.of(FlagVariety(m, (2,)))
    k = (m - 1) // 2
    params = [("m", m), ("k", k)]
    if m % 2:
        if blocks_top is not None:
            if not 0 <= blocks_top <= k:
                raise ScenarioUsageError(f"--blocks-top must be between 0 and {k}")
            top = blocks_top
            params.append(("blocks_top", top))
            params.append(("variant", f"top symmetric power {top} instead of {k}"))
        else:
            top = k
            params.append(("k_rank_note",
                           f"odd-m layout with top power k = {k} in all {m} blocks gives {m * (k + 1)} objects; "
                           f"top power k-1 = {k - 1} (--blocks-top {k - 1}) would give {m * k}"))
        block = tuple(_sym_dual(j) for j in range(top + 1))
        blocks = [block] * m
        E = block
    else:
        if blocks_top is not None:
            raise ScenarioUsageError("--blocks-top applies only to odd m")
        big = tuple(_sym_dual(j) for j in range(k + 1))
        small = big[:-1]
        blocks = [big] * (k + 1) + [small] * (k + 1)
        E = big
    spec = LefschetzSpec(X, LineBundleClass((1,)), blocks, "dual")
    return ResolutionScenario(
        name=f"grassmannian_cone(m={m}" + (f", blocks_top={blocks_top})" if blocks_top is not None else ")"),
        kind="cone",
        spec=spec,
        E_generators=E,
        assumptions=tuple(_cone_assumptions(f"the Pluecker embedding of Gr(2,{m})")),
        params=tuple(params),
    )


def pfaffian(n: int) -> ResolutionScenario:
    if n < 6:
        raise ScenarioUsageError("pfaffian needs n >= 6")
    Zt = ProductVariety.of(FlagVariety(n, (n - 4, n - 2)))
    p = (n - 2) // 2 if n % 2 == 0 else (n - 1) // 2

    def gens(top):
        return tuple(Twist((0, 0)) if j == 0 else Schur((j,), BlockRef(0, 0, True)) for j in range(top + 1))

    if n % 2 == 0:
        blocks = [gens(p - 1)] * p + [gens(p - 2)] * p
    else:
        blocks = [gens(p - 2)] * (2 * p - 1)
    # conormal bundle of the exceptional divisor: -(2 H_Y - H_G) = H_G - 2 H_Y
    spec = LefschetzSpec(Zt, LineBundleClass((1, -2)), blocks, "dual", relative_step=0)
    top = n // 2 - 2
    G = ProductVariety.of(FlagVariety(n, (n - 4,)))
    F = direct_sum(*(Twist((0,)) if j == 0 else Schur((j,), BlockRef(0, 0, True)) for j in range(top + 1)))
    assumptions = (
        Assumption("divisor_preimage", "cited",
                   "P(wedge^2 K^perp) over Gr(n-4, W) is the blowup of Y = Pf(4, n) along Z = Gr(n-2, W), "
                   "with exceptional divisor Fl(n-4, n-2; W)"),
        Assumption("rational_singularities", "cited",
                   "Pfaffian varieties of skew forms of bounded rank have rational singularities"),
        Assumption("admissibility", "derived",
                   "every block is generated by a relative exceptional collection, hence admissible"),
        Assumption("fullness", "cited",
                   "fiberwise the blocks restrict to a full Lefschetz decomposition of Gr(n-4, n-2) "
                   "(only the K_0 rank is checked)"),
        Assumption("tilting_reduction", "cited",
                   "pushing End E (x) pi^* O_Y(t) to Gr(n-4, W) gives End F (x) Sym^t(wedge^2(W/K))"),
    )
    return ResolutionScenario(
        name=f"pfaffian(n={n})",
        kind="pfaffian",
        spec=spec,
        E_generators=gens(top),
        assumptions=assumptions,
        tilting_variety=G,
        tilting_bundle=F,
        grading=PlethysmTwist(0, 1, "wedge2"),
        pfaffian=PfaffianLattice.cited(n),
        params=(("n", n), ("m", n - 2), ("model", "subspaces of W: K in U in W with dim K = n-4, dim U = n-2")),
    )


def _factor_collection(flag: FlagVariety, factor: int, nfactors: int):
    """Kapranov's collection S^lambda U^* with lambda in a k x (n-k) box, ordered by size."""
    if flag.picard_rank != 1:
        raise ScenarioUsageError(f"no default collection for {flag}; pass --collection")
    k, n = flag.steps[0], flag.n
    out = []
    for size in range(k * (n - k) + 1):
        for lam in sorted(partitions_of(size, k, n - k)):
            if size == 0:
                out.append(None)
            else:
                out.append(Schur(tuple(lam), BlockRef(factor, 0, True)))
    return out


def default_collection(X: ProductVariety) -> List:
    per = [_factor_collection(f, i, len(X.factors)) for i, f in enumerate(X.factors)]
    trivial = Twist((0,) * X.picard_rank)
    out = []
    for combo in product(*per):
        parts = [c for c in combo if c is not None]
        if not parts:
            out.append(trivial)
        elif len(parts) == 1:
            out.append(parts[0])
        else:
            out.append(tensor(*parts))
    return out


def anticanonical(X: ProductVariety, collection: Optional[Sequence] = None, name: Optional[str] = None) -> ResolutionScenario:
    gens = tuple(collection) if collection is not None else tuple(default_collection(X))
    _, K = canonical_bundle(X)
    spec = LefschetzSpec(X, -K, [gens], "dual")
    return ResolutionScenario(
        name=name or f"anticanonical({X})",
        kind="cone",
        spec=spec,
        E_generators=gens,
        assumptions=tuple(_cone_assumptions(f"{X} in its anticanonical embedding")),
        params=(("variety", str(X)),),
    )


BUILTINS: Dict[str, str] = {
    "veronese": "--n N --d D: cone over the d-uple embedding of P^n",
    "segre": "--m M: cone over the Segre embedding of P^(m-1) x P^(m-1)",
    "grassmannian_cone": "--m M [--blocks-top K]: cone over the Pluecker embedding of Gr(2,m)",
    "pfaffian": "--n N: Pfaffian variety of skew forms of rank <= 4 on an n-dimensional space",
    "anticanonical": "--variety X | --collection FILE: anticanonical cone over X",
}
