"""Exceptionality, semiorthogonality, strictness and K-rank checks."""

from __future__ import annotations

from collections import defaultdict
from typing import Any, Dict, List, Optional, Tuple

from ..bbw import cohomology, pushforward
from ..varieties import Dual, Tensor, k0_rank, normalize, twist_irreducible
from .types import FAIL, PASS, SKIPPED, CheckEntry, CheckReport, LefschetzSpec

__all__ = [
    "ext_vanishing",
    "check_exceptional_over_base",
    "check_semiorthogonality",
    "check_chain_and_strictness",
    "k_rank_accounting",
    "is_rectangular",
    "compute_m_r",
    "collection_order",
]


def _hom(spec: LefschetzSpec, A, B):
    return normalize(Tensor(Dual(A), B), spec.variety)


def _twist(spec: LefschetzSpec, summands, power: int):
    if power == 0:
        return summands
    coeffs = tuple(power * c for c in spec.L.coeffs)
    out = defaultdict(int)
    for e, mult in summands.items():
        out[twist_irreducible(spec.variety, e, coeffs)] += mult
    return dict(out)


def _label(g, power: int) -> str:
    if power == 0:
        return str(g)
    return f"{g} (x) L^{power}"


def ext_vanishing(spec: LefschetzSpec, A, a: int, B, b: int) -> Optional[Dict[str, Any]]:
    """``None`` if ``Ext^*(A (x) L^a, B (x) L^b)`` vanishes (relatively, in relative mode), else a witness."""
    summands = _twist(spec, _hom(spec, A, B), b - a)
    if spec.is_relative:
        flag = spec.variety.factors[0]
        for e, mult in summands.items():
            res = pushforward(flag, spec.relative_step, e)
            for deg in sorted(res):
                for base_bundle, c in res[deg].items():
                    return {
                        "from": _label(A, a),
                        "to": _label(B, b),
                        "relative_degree": deg,
                        "base_bundle": str(base_bundle),
                        "multiplicity": c * mult,
                        "summand": str(e),
                    }
        return None
    table = cohomology(spec.variety, summands)
    if table.is_zero:
        return None
    deg = table.degrees()[0]
    return {"from": _label(A, a), "to": _label(B, b), "degree": deg, "dim": table.dim(deg)}


def _is_exceptional(spec: LefschetzSpec, g) -> Optional[Dict[str, Any]]:
    summands = _hom(spec, g, g)
    if spec.is_relative:
        flag = spec.variety.factors[0]
        total: Dict[Tuple[int, Any], int] = defaultdict(int)
        for e, mult in summands.items():
            for deg, terms in pushforward(flag, spec.relative_step, e).items():
                for b, c in terms.items():
                    total[(deg, b)] += c * mult
        trivial = [(k, v) for k, v in total.items() if k[0] == 0 and not any(x for x in k[1].concatenated())]
        if len(total) == 1 and trivial and trivial[0][1] == 1:
            return None
        shown = sorted(((d, str(b), c) for (d, b), c in total.items()))
        return {"object": str(g), "pushforward_of_End": [list(x) for x in shown]}
    table = cohomology(spec.variety, summands)
    if table.total_dims() == {0: 1}:
        return None
    return {"object": str(g), "Ext": {str(d): n for d, n in table.total_dims().items()}}


def _distinct_generators(spec: LefschetzSpec) -> List[Any]:
    seen, out = set(), []
    for block in spec.blocks:
        for g in block:
            key = tuple(normalize(g, spec.variety).items())
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


def check_exceptional_over_base(spec: LefschetzSpec) -> CheckReport:
    """Each generator is exceptional (over the base in relative mode), and each
    block's generator list is an exceptional collection in the listed order."""
    report = CheckReport()
    witnesses, checked = [], 0
    for g in _distinct_generators(spec):
        checked += 1
        w = _is_exceptional(spec, g)
        if w is not None:
            witnesses.append(w)
    mode = "relative to the base" if spec.is_relative else "absolute"
    report.add(CheckEntry(
        "exceptional_objects",
        FAIL if witnesses else PASS,
        f"End of every generator is the structure sheaf in degree 0 ({mode})",
        witness={"failures": witnesses} if witnesses else None,
        data={"objects_checked": checked},
    ))

    witnesses, checked = [], 0
    done = set()
    for k, block in enumerate(spec.blocks):
        key = tuple(str(g) for g in block)
        if key in done:
            continue
        done.add(key)
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                checked += 1
                w = ext_vanishing(spec, block[j], 0, block[i], 0)
                if w is not None:
                    w["block"] = k
                    witnesses.append(w)
    report.add(CheckEntry(
        "exceptional_collections_in_blocks",
        FAIL if witnesses else PASS,
        "Ext(later, earlier) = 0 inside every block",
        witness={"failures": witnesses} if witnesses else None,
        data={"pairs_checked": checked},
    ))
    return report


def collection_order(spec: LefschetzSpec) -> List[Tuple[int, int, Any, int]]:
    """The full exceptional sequence as ``(block, index, generator, L-power)`` in order."""
    ks = range(spec.m - 1, -1, -1) if spec.orientation == "dual" else range(spec.m)
    sign = -1 if spec.orientation == "dual" else 1
    return [(k, i, g, sign * k) for k in ks for i, g in enumerate(spec.blocks[k])]


def _block_pairs(spec: LefschetzSpec):
    """``(later, earlier)`` object pairs across different blocks: Hom(later, earlier) must vanish."""
    for k in range(spec.m):
        for l in range(k):
            for e in spec.blocks[k]:
                for f in spec.blocks[l]:
                    if spec.orientation == "dual":
                        # B_k (x) L^-k precedes B_l (x) L^-l
                        yield (f, -l), (e, -k)
                    else:
                        yield (e, k), (f, l)


def check_semiorthogonality(spec: LefschetzSpec) -> CheckReport:
    report = CheckReport()
    witnesses, checked = [], 0
    for (A, a), (B, b) in _block_pairs(spec):
        checked += 1
        w = ext_vanishing(spec, A, a, B, b)
        if w is not None:
            witnesses.append(w)
    report.add(CheckEntry(
        "semiorthogonality",
        FAIL if witnesses else PASS,
        "Ext from every later block to every earlier block vanishes",
        witness={"failures": witnesses} if witnesses else None,
        data={"pairs_checked": checked},
    ))
    return report


def _same_objects(spec: LefschetzSpec, xs, ys) -> bool:
    return len(xs) == len(ys) and all(
        normalize(x, spec.variety) == normalize(y, spec.variety) for x, y in zip(xs, ys)
    )


def check_chain_and_strictness(spec: LefschetzSpec) -> CheckReport:
    report = CheckReport()
    bad = []
    for k in range(1, spec.m):
        small, big = spec.blocks[k], spec.blocks[k - 1]
        r = len(small)
        if r > len(big) or not (_same_objects(spec, small, big[:r]) or _same_objects(spec, small, big[len(big) - r:])):
            bad.append({"block": k, "generators": [str(g) for g in small], "previous": [str(g) for g in big]})
    report.add(CheckEntry(
        "chain_containment",
        FAIL if bad else PASS,
        "every B_k is a prefix or suffix of B_(k-1)",
        witness={"failures": bad} if bad else None,
    ))

    witnesses, checked = [], 0
    for k in range(1, spec.m):
        for e in spec.blocks[0]:
            for f in spec.blocks[k]:
                checked += 1
                if spec.orientation == "dual":
                    w = ext_vanishing(spec, e, k, f, 0)
                else:
                    w = ext_vanishing(spec, f, 0, e, -k)
                if w is not None:
                    w["block"] = k
                    witnesses.append(w)
    report.add(CheckEntry(
        "strictness_orthogonality",
        FAIL if witnesses else PASS,
        "B_k lies in the orthogonal of B_0 (x) L^k" if spec.orientation == "dual"
        else "B_k lies in the orthogonal of B_0 (x) L^-k",
        witness={"failures": witnesses} if witnesses else None,
        data={"pairs_checked": checked},
    ))
    report.add(CheckEntry(
        "strictness_maximality",
        SKIPPED,
        "equality B_k = (B_0 (x) L^k)^perp cap B_(k-1) needs the whole category, not generators",
        gating=False,
    ))
    return report


def k_rank_accounting(spec: LefschetzSpec, note: str = "") -> CheckReport:
    """Total number of exceptional generators against rank K_0 (of the fiber, in relative mode)."""
    count = sum(len(b) for b in spec.blocks)
    if spec.is_relative:
        expected = k0_rank(spec.variety) // k0_rank(spec.base)
        what = "rank K_0 of the fiber"
    else:
        expected = k0_rank(spec.variety)
        what = "rank K_0"
    report = CheckReport()
    ok = count == expected
    report.add(CheckEntry(
        "k_rank_accounting",
        PASS if ok else FAIL,
        f"number of generators vs {what}" + (f"; {note}" if note and not ok else ""),
        witness=None if ok else {"objects": count, "k0_rank": expected},
        data={"objects": count, "k0_rank": expected, "block_sizes": [len(b) for b in spec.blocks]},
    ))
    return report


def is_rectangular(spec: LefschetzSpec) -> bool:
    first = spec.blocks[0]
    return all(_same_objects(spec, b, first) for b in spec.blocks[1:])


def compute_m_r(n: int, d: int) -> Tuple[int, int]:
    """The unique ``(m, r)`` with ``n + 1 = (m - 1) d + r`` and ``1 <= r <= d``."""
    if not 1 <= d <= n + 1:
        raise ValueError(f"need 1 <= d <= n+1, got n={n}, d={d}")
    m = n // d + 1
    return m, n + 1 - (m - 1) * d
