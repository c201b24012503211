"""Gorenstein index, crepancy, Picard-lattice identities for Pfaffians and Serre twists."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from ..varieties import FlagVariety, LineBundleClass, ProductVariety, canonical_bundle, grassmannian
from .checks import is_rectangular
from .types import FAIL, PASS, CheckEntry, CheckReport, PfaffianLattice, ResolutionScenario

__all__ = [
    "gorenstein_index",
    "crepancy_check",
    "pfaffian_lattice_check",
    "pfaffian_serre_dimension_check",
    "serre_twist_report",
    "discrepancy",
]

Vec = Tuple[int, int]


def gorenstein_index(variety: ProductVariety, L: LineBundleClass) -> Optional[int]:
    """The positive integer ``c`` with ``K_X = -c L``, or ``None`` when no such ``c`` exists."""
    _, K = canonical_bundle(variety)
    c = None
    for k, l in zip(K.coeffs, L.coeffs):
        if l == 0:
            if k != 0:
                return None
            continue
        q = Fraction(-k, l)
        if c is None:
            c = q
        elif q != c:
            return None
    if c is None or c.denominator != 1 or c <= 0:
        return None
    return int(c)


def _add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def _scale(k: int, a: Vec) -> Vec:
    return (k * a[0], k * a[1])


def _solve_multiple(v: Vec, z: Vec) -> Optional[Fraction]:
    """``a`` with ``v = a z`` or ``None``."""
    a = None
    for x, y in zip(v, z):
        if y == 0:
            if x != 0:
                return None
            continue
        q = Fraction(x, y)
        if a is not None and q != a:
            return None
        a = q
    return a


def discrepancy(lattice: PfaffianLattice) -> Optional[Fraction]:
    """``a`` with ``K_resolution = pi^* K_Y + a * exceptional``."""
    v = _add(lattice.K_resolution, (0, -lattice.K_Y_coefficient))
    return _solve_multiple(v, lattice.exceptional)


def _fmt(v: Vec) -> str:
    sign = "-" if v[1] < 0 else "+"
    return f"{v[0]} H_G {sign} {abs(v[1])} H_Y"


def pfaffian_lattice_check(n: int, lattice: Optional[PfaffianLattice] = None) -> CheckReport:
    """Picard-lattice identities on the resolution of Pf(4, n) in the basis ``(H_G, H_Y)``.

    ``lattice`` defaults to the standard constants; pass a perturbed one to see a failure.
    """
    if n < 6:
        raise ValueError("the Pfaffian lattice check needs n >= 6")
    lat = lattice or PfaffianLattice.cited(n)
    Z, KR, KD = lat.exceptional, lat.K_resolution, lat.K_divisor
    HY = (0, 1)
    report = CheckReport()

    lhs = _add(_scale(n - 3, Z), _scale(-2 * n, HY))
    report.add(CheckEntry(
        "canonical_class_of_resolution",
        PASS if lhs == KR else FAIL,
        "(n-3) Z - 2n H_Y = K_resolution",
        witness=None if lhs == KR else {"lhs": _fmt(lhs), "rhs": _fmt(KR)},
        data={"value": _fmt(KR)},
    ))

    adj = _add(KR, Z)
    report.add(CheckEntry(
        "adjunction",
        PASS if adj == KD else FAIL,
        "(K_resolution + Z)|_Z = K_Z",
        witness=None if adj == KD else {"lhs": _fmt(adj), "rhs": _fmt(KD)},
        data={"value": _fmt(KD)},
    ))

    solved = _add(KD, _scale(-1, KR))
    report.add(CheckEntry(
        "exceptional_class",
        PASS if solved == Z else FAIL,
        "Z = lambda H_G + mu H_Y solved from adjunction",
        witness=None if solved == Z else {"solved": _fmt(solved), "stated": _fmt(Z)},
        data={"lambda": solved[0], "mu": solved[1]},
    ))

    KY = _add(KR, _scale(-(n - 3), Z))
    ok = KY == (0, lat.K_Y_coefficient)
    report.add(CheckEntry(
        "canonical_class_of_Y",
        PASS if ok else FAIL,
        "K_resolution - (n-3) Z is a multiple of H_Y equal to K_Y",
        witness=None if ok else {"K_resolution - (n-3) Z": _fmt(KY), "K_Y": _fmt((0, lat.K_Y_coefficient))},
        data={"K_Y": f"{lat.K_Y_coefficient} H_Y"},
    ))

    # independent cross-checks from flag-variety geometry
    flag = ProductVariety.of(FlagVariety(n, (n - 4, n - 2)))
    _, Kfl = canonical_bundle(flag)
    computed_KD = tuple(Kfl.coeffs)
    report.add(CheckEntry(
        "K_Z_from_flag_geometry",
        PASS if computed_KD == KD else FAIL,
        f"canonical class of Fl({n - 4},{n - 2};{n}) in the basis (H_G, H_Y)",
        witness=None if computed_KD == KD else {"computed": _fmt(computed_KD), "stated": _fmt(KD)},
    ))
    # P(wedge^2 K^perp) over G = Gr(n-4, n): K = K_G - c1(V) - rank(V) H_Y,
    # with c1(K^perp) = -H_G and c1(wedge^2 V) = (rank V - 1) c1(V)
    K_G = -n
    c1_V = (4 - 1) * (-1)
    computed_KR = (K_G - c1_V, -6)
    report.add(CheckEntry(
        "K_resolution_from_projective_bundle",
        PASS if computed_KR == KR else FAIL,
        f"canonical class of P(wedge^2 K^perp) over Gr({n - 4},{n})",
        witness=None if computed_KR == KR else {"computed": _fmt(computed_KR), "stated": _fmt(KR)},
    ))
    report.data["pfaffian_constants"] = {
        "exceptional_divisor": _fmt(Z),
        "K_resolution": _fmt(KR),
        "K_exceptional_divisor": _fmt(KD),
        "K_Y": f"{lat.K_Y_coefficient} H_Y",
    }
    return report


def pfaffian_serre_dimension_check(n: int) -> CheckEntry:
    """``dim Y = 4n - 11`` against ``dim Gr(n-4, n) + (C(4,2) - 1)``."""
    shift = 4 * n - 11
    computed = grassmannian(n - 4, n).dimension + (6 - 1)
    return CheckEntry(
        "serre_shift_dimension",
        PASS if shift == computed else FAIL,
        "4n-11 = dim Gr(n-4,n) + 5",
        witness=None if shift == computed else {"shift": shift, "dimension": computed},
        data={"shift": shift, "dimension": computed},
    )


def _is_cone(scenario: ResolutionScenario) -> bool:
    return scenario.kind == "cone" or (scenario.kind == "custom" and not scenario.spec.is_relative)


def crepancy_check(scenario: ResolutionScenario) -> CheckReport:
    """Rectangularity and discrepancy ``m - 1``, each reported separately (non-gating)."""
    spec = scenario.spec
    report = CheckReport()
    rect = is_rectangular(spec)
    report.add(CheckEntry(
        "rectangular",
        PASS if rect else FAIL,
        "all blocks coincide",
        witness=None if rect else {"block_sizes": [len(b) for b in spec.blocks]},
        gating=False,
    ))
    m = spec.m
    info: Dict[str, Any] = {"m": m}
    if scenario.pfaffian is not None:
        a = discrepancy(scenario.pfaffian)
        info["discrepancy"] = None if a is None else str(a)
        ok = a is not None and a == m - 1
        reason = "discrepancy from the Picard-lattice constants"
    elif _is_cone(scenario):
        c = gorenstein_index(spec.variety, spec.L)
        info["gorenstein_index"] = c if c is not None else "not-proportional"
        if c is not None:
            info["discrepancy"] = c - 1
        ok = c is not None and c == m
        reason = "K_X = -c L with discrepancy c - 1" if c is not None else "K_X is not a multiple of L"
    else:
        ok = False
        reason = "no discrepancy data"
    report.add(CheckEntry(
        "discrepancy_equals_m_minus_1",
        PASS if ok else FAIL,
        reason,
        witness=None if ok else dict(info),
        data=info if ok else {},
        gating=False,
    ))
    crepant = rect and ok
    report.data["crepant"] = crepant
    return report


def serre_twist_report(scenario: ResolutionScenario, rectangular: Optional[bool] = None) -> CheckReport:
    """Twist and shift of the Serre functor, with the dimension check in the Pfaffian case."""
    spec = scenario.spec
    if rectangular is None:
        rectangular = is_rectangular(spec)
    report = CheckReport()
    desc: Dict[str, Any] = {}
    if scenario.pfaffian is not None:
        n = scenario.pfaffian.n
        desc["twist"] = f"pi^* O_Y({scenario.pfaffian.K_Y_coefficient} H_Y)"
        desc["shift"] = 4 * n - 11
        report.add(pfaffian_serre_dimension_check(n))
    elif _is_cone(scenario):
        desc["twist"] = "pi^* O_Y(K_Y)"
        desc["shift"] = spec.variety.dimension + 1
    else:
        desc["twist"] = "pi^* O_Y(K_Y)"
        desc["shift"] = "dim Y"
    if not rectangular:
        desc["caveat"] = "valid on objects F with i^*F in B_(m-1)"
    report.data["serre_functor"] = desc
    return report
