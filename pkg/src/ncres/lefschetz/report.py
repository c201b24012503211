"""Aggregate hypothesis checklist and verdicts for a resolution scenario."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional

from ..varieties import (
    IrreducibleBundle,
    direct_sum,
    line_bundle_class_of,
    normalize,
    structure_sheaf,
    twist_irreducible,
)
from .checks import (
    check_chain_and_strictness,
    check_exceptional_over_base,
    check_semiorthogonality,
    is_rectangular,
    k_rank_accounting,
)
from .crepancy import crepancy_check, pfaffian_lattice_check, serre_twist_report
from .tilting import LineTwist, UnboundedCheckError, tilting_check
from .types import ASSUMED, FAIL, PASS, SKIPPED, CheckEntry, CheckReport, ResolutionScenario

__all__ = ["resolution_report", "GROUPS", "run_group", "verdicts"]

GROUPS = (
    "exceptional",
    "semiorthogonality",
    "strictness",
    "k_rank",
    "base_pullback",
    "generator_bundle",
    "tilting",
    "crepancy",
    "pfaffian_lattice",
    "serre",
)

# gating entries that decide the categorical verdict
_CATEGORICAL = {
    "exceptional_objects",
    "exceptional_collections_in_blocks",
    "semiorthogonality",
    "chain_containment",
    "strictness_orthogonality",
    "k_rank_accounting",
    "base_pullback",
    "canonical_class_of_resolution",
    "adjunction",
    "exceptional_class",
    "canonical_class_of_Y",
    "K_Z_from_flag_geometry",
    "K_resolution_from_projective_bundle",
    "serre_shift_dimension",
}


def _irreducibles(variety, exprs) -> Optional[List[IrreducibleBundle]]:
    out = []
    for g in exprs:
        d = normalize(g, variety)
        if len(d) != 1 or next(iter(d.values())) != 1:
            return None
        out.append(next(iter(d)))
    return out


def _difference(variety, a: IrreducibleBundle, b: IrreducibleBundle):
    """Line bundle class ``c`` with ``a (x) O(c) = b``, or ``None``."""
    diff = IrreducibleBundle(tuple(
        tuple(tuple(y - x for x, y in zip(wa, wb)) for wa, wb in zip(fa, fb))
        for fa, fb in zip(a.weights, b.weights)
    ))
    return line_bundle_class_of(variety, diff)


def _generator_bundle_entry(scenario: ResolutionScenario) -> CheckEntry:
    spec = scenario.spec
    if not scenario.E_generators:
        return CheckEntry("generator_bundle", SKIPPED, "no bundle E given", gating=False)
    E = _irreducibles(spec.variety, scenario.E_generators)
    B0 = _irreducibles(spec.variety, spec.blocks[0])
    if E is None or B0 is None:
        return CheckEntry("generator_bundle", FAIL, "E and B_0 must be sums of irreducible summands",
                          witness={"E": [str(g) for g in scenario.E_generators]})
    for e in E:
        c = _difference(spec.variety, e, B0[0])
        if c is None:
            continue
        shifted = sorted((twist_irreducible(spec.variety, x, c.coeffs) for x in E), key=IrreducibleBundle.sort_key)
        if shifted == sorted(B0, key=IrreducibleBundle.sort_key):
            zero = all(x == 0 for x in c.coeffs)
            return CheckEntry(
                "generator_bundle",
                PASS,
                "the summands of E generate B_0" + ("" if zero else f" after twisting by {c}"),
                data={"twist": str(c)},
            )
    return CheckEntry(
        "generator_bundle", FAIL, "the summands of E do not match the generators of B_0 up to a twist",
        witness={"E": [str(g) for g in scenario.E_generators], "B_0": [str(g) for g in spec.blocks[0]]},
    )


def _base_pullback_entry(scenario: ResolutionScenario) -> CheckEntry:
    spec = scenario.spec
    trivial = normalize(structure_sheaf(spec.variety), spec.variety)
    has_O = any(normalize(g, spec.variety) == trivial for g in spec.blocks[0])
    if spec.is_relative:
        detail = "O is a generator of B_0 and blocks are generated over the base, so p^* of the base lies in B_0"
    else:
        detail = "O is a generator of B_0, so the pullback from the point lies in B_0"
    return CheckEntry(
        "base_pullback",
        PASS if has_O else FAIL,
        detail,
        witness=None if has_O else {"B_0": [str(g) for g in spec.blocks[0]]},
        provenance="derived",
    )


def _tilting_report(scenario: ResolutionScenario) -> CheckReport:
    spec = scenario.spec
    if not scenario.E_generators and scenario.tilting_bundle is None:
        r = CheckReport()
        r.add(CheckEntry("tilting", SKIPPED, "no bundle E given", gating=False))
        return r
    variety = scenario.tilting_variety or spec.variety
    F = scenario.tilting_bundle if scenario.tilting_bundle is not None else direct_sum(*scenario.E_generators)
    grading = scenario.grading or LineTwist(spec.L)
    try:
        return tilting_check(variety, F, grading)
    except UnboundedCheckError as exc:
        r = CheckReport()
        r.add(CheckEntry("tilting", FAIL, "no finite bound", witness={"error": str(exc)}))
        return r


def run_group(name: str, scenario: ResolutionScenario) -> CheckReport:
    spec = scenario.spec
    if name == "exceptional":
        return check_exceptional_over_base(spec)
    if name == "semiorthogonality":
        return check_semiorthogonality(spec)
    if name == "strictness":
        return check_chain_and_strictness(spec)
    if name == "k_rank":
        note = dict(scenario.params).get("k_rank_note", "")
        return k_rank_accounting(spec, note)
    if name == "base_pullback":
        r = CheckReport()
        r.add(_base_pullback_entry(scenario))
        return r
    if name == "generator_bundle":
        r = CheckReport()
        r.add(_generator_bundle_entry(scenario))
        return r
    if name == "tilting":
        return _tilting_report(scenario)
    if name == "crepancy":
        return crepancy_check(scenario)
    if name == "pfaffian_lattice":
        if scenario.pfaffian is None:
            return CheckReport()
        return pfaffian_lattice_check(scenario.pfaffian.n, scenario.pfaffian)
    if name == "serre":
        return serre_twist_report(scenario, is_rectangular(spec))
    raise KeyError(name)


def _assumption_entries(scenario: ResolutionScenario, report: CheckReport) -> List[CheckEntry]:
    out = []
    exceptional_ok = all(report.status_of(n) == PASS for n in ("exceptional_objects", "semiorthogonality"))
    for a in scenario.assumptions:
        status, provenance = a.status, a.provenance
        if a.name == "admissibility" and status == "derived" and not exceptional_ok:
            status = "unchecked"
            provenance = "not derived: the exceptional or semiorthogonality check failed"
        if status == "derived":
            out.append(CheckEntry(f"assumption:{a.name}", PASS, "derived", provenance=provenance, gating=False))
        else:
            out.append(CheckEntry(f"assumption:{a.name}", ASSUMED, status, provenance=provenance, gating=False))
    return out


def verdicts(scenario: ResolutionScenario, report: CheckReport) -> Dict[str, str]:
    core_failed = any(e.status == FAIL for e in report if e.name in _CATEGORICAL)
    unchecked = any(e.detail == "unchecked" for e in report if e.name.startswith("assumption:"))
    if core_failed:
        categorical = "no"
    else:
        categorical = "conditional" if unchecked else "yes"
    tilt = report.status_of("tilting")
    gen = report.status_of("generator_bundle")
    if categorical == "no" or tilt != PASS or gen != PASS:
        nc = "no"
    else:
        nc = categorical
    crepant = categorical != "no" and bool(report.data.get("crepant"))
    return {
        "categorical resolution": categorical,
        "noncommutative": nc,
        "crepant": "yes" if crepant else "no",
    }


def resolution_report(scenario: ResolutionScenario, jobs: int = 1) -> CheckReport:
    """Run every check group; entries come out in a fixed order regardless of ``jobs``."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run_group, GROUPS, [scenario] * len(GROUPS)))
    else:
        parts = [run_group(g, scenario) for g in GROUPS]
    report = CheckReport()
    for part in parts:
        report.extend(part)
    for entry in _assumption_entries(scenario, report):
        report.add(entry)
    report.add(CheckEntry(
        "linearity_over_Y",
        PASS if report.status_of("base_pullback") == PASS else SKIPPED,
        "blocks are closed under pullbacks from the base, so the resolving subcategory is linear over Y",
        provenance="derived",
        gating=False,
    ))
    report.data["verdicts"] = verdicts(scenario, report)
    return report
