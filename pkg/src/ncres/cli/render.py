"""Deterministic report documents and their text / JSON renderings."""

from __future__ import annotations

import json
from typing import Any, Dict

from ..bbw import CohomologyTable
from ..lefschetz import CheckReport, ResolutionScenario

__all__ = ["scenario_document", "cohomology_document", "render"]


def _str(x) -> str:
    return str(x)


def scenario_echo(scenario: ResolutionScenario) -> Dict[str, Any]:
    spec = scenario.spec
    doc: Dict[str, Any] = {
        "name": scenario.name,
        "kind": scenario.kind,
        "variety": str(spec.variety),
        "line_bundle": str(spec.L),
        "orientation": spec.orientation,
    }
    if spec.is_relative:
        doc["relative_base"] = {"base": str(spec.base), "dropped_step": spec.relative_step + 1}
    doc["m"] = spec.m
    doc["blocks"] = [[_str(g) for g in b] for b in spec.blocks]
    if scenario.E_generators:
        doc["bundle_E"] = [_str(g) for g in scenario.E_generators]
    if scenario.tilting_variety is not None:
        doc["tilting_variety"] = str(scenario.tilting_variety)
    if scenario.tilting_bundle is not None:
        doc["tilting_bundle"] = _str(scenario.tilting_bundle)
    if scenario.grading is not None:
        doc["grading"] = str(scenario.grading)
    if scenario.params:
        doc["params"] = {k: v for k, v in scenario.params}
    return doc


def scenario_document(scenario: ResolutionScenario, report: CheckReport) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"scenario": scenario_echo(scenario)}
    checks: Dict[str, Any] = {}
    for e in report:
        if e.name.startswith("assumption:"):
            continue
        checks[e.name] = e.as_dict()
    doc["checks"] = checks
    if "bound_T" in report.data:
        doc["tilting"] = {"bound_T": report.data["bound_T"], "thresholds": report.data.get("thresholds", {})}
    if "serre_functor" in report.data:
        doc["serre_functor"] = report.data["serre_functor"]
    if "pfaffian_constants" in report.data:
        doc["constants"] = {k: {"value": v, "origin": "cited"} for k, v in report.data["pfaffian_constants"].items()}
    assumptions = {}
    for e in report:
        if e.name.startswith("assumption:"):
            assumptions[e.name.split(":", 1)[1]] = {"status": e.detail, "provenance": e.provenance}
    doc["assumptions"] = assumptions
    doc["verdicts"] = report.data["verdicts"]
    doc["result"] = "pass" if report.passed else "fail"
    return doc


def _weights(ws) -> str:
    return " x ".join("(" + ",".join(map(str, w)) + ")" for w in ws)


def cohomology_document(variety, label: str, table: CohomologyTable, key: str = "bundle") -> Dict[str, Any]:
    doc: Dict[str, Any] = {"variety": str(variety), key: label}
    if table.is_zero:
        doc["cohomology"] = "vanishes"
        return doc
    coh = {}
    for d in table.degrees():
        coh[f"H^{d}"] = {
            "dim": table.dim(d),
            "weights": [{"weight": _weights(ws), "multiplicity": c} for ws, c in table.entries[d].items()],
        }
    doc["cohomology"] = coh
    return doc


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _text(obj, indent: int, lines):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                _text(v, indent + 1, lines)
            elif isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}: " + ("{}" if isinstance(v, dict) else "[]"))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict) and v:
                sub = []
                _text(v, indent + 1, sub)
                first = sub[0].lstrip()
                lines.append(f"{pad}- {first}")
                lines.extend(sub[1:])
            elif isinstance(v, list):
                lines.append(f"{pad}- [" + ", ".join(_scalar(x) for x in v) + "]")
            else:
                lines.append(f"{pad}- {_scalar(v)}")


def render(doc: Dict[str, Any], fmt: str = "text") -> str:
    if fmt == "structured":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines: list = []
    _text(doc, 0, lines)
    return "\n".join(lines) + "\n"
