"""Plain-text scenario and collection files.

A scenario file has ``[section]`` headers; ``#`` starts a comment::

    [variety]
    P2
    [line_bundle]
    O(3)
    [blocks]
    O; O(1); O(2)
    [orientation]
    dual
    [base]
    drop_step = 1
    [bundle_E]
    O; O(1); O(2)
    [assumptions]
    divisor_preimage = cited: blowup of the vertex

Each line of ``[blocks]`` is one block, its generators separated by ``;``.
A collection file has only ``[variety]`` and ``[collection]`` (one generator
per line, or several separated by ``;``).
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Tuple

from ..lefschetz import Assumption, LefschetzSpec, ResolutionScenario
from ..varieties import BundleSyntaxError, line_bundle_class_of, normalize, parse_bundle, parse_variety

__all__ = ["ScenarioFileError", "parse_sections", "load_scenario", "load_collection", "scenario_from_text"]

SCENARIO_SECTIONS = ("variety", "line_bundle", "blocks", "orientation", "base", "bundle_E", "assumptions")
ASSUMPTION_NAMES = ("divisor_preimage", "rational_singularities", "admissibility", "fullness")
ASSUMPTION_STATUSES = ("cited", "derived", "unchecked")

_DEFAULT_ASSUMPTIONS = {
    "divisor_preimage": ("unchecked", "preimage of the singular locus ideal equals the ideal of the exceptional divisor"),
    "rational_singularities": ("unchecked", "Y has rational singularities"),
    "admissibility": ("derived", "every block is generated by an exceptional collection, hence admissible"),
    "fullness": ("unchecked", "the decomposition generates the derived category (only the K_0 rank is checked)"),
}


class ScenarioFileError(ValueError):
    def __init__(self, message: str, line: int = 0, path: str = ""):
        where = f"{path}:{line}: " if line else (f"{path}: " if path else "")
        super().__init__(where + message)


Sections = Dict[str, List[Tuple[int, str]]]


def parse_sections(text: str, allowed, path: str = "") -> Sections:
    sections: Sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in allowed:
                raise ScenarioFileError(f"unknown section [{name}]", lineno, path)
            if name in sections:
                raise ScenarioFileError(f"duplicate section [{name}]", lineno, path)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise ScenarioFileError("content before the first section", lineno, path)
        sections[current].append((lineno, line))
    return sections


def _single(sections: Sections, name: str, path: str, required: bool = True):
    lines = sections.get(name)
    if not lines:
        if required:
            raise ScenarioFileError(f"missing section [{name}]", path=path)
        return None
    if len(lines) != 1:
        raise ScenarioFileError(f"[{name}] takes exactly one line", lines[1][0], path)
    return lines[0]


def _bundle(text: str, variety, lineno: int, path: str):
    try:
        return parse_bundle(text, variety)
    except (BundleSyntaxError, ValueError) as exc:
        raise ScenarioFileError(f"{exc}", lineno, path) from None


def _generators(lines, variety, path):
    out = []
    for lineno, line in lines:
        for part in line.split(";"):
            part = part.strip()
            if not part:
                raise ScenarioFileError("empty generator", lineno, path)
            e = _bundle(part, variety, lineno, path)
            try:
                normalize(e, variety)
            except ValueError as exc:
                raise ScenarioFileError(str(exc), lineno, path) from None
            out.append(e)
    return out


def _variety(sections: Sections, path: str):
    lineno, text = _single(sections, "variety", path)
    try:
        return parse_variety(text)
    except ValueError as exc:
        raise ScenarioFileError(str(exc), lineno, path) from None


def _key_values(lines, path: str):
    out = []
    for lineno, line in lines:
        if "=" not in line:
            raise ScenarioFileError("expected 'key = value'", lineno, path)
        k, v = (s.strip() for s in line.split("=", 1))
        out.append((lineno, k, v))
    return out


def scenario_from_text(text: str, name: str = "custom", path: str = "") -> ResolutionScenario:
    sections = parse_sections(text, SCENARIO_SECTIONS, path)
    X = _variety(sections, path)

    lineno, lb = _single(sections, "line_bundle", path)
    terms = normalize(_bundle(lb, X, lineno, path), X)
    cls = line_bundle_class_of(X, next(iter(terms))) if len(terms) == 1 else None
    if cls is None:
        raise ScenarioFileError(f"{lb!r} is not a line bundle", lineno, path)

    if not sections.get("blocks"):
        raise ScenarioFileError("missing section [blocks]", path=path)
    blocks = [_generators([(ln, line)], X, path) for ln, line in sections["blocks"]]

    orientation = "dual"
    o = _single(sections, "orientation", path, required=False)
    if o is not None:
        if o[1] not in ("dual", "straight"):
            raise ScenarioFileError(f"orientation must be 'dual' or 'straight', got {o[1]!r}", o[0], path)
        orientation = o[1]

    relative_step = None
    if "base" in sections:
        for ln, k, v in _key_values(sections["base"], path):
            if k != "drop_step":
                raise ScenarioFileError(f"unknown key {k!r} in [base]", ln, path)
            try:
                relative_step = int(v) - 1
            except ValueError:
                raise ScenarioFileError(f"drop_step must be an integer, got {v!r}", ln, path) from None
        if relative_step is None:
            raise ScenarioFileError("[base] needs drop_step", path=path)

    try:
        spec = LefschetzSpec(X, cls, blocks, orientation, relative_step)
    except (ValueError, IndexError) as exc:
        raise ScenarioFileError(str(exc), path=path) from None

    E = _generators(sections.get("bundle_E", []), X, path)

    assumptions = dict(_DEFAULT_ASSUMPTIONS)
    for ln, k, v in _key_values(sections.get("assumptions", []), path):
        if k not in ASSUMPTION_NAMES:
            raise ScenarioFileError(f"unknown assumption {k!r}", ln, path)
        status, _, prov = v.partition(":")
        status = status.strip()
        if status not in ASSUMPTION_STATUSES:
            raise ScenarioFileError(f"assumption status must be one of {', '.join(ASSUMPTION_STATUSES)}", ln, path)
        assumptions[k] = (status, prov.strip() or assumptions[k][1])

    return ResolutionScenario(
        name=name,
        kind="custom",
        spec=spec,
        E_generators=E,
        assumptions=tuple(Assumption(k, s, p) for k, (s, p) in assumptions.items()),
    )


def load_scenario(path) -> ResolutionScenario:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ScenarioFileError(f"cannot read scenario file: {exc.strerror}", path=str(p)) from None
    return scenario_from_text(text, name=p.stem, path=str(p))


def load_collection(path):
    """``(variety, generators)`` from a collection file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ScenarioFileError(f"cannot read collection file: {exc.strerror}", path=str(p)) from None
    sections = parse_sections(text, ("variety", "collection"), str(p))
    X = _variety(sections, str(p))
    if not sections.get("collection"):
        raise ScenarioFileError("missing section [collection]", path=str(p))
    return X, _generators(sections["collection"], X, str(p))
