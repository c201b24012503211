"""Data model for Lefschetz decompositions, resolution scenarios and check reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..varieties import FlagVariety, LineBundleClass, ProductVariety, normalize

__all__ = [
    "PASS",
    "FAIL",
    "ASSUMED",
    "SKIPPED",
    "CheckEntry",
    "CheckReport",
    "LefschetzSpec",
    "Assumption",
    "PfaffianLattice",
    "ResolutionScenario",
]

PASS, FAIL, ASSUMED, SKIPPED = "pass", "fail", "assumed", "skipped"


@dataclass
class CheckEntry:
    name: str
    status: str
    detail: str = ""
    witness: Optional[Dict[str, Any]] = None
    provenance: Optional[str] = None
    data: Dict[str, Any] = field(default_factory=dict)
    gating: bool = True

    def __post_init__(self):
        if self.status not in (PASS, FAIL, ASSUMED, SKIPPED):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"failed check {self.name!r} needs a witness")
        if self.status == ASSUMED and not self.provenance:
            raise ValueError(f"assumed check {self.name!r} needs a provenance")

    def as_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.provenance:
            out["provenance"] = self.provenance
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.data)
        return out


@dataclass
class CheckReport:
    entries: List[CheckEntry] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def add(self, *args, **kwargs) -> CheckEntry:
        entry = args[0] if args and isinstance(args[0], CheckEntry) else CheckEntry(*args, **kwargs)
        self.entries.append(entry)
        return entry

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.entries.extend(other.entries)
        self.data.update(other.data)
        return self

    @property
    def passed(self) -> bool:
        """No gating entry failed (assumed and skipped entries do not count)."""
        return all(e.status != FAIL for e in self.entries if e.gating)

    @property
    def failures(self) -> List[CheckEntry]:
        return [e for e in self.entries if e.status == FAIL]

    def status_of(self, name: str) -> Optional[str]:
        for e in self.entries:
            if e.name == name:
                return e.status
        return None

    def get(self, name: str) -> Optional[CheckEntry]:
        for e in self.entries:
            if e.name == name:
                return e
        return None

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class LefschetzSpec:
    """Blocks ``B_0 ⊇ B_1 ⊇ ... ⊇ B_{m-1}`` of generators, graded by the line bundle ``L``.

    ``orientation == "dual"`` means ``<B_{m-1}(1-m), ..., B_1(-1), B_0>``;
    ``"straight"`` means ``<B_0, B_1(1), ..., B_{m-1}(m-1)>``.  With
    ``relative_step`` set, every Hom is computed relative to the forgetful map
    of the single flag factor that drops that step (0-based).
    """

    variety: ProductVariety
    L: LineBundleClass
    blocks: Tuple[Tuple[Any, ...], ...]
    orientation: str = "dual"
    relative_step: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        if not self.blocks:
            raise ValueError("a Lefschetz decomposition needs at least one block")
        if self.orientation not in ("dual", "straight"):
            raise ValueError(f"orientation must be 'dual' or 'straight', got {self.orientation!r}")
        if len(self.L.coeffs) != self.variety.picard_rank:
            raise ValueError("line bundle class has the wrong length")
        if self.relative_step is not None:
            if len(self.variety.factors) != 1:
                raise ValueError("relative mode needs a single flag factor")
            self.variety.factors[0].drop(self.relative_step)
        for block in self.blocks:
            for g in block:
                normalize(g, self.variety)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def base(self) -> Optional[FlagVariety]:
        if self.relative_step is None:
            return None
        return self.variety.factors[0].drop(self.relative_step)

    @property
    def is_relative(self) -> bool:
        return self.relative_step is not None


@dataclass(frozen=True)
class Assumption:
    name: str
    status: str  # "cited", "derived" or "unchecked"
    provenance: str


@dataclass(frozen=True)
class PfaffianLattice:
    """Divisor classes on the resolution of Pf(4, n), in the basis (H_G, H_Y).

    ``H_G`` is the Plücker class of Gr(n-4, W) and ``H_Y`` the hyperplane class
    of ``P(wedge^2 W^*)``.
    """

    n: int
    exceptional: Tuple[int, int]
    K_resolution: Tuple[int, int]
    K_divisor: Tuple[int, int]
    K_Y_coefficient: int

    @classmethod
    def cited(cls, n: int) -> "PfaffianLattice":
        return cls(
            n=n,
            exceptional=(-1, 2),
            K_resolution=(-(n - 3), -6),
            K_divisor=(-(n - 2), -4),
            K_Y_coefficient=-2 * n,
        )


@dataclass(frozen=True)
class ResolutionScenario:
    """Everything needed to run the hypothesis checklist for one resolution.

    ``kind`` is ``"cone"`` (Y the affine cone over X w.r.t. L; the exceptional
    divisor is X), ``"pfaffian"`` or ``"custom"`` (treated as a cone when not
    relative).  ``grading`` is the twist family used for the tilting check:
    ``None`` means powers of ``spec.L`` on ``spec.variety``.
    """

    name: str
    kind: str
    spec: Any  # LefschetzSpec
    E_generators: Tuple[Any, ...] = ()
    assumptions: Tuple[Assumption, ...] = ()
    tilting_variety: Optional[ProductVariety] = None
    tilting_bundle: Any = None
    grading: Any = None
    pfaffian: Optional[PfaffianLattice] = None
    notes: Tuple[str, ...] = ()
    params: Tuple[Tuple[str, Any], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "E_generators", tuple(self.E_generators))
        object.__setattr__(self, "assumptions", tuple(self.assumptions))
        for a in self.assumptions:
            if not a.provenance:
                raise ValueError(f"assumption {a.name!r} needs a provenance string")
