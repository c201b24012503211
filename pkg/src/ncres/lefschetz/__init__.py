"""Lefschetz decompositions, tilting, crepancy and the aggregate resolution report."""

from .checks import (
    check_chain_and_strictness,
    check_exceptional_over_base,
    check_semiorthogonality,
    collection_order,
    compute_m_r,
    ext_vanishing,
    is_rectangular,
    k_rank_accounting,
)
from .crepancy import (
    crepancy_check,
    discrepancy,
    gorenstein_index,
    pfaffian_lattice_check,
    pfaffian_serre_dimension_check,
    serre_twist_report,
)
from .report import GROUPS, resolution_report, run_group, verdicts
from .tilting import (
    LineTwist,
    PlethysmTwist,
    UnboundedCheckError,
    graded_algebra_dims,
    graded_piece,
    tilting_bound,
    tilting_check,
)
from .types import (
    ASSUMED,
    FAIL,
    PASS,
    SKIPPED,
    Assumption,
    CheckEntry,
    CheckReport,
    LefschetzSpec,
    PfaffianLattice,
    ResolutionScenario,
)

__all__ = [
    "check_chain_and_strictness", "check_exceptional_over_base", "check_semiorthogonality",
    "collection_order", "compute_m_r", "ext_vanishing", "is_rectangular", "k_rank_accounting",
    "crepancy_check", "discrepancy", "gorenstein_index", "pfaffian_lattice_check",
    "pfaffian_serre_dimension_check", "serre_twist_report",
    "GROUPS", "resolution_report", "run_group", "verdicts",
    "LineTwist", "PlethysmTwist", "UnboundedCheckError", "graded_algebra_dims", "graded_piece",
    "tilting_bound", "tilting_check",
    "ASSUMED", "FAIL", "PASS", "SKIPPED", "Assumption", "CheckEntry", "CheckReport",
    "LefschetzSpec", "PfaffianLattice", "ResolutionScenario",
]
