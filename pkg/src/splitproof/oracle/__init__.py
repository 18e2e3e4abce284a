"""Finite-model oracle: set-level shadows of the splitting results and the group computations."""

from .endo import (
    FinEndo,
    FinRetraction,
    OracleError,
    enumerate_idempotents,
    enumerate_retractions,
    find_isomorphism,
    seq_limit_size,
    split_via_fix,
)
from .groups import (
    FinGroup,
    aut_two_group_of_BG,
    center,
    cyclic_group,
    symmetric_group,
    trivial_group,
    two_center_size,
)
from .suite import OracleConfig, OracleReport, run_suite
from .twosets import TwoSet, star_laws, star_product

__all__ = [
    "FinEndo", "FinRetraction", "FinGroup", "TwoSet", "OracleError", "OracleConfig", "OracleReport",
    "enumerate_idempotents", "split_via_fix", "enumerate_retractions", "find_isomorphism",
    "seq_limit_size", "symmetric_group", "cyclic_group", "trivial_group", "center", "star_product",
    "star_laws", "aut_two_group_of_BG", "two_center_size", "run_suite",
]
