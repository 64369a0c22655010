"""Python bindings for the gbd tiling and groupoid toolkit."""

from ._gbd import (
    Chain,
    ExhaustedError,
    Group,
    SizeCapExceeded,
    ValidationError,
    af_chain_report,
    build_tile,
    certificate,
    folner_defect,
    odometer_orbit,
    refine,
    run_cli,
    s_boundary,
    solve_invariant_measure,
    verify_tiling,
)

__all__ = [
    "Chain",
    "ExhaustedError",
    "Group",
    "SizeCapExceeded",
    "ValidationError",
    "af_chain_report",
    "build_tile",
    "certificate",
    "folner_defect",
    "odometer_orbit",
    "refine",
    "run_cli",
    "s_boundary",
    "solve_invariant_measure",
    "verify_tiling",
]
