"""Wavelength planning for bypass and in-network computing optical networks."""

from ._occin import (
    Instance,
    Solution,
    Topology,
    __version__,
    export_lp,
    generate,
    load_instance,
    load_topology,
    lower_bound,
    solve,
    solve_via_ilp,
    spearman,
    sweep,
    validate,
)

CALIBRATION_SEED = 1408

__all__ = [
    "CALIBRATION_SEED",
    "Instance",
    "Solution",
    "Topology",
    "__version__",
    "export_lp",
    "generate",
    "load_instance",
    "load_topology",
    "lower_bound",
    "solve",
    "solve_via_ilp",
    "spearman",
    "sweep",
    "validate",
]
