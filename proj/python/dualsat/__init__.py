"""Python access to the dual multibeam satellite simulator core."""

from ._dualsat import (
    CSV_HEADER,
    ConfigError,
    NumericalError,
    RankDeficientError,
    allocate_powers,
    find_crossing,
    jain_index,
    link_audit,
    patterns,
    power_efficiency,
    run_sweep,
    siua_allocate,
    spectral_efficiency,
    sum_capacity_bound,
    sus_select,
    zf_directions,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "NumericalError",
    "RankDeficientError",
    "allocate_powers",
    "find_crossing",
    "jain_index",
    "link_audit",
    "patterns",
    "power_efficiency",
    "run_sweep",
    "siua_allocate",
    "spectral_efficiency",
    "sum_capacity_bound",
    "sus_select",
    "zf_directions",
]
