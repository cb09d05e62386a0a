"""Unidimensional reduction of the cubic-quintic condensate equation."""

from ._cqnp import (
    CollapseError,
    ConfigError,
    InvalidArgument,
    ground_state_1d,
    matched_g3,
    np_cubic,
    np_general,
    np_general_radical,
    np_poly,
    run,
    solve_width,
    weak_width,
    width_map,
    width_residual,
)

__all__ = [
    "CollapseError",
    "ConfigError",
    "InvalidArgument",
    "ground_state_1d",
    "matched_g3",
    "np_cubic",
    "np_general",
    "np_general_radical",
    "np_poly",
    "run",
    "solve_width",
    "weak_width",
    "width_map",
    "width_residual",
]
