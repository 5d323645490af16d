"""Renormalized volumes of convex cocompact hyperbolic 3-manifolds."""

from ._core import (
    Config,
    ConfigError,
    FitError,
    TopologyError,
    ValidationError,
    expansion_fit,
    jensen_energy,
    load_config,
    normalize_area,
    parse_config,
    random_smooth_field,
    renvol_fuchsian,
    run,
    surface_invariants,
    volume_closed,
    volume_quadrature,
    wedge_volume_closed,
    wedge_volume_quadrature,
)

__all__ = [
    "Config",
    "ConfigError",
    "FitError",
    "TopologyError",
    "ValidationError",
    "expansion_fit",
    "jensen_energy",
    "load_config",
    "normalize_area",
    "parse_config",
    "random_smooth_field",
    "renvol_fuchsian",
    "run",
    "surface_invariants",
    "volume_closed",
    "volume_quadrature",
    "wedge_volume_closed",
    "wedge_volume_quadrature",
]
