"""Painleve V monodromy data, asymptotic families and direct monodromy checks."""

from ._pvrh import (
    Pair,
    PvrhError,
    build_trunc_family,
    char_coords,
    classify,
    continuation,
    elliptic_on_sheet,
    evaluate,
    formal_series,
    fricke_residual,
    gamma,
    gauge,
    jacobi_sn,
    monodromy_shift,
    normalize,
    orbit,
    pair_distance,
    random_pair,
    schema_version,
    sn_derivative,
    solve_boutroux,
    solve_rh,
    stokes,
    stokes_check,
    stokes_hat,
    theta_conditions,
    validate,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
