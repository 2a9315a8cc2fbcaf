//! Hodge numbers of smooth hypersurfaces, the adjoint Hodge spectrum, the
//! piecewise-linear `T` function, Eulerian statistics and the scan for the
//! dimension from which both Hodge-spread conditions hold.

mod conditions;
mod eulerian;
mod spectrum;

pub use conditions::{
    check_conditions, check_conditions_with, moduli_dim, scan_n0, scan_row, ConditionReport,
    ModuliDimension, ScanRow, ScanSummary,
};
pub use eulerian::{beta0_bound_check, eulerian, is_log_concave, EulerianTable, MAX_EULERIAN_N};
pub use spectrum::{
    adjoint_spectrum, hypersurface_hodge_numbers, HodgeEvaluator, HodgeSpectrum, SpectrumKind,
};
