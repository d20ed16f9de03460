//! Orbits, critical points, basin grids and the numerical evidence built
//! on them.

mod basin;
mod critical;
mod evidence;
mod families;
mod orbit;

pub use basin::{
    basin_grid, basin_grid_with_threads, immediate_basin, BasinGrid, Window, THREADS_ENV,
};
pub use critical::{
    critical_points, critical_report, internal_disk_radius, CriticalEntry, CriticalPoints,
    CriticalReport,
};
pub use evidence::{
    disconnection_evidence, real_sign_profile, symmetry_check, DisconnectionReport, Evidence,
    OrbitEntry, SignProfile, SYMMETRY_TOL,
};
pub use families::{f_map, family_map, family_source, Family};
pub use orbit::{
    iterate_orbit, Attractors, Fate, OrbitResult, CONVERGENCE_TOL, DEFAULT_CAP, PROPERTY_CAP,
};
