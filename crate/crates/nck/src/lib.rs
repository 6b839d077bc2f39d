//! nck - noncompactness kit.
//!
//! Quantitative compactness diagnostics for families of continuous
//! piecewise-linear paths on a compact interval:
//!
//! * [`geometry`] - diameter, Chebyshev (minimum enclosing) balls, and the
//!   Jung diameter/radius relation for finite point sets in R^N.
//! * [`function_space`] - grids, sampled piecewise-linear paths, exact
//!   sup-norm distances, and families on a shared grid.
//! * [`moduli`] - modulus-of-continuity profiles, net covering radii, and
//!   the two-sided bracket linking them.
//! * [`net_builder`] - construction of certified finite epsilon-nets from
//!   overlapping-interval Chebyshev-center profiles and lattice
//!   quantization.
//! * [`generators`] - canonical test families (ramps, sine sweeps, simplex
//!   oscillators).
//! * [`formats`] - CSV/JSON readers and writers for the above.

pub mod cli;
pub mod error;
pub mod formats;
pub mod function_space;
pub mod generators;
pub mod geometry;
pub mod moduli;
pub mod net_builder;

pub use error::{Error, Result};
pub use function_space::{Family, Grid, SampledPath};
pub use geometry::{
    chebyshev_ball, chebyshev_ball_seeded, chebyshev_oracle, diameter, jung_factor, jung_report,
    regular_simplex, Ball, JungReport, PointSet, Vector, DEFAULT_TOL,
};
pub use moduli::{
    equicontinuity_transfer, modulus_profile, mu_uec_estimate, net_radius, theorem_bracket,
    Bracket, ModulusProfile, TransferReport,
};
pub use net_builder::{
    build_net, build_partition, chebyshev_profile, plateau_interpolant, quantize_path,
    ChebyshevProfile, Lattice, NetCertificate, Partition,
};
