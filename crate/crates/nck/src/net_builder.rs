//! Constructs certified finite epsilon-nets for PL families.
//!
//! The pipeline, per family member: partition [a, b] into overlapping
//! intervals of diameter < delta; compute the Chebyshev center of the
//! member's image over each interval; form the plateau interpolant (constant
//! on even segments, affine bridges on odd segments); snap its knot values
//! to an epsilon-dense lattice. The deduplicated quantized paths form the
//! net, and each member carries a certificate bounding its distance to its
//! own net element by `sqrt(N/(2N+2)) * alpha + epsilon`.
//!
//! The lattice is never enumerated: only tuples realized by members are
//! emitted, which leaves the upper-bound certificate unaffected (each member
//! is covered by its own quantized plateau path).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_space::{sup_distance, Family, Grid, SampledPath};
use crate::geometry::{chebyshev_ball_seeded, jung_factor, Vector};
use crate::moduli::modulus_omega;

/// Points `a = x_0 < ... < x_{2n+1} = b` inducing the overlapping intervals
/// `I_0 = [x_0, x_2)`, `I_k = (x_{2k-1}, x_{2k+2})`, `I_n = (x_{2n-1}, b]`.
/// Consecutive intervals overlap on `(x_{2k+1}, x_{2k+2})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    pub points: Vec<f64>,
}

impl Partition {
    /// Number of intervals minus one (intervals are I_0 ... I_n).
    pub fn n(&self) -> usize {
        (self.points.len() - 2) / 2
    }

    pub fn a(&self) -> f64 {
        self.points[0]
    }

    pub fn b(&self) -> f64 {
        *self.points.last().unwrap()
    }

    /// Closure endpoints of I_k. Chebyshev centers are computed over
    /// closures; suprema agree with the half-open intervals for continuous
    /// paths.
    pub fn interval_closure(&self, k: usize) -> (f64, f64) {
        let n = self.n();
        if k == 0 {
            (self.points[0], self.points[2])
        } else if k < n {
            (self.points[2 * k - 1], self.points[2 * k + 2])
        } else {
            (self.points[2 * n - 1], self.points[2 * n + 1])
        }
    }

    pub fn max_interval_diameter(&self) -> f64 {
        (0..=self.n())
            .map(|k| {
                let (lo, hi) = self.interval_closure(k);
                hi - lo
            })
            .fold(0.0, f64::max)
    }
}

/// Uniform partition with the minimal admissible point count: segment
/// length h = (b-a)/(2n+1) with n minimal such that 3h < delta, so every
/// interval diameter is < delta.
pub fn build_partition(a: f64, b: f64, delta: f64) -> Result<Partition> {
    if a >= b || a.is_nan() || b.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "need a < b, got [{a}, {b}]"
        )));
    }
    crate::error::ensure_positive(delta, "delta")?;
    let q = 3.0 * (b - a) / delta;
    // smallest odd segment count >= q, at least 3; bump while 3h < delta
    // fails (strictness under rounding)
    let mut segments = (q.ceil() as usize).max(3);
    if segments.is_multiple_of(2) {
        segments += 1;
    }
    loop {
        let h = (b - a) / segments as f64;
        if 3.0 * h < delta {
            break;
        }
        segments += 2;
    }
    let h = (b - a) / segments as f64;
    let mut points: Vec<f64> = (0..segments).map(|i| a + i as f64 * h).collect();
    points.push(b);
    let part = Partition { points };
    debug_assert!(part.max_interval_diameter() < delta);
    Ok(part)
}

/// Chebyshev centers and radii of one member's images over the partition
/// intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevProfile {
    pub centers: Vec<Vector>,
    pub radii: Vec<f64>,
}

/// Computes the Chebyshev ball of `f(I_k)` for every interval of `part`.
pub fn chebyshev_profile(
    f: &SampledPath,
    part: &Partition,
    tol: f64,
    seed: u64,
) -> Result<ChebyshevProfile> {
    if f.a() > part.a() || f.b() < part.b() {
        return Err(Error::OutOfDomain {
            x: part.a(),
            a: f.a(),
            b: f.b(),
        });
    }
    let n = part.n();
    let mut centers = Vec::with_capacity(n + 1);
    let mut radii = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (lo, hi) = part.interval_closure(k);
        let image = f.image_over_interval(lo, hi)?;
        let ball = chebyshev_ball_seeded(&image, tol, seed.wrapping_add(k as u64))?;
        centers.push(ball.center);
        radii.push(ball.radius);
    }
    Ok(ChebyshevProfile { centers, radii })
}

/// The plateau path: value `c_k` at knots `x_{2k}` and `x_{2k+1}`, linear
/// in between, so it is constant on even segments and bridges on odd ones.
pub fn plateau_interpolant(profile: &ChebyshevProfile, part: &Partition) -> Result<SampledPath> {
    let n = part.n();
    if profile.centers.len() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "profile has {} centers for a partition with {} intervals",
            profile.centers.len(),
            n + 1
        )));
    }
    let dim = profile.centers[0].len();
    let values: Vec<Vector> = (0..part.points.len())
        .map(|j| profile.centers[j / 2].clone())
        .collect();
    SampledPath::from_knots(part.points.clone(), dim, values)
}

/// Scaled integer lattice that is epsilon-dense in the ball |z| <= bound:
/// spacing 2 epsilon / sqrt(N) makes the half cell diagonal exactly
/// epsilon. Materialized lazily (rounding only), never enumerated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub spacing: f64,
    pub bound: f64,
    pub dim: usize,
}

impl Lattice {
    /// Lattice with per-point rounding error at most `epsilon`, covering
    /// the ball of radius `bound`.
    pub fn covering(bound: f64, epsilon: f64, dim: usize) -> Result<Lattice> {
        crate::error::ensure_positive(epsilon, "epsilon")?;
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(Lattice {
            spacing: 2.0 * epsilon / (dim as f64).sqrt(),
            bound,
            dim,
        })
    }

    /// Nearest lattice multiple, ties toward negative infinity.
    fn snap(&self, v: f64) -> f64 {
        let k = (v / self.spacing - 0.5).ceil();
        let q = k * self.spacing;
        // normalize -0.0 so serialized output is stable
        if q == 0.0 {
            0.0
        } else {
            q
        }
    }
}

/// Rounds every knot value of `ftilde` coordinatewise to the lattice. The
/// per-knot error is at most half the cell diagonal, i.e. epsilon, and the
/// sup-norm error inherits that bound segment by segment.
pub fn quantize_path(ftilde: &SampledPath, lat: &Lattice) -> Result<SampledPath> {
    let reach = lat.bound + 1e-9 * (1.0 + lat.bound);
    for v in ftilde.values() {
        let n = crate::geometry::norm(v);
        if n > reach {
            return Err(Error::QuantizationRange {
                value: n,
                bound: lat.bound,
            });
        }
    }
    let values: Vec<Vector> = ftilde
        .values()
        .iter()
        .map(|v| v.iter().map(|&x| lat.snap(x)).collect())
        .collect();
    SampledPath::new(ftilde.grid_arc(), ftilde.dim(), values)
}

/// Per-member construction record: the realized plateau and quantization
/// errors against the certified bound `sqrt(N/(2N+2)) * alpha + epsilon`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetCertificate {
    pub member_id: String,
    /// sup distance from the member to its plateau interpolant
    pub plateau_err: f64,
    /// sup distance from the plateau interpolant to its quantized path
    pub quant_err: f64,
    /// sup distance from the member to its quantized path
    pub total: f64,
    /// sqrt(N/(2N+2)) * alpha + epsilon
    pub bound: f64,
}

/// Builds the certified net for `fam` at scale `delta`.
///
/// Preconditions (checked): `omega_fam(delta) <= alpha` and
/// `alpha <= 2 * uniform_bound(fam)`, both within `tol`. On success the net
/// is a finite family on the partition grid and every certificate satisfies
/// `total <= sqrt(N/(2N+2)) * alpha + epsilon + tol`.
pub fn build_net(
    fam: &Family,
    delta: f64,
    alpha: f64,
    epsilon: f64,
    seed: u64,
    tol: f64,
) -> Result<(Family, Vec<NetCertificate>)> {
    crate::error::ensure_positive(tol, "tolerance")?;
    if alpha < 0.0 || alpha.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    let omega = modulus_omega(fam, delta)?;
    if omega > alpha + tol {
        return Err(Error::AlphaTooSmall { omega, alpha });
    }
    let m_bound = fam.uniform_bound();
    if alpha > 2.0 * m_bound + tol {
        return Err(Error::InvalidArgument(format!(
            "alpha {} exceeds twice the uniform bound {}",
            alpha, m_bound
        )));
    }
    let part = build_partition(fam.a(), fam.b(), delta)?;
    let lattice = Lattice::covering(3.0 * m_bound, epsilon, fam.dim())?;
    let bound = jung_factor(fam.dim()) * alpha + epsilon;

    let mut certificates = Vec::with_capacity(fam.len());
    let mut net_values: Vec<Vec<Vector>> = Vec::new();
    let mut net_grid: Option<Arc<Grid>> = None;
    for (idx, (id, f)) in fam.ids().iter().zip(fam.members()).enumerate() {
        let profile = chebyshev_profile(f, &part, tol, seed.wrapping_add(idx as u64))?;
        let ftilde = plateau_interpolant(&profile, &part)?;
        let quantized = quantize_path(&ftilde, &lattice)?;
        let plateau_err = sup_distance(&ftilde, f)?;
        let quant_err = sup_distance(&quantized, &ftilde)?;
        let total = sup_distance(&quantized, f)?;
        certificates.push(NetCertificate {
            member_id: id.clone(),
            plateau_err,
            quant_err,
            total,
            bound,
        });
        if net_grid.is_none() {
            net_grid = Some(quantized.grid_arc());
        }
        let vals = quantized.values().to_vec();
        if !net_values.contains(&vals) {
            net_values.push(vals);
        }
    }
    let net_grid = net_grid.expect("family is nonempty");
    let net_paths = net_values
        .into_iter()
        .map(|vals| SampledPath::new(Arc::clone(&net_grid), fam.dim(), vals))
        .collect::<Result<Vec<_>>>()?;
    let net_ids = (0..net_paths.len())
        .map(|i| format!("net{i:03}"))
        .collect();
    let net = Family::from_paths(net_ids, net_paths)?;
    Ok((net, certificates))
}
