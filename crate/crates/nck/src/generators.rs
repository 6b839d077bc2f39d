//! Canonical test families on [0, 1].
//!
//! Every generator places its feature points (ramp corners, oscillator
//! turning points) on the emitted grid, so the sampled PL family reproduces
//! the intended paths exactly and closed-form modulus values hold on the
//! samples.

use crate::error::{Error, Result};
use crate::function_space::{merge_knots, Family, Grid};
use crate::geometry::{regular_simplex, Vector};

/// Which canonical family to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Ramps from 0 to 1 starting at x = 1/2 with widths 2^-k, k = 1..K.
    /// Modulus: omega(delta) = min(delta * 2^K, 1).
    Ramp,
    /// sin(t x) with frequencies t = 2^j, j = 1..K.
    SineSweep,
    /// Paths cycling through the vertices of a regular side-1 simplex in
    /// R^N with periods 8 * mesh * 2^(K-k), k = 1..K.
    SimplexOsc,
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ramp" => Ok(FamilyKind::Ramp),
            "sine_sweep" => Ok(FamilyKind::SineSweep),
            "simplex_osc" => Ok(FamilyKind::SimplexOsc),
            other => Err(Error::InvalidArgument(format!(
                "unknown family kind {other:?} (expected ramp, sine_sweep, or simplex_osc)"
            ))),
        }
    }
}

/// Generates a family of `k_max` members on a grid of the requested mesh.
/// `dim` applies to `SimplexOsc` only; the other kinds are scalar-valued.
pub fn gen_family(kind: FamilyKind, k_max: u32, mesh: f64, dim: usize) -> Result<Family> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be >= 1".into()));
    }
    if !(mesh > 0.0 && mesh < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "mesh must lie in (0, 1), got {mesh}"
        )));
    }
    match kind {
        FamilyKind::Ramp => {
            require_scalar(dim)?;
            gen_ramp(k_max, mesh)
        }
        FamilyKind::SineSweep => {
            require_scalar(dim)?;
            gen_sine_sweep(k_max, mesh)
        }
        FamilyKind::SimplexOsc => gen_simplex_osc(k_max, mesh, dim),
    }
}

fn require_scalar(dim: usize) -> Result<()> {
    if dim != 1 {
        return Err(Error::InvalidArgument(format!(
            "this family kind is scalar-valued; got dim {dim}"
        )));
    }
    Ok(())
}

fn uniform_knots(mesh: f64) -> Vec<f64> {
    let segments = (1.0 / mesh).ceil() as usize;
    let h = 1.0 / segments as f64;
    let mut knots: Vec<f64> = (0..segments).map(|i| i as f64 * h).collect();
    knots.push(1.0);
    knots
}

fn gen_ramp(k_max: u32, mesh: f64) -> Result<Family> {
    let h_min = 2.0f64.powi(-(k_max as i32));
    if mesh >= h_min {
        return Err(Error::MeshTooCoarse {
            mesh,
            feature: h_min,
        });
    }
    // grid = uniform knots plus every ramp corner, so sampling is exact
    let mut corners = vec![0.5];
    for k in 1..=k_max {
        corners.push(0.5 + 2.0f64.powi(-(k as i32)));
    }
    corners.sort_by(f64::total_cmp);
    let knots = merge_knots(&uniform_knots(mesh), &corners);
    let members = (1..=k_max)
        .map(|k| {
            let width = 2.0f64.powi(-(k as i32));
            let values: Vec<Vector> = knots
                .iter()
                .map(|&x| vec![((x - 0.5) / width).clamp(0.0, 1.0)])
                .collect();
            (format!("ramp{k:02}"), values)
        })
        .collect();
    Family::new(Grid::new(knots)?, 1, members)
}

fn gen_sine_sweep(k_max: u32, mesh: f64) -> Result<Family> {
    let feature = 2.0f64.powi(-(k_max as i32));
    if mesh >= feature {
        return Err(Error::MeshTooCoarse { mesh, feature });
    }
    let knots = uniform_knots(mesh);
    let members = (1..=k_max)
        .map(|j| {
            let t = 2.0f64.powi(j as i32);
            let values: Vec<Vector> = knots.iter().map(|&x| vec![(t * x).sin()]).collect();
            (format!("sine{j:02}"), values)
        })
        .collect();
    Family::new(Grid::new(knots)?, 1, members)
}

fn gen_simplex_osc(k_max: u32, mesh: f64, dim: usize) -> Result<Family> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let shortest_period = 8.0 * mesh;
    let longest_period = shortest_period * 2.0f64.powi(k_max as i32 - 1);
    if longest_period > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "longest period {longest_period} exceeds the interval length 1; \
             reduce k_max or the mesh"
        )));
    }
    let vertices = regular_simplex(dim, 1.0).points;
    let n_vertices = vertices.len();

    // corner times per member: multiples of period / (N+1)
    let corner_times: Vec<Vec<f64>> = (1..=k_max)
        .map(|k| {
            let period = shortest_period * 2.0f64.powi((k_max - k) as i32);
            let step = period / n_vertices as f64;
            let mut times = Vec::new();
            let mut j = 0u64;
            loop {
                let t = j as f64 * step;
                if t > 1.0 {
                    break;
                }
                times.push(t);
                j += 1;
            }
            times
        })
        .collect();

    let mut knots = uniform_knots(mesh);
    for times in &corner_times {
        knots = merge_knots(&knots, times);
    }

    let members = corner_times
        .iter()
        .enumerate()
        .map(|(idx, times)| {
            let period = shortest_period * 2.0f64.powi((k_max - 1 - idx as u32) as i32);
            let step = period / n_vertices as f64;
            let values: Vec<Vector> = knots
                .iter()
                .map(|&x| cycle_value(x, times, step, &vertices))
                .collect();
            (format!("osc{:02}", idx + 1), values)
        })
        .collect();
    Family::new(Grid::new(knots)?, dim, members)
}

/// Value of the vertex-cycling path at `x`: the exact vertex at corner
/// times, the segment interpolant in between (tracking the stored corner
/// times, so corner knots reproduce vertices bitwise).
fn cycle_value(x: f64, times: &[f64], step: f64, vertices: &[Vector]) -> Vector {
    let n_vertices = vertices.len();
    let idx = times.partition_point(|&t| t < x);
    if idx < times.len() && times[idx] == x {
        return vertices[idx % n_vertices].clone();
    }
    let j = idx - 1;
    let t0 = times[j];
    let t1 = if idx < times.len() {
        times[idx]
    } else {
        t0 + step // virtual corner beyond b for the trailing segment
    };
    let w = (x - t0) / (t1 - t0);
    let v0 = &vertices[j % n_vertices];
    let v1 = &vertices[(j + 1) % n_vertices];
    v0.iter()
        .zip(v1)
        .map(|(&a, &b)| (1.0 - w) * a + w * b)
        .collect()
}
