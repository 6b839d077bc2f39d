//! Shared helpers and independent oracles for the integration suites.
//!
//! Everything here deliberately avoids the library's candidate-enumeration
//! shortcuts: the modulus oracle clips segment-product cells with a generic
//! polygon clipper, and distances are re-derived from dense sampling where
//! that is the stated reference.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nck::function_space::{Family, SampledPath};
use nck::geometry::{PointSet, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Random point set with coordinates uniform in [-1, 1]^dim.
pub fn random_point_set(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> PointSet {
    let points = (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    PointSet::new(dim, points).unwrap()
}

/// Applies a random rigid motion (composed Givens rotations plus a
/// translation) to every point.
pub fn random_rigid_motion(rng: &mut ChaCha8Rng, ps: &PointSet) -> PointSet {
    let dim = ps.dim;
    let mut points: Vec<Vector> = ps.points.clone();
    for i in 0..dim {
        for j in i + 1..dim {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (s, c) = theta.sin_cos();
            for p in &mut points {
                let (a, b) = (p[i], p[j]);
                p[i] = c * a - s * b;
                p[j] = s * a + c * b;
            }
        }
    }
    let shift: Vector = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
    for p in &mut points {
        for (x, s) in p.iter_mut().zip(&shift) {
            *x += s;
        }
    }
    PointSet::new(dim, points).unwrap()
}

/// Random PL path on [0, 1] whose interior knots are multiples of
/// `1 / lattice` (so a dense scan over that lattice hits every knot).
pub fn random_path_on_lattice(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_interior_knots: usize,
    lattice: usize,
) -> SampledPath {
    let mut ticks: Vec<usize> = vec![0, lattice];
    let interior = rng.gen_range(0..=max_interior_knots);
    while ticks.len() < interior + 2 {
        let t = rng.gen_range(1..lattice);
        if !ticks.contains(&t) {
            ticks.push(t);
        }
    }
    ticks.sort_unstable();
    let knots: Vec<f64> = ticks.iter().map(|&t| t as f64 / lattice as f64).collect();
    let values: Vec<Vector> = knots
        .iter()
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    SampledPath::from_knots(knots, dim, values).unwrap()
}

// ---------------------------------------------------------------------------
// modulus oracle: generic polygon clipping over segment-product cells
// ---------------------------------------------------------------------------

type Pt2 = (f64, f64);

/// Clips a convex polygon against the half-plane `keep(p) >= 0`
/// (Sutherland-Hodgman, one plane).
fn clip_halfplane(poly: &[Pt2], keep: impl Fn(Pt2) -> f64) -> Vec<Pt2> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (kp, kq) = (keep(p), keep(q));
        if kp >= 0.0 {
            out.push(p);
        }
        if (kp > 0.0 && kq < 0.0) || (kp < 0.0 && kq > 0.0) {
            let u = kp / (kp - kq);
            out.push((p.0 + u * (q.0 - p.0), p.1 + u * (q.1 - p.1)));
        }
    }
    out
}

/// Exact modulus of one member over one scale, via an independent route:
/// for every ordered segment pair, clip the product box against
/// `|x - y| <= delta` and evaluate at the polygon's vertices. The objective
/// is convex on each clipped cell, so vertex enumeration is exact.
pub fn modulus_oracle_clip(path: &SampledPath, delta: f64) -> f64 {
    let knots = path.grid().knots();
    let mut best = 0.0f64;
    for i in 0..knots.len() - 1 {
        for j in 0..knots.len() - 1 {
            let box_poly = vec![
                (knots[i], knots[j]),
                (knots[i + 1], knots[j]),
                (knots[i + 1], knots[j + 1]),
                (knots[i], knots[j + 1]),
            ];
            let clipped = clip_halfplane(&box_poly, |(x, y)| delta - (x - y));
            let clipped = clip_halfplane(&clipped, |(x, y)| delta - (y - x));
            for (x, y) in clipped {
                let vx = path.eval(x.clamp(path.a(), path.b())).unwrap();
                let vy = path.eval(y.clamp(path.a(), path.b())).unwrap();
                best = best.max(euclid(&vx, &vy));
            }
        }
    }
    best
}

/// Family modulus by the clip oracle.
pub fn family_modulus_oracle(fam: &Family, delta: f64) -> f64 {
    fam.members()
        .iter()
        .map(|m| modulus_oracle_clip(m, delta))
        .fold(0.0, f64::max)
}

/// Dense constraint-filtered pair scan (lower estimate): `samples_per_cell`
/// uniform (x, y) pairs per segment pair, constraint-filtered, plus the cell
/// corners that satisfy the constraint.
pub fn family_modulus_dense(fam: &Family, delta: f64, samples_per_cell: usize) -> f64 {
    let side = (samples_per_cell as f64).sqrt().ceil() as usize;
    let mut best = 0.0f64;
    for path in fam.members() {
        let knots = path.grid().knots();
        for i in 0..knots.len() - 1 {
            for j in 0..knots.len() - 1 {
                for a in 0..=side {
                    let x = knots[i] + (knots[i + 1] - knots[i]) * a as f64 / side as f64;
                    for b in 0..=side {
                        let y = knots[j] + (knots[j + 1] - knots[j]) * b as f64 / side as f64;
                        if (x - y).abs() <= delta {
                            let vx = path.eval(x).unwrap();
                            let vy = path.eval(y).unwrap();
                            best = best.max(euclid(&vx, &vy));
                        }
                    }
                }
            }
        }
    }
    best
}
