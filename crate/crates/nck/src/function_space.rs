//! Continuous piecewise-linear paths [a,b] -> R^N sampled on a grid, and
//! finite families of such paths on a shared grid.
//!
//! A path is the PL interpolant of its knot values, so continuity is
//! structural and sup-norm computations are exact: on each common-refinement
//! segment the difference of two paths is affine, and the Euclidean norm of
//! an affine map is convex, hence maximized at segment endpoints.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{norm, PointSet, Vector};

/// Strictly increasing knots spanning a compact interval [a, b].
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    knots: Vec<f64>,
}

impl Grid {
    pub fn new(knots: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 knots, got {}",
                knots.len()
            )));
        }
        for (i, &k) in knots.iter().enumerate() {
            if !k.is_finite() {
                return Err(Error::NonFinite { value: k, index: i });
            }
        }
        for w in knots.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidGrid(format!(
                    "knots not strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Grid { knots })
    }

    /// Uniform grid with `segments` equal pieces; the last knot is set to
    /// `b` exactly.
    pub fn uniform(a: f64, b: f64, segments: usize) -> Result<Self> {
        if a >= b || a.is_nan() || b.is_nan() {
            return Err(Error::InvalidGrid(format!("need a < b, got [{a}, {b}]")));
        }
        if segments == 0 {
            return Err(Error::InvalidGrid("need at least 1 segment".into()));
        }
        let h = (b - a) / segments as f64;
        let mut knots: Vec<f64> = (0..segments).map(|i| a + i as f64 * h).collect();
        knots.push(b);
        Grid::new(knots)
    }

    pub fn a(&self) -> f64 {
        self.knots[0]
    }

    pub fn b(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest adjacent knot gap.
    pub fn mesh(&self) -> f64 {
        self.knots
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Merge of two grids over the same interval.
    pub fn union(lhs: &Grid, rhs: &Grid) -> Result<Grid> {
        if lhs.a() != rhs.a() || lhs.b() != rhs.b() {
            return Err(Error::InvalidGrid(format!(
                "interval mismatch: [{}, {}] vs [{}, {}]",
                lhs.a(),
                lhs.b(),
                rhs.a(),
                rhs.b()
            )));
        }
        Grid::new(merge_knots(&lhs.knots, &rhs.knots))
    }
}

/// Sorted dedup merge of two sorted knot lists.
pub(crate) fn merge_knots(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => {
                if x < y {
                    i += 1;
                    x
                } else if y < x {
                    j += 1;
                    y
                } else {
                    i += 1;
                    j += 1;
                    x
                }
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

/// A continuous PL path determined by one value per grid knot.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    grid: Arc<Grid>,
    dim: usize,
    values: Vec<Vector>,
}

impl SampledPath {
    pub fn new(grid: Arc<Grid>, dim: usize, values: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "value count {} != knot count {}",
                values.len(),
                grid.len()
            )));
        }
        for v in &values {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: v.len(),
                });
            }
            for (i, &x) in v.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFinite { value: x, index: i });
                }
            }
        }
        Ok(SampledPath { grid, dim, values })
    }

    /// Convenience constructor that owns a fresh grid.
    pub fn from_knots(knots: Vec<f64>, dim: usize, values: Vec<Vector>) -> Result<Self> {
        Self::new(Arc::new(Grid::new(knots)?), dim, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn grid_arc(&self) -> Arc<Grid> {
        Arc::clone(&self.grid)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Vector] {
        &self.values
    }

    pub fn a(&self) -> f64 {
        self.grid.a()
    }

    pub fn b(&self) -> f64 {
        self.grid.b()
    }

    /// Evaluates the PL interpolant. At a knot the stored value is returned
    /// exactly; between knots the convex-combination form
    /// `(beta - x)/(beta - alpha) * v_i + (x - alpha)/(beta - alpha) * v_j`
    /// is used.
    pub fn eval(&self, x: f64) -> Result<Vector> {
        let knots = self.grid.knots();
        if !(x >= self.a() && x <= self.b()) {
            return Err(Error::OutOfDomain {
                x,
                a: self.a(),
                b: self.b(),
            });
        }
        let idx = knots.partition_point(|&k| k < x);
        if idx < knots.len() && knots[idx] == x {
            return Ok(self.values[idx].clone());
        }
        let (lo, hi) = (idx - 1, idx);
        let (alpha, beta) = (knots[lo], knots[hi]);
        let w_lo = (beta - x) / (beta - alpha);
        let w_hi = (x - alpha) / (beta - alpha);
        Ok(self.values[lo]
            .iter()
            .zip(&self.values[hi])
            .map(|(&a, &b)| w_lo * a + w_hi * b)
            .collect())
    }

    /// The finite point set `{f(lo), f(hi)} U {f(k) : knots k in [lo, hi]}`
    /// with exact duplicates removed.
    ///
    /// For a PL path, any ball containing these points contains the whole
    /// continuous image of [lo, hi] (segments are convex combinations of the
    /// listed points), so downstream diameter/MEB computations on this set
    /// are exact for the continuous image.
    pub fn image_over_interval(&self, lo: f64, hi: f64) -> Result<PointSet> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        let mut pts = vec![self.eval(lo)?];
        let knots = self.grid.knots();
        let start = knots.partition_point(|&k| k < lo);
        let end = knots.partition_point(|&k| k <= hi);
        for i in start..end {
            pts.push(self.values[i].clone());
        }
        pts.push(self.eval(hi)?);
        let mut dedup: Vec<Vector> = Vec::with_capacity(pts.len());
        for p in pts {
            if !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        PointSet::new(self.dim, dedup)
    }

    /// Resamples onto `grid` by PL evaluation. Exact when `grid` refines the
    /// path's own grid.
    pub fn resampled(&self, grid: &Arc<Grid>) -> Result<SampledPath> {
        let values = grid
            .knots()
            .iter()
            .map(|&x| self.eval(x))
            .collect::<Result<Vec<_>>>()?;
        SampledPath::new(Arc::clone(grid), self.dim, values)
    }
}

/// Exact sup-norm distance between two PL paths on the same interval.
///
/// Evaluated over the union of both knot sets, where the difference is
/// segment-wise affine; grids may differ.
pub fn sup_distance(f: &SampledPath, g: &SampledPath) -> Result<f64> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            actual: g.dim,
        });
    }
    if f.a() != g.a() || f.b() != g.b() {
        return Err(Error::InvalidGrid(format!(
            "interval mismatch: [{}, {}] vs [{}, {}]",
            f.a(),
            f.b(),
            g.a(),
            g.b()
        )));
    }
    let mut best = 0.0f64;
    if f.grid.knots() == g.grid.knots() {
        for (vf, vg) in f.values.iter().zip(&g.values) {
            let d: f64 = vf
                .iter()
                .zip(vg)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            best = best.max(d);
        }
        return Ok(best);
    }
    for &x in &merge_knots(f.grid.knots(), g.grid.knots()) {
        let vf = f.eval(x)?;
        let vg = g.eval(x)?;
        let diff: Vector = vf.iter().zip(&vg).map(|(&a, &b)| a - b).collect();
        best = best.max(norm(&diff));
    }
    Ok(best)
}

/// A nonempty collection of PL paths on one shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    grid: Arc<Grid>,
    dim: usize,
    ids: Vec<String>,
    members: Vec<SampledPath>,
}

impl Family {
    pub fn new(grid: Grid, dim: usize, members: Vec<(String, Vec<Vector>)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("family must be nonempty".into()));
        }
        let grid = Arc::new(grid);
        let mut ids = Vec::with_capacity(members.len());
        let mut paths = Vec::with_capacity(members.len());
        for (id, values) in members {
            paths.push(SampledPath::new(Arc::clone(&grid), dim, values)?);
            ids.push(id);
        }
        Ok(Family {
            grid,
            dim,
            ids,
            members: paths,
        })
    }

    /// Wraps already-built paths, requiring them to share the grid by value.
    pub fn from_paths(ids: Vec<String>, members: Vec<SampledPath>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("family must be nonempty".into()));
        }
        if ids.len() != members.len() {
            return Err(Error::InvalidArgument(format!(
                "{} ids for {} members",
                ids.len(),
                members.len()
            )));
        }
        let grid = members[0].grid_arc();
        let dim = members[0].dim;
        for m in &members[1..] {
            if m.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: m.dim,
                });
            }
            if m.grid.knots() != grid.knots() {
                return Err(Error::InvalidGrid("members do not share a grid".into()));
            }
        }
        Ok(Family {
            grid,
            dim,
            ids,
            members,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn members(&self) -> &[SampledPath] {
        &self.members
    }

    pub fn a(&self) -> f64 {
        self.grid.a()
    }

    pub fn b(&self) -> f64 {
        self.grid.b()
    }

    /// The uniform bound M = max over members and knots of |f(knot)|.
    /// Exact for PL paths (the norm is convex on segments).
    pub fn uniform_bound(&self) -> f64 {
        self.members
            .iter()
            .flat_map(|m| m.values.iter())
            .map(|v| norm(v))
            .fold(0.0, f64::max)
    }

    /// Subfamily by member indices, preserving order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<Family> {
        let ids = indices
            .iter()
            .map(|&i| self.ids[i].clone())
            .collect::<Vec<_>>();
        let members = indices
            .iter()
            .map(|&i| self.members[i].clone())
            .collect::<Vec<_>>();
        Family::from_paths(ids, members)
    }

    /// Resamples every member onto `grid`.
    pub fn resampled(&self, grid: Grid) -> Result<Family> {
        let grid = Arc::new(grid);
        let members = self
            .members
            .iter()
            .map(|m| m.resampled(&grid))
            .collect::<Result<Vec<_>>>()?;
        Family::from_paths(self.ids.clone(), members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn path(knots: &[f64], values: &[&[f64]]) -> SampledPath {
        SampledPath::from_knots(
            knots.to_vec(),
            values[0].len(),
            values.iter().map(|v| v.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn eval_interpolates_linearly() {
        let f = path(&[0.0, 1.0], &[&[0.0], &[2.0]]);
        assert_eq!(f.eval(0.25).unwrap(), vec![0.5]);
    }

    #[test]
    fn eval_exact_at_knots() {
        let f = path(&[0.0, 0.3, 1.0], &[&[0.1], &[0.7], &[-0.2]]);
        assert_eq!(f.eval(0.3).unwrap(), vec![0.7]);
        assert_eq!(f.eval(0.0).unwrap(), vec![0.1]);
        assert_eq!(f.eval(1.0).unwrap(), vec![-0.2]);
    }

    #[test]
    fn eval_vector_valued() {
        let f = path(&[0.0, 1.0], &[&[0.0, 0.0], &[1.0, 1.0]]);
        assert_eq!(f.eval(0.5).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn eval_outside_domain_errors() {
        let f = path(&[0.0, 1.0], &[&[0.0], &[1.0]]);
        assert!(matches!(f.eval(1.5), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn sup_distance_zero_for_identical() {
        let f = path(&[0.0, 0.5, 1.0], &[&[0.0], &[0.5], &[1.0]]);
        assert_eq!(sup_distance(&f, &f).unwrap(), 0.0);
    }

    #[test]
    fn sup_distance_attained_at_endpoints() {
        let f = path(&[0.0, 0.5, 1.0], &[&[0.0], &[0.5], &[1.0]]);
        let g = path(&[0.0, 0.5, 1.0], &[&[1.0], &[0.5], &[0.0]]);
        assert_eq!(sup_distance(&f, &g).unwrap(), 1.0);
    }

    #[test]
    fn sup_distance_across_different_grids() {
        // identity on two knots vs. identity with the middle knot nudged up
        let f = path(&[0.0, 1.0], &[&[0.0], &[1.0]]);
        let g = path(&[0.0, 0.5, 1.0], &[&[0.0], &[0.6], &[1.0]]);
        let exact = sup_distance(&f, &g).unwrap();
        assert_relative_eq!(exact, 0.1, max_relative = 1e-12);
        // dense-sampling cross-check: never above the exact value
        let mut dense = 0.0f64;
        for i in 0..=10_000 {
            let x = i as f64 / 10_000.0;
            let d = (f.eval(x).unwrap()[0] - g.eval(x).unwrap()[0]).abs();
            dense = dense.max(d);
        }
        assert!(dense <= exact + 1e-15);
        assert!(exact - dense <= 1e-9);
    }

    #[test]
    fn uniform_bound_of_constant_vector_path() {
        let grid = Grid::new(vec![0.0, 1.0]).unwrap();
        let fam = Family::new(
            grid,
            2,
            vec![("c".into(), vec![vec![3.0, 4.0], vec![3.0, 4.0]])],
        )
        .unwrap();
        assert_eq!(fam.uniform_bound(), 5.0);
    }

    #[test]
    fn uniform_bound_maxes_over_members() {
        let grid = Grid::new(vec![0.0, 1.0]).unwrap();
        let fam = Family::new(
            grid,
            1,
            vec![
                ("f".into(), vec![vec![0.0], vec![1.0]]),
                ("g".into(), vec![vec![0.0], vec![-2.0]]),
            ],
        )
        .unwrap();
        assert_eq!(fam.uniform_bound(), 2.0);
    }

    #[test]
    fn image_over_interval_collects_knots_and_endpoints() {
        let knots: Vec<f64> = (0..=9).map(|i| i as f64 / 9.0).collect();
        let values: Vec<Vector> = knots.iter().map(|&x| vec![x]).collect();
        let f = SampledPath::from_knots(knots, 1, values).unwrap();
        let img = f.image_over_interval(0.0, 2.0 / 9.0).unwrap();
        assert_eq!(img.points.len(), 3);
        assert_eq!(img.points[0], vec![0.0]);
        assert_eq!(img.points[2], vec![2.0 / 9.0]);
    }

    #[test]
    fn image_of_constant_path_dedups_to_one_point() {
        let f = path(&[0.0, 0.5, 1.0], &[&[2.0], &[2.0], &[2.0]]);
        let img = f.image_over_interval(0.1, 0.9).unwrap();
        assert_eq!(img.points, vec![vec![2.0]]);
    }

    #[test]
    fn image_interpolates_interval_endpoints() {
        let f = path(&[0.0, 0.5, 1.0], &[&[0.0], &[1.0], &[0.0]]);
        let img = f.image_over_interval(0.25, 0.75).unwrap();
        assert_eq!(img.points, vec![vec![0.5], vec![1.0]]);
    }

    #[test]
    fn image_diameter_monotone_under_interval_inclusion() {
        let f = path(
            &[0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
            &[&[0.0], &[0.9], &[0.1], &[0.7], &[0.3], &[1.0]],
        );
        let mut prev = 0.0;
        for w in 1..=5 {
            let hi = w as f64 * 0.2;
            let d = crate::geometry::diameter(&f.image_over_interval(0.0, hi).unwrap());
            assert!(d >= prev - 1e-15);
            prev = d;
        }
    }

    #[test]
    fn family_requires_shared_grid() {
        let f = path(&[0.0, 1.0], &[&[0.0], &[1.0]]);
        let g = path(&[0.0, 0.5, 1.0], &[&[0.0], &[0.5], &[1.0]]);
        let err = Family::from_paths(vec!["f".into(), "g".into()], vec![f, g]).unwrap_err();
        assert!(matches!(err, Error::InvalidGrid(_)));
    }

    #[test]
    fn resampling_onto_refinement_is_exact() {
        let f = path(&[0.0, 0.5, 1.0], &[&[0.0], &[1.0], &[0.0]]);
        let fine = Arc::new(Grid::uniform(0.0, 1.0, 10).unwrap());
        let g = f.resampled(&fine).unwrap();
        assert_eq!(sup_distance(&f, &g).unwrap(), 0.0);
    }
}
