//! Finite point sets in Euclidean N-space: diameter, minimum enclosing
//! (Chebyshev) balls, and the Jung diameter/radius relation.
//!
//! The primary solver is a Welzl-style move-to-front recursion over a seeded
//! random permutation. When the support system becomes numerically
//! ill-conditioned it falls back to the Badoiu-Clarkson core-set iteration.
//! [`chebyshev_oracle`] is an independent brute-force verifier that
//! enumerates candidate support subsets; it is exponential in the subset
//! size and intended for small inputs only.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// A point of R^N. Validity (finiteness, length) is enforced by the
/// containers that hold them.
pub type Vector = Vec<f64>;

/// Condition-number estimate above which the support solve is declared
/// ill-conditioned and the solver falls back to Badoiu-Clarkson.
const ILL_CONDITIONED: f64 = 1e10;

/// Absolute slack used by the oracle when filtering enclosing balls.
const ORACLE_ENCLOSURE_SLACK: f64 = 1e-12;

/// Default relative tolerance for all public geometry operations.
pub const DEFAULT_TOL: f64 = 1e-9;

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// The Jung factor sqrt(N / (2N + 2)): the tight upper-bound ratio between
/// the Chebyshev radius and the diameter in R^N.
pub fn jung_factor(dim: usize) -> f64 {
    let n = dim as f64;
    (n / (2.0 * n + 2.0)).sqrt()
}

/// A nonempty finite set of points sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Vector>,
}

impl PointSet {
    /// Builds a point set, rejecting empty input, ragged rows, and
    /// non-finite coordinates.
    pub fn new(dim: usize, points: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: p.len(),
                });
            }
            for (i, &v) in p.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { value: v, index: i });
                }
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A closed ball: center plus nonnegative radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ball {
    pub center: Vector,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, p: &[f64], slack: f64) -> bool {
        distance(&self.center, p) <= self.radius + slack
    }
}

/// Outcome of checking the Jung inequality on one point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JungReport {
    pub diameter: f64,
    pub radius: f64,
    /// diameter / 2
    pub lower: f64,
    /// sqrt(N/(2N+2)) * diameter
    pub upper: f64,
    pub pass: bool,
    /// Smallest slack to either bound; negative iff the check failed.
    pub margin: f64,
}

/// Largest pairwise Euclidean distance; 0 for a singleton.
///
/// Exact pairwise O(m^2) scan.
pub fn diameter(ps: &PointSet) -> f64 {
    let mut best = 0.0f64;
    for (i, p) in ps.points.iter().enumerate() {
        for q in &ps.points[i + 1..] {
            let d = squared_distance(p, q);
            if d > best {
                best = d;
            }
        }
    }
    best.sqrt()
}

/// Solves for the smallest ball having every support point on its boundary.
///
/// The center lies in the affine hull of the support: c = p0 + sum lambda_i
/// (p_i - p0), with the equal-distance conditions reducing to the linear
/// system G lambda = rhs, G_ij = 2 (p_i - p0) . (p_j - p0), rhs_i =
/// |p_i - p0|^2. Returns `None` when the system is singular or its pivot
/// ratio exceeds the ill-conditioning threshold (affinely degenerate
/// support; cannot be a minimal support set).
fn ball_from_support(support: &[&[f64]]) -> Option<Ball> {
    let k = support.len();
    assert!(k >= 1, "support must be nonempty");
    let p0 = support[0];
    if k == 1 {
        return Some(Ball {
            center: p0.to_vec(),
            radius: 0.0,
        });
    }
    let m = k - 1;
    // Gram matrix of the edge vectors, augmented with the right-hand side.
    let mut g = vec![vec![0.0f64; m + 1]; m];
    for i in 0..m {
        let pi = support[i + 1];
        for j in 0..m {
            let pj = support[j + 1];
            let mut dot = 0.0;
            for t in 0..p0.len() {
                dot += (pi[t] - p0[t]) * (pj[t] - p0[t]);
            }
            g[i][j] = 2.0 * dot;
        }
        g[i][m] = squared_distance(pi, p0);
    }
    let lambda = solve_with_pivoting(&mut g)?;
    let mut center = p0.to_vec();
    for (i, &l) in lambda.iter().enumerate() {
        let pi = support[i + 1];
        for t in 0..center.len() {
            center[t] += l * (pi[t] - p0[t]);
        }
    }
    // The radius is certified against the support itself.
    let radius = support
        .iter()
        .map(|p| distance(&center, p))
        .fold(0.0, f64::max);
    Some(Ball { center, radius })
}

/// Gaussian elimination with partial pivoting on an m x (m+1) augmented
/// system. Returns `None` when singular or when the max/min pivot ratio
/// exceeds the ill-conditioning threshold.
fn solve_with_pivoting(aug: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let m = aug.len();
    let mut max_pivot = 0.0f64;
    let mut min_pivot = f64::INFINITY;
    for col in 0..m {
        let (best_row, best_val) = (col..m)
            .map(|r| (r, aug[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if best_val == 0.0 {
            return None;
        }
        aug.swap(col, best_row);
        max_pivot = max_pivot.max(best_val);
        min_pivot = min_pivot.min(best_val);
        for r in col + 1..m {
            let f = aug[r][col] / aug[col][col];
            let (pivot_rows, rest) = aug.split_at_mut(col + 1);
            let pivot_row = &pivot_rows[col];
            for (x, &p) in rest[r - col - 1][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
        }
    }
    if max_pivot / min_pivot > ILL_CONDITIONED {
        return None;
    }
    let mut x = vec![0.0f64; m];
    for row in (0..m).rev() {
        let mut acc = aug[row][m];
        for c in row + 1..m {
            acc -= aug[row][c] * x[c];
        }
        x[row] = acc / aug[row][row];
    }
    Some(x)
}

/// Welzl move-to-front recursion. `pts[..n]` are the active points,
/// `support` the points forced onto the boundary. Returns `None` on a
/// numerically degenerate support solve, which aborts the whole run.
fn welzl_mtf<'a>(
    pts: &mut Vec<&'a [f64]>,
    n: usize,
    support: &mut Vec<&'a [f64]>,
    dim: usize,
) -> Option<Ball> {
    let mut ball = if support.is_empty() {
        Ball {
            center: vec![0.0; dim],
            radius: -1.0,
        }
    } else {
        ball_from_support(support)?
    };
    if support.len() == dim + 1 {
        return Some(ball);
    }
    let mut i = 0;
    while i < n {
        let p = pts[i];
        let slack = 1e-12 * (1.0 + ball.radius);
        if ball.radius < 0.0 || !ball.contains(p, slack) {
            support.push(p);
            ball = welzl_mtf(pts, i, support, dim)?;
            support.pop();
            pts[..=i].rotate_right(1);
        }
        i += 1;
    }
    Some(ball)
}

/// Badoiu-Clarkson core-set iteration: walk the center toward the farthest
/// point with step 1/(k+1) until the enclosing radius stabilizes.
fn badoiu_clarkson(points: &[&[f64]], tol: f64) -> Ball {
    const MAX_ITERS: usize = 200_000;
    let mut center: Vector = points[0].to_vec();
    let mut prev_radius = f64::INFINITY;
    for k in 1..=MAX_ITERS {
        let (far, radius) = points
            .iter()
            .map(|p| (*p, distance(&center, p)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if (prev_radius - radius).abs() <= tol * radius.max(f64::MIN_POSITIVE) {
            break;
        }
        prev_radius = radius;
        let step = 1.0 / (k as f64 + 1.0);
        for t in 0..center.len() {
            center[t] += step * (far[t] - center[t]);
        }
    }
    certify(center, points)
}

/// Re-measures the radius as the exact sup of distances from `center`,
/// so the returned ball encloses every input point by construction.
fn certify(center: Vector, points: &[&[f64]]) -> Ball {
    let radius = points
        .iter()
        .map(|p| distance(&center, p))
        .fold(0.0, f64::max);
    Ball { center, radius }
}

fn dedup_exact(points: &[Vector]) -> Vec<&[f64]> {
    let mut seen: Vec<&[f64]> = Vec::with_capacity(points.len());
    for p in points {
        if !seen.contains(&p.as_slice()) {
            seen.push(p);
        }
    }
    seen
}

/// Minimum enclosing ball with the default shuffle seed.
///
/// Postconditions: every point of `ps` lies within `radius * (1 + tol)` of
/// the center, and the radius is within `(1 + tol)` of the optimum.
pub fn chebyshev_ball(ps: &PointSet, tol: f64) -> Result<Ball> {
    chebyshev_ball_seeded(ps, tol, 0)
}

/// Minimum enclosing ball with an explicit shuffle seed. Identical seed and
/// input produce an identical ball.
pub fn chebyshev_ball_seeded(ps: &PointSet, tol: f64, seed: u64) -> Result<Ball> {
    crate::error::ensure_positive(tol, "tolerance")?;
    // In R^1 the ball is the midpoint interval of min and max, exactly.
    if ps.dim == 1 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &ps.points {
            lo = lo.min(p[0]);
            hi = hi.max(p[0]);
        }
        return Ok(Ball {
            center: vec![(lo + hi) / 2.0],
            radius: (hi - lo) / 2.0,
        });
    }
    let deduped = dedup_exact(&ps.points);
    let mut shuffled = deduped.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.shuffle(&mut rng);
    let n = shuffled.len();
    let mut support: Vec<&[f64]> = Vec::with_capacity(ps.dim + 1);
    let ball = match welzl_mtf(&mut shuffled, n, &mut support, ps.dim) {
        Some(b) => certify(b.center, &deduped),
        None => badoiu_clarkson(&deduped, tol),
    };
    Ok(ball)
}

/// Brute-force minimum enclosing ball by support-subset enumeration.
///
/// Every subset of at most N+1 points is solved for the smallest ball with
/// that subset on its boundary; survivors must enclose all points within a
/// small absolute slack, and the minimum-radius survivor wins. An MEB is
/// determined by at most N+1 support points, so the enumeration is
/// guaranteed to find the optimum. Cost is exponential in the subset size;
/// keep the point count small (<= ~12).
///
/// Ties on radius keep the subset seen first (sizes ascending, then
/// lexicographic index order); centers of tied subsets agree up to
/// tolerance by uniqueness of the Chebyshev center.
pub fn chebyshev_oracle(ps: &PointSet) -> Result<Ball> {
    let points = dedup_exact(&ps.points);
    let n = points.len();
    let max_size = (ps.dim + 1).min(n);
    let mut best: Option<Ball> = None;
    let mut subset: Vec<usize> = Vec::with_capacity(max_size);
    for size in 1..=max_size {
        subset.clear();
        enumerate_subsets(n, size, 0, &mut subset, &mut |idxs| {
            let support: Vec<&[f64]> = idxs.iter().map(|&i| points[i]).collect();
            let Some(ball) = ball_from_support(&support) else {
                return; // degenerate: cannot be a minimal support
            };
            let encloses = points
                .iter()
                .all(|p| ball.contains(p, ORACLE_ENCLOSURE_SLACK));
            if encloses && best.as_ref().is_none_or(|b| ball.radius < b.radius) {
                best = Some(ball);
            }
        });
    }
    best.ok_or_else(|| {
        Error::Internal("oracle found no enclosing support ball; contract violation".into())
    })
}

fn enumerate_subsets(
    n: usize,
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if current.len() == size {
        visit(current);
        return;
    }
    let remaining = size - current.len();
    for i in start..=n.saturating_sub(remaining) {
        current.push(i);
        enumerate_subsets(n, size, i + 1, current, visit);
        current.pop();
    }
}

/// Computes diameter and Chebyshev radius and checks the two-sided Jung
/// inequality `diam/2 <= r <= sqrt(N/(2N+2)) * diam` within `tol`.
pub fn jung_report(ps: &PointSet, tol: f64) -> Result<JungReport> {
    let diam = diameter(ps);
    let ball = chebyshev_ball(ps, tol)?;
    let lower = diam / 2.0;
    let upper = jung_factor(ps.dim) * diam;
    let margin = (ball.radius - lower).min(upper - ball.radius);
    Ok(JungReport {
        diameter: diam,
        radius: ball.radius,
        lower,
        upper,
        pass: ball.radius >= lower - tol && ball.radius <= upper + tol,
        margin,
    })
}

/// Vertices of a regular N-simplex with the given side length, embedded in
/// R^N: the canonical basis vectors plus the symmetric completion point,
/// scaled from side sqrt(2) down to `side`.
pub fn regular_simplex(dim: usize, side: f64) -> PointSet {
    let n = dim as f64;
    let scale = side / 2.0f64.sqrt();
    let alpha = (1.0 - (n + 1.0).sqrt()) / n;
    let mut points = Vec::with_capacity(dim + 1);
    points.push(vec![alpha * scale; dim]);
    for i in 0..dim {
        let mut v = vec![0.0; dim];
        v[i] = scale;
        points.push(v);
    }
    PointSet::new(dim, points).expect("simplex construction is valid")
}
