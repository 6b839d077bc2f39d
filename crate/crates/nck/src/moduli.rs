//! Modulus-of-continuity profiles, net covering radii, and the two-sided
//! bracket `omega/2 <= mu_H <= sqrt(N/(2N+2)) * omega`.
//!
//! For a PL family and a scale delta, the modulus
//! `omega(delta) = sup |f(x) - f(y)|` over `|x - y| <= delta` is attained at
//! the corners of the constraint region: knot pairs within delta, plus the
//! clipped points `x +- delta` anchored at each knot. `|f(x) - f(y)|` is
//! convex on each segment-product cell, so corner enumeration is exact.
//!
//! The strict-limit modulus of a finite PL family is always 0, so the
//! scalar reported by [`mu_uec_estimate`] is an estimate anchored at the
//! grid mesh; the dyadic profile is the honest deliverable and callers pick
//! their plateau from it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_space::{sup_distance, Family, Grid, SampledPath};
use crate::geometry::{distance, jung_factor};
use crate::net_builder::build_net;

/// Sampled modulus-of-continuity curve: `omegas[i]` is the family modulus
/// at scale `deltas[i]`. `omegas` is nondecreasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusProfile {
    pub deltas: Vec<f64>,
    pub omegas: Vec<f64>,
}

/// Two-sided bracket certified by one net construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bracket {
    /// Modulus estimate the construction ran with.
    pub omega_hat: f64,
    /// omega_hat / 2
    pub lower: f64,
    /// sqrt(N/(2N+2)) * omega_hat
    pub upper: f64,
    /// Covering radius realized by the constructed net; an upper bound on
    /// the Hausdorff measure of noncompactness of the family.
    pub achieved: f64,
    /// Quantization slack used by the construction.
    pub epsilon: f64,
    pub pass: bool,
}

/// Result of the equicontinuity-transfer check
/// `omega_fam(delta) <= 2 * net_radius + omega_net(delta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferReport {
    pub delta: f64,
    pub omega_fam: f64,
    pub omega_net: f64,
    pub net_radius: f64,
    /// 2 * net_radius + omega_net + tol
    pub bound: f64,
    pub pass: bool,
}

/// Modulus of one member at one scale. `cap` is a known upper bound (the
/// modulus at any larger scale); the scan stops once it is reached, since
/// no qualifying pair can exceed it.
fn member_omega(path: &SampledPath, delta: f64, cap: Option<f64>) -> f64 {
    let knots = path.grid().knots();
    let values = path.values();
    let m = knots.len();
    let (a, b) = (path.a(), path.b());
    let mut best = 0.0f64;
    let reached = |v: f64| cap.is_some_and(|c| v >= c);

    // Knot-pair corners via a sliding window anchored at the right index.
    if path.dim() == 1 {
        // Monotone deques for windowed max/min make this O(m).
        let mut max_dq: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
        let mut min_dq: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
        let mut lo = 0usize;
        for j in 0..m {
            while let Some(&back) = max_dq.back() {
                if values[back][0] <= values[j][0] {
                    max_dq.pop_back();
                } else {
                    break;
                }
            }
            max_dq.push_back(j);
            while let Some(&back) = min_dq.back() {
                if values[back][0] >= values[j][0] {
                    min_dq.pop_back();
                } else {
                    break;
                }
            }
            min_dq.push_back(j);
            while knots[j] - knots[lo] > delta {
                if max_dq.front() == Some(&lo) {
                    max_dq.pop_front();
                }
                if min_dq.front() == Some(&lo) {
                    min_dq.pop_front();
                }
                lo += 1;
            }
            let hi_v = values[*max_dq.front().unwrap()][0];
            let lo_v = values[*min_dq.front().unwrap()][0];
            best = best.max(hi_v - values[j][0]).max(values[j][0] - lo_v);
            if reached(best) {
                return best;
            }
        }
    } else {
        let mut lo = 0usize;
        for j in 0..m {
            while knots[j] - knots[lo] > delta {
                lo += 1;
            }
            for i in lo..j {
                best = best.max(distance(&values[i], &values[j]));
            }
            if reached(best) {
                return best;
            }
        }
    }

    // Constraint-boundary corners: for each knot, the clipped points
    // x +- delta evaluated on the path.
    for (i, &x) in knots.iter().enumerate() {
        let right = (x + delta).min(b);
        if right > x {
            let v = path.eval(right).expect("in domain");
            best = best.max(distance(&values[i], &v));
        }
        let left = (x - delta).max(a);
        if left < x {
            let v = path.eval(left).expect("in domain");
            best = best.max(distance(&values[i], &v));
        }
        if reached(best) {
            return best;
        }
    }
    best
}

/// Family modulus at one scale (closed constraint `|x - y| <= delta`).
pub fn modulus_omega(fam: &Family, delta: f64) -> Result<f64> {
    crate::error::ensure_positive(delta, "delta")?;
    Ok(fam
        .members()
        .iter()
        .map(|p| member_omega(p, delta, None))
        .fold(0.0, f64::max))
}

/// Evaluates the family modulus at each scale of an ascending schedule.
pub fn modulus_profile(fam: &Family, deltas: &[f64]) -> Result<ModulusProfile> {
    if deltas.is_empty() {
        return Err(Error::EmptyDeltas);
    }
    for w in deltas.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidArgument(format!(
                "deltas not strictly ascending: {} then {}",
                w[0], w[1]
            )));
        }
    }
    crate::error::ensure_positive(deltas[0], "deltas")?;
    // Largest scale first so each smaller scale scans under a known cap.
    let mut omegas = vec![0.0f64; deltas.len()];
    let mut cap: Option<f64> = None;
    for (slot, &delta) in deltas.iter().enumerate().rev() {
        let omega = fam
            .members()
            .iter()
            .map(|p| member_omega(p, delta, cap))
            .fold(0.0, f64::max);
        omegas[slot] = omega;
        cap = Some(omega);
    }
    debug_assert!(
        omegas.windows(2).all(|w| w[0] <= w[1] + 1e-12),
        "modulus profile must be nondecreasing"
    );
    Ok(ModulusProfile {
        deltas: deltas.to_vec(),
        omegas,
    })
}

/// Modulus estimate at the grid mesh, together with the dyadic profile
/// `delta in {mesh * 2^k}` up to the interval length.
///
/// The scalar is exact for the PL family only in the limit delta -> 0
/// (where it vanishes for any finite family); it is meant as a proxy for
/// the underlying infinite family the grid sampled, and the profile is the
/// honest deliverable.
pub fn mu_uec_estimate(fam: &Family) -> Result<(f64, ModulusProfile)> {
    let mesh = fam.grid().mesh();
    let span = fam.b() - fam.a();
    let mut deltas = Vec::new();
    let mut d = mesh;
    while d < span {
        deltas.push(d);
        d *= 2.0;
    }
    deltas.push(span);
    let profile = modulus_profile(fam, &deltas)?;
    Ok((profile.omegas[0], profile))
}

/// Covering radius of `net` over `fam`: the worst-case sup-norm distance
/// from a family member to its nearest net element. Any returned value is
/// an upper bound on the Hausdorff measure of noncompactness of `fam`.
pub fn net_radius(fam: &Family, net: &Family) -> Result<f64> {
    if fam.dim() != net.dim() {
        return Err(Error::DimensionMismatch {
            expected: fam.dim(),
            actual: net.dim(),
        });
    }
    if fam.a() != net.a() || fam.b() != net.b() {
        return Err(Error::InvalidGrid(format!(
            "interval mismatch: [{}, {}] vs [{}, {}]",
            fam.a(),
            fam.b(),
            net.a(),
            net.b()
        )));
    }
    // Resample both onto the common refinement once so every pairwise
    // sup-distance takes the exact shared-grid fast path.
    let (fam_r, net_r);
    let (fam, net) = if fam.grid() == net.grid() {
        (fam, net)
    } else {
        let union = Grid::union(fam.grid(), net.grid())?;
        fam_r = fam.resampled(union.clone())?;
        net_r = net.resampled(union)?;
        (&fam_r, &net_r)
    };
    let mut worst = 0.0f64;
    for f in fam.members() {
        let mut nearest = f64::INFINITY;
        for g in net.members() {
            nearest = nearest.min(sup_distance(f, g)?);
        }
        worst = worst.max(nearest);
    }
    Ok(worst)
}

/// Checks the transfer inequality
/// `omega_fam(delta) <= 2 * net_radius(fam, net) + omega_net(delta) + tol`:
/// equicontinuity of a finite net transfers to any family it covers.
pub fn equicontinuity_transfer(
    fam: &Family,
    net: &Family,
    delta: f64,
    tol: f64,
) -> Result<TransferReport> {
    let omega_fam = modulus_omega(fam, delta)?;
    let omega_net = modulus_omega(net, delta)?;
    let radius = net_radius(fam, net)?;
    let bound = 2.0 * radius + omega_net + tol;
    Ok(TransferReport {
        delta,
        omega_fam,
        omega_net,
        net_radius: radius,
        bound,
        pass: omega_fam <= bound,
    })
}

/// Runs the full bracket at one scale: measures `alpha = omega(delta)`,
/// builds the certified net with quantization slack `epsilon`, and reports
/// the realized covering radius against the two-sided bound.
pub fn theorem_bracket(
    fam: &Family,
    delta: f64,
    epsilon: f64,
    seed: u64,
    tol: f64,
) -> Result<Bracket> {
    let omega_hat = modulus_omega(fam, delta)?;
    let (net, _certs) = build_net(fam, delta, omega_hat, epsilon, seed, tol)?;
    let achieved = net_radius(fam, &net)?;
    let lower = omega_hat / 2.0;
    let upper = jung_factor(fam.dim()) * omega_hat;
    Ok(Bracket {
        omega_hat,
        lower,
        upper,
        achieved,
        epsilon,
        pass: achieved <= upper + epsilon + tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_space::Grid;
    use approx::assert_relative_eq;

    fn family_1d(knots: Vec<f64>, members: Vec<(&str, Vec<f64>)>) -> Family {
        let grid = Grid::new(knots).unwrap();
        Family::new(
            grid,
            1,
            members
                .into_iter()
                .map(|(id, vs)| (id.to_string(), vs.into_iter().map(|v| vec![v]).collect()))
                .collect(),
        )
        .unwrap()
    }

    fn identity_family() -> Family {
        let knots: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let values = knots.clone();
        family_1d(knots, vec![("id", values)])
    }

    #[test]
    fn omega_of_identity_is_delta() {
        let fam = identity_family();
        assert_relative_eq!(
            modulus_omega(&fam, 0.1).unwrap(),
            0.1,
            max_relative = 1e-12
        );
    }

    #[test]
    fn omega_takes_sup_over_members() {
        let knots: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let fam = family_1d(
            knots.clone(),
            vec![
                ("x", knots.to_vec()),
                ("2x", knots.iter().map(|&x| 2.0 * x).collect()),
            ],
        );
        assert_relative_eq!(
            modulus_omega(&fam, 0.1).unwrap(),
            0.2,
            max_relative = 1e-12
        );
    }

    #[test]
    fn omega_of_constant_family_is_zero() {
        let fam = family_1d(vec![0.0, 0.5, 1.0], vec![("c", vec![0.3, 0.3, 0.3])]);
        assert_eq!(modulus_omega(&fam, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn omega_matches_brute_force_pair_scan() {
        // small irregular 2d family; oracle scans a dense pair grid plus the
        // exact corner pairs
        let knots = vec![0.0, 0.15, 0.4, 0.55, 0.8, 1.0];
        let grid = Grid::new(knots.clone()).unwrap();
        let values: Vec<Vec<f64>> = knots
            .iter()
            .map(|&x| vec![(3.1 * x).sin(), (2.3 * x).cos()])
            .collect();
        let fam = Family::new(grid, 2, vec![("w".into(), values)]).unwrap();
        for &delta in &[0.07, 0.21, 0.5, 1.0] {
            let exact = modulus_omega(&fam, delta).unwrap();
            let path = &fam.members()[0];
            let mut dense = 0.0f64;
            let n = 400;
            for i in 0..=n {
                let x = i as f64 / n as f64;
                let vx = path.eval(x).unwrap();
                // corner partner and dense partners
                for &y in &[(x + delta).min(1.0), (x - delta).max(0.0)] {
                    let vy = path.eval(y).unwrap();
                    dense = dense.max(distance(&vx, &vy));
                }
                for j in 0..=n {
                    let y = j as f64 / n as f64;
                    if (x - y).abs() <= delta {
                        let vy = path.eval(y).unwrap();
                        dense = dense.max(distance(&vx, &vy));
                    }
                }
            }
            assert!(exact >= dense - 1e-12, "exact {exact} < dense {dense}");
            assert!(exact - dense <= 2e-3, "exact {exact} far above dense {dense}");
        }
    }

    #[test]
    fn profile_is_monotone_and_bounded() {
        let fam = identity_family();
        let deltas: Vec<f64> = vec![0.05, 0.1, 0.2, 0.4, 0.8, 1.0];
        let prof = modulus_profile(&fam, &deltas).unwrap();
        for w in prof.omegas.windows(2) {
            assert!(w[0] <= w[1] + 1e-12);
        }
        let bound = 2.0 * fam.uniform_bound();
        for &o in &prof.omegas {
            assert!(o <= bound + 1e-12);
        }
    }

    #[test]
    fn profile_rejects_bad_schedules() {
        let fam = identity_family();
        assert_eq!(modulus_profile(&fam, &[]), Err(Error::EmptyDeltas));
        assert!(modulus_profile(&fam, &[0.2, 0.1]).is_err());
        assert!(modulus_profile(&fam, &[-0.1, 0.2]).is_err());
    }

    #[test]
    fn mu_uec_estimate_decreases_under_refinement() {
        // a singleton family is equicontinuous: finer sampling of the same
        // path drives the mesh-scale estimate toward zero
        let mut prev = f64::INFINITY;
        for segments in [4usize, 16, 64, 256] {
            let knots: Vec<f64> = (0..=segments).map(|i| i as f64 / segments as f64).collect();
            let values: Vec<f64> = knots.iter().map(|&x| (6.0 * x).sin()).collect();
            let fam = family_1d(knots, vec![("s", values)]);
            let (est, _) = mu_uec_estimate(&fam).unwrap();
            assert!(est <= prev + 1e-12);
            prev = est;
        }
        assert!(prev < 0.1);
    }

    #[test]
    fn mu_uec_estimate_constant_family_is_zero() {
        let fam = family_1d(vec![0.0, 0.5, 1.0], vec![("c", vec![1.0, 1.0, 1.0])]);
        let (est, prof) = mu_uec_estimate(&fam).unwrap();
        assert_eq!(est, 0.0);
        assert!(prof.omegas.iter().all(|&o| o == 0.0));
    }

    #[test]
    fn net_radius_of_family_over_itself_is_zero() {
        let fam = identity_family();
        assert_eq!(net_radius(&fam, &fam).unwrap(), 0.0);
    }

    #[test]
    fn net_radius_two_constants_vs_midpoint() {
        let fam = family_1d(
            vec![0.0, 1.0],
            vec![("lo", vec![0.0, 0.0]), ("hi", vec![1.0, 1.0])],
        );
        let net = family_1d(vec![0.0, 1.0], vec![("mid", vec![0.5, 0.5])]);
        assert_eq!(net_radius(&fam, &net).unwrap(), 0.5);
    }

    #[test]
    fn net_radius_monotone_in_net() {
        let fam = family_1d(
            vec![0.0, 1.0],
            vec![("lo", vec![0.0, 0.0]), ("hi", vec![1.0, 1.0])],
        );
        let small = family_1d(vec![0.0, 1.0], vec![("mid", vec![0.5, 0.5])]);
        let large = family_1d(
            vec![0.0, 1.0],
            vec![("mid", vec![0.5, 0.5]), ("hi", vec![1.0, 1.0])],
        );
        assert!(net_radius(&fam, &large).unwrap() <= net_radius(&fam, &small).unwrap());
    }

    #[test]
    fn subset_monotonicity() {
        let knots: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
        let fam = family_1d(
            knots.clone(),
            vec![
                ("a", knots.to_vec()),
                ("b", knots.iter().map(|&x| 1.0 - 2.0 * x).collect()),
                ("c", knots.iter().map(|&x| (4.0 * x).sin()).collect()),
            ],
        );
        let sub = fam.subfamily(&[0, 2]).unwrap();
        let delta = 0.3;
        assert!(modulus_omega(&sub, delta).unwrap() <= modulus_omega(&fam, delta).unwrap() + 1e-15);
        let net = family_1d(knots, vec![("z", vec![0.0; 9])]);
        assert!(net_radius(&sub, &net).unwrap() <= net_radius(&fam, &net).unwrap() + 1e-15);
    }

    #[test]
    fn transfer_with_net_equal_to_family_passes_with_equality() {
        let fam = identity_family();
        let report = equicontinuity_transfer(&fam, &fam, 0.2, 1e-9).unwrap();
        assert!(report.pass);
        assert_eq!(report.net_radius, 0.0);
        assert_eq!(report.omega_fam, report.omega_net);
    }

    #[test]
    fn transfer_two_constants_vs_midpoint() {
        let fam = family_1d(
            vec![0.0, 1.0],
            vec![("lo", vec![0.0, 0.0]), ("hi", vec![1.0, 1.0])],
        );
        let net = family_1d(vec![0.0, 1.0], vec![("mid", vec![0.5, 0.5])]);
        let report = equicontinuity_transfer(&fam, &net, 0.37, 1e-9).unwrap();
        assert!(report.pass);
        assert_eq!(report.omega_fam, 0.0);
        assert_eq!(report.net_radius, 0.5);
    }

    #[test]
    fn bracket_simplex_oscillators_in_r2() {
        let mesh = 2.0f64.powi(-7);
        let fam = crate::generators::gen_family(
            crate::generators::FamilyKind::SimplexOsc,
            2,
            mesh,
            2,
        )
        .unwrap();
        let b = theorem_bracket(&fam, 8.0 * mesh, 0.01, 0, 1e-9).unwrap();
        assert!(b.pass);
        // vertex diameter 1, so the upper factor is sqrt(2/6)
        assert_relative_eq!(b.omega_hat, 1.0, epsilon = 1e-9);
        assert_relative_eq!(b.upper, (1.0f64 / 3.0).sqrt(), epsilon = 1e-9);
        assert!(b.achieved <= b.upper + b.epsilon + 1e-9);
        assert_relative_eq!(b.lower, b.omega_hat / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn bracket_constant_family_is_all_zero() {
        let fam = family_1d(vec![0.0, 0.5, 1.0], vec![("c", vec![0.0, 0.0, 0.0])]);
        let b = theorem_bracket(&fam, 0.3, 0.01, 0, 1e-9).unwrap();
        assert_eq!(b.omega_hat, 0.0);
        assert_eq!(b.lower, 0.0);
        assert_eq!(b.upper, 0.0);
        assert_eq!(b.achieved, 0.0);
        assert!(b.pass);
    }
}
