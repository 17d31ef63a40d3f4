//! Region alpha-theory certification: upper bounds for beta, mu, gamma, and
//! alpha over an interval box, the certification verdict, and rigorous
//! same/distinct classification of certified boxes.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::linalg::{box_distance, vec_mag_norm, vec_mig_norm, IntervalVector};
use crate::polysys::PolySystem;
use crate::scalar::{Dir, Endpoint};
use alloc::vec::Vec;

/// Certification verdict and bounds for one box. The scalar bounds are
/// reported as `f64` regardless of backend, converted outward so they stay
/// valid bounds; `inf` marks the singular case.
#[derive(Clone, Debug, PartialEq)]
pub struct CertResult {
    /// Upper bound on alpha(F, I) = beta * gamma.
    pub alpha_up: f64,
    /// Upper bound on beta(F, I), the worst Newton-step length over the box.
    pub beta_up: f64,
    /// Upper bound on gamma(F, I).
    pub gamma_up: f64,
    /// True when alpha_up is provably below the certification threshold
    /// (13 - 3*sqrt(17))/4: every point of the box is then an approximate
    /// solution with a shared associated solution.
    pub certified: bool,
    /// Lower bound on the radius 1/(20*gamma) around which uniqueness of the
    /// associated solution extends; present exactly when alpha_up < 0.03.
    pub uniqueness_radius: Option<f64>,
    /// The Jacobian enclosure admitted no invertible pivot sequence; all
    /// bounds are infinite and the box is not certified.
    pub singular: bool,
}

impl CertResult {
    fn singular() -> Self {
        CertResult {
            alpha_up: f64::INFINITY,
            beta_up: f64::INFINITY,
            gamma_up: f64::INFINITY,
            certified: false,
            uniqueness_radius: None,
            singular: true,
        }
    }
}

/// Rigorous relation between two certified boxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    /// The boxes provably share one associated solution.
    Same,
    /// The boxes provably have different associated solutions.
    Distinct,
    /// Neither rigorous test fired (or a box was not certified).
    Unknown,
}

/// Rigorous lower bound on the certification threshold
/// (13 - 3*sqrt(17))/4 at the given precision: sqrt(17) is rounded up, the
/// remaining steps down, so comparing `alpha_up < alpha0` is always safe.
pub fn alpha0_lower<S: Endpoint>(bits: u32) -> S {
    let s17 = S::from_u128_dir(17, bits, Dir::Up).sqrt_dir(Dir::Up);
    let t = S::from_u128_dir(3, bits, Dir::Up).mul_dir(&s17, Dir::Up);
    let u = S::from_u128_dir(13, bits, Dir::Down).sub_dir(&t, Dir::Down);
    u.div_dir(&S::from_u128_dir(4, bits, Dir::Up), Dir::Down)
}

/// The shared heavy lifting: one Jacobian closure, one LU-based inversion,
/// and the three bounds assembled from it. `None` marks a singular
/// enclosure.
struct RegionBounds<S: Endpoint> {
    beta: S,
    gamma: S,
}

fn region_bounds<S: Endpoint>(
    system: &PolySystem<S>,
    region: &[ComplexInterval<S>],
) -> Result<Option<RegionBounds<S>>> {
    if region.len() != system.nvars() {
        return Err(Error::DimensionMismatch);
    }
    let jac = system.jacobian_closure(region)?;
    let jinv = match jac.invert() {
        Ok(m) => m,
        Err(Error::SingularEnclosure) | Err(Error::DivisionByZeroInterval) => return Ok(None),
        Err(e) => return Err(e),
    };
    let bits = region
        .iter()
        .map(|c| c.precision_bits())
        .max()
        .unwrap_or(53);

    // beta: || Jinv * F(I) || rounded up.
    let values = system.eval_closure(region)?;
    let newton_vec = jinv.matvec(&values)?;
    let beta = vec_mag_norm(&newton_vec);

    // mu: max{1, ||F|| * ||Jinv * Delta||}.
    let delta = system.delta_matrix(region)?;
    let op_norm = jinv.mul_mat(&delta)?.frob_mag_norm();
    let mu = system
        .bw_norm()
        .mul_dir(&op_norm, Dir::Up)
        .max_val(S::one(bits));

    // gamma: mu * D^(3/2) / (2 * mignitude norm of (1, I)).
    let d = system.maxdeg() as u128;
    let d_cubed = S::from_u128_dir(d * d * d, bits, Dir::Up);
    let d_three_halves = d_cubed.sqrt_dir(Dir::Up);
    let mut one_region: IntervalVector<S> = Vec::with_capacity(region.len() + 1);
    one_region.push(ComplexInterval::point(S::one(bits), S::zero(bits)));
    one_region.extend(region.iter().cloned());
    let mig = vec_mig_norm(&one_region);
    debug_assert!(!mig.is_zero(), "(1, I) mignitude norm is at least 1");
    let denom = S::from_u128_dir(2, bits, Dir::Down).mul_dir(&mig, Dir::Down);
    let gamma = mu.mul_dir(&d_three_halves, Dir::Up).div_dir(&denom, Dir::Up);

    Ok(Some(RegionBounds { beta, gamma }))
}

/// Upper bound on `beta(F, I) = max over I of ||JF(x)^{-1} F(x)||`;
/// infinite when the Jacobian enclosure is singular.
pub fn beta_bound<S: Endpoint>(
    system: &PolySystem<S>,
    region: &[ComplexInterval<S>],
) -> Result<f64> {
    Ok(match region_bounds(system, region)? {
        Some(b) => b.beta.to_f64_dir(Dir::Up),
        None => f64::INFINITY,
    })
}

/// Upper bound on the condition quantity
/// `mu(F, I) = max{1, ||F|| * ||JF^{-1} Delta_F||}`.
pub fn mu_bound<S: Endpoint>(
    system: &PolySystem<S>,
    region: &[ComplexInterval<S>],
) -> Result<f64> {
    if region.len() != system.nvars() {
        return Err(Error::DimensionMismatch);
    }
    let jac = system.jacobian_closure(region)?;
    let jinv = match jac.invert() {
        Ok(m) => m,
        Err(Error::SingularEnclosure) | Err(Error::DivisionByZeroInterval) => {
            return Ok(f64::INFINITY)
        }
        Err(e) => return Err(e),
    };
    let bits = region
        .iter()
        .map(|c| c.precision_bits())
        .max()
        .unwrap_or(53);
    let delta = system.delta_matrix(region)?;
    let op_norm = jinv.mul_mat(&delta)?.frob_mag_norm();
    let mu = system
        .bw_norm()
        .mul_dir(&op_norm, Dir::Up)
        .max_val(S::one(bits));
    Ok(mu.to_f64_dir(Dir::Up))
}

/// Upper bound on `gamma(F, I)` via the computable region bound
/// `mu * D^(3/2) / (2 * ||(1, I)||_mig)`.
pub fn gamma_bound<S: Endpoint>(
    system: &PolySystem<S>,
    region: &[ComplexInterval<S>],
) -> Result<f64> {
    Ok(match region_bounds(system, region)? {
        Some(b) => b.gamma.to_f64_dir(Dir::Up),
        None => f64::INFINITY,
    })
}

/// Certify a box: every point of a certified box is an approximate solution
/// and all of them share one associated solution.
pub fn certify_box<S: Endpoint>(
    system: &PolySystem<S>,
    region: &[ComplexInterval<S>],
) -> Result<CertResult> {
    let bounds = match region_bounds(system, region)? {
        Some(b) => b,
        None => return Ok(CertResult::singular()),
    };
    let bits = region
        .iter()
        .map(|c| c.precision_bits())
        .max()
        .unwrap_or(53);
    let alpha = bounds.beta.mul_dir(&bounds.gamma, Dir::Up);
    let threshold = alpha0_lower::<S>(bits);
    let certified = alpha < threshold;
    // 0.03 is an exact decimal constant; compare against its rounded-down
    // value so the uniqueness claim is never overstated.
    let low_alpha_gate = S::parse_decimal("0.03", bits, Dir::Down).expect("fixed literal");
    let uniqueness_radius = if alpha < low_alpha_gate {
        let twenty_gamma = S::from_u128_dir(20, bits, Dir::Up).mul_dir(&bounds.gamma, Dir::Up);
        Some(
            S::one(bits)
                .div_dir(&twenty_gamma, Dir::Down)
                .to_f64_dir(Dir::Down),
        )
    } else {
        None
    };
    Ok(CertResult {
        alpha_up: alpha.to_f64_dir(Dir::Up),
        beta_up: bounds.beta.to_f64_dir(Dir::Up),
        gamma_up: bounds.gamma.to_f64_dir(Dir::Up),
        certified,
        uniqueness_radius,
        singular: false,
    })
}

/// Rigorous same/distinct classification of two certified boxes.
///
/// Intersecting certified boxes share their associated solution; boxes
/// farther apart than `2*beta_1 + 2*beta_2` have different ones. Both
/// boxes must be certified for either claim.
pub fn classify_pair<S: Endpoint>(
    region1: &[ComplexInterval<S>],
    region2: &[ComplexInterval<S>],
    r1: &CertResult,
    r2: &CertResult,
) -> Result<PairVerdict> {
    if region1.len() != region2.len() {
        return Err(Error::DimensionMismatch);
    }
    if !r1.certified || !r2.certified {
        return Ok(PairVerdict::Unknown);
    }
    let intersects = region1
        .iter()
        .zip(region2)
        .all(|(a, b)| a.intersects(b));
    if intersects {
        return Ok(PairVerdict::Same);
    }
    let dist_lower = box_distance(region1, region2)?.to_f64_dir(Dir::Down);
    let sep = 2.0f64
        .mul_dir(&r1.beta_up, Dir::Up)
        .add_dir(&2.0f64.mul_dir(&r2.beta_up, Dir::Up), Dir::Up);
    if dist_lower > sep {
        return Ok(PairVerdict::Distinct);
    }
    Ok(PairVerdict::Unknown)
}

/// Full pairwise verdict table, row-major and symmetric.
pub type VerdictMatrix = Vec<Vec<PairVerdict>>;

/// Pairwise verdict matrix plus the partition induced by the transitive
/// closure of `Same`. Deterministic given input order: clusters are listed
/// by their smallest member index.
pub fn cluster_solutions<S: Endpoint>(
    regions: &[IntervalVector<S>],
    results: &[CertResult],
) -> Result<(VerdictMatrix, Vec<Vec<usize>>)> {
    if regions.len() != results.len() {
        return Err(Error::DimensionMismatch);
    }
    let k = regions.len();
    let mut matrix = alloc::vec![alloc::vec![PairVerdict::Unknown; k]; k];
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..k {
        matrix[i][i] = if results[i].certified {
            PairVerdict::Same
        } else {
            PairVerdict::Unknown
        };
        for j in (i + 1)..k {
            let v = classify_pair(&regions[i], &regions[j], &results[i], &results[j])?;
            matrix[i][j] = v;
            matrix[j][i] = v;
            if v == PairVerdict::Same {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<Option<usize>> = alloc::vec![None; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        match roots[r] {
            Some(c) => clusters[c].push(i),
            None => {
                roots[r] = Some(clusters.len());
                clusters.push(alloc::vec![i]);
            }
        }
    }
    Ok((matrix, clusters))
}
