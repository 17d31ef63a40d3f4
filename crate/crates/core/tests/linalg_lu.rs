//! Interval LU factorization, validated solve/invert, norms, and box
//! distance. Dyadic point inputs must come through with zero-width results;
//! genuine intervals must produce enclosures.

use alphabox_core::linalg::{box_distance, vec_mag_norm, vec_mig_norm, IntervalMatrix};
use alphabox_core::{ComplexInterval, Error, PrecisionContext, RealInterval};

fn point(re: f64, im: f64) -> ComplexInterval<f64> {
    ComplexInterval::point(re, im)
}

fn real_box(lo: f64, hi: f64) -> ComplexInterval<f64> {
    ComplexInterval::new(RealInterval::new(lo, hi), RealInterval::new(0.0, 0.0))
}

fn mat(rows: usize, cols: usize, entries: &[(f64, f64)]) -> IntervalMatrix<f64> {
    let data = entries.iter().map(|&(re, im)| point(re, im)).collect();
    IntervalMatrix::new(rows, cols, data).unwrap()
}

fn assert_point_entry(m: &IntervalMatrix<f64>, i: usize, j: usize, re: f64, im: f64) {
    let e = m.at(i, j);
    assert!(e.is_point(), "entry ({i},{j}) is not a point: {e:?}");
    assert_eq!(*e.re().lo(), re, "entry ({i},{j}) real part");
    assert_eq!(*e.im().lo(), im, "entry ({i},{j}) imaginary part");
}

#[test]
fn lu_of_dyadic_point_matrix_is_exact() {
    let m = mat(2, 2, &[(2.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
    let f = m.lu_decompose().unwrap();
    assert_eq!(f.permutation, vec![0, 1]);
    assert_point_entry(&f.lower, 0, 0, 1.0, 0.0);
    assert_point_entry(&f.lower, 1, 0, 0.5, 0.0);
    assert_point_entry(&f.lower, 1, 1, 1.0, 0.0);
    assert_point_entry(&f.upper, 0, 0, 2.0, 0.0);
    assert_point_entry(&f.upper, 0, 1, 1.0, 0.0);
    assert_point_entry(&f.upper, 1, 0, 0.0, 0.0);
    assert_point_entry(&f.upper, 1, 1, 0.5, 0.0);
}

#[test]
fn invert_dyadic_matrices_exactly() {
    // inverse of [[2,1],[1,1]] is [[1,-1],[-1,2]].
    let m = mat(2, 2, &[(2.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
    let inv = m.invert().unwrap();
    assert_point_entry(&inv, 0, 0, 1.0, 0.0);
    assert_point_entry(&inv, 0, 1, -1.0, 0.0);
    assert_point_entry(&inv, 1, 0, -1.0, 0.0);
    assert_point_entry(&inv, 1, 1, 2.0, 0.0);
    // diag(2, 4) inverts to diag(0.5, 0.25).
    let d = mat(2, 2, &[(2.0, 0.0), (0.0, 0.0), (0.0, 0.0), (4.0, 0.0)]);
    let dinv = d.invert().unwrap();
    assert_point_entry(&dinv, 0, 0, 0.5, 0.0);
    assert_point_entry(&dinv, 1, 1, 0.25, 0.0);
    assert_point_entry(&dinv, 0, 1, 0.0, 0.0);
}

#[test]
fn pivoting_handles_zero_leading_entry() {
    // [[0,1],[2,0]] needs a row swap; inverse is [[0,0.5],[1,0]].
    let m = mat(2, 2, &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 0.0)]);
    let inv = m.invert().unwrap();
    assert_point_entry(&inv, 0, 0, 0.0, 0.0);
    assert_point_entry(&inv, 0, 1, 0.5, 0.0);
    assert_point_entry(&inv, 1, 0, 1.0, 0.0);
    assert_point_entry(&inv, 1, 1, 0.0, 0.0);
    let f = m.lu_decompose().unwrap();
    assert_eq!(f.permutation, vec![1, 0]);
}

#[test]
fn complex_inverse_is_exact_for_dyadic_entries() {
    // inverse of [[i,0],[0,2]] is [[-i,0],[0,0.5]].
    let m = mat(2, 2, &[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0), (2.0, 0.0)]);
    let inv = m.invert().unwrap();
    assert_point_entry(&inv, 0, 0, 0.0, -1.0);
    assert_point_entry(&inv, 1, 1, 0.5, 0.0);
}

#[test]
fn singular_enclosures_are_detected() {
    let rank1 = mat(2, 2, &[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
    assert_eq!(rank1.lu_decompose().unwrap_err(), Error::SingularEnclosure);
    let zero_col = mat(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
    assert_eq!(
        zero_col.lu_decompose().unwrap_err(),
        Error::SingularEnclosure
    );
    // An interval entry spanning zero on the whole first column counts as
    // singular: no pivot has positive mignitude.
    let data = vec![
        real_box(-1.0, 1.0),
        point(1.0, 0.0),
        real_box(-0.5, 0.5),
        point(1.0, 0.0),
    ];
    let spanning = IntervalMatrix::new(2, 2, data).unwrap();
    assert_eq!(
        spanning.lu_decompose().unwrap_err(),
        Error::SingularEnclosure
    );
}

#[test]
fn interval_matrix_inverse_encloses_point_inverses() {
    // [[ [2,2], 0 ], [ 0, [1,2] ]]: the inverse encloses diag(0.5, 1/t)
    // for every t in [1,2].
    let data = vec![
        point(2.0, 0.0),
        point(0.0, 0.0),
        point(0.0, 0.0),
        real_box(1.0, 2.0),
    ];
    let m = IntervalMatrix::new(2, 2, data).unwrap();
    let inv = m.invert().unwrap();
    assert_point_entry(&inv, 0, 0, 0.5, 0.0);
    // Complex division divides t * conj(t) by |t|^2 without exploiting the
    // dependency between the two, so the enclosure of 1/[1,2] is the
    // (deterministic, dyadic) [1,2]/[1,4] = [0.25, 2], not the tight
    // [0.5, 1]. Containment of every point inverse is the contract.
    let e = inv.at(1, 1);
    assert_eq!((*e.re().lo(), *e.re().hi()), (0.25, 2.0));
    for t in [1.0, 1.5, 2.0] {
        assert!(e.re().contains(&(1.0 / t)));
    }
}

#[test]
fn solve_encloses_every_point_system() {
    // A = [[ [2,3], 0 ], [ 1, 1 ]], b = (1, 0): x0 = 1/a00, x1 = -x0.
    let data = vec![
        real_box(2.0, 3.0),
        point(0.0, 0.0),
        point(1.0, 0.0),
        point(1.0, 0.0),
    ];
    let m = IntervalMatrix::new(2, 2, data).unwrap();
    let f = m.lu_decompose().unwrap();
    let b = vec![point(1.0, 0.0), point(0.0, 0.0)];
    let x = f.solve(&b).unwrap();
    for a00 in [2.0, 2.5, 3.0] {
        assert!(x[0].re().contains(&(1.0 / a00)));
        assert!(x[1].re().contains(&(-1.0 / a00)));
    }
    // The division enclosure of 1/[2,3] through conj/abs^2 is [2/9, 3/4].
    assert!(*x[0].re().lo() >= 2.0 / 9.0 - 1e-15);
    assert!(*x[0].re().hi() <= 0.75 + 1e-15);
}

#[test]
fn solve_rejects_zero_pivot_interval() {
    // Diagonal entry spans zero only in the second column after
    // elimination survives pivoting, so build it directly on the factors:
    // a 1x1 system with a zero-spanning entry cannot be factored at all.
    let data = vec![real_box(-1.0, 1.0)];
    let m = IntervalMatrix::new(1, 1, data).unwrap();
    assert_eq!(m.lu_decompose().unwrap_err(), Error::SingularEnclosure);
}

#[test]
fn matvec_and_mul_mat() {
    let m = mat(2, 2, &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)]);
    let v = vec![point(1.0, 0.0), point(1.0, 0.0)];
    let mv = m.matvec(&v).unwrap();
    assert!(mv[0].is_point() && *mv[0].re().lo() == 3.0);
    assert!(mv[1].is_point() && *mv[1].re().lo() == 7.0);
    let prod = m.mul_mat(&m).unwrap();
    assert_point_entry(&prod, 0, 0, 7.0, 0.0);
    assert_point_entry(&prod, 0, 1, 10.0, 0.0);
    assert_point_entry(&prod, 1, 0, 15.0, 0.0);
    assert_point_entry(&prod, 1, 1, 22.0, 0.0);
    assert_eq!(
        m.matvec(&[point(1.0, 0.0)]).unwrap_err(),
        Error::DimensionMismatch
    );
}

#[test]
fn identity_and_dimension_checks() {
    let id = IntervalMatrix::<f64>::identity(3, PrecisionContext::hardware_double());
    for i in 0..3 {
        for j in 0..3 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert_point_entry(&id, i, j, expect, 0.0);
        }
    }
    assert_eq!(
        IntervalMatrix::new(2, 2, vec![point(1.0, 0.0)]).unwrap_err(),
        Error::DimensionMismatch
    );
    let rect = mat(1, 2, &[(1.0, 0.0), (2.0, 0.0)]);
    assert_eq!(rect.lu_decompose().unwrap_err(), Error::DimensionMismatch);
}

#[test]
fn frobenius_norm_oracle() {
    let m = mat(2, 2, &[(3.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 4.0)]);
    assert_eq!(m.frob_mag_norm(), 5.0);
    let id = IntervalMatrix::<f64>::identity(4, PrecisionContext::hardware_double());
    assert_eq!(id.frob_mag_norm(), 2.0);
}

#[test]
fn vector_norm_oracles() {
    let v = vec![point(3.0, 0.0), point(0.0, 4.0)];
    assert_eq!(vec_mig_norm(&v), 5.0);
    assert_eq!(vec_mag_norm(&v), 5.0);
    // A zero-spanning component contributes nothing to the mignitude.
    let w = vec![real_box(-1.0, 1.0), point(0.0, 4.0)];
    assert_eq!(vec_mig_norm(&w), 4.0);
    assert!(vec_mag_norm(&w) >= 17f64.sqrt());
}

#[test]
fn box_distance_oracle() {
    // Distance between the unit boxes at 0 and at 4+4i (componentwise) is
    // sqrt(9 + 9) = 3 sqrt(2) in each of two coordinates: the full
    // two-coordinate distance is sqrt(18).
    let b1 = vec![real_box(0.0, 1.0), real_box(0.0, 1.0)];
    let b2 = vec![real_box(4.0, 5.0), real_box(4.0, 5.0)];
    let d = box_distance(&b1, &b2).unwrap();
    let near = 18f64.sqrt();
    assert!(d == near || d == near.next_down());
    // Overlapping boxes are at distance zero.
    let b3 = vec![real_box(0.5, 2.0), real_box(-1.0, 3.0)];
    assert_eq!(box_distance(&b1, &b3).unwrap(), 0.0);
    assert_eq!(
        box_distance(&b1, &[real_box(0.0, 1.0)]).unwrap_err(),
        Error::DimensionMismatch
    );
}

#[test]
fn inverse_times_matrix_encloses_identity() {
    // For a mildly widened matrix, Minv * M must enclose the identity.
    let eps = 1e-9;
    let data = vec![
        real_box(2.0 - eps, 2.0 + eps),
        real_box(1.0 - eps, 1.0 + eps),
        real_box(1.0 - eps, 1.0 + eps),
        real_box(1.0 - eps, 1.0 + eps),
    ];
    let m = IntervalMatrix::new(2, 2, data).unwrap();
    let inv = m.invert().unwrap();
    let prod = inv.mul_mat(&m).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!(
                prod.at(i, j).contains(&expect, &0.0),
                "product entry ({i},{j}) {:?} misses {expect}",
                prod.at(i, j)
            );
        }
    }
}
