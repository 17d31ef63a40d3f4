//! Property tests: every interval operation must contain the exact rational
//! result of the corresponding point operation, at hardware-double and at
//! reduced arbitrary precision.

// The oracle compares matrices entry-by-entry in index lockstep.
#![allow(clippy::needless_range_loop)]

use alphabox_core::linalg::IntervalMatrix;
use alphabox_core::polysys::Polynomial;
use alphabox_core::{ComplexInterval, Dir, MpFloat, RealInterval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Dyadic f64 from (numerator, half exponent): n / 2^k with small k so all
/// inputs are exact and the rational oracle is straightforward.
fn dyadic(n: i32, k: u8) -> f64 {
    n as f64 / f64::from(1u32 << k)
}

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("test values are finite")
}

fn interval_strategy() -> impl Strategy<Value = (f64, f64)> {
    (any::<i32>(), 0u8..=8, any::<i32>(), 0u8..=8).prop_map(|(a, ka, b, kb)| {
        let x = dyadic(a, ka);
        let y = dyadic(b, kb);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    })
}

/// The four corner rationals of an operand pair.
fn corners(a: (f64, f64), b: (f64, f64)) -> Vec<(BigRational, BigRational)> {
    let mut v = Vec::new();
    for x in [a.0, a.1] {
        for y in [b.0, b.1] {
            v.push((rat(x), rat(y)));
        }
    }
    v
}

fn contains_rat(i: &RealInterval<f64>, v: &BigRational) -> bool {
    rat(*i.lo()) <= *v && *v <= rat(*i.hi())
}

fn contains_rat_mp(i: &RealInterval<MpFloat>, v: &BigRational) -> bool {
    // MpFloat endpoints at <= 53 bits convert to f64 exactly unless they
    // left the f64 range, in which case directed conversion keeps the
    // bound on the correct side.
    let lo = rat(i.lo().to_f64_dir(Dir::Down));
    let hi = rat(i.hi().to_f64_dir(Dir::Up));
    lo <= *v && *v <= hi
}

fn mp_interval(lo: f64, hi: f64, bits: u32) -> RealInterval<MpFloat> {
    RealInterval::new(
        MpFloat::from_f64_dir(lo, bits, Dir::Down),
        MpFloat::from_f64_dir(hi, bits, Dir::Up),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn real_ops_contain_rational_corners(a in interval_strategy(), b in interval_strategy()) {
        let ia = RealInterval::new(a.0, a.1);
        let ib = RealInterval::new(b.0, b.1);
        let sum = ia.add(&ib).unwrap();
        let diff = ia.sub(&ib).unwrap();
        let prod = ia.mul(&ib).unwrap();
        for (x, y) in corners(a, b) {
            prop_assert!(contains_rat(&sum, &(&x + &y)));
            prop_assert!(contains_rat(&diff, &(&x - &y)));
            prop_assert!(contains_rat(&prod, &(&x * &y)));
        }
        if !ib.contains_zero() {
            let quot = ia.div(&ib).unwrap();
            for (x, y) in corners(a, b) {
                prop_assert!(contains_rat(&quot, &(&x / &y)));
            }
        }
    }

    #[test]
    fn reduced_precision_ops_still_contain(a in interval_strategy(), b in interval_strategy()) {
        // 24-bit arithmetic rounds coarsely; containment must survive.
        let bits = 24;
        let ia = mp_interval(a.0, a.1, bits);
        let ib = mp_interval(b.0, b.1, bits);
        let sum = ia.add(&ib).unwrap();
        let diff = ia.sub(&ib).unwrap();
        let prod = ia.mul(&ib).unwrap();
        for (x, y) in corners(a, b) {
            prop_assert!(contains_rat_mp(&sum, &(&x + &y)));
            prop_assert!(contains_rat_mp(&diff, &(&x - &y)));
            prop_assert!(contains_rat_mp(&prod, &(&x * &y)));
        }
        if *ib.lo() > MpFloat::from_u128_dir(0, bits, Dir::Down)
            || *ib.hi() < MpFloat::from_u128_dir(0, bits, Dir::Down)
        {
            let quot = ia.div(&ib).unwrap();
            for (x, y) in corners(a, b) {
                if !y.is_zero() {
                    prop_assert!(contains_rat_mp(&quot, &(&x / &y)));
                }
            }
        }
    }

    #[test]
    fn sqrt_brackets_rational_squares(a in interval_strategy()) {
        let lo = a.0.abs();
        let hi = a.1.abs().max(lo);
        let i = RealInterval::new(lo, hi);
        let s = i.sqrt().unwrap();
        // The endpoints squared (exactly, in rationals) must bracket.
        let slo = rat(*s.lo());
        let shi = rat(*s.hi());
        prop_assert!(&slo * &slo <= rat(lo));
        prop_assert!(&shi * &shi >= rat(hi));
    }

    #[test]
    fn complex_mul_contains_corner_products(
        ar in interval_strategy(), ai in interval_strategy(),
        br in interval_strategy(), bi in interval_strategy(),
    ) {
        let a = ComplexInterval::new(
            RealInterval::new(ar.0, ar.1),
            RealInterval::new(ai.0, ai.1),
        );
        let b = ComplexInterval::new(
            RealInterval::new(br.0, br.1),
            RealInterval::new(bi.0, bi.1),
        );
        let p = a.mul(&b).unwrap();
        for (x, y) in corners(ar, ai) {
            for (u, v) in corners(br, bi) {
                // (x + iy)(u + iv) = xu - yv + i(xv + yu).
                let re = &x * &u - &y * &v;
                let im = &x * &v + &y * &u;
                prop_assert!(contains_rat(p.re(), &re));
                prop_assert!(contains_rat(p.im(), &im));
            }
        }
    }

    #[test]
    fn polynomial_closure_contains_corner_evaluations(
        x in interval_strategy(), y in interval_strategy(),
        c0 in -16i32..=16, c1 in -16i32..=16, c2 in -16i32..=16,
    ) {
        // f = c2 x^2 y + c1 y + c0 over the box (x, y).
        let mut p = Polynomial::<f64>::new(2);
        p.add_term(vec![2, 1], ComplexInterval::point(c2 as f64, 0.0)).unwrap();
        p.add_term(vec![0, 1], ComplexInterval::point(c1 as f64, 0.0)).unwrap();
        p.add_term(vec![0, 0], ComplexInterval::point(c0 as f64, 0.0)).unwrap();
        if p.is_zero() {
            return Ok(());
        }
        let bx = ComplexInterval::new(
            RealInterval::new(x.0, x.1),
            RealInterval::new(0.0, 0.0),
        );
        let by = ComplexInterval::new(
            RealInterval::new(y.0, y.1),
            RealInterval::new(0.0, 0.0),
        );
        let v = p.eval_closure(&[bx, by]).unwrap();
        for (xi, yi) in corners(x, y) {
            let exact = rat(c2 as f64) * &xi * &xi * &yi
                + rat(c1 as f64) * &yi
                + rat(c0 as f64);
            prop_assert!(
                contains_rat(v.re(), &exact),
                "eval box {:?} misses {exact} at corner ({xi}, {yi})",
                v.re()
            );
            prop_assert!(contains_rat(v.im(), &BigRational::zero()));
        }
    }

    #[test]
    fn inverse_contains_rational_inverse(
        a in -64i32..=64, b in -64i32..=64,
        c in -64i32..=64, d in -64i32..=64,
    ) {
        // Random integer 2x2 point matrices with comfortably nonzero
        // determinant: the interval inverse must contain the exact one.
        let det = i64::from(a) * i64::from(d) - i64::from(b) * i64::from(c);
        prop_assume!(det != 0);
        let m = IntervalMatrix::new(2, 2, vec![
            ComplexInterval::point(a as f64, 0.0),
            ComplexInterval::point(b as f64, 0.0),
            ComplexInterval::point(c as f64, 0.0),
            ComplexInterval::point(d as f64, 0.0),
        ]).unwrap();
        let inv = m.invert().unwrap();
        let rdet = BigRational::new(BigInt::from(det), BigInt::one());
        let exact = [
            [rat(d as f64) / &rdet, rat(-(b as f64)) / &rdet],
            [rat(-(c as f64)) / &rdet, rat(a as f64) / &rdet],
        ];
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!(
                    contains_rat(inv.at(i, j).re(), &exact[i][j]),
                    "inverse entry ({i},{j}) {:?} misses {}",
                    inv.at(i, j).re(),
                    exact[i][j]
                );
                prop_assert!(contains_rat(inv.at(i, j).im(), &BigRational::zero()));
            }
        }
    }

    #[test]
    fn mp_parse_brackets_random_decimals(
        int_part in 0u64..1_000_000, frac in 0u64..1_000_000, exp in -12i32..=12,
        bits in 16u32..=96,
    ) {
        let text = format!("{int_part}.{frac:06}e{exp}");
        let down = MpFloat::parse_decimal(&text, bits, Dir::Down).unwrap();
        let up = MpFloat::parse_decimal(&text, bits, Dir::Up).unwrap();
        // Exact rational value of the decimal string.
        let mantissa = BigInt::from(int_part) * BigInt::from(1_000_000u64) + BigInt::from(frac);
        let shift = exp - 6;
        let exact = if shift >= 0 {
            BigRational::new(mantissa * BigInt::from(10u8).pow(shift as u32), BigInt::one())
        } else {
            BigRational::new(mantissa, BigInt::from(10u8).pow((-shift) as u32))
        };
        let lo = rat(down.to_f64_dir(Dir::Down));
        let hi = rat(up.to_f64_dir(Dir::Up));
        prop_assert!(lo <= exact, "lower bound {lo} above exact {exact} for {text}");
        prop_assert!(exact <= hi, "upper bound {hi} below exact {exact} for {text}");
        prop_assert!(down <= up);
    }

    #[test]
    fn mig_mag_bracket_sampled_moduli(
        re in interval_strategy(), im in interval_strategy(),
    ) {
        let z = ComplexInterval::new(
            RealInterval::new(re.0, re.1),
            RealInterval::new(im.0, im.1),
        );
        let mig_sq = rat(z.mig_sq());
        let mag_sq = rat(z.mag_sq());
        // Sample the box on a coarse grid; |z|^2 is exact in rationals.
        for tx in 0..=4 {
            for ty in 0..=4 {
                let x = re.0 + (re.1 - re.0) * (tx as f64) / 4.0;
                let y = im.0 + (im.1 - im.0) * (ty as f64) / 4.0;
                let m = rat(x) * rat(x) + rat(y) * rat(y);
                prop_assert!(mig_sq <= m, "mig_sq {mig_sq} above |{x}+{y}i|^2");
                prop_assert!(m <= mag_sq, "mag_sq {mag_sq} below |{x}+{y}i|^2");
            }
        }
        // The square roots are rounded toward the safe side: mig^2 never
        // exceeds mig_sq and mag^2 never undershoots mag_sq.
        let mg = rat(z.mig());
        let mag = rat(z.mag());
        prop_assert!(&mg * &mg <= mig_sq);
        prop_assert!(&mag * &mag >= mag_sq);
    }
}
