//! Endpoint abstraction: the numbers intervals are made of.
//!
//! An [`Endpoint`] supplies arithmetic rounded in a caller-chosen direction,
//! plus round-to-nearest variants for the non-certified Newton path. Two
//! backends implement it: hardware `f64` (this module) and the
//! arbitrary-precision [`crate::mp::MpFloat`].
//!
//! The `f64` backend never touches the FPU rounding mode. Each operation
//! computes the nearest-rounded result together with an exact residual
//! (error-free transformations: TwoSum for addition, an fma-based residual
//! for multiplication, division, and square root) and nudges the result one
//! ulp outward only when the residual proves the true value lies on the far
//! side. Exact results are returned unchanged, so dyadic arithmetic keeps
//! zero-width intervals, and every returned value is the tightest sound
//! bound except in a handful of extreme-magnitude corners where it widens by
//! one ulp to stay sound.

use crate::error::{Error, Result};
use crate::mp::MpFloat;
use alloc::string::ToString;

/// Rounding direction for a directed operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    /// Round toward negative infinity (lower endpoints).
    Down,
    /// Round toward positive infinity (upper endpoints).
    Up,
}

/// A number type usable as an interval endpoint.
///
/// `bits` parameters are the mantissa width for the arbitrary-precision
/// backend; the `f64` backend ignores them (its width is always 53).
/// Directed operations must return a value on the requested side of the
/// exact result; nearest operations are ordinary rounding and are used only
/// on the non-certified (Newton refinement) path.
pub trait Endpoint: Clone + PartialEq + PartialOrd + core::fmt::Debug {
    fn zero(bits: u32) -> Self;
    fn one(bits: u32) -> Self;
    fn from_u128_dir(v: u128, bits: u32, dir: Dir) -> Self;
    fn from_f64_dir(v: f64, bits: u32, dir: Dir) -> Self;
    /// Parse a decimal string (scientific notation allowed), rounding the
    /// exact decimal value in `dir`.
    fn parse_decimal(s: &str, bits: u32, dir: Dir) -> Result<Self>;
    fn precision_bits(&self) -> u32;

    fn add_dir(&self, rhs: &Self, dir: Dir) -> Self;
    fn sub_dir(&self, rhs: &Self, dir: Dir) -> Self;
    fn mul_dir(&self, rhs: &Self, dir: Dir) -> Self;
    fn div_dir(&self, rhs: &Self, dir: Dir) -> Self;
    /// Directed square root; the operand must be nonnegative.
    fn sqrt_dir(&self, dir: Dir) -> Self;

    fn add_near(&self, rhs: &Self) -> Self;
    fn sub_near(&self, rhs: &Self) -> Self;
    fn mul_near(&self, rhs: &Self) -> Self;
    fn div_near(&self, rhs: &Self) -> Self;

    /// Exact negation.
    fn neg_val(&self) -> Self;
    /// Exact absolute value.
    fn abs_val(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;

    /// Convert to `f64`, rounding in `dir` (saturating to infinities on
    /// overflow so the direction contract still holds).
    fn to_f64_dir(&self, dir: Dir) -> f64;
    /// Convert to `f64` with nearest rounding (for display and Newton).
    fn to_f64_near(&self) -> f64;

    fn min_val(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
    fn max_val(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

/// Below this magnitude an fma residual of zero no longer proves exactness
/// (the residual itself may have underflowed), so the f64 backend widens
/// conservatively instead of trusting it. 2^-969.
const RESIDUAL_TRUST_FLOOR: f64 = f64::from_bits(54u64 << 52);

/// Nearest result was infinite but both operands were finite: the true value
/// is beyond MAX, so the bound toward zero is +/-MAX and the bound away from
/// zero is the infinity itself.
fn saturate_overflow(s: f64, dir: Dir) -> f64 {
    match (s > 0.0, dir) {
        (true, Dir::Up) => f64::INFINITY,
        (true, Dir::Down) => f64::MAX,
        (false, Dir::Up) => -f64::MAX,
        (false, Dir::Down) => f64::NEG_INFINITY,
    }
}

/// Nearest result underflowed to zero but the true value is nonzero with the
/// given sign: bound by zero on one side and the smallest subnormal on the
/// other.
fn saturate_underflow(negative: bool, dir: Dir) -> f64 {
    match (negative, dir) {
        (false, Dir::Down) => 0.0,
        (false, Dir::Up) => f64::from_bits(1),
        (true, Dir::Down) => -f64::from_bits(1),
        (true, Dir::Up) => 0.0,
    }
}

/// One ulp outward in `dir`; the sound fallback when the residual is
/// unusable (NaN from overflowed error terms, or inside the underflow zone
/// where a zero residual proves nothing).
fn nudge(s: f64, dir: Dir) -> f64 {
    match dir {
        Dir::Down => s.next_down(),
        Dir::Up => s.next_up(),
    }
}

/// Final placement given a nearest-rounded `s` and an exact residual `err`
/// with the same sign as `true_value - s`.
fn place(s: f64, err: f64, dir: Dir) -> f64 {
    if err == 0.0 {
        s
    } else if err.is_nan() {
        nudge(s, dir)
    } else {
        match dir {
            Dir::Down => {
                if err < 0.0 {
                    s.next_down()
                } else {
                    s
                }
            }
            Dir::Up => {
                if err > 0.0 {
                    s.next_up()
                } else {
                    s
                }
            }
        }
    }
}

fn f64_add_dir(a: f64, b: f64, dir: Dir) -> f64 {
    let s = a + b;
    if s.is_nan() {
        // Only reachable as inf - inf on operands that were themselves
        // saturated; the sound answer is unbounded in both directions.
        return match dir {
            Dir::Down => f64::NEG_INFINITY,
            Dir::Up => f64::INFINITY,
        };
    }
    if s.is_infinite() {
        if a.is_finite() && b.is_finite() {
            return saturate_overflow(s, dir);
        }
        return s;
    }
    if a.is_infinite() || b.is_infinite() {
        return s;
    }
    // TwoSum: err is the exact rounding error of a + b.
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    place(s, err, dir)
}

fn f64_mul_dir(a: f64, b: f64, dir: Dir) -> f64 {
    if a == 0.0 || b == 0.0 {
        // Interval convention: 0 times anything (including an unbounded
        // endpoint) is 0.
        return 0.0;
    }
    let p = a * b;
    if p.is_nan() {
        return match dir {
            Dir::Down => f64::NEG_INFINITY,
            Dir::Up => f64::INFINITY,
        };
    }
    if p.is_infinite() {
        if a.is_finite() && b.is_finite() {
            return saturate_overflow(p, dir);
        }
        return p;
    }
    if a.is_infinite() || b.is_infinite() {
        return p;
    }
    if p == 0.0 {
        return saturate_underflow(a.is_sign_negative() != b.is_sign_negative(), dir);
    }
    let err = libm::fma(a, b, -p);
    if err == 0.0 && p.abs() < RESIDUAL_TRUST_FLOOR {
        return nudge(p, dir);
    }
    place(p, err, dir)
}

fn f64_div_dir(a: f64, b: f64, dir: Dir) -> f64 {
    if a == 0.0 && b != 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_nan() {
        return match dir {
            Dir::Down => f64::NEG_INFINITY,
            Dir::Up => f64::INFINITY,
        };
    }
    if q.is_infinite() {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return saturate_overflow(q, dir);
        }
        return q;
    }
    if a.is_infinite() || b.is_infinite() {
        return q;
    }
    if q == 0.0 {
        return saturate_underflow(a.is_sign_negative() != b.is_sign_negative(), dir);
    }
    // Residual r = q*b - a; the true quotient is on the opposite side of q
    // from r/b.
    let r = libm::fma(q, b, -a);
    if r == 0.0 {
        if q.abs() < RESIDUAL_TRUST_FLOOR || a.abs() < RESIDUAL_TRUST_FLOOR {
            return nudge(q, dir);
        }
        return q;
    }
    let err_positive = (r > 0.0) != (b > 0.0);
    match dir {
        Dir::Down => {
            if err_positive {
                q
            } else {
                q.next_down()
            }
        }
        Dir::Up => {
            if err_positive {
                q.next_up()
            } else {
                q
            }
        }
    }
}

fn f64_sqrt_dir(a: f64, dir: Dir) -> f64 {
    debug_assert!(a >= 0.0, "sqrt of a negative endpoint");
    if a == 0.0 {
        return 0.0;
    }
    if a.is_infinite() {
        return a;
    }
    let s = libm::sqrt(a);
    // Residual r = s*s - a decides which side of the true root s is on.
    let r = libm::fma(s, s, -a);
    if r == 0.0 {
        if a < RESIDUAL_TRUST_FLOOR {
            return nudge(s, dir);
        }
        return s;
    }
    match dir {
        Dir::Down => {
            if r > 0.0 {
                s.next_down()
            } else {
                s
            }
        }
        Dir::Up => {
            if r < 0.0 {
                s.next_up()
            } else {
                s
            }
        }
    }
}

impl Endpoint for f64 {
    fn zero(_bits: u32) -> Self {
        0.0
    }
    fn one(_bits: u32) -> Self {
        1.0
    }
    fn from_u128_dir(v: u128, _bits: u32, dir: Dir) -> Self {
        MpFloat::from_u128_dir(v, 128, dir).to_f64_dir(dir)
    }
    fn from_f64_dir(v: f64, _bits: u32, _dir: Dir) -> Self {
        v
    }
    fn parse_decimal(s: &str, _bits: u32, dir: Dir) -> Result<Self> {
        // Parse exactly at 53 bits, then the conversion to f64 is exact.
        let m = MpFloat::parse_decimal(s, 53, dir)?;
        Ok(m.to_f64_dir(dir))
    }
    fn precision_bits(&self) -> u32 {
        53
    }

    fn add_dir(&self, rhs: &Self, dir: Dir) -> Self {
        f64_add_dir(*self, *rhs, dir)
    }
    fn sub_dir(&self, rhs: &Self, dir: Dir) -> Self {
        f64_add_dir(*self, -*rhs, dir)
    }
    fn mul_dir(&self, rhs: &Self, dir: Dir) -> Self {
        f64_mul_dir(*self, *rhs, dir)
    }
    fn div_dir(&self, rhs: &Self, dir: Dir) -> Self {
        f64_div_dir(*self, *rhs, dir)
    }
    fn sqrt_dir(&self, dir: Dir) -> Self {
        f64_sqrt_dir(*self, dir)
    }

    fn add_near(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_near(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_near(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_near(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn neg_val(&self) -> Self {
        -self
    }
    fn abs_val(&self) -> Self {
        // f64::abs is std-only; clear the sign bit directly.
        f64::from_bits(self.to_bits() & !(1u64 << 63))
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn to_f64_dir(&self, _dir: Dir) -> f64 {
        *self
    }
    fn to_f64_near(&self) -> f64 {
        *self
    }
}

/// Parse error helper shared by both backends.
pub(crate) fn bad_number(s: &str) -> Error {
    Error::ParseError("invalid decimal number: ".to_string() + s)
}
