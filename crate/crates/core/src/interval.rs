//! Real intervals with outward rounding and the two Kaucher dual rules.

use crate::error::{Error, Result};
use crate::scalar::{Dir, Endpoint};

/// Working-precision setting shared by a whole computation.
///
/// The backend is chosen by the scalar type parameter (`f64` for hardware
/// double, [`crate::MpFloat`] for arbitrary precision); the context carries
/// the mantissa width handed to scalar constructors. For the hardware-double
/// backend the width is fixed at 53 and the context value is inert.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    bits: u32,
}

impl PrecisionContext {
    /// Hardware `f64`: 53 mantissa bits.
    pub const fn hardware_double() -> Self {
        PrecisionContext { bits: 53 }
    }

    /// Arbitrary-precision backend at the given mantissa width.
    pub const fn arbitrary(bits: u32) -> Self {
        PrecisionContext {
            bits: if bits < 2 { 2 } else { bits },
        }
    }

    pub const fn bits(&self) -> u32 {
        self.bits
    }
}

/// A closed real interval `[lo, hi]`, optionally tagged as a Kaucher dual.
///
/// The dual tag never reorders endpoints; it only licenses the two
/// cancellation identities `a - dual(a) = [0,0]` and `a / dual(a) = [1,1]`.
/// Any other combination involving a dual operand is a [`Error::DualMisuse`].
#[derive(Clone, Debug, PartialEq)]
pub struct RealInterval<S: Endpoint> {
    lo: S,
    hi: S,
    dual: bool,
}

impl<S: Endpoint> RealInterval<S> {
    /// Construct from ordered endpoints. Panics if `lo > hi`: that is a
    /// caller bug, not a data condition.
    pub fn new(lo: S, hi: S) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi, dual: false }
    }

    pub fn point(v: S) -> Self {
        RealInterval { lo: v.clone(), hi: v, dual: false }
    }

    pub fn zero(ctx: PrecisionContext) -> Self {
        Self::point(S::zero(ctx.bits()))
    }

    pub fn one(ctx: PrecisionContext) -> Self {
        Self::point(S::one(ctx.bits()))
    }

    /// Tightest interval containing the exact value of an `f64` at this
    /// precision (exact when the precision is at least 53 bits).
    pub fn from_f64(v: f64, ctx: PrecisionContext) -> Self {
        Self::new(
            S::from_f64_dir(v, ctx.bits(), Dir::Down),
            S::from_f64_dir(v, ctx.bits(), Dir::Up),
        )
    }

    /// Tightest interval containing an exact decimal value.
    pub fn parse_point(text: &str, ctx: PrecisionContext) -> Result<Self> {
        Ok(Self::new(
            S::parse_decimal(text, ctx.bits(), Dir::Down)?,
            S::parse_decimal(text, ctx.bits(), Dir::Up)?,
        ))
    }

    pub fn from_u128(v: u128, ctx: PrecisionContext) -> Self {
        Self::new(
            S::from_u128_dir(v, ctx.bits(), Dir::Down),
            S::from_u128_dir(v, ctx.bits(), Dir::Up),
        )
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// Toggle the Kaucher dual tag: `dual(dual(a)) = a`.
    pub fn dual(&self) -> Self {
        let mut r = self.clone();
        r.dual = !r.dual;
        r
    }

    fn require_plain(&self) -> Result<()> {
        if self.dual {
            Err(Error::DualMisuse)
        } else {
            Ok(())
        }
    }

    fn same_endpoints(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }

    fn result_bits(&self, other: &Self) -> u32 {
        self.lo.precision_bits().max(other.lo.precision_bits())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if rhs.dual && !self.dual {
            // The negated-dual form of subtractive cancellation:
            // I + (-dual(I)) = [0, 0].
            if self.lo == rhs.hi.neg_val() && self.hi == rhs.lo.neg_val() {
                return Ok(Self::point(S::zero(self.result_bits(rhs))));
            }
            return Err(Error::DualMisuse);
        }
        self.require_plain()?;
        rhs.require_plain()?;
        Ok(Self::new(
            self.lo.add_dir(&rhs.lo, Dir::Down),
            self.hi.add_dir(&rhs.hi, Dir::Up),
        ))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if rhs.dual && !self.dual {
            if self.same_endpoints(rhs) {
                return Ok(Self::point(S::zero(self.result_bits(rhs))));
            }
            return Err(Error::DualMisuse);
        }
        self.require_plain()?;
        rhs.require_plain()?;
        Ok(Self::new(
            self.lo.sub_dir(&rhs.hi, Dir::Down),
            self.hi.sub_dir(&rhs.lo, Dir::Up),
        ))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.require_plain()?;
        rhs.require_plain()?;
        let lo = self
            .lo
            .mul_dir(&rhs.lo, Dir::Down)
            .min_val(self.lo.mul_dir(&rhs.hi, Dir::Down))
            .min_val(self.hi.mul_dir(&rhs.lo, Dir::Down))
            .min_val(self.hi.mul_dir(&rhs.hi, Dir::Down));
        let hi = self
            .lo
            .mul_dir(&rhs.lo, Dir::Up)
            .max_val(self.lo.mul_dir(&rhs.hi, Dir::Up))
            .max_val(self.hi.mul_dir(&rhs.lo, Dir::Up))
            .max_val(self.hi.mul_dir(&rhs.hi, Dir::Up));
        Ok(Self::new(lo, hi))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.dual && !self.dual {
            if self.same_endpoints(rhs) {
                if rhs.contains_zero() {
                    return Err(Error::DivisionByZeroInterval);
                }
                return Ok(Self::point(S::one(self.result_bits(rhs))));
            }
            return Err(Error::DualMisuse);
        }
        self.require_plain()?;
        rhs.require_plain()?;
        if rhs.contains_zero() {
            return Err(Error::DivisionByZeroInterval);
        }
        let lo = self
            .lo
            .div_dir(&rhs.lo, Dir::Down)
            .min_val(self.lo.div_dir(&rhs.hi, Dir::Down))
            .min_val(self.hi.div_dir(&rhs.lo, Dir::Down))
            .min_val(self.hi.div_dir(&rhs.hi, Dir::Down));
        let hi = self
            .lo
            .div_dir(&rhs.lo, Dir::Up)
            .max_val(self.lo.div_dir(&rhs.hi, Dir::Up))
            .max_val(self.hi.div_dir(&rhs.lo, Dir::Up))
            .max_val(self.hi.div_dir(&rhs.hi, Dir::Up));
        Ok(Self::new(lo, hi))
    }

    /// Exact negation; the dual tag travels with the interval so that
    /// `a + (-dual(a))` still cancels.
    pub fn neg(&self) -> Self {
        RealInterval {
            lo: self.hi.neg_val(),
            hi: self.lo.neg_val(),
            dual: self.dual,
        }
    }

    /// Square root; the interval must be nonnegative.
    pub fn sqrt(&self) -> Result<Self> {
        self.require_plain()?;
        assert!(
            !self.lo.is_negative(),
            "sqrt of an interval with negative endpoints"
        );
        Ok(Self::new(
            self.lo.sqrt_dir(Dir::Down),
            self.hi.sqrt_dir(Dir::Up),
        ))
    }

    /// Tight square: `[mig^2, mag^2]`, never the loose `self * self`.
    pub fn square(&self) -> Result<Self> {
        self.require_plain()?;
        let mig = self.mig();
        let mag = self.mag();
        Ok(Self::new(mig.mul_dir(&mig, Dir::Down), mag.mul_dir(&mag, Dir::Up)))
    }

    /// Nonnegative integer power by repeated multiplication (tight on
    /// sign-definite intervals, conservatively wide across zero).
    pub fn powi(&self, k: u32) -> Result<Self> {
        self.require_plain()?;
        let bits = self.lo.precision_bits();
        let mut acc = Self::point(S::one(bits));
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn contains_zero(&self) -> bool {
        let zero = S::zero(self.lo.precision_bits());
        self.lo <= zero && zero <= self.hi
    }

    /// Mignitude: exact lower bound on `|x|` over the interval.
    pub fn mig(&self) -> S {
        let zero = S::zero(self.lo.precision_bits());
        if self.lo > zero {
            self.lo.clone()
        } else if self.hi < zero {
            self.hi.neg_val()
        } else {
            zero
        }
    }

    /// Magnitude: exact upper bound on `|x|` over the interval.
    pub fn mag(&self) -> S {
        self.lo.abs_val().max_val(self.hi.abs_val())
    }

    pub fn contains(&self, x: &S) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Intersection, or `None` when empty (the distinguished Empty value;
    /// it never flows into arithmetic).
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        if !self.intersects(other) {
            return None;
        }
        let lo = self.lo.clone().max_val(other.lo.clone());
        let hi = self.hi.clone().min_val(other.hi.clone());
        Some(Self::new(lo, hi))
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self::new(
            self.lo.clone().min_val(other.lo.clone()),
            self.hi.clone().max_val(other.hi.clone()),
        )
    }

    pub fn midpoint(&self) -> S {
        let two = S::from_u128_dir(2, self.lo.precision_bits(), Dir::Up);
        self.lo.add_near(&self.hi).div_near(&two)
    }

    /// Radius from the midpoint, rounded so `midpoint +/- radius` encloses
    /// the interval.
    pub fn radius(&self) -> S {
        let mid = self.midpoint();
        let a = mid.sub_dir(&self.lo, Dir::Up);
        let b = self.hi.sub_dir(&mid, Dir::Up);
        a.max_val(b)
    }

    pub fn width(&self) -> S {
        self.hi.sub_dir(&self.lo, Dir::Up)
    }

    /// Symmetric enlargement by a nonnegative amount.
    pub fn widen(&self, r: &S) -> Self {
        debug_assert!(!r.is_negative());
        Self::new(self.lo.sub_dir(r, Dir::Down), self.hi.add_dir(r, Dir::Up))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}
