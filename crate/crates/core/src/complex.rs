//! Rectangular complex intervals: an interval for the real part and one for
//! the imaginary part.

use crate::error::{Error, Result};
use crate::interval::{PrecisionContext, RealInterval};
use crate::scalar::{Dir, Endpoint};

/// A complex box `Re + i*Im`. Containment: for `z1 in a`, `z2 in b`,
/// `z1 op z2` lies in `a op b` for the four arithmetic operations.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval<S: Endpoint> {
    re: RealInterval<S>,
    im: RealInterval<S>,
}

impl<S: Endpoint> ComplexInterval<S> {
    pub fn new(re: RealInterval<S>, im: RealInterval<S>) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(re: S, im: S) -> Self {
        ComplexInterval {
            re: RealInterval::point(re),
            im: RealInterval::point(im),
        }
    }

    pub fn zero(ctx: PrecisionContext) -> Self {
        ComplexInterval {
            re: RealInterval::zero(ctx),
            im: RealInterval::zero(ctx),
        }
    }

    pub fn one(ctx: PrecisionContext) -> Self {
        ComplexInterval {
            re: RealInterval::one(ctx),
            im: RealInterval::zero(ctx),
        }
    }

    /// Tightest box around an exact decimal complex number.
    pub fn parse_point(re: &str, im: &str, ctx: PrecisionContext) -> Result<Self> {
        Ok(ComplexInterval {
            re: RealInterval::parse_point(re, ctx)?,
            im: RealInterval::parse_point(im, ctx)?,
        })
    }

    pub fn from_f64s(re: f64, im: f64, ctx: PrecisionContext) -> Self {
        ComplexInterval {
            re: RealInterval::from_f64(re, ctx),
            im: RealInterval::from_f64(im, ctx),
        }
    }

    pub fn re(&self) -> &RealInterval<S> {
        &self.re
    }

    pub fn im(&self) -> &RealInterval<S> {
        &self.im
    }

    pub fn is_dual(&self) -> bool {
        self.re.is_dual() || self.im.is_dual()
    }

    /// Componentwise Kaucher dual tag.
    pub fn dual(&self) -> Self {
        ComplexInterval {
            re: self.re.dual(),
            im: self.im.dual(),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexInterval {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexInterval {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(ComplexInterval {
            re: self.re.add(&rhs.re)?,
            im: self.im.add(&rhs.im)?,
        })
    }

    /// Subtraction; `a - dual(a)` cancels to the exact zero box via the
    /// componentwise Kaucher rule.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(ComplexInterval {
            re: self.re.sub(&rhs.re)?,
            im: self.im.sub(&rhs.im)?,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let rr = self.re.mul(&rhs.re)?;
        let ii = self.im.mul(&rhs.im)?;
        let ri = self.re.mul(&rhs.im)?;
        let ir = self.im.mul(&rhs.re)?;
        Ok(ComplexInterval {
            re: rr.sub(&ii)?,
            im: ri.add(&ir)?,
        })
    }

    /// `|z|^2` as a tight real interval (componentwise squares).
    pub fn abs_sq(&self) -> Result<RealInterval<S>> {
        self.re.square()?.add(&self.im.square()?)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if self.is_dual() || rhs.is_dual() {
            return Err(Error::DualMisuse);
        }
        let den = rhs.abs_sq()?;
        if den.contains_zero() {
            return Err(Error::DivisionByZeroInterval);
        }
        let num = self.mul(&rhs.conj())?;
        Ok(ComplexInterval {
            re: num.re.div(&den)?,
            im: num.im.div(&den)?,
        })
    }

    /// Scale by a real interval.
    pub fn mul_real(&self, rhs: &RealInterval<S>) -> Result<Self> {
        Ok(ComplexInterval {
            re: self.re.mul(rhs)?,
            im: self.im.mul(rhs)?,
        })
    }

    /// Lower bound on `min |z|^2` over the box (no square root taken;
    /// norm accumulations sum these directly).
    pub fn mig_sq(&self) -> S {
        let r = self.re.mig();
        let i = self.im.mig();
        r.mul_dir(&r, Dir::Down)
            .add_dir(&i.mul_dir(&i, Dir::Down), Dir::Down)
    }

    /// Upper bound on `max |z|^2` over the box.
    pub fn mag_sq(&self) -> S {
        let r = self.re.mag();
        let i = self.im.mag();
        r.mul_dir(&r, Dir::Up)
            .add_dir(&i.mul_dir(&i, Dir::Up), Dir::Up)
    }

    /// Lower bound on `min |z|` over the box; exact for axis-aligned boxes
    /// up to the final rounding.
    pub fn mig(&self) -> S {
        let r = self.re.mig();
        let i = self.im.mig();
        r.mul_dir(&r, Dir::Down)
            .add_dir(&i.mul_dir(&i, Dir::Down), Dir::Down)
            .sqrt_dir(Dir::Down)
    }

    /// Upper bound on `max |z|` over the box.
    pub fn mag(&self) -> S {
        let r = self.re.mag();
        let i = self.im.mag();
        r.mul_dir(&r, Dir::Up)
            .add_dir(&i.mul_dir(&i, Dir::Up), Dir::Up)
            .sqrt_dir(Dir::Up)
    }

    pub fn contains(&self, re: &S, im: &S) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        Some(ComplexInterval {
            re: self.re.intersect(&other.re)?,
            im: self.im.intersect(&other.im)?,
        })
    }

    pub fn hull(&self, other: &Self) -> Self {
        ComplexInterval {
            re: self.re.hull(&other.re),
            im: self.im.hull(&other.im),
        }
    }

    /// Box `[p - r, p + r]` in each component.
    pub fn widen(&self, r: &S) -> Self {
        ComplexInterval {
            re: self.re.widen(r),
            im: self.im.widen(r),
        }
    }

    pub fn midpoint(&self) -> (S, S) {
        (self.re.midpoint(), self.im.midpoint())
    }

    pub fn is_point(&self) -> bool {
        self.re.is_point() && self.im.is_point()
    }

    /// True only for the exact zero box.
    pub fn is_point_zero(&self) -> bool {
        self.is_point() && self.re.lo().is_zero() && self.im.lo().is_zero()
    }

    pub fn precision_bits(&self) -> u32 {
        self.re.lo().precision_bits().max(self.im.lo().precision_bits())
    }
}
