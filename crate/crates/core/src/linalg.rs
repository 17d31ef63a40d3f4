//! Interval vectors and matrices over complex intervals: LU decomposition
//! with Kaucher-assisted elimination, inverse enclosures, and the norm
//! bounds the alpha machinery consumes.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::PrecisionContext;
use crate::scalar::{Dir, Endpoint};
use alloc::vec::Vec;

/// An ordered list of complex intervals.
pub type IntervalVector<S> = Vec<ComplexInterval<S>>;

/// Dense interval matrix: encloses the set of all point matrices with
/// entries chosen from the intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix<S: Endpoint> {
    rows: usize,
    cols: usize,
    data: Vec<ComplexInterval<S>>,
}

impl<S: Endpoint> IntervalMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<ComplexInterval<S>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(IntervalMatrix { rows, cols, data })
    }

    pub fn identity(n: usize, ctx: PrecisionContext) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(if i == j {
                    ComplexInterval::one(ctx)
                } else {
                    ComplexInterval::zero(ctx)
                });
            }
        }
        IntervalMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &ComplexInterval<S> {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut ComplexInterval<S> {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Largest precision carried by any entry (used to build exact basis
    /// vectors and zeros of matching width).
    fn entry_bits(&self) -> u32 {
        self.data
            .iter()
            .map(|c| c.precision_bits())
            .max()
            .unwrap_or(53)
    }

    /// Matrix-vector product enclosure.
    pub fn matvec(&self, v: &[ComplexInterval<S>]) -> Result<IntervalVector<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let ctx = PrecisionContext::arbitrary(self.entry_bits());
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = ComplexInterval::zero(ctx);
            for (j, vj) in v.iter().enumerate() {
                acc = acc.add(&self.at(i, j).mul(vj)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Matrix-matrix product enclosure.
    pub fn mul_mat(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch);
        }
        let ctx = PrecisionContext::arbitrary(self.entry_bits().max(rhs.entry_bits()));
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = ComplexInterval::zero(ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j))?)?;
                }
                data.push(acc);
            }
        }
        IntervalMatrix::new(self.rows, rhs.cols, data)
    }

    /// Upper bound on the Frobenius norm of every point matrix inside the
    /// enclosure; dominates the operator 2-norm.
    pub fn frob_mag_norm(&self) -> S {
        let bits = self.entry_bits();
        let mut acc = S::zero(bits);
        for c in &self.data {
            acc = acc.add_dir(&c.mag_sq(), Dir::Up);
        }
        acc.sqrt_dir(Dir::Up)
    }

    /// LU decomposition with partial pivoting by mignitude.
    ///
    /// The pivot row maximizes the guaranteed-nonzero magnitude (mig) of the
    /// pivot-column entry, ties broken by smaller mag. Eliminated entries
    /// are zeroed through the Kaucher cancellation `a - dual(a) = [0,0]`
    /// instead of the widening ordinary subtraction; everything else is
    /// plain interval arithmetic.
    pub fn lu_decompose(&self) -> Result<LUFactors<S>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let ctx = PrecisionContext::arbitrary(self.entry_bits());
        let mut u = self.clone();
        let mut lower = IntervalMatrix::identity(n, ctx);
        let mut permutation: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let mut pivot: Option<(usize, S, S)> = None;
            for r in k..n {
                let mig = u.at(r, k).mig();
                if mig.is_zero() {
                    continue;
                }
                let mag = u.at(r, k).mag();
                let better = match &pivot {
                    None => true,
                    Some((_, best_mig, best_mag)) => {
                        mig > *best_mig || (mig == *best_mig && mag < *best_mag)
                    }
                };
                if better {
                    pivot = Some((r, mig, mag));
                }
            }
            let (p, _, _) = pivot.ok_or(Error::SingularEnclosure)?;
            if p != k {
                u.swap_rows(p, k);
                permutation.swap(p, k);
                // Multipliers already stored move with their rows.
                for j in 0..k {
                    let pi = p * n + j;
                    let ki = k * n + j;
                    lower.data.swap(pi, ki);
                }
            }
            for i in (k + 1)..n {
                if u.at(i, k).is_point_zero() {
                    continue;
                }
                let m = u.at(i, k).div(u.at(k, k))?;
                let eliminated = u.at(i, k).sub(&u.at(i, k).dual())?;
                *u.at_mut(i, k) = eliminated;
                for j in (k + 1)..n {
                    let delta = m.mul(u.at(k, j))?;
                    *u.at_mut(i, j) = u.at(i, j).sub(&delta)?;
                }
                *lower.at_mut(i, k) = m;
            }
        }
        // Clear the strictly-lower part of U (exact zeros were written in
        // the elimination; entries below stay zero boxes).
        Ok(LUFactors {
            lower,
            upper: u,
            permutation,
        })
    }

    /// Enclosure of the set of inverses, assembled column-by-column by
    /// solving against unit basis vectors.
    pub fn invert(&self) -> Result<IntervalMatrix<S>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let ctx = PrecisionContext::arbitrary(self.entry_bits());
        let factors = self.lu_decompose()?;
        let mut data = alloc::vec![ComplexInterval::zero(ctx); n * n];
        for j in 0..n {
            let mut e = alloc::vec![ComplexInterval::zero(ctx); n];
            e[j] = ComplexInterval::one(ctx);
            let col = factors.solve(&e)?;
            for i in 0..n {
                data[i * n + j] = col[i].clone();
            }
        }
        IntervalMatrix::new(n, n, data)
    }
}

/// Triangular factors enclosing the LU factorization of every point matrix
/// in the source enclosure (rows permuted by `permutation`).
#[derive(Clone, Debug)]
pub struct LUFactors<S: Endpoint> {
    pub lower: IntervalMatrix<S>,
    pub upper: IntervalMatrix<S>,
    pub permutation: Vec<usize>,
}

impl<S: Endpoint> LUFactors<S> {
    /// Validated forward/back substitution: encloses `N^{-1} y` for every
    /// point matrix `N` in the source and `y` in `b`.
    pub fn solve(&self, b: &[ComplexInterval<S>]) -> Result<IntervalVector<S>> {
        let n = self.permutation.len();
        if b.len() != n {
            return Err(Error::DimensionMismatch);
        }
        let mut y: Vec<ComplexInterval<S>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = b[self.permutation[i]].clone();
            for (j, yj) in y.iter().enumerate().take(i) {
                let t = self.lower.at(i, j).mul(yj)?;
                acc = acc.sub(&t)?;
            }
            y.push(acc);
        }
        let mut x = y;
        for i in (0..n).rev() {
            let mut acc = x[i].clone();
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                let t = self.upper.at(i, j).mul(xj)?;
                acc = acc.sub(&t)?;
            }
            x[i] = acc.div(self.upper.at(i, i))?;
        }
        Ok(x)
    }
}

/// Lower bound on the minimum 2-norm over the box.
pub fn vec_mig_norm<S: Endpoint>(v: &[ComplexInterval<S>]) -> S {
    let bits = v.iter().map(|c| c.precision_bits()).max().unwrap_or(53);
    let mut acc = S::zero(bits);
    for c in v {
        acc = acc.add_dir(&c.mig_sq(), Dir::Down);
    }
    acc.sqrt_dir(Dir::Down)
}

/// Upper bound on the maximum 2-norm over the box.
pub fn vec_mag_norm<S: Endpoint>(v: &[ComplexInterval<S>]) -> S {
    let bits = v.iter().map(|c| c.precision_bits()).max().unwrap_or(53);
    let mut acc = S::zero(bits);
    for c in v {
        acc = acc.add_dir(&c.mag_sq(), Dir::Up);
    }
    acc.sqrt_dir(Dir::Up)
}

/// Lower bound on `min { |x1 - x2| : x1 in I1, x2 in I2 }`. Interval
/// subtraction is the exact difference set, so the mig-norm of it is the
/// minimum distance up to rounding.
pub fn box_distance<S: Endpoint>(
    a: &[ComplexInterval<S>],
    b: &[ComplexInterval<S>],
) -> Result<S> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch);
    }
    let mut diff = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        diff.push(x.sub(y)?);
    }
    Ok(vec_mig_norm(&diff))
}
