//! Square polynomial systems with complex interval coefficients: parsing,
//! symbolic differentiation, interval evaluation (closures), Bombieri-Weyl
//! norms, and the degree-scaling diagonal used by the condition-number
//! machinery. Also the plain (non-certified) Newton step used for point
//! refinement and test oracles.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{PrecisionContext, RealInterval};
use crate::linalg::{IntervalMatrix, IntervalVector};
use crate::scalar::{Dir, Endpoint};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

/// Exponent vector: one nonnegative integer per variable.
pub type Exponents = Vec<u32>;

/// A multivariate polynomial with complex interval coefficients.
///
/// Point-zero coefficients are never stored; term order is the BTreeMap's
/// lexicographic exponent order, which keeps every traversal deterministic.
#[derive(Clone, Debug)]
pub struct Polynomial<S: Endpoint> {
    nvars: usize,
    terms: BTreeMap<Exponents, ComplexInterval<S>>,
}

impl<S: Endpoint> Polynomial<S> {
    pub fn new(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Add a term, merging with any existing coefficient at the same
    /// exponents and dropping the term if the result is the point zero.
    pub fn add_term(&mut self, exps: Exponents, coeff: ComplexInterval<S>) -> Result<()> {
        if exps.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let merged = match self.terms.remove(&exps) {
            Some(existing) => existing.add(&coeff)?,
            None => coeff,
        };
        if !merged.is_point_zero() {
            self.terms.insert(exps, merged);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ComplexInterval<S>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree: max over terms of the exponent sum (0 for the zero
    /// polynomial).
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Exact symbolic partial derivative with respect to variable `k`.
    pub fn derivative(&self, k: usize) -> Result<Self> {
        let mut out = Polynomial::new(self.nvars);
        for (exps, coeff) in &self.terms {
            if exps[k] == 0 {
                continue;
            }
            let bits = coeff.precision_bits();
            let factor = RealInterval::from_u128(exps[k] as u128, PrecisionContext::arbitrary(bits));
            let scaled = coeff.mul_real(&factor)?;
            let mut e = exps.clone();
            e[k] -= 1;
            out.add_term(e, scaled)?;
        }
        Ok(out)
    }

    /// Largest exponent of variable `j` appearing in any term.
    fn max_exponent(&self, j: usize) -> u32 {
        self.terms.keys().map(|e| e[j]).max().unwrap_or(0)
    }

    /// Evaluate over a box using a shared power cache
    /// (`powers[j][e]` encloses `I_j^e`).
    fn eval_with_cache(
        &self,
        powers: &[Vec<ComplexInterval<S>>],
        ctx: PrecisionContext,
    ) -> Result<ComplexInterval<S>> {
        let mut acc = ComplexInterval::zero(ctx);
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[j][e as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Interval closure of this polynomial over the box `point`.
    pub fn eval_closure(&self, point: &[ComplexInterval<S>]) -> Result<ComplexInterval<S>> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let maxes: Vec<u32> = (0..self.nvars).map(|j| self.max_exponent(j)).collect();
        let ctx = cache_ctx(point);
        let powers = build_power_cache(point, &maxes, ctx)?;
        self.eval_with_cache(&powers, ctx)
    }

    /// Upper bound on the squared Bombieri-Weyl norm: the coefficient
    /// 2-norm weighted by `nu!(d-|nu|)!/d!`, with `|a_nu|` taken as the
    /// coefficient magnitude.
    fn bw_norm_sq(&self, bits: u32) -> S {
        let d = self.degree() as u64;
        let mut acc = S::zero(bits);
        for (exps, coeff) in &self.terms {
            let total: u64 = exps.iter().map(|&e| e as u64).sum();
            let mut num = s_factorial::<S>(d - total, bits, Dir::Up);
            for &e in exps {
                num = num.mul_dir(&s_factorial::<S>(e as u64, bits, Dir::Up), Dir::Up);
            }
            let den = s_factorial::<S>(d, bits, Dir::Down);
            let weight = num.div_dir(&den, Dir::Up);
            acc = acc.add_dir(&coeff.mag_sq().mul_dir(&weight, Dir::Up), Dir::Up);
        }
        acc
    }
}

/// `m!` as an upper or lower bound at the given precision.
fn s_factorial<S: Endpoint>(m: u64, bits: u32, dir: Dir) -> S {
    let mut acc = S::one(bits);
    for k in 2..=m {
        acc = acc.mul_dir(&S::from_u128_dir(k as u128, bits, dir), dir);
    }
    acc
}

fn cache_ctx<S: Endpoint>(point: &[ComplexInterval<S>]) -> PrecisionContext {
    let bits = point.iter().map(|c| c.precision_bits()).max().unwrap_or(53);
    PrecisionContext::arbitrary(bits)
}

fn build_power_cache<S: Endpoint>(
    point: &[ComplexInterval<S>],
    maxes: &[u32],
    ctx: PrecisionContext,
) -> Result<Vec<Vec<ComplexInterval<S>>>> {
    let mut powers = Vec::with_capacity(point.len());
    for (j, iv) in point.iter().enumerate() {
        let mut col = Vec::with_capacity(maxes[j] as usize + 1);
        col.push(ComplexInterval::one(ctx));
        for e in 1..=maxes[j] as usize {
            let next = col[e - 1].mul(iv)?;
            col.push(next);
        }
        powers.push(col);
    }
    Ok(powers)
}

/// A square system of polynomials with its precomputed symbolic Jacobian.
#[derive(Clone, Debug)]
pub struct PolySystem<S: Endpoint> {
    nvars: usize,
    polys: Vec<Polynomial<S>>,
    jacobian: Vec<Vec<Polynomial<S>>>,
    degrees: Vec<u32>,
    maxdeg: u32,
}

impl<S: Endpoint> PolySystem<S> {
    pub fn new(polys: Vec<Polynomial<S>>) -> Result<Self> {
        let n = polys.len();
        if n == 0 {
            return Err(Error::NonSquareSystem);
        }
        if polys.iter().any(|p| p.nvars != n) {
            return Err(Error::NonSquareSystem);
        }
        let mut jacobian = Vec::with_capacity(n);
        for p in &polys {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(p.derivative(j)?);
            }
            jacobian.push(row);
        }
        let degrees: Vec<u32> = polys.iter().map(|p| p.degree()).collect();
        let maxdeg = degrees.iter().copied().max().unwrap_or(0);
        Ok(PolySystem {
            nvars: n,
            polys,
            jacobian,
            degrees,
            maxdeg,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Polynomial<S>] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    /// Interval closure of the whole system over a box.
    pub fn eval_closure(&self, point: &[ComplexInterval<S>]) -> Result<IntervalVector<S>> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let maxes: Vec<u32> = (0..self.nvars)
            .map(|j| self.polys.iter().map(|p| p.max_exponent(j)).max().unwrap_or(0))
            .collect();
        let ctx = cache_ctx(point);
        let powers = build_power_cache(point, &maxes, ctx)?;
        self.polys
            .iter()
            .map(|p| p.eval_with_cache(&powers, ctx))
            .collect()
    }

    /// Interval closure of the Jacobian over a box.
    pub fn jacobian_closure(&self, point: &[ComplexInterval<S>]) -> Result<IntervalMatrix<S>> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let maxes: Vec<u32> = (0..self.nvars)
            .map(|j| {
                self.jacobian
                    .iter()
                    .flat_map(|row| row.iter())
                    .map(|p| p.max_exponent(j))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let ctx = cache_ctx(point);
        let powers = build_power_cache(point, &maxes, ctx)?;
        let mut data = Vec::with_capacity(self.nvars * self.nvars);
        for row in &self.jacobian {
            for p in row {
                data.push(p.eval_with_cache(&powers, ctx)?);
            }
        }
        IntervalMatrix::new(self.nvars, self.nvars, data)
    }

    /// Upper bound on the Bombieri-Weyl norm of the system
    /// (root of the sum of per-polynomial squared norms).
    pub fn bw_norm(&self) -> S {
        let bits = self
            .polys
            .iter()
            .flat_map(|p| p.terms.values())
            .map(|c| c.precision_bits())
            .max()
            .unwrap_or(53);
        let mut acc = S::zero(bits);
        for p in &self.polys {
            acc = acc.add_dir(&p.bw_norm_sq(bits), Dir::Up);
        }
        acc.sqrt_dir(Dir::Up)
    }

    /// Diagonal degree-scaling matrix: entry (i,i) encloses
    /// `sqrt(d_i) * ||(1, x)||^(d_i - 1)` over the box.
    pub fn delta_matrix(&self, point: &[ComplexInterval<S>]) -> Result<IntervalMatrix<S>> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let ctx = cache_ctx(point);
        // ||(1, x)||^2 = 1 + sum |x_j|^2 as a real interval.
        let mut norm_sq = RealInterval::one(ctx);
        for c in point {
            norm_sq = norm_sq.add(&c.abs_sq()?)?;
        }
        let norm = norm_sq.sqrt()?;
        let mut data = alloc::vec![ComplexInterval::zero(ctx); self.nvars * self.nvars];
        for i in 0..self.nvars {
            let d = self.degrees[i];
            let sqrt_d = RealInterval::from_u128(d as u128, ctx).sqrt()?;
            let scaled = sqrt_d.mul(&norm.powi(d.saturating_sub(1))?)?;
            data[i * self.nvars + i] = ComplexInterval::new(scaled, RealInterval::zero(ctx));
        }
        IntervalMatrix::new(self.nvars, self.nvars, data)
    }

    /// One plain Newton iterate `x - JF(x)^{-1} F(x)` in round-to-nearest
    /// point arithmetic at the context precision. Not part of the certified
    /// path; used for refinement and as a convergence oracle.
    pub fn newton_step(&self, x: &[(S, S)], ctx: PrecisionContext) -> Result<Vec<(S, S)>> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let requant: Vec<(S, S)> = x
            .iter()
            .map(|(re, im)| {
                (
                    requantize_near(re, ctx.bits()),
                    requantize_near(im, ctx.bits()),
                )
            })
            .collect();
        let n = self.nvars;
        let fx: Vec<(S, S)> = self
            .polys
            .iter()
            .map(|p| eval_point(p, &requant, ctx.bits()))
            .collect();
        let mut jx: Vec<(S, S)> = Vec::with_capacity(n * n);
        for row in &self.jacobian {
            for p in row {
                jx.push(eval_point(p, &requant, ctx.bits()));
            }
        }
        let delta = solve_point(n, jx, fx, ctx.bits())?;
        Ok(requant
            .iter()
            .zip(&delta)
            .map(|(xi, di)| csub_p(xi, di))
            .collect())
    }

    /// Squared residual norm `||F(x)||^2` in nearest point arithmetic;
    /// a test/refinement diagnostic, not a certified bound.
    pub fn residual_norm_sq(&self, x: &[(S, S)], ctx: PrecisionContext) -> S {
        let mut acc = S::zero(ctx.bits());
        for p in &self.polys {
            let (re, im) = eval_point(p, x, ctx.bits());
            acc = acc
                .add_near(&re.mul_near(&re))
                .add_near(&im.mul_near(&im));
        }
        acc
    }
}

fn requantize_near<S: Endpoint>(v: &S, bits: u32) -> S {
    // Round-trip through the value itself at the requested width: adding
    // exact zero re-rounds MpFloat values; f64 is unchanged.
    v.add_near(&S::zero(bits))
}

fn cadd_p<S: Endpoint>(a: &(S, S), b: &(S, S)) -> (S, S) {
    (a.0.add_near(&b.0), a.1.add_near(&b.1))
}

fn csub_p<S: Endpoint>(a: &(S, S), b: &(S, S)) -> (S, S) {
    (a.0.sub_near(&b.0), a.1.sub_near(&b.1))
}

fn cmul_p<S: Endpoint>(a: &(S, S), b: &(S, S)) -> (S, S) {
    (
        a.0.mul_near(&b.0).sub_near(&a.1.mul_near(&b.1)),
        a.0.mul_near(&b.1).add_near(&a.1.mul_near(&b.0)),
    )
}

fn cdiv_p<S: Endpoint>(a: &(S, S), b: &(S, S)) -> (S, S) {
    let den = b.0.mul_near(&b.0).add_near(&b.1.mul_near(&b.1));
    let num = cmul_p(a, &(b.0.clone(), b.1.neg_val()));
    (num.0.div_near(&den), num.1.div_near(&den))
}

fn cabs_sq_p<S: Endpoint>(a: &(S, S)) -> S {
    a.0.mul_near(&a.0).add_near(&a.1.mul_near(&a.1))
}

fn eval_point<S: Endpoint>(p: &Polynomial<S>, x: &[(S, S)], bits: u32) -> (S, S) {
    let mut acc = (S::zero(bits), S::zero(bits));
    for (exps, coeff) in p.terms() {
        let mut term = (
            coeff.re().midpoint().add_near(&S::zero(bits)),
            coeff.im().midpoint().add_near(&S::zero(bits)),
        );
        for (j, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = cmul_p(&term, &x[j]);
            }
        }
        acc = cadd_p(&acc, &term);
    }
    acc
}

/// Gaussian elimination with partial pivoting in nearest point arithmetic.
fn solve_point<S: Endpoint>(
    n: usize,
    mut a: Vec<(S, S)>,
    mut b: Vec<(S, S)>,
    bits: u32,
) -> Result<Vec<(S, S)>> {
    for k in 0..n {
        let mut p = k;
        let mut best = cabs_sq_p(&a[k * n + k]);
        for r in (k + 1)..n {
            let cand = cabs_sq_p(&a[r * n + k]);
            if cand > best {
                best = cand;
                p = r;
            }
        }
        if best.is_zero() {
            return Err(Error::SingularJacobian);
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            b.swap(k, p);
        }
        for i in (k + 1)..n {
            if cabs_sq_p(&a[i * n + k]).is_zero() {
                continue;
            }
            let m = cdiv_p(&a[i * n + k], &a[k * n + k]);
            for j in (k + 1)..n {
                let t = cmul_p(&m, &a[k * n + j]);
                a[i * n + j] = csub_p(&a[i * n + j], &t);
            }
            let t = cmul_p(&m, &b[k]);
            b[i] = csub_p(&b[i], &t);
            a[i * n + k] = (S::zero(bits), S::zero(bits));
        }
    }
    let mut x = b;
    for i in (0..n).rev() {
        let mut acc = x[i].clone();
        for j in (i + 1)..n {
            let t = cmul_p(&a[i * n + j], &x[j]);
            acc = csub_p(&acc, &t);
        }
        x[i] = cdiv_p(&acc, &a[i * n + i]);
    }
    Ok(x)
}

/// Parse a system file: first meaningful line is the variable count `n`;
/// then for each of the n polynomials a term count `t` followed by `t`
/// lines of `e_1 ... e_n re im`. `#` starts a comment; blank lines are
/// skipped. Coefficients become the tightest representable intervals at the
/// context precision.
pub fn parse_system<S: Endpoint>(text: &str, ctx: PrecisionContext) -> Result<PolySystem<S>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| -> Result<(usize, &str)> {
        lines
            .next()
            .ok_or_else(|| Error::ParseError(format!("unexpected end of input, expected {what}")))
    };
    let (ln, header) = next("variable count")?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::ParseError(format!("line {ln}: invalid variable count")))?;
    if n == 0 {
        return Err(Error::ParseError(format!(
            "line {ln}: variable count must be positive"
        )));
    }
    let mut polys = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, tc) = next("term count")?;
        let t: usize = tc
            .parse()
            .map_err(|_| Error::ParseError(format!("line {ln}: invalid term count")))?;
        let mut poly = Polynomial::new(n);
        for _ in 0..t {
            let (ln, term) = next("term")?;
            let tokens: Vec<&str> = term.split_whitespace().collect();
            if tokens.len() != n + 2 {
                return Err(Error::ParseError(format!(
                    "line {ln}: expected {} exponents plus re and im",
                    n
                )));
            }
            let mut exps = Vec::with_capacity(n);
            for tok in &tokens[..n] {
                let e: u32 = tok.parse().map_err(|_| {
                    Error::ParseError(format!("line {ln}: invalid exponent '{tok}'"))
                })?;
                exps.push(e);
            }
            let coeff = ComplexInterval::parse_point(tokens[n], tokens[n + 1], ctx)
                .map_err(|e| match e {
                    Error::ParseError(m) => Error::ParseError(format!("line {ln}: {m}")),
                    other => other,
                })?;
            poly.add_term(exps, coeff)?;
        }
        polys.push(poly);
    }
    if lines.next().is_some() {
        // Trailing content is tolerated only as comments/blank lines, which
        // the filter already removed; anything else is a malformed file.
        return Err(Error::ParseError(
            "unexpected trailing content after last polynomial".to_string(),
        ));
    }
    PolySystem::new(polys)
}
