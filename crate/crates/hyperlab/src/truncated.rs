//! Exact truncated multivariate power series over the rationals. These back
//! the annihilation certificates: a series knows the total degree through
//! which its coefficients are trustworthy, and every operation tracks how
//! that degree degrades.

use crate::error::{Error, Result};
use crate::param::rational_to_f64;
use num::{BigInt, BigRational, One, Zero};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// A polynomial truncation of a power series in up to three variables.
/// Coefficients are exact; `order` is the total degree through which they are
/// complete (higher-degree keys are never stored).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    pub nvars: usize,
    pub order: u32,
    pub coeffs: BTreeMap<[u32; 3], BigRational>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        assert!((1..=3).contains(&nvars));
        TruncatedSeries { nvars, order, coeffs: BTreeMap::new() }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        let mut s = TruncatedSeries::zero(nvars, order);
        s.set([0, 0, 0], BigRational::one());
        s
    }

    pub fn coeff(&self, idx: [u32; 3]) -> BigRational {
        self.coeffs.get(&idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, idx: [u32; 3], v: BigRational) {
        let deg: u32 = idx.iter().sum();
        if deg > self.order {
            return;
        }
        if v.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest total degree with a nonzero coefficient, or None if zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = TruncatedSeries::zero(self.nvars, self.order.min(other.order));
        for (k, v) in &self.coeffs {
            out.set(*k, v.clone());
        }
        for (k, v) in &other.coeffs {
            out.set(*k, out.coeff(*k) + v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        let mut out = TruncatedSeries::zero(self.nvars, self.order);
        for (k, v) in &self.coeffs {
            out.set(*k, v * by);
        }
        out
    }

    /// Multiply by the monomial x_var. Drops the top slice, so the certified
    /// order shrinks by one... except that multiplication by a variable only
    /// ever produces terms whose low-degree part was already complete, so the
    /// order is in fact preserved. We keep it preserved.
    pub fn mul_var(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = TruncatedSeries::zero(self.nvars, self.order);
        for (k, v) in &self.coeffs {
            let mut idx = *k;
            idx[var] += 1;
            out.set(idx, v.clone());
        }
        out
    }

    /// Apply the Euler operator x_var * d/dx_var (multiplies each term by its
    /// exponent in `var`; order preserved).
    pub fn euler(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = TruncatedSeries::zero(self.nvars, self.order);
        for (k, v) in &self.coeffs {
            let e = BigRational::from(BigInt::from(k[var]));
            out.set(*k, v * e);
        }
        out
    }

    /// Apply d/dx_var. The top total degree of the result is no longer
    /// complete in general, so the certified order drops by one.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = TruncatedSeries::zero(self.nvars, self.order.saturating_sub(1));
        for (k, v) in &self.coeffs {
            if k[var] == 0 {
                continue;
            }
            let mut idx = *k;
            idx[var] -= 1;
            out.set(idx, v * BigRational::from(BigInt::from(k[var])));
        }
        out
    }

    /// Full series product, truncated at the smaller certified order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = TruncatedSeries::zero(self.nvars, self.order.min(other.order));
        for (k1, v1) in &self.coeffs {
            for (k2, v2) in &other.coeffs {
                let idx = [k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]];
                if idx.iter().sum::<u32>() > out.order {
                    continue;
                }
                out.set(idx, out.coeff(idx) + v1 * v2);
            }
        }
        Ok(out)
    }

    /// Substitute variable `from` := variable `to` (e.g. y -> x to compare
    /// against a one-variable collapse). The result still formally lives in
    /// the same variable count.
    pub fn substitute_var(&self, from: usize, to: usize) -> Self {
        assert!(from < self.nvars && to < self.nvars && from != to);
        let mut out = TruncatedSeries::zero(self.nvars, self.order);
        for (k, v) in &self.coeffs {
            let mut idx = *k;
            idx[to] += idx[from];
            idx[from] = 0;
            out.set(idx, out.coeff(idx) + v);
        }
        out
    }

    /// Numeric evaluation at a complex point (only terms up to `order`).
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in &self.coeffs {
            let mut term = Complex64::new(rational_to_f64(v), 0.0);
            for (var, &e) in k.iter().take(self.nvars).enumerate() {
                term *= point[var].powu(e);
            }
            acc += term;
        }
        acc
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                system: "series arithmetic",
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }
}

fn rising(a: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..n {
        acc *= a + BigRational::from(BigInt::from(k));
    }
    acc
}

fn factorial(n: u32) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from(acc)
}

fn check_pole(name: &str, c: &BigRational) -> Result<()> {
    if c.is_integer() && *c <= BigRational::zero() {
        return Err(Error::PoleParameter(format!("{name} is a nonpositive integer")));
    }
    Ok(())
}

/// Which series to expand formally.
#[derive(Debug, Clone)]
pub enum FormalSeries {
    /// F(a,b,c;x)
    Gauss { a: BigRational, b: BigRational, c: BigRational },
    /// F1(a,b,b',c;x,y)
    F1 { a: BigRational, b: BigRational, bp: BigRational, c: BigRational },
    /// F2(a,b,b',c,c';x,y)
    F2 { a: BigRational, b: BigRational, bp: BigRational, c: BigRational, cp: BigRational },
    /// F_D^(3)(a,b1,b2,b3,c;y1,y2,y3)
    Fd3 {
        a: BigRational,
        b1: BigRational,
        b2: BigRational,
        b3: BigRational,
        c: BigRational,
    },
    /// The restricted series in (x1,x3,x4) with parameters a2,a3,a4,a5,a6.
    Fx3 {
        a2: BigRational,
        a3: BigRational,
        a4: BigRational,
        a5: BigRational,
        a6: BigRational,
    },
}

/// Expand a series formally through total degree `order`, with exact
/// rational coefficients.
pub fn truncate_formal(which: &FormalSeries, order: u32) -> Result<TruncatedSeries> {
    match which {
        FormalSeries::Gauss { a, b, c } => {
            check_pole("c", c)?;
            let mut s = TruncatedSeries::zero(1, order);
            for i in 0..=order {
                let v = rising(a, i) * rising(b, i) / (rising(c, i) * factorial(i));
                s.set([i, 0, 0], v);
            }
            Ok(s)
        }
        FormalSeries::F1 { a, b, bp, c } => {
            check_pole("c", c)?;
            let mut s = TruncatedSeries::zero(2, order);
            for i in 0..=order {
                for j in 0..=(order - i) {
                    let v = rising(a, i + j) * rising(b, i) * rising(bp, j)
                        / (rising(c, i + j) * factorial(i) * factorial(j));
                    s.set([i, j, 0], v);
                }
            }
            Ok(s)
        }
        FormalSeries::F2 { a, b, bp, c, cp } => {
            check_pole("c", c)?;
            check_pole("c'", cp)?;
            let mut s = TruncatedSeries::zero(2, order);
            for i in 0..=order {
                for j in 0..=(order - i) {
                    let v = rising(a, i + j) * rising(b, i) * rising(bp, j)
                        / (rising(c, i) * rising(cp, j) * factorial(i) * factorial(j));
                    s.set([i, j, 0], v);
                }
            }
            Ok(s)
        }
        FormalSeries::Fd3 { a, b1, b2, b3, c } => {
            check_pole("c", c)?;
            let mut s = TruncatedSeries::zero(3, order);
            for n1 in 0..=order {
                for n2 in 0..=(order - n1) {
                    for n3 in 0..=(order - n1 - n2) {
                        let n = n1 + n2 + n3;
                        let v = rising(a, n)
                            * rising(b1, n1)
                            * rising(b2, n2)
                            * rising(b3, n3)
                            / (rising(c, n) * factorial(n1) * factorial(n2) * factorial(n3));
                        s.set([n1, n2, n3], v);
                    }
                }
            }
            Ok(s)
        }
        FormalSeries::Fx3 { a2, a3, a4, a5, a6 } => {
            let den = a2 + a3 + a4;
            check_pole("a2+a3+a4", &den)?;
            let one = BigRational::one();
            let a5p = &one - a5;
            let a6p = &one - a6;
            let mut s = TruncatedSeries::zero(3, order);
            // variables are stored in the order (x1, x3, x4)
            for n1 in 0..=order {
                for n3 in 0..=(order - n1) {
                    for n4 in 0..=(order - n1 - n3) {
                        let v = rising(&a5p, n1 + n3)
                            * rising(&a6p, n4)
                            * rising(a2, n1)
                            * rising(a3, n3 + n4)
                            / (rising(&den, n1 + n3 + n4)
                                * factorial(n1)
                                * factorial(n3)
                                * factorial(n4));
                        s.set([n1, n3, n4], v);
                    }
                }
            }
            Ok(s)
        }
    }
}

/// Truncation of the binomial (1-x_var)^e for rational e, as a series in the
/// ambient variable count.
pub fn binomial_series(nvars: usize, var: usize, e: &BigRational, order: u32) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(nvars, order);
    let mut coeff = BigRational::one();
    for k in 0..=order {
        let mut idx = [0u32; 3];
        idx[var] = k;
        s.set(idx, coeff.clone());
        // next coefficient of (1-x)^e = sum_k (-e)_k / k! x^k  via recurrence
        let kb = BigRational::from(BigInt::from(k));
        coeff = coeff * (-e + &kb) / (&kb + BigRational::one());
    }
    s
}
