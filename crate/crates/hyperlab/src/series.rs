//! Numeric evaluation of the hypergeometric series F, F1, F2, F_D^(3) and
//! F_X3. All multivariate series are summed by total degree, and the stop
//! criterion is the maximum term magnitude across the last completed total
//! degree.

use crate::error::{Error, Result};
use crate::param::ParamValue;
use num_complex::Complex64;

/// Stop controls for the series evaluators and the order used for formal
/// truncations.
#[derive(Debug, Clone, Copy)]
pub struct SeriesOptions {
    /// Term-magnitude stop threshold.
    pub tol: f64,
    /// Hard cap on the number of completed total degrees.
    pub max_terms: usize,
    /// Truncation order for formal expansions.
    pub trunc_order: usize,
}

impl SeriesOptions {
    pub fn new(tol: f64, max_terms: usize, trunc_order: usize) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Usage("tol must be positive".into()));
        }
        if max_terms == 0 || trunc_order == 0 {
            return Err(Error::Usage("max_terms and trunc_order must be >= 1".into()));
        }
        Ok(SeriesOptions { tol, max_terms, trunc_order })
    }
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { tol: 1e-15, max_terms: 2000, trunc_order: 12 }
    }
}

/// Rising factorial (a)_n = a(a+1)...(a+n-1); exact when `a` is rational.
pub fn pochhammer(a: &ParamValue, n: usize) -> ParamValue {
    match a {
        ParamValue::Exact(r) => {
            let mut acc = num::BigRational::from(num::BigInt::from(1));
            let one = num::BigRational::from(num::BigInt::from(1));
            let mut term = r.clone();
            for _ in 0..n {
                acc *= &term;
                term += &one;
            }
            ParamValue::Exact(acc)
        }
        ParamValue::Num(z) => {
            let mut acc = Complex64::new(1.0, 0.0);
            for k in 0..n {
                acc *= z + k as f64;
            }
            ParamValue::Num(acc)
        }
    }
}

/// Incrementally grown table of rising factorials for a fixed base.
struct PochTable {
    base: Complex64,
    vals: Vec<Complex64>,
}

impl PochTable {
    fn new(base: Complex64) -> Self {
        PochTable { base, vals: vec![Complex64::new(1.0, 0.0)] }
    }

    fn get(&mut self, n: usize) -> Complex64 {
        while self.vals.len() <= n {
            let k = self.vals.len() - 1;
            let last = self.vals[k];
            self.vals.push(last * (self.base + k as f64));
        }
        self.vals[n]
    }
}

fn factorials(n: usize) -> Vec<f64> {
    let mut v = vec![1.0f64; n + 1];
    for k in 1..=n {
        v[k] = v[k - 1] * k as f64;
    }
    v
}

fn check_denominator(name: &str, c: &ParamValue) -> Result<()> {
    if c.is_nonpositive_integer() {
        return Err(Error::PoleParameter(format!("{name} is a nonpositive integer")));
    }
    Ok(())
}

/// Sum a multivariate series whose term at a multi-index is produced by
/// `term`, sweeping by total degree and stopping when the largest term of a
/// completed degree drops below `tol`.
fn sum_by_total_degree<F>(nvars: usize, opts: &SeriesOptions, mut term: F) -> Result<Complex64>
where
    F: FnMut(&[usize]) -> Complex64,
{
    let mut total = Complex64::new(0.0, 0.0);
    let mut last_max = f64::INFINITY;
    for d in 0..opts.max_terms {
        let mut degree_max = 0.0f64;
        let mut idx = vec![0usize; nvars];
        // enumerate all multi-indices of total degree d
        enumerate_degree(nvars, d, 0, &mut idx, &mut |idx: &[usize]| {
            let t = term(idx);
            total += t;
            degree_max = degree_max.max(t.norm());
        });
        last_max = degree_max;
        if degree_max < opts.tol && d > 0 {
            return Ok(total);
        }
    }
    Err(Error::NoConvergence { max_terms: opts.max_terms, last_term: last_max })
}

fn enumerate_degree(
    nvars: usize,
    remaining: usize,
    slot: usize,
    idx: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if slot == nvars - 1 {
        idx[slot] = remaining;
        f(idx);
        return;
    }
    for k in 0..=remaining {
        idx[slot] = k;
        enumerate_degree(nvars, remaining - k, slot + 1, idx, f);
    }
}

/// Gauss series F(a,b,c;x) for |x| < 1.
pub fn gauss_2f1(
    a: &ParamValue,
    b: &ParamValue,
    c: &ParamValue,
    x: Complex64,
    opts: &SeriesOptions,
) -> Result<Complex64> {
    if x.norm() >= 1.0 {
        return Err(Error::DivergentInput(format!("|x| = {} >= 1", x.norm())));
    }
    check_denominator("c", c)?;
    let mut pa = PochTable::new(a.as_complex());
    let mut pb = PochTable::new(b.as_complex());
    let mut pc = PochTable::new(c.as_complex());
    let fact = factorials(opts.max_terms + 1);
    let mut xpow = vec![Complex64::new(1.0, 0.0)];
    sum_by_total_degree(1, opts, |idx| {
        let i = idx[0];
        while xpow.len() <= i {
            let last = *xpow.last().unwrap();
            xpow.push(last * x);
        }
        pa.get(i) * pb.get(i) / (pc.get(i) * fact[i]) * xpow[i]
    })
}

/// Appell series F1(a,b,b',c;x,y) for |x| < 1, |y| < 1.
pub fn appell_f1(
    a: &ParamValue,
    b: &ParamValue,
    bp: &ParamValue,
    c: &ParamValue,
    x: Complex64,
    y: Complex64,
    opts: &SeriesOptions,
) -> Result<Complex64> {
    if x.norm() >= 1.0 || y.norm() >= 1.0 {
        return Err(Error::DivergentInput("F1 needs |x| < 1 and |y| < 1".into()));
    }
    check_denominator("c", c)?;
    let mut pa = PochTable::new(a.as_complex());
    let mut pb = PochTable::new(b.as_complex());
    let mut pbp = PochTable::new(bp.as_complex());
    let mut pc = PochTable::new(c.as_complex());
    let fact = factorials(opts.max_terms + 1);
    let (xp, yp) = (power_table(x), power_table(y));
    sum_by_total_degree(2, opts, |idx| {
        let (i, j) = (idx[0], idx[1]);
        pa.get(i + j) * pb.get(i) * pbp.get(j) / (pc.get(i + j) * fact[i] * fact[j])
            * xp.borrow_mut().get(i)
            * yp.borrow_mut().get(j)
    })
}

/// Appell series F2(a,b,b',c,c';x,y) for |x| + |y| < 1.
pub fn appell_f2(
    a: &ParamValue,
    b: &ParamValue,
    bp: &ParamValue,
    c: &ParamValue,
    cp: &ParamValue,
    x: Complex64,
    y: Complex64,
    opts: &SeriesOptions,
) -> Result<Complex64> {
    if x.norm() + y.norm() >= 1.0 {
        return Err(Error::DivergentInput(format!(
            "F2 needs |x| + |y| < 1, got {}",
            x.norm() + y.norm()
        )));
    }
    check_denominator("c", c)?;
    check_denominator("c'", cp)?;
    let mut pa = PochTable::new(a.as_complex());
    let mut pb = PochTable::new(b.as_complex());
    let mut pbp = PochTable::new(bp.as_complex());
    let mut pc = PochTable::new(c.as_complex());
    let mut pcp = PochTable::new(cp.as_complex());
    let fact = factorials(opts.max_terms + 1);
    let (xp, yp) = (power_table(x), power_table(y));
    sum_by_total_degree(2, opts, |idx| {
        let (i, j) = (idx[0], idx[1]);
        pa.get(i + j) * pb.get(i) * pbp.get(j)
            / (pc.get(i) * pcp.get(j) * fact[i] * fact[j])
            * xp.borrow_mut().get(i)
            * yp.borrow_mut().get(j)
    })
}

/// Lauricella series F_D^(3)(a,b1,b2,b3,c;y1,y2,y3) for |y_i| < 1.
#[allow(clippy::too_many_arguments)]
pub fn lauricella_fd3(
    a: &ParamValue,
    b1: &ParamValue,
    b2: &ParamValue,
    b3: &ParamValue,
    c: &ParamValue,
    y1: Complex64,
    y2: Complex64,
    y3: Complex64,
    opts: &SeriesOptions,
) -> Result<Complex64> {
    for (k, y) in [y1, y2, y3].iter().enumerate() {
        if y.norm() >= 1.0 {
            return Err(Error::DivergentInput(format!("|y{}| >= 1", k + 1)));
        }
    }
    check_denominator("c", c)?;
    let mut pa = PochTable::new(a.as_complex());
    let mut pb1 = PochTable::new(b1.as_complex());
    let mut pb2 = PochTable::new(b2.as_complex());
    let mut pb3 = PochTable::new(b3.as_complex());
    let mut pc = PochTable::new(c.as_complex());
    let fact = factorials(opts.max_terms + 1);
    let (p1, p2, p3) = (power_table(y1), power_table(y2), power_table(y3));
    sum_by_total_degree(3, opts, |idx| {
        let (n1, n2, n3) = (idx[0], idx[1], idx[2]);
        let n = n1 + n2 + n3;
        pa.get(n) * pb1.get(n1) * pb2.get(n2) * pb3.get(n3)
            / (pc.get(n) * fact[n1] * fact[n2] * fact[n3])
            * p1.borrow_mut().get(n1)
            * p2.borrow_mut().get(n2)
            * p3.borrow_mut().get(n3)
    })
}

/// The series solution of the restricted three-variable system:
/// sum over (n1,n3,n4) of
/// (a5',n13)(a6',n4)(a2,n1)(a3,n34) / ((a2+a3+a4,n134) n1! n3! n4!)
/// with a5' = 1-a5, a6' = 1-a6.
#[allow(clippy::too_many_arguments)]
pub fn fx3_series(
    a2: &ParamValue,
    a3: &ParamValue,
    a4: &ParamValue,
    a5: &ParamValue,
    a6: &ParamValue,
    x1: Complex64,
    x3: Complex64,
    x4: Complex64,
    opts: &SeriesOptions,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let a234 = a2.as_complex() + a3.as_complex() + a4.as_complex();
    if a234.im == 0.0 && a234.re <= 0.0 && a234.re.fract() == 0.0 {
        return Err(Error::PoleParameter("a2+a3+a4 is a nonpositive integer".into()));
    }
    let mut pa5p = PochTable::new(one - a5.as_complex());
    let mut pa6p = PochTable::new(one - a6.as_complex());
    let mut pa2 = PochTable::new(a2.as_complex());
    let mut pa3 = PochTable::new(a3.as_complex());
    let mut pden = PochTable::new(a234);
    let fact = factorials(opts.max_terms + 1);
    let (p1, p3, p4) = (power_table(x1), power_table(x3), power_table(x4));
    sum_by_total_degree(3, opts, |idx| {
        let (n1, n3, n4) = (idx[0], idx[1], idx[2]);
        pa5p.get(n1 + n3) * pa6p.get(n4) * pa2.get(n1) * pa3.get(n3 + n4)
            / (pden.get(n1 + n3 + n4) * fact[n1] * fact[n3] * fact[n4])
            * p1.borrow_mut().get(n1)
            * p3.borrow_mut().get(n3)
            * p4.borrow_mut().get(n4)
    })
}

use std::cell::RefCell;

struct PowTable {
    base: Complex64,
    vals: Vec<Complex64>,
}

impl PowTable {
    fn get(&mut self, n: usize) -> Complex64 {
        while self.vals.len() <= n {
            let last = *self.vals.last().unwrap();
            self.vals.push(last * self.base);
        }
        self.vals[n]
    }
}

fn power_table(base: Complex64) -> RefCell<PowTable> {
    RefCell::new(PowTable { base, vals: vec![Complex64::new(1.0, 0.0)] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::ParamValue as P;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(&P::integer(5), 0), P::integer(1));
        assert_eq!(pochhammer(&P::integer(1), 4), P::integer(24));
        assert_eq!(pochhammer(&P::rational(2, 3), 2), P::rational(10, 9));
    }

    #[test]
    fn pochhammer_recurrence() {
        let a = P::rational(-7, 5);
        for n in 0..50usize {
            let lhs = pochhammer(&a, n + 1).as_exact().unwrap();
            let rhs = pochhammer(&a, n).as_exact().unwrap()
                * (a.as_exact().unwrap() + num::BigRational::from(num::BigInt::from(n as i64)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gauss_at_zero_is_one() {
        let opts = SeriesOptions::default();
        let v = gauss_2f1(&P::rational(1, 3), &P::rational(2, 3), &P::rational(4, 3), c(0.0), &opts)
            .unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gauss_binomial_collapse() {
        // F(a, c, c; x) = (1-x)^{-a}; at a = 1/2, x = 1/2 this is sqrt(2).
        let opts = SeriesOptions::default();
        let v = gauss_2f1(&P::rational(1, 2), &P::rational(3, 7), &P::rational(3, 7), c(0.5), &opts)
            .unwrap();
        assert_abs_diff_eq!(v.re, 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn gauss_rejects_bad_input() {
        let opts = SeriesOptions::default();
        assert!(matches!(
            gauss_2f1(&P::integer(1), &P::integer(1), &P::integer(1), c(1.0), &opts),
            Err(Error::DivergentInput(_))
        ));
        assert!(matches!(
            gauss_2f1(&P::integer(1), &P::integer(1), &P::integer(-2), c(0.1), &opts),
            Err(Error::PoleParameter(_))
        ));
    }

    #[test]
    fn f1_collapses_on_axes() {
        let opts = SeriesOptions::default();
        let (a, b, bp, cc) =
            (P::rational(1, 3), P::rational(1, 5), P::rational(1, 7), P::rational(3, 2));
        let v0 = appell_f1(&a, &b, &bp, &cc, c(0.0), c(0.0), &opts).unwrap();
        assert_abs_diff_eq!(v0.re, 1.0, epsilon = 1e-15);
        let v = appell_f1(&a, &b, &bp, &cc, c(0.3), c(0.0), &opts).unwrap();
        let g = gauss_2f1(&a, &b, &cc, c(0.3), &opts).unwrap();
        assert_abs_diff_eq!((v - g).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn f1_vandermonde_diagonal() {
        // F1(a,b,b',c;x,x) = F(a,b+b',c;x)
        let opts = SeriesOptions::default();
        let v = appell_f1(
            &P::rational(1, 3),
            &P::rational(1, 5),
            &P::rational(1, 7),
            &P::rational(3, 2),
            c(0.2),
            c(0.2),
            &opts,
        )
        .unwrap();
        let g = gauss_2f1(
            &P::rational(1, 3),
            &P::rational(12, 35),
            &P::rational(3, 2),
            c(0.2),
            &opts,
        )
        .unwrap();
        assert!((v - g).norm() < 1e-12, "residual {}", (v - g).norm());
    }

    #[test]
    fn f2_collapses() {
        let opts = SeriesOptions::default();
        let v0 = appell_f2(
            &P::rational(4, 3),
            &P::rational(2, 3),
            &P::rational(2, 3),
            &P::rational(4, 3),
            &P::rational(4, 3),
            c(0.0),
            c(0.0),
            &opts,
        )
        .unwrap();
        assert_abs_diff_eq!(v0.re, 1.0, epsilon = 1e-15);
        // b = 0 kills all i > 0 terms
        let v = appell_f2(
            &P::rational(4, 3),
            &P::integer(0),
            &P::rational(2, 3),
            &P::rational(4, 3),
            &P::rational(5, 3),
            c(0.2),
            c(0.3),
            &opts,
        )
        .unwrap();
        let g = gauss_2f1(&P::rational(4, 3), &P::rational(2, 3), &P::rational(5, 3), c(0.3), &opts)
            .unwrap();
        assert_abs_diff_eq!((v - g).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn f2_symmetry_under_swap() {
        let opts = SeriesOptions::default();
        let (a, b, bp, cc, cp) = (
            P::rational(4, 3),
            P::rational(2, 3),
            P::rational(1, 5),
            P::rational(4, 3),
            P::rational(7, 5),
        );
        for i in 0..5 {
            for j in 0..5 {
                let x = c(0.05 + 0.03 * i as f64);
                let y = c(0.04 + 0.035 * j as f64);
                let lhs = appell_f2(&a, &b, &bp, &cc, &cp, x, y, &opts).unwrap();
                let rhs = appell_f2(&a, &bp, &b, &cp, &cc, y, x, &opts).unwrap();
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn fd3_collapses_to_f1() {
        let opts = SeriesOptions::default();
        let v = lauricella_fd3(
            &P::rational(1, 2),
            &P::rational(1, 3),
            &P::rational(1, 4),
            &P::integer(0),
            &P::integer(2),
            c(0.1),
            c(0.2),
            c(0.3),
            &opts,
        )
        .unwrap();
        let f1 = appell_f1(
            &P::rational(1, 2),
            &P::rational(1, 3),
            &P::rational(1, 4),
            &P::integer(2),
            c(0.1),
            c(0.2),
            &opts,
        )
        .unwrap();
        assert!((v - f1).norm() < 1e-13);
    }

    #[test]
    fn fx3_low_order_coefficient() {
        // coefficient of x1 is (1-a5) a2 / (a2+a3+a4); evaluate at tiny x1 and
        // difference against 1 to expose the linear coefficient.
        let opts = SeriesOptions::default();
        let (a2, a3, a4, a5, a6) = (
            P::rational(1, 3),
            P::rational(1, 3),
            P::rational(1, 3),
            P::rational(1, 3),
            P::rational(1, 3),
        );
        let h = 1e-6;
        let v = fx3_series(&a2, &a3, &a4, &a5, &a6, c(h), c(0.0), c(0.0), &opts).unwrap();
        let expected = (1.0 - 1.0 / 3.0) * (1.0 / 3.0) / 1.0;
        assert_abs_diff_eq!((v.re - 1.0) / h, expected, epsilon = 1e-5);
        let v0 = fx3_series(&a2, &a3, &a4, &a5, &a6, c(0.0), c(0.0), c(0.0), &opts).unwrap();
        assert_abs_diff_eq!(v0.re, 1.0, epsilon = 1e-15);
    }
}
