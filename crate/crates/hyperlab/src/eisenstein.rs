//! Exact arithmetic in Q(omega), omega a primitive cube root of unity, and
//! the specialization mu_1 = ... = mu_5 = omega^2: the integral circuit
//! matrices, their invariant Hermitian form, the reduced 2x2 group, and its
//! P-conjugation into Gamma_1(3). No floating point enters any certificate
//! here; sqrt(-3) is always the element 2 omega + 1.

use crate::error::{Error, Result};
use crate::matrix::{Mat, Scalar};
use crate::monodromy::{
    circuit_matrix_explicit_generic, circuit_matrix_structured_generic,
    dual_circuit_matrix_explicit_generic, dual_circuit_matrix_structured_generic,
    intersection_matrix_generic,
};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use rand::Rng;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// p + q omega with exact rational p, q; omega^2 = -1 - omega.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisScalar {
    pub p: BigRational,
    pub q: BigRational,
}

impl EisScalar {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        EisScalar { p, q }
    }

    pub fn from_int(n: i64) -> Self {
        EisScalar::new(BigRational::from(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_parts(p: i64, q: i64) -> Self {
        EisScalar::new(
            BigRational::from(BigInt::from(p)),
            BigRational::from(BigInt::from(q)),
        )
    }

    pub fn omega() -> Self {
        EisScalar::from_parts(0, 1)
    }

    /// omega^2 = -1 - omega.
    pub fn omega2() -> Self {
        EisScalar::from_parts(-1, -1)
    }

    /// sqrt(-3) = 2 omega + 1.
    pub fn sqrt_m3() -> Self {
        EisScalar::from_parts(1, 2)
    }

    /// Complex conjugate: conj(p + q omega) = (p - q) - q omega.
    pub fn conj(&self) -> Self {
        EisScalar::new(&self.p - &self.q, -self.q.clone())
    }

    /// Field norm p^2 - pq + q^2 = x conj(x), a rational.
    pub fn field_norm(&self) -> BigRational {
        &self.p * &self.p - &self.p * &self.q + &self.q * &self.q
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(Error::SingularPivot(0.0));
        }
        let c = self.conj();
        Ok(EisScalar::new(c.p / &n, c.q / n))
    }

    /// Entries of Z[omega]: both parts integral.
    pub fn is_integral(&self) -> bool {
        self.p.is_integer() && self.q.is_integer()
    }

    pub fn to_complex(&self) -> Complex64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        Complex64::new(p - q / 2.0, q * 3f64.sqrt() / 2.0)
    }
}

impl fmt::Display for EisScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "{}w", self.q)
        } else if self.q.is_negative() {
            write!(f, "{}{}w", self.p, self.q)
        } else {
            write!(f, "{}+{}w", self.p, self.q)
        }
    }
}

impl Add for EisScalar {
    type Output = EisScalar;
    fn add(self, o: EisScalar) -> EisScalar {
        EisScalar::new(self.p + o.p, self.q + o.q)
    }
}

impl Sub for EisScalar {
    type Output = EisScalar;
    fn sub(self, o: EisScalar) -> EisScalar {
        EisScalar::new(self.p - o.p, self.q - o.q)
    }
}

impl Mul for EisScalar {
    type Output = EisScalar;
    fn mul(self, o: EisScalar) -> EisScalar {
        // (p1 + q1 w)(p2 + q2 w), reduced by w^2 = -1 - w
        let pp = &self.p * &o.p - &self.q * &o.q;
        let qq = &self.p * &o.q + &self.q * &o.p - &self.q * &o.q;
        EisScalar::new(pp, qq)
    }
}

impl Div for EisScalar {
    type Output = EisScalar;
    fn div(self, o: EisScalar) -> EisScalar {
        self * o.inverse().expect("division by zero in Q(omega)")
    }
}

impl Neg for EisScalar {
    type Output = EisScalar;
    fn neg(self) -> EisScalar {
        EisScalar::new(-self.p, -self.q)
    }
}

impl Scalar for EisScalar {
    fn zero() -> Self {
        EisScalar::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        EisScalar::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
    fn pivot_mag(&self) -> f64 {
        self.field_norm().to_f64().map(f64::sqrt).unwrap_or(f64::INFINITY)
    }
}

/// Exact e^{2 pi i r} as an element of Q(omega), available when the reduced
/// denominator of r divides 6 (the sixth roots of unity all live in Z[omega]
/// via -omega^2 = e^{pi i/3}).
pub fn eis_root_of_unity(r: &BigRational) -> Option<EisScalar> {
    let six = BigInt::from(6);
    let scaled = r * BigRational::from(six.clone());
    if !scaled.is_integer() {
        return None;
    }
    let k = ((scaled.to_integer() % &six) + &six) % &six;
    let k = k.to_i64().unwrap();
    // primitive sixth root: -omega^2 = 1 + omega
    let zeta = EisScalar::from_parts(1, 1);
    let mut acc = EisScalar::one();
    for _ in 0..k {
        acc = acc * zeta.clone();
    }
    Some(acc)
}

/// The exact mu-vector of the special system: all entries omega^2.
pub fn mu_omega2() -> [EisScalar; 5] {
    std::array::from_fn(|_| EisScalar::omega2())
}

/// Exact mu-vector for any rational parameter set whose exponents have
/// denominators dividing 6.
pub fn mu_exact(p: &crate::param::ParamSet) -> Option<[EisScalar; 5]> {
    Some([
        eis_root_of_unity(&p.b)?,
        eis_root_of_unity(&(&p.c - &p.b))?,
        eis_root_of_unity(&p.bp)?,
        eis_root_of_unity(&(&p.cp - &p.bp))?,
        eis_root_of_unity(&-p.a.clone())?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatKind {
    M,
    MTilde,
}

fn e(p: i64, q: i64) -> EisScalar {
    EisScalar::from_parts(p, q)
}

/// The ten matrices of the special corollary, transcribed literally
/// (omega written as w): entries are in Z[omega].
pub fn corollary_table(i: usize, which: MatKind) -> Mat<EisScalar> {
    let rows: Vec<Vec<(i64, i64)>> = match (i, which) {
        (1, MatKind::M) => vec![
            vec![(1, 0), (0, 0), (0, 0), (0, 0)],
            vec![(-1, -2), (-1, -1), (0, 0), (0, 0)],
            vec![(-1, -2), (0, 0), (-1, -1), (0, 0)],
            vec![(0, 0), (0, 0), (0, 0), (1, 0)],
        ],
        (1, MatKind::MTilde) => vec![
            vec![(1, 0), (1, 2), (0, 0), (0, 0)],
            vec![(0, 0), (0, 1), (0, 0), (0, 0)],
            vec![(0, 0), (0, 0), (0, 1), (0, 0)],
            vec![(0, 0), (1, 1), (0, 0), (1, 0)],
        ],
        (2, MatKind::M) => vec![
            vec![(1, 0), (0, 0), (0, 0), (0, 0)],
            vec![(-1, -2), (-1, -1), (0, 0), (0, 0)],
            vec![(0, 0), (0, 0), (1, 0), (0, 0)],
            vec![(-1, -2), (0, 0), (0, 0), (-1, -1)],
        ],
        (2, MatKind::MTilde) => vec![
            vec![(1, 0), (1, 2), (0, 0), (0, 0)],
            vec![(0, 0), (0, 1), (0, 0), (0, 0)],
            vec![(0, 0), (1, 1), (1, 0), (0, 0)],
            vec![(0, 0), (0, 0), (0, 0), (0, 1)],
        ],
        (3, MatKind::M) => vec![
            vec![(1, 0), (-2, -1), (0, 0), (0, 0)],
            vec![(0, 0), (1, 0), (0, 0), (0, 0)],
            vec![(0, 0), (0, 0), (1, 0), (0, 0)],
            vec![(0, 0), (0, 0), (0, 0), (1, 0)],
        ],
        (3, MatKind::MTilde) => vec![
            vec![(1, 0), (0, 0), (0, 0), (0, 0)],
            vec![(-1, 1), (1, 0), (0, 0), (0, 0)],
            vec![(0, 0), (0, 0), (1, 0), (0, 0)],
            vec![(0, 0), (0, 0), (0, 0), (1, 0)],
        ],
        (4, MatKind::M) => vec![
            vec![(3, 1), (-1, -2), (0, 0), (0, 0)],
            vec![(1, -1), (-1, -1), (0, 0), (0, 0)],
            vec![(1, -1), (-2, -1), (1, 0), (0, 0)],
            vec![(0, 0), (0, 0), (0, 0), (1, 0)],
        ],
        (4, MatKind::MTilde) => vec![
            vec![(2, -1), (2, 1), (0, 0), (0, 0)],
            vec![(1, 2), (0, 1), (0, 0), (0, 0)],
            vec![(0, 0), (0, 0), (1, 0), (0, 0)],
            vec![(0, -1), (1, 0), (0, 0), (1, 0)],
        ],
        (5, MatKind::M) => vec![
            vec![(3, 1), (-1, -2), (0, 0), (0, 0)],
            vec![(1, -1), (-1, -1), (0, 0), (0, 0)],
            vec![(0, 0), (0, 0), (1, 0), (0, 0)],
            vec![(1, -1), (-2, -1), (0, 0), (1, 0)],
        ],
        (5, MatKind::MTilde) => vec![
            vec![(2, -1), (2, 1), (0, 0), (0, 0)],
            vec![(1, 2), (0, 1), (0, 0), (0, 0)],
            vec![(0, -1), (1, 0), (1, 0), (0, 0)],
            vec![(0, 0), (0, 0), (0, 0), (1, 0)],
        ],
        _ => panic!("corollary tables exist for i = 1..=5"),
    };
    Mat::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|(p, q)| e(p, q)).collect())
            .collect(),
    )
}

/// H at the specialization: (-1/3) [[1, w, 0, 0], [-w-1, 0, 0, 0],
/// [-w-1, 0, s, 0], [-w-1, 0, 0, s]] with s = sqrt(-3) = 2w + 1.
pub fn special_h() -> Mat<EisScalar> {
    let third = EisScalar::new(
        BigRational::new(BigInt::from(-1), BigInt::from(3)),
        BigRational::zero(),
    );
    let s = EisScalar::sqrt_m3;
    let z = EisScalar::zero;
    Mat::from_rows(vec![
        vec![e(1, 0), e(0, 1), z(), z()],
        vec![e(-1, -1), z(), z(), z()],
        vec![e(-1, -1), z(), s(), z()],
        vec![e(-1, -1), z(), z(), s()],
    ])
    .scale(&third)
}

/// Evaluate the generic structured circuit formula at mu = omega^2 exactly,
/// assert the result is integral over Z[omega], and check it against the
/// corollary table.
pub fn specialize_omega(i: usize, which: MatKind) -> Result<Mat<EisScalar>> {
    let mu = mu_omega2();
    let computed = match which {
        MatKind::M => circuit_matrix_structured_generic(i, &mu)?,
        MatKind::MTilde => dual_circuit_matrix_structured_generic(i, &mu)?,
    };
    for v in &computed.data {
        if !v.is_integral() {
            return Err(Error::NonIntegralResult(format!(
                "entry {v} of specialized matrix {i} is not in Z[omega]"
            )));
        }
    }
    let table = corollary_table(i, which);
    if computed != table {
        return Err(Error::SpecializationMismatch(format!(
            "matrix {i} ({which:?}) disagrees with the reference table"
        )));
    }
    // independent route: the explicit tables specialized exactly
    let explicit = match which {
        MatKind::M => circuit_matrix_explicit_generic(i, &mu)?,
        MatKind::MTilde => dual_circuit_matrix_explicit_generic(i, &mu)?,
    };
    if explicit != table {
        return Err(Error::SpecializationMismatch(format!(
            "explicit-table route for matrix {i} ({which:?}) disagrees"
        )));
    }
    Ok(computed)
}

/// Exact M_i H M~_i = H for all five circuits, plus det H != 0, at the
/// omega^2 specialization.
pub fn check_special_invariance() -> Result<()> {
    let h = special_h();
    if h.det().is_zero() {
        return Err(Error::SpecializationMismatch("special H is singular".into()));
    }
    // the specialized H must also agree with the generic formula at omega^2
    let generic = intersection_matrix_generic(&mu_omega2())?;
    if generic != h {
        return Err(Error::SpecializationMismatch(
            "generic H at omega^2 differs from the corollary's H".into(),
        ));
    }
    for i in 1..=5 {
        let m = specialize_omega(i, MatKind::M)?;
        let mt = specialize_omega(i, MatKind::MTilde)?;
        if m.mul(&h).mul(&mt) != h {
            return Err(Error::SpecializationMismatch(format!(
                "pairing invariance fails exactly at i = {i}"
            )));
        }
    }
    Ok(())
}

/// Top-left 2x2 block of the specialized M_i, for i in {1, 3, 5}; checks
/// the noted equalities M'_1 = M'_2 and M'_4 = M'_5 along the way.
pub fn reduced_block(i: usize) -> Result<Mat<EisScalar>> {
    if !matches!(i, 1 | 3 | 5) {
        return Err(Error::Usage("reduced blocks are indexed by 1, 3, 5".into()));
    }
    let block = |k: usize| -> Result<Mat<EisScalar>> {
        let m = specialize_omega(k, MatKind::M)?;
        Ok(Mat::from_rows(vec![
            vec![m[(0, 0)].clone(), m[(0, 1)].clone()],
            vec![m[(1, 0)].clone(), m[(1, 1)].clone()],
        ]))
    };
    if block(1)? != block(2)? {
        return Err(Error::BlockMismatch("M'_1 != M'_2".into()));
    }
    if block(4)? != block(5)? {
        return Err(Error::BlockMismatch("M'_4 != M'_5".into()));
    }
    block(i)
}

/// The Hermitian form H' preserved by the reduced group.
pub fn h_prime() -> Mat<EisScalar> {
    Mat::from_rows(vec![vec![e(-1, 0), e(0, -1)], vec![e(1, 1), e(0, 0)]])
}

/// The conjugating matrix P.
pub fn p_matrix() -> Mat<EisScalar> {
    Mat::from_rows(vec![vec![e(1, 0), e(1, 0)], vec![e(0, 0), e(-2, -1)]])
}

fn conj_transpose(m: &Mat<EisScalar>) -> Mat<EisScalar> {
    m.transpose().map(|v| v.conj())
}

/// g H' conj-transpose(g) = H', exactly.
pub fn unitarity_check(g: &Mat<EisScalar>) -> bool {
    let hp = h_prime();
    g.mul(&hp).mul(&conj_transpose(g)) == hp
}

/// 2x2 integer matrix with exact arithmetic; the Gamma_1(3) side of the
/// P-conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMatrix2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2 {
            a: BigInt::from(a),
            b: BigInt::from(b),
            c: BigInt::from(c),
            d: BigInt::from(d),
        }
    }

    pub fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Inverse of a determinant-one matrix (adjugate).
    pub fn inverse_unimodular(&self) -> Result<IntMatrix2> {
        if !self.det().is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(IntMatrix2 {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        })
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn pow(&self, e: u32) -> IntMatrix2 {
        let mut acc = IntMatrix2::identity();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The unit scalar split off by the P-conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitScalar {
    One,
    Omega,
}

/// P M'_i P^{-1}, exactly; returns the integer matrix and the unit scalar
/// (omega for i = 1, one for i = 3, 5).
pub fn conjugate_by_p(i: usize) -> Result<(IntMatrix2, UnitScalar)> {
    let block = reduced_block(i)?;
    let p = p_matrix();
    let pinv = p.inverse()?;
    let c = p.mul(&block).mul(&pinv);
    let to_int = |m: &Mat<EisScalar>| -> Option<IntMatrix2> {
        let mut vals = Vec::with_capacity(4);
        for v in &m.data {
            if !(v.q.is_zero() && v.p.is_integer()) {
                return None;
            }
            vals.push(v.p.to_integer());
        }
        Some(IntMatrix2 {
            a: vals[0].clone(),
            b: vals[1].clone(),
            c: vals[2].clone(),
            d: vals[3].clone(),
        })
    };
    if let Some(m) = to_int(&c) {
        return Ok((m, UnitScalar::One));
    }
    // try dividing out omega (multiply by omega^2 = omega^{-1})
    let divided = c.scale(&EisScalar::omega2());
    if let Some(m) = to_int(&divided) {
        return Ok((m, UnitScalar::Omega));
    }
    Err(Error::NonIntegralResult(format!(
        "P M'_{i} P^-1 is neither integral nor omega times integral"
    )))
}

/// a = 1, d = 1, c = 0 mod 3 for a determinant-one integer matrix.
pub fn gamma1_3_membership(m: &IntMatrix2) -> Result<bool> {
    if !m.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    let three = BigInt::from(3);
    let z = |v: &BigInt| ((v % &three) + &three) % &three;
    Ok(z(&(&m.a - 1)).is_zero() && z(&(&m.d - 1)).is_zero() && z(&m.c).is_zero())
}

/// P H' conj-transpose(P) = sqrt(-3) [[0,1],[-1,0]], H' Hermitian with
/// determinant -1: all exact.
pub fn hermitian_transform_check() -> Result<()> {
    let hp = h_prime();
    if conj_transpose(&hp) != hp {
        return Err(Error::BlockMismatch("H' is not Hermitian".into()));
    }
    let minus_one = -EisScalar::one();
    if hp.det() != minus_one {
        return Err(Error::BlockMismatch("det H' != -1".into()));
    }
    let p = p_matrix();
    let lhs = p.mul(&hp).mul(&conj_transpose(&p));
    let target = Mat::from_rows(vec![
        vec![EisScalar::zero(), EisScalar::one()],
        vec![-EisScalar::one(), EisScalar::zero()],
    ])
    .scale(&EisScalar::sqrt_m3());
    if lhs != target {
        return Err(Error::BlockMismatch("P H' P* != sqrt(-3) J".into()));
    }
    Ok(())
}

/// Sample random words of bounded length in the conjugated generators and
/// their inverses; every word must pass the Gamma_1(3) congruence test.
pub fn random_word_closure_check(rng: &mut impl Rng, n_words: usize, max_len: usize) -> Result<()> {
    let gens: Vec<IntMatrix2> = [1usize, 3, 5]
        .iter()
        .map(|&i| conjugate_by_p(i).map(|(m, _)| m))
        .collect::<Result<_>>()?;
    let mut alphabet = Vec::new();
    for g in &gens {
        alphabet.push(g.clone());
        alphabet.push(g.inverse_unimodular()?);
    }
    for w in 0..n_words {
        let len = rng.gen_range(1..=max_len);
        let mut acc = IntMatrix2::identity();
        for _ in 0..len {
            let g = &alphabet[rng.gen_range(0..alphabet.len())];
            acc = acc.mul(g);
        }
        if !gamma1_3_membership(&acc)? {
            return Err(Error::BlockMismatch(format!(
                "word {w} escapes Gamma_1(3): {acc:?}"
            )));
        }
    }
    Ok(())
}

/// The [3, inf, inf] triangle-group signature on the conjugated generators:
/// the i=1 image has projective order 3, the i=3 and i=5 images are
/// parabolic (trace 2).
pub fn triangle_signature_check() -> Result<()> {
    let (a1, s1) = conjugate_by_p(1)?;
    if s1 != UnitScalar::Omega {
        return Err(Error::NonIntegralResult("expected scalar omega at i = 1".into()));
    }
    if a1.pow(3) != IntMatrix2::identity() {
        return Err(Error::BlockMismatch("PM'_1P^-1 does not have projective order 3".into()));
    }
    if a1.pow(1) == IntMatrix2::identity() || a1.pow(2) == IntMatrix2::identity() {
        return Err(Error::BlockMismatch("projective order of PM'_1P^-1 below 3".into()));
    }
    for i in [3usize, 5] {
        let (a, s) = conjugate_by_p(i)?;
        if s != UnitScalar::One {
            return Err(Error::NonIntegralResult(format!("unexpected scalar at i = {i}")));
        }
        if a.trace() != BigInt::from(2) || a == IntMatrix2::identity() {
            return Err(Error::BlockMismatch(format!("PM'_{i}P^-1 is not parabolic")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{rat, ParamSet};
    use rand::SeedableRng;

    #[test]
    fn omega_arithmetic() {
        let w = EisScalar::omega();
        assert_eq!(w.clone() * w.clone(), EisScalar::omega2());
        assert_eq!(w.clone() * w.clone() * w.clone(), EisScalar::one());
        assert_eq!(e(2, 1).field_norm(), rat(3, 1));
        // sqrt(-3)^2 = -3
        assert_eq!(
            EisScalar::sqrt_m3() * EisScalar::sqrt_m3(),
            EisScalar::from_int(-3)
        );
    }

    #[test]
    fn conjugation_is_an_automorphism() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut draw = || {
                EisScalar::new(
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
                )
            };
            let (x, y) = (draw(), draw());
            assert_eq!(
                (x.clone() * y.clone()).conj(),
                x.conj() * y.conj()
            );
            assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
            // associativity / distributivity spot checks
            let z = draw();
            assert_eq!(
                (x.clone() * y.clone()) * z.clone(),
                x.clone() * (y.clone() * z.clone())
            );
            assert_eq!(
                x.clone() * (y.clone() + z.clone()),
                x.clone() * y.clone() + x.clone() * z.clone()
            );
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(eis_root_of_unity(&rat(1, 3)).unwrap(), EisScalar::omega());
        assert_eq!(eis_root_of_unity(&rat(2, 3)).unwrap(), EisScalar::omega2());
        assert_eq!(eis_root_of_unity(&rat(1, 2)).unwrap(), EisScalar::from_int(-1));
        assert_eq!(eis_root_of_unity(&rat(0, 1)).unwrap(), EisScalar::one());
        assert_eq!(eis_root_of_unity(&rat(-1, 3)).unwrap(), EisScalar::omega2());
        assert!(eis_root_of_unity(&rat(1, 5)).is_none());
    }

    #[test]
    fn special_params_give_omega2() {
        let mu = mu_exact(&ParamSet::special()).unwrap();
        for m in mu {
            assert_eq!(m, EisScalar::omega2());
        }
    }

    #[test]
    fn all_ten_specializations_match_tables() {
        for i in 1..=5 {
            for which in [MatKind::M, MatKind::MTilde] {
                let m = specialize_omega(i, which).unwrap();
                for v in &m.data {
                    assert!(v.is_integral());
                }
            }
        }
    }

    #[test]
    fn corollary_spot_entries() {
        let m3 = specialize_omega(3, MatKind::M).unwrap();
        // mu_5 - 1 = omega^2 - 1 = -2 - omega
        assert_eq!(m3[(0, 1)], e(-2, -1));
        let mt3 = specialize_omega(3, MatKind::MTilde).unwrap();
        assert_eq!(mt3[(1, 0)], e(-1, 1));
        let m1 = specialize_omega(1, MatKind::M).unwrap();
        assert_eq!(m1[(1, 0)], e(-1, -2));
        assert_eq!(m1[(1, 1)], e(-1, -1));
    }

    #[test]
    fn special_invariance_holds_exactly() {
        check_special_invariance().unwrap();
    }

    #[test]
    fn invariance_negative_control() {
        let h = special_h();
        let m3 = specialize_omega(3, MatKind::M).unwrap();
        // replacing the dual by the identity must break the pairing
        assert_ne!(m3.mul(&h), h);
    }

    #[test]
    fn reduced_blocks_and_unitarity() {
        let b1 = reduced_block(1).unwrap();
        assert_eq!(b1[(1, 0)], e(-1, -2));
        let b3 = reduced_block(3).unwrap();
        assert_eq!(b3[(0, 1)], e(-2, -1));
        for i in [1usize, 3, 5] {
            assert!(unitarity_check(&reduced_block(i).unwrap()), "block {i}");
        }
    }

    #[test]
    fn p_conjugation_targets() {
        let (a1, s1) = conjugate_by_p(1).unwrap();
        assert_eq!(s1, UnitScalar::Omega);
        assert_eq!(a1, IntMatrix2::new(-2, -1, 3, 1));
        let (a3, s3) = conjugate_by_p(3).unwrap();
        assert_eq!(s3, UnitScalar::One);
        assert_eq!(a3, IntMatrix2::new(1, 1, 0, 1));
        let (a5, s5) = conjugate_by_p(5).unwrap();
        assert_eq!(s5, UnitScalar::One);
        assert_eq!(a5, IntMatrix2::new(4, 3, -3, -2));
    }

    #[test]
    fn gamma_membership() {
        assert!(gamma1_3_membership(&IntMatrix2::new(1, 1, 0, 1)).unwrap());
        assert!(gamma1_3_membership(&IntMatrix2::new(4, 3, -3, -2)).unwrap());
        assert!(!gamma1_3_membership(&IntMatrix2::new(0, -1, 1, 0)).unwrap());
        assert!(matches!(
            gamma1_3_membership(&IntMatrix2::new(2, 0, 0, 2)),
            Err(Error::NotUnimodular)
        ));
    }

    #[test]
    fn hermitian_and_triangle_structure() {
        hermitian_transform_check().unwrap();
        triangle_signature_check().unwrap();
    }

    #[test]
    fn word_closure() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260824);
        random_word_closure_check(&mut rng, 50, 6).unwrap();
    }
}
