//! The twisted-cycle intersection matrix H^mu, the circuit matrices along
//! the five generating loops, and their invariance pairing. Constructions
//! are generic over the scalar field so the exact Eisenstein specialization
//! reuses the very same formulas.

use crate::error::{Error, Result};
use crate::matrix::{eigenvalues, max_abs_diff, multiset_distance, Mat, Scalar};
use crate::param::{rational_to_f64, ParamSet};
use num_complex::Complex64;
use rand::Rng;

/// Product of 1-based mu factors: pr(mu, &[1,2,5]) = mu1 mu2 mu5.
fn pr<T: Scalar>(mu: &[T; 5], idxs: &[usize]) -> T {
    let mut acc = T::one();
    for &i in idxs {
        acc = acc * mu[i - 1].clone();
    }
    acc
}

/// mu-product minus one, the ubiquitous denominator factor.
fn d<T: Scalar>(mu: &[T; 5], idxs: &[usize]) -> T {
    pr(mu, idxs) - T::one()
}

fn nonzero<T: Scalar>(v: T, what: &str) -> Result<T> {
    if v.is_zero() {
        return Err(Error::DegenerateMu(format!("{what} vanishes")));
    }
    Ok(v)
}

/// The intersection matrix H^mu of the four twisted cycles.
pub fn intersection_matrix_generic<T: Scalar>(mu: &[T; 5]) -> Result<Mat<T>> {
    for i in 1..=4 {
        nonzero(d(mu, &[i]), &format!("mu_{i} - 1"))?;
    }
    let m5 = nonzero(d(mu, &[5]), "mu_5 - 1")?;
    let (m1, m2, m3, m4) = (d(mu, &[1]), d(mu, &[2]), d(mu, &[3]), d(mu, &[4]));
    let (m12, m34, m45) = (d(mu, &[1, 2]), d(mu, &[3, 4]), d(mu, &[4, 5]));
    let (m125, m345, m245, m25) = (
        d(mu, &[1, 2, 5]),
        d(mu, &[3, 4, 5]),
        d(mu, &[2, 4, 5]),
        d(mu, &[2, 5]),
    );
    let h11 = m12.clone() * m34.clone()
        / (m1.clone() * m2.clone() * m3.clone() * m4.clone());
    let h12 = T::one() / (m2.clone() * m4.clone());
    let h13 = -(mu[0].clone() * m34.clone() * m125.clone())
        / (m1.clone() * m3.clone() * m4.clone());
    let h14 = -(mu[2].clone() * m12.clone() * m345.clone())
        / (m1.clone() * m2.clone() * m3.clone());
    let h21 = pr(mu, &[2, 4]) / (m2.clone() * m4.clone());
    let h22 = m245 / (m2.clone() * m4.clone() * m5.clone());
    let h31 = -(m34.clone() / (m1.clone() * m3.clone() * m4.clone()));
    let h33 = mu[0].clone() * m34.clone() * m25 / (m1.clone() * m3.clone() * m4.clone());
    let h34 = mu[2].clone() * m345.clone() / (m1.clone() * m3.clone());
    let h41 = -(m12.clone() / (m1.clone() * m2.clone() * m3.clone()));
    let h43 = mu[0].clone() * m125 / (m1.clone() * m3.clone());
    let h44 = mu[2].clone() * m12 * m45 / (m1 * m2 * m3);
    let z = T::zero;
    Ok(Mat::from_rows(vec![
        vec![h11, h12, h13, h14],
        vec![h21, h22, z(), z()],
        vec![h31, z(), h33, h34],
        vec![h41, z(), h43, h44],
    ]))
}

/// Closed form for det H^mu.
pub fn intersection_det_closed<T: Scalar>(mu: &[T; 5]) -> Result<T> {
    let mut den = T::one();
    for i in 1..=4 {
        let f = nonzero(d(mu, &[i]), &format!("mu_{i} - 1"))?;
        den = den * f.clone() * f;
    }
    Ok(pr(mu, &[1, 2, 3, 4]) * d(mu, &[5]) * d(mu, &[1, 2, 3, 4, 5]) / den)
}

/// lambda_i of the Corollary: eigenvalue carried by the non-trivial part of
/// the i-th circuit.
pub fn lambda<T: Scalar>(i: usize, mu: &[T; 5]) -> T {
    match i {
        1 => T::one() / pr(mu, &[1, 2]),
        2 => T::one() / pr(mu, &[3, 4]),
        3 => pr(mu, &[2, 4, 5]),
        4 => pr(mu, &[1, 4, 5]),
        5 => pr(mu, &[2, 3, 5]),
        _ => panic!("circuit index must be 1..=5"),
    }
}

/// Selector rows R_1, R_2 (i = 1, 2).
fn selector_rows<T: Scalar>(i: usize) -> Mat<T> {
    let z = T::zero;
    let o = T::one;
    match i {
        1 => Mat::from_rows(vec![vec![o(), z(), z(), z()], vec![z(), z(), z(), o()]]),
        2 => Mat::from_rows(vec![vec![o(), z(), z(), z()], vec![z(), z(), o(), z()]]),
        _ => panic!("rank-two selectors exist for i = 1, 2 only"),
    }
}

/// Selector row vectors r_3, r_4, r_5 (j = 3, 4, 5).
fn selector_r<T: Scalar>(j: usize, mu: &[T; 5]) -> Result<Mat<T>> {
    let z = T::zero;
    let o = T::one;
    Ok(match j {
        3 => Mat::row_vector(vec![z(), o(), z(), z()]),
        4 => {
            let m5 = nonzero(d(mu, &[5]), "mu_5 - 1")?;
            Mat::row_vector(vec![
                -(d(mu, &[4, 5]) / m5.clone()),
                o(),
                z(),
                -(d(mu, &[3, 4, 5]) / m5),
            ])
        }
        5 => {
            let m5 = nonzero(d(mu, &[5]), "mu_5 - 1")?;
            Mat::row_vector(vec![
                -(d(mu, &[2, 5]) / m5.clone()),
                o(),
                -(d(mu, &[1, 2, 5]) / m5),
                z(),
            ])
        }
        _ => panic!("rank-one selectors exist for j = 3, 4, 5 only"),
    })
}

/// Dual selector columns r~_3, r~_4, r~_5. The Corollary's display
/// "R_1 = ^t R_1" is read as defining the duals of R_1, R_2, r_3 as plain
/// transposes; only that reading reproduces the explicit tables.
fn selector_rt<T: Scalar>(j: usize, mu: &[T; 5]) -> Result<Mat<T>> {
    let z = T::zero;
    let o = T::one;
    Ok(match j {
        3 => Mat::col_vector(vec![z(), o(), z(), z()]),
        4 => {
            let m5 = nonzero(d(mu, &[5]), "mu_5 - 1")?;
            Mat::col_vector(vec![
                -(d(mu, &[4, 5]) / (pr(mu, &[4]) * m5.clone())),
                o(),
                z(),
                -(T::one() / (pr(mu, &[3, 4]) * m5)),
            ])
        }
        5 => {
            let m5 = nonzero(d(mu, &[5]), "mu_5 - 1")?;
            Mat::col_vector(vec![
                -(d(mu, &[2, 5]) / (pr(mu, &[2]) * m5.clone())),
                o(),
                -(T::one() / (pr(mu, &[1, 2]) * m5)),
                z(),
            ])
        }
        _ => panic!("rank-one selectors exist for j = 3, 4, 5 only"),
    })
}

/// The denominator product d_j with r_j H r~_j = (lambda_j - 1)/d_j; feeds
/// the algebraically cancelled coefficient used when lambda_j = 1.
fn rank1_denominator<T: Scalar>(j: usize, mu: &[T; 5]) -> T {
    match j {
        3 => d(mu, &[2]) * d(mu, &[4]) * d(mu, &[5]),
        4 => d(mu, &[1]) * d(mu, &[4]) * d(mu, &[5]),
        5 => d(mu, &[2]) * d(mu, &[3]) * d(mu, &[5]),
        _ => panic!("rank-one selectors exist for j = 3, 4, 5 only"),
    }
}

/// (lambda_i - 1) (R_i H R~_i)^{-1} with the mu_{12}-1 (resp. mu_{34}-1)
/// factor cancelled, from the Theorem proof's closed form of H_{14}^{-1}
/// (and its i=2 analogue). Finite even at lambda_i = 1.
fn rank2_coefficient_cancelled<T: Scalar>(i: usize, mu: &[T; 5]) -> Result<Mat<T>> {
    let m5 = nonzero(d(mu, &[5]), "mu_5 - 1")?;
    // bracket matrix of H_{1j}^{-1} and the cancelled prefactor
    let (bracket, prefactor) = match i {
        1 => {
            let m4 = pr(mu, &[4]);
            let m34 = nonzero(pr(mu, &[3, 4]), "mu_34")?;
            let b = Mat::from_rows(vec![
                vec![
                    d(mu, &[4]) * d(mu, &[4, 5]) / (m4.clone() * m5.clone()),
                    d(mu, &[4]) * d(mu, &[3, 4, 5]) / (m4 * m5.clone()),
                ],
                vec![
                    d(mu, &[4]) / (m34.clone() * m5.clone()),
                    d(mu, &[3, 4]) / (m34 * m5),
                ],
            ]);
            // (lambda_1 - 1) (mu_1-1)(mu_2-1)/(mu_12 - 1) = -(mu_1-1)(mu_2-1)/mu_12
            let pf = -(d(mu, &[1]) * d(mu, &[2]) / nonzero(pr(mu, &[1, 2]), "mu_12")?);
            (b, pf)
        }
        2 => {
            let m2 = pr(mu, &[2]);
            let m12 = nonzero(pr(mu, &[1, 2]), "mu_12")?;
            let b = Mat::from_rows(vec![
                vec![
                    d(mu, &[2]) * d(mu, &[2, 5]) / (m2.clone() * m5.clone()),
                    d(mu, &[2]) * d(mu, &[1, 2, 5]) / (m2 * m5.clone()),
                ],
                vec![
                    d(mu, &[2]) / (m12.clone() * m5.clone()),
                    d(mu, &[1, 2]) / (m12 * m5),
                ],
            ]);
            let pf = -(d(mu, &[3]) * d(mu, &[4]) / nonzero(pr(mu, &[3, 4]), "mu_34")?);
            (b, pf)
        }
        _ => panic!("rank-two coefficients exist for i = 1, 2 only"),
    };
    Ok(bracket.scale(&prefactor))
}

/// Circuit matrix from the structured (selector) formula. The 2x2 pivot is
/// inverted by adjugate division; at the documented cancellation points the
/// algebraically cancelled closed form takes over.
pub fn circuit_matrix_structured_generic<T: Scalar>(i: usize, mu: &[T; 5]) -> Result<Mat<T>> {
    let h = intersection_matrix_generic(mu)?;
    let lam = lambda(i, mu);
    match i {
        1 | 2 => {
            let r = selector_rows::<T>(i);
            let rt = r.transpose();
            let pivot = r.mul(&h).mul(&rt);
            let det = pivot.det();
            // K = (lambda - 1) pivot^{-1}
            let k = if det.pivot_mag() > 1e-12 && !det.is_zero() {
                let adj = Mat::from_rows(vec![
                    vec![pivot[(1, 1)].clone(), -pivot[(0, 1)].clone()],
                    vec![-pivot[(1, 0)].clone(), pivot[(0, 0)].clone()],
                ]);
                adj.scale(&((lam.clone() - T::one()) / det))
            } else {
                rank2_coefficient_cancelled(i, mu)?
            };
            // M = lambda I - H R~ K R
            Ok(Mat::identity(4).scale(&lam).sub(&h.mul(&rt).mul(&k).mul(&r)))
        }
        3 | 4 | 5 => {
            let r = selector_r(i, mu)?;
            let rt = selector_rt(i, mu)?;
            let pivot = r.mul(&h).mul(&rt)[(0, 0)].clone();
            // coefficient (1 - lambda)/pivot; cancelled form -d_j at the
            // lambda = 1 degeneration
            let coeff = if pivot.pivot_mag() > 1e-12 && !pivot.is_zero() {
                (T::one() - lam) / pivot
            } else {
                -rank1_denominator(i, mu)
            };
            Ok(Mat::identity(4).sub(&h.mul(&rt).scale(&coeff).mul(&r)))
        }
        _ => panic!("circuit index must be 1..=5"),
    }
}

/// Dual circuit matrix from the structured formula.
pub fn dual_circuit_matrix_structured_generic<T: Scalar>(
    i: usize,
    mu: &[T; 5],
) -> Result<Mat<T>> {
    let h = intersection_matrix_generic(mu)?;
    let lam = lambda(i, mu);
    match i {
        1 | 2 => {
            let r = selector_rows::<T>(i);
            let rt = r.transpose();
            let pivot = r.mul(&h).mul(&rt);
            let det = pivot.det();
            // K~ = (1/lambda - 1) pivot^{-1} = -K / lambda
            let kt = if det.pivot_mag() > 1e-12 && !det.is_zero() {
                let adj = Mat::from_rows(vec![
                    vec![pivot[(1, 1)].clone(), -pivot[(0, 1)].clone()],
                    vec![-pivot[(1, 0)].clone(), pivot[(0, 0)].clone()],
                ]);
                adj.scale(&((T::one() / lam.clone() - T::one()) / det))
            } else {
                rank2_coefficient_cancelled(i, mu)?.scale(&(-(T::one() / lam.clone())))
            };
            Ok(Mat::identity(4)
                .scale(&(T::one() / lam))
                .sub(&rt.mul(&kt).mul(&r).mul(&h)))
        }
        3 | 4 | 5 => {
            let r = selector_r(i, mu)?;
            let rt = selector_rt(i, mu)?;
            let pivot = r.mul(&h).mul(&rt)[(0, 0)].clone();
            let coeff = if pivot.pivot_mag() > 1e-12 && !pivot.is_zero() {
                (T::one() - T::one() / lam) / pivot
            } else {
                rank1_denominator(i, mu) / lam
            };
            Ok(Mat::identity(4).sub(&rt.scale(&coeff).mul(&r).mul(&h)))
        }
        _ => panic!("circuit index must be 1..=5"),
    }
}

/// Circuit matrix transcribed from the Corollary's explicit tables.
pub fn circuit_matrix_explicit_generic<T: Scalar>(i: usize, mu: &[T; 5]) -> Result<Mat<T>> {
    let z = T::zero;
    let o = T::one;
    let m5 = || nonzero(d(mu, &[5]), "mu_5 - 1");
    Ok(match i {
        1 => {
            let m1 = nonzero(pr(mu, &[1]), "mu_1")?;
            let m12 = nonzero(pr(mu, &[1, 2]), "mu_12")?;
            let m5 = m5()?;
            Mat::from_rows(vec![
                vec![o(), z(), z(), z()],
                vec![
                    d(mu, &[1]) * d(mu, &[4, 5]) / (m1.clone() * m5.clone()),
                    o() / m12.clone(),
                    z(),
                    d(mu, &[1]) * d(mu, &[3, 4, 5]) / (m1 * m5),
                ],
                vec![-(d(mu, &[2]) / m12.clone()), z(), o() / m12, z()],
                vec![z(), z(), z(), o()],
            ])
        }
        2 => {
            let m3 = nonzero(pr(mu, &[3]), "mu_3")?;
            let m34 = nonzero(pr(mu, &[3, 4]), "mu_34")?;
            let m5 = m5()?;
            Mat::from_rows(vec![
                vec![o(), z(), z(), z()],
                vec![
                    d(mu, &[3]) * d(mu, &[2, 5]) / (m3.clone() * m5.clone()),
                    o() / m34.clone(),
                    d(mu, &[3]) * d(mu, &[1, 2, 5]) / (m3 * m5),
                    z(),
                ],
                vec![z(), z(), o(), z()],
                vec![-(d(mu, &[4]) / m34.clone()), z(), z(), o() / m34],
            ])
        }
        3 => Mat::from_rows(vec![
            vec![o(), d(mu, &[5]), z(), z()],
            vec![z(), pr(mu, &[2, 4, 5]), z(), z()],
            vec![z(), z(), o(), z()],
            vec![z(), z(), z(), o()],
        ]),
        4 => {
            let m5 = m5()?;
            Mat::from_rows(vec![
                vec![
                    o() - pr(mu, &[1]) + pr(mu, &[1, 4, 5]),
                    -(pr(mu, &[1]) * d(mu, &[5])),
                    z(),
                    pr(mu, &[1]) * d(mu, &[3, 4, 5]),
                ],
                vec![
                    -(d(mu, &[1]) * d(mu, &[4, 5]) / m5.clone()),
                    pr(mu, &[1]),
                    z(),
                    -(d(mu, &[1]) * d(mu, &[3, 4, 5]) / m5),
                ],
                vec![-d(mu, &[4, 5]), d(mu, &[5]), o(), -d(mu, &[3, 4, 5])],
                vec![z(), z(), z(), o()],
            ])
        }
        5 => {
            let m5 = m5()?;
            Mat::from_rows(vec![
                vec![
                    o() - pr(mu, &[3]) + pr(mu, &[2, 3, 5]),
                    -(pr(mu, &[3]) * d(mu, &[5])),
                    pr(mu, &[3]) * d(mu, &[1, 2, 5]),
                    z(),
                ],
                vec![
                    -(d(mu, &[3]) * d(mu, &[2, 5]) / m5.clone()),
                    pr(mu, &[3]),
                    -(d(mu, &[3]) * d(mu, &[1, 2, 5]) / m5),
                    z(),
                ],
                vec![z(), z(), o(), z()],
                vec![-d(mu, &[2, 5]), d(mu, &[5]), -d(mu, &[1, 2, 5]), o()],
            ])
        }
        _ => panic!("circuit index must be 1..=5"),
    })
}

/// Dual circuit matrix transcribed from the Corollary's explicit tables.
pub fn dual_circuit_matrix_explicit_generic<T: Scalar>(i: usize, mu: &[T; 5]) -> Result<Mat<T>> {
    let z = T::zero;
    let o = T::one;
    let m5 = || nonzero(d(mu, &[5]), "mu_5 - 1");
    Ok(match i {
        1 => {
            let m4 = nonzero(pr(mu, &[4]), "mu_4")?;
            let m34 = nonzero(pr(mu, &[3, 4]), "mu_34")?;
            let m5 = m5()?;
            Mat::from_rows(vec![
                vec![
                    o(),
                    -(d(mu, &[1]) * d(mu, &[4, 5]) / (m4 * m5.clone())),
                    pr(mu, &[1]) * d(mu, &[2]) * d(mu, &[1, 2, 5]),
                    z(),
                ],
                vec![z(), pr(mu, &[1, 2]), z(), z()],
                vec![z(), z(), pr(mu, &[1, 2]), z()],
                vec![z(), -(d(mu, &[1]) / (m34 * m5)), z(), o()],
            ])
        }
        2 => {
            let m2 = nonzero(pr(mu, &[2]), "mu_2")?;
            let m12 = nonzero(pr(mu, &[1, 2]), "mu_12")?;
            let m5 = m5()?;
            Mat::from_rows(vec![
                vec![
                    o(),
                    -(d(mu, &[3]) * d(mu, &[2, 5]) / (m2 * m5.clone())),
                    z(),
                    pr(mu, &[3]) * d(mu, &[4]) * d(mu, &[3, 4, 5]),
                ],
                vec![z(), pr(mu, &[3, 4]), z(), z()],
                vec![z(), -(d(mu, &[3]) / (m12 * m5)), o(), z()],
                vec![z(), z(), z(), pr(mu, &[3, 4])],
            ])
        }
        3 => {
            let m5v = nonzero(pr(mu, &[5]), "mu_5")?;
            let m245 = nonzero(pr(mu, &[2, 4, 5]), "mu_245")?;
            Mat::from_rows(vec![
                vec![o(), z(), z(), z()],
                vec![-(d(mu, &[5]) / m5v), o() / m245, z(), z()],
                vec![z(), z(), o(), z()],
                vec![z(), z(), z(), o()],
            ])
        }
        4 => {
            let m5 = m5()?;
            let m145 = nonzero(pr(mu, &[1, 4, 5]), "mu_145")?;
            let m1 = nonzero(pr(mu, &[1]), "mu_1")?;
            let m45 = nonzero(pr(mu, &[4, 5]), "mu_45")?;
            let m5v = nonzero(pr(mu, &[5]), "mu_5")?;
            let m134 = nonzero(pr(mu, &[1, 3, 4]), "mu_134")?;
            let m345 = nonzero(pr(mu, &[3, 4, 5]), "mu_345")?;
            Mat::from_rows(vec![
                vec![
                    (o() - pr(mu, &[4, 5]) + pr(mu, &[1, 4, 5])) / m145,
                    d(mu, &[1]) * d(mu, &[4, 5]) / (m1.clone() * pr(mu, &[4]) * m5.clone()),
                    d(mu, &[4, 5]) * d(mu, &[1, 2, 5]) / m45,
                    z(),
                ],
                vec![
                    d(mu, &[5]) / (m1.clone() * m5v.clone()),
                    o() / m1,
                    -(d(mu, &[5]) * d(mu, &[1, 2, 5]) / m5v.clone()),
                    z(),
                ],
                vec![z(), z(), o(), z()],
                vec![
                    -(o() / (m134.clone() * m5v)),
                    d(mu, &[1]) / (m134 * m5),
                    d(mu, &[1, 2, 5]) / m345,
                    o(),
                ],
            ])
        }
        5 => {
            let m5 = m5()?;
            let m235 = nonzero(pr(mu, &[2, 3, 5]), "mu_235")?;
            let m3 = nonzero(pr(mu, &[3]), "mu_3")?;
            let m25 = nonzero(pr(mu, &[2, 5]), "mu_25")?;
            let m5v = nonzero(pr(mu, &[5]), "mu_5")?;
            let m123 = nonzero(pr(mu, &[1, 2, 3]), "mu_123")?;
            let m125 = nonzero(pr(mu, &[1, 2, 5]), "mu_125")?;
            Mat::from_rows(vec![
                vec![
                    (o() - pr(mu, &[2, 5]) + pr(mu, &[2, 3, 5])) / m235,
                    d(mu, &[3]) * d(mu, &[2, 5]) / (pr(mu, &[2]) * m3.clone() * m5.clone()),
                    z(),
                    d(mu, &[2, 5]) * d(mu, &[3, 4, 5]) / m25,
                ],
                vec![
                    d(mu, &[5]) / (m3.clone() * m5v.clone()),
                    o() / m3,
                    z(),
                    -(d(mu, &[5]) * d(mu, &[3, 4, 5]) / m5v.clone()),
                ],
                vec![
                    -(o() / (m123.clone() * m5v)),
                    d(mu, &[3]) / (m123 * m5),
                    o(),
                    d(mu, &[3, 4, 5]) / m125,
                ],
                vec![z(), z(), z(), o()],
            ])
        }
        _ => panic!("circuit index must be 1..=5"),
    })
}

// ---------------------------------------------------------------------------
// Complex64-facing layer

/// The five unit-modulus exponents attached to a parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct MuVector {
    pub mu: [Complex64; 5],
}

impl MuVector {
    pub fn new(mu: [Complex64; 5]) -> Result<Self> {
        for (k, m) in mu.iter().enumerate() {
            if (m.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Usage(format!(
                    "|mu_{}| = {} is not on the unit circle",
                    k + 1,
                    m.norm()
                )));
            }
        }
        Ok(MuVector { mu })
    }

    /// mu_1 = e^{2 pi i b}, mu_2 = e^{2 pi i (c-b)}, mu_3 = e^{2 pi i b'},
    /// mu_4 = e^{2 pi i (c'-b')}, mu_5 = e^{-2 pi i a}.
    pub fn from_params(p: &ParamSet) -> Self {
        let tau = 2.0 * std::f64::consts::PI;
        let e = |r: f64| Complex64::from_polar(1.0, tau * r);
        MuVector {
            mu: [
                e(rational_to_f64(&p.b)),
                e(rational_to_f64(&(&p.c - &p.b))),
                e(rational_to_f64(&p.bp)),
                e(rational_to_f64(&(&p.cp - &p.bp))),
                e(-rational_to_f64(&p.a)),
            ],
        }
    }

    pub fn product(&self, idxs: &[usize]) -> Complex64 {
        pr(&self.mu, idxs)
    }

    /// Condition (3.1): mu_i != 1 for i = 1..5 and mu_12345 != 1.
    pub fn check_condition_31(&self, tol: f64) -> Result<()> {
        for i in 1..=5 {
            if (self.product(&[i]) - 1.0).norm() < tol {
                return Err(Error::DegenerateMu(format!("mu_{i} = 1")));
            }
        }
        if (self.product(&[1, 2, 3, 4, 5]) - 1.0).norm() < tol {
            return Err(Error::DegenerateMu("mu_12345 = 1".into()));
        }
        Ok(())
    }

    /// Draw mu = exp(2 pi i theta) with theta uniform, rejecting draws
    /// within 1e-6 of a (3.1) violation.
    pub fn random_admissible(rng: &mut impl Rng) -> Self {
        let tau = 2.0 * std::f64::consts::PI;
        loop {
            let mu: [Complex64; 5] =
                std::array::from_fn(|_| Complex64::from_polar(1.0, tau * rng.gen::<f64>()));
            let v = MuVector { mu };
            if v.check_condition_31(1e-6).is_ok() {
                return v;
            }
        }
    }
}

pub fn intersection_matrix(mu: &MuVector) -> Result<Mat<Complex64>> {
    for i in 1..=4 {
        if (mu.product(&[i]) - 1.0).norm() < 1e-12 {
            return Err(Error::DegenerateMu(format!("mu_{i} = 1")));
        }
    }
    intersection_matrix_generic(&mu.mu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Structured,
    Explicit,
}

pub fn circuit_matrix(i: usize, mu: &MuVector, variant: Variant) -> Result<Mat<Complex64>> {
    match variant {
        Variant::Structured => circuit_matrix_structured_generic(i, &mu.mu),
        Variant::Explicit => circuit_matrix_explicit_generic(i, &mu.mu),
    }
}

pub fn dual_circuit_matrix(i: usize, mu: &MuVector, variant: Variant) -> Result<Mat<Complex64>> {
    match variant {
        Variant::Structured => dual_circuit_matrix_structured_generic(i, &mu.mu),
        Variant::Explicit => dual_circuit_matrix_explicit_generic(i, &mu.mu),
    }
}

/// Max-norm deviations of M_i H M~_i - H for the five circuits.
#[derive(Debug, Clone)]
pub struct PairingReport {
    pub deviations: [f64; 5],
    /// Largest |entry| of H, for putting the deviations on a scale: near
    /// the admissibility boundary H blows up and only the relative figure
    /// is meaningful.
    pub h_scale: f64,
}

impl PairingReport {
    pub fn max(&self) -> f64 {
        self.deviations.iter().cloned().fold(0.0, f64::max)
    }

    pub fn max_relative(&self) -> f64 {
        self.max() / (1.0 + self.h_scale)
    }
}

pub fn check_pairing_invariance(mu: &MuVector, variant: Variant) -> Result<PairingReport> {
    let h = intersection_matrix(mu)?;
    let h_scale = h.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let results = crate::par::map_collect(vec![1usize, 2, 3, 4, 5], |&i| -> Result<f64> {
        let m = circuit_matrix(i, mu, variant)?;
        let mt = dual_circuit_matrix(i, mu, variant)?;
        Ok(max_abs_diff(&m.mul(&h).mul(&mt), &h))
    });
    let mut deviations = [0.0f64; 5];
    for (k, r) in results.into_iter().enumerate() {
        deviations[k] = r?;
    }
    Ok(PairingReport { deviations, h_scale })
}

/// Scale-aware comparison of two matrix constructions: max entry deviation
/// divided by (1 + largest entry magnitude).
pub fn relative_matrix_diff(a: &Mat<Complex64>, b: &Mat<Complex64>) -> f64 {
    let scale = b.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
    max_abs_diff(a, b) / (1.0 + scale)
}

/// Which square cycle decomposition to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareCycle {
    Sq5,
    Sq6,
    DualSq5,
    DualSq6,
}

/// Coefficients of the square cycles in the Delta (resp. nabla) basis.
pub fn square_decomposition(which: SquareCycle, mu: &MuVector) -> Result<[Complex64; 4]> {
    let m = &mu.mu;
    let m5 = d(m, &[5]);
    if m5.norm() < 1e-12 {
        return Err(Error::DegenerateMu("mu_5 = 1".into()));
    }
    let z = Complex64::new(0.0, 0.0);
    Ok(match which {
        SquareCycle::Sq5 => [-(d(m, &[4, 5]) / m5), z, z, -(d(m, &[3, 4, 5]) / m5)],
        SquareCycle::Sq6 => [-(d(m, &[2, 5]) / m5), z, -(d(m, &[1, 2, 5]) / m5), z],
        SquareCycle::DualSq5 => [
            -(d(m, &[4, 5]) / (pr(m, &[4]) * m5)),
            z,
            z,
            -(Complex64::new(1.0, 0.0) / (pr(m, &[3, 4]) * m5)),
        ],
        SquareCycle::DualSq6 => [
            -(d(m, &[2, 5]) / (pr(m, &[2]) * m5)),
            z,
            -(Complex64::new(1.0, 0.0) / (pr(m, &[1, 2]) * m5)),
            z,
        ],
    })
}

/// The Lemma proof's quoted intersection row (I(sq_5, nabla_1..4)) or its
/// sq_6 analogue; used to cross-check the decomposition by a linear solve.
pub fn square_intersection_row(which: SquareCycle, mu: &MuVector) -> Result<[Complex64; 4]> {
    let m = &mu.mu;
    for i in [1usize, 2, 3, 4, 5] {
        if d(m, &[i]).norm() < 1e-12 {
            return Err(Error::DegenerateMu(format!("mu_{i} = 1")));
        }
    }
    let z = Complex64::new(0.0, 0.0);
    Ok(match which {
        SquareCycle::Sq5 => [
            -(pr(m, &[4]) * d(m, &[1, 2]) / (d(m, &[1]) * d(m, &[2]) * d(m, &[4]))),
            -(d(m, &[4, 5]) / (d(m, &[2]) * d(m, &[4]) * d(m, &[5]))),
            pr(m, &[1, 4]) * d(m, &[1, 2, 5]) / (d(m, &[1]) * d(m, &[4])),
            z,
        ],
        SquareCycle::Sq6 => [
            -(pr(m, &[2]) * d(m, &[3, 4]) / (d(m, &[2]) * d(m, &[3]) * d(m, &[4]))),
            -(d(m, &[2, 5]) / (d(m, &[2]) * d(m, &[4]) * d(m, &[5]))),
            z,
            pr(m, &[2, 3]) * d(m, &[3, 4, 5]) / (d(m, &[2]) * d(m, &[3])),
        ],
        _ => {
            return Err(Error::Usage(
                "intersection rows are quoted for the primal squares only".into(),
            ))
        }
    })
}

/// Expected spectrum of the i-th circuit matrix.
pub fn expected_spectrum(i: usize, mu: &MuVector) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let lam = lambda(i, &mu.mu);
    match i {
        1 | 2 => vec![one, one, lam, lam],
        3 | 4 | 5 => vec![one, one, one, lam],
        _ => panic!("circuit index must be 1..=5"),
    }
}

#[derive(Debug, Clone)]
pub struct EigenReport {
    pub expected: Vec<Complex64>,
    /// Numeric roots of the characteristic polynomial; for repeated
    /// eigenvalues these scatter like eps^(1/multiplicity), so the sharp
    /// certificate is `poly_deviation`, not the root cloud.
    pub got: Vec<Complex64>,
    /// Max coefficient deviation between char(M) and prod (z - expected_k);
    /// this is the multiset assertion, tight to ~1e-13.
    pub poly_deviation: f64,
    /// Greedy nearest-pair distance between the root cloud and the expected
    /// multiset (loose, diagnostic).
    pub root_distance: f64,
}

pub fn eigenstructure_check(i: usize, mu: &MuVector, variant: Variant) -> Result<EigenReport> {
    let m = circuit_matrix(i, mu, variant)?;
    let got = eigenvalues(&m);
    let expected = expected_spectrum(i, mu);
    // expand prod (z - expected_k), leading-first
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for e in &expected {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c * e;
        }
        poly = next;
    }
    let actual = crate::matrix::char_poly(&m);
    let poly_deviation = poly
        .iter()
        .zip(&actual)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let root_distance = multiset_distance(&got, &expected);
    Ok(EigenReport { expected, got, poly_deviation, root_distance })
}
