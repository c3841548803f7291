//! Complex-segment Gauss–Jacobi quadrature for products of power factors.
//!
//! The period integrands of this crate are all of the shape
//! ∏ⱼ (s − bⱼ)^{eⱼ} (or (bⱼ − s)^{eⱼ}) along a piecewise-linear path.
//! Factors singular at a segment endpoint are absorbed into the Jacobi
//! weight exactly; the remaining regular factors are evaluated at the
//! nodes with their branch continued along the path by argument
//! unwrapping.  Error estimates come from node doubling.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// One power factor of the integrand: `(s - base)^exponent`, or
/// `(base - s)^exponent` when `reversed` is set.  The reversed form exists
/// because integrands like `(1-s)^{-1/3}` and `(t-s)^{-2/3}` are stated
/// with the opposite sign and the two differ by a branch phase.
#[derive(Debug, Clone, Copy)]
pub struct Factor {
    pub base: Complex64,
    pub exponent: f64,
    pub reversed: bool,
    /// Declared starting argument of the linear form at the beginning of
    /// the path; `None` means "principal value at the first evaluation".
    pub start_arg: Option<f64>,
}

impl Factor {
    pub fn new(base: Complex64, exponent: f64) -> Self {
        Factor {
            base,
            exponent,
            reversed: false,
            start_arg: None,
        }
    }

    pub fn reversed(base: Complex64, exponent: f64) -> Self {
        Factor {
            base,
            exponent,
            reversed: true,
            start_arg: None,
        }
    }

    /// The linear form at `s`, before taking the power.
    fn linear(&self, s: Complex64) -> Complex64 {
        if self.reversed {
            self.base - s
        } else {
            s - self.base
        }
    }
}

/// Quadrature result together with a node-doubling error estimate.
#[derive(Debug, Clone, Copy)]
pub struct PeriodValue {
    pub value: Complex64,
    pub err_estimate: f64,
}

/// Minimal distance from the point `p` to the closed segment `[a, b]`.
fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let h = b - a;
    let len2 = h.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    // Projection parameter of p onto the line through a, b, clamped.
    let u = ((p - a) * h.conj()).re / len2;
    let u = u.clamp(0.0, 1.0);
    (p - (a + h * u)).norm()
}

/// Pull `raw` (a principal argument) into the branch sheet nearest `prev`.
fn unwrap_near(raw: f64, prev: f64) -> f64 {
    let mut a = raw;
    while a - prev > PI {
        a -= 2.0 * PI;
    }
    while prev - a > PI {
        a += 2.0 * PI;
    }
    a
}

/// Per-factor branch state: the running unwrapped argument of the linear
/// form, carried across nodes and segment junctions.
struct BranchState {
    arg: Option<f64>,
}

impl BranchState {
    fn advance(&mut self, raw_principal: f64, declared: Option<f64>) -> f64 {
        let a = match self.arg {
            Some(prev) => unwrap_near(raw_principal, prev),
            None => match declared {
                Some(d) => unwrap_near(raw_principal, d),
                None => raw_principal,
            },
        };
        self.arg = Some(a);
        a
    }
}

const ENDPOINT_TOL: f64 = 1e-12;
const COLLISION_TOL: f64 = 1e-8;

/// Integrate `∏ factors` along the piecewise-linear `path` with `n` Jacobi
/// nodes per segment, then again with `2n` nodes; returns the finer value
/// with `err_estimate = |I_n − I_{2n}|`.  Branches of the power factors are
/// continued along the path from their declared starting arguments.
pub fn integrate_factors(
    factors: &[Factor],
    path: &[Complex64],
    n: usize,
) -> Result<PeriodValue> {
    let coarse = integrate_once(factors, path, n)?;
    let fine = integrate_once(factors, path, 2 * n)?;
    Ok(PeriodValue {
        value: fine,
        err_estimate: (fine - coarse).norm(),
    })
}

/// Single-resolution pass over the whole path with fresh branch states.
fn integrate_once(factors: &[Factor], path: &[Complex64], n: usize) -> Result<Complex64> {
    if path.len() < 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut states: Vec<BranchState> = factors.iter().map(|_| BranchState { arg: None }).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for seg in path.windows(2) {
        total += integrate_segment(factors, &mut states, seg[0], seg[1], n)?;
    }
    Ok(total)
}

fn integrate_segment(
    factors: &[Factor],
    states: &mut [BranchState],
    a: Complex64,
    b: Complex64,
    n: usize,
) -> Result<Complex64> {
    let h = b - a;
    if h.norm() < ENDPOINT_TOL {
        return Err(Error::PreconditionViolated(
            "degenerate path segment".into(),
        ));
    }

    // Classify each factor against this segment.  Endpoint factors fold
    // into the Jacobi weight; everything else must keep clear of the path.
    #[derive(PartialEq)]
    enum Role {
        AtStart,
        AtEnd,
        Regular,
    }
    let mut roles = Vec::with_capacity(factors.len());
    let mut alpha = 0.0; // exponent of (1 - x): singular at the segment end
    let mut beta = 0.0; // exponent of (1 + x): singular at the segment start
    for f in factors {
        if (f.base - a).norm() < ENDPOINT_TOL {
            beta += f.exponent;
            roles.push(Role::AtStart);
        } else if (f.base - b).norm() < ENDPOINT_TOL {
            alpha += f.exponent;
            roles.push(Role::AtEnd);
        } else {
            let dist = segment_distance(f.base, a, b);
            if dist < COLLISION_TOL {
                return Err(Error::BranchCollision {
                    point: format!("{}", f.base),
                    dist,
                });
            }
            roles.push(Role::Regular);
        }
    }
    if alpha <= -1.0 {
        return Err(Error::NonIntegrableExponent(alpha));
    }
    if beta <= -1.0 {
        return Err(Error::NonIntegrableExponent(beta));
    }
    // Jacobi rules with both endpoints weighted hit a 0/0 in the companion
    // matrix when alpha + beta = -1; splitting at the midpoint leaves one
    // weighted endpoint per subsegment, which is always well posed.
    if alpha != 0.0 && beta != 0.0 {
        let m = (a + b) / 2.0;
        let left = integrate_segment(factors, states, a, m, n)?;
        let right = integrate_segment(factors, states, m, b, n)?;
        return Ok(left + right);
    }

    // Substitution s = a + h(1+x)/2 maps [-1,1] onto the segment.  For an
    // at-start factor, s - base = (h/2)(1+x): the (1+x)^e part lives in the
    // Jacobi weight and the constant (h/2)^e contributes modulus and a
    // branch phase taken from the factor's continued argument.
    let half = h / 2.0;
    let mut constant = half; // the ds Jacobian
    for (f, (role, st)) in factors.iter().zip(roles.iter().zip(states.iter_mut())) {
        let dir = match role {
            Role::AtStart => {
                if f.reversed {
                    -half
                } else {
                    half
                }
            }
            Role::AtEnd => {
                if f.reversed {
                    half
                } else {
                    -half
                }
            }
            Role::Regular => continue,
        };
        let theta = st.advance(dir.arg(), f.start_arg);
        let m = dir.norm();
        constant *= Complex64::from_polar(m.powf(f.exponent), theta * f.exponent);
    }

    let rule = gauss_quad::GaussJacobi::new(n.max(2), alpha, beta)
        .map_err(|e| Error::PreconditionViolated(format!("jacobi rule: {e}")))?;
    let mut pairs: Vec<(f64, f64)> = rule.iter().map(|(x, w)| (*x, *w)).collect();
    // Walk the nodes in path order so argument unwrapping sees small steps.
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    let mut sum = Complex64::new(0.0, 0.0);
    for (x, w) in pairs {
        let s = a + half * (1.0 + x);
        let mut val = Complex64::new(1.0, 0.0);
        for (f, (role, st)) in factors.iter().zip(roles.iter().zip(states.iter_mut())) {
            if *role != Role::Regular {
                continue;
            }
            let z = f.linear(s);
            let theta = st.advance(z.arg(), f.start_arg);
            val *= Complex64::from_polar(z.norm().powf(f.exponent), theta * f.exponent);
        }
        sum += w * val;
    }
    Ok(constant * sum)
}

/// Convenience: integrate over the real segment (0, 1).
pub fn integrate_unit_interval(factors: &[Factor], n: usize) -> Result<PeriodValue> {
    integrate_factors(
        factors,
        &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        n,
    )
}
