//! Euler-operator calculus: formal expression trees for the hypergeometric
//! systems E, E1, E2, E_D^(3) and EX3, applied exactly to truncated series.
//! Annihilation is certified coefficient-by-coefficient through the order the
//! truncation still guarantees.

use crate::error::{Error, Result};
use crate::truncated::TruncatedSeries;
use num::{BigRational, One, Zero};

/// A formal differential-operator expression. `Compose` applies its factors
/// right-to-left, like written operator products.
#[derive(Debug, Clone)]
pub enum EulerOperatorExpr {
    Scalar(BigRational),
    /// Multiplication by the variable with this index.
    Var(usize),
    /// x_i d/dx_i.
    Euler(usize),
    /// d/dx_i.
    Partial(usize),
    Add(Vec<EulerOperatorExpr>),
    Compose(Vec<EulerOperatorExpr>),
}

use EulerOperatorExpr as X;

fn sc(r: BigRational) -> X {
    X::Scalar(r)
}

fn neg(e: X) -> X {
    X::Compose(vec![sc(-BigRational::one()), e])
}

/// alpha + sum of Euler operators, the ubiquitous shifted-factor pattern.
fn shifted(alpha: BigRational, eulers: &[usize]) -> X {
    let mut terms = vec![sc(alpha)];
    terms.extend(eulers.iter().map(|&v| X::Euler(v)));
    X::Add(terms)
}

/// Apply an operator expression to a truncated series. Each multiplication
/// by a variable costs one certified order (the cited systems contain at
/// most one per operator); each bare partial costs one as well.
pub fn apply(op: &X, s: &TruncatedSeries) -> TruncatedSeries {
    match op {
        X::Scalar(r) => s.scale(r),
        X::Var(v) => {
            let mut out = s.mul_var(*v);
            out.order = out.order.saturating_sub(1);
            let order = out.order;
            out.coeffs.retain(|k, _| k.iter().sum::<u32>() <= order);
            out
        }
        X::Euler(v) => s.euler(*v),
        X::Partial(v) => s.partial(*v),
        X::Add(terms) => {
            let mut acc = TruncatedSeries::zero(s.nvars, s.order);
            for t in terms {
                acc = acc.add(&apply(t, s)).expect("same arity by construction");
            }
            acc
        }
        X::Compose(factors) => {
            let mut acc = s.clone();
            for f in factors.iter().rev() {
                acc = apply(f, &acc);
            }
            acc
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemName {
    E,
    E1,
    E2,
    Ed3,
    Ex3,
}

impl SystemName {
    pub fn arity(&self) -> usize {
        match self {
            SystemName::E => 3,
            SystemName::E1 => 4,
            SystemName::E2 | SystemName::Ed3 | SystemName::Ex3 => 5,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            SystemName::E => 1,
            SystemName::E1 | SystemName::E2 => 2,
            SystemName::Ed3 | SystemName::Ex3 => 3,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            SystemName::E => "E",
            SystemName::E1 => "E1",
            SystemName::E2 => "E2",
            SystemName::Ed3 => "ED3",
            SystemName::Ex3 => "EX3",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OperatorSystem {
    pub name: SystemName,
    pub params: Vec<BigRational>,
    pub operators: Vec<X>,
}

/// P(a,b,c) = D(c-1+D) - x(a+D)(b+D), as an expression in variable 0.
fn gauss_operator(a: &BigRational, b: &BigRational, c: &BigRational) -> X {
    let d = X::Euler(0);
    X::Add(vec![
        X::Compose(vec![d.clone(), shifted(c - BigRational::one(), &[0])]),
        neg(X::Compose(vec![
            X::Var(0),
            shifted(a.clone(), &[0]),
            shifted(b.clone(), &[0]),
        ])),
    ])
}

pub fn build_system(name: SystemName, params: &[BigRational]) -> Result<OperatorSystem> {
    if params.len() != name.arity() {
        return Err(Error::ArityMismatch {
            system: name.label(),
            expected: name.arity(),
            got: params.len(),
        });
    }
    let one = BigRational::one;
    let operators = match name {
        SystemName::E => {
            let (a, b, c) = (&params[0], &params[1], &params[2]);
            vec![gauss_operator(a, b, c)]
        }
        SystemName::E1 => {
            let (a, b, bp, c) = (&params[0], &params[1], &params[2], &params[3]);
            // (D(c-1+D+D') - x(a+D+D')(b+D)) z = 0
            let p1 = X::Add(vec![
                X::Compose(vec![X::Euler(0), shifted(c - one(), &[0, 1])]),
                neg(X::Compose(vec![
                    X::Var(0),
                    shifted(a.clone(), &[0, 1]),
                    shifted(b.clone(), &[0]),
                ])),
            ]);
            // (D'(c-1+D+D') - y(a+D+D')(b'+D')) z = 0
            let q1 = X::Add(vec![
                X::Compose(vec![X::Euler(1), shifted(c - one(), &[0, 1])]),
                neg(X::Compose(vec![
                    X::Var(1),
                    shifted(a.clone(), &[0, 1]),
                    shifted(bp.clone(), &[1]),
                ])),
            ]);
            // R1 = (x-y) d_xy - b' d_x + b d_y
            let r1 = X::Add(vec![
                X::Compose(vec![
                    X::Add(vec![X::Var(0), neg(X::Var(1))]),
                    X::Partial(0),
                    X::Partial(1),
                ]),
                X::Compose(vec![sc(-bp.clone()), X::Partial(0)]),
                X::Compose(vec![sc(b.clone()), X::Partial(1)]),
            ]);
            vec![p1, q1, r1]
        }
        SystemName::E2 => e2_operators(params, false),
        SystemName::Ed3 => {
            let (a, c) = (&params[0], &params[4]);
            let bs = [&params[1], &params[2], &params[3]];
            let mut ops = Vec::new();
            // delta_i (delta + c - 1) - y^i (delta_i + b_i)(delta + a)
            for i in 0..3 {
                ops.push(X::Add(vec![
                    X::Compose(vec![X::Euler(i), shifted(c - one(), &[0, 1, 2])]),
                    neg(X::Compose(vec![
                        X::Var(i),
                        shifted(bs[i].clone(), &[i]),
                        shifted(a.clone(), &[0, 1, 2]),
                    ])),
                ]));
            }
            // y^i (delta_i + b_i) delta_j - y^j (delta_j + b_j) delta_i
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                ops.push(X::Add(vec![
                    X::Compose(vec![X::Var(i), shifted(bs[i].clone(), &[i]), X::Euler(j)]),
                    neg(X::Compose(vec![
                        X::Var(j),
                        shifted(bs[j].clone(), &[j]),
                        X::Euler(i),
                    ])),
                ]));
            }
            ops
        }
        SystemName::Ex3 => {
            // params are (a2,a3,a4,a5,a6); variables (x^1,x^3,x^4) are
            // stored as 0,1,2, so theta_1, theta_3, theta_4 = Euler 0,1,2.
            let (a2, a3, a4, a5, a6) =
                (&params[0], &params[1], &params[2], &params[3], &params[4]);
            let a234 = a2 + a3 + a4;
            let lead = shifted(&a234 - one(), &[0, 1, 2]); // theta + a234 - 1
            let f135 = shifted(one() - a5, &[0, 1]); // theta_1 + theta_3 + 1 - a5
            let f12 = shifted(a2.clone(), &[0]); // theta_1 + a2
            let f346 = shifted(one() - a6, &[2]); // theta_4 + 1 - a6
            let f334 = shifted(a3.clone(), &[1, 2]); // theta_3 + theta_4 + a3
            vec![
                X::Add(vec![
                    X::Compose(vec![lead.clone(), X::Euler(0)]),
                    neg(X::Compose(vec![X::Var(0), f135.clone(), f12.clone()])),
                ]),
                X::Add(vec![
                    X::Compose(vec![lead.clone(), X::Euler(1)]),
                    neg(X::Compose(vec![X::Var(1), f135.clone(), f334.clone()])),
                ]),
                X::Add(vec![
                    X::Compose(vec![lead, X::Euler(2)]),
                    neg(X::Compose(vec![X::Var(2), f346.clone(), f334.clone()])),
                ]),
                X::Add(vec![
                    X::Compose(vec![X::Var(1), f135, X::Euler(2)]),
                    neg(X::Compose(vec![X::Var(2), f346, X::Euler(1)])),
                ]),
                X::Add(vec![
                    X::Compose(vec![X::Var(0), f12, X::Euler(1)]),
                    neg(X::Compose(vec![X::Var(1), f334, X::Euler(0)])),
                ]),
            ]
        }
    };
    Ok(OperatorSystem { name, params: params.to_vec(), operators })
}

fn e2_operators(params: &[BigRational], q2_typo_variant: bool) -> Vec<X> {
    let (a, b, bp, c, cp) = (&params[0], &params[1], &params[2], &params[3], &params[4]);
    let one = BigRational::one;
    // P2 = D(c-1+D) - x(a+D+D')(b+D)
    let p2 = X::Add(vec![
        X::Compose(vec![X::Euler(0), shifted(c - one(), &[0])]),
        neg(X::Compose(vec![
            X::Var(0),
            shifted(a.clone(), &[0, 1]),
            shifted(b.clone(), &[0]),
        ])),
    ]);
    // Q2 = D'(c'-1+D') - y(a+D+D')(b'+D'); the variant swaps the final D'
    // for D, which F2 does not satisfy (negative control).
    let last = if q2_typo_variant {
        shifted(bp.clone(), &[0])
    } else {
        shifted(bp.clone(), &[1])
    };
    let q2 = X::Add(vec![
        X::Compose(vec![X::Euler(1), shifted(cp - one(), &[1])]),
        neg(X::Compose(vec![X::Var(1), shifted(a.clone(), &[0, 1]), last])),
    ]);
    vec![p2, q2]
}

/// The E2 system with Q2's trailing factor taken as (b'+D) instead of
/// (b'+D'). F2 is not annihilated by this variant; it exists as a negative
/// control distinguishing the two readings.
pub fn build_e2_variant_bp_d(params: &[BigRational]) -> Result<OperatorSystem> {
    if params.len() != 5 {
        return Err(Error::ArityMismatch { system: "E2 variant", expected: 5, got: params.len() });
    }
    Ok(OperatorSystem {
        name: SystemName::E2,
        params: params.to_vec(),
        operators: e2_operators(params, true),
    })
}

/// Result of testing a system against a truncated series: `witness` is the
/// exponent tuple of the first surviving coefficient (none means annihilated
/// through the certified order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilationReport {
    /// The total degree through which annihilation was actually checked.
    pub certified_order: u32,
    pub max_nonzero_order: Option<u32>,
    pub witness: Option<[u32; 3]>,
}

impl AnnihilationReport {
    pub fn annihilated(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn certify_annihilation(sys: &OperatorSystem, s: &TruncatedSeries) -> Result<AnnihilationReport> {
    if s.order < 2 {
        return Err(Error::Usage("annihilation certificates need order >= 2".into()));
    }
    if s.nvars != sys.name.nvars() {
        return Err(Error::ArityMismatch {
            system: sys.name.label(),
            expected: sys.name.nvars(),
            got: s.nvars,
        });
    }
    let residuals = crate::par::map_collect(sys.operators.clone(), |op| apply(op, s));
    let mut certified = u32::MAX;
    let mut max_nonzero: Option<u32> = None;
    let mut witness: Option<[u32; 3]> = None;
    for r in &residuals {
        certified = certified.min(r.order);
    }
    for r in &residuals {
        for (k, v) in &r.coeffs {
            let deg: u32 = k.iter().sum();
            if deg > certified || v.is_zero() {
                continue;
            }
            max_nonzero = Some(max_nonzero.map_or(deg, |m| m.max(deg)));
            if witness.is_none() || *k < witness.unwrap() {
                witness = Some(*k);
            }
        }
    }
    Ok(AnnihilationReport { certified_order: certified, max_nonzero_order: max_nonzero, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::rat;
    use crate::truncated::{truncate_formal, FormalSeries, TruncatedSeries};
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn gauss_operator_on_one() {
        // P(a,b,c) 1 = -ab x
        let sys = build_system(SystemName::E, &[rat(1, 3), rat(2, 3), rat(4, 3)]).unwrap();
        let one = TruncatedSeries::one(1, 8);
        let r = apply(&sys.operators[0], &one);
        assert_eq!(r.coeff([0, 0, 0]), rat(0, 1));
        assert_eq!(r.coeff([1, 0, 0]), rat(-2, 9));
        assert_eq!(r.coeffs.len(), 1);
    }

    #[test]
    fn e2_p2_on_one() {
        let sys =
            build_system(SystemName::E2, &[rat(4, 3), rat(2, 3), rat(2, 3), rat(4, 3), rat(4, 3)])
                .unwrap();
        let one = TruncatedSeries::one(2, 8);
        let r = apply(&sys.operators[0], &one);
        // -ab x with a=4/3, b=2/3
        assert_eq!(r.coeff([1, 0, 0]), rat(-8, 9));
        assert_eq!(r.coeffs.len(), 1);
    }

    #[test]
    fn euler_eigenvalue_on_monomial() {
        let mut s = TruncatedSeries::zero(1, 8);
        s.set([5, 0, 0], rat(1, 1));
        let r = apply(&X::Euler(0), &s);
        assert_eq!(r.coeff([5, 0, 0]), rat(5, 1));
    }

    #[test]
    fn arity_is_enforced() {
        assert!(matches!(
            build_system(SystemName::E, &[rat(1, 2)]),
            Err(Error::ArityMismatch { .. })
        ));
        let p5: Vec<_> = (0..5).map(|_| rat(1, 2)).collect();
        assert_eq!(build_system(SystemName::Ed3, &p5).unwrap().operators.len(), 6);
        assert_eq!(build_system(SystemName::Ex3, &p5).unwrap().operators.len(), 5);
    }

    #[test]
    fn e_annihilates_gauss_random_params() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut draw = || {
                // numerators in [-9,9], denominators in [2,9]; redraw c until
                // it is not a nonpositive integer
                rat(rng.gen_range(-9..=9), rng.gen_range(2..=9))
            };
            let (a, b) = (draw(), draw());
            let c = loop {
                let c = draw();
                if !(c.is_integer() && c <= rat(0, 1)) {
                    break c;
                }
            };
            let s = truncate_formal(
                &FormalSeries::Gauss { a: a.clone(), b: b.clone(), c: c.clone() },
                8,
            )
            .unwrap();
            let sys = build_system(SystemName::E, &[a, b, c]).unwrap();
            let rep = certify_annihilation(&sys, &s).unwrap();
            assert!(rep.annihilated(), "witness {:?}", rep.witness);
            assert_eq!(rep.certified_order, 7);
        }
    }

    #[test]
    fn e1_annihilates_f1() {
        let (a, b, bp, c) = (rat(1, 5), rat(1, 3), rat(1, 7), rat(3, 2));
        let s = truncate_formal(
            &FormalSeries::F1 { a: a.clone(), b: b.clone(), bp: bp.clone(), c: c.clone() },
            8,
        )
        .unwrap();
        let sys = build_system(SystemName::E1, &[a, b, bp, c]).unwrap();
        let rep = certify_annihilation(&sys, &s).unwrap();
        assert!(rep.annihilated(), "witness {:?}", rep.witness);
    }

    #[test]
    fn e2_annihilates_f2_and_variant_does_not() {
        let p = [rat(4, 3), rat(2, 3), rat(2, 3), rat(4, 3), rat(4, 3)];
        let s = truncate_formal(
            &FormalSeries::F2 {
                a: p[0].clone(),
                b: p[1].clone(),
                bp: p[2].clone(),
                c: p[3].clone(),
                cp: p[4].clone(),
            },
            8,
        )
        .unwrap();
        let sys = build_system(SystemName::E2, &p).unwrap();
        assert!(certify_annihilation(&sys, &s).unwrap().annihilated());

        let bad = build_e2_variant_bp_d(&p).unwrap();
        let rep = certify_annihilation(&bad, &s).unwrap();
        assert!(!rep.annihilated(), "the (b'+D) variant must not annihilate F2");
    }

    #[test]
    fn ed3_annihilates_fd3_random_params() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut draw = || rat(rng.gen_range(-9..=9), rng.gen_range(2..=9));
            let (a, b1, b2, b3) = (draw(), draw(), draw(), draw());
            let c = loop {
                let c = draw();
                if !(c.is_integer() && c <= rat(0, 1)) {
                    break c;
                }
            };
            let s = truncate_formal(
                &FormalSeries::Fd3 {
                    a: a.clone(),
                    b1: b1.clone(),
                    b2: b2.clone(),
                    b3: b3.clone(),
                    c: c.clone(),
                },
                6,
            )
            .unwrap();
            let sys = build_system(SystemName::Ed3, &[a, b1, b2, b3, c]).unwrap();
            let rep = certify_annihilation(&sys, &s).unwrap();
            assert!(rep.annihilated(), "witness {:?}", rep.witness);
        }
    }

    #[test]
    fn ex3_annihilates_fx3() {
        // generic a2..a6; a1 is recovered from a1+...+a6 = 3 but does not
        // enter the operators.
        let p = [rat(1, 3), rat(2, 5), rat(1, 7), rat(3, 4), rat(1, 2)];
        let s = truncate_formal(
            &FormalSeries::Fx3 {
                a2: p[0].clone(),
                a3: p[1].clone(),
                a4: p[2].clone(),
                a5: p[3].clone(),
                a6: p[4].clone(),
            },
            6,
        )
        .unwrap();
        let sys = build_system(SystemName::Ex3, &p).unwrap();
        let rep = certify_annihilation(&sys, &s).unwrap();
        assert!(rep.annihilated(), "witness {:?}", rep.witness);
    }

    proptest! {
        #[test]
        fn apply_is_linear(seed in 0u64..1000) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let sparse = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut s = TruncatedSeries::zero(2, 6);
                for _ in 0..6 {
                    let i = rng.gen_range(0..=6u32);
                    let j = rng.gen_range(0..=(6 - i));
                    s.set([i, j, 0], rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)));
                }
                s
            };
            let (s, t) = (sparse(&mut rng), sparse(&mut rng));
            let sys = build_system(
                SystemName::E2,
                &[rat(4, 3), rat(2, 3), rat(2, 3), rat(4, 3), rat(4, 3)],
            ).unwrap();
            for op in &sys.operators {
                let lhs = apply(op, &s.add(&t).unwrap());
                let rhs = apply(op, &s).add(&apply(op, &t)).unwrap();
                prop_assert_eq!(lhs.coeffs, rhs.coeffs);
            }
            // scalar homogeneity too
            let lam = rat(-3, 7);
            for op in &sys.operators {
                let lhs = apply(op, &s.scale(&lam));
                let rhs = apply(op, &s).scale(&lam);
                prop_assert_eq!(lhs.coeffs, rhs.coeffs);
            }
        }
    }

    #[test]
    fn witness_points_at_first_bad_coefficient() {
        // a series that E at (1,1,2) does not annihilate
        let mut s = TruncatedSeries::zero(1, 6);
        s.set([0, 0, 0], rat(1, 1));
        s.set([1, 0, 0], rat(1, 1));
        let sys = build_system(SystemName::E, &[rat(1, 1), rat(1, 1), rat(2, 1)]).unwrap();
        let rep = certify_annihilation(&sys, &s).unwrap();
        assert!(!rep.annihilated());
        assert!(rep.witness.unwrap().iter().sum::<u32>() <= rep.certified_order);
    }
}
