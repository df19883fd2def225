//! Constructive Dirichlet approximation for rational inputs.
//!
//! One-dimensional: `1 <= q <= Z` with `|q*alpha - p| < 1/Z`, from continued
//! fraction convergents. Simultaneous: `1 <= q <= Z` with
//! `max_j |q*alpha_j - p_j|^d <= 1/Z`, by scanning `q`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, cmp_exact, from_int, pow_cmp, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<BigInt>,
    /// `(p_k, q_k)`; the last one equals the input.
    pub convergents: Vec<(BigInt, BigInt)>,
}

pub fn continued_fraction(alpha: &Rational) -> Result<ContinuedFraction> {
    if alpha.is_negative() {
        return Err(Error::Parse {
            what: "nonnegative rational",
            input: alpha.to_string(),
        });
    }
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    let (mut num, mut den) = (alpha.numer().clone(), alpha.denom().clone());
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    while !den.is_zero() {
        let quotient = &num / &den;
        let rem = &num - &quotient * &den;
        let p_next = &quotient * &p + &p_prev;
        let q_next = &quotient * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        convergents.push((p.clone(), q.clone()));
        quotients.push(quotient);
        num = std::mem::replace(&mut den, rem);
    }
    Ok(ContinuedFraction {
        quotients,
        convergents,
    })
}

/// Which inequality a witness was checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    Strict,
    NonStrict,
}

impl Inequality {
    pub fn as_str(self) -> &'static str {
        match self {
            Inequality::Strict => "strict",
            Inequality::NonStrict => "non-strict",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletWitness {
    pub q: BigInt,
    pub p: Vec<BigInt>,
    pub z: BigInt,
    /// `p_j / q - alpha_j`.
    pub residuals: Vec<Rational>,
    pub satisfied: bool,
    pub inequality: Inequality,
}

impl DirichletWitness {
    /// `max_j |q*alpha_j - p_j|`.
    pub fn max_scaled_residual(&self) -> Rational {
        let q = from_int(&self.q);
        self.residuals
            .iter()
            .map(|r| (r * &q).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn check_z(z: &BigInt) -> Result<()> {
    if !z.is_positive() {
        return Err(Error::NonPositive(z.clone()));
    }
    Ok(())
}

fn one_dim_witness(alpha: &Rational, p: BigInt, q: BigInt, z: &BigInt) -> DirichletWitness {
    let gap = (from_int(&q) * alpha - from_int(&p)).abs();
    let satisfied = gap * from_int(z) < Rational::one();
    let residual = Rational::new(p.clone(), q.clone()) - alpha;
    DirichletWitness {
        q,
        p: vec![p],
        z: z.clone(),
        residuals: vec![residual],
        satisfied,
        inequality: Inequality::Strict,
    }
}

/// `1 <= q <= Z` and `|q*alpha - p| < 1/Z`, checked exactly.
///
/// Takes the last convergent with denominator at most `Z`; if that misses the
/// strict bound (only possible for the zeroth convergent) every `q <= Z` is
/// tried with the nearest `p`.
pub fn dirichlet_1d(alpha: &Rational, z: &BigInt) -> Result<DirichletWitness> {
    check_z(z)?;
    let cf = continued_fraction(alpha)?;
    let (p, q) = cf
        .convergents
        .iter()
        .take_while(|(_, q)| q <= z)
        .last()
        .cloned()
        .expect("q_0 = 1 <= Z");
    let witness = one_dim_witness(alpha, p, q, z);
    if witness.satisfied {
        return Ok(witness);
    }
    let mut best = witness;
    let mut q = BigInt::one();
    while &q <= z {
        let p = lattice::round_half_even(&(from_int(&q) * alpha));
        let candidate = one_dim_witness(alpha, p, q.clone(), z);
        if candidate.satisfied {
            return Ok(candidate);
        }
        if candidate.max_scaled_residual() < best.max_scaled_residual() {
            best = candidate;
        }
        q += 1;
    }
    Ok(best)
}

/// Scans `q = 1..=Z` with `p_j` the nearest integer to `q*alpha_j` and returns
/// the first `q` with `max_j |q*alpha_j - p_j|^d <= 1/Z`. If none qualifies the
/// smallest maximal residual is returned with `satisfied = false`.
pub fn dirichlet_simultaneous(alphas: &[Rational], z: &BigInt) -> Result<DirichletWitness> {
    if alphas.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_z(z)?;
    if let Some(bad) = alphas.iter().find(|a| a.is_negative()) {
        return Err(Error::Parse {
            what: "nonnegative rational",
            input: bad.to_string(),
        });
    }
    let d = alphas.len() as u32;
    let bound = Rational::new(BigInt::one(), z.clone());
    let mut best: Option<(Rational, DirichletWitness)> = None;
    let mut q = BigInt::one();
    while &q <= z {
        let q_rat = from_int(&q);
        let p: Vec<BigInt> = alphas
            .iter()
            .map(|a| lattice::round_half_even(&(&q_rat * a)))
            .collect();
        let residuals: Vec<Rational> = alphas
            .iter()
            .zip(&p)
            .map(|(a, pj)| Rational::new(pj.clone(), q.clone()) - a)
            .collect();
        let worst = residuals
            .iter()
            .map(|r| (r * &q_rat).abs())
            .max()
            .expect("nonempty");
        let satisfied = pow_cmp(&worst, d, &bound) != Ordering::Greater;
        let witness = DirichletWitness {
            q: q.clone(),
            p,
            z: z.clone(),
            residuals,
            satisfied,
            inequality: Inequality::NonStrict,
        };
        if satisfied {
            return Ok(witness);
        }
        if best
            .as_ref()
            .is_none_or(|(b, _)| cmp_exact(&worst, b) == Ordering::Less)
        {
            best = Some((worst, witness));
        }
        q += 1;
    }
    Ok(best.expect("Z >= 1").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, ratio};
    use proptest::prelude::*;

    fn pairs(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(p, q)| (int(p), int(q))).collect()
    }

    #[test]
    fn continued_fraction_examples() {
        let cf = continued_fraction(&ratio(27, 26)).unwrap();
        assert_eq!(cf.quotients, vec![int(1), int(26)]);
        assert_eq!(cf.convergents, pairs(&[(1, 1), (27, 26)]));

        let cf = continued_fraction(&ratio(3, 7)).unwrap();
        assert_eq!(cf.quotients, vec![int(0), int(2), int(3)]);
        assert_eq!(cf.convergents, pairs(&[(0, 1), (1, 2), (3, 7)]));

        let cf = continued_fraction(&ratio(5, 1)).unwrap();
        assert_eq!(cf.quotients, vec![int(5)]);
        assert_eq!(cf.convergents, pairs(&[(5, 1)]));

        assert!(continued_fraction(&ratio(-1, 2)).is_err());
    }

    #[test]
    fn dirichlet_1d_examples() {
        let w = dirichlet_1d(&ratio(27, 26), &int(5)).unwrap();
        assert_eq!((w.p[0].clone(), w.q.clone()), (int(1), int(1)));
        assert_eq!(w.max_scaled_residual(), ratio(1, 26));
        assert!(w.satisfied);

        let w = dirichlet_1d(&ratio(3, 7), &int(2)).unwrap();
        assert_eq!((w.p[0].clone(), w.q.clone()), (int(1), int(2)));
        assert_eq!(w.max_scaled_residual(), ratio(1, 7));

        for z in [1, 2, 17] {
            let w = dirichlet_1d(&ratio(4, 1), &int(z)).unwrap();
            assert_eq!((w.p[0].clone(), w.q.clone()), (int(4), int(1)));
            assert_eq!(w.residuals[0], ratio(0, 1));
        }
    }

    #[test]
    fn dirichlet_1d_picks_last_admissible_convergent() {
        // [0; 1, 9] has q_0 = q_1 = 1; the later convergent 1/1 is taken
        let w = dirichlet_1d(&ratio(9, 10), &int(1)).unwrap();
        assert_eq!((w.p[0].clone(), w.q.clone()), (int(1), int(1)));
        assert!(w.satisfied);
        assert!(dirichlet_1d(&ratio(1, 2), &int(0)).is_err());
    }

    #[test]
    fn simultaneous_examples() {
        let w = dirichlet_simultaneous(&[ratio(3, 1), ratio(8, 1)], &int(7)).unwrap();
        assert_eq!(w.q, int(1));
        assert_eq!(w.p, vec![int(3), int(8)]);
        assert!(w.satisfied);

        // ties round to even: 3/2 -> 2; 7/3 -> 2; (1/2)^2 = 1/4 <= 1/4
        let w = dirichlet_simultaneous(&[ratio(3, 2), ratio(7, 3)], &int(4)).unwrap();
        assert_eq!(w.q, int(1));
        assert_eq!(w.p, vec![int(2), int(2)]);
        assert_eq!(w.max_scaled_residual(), ratio(1, 2));
        assert!(w.satisfied);
        assert_eq!(w.inequality, Inequality::NonStrict);
    }

    #[test]
    fn simultaneous_agrees_with_one_dim() {
        let alpha = ratio(27, 26);
        let one = dirichlet_1d(&alpha, &int(5)).unwrap();
        let sim = dirichlet_simultaneous(&[alpha], &int(5)).unwrap();
        assert_eq!((one.q, one.p), (sim.q, sim.p));
        assert!(sim.satisfied);
    }

    #[test]
    fn simultaneous_returns_first_q() {
        // q = 1: residuals 1/2, 1/2 and (1/2)^2 > 1/5; q = 2: exact
        let w = dirichlet_simultaneous(&[ratio(1, 2), ratio(1, 2)], &int(5)).unwrap();
        assert_eq!(w.q, int(2));
        assert_eq!(w.p, vec![int(1), int(1)]);
        assert_eq!(w.residuals, vec![ratio(0, 1), ratio(0, 1)]);
        assert!(w.satisfied);
    }

    proptest! {
        #[test]
        fn one_dim_contract(u in 0i64..1_000_000, v in 1i64..1_000_000, z in 1i64..1000) {
            let alpha = ratio(u, v);
            let w = dirichlet_1d(&alpha, &int(z)).unwrap();
            prop_assert!(w.q >= int(1) && w.q <= int(z));
            let gap = (from_int(&w.q) * &alpha - from_int(&w.p[0])).abs();
            prop_assert!(gap * ratio(z, 1) < ratio(1, 1));
            prop_assert!(w.satisfied);
        }

        #[test]
        fn convergents_are_best_approximations(u in 0i64..100_000, v in 1i64..5_000) {
            let alpha = ratio(u, v);
            let cf = continued_fraction(&alpha).unwrap();
            prop_assert_eq!(Rational::new(cf.convergents.last().unwrap().0.clone(),
                                          cf.convergents.last().unwrap().1.clone()), alpha.clone());
            for (pk, qk) in &cf.convergents {
                prop_assert_eq!(num_integer::Integer::gcd(pk, qk), int(1));
                let best = (from_int(qk) * &alpha - from_int(pk)).abs();
                let mut q = int(1);
                while &q < qk {
                    let p = lattice::round_half_even(&(from_int(&q) * &alpha));
                    let gap = (from_int(&q) * &alpha - from_int(&p)).abs();
                    prop_assert!(gap >= best);
                    q += 1;
                }
            }
            for w in cf.convergents.windows(2).skip(1) {
                prop_assert!(w[0].1 < w[1].1);
            }
        }

        #[test]
        fn nearest_integer_is_nearest(u in -100_000i64..100_000, v in 1i64..1000) {
            let x = ratio(u, v);
            let p = lattice::round_half_even(&x);
            let gap = (&x - from_int(&p)).abs();
            for other in [&p - 1, &p + 1] {
                prop_assert!((&x - from_int(&other)).abs() >= gap);
            }
        }

        #[test]
        fn simultaneous_contract(nums in proptest::collection::vec((0i64..1_000_000, 1i64..1_000_000), 1..4),
                                 z in 1i64..200) {
            let alphas: Vec<Rational> = nums.iter().map(|&(u, v)| ratio(u, v)).collect();
            let w = dirichlet_simultaneous(&alphas, &int(z)).unwrap();
            prop_assert!(w.q >= int(1) && w.q <= int(z));
            let worst = w.max_scaled_residual();
            let d = alphas.len() as u32;
            let ok = pow_cmp(&worst, d, &ratio(1, z)) != Ordering::Greater;
            prop_assert_eq!(ok, w.satisfied);
        }
    }
}
