//! Brute-force ground truth for small instances.
//!
//! Everything here scans a full bounding box and tests each lattice point
//! against the facet inequalities, so it shares no code path with the sliced
//! enumeration or the constructions it is used to check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, LatticeVector, Rational};
use crate::toric::WeightVector;
use crate::witness::{build_polytope, CEpsPolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Closed,
    Open,
}

/// A facet cleared of denominators: `coeffs . x + constant`.
struct IntegerFacet {
    coeffs: Vec<BigInt>,
    constant: BigInt,
}

fn integer_facets(polytope: &CEpsPolytope) -> Vec<IntegerFacet> {
    polytope
        .facets()
        .iter()
        .map(|f| {
            let scale = f
                .coeffs
                .iter()
                .fold(f.constant.denom().clone(), |acc, c| acc.lcm(c.denom()));
            let clear = |r: &Rational| r.numer() * (&scale / r.denom());
            IntegerFacet {
                coeffs: f.coeffs.iter().map(clear).collect(),
                constant: clear(&f.constant),
            }
        })
        .collect()
}

/// Upper corner of the box `[0, floor(max_k vertex_k[j])]` per axis.
fn bounding_box(polytope: &CEpsPolytope) -> Vec<BigInt> {
    (0..polytope.dim())
        .map(|j| {
            let top = polytope
                .vertices()
                .iter()
                .map(|v| v[j].clone())
                .max()
                .expect("vertices");
            lattice::floor(&top)
        })
        .collect()
}

fn box_size(corner: &[BigInt]) -> BigInt {
    corner.iter().map(|c| c + 1).product()
}

fn check_box(corner: &[BigInt], budget: u64) -> Result<()> {
    let size = box_size(corner);
    if size > BigInt::from(budget) {
        return Err(Error::Budget {
            estimated: size,
            cap: budget,
        });
    }
    Ok(())
}

/// Visits every point of the box in lexicographic order.
fn for_each_box_point(corner: &[BigInt], mut visit: impl FnMut(&[BigInt])) {
    let n = corner.len();
    let mut x = vec![BigInt::zero(); n];
    loop {
        visit(&x);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < corner[k] {
                x[k] += 1;
                break;
            }
            x[k] = BigInt::zero();
        }
    }
}

/// All lattice points of the polytope, sorted lexicographically. Open mode
/// requires every one of the `2n` inequalities to be strict.
pub fn enumerate_lattice_points(
    polytope: &CEpsPolytope,
    mode: Mode,
    budget: u64,
) -> Result<Vec<LatticeVector>> {
    let corner = bounding_box(polytope);
    check_box(&corner, budget)?;
    let facets = integer_facets(polytope);
    let mut points = Vec::new();
    for_each_box_point(&corner, |x| {
        let inside = facets.iter().all(|f| {
            let value: BigInt = f
                .coeffs
                .iter()
                .zip(x)
                .fold(f.constant.clone(), |acc, (c, xi)| acc + c * xi);
            match mode {
                Mode::Closed => !value.is_negative(),
                Mode::Open => value.is_positive(),
            }
        });
        if inside {
            points.push(LatticeVector::new(x.to_vec()).expect("nonempty"));
        }
    });
    Ok(points)
}

/// `psi(v) = sum(v) - (sum(a) - 1) * min_j v_j / a_j`, the maximum of the
/// linear pieces of `psi`.
pub fn psi_closed_form(a: &WeightVector, v: &[BigInt]) -> Rational {
    let w = a.weights();
    let sum_v: BigInt = v.iter().sum();
    let min_ratio = v
        .iter()
        .zip(w)
        .map(|(vj, aj)| Rational::new(vj.clone(), aj.clone()))
        .min()
        .expect("n >= 2");
    Rational::from_integer(sum_v) - Rational::from_integer(a.sum() - 1) * min_ratio
}

/// Minimum of `psi` over the nonzero lattice points of `C_n^1`.
pub fn mld_bruteforce(a: &WeightVector, budget: u64) -> Result<Rational> {
    let polytope = build_polytope(a, &Rational::one())?;
    enumerate_lattice_points(&polytope, Mode::Closed, budget)?
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| psi_closed_form(a, v.coords()))
        .min()
        .ok_or_else(|| Error::Incidence("C_n^1 has no nonzero lattice point".into()))
}

/// Whether "some lattice point lies in the open interior of `C_n^eps`" and
/// "some nonzero lattice point of the orthant has `psi < eps`" agree.
///
/// For the right side, `psi(v) >= v_j / a_j` for each `j`, so every candidate
/// sits in the box `v_j < eps * a_j`.
pub fn verify_interior_criterion(a: &WeightVector, eps: &Rational, budget: u64) -> Result<bool> {
    let polytope = build_polytope(a, eps)?;
    let interior_nonempty = !enumerate_lattice_points(&polytope, Mode::Open, budget)?.is_empty();

    let corner: Vec<BigInt> = a
        .weights()
        .iter()
        .map(|aj| lattice::floor(&(eps * Rational::from_integer(aj.clone()))))
        .collect();
    check_box(&corner, budget)?;
    let mut below_eps = false;
    for_each_box_point(&corner, |x| {
        if !below_eps && !x.iter().all(Zero::is_zero) && psi_closed_form(a, x) < *eps {
            below_eps = true;
        }
    });
    Ok(interior_nonempty == below_eps)
}
