//! The fan of the weighted blowup `X_a` and its log discrepancy function.
//!
//! The ray through `a` splits the first orthant into `n` maximal cones. Cone
//! `i` (zero-based) omits the axis `e_i` and is generated by `a` together with
//! every other `e_j`. `psi` is linear on each of them and equals 1 on all ray
//! generators, so on cone `i`
//!
//! ```text
//! psi(v) = sum_{j != i} v_j + v_i * (1 - sum_{j != i} a_j) / a_i.
//! ```
//!
//! Minimal log discrepancies are minima of `psi` over lattice points, which
//! this module finds by slicing the sublevel sets `{psi <= level}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, cmp_exact, from_int, gcd_all, LatticeVector, Rational, RationalVector};

/// Sorted, coprime weights `a_1 <= ... <= a_n` with `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<BigInt>);

impl WeightVector {
    pub fn new(weights: Vec<BigInt>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        if let Some(bad) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!(
                "weight {bad} is not positive"
            )));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidWeights(
                "weights must be sorted ascending".into(),
            ));
        }
        let g = gcd_all(&weights)?;
        if !g.is_one() {
            return Err(Error::InvalidWeights(format!(
                "weights share the factor {g}"
            )));
        }
        Ok(Self(weights))
    }

    pub fn from_u64s(weights: &[u64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    /// Parses a comma-separated list such as `"2,3,5"`.
    pub fn parse(input: &str) -> Result<Self> {
        let weights = input
            .split(',')
            .map(lattice::parse_int)
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.0
    }

    pub fn as_lattice(&self) -> LatticeVector {
        LatticeVector::new(self.0.clone()).expect("nonempty")
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn check_cone(&self, index: usize) -> Result<()> {
        if index >= self.dim() {
            return Err(Error::ConeIndex {
                index,
                dim: self.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Where a point of the orthant sits relative to the fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConePosition {
    /// In the relative interior of exactly one maximal cone.
    Interior,
    /// On a wall shared by several maximal cones, off the ray through `a`.
    Wall,
    /// On the ray through `a`.
    WeightRay,
    /// Some coordinate vanishes.
    CoordinateFace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeLocation {
    /// All maximal cones containing the point, ascending.
    pub cones: Vec<usize>,
    pub position: ConePosition,
}

/// `v = weight_coeff * a + sum_j axis_coeffs[j] * e_j` with `axis_coeffs[cone] == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricCoords {
    pub cone: usize,
    pub weight_coeff: Rational,
    pub axis_coeffs: Vec<Rational>,
}

impl BarycentricCoords {
    pub fn sum(&self) -> Rational {
        self.axis_coeffs
            .iter()
            .fold(self.weight_coeff.clone(), |acc, c| acc + c)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.weight_coeff.is_negative() && self.axis_coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn reconstruct(&self, a: &WeightVector) -> RationalVector {
        let coords = a
            .weights()
            .iter()
            .zip(&self.axis_coeffs)
            .map(|(w, c)| &self.weight_coeff * from_int(w) + c)
            .collect();
        RationalVector::new(coords).expect("nonempty")
    }
}

/// Decomposes a point along the generators of cone `cone`. The point need not
/// lie in that cone; coefficients then come out negative.
pub fn barycentric(a: &WeightVector, v: &RationalVector, cone: usize) -> Result<BarycentricCoords> {
    a.check_cone(cone)?;
    v.check_dim(a.dim())?;
    let ai = from_int(&a.weights()[cone]);
    let weight_coeff = &v[cone] / &ai;
    let axis_coeffs = a
        .weights()
        .iter()
        .enumerate()
        .map(|(j, aj)| {
            if j == cone {
                Rational::zero()
            } else {
                &v[j] - from_int(aj) * &weight_coeff
            }
        })
        .collect();
    Ok(BarycentricCoords {
        cone,
        weight_coeff,
        axis_coeffs,
    })
}

fn check_orthant_point(a: &WeightVector, v: &LatticeVector) -> Result<()> {
    v.check_dim(a.dim())?;
    if v.coords().iter().any(Signed::is_negative) {
        return Err(Error::InvalidVector(format!(
            "{v} has a negative coordinate"
        )));
    }
    if v.is_zero() {
        return Err(Error::InvalidVector("zero vector".into()));
    }
    Ok(())
}

/// Cones containing a nonnegative point: the indices minimizing `v_j / a_j`.
fn argmin_ratio(weights: &[BigInt], v: &[Rational]) -> Vec<usize> {
    let mut best: Vec<usize> = vec![0];
    for j in 1..weights.len() {
        let b = best[0];
        // v_j / a_j vs v_b / a_b
        let ord = (&v[j] * from_int(&weights[b])).cmp(&(&v[b] * from_int(&weights[j])));
        match ord {
            Ordering::Less => best = vec![j],
            Ordering::Equal => best.push(j),
            Ordering::Greater => {}
        }
    }
    best
}

pub fn locate_cone(a: &WeightVector, v: &LatticeVector) -> Result<ConeLocation> {
    check_orthant_point(a, v)?;
    Ok(locate_rational(a, &v.to_rational()))
}

pub(crate) fn locate_rational(a: &WeightVector, v: &RationalVector) -> ConeLocation {
    let cones = argmin_ratio(a.weights(), v.coords());
    let position = if v[cones[0]].is_zero() {
        ConePosition::CoordinateFace
    } else if cones.len() == a.dim() {
        ConePosition::WeightRay
    } else if cones.len() > 1 {
        ConePosition::Wall
    } else {
        ConePosition::Interior
    };
    ConeLocation { cones, position }
}

/// `psi(v)` for a nonzero lattice point of the first orthant.
pub fn psi_value(a: &WeightVector, v: &LatticeVector) -> Result<Rational> {
    check_orthant_point(a, v)?;
    Ok(psi_rational(a, &v.to_rational()))
}

/// `psi` at any point of the closed orthant; evaluated in the first cone
/// returned by the fan location.
pub fn psi_rational(a: &WeightVector, v: &RationalVector) -> Rational {
    let cone = argmin_ratio(a.weights(), v.coords())[0];
    barycentric(a, v, cone).expect("dimensions checked").sum()
}

/// A cone is smooth when its generators form a lattice basis, i.e. `a_i = 1`.
pub fn is_smooth_cone(a: &WeightVector, cone: usize) -> Result<bool> {
    a.check_cone(cone)?;
    Ok(a.weights()[cone].is_one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Terminal,
    Canonical,
    KltWithMld,
    NotLc,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Terminal => "terminal",
            Classification::Canonical => "canonical",
            Classification::KltWithMld => "klt-with-mld",
            Classification::NotLc => "not-lc-flag",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MldReport {
    pub weights: WeightVector,
    pub value: Rational,
    pub achieving_vector: LatticeVector,
    pub cone: usize,
    pub classification: Classification,
    pub points_scanned: u64,
    pub estimated_points: BigInt,
}

/// Cheap overestimate of the lattice points in `{psi <= level}`: the volume
/// `level^n * sum(a) / n!` plus one line of points per axis.
pub fn estimate_points(a: &WeightVector, level: &Rational) -> BigInt {
    let n = a.dim();
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let volume = num_traits::pow(level.clone(), n) * from_int(&a.sum()) / from_int(&factorial);
    let longest = lattice::floor(&(level * from_int(&a.weights()[n - 1])));
    lattice::ceil(&volume) + BigInt::from(n) * (longest + 1) + 1
}

fn check_budget(a: &WeightVector, level: &Rational, cap: u64) -> Result<BigInt> {
    let estimated = estimate_points(a, level);
    if estimated > BigInt::from(cap) {
        return Err(Error::Budget { estimated, cap });
    }
    Ok(estimated)
}

/// Walks the lattice points of `{x >= 0 : psi(x) <= level}` (or `< level`
/// when `strict`) in lexicographic order, origin included.
///
/// The projection of the sublevel set onto the first `k` coordinates is the
/// sublevel set of `psi` for the truncated weights `(a_1, ..., a_k)`, so each
/// coordinate ranges over an exact interval given the prefix and no bounding
/// box is ever materialized.
pub(crate) fn scan_sublevel<F>(
    weights: &[BigInt],
    level: &Rational,
    strict: bool,
    mut visit: F,
) -> (u64, ControlFlow<()>)
where
    F: FnMut(&[BigInt]) -> ControlFlow<()>,
{
    let mut scan = Scan {
        weights,
        level,
        strict,
        prefix: Vec::with_capacity(weights.len()),
        count: 0,
    };
    let flow = scan.descend(&BigInt::zero(), None, &BigInt::zero(), &mut visit);
    (scan.count, flow)
}

struct Scan<'a> {
    weights: &'a [BigInt],
    level: &'a Rational,
    strict: bool,
    prefix: Vec<BigInt>,
    count: u64,
}

impl Scan<'_> {
    fn descend<F>(
        &mut self,
        sum: &BigInt,
        min_ratio: Option<&Rational>,
        weight_sum: &BigInt,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[BigInt]) -> ControlFlow<()>,
    {
        let k = self.prefix.len();
        if k == self.weights.len() {
            self.count += 1;
            return visit(&self.prefix);
        }
        let c = &self.weights[k];
        let Some((lo, hi)) = self.next_range(sum, min_ratio, weight_sum, c) else {
            return ControlFlow::Continue(());
        };
        let next_weight_sum = weight_sum + c;
        let c_rat = from_int(c);
        let mut x = lo;
        while x <= hi {
            let ratio = from_int(&x) / &c_rat;
            let next_min = match min_ratio {
                Some(m) if cmp_exact(m, &ratio) != Ordering::Greater => m.clone(),
                _ => ratio,
            };
            let next_sum = sum + &x;
            self.prefix.push(x.clone());
            let flow = self.descend(&next_sum, Some(&next_min), &next_weight_sum, visit);
            self.prefix.pop();
            flow?;
            x += 1;
        }
        ControlFlow::Continue(())
    }

    /// Integer range of the next coordinate `x` given the prefix, from
    /// `f(x) = S + x - (P + c - 1) * min(m, x / c)` against the level, where
    /// `S`, `P`, `m` are the prefix sum, prefix weight sum and prefix minimum
    /// of `x_j / a_j`. `f` decreases up to `x = c*m` and increases after.
    fn next_range(
        &self,
        sum: &BigInt,
        min_ratio: Option<&Rational>,
        weight_sum: &BigInt,
        c: &BigInt,
    ) -> Option<(BigInt, BigInt)> {
        let level = self.level;
        let c_rat = from_int(c);
        let (lo, hi) = match min_ratio {
            // first coordinate: f(x) = x / c
            None => {
                let top = level * &c_rat;
                (BigInt::zero(), self.upper(&top))
            }
            Some(m) => {
                let s = from_int(sum);
                let b = weight_sum - 1;
                let f_min = &s - from_int(&b) * m;
                match (cmp_exact(&f_min, level), self.strict) {
                    (Ordering::Greater, _) | (Ordering::Equal, true) => return None,
                    _ => {}
                }
                let top = level - &s + from_int(&(weight_sum + c - 1)) * m;
                let lo = if b.is_zero() {
                    BigInt::zero()
                } else {
                    let bottom = &c_rat * (&s - level) / from_int(&b);
                    let lo = if self.strict {
                        lattice::floor(&bottom) + 1
                    } else {
                        lattice::ceil(&bottom)
                    };
                    lo.max(BigInt::zero())
                };
                (lo, self.upper(&top))
            }
        };
        (lo <= hi).then_some((lo, hi))
    }

    fn upper(&self, top: &Rational) -> BigInt {
        if self.strict {
            lattice::ceil(top) - 1
        } else {
            lattice::floor(top)
        }
    }
}

fn on_generator_ray(a: &WeightVector, v: &[BigInt]) -> bool {
    let nonzero = v.iter().filter(|c| !c.is_zero()).count();
    if nonzero == 1 {
        return true;
    }
    // a is primitive, so v lies on its ray iff v = t*a with t integral
    let w = a.weights();
    let (t, r) = v[0].div_rem(&w[0]);
    r.is_zero() && v.iter().zip(w).all(|(x, aj)| *x == &t * aj)
}

/// Global minimum of `psi` over nonzero lattice points of the first orthant.
///
/// Since `psi(e_1) = 1` only the lattice points of `{psi <= 1}` matter. Ties
/// go to the lexicographically smallest vector.
pub fn mld_global(a: &WeightVector, cap: u64) -> Result<MldReport> {
    let level = Rational::one();
    let estimated_points = check_budget(a, &level, cap)?;
    let mut best: Option<(Rational, Vec<BigInt>)> = None;
    let mut off_rays: Option<Rational> = None;
    let (points_scanned, _) = scan_sublevel(a.weights(), &level, false, |x| {
        if x.iter().all(Zero::is_zero) {
            return ControlFlow::Continue(());
        }
        let v = RationalVector::new(x.iter().map(from_int).collect()).expect("nonempty");
        let value = psi_rational(a, &v);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value.clone(), x.to_vec()));
        }
        if !on_generator_ray(a, x) && off_rays.as_ref().is_none_or(|m| value < *m) {
            off_rays = Some(value);
        }
        ControlFlow::Continue(())
    });
    let (value, point) = best.expect("e_1 lies in the sublevel set");
    let achieving_vector = LatticeVector::new(point).expect("nonempty");
    let cone = locate_cone(a, &achieving_vector)?.cones[0];
    // no off-ray point with psi <= 1 means every such point exceeds 1
    let classification = match off_rays {
        None => Classification::Terminal,
        Some(m) if m > Rational::one() => Classification::Terminal,
        Some(m) if m.is_one() => Classification::Canonical,
        Some(m) if m.is_positive() => Classification::KltWithMld,
        Some(_) => Classification::NotLc,
    };
    Ok(MldReport {
        weights: a.clone(),
        value,
        achieving_vector,
        cone,
        classification,
        points_scanned,
        estimated_points,
    })
}

/// Minimal log discrepancy at the torus-fixed point of maximal cone `cone`:
/// the infimum of `psi` over lattice points in the relative interior of the
/// cone (the codimension term vanishes for maximal cones).
///
/// Subtracting whole generators from an interior lattice point lowers `psi`
/// and keeps it interior, so the minimum is attained with every barycentric
/// coefficient in `(0, 1]`. There are exactly `a_i` such points: `v_i = t`
/// for `t = 1..=a_i` and `v_j = floor(a_j t / a_i) + 1`.
pub fn mld_at_fixed_point(a: &WeightVector, cone: usize, cap: u64) -> Result<Rational> {
    a.check_cone(cone)?;
    let ai = &a.weights()[cone];
    if *ai > BigInt::from(cap) {
        return Err(Error::Budget {
            estimated: ai.clone(),
            cap,
        });
    }
    let mut best: Option<Rational> = None;
    let mut t = BigInt::one();
    while &t <= ai {
        let mut psi = Rational::new(t.clone(), ai.clone());
        for (j, aj) in a.weights().iter().enumerate() {
            if j == cone {
                continue;
            }
            let scaled = Rational::new(aj * &t, ai.clone());
            psi += from_int(&(lattice::floor(&scaled) + 1)) - scaled;
        }
        if best.as_ref().is_none_or(|b| psi < *b) {
            best = Some(psi);
        }
        t += 1;
    }
    Ok(best.expect("a_i >= 1"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsLcCheck {
    pub eps_lc: bool,
    pub refuting: Option<LatticeVector>,
    pub points_scanned: u64,
}

pub fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(Error::EpsOutOfRange(eps.to_string()));
    }
    Ok(())
}

/// Decides `mld >= eps` for `0 < eps <= 1`.
///
/// Codimension-one points have mld 1, so only `psi` over nonzero lattice
/// points matters. Stops at the first point with `psi < eps`.
pub fn is_eps_lc(a: &WeightVector, eps: &Rational, cap: u64) -> Result<EpsLcCheck> {
    check_eps(eps)?;
    check_budget(a, eps, cap)?;
    let mut refuting = None;
    let (points_scanned, _) = scan_sublevel(a.weights(), eps, true, |x| {
        if x.iter().all(Zero::is_zero) {
            return ControlFlow::Continue(());
        }
        refuting = Some(LatticeVector::new(x.to_vec()).expect("nonempty"));
        ControlFlow::Break(())
    });
    Ok(EpsLcCheck {
        eps_lc: refuting.is_none(),
        refuting,
        points_scanned,
    })
}
