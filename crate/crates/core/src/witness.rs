//! The polytope `C_n^eps` and constructions of interior lattice points.
//!
//! An integral point `w` in the open interior of
//! `C_n^eps = conv(0, eps*e_1, ..., eps*e_n, eps*a)` has `psi(w) < eps`, so
//! `X_a` is not eps-lc. The constructions below aim a rational line from the
//! origin nearly along `a` (via Dirichlet approximation) and walk its lattice
//! points until the line leaves the polytope.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::diophantine::{dirichlet_1d, dirichlet_simultaneous, DirichletWitness};
use crate::error::{Error, Result};
use crate::lattice::{self, cmp_exact, from_int, pow_cmp, LatticeVector, Rational, RationalVector};
use crate::toric::{self, check_eps, psi_value, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetKind {
    /// `x_i >= 0`.
    Coordinate(usize),
    /// The hyperplane through every vertex except `eps*e_i`.
    Weighted(usize),
}

/// `coeffs . x + constant >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub kind: FacetKind,
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl HalfSpace {
    pub fn slack(&self, x: &RationalVector) -> Rational {
        self.coeffs
            .iter()
            .zip(x.coords())
            .fold(self.constant.clone(), |acc, (c, xi)| acc + c * xi)
    }
}

/// `C_n^eps` in both vertex and half-space form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CEpsPolytope {
    weights: Vec<BigInt>,
    eps: Rational,
    vertices: Vec<RationalVector>,
    facets: Vec<HalfSpace>,
}

pub fn build_polytope(a: &WeightVector, eps: &Rational) -> Result<CEpsPolytope> {
    check_eps(eps)?;
    CEpsPolytope::from_weights(a.weights(), eps)
}

impl CEpsPolytope {
    /// Any positive weights; coprimality is not needed for the geometry, which
    /// lets coordinate projections of `C_n^eps` be built the same way.
    pub(crate) fn from_weights(weights: &[BigInt], eps: &Rational) -> Result<Self> {
        let n = weights.len();
        if n < 2 || weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!("{weights:?}")));
        }
        let total: BigInt = weights.iter().sum();
        let mut vertices = vec![RationalVector::new(vec![Rational::zero(); n])?];
        for i in 0..n {
            vertices.push(LatticeVector::unit(n, i).to_rational().scale(eps));
        }
        let apex = LatticeVector::new(weights.to_vec())?
            .to_rational()
            .scale(eps);
        vertices.push(apex);

        let mut facets = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[i] = Rational::one();
            facets.push(HalfSpace {
                kind: FacetKind::Coordinate(i),
                coeffs,
                constant: Rational::zero(),
            });
        }
        for (i, ai) in weights.iter().enumerate() {
            // ((sum_{j != i} a_j - 1) / a_i) x_i - sum_{j != i} x_j + eps
            let lead = Rational::new(&total - ai - 1, ai.clone());
            let coeffs = (0..n)
                .map(|j| {
                    if j == i {
                        lead.clone()
                    } else {
                        -Rational::one()
                    }
                })
                .collect();
            facets.push(HalfSpace {
                kind: FacetKind::Weighted(i),
                coeffs,
                constant: eps.clone(),
            });
        }
        let polytope = Self {
            weights: weights.to_vec(),
            eps: eps.clone(),
            vertices,
            facets,
        };
        polytope.check_incidence()?;
        Ok(polytope)
    }

    fn check_incidence(&self) -> Result<()> {
        let n = self.dim();
        for facet in &self.facets {
            for (k, vertex) in self.vertices.iter().enumerate() {
                let slack = facet.slack(vertex);
                // vertex 0 is the origin, 1..=n are eps*e_i, n+1 is eps*a
                let expected_zero = match facet.kind {
                    FacetKind::Coordinate(i) => k == 0 || (k >= 1 && k <= n && k - 1 != i),
                    FacetKind::Weighted(i) => k >= 1 && k - 1 != i,
                };
                let ok = if expected_zero {
                    slack.is_zero()
                } else {
                    slack.is_positive()
                };
                if !ok {
                    return Err(Error::Incidence(format!(
                        "{:?} has slack {slack} at vertex {k}",
                        facet.kind
                    )));
                }
            }
            if let FacetKind::Weighted(i) = facet.kind {
                if facet.slack(&self.vertices[0]) != self.eps {
                    return Err(Error::Incidence(format!("Pi_{i} slack at origin")));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    /// `0, eps*e_1, ..., eps*e_n, eps*a` in that order.
    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// The `n` coordinate half-spaces followed by the `n` weighted ones.
    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn weighted_facet(&self, i: usize) -> &HalfSpace {
        &self.facets[self.dim() + i]
    }

    pub fn slacks(&self, x: &RationalVector) -> Vec<Rational> {
        self.facets.iter().map(|f| f.slack(x)).collect()
    }

    pub fn contains_interior_rational(&self, x: &RationalVector) -> Result<bool> {
        x.check_dim(self.dim())?;
        Ok(self.facets.iter().all(|f| f.slack(x).is_positive()))
    }

    pub fn contains_closed_rational(&self, x: &RationalVector) -> Result<bool> {
        x.check_dim(self.dim())?;
        Ok(self.facets.iter().all(|f| !f.slack(x).is_negative()))
    }

    /// Interior membership through the cone decomposition instead of the
    /// facets. In the cone `i` minimizing `x_j / a_j`,
    /// `x = l_0 * a + sum_{j != i} l_j * e_j` with `l_j >= 0`, and `x` is
    /// interior iff `l_0 > 0` and `sum l < eps` (points on a wall between
    /// two cones have some `l_j = 0` yet can be interior).
    pub fn contains_interior_barycentric(&self, x: &RationalVector) -> Result<bool> {
        x.check_dim(self.dim())?;
        let (cone, min_ratio) = self
            .weights
            .iter()
            .enumerate()
            .map(|(j, aj)| (j, &x[j] / from_int(aj)))
            .min_by(|l, r| cmp_exact(&l.1, &r.1))
            .expect("n >= 2");
        if !min_ratio.is_positive() {
            return Ok(false);
        }
        let mut total = min_ratio.clone();
        for (j, aj) in self.weights.iter().enumerate() {
            if j != cone {
                total += &x[j] - from_int(aj) * &min_ratio;
            }
        }
        Ok(cmp_exact(&total, &self.eps) == Ordering::Less)
    }
}

pub fn contains_interior(polytope: &CEpsPolytope, v: &LatticeVector) -> Result<bool> {
    polytope.contains_interior_rational(&v.to_rational())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    N2Case1,
    N2Case2,
    N3Projection,
    GeneralTheta,
    Enumeration,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::N2Case1 => "n2-case1",
            Method::N2Case2 => "n2-case2",
            Method::N3Projection => "n3-projection",
            Method::GeneralTheta => "general-theta",
            Method::Enumeration => "enumeration",
        }
    }
}

/// Data recorded by a construction, whether or not it succeeded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub dirichlet: Option<DirichletWitness>,
    /// First coordinate where the approximating line leaves the polytope.
    pub exit_coordinate: Option<Rational>,
    /// Line coefficients `A_i` of the general construction, per facet.
    pub line_coefficients: Vec<Rational>,
    /// Open interval of admissible `x_3` on the vertical line.
    pub x3_interval: Option<(Rational, Rational)>,
    /// Multiple of the primitive direction that was accepted.
    pub multiple: Option<BigInt>,
    /// Whether `a_j / a_2 <= a_1^theta` held, when it was checked.
    pub theta_hypothesis: Option<bool>,
    pub points_scanned: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub weights: WeightVector,
    pub eps: Rational,
    pub point: LatticeVector,
    pub psi: Rational,
    pub method: Method,
    pub trace: Trace,
}

impl Certificate {
    fn new(
        a: &WeightVector,
        eps: &Rational,
        point: LatticeVector,
        method: Method,
        trace: Trace,
    ) -> Result<Self> {
        let psi = psi_value(a, &point)?;
        Ok(Self {
            weights: a.clone(),
            eps: eps.clone(),
            point,
            psi,
            method,
            trace,
        })
    }

    /// Re-checks interior membership and `psi < eps` from scratch.
    pub fn verify(&self) -> Result<bool> {
        let polytope = build_polytope(&self.weights, &self.eps)?;
        let psi = psi_value(&self.weights, &self.point)?;
        Ok(psi == self.psi
            && cmp_exact(&psi, &self.eps) == Ordering::Less
            && contains_interior(&polytope, &self.point)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attempt {
    Certified(Certificate),
    Failed {
        method: Method,
        reason: String,
        trace: Trace,
    },
}

impl Attempt {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Attempt::Certified(c) => Some(c),
            Attempt::Failed { .. } => None,
        }
    }

    pub fn trace(&self) -> &Trace {
        match self {
            Attempt::Certified(c) => &c.trace,
            Attempt::Failed { trace, .. } => trace,
        }
    }
}

fn check_dim(a: &WeightVector, n: usize) -> Result<()> {
    if a.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: a.dim(),
        });
    }
    Ok(())
}

/// Walks `k * direction` for `k = 1..=floor(exit / direction[0])` and returns
/// the first interior point with its multiple.
fn first_interior_multiple(
    polytope: &CEpsPolytope,
    direction: &[BigInt],
    exit: &Rational,
) -> Result<Option<(BigInt, LatticeVector)>> {
    let base = LatticeVector::new(direction.to_vec())?;
    let last = lattice::floor(&(exit / from_int(&direction[0])));
    let mut k = BigInt::one();
    while k <= last {
        let candidate = base.scale(&k);
        if contains_interior(polytope, &candidate)? {
            return Ok(Some((k, candidate)));
        }
        k += 1;
    }
    Ok(None)
}

/// The two-dimensional construction.
///
/// With `Z = floor(sqrt(a_1))` and `p/q` a Dirichlet approximation of
/// `a_2/a_1`, the line `y = (p/q) x` leaves `C_2^eps` through the facet on
/// `eps*e_1` (case 1, `p/q <= a_2/a_1`) or the one on `eps*e_2` (case 2).
/// Past the threshold `a_1 >= bound_m(2, eps)` the exit lies beyond `x = q`.
pub fn witness_n2(a: &WeightVector, eps: &Rational) -> Result<Attempt> {
    check_dim(a, 2)?;
    check_eps(eps)?;
    let (a1, a2) = (&a.weights()[0], &a.weights()[1]);
    if a1.is_one() {
        return Ok(Attempt::Failed {
            method: Method::N2Case1,
            reason: "a_1 = 1: the facet through eps*e_1 is vertical".into(),
            trace: Trace::default(),
        });
    }
    let alpha = Rational::new(a2.clone(), a1.clone());
    let z = lattice::nth_root_floor(a1, 2);
    let dirichlet = dirichlet_1d(&alpha, &z)?;
    let (p, q) = (dirichlet.p[0].clone(), dirichlet.q.clone());
    let slope = Rational::new(p.clone(), q.clone());
    let (method, exit) = if cmp_exact(&slope, &alpha) != Ordering::Greater {
        // y = (a_2 / (a_1 - 1)) (x - eps)
        let steep = Rational::new(a2.clone(), a1 - 1);
        let exit = eps * &steep / (&steep - &slope);
        (Method::N2Case1, exit)
    } else {
        // y - eps = ((a_2 - 1) / a_1) x
        let shallow = Rational::new(a2 - 1, a1.clone());
        (Method::N2Case2, eps / (&slope - shallow))
    };
    let polytope = build_polytope(a, eps)?;
    let mut trace = Trace {
        dirichlet: Some(dirichlet),
        exit_coordinate: Some(exit.clone()),
        ..Trace::default()
    };
    match first_interior_multiple(&polytope, &[q, p], &exit)? {
        Some((k, point)) => {
            trace.multiple = Some(k);
            Ok(Attempt::Certified(Certificate::new(
                a, eps, point, method, trace,
            )?))
        }
        None => Ok(Attempt::Failed {
            method,
            reason: "no lattice point of the line before its exit".into(),
            trace,
        }),
    }
}

/// Default `theta = 1 / (2 n^2 + 1)`.
pub fn default_theta(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2 * n * n + 1))
}

fn check_theta(theta: &Rational, n: usize) -> Result<()> {
    let limit = Rational::new(BigInt::one(), BigInt::from(2 * n * n));
    if !theta.is_positive() || cmp_exact(theta, &limit) != Ordering::Less {
        return Err(Error::ThetaOutOfRange(theta.to_string()));
    }
    Ok(())
}

/// `ratio <= base^theta`, compared as `ratio^den(theta) <= base^num(theta)`.
fn at_most_power(ratio: &Rational, base: &BigInt, theta: &Rational) -> Result<bool> {
    let den = theta
        .denom()
        .to_u32()
        .ok_or_else(|| Error::ThetaOutOfRange(theta.to_string()))?;
    let num = theta
        .numer()
        .to_usize()
        .ok_or_else(|| Error::ThetaOutOfRange(theta.to_string()))?;
    let rhs = from_int(&num_traits::pow(base.clone(), num));
    Ok(pow_cmp(ratio, den, &rhs) != Ordering::Greater)
}

/// Whether `a_j / a_2 <= a_1^theta` for every `j >= 3`.
pub fn theta_hypothesis(a: &WeightVector, theta: &Rational) -> Result<bool> {
    let w = a.weights();
    for aj in &w[2..] {
        if !at_most_power(&Rational::new(aj.clone(), w[1].clone()), &w[0], theta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The general construction along `x_j = (p_j / p_1) x_1`.
///
/// `(p_1; p_2..p_n)` is a simultaneous approximation of `(a_2..a_n)/a_1` with
/// `Z = floor(a_1^(1/n))`. Writing `l_1 = 0`, `l_j = p_j/p_1 - a_j/a_1`, the
/// line meets the facet through all vertices but `eps*e_i` at
/// `x_1 = eps / A_i` with
///
/// ```text
/// A_i = sum_{j != i} (l_j - (a_j / a_i) l_i) + 1/a_1 + l_i / a_i,
/// ```
///
/// and it leaves the polytope at the smallest such positive `x_1`.
pub fn witness_general_theta(
    a: &WeightVector,
    eps: &Rational,
    theta: &Rational,
) -> Result<Attempt> {
    check_eps(eps)?;
    let n = a.dim();
    check_theta(theta, n)?;
    let w = a.weights();
    let hypothesis = theta_hypothesis(a, theta)?;
    let a1 = from_int(&w[0]);
    let alphas: Vec<Rational> = w[1..].iter().map(|aj| from_int(aj) / &a1).collect();
    let z = lattice::nth_root_floor(&w[0], n as u32);
    let dirichlet = dirichlet_simultaneous(&alphas, &z)?;
    let mut trace = Trace {
        theta_hypothesis: Some(hypothesis),
        ..Trace::default()
    };
    if !dirichlet.satisfied {
        trace.dirichlet = Some(dirichlet);
        return Ok(Attempt::Failed {
            method: Method::GeneralTheta,
            reason: "approximation inconclusive".into(),
            trace,
        });
    }
    let mut direction = vec![dirichlet.q.clone()];
    direction.extend(dirichlet.p.iter().cloned());
    let mut lambda = vec![Rational::zero()];
    lambda.extend(dirichlet.residuals.iter().cloned());

    let coefficients: Vec<Rational> = (0..n)
        .map(|i| {
            let ai = from_int(&w[i]);
            let mut total = Rational::one() / &a1 + &lambda[i] / &ai;
            for j in (0..n).filter(|&j| j != i) {
                total += &lambda[j] - from_int(&w[j]) / &ai * &lambda[i];
            }
            total
        })
        .collect();
    let exit = coefficients
        .iter()
        .filter(|c| c.is_positive())
        .map(|c| eps / c)
        .min();
    trace.dirichlet = Some(dirichlet);
    trace.line_coefficients = coefficients;
    let Some(exit) = exit else {
        return Ok(Attempt::Failed {
            method: Method::GeneralTheta,
            reason: "line never leaves the polytope".into(),
            trace,
        });
    };
    trace.exit_coordinate = Some(exit.clone());
    let polytope = build_polytope(a, eps)?;
    match first_interior_multiple(&polytope, &direction, &exit)? {
        Some((k, point)) => {
            trace.multiple = Some(k);
            Ok(Attempt::Certified(Certificate::new(
                a,
                eps,
                point,
                Method::GeneralTheta,
                trace,
            )?))
        }
        None => Ok(Attempt::Failed {
            method: Method::GeneralTheta,
            reason: "no lattice point of the line before its exit".into(),
            trace,
        }),
    }
}

/// The three-dimensional construction.
///
/// When `a_3 / a_2 <= a_1^theta` this defers to [`witness_general_theta`].
/// Otherwise `(q, p)` from the planar approximation of `a_2 / a_1` is lifted
/// along the vertical line `x_1 = q, x_2 = p`, which crosses the polytope
/// between the facet on `eps*e_1, eps*e_2` from below and the lower of the
/// other two from above.
pub fn witness_n3(a: &WeightVector, eps: &Rational, theta: &Rational) -> Result<Attempt> {
    check_dim(a, 3)?;
    check_eps(eps)?;
    check_theta(theta, 3)?;
    let w = a.weights();
    let (a1, a2, a3) = (&w[0], &w[1], &w[2]);
    if at_most_power(&Rational::new(a3.clone(), a2.clone()), a1, theta)? {
        return witness_general_theta(a, eps, theta);
    }
    let mut trace = Trace {
        theta_hypothesis: Some(false),
        ..Trace::default()
    };
    let m2 = lattice::nth_root_floor(a1, 2);
    let dirichlet = dirichlet_1d(&Rational::new(a2.clone(), a1.clone()), &m2)?;
    let (p, q) = (dirichlet.p[0].clone(), dirichlet.q.clone());
    trace.dirichlet = Some(dirichlet);

    let projection = CEpsPolytope::from_weights(&w[..2], eps)?;
    let foot = LatticeVector::new(vec![q.clone(), p.clone()])?;
    if !contains_interior(&projection, &foot)? {
        return Ok(Attempt::Failed {
            method: Method::N3Projection,
            reason: "(q, p) is outside the projected polygon".into(),
            trace,
        });
    }
    let (qr, pr) = (from_int(&q), from_int(&p));
    let lo = from_int(a3) * (&qr + &pr - eps) / from_int(&(a1 + a2 - 1));
    let via_first = Rational::new(a2 + a3 - 1, a1.clone()) * &qr - &pr + eps;
    let via_second = Rational::new(a1 + a3 - 1, a2.clone()) * &pr - &qr + eps;
    let hi = via_first.min(via_second);
    trace.x3_interval = Some((lo.clone(), hi.clone()));
    let x3 = lattice::floor(&lo) + 1;
    if cmp_exact(&from_int(&x3), &hi) != Ordering::Less {
        return Ok(Attempt::Failed {
            method: Method::N3Projection,
            reason: "no integer strictly inside the vertical interval".into(),
            trace,
        });
    }
    let point = LatticeVector::new(vec![q, p, x3])?;
    let polytope = build_polytope(a, eps)?;
    if !contains_interior(&polytope, &point)? {
        return Ok(Attempt::Failed {
            method: Method::N3Projection,
            reason: "lifted point failed the interior check".into(),
            trace,
        });
    }
    Ok(Attempt::Certified(Certificate::new(
        a,
        eps,
        point,
        Method::N3Projection,
        trace,
    )?))
}

/// Runs the construction matching the dimension.
pub fn construct(a: &WeightVector, eps: &Rational, theta: &Rational) -> Result<Attempt> {
    match a.dim() {
        2 => witness_n2(a, eps),
        3 => witness_n3(a, eps, theta),
        _ => witness_general_theta(a, eps, theta),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Construction first, then enumeration.
    #[default]
    Auto,
    ConstructionOnly,
    EnumerationOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NotEpsLc(Box<Certificate>),
    EpsLc { points_scanned: u64 },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NotEpsLc(_) => "not-eps-lc",
            Verdict::EpsLc { .. } => "eps-lc",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// Outcome of the construction step, when one ran.
    pub construction: Option<Attempt>,
}

impl Decision {
    /// Short tags describing the construction step.
    pub fn flags(&self) -> Vec<&'static str> {
        let mut flags = Vec::new();
        if let Some(attempt) = &self.construction {
            match attempt.trace().theta_hypothesis {
                Some(true) => flags.push("theta-held"),
                Some(false) => flags.push("theta-violated"),
                None => {}
            }
            if attempt.certificate().is_none() {
                flags.push("construction-failed");
            }
        }
        flags
    }
}

/// Decides whether `X_a` fails to be eps-lc, preferring a construction and
/// falling back to a budgeted search for a point with `psi < eps`. Every
/// certificate is re-verified before it is returned; a budget overrun yields
/// `Inconclusive`, never a guess.
pub fn certify_not_eps_lc(
    a: &WeightVector,
    eps: &Rational,
    theta: Option<&Rational>,
    cap: u64,
    strategy: Strategy,
) -> Result<Decision> {
    check_eps(eps)?;
    let theta = theta.cloned().unwrap_or_else(|| default_theta(a.dim()));
    let mut construction = None;
    if strategy != Strategy::EnumerationOnly {
        let attempt = construct(a, eps, &theta)?;
        if let Some(cert) = attempt.certificate() {
            if cert.verify()? {
                return Ok(Decision {
                    verdict: Verdict::NotEpsLc(Box::new(cert.clone())),
                    construction: Some(attempt),
                });
            }
        }
        construction = Some(attempt);
    }
    if strategy == Strategy::ConstructionOnly {
        return Ok(Decision {
            verdict: Verdict::Inconclusive {
                reason: "construction failed".into(),
            },
            construction,
        });
    }
    let verdict = match toric::is_eps_lc(a, eps, cap) {
        Ok(check) => match check.refuting {
            Some(point) => {
                let trace = Trace {
                    points_scanned: Some(check.points_scanned),
                    ..Trace::default()
                };
                let cert = Certificate::new(a, eps, point, Method::Enumeration, trace)?;
                if !cert.verify()? {
                    return Err(Error::Incidence(format!(
                        "enumerated point {} failed verification",
                        cert.point
                    )));
                }
                Verdict::NotEpsLc(Box::new(cert))
            }
            None => Verdict::EpsLc {
                points_scanned: check.points_scanned,
            },
        },
        Err(err @ Error::Budget { .. }) => Verdict::Inconclusive {
            reason: err.to_string(),
        },
        Err(err) => return Err(err),
    };
    Ok(Decision {
        verdict,
        construction,
    })
}

/// `floor((2/eps + 1)^2) + 1` for `n = 2`; no closed form is known beyond.
pub fn bound_m(n: usize, eps: &Rational) -> Option<BigInt> {
    if n != 2 || !eps.is_positive() {
        return None;
    }
    let base = Rational::from_integer(BigInt::from(2)) / eps + Rational::one();
    Some(lattice::floor(&(&base * &base)) + 1)
}

/// Lattice points of the open interior of `C_n^eps`, lexicographic, by the
/// same exact slicing used for minimal log discrepancies.
pub fn interior_points(polytope: &CEpsPolytope, cap: u64) -> Result<Vec<LatticeVector>> {
    let a = WeightVector::new(polytope.weights.clone())?;
    let estimated = toric::estimate_points(&a, &polytope.eps);
    if estimated > BigInt::from(cap) {
        return Err(Error::Budget { estimated, cap });
    }
    let mut points = Vec::new();
    let _ = toric::scan_sublevel(polytope.weights(), &polytope.eps, true, |x| {
        if x.iter().all(|c| c.is_positive()) {
            points.push(LatticeVector::new(x.to_vec()).expect("nonempty"));
        }
        ControlFlow::Continue(())
    });
    Ok(points)
}
