//! JSON forms of reports. Integers are emitted as JSON numbers of any size;
//! rationals as `"p/q"` strings.

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::diophantine::DirichletWitness;
use crate::lattice::{LatticeVector, Rational};
use crate::toric::{MldReport, WeightVector};
use crate::witness::{Attempt, Certificate, Decision, Trace, Verdict};

pub fn int_value(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer"))
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn weights(a: &WeightVector) -> Value {
    ints(a.weights())
}

fn point(v: &LatticeVector) -> Value {
    ints(v.coords())
}

pub fn mld_report(r: &MldReport) -> Value {
    json!({
        "weights": weights(&r.weights),
        "mld": rational(&r.value),
        "achieved_at": point(&r.achieving_vector),
        "cone": r.cone + 1,
        "points_scanned": r.points_scanned,
        "classification": r.classification.as_str(),
    })
}

pub fn dirichlet(w: &DirichletWitness) -> Value {
    json!({
        "q": int_value(&w.q),
        "p": ints(&w.p),
        "z": int_value(&w.z),
        "residuals": w.residuals.iter().map(rational).collect::<Vec<_>>(),
        "satisfied": w.satisfied,
        "inequality": w.inequality.as_str(),
    })
}

pub fn trace(t: &Trace) -> Value {
    let mut map = Map::new();
    if let Some(d) = &t.dirichlet {
        map.insert("dirichlet".into(), dirichlet(d));
    }
    if let Some(x) = &t.exit_coordinate {
        map.insert("exit_coordinate".into(), rational(x));
    }
    if !t.line_coefficients.is_empty() {
        map.insert(
            "line_coefficients".into(),
            t.line_coefficients.iter().map(rational).collect(),
        );
    }
    if let Some((lo, hi)) = &t.x3_interval {
        map.insert("x3_interval".into(), json!([rational(lo), rational(hi)]));
    }
    if let Some(k) = &t.multiple {
        map.insert("multiple".into(), int_value(k));
    }
    if let Some(h) = t.theta_hypothesis {
        map.insert("theta_hypothesis".into(), Value::Bool(h));
    }
    if let Some(n) = t.points_scanned {
        map.insert("points_scanned".into(), json!(n));
    }
    Value::Object(map)
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "weights": weights(&c.weights),
        "eps": rational(&c.eps),
        "point": point(&c.point),
        "psi": rational(&c.psi),
        "method": c.method.as_str(),
        "trace": trace(&c.trace),
    })
}

pub fn decision(a: &WeightVector, eps: &Rational, d: &Decision) -> Value {
    let mut map = Map::new();
    map.insert("weights".into(), weights(a));
    map.insert("eps".into(), rational(eps));
    map.insert("verdict".into(), Value::String(d.verdict.as_str().into()));
    match &d.verdict {
        Verdict::NotEpsLc(c) => {
            map.insert("certificate".into(), certificate(c));
        }
        Verdict::EpsLc { points_scanned } => {
            map.insert("points_scanned".into(), json!(points_scanned));
        }
        Verdict::Inconclusive { reason } => {
            map.insert("reason".into(), Value::String(reason.clone()));
        }
    }
    if let Some(Attempt::Failed {
        method,
        reason,
        trace: t,
    }) = &d.construction
    {
        map.insert(
            "construction".into(),
            json!({
                "method": method.as_str(),
                "reason": reason,
                "trace": trace(t),
            }),
        );
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ratio;
    use crate::toric::mld_global;
    use crate::witness::{certify_not_eps_lc, Strategy};

    #[test]
    fn mld_json_shape() {
        let r = mld_global(&WeightVector::from_u64s(&[2, 3]).unwrap(), 100).unwrap();
        let v = mld_report(&r);
        assert_eq!(v["mld"], "2/3");
        assert_eq!(v["achieved_at"], json!([1, 1]));
        assert_eq!(v["cone"], 2);
        assert_eq!(v["weights"], json!([2, 3]));
        assert_eq!(v["points_scanned"], 6);
    }

    #[test]
    fn huge_integers_stay_numbers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(
            serde_json::to_string(&int_value(&big)).unwrap(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn certificate_json_shape() {
        let a = WeightVector::from_u64s(&[26, 27]).unwrap();
        let d = certify_not_eps_lc(&a, &ratio(1, 2), None, 1000, Strategy::Auto).unwrap();
        let v = decision(&a, &ratio(1, 2), &d);
        assert_eq!(v["verdict"], "not-eps-lc");
        let c = &v["certificate"];
        assert_eq!(c["point"], json!([1, 1]));
        assert_eq!(c["psi"], "2/27");
        assert_eq!(c["method"], "n2-case1");
        assert_eq!(c["trace"]["exit_coordinate"], "27/4");
        assert_eq!(c["trace"]["dirichlet"]["q"], 1);
    }
}
