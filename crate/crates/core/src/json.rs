//! JSON input and output formats.
//!
//! Integers are read from JSON numbers or decimal strings and written as
//! numbers when they fit in an `i64`, as strings otherwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::ehrhart::{ClosedFormFailure, EhrhartError, EhrhartFailure, FailureReason, IVPoly};
use crate::error::Error;
use crate::fan::{build_fan, Cone, Fan, FanError};
use crate::lattice::{Int, LatticeVector};
use crate::matroid::{Matroid, MatroidError};
use crate::pering::{PEElement, PeError};
use crate::plfun::{PLFunction, PlError};
use crate::polytope::{HPolytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim().parse().map(JsonInt).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn int(v: &Int) -> Value {
    serde_json::to_value(JsonInt(v.clone())).expect("integers serialize")
}

pub fn ints(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn vector(v: &LatticeVector) -> Value {
    ints(v.coords())
}

pub fn cone(c: &Cone) -> Value {
    json!(c.rays())
}

fn unwrap_ints(v: Vec<JsonInt>) -> Vec<Int> {
    v.into_iter().map(|x| x.0).collect()
}

fn wrap_ints(v: &[Int]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<JsonInt>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl FanSpec {
    pub fn build(self, require_unimodular: bool) -> Result<Arc<Fan>, FanError> {
        let rays = self.rays.into_iter().map(|r| LatticeVector(unwrap_ints(r))).collect();
        build_fan(self.ambient_dim, rays, &self.maximal_cones, require_unimodular)
    }

    pub fn from_fan(fan: &Fan) -> Self {
        FanSpec {
            ambient_dim: fan.ambient_dim(),
            rays: fan.rays().iter().map(|r| wrap_ints(r.coords())).collect(),
            maximal_cones: fan.maximal_cones().iter().map(|c| c.rays().to_vec()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlSpec {
    pub values: Vec<JsonInt>,
}

impl PlSpec {
    pub fn build(self, fan: &Arc<Fan>) -> Result<PLFunction, PlError> {
        PLFunction::new(fan.clone(), unwrap_ints(self.values))
    }

    pub fn from_pl(f: &PLFunction) -> Self {
        PlSpec { values: wrap_ints(f.values()) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalitySpec {
    pub normal: Vec<JsonInt>,
    pub bound: JsonInt,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeSpec {
    pub inequalities: Vec<InequalitySpec>,
}

impl PolytopeSpec {
    /// The dimension is taken from the first normal.
    pub fn build(self) -> Result<HPolytope, PolytopeError> {
        let dim = self.inequalities.first().map_or(0, |i| i.normal.len());
        let ineqs = self.inequalities.into_iter().map(|i| (LatticeVector(unwrap_ints(i.normal)), i.bound.0)).collect();
        HPolytope::new(dim, ineqs)
    }

    pub fn from_polytope(p: &HPolytope) -> Self {
        PolytopeSpec {
            inequalities: p
                .inequalities()
                .iter()
                .map(|(n, b)| InequalitySpec { normal: wrap_ints(n.coords()), bound: JsonInt(b.clone()) })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform { rank: usize, n: usize },
    Bases { ground_size: usize, bases: Vec<Vec<usize>> },
    Graphic { vertices: usize, edges: Vec<[usize; 2]> },
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid, MatroidError> {
        match self {
            MatroidSpec::Uniform { rank, n } => Matroid::uniform(*rank, *n),
            MatroidSpec::Bases { ground_size, bases } => Matroid::from_bases(*ground_size, bases),
            MatroidSpec::Graphic { vertices, edges } => {
                let edges: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                Matroid::graphic(*vertices, &edges)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeTermSpec {
    pub c: JsonInt,
    pub values: Vec<JsonInt>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeSpec {
    pub terms: Vec<PeTermSpec>,
}

impl PeSpec {
    pub fn build(self, fan: &Arc<Fan>) -> Result<PEElement, PeError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            terms.push((t.c.0, PLFunction::new(fan.clone(), unwrap_ints(t.values))?));
        }
        PEElement::new(fan.clone(), terms)
    }

    pub fn from_pe(a: &PEElement) -> Self {
        PeSpec {
            terms: a
                .terms()
                .iter()
                .map(|(c, f)| PeTermSpec { c: JsonInt(c.clone()), values: wrap_ints(f.values()) })
                .collect(),
        }
    }
}

/// Binomial-basis polynomial; variables are ray indices.
pub fn ivpoly(p: &IVPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(alpha, c)| {
            let exps: BTreeMap<String, u32> =
                alpha.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i.to_string(), e)).collect();
            json!({ "alpha": exps, "c": int(c) })
        })
        .collect();
    json!({ "vars": (0..p.nvars()).collect::<Vec<_>>(), "terms": terms })
}

fn failure_witness(f: &EhrhartFailure) -> Value {
    let mut path = Vec::new();
    let mut cur = f;
    while let FailureReason::StarNotEhrhart { ray, cause } = &cur.reason {
        path.push(*ray);
        cur = cause;
    }
    let mut w = match &cur.reason {
        FailureReason::NotUnimodular => json!({ "reason": "NOT_UNIMODULAR" }),
        FailureReason::CoeffMismatch { alpha, ray, other, ray_coeff, other_coeff } => json!({
            "reason": "COEFF_MISMATCH",
            "alpha": alpha,
            "ray": ray,
            "other": other,
            "ray_coeff": int(ray_coeff),
            "other_coeff": int(other_coeff),
        }),
        FailureReason::LinearInvariance { functional, shift, residual, constant } => json!({
            "reason": "LINEAR_INVARIANCE",
            "functional": functional,
            "shift": ints(shift),
            "residual": ints(residual),
            "constant": constant,
        }),
        FailureReason::StarNotEhrhart { .. } => unreachable!(),
    };
    w["star_path"] = json!(path);
    w
}

fn closed_form_witness(f: &ClosedFormFailure) -> Value {
    match f {
        ClosedFormFailure::RaySum { residual } => json!({ "reason": "RAY_SUM", "residual": vector(residual) }),
        ClosedFormFailure::StarSum { ray, residual } => {
            json!({ "reason": "STAR_SUM", "ray": ray, "residual": vector(residual) })
        }
        ClosedFormFailure::LinearCondition { a, residual } => {
            json!({ "reason": "LINEAR_CONDITION", "a": ints(a), "residual": vector(residual) })
        }
    }
}

fn fan_witness(e: &FanError) -> Value {
    match e {
        FanError::NotUnimodular { cone: c, diagonal } => json!({ "cone": cone(c), "smith_diagonal": ints(diagonal) }),
        FanError::NonPrimitiveRay { index, ray } => json!({ "ray": index, "vector": vector(ray) }),
        FanError::ZeroRay(i) => json!({ "ray": i }),
        FanError::DuplicateRay(a, b) => json!({ "rays": [a, b] }),
        FanError::NotSimplicial(c) | FanError::ConeNotInFan(c) | FanError::SupportChanged(c) => json!({ "cone": cone(c) }),
        FanError::BadIntersection(a, b) => json!({ "cones": [cone(a), cone(b)] }),
        FanError::InvalidCone { cone: c, reason } => json!({ "cone": c, "reason": reason }),
        _ => json!({ "message": e.to_string() }),
    }
}

fn pl_witness(e: &PlError) -> Value {
    match e {
        PlError::MixedSign(c) => json!({ "cone": cone(c) }),
        PlError::Fan(f) => fan_witness(f),
        _ => json!({ "message": e.to_string() }),
    }
}

fn ehrhart_witness(e: &EhrhartError) -> Value {
    match e {
        EhrhartError::NotEhrhart(f) => failure_witness(f),
        EhrhartError::ClosedForm(c) => closed_form_witness(c),
        EhrhartError::NotBalanced(b) => {
            json!({ "ridge": cone(&b.ridge), "sum": vector(&b.sum), "residual": vector(&b.residual) })
        }
        EhrhartError::Inconsistent { values, recursion, polynomial } => {
            json!({ "values": ints(values), "recursion": int(recursion), "polynomial": int(polynomial) })
        }
        EhrhartError::Pl(p) => pl_witness(p),
        EhrhartError::Fan(f) => fan_witness(f),
        _ => json!({ "message": e.to_string() }),
    }
}

/// Structured data explaining an error.
pub fn witness(e: &Error) -> Value {
    match e {
        Error::Fan(f) => fan_witness(f),
        Error::Pl(p) => pl_witness(p),
        Error::Ehrhart(x) => ehrhart_witness(x),
        Error::Polytope(PolytopeError::Pl(p)) => pl_witness(p),
        Error::Matroid(m) => match m {
            MatroidError::ExchangeViolated { b1, b2, x } => json!({ "b1": b1, "b2": b2, "element": x }),
            MatroidError::HasLoop(x) => json!({ "element": x }),
            MatroidError::NotAFlat(s) | MatroidError::ImproperFlat(s) | MatroidError::IsomorphismNotFound(s) => {
                json!({ "set": s })
            }
            MatroidError::Fan(f) => fan_witness(f),
            MatroidError::Pl(p) => pl_witness(p),
            MatroidError::Ehrhart(x) => ehrhart_witness(x),
            _ => json!({ "message": m.to_string() }),
        },
        Error::Pe(p) => match p {
            PeError::RefinementRequired { first, second, cone: c } => {
                json!({ "first": ints(first), "second": ints(second), "cone": cone(c) })
            }
            PeError::Pl(x) => pl_witness(x),
            PeError::Ehrhart(x) => ehrhart_witness(x),
            _ => json!({ "message": p.to_string() }),
        },
        _ => json!({ "message": e.to_string() }),
    }
}

pub fn error_document(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string(), "witness": witness(e) } })
}
