//! Integral piecewise-linear functions on unimodular fans.
//!
//! On a unimodular fan a PL function is determined by its values at the ray
//! generators, and any assignment of values occurs.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fan::{Cone, Fan, FanError, StarFan, Subdivision};
use crate::lattice::{smith_diagonal, solve_rational, to_rational, Int, IntMatrix, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ray {0} is not a ray of the fan")]
    BadRay(usize),
    #[error("functions live on different fans")]
    DifferentFans,
    #[error("fan is not complete")]
    NotComplete,
    #[error("difference changes sign on cone {0}; a refinement would be required")]
    MixedSign(Cone),
    #[error("fans are not related by the given stellar subdivision")]
    NotSubdivision,
    #[error(transparent)]
    Fan(#[from] FanError),
}

impl PlError {
    pub fn code(&self) -> &'static str {
        match self {
            PlError::LengthMismatch { .. } => "LENGTH_MISMATCH",
            PlError::BadRay(_) => "BAD_RAY",
            PlError::DifferentFans => "DIFFERENT_FANS",
            PlError::NotComplete => "NOT_COMPLETE",
            PlError::MixedSign(_) => "MIXED_SIGN_ON_CONE",
            PlError::NotSubdivision => "NOT_SUBDIVISION",
            PlError::Fan(e) => e.code(),
        }
    }
}

/// A PL function given by its values at the ray generators.
#[derive(Debug, Clone)]
pub struct PLFunction {
    fan: Arc<Fan>,
    values: Vec<Int>,
}

impl PartialEq for PLFunction {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.fan.key() == other.fan.key()
    }
}

impl Eq for PLFunction {}

impl Hash for PLFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fan.key().hash(state);
        self.values.hash(state);
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", LatticeVector(self.values.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Convexity {
    Linear,
    StrictlyConvex,
    Convex,
    StrictlyConcave,
    Concave,
    None,
}

impl Convexity {
    /// Whether `P_f` is a lattice polytope with `f` as its support function.
    pub fn is_convex(self) -> bool {
        matches!(self, Convexity::Linear | Convexity::Convex | Convexity::StrictlyConvex)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassOrder {
    Finite(u64),
    Infinite,
}

/// A class in `PL(Σ)/L(Σ)`, held by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLClass {
    pub rep: PLFunction,
}

/// Result of splitting a function on a subdivision as `transfer(f) + a·δ_new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub coarse: PLFunction,
    /// Value of the coarse function at the new generator `u_τ`.
    pub value_at_new_ray: Int,
    pub a: Int,
}

impl PLFunction {
    pub fn new(fan: Arc<Fan>, values: Vec<Int>) -> Result<Self, PlError> {
        if values.len() != fan.num_rays() {
            return Err(PlError::LengthMismatch { expected: fan.num_rays(), found: values.len() });
        }
        Ok(PLFunction { fan, values })
    }

    pub fn from_i64s(fan: Arc<Fan>, values: &[i64]) -> Result<Self, PlError> {
        Self::new(fan, values.iter().map(|&v| Int::from(v)).collect())
    }

    pub fn zero(fan: Arc<Fan>) -> Self {
        let n = fan.num_rays();
        PLFunction { fan, values: vec![Int::zero(); n] }
    }

    /// The Courant function of ray `rho`.
    pub fn courant(fan: Arc<Fan>, rho: usize) -> Result<Self, PlError> {
        if rho >= fan.num_rays() {
            return Err(PlError::BadRay(rho));
        }
        let mut f = Self::zero(fan);
        f.values[rho] = Int::one();
        Ok(f)
    }

    /// Restriction of the linear function `m` to the rays.
    pub fn from_linear(fan: Arc<Fan>, m: &LatticeVector) -> Self {
        let values = fan.rays().iter().map(|u| m.dot(u)).collect();
        PLFunction { fan, values }
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn values(&self) -> &[Int] {
        &self.values
    }

    pub fn value(&self, rho: usize) -> &Int {
        &self.values[rho]
    }

    pub fn into_values(self) -> Vec<Int> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn same_fan(&self, other: &PLFunction) -> Result<(), PlError> {
        if self.fan.key() == other.fan.key() {
            Ok(())
        } else {
            Err(PlError::DifferentFans)
        }
    }

    fn zip_with(&self, other: &PLFunction, op: impl Fn(&Int, &Int) -> Int) -> Result<PLFunction, PlError> {
        self.same_fan(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect();
        Ok(PLFunction { fan: self.fan.clone(), values })
    }

    pub fn add(&self, other: &PLFunction) -> Result<PLFunction, PlError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PLFunction) -> Result<PLFunction, PlError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Int) -> PLFunction {
        PLFunction { fan: self.fan.clone(), values: self.values.iter().map(|v| v * k).collect() }
    }

    pub fn neg(&self) -> PLFunction {
        self.scale(&Int::from(-1))
    }

    /// `self + k·δ_rho`.
    pub fn add_courant(&self, rho: usize, k: &Int) -> PLFunction {
        let mut g = self.clone();
        g.values[rho] += k;
        g
    }

    pub fn with_value(&self, rho: usize, value: Int) -> PLFunction {
        let mut g = self.clone();
        g.values[rho] = value;
        g
    }

    /// Splits `self = rep + m` with `rep` the canonical coset representative
    /// modulo `L(Σ)` and `m ∈ M`.
    fn reduce(&self) -> (Vec<Int>, LatticeVector) {
        let lin = self.fan.linear_lattice();
        let mut rep = self.values.clone();
        let mut m = LatticeVector::zeros(self.fan.ambient_dim());
        for ((row, &c), functional) in lin.rows.iter().zip(&lin.pivots).zip(&lin.functionals) {
            let q = rep[c].div_floor(&row.0[c]);
            if q.is_zero() {
                continue;
            }
            for (x, h) in rep.iter_mut().zip(&row.0) {
                *x -= &q * h;
            }
            m = &m + &functional.scaled(&q);
        }
        (rep, m)
    }

    pub fn canonical_class_rep(&self) -> PLClass {
        let (rep, _) = self.reduce();
        PLClass { rep: PLFunction { fan: self.fan.clone(), values: rep } }
    }

    /// The linear function `m` with `m(u_ρ) = f(u_ρ)` for all rays, if any.
    pub fn linear_witness(&self) -> Option<LatticeVector> {
        let (rep, m) = self.reduce();
        rep.iter().all(Zero::is_zero).then_some(m)
    }

    pub fn is_linear(&self) -> bool {
        self.linear_witness().is_some()
    }

    /// Least `k ≥ 1` with `k·f` linear.
    pub fn class_order(&self) -> ClassOrder {
        let n = self.fan.ambient_dim();
        let rows: Vec<Vec<_>> = self.fan.rays().iter().map(|u| u.0.iter().map(to_rational).collect()).collect();
        let rhs: Vec<_> = self.values.iter().map(to_rational).collect();
        if self.fan.num_rays() > 0 && solve_rational(&rows, &rhs).is_none() {
            return ClassOrder::Infinite;
        }
        // Rationally linear: the order divides the torsion of Z^R / L(Σ).
        let cap: Int = if self.fan.num_rays() == 0 {
            Int::one()
        } else {
            smith_diagonal(&IntMatrix::from_cols(n, self.fan.rays())).iter().product()
        };
        let mut k = 1u64;
        loop {
            if self.scale(&Int::from(k)).is_linear() {
                return ClassOrder::Finite(k);
            }
            assert!(Int::from(k) < cap, "class order exceeds the torsion bound");
            k += 1;
        }
    }

    /// The deterministic `m ∈ M` agreeing with `self` on the rays of `sigma`.
    pub fn local_linear(&self, sigma: &Cone) -> Result<LatticeVector, PlError> {
        let basis = self.fan.basis_for(sigma)?;
        let values: Vec<Int> = sigma.rays().iter().map(|&r| self.values[r].clone()).collect();
        Ok(basis.functional_with_values(&values))
    }

    /// `[f]^σ`: subtract the local linear function at `sigma` and push to the star fan.
    pub fn restrict_to_star(&self, sigma: &Cone) -> Result<(Arc<StarFan>, PLFunction), PlError> {
        let star = self.fan.star(sigma)?;
        let m = self.local_linear(sigma)?;
        let g = self.restrict_with(&star, &m);
        Ok((star, g))
    }

    /// Pushes `self - m` to the star fan; `m` must agree with `self` on the star's cone.
    pub fn restrict_with(&self, star: &StarFan, m: &LatticeVector) -> PLFunction {
        let values = star
            .ray_lift
            .iter()
            .map(|&r| &self.values[r] - m.dot(self.fan.ray(r)))
            .collect();
        PLFunction { fan: star.fan.clone(), values }
    }

    /// Classifies `f` by comparing local linear pieces across every ridge.
    pub fn convexity_type(&self) -> Result<Convexity, PlError> {
        if !self.fan.is_complete() {
            return Err(PlError::NotComplete);
        }
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        let tops = self.fan.maximal_cones();
        for (i, s1) in tops.iter().enumerate() {
            let m1 = self.local_linear(s1)?;
            for s2 in &tops[i + 1..] {
                let opposite = s2.minus(s1);
                if opposite.len() != 1 || s1.minus(s2).len() != 1 {
                    continue;
                }
                let r = opposite[0];
                let diff = &self.values[r] - m1.dot(self.fan.ray(r));
                if diff.is_positive() {
                    pos += 1;
                } else if diff.is_negative() {
                    neg += 1;
                } else {
                    zero += 1;
                }
            }
        }
        let kind = match (pos, neg, zero) {
            (0, 0, _) => Convexity::Linear,
            (_, 0, 0) => Convexity::StrictlyConvex,
            (_, 0, _) => Convexity::Convex,
            (0, _, 0) => Convexity::StrictlyConcave,
            (0, _, _) => Convexity::Concave,
            _ => Convexity::None,
        };
        if kind == Convexity::Linear {
            assert!(self.is_linear(), "equal pieces on every ridge of a complete fan force linearity");
        }
        Ok(kind)
    }

    /// Pointwise max and min, defined when `f - g` has one sign on each maximal cone.
    pub fn pointwise_max_min(&self, other: &PLFunction) -> Result<(PLFunction, PLFunction), PlError> {
        self.same_fan(other)?;
        for cone in self.fan.maximal_cones() {
            let mut pos = false;
            let mut neg = false;
            for &r in cone.rays() {
                match self.values[r].cmp(&other.values[r]) {
                    std::cmp::Ordering::Greater => pos = true,
                    std::cmp::Ordering::Less => neg = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            if pos && neg {
                return Err(PlError::MixedSign(cone.clone()));
            }
        }
        let max = self.zip_with(other, |a, b| a.max(b).clone())?;
        let min = self.zip_with(other, |a, b| a.min(b).clone())?;
        Ok((max, min))
    }

    /// Pointwise `self <= other` at every generator.
    pub fn le(&self, other: &PLFunction) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// The same function on the subdivided fan.
    pub fn transfer_to_subdivision(&self, sub: &Subdivision) -> Result<PLFunction, PlError> {
        if self.fan.key() != sub.coarse.key() {
            return Err(PlError::NotSubdivision);
        }
        if !sub.adds_ray() {
            return Ok(PLFunction { fan: sub.fan.clone(), values: self.values.clone() });
        }
        let mut values = self.values.clone();
        values.push(sub.tau.rays().iter().map(|&r| self.values[r].clone()).sum());
        Ok(PLFunction { fan: sub.fan.clone(), values })
    }

    /// Writes a function on the subdivided fan as `transfer(f) + a·δ_new`.
    pub fn decompose_on_subdivision(&self, sub: &Subdivision) -> Result<Decomposition, PlError> {
        if self.fan.key() != sub.fan.key() {
            return Err(PlError::NotSubdivision);
        }
        if !sub.adds_ray() {
            let value = self.values[sub.new_ray].clone();
            let coarse = PLFunction { fan: sub.coarse.clone(), values: self.values.clone() };
            return Ok(Decomposition { coarse, value_at_new_ray: value, a: Int::zero() });
        }
        let value: Int = sub.tau.rays().iter().map(|&r| self.values[r].clone()).sum();
        let a = &self.values[sub.new_ray] - &value;
        let coarse = PLFunction {
            fan: sub.coarse.clone(),
            values: self.values[..sub.new_ray].to_vec(),
        };
        Ok(Decomposition { coarse, value_at_new_ray: value, a })
    }
}
