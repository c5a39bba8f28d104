//! Formal piecewise-exponential elements `Σ c_i e^{f_i}` on a fixed fan.

use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ehrhart::{EhrhartEngine, EhrhartError};
use crate::fan::{Cone, Fan};
use crate::lattice::Int;
use crate::plfun::{PLFunction, PlError};

/// Largest multiplicity expanded when sorting a part into a chain.
pub const MAX_CHAIN_LEN: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeError {
    #[error("terms {first:?} and {second:?} are not comparable on cone {cone}")]
    RefinementRequired { first: Vec<Int>, second: Vec<Int>, cone: Cone },
    #[error("terms live on different fans")]
    DifferentFans,
    #[error("chain of length {0} is too long to sort")]
    ChainTooLong(usize),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
}

impl PeError {
    pub fn code(&self) -> &'static str {
        match self {
            PeError::RefinementRequired { .. } => "REFINEMENT_REQUIRED",
            PeError::DifferentFans => "DIFFERENT_FANS",
            PeError::ChainTooLong(_) => "CHAIN_TOO_LONG",
            PeError::Pl(e) => e.code(),
            PeError::Ehrhart(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PEElement {
    fan: Arc<Fan>,
    terms: Vec<(Int, PLFunction)>,
}

impl PEElement {
    /// Merges repeated functions and drops zero coefficients. Terms keep the
    /// order of first appearance.
    pub fn new(fan: Arc<Fan>, terms: Vec<(Int, PLFunction)>) -> Result<Self, PeError> {
        let mut out: Vec<(Int, PLFunction)> = Vec::new();
        for (c, f) in terms {
            if f.fan().key() != fan.key() {
                return Err(PeError::DifferentFans);
            }
            match out.iter_mut().find(|(_, g)| g.values() == f.values()) {
                Some((d, _)) => *d += c,
                None => out.push((c, f)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Ok(PEElement { fan, terms: out })
    }

    pub fn exp(f: &PLFunction) -> Self {
        PEElement { fan: f.fan().clone(), terms: vec![(Int::one(), f.clone())] }
    }

    pub fn one(fan: Arc<Fan>) -> Self {
        Self::exp(&PLFunction::zero(fan))
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn terms(&self) -> &[(Int, PLFunction)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PEElement) -> Result<PEElement, PeError> {
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        PEElement::new(self.fan.clone(), terms)
    }

    pub fn neg(&self) -> PEElement {
        PEElement { fan: self.fan.clone(), terms: self.terms.iter().map(|(c, f)| (-c, f.clone())).collect() }
    }

    pub fn sub(&self, other: &PEElement) -> Result<PEElement, PeError> {
        self.add(&other.neg())
    }

    /// `e^f · e^g = e^{f+g}`, extended bilinearly.
    pub fn mul(&self, other: &PEElement) -> Result<PEElement, PeError> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                terms.push((a * b, f.add(g)?));
            }
        }
        PEElement::new(self.fan.clone(), terms)
    }

    /// Positive and negative parts, each expanded by multiplicity.
    fn parts(&self) -> Result<(Vec<PLFunction>, Vec<PLFunction>), PeError> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (c, f) in &self.terms {
            let n = c.abs().to_usize().filter(|&n| n <= MAX_CHAIN_LEN).ok_or(PeError::ChainTooLong(MAX_CHAIN_LEN + 1))?;
            let part = if c.is_positive() { &mut pos } else { &mut neg };
            part.extend(std::iter::repeat_n(f.clone(), n));
            if part.len() > MAX_CHAIN_LEN {
                return Err(PeError::ChainTooLong(part.len()));
            }
        }
        Ok((pos, neg))
    }
}

fn check_comparable(fs: &[PLFunction]) -> Result<(), PeError> {
    for (i, f) in fs.iter().enumerate() {
        for g in &fs[i + 1..] {
            if let Err(PlError::MixedSign(cone)) = f.pointwise_max_min(g) {
                return Err(PeError::RefinementRequired { first: f.values().to_vec(), second: g.values().to_vec(), cone });
            }
        }
    }
    Ok(())
}

/// Sorts pairwise comparable functions into a pointwise chain by replacing
/// out-of-order neighbours with their min and max.
fn sort_chain(mut fs: Vec<PLFunction>) -> Result<Vec<PLFunction>, PeError> {
    check_comparable(&fs)?;
    loop {
        let mut swapped = false;
        for i in 1..fs.len() {
            if !fs[i - 1].le(&fs[i]) {
                let (max, min) = fs[i - 1].pointwise_max_min(&fs[i])?;
                fs[i - 1] = min;
                fs[i] = max;
                swapped = true;
            }
        }
        if !swapped {
            return Ok(fs);
        }
    }
}

/// Positive chain ascending, then the negative chain ascending, with equal
/// functions merged.
pub fn pe_normal_form(a: &PEElement) -> Result<PEElement, PeError> {
    let (pos, neg) = a.parts()?;
    let pos = sort_chain(pos)?;
    let neg = sort_chain(neg)?;
    let terms = pos
        .into_iter()
        .map(|f| (Int::one(), f))
        .chain(neg.into_iter().map(|f| (-Int::one(), f)))
        .collect();
    PEElement::new(a.fan.clone(), terms)
}

/// Decides `a = b` by sorting both parts of `a - b` into chains.
pub fn pe_equal(a: &PEElement, b: &PEElement) -> Result<bool, PeError> {
    let (pos, neg) = a.sub(b)?.parts()?;
    if pos.len() != neg.len() {
        return Ok(false);
    }
    let pos = sort_chain(pos)?;
    let neg = sort_chain(neg)?;
    Ok(pos.iter().zip(&neg).all(|(f, g)| f.values() == g.values()))
}

/// `Σ c_i χ([f_i])`.
pub fn chi_tilde(engine: &mut EhrhartEngine, a: &PEElement) -> Result<Int, PeError> {
    let mut total = Int::zero();
    for (c, f) in &a.terms {
        total += c * engine.eval_chi(f)?;
    }
    Ok(total)
}

/// Checks `χ(f) + χ(g) = χ(max) + χ(min)`.
pub fn verify_maxmin_relation(engine: &mut EhrhartEngine, f: &PLFunction, g: &PLFunction) -> Result<bool, PeError> {
    let (max, min) = f.pointwise_max_min(g)?;
    let lhs = engine.eval_chi(f)? + engine.eval_chi(g)?;
    let rhs = engine.eval_chi(&max)? + engine.eval_chi(&min)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_fan, projective_fan};
    use crate::lattice::LatticeVector;

    fn f1_fan() -> Arc<Fan> {
        let rays = [[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]].iter().map(|r| LatticeVector::from_i64s(r)).collect();
        build_fan(2, rays, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]], true).unwrap()
    }

    fn pl(fan: &Arc<Fan>, v: &[i64]) -> PLFunction {
        PLFunction::from_i64s(fan.clone(), v).unwrap()
    }

    #[test]
    fn projective_line_identity() {
        let fan = projective_fan(1);
        let a = PEElement::exp(&pl(&fan, &[1, 0])).add(&PEElement::exp(&pl(&fan, &[0, 1]))).unwrap();
        let b = PEElement::exp(&pl(&fan, &[1, 1])).add(&PEElement::exp(&pl(&fan, &[0, 0]))).unwrap();
        assert!(pe_equal(&a, &b).unwrap());
        assert_eq!(pe_normal_form(&a).unwrap(), pe_normal_form(&b).unwrap());
        assert!(!pe_equal(&a, &PEElement::one(fan.clone())).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let fan = f1_fan();
        let a = PEElement::new(
            fan.clone(),
            vec![(Int::from(2), pl(&fan, &[1, 1, 1, 1, 1])), (Int::from(1), pl(&fan, &[0, 0, 1, 2, 1])), (Int::from(-1), pl(&fan, &[0; 5]))],
        )
        .unwrap();
        let n = pe_normal_form(&a).unwrap();
        assert_eq!(pe_normal_form(&n).unwrap(), n);
        assert!(pe_equal(&a, &n).unwrap());
    }

    #[test]
    fn incomparable_pair_rejected() {
        let fan = projective_fan(1);
        let a = PEElement::exp(&pl(&fan, &[1, 0])).add(&PEElement::exp(&pl(&fan, &[0, 1]))).unwrap();
        let fan2 = f1_fan();
        let b = PEElement::exp(&pl(&fan2, &[1, 0, 0, 0, 0])).add(&PEElement::exp(&pl(&fan2, &[0, 1, 0, 0, 0]))).unwrap();
        assert!(pe_normal_form(&a).is_ok());
        let err = pe_normal_form(&b).unwrap_err();
        assert_eq!(err.code(), "REFINEMENT_REQUIRED");
    }

    #[test]
    fn chi_tilde_values() {
        let fan = f1_fan();
        let mut engine = EhrhartEngine::new();
        let f1 = pl(&fan, &[1; 5]);
        assert_eq!(chi_tilde(&mut engine, &PEElement::exp(&f1)).unwrap(), Int::from(8));
        assert_eq!(chi_tilde(&mut engine, &PEElement::one(fan.clone())).unwrap(), Int::one());
        let g = pl(&fan, &[2, 2, 1, 1, 1]);
        let (max, min) = f1.pointwise_max_min(&g).unwrap();
        let a = PEElement::new(
            fan.clone(),
            vec![(Int::one(), f1.clone()), (Int::one(), g.clone()), (-Int::one(), max)],
        )
        .unwrap();
        assert_eq!(chi_tilde(&mut engine, &a).unwrap(), engine.eval_chi(&min).unwrap());
        assert!(verify_maxmin_relation(&mut engine, &f1, &f1.scale(&Int::from(2))).unwrap());
    }

    #[test]
    fn projective_line_maxmin() {
        let fan = projective_fan(1);
        let mut engine = EhrhartEngine::new();
        let (f, g) = (pl(&fan, &[1, 0]), pl(&fan, &[0, 1]));
        assert_eq!(engine.eval_chi(&f).unwrap(), Int::from(2));
        assert!(verify_maxmin_relation(&mut engine, &f, &g).unwrap());
    }

    #[test]
    fn product_adds_exponents() {
        let fan = f1_fan();
        let mut engine = EhrhartEngine::new();
        let (f, g) = (pl(&fan, &[1, 0, 2, 0, 1]), pl(&fan, &[0, 1, 1, 1, 0]));
        let prod = PEElement::exp(&f).mul(&PEElement::exp(&g)).unwrap();
        assert_eq!(chi_tilde(&mut engine, &prod).unwrap(), engine.eval_chi(&f.add(&g).unwrap()).unwrap());
    }
}
