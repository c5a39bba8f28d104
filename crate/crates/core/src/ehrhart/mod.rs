//! The Ehrhart engine.
//!
//! [`EhrhartEngine::is_ehrhart`] decides whether a unimodular fan carries an
//! Ehrhart polynomial by building it ray by ray from the polynomials of the
//! star fans, in the binomial basis. [`EhrhartEngine::eval_chi`] evaluates
//! `χ_Σ` by the recursion `χ(f) = χ(f - δ_ρ) + χ_{Σ^ρ}([f]^ρ)` without using
//! the polynomial, so the two can be compared.

pub mod ivpoly;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fan::{BalanceFailure, Cone, Fan, FanError, FanKey, StarFan};
use crate::lattice::{quotient_projection, Int, LatticeVector};
use crate::plfun::{PLFunction, PlError};
pub use ivpoly::{binom, binomial_expand, Alpha, DegreeBoundError, IVPoly};

/// Certified Ehrhart polynomial of a fan, with the certificates of its ray stars.
#[derive(Debug)]
pub struct Certificate {
    pub fan: Arc<Fan>,
    pub polynomial: IVPoly,
    pub stars: Vec<Arc<Certificate>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    NotUnimodular,
    StarNotEhrhart { ray: usize, cause: Box<EhrhartFailure> },
    /// Ray `ray` and ray `other` predict different coefficients for `alpha`.
    CoeffMismatch { alpha: Alpha, ray: usize, other: usize, ray_coeff: Int, other_coeff: Int },
    /// `P(x + t_j) - P(x)` is nonzero for the coordinate functional `functional`.
    /// `shift[j]` is the constant term of that difference for every `j`, and
    /// `residual = d!·shift`. `constant` records whether all differences were constant.
    LinearInvariance { functional: usize, shift: Vec<Int>, residual: Vec<Int>, constant: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fan is not Ehrhart: {reason:?}")]
pub struct EhrhartFailure {
    pub reason: FailureReason,
}

impl EhrhartFailure {
    /// The innermost failure, following star failures down.
    pub fn root_cause(&self) -> &EhrhartFailure {
        match &self.reason {
            FailureReason::StarNotEhrhart { cause, .. } => cause.root_cause(),
            _ => self,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Ehrhart(Arc<Certificate>),
    NotEhrhart(EhrhartFailure),
}

impl Verdict {
    pub fn is_ehrhart(&self) -> bool {
        matches!(self, Verdict::Ehrhart(_))
    }

    pub fn certificate(&self) -> Option<&Arc<Certificate>> {
        match self {
            Verdict::Ehrhart(c) => Some(c),
            Verdict::NotEhrhart(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&EhrhartFailure> {
        match self {
            Verdict::Ehrhart(_) => None,
            Verdict::NotEhrhart(f) => Some(f),
        }
    }
}

/// Why a closed-form formula does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedFormFailure {
    /// One-dimensional fan whose ray generators do not sum to zero.
    RaySum { residual: LatticeVector },
    /// The generators adjacent to `ray` do not sum into its span.
    StarSum { ray: usize, residual: LatticeVector },
    /// `Σ (2 - a_ρ) u_ρ` is nonzero.
    LinearCondition { a: Vec<Int>, residual: LatticeVector },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhrhartError {
    #[error(transparent)]
    NotEhrhart(#[from] EhrhartFailure),
    #[error("closed form does not apply: {0:?}")]
    ClosedForm(ClosedFormFailure),
    #[error("fan is not balanced at ridge {}", .0.ridge)]
    NotBalanced(BalanceFailure),
    #[error("expected a fan of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("fan is not pure")]
    NotPure,
    #[error("recursion gives {recursion} but the polynomial gives {polynomial} at {values:?}")]
    Inconsistent { values: Vec<Int>, recursion: Int, polynomial: Int },
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

impl EhrhartError {
    pub fn code(&self) -> &'static str {
        match self {
            EhrhartError::NotEhrhart(_) | EhrhartError::ClosedForm(_) => "NOT_EHRHART",
            EhrhartError::NotBalanced(_) => "NOT_BALANCED",
            EhrhartError::WrongDimension { .. } => "WRONG_DIMENSION",
            EhrhartError::NotPure => "NOT_PURE",
            EhrhartError::Inconsistent { .. } => "INTERNAL_INCONSISTENCY",
            EhrhartError::Pl(e) => e.code(),
            EhrhartError::Fan(e) => e.code(),
        }
    }
}

/// Choices made by the recursion. The default is the least top-dimensional
/// cone for normalization and rays in index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecursionOrder {
    /// Index into the sorted top-dimensional cones (taken modulo their number).
    pub sigma0_index: usize,
    /// When set, rays are tried in a seeded pseudo-random order.
    pub ray_seed: Option<u64>,
}

type MemoKey = (FanKey, Vec<Int>);

pub struct EhrhartEngine {
    order: RecursionOrder,
    acknowledge_choice_dependence: bool,
    verdicts: HashMap<FanKey, Verdict>,
    chi_memo: HashMap<MemoKey, Int>,
    raw_memo: HashMap<MemoKey, Int>,
    volume_memo: HashMap<MemoKey, Int>,
}

impl Default for EhrhartEngine {
    fn default() -> Self {
        Self::new()
    }
}

fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i))
}

impl EhrhartEngine {
    pub fn new() -> Self {
        Self::with_order(RecursionOrder::default())
    }

    pub fn with_order(order: RecursionOrder) -> Self {
        EhrhartEngine {
            order,
            acknowledge_choice_dependence: false,
            verdicts: HashMap::new(),
            chi_memo: HashMap::new(),
            raw_memo: HashMap::new(),
            volume_memo: HashMap::new(),
        }
    }

    /// Allows [`eval_chi`](Self::eval_chi) on fans without a certificate. The
    /// result then depends on the recursion order.
    pub fn acknowledge_choice_dependence(mut self, yes: bool) -> Self {
        self.acknowledge_choice_dependence = yes;
        self
    }

    pub fn order(&self) -> RecursionOrder {
        self.order
    }

    /// Decides whether `fan` is Ehrhart.
    pub fn is_ehrhart(&mut self, fan: &Arc<Fan>) -> Verdict {
        if let Some(v) = self.verdicts.get(fan.key()) {
            return v.clone();
        }
        let verdict = match self.certify(fan) {
            Ok(cert) => Verdict::Ehrhart(Arc::new(cert)),
            Err(failure) => Verdict::NotEhrhart(failure),
        };
        log::debug!(
            "fan with {} rays in Z^{}: ehrhart = {}",
            fan.num_rays(),
            fan.ambient_dim(),
            verdict.is_ehrhart()
        );
        self.verdicts.insert(fan.key().clone(), verdict.clone());
        verdict
    }

    fn certify(&mut self, fan: &Arc<Fan>) -> Result<Certificate, EhrhartFailure> {
        let fail = |reason| EhrhartFailure { reason };
        if !fan.is_unimodular() {
            return Err(fail(FailureReason::NotUnimodular));
        }
        let r = fan.num_rays();
        let d = fan.dim();
        if r == 0 {
            return Ok(Certificate { fan: fan.clone(), polynomial: IVPoly::constant(0, Int::one()), stars: vec![] });
        }
        let mut stars: Vec<(Arc<StarFan>, Arc<Certificate>)> = Vec::with_capacity(r);
        for rho in 0..r {
            let star = fan.star(&Cone::ray(rho)).expect("rays are cones of a unimodular fan");
            match self.is_ehrhart(&star.fan) {
                Verdict::Ehrhart(c) => stars.push((star, c)),
                Verdict::NotEhrhart(cause) => {
                    return Err(fail(FailureReason::StarNotEhrhart { ray: rho, cause: Box::new(cause) }))
                }
            }
        }

        // Coefficients c^ρ_α for α_ρ > 0, read off from P_ρ(z + e_ρ).
        let mut per_ray: Vec<BTreeMap<Alpha, Int>> = Vec::with_capacity(r);
        for (rho, (star, cert)) in stars.iter().enumerate() {
            let m_rho = star.section_basis.dual_row(0);
            let c: Vec<Int> = star.ray_lift.iter().map(|&t| m_rho.dot(fan.ray(t))).collect();
            let mut vars: Vec<usize> = star.ray_lift.clone();
            vars.push(rho);
            vars.sort_unstable();
            let star_poly = &cert.polynomial;
            let q = binomial_expand(r, &vars, d - 1, |z| {
                let x_rho = &z[rho] + 1;
                let sv: Vec<Int> =
                    star.ray_lift.iter().zip(&c).map(|(&t, ct)| &z[t] - ct * &x_rho).collect();
                star_poly.eval(&sv)
            })
            .expect("star polynomial has degree at most dim - 1");
            let mut coeffs = BTreeMap::new();
            for (beta, value) in q.terms() {
                let mut alpha = beta.clone();
                alpha[rho] += 1;
                coeffs.insert(alpha, value.clone());
            }
            per_ray.push(coeffs);
        }

        let alphas: BTreeSet<&Alpha> = per_ray.iter().flat_map(|m| m.keys()).collect();
        let mut polynomial = IVPoly::constant(r, Int::one());
        for alpha in alphas {
            let support: Vec<usize> = (0..r).filter(|&i| alpha[i] > 0).collect();
            let first = support[0];
            let value = per_ray[first].get(alpha).cloned().unwrap_or_default();
            for &other in &support[1..] {
                let other_value = per_ray[other].get(alpha).cloned().unwrap_or_default();
                if other_value != value {
                    return Err(fail(FailureReason::CoeffMismatch {
                        alpha: alpha.clone(),
                        ray: first,
                        other,
                        ray_coeff: value,
                        other_coeff: other_value,
                    }));
                }
            }
            polynomial.add_term(alpha.clone(), value);
        }
        debug_assert!(polynomial.degree() <= d);

        // Invariance under adding each coordinate functional of M.
        let n = fan.ambient_dim();
        let all_vars: Vec<usize> = (0..r).collect();
        let mut differences = Vec::with_capacity(n);
        for j in 0..n {
            let t: Vec<Int> = fan.rays().iter().map(|u| u.0[j].clone()).collect();
            let diff = binomial_expand(r, &all_vars, d, |x| {
                let shifted: Vec<Int> = x.iter().zip(&t).map(|(a, b)| a + b).collect();
                polynomial.eval(&shifted) - polynomial.eval(x)
            })
            .expect("difference of a degree-d polynomial");
            differences.push(diff);
        }
        if let Some(functional) = differences.iter().position(|p| !p.is_zero()) {
            let zero_point = vec![Int::zero(); r];
            let shift: Vec<Int> = differences.iter().map(|p| p.eval(&zero_point)).collect();
            let scale = factorial(d);
            let residual = shift.iter().map(|s| s * &scale).collect();
            let constant = differences.iter().all(|p| p.as_constant().is_some());
            return Err(fail(FailureReason::LinearInvariance { functional, shift, residual, constant }));
        }
        debug_assert_eq!(polynomial.eval(&vec![Int::zero(); r]), Int::one());
        Ok(Certificate { fan: fan.clone(), polynomial, stars: stars.into_iter().map(|(_, c)| c).collect() })
    }

    /// The Ehrhart polynomial, spot-checked against the recursion.
    pub fn ehrhart_polynomial(&mut self, fan: &Arc<Fan>) -> Result<IVPoly, EhrhartError> {
        let cert = match self.is_ehrhart(fan) {
            Verdict::Ehrhart(c) => c,
            Verdict::NotEhrhart(f) => return Err(f.into()),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0xe4_4a47);
        let r = fan.num_rays();
        for probe in 0..6 {
            let values: Vec<Int> =
                (0..r).map(|_| Int::from(if probe == 0 { 0 } else { rng.gen_range(-3i64..=3) })).collect();
            let recursion = self.chi_values(fan, &values, true);
            let polynomial = cert.polynomial.eval(&values);
            if recursion != polynomial {
                return Err(EhrhartError::Inconsistent { values, recursion, polynomial });
            }
        }
        Ok(cert.polynomial.clone())
    }

    /// `χ_Σ([f])` by the Ehrhart recursion.
    pub fn eval_chi(&mut self, f: &PLFunction) -> Result<Int, EhrhartError> {
        let fan = f.fan();
        let certified = match self.is_ehrhart(fan) {
            Verdict::Ehrhart(_) => true,
            Verdict::NotEhrhart(failure) => {
                if !self.acknowledge_choice_dependence {
                    return Err(failure.into());
                }
                if !fan.is_unimodular() {
                    return Err(FanError::NotUnimodularFan.into());
                }
                false
            }
        };
        Ok(self.chi_values(fan, f.values(), certified))
    }

    /// The star-fan term `χ_{Σ^ρ}([f]^ρ)` of the recursion at ray `rho`.
    pub fn star_term(&mut self, f: &PLFunction, rho: usize) -> Result<Int, EhrhartError> {
        let (star, g) = f.restrict_to_star(&Cone::ray(rho))?;
        let certified = self.is_ehrhart(&star.fan).is_ehrhart();
        if !certified && !self.acknowledge_choice_dependence {
            return Err(self.is_ehrhart(&star.fan).failure().cloned().unwrap().into());
        }
        Ok(self.chi_values(&star.fan, g.values(), certified))
    }

    fn ray_order(&self, fan: &Fan) -> Vec<usize> {
        let mut order: Vec<usize> = (0..fan.num_rays()).collect();
        if let Some(seed) = self.order.ray_seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (fan.num_rays() as u64).rotate_left(17));
            order.shuffle(&mut rng);
        }
        order
    }

    fn chi_values(&mut self, fan: &Arc<Fan>, values: &[Int], certified: bool) -> Int {
        if fan.num_rays() == 0 {
            return Int::one();
        }
        let tops = fan.cones_of_dim(fan.dim());
        let sigma0 = tops[self.order.sigma0_index % tops.len()].clone();
        let basis = fan.basis_for(&sigma0).expect("top cone of a unimodular fan");
        let local: Vec<Int> = sigma0.rays().iter().map(|&i| values[i].clone()).collect();
        let m = basis.functional_with_values(&local);
        let mut g: Vec<Int> = values.iter().zip(fan.rays()).map(|(v, u)| v - m.dot(u)).collect();

        let key_values = if certified {
            PLFunction::new(fan.clone(), g.clone()).unwrap().canonical_class_rep().rep.into_values()
        } else {
            g.clone()
        };
        let key = (fan.key().clone(), key_values);
        let memo = if certified { &self.chi_memo } else { &self.raw_memo };
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }

        let mut total = Int::one();
        for rho in self.ray_order(fan) {
            if sigma0.contains(rho) || g[rho].is_zero() {
                continue;
            }
            let k = g[rho].clone();
            let star = fan.star(&Cone::ray(rho)).expect("ray star");
            let degree = star.fan.dim();
            if certified && k.abs() > Int::from(degree + 2) {
                // The star term is a polynomial of degree <= `degree` in the value
                // at rho, so Σ_{j=1}^{k} S(j) = Σ_i Δ^i S(1)·C(k, i+1), which also
                // gives -Σ_{j=k+1}^{0} S(j) for negative k.
                let mut diffs: Vec<Int> = (1..=degree as i64 + 1)
                    .map(|j| {
                        g[rho] = Int::from(j);
                        self.star_value(fan, &star, rho, &g, certified)
                    })
                    .collect();
                for i in 0..=degree {
                    total += &diffs[0] * binom(&k, i as u32 + 1);
                    diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
                }
            } else if k > Int::zero() {
                let mut j = Int::one();
                while j <= k {
                    g[rho] = j.clone();
                    total += self.star_value(fan, &star, rho, &g, certified);
                    j += 1;
                }
            } else {
                let mut j: Int = &k + 1;
                while j <= Int::zero() {
                    g[rho] = j.clone();
                    total -= self.star_value(fan, &star, rho, &g, certified);
                    j += 1;
                }
            }
            g[rho] = Int::zero();
        }
        let memo = if certified { &mut self.chi_memo } else { &mut self.raw_memo };
        memo.insert(key, total.clone());
        total
    }

    fn star_value(&mut self, fan: &Fan, star: &StarFan, rho: usize, g: &[Int], certified: bool) -> Int {
        let m_rho = star.section_basis.dual_row(0);
        let sv: Vec<Int> = star
            .ray_lift
            .iter()
            .map(|&t| &g[t] - &g[rho] * m_rho.dot(fan.ray(t)))
            .collect();
        self.chi_values(&star.fan, &sv, certified)
    }

    /// Degree of `[f]^d` on a balanced fan, by `V(f) = Σ_ρ f(u_ρ) V_{Σ^ρ}([f]^ρ)`.
    pub fn volume_eval(&mut self, f: &PLFunction) -> Result<Int, EhrhartError> {
        let fan = f.fan();
        if let Some(failure) = fan.balance_failure()? {
            return Err(EhrhartError::NotBalanced(failure));
        }
        Ok(self.volume_values(fan, f.values()))
    }

    fn volume_values(&mut self, fan: &Arc<Fan>, values: &[Int]) -> Int {
        if fan.num_rays() == 0 {
            return Int::one();
        }
        let key = (fan.key().clone(), values.to_vec());
        if let Some(v) = self.volume_memo.get(&key) {
            return v.clone();
        }
        let mut total = Int::zero();
        for rho in 0..fan.num_rays() {
            if values[rho].is_zero() {
                continue;
            }
            let star = fan.star(&Cone::ray(rho)).expect("ray star");
            let m_rho = star.section_basis.dual_row(0);
            let sv: Vec<Int> = star
                .ray_lift
                .iter()
                .map(|&t| &values[t] - &values[rho] * m_rho.dot(fan.ray(t)))
                .collect();
            total += &values[rho] * self.volume_values(&star.fan, &sv);
        }
        self.volume_memo.insert(key, total.clone());
        total
    }
}

/// `1 + Σ f(u_ρ)` on a one-dimensional fan whose generators sum to zero.
pub fn chi_closed_form_dim1(f: &PLFunction) -> Result<Int, EhrhartError> {
    let fan = f.fan();
    if fan.dim() != 1 {
        return Err(EhrhartError::WrongDimension { expected: 1, found: fan.dim() });
    }
    let sum = fan.rays().iter().fold(LatticeVector::zeros(fan.ambient_dim()), |acc, u| &acc + u);
    if !sum.is_zero() {
        return Err(EhrhartError::ClosedForm(ClosedFormFailure::RaySum { residual: sum }));
    }
    Ok(f.values().iter().fold(Int::one(), |acc, v| acc + v))
}

/// The integers `a_ρ` with `Σ_{τ adjacent to ρ} u_τ = a_ρ u_ρ`, provided the
/// two-dimensional Ehrhart conditions hold.
pub fn dim2_is_ehrhart(fan: &Fan) -> Result<Vec<Int>, EhrhartError> {
    if fan.dim() != 2 {
        return Err(EhrhartError::WrongDimension { expected: 2, found: fan.dim() });
    }
    if !fan.is_pure() {
        return Err(EhrhartError::NotPure);
    }
    if !fan.is_unimodular() {
        return Err(FanError::NotUnimodularFan.into());
    }
    let n = fan.ambient_dim();
    let mut a = Vec::with_capacity(fan.num_rays());
    for rho in 0..fan.num_rays() {
        let u = fan.ray(rho);
        let sum = fan
            .cones_of_dim(2)
            .iter()
            .filter(|c| c.contains(rho))
            .flat_map(|c| c.minus(&Cone::ray(rho)))
            .fold(LatticeVector::zeros(n), |acc, t| &acc + fan.ray(t));
        let proj = quotient_projection(n, std::slice::from_ref(u)).expect("primitive ray");
        let residual = proj.mul_vec(&sum);
        if !residual.is_zero() {
            return Err(EhrhartError::ClosedForm(ClosedFormFailure::StarSum { ray: rho, residual }));
        }
        let i = u.0.iter().position(|c| !c.is_zero()).expect("nonzero ray");
        a.push(&sum.0[i] / &u.0[i]);
    }
    let residual = fan.rays().iter().zip(&a).fold(LatticeVector::zeros(n), |acc, (u, ar)| {
        &acc + &u.scaled(&(Int::from(2) - ar))
    });
    if !residual.is_zero() {
        return Err(EhrhartError::ClosedForm(ClosedFormFailure::LinearCondition { a, residual }));
    }
    Ok(a)
}

/// `1 + Σ (1 - a_ρ/2) f_ρ + Σ_{2-cones} f_ρ f_τ - Σ (a_ρ/2) f_ρ²`.
pub fn chi_closed_form_dim2(f: &PLFunction) -> Result<Int, EhrhartError> {
    let fan = f.fan();
    let a = dim2_is_ehrhart(fan)?;
    let v = f.values();
    let mut twice = Int::from(2);
    for (fr, ar) in v.iter().zip(&a) {
        twice += (Int::from(2) - ar) * fr;
        twice -= ar * fr * fr;
    }
    for c in fan.cones_of_dim(2) {
        twice += Int::from(2) * &v[c.rays()[0]] * &v[c.rays()[1]];
    }
    debug_assert!((&twice % Int::from(2)).is_zero());
    Ok(twice / Int::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_fan, projective_fan};

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn f1_fan() -> Arc<Fan> {
        build_fan(
            2,
            vec![v(&[1, 0]), v(&[1, 1]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
            true,
        )
        .unwrap()
    }

    fn pl(fan: &Arc<Fan>, vals: &[i64]) -> PLFunction {
        PLFunction::from_i64s(fan.clone(), vals).unwrap()
    }

    #[test]
    fn figure_one() {
        let fan = f1_fan();
        let mut engine = EhrhartEngine::new();
        let f1 = pl(&fan, &[1, 1, 1, 1, 1]);
        assert_eq!(engine.eval_chi(&f1).unwrap(), Int::from(8));
        assert_eq!(engine.eval_chi(&pl(&fan, &[1, 0, 1, 1, 1])).unwrap(), Int::from(6));
        assert_eq!(engine.star_term(&f1, 1).unwrap(), Int::from(2));
        assert_eq!(engine.eval_chi(&PLFunction::zero(fan.clone())).unwrap(), Int::from(1));
    }

    #[test]
    fn projective_plane() {
        let p2 = projective_fan(2);
        let mut engine = EhrhartEngine::new();
        assert_eq!(engine.eval_chi(&pl(&p2, &[1, 1, 1])).unwrap(), Int::from(10));
        assert_eq!(engine.volume_eval(&pl(&p2, &[1, 1, 1])).unwrap(), Int::from(9));
    }

    #[test]
    fn one_dimensional_polynomial() {
        let p1 = projective_fan(1);
        let mut engine = EhrhartEngine::new();
        let p = engine.ehrhart_polynomial(&p1).unwrap();
        let mut expected = IVPoly::constant(2, Int::one());
        expected.add_term(vec![1, 0], Int::one());
        expected.add_term(vec![0, 1], Int::one());
        assert_eq!(p, expected);
        let p0 = projective_fan(0);
        assert_eq!(engine.ehrhart_polynomial(&p0).unwrap(), IVPoly::constant(0, Int::one()));
    }

    #[test]
    fn torsion_fan_fails() {
        let fan = build_fan(2, vec![v(&[1, 0]), v(&[1, 2])], &[vec![0], vec![1]], true).unwrap();
        let mut engine = EhrhartEngine::new();
        let failure = engine.is_ehrhart(&fan).failure().cloned().unwrap();
        match failure.reason {
            FailureReason::LinearInvariance { residual, .. } => {
                assert_eq!(residual, vec![Int::from(2), Int::from(2)])
            }
            other => panic!("unexpected failure {other:?}"),
        }
        assert!(engine.eval_chi(&pl(&fan, &[1, 0])).is_err());
        assert!(chi_closed_form_dim1(&pl(&fan, &[1, 0])).is_err());
    }

    #[test]
    fn f1_matches_dim2_closed_form() {
        let fan = f1_fan();
        let a = dim2_is_ehrhart(&fan).unwrap();
        assert_eq!(a, [1, 1, 1, 0, 0].map(Int::from).to_vec());
        let mut engine = EhrhartEngine::new();
        let p = engine.ehrhart_polynomial(&fan).unwrap();
        assert_eq!(p.degree(), 2);
        for vals in [[1, 1, 1, 1, 1], [1, 2, 1, 1, 1], [0, 0, 0, 0, 0], [2, -1, 3, 0, -2]] {
            let f = pl(&fan, &vals);
            let closed = chi_closed_form_dim2(&f).unwrap();
            assert_eq!(engine.eval_chi(&f).unwrap(), closed);
            assert_eq!(p.eval(f.values()), closed);
        }
        assert_eq!(chi_closed_form_dim2(&pl(&fan, &[1, 2, 1, 1, 1])).unwrap(), Int::from(9));
        assert_eq!(engine.volume_eval(&pl(&fan, &[1, 1, 1, 1, 1])).unwrap(), Int::from(7));
    }

    #[test]
    fn dim1_closed_form() {
        let p1 = projective_fan(1);
        assert_eq!(chi_closed_form_dim1(&pl(&p1, &[2, 3])).unwrap(), Int::from(6));
        assert_eq!(chi_closed_form_dim1(&pl(&p1, &[0, 0])).unwrap(), Int::from(1));
    }

    #[test]
    fn choice_independence_on_f1() {
        let fan = f1_fan();
        let f = pl(&fan, &[3, -2, 1, 4, -1]);
        let base = EhrhartEngine::new().eval_chi(&f).unwrap();
        for sigma0_index in 0..5 {
            for seed in [None, Some(1), Some(7)] {
                let mut e = EhrhartEngine::with_order(RecursionOrder { sigma0_index, ray_seed: seed });
                assert_eq!(e.eval_chi(&f).unwrap(), base);
            }
        }
    }

    #[test]
    fn large_values_use_difference_sums() {
        let fan = f1_fan();
        let big: Int = "1000000000000000000000".parse().unwrap();
        let values = vec![big.clone(), Int::from(3), -&big, Int::from(-7), big.clone()];
        let f = PLFunction::new(fan.clone(), values).unwrap();
        let mut engine = EhrhartEngine::new();
        let poly = engine.ehrhart_polynomial(&fan).unwrap();
        assert_eq!(engine.eval_chi(&f).unwrap(), poly.eval(f.values()));
    }
}
