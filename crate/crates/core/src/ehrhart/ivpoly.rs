//! Integer-valued polynomials in the binomial basis.
//!
//! A polynomial in variables `x_0..x_{k-1}` is stored as integer coefficients
//! `c_α` of the products `Π binom(x_i, α_i)`. Every integer-valued polynomial
//! has integral coefficients in this basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::Int;

/// Dense exponent vector, one entry per variable.
pub type Alpha = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle exceeds degree bound {bound}: coefficient {coeff} at {alpha:?}")]
pub struct DegreeBoundError {
    pub bound: usize,
    pub alpha: Alpha,
    pub coeff: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IVPoly {
    nvars: usize,
    terms: BTreeMap<Alpha, Int>,
}

/// Generalized binomial coefficient `x(x-1)...(x-k+1)/k!` for any integer `x`.
pub fn binom(x: &Int, k: u32) -> Int {
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..k {
        num *= x - Int::from(i);
        den *= Int::from(i + 1);
    }
    num / den
}

fn factorial(n: u32) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i))
}

impl IVPoly {
    pub fn zero(nvars: usize) -> Self {
        IVPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Int) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds `c·Π binom(x_i, alpha_i)`, pruning zero coefficients.
    pub fn add_term(&mut self, alpha: Alpha, c: Int) {
        assert_eq!(alpha.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha.clone()).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Alpha, &Int)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &[u32]) -> Int {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|a| a.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    /// The constant polynomial value if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Int> {
        match self.terms.len() {
            0 => Some(Int::zero()),
            1 => {
                let (a, c) = self.terms.iter().next().unwrap();
                a.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn eval(&self, x: &[Int]) -> Int {
        assert_eq!(x.len(), self.nvars);
        let max_exp = self.terms.keys().flat_map(|a| a.iter().copied()).max().unwrap_or(0);
        let mut cache: HashMap<(usize, u32), Int> = HashMap::new();
        let mut total = Int::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in alpha.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                debug_assert!(e <= max_exp);
                let b = cache.entry((i, e)).or_insert_with(|| binom(&x[i], e));
                term *= &*b;
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        total
    }

    pub fn eval_i64(&self, x: &[i64]) -> Int {
        let x: Vec<Int> = x.iter().map(|&v| Int::from(v)).collect();
        self.eval(&x)
    }

    /// `d!` times the degree-`d` homogeneous part in the monomial basis,
    /// evaluated at `x`, where `d` is the degree.
    pub fn top_form_eval(&self, x: &[Int]) -> Int {
        self.homogeneous_form_eval(self.degree(), x)
    }

    /// `d!` times the degree-`d` homogeneous part, for a given `d`.
    pub fn homogeneous_form_eval(&self, d: usize, x: &[Int]) -> Int {
        let d_fact = factorial(d as u32);
        let mut total = Int::zero();
        for (alpha, c) in &self.terms {
            if alpha.iter().sum::<u32>() as usize != d {
                continue;
            }
            // Leading monomial of Π binom(x_i, a_i) is Π x_i^{a_i} / a_i!.
            let mut denom = Int::one();
            let mut mono = c.clone();
            for (i, &e) in alpha.iter().enumerate() {
                denom *= factorial(e);
                mono *= num_traits::pow(x[i].clone(), e as usize);
            }
            let (q, r) = (&d_fact * mono).div_rem(&denom);
            debug_assert!(r.is_zero(), "multinomial coefficients are integral");
            total += q;
        }
        total
    }

    pub fn sub(&self, other: &IVPoly) -> IVPoly {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }

    pub fn add(&self, other: &IVPoly) -> IVPoly {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for IVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (alpha, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in alpha.iter().enumerate() {
                if e > 0 {
                    write!(f, "·C(x{i},{e})")?;
                }
            }
        }
        Ok(())
    }
}

/// All exponent vectors over `k` variables with total degree at most `bound`.
fn simplex_grid(k: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// Mahler expansion of an integer-valued polynomial oracle.
///
/// Only the variables listed in `vars` are sampled; the others are held at
/// zero, so the oracle must not depend on them. Samples the grid
/// `|β| <= bound + 1` and reports an error if the top layer is nonzero.
pub fn binomial_expand<F>(nvars: usize, vars: &[usize], bound: usize, mut oracle: F) -> Result<IVPoly, DegreeBoundError>
where
    F: FnMut(&[Int]) -> Int,
{
    let k = vars.len();
    let grid = simplex_grid(k, bound as u32 + 1);
    let mut values: HashMap<Vec<u32>, Int> = HashMap::with_capacity(grid.len());
    let mut point = vec![Int::zero(); nvars];
    for beta in &grid {
        for (i, &v) in vars.iter().enumerate() {
            point[v] = Int::from(beta[i]);
        }
        values.insert(beta.clone(), oracle(&point));
    }
    for axis in 0..k {
        let mut order: Vec<&Vec<u32>> = grid.iter().filter(|b| b[axis] > 0).collect();
        order.sort_by(|a, b| b[axis].cmp(&a[axis]));
        for step in 1..=bound as u32 + 1 {
            for beta in &order {
                if beta[axis] < step {
                    continue;
                }
                let mut prev = (*beta).clone();
                prev[axis] -= 1;
                let p = values[&prev].clone();
                *values.get_mut(*beta).unwrap() -= p;
            }
        }
    }
    let mut poly = IVPoly::zero(nvars);
    for beta in &grid {
        let c = &values[beta];
        if c.is_zero() {
            continue;
        }
        let mut alpha = vec![0u32; nvars];
        for (i, &v) in vars.iter().enumerate() {
            alpha[v] = beta[i];
        }
        if beta.iter().sum::<u32>() as usize > bound {
            return Err(DegreeBoundError { bound, alpha, coeff: c.clone() });
        }
        poly.add_term(alpha, c.clone());
    }
    Ok(poly)
}
