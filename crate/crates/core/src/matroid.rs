//! Matroids on small ground sets and their Bergman fans.
//!
//! Subsets of the ground set `{0..k-1}` are bitmasks. The rank function is
//! tabulated for every subset, so ground sets are limited to
//! [`MAX_GROUND_SIZE`] elements.
//!
//! Bergman fans live in `Z^E / Z·(1,…,1)`, realized by dropping the last
//! coordinate: `ē_i = e_i` for `i < k-1` and `ē_{k-1} = -(e_0 + … + e_{k-2})`.
//! Rays are the proper flats sorted by cardinality, then lexicographically.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ehrhart::{binom, EhrhartEngine, EhrhartError};
use crate::fan::{build_fan, Cone, Fan, FanError, FanKey};
use crate::lattice::{hermite_normal_form, primitive_vector, Int, IntMatrix, LatticeVector};
use crate::plfun::{PLFunction, PlError};

pub const MAX_GROUND_SIZE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground set of size {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("element {0} is outside the ground set")]
    ElementOutOfRange(usize),
    #[error("no bases given")]
    EmptyBases,
    #[error("bases have different sizes")]
    UnequalBases,
    #[error("basis {0:?} repeats an element")]
    RepeatedElement(Vec<usize>),
    #[error("basis exchange fails for {b1:?}, {b2:?} at element {x}")]
    ExchangeViolated { b1: Vec<usize>, b2: Vec<usize>, x: usize },
    #[error("rank {0} exceeds the ground set size")]
    BadRank(usize),
    #[error("rank function violates {0}")]
    RankAxiom(&'static str),
    #[error("{0:?} is not a flat")]
    NotAFlat(Vec<usize>),
    #[error("{0:?} is not a proper flat")]
    ImproperFlat(Vec<usize>),
    #[error("element {0} is a loop")]
    HasLoop(usize),
    #[error("no lattice isomorphism between the star at {0:?} and the product of minors")]
    IsomorphismNotFound(Vec<usize>),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
}

impl MatroidError {
    pub fn code(&self) -> &'static str {
        match self {
            MatroidError::TooLarge(_) | MatroidError::ElementOutOfRange(_) | MatroidError::BadRank(_) => {
                "INVALID_MATROID"
            }
            MatroidError::EmptyBases => "EMPTY_BASES",
            MatroidError::UnequalBases | MatroidError::RepeatedElement(_) => "INVALID_BASES",
            MatroidError::ExchangeViolated { .. } => "EXCHANGE_VIOLATED",
            MatroidError::RankAxiom(_) => "RANK_AXIOM",
            MatroidError::NotAFlat(_) => "NOT_A_FLAT",
            MatroidError::ImproperFlat(_) => "IMPROPER_FLAT",
            MatroidError::HasLoop(_) => "HAS_LOOPS",
            MatroidError::IsomorphismNotFound(_) => "ISOMORPHISM_NOT_FOUND",
            MatroidError::Fan(e) => e.code(),
            MatroidError::Pl(e) => e.code(),
            MatroidError::Ehrhart(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backing {
    Uniform { rank: usize },
    Bases(Vec<Vec<usize>>),
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Restriction,
    Contraction,
}

#[derive(Debug, Clone)]
pub struct Matroid {
    ground_size: usize,
    rank: Vec<u8>,
    backing: Backing,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size && self.rank == other.rank
    }
}

impl Eq for Matroid {}

pub fn mask_of(elements: &[usize]) -> u32 {
    elements.iter().fold(0, |m, &e| m | 1 << e)
}

pub fn elements_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).collect()
}

fn full_mask(k: usize) -> u32 {
    if k == 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

fn check_size(k: usize) -> Result<(), MatroidError> {
    if k > MAX_GROUND_SIZE {
        Err(MatroidError::TooLarge(k))
    } else {
        Ok(())
    }
}

impl Matroid {
    pub fn uniform(rank: usize, ground_size: usize) -> Result<Self, MatroidError> {
        check_size(ground_size)?;
        if rank > ground_size {
            return Err(MatroidError::BadRank(rank));
        }
        let table = (0..1u32 << ground_size).map(|s| (s.count_ones() as usize).min(rank) as u8).collect();
        Matroid::from_table(ground_size, table, Backing::Uniform { rank })
    }

    pub fn from_bases(ground_size: usize, bases: &[Vec<usize>]) -> Result<Self, MatroidError> {
        check_size(ground_size)?;
        if bases.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            if let Some(&e) = b.iter().find(|&&e| e >= ground_size) {
                return Err(MatroidError::ElementOutOfRange(e));
            }
            let m = mask_of(b);
            if m.count_ones() as usize != b.len() {
                return Err(MatroidError::RepeatedElement(b.clone()));
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        let r = masks[0].count_ones();
        if masks.iter().any(|m| m.count_ones() != r) {
            return Err(MatroidError::UnequalBases);
        }
        for &b1 in &masks {
            for &b2 in &masks {
                for x in elements_of(b1 & !b2) {
                    let ok = elements_of(b2 & !b1)
                        .iter()
                        .any(|&y| masks.binary_search(&((b1 & !(1 << x)) | 1 << y)).is_ok());
                    if !ok {
                        return Err(MatroidError::ExchangeViolated { b1: elements_of(b1), b2: elements_of(b2), x });
                    }
                }
            }
        }
        let table = (0..1u32 << ground_size)
            .map(|s| masks.iter().map(|b| (s & b).count_ones()).max().unwrap() as u8)
            .collect();
        let backing = Backing::Bases(masks.iter().map(|&m| elements_of(m)).collect());
        Matroid::from_table(ground_size, table, backing)
    }

    /// Cycle matroid of a multigraph; edge `i` is ground element `i`.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, MatroidError> {
        let k = edges.len();
        check_size(k)?;
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= vertices || b >= vertices) {
            return Err(MatroidError::ElementOutOfRange(a.max(b)));
        }
        let table = (0..1u32 << k)
            .map(|s| {
                let mut parent: Vec<usize> = (0..vertices).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while p[r] != r {
                        r = p[r];
                    }
                    let mut y = x;
                    while p[y] != r {
                        let next = p[y];
                        p[y] = r;
                        y = next;
                    }
                    r
                }
                let mut rank = 0u8;
                for e in elements_of(s) {
                    let (a, b) = edges[e];
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                        rank += 1;
                    }
                }
                rank
            })
            .collect();
        Matroid::from_table(k, table, Backing::Graphic { vertices, edges: edges.to_vec() })
    }

    fn from_table(ground_size: usize, rank: Vec<u8>, backing: Backing) -> Result<Self, MatroidError> {
        let m = Matroid { ground_size, rank, backing };
        m.spot_check()?;
        Ok(m)
    }

    fn spot_check(&self) -> Result<(), MatroidError> {
        if self.rank[0] != 0 {
            return Err(MatroidError::RankAxiom("rank of the empty set"));
        }
        let full = full_mask(self.ground_size);
        let mut rng = ChaCha8Rng::seed_from_u64(0x3a7_0001);
        for _ in 0..64 {
            let a = rng.gen::<u32>() & full;
            let b = rng.gen::<u32>() & full;
            let c = rng.gen::<u32>() & full;
            if self.rank(a) > self.rank(a | c) || self.rank(a) as u32 > a.count_ones() {
                return Err(MatroidError::RankAxiom("monotonicity"));
            }
            if self.rank(a | b) as u32 + self.rank(a & b) as u32 > self.rank(a) as u32 + self.rank(b) as u32 {
                return Err(MatroidError::RankAxiom("submodularity"));
            }
        }
        Ok(())
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn full(&self) -> u32 {
        full_mask(self.ground_size)
    }

    pub fn rank(&self, s: u32) -> usize {
        self.rank[s as usize] as usize
    }

    pub fn matroid_rank(&self) -> usize {
        self.rank(self.full())
    }

    pub fn closure(&self, s: u32) -> u32 {
        let r = self.rank(s);
        (0..self.ground_size).filter(|&e| self.rank(s | 1 << e) == r).fold(s, |acc, e| acc | 1 << e)
    }

    pub fn is_flat(&self, s: u32) -> bool {
        self.closure(s) == s
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.ground_size).filter(|&e| self.rank(1 << e) == 0).collect()
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// All flats, sorted by cardinality and then lexicographically.
    pub fn flats(&self) -> Vec<u32> {
        let mut seen: Vec<u32> = (0..=self.full()).map(|s| self.closure(s)).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then_with(|| elements_of(*a).cmp(&elements_of(*b))));
        seen
    }

    /// Flats other than the empty set and the ground set.
    pub fn proper_flats(&self) -> Vec<u32> {
        let full = self.full();
        self.flats().into_iter().filter(|&f| f != 0 && f != full).collect()
    }

    fn check_proper_flat(&self, f: u32) -> Result<(), MatroidError> {
        if !self.is_flat(f) {
            return Err(MatroidError::NotAFlat(elements_of(f)));
        }
        if f == 0 || f == self.full() {
            return Err(MatroidError::ImproperFlat(elements_of(f)));
        }
        Ok(())
    }

    /// `M^F`, with the elements of `F` relabeled in increasing order.
    pub fn restriction(&self, f: u32) -> Result<Matroid, MatroidError> {
        self.check_proper_flat(f)?;
        let elems = elements_of(f);
        let k = elems.len();
        let table = (0..1u32 << k)
            .map(|s| {
                let lifted = elements_of(s).iter().fold(0u32, |acc, &i| acc | 1 << elems[i]);
                self.rank[lifted as usize]
            })
            .collect();
        Matroid::from_table(k, table, Backing::Restriction)
    }

    /// `M_F` on `E \ F`, relabeled in increasing order.
    pub fn contraction(&self, f: u32) -> Result<Matroid, MatroidError> {
        self.check_proper_flat(f)?;
        let elems = elements_of(self.full() & !f);
        let k = elems.len();
        let rf = self.rank(f) as u8;
        let table = (0..1u32 << k)
            .map(|s| {
                let lifted = elements_of(s).iter().fold(f, |acc, &i| acc | 1 << elems[i]);
                self.rank[lifted as usize] - rf
            })
            .collect();
        Matroid::from_table(k, table, Backing::Contraction)
    }

    /// `ē_S` in the coordinates described in the module docs.
    fn bar_e(&self, s: u32) -> LatticeVector {
        let n = self.ground_size - 1;
        let mut v = LatticeVector::zeros(n);
        for e in elements_of(s) {
            if e < n {
                v.0[e] += 1;
            } else {
                for c in v.0.iter_mut() {
                    *c -= 1;
                }
            }
        }
        v
    }

    pub fn bergman_fan(&self) -> Result<BergmanFan, MatroidError> {
        if let Some(&e) = self.loops().first() {
            return Err(MatroidError::HasLoop(e));
        }
        if self.ground_size == 0 {
            return Err(MatroidError::ElementOutOfRange(0));
        }
        let flats = self.proper_flats();
        let index: HashMap<u32, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rays: Vec<LatticeVector> = flats
            .iter()
            .map(|&f| primitive_vector(&self.bar_e(f)).expect("proper flats give nonzero rays"))
            .collect();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        self.extend_chains(&flats, &index, &mut stack, &mut chains);
        let fan = build_fan(self.ground_size - 1, rays, &chains, true)?;
        debug_assert_eq!(fan.dim() + 1, self.matroid_rank().max(1));
        Ok(BergmanFan { matroid: self.clone(), fan, flats })
    }

    fn extend_chains(&self, flats: &[u32], index: &HashMap<u32, usize>, stack: &mut Vec<u32>, out: &mut Vec<Vec<usize>>) {
        let last = stack.last().copied();
        let next: Vec<u32> = flats
            .iter()
            .copied()
            .filter(|&g| match last {
                None => self.rank(g) == 1,
                Some(f) => g & f == f && g != f && self.rank(g) == self.rank(f) + 1,
            })
            .collect();
        if next.is_empty() {
            if !stack.is_empty() {
                out.push(stack.iter().map(|f| index[f]).collect());
            }
            return;
        }
        for g in next {
            stack.push(g);
            self.extend_chains(flats, index, stack, out);
            stack.pop();
        }
    }
}

/// A Bergman fan together with the flat behind each ray.
#[derive(Debug, Clone)]
pub struct BergmanFan {
    pub matroid: Matroid,
    pub fan: Arc<Fan>,
    /// `flats[i]` is the proper flat of ray `i`.
    pub flats: Vec<u32>,
}

impl BergmanFan {
    pub fn ray_of_flat(&self, f: u32) -> Option<usize> {
        self.flats.iter().position(|&g| g == f)
    }

    /// For each star ray at `ρ_F`: whether it goes to the restriction factor,
    /// and its ray index in that factor's Bergman fan.
    fn star_split(&self, rho: usize, lift: &[usize], restr: &BergmanFan, contr: &BergmanFan) -> Vec<(bool, usize)> {
        let f = self.flats[rho];
        let restr_elems = elements_of(f);
        let contr_elems = elements_of(self.matroid.full() & !f);
        lift.iter()
            .map(|&t| {
                let g = self.flats[t];
                if g & f == g {
                    let local = restr_elems.iter().enumerate().filter(|(_, e)| g >> **e & 1 == 1).fold(0u32, |acc, (i, _)| acc | 1 << i);
                    (true, restr.ray_of_flat(local).expect("flat of the restriction"))
                } else {
                    let rest = g & !f;
                    let local = contr_elems.iter().enumerate().filter(|(_, e)| rest >> **e & 1 == 1).fold(0u32, |acc, (i, _)| acc | 1 << i);
                    (false, contr.ray_of_flat(local).expect("flat of the contraction"))
                }
            })
            .collect()
    }
}

/// Unimodular `A` with `A·(star rays) = (product rays)`, matching rays
/// through the flats they come from. The product places `M^F` first.
pub fn star_product_isomorphism(bf: &BergmanFan, flat: u32) -> Result<IntMatrix, MatroidError> {
    let rho = bf.ray_of_flat(flat).ok_or_else(|| MatroidError::ImproperFlat(elements_of(flat)))?;
    let star = bf.fan.star(&Cone::ray(rho))?;
    let restr = bf.matroid.restriction(flat)?.bergman_fan()?;
    let contr = bf.matroid.contraction(flat)?.bergman_fan()?;
    let split = bf.star_split(rho, &star.ray_lift, &restr, &contr);
    let (n1, n2) = (restr.fan.ambient_dim(), contr.fan.ambient_dim());
    let z1 = LatticeVector::zeros(n1);
    let z2 = LatticeVector::zeros(n2);
    let target: Vec<LatticeVector> = split
        .iter()
        .map(|&(first, i)| if first { restr.fan.ray(i).concat(&z2) } else { z1.concat(contr.fan.ray(i)) })
        .collect();
    let n = star.fan.ambient_dim();
    if n != n1 + n2 {
        return Err(MatroidError::IsomorphismNotFound(elements_of(flat)));
    }
    let s = IntMatrix::from_cols(n, star.fan.rays());
    let p = IntMatrix::from_cols(n, &target);
    let (hs, us) = hermite_normal_form(&s);
    let (hp, up) = hermite_normal_form(&p);
    if hs != hp {
        return Err(MatroidError::IsomorphismNotFound(elements_of(flat)));
    }
    let a = up.unimodular_inverse().expect("Hermite transform is unimodular").mul(&us);
    debug_assert_eq!(a.mul(&s), p);
    Ok(a)
}

/// `χ` on a Bergman fan through the generic engine.
pub fn chi_matroid(engine: &mut EhrhartEngine, bf: &BergmanFan, f: &PLFunction) -> Result<Int, MatroidError> {
    if f.fan().key() != bf.fan.key() {
        return Err(PlError::DifferentFans.into());
    }
    Ok(engine.eval_chi(f)?)
}

/// `χ` on Bergman fans evaluating each ray star as a product over the minors
/// `M^F` and `M_F`.
#[derive(Default)]
pub struct ProductPath {
    fans: HashMap<Vec<u8>, Arc<BergmanFan>>,
    memo: HashMap<(FanKey, Vec<Int>), Int>,
}

impl ProductPath {
    pub fn new() -> Self {
        Self::default()
    }

    fn bergman(&mut self, m: &Matroid) -> Result<Arc<BergmanFan>, MatroidError> {
        let mut key = m.rank.clone();
        key.push(m.ground_size as u8);
        if let Some(b) = self.fans.get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(m.bergman_fan()?);
        self.fans.insert(key, b.clone());
        Ok(b)
    }

    pub fn chi(&mut self, bf: &BergmanFan, f: &PLFunction) -> Result<Int, MatroidError> {
        if f.fan().key() != bf.fan.key() {
            return Err(PlError::DifferentFans.into());
        }
        let bf = self.bergman(&bf.matroid)?;
        self.chi_values(&bf, f.values())
    }

    fn chi_values(&mut self, bf: &Arc<BergmanFan>, values: &[Int]) -> Result<Int, MatroidError> {
        let fan = &bf.fan;
        if fan.num_rays() == 0 {
            return Ok(Int::one());
        }
        let sigma0 = fan.least_top_cone().clone();
        let basis = fan.basis_for(&sigma0)?;
        let local: Vec<Int> = sigma0.rays().iter().map(|&i| values[i].clone()).collect();
        let m = basis.functional_with_values(&local);
        let mut g: Vec<Int> = values.iter().zip(fan.rays()).map(|(v, u)| v - m.dot(u)).collect();
        let rep = PLFunction::new(fan.clone(), g.clone())?.canonical_class_rep().rep.into_values();
        let key = (fan.key().clone(), rep);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut total = Int::one();
        for rho in 0..fan.num_rays() {
            if sigma0.contains(rho) || g[rho].is_zero() {
                continue;
            }
            let k = g[rho].clone();
            let star = fan.star(&Cone::ray(rho))?;
            let restr = self.bergman(&bf.matroid.restriction(bf.flats[rho])?)?;
            let contr = self.bergman(&bf.matroid.contraction(bf.flats[rho])?)?;
            let split = bf.star_split(rho, &star.ray_lift, &restr, &contr);
            let m_rho = star.section_basis.dual_row(0);
            let term = |this: &mut Self, j: Int| -> Result<Int, MatroidError> {
                let mut v1 = vec![Int::zero(); restr.fan.num_rays()];
                let mut v2 = vec![Int::zero(); contr.fan.num_rays()];
                for (&t, &(first, i)) in star.ray_lift.iter().zip(&split) {
                    let value = &g[t] - &j * m_rho.dot(fan.ray(t));
                    if first {
                        v1[i] = value;
                    } else {
                        v2[i] = value;
                    }
                }
                Ok(this.chi_values(&restr, &v1)? * this.chi_values(&contr, &v2)?)
            };
            let degree = star.fan.dim();
            if k.abs() > Int::from(degree + 2) {
                let mut diffs = Vec::with_capacity(degree + 1);
                for j in 1..=degree as i64 + 1 {
                    diffs.push(term(self, Int::from(j))?);
                }
                for i in 0..=degree {
                    total += &diffs[0] * binom(&k, i as u32 + 1);
                    diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
                }
            } else if k > Int::zero() {
                let mut j = Int::one();
                while j <= k {
                    total += term(self, j.clone())?;
                    j += 1;
                }
            } else {
                let mut j: Int = &k + 1;
                while j <= Int::zero() {
                    total -= term(self, j.clone())?;
                    j += 1;
                }
            }
            g[rho] = Int::zero();
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn uniform_flats() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.proper_flats(), vec![0b001, 0b010, 0b100]);
        assert!(u23.is_loopless());
        let tri = Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.proper_flats(), u23.proper_flats());
        assert_eq!(tri, u23);
    }

    #[test]
    fn loops_and_bad_bases() {
        let with_loop = Matroid::from_bases(3, &[vec![0, 1]]).unwrap();
        assert!(!with_loop.is_loopless());
        assert!(matches!(with_loop.bergman_fan(), Err(MatroidError::HasLoop(2))));
        assert_eq!(Matroid::from_bases(3, &[]), Err(MatroidError::EmptyBases));
        assert!(matches!(
            Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]),
            Err(MatroidError::ExchangeViolated { .. })
        ));
        assert_eq!(Matroid::from_bases(3, &[vec![0, 1], vec![2]]), Err(MatroidError::UnequalBases));
    }

    #[test]
    fn minors() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.restriction(0b001).unwrap(), Matroid::uniform(1, 1).unwrap());
        assert_eq!(u23.contraction(0b001).unwrap(), Matroid::uniform(1, 2).unwrap());
        assert!(matches!(u23.restriction(0b111), Err(MatroidError::ImproperFlat(_))));
        assert!(matches!(u23.restriction(0b011), Err(MatroidError::NotAFlat(_))));
    }

    #[test]
    fn bergman_fans() {
        let u23 = Matroid::uniform(2, 3).unwrap().bergman_fan().unwrap();
        assert_eq!(u23.fan.rays(), &[v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])]);
        assert_eq!(u23.fan.dim(), 1);
        let u14 = Matroid::uniform(1, 4).unwrap().bergman_fan().unwrap();
        assert_eq!(u14.fan.num_rays(), 0);
        assert_eq!(u14.fan.ambient_dim(), 3);
        let u34 = Matroid::uniform(3, 4).unwrap().bergman_fan().unwrap();
        assert_eq!(u34.fan.num_rays(), 10);
        assert_eq!(u34.fan.maximal_cones().len(), 12);
        assert_eq!(u34.fan.dim(), 2);
    }

    #[test]
    fn chi_paths_agree() {
        let bf = Matroid::uniform(2, 3).unwrap().bergman_fan().unwrap();
        let mut engine = EhrhartEngine::new();
        let mut fast = ProductPath::new();
        let zero = PLFunction::zero(bf.fan.clone());
        assert_eq!(chi_matroid(&mut engine, &bf, &zero).unwrap(), Int::one());
        let courant = PLFunction::courant(bf.fan.clone(), 0).unwrap();
        assert_eq!(chi_matroid(&mut engine, &bf, &courant).unwrap(), Int::from(2));
        assert_eq!(fast.chi(&bf, &courant).unwrap(), Int::from(2));

        let bf = Matroid::uniform(3, 4).unwrap().bergman_fan().unwrap();
        let f = PLFunction::from_i64s(bf.fan.clone(), &[1, -1, 2, 0, 1, 0, -2, 1, 1, 0]).unwrap();
        assert_eq!(chi_matroid(&mut engine, &bf, &f).unwrap(), fast.chi(&bf, &f).unwrap());
    }

    #[test]
    fn star_isomorphisms() {
        let bf = Matroid::uniform(3, 4).unwrap().bergman_fan().unwrap();
        for &flat in &bf.flats {
            let a = star_product_isomorphism(&bf, flat).unwrap();
            assert!(a.is_unimodular());
        }
    }

    #[test]
    fn large_values_agree() {
        let bf = Matroid::uniform(3, 4).unwrap().bergman_fan().unwrap();
        let big: Int = "123456789012345678901".parse().unwrap();
        let values: Vec<Int> = (0..10).map(|i| if i % 3 == 0 { -&big } else { &big + Int::from(i) }).collect();
        let f = PLFunction::new(bf.fan.clone(), values).unwrap();
        let mut engine = EhrhartEngine::new();
        let poly = engine.ehrhart_polynomial(&bf.fan).unwrap();
        let generic = chi_matroid(&mut engine, &bf, &f).unwrap();
        assert_eq!(generic, poly.eval(f.values()));
        assert_eq!(ProductPath::new().chi(&bf, &f).unwrap(), generic);
    }
}
