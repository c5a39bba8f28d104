//! Lattice polytopes `P_f = {m : m(u_ρ) <= f(u_ρ)}` and brute-force counting.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::Fan;
use crate::lattice::{solve_rational, to_rational, Int, LatticeVector};
use crate::lp::find_nonnegative_solution;
use crate::plfun::{Convexity, PLFunction, PlError};

pub const DEFAULT_MAX_SHELLS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("function is not convex ({0:?})")]
    NotConvex(Convexity),
    #[error("fan is not complete")]
    NotComplete,
    #[error("no zero shell pair found within {0} shells")]
    ShellLimit(usize),
    #[error("normal of length {found} in dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Pl(#[from] PlError),
}

impl PolytopeError {
    pub fn code(&self) -> &'static str {
        match self {
            PolytopeError::Unbounded => "UNBOUNDED",
            PolytopeError::NotConvex(_) => "NOT_CONVEX",
            PolytopeError::NotComplete => "NOT_COMPLETE",
            PolytopeError::ShellLimit(_) => "SHELL_LIMIT",
            PolytopeError::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            PolytopeError::Pl(e) => e.code(),
        }
    }
}

/// `{x : <x, normal_i> <= bound_i for all i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    inequalities: Vec<(LatticeVector, Int)>,
}

impl HPolytope {
    pub fn new(dim: usize, inequalities: Vec<(LatticeVector, Int)>) -> Result<Self, PolytopeError> {
        if let Some((n, _)) = inequalities.iter().find(|(n, _)| n.dim() != dim) {
            return Err(PolytopeError::DimensionMismatch { expected: dim, found: n.dim() });
        }
        Ok(HPolytope { dim, inequalities })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[(LatticeVector, Int)] {
        &self.inequalities
    }

    pub fn contains(&self, x: &LatticeVector, strict: bool) -> bool {
        self.inequalities.iter().all(|(n, b)| {
            let v = n.dot(x);
            if strict {
                &v < b
            } else {
                &v <= b
            }
        })
    }

    /// Whether the normals positively span the whole space.
    pub fn is_bounded(&self) -> bool {
        let n = self.dim;
        if n == 0 {
            return true;
        }
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|row| self.inequalities.iter().map(|(nv, _)| to_rational(&nv.0[row])).collect())
            .collect();
        (0..n).all(|j| {
            [1i64, -1].iter().all(|&s| {
                let b: Vec<BigRational> = (0..n)
                    .map(|i| BigRational::from_integer(Int::from(if i == j { s } else { 0 })))
                    .collect();
                find_nonnegative_solution(&a, &b).is_some()
            })
        })
    }

    /// Vertices (rational), found by solving every `n`-subset of the inequalities.
    pub fn vertices(&self) -> Vec<Vec<BigRational>> {
        let n = self.dim;
        let k = self.inequalities.len();
        let mut found: Vec<Vec<BigRational>> = Vec::new();
        let mut seen: HashSet<Vec<BigRational>> = HashSet::new();
        if n == 0 {
            if self.inequalities.iter().all(|(_, b)| !b.is_negative()) {
                found.push(Vec::new());
            }
            return found;
        }
        let mut idx: Vec<usize> = (0..n).collect();
        if k < n {
            return found;
        }
        loop {
            let a: Vec<Vec<BigRational>> = idx
                .iter()
                .map(|&i| self.inequalities[i].0 .0.iter().map(to_rational).collect())
                .collect();
            let b: Vec<BigRational> = idx.iter().map(|&i| to_rational(&self.inequalities[i].1)).collect();
            let det_nonzero = {
                let m = crate::lattice::IntMatrix::from_rows(
                    n,
                    &idx.iter().map(|&i| self.inequalities[i].0.clone()).collect::<Vec<_>>(),
                );
                !m.determinant().is_zero()
            };
            if det_nonzero {
                if let Some(x) = solve_rational(&a, &b) {
                    let feasible = self.inequalities.iter().all(|(nv, bound)| {
                        let v: BigRational = nv.0.iter().zip(&x).map(|(c, xi)| to_rational(c) * xi).sum();
                        v <= to_rational(bound)
                    });
                    if feasible && seen.insert(x.clone()) {
                        found.push(x);
                    }
                }
            }
            // Next combination in lexicographic order.
            let mut i = n;
            loop {
                if i == 0 {
                    return found;
                }
                i -= 1;
                if idx[i] < k - n + i {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..n {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Integer bounding box of the vertices, or `None` if the polytope is empty.
    fn integer_box(&self) -> Option<(Vec<Int>, Vec<Int>)> {
        let verts = self.vertices();
        if verts.is_empty() {
            return None;
        }
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            lo.push(verts.iter().map(|v| v[j].floor().to_integer()).min().unwrap());
            hi.push(verts.iter().map(|v| v[j].ceil().to_integer()).max().unwrap());
        }
        Some((lo, hi))
    }

    /// Number of lattice points, in the interior when `interior` is set.
    pub fn count_lattice_points(&self, interior: bool) -> Result<Int, PolytopeError> {
        self.count_where(|x| self.contains(x, interior))
    }

    /// Inequalities that hold with equality at every vertex.
    fn implicit_equalities(&self) -> Vec<usize> {
        let verts = self.vertices();
        (0..self.inequalities.len())
            .filter(|&i| {
                let (nv, b) = &self.inequalities[i];
                verts.iter().all(|x| {
                    let v: BigRational = nv.0.iter().zip(x).map(|(c, xi)| to_rational(c) * xi).sum();
                    v == to_rational(b)
                })
            })
            .collect()
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.vertices().is_empty() {
            return None;
        }
        let eqs: Vec<LatticeVector> = self.implicit_equalities().iter().map(|&i| self.inequalities[i].0.clone()).collect();
        let rank = if eqs.is_empty() { 0 } else { crate::lattice::IntMatrix::from_rows(self.dim, &eqs).rank() };
        Some(self.dim - rank)
    }

    /// Lattice points in the interior relative to the affine hull.
    pub fn count_relative_interior_points(&self) -> Result<Int, PolytopeError> {
        let eqs = self.implicit_equalities();
        self.count_where(|x| {
            self.inequalities.iter().enumerate().all(|(i, (n, b))| {
                let v = n.dot(x);
                if eqs.contains(&i) {
                    &v <= b
                } else {
                    &v < b
                }
            })
        })
    }

    /// Lattice points of the face `<x, normal_i> = bound_i`.
    pub fn count_face_points(&self, i: usize) -> Result<Int, PolytopeError> {
        let (n, b) = &self.inequalities[i];
        self.count_where(|x| self.contains(x, false) && &n.dot(x) == b)
    }

    fn count_where(&self, pred: impl Fn(&LatticeVector) -> bool) -> Result<Int, PolytopeError> {
        if !self.is_bounded() {
            return Err(PolytopeError::Unbounded);
        }
        let Some((lo, hi)) = self.integer_box() else {
            return Ok(Int::zero());
        };
        let mut count = Int::zero();
        for_each_point(&lo, &hi, |x| {
            if pred(x) {
                count += 1;
            }
        });
        Ok(count)
    }
}

/// Calls `visit` on every lattice point of the box `[lo, hi]`.
fn for_each_point(lo: &[Int], hi: &[Int], mut visit: impl FnMut(&LatticeVector)) {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut x = LatticeVector(lo.to_vec());
    loop {
        visit(&x);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x.0[i] < hi[i] {
                x.0[i] += 1;
                break;
            }
            x.0[i] = lo[i].clone();
            i += 1;
        }
    }
}

/// `P_f` with one inequality per ray, and its vertices (one per maximal cone, deduplicated).
pub fn polytope_from_pl(f: &PLFunction) -> Result<(HPolytope, Vec<LatticeVector>), PolytopeError> {
    let kind = f.convexity_type().map_err(|e| match e {
        PlError::NotComplete => PolytopeError::NotComplete,
        other => PolytopeError::Pl(other),
    })?;
    if !kind.is_convex() {
        return Err(PolytopeError::NotConvex(kind));
    }
    let fan = f.fan();
    let inequalities = fan.rays().iter().cloned().zip(f.values().iter().cloned()).collect();
    let poly = HPolytope::new(fan.ambient_dim(), inequalities)?;
    Ok((poly, virtual_vertices(f)?))
}

/// The linear functions `m_σ` agreeing with `f` on each maximal cone, deduplicated in cone order.
pub fn virtual_vertices(f: &PLFunction) -> Result<Vec<LatticeVector>, PolytopeError> {
    let mut out: Vec<LatticeVector> = Vec::new();
    for c in f.fan().maximal_cones() {
        let m = f.local_linear(c)?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// `Σ_{σ ∈ Σ_{f,m}} (-1)^{dim σ}`.
pub fn chi_c_subfan(f: &PLFunction, m: &LatticeVector) -> Int {
    let fan = f.fan();
    let ok: Vec<bool> = fan.rays().iter().zip(f.values()).map(|(u, v)| &m.dot(u) <= v).collect();
    let mut total = Int::zero();
    for c in fan.cones() {
        if c.rays().iter().all(|&r| ok[r]) {
            if c.dim() % 2 == 0 {
                total += 1;
            } else {
                total -= 1;
            }
        }
    }
    total
}

/// `(-1)^n Σ_m Σ_{σ∈Σ_{f,m}} (-1)^{dim σ}` on a complete fan, summing over
/// growing boxes until two consecutive boundary shells vanish pointwise.
pub fn chi_via_alternating_sum(f: &PLFunction, max_shells: usize) -> Result<Int, PolytopeError> {
    let fan: &Fan = f.fan();
    if !fan.is_complete() {
        return Err(PolytopeError::NotComplete);
    }
    let n = fan.ambient_dim();
    let sign = if n.is_multiple_of(2) { Int::one() } else { -Int::one() };
    if n == 0 {
        return Ok(Int::one());
    }
    let verts = virtual_vertices(f)?;
    let mut lo: Vec<Int> = (0..n).map(|j| verts.iter().map(|v| v.0[j].clone()).min().unwrap()).collect();
    let mut hi: Vec<Int> = (0..n).map(|j| verts.iter().map(|v| v.0[j].clone()).max().unwrap()).collect();
    let mut total = Int::zero();
    for_each_point(&lo, &hi, |m| total += chi_c_subfan(f, m));
    let mut quiet = 0;
    for shell in 1..=max_shells {
        let (old_lo, old_hi) = (lo.clone(), hi.clone());
        for j in 0..n {
            lo[j] -= 1;
            hi[j] += 1;
        }
        let mut shell_sum = Int::zero();
        let mut all_zero = true;
        for_each_point(&lo, &hi, |m| {
            let inside = (0..n).all(|j| m.0[j] >= old_lo[j] && m.0[j] <= old_hi[j]);
            if inside {
                return;
            }
            let c = chi_c_subfan(f, m);
            if !c.is_zero() {
                all_zero = false;
                shell_sum += c;
            }
        });
        total += shell_sum;
        if all_zero {
            quiet += 1;
            if quiet == 2 {
                log::debug!("alternating sum settled after {shell} shells");
                return Ok(sign * total);
            }
        } else {
            quiet = 0;
        }
    }
    Err(PolytopeError::ShellLimit(max_shells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_fan, projective_fan};
    use std::sync::Arc;

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
    fn pentagon() {
        let fan = f1_fan();
        let (p, mut verts) = polytope_from_pl(&pl(&fan, &[1, 1, 1, 1, 1])).unwrap();
        verts.sort();
        let mut expected = vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 1]), v(&[-1, -1]), v(&[1, -1])];
        expected.sort();
        assert_eq!(verts, expected);
        assert_eq!(p.count_lattice_points(false).unwrap(), Int::from(8));
        assert_eq!(p.count_lattice_points(true).unwrap(), Int::from(1));
    }

    #[test]
    fn triangle() {
        let p2 = projective_fan(2);
        let (p, verts) = polytope_from_pl(&pl(&p2, &[1, 1, 1])).unwrap();
        assert_eq!(verts, vec![v(&[1, 1]), v(&[1, -2]), v(&[-2, 1])]);
        assert_eq!(p.count_lattice_points(false).unwrap(), Int::from(10));
        assert_eq!(p.count_lattice_points(true).unwrap(), Int::from(1));
        let (z, zv) = polytope_from_pl(&PLFunction::zero(p2)).unwrap();
        assert_eq!(zv, vec![v(&[0, 0])]);
        assert_eq!(z.count_lattice_points(false).unwrap(), Int::from(1));
    }

    #[test]
    fn unit_square() {
        let p = HPolytope::new(
            2,
            vec![
                (v(&[1, 0]), Int::from(1)),
                (v(&[0, 1]), Int::from(1)),
                (v(&[-1, 0]), Int::from(0)),
                (v(&[0, -1]), Int::from(0)),
            ],
        )
        .unwrap();
        assert_eq!(p.count_lattice_points(false).unwrap(), Int::from(4));
        assert_eq!(p.count_lattice_points(true).unwrap(), Int::from(0));
        let half = HPolytope::new(2, vec![(v(&[1, 0]), Int::from(1))]).unwrap();
        assert_eq!(half.count_lattice_points(false), Err(PolytopeError::Unbounded));
    }

    #[test]
    fn subfan_signs() {
        let fan = f1_fan();
        let f1 = pl(&fan, &[1, 1, 1, 1, 1]);
        assert_eq!(chi_c_subfan(&f1, &v(&[0, 0])), Int::from(1));
        assert_eq!(chi_c_subfan(&f1, &v(&[1, 1])), Int::from(0));
        assert_eq!(chi_c_subfan(&PLFunction::zero(fan), &v(&[0, 0])), Int::from(1));
    }

    #[test]
    fn alternating_sums() {
        let fan = f1_fan();
        let f1 = pl(&fan, &[1, 1, 1, 1, 1]);
        assert_eq!(chi_via_alternating_sum(&f1, DEFAULT_MAX_SHELLS).unwrap(), Int::from(8));
        assert_eq!(chi_via_alternating_sum(&f1.neg(), DEFAULT_MAX_SHELLS).unwrap(), Int::from(1));
        assert_eq!(chi_via_alternating_sum(&PLFunction::zero(fan), DEFAULT_MAX_SHELLS).unwrap(), Int::from(1));
    }

    #[test]
    fn not_convex_rejected() {
        let fan = f1_fan();
        assert!(matches!(polytope_from_pl(&pl(&fan, &[-1, -1, -1, -1, -1])), Err(PolytopeError::NotConvex(_))));
    }
}
