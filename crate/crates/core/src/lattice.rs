//! Exact integer linear algebra over `Z^n`.
//!
//! Everything here works with arbitrary-precision integers. The lattice `N`
//! and its dual `M` share the same representation; a dual vector acts on a
//! lattice vector through [`LatticeVector::dot`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("vectors are linearly dependent over the rationals (rank {rank} < {count})")]
    Dependent { rank: usize, count: usize },
    #[error("vectors do not extend to a lattice basis; Smith diagonal {diagonal:?}")]
    NotUnimodular { diagonal: Vec<Int> },
    #[error("vector of length {found} in ambient dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// An element of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector(pub Vec<Int>);

impl LatticeVector {
    pub fn zeros(n: usize) -> Self {
        LatticeVector(vec![Int::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Int::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> Int {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn concat(&self, other: &LatticeVector) -> LatticeVector {
        let mut coords = self.0.clone();
        coords.extend(other.0.iter().cloned());
        LatticeVector(coords)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Dense row-major integer matrix. Zero rows or columns are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[LatticeVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols, "ragged matrix rows");
            for (j, c) in r.0.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_cols(n: usize, cols: &[LatticeVector]) -> Self {
        Self::from_rows(n, cols).transpose()
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<LatticeVector> = rows.iter().map(|r| LatticeVector::from_i64s(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> LatticeVector {
        LatticeVector(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|r| self[(r, c)].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim());
        LatticeVector((0..self.rows).map(|r| self.row(r).dot(v)).collect())
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * &self[(source, c)];
            self[(target, c)] -= delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    /// Determinant via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows).filter(|&r| !h.row(r).is_zero()).count()
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        // U·self = HNF(self) = I for a unimodular square matrix.
        let (h, u) = hermite_normal_form(self);
        debug_assert_eq!(h, IntMatrix::identity(self.rows));
        Some(u)
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U·mat = H`.
///
/// Columns are scanned left to right; within a column the pivot is the entry
/// of smallest absolute value (first row on ties). Pivots end up positive and
/// the entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form(mat: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = mat.rows;
    let mut h = mat.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    for c in 0..mat.cols {
        if r == m {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = pivot else { break };
            found = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut cleared = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Pivot positions `(row, col)` of a matrix already in row Hermite normal form.
pub fn hnf_pivots(h: &IntMatrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..h.rows {
        if let Some(c) = (0..h.cols).find(|&c| !h[(r, c)].is_zero()) {
            out.push((r, c));
        }
    }
    out
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_diagonal(mat: &IntMatrix) -> Vec<Int> {
    let mut a = mat.clone();
    // Alternating row and column Hermite reductions converge to a diagonal matrix.
    loop {
        let (h, _) = hermite_normal_form(&a);
        let (ht, _) = hermite_normal_form(&h.transpose());
        a = ht.transpose();
        let diagonal = (0..a.rows).all(|r| (0..a.cols).all(|c| r == c || a[(r, c)].is_zero()));
        if diagonal {
            break;
        }
    }
    let mut diag: Vec<Int> =
        (0..a.rows.min(a.cols)).map(|i| a[(i, i)].abs()).filter(|d| !d.is_zero()).collect();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn check_dims(vectors: &[LatticeVector]) -> Result<usize, LatticeError> {
    let n = vectors.first().map_or(0, LatticeVector::dim);
    for v in vectors {
        if v.dim() != n {
            return Err(LatticeError::DimensionMismatch { expected: n, found: v.dim() });
        }
    }
    Ok(n)
}

/// Whether the vectors extend to a `Z`-basis of the ambient lattice.
///
/// Dependent or zero input is reported as an error, never as `false`.
pub fn is_unimodular_set(vectors: &[LatticeVector]) -> Result<bool, LatticeError> {
    let n = check_dims(vectors)?;
    if vectors.iter().any(LatticeVector::is_zero) {
        return Err(LatticeError::ZeroVector);
    }
    if vectors.is_empty() {
        return Ok(true);
    }
    let a = IntMatrix::from_cols(n, vectors);
    let diag = smith_diagonal(&a);
    if diag.len() < vectors.len() {
        return Err(LatticeError::Dependent { rank: diag.len(), count: vectors.len() });
    }
    Ok(diag.iter().all(One::is_one))
}

/// Same as [`is_unimodular_set`] but with an explicit ambient dimension, so
/// an empty set is meaningful.
fn unimodular_set_in(n: usize, vectors: &[LatticeVector]) -> Result<(), LatticeError> {
    for v in vectors {
        if v.dim() != n {
            return Err(LatticeError::DimensionMismatch { expected: n, found: v.dim() });
        }
    }
    if vectors.is_empty() {
        return Ok(());
    }
    if vectors.iter().any(LatticeVector::is_zero) {
        return Err(LatticeError::ZeroVector);
    }
    let diag = smith_diagonal(&IntMatrix::from_cols(n, vectors));
    if diag.len() < vectors.len() {
        return Err(LatticeError::Dependent { rank: diag.len(), count: vectors.len() });
    }
    if diag.iter().all(One::is_one) {
        Ok(())
    } else {
        Err(LatticeError::NotUnimodular { diagonal: diag })
    }
}

/// A lattice basis whose first columns are prescribed vectors, with its dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCompletion {
    /// `B ∈ GL_n(Z)`; the first `k` columns are the input vectors.
    pub basis: IntMatrix,
    /// `B⁻¹`; row `i` is the dual functional of column `i` of `B`.
    pub dual: IntMatrix,
}

impl BasisCompletion {
    pub fn dual_row(&self, i: usize) -> LatticeVector {
        self.dual.row(i)
    }

    /// The linear functional taking `values[i]` on input vector `i` and zero
    /// on the completing columns.
    pub fn functional_with_values(&self, values: &[Int]) -> LatticeVector {
        let n = self.dual.cols();
        let mut m = LatticeVector::zeros(n);
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for c in 0..n {
                m.0[c] += v * &self.dual[(i, c)];
            }
        }
        m
    }
}

/// Extends a unimodular set to a basis of `Z^n` deterministically.
///
/// With `U·A = [I; 0]` the row Hermite form of the column matrix `A`, the
/// completion is `B = U⁻¹` and the dual is `U`.
pub fn complete_to_unimodular_basis(
    n: usize,
    vectors: &[LatticeVector],
) -> Result<BasisCompletion, LatticeError> {
    unimodular_set_in(n, vectors)?;
    let a = IntMatrix::from_cols(n, vectors);
    let (h, u) = hermite_normal_form(&a);
    debug_assert!({
        let mut expected = IntMatrix::zeros(n, vectors.len());
        for i in 0..vectors.len() {
            expected[(i, i)] = Int::one();
        }
        h == expected
    });
    let basis = u.unimodular_inverse().expect("transform of a Hermite reduction is unimodular");
    Ok(BasisCompletion { basis, dual: u })
}

/// `(n-k) x n` matrix whose integer kernel is exactly `Span_Z(rays)`; it maps
/// `Z^n` onto `Z^{n-k}`.
pub fn quotient_projection(n: usize, rays: &[LatticeVector]) -> Result<IntMatrix, LatticeError> {
    let completion = complete_to_unimodular_basis(n, rays)?;
    Ok(completion.dual.row_range(rays.len(), n))
}

pub fn primitive_vector(v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let g = v.content();
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

pub fn to_rational(v: &Int) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Solves `A x = b` over the rationals; returns one solution (free variables
/// set to zero) or `None` when the system is inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}

/// Expresses `target` as a rational combination of `generators`, if possible.
pub fn rational_coordinates(
    generators: &[LatticeVector],
    target: &LatticeVector,
) -> Option<Vec<BigRational>> {
    let n = target.dim();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| generators.iter().map(|g| to_rational(&g.0[r])).collect())
        .collect();
    let b: Vec<BigRational> = target.0.iter().map(to_rational).collect();
    solve_rational(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn hnf_identity() {
        let id = IntMatrix::identity(2);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_manual_reduction() {
        let a = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 2]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]));
        assert_eq!(u.mul(&a), h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_of_unimodular_rows_is_identity() {
        let a = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u.mul(&a), h);
    }

    #[test]
    fn hnf_rank_deficient() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 5]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a), h);
        assert!(u.is_unimodular());
        assert_eq!(a.rank(), 2);
        assert!(h.row(2).is_zero());
    }

    #[test]
    fn smith_diagonal_examples() {
        let a = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        assert_eq!(smith_diagonal(&a), vec![Int::from(1), Int::from(2)]);
        let b = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_diagonal(&b), vec![Int::from(1), Int::from(6)]);
        let c = IntMatrix::from_i64_rows(&[&[4, 6]]);
        assert_eq!(smith_diagonal(&c), vec![Int::from(2)]);
    }

    #[test]
    fn unimodular_sets() {
        assert_eq!(is_unimodular_set(&[v(&[1, 0]), v(&[0, 1])]), Ok(true));
        assert_eq!(is_unimodular_set(&[v(&[1, 0]), v(&[1, 2])]), Ok(false));
        assert_eq!(is_unimodular_set(&[v(&[1, 1])]), Ok(true));
        assert!(matches!(
            is_unimodular_set(&[v(&[1, 1]), v(&[2, 2])]),
            Err(LatticeError::Dependent { .. })
        ));
        assert_eq!(is_unimodular_set(&[v(&[0, 0])]), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn basis_completion() {
        let std = complete_to_unimodular_basis(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(std.basis, IntMatrix::identity(2));
        assert_eq!(std.dual, IntMatrix::identity(2));

        let diag = complete_to_unimodular_basis(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(diag.basis.col(0), v(&[1, 1]));
        assert_eq!(diag.basis.col(1), v(&[0, 1]));
        assert_eq!(diag.dual.row(0), v(&[1, 0]));
        assert_eq!(diag.dual.row(1), v(&[-1, 1]));
        assert_eq!(diag.dual.mul(&diag.basis), IntMatrix::identity(2));

        let err = complete_to_unimodular_basis(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap_err();
        assert_eq!(err, LatticeError::NotUnimodular { diagonal: vec![Int::from(1), Int::from(2)] });
    }

    #[test]
    fn projections() {
        let p = quotient_projection(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(p, IntMatrix::from_i64_rows(&[&[-1, 1]]));
        let full = quotient_projection(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!((full.rows(), full.cols()), (0, 2));
        assert_eq!(quotient_projection(3, &[]).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive_vector(&v(&[2, 2])).unwrap(), v(&[1, 1]));
        assert_eq!(primitive_vector(&v(&[3, -6])).unwrap(), v(&[1, -2]));
        assert_eq!(primitive_vector(&v(&[0, 5])).unwrap(), v(&[0, 1]));
        assert_eq!(primitive_vector(&v(&[0, 0])), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 1, 0], &[4, 7, 1]]);
        assert_eq!(a.determinant(), Int::from(1));
        let inv = a.unimodular_inverse().unwrap();
        assert_eq!(inv.mul(&a), IntMatrix::identity(3));
        let b = IntMatrix::from_i64_rows(&[&[0, 2], &[3, 0]]);
        assert_eq!(b.determinant(), Int::from(-6));
    }

    #[test]
    fn rational_solver() {
        let gens = [v(&[1, 0]), v(&[1, 2])];
        let x = rational_coordinates(&gens, &v(&[1, 1])).unwrap();
        assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(x[1], BigRational::new(1.into(), 2.into()));
        assert!(rational_coordinates(&[v(&[1, 1])], &v(&[1, 0])).is_none());
    }
}
