//! Exact feasibility for `{x >= 0 : A x = b}` over the rationals.
//!
//! Phase-I simplex on a dense tableau with Bland's anticycling rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Returns a nonnegative solution of `A x = b`, or `None` if there is none.
pub fn find_nonnegative_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![BigRational::zero(); n]);
    }
    // Columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // Objective row: minimize the sum of artificials, expressed in reduced form.
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // Phase-I objective is bounded below by zero, so a pivot row always exists.
        let r = leave.expect("phase-I simplex is bounded");
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let factor = row[c].clone();
        for (x, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &factor * p;
            }
        }
    }
}
