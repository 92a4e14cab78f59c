use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::Polynomial;

use super::matrix::PolyMatrix;

/// Largest size handled by cofactor expansion in [`determinant`].
pub const COFACTOR_MAX: usize = 4;

/// Exact determinant: cofactor expansion up to 4x4, fraction-free
/// Bareiss elimination above.
pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() <= COFACTOR_MAX {
        determinant_cofactor(m)
    } else {
        determinant_bareiss(m)
    }
}

/// Laplace expansion along the first row.
pub fn determinant_cofactor(m: &PolyMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::Shape("non-square matrix".into()));
    }
    let cols: Vec<usize> = (0..m.cols()).collect();
    cofactor(m, 0, &cols)
}

fn cofactor(m: &PolyMatrix, row: usize, cols: &[usize]) -> Result<Polynomial> {
    let ctx = m.context();
    match cols.len() {
        0 => Ok(Polynomial::one(ctx)),
        1 => Ok(m.get(row, cols[0]).clone()),
        2 => {
            let a = m.get(row, cols[0]).try_mul(m.get(row + 1, cols[1]))?;
            let b = m.get(row, cols[1]).try_mul(m.get(row + 1, cols[0]))?;
            Ok(&a - &b)
        }
        _ => {
            let mut acc = Polynomial::zero(ctx);
            let mut rest = Vec::with_capacity(cols.len() - 1);
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(row, c);
                if e.is_zero() {
                    continue;
                }
                rest.clear();
                rest.extend(cols.iter().copied().filter(|&x| x != c));
                let minor = cofactor(m, row + 1, &rest)?;
                let t = e.try_mul(&minor)?;
                acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            Ok(acc)
        }
    }
}

/// Laplace expansion with every minor of the bottom rows computed once,
/// keyed by its column set. Division-free, `2^n` minors; much faster than
/// Bareiss on small dense matrices of multivariate polynomials.
pub fn determinant_minors(m: &PolyMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::Shape("non-square matrix".into()));
    }
    let n = m.rows();
    if n > 30 {
        return Err(Error::Shape(format!("minor expansion limited to 30 rows, got {n}")));
    }
    let ctx = m.context();
    let mut level: HashMap<u32, Polynomial> = HashMap::from([(0, Polynomial::one(ctx))]);
    for row in (0..n).rev() {
        let mut next: HashMap<u32, Polynomial> = HashMap::new();
        for (&cols, minor) in &level {
            for j in 0..n {
                let bit = 1u32 << j;
                if cols & bit != 0 || m.get(row, j).is_zero() {
                    continue;
                }
                // sign from the position of j among the columns of the larger minor
                let before = (cols & (bit - 1)).count_ones();
                let t = m.get(row, j).try_mul(minor)?;
                let entry = next.entry(cols | bit).or_insert_with(|| Polynomial::zero(ctx));
                *entry = if before.is_multiple_of(2) { &*entry + &t } else { &*entry - &t };
            }
        }
        next.retain(|_, p| !p.is_zero());
        level = next;
    }
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(level.remove(&full).unwrap_or_else(|| Polynomial::zero(ctx)))
}

/// Bareiss fraction-free elimination; every division is exact.
pub fn determinant_bareiss(m: &PolyMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::Shape("non-square matrix".into()));
    }
    let n = m.rows();
    let ctx = m.context().clone();
    let mut a: Vec<Vec<Polynomial>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = Polynomial::one(&ctx);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(&ctx)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j].try_mul(&a[k][k])? - &a[i][k].try_mul(&a[k][j])?;
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Signed maximal minors of an `r x (r+1)` matrix: entry `i` (1-based) is
/// `(-1)^(i+1)` times the determinant with column `i` removed.
pub fn wedge(q: &PolyMatrix) -> Result<Vec<Polynomial>> {
    if q.cols() != q.rows() + 1 {
        return Err(Error::Shape(format!(
            "wedge needs an r x (r+1) matrix, got {}x{}",
            q.rows(),
            q.cols()
        )));
    }
    (0..q.cols())
        .map(|i| {
            let d = determinant(&q.without_col(i))?;
            Ok(if i % 2 == 0 { d } else { -d })
        })
        .collect()
}
