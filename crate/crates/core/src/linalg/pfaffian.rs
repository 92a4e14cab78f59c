use crate::error::{Error, Result};
use crate::ring::Polynomial;

use super::matrix::SkewMatrix;

/// Pfaffian of an even skew matrix by expansion along the first row:
/// `Pf(A) = sum_{j=2..k} (-1)^j a_1j Pf(A_1j)`.
pub fn pfaffian_even(a: &SkewMatrix) -> Result<Polynomial> {
    let k = a.size();
    if !k.is_multiple_of(2) {
        return Err(Error::Shape(format!(
            "Pfaffian of a single matrix needs even size, got {k}"
        )));
    }
    let idx: Vec<usize> = (0..k).collect();
    expand(a, &idx)
}

fn expand(a: &SkewMatrix, idx: &[usize]) -> Result<Polynomial> {
    let ctx = a.context();
    match idx.len() {
        0 => Ok(Polynomial::one(ctx)),
        2 => Ok(a.get(idx[0], idx[1]).clone()),
        _ => {
            let first = idx[0];
            let mut acc = Polynomial::zero(ctx);
            let mut rest = Vec::with_capacity(idx.len() - 2);
            // position p (0-based) of j in idx corresponds to j = p+1 (1-based)
            for p in 1..idx.len() {
                let e = a.get(first, idx[p]);
                if e.is_zero() {
                    continue;
                }
                rest.clear();
                rest.extend(
                    idx.iter()
                        .enumerate()
                        .filter(|&(q, _)| q != 0 && q != p)
                        .map(|(_, &i)| i),
                );
                let t = e.try_mul(&expand(a, &rest)?)?;
                acc = if p % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            Ok(acc)
        }
    }
}

/// Pfaffians of an odd skew matrix: entry `i` is `Pf(A_i)`, the Pfaffian
/// of the principal submatrix with row and column `i` deleted.
pub fn pfaffians_odd(a: &SkewMatrix) -> Result<Vec<Polynomial>> {
    let k = a.size();
    if k.is_multiple_of(2) || k < 3 {
        return Err(Error::Shape(format!(
            "submaximal Pfaffians need odd size >= 3, got {k}"
        )));
    }
    (0..k)
        .map(|i| {
            let idx: Vec<usize> = (0..k).filter(|&j| j != i).collect();
            expand(a, &idx)
        })
        .collect()
}
