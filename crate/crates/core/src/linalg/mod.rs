//! Matrices of polynomials: determinants, signed maximal minors and
//! Pfaffians.

mod det;
mod matrix;
mod pfaffian;

pub use det::{determinant, determinant_bareiss, determinant_cofactor, determinant_minors, wedge, COFACTOR_MAX};
pub use matrix::{PolyMatrix, SkewMatrix};
pub use pfaffian::{pfaffian_even, pfaffians_odd};

/// `(P_1, -P_2, P_3, ...)`: the alternating-sign Pfaffian row of an odd
/// skew matrix, i.e. entry `i` is `(-1)^(i+1) Pf(A_i)`.
pub fn signed_pfaffian_row(a: &SkewMatrix) -> crate::Result<Vec<crate::Polynomial>> {
    Ok(pfaffians_odd(a)?
        .into_iter()
        .enumerate()
        .map(|(i, p)| if i % 2 == 0 { p } else { -p })
        .collect())
}
