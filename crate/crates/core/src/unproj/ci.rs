use crate::error::{Error, Result};
use crate::linalg::{determinant, wedge, PolyMatrix};
use crate::ring::{same_context, Ctx, Ideal, Polynomial};

use super::{assemble, check_context, identity_failure, Intermediate, UnprojectionInput, UnprojectionResult};

/// `I = (v_1..v_r)` inside `J = (w_1..w_{r+1})` with `v = Q w`.
#[derive(Debug, Clone)]
pub struct CiData {
    ctx: Ctx,
    v: Vec<Polynomial>,
    w: Vec<Polynomial>,
    q: PolyMatrix,
}

impl CiData {
    /// Takes `v = Q w`.
    pub fn from_q(q: PolyMatrix, w: Vec<Polynomial>) -> Result<Self> {
        let v = Self::product(&q, &w)?;
        Self::new(v, w, q)
    }

    /// Validates `v = Q w` exactly.
    pub fn new(v: Vec<Polynomial>, w: Vec<Polynomial>, q: PolyMatrix) -> Result<Self> {
        let ctx = q.context().clone();
        check_context(&ctx, &v)?;
        check_context(&ctx, &w)?;
        let r = q.rows();
        if r == 0 || q.cols() != r + 1 || v.len() != r || w.len() != r + 1 {
            return Err(Error::Shape(format!(
                "need Q of shape r x (r+1), |v| = r, |w| = r+1; got Q {}x{}, |v| = {}, |w| = {}",
                q.rows(),
                q.cols(),
                v.len(),
                w.len()
            )));
        }
        let qw = Self::product(&q, &w)?;
        for (i, (a, b)) in v.iter().zip(&qw).enumerate() {
            if a != b {
                return Err(Error::InvalidInput(format!(
                    "v_{} = {a} but (Q w)_{} = {b}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(CiData { ctx, v, w, q })
    }

    fn product(q: &PolyMatrix, w: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let col = PolyMatrix::column_vector(q.context(), w.to_vec())?;
        Ok(q.try_mul(&col)?.column(0))
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn v(&self) -> &[Polynomial] {
        &self.v
    }

    pub fn w(&self) -> &[Polynomial] {
        &self.w
    }

    pub fn q(&self) -> &PolyMatrix {
        &self.q
    }

    pub fn r(&self) -> usize {
        self.v.len()
    }
}

/// Explicit witness that `(wedge Q)_i w_j - (wedge Q)_j w_i` lies in
/// `(v_1..v_r)`, `v = Q w`:
///
/// `(wedge Q)_i w_j - (wedge Q)_j w_i = sign * sum_m coeffs_m v_m`
///
/// with `coeffs_m = (-1)^(m+1) det(Q minus row m, columns i and j)` and
/// `sign = (-1)^(i+j+1)`, indices 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CramerCertificate {
    /// 1-based, `i < j`.
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<Polynomial>,
    pub sign: i8,
}

/// Builds the certificate for the pair `(i, j)` (1-based, `i < j`) and
/// checks the identity symbolically.
pub fn cramer_certificate(
    q: &PolyMatrix,
    w: &[Polynomial],
    i: usize,
    j: usize,
) -> Result<CramerCertificate> {
    let r = q.rows();
    let ctx = q.context();
    if q.cols() != r + 1 || w.len() != r + 1 {
        return Err(Error::Shape(format!(
            "need Q of shape r x (r+1) and |w| = r+1; got Q {}x{}, |w| = {}",
            q.rows(),
            q.cols(),
            w.len()
        )));
    }
    if !(1 <= i && i < j && j <= r + 1) {
        return Err(Error::InvalidInput(format!(
            "pair ({i}, {j}) must satisfy 1 <= i < j <= {}",
            r + 1
        )));
    }
    if w.iter().any(|p| !same_context(p.context(), ctx)) {
        return Err(Error::ContextMismatch);
    }
    let h = wedge(q)?;
    let v = CiData::product(q, w)?;
    let keep_cols: Vec<usize> = (0..=r).filter(|&c| c != i - 1 && c != j - 1).collect();
    let mut coeffs = Vec::with_capacity(r);
    for m in 0..r {
        let c = if r == 1 {
            Polynomial::one(ctx)
        } else {
            let keep_rows: Vec<usize> = (0..r).filter(|&k| k != m).collect();
            determinant(&q.submatrix(&keep_rows, &keep_cols))?
        };
        coeffs.push(if m % 2 == 0 { c } else { -c });
    }
    let sign: i8 = if (i + j + 1).is_multiple_of(2) { 1 } else { -1 };
    let lhs = &(&h[i - 1] * &w[j - 1]) - &(&h[j - 1] * &w[i - 1]);
    let mut rhs = Polynomial::zero(ctx);
    for (c, vm) in coeffs.iter().zip(&v) {
        rhs = &rhs + &(c * vm);
    }
    if sign < 0 {
        rhs = -rhs;
    }
    if lhs != rhs {
        return Err(identity_failure(format!(
            "Cramer identity fails for ({i}, {j}): difference {}",
            &lhs - &rhs
        )));
    }
    Ok(CramerCertificate { i, j, coeffs, sign })
}

/// `g = wedge(Q)`; the ideal is `(v_1..v_r, T*w_1 - g_1, ..., T*w_{r+1} - g_{r+1})`.
pub fn unproject_ci(d: &CiData, tname: &str) -> Result<UnprojectionResult> {
    let g = wedge(&d.q)?;
    let n = d.w.len();
    let mut certs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            certs.push(cramer_certificate(&d.q, &d.w, i, j)?);
        }
    }
    let ideal = assemble(&d.ctx, &d.v, &d.w, &g, tname)?;
    let mut work = vec![
        ("Q".to_string(), Intermediate::Matrix(d.q.clone())),
        ("v".to_string(), Intermediate::List(d.v.clone())),
        ("w".to_string(), Intermediate::List(d.w.clone())),
    ];
    for c in &certs {
        work.push((
            format!("cramer({},{}) sign {:+}", c.i, c.j, c.sign),
            Intermediate::List(c.coeffs.clone()),
        ));
    }
    work.push(("g".to_string(), Intermediate::List(g.clone())));
    Ok(UnprojectionResult {
        input: UnprojectionInput::Ci(d.clone()),
        unproj_var: tname.to_string(),
        base: Ideal::new(&d.ctx, d.v.clone())?,
        g,
        ideal,
        work,
    })
}
