//! Koszul and Buchsbaum–Eisenbud complexes and chain-map verification.
//!
//! A complex is stored as its differentials `d_1, ..., d_n`, where `d_i` is
//! the matrix of the map from step `i` to step `i - 1` acting on column
//! vectors, so consecutive differentials compose as `d_i * d_(i+1)`.
//!
//! Exterior-power bases are ordered colexicographically (`e12, e13, e23,
//! e14, ...`), which reproduces the standard displayed matrices of the
//! four-variable Koszul complex.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{determinant, signed_pfaffian_row, PolyMatrix, SkewMatrix};
use crate::ring::{same_context, Ctx, Polynomial};

/// Longest Koszul complex built by [`koszul_complex`].
pub const MAX_KOSZUL_LENGTH: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ctx: Ctx,
    diffs: Vec<PolyMatrix>,
}

impl ChainComplex {
    /// Validates adjacent shapes and `d_i * d_(i+1) = 0`.
    pub fn new(ctx: &Ctx, diffs: Vec<PolyMatrix>) -> Result<Self> {
        if diffs.is_empty() {
            return Err(Error::Shape("a complex needs at least one differential".into()));
        }
        if diffs.iter().any(|d| !same_context(d.context(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        for (i, pair) in diffs.windows(2).enumerate() {
            let (lo, hi) = (&pair[0], &pair[1]);
            if lo.cols() != hi.rows() {
                return Err(Error::Shape(format!(
                    "d_{} is {}x{} but d_{} is {}x{}",
                    i + 1,
                    lo.rows(),
                    lo.cols(),
                    i + 2,
                    hi.rows(),
                    hi.cols()
                )));
            }
            if !lo.try_mul(hi)?.is_zero() {
                return Err(Error::IdentityFailure(format!(
                    "d_{} * d_{} is not zero",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(ChainComplex {
            ctx: ctx.clone(),
            diffs,
        })
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    /// Number of differentials.
    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Differential `d_i`, 1-based.
    pub fn diff(&self, i: usize) -> &PolyMatrix {
        &self.diffs[i - 1]
    }

    pub fn diffs(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// Rank of the free module at step `i`.
    pub fn rank(&self, i: usize) -> usize {
        if i == 0 {
            self.diffs[0].rows()
        } else {
            self.diffs[i - 1].cols()
        }
    }

    pub fn identity_map(&self) -> Vec<PolyMatrix> {
        (0..=self.len())
            .map(|i| PolyMatrix::identity(&self.ctx, self.rank(i)))
            .collect()
    }
}

/// All `n`-subsets of `0..m`, colexicographically ordered.
pub fn colex_subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, n, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Koszul complex on `w` (length 1 to 4):
/// `d(e_S) = sum_p (-1)^p w_(s_p) e_(S - s_p)` over the sorted elements of
/// `S`.
pub fn koszul_complex(w: &[Polynomial]) -> Result<ChainComplex> {
    let n = w.len();
    if n == 0 || n > MAX_KOSZUL_LENGTH {
        return Err(Error::Shape(format!(
            "Koszul complex supports 1 to {MAX_KOSZUL_LENGTH} elements, got {n}"
        )));
    }
    let ctx = w[0].context().clone();
    if w.iter().any(|x| !same_context(x.context(), &ctx)) {
        return Err(Error::ContextMismatch);
    }
    let mut diffs = Vec::with_capacity(n);
    for k in 1..=n {
        let targets = colex_subsets(n, k - 1);
        let sources = colex_subsets(n, k);
        let mut d = PolyMatrix::zeros(&ctx, targets.len(), sources.len());
        for (col, s) in sources.iter().enumerate() {
            for (p, &elem) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != elem).collect();
                let row = targets.iter().position(|t| *t == rest).unwrap();
                let e = if p % 2 == 0 { w[elem].clone() } else { -&w[elem] };
                d.set(row, col, e);
            }
        }
        diffs.push(d);
    }
    ChainComplex::new(&ctx, diffs)
}

/// Buchsbaum–Eisenbud complex `0 -> S -> S^k -> S^k -> S` of an odd skew
/// matrix: `d_1` is the row with entries `(-1)^(i+1) Pf(A_i)`, `d_2 = A`,
/// `d_3` the transpose of `d_1`.
pub fn be_complex(a: &SkewMatrix) -> Result<ChainComplex> {
    let ctx = a.context().clone();
    let c1 = PolyMatrix::row_vector(&ctx, signed_pfaffian_row(a)?)?;
    let c3 = c1.transpose();
    ChainComplex::new(&ctx, vec![c1, a.matrix().clone(), c3])
}

/// Outcome for one square of a chain-map diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    /// Square `n` compares `target.d_n * D_n` with `D_(n-1) * source.d_n`.
    /// Index 0 is the augmentation square, which requires `D_0 = 1`.
    pub index: usize,
    /// `target.d_n * D_n - D_(n-1) * source.d_n` (or `D_0 - 1`).
    pub difference: Option<PolyMatrix>,
    pub shape_error: Option<String>,
}

impl SquareReport {
    pub fn commutes(&self) -> bool {
        self.shape_error.is_none() && self.difference.as_ref().is_some_and(PolyMatrix::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMapReport {
    /// Squares in diagram order, left to right: `n, n-1, ..., 1`, then the
    /// augmentation square 0.
    pub squares: Vec<SquareReport>,
}

impl ChainMapReport {
    pub fn pass(&self) -> bool {
        self.squares.iter().all(SquareReport::commutes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SquareReport> {
        self.squares.iter().filter(|s| !s.commutes())
    }
}

impl fmt::Display for ChainMapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sq in &self.squares {
            let label = if sq.index == 0 {
                "square 0 (D_0 = 1)".to_string()
            } else {
                format!("square {}", sq.index)
            };
            if sq.commutes() {
                writeln!(f, "{label}: ok")?;
            } else if let Some(e) = &sq.shape_error {
                writeln!(f, "{label}: shape error: {e}")?;
            } else if let Some(d) = &sq.difference {
                writeln!(f, "{label}: FAIL, difference:")?;
                writeln!(f, "{d}")?;
            }
        }
        write!(f, "overall: {}", if self.pass() { "pass" } else { "fail" })
    }
}

fn square(
    index: usize,
    target_diff: &PolyMatrix,
    upper: &PolyMatrix,
    lower: &PolyMatrix,
    source_diff: &PolyMatrix,
) -> SquareReport {
    let lhs = target_diff.try_mul(upper);
    let rhs = lower.try_mul(source_diff);
    let outcome = match (lhs, rhs) {
        (Ok(l), Ok(r)) => l.try_sub(&r),
        (Err(e), _) | (_, Err(e)) => Err(e),
    };
    match outcome {
        Ok(d) => SquareReport {
            index,
            difference: Some(d),
            shape_error: None,
        },
        Err(e) => SquareReport {
            index,
            difference: None,
            shape_error: Some(e.to_string()),
        },
    }
}

/// Checks every square of the diagram `D: source -> target`, where
/// `verticals = [D_0, D_1, ..., D_n]` and `n` is the length of `source`.
///
/// When both complexes end in a rank-one step, the augmentation square
/// requiring `D_0 = 1` is checked as well, so that the map lifts the
/// natural projection.
pub fn verify_chain_map(
    source: &ChainComplex,
    target: &ChainComplex,
    verticals: &[PolyMatrix],
) -> Result<ChainMapReport> {
    if !same_context(source.context(), target.context()) {
        return Err(Error::ContextMismatch);
    }
    let n = source.len();
    if verticals.len() != n + 1 {
        return Err(Error::Shape(format!(
            "expected {} vertical maps D_0..D_{n}, got {}",
            n + 1,
            verticals.len()
        )));
    }
    let mut squares = Vec::with_capacity(n + 1);
    for i in (1..=n).rev() {
        if i > target.len() {
            squares.push(SquareReport {
                index: i,
                difference: None,
                shape_error: Some(format!("target complex has no d_{i}")),
            });
            continue;
        }
        squares.push(square(
            i,
            target.diff(i),
            &verticals[i],
            &verticals[i - 1],
            source.diff(i),
        ));
    }
    if source.rank(0) == 1 && target.rank(0) == 1 {
        let ctx = source.context();
        let d0 = &verticals[0];
        squares.push(if d0.shape() == (1, 1) {
            SquareReport {
                index: 0,
                difference: Some(d0.try_sub(&PolyMatrix::identity(ctx, 1))?),
                shape_error: None,
            }
        } else {
            SquareReport {
                index: 0,
                difference: None,
                shape_error: Some(format!("D_0 must be 1x1, got {}x{}", d0.rows(), d0.cols())),
            }
        });
    }
    Ok(ChainMapReport { squares })
}

/// Vertical family of matrices between two complexes, validated to
/// commute.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    verticals: Vec<PolyMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        verticals: Vec<PolyMatrix>,
    ) -> Result<Self> {
        let report = verify_chain_map(&source, &target, &verticals)?;
        if !report.pass() {
            return Err(Error::IdentityFailure(format!(
                "chain map does not commute:\n{report}"
            )));
        }
        Ok(ChainMap {
            source,
            target,
            verticals,
        })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// `D_n` for `n = 0..=source.len()`.
    pub fn vertical(&self, n: usize) -> &PolyMatrix {
        &self.verticals[n]
    }

    pub fn verticals(&self) -> &[PolyMatrix] {
        &self.verticals
    }
}

/// `n`-th exterior power of a matrix: rows indexed by the `n`-subsets of
/// its rows, columns by the `n`-subsets of its columns, entries the
/// corresponding minors.
pub fn exterior_power(phi: &PolyMatrix, n: usize) -> Result<PolyMatrix> {
    let ctx = phi.context();
    if n == 0 {
        return Ok(PolyMatrix::identity(ctx, 1));
    }
    let rows = colex_subsets(phi.rows(), n);
    let cols = colex_subsets(phi.cols(), n);
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::Shape(format!(
            "exterior power {n} of a {}x{} matrix is zero-dimensional",
            phi.rows(),
            phi.cols()
        )));
    }
    let mut out = PolyMatrix::zeros(ctx, rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            out.set(i, j, determinant(&phi.submatrix(r, c))?);
        }
    }
    Ok(out)
}

/// Chain map `Koszul(v) -> Koszul(w)` induced by `Q^t` when `v = Q w`, with
/// verticals `D_n = wedge^n Q^t`.
pub fn koszul_chain_map(q: &PolyMatrix, v: &[Polynomial], w: &[Polynomial]) -> Result<ChainMap> {
    let r = q.rows();
    if !(1..=3).contains(&r) || q.cols() != r + 1 || v.len() != r || w.len() != r + 1 {
        return Err(Error::Shape(format!(
            "need Q of shape r x (r+1) with r in 1..=3, |v| = r, |w| = r+1; got Q {}x{}, |v| = {}, |w| = {}",
            q.rows(),
            q.cols(),
            v.len(),
            w.len()
        )));
    }
    let ctx = q.context();
    let wcol = PolyMatrix::column_vector(ctx, w.to_vec())?;
    let qw = q.try_mul(&wcol)?;
    for (i, vi) in v.iter().enumerate() {
        if qw.get(i, 0) != vi {
            return Err(Error::IdentityFailure(format!(
                "v_{} = {} but (Q w)_{} = {}",
                i + 1,
                vi,
                i + 1,
                qw.get(i, 0)
            )));
        }
    }
    let source = koszul_complex(v)?;
    let target = koszul_complex(w)?;
    let qt = q.transpose();
    let verticals = (0..=r)
        .map(|n| exterior_power(&qt, n))
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(source, target, verticals)
}
