use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{parse, same_context, Ctx, Polynomial, Substitution};

/// Dense row-major matrix of polynomials over one context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ctx: &Ctx, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_context(e.context(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(PolyMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ctx: &Ctx, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    /// Parses a matrix given as rows of expression strings.
    pub fn parse<S: AsRef<str>>(ctx: &Ctx, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|e| parse(ctx, e.as_ref())).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(ctx, rows)
    }

    pub fn row_vector(ctx: &Ctx, entries: Vec<Polynomial>) -> Result<Self> {
        let n = entries.len();
        Self::new(ctx, 1, n, entries)
    }

    pub fn column_vector(ctx: &Ctx, entries: Vec<Polynomial>) -> Result<Self> {
        let n = entries.len();
        Self::new(ctx, n, 1, entries)
    }

    pub fn zeros(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ctx);
        }
        m
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial) {
        assert!(same_context(value.context(), &self.ctx));
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            ctx: self.ctx.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix {
            ctx: self.ctx.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn without_row(&self, i: usize) -> PolyMatrix {
        let rows: Vec<_> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<_> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn without_col(&self, j: usize) -> PolyMatrix {
        let rows: Vec<_> = (0..self.rows).collect();
        let cols: Vec<_> = (0..self.cols).filter(|&c| c != j).collect();
        self.submatrix(&rows, &cols)
    }

    fn check_same(&self, other: &PolyMatrix) -> Result<()> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ctx);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &a.try_mul(b)?;
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    fn zip_with(
        &self,
        other: &PolyMatrix,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<PolyMatrix> {
        self.check_same(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|e| -e)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, subst: &Substitution) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.substitute(subst))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            ctx: subst.target().clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Canonical text rows, one `[a, b, c]` string per row.
    pub fn to_rows_text(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Square skew-symmetric matrix: zero diagonal, `a_ji = -a_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    base: PolyMatrix,
}

impl SkewMatrix {
    /// Builds the matrix from its strict upper triangle, given row by row:
    /// `a_12, a_13, ..., a_1k, a_23, ..., a_(k-1)k`.
    pub fn from_upper(ctx: &Ctx, size: usize, upper: Vec<Polynomial>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Shape("skew matrix must be nonempty".into()));
        }
        let need = size * (size - 1) / 2;
        if upper.len() != need {
            return Err(Error::Shape(format!(
                "{size}x{size} skew matrix needs {need} upper entries, got {}",
                upper.len()
            )));
        }
        let mut m = PolyMatrix::zeros(ctx, size, size);
        let mut it = upper.into_iter();
        for i in 0..size {
            for j in i + 1..size {
                let e = it.next().unwrap();
                if !same_context(e.context(), ctx) {
                    return Err(Error::ContextMismatch);
                }
                m.set(j, i, -&e);
                m.set(i, j, e);
            }
        }
        Ok(SkewMatrix { base: m })
    }

    /// Validates a full matrix and rejects non-skew input.
    pub fn from_matrix(m: PolyMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "skew matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let k = m.rows();
        for i in 0..k {
            if !m.get(i, i).is_zero() {
                return Err(Error::NotSkew { row: i + 1, col: i + 1 });
            }
            for j in i + 1..k {
                if !(m.get(i, j) + m.get(j, i)).is_zero() {
                    return Err(Error::NotSkew { row: j + 1, col: i + 1 });
                }
            }
        }
        Ok(SkewMatrix { base: m })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.base
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.base
    }

    pub fn size(&self) -> usize {
        self.base.rows()
    }

    pub fn context(&self) -> &Ctx {
        self.base.context()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        self.base.get(i, j)
    }

    /// Principal submatrix on the given (sorted) indices; remains skew.
    pub fn principal(&self, keep: &[usize]) -> SkewMatrix {
        SkewMatrix {
            base: self.base.submatrix(keep, keep),
        }
    }

    /// Principal submatrix with index `i` (0-based) deleted.
    pub fn delete(&self, i: usize) -> SkewMatrix {
        let keep: Vec<_> = (0..self.size()).filter(|&r| r != i).collect();
        self.principal(&keep)
    }

    pub fn substitute(&self, subst: &Substitution) -> Result<SkewMatrix> {
        Ok(SkewMatrix {
            base: self.base.substitute(subst)?,
        })
    }
}
