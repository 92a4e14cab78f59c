use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{pfaffians_odd, wedge, PolyMatrix, SkewMatrix};
use crate::ring::{Ctx, Ideal, Polynomial, Substitution};

use super::{
    assemble, check_context, check_len, grevlex, identity_failure, names, specialization, vars,
    Intermediate, UnprojectionInput, UnprojectionResult,
};

/// Index `(i, j, k)` of a Tom coefficient `a_ij^k`, `2 <= i < j <= 5`,
/// `1 <= k <= 4`. Written `a24_1` in text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TomIndex {
    i: u8,
    j: u8,
    k: u8,
}

impl TomIndex {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        if !(2 <= i && i < j && j <= 5 && (1..=4).contains(&k)) {
            return Err(Error::InvalidInput(format!(
                "Tom coefficient a{i}{j}_{k} out of range (need 2 <= i < j <= 5, 1 <= k <= 4)"
            )));
        }
        Ok(TomIndex {
            i: i as u8,
            j: j as u8,
            k: k as u8,
        })
    }

    pub fn i(self) -> usize {
        self.i as usize
    }

    pub fn j(self) -> usize {
        self.j as usize
    }

    pub fn k(self) -> usize {
        self.k as usize
    }

    /// All 24 indices, ordered by `(i, j, k)`.
    pub fn all() -> impl Iterator<Item = TomIndex> {
        PAIRS.iter().flat_map(|&(i, j)| {
            (1..=4).map(move |k| TomIndex {
                i: i as u8,
                j: j as u8,
                k,
            })
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad Tom coefficient name {s:?} (expected e.g. a24_1)"));
        let rest = s.strip_prefix('a').ok_or_else(bad)?;
        let (ij, k) = rest.split_once('_').ok_or_else(bad)?;
        let ij = ij.as_bytes();
        if ij.len() != 2 || k.len() != 1 {
            return Err(bad());
        }
        let digit = |b: u8| (b as char).to_digit(10).map(|d| d as usize).ok_or_else(bad);
        TomIndex::new(digit(ij[0])?, digit(ij[1])?, digit(k.as_bytes()[0])?)
    }
}

impl fmt::Display for TomIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}{}_{}", self.i, self.j, self.k)
    }
}

const PAIRS: [(usize, usize); 6] = [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];

/// Input for a Tom unprojection: the first row `x`, the slots `z` and the
/// coefficients `a_ij^k` (absent ones are zero).
#[derive(Debug, Clone)]
pub struct TomData {
    ctx: Ctx,
    x: Vec<Polynomial>,
    z: Vec<Polynomial>,
    coeffs: BTreeMap<TomIndex, Polynomial>,
}

impl TomData {
    pub fn new(
        ctx: &Ctx,
        x: Vec<Polynomial>,
        z: Vec<Polynomial>,
        coeffs: impl IntoIterator<Item = (TomIndex, Polynomial)>,
    ) -> Result<Self> {
        check_len("Tom x", &x, 4)?;
        check_len("Tom z", &z, 4)?;
        check_context(ctx, &x)?;
        check_context(ctx, &z)?;
        let mut map = BTreeMap::new();
        for (idx, c) in coeffs {
            check_context(ctx, std::slice::from_ref(&c))?;
            if map.insert(idx, c).is_some() {
                return Err(Error::InvalidInput(format!("coefficient {idx} given twice")));
            }
        }
        Ok(TomData {
            ctx: ctx.clone(),
            x,
            z,
            coeffs: map,
        })
    }

    /// The generic integral Tom data: every coefficient, `x_i` and `z_k` is
    /// its own variable.
    pub fn generic() -> Result<Self> {
        let gt = generic_tom()?;
        let ctx = &gt.ctx;
        let coeffs = TomIndex::all()
            .map(|idx| Ok((idx, Polynomial::var(ctx, &idx.to_string())?)))
            .collect::<Result<Vec<_>>>()?;
        TomData::new(ctx, vars(ctx, &names("x", 4)), vars(ctx, &names("z", 4)), coeffs)
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn x(&self) -> &[Polynomial] {
        &self.x
    }

    pub fn z(&self) -> &[Polynomial] {
        &self.z
    }

    pub fn coeff(&self, idx: TomIndex) -> Polynomial {
        self.coeffs
            .get(&idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ctx))
    }

    /// Explicitly given coefficients only.
    pub fn coeffs(&self) -> &BTreeMap<TomIndex, Polynomial> {
        &self.coeffs
    }

    /// `a_ij = sum_k a_ij^k z_k`.
    pub fn entry(&self, i: usize, j: usize) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.ctx);
        for k in 1..=4 {
            let c = self.coeff(TomIndex::new(i, j, k)?);
            if !c.is_zero() {
                acc = &acc + &(&c * &self.z[k - 1]);
            }
        }
        Ok(acc)
    }

    /// The 5x5 skew matrix with first row `(x_1..x_4)` and entries `a_ij`.
    pub fn matrix(&self) -> Result<SkewMatrix> {
        let mut upper = self.x.clone();
        for (i, j) in PAIRS {
            upper.push(self.entry(i, j)?);
        }
        SkewMatrix::from_upper(&self.ctx, 5, upper)
    }

    fn to_generic(&self, generic: &Ctx) -> Result<Substitution> {
        let mut images: Vec<(String, Polynomial)> = Vec::new();
        for idx in TomIndex::all() {
            images.push((idx.to_string(), self.coeff(idx)));
        }
        for (n, p) in names("x", 4).into_iter().zip(&self.x) {
            images.push((n, p.clone()));
        }
        for (n, p) in names("z", 4).into_iter().zip(&self.z) {
            images.push((n, p.clone()));
        }
        specialization(generic, &self.ctx, images)
    }
}

/// Everything computed once in the generic integral Tom ring (24
/// coefficient symbols, `x1..x4`, `z1..z4`).
#[derive(Debug)]
pub struct GenericTom {
    ctx: Ctx,
    a: SkewMatrix,
    p: Vec<Polynomial>,
    q: PolyMatrix,
    h: Vec<Vec<Polynomial>>,
    g: Vec<Polynomial>,
}

impl GenericTom {
    fn build() -> Result<Self> {
        let mut all = TomIndex::all().map(|i| i.to_string()).collect::<Vec<_>>();
        let xs = names("x", 4);
        let zs = names("z", 4);
        all.extend(xs.iter().cloned());
        all.extend(zs.iter().cloned());
        let ctx = grevlex(&all);
        let x = vars(&ctx, &xs);
        let z = vars(&ctx, &zs);
        let coeffs = TomIndex::all()
            .map(|idx| Ok((idx, Polynomial::var(&ctx, &idx.to_string())?)))
            .collect::<Result<Vec<_>>>()?;
        let data = TomData::new(&ctx, x.clone(), z.clone(), coeffs)?;
        let a = data.matrix()?;
        let p = pfaffians_odd(&a)?;

        // x4 P4 = x1 P1 - x2 P2 + x3 P3
        let lhs = &x[3] * &p[4];
        let rhs = &(&(&x[0] * &p[1]) - &(&x[1] * &p[2])) + &(&x[2] * &p[3]);
        if lhs != rhs {
            return Err(identity_failure("x4*P4 = x1*P1 - x2*P2 + x3*P3 fails"));
        }

        let rows = p[1..]
            .iter()
            .map(|pi| pi.linear_coeffs_named(&zs))
            .collect::<Result<Vec<_>>>()?;
        let q = PolyMatrix::from_rows(&ctx, rows)?;
        let h = (0..4)
            .map(|i| wedge(&q.without_row(i)))
            .collect::<Result<Vec<_>>>()?;

        for i in 0..4 {
            for j in 0..4 {
                for c in 0..4 {
                    if &x[i] * &h[j][c] != &x[j] * &h[i][c] {
                        return Err(identity_failure(format!(
                            "x{}*H_{} = x{}*H_{} fails in entry {}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        let quotient = |j: usize| -> Result<Vec<Polynomial>> {
            h[j].iter().map(|e| e.exact_div(&x[j])).collect()
        };
        let g = quotient(3)?;
        for j in 0..3 {
            if quotient(j)? != g {
                return Err(identity_failure(format!("H_{}/x{} differs from H_4/x4", j + 1, j + 1)));
            }
        }
        Ok(GenericTom { ctx, a, p, q, h, g })
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn matrix(&self) -> &SkewMatrix {
        &self.a
    }

    /// `P_0..P_4`, with `P_i = Pf(A_{i+1})`.
    pub fn pfaffians(&self) -> &[Polynomial] {
        &self.p
    }

    /// `(P_1..P_4)^t = Q (z_1..z_4)^t`.
    pub fn q(&self) -> &PolyMatrix {
        &self.q
    }

    /// `H_i = wedge(Q without row i)`, `i = 1..4`.
    pub fn h(&self, i: usize) -> &[Polynomial] {
        &self.h[i - 1]
    }

    pub fn g(&self) -> &[Polynomial] {
        &self.g
    }
}

static GENERIC_TOM: OnceLock<Result<GenericTom>> = OnceLock::new();

/// The generic Tom computation, built and checked on first use.
pub fn generic_tom() -> Result<&'static GenericTom> {
    GENERIC_TOM
        .get_or_init(GenericTom::build)
        .as_ref()
        .map_err(Clone::clone)
}

/// `g = H_j / x_j` in the generic integral Tom ring.
pub fn tom_generic_g() -> Result<Vec<Polynomial>> {
    Ok(generic_tom()?.g.clone())
}

/// Ideal `(P_0..P_4, T*z_1 - g_1, ..., T*z_4 - g_4)`.
pub fn unproject_tom(d: &TomData, tname: &str) -> Result<UnprojectionResult> {
    let gt = generic_tom()?;
    // fail early on a name clash, before any substitution work
    d.ctx.extend(tname)?;
    let s = d.to_generic(&gt.ctx)?;
    let a = d.matrix()?;
    let p = pfaffians_odd(&a)?;
    let q = gt.q.substitute(&s)?;
    let h = gt
        .h
        .iter()
        .map(|hi| hi.iter().map(|e| e.substitute(&s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let g = gt.g.iter().map(|e| e.substitute(&s)).collect::<Result<Vec<_>>>()?;
    let ideal = assemble(&d.ctx, &p, &d.z, &g, tname)?;
    let mut work = vec![
        ("A".to_string(), Intermediate::Matrix(a.into_matrix())),
        ("P".to_string(), Intermediate::List(p.clone())),
        ("Q".to_string(), Intermediate::Matrix(q)),
    ];
    for (i, hi) in h.into_iter().enumerate() {
        work.push((format!("H{}", i + 1), Intermediate::List(hi)));
    }
    work.push(("g".to_string(), Intermediate::List(g.clone())));
    Ok(UnprojectionResult {
        input: UnprojectionInput::Tom(d.clone()),
        unproj_var: tname.to_string(),
        base: Ideal::new(&d.ctx, p)?,
        g,
        ideal,
        work,
    })
}
