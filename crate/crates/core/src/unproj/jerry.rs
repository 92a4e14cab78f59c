use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{determinant, pfaffians_odd, wedge, PolyMatrix, SkewMatrix};
use crate::ring::{Ctx, Ideal, Polynomial, Substitution};

use super::{
    assemble, check_context, check_len, grevlex, identity_failure, names, specialization, vars,
    Intermediate, UnprojectionInput, UnprojectionResult,
};

/// A Jerry coefficient: `a_i^k`, `b_i^k` (`1 <= i <= 3`) or `c^k`, with
/// `1 <= k <= 4`. Written `a2_3`, `b1_4`, `c_1` in text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JerryIndex {
    A(u8, u8),
    B(u8, u8),
    C(u8),
}

impl JerryIndex {
    pub fn a(i: usize, k: usize) -> Result<Self> {
        Self::check(i, k).map(|(i, k)| JerryIndex::A(i, k))
    }

    pub fn b(i: usize, k: usize) -> Result<Self> {
        Self::check(i, k).map(|(i, k)| JerryIndex::B(i, k))
    }

    pub fn c(k: usize) -> Result<Self> {
        Self::check(1, k).map(|(_, k)| JerryIndex::C(k))
    }

    fn check(i: usize, k: usize) -> Result<(u8, u8)> {
        if (1..=3).contains(&i) && (1..=4).contains(&k) {
            Ok((i as u8, k as u8))
        } else {
            Err(Error::InvalidInput(format!(
                "Jerry coefficient index ({i}, {k}) out of range (need 1 <= i <= 3, 1 <= k <= 4)"
            )))
        }
    }

    /// All 28 indices: `a`, then `b`, then `c`.
    pub fn all() -> impl Iterator<Item = JerryIndex> {
        let ab = |f: fn(u8, u8) -> JerryIndex| {
            (1..=3u8).flat_map(move |i| (1..=4u8).map(move |k| f(i, k)))
        };
        ab(JerryIndex::A)
            .chain(ab(JerryIndex::B))
            .chain((1..=4u8).map(JerryIndex::C))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidInput(format!(
                "bad Jerry coefficient name {s:?} (expected e.g. a1_2, b3_4 or c_1)"
            ))
        };
        let (head, k) = s.split_once('_').ok_or_else(bad)?;
        let k: usize = k.parse().map_err(|_| bad())?;
        let mut chars = head.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let idx = |r: &str| r.parse::<usize>().map_err(|_| bad());
        match letter {
            'a' => Self::a(idx(rest)?, k),
            'b' => Self::b(idx(rest)?, k),
            'c' if rest.is_empty() => Self::c(k),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for JerryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JerryIndex::A(i, k) => write!(f, "a{i}_{k}"),
            JerryIndex::B(i, k) => write!(f, "b{i}_{k}"),
            JerryIndex::C(k) => write!(f, "c_{k}"),
        }
    }
}

/// Input for a Jerry unprojection: `x_1..x_3`, the slots `z` and the
/// coefficients of `a_i, b_i, c` (absent ones are zero).
#[derive(Debug, Clone)]
pub struct JerryData {
    ctx: Ctx,
    x: Vec<Polynomial>,
    z: Vec<Polynomial>,
    coeffs: BTreeMap<JerryIndex, Polynomial>,
}

impl JerryData {
    pub fn new(
        ctx: &Ctx,
        x: Vec<Polynomial>,
        z: Vec<Polynomial>,
        coeffs: impl IntoIterator<Item = (JerryIndex, Polynomial)>,
    ) -> Result<Self> {
        check_len("Jerry x", &x, 3)?;
        check_len("Jerry z", &z, 4)?;
        check_context(ctx, &x)?;
        check_context(ctx, &z)?;
        let mut map = BTreeMap::new();
        for (idx, c) in coeffs {
            check_context(ctx, std::slice::from_ref(&c))?;
            if map.insert(idx, c).is_some() {
                return Err(Error::InvalidInput(format!("coefficient {idx} given twice")));
            }
        }
        Ok(JerryData {
            ctx: ctx.clone(),
            x,
            z,
            coeffs: map,
        })
    }

    pub fn generic() -> Result<Self> {
        let gj = generic_jerry()?;
        let ctx = &gj.ctx;
        let coeffs = JerryIndex::all()
            .map(|idx| Ok((idx, Polynomial::var(ctx, &idx.to_string())?)))
            .collect::<Result<Vec<_>>>()?;
        JerryData::new(ctx, vars(ctx, &names("x", 3)), vars(ctx, &names("z", 4)), coeffs)
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

    pub fn coeff(&self, idx: JerryIndex) -> Polynomial {
        self.coeffs
            .get(&idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ctx))
    }

    pub fn coeffs(&self) -> &BTreeMap<JerryIndex, Polynomial> {
        &self.coeffs
    }

    fn combine(&self, idx: impl Fn(usize) -> JerryIndex) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ctx);
        for k in 1..=4 {
            let c = self.coeff(idx(k));
            if !c.is_zero() {
                acc = &acc + &(&c * &self.z[k - 1]);
            }
        }
        acc
    }

    /// `a_i = sum_k a_i^k z_k`.
    pub fn a(&self, i: usize) -> Result<Polynomial> {
        JerryIndex::a(i, 1)?;
        Ok(self.combine(|k| JerryIndex::A(i as u8, k as u8)))
    }

    pub fn b(&self, i: usize) -> Result<Polynomial> {
        JerryIndex::b(i, 1)?;
        Ok(self.combine(|k| JerryIndex::B(i as u8, k as u8)))
    }

    pub fn c(&self) -> Polynomial {
        self.combine(|k| JerryIndex::C(k as u8))
    }

    /// Rows `(c, a_1, a_2, a_3)`, `(b_1, b_2, b_3)`, `(x_1, x_2)`, `(x_3)`.
    pub fn matrix(&self) -> Result<SkewMatrix> {
        let mut upper = vec![self.c()];
        for i in 1..=3 {
            upper.push(self.a(i)?);
        }
        for i in 1..=3 {
            upper.push(self.b(i)?);
        }
        upper.extend(self.x.iter().cloned());
        SkewMatrix::from_upper(&self.ctx, 5, upper)
    }

    fn to_generic(&self, generic: &Ctx) -> Result<Substitution> {
        let mut images: Vec<(String, Polynomial)> = JerryIndex::all()
            .map(|idx| (idx.to_string(), self.coeff(idx)))
            .collect();
        for (n, p) in names("x", 3).into_iter().zip(&self.x) {
            images.push((n, p.clone()));
        }
        for (n, p) in names("z", 4).into_iter().zip(&self.z) {
            images.push((n, p.clone()));
        }
        specialization(generic, &self.ctx, images)
    }
}

/// Everything computed once in the generic integral Jerry ring (28
/// coefficient symbols, `x1..x3`, `z1..z4`).
#[derive(Debug)]
pub struct GenericJerry {
    ctx: Ctx,
    a: SkewMatrix,
    p: Vec<Polynomial>,
    q: PolyMatrix,
    h: Vec<Polynomial>,
    f: PolyMatrix,
    gm: PolyMatrix,
    k: Vec<Polynomial>,
    l: Vec<Polynomial>,
    g: Vec<Polynomial>,
}

impl GenericJerry {
    fn build() -> Result<Self> {
        let mut all: Vec<String> = JerryIndex::all().map(|i| i.to_string()).collect();
        let xs = names("x", 3);
        let zs = names("z", 4);
        all.extend(xs.iter().cloned());
        all.extend(zs.iter().cloned());
        let ctx = grevlex(&all);
        let x = vars(&ctx, &xs);
        let z = vars(&ctx, &zs);
        let coeffs = JerryIndex::all()
            .map(|idx| Ok((idx, Polynomial::var(&ctx, &idx.to_string())?)))
            .collect::<Result<Vec<_>>>()?;
        let data = JerryData::new(&ctx, x.clone(), z.clone(), coeffs)?;
        let a = data.matrix()?;
        let p = pfaffians_odd(&a)?;
        let var = |idx: JerryIndex| Polynomial::var(&ctx, &idx.to_string()).expect("declared");
        let (a1, a2, a3) = (data.a(1)?, data.a(2)?, data.a(3)?);

        let mut rows = vec![Vec::new(), Vec::new(), Vec::new()];
        for k in 1..=4u8 {
            let b = |i: u8| var(JerryIndex::B(i, k));
            let aa = |i: u8| var(JerryIndex::A(i, k));
            rows[0].push(&(&(&b(1) * &x[2]) - &(&b(2) * &x[1])) + &(&b(3) * &x[0]));
            rows[1].push(&(&(&aa(1) * &x[2]) - &(&aa(2) * &x[1])) + &(&aa(3) * &x[0]));
            rows[2].push(&(&(&var(JerryIndex::C(k)) * &x[2]) - &(&a2 * &b(3))) + &(&a3 * &b(2)));
        }
        let q = PolyMatrix::from_rows(&ctx, rows)?;
        let zcol = PolyMatrix::column_vector(&ctx, z.clone())?;
        if q.try_mul(&zcol)?.column(0) != p[..3] {
            return Err(identity_failure("(P_1, P_2, P_3)^t = Q z fails"));
        }
        let h = wedge(&q)?;

        // M = Q at x3 = 0 factors as F G
        let mut at_x3_zero = Substitution::identity(&ctx);
        at_x3_zero.set("x3", Polynomial::zero(&ctx))?;
        let m = q.substitute(&at_x3_zero)?;
        let zero = Polynomial::zero(&ctx);
        let one = Polynomial::one(&ctx);
        let f = PolyMatrix::from_rows(
            &ctx,
            vec![
                vec![x[0].clone(), zero.clone(), -&x[1]],
                vec![zero.clone(), one, zero.clone()],
                vec![-&a2, zero, a3.clone()],
            ],
        )?;
        let gm = PolyMatrix::from_rows(
            &ctx,
            vec![
                (1..=4u8).map(|k| var(JerryIndex::B(3, k))).collect(),
                m.row(1).to_vec(),
                (1..=4u8).map(|k| var(JerryIndex::B(2, k))).collect(),
            ],
        )?;
        if f.try_mul(&gm)? != m {
            return Err(identity_failure("Q|x3=0 = F G fails"));
        }
        let u = &(&a2 * &x[1]) - &(&a3 * &x[0]);
        if determinant(&f)? != -&u {
            return Err(identity_failure("det F = a3*x1 - a2*x2 fails"));
        }

        let l: Vec<Polynomial> = wedge(&gm)?.into_iter().map(|e| -e).collect();
        let mut k = Vec::with_capacity(4);
        let mut g = Vec::with_capacity(4);
        for i in 0..4 {
            let hi0 = h[i].substitute(&at_x3_zero)?;
            let ki = (&h[i] - &hi0).exact_div(&x[2])?;
            if h[i] != &(&x[2] * &ki) + &(&u * &l[i]) {
                return Err(identity_failure(format!(
                    "h_{0} = x3*K_{0} + (a2*x2 - a3*x1)*L_{0} fails",
                    i + 1
                )));
            }
            let gi = &ki + &(&a1 * &l[i]);
            if h[i] != &(&x[2] * &gi) - &(&l[i] * &p[1]) {
                return Err(identity_failure(format!(
                    "h_{0} = x3*g_{0} - L_{0}*P_2 fails",
                    i + 1
                )));
            }
            k.push(ki);
            g.push(gi);
        }
        Ok(GenericJerry {
            ctx,
            a,
            p,
            q,
            h,
            f,
            gm,
            k,
            l,
            g,
        })
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn matrix(&self) -> &SkewMatrix {
        &self.a
    }

    /// `P_1..P_5`, with `P_i = Pf(A_i)`.
    pub fn pfaffians(&self) -> &[Polynomial] {
        &self.p
    }

    /// `(P_1, P_2, P_3)^t = Q (z_1..z_4)^t`, reading `a_2, a_3` in the third
    /// row as coefficients.
    pub fn q(&self) -> &PolyMatrix {
        &self.q
    }

    /// `h = wedge(Q)`.
    pub fn h(&self) -> &[Polynomial] {
        &self.h
    }

    /// The factorisation `Q|_{x3=0} = F G`.
    pub fn factors(&self) -> (&PolyMatrix, &PolyMatrix) {
        (&self.f, &self.gm)
    }

    pub fn k(&self) -> &[Polynomial] {
        &self.k
    }

    /// `L_i = (-1)^i det(G without column i)`.
    pub fn l(&self) -> &[Polynomial] {
        &self.l
    }

    /// `g_i = K_i + a_1 L_i`.
    pub fn g(&self) -> &[Polynomial] {
        &self.g
    }
}

static GENERIC_JERRY: OnceLock<Result<GenericJerry>> = OnceLock::new();

pub fn generic_jerry() -> Result<&'static GenericJerry> {
    GENERIC_JERRY
        .get_or_init(GenericJerry::build)
        .as_ref()
        .map_err(Clone::clone)
}

pub fn jerry_generic_g() -> Result<Vec<Polynomial>> {
    Ok(generic_jerry()?.g.clone())
}

/// Ideal `(P_1..P_5, T*z_1 - g_1, ..., T*z_4 - g_4)`.
pub fn unproject_jerry(d: &JerryData, tname: &str) -> Result<UnprojectionResult> {
    let gj = generic_jerry()?;
    d.ctx.extend(tname)?;
    let s = d.to_generic(&gj.ctx)?;
    let a = d.matrix()?;
    let p = pfaffians_odd(&a)?;
    let sub = |v: &[Polynomial]| v.iter().map(|e| e.substitute(&s)).collect::<Result<Vec<_>>>();
    let g = sub(&gj.g)?;
    let ideal = assemble(&d.ctx, &p, &d.z, &g, tname)?;
    let work = vec![
        ("A".to_string(), Intermediate::Matrix(a.into_matrix())),
        ("P".to_string(), Intermediate::List(p.clone())),
        ("Q".to_string(), Intermediate::Matrix(gj.q.substitute(&s)?)),
        ("h".to_string(), Intermediate::List(sub(&gj.h)?)),
        ("K".to_string(), Intermediate::List(sub(&gj.k)?)),
        ("L".to_string(), Intermediate::List(sub(&gj.l)?)),
        ("g".to_string(), Intermediate::List(g.clone())),
    ];
    Ok(UnprojectionResult {
        input: UnprojectionInput::Jerry(d.clone()),
        unproj_var: tname.to_string(),
        base: Ideal::new(&d.ctx, p)?,
        g,
        ideal,
        work,
    })
}
