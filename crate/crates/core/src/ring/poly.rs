use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::context::{same_context, Ctx, MonomialOrder};
use super::monomial::Monomial;

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients.
///
/// Terms are kept sorted in strictly decreasing monomial order of the
/// context, and no stored coefficient is zero.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ctx: Ctx,
    terms: Vec<(Monomial, BigInt)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, BigInt::one())
    }

    pub fn constant(ctx: &Ctx, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms: vec![(Monomial::one(ctx.len()), c)],
        }
    }

    pub fn var(ctx: &Ctx, name: &str) -> Result<Self> {
        let i = ctx.index_of(name).ok_or_else(|| Error::UndeclaredVariable {
            name: name.to_string(),
            pos: 0,
        })?;
        Ok(Self::var_at(ctx, i))
    }

    pub fn var_at(ctx: &Ctx, i: usize) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: vec![(Monomial::var(ctx.len(), i), BigInt::one())],
        }
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: BigInt) -> Self {
        assert_eq!(m.len(), ctx.len(), "monomial length does not match context");
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated,
    /// possibly zero) terms.
    pub fn from_terms<I>(ctx: &Ctx, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ctx.len(), "monomial length does not match context");
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(ctx, acc)
    }

    fn from_map(ctx: &Ctx, acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ctx.compare(&b.0, &a.0));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree in one variable (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Coefficient of a given monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ctx.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            let c = if negate_other { -c } else { c.clone() };
            out.push((m.clone(), c));
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ctx));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb)?;
                *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    /// Multiplies by the single term `c * m`. Monomial multiplication
    /// preserves the order, so no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ctx));
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| Ok((t.mul(m)?, d * c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn try_pow(&self, exp: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / d` in the polynomial ring over the integers.
    ///
    /// Runs leading-term division; if a leading term of the running
    /// remainder is not divisible by the leading term of `d` (monomially or
    /// in its integer coefficient) the division is inexact and the
    /// remainder is reported.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(d)?;
        let (dm, dc) = d.leading_term().ok_or(Error::DivisionByZero)?;
        if d.terms.len() == 1 {
            return self.exact_div_term(dm, dc);
        }
        let order = self.ctx.order();
        // remainder as coefficient map plus a max-heap of its monomials;
        // heap entries whose coefficient has vanished are skipped
        let mut rem: HashMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut heap: BinaryHeap<Ordered> = self
            .terms
            .iter()
            .map(|(m, _)| Ordered(m.clone(), order))
            .collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some(Ordered(rm, _)) = heap.pop() {
            let Some(rc) = rem.remove(&rm) else { continue };
            if rc.is_zero() {
                continue;
            }
            let (q, r) = rc.div_rem(dc);
            let qm = match dm.quotient_of(&rm) {
                Some(qm) if r.is_zero() => qm,
                _ => {
                    rem.insert(rm, rc);
                    return Err(Error::InexactDivision {
                        remainder: Self::from_map(&self.ctx, rem).to_string(),
                    });
                }
            };
            for (t, e) in &d.terms[1..] {
                let m = t.mul(&qm)?;
                match rem.entry(m) {
                    Entry::Occupied(mut o) => *o.get_mut() -= &q * e,
                    Entry::Vacant(v) => {
                        heap.push(Ordered(v.key().clone(), order));
                        v.insert(-(&q * e));
                    }
                }
            }
            quot.push((qm, q));
        }
        // quotient terms are produced in strictly decreasing order
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms: quot,
        })
    }

    fn exact_div_term(&self, dm: &Monomial, dc: &BigInt) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(dc);
            match dm.quotient_of(m) {
                Some(qm) if r.is_zero() => terms.push((qm, q)),
                _ => {
                    return Err(Error::InexactDivision {
                        remainder: Polynomial::monomial(&self.ctx, m.clone(), c.clone()).to_string(),
                    })
                }
            }
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Ring homomorphism sending each variable to its assigned image.
    pub fn substitute(&self, subst: &Substitution) -> Result<Polynomial> {
        if !same_context(&self.ctx, &subst.source) {
            return Err(Error::ContextMismatch);
        }
        let images = subst.images()?;
        let target = &subst.target;
        // cache of powers per variable
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ctx.len()];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().try_mul(images[i])?;
                    cache.push(next);
                }
                term = term.try_mul(&cache[e as usize])?;
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.merge(&term, false);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in a context declaring (at least) the
    /// same variable names.
    pub fn embed(&self, target: &Ctx) -> Result<Polynomial> {
        if same_context(&self.ctx, target) {
            return Ok(self.clone());
        }
        let map = self
            .ctx
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::MissingAssignment(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            (Monomial::new(e), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Decomposes a polynomial that is jointly linear in `zvars` as
    /// `sum_k c_k * z_k` with every `c_k` free of the `zvars`.
    pub fn linear_coeffs(&self, zvars: &[usize]) -> Result<Vec<Polynomial>> {
        let mut parts: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); zvars.len()];
        for (m, c) in &self.terms {
            let zdeg: u64 = zvars.iter().map(|&z| m.exponent(z) as u64).sum();
            if zdeg != 1 {
                return Err(Error::NotLinear {
                    term: Polynomial::monomial(&self.ctx, m.clone(), c.clone()).to_string(),
                });
            }
            let k = zvars.iter().position(|&z| m.exponent(z) == 1).unwrap();
            // dividing by z_k keeps relative order, so parts stay sorted
            parts[k].push((m.with_exponent(zvars[k], 0), c.clone()));
        }
        Ok(parts
            .into_iter()
            .map(|terms| Polynomial {
                ctx: self.ctx.clone(),
                terms,
            })
            .collect())
    }

    /// Same as [`Polynomial::linear_coeffs`] with variables named.
    pub fn linear_coeffs_named<S: AsRef<str>>(&self, zvars: &[S]) -> Result<Vec<Polynomial>> {
        let idx = zvars
            .iter()
            .map(|z| {
                self.ctx
                    .index_of(z.as_ref())
                    .ok_or_else(|| Error::UndeclaredVariable {
                        name: z.as_ref().to_string(),
                        pos: 0,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        self.linear_coeffs(&idx)
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Polynomial {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let g = if self.terms[0].1.is_negative() { -g } else { g };
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c / &g))
                .collect(),
        }
    }

    /// Names of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0))
            .collect()
    }
}

/// Assignment of an image polynomial to each variable of a source context.
#[derive(Debug, Clone)]
pub struct Substitution {
    source: Ctx,
    target: Ctx,
    images: Vec<Option<Polynomial>>,
}

impl Substitution {
    pub fn new(source: &Ctx, target: &Ctx) -> Self {
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.len()],
        }
    }

    /// Every variable is sent to the variable of the same name in `target`
    /// (which must declare it).
    pub fn by_name(source: &Ctx, target: &Ctx) -> Result<Self> {
        let mut s = Self::new(source, target);
        for name in source.names() {
            s.set(name, Polynomial::var(target, name)?)?;
        }
        Ok(s)
    }

    pub fn identity(ctx: &Ctx) -> Self {
        Self::by_name(ctx, ctx).expect("identity substitution")
    }

    pub fn set(&mut self, name: &str, image: Polynomial) -> Result<&mut Self> {
        let i = self
            .source
            .index_of(name)
            .ok_or_else(|| Error::UndeclaredVariable {
                name: name.to_string(),
                pos: 0,
            })?;
        if !same_context(image.context(), &self.target) {
            return Err(Error::ContextMismatch);
        }
        self.images[i] = Some(image);
        Ok(self)
    }

    pub fn target(&self) -> &Ctx {
        &self.target
    }

    pub fn source(&self) -> &Ctx {
        &self.source
    }

    fn images(&self) -> Result<Vec<&Polynomial>> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                img.as_ref()
                    .ok_or_else(|| Error::MissingAssignment(self.source.name(i).to_string()))
            })
            .collect()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ctx: &Ctx, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ctx.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.ctx, m)?;
            }
        }
        Ok(())
    }
}

fn expect_same(a: &Polynomial, b: &Polynomial) {
    assert!(
        same_context(&a.ctx, &b.ctx),
        "polynomial operands live in different contexts"
    );
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        expect_same(self, rhs);
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        expect_same(self, rhs);
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        expect_same(self, rhs);
        self.try_mul(rhs).expect("exponent overflow in polynomial product")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Monomial ordered by a term order, for heaps.
#[derive(PartialEq, Eq)]
struct Ordered(Monomial, MonomialOrder);

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.compare(&self.0, &other.0)
    }
}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
