//! Buchberger's algorithm over the rationals, kept fraction-free.
//!
//! Basis elements are stored primitive (integer coefficients with content 1)
//! with positive leading coefficient. Reductions scale by integers instead
//! of dividing, so a normal form is reported as an integer numerator over a
//! positive integer denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{same_context, Ctx, Ideal, Monomial, Polynomial, Substitution};

/// Default ceiling on the number of processed critical pairs.
pub const DEFAULT_MAX_PAIRS: usize = 200_000;

/// Variable count above which a computation is flagged as likely slow.
pub const SOFT_VARIABLE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub max_pairs: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_processed: usize,
    pub pairs_skipped: usize,
    pub reductions_to_zero: usize,
    pub warnings: Vec<String>,
}

/// Reduced Gröbner basis of an ideal in the order carried by its context.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ctx: Ctx,
    basis: Vec<Polynomial>,
    source: Ideal,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    /// Sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn source(&self) -> &Ideal {
        &self.source
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<NormalForm> {
        normal_form(p, self)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }
}

/// Exact remainder over the rationals: `numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    numerator: Polynomial,
    denominator: BigInt,
}

impl NormalForm {
    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Always positive.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/{}", self.numerator, self.denominator)
        }
    }
}

fn lead(p: &Polynomial) -> (&Monomial, &BigInt) {
    p.leading_term().expect("nonzero polynomial")
}

/// Full reduction of `p` by `basis`. Returns `(r, scale)` with
/// `scale * p - r` in the ideal and no term of `r` divisible by a leading
/// monomial of `basis`.
fn reduce(p: &Polynomial, basis: &[Polynomial], skip: Option<usize>) -> Result<(Polynomial, BigInt)> {
    let ctx = p.context().clone();
    let mut f = p.clone();
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut scale = BigInt::one();
    while let Some((m, c)) = f.leading_term() {
        let divisor = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, g)| g)
            .find(|g| lead(g).0.divides(m));
        match divisor {
            Some(g) => {
                let (gm, gc) = lead(g);
                let d = c.gcd(gc);
                let mult_f = gc / &d;
                let mult_g = c / &d;
                let shift = gm.quotient_of(m).unwrap();
                f = &f.scale(&mult_f) - &g.mul_term(&shift, &mult_g)?;
                if !mult_f.is_one() {
                    for (_, rc) in rem.iter_mut() {
                        *rc *= &mult_f;
                    }
                    scale *= &mult_f;
                }
                // keep numbers small: divide out the common content
                let mut common = f.content().gcd(&scale);
                for (_, rc) in &rem {
                    if common.is_one() {
                        break;
                    }
                    common = common.gcd(rc);
                }
                if !common.is_one() && !common.is_zero() {
                    f = f.scale(&BigInt::one()).exact_div(&Polynomial::constant(&ctx, common.clone()))?;
                    for (_, rc) in rem.iter_mut() {
                        *rc /= &common;
                    }
                    scale /= &common;
                }
            }
            None => {
                let (m, c) = (m.clone(), c.clone());
                f = &f - &Polynomial::monomial(&ctx, m.clone(), c.clone());
                rem.push((m, c));
            }
        }
    }
    Ok((Polynomial::from_terms(&ctx, rem), scale))
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let (fm, fc) = lead(f);
    let (gm, gc) = lead(g);
    let l = fm.lcm(gm);
    let d = fc.gcd(gc);
    let a = f.mul_term(&fm.quotient_of(&l).unwrap(), &(gc / &d))?;
    let b = g.mul_term(&gm.quotient_of(&l).unwrap(), &(fc / &d))?;
    Ok(&a - &b)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first, ties by generator index) and both Buchberger criteria.
pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis> {
    buchberger_with(ideal, &GroebnerConfig::default())
}

pub fn buchberger_with(ideal: &Ideal, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let ctx = ideal.context().clone();
    let mut stats = GroebnerStats::default();
    if ctx.len() > SOFT_VARIABLE_LIMIT {
        stats.warnings.push(format!(
            "{} variables exceeds the soft limit of {SOFT_VARIABLE_LIMIT}; computation may be slow",
            ctx.len()
        ));
    }
    let mut g: Vec<Polynomial> = Vec::new();
    for p in ideal.gens() {
        if p.is_zero() {
            continue;
        }
        g.push(p.primitive());
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push(Pair {
                i,
                j,
                lcm: lead(&g[i]).0.lcm(lead(&g[j]).0),
            });
        }
    }
    let mut done = std::collections::HashSet::new();
    while !pairs.is_empty() {
        let pos = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then(pa.i.cmp(&pb.i))
                    .then(pa.j.cmp(&pb.j))
            })
            .unwrap();
        let pair = pairs.swap_remove(pos);
        done.insert((pair.i, pair.j));
        if stats.pairs_processed >= config.max_pairs {
            return Err(Error::ResourceLimit {
                pairs: stats.pairs_processed,
                basis_len: g.len(),
                queue_len: pairs.len() + 1,
            });
        }
        stats.pairs_processed += 1;

        let (mi, mj) = (lead(&g[pair.i]).0, lead(&g[pair.j]).0);
        if mi.is_coprime(mj) {
            stats.pairs_skipped += 1;
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && lead(&g[k]).0.divides(&pair.lcm)
                && done.contains(&(pair.i.min(k), pair.i.max(k)))
                && done.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            stats.pairs_skipped += 1;
            continue;
        }
        let s = spoly(&g[pair.i], &g[pair.j])?;
        let (h, _) = reduce(&s, &g, None)?;
        if h.is_zero() {
            stats.reductions_to_zero += 1;
            continue;
        }
        let h = h.primitive();
        let n = g.len();
        for k in 0..n {
            pairs.push(Pair {
                i: k,
                j: n,
                lcm: lead(&g[k]).0.lcm(lead(&h).0),
            });
        }
        g.push(h);
    }
    let basis = interreduce(g)?;
    Ok(GroebnerBasis {
        ctx,
        basis,
        source: ideal.clone(),
        stats,
    })
}

fn interreduce(g: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let m = lead(p).0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let qm = lead(q).0;
            j != i && qm.divides(m) && (qm != m || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let (r, _) = reduce(&keep[i], &keep, Some(i))?;
        out.push(r.primitive());
    }
    if let Some(ctx) = out.first().map(|p| p.context().clone()) {
        out.sort_by(|a, b| ctx.order().compare(lead(a).0, lead(b).0));
    }
    Ok(out)
}

/// Remainder of `p` on division by the basis, exact over the rationals.
pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Result<NormalForm> {
    if !same_context(p.context(), &basis.ctx) {
        return Err(Error::ContextMismatch);
    }
    let (r, scale) = reduce(p, &basis.basis, None)?;
    let g = r.content().gcd(&scale);
    let (mut num, mut den) = if g.is_one() || g.is_zero() {
        (r, scale)
    } else {
        (
            r.exact_div(&Polynomial::constant(p.context(), g.clone()))?,
            scale / &g,
        )
    };
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    if num.is_zero() {
        den = BigInt::one();
    }
    Ok(NormalForm {
        numerator: num,
        denominator: den,
    })
}

/// Which generator list a non-member came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonMember {
    pub side: Side,
    /// 0-based index into that side's generator list.
    pub index: usize,
    pub generator: Polynomial,
    pub normal_form: NormalForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealComparison {
    pub equal: bool,
    /// Equality was established only after `var -> -var` on the right side.
    pub sign_flipped: bool,
    pub witness: Option<NonMember>,
}

fn first_non_member(gens: &[Polynomial], basis: &GroebnerBasis, side: Side) -> Result<Option<NonMember>> {
    for (index, g) in gens.iter().enumerate() {
        let nf = basis.normal_form(g)?;
        if !nf.is_zero() {
            return Ok(Some(NonMember {
                side,
                index,
                generator: g.clone(),
                normal_form: nf,
            }));
        }
    }
    Ok(None)
}

/// Mutual membership test of the generators of two ideals.
pub fn ideal_equal(left: &Ideal, right: &Ideal) -> Result<IdealComparison> {
    ideal_equal_with(left, right, &GroebnerConfig::default())
}

pub fn ideal_equal_with(
    left: &Ideal,
    right: &Ideal,
    config: &GroebnerConfig,
) -> Result<IdealComparison> {
    if !same_context(left.context(), right.context()) {
        return Err(Error::ContextMismatch);
    }
    let right_basis = buchberger_with(right, config)?;
    if let Some(w) = first_non_member(left.gens(), &right_basis, Side::Left)? {
        return Ok(IdealComparison {
            equal: false,
            sign_flipped: false,
            witness: Some(w),
        });
    }
    let left_basis = buchberger_with(left, config)?;
    let witness = first_non_member(right.gens(), &left_basis, Side::Right)?;
    Ok(IdealComparison {
        equal: witness.is_none(),
        sign_flipped: false,
        witness,
    })
}

/// Substitution `var -> -var`, identity elsewhere.
pub fn sign_flip(ctx: &Ctx, var: &str) -> Result<Substitution> {
    let mut s = Substitution::identity(ctx);
    s.set(var, -Polynomial::var(ctx, var)?)?;
    Ok(s)
}

/// Like [`ideal_equal`], but also accepts equality after `var -> -var` on
/// the right-hand ideal.
pub fn ideal_equal_up_to_sign(
    left: &Ideal,
    right: &Ideal,
    var: &str,
    config: &GroebnerConfig,
) -> Result<IdealComparison> {
    let direct = ideal_equal_with(left, right, config)?;
    if direct.equal {
        return Ok(direct);
    }
    let flipped = right.substitute(&sign_flip(right.context(), var)?)?;
    let second = ideal_equal_with(left, &flipped, config)?;
    if second.equal {
        Ok(IdealComparison {
            equal: true,
            sign_flipped: true,
            witness: None,
        })
    } else {
        Ok(direct)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse, MonomialOrder, VarContext};
    use proptest::prelude::*;

    fn ctx(names: &[&str]) -> Ctx {
        VarContext::grevlex(names).unwrap()
    }

    fn ideal(c: &Ctx, gens: &[&str]) -> Ideal {
        Ideal::parse(c, gens).unwrap()
    }

    fn assert_reduced(gb: &GroebnerBasis) {
        let b = gb.basis();
        for i in 0..b.len() {
            assert!(lead(&b[i]).1.is_positive());
            assert!(b[i].content().is_one());
            for j in 0..b.len() {
                if i != j {
                    assert!(!lead(&b[j]).0.divides(lead(&b[i]).0));
                }
                let s = spoly(&b[i], &b[j]).unwrap();
                assert!(reduce(&s, b, None).unwrap().0.is_zero());
            }
        }
    }

    #[test]
    fn variables_are_already_a_basis() {
        let c = ctx(&["x", "y"]);
        let gb = buchberger(&ideal(&c, &["x", "y"])).unwrap();
        let mut got: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x", "y"]);
    }

    #[test]
    fn twisted_cubic_relation_appears_under_lex() {
        let c = VarContext::new(&["x", "y", "z"], MonomialOrder::Lex).unwrap();
        let gb = buchberger(&ideal(&c, &["x^2 - y", "x^3 - z"])).unwrap();
        assert_reduced(&gb);
        let rel = parse(&c, "y^3 - z^2").unwrap();
        assert!(gb.basis().contains(&rel));
        // parametrisation x = t, y = t^2, z = t^3 kills every basis element
        let tctx = ctx(&["t"]);
        let t = Polynomial::var(&tctx, "t").unwrap();
        let mut s = Substitution::new(&c, &tctx);
        s.set("x", t.clone()).unwrap();
        s.set("y", t.try_pow(2).unwrap()).unwrap();
        s.set("z", t.try_pow(3).unwrap()).unwrap();
        for g in gb.basis() {
            assert!(g.substitute(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_basics() {
        let c = ctx(&["x", "y", "z"]);
        let i = ideal(&c, &["x*y - z", "y^2 - x"]);
        let gb = buchberger(&i).unwrap();
        for g in i.gens() {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        let one = Polynomial::one(&c);
        assert_eq!(gb.normal_form(&one).unwrap().numerator(), &one);
        assert!(!gb.is_unit_ideal());
        let other = Polynomial::var(&ctx(&["x"]), "x").unwrap();
        assert_eq!(gb.normal_form(&other), Err(Error::ContextMismatch));
    }

    #[test]
    fn rational_remainders_are_exact() {
        let c = ctx(&["x", "y"]);
        let gb = buchberger(&ideal(&c, &["2*x - y"])).unwrap();
        // x = y/2 modulo the ideal
        let nf = gb.normal_form(&parse(&c, "x").unwrap()).unwrap();
        assert_eq!(nf.numerator(), &parse(&c, "y").unwrap());
        assert_eq!(nf.denominator(), &BigInt::from(2));
        assert_eq!(nf.to_string(), "(y)/2");
    }

    #[test]
    fn unit_ideal_detected() {
        let c = ctx(&["x", "y"]);
        let gb = buchberger(&ideal(&c, &["x*y - 1", "x"])).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn resource_ceiling_reports_progress() {
        let c = ctx(&["x", "y", "z"]);
        let i = ideal(&c, &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y", "x*y*z - 1"]);
        let err = buchberger_with(&i, &GroebnerConfig { max_pairs: 2 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { pairs: 2, .. }));
    }

    #[test]
    fn ideal_equality_examples() {
        let c = ctx(&["x", "y"]);
        let r = ideal_equal(&ideal(&c, &["x", "y"]), &ideal(&c, &["x + y", "x - y"])).unwrap();
        assert!(r.equal && r.witness.is_none());

        let r = ideal_equal(&ideal(&c, &["x"]), &ideal(&c, &["x^2"])).unwrap();
        assert!(!r.equal);
        let w = r.witness.unwrap();
        assert_eq!(w.side, Side::Left);
        assert_eq!(w.generator, parse(&c, "x").unwrap());
        assert_eq!(w.normal_form.numerator(), &parse(&c, "x").unwrap());

        let d = ctx(&["u"]);
        assert!(ideal_equal(&ideal(&c, &["x"]), &ideal(&d, &["u"])).is_err());
    }

    #[test]
    fn sign_flip_equality() {
        let c = ctx(&["x", "T"]);
        let a = ideal(&c, &["T*x - x^2"]);
        let b = ideal(&c, &["T*x + x^2"]);
        assert!(!ideal_equal(&a, &b).unwrap().equal);
        let r = ideal_equal_up_to_sign(&a, &b, "T", &GroebnerConfig::default()).unwrap();
        assert!(r.equal && r.sign_flipped);
    }

    #[test]
    fn basis_is_order_stable() {
        let c = ctx(&["x", "y", "z", "w"]);
        let i = ideal(&c, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        let a = buchberger(&i).unwrap();
        let b = buchberger(&i).unwrap();
        assert_eq!(a.basis(), b.basis());
        assert_reduced(&a);
    }

    fn small_poly(c: Ctx) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..=2, 3), -5i64..=5), 0..5).prop_map(
            move |terms| {
                Polynomial::from_terms(
                    &c,
                    terms.into_iter().map(|(e, k)| (Monomial::new(e), BigInt::from(k))),
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn remainder_difference_is_a_member(p in small_poly(ctx(&["x", "y", "z"]))) {
            let c = p.context().clone();
            let gb = buchberger(&ideal(&c, &["2*x*y - z", "3*y^2 - x", "x*z + z"])).unwrap();
            let nf = gb.normal_form(&p).unwrap();
            let diff = &p.scale(nf.denominator()) - nf.numerator();
            prop_assert!(gb.normal_form(&diff).unwrap().is_zero());
            let again = gb.normal_form(nf.numerator()).unwrap();
            prop_assert_eq!(again.numerator(), nf.numerator());
            prop_assert!(again.denominator().is_one());
        }
    }
}
