//! Exact sparse multivariate polynomials over the integers.

mod context;
mod monomial;
mod parse;
mod poly;

pub use context::{Ctx, MonomialOrder, VarContext};
pub use monomial::Monomial;
pub use parse::parse;
pub use poly::{Polynomial, Substitution};

use crate::error::{Error, Result};

pub(crate) use context::same_context;

/// An ordered list of generators sharing one context. Order and signs of
/// the generators are kept exactly as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ctx: Ctx,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ctx: &Ctx, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_context(g.context(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            gens,
        })
    }

    pub fn parse<S: AsRef<str>>(ctx: &Ctx, gens: &[S]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|g| parse(ctx, g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal {
            ctx: ctx.clone(),
            gens,
        })
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn substitute(&self, subst: &Substitution) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(subst))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(subst.target(), gens)
    }
}

/// Convenience: parse a list of expressions.
pub fn parse_all<S: AsRef<str>>(ctx: &Ctx, texts: &[S]) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| parse(ctx, t.as_ref())).collect()
}

#[cfg(test)]
mod tests;
