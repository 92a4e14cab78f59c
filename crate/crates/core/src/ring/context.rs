use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::monomial::Monomial;

/// Monomial order carried by a variable context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, variables ranked in declaration order.
    #[default]
    Grevlex,
    /// Pure lexicographic, variables ranked in declaration order.
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Grevlex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                // equal degree: smaller exponent in the last differing slot wins
                for (ea, eb) in a.exponents().iter().zip(b.exponents()).rev() {
                    if ea != eb {
                        return eb.cmp(ea);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::InvalidContext(format!(
                "unknown monomial order `{other}` (expected grevlex or lex)"
            ))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered list of distinct variable names plus the monomial order.
#[derive(Debug, Clone)]
pub struct VarContext {
    names: Vec<String>,
    order: MonomialOrder,
    index: HashMap<String, usize>,
}

/// Shared handle to a variable context. Polynomials hold one of these.
pub type Ctx = Arc<VarContext>;

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ctx> {
        let mut index = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!(
                    "`{name}` is not a valid variable name"
                )));
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(Error::InvalidContext(format!(
                    "variable `{name}` declared twice"
                )));
            }
            owned.push(name.to_string());
        }
        Ok(Arc::new(VarContext {
            names: owned,
            order,
            index,
        }))
    }

    pub fn grevlex<S: AsRef<str>>(names: &[S]) -> Result<Ctx> {
        Self::new(names, MonomialOrder::Grevlex)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Appends a fresh variable, failing if the name is already declared.
    pub fn extend(&self, name: &str) -> Result<Ctx> {
        if self.index.contains_key(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        VarContext::new(&names, self.order)
    }

    /// Same variables under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Ctx {
        Arc::new(VarContext {
            names: self.names.clone(),
            order,
            index: self.index.clone(),
        })
    }

    pub(crate) fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.names == other.names
    }
}

impl Eq for VarContext {}

pub(crate) fn same_context(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(VarContext::grevlex(&["x", "x"]).is_err());
        assert!(VarContext::grevlex(&["1x"]).is_err());
        assert!(VarContext::grevlex(&[""]).is_err());
        assert!(VarContext::grevlex(&["a23_1", "x1", "T"]).is_ok());
    }

    #[test]
    fn extend_detects_collision() {
        let ctx = VarContext::grevlex(&["x", "T"]).unwrap();
        assert_eq!(ctx.extend("T"), Err(Error::NameCollision("T".into())));
        let ext = ctx.extend("u").unwrap();
        assert_eq!(ext.names(), &["x", "T", "u"]);
    }

    #[test]
    fn grevlex_and_lex_disagree_where_expected() {
        // x*z^2 vs y^3 in x > y > z: lex prefers x*z^2; both degree 3,
        // grevlex compares the last variable: z-exponent 2 vs 0, so y^3 wins.
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 3, 0]);
        assert_eq!(MonomialOrder::Lex.compare(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.compare(&a, &b), Ordering::Less);
        let c = Monomial::new(vec![0, 0, 4]);
        assert_eq!(MonomialOrder::Grevlex.compare(&c, &a), Ordering::Greater);
    }
}
