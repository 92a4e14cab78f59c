//! Kustin–Miller unprojection: complete intersection inside complete
//! intersection, Tom and Jerry.
//!
//! Each construction returns the unprojection ideal
//! `(original generators, T*z_1 - g_1, ..., T*z_m - g_m)` in the ring with
//! one extra variable, together with the intermediate data it was built
//! from.
//!
//! Tom and Jerry numerators are computed once in the generic integral ring,
//! where every coefficient is an independent indeterminate and all the
//! divisions are exact, and then specialised by substitution. No check is
//! made that the `z` slots form a regular sequence or that the Pfaffian
//! ideal has the expected codimension; those are the caller's hypotheses.

mod ci;
mod jerry;
mod tom;


use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::PolyMatrix;
use crate::ring::{same_context, Ctx, Ideal, Polynomial, Substitution, VarContext};

pub use ci::{cramer_certificate, unproject_ci, CiData, CramerCertificate};
pub use jerry::{generic_jerry, jerry_generic_g, unproject_jerry, GenericJerry, JerryData, JerryIndex};
pub use tom::{generic_tom, tom_generic_g, unproject_tom, GenericTom, TomData, TomIndex};

/// Default name of the unprojection variable.
pub const DEFAULT_TNAME: &str = "T";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Ci,
    Tom,
    Jerry,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Ci => "ci",
            Kind::Tom => "tom",
            Kind::Jerry => "jerry",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ci" => Ok(Kind::Ci),
            "tom" => Ok(Kind::Tom),
            "jerry" => Ok(Kind::Jerry),
            _ => Err(Error::InvalidInput(format!(
                "unknown kind {s:?} (expected ci, tom or jerry)"
            ))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub enum UnprojectionInput {
    Ci(CiData),
    Tom(TomData),
    Jerry(JerryData),
}

impl UnprojectionInput {
    pub fn kind(&self) -> Kind {
        match self {
            UnprojectionInput::Ci(_) => Kind::Ci,
            UnprojectionInput::Tom(_) => Kind::Tom,
            UnprojectionInput::Jerry(_) => Kind::Jerry,
        }
    }

    pub fn context(&self) -> &Ctx {
        match self {
            UnprojectionInput::Ci(d) => d.context(),
            UnprojectionInput::Tom(d) => d.context(),
            UnprojectionInput::Jerry(d) => d.context(),
        }
    }
}

/// A named intermediate object, kept for `--show-work` style output.
#[derive(Debug, Clone)]
pub enum Intermediate {
    Matrix(PolyMatrix),
    List(Vec<Polynomial>),
}

#[derive(Debug, Clone)]
pub struct UnprojectionResult {
    pub input: UnprojectionInput,
    pub unproj_var: String,
    /// Generators of `I` in the input ring.
    pub base: Ideal,
    /// Numerators `g_i`, in the input ring.
    pub g: Vec<Polynomial>,
    /// `(base generators, T*w_1 - g_1, ...)` in the ring extended by `T`.
    pub ideal: Ideal,
    pub work: Vec<(String, Intermediate)>,
}

impl UnprojectionResult {
    pub fn kind(&self) -> Kind {
        self.input.kind()
    }

    pub fn context(&self) -> &Ctx {
        self.ideal.context()
    }
}

pub fn unproject(input: &UnprojectionInput, tname: &str) -> Result<UnprojectionResult> {
    match input {
        UnprojectionInput::Ci(d) => unproject_ci(d, tname),
        UnprojectionInput::Tom(d) => unproject_tom(d, tname),
        UnprojectionInput::Jerry(d) => unproject_jerry(d, tname),
    }
}

/// `(base, T*w_1 - g_1, ..., T*w_m - g_m)` in `ctx` extended by `tname`.
pub(crate) fn assemble(
    ctx: &Ctx,
    base: &[Polynomial],
    w: &[Polynomial],
    g: &[Polynomial],
    tname: &str,
) -> Result<Ideal> {
    let ext = ctx.extend(tname)?;
    let t = Polynomial::var(&ext, tname)?;
    let mut gens = Vec::with_capacity(base.len() + w.len());
    for p in base {
        gens.push(p.embed(&ext)?);
    }
    for (wi, gi) in w.iter().zip(g) {
        gens.push(&(&t * &wi.embed(&ext)?) - &gi.embed(&ext)?);
    }
    Ideal::new(&ext, gens)
}

/// Specialisation of a generic ring: every generic variable must be
/// assigned.
pub(crate) fn specialization(
    generic: &Ctx,
    target: &Ctx,
    images: impl IntoIterator<Item = (String, Polynomial)>,
) -> Result<Substitution> {
    let mut s = Substitution::new(generic, target);
    for (name, img) in images {
        s.set(&name, img)?;
    }
    Ok(s)
}

pub(crate) fn check_context(ctx: &Ctx, polys: &[Polynomial]) -> Result<()> {
    if polys.iter().all(|p| same_context(p.context(), ctx)) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

pub(crate) fn check_len(what: &str, polys: &[Polynomial], n: usize) -> Result<()> {
    if polys.len() == n {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{what} needs exactly {n} entries, got {}",
            polys.len()
        )))
    }
}

pub(crate) fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub(crate) fn vars(ctx: &Ctx, names: &[String]) -> Vec<Polynomial> {
    names
        .iter()
        .map(|n| Polynomial::var(ctx, n).expect("declared"))
        .collect()
}

pub(crate) fn identity_failure(what: impl Into<String>) -> Error {
    Error::IdentityFailure(what.into())
}

pub(crate) fn grevlex(names: &[String]) -> Ctx {
    VarContext::grevlex(names).expect("valid generic names")
}
