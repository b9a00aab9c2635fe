//! Equality evidence: finite derivation trees over the registered rules.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::syntax::term::{Ctx, CtxMor, Term, Ty, TyMor};

/// Metavariable instantiation for a rule leaf, keyed by the schema's
/// metavariable names.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Inst(pub BTreeMap<String, Term>);

impl Inst {
    pub fn new() -> Inst {
        Inst(BTreeMap::new())
    }

    pub fn bind(mut self, name: &str, t: impl Into<Term>) -> Inst {
        self.0.insert(name.to_string(), t.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.0.get(name)
    }
}

/// Evidence for an ≡ judgment.
///
/// `Rule` leaves instantiate one of the registered equality-conclusion rules;
/// `Cong` leaves instantiate the congruence rules and carry their equality
/// premises as sub-derivations. `Axiom` cites a named equality from the
/// ambient theory.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum EqDerivation {
    Rule {
        id: String,
        /// Which conclusion of a multi-conclusion rule (0-based).
        concl: u8,
        inst: Inst,
        premises: Vec<Arc<EqDerivation>>,
    },
    Refl(Term),
    Sym(Arc<EqDerivation>),
    Trans(Arc<EqDerivation>, Arc<EqDerivation>),
    Cong {
        id: String,
        concl: u8,
        inst: Inst,
        premises: Vec<Arc<EqDerivation>>,
    },
    Axiom(String),
}

impl EqDerivation {
    pub fn rule(id: &str, inst: Inst) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Rule {
            id: id.to_string(),
            concl: 0,
            inst,
            premises: Vec::new(),
        })
    }

    pub fn rule_at(id: &str, concl: u8, inst: Inst) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Rule {
            id: id.to_string(),
            concl,
            inst,
            premises: Vec::new(),
        })
    }

    pub fn rule_with(
        id: &str,
        concl: u8,
        inst: Inst,
        premises: Vec<Arc<EqDerivation>>,
    ) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Rule {
            id: id.to_string(),
            concl,
            inst,
            premises,
        })
    }

    pub fn cong(id: &str, inst: Inst, premises: Vec<Arc<EqDerivation>>) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Cong {
            id: id.to_string(),
            concl: 0,
            inst,
            premises,
        })
    }

    pub fn cong_at(
        id: &str,
        concl: u8,
        inst: Inst,
        premises: Vec<Arc<EqDerivation>>,
    ) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Cong {
            id: id.to_string(),
            concl,
            inst,
            premises,
        })
    }

    pub fn refl(t: impl Into<Term>) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Refl(t.into()))
    }

    pub fn sym(d: Arc<EqDerivation>) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Sym(d))
    }

    pub fn trans(a: Arc<EqDerivation>, b: Arc<EqDerivation>) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Trans(a, b))
    }

    /// Left-to-right chain of derivations; must be non-empty.
    pub fn trans_chain(steps: Vec<Arc<EqDerivation>>) -> Arc<EqDerivation> {
        let mut it = steps.into_iter();
        let mut acc = it.next().expect("trans_chain of empty list");
        for d in it {
            acc = EqDerivation::trans(acc, d);
        }
        acc
    }

    pub fn axiom(name: &str) -> Arc<EqDerivation> {
        Arc::new(EqDerivation::Axiom(name.to_string()))
    }
}

impl fmt::Display for EqDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqDerivation::Rule { id, concl, .. } => write!(f, "(rule {id}/{concl})"),
            EqDerivation::Refl(t) => write!(f, "(refl {t})"),
            EqDerivation::Sym(d) => write!(f, "(sym {d})"),
            EqDerivation::Trans(a, b) => write!(f, "(trans {a} {b})"),
            EqDerivation::Cong { id, .. } => write!(f, "(cong {id})"),
            EqDerivation::Axiom(n) => write!(f, "(axiom {n})"),
        }
    }
}

/// Convenience accessors used by rule schemas.
pub trait InstExt {
    fn ctx(&self, name: &str) -> crate::error::Result<Ctx>;
    fn ty(&self, name: &str) -> crate::error::Result<Ty>;
    fn ctxmor(&self, name: &str) -> crate::error::Result<CtxMor>;
    fn tymor(&self, name: &str) -> crate::error::Result<TyMor>;
}

fn schema_mismatch(name: &str, expected: &str, found: &str) -> crate::error::CheckError {
    crate::error::CheckError::SchemaMismatch {
        rule: String::new(),
        metavar: name.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

impl InstExt for Inst {
    fn ctx(&self, name: &str) -> crate::error::Result<Ctx> {
        match self.get(name) {
            Some(Term::Ctx(c)) => Ok(c.clone()),
            Some(t) => Err(schema_mismatch(name, "ctx", t.class())),
            None => Err(schema_mismatch(name, "ctx", "missing")),
        }
    }
    fn ty(&self, name: &str) -> crate::error::Result<Ty> {
        match self.get(name) {
            Some(Term::Ty(c)) => Ok(c.clone()),
            Some(t) => Err(schema_mismatch(name, "ty", t.class())),
            None => Err(schema_mismatch(name, "ty", "missing")),
        }
    }
    fn ctxmor(&self, name: &str) -> crate::error::Result<CtxMor> {
        match self.get(name) {
            Some(Term::CtxMor(c)) => Ok(c.clone()),
            Some(t) => Err(schema_mismatch(name, "ctxmor", t.class())),
            None => Err(schema_mismatch(name, "ctxmor", "missing")),
        }
    }
    fn tymor(&self, name: &str) -> crate::error::Result<TyMor> {
        match self.get(name) {
            Some(Term::TyMor(c)) => Ok(c.clone()),
            Some(t) => Err(schema_mismatch(name, "tymor", t.class())),
            None => Err(schema_mismatch(name, "tymor", "missing")),
        }
    }
}
