//! Theories: declared constants, equality axioms, and calculus options.

pub mod elab;

use std::sync::Arc;

use crate::env::{Env, FactStore, Features, Mode};
use crate::error::{CheckError, Result};
use crate::kernel::check::check_eq;
use crate::kernel::derivation::EqDerivation;
use crate::kernel::rewrite::{decide_eq_split, SplitVerdict};
use crate::synth;
use crate::syntax::judgment::Judgment;
use crate::syntax::term::{Ctx, CtxMor, Term, Ty, TyMor};

#[derive(Clone, Debug)]
pub enum Decl {
    Ctx(String),
    Ty {
        name: String,
        ctx: Ctx,
    },
    CtxMor {
        name: String,
        dom: Ctx,
        cod: Ctx,
    },
    TyMor {
        name: String,
        dom: Ty,
        cod: Ty,
    },
    Axiom {
        name: String,
        judgment: Judgment,
        derivation: Option<Arc<EqDerivation>>,
        /// Coherence facts may be postulated without a derivation; they are
        /// flagged in reports and validated semantically by the model
        /// harness, never silently trusted by non-split checking.
        postulate: bool,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ctx(n) => n,
            Decl::Ty { name, .. } => name,
            Decl::CtxMor { name, .. } => name,
            Decl::TyMor { name, .. } => name,
            Decl::Axiom { name, .. } => name,
        }
    }
}

/// An immutable theory: validated declarations plus the derived fact store.
pub struct Theory {
    pub mode: Mode,
    pub features: Features,
    pub decls: Vec<Decl>,
    facts: Arc<FactStore>,
    pub postulates: Vec<String>,
}

pub struct TheoryBuilder {
    mode: Mode,
    features: Features,
    decls: Vec<Decl>,
    facts: FactStore,
    postulates: Vec<String>,
}

impl TheoryBuilder {
    pub fn new(mode: Mode, features: Features) -> TheoryBuilder {
        TheoryBuilder {
            mode,
            features,
            decls: Vec::new(),
            facts: FactStore::new(),
            postulates: Vec::new(),
        }
    }

    fn env(&self) -> Env {
        let mut facts = FactStore::new();
        for d in &self.decls {
            if let Decl::Axiom { name, judgment, .. } = d {
                facts.insert(Some(name.clone()), judgment.clone());
            }
        }
        Env::with_facts(self.mode, self.features, Arc::new(facts))
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.decls.iter().any(|d| d.name() == name) {
            return Err(CheckError::Declaration(format!(
                "duplicate declaration {name}"
            )));
        }
        Ok(())
    }

    pub fn declare_ctx(&mut self, name: &str) -> Result<Ctx> {
        self.check_fresh(name)?;
        self.decls.push(Decl::Ctx(name.to_string()));
        Ok(Ctx::const_(name))
    }

    pub fn declare_ty(&mut self, name: &str, ctx: Ctx) -> Result<Ty> {
        self.check_fresh(name)?;
        let env = self.env();
        synth::check_ctx(&env, &ctx)?;
        self.decls.push(Decl::Ty {
            name: name.to_string(),
            ctx: ctx.clone(),
        });
        Ok(Ty::const_(name, ctx))
    }

    pub fn declare_ctxmor(&mut self, name: &str, dom: Ctx, cod: Ctx) -> Result<CtxMor> {
        self.check_fresh(name)?;
        let env = self.env();
        synth::check_ctx(&env, &dom)?;
        synth::check_ctx(&env, &cod)?;
        self.decls.push(Decl::CtxMor {
            name: name.to_string(),
            dom: dom.clone(),
            cod: cod.clone(),
        });
        Ok(CtxMor::const_(name, dom, cod))
    }

    pub fn declare_tymor(&mut self, name: &str, dom: Ty, cod: Ty) -> Result<TyMor> {
        self.check_fresh(name)?;
        let env = self.env();
        let cd = synth::ty_ctx(&env, &dom)?;
        let cc = synth::ty_ctx(&env, &cod)?;
        if !synth::ctx_eq(&env, &cd, &cc) {
            return Err(CheckError::Declaration(format!(
                "type morphism {name}: domain lives in {cd}, codomain in {cc}"
            )));
        }
        self.decls.push(Decl::TyMor {
            name: name.to_string(),
            dom: dom.clone(),
            cod: cod.clone(),
        });
        Ok(TyMor::const_(name, dom, cod))
    }

    /// Declares an equality axiom. Non-split axioms require a derivation
    /// unless explicitly postulated; split axioms without a derivation are
    /// validated by the rewriter.
    pub fn declare_axiom(
        &mut self,
        name: &str,
        judgment: Judgment,
        derivation: Option<Arc<EqDerivation>>,
        postulate: bool,
    ) -> Result<()> {
        self.check_fresh(name)?;
        let env = self.env();
        if !judgment.is_equality() {
            return Err(CheckError::Declaration(format!(
                "axiom {name} is not an equality judgment"
            )));
        }
        synth::check_judgment_wf(&env, &judgment)?;
        match (&derivation, postulate, self.mode) {
            (Some(d), _, _) => {
                let got = check_eq(&env, d)?;
                if !synth::eq_judgment_matches(&env, &got, &judgment) {
                    return Err(CheckError::Declaration(format!(
                        "axiom {name}: derivation proves {got}, not {judgment}"
                    )));
                }
            }
            (None, true, _) => {
                self.postulates.push(name.to_string());
            }
            (None, false, Mode::Split) => {
                let (lhs, rhs): (Term, Term) = match &judgment {
                    Judgment::CtxMorEq { lhs, rhs, .. } => {
                        (lhs.clone().into(), rhs.clone().into())
                    }
                    Judgment::TyMorEq { lhs, rhs, .. } => {
                        (lhs.clone().into(), rhs.clone().into())
                    }
                    Judgment::TyEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
                    _ => unreachable!(),
                };
                match decide_eq_split(&env, &lhs, &rhs)? {
                    SplitVerdict::Equal { .. } => {}
                    SplitVerdict::Distinct { lhs_nf, rhs_nf } => {
                        return Err(CheckError::Declaration(format!(
                            "axiom {name} not validated by the rewriter: {lhs_nf} vs {rhs_nf}"
                        )))
                    }
                    SplitVerdict::FuelExhausted => return Err(CheckError::FuelExhausted),
                }
            }
            (None, false, Mode::NonSplit) => {
                return Err(CheckError::EvidenceRequired(format!(
                    "axiom {name} needs a derivation in non-split mode (or :postulate)"
                )))
            }
        }
        self.decls.push(Decl::Axiom {
            name: name.to_string(),
            judgment: judgment.clone(),
            derivation,
            postulate,
        });
        self.facts.insert(Some(name.to_string()), judgment);
        Ok(())
    }

    pub fn finish(self) -> Theory {
        let mut facts = FactStore::new();
        for d in &self.decls {
            if let Decl::Axiom { name, judgment, .. } = d {
                facts.insert(Some(name.clone()), judgment.clone());
            }
        }
        // register normalized variants so axiom-directed rewriting also
        // fires on already-normalized candidates
        let probe = Env::with_facts(self.mode, self.features, Arc::new(facts));
        let mut enriched = FactStore::new();
        for d in &self.decls {
            if let Decl::Axiom { name, judgment, .. } = d {
                enriched.insert(Some(name.clone()), judgment.clone());
                if let Judgment::CtxMorEq { dom, lhs, rhs, cod } = judgment {
                    if let (Ok(nl), Ok(nr)) = (
                        crate::kernel::rewrite::nf_ctxmor(&probe, lhs),
                        crate::kernel::rewrite::nf_ctxmor(&probe, rhs),
                    ) {
                        if (nl != *lhs || nr != *rhs) && nl != nr {
                            enriched.insert_directed_variant(
                                name,
                                Judgment::CtxMorEq {
                                    dom: dom.clone(),
                                    lhs: nl,
                                    rhs: nr,
                                    cod: cod.clone(),
                                },
                            );
                        }
                    }
                }
                if let Judgment::TyMorEq {
                    ctx,
                    dom,
                    lhs,
                    rhs,
                    cod,
                } = judgment
                {
                    if let (Ok(nl), Ok(nr)) = (
                        crate::kernel::rewrite::nf_tymor(&probe, lhs),
                        crate::kernel::rewrite::nf_tymor(&probe, rhs),
                    ) {
                        if (nl != *lhs || nr != *rhs) && nl != nr {
                            enriched.insert_directed_variant(
                                name,
                                Judgment::TyMorEq {
                                    ctx: ctx.clone(),
                                    dom: dom.clone(),
                                    lhs: nl,
                                    rhs: nr,
                                    cod: cod.clone(),
                                },
                            );
                        }
                    }
                }
            }
        }
        Theory {
            mode: self.mode,
            features: self.features,
            decls: self.decls,
            facts: Arc::new(enriched),
            postulates: self.postulates,
        }
    }
}

impl Theory {
    /// A fresh checking environment over this theory.
    pub fn env(&self) -> Env {
        Env::with_facts(self.mode, self.features, self.facts.clone())
    }

    pub fn lookup(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }
}
