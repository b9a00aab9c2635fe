//! Derivation checking, judgment dispatch, and the trace-to-derivation
//! compiler.

use std::sync::Arc;
use std::time::Instant;

use crate::env::{Env, Mode};
use crate::error::{CheckError, Result};
use crate::kernel::derivation::EqDerivation;
use crate::kernel::rewrite::{self, RewriteStep, SplitVerdict};
use crate::kernel::rules::{self, Concl, Premise};
use crate::synth;
use crate::syntax::judgment::Judgment;
use crate::syntax::term::Term;

/// Checks an equality derivation and returns its conclusion.
pub fn check_eq(env: &Env, d: &EqDerivation) -> Result<Judgment> {
    match d {
        EqDerivation::Rule {
            id,
            concl,
            inst,
            premises,
        } => check_leaf(env, id, *concl, inst, premises, false),
        EqDerivation::Cong {
            id,
            concl,
            inst,
            premises,
        } => check_leaf(env, id, *concl, inst, premises, true),
        EqDerivation::Refl(t) => {
            let j = match t {
                Term::CtxMor(m) => {
                    let (dom, cod) = synth::mor_boundary(env, m)?;
                    Judgment::CtxMorEq {
                        dom,
                        lhs: m.clone(),
                        rhs: m.clone(),
                        cod,
                    }
                }
                Term::TyMor(m) => {
                    let (ctx, dom, cod) = synth::tymor_boundary(env, m)?;
                    Judgment::TyMorEq {
                        ctx,
                        dom,
                        lhs: m.clone(),
                        rhs: m.clone(),
                        cod,
                    }
                }
                Term::Ty(a) => {
                    if env.mode != Mode::Split {
                        return Err(CheckError::NotSplitMode);
                    }
                    let ctx = synth::ty_ctx(env, a)?;
                    Judgment::TyEq {
                        ctx,
                        lhs: a.clone(),
                        rhs: a.clone(),
                    }
                }
                Term::Ctx(_) => {
                    return Err(CheckError::IllFormedSubterm {
                        path: "refl".into(),
                        reason: "no equality judgment for contexts".into(),
                    })
                }
            };
            Ok(j)
        }
        EqDerivation::Sym(inner) => {
            let j = check_eq(env, inner)?;
            j.flipped().ok_or_else(|| CheckError::IllFormedSubterm {
                path: "sym".into(),
                reason: "premise is not an equality".into(),
            })
        }
        EqDerivation::Trans(a, b) => {
            let ja = check_eq(env, a)?;
            let jb = check_eq(env, b)?;
            glue_trans(env, &ja, &jb)
        }
        EqDerivation::Axiom(name) => env
            .facts
            .lookup_named(name)
            .cloned()
            .ok_or_else(|| CheckError::UnknownAxiom(name.clone())),
    }
}

fn glue_trans(env: &Env, ja: &Judgment, jb: &Judgment) -> Result<Judgment> {
    match (ja, jb) {
        (
            Judgment::CtxMorEq {
                dom,
                lhs,
                rhs: mid1,
                cod,
            },
            Judgment::CtxMorEq {
                lhs: mid2, rhs, ..
            },
        ) => {
            if !synth::mor_eq(env, mid1, mid2) {
                return Err(CheckError::BoundaryMismatch {
                    path: "trans".into(),
                    reason: format!("middles differ: {mid1} vs {mid2}"),
                });
            }
            Ok(Judgment::CtxMorEq {
                dom: dom.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                cod: cod.clone(),
            })
        }
        (
            Judgment::TyMorEq {
                ctx,
                dom,
                lhs,
                rhs: mid1,
                cod,
            },
            Judgment::TyMorEq {
                lhs: mid2, rhs, ..
            },
        ) => {
            if !synth::tymor_eq(env, mid1, mid2) {
                return Err(CheckError::BoundaryMismatch {
                    path: "trans".into(),
                    reason: format!("middles differ: {mid1} vs {mid2}"),
                });
            }
            Ok(Judgment::TyMorEq {
                ctx: ctx.clone(),
                dom: dom.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                cod: cod.clone(),
            })
        }
        (
            Judgment::TyEq { ctx, lhs, rhs: m1 },
            Judgment::TyEq { lhs: m2, rhs, .. },
        ) => {
            if !synth::ty_eq(env, m1, m2) {
                return Err(CheckError::BoundaryMismatch {
                    path: "trans".into(),
                    reason: format!("middles differ: {m1} vs {m2}"),
                });
            }
            Ok(Judgment::TyEq {
                ctx: ctx.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            })
        }
        _ => Err(CheckError::BoundaryMismatch {
            path: "trans".into(),
            reason: "mismatched judgment forms".into(),
        }),
    }
}

fn check_leaf(
    env: &Env,
    id: &str,
    concl: u8,
    inst: &crate::kernel::derivation::Inst,
    premises: &[Arc<EqDerivation>],
    cong_node: bool,
) -> Result<Judgment> {
    let spec = rules::lookup(id)?;
    if cong_node && !rules::is_congruence(id) {
        return Err(CheckError::SchemaMismatch {
            rule: id.into(),
            metavar: "node".into(),
            expected: "a congruence rule in a cong node".into(),
            found: "a non-congruence rule".into(),
        });
    }
    let mode_spec = spec.for_mode(env.mode).ok_or_else(|| {
        CheckError::SchemaMismatch {
            rule: id.into(),
            metavar: "mode".into(),
            expected: "a rule registered for the ambient mode".into(),
            found: format!("{:?}", env.mode),
        }
    })?;
    match mode_spec.conclusions.get(concl as usize) {
        Some(Concl::Formation(_)) | None => {
            return Err(CheckError::SchemaMismatch {
                rule: id.into(),
                metavar: "conclusion".into(),
                expected: "an equality conclusion".into(),
                found: format!("{concl}"),
            })
        }
        Some(_) => {}
    }
    let check = mode_spec.check.ok_or_else(|| CheckError::UnknownRule(id.into()))?;
    let mut checked = Vec::with_capacity(premises.len());
    for d in premises {
        checked.push(Premise {
            judgment: check_eq(env, d)?,
            derivation: d.clone(),
        });
    }
    check(env, inst, concl, &checked)
}

/// Verdict of a single goal.
#[derive(Clone, Debug)]
pub enum Verdict {
    Accepted,
    /// Split decision succeeded; carries the rewrite step counts.
    Decided { lhs_steps: usize, rhs_steps: usize },
    /// Both sides normalized and differ: reported as not proved, never as a
    /// semantic refutation.
    NotProved { lhs_nf: String, rhs_nf: String },
    FuelExhausted,
    Rejected { code: &'static str, message: String },
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub judgment: String,
    pub verdict: Verdict,
    pub rule_trace: Vec<String>,
    pub time_ms: f64,
}

/// Dispatches a judgment: synthesis for the non-equality forms, derivation
/// checking or the split decision procedure for ≡ goals.
pub fn check_judgment(
    env: &Env,
    j: &Judgment,
    evidence: Option<&EqDerivation>,
) -> CheckReport {
    env.refill_fuel();
    let start = Instant::now();
    let mut trace = Vec::new();
    let verdict = match check_judgment_inner(env, j, evidence, &mut trace) {
        Ok(v) => v,
        Err(CheckError::FuelExhausted) => Verdict::FuelExhausted,
        Err(e) => Verdict::Rejected {
            code: e.code(),
            message: e.to_string(),
        },
    };
    CheckReport {
        judgment: j.to_string(),
        verdict,
        rule_trace: trace,
        time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn check_judgment_inner(
    env: &Env,
    j: &Judgment,
    evidence: Option<&EqDerivation>,
    trace: &mut Vec<String>,
) -> Result<Verdict> {
    if !j.is_equality() {
        synth::check_judgment_wf(env, j)?;
        return Ok(Verdict::Accepted);
    }
    synth::check_judgment_wf(env, j)?;
    if let Some(d) = evidence {
        let got = check_eq(env, d)?;
        record_rules(d, trace);
        if judgments_agree(env, &got, j) {
            return Ok(Verdict::Accepted);
        }
        return Err(CheckError::BoundaryMismatch {
            path: "goal".into(),
            reason: format!("derivation proves {got}"),
        });
    }
    if env.mode != Mode::Split {
        return Err(CheckError::EvidenceRequired(j.to_string()));
    }
    let (lhs, rhs): (Term, Term) = match j {
        Judgment::CtxMorEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
        Judgment::TyMorEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
        Judgment::TyEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
        _ => unreachable!(),
    };
    match rewrite::decide_eq_split(env, &lhs, &rhs)? {
        SplitVerdict::Equal { lhs, rhs, .. } => {
            for s in lhs.steps.iter().chain(rhs.steps.iter()) {
                trace.push(s.rule.clone());
            }
            Ok(Verdict::Decided {
                lhs_steps: lhs.steps.len(),
                rhs_steps: rhs.steps.len(),
            })
        }
        SplitVerdict::Distinct { lhs_nf, rhs_nf } => Ok(Verdict::NotProved {
            lhs_nf: lhs_nf.to_string(),
            rhs_nf: rhs_nf.to_string(),
        }),
        SplitVerdict::FuelExhausted => Ok(Verdict::FuelExhausted),
    }
}

fn record_rules(d: &EqDerivation, trace: &mut Vec<String>) {
    match d {
        EqDerivation::Rule { id, premises, .. } | EqDerivation::Cong { id, premises, .. } => {
            trace.push(id.clone());
            for p in premises {
                record_rules(p, trace);
            }
        }
        EqDerivation::Refl(_) => {}
        EqDerivation::Sym(x) => record_rules(x, trace),
        EqDerivation::Trans(a, b) => {
            record_rules(a, trace);
            record_rules(b, trace);
        }
        EqDerivation::Axiom(n) => trace.push(format!("axiom:{n}")),
    }
}

fn judgments_agree(env: &Env, got: &Judgment, want: &Judgment) -> bool {
    if got == want {
        return true;
    }
    synth::eq_judgment_matches(env, got, want)
}

/// Replays one rewrite step as a rule leaf: the step's instantiation is fed
/// back through the registered schema and the schema's conclusion must match
/// the recorded redex and contractum (up to split-mode convertibility).
pub fn compile_step(env: &Env, step: &RewriteStep) -> Result<Arc<EqDerivation>> {
    if let Some(name) = step.rule.strip_prefix("axiom:") {
        let d = if step.flipped {
            EqDerivation::sym(EqDerivation::axiom(name))
        } else {
            EqDerivation::axiom(name)
        };
        check_eq(env, &d)?;
        return Ok(d);
    }
    let d = if step.flipped {
        EqDerivation::sym(EqDerivation::rule_at(&step.rule, step.concl, step.inst.clone()))
    } else {
        EqDerivation::rule_at(&step.rule, step.concl, step.inst.clone())
    };
    let j = check_eq(env, &d)?;
    let (lhs, rhs): (Term, Term) = match &j {
        Judgment::CtxMorEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
        Judgment::TyMorEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
        Judgment::TyEq { lhs, rhs, .. } => (lhs.clone().into(), rhs.clone().into()),
        _ => {
            return Err(CheckError::BoundaryMismatch {
                path: "trace step".into(),
                reason: "step rule has no equality conclusion".into(),
            })
        }
    };
    let ok = term_conv(env, &lhs, &step.before) && term_conv(env, &rhs, &step.after);
    if ok {
        Ok(d)
    } else {
        Err(CheckError::BoundaryMismatch {
            path: format!("trace step {}", step.rule),
            reason: format!(
                "leaf proves {lhs} ≡ {rhs}, step rewrote {} to {}",
                step.before, step.after
            ),
        })
    }
}

fn term_conv(env: &Env, a: &Term, b: &Term) -> bool {
    if a == b {
        return true;
    }
    match (rewrite::nf_term(env, a), rewrite::nf_term(env, b)) {
        (Ok(na), Ok(nb)) => na == nb,
        _ => false,
    }
}
