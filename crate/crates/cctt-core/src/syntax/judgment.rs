//! The judgment forms of the calculus.

use std::fmt;

use super::term::{Ctx, CtxMor, Ty, TyMor};

/// One of the six judgment forms, plus the split-only type equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Judgment {
    IsCtx(Ctx),
    CtxMorJ { dom: Ctx, mor: CtxMor, cod: Ctx },
    CtxMorEq { dom: Ctx, lhs: CtxMor, rhs: CtxMor, cod: Ctx },
    IsTy { ctx: Ctx, ty: Ty },
    TyMorJ { ctx: Ctx, dom: Ty, mor: TyMor, cod: Ty },
    TyMorEq { ctx: Ctx, dom: Ty, lhs: TyMor, rhs: TyMor, cod: Ty },
    /// Split calculus only.
    TyEq { ctx: Ctx, lhs: Ty, rhs: Ty },
}

impl Judgment {
    pub fn is_equality(&self) -> bool {
        matches!(
            self,
            Judgment::CtxMorEq { .. } | Judgment::TyMorEq { .. } | Judgment::TyEq { .. }
        )
    }

    /// Swaps the two sides of an equality judgment.
    pub fn flipped(&self) -> Option<Judgment> {
        match self {
            Judgment::CtxMorEq { dom, lhs, rhs, cod } => Some(Judgment::CtxMorEq {
                dom: dom.clone(),
                lhs: rhs.clone(),
                rhs: lhs.clone(),
                cod: cod.clone(),
            }),
            Judgment::TyMorEq {
                ctx,
                dom,
                lhs,
                rhs,
                cod,
            } => Some(Judgment::TyMorEq {
                ctx: ctx.clone(),
                dom: dom.clone(),
                lhs: rhs.clone(),
                rhs: lhs.clone(),
                cod: cod.clone(),
            }),
            Judgment::TyEq { ctx, lhs, rhs } => Some(Judgment::TyEq {
                ctx: ctx.clone(),
                lhs: rhs.clone(),
                rhs: lhs.clone(),
            }),
            _ => None,
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgment::IsCtx(c) => write!(f, "{c} ctx"),
            Judgment::CtxMorJ { dom, mor, cod } => write!(f, "{dom} |- {mor} : {cod}"),
            Judgment::CtxMorEq { dom, lhs, rhs, cod } => {
                write!(f, "{dom} |- {lhs} == {rhs} : {cod}")
            }
            Judgment::IsTy { ctx, ty } => write!(f, "{ctx} |- {ty} type"),
            Judgment::TyMorJ { ctx, dom, mor, cod } => {
                write!(f, "{ctx} | {dom} |- {mor} : {cod}")
            }
            Judgment::TyMorEq {
                ctx,
                dom,
                lhs,
                rhs,
                cod,
            } => write!(f, "{ctx} | {dom} |- {lhs} == {rhs} : {cod}"),
            Judgment::TyEq { ctx, lhs, rhs } => write!(f, "{ctx} |- {lhs} == {rhs}"),
        }
    }
}
