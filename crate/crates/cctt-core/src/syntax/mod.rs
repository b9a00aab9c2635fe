//! Terms and judgments.

pub mod judgment;
pub mod term;

pub use judgment::Judgment;
pub use term::{ast_equal, Ctx, CtxMor, CtxMorNode, CtxNode, Dir, Term, Ty, TyMor, TyMorNode, TyNode};
