//! Kernel, theories, and finite semantic models for a type theory of
//! comprehension categories with coercive subtyping.
//!
//! The calculus comes in two flavours: the non-split variant, where
//! substitution is functorial up to explicit coercion isomorphisms and
//! equality goals are checked against derivation trees, and the split
//! variant, where substitution laws hold on the nose and a fuel-bounded
//! rewriter decides equality goals.

pub mod env;
pub mod error;
pub mod kernel;
pub mod models;
pub mod semantics;
pub mod synth;
pub mod syntax;
pub mod theory;

pub use env::{Env, FactStore, Features, Mode, DEFAULT_FUEL};
pub use error::CheckError;
pub use syntax::{Ctx, CtxMor, Dir, Judgment, Term, Ty, TyMor};
pub use theory::{Theory, TheoryBuilder};
