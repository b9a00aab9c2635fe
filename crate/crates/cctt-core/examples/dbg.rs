use cctt_core::env::{Env, Features, Mode};
use cctt_core::synth::mor_boundary;
use cctt_core::syntax::term::{Ctx, CtxMor, Ty};
use cctt_core::theory::elab;

fn main() {
    let env = Env::new(Mode::Split, Features::all());
    let g = Ctx::const_("G");
    let a = Ty::const_("A", g.clone());
    let ga = Ctx::ext(g.clone(), a.clone());
    let b0 = Ty::const_("B", ga.clone());
    let cb = CtxMor::const_("cb", ga.clone(), Ctx::ext(ga.clone(), b0.clone()));
    let bslot = Ty::sub(b0.clone(), CtxMor::comp(CtxMor::proj(b0.clone()), cb.clone()));
    let bsec = CtxMor::p2(cb.clone());
    // w'' = lift(π_A, Π) ∘ λ(p₂(b ∘ lift(π_A, A)))
    let lift_a = elab::lift(&env, &CtxMor::proj(a.clone()), &a).unwrap();
    let inner = CtxMor::p2(CtxMor::comp(bsec.clone(), lift_a));
    let lift_pi = elab::lift(&env, &CtxMor::proj(a.clone()), &Ty::pi(a.clone(), bslot.clone())).unwrap();
    let w2 = CtxMor::comp(lift_pi, CtxMor::lam(inner));
    match mor_boundary(&env, &w2) {
        Ok((d, c)) => println!("OK {d} -> {c}"),
        Err(e) => println!("ERR {e}"),
    }
    let p2w = CtxMor::p2(w2.clone());
    match mor_boundary(&env, &p2w) {
        Ok((d, c)) => println!("P2 OK {d} -> {c}"),
        Err(e) => println!("P2 ERR {e}"),
    }
    // and the nf of the composite that was stuck
    let pushed_pi = cctt_core::kernel::rewrite::nf_ty(&env, &Ty::sub(Ty::pi(a.clone(), bslot.clone()), CtxMor::proj(a.clone()))).unwrap();
    let stuck = CtxMor::comp(CtxMor::proj(pushed_pi), p2w);
    match cctt_core::kernel::rewrite::nf_ctxmor(&env, &stuck) {
        Ok(n) => println!("stuck nf = {n}"),
        Err(e) => println!("stuck ERR {e}"),
    }
}
