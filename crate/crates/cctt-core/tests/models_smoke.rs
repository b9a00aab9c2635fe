//! First exercises of the two concrete models: evaluation, soundness on
//! small goals, and a quick law-oracle pass at tiny bounds.

use cctt_core::env::{Env, Features, Mode};
use cctt_core::models::groupoid::{
    build_groupoid_family, FiniteGroupoid, Functor, GObj, GroupoidModel,
};
use cctt_core::models::heyting::{build_heyting_model, FiniteHeytingAlgebra, HPredicate, SetObj};
use cctt_core::semantics::laws::{law_oracle, FiniteModel, LawSet, OracleOptions};
use cctt_core::semantics::{soundness_check, ComprehensionModel, Interpretation, SoundnessVerdict};
use cctt_core::syntax::judgment::Judgment;
use cctt_core::syntax::term::{Ctx, CtxMor, Ty};
use std::collections::BTreeMap;

fn sierpinski_model() -> cctt_core::models::heyting::HeytingModel {
    build_heyting_model(FiniteHeytingAlgebra::sierpinski())
        .unwrap()
        .with_carrier(&["x", "y"])
}

fn pred(model: &cctt_core::models::heyting::HeytingModel, ctx: &SetObj, vals: &[(&str, &str)]) -> HPredicate {
    let val: BTreeMap<String, u8> = vals
        .iter()
        .map(|(k, v)| (k.to_string(), model.algebra.elem(v).unwrap()))
        .collect();
    HPredicate::new(ctx.clone(), val).unwrap()
}

#[test]
fn heyting_comprehension_is_top_cut() {
    let m = sierpinski_model();
    let ctx = SetObj::new(["x".to_string(), "y".to_string()]);
    let a = pred(&m, &ctx, &[("x", "top"), ("y", "u")]);
    let cut = m.comp_obj(&a).unwrap();
    assert_eq!(cut, SetObj::new(["x".to_string()]));
    // fiber morphism exists iff pointwise ≤
    let b = pred(&m, &ctx, &[("x", "top"), ("y", "top")]);
    assert_eq!(m.fiber_morphisms(&a, &b).len(), 1);
    assert_eq!(m.fiber_morphisms(&b, &a).len(), 0);
}

#[test]
fn heyting_pi_follows_the_definition() {
    let m = sierpinski_model();
    let ctx = SetObj::new(["x".to_string(), "y".to_string()]);
    // A(x)=⊤, A(y)=⊥; B over cut(A)={x}
    let a = pred(&m, &ctx, &[("x", "top"), ("y", "bot")]);
    let cut = m.comp_obj(&a).unwrap();
    let b = pred(&m, &cut, &[("x", "u")]);
    let pi = m.pi_obj(&a, &b).unwrap();
    assert_eq!(pi.val["x"], m.algebra.elem("u").unwrap());
    // A(y) < ⊤ forces Π(A,B)(y) = ⊤
    assert_eq!(pi.val["y"], m.algebra.top);
    let sig = m.sigma_obj(&a, &b).unwrap();
    assert_eq!(sig.val["x"], m.algebra.elem("u").unwrap());
    assert_eq!(sig.val["y"], m.algebra.bottom);
}

#[test]
fn heyting_soundness_on_unit_law() {
    let m = sierpinski_model();
    let env = Env::new(Mode::Split, Features::all());
    let g = Ctx::const_("G");
    let s = CtxMor::const_("s", g.clone(), g.clone());
    let mut interp: Interpretation<cctt_core::models::heyting::HeytingModel> =
        Interpretation::new();
    let ctx = SetObj::new(["x".to_string(), "y".to_string()]);
    interp.ctxs.insert("G".into(), ctx.clone());
    let swap = m
        .morphisms(&ctx, &ctx)
        .into_iter()
        .find(|f| f.apply("x") == "y" && f.apply("y") == "x")
        .unwrap();
    interp.ctxmors.insert("s".into(), swap);
    let goal = Judgment::CtxMorEq {
        dom: g.clone(),
        lhs: CtxMor::comp(s.clone(), CtxMor::id(g.clone())),
        rhs: s.clone(),
        cod: g.clone(),
    };
    assert_eq!(
        soundness_check(&goal, &interp, &m, &env).unwrap(),
        SoundnessVerdict::Equal
    );
    // negative control: s ≡ 1 is false for the swap
    let bad = Judgment::CtxMorEq {
        dom: g.clone(),
        lhs: s,
        rhs: CtxMor::id(g.clone()),
        cod: g,
    };
    assert!(matches!(
        soundness_check(&bad, &interp, &m, &env).unwrap(),
        SoundnessVerdict::Unequal { .. }
    ));
}

#[test]
fn heyting_law_oracle_on_tiny_bounds() {
    let m = build_heyting_model(FiniteHeytingAlgebra::boolean())
        .unwrap()
        .with_carrier(&["x"]);
    let opts = OracleOptions {
        fiber_bound: 64,
        parallel: false,
        selector: LawSet::All,
    };
    let report = law_oracle(&m, &opts).unwrap();
    for r in &report.results {
        assert!(
            r.counterexamples.is_empty(),
            "law {} failed: {:?}",
            r.law,
            r.counterexamples.first()
        );
    }
    assert!(report.total_instances() > 0);
}

fn interval_family() -> (GObj, cctt_core::models::groupoid::Family) {
    let base = GObj::new(FiniteGroupoid::interval());
    // fiber: two-point discrete groupoid everywhere; transport along the
    // iso swaps the points
    let fib = GObj::new(FiniteGroupoid::discrete(&["p", "q"]));
    let swap = Functor::new(fib.clone(), fib.clone(), vec![1, 0], vec![1, 0]).unwrap();
    let fam = build_groupoid_family(
        base.clone(),
        vec![fib.clone(), fib.clone()],
        vec![
            Functor::identity(&fib),
            Functor::identity(&fib),
            swap.clone(),
            swap,
        ],
    )
    .unwrap();
    (base, fam)
}

#[test]
fn groupoid_total_and_projection() {
    let m = GroupoidModel::new();
    let (base, fam) = interval_family();
    let total = m.comp_obj(&fam).unwrap();
    assert_eq!(total.g().objs.len(), 4);
    let proj = m.comp_proj(&fam).unwrap();
    assert_eq!(proj.cod, base);
    proj.validate().unwrap();
    total.g().validate().unwrap();
}

#[test]
fn groupoid_pi_fiber_counts_sections() {
    // base: point; A: 1-object trivial fiber; B over total(A) with a
    // 2-object discrete fiber ⟹ Π-fiber has 2 objects
    let m = GroupoidModel::new();
    let point = GObj::new(FiniteGroupoid::point());
    let a = cctt_core::models::groupoid::Family::constant(point.clone(), point.clone());
    let total_a = m.comp_obj(&a).unwrap();
    let two = GObj::new(FiniteGroupoid::discrete(&["p", "q"]));
    let b = cctt_core::models::groupoid::Family::constant(total_a, two);
    let pi = m.pi_obj(&a, &b).unwrap();
    assert_eq!(pi.fibers[0].g().objs.len(), 2);
    let sig = m.sigma_obj(&a, &b).unwrap();
    assert_eq!(sig.fibers[0].g().objs.len(), 2);
}

#[test]
fn groupoid_id_fiber_is_hom() {
    let m = GroupoidModel::new();
    let point = GObj::new(FiniteGroupoid::point());
    let z2 = GObj::new(FiniteGroupoid::z2());
    let a = cctt_core::models::groupoid::Family::constant(point.clone(), z2);
    let idf = m.id_obj(&a).unwrap();
    // fibers over (•, x, y) are hom(x, y) = 2 elements each
    for f in idf.fibers.iter() {
        assert_eq!(f.g().objs.len(), 2);
    }
    let refl = m.refl_mor(&a).unwrap();
    refl.validate().unwrap();
    // j ∘ refl = d for every motive C and base point d within a small bound
    let id_total = m.comp_obj(&idf).unwrap();
    let motives = m.fiber_objects(&id_total, 1000).unwrap();
    let total_a = m.comp_obj(&a).unwrap();
    let mut checked = 0;
    for c in motives.iter().take(12) {
        let total_c = m.comp_obj(c).unwrap();
        let proj_c = m.comp_proj(c).unwrap();
        for d in m.morphisms(&total_a, &total_c) {
            if m.compose(&proj_c, &d).unwrap() != refl {
                continue;
            }
            let j = m.j_mor(&a, c, &d).unwrap();
            assert_eq!(m.compose(&j, &refl).unwrap(), d);
            checked += 1;
        }
    }
    assert!(checked > 0, "no (C, d) pairs exercised");
}

#[test]
fn groupoid_law_oracle_point_base() {
    let point = GObj::new(FiniteGroupoid::point());
    let two = GObj::new(FiniteGroupoid::discrete(&["p", "q"]));
    let m = GroupoidModel::new()
        .with_base_seed(point.clone())
        .with_fiber_catalog(vec![point, two]);
    let opts = OracleOptions {
        fiber_bound: 64,
        parallel: false,
        selector: LawSet::Fibration,
    };
    let report = law_oracle(&m, &opts).unwrap();
    for r in &report.results {
        assert!(
            r.counterexamples.is_empty(),
            "law {} failed: {:?}",
            r.law,
            r.counterexamples.first()
        );
    }
}
