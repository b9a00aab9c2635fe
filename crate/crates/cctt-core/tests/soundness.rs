//! The soundness harness: every registered equality rule gets at least one
//! instantiated goal, checked by the kernel and then evaluated in both
//! concrete models.

mod common;

use std::collections::BTreeSet;

use cctt_core::env::Mode;
use cctt_core::kernel::check::check_eq;
use cctt_core::semantics::{soundness_check, SoundnessVerdict};
use cctt_core::syntax::judgment::Judgment;
use common::*;

#[test]
fn nonsplit_rule_goals_all_check() {
    let fx = fixture(Mode::NonSplit);
    let env = fx.theory.env();
    for goal in rule_goals(&fx, Mode::NonSplit) {
        let d = goal.derivation();
        if let Err(e) = check_eq(&env, &d) {
            panic!("{}#{} failed to check: {e}", goal.rule, goal.concl);
        }
    }
}

#[test]
fn split_rule_goals_all_check() {
    let fx = fixture(Mode::Split);
    let env = fx.theory.env();
    for goal in rule_goals(&fx, Mode::Split) {
        let d = goal.derivation();
        if let Err(e) = check_eq(&env, &d) {
            panic!("{}#{} failed to check: {e}", goal.rule, goal.concl);
        }
    }
}

#[test]
fn goal_list_covers_every_equality_rule() {
    for mode in [Mode::NonSplit, Mode::Split] {
        let fx = fixture(mode);
        let covered: BTreeSet<&str> = rule_goals(&fx, mode).iter().map(|g| g.rule).collect();
        let expected: BTreeSet<&str> = expected_equality_rules(mode).into_iter().collect();
        let missing: Vec<_> = expected.difference(&covered).collect();
        assert!(missing.is_empty(), "{mode:?} missing goals for {missing:?}");
    }
}

fn eval_goals(mode: Mode) {
    let fx = fixture(mode);
    let env = fx.theory.env();
    let hm = heyting_fixture_model();
    let hi = heyting_interpretation(&fx, &hm);
    let gm = groupoid_fixture_model();
    let gi = groupoid_interpretation(&fx, &gm);
    for goal in rule_goals(&fx, mode) {
        let d = goal.derivation();
        let j = match check_eq(&env, &d) {
            Ok(j) => j,
            Err(e) => panic!("{}#{}: {e}", goal.rule, goal.concl),
        };
        match soundness_check(&j, &hi, &hm, &env) {
            Ok(SoundnessVerdict::Equal) => {}
            other => panic!("heyting {}#{}: {other:?} for {j}", goal.rule, goal.concl),
        }
        match soundness_check(&j, &gi, &gm, &env) {
            Ok(SoundnessVerdict::Equal) => {}
            other => panic!("groupoid {}#{}: {other:?} for {j}", goal.rule, goal.concl),
        }
    }
}

#[test]
fn nonsplit_goals_sound_in_both_models() {
    eval_goals(Mode::NonSplit);
}

#[test]
fn split_goals_sound_in_both_models() {
    eval_goals(Mode::Split);
}

/// The postulated coherence facts must themselves hold in both models.
#[test]
fn postulates_are_semantically_valid() {
    let fx = fixture(Mode::NonSplit);
    let env = fx.theory.env();
    let hm = heyting_fixture_model();
    let hi = heyting_interpretation(&fx, &hm);
    let gm = groupoid_fixture_model();
    let gi = groupoid_interpretation(&fx, &gm);
    let mut checked = 0;
    for decl in &fx.theory.decls {
        if let cctt_core::theory::Decl::Axiom { name, judgment, .. } = decl {
            match soundness_check(judgment, &hi, &hm, &env) {
                Ok(SoundnessVerdict::Equal) => {}
                other => panic!("heyting postulate {name}: {other:?}"),
            }
            match soundness_check(judgment, &gi, &gm, &env) {
                Ok(SoundnessVerdict::Equal) => {}
                other => panic!("groupoid postulate {name}: {other:?}"),
            }
            checked += 1;
        }
    }
    assert!(checked >= 8, "expected all coherence postulates, saw {checked}");
}

/// A deliberately false goal evaluates as unequal (negative control for the
/// interpreter).
#[test]
fn false_goal_is_refuted() {
    let fx = fixture(Mode::NonSplit);
    let env = fx.theory.env();
    let hm = heyting_fixture_model();
    let hi = heyting_interpretation(&fx, &hm);
    let goal = Judgment::CtxMorEq {
        dom: fx.d.clone(),
        lhs: fx.sg.clone(),
        rhs: fx.rho.clone(),
        cod: fx.g.clone(),
    };
    match soundness_check(&goal, &hi, &hm, &env) {
        Ok(SoundnessVerdict::Unequal { .. }) => {}
        other => panic!("expected a refutation, got {other:?}"),
    }
}
