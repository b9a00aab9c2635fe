//! The manifest test: registered rule labels are in bijection with the
//! figures' label lists, and every formation conclusion names exactly one
//! term constructor.

use std::collections::{BTreeMap, BTreeSet};

use cctt_core::env::Mode;
use cctt_core::kernel::rules::{registry, Concl, Figure};

const STRUCTURAL: &[&str] = &[
    "ctx-mor-id",
    "ctx-mor-comp",
    "ctx-id-unit",
    "ctx-comp-assoc",
    "ty-mor-id",
    "ty-mor-comp",
    "ty-id-unit",
    "ty-comp-assoc",
    "ext-ty",
    "ext-tm",
    "ext-id",
    "ext-comp",
    "ext-proj",
    "ext-c",
    "sub-ty",
    "sub-tm",
    "sub-prs-id",
    "sub-prs-comp",
    "sub-id",
    "sub-comp",
    "sub-tm-id",
    "sub-tm-comp",
    "sub-ext",
    "sub-proj",
    "sub-beta",
    "sub-eta",
    "sub-proj-id",
    "sub-proj-comp",
    "tm-sub-coh",
];

const CONGRUENCE: &[&str] = &[
    "ctx-eq-refl",
    "ctx-eq-sym",
    "ctx-eq-trans",
    "ctx-comp-cong-1",
    "ctx-comp-cong-2",
    "ty-eq-refl",
    "ty-eq-sym",
    "ty-eq-trans",
    "ty-comp-cong-1",
    "ty-comp-cong-2",
    "ext-cong",
    "sub-cong-tm",
    "sub-cong",
    "sub-cong-id",
    "sub-cong-comp-1",
    "sub-cong-comp-2",
    "sub-proj-cong",
    "sub-ext-cong",
];

const PI: &[&str] = &[
    "pi-form",
    "pi-intro",
    "pi-elim",
    "pi-beta",
    "pi-eta",
    "pi-sub",
    "sub-lam",
    "subt-pi",
    "subt-pi-id",
    "subt-pi-comp",
    "pi-sub-id",
    "pi-sub-comp",
];

const SIGMA: &[&str] = &[
    "sigma-form",
    "sigma-intro",
    "sigma-elim",
    "sigma-beta",
    "sigma-eta",
    "sigma-sub",
    "sub-pair",
    "subt-sigma",
    "subt-sigma-id",
    "subt-sigma-comp",
    "sigma-sub-id",
    "sigma-sub-comp",
];

const ID: &[&str] = &[
    "id-form",
    "id-intro",
    "id-elim",
    "id-beta",
    "id-sub",
    "sub-refl",
    "sub-j",
    "subt-id",
    "subt-id-i",
    "subt-id-c",
    "subt-id-refl",
    "subt-id-j",
    "id-sub-id",
    "id-sub-comp",
];

const EMPTY: &[&str] = &["empty-ctx", "empty-ctx-mor", "empty-ctx-mor-unique"];

/// Rules absent from the split tables (the coherence rules the split
/// calculus does not need).
const NOT_IN_SPLIT: &[&str] = &[
    "sub-cong-id",
    "sub-cong-comp-1",
    "sub-cong-comp-2",
    "pi-sub-id",
    "pi-sub-comp",
    "sigma-sub-id",
    "sigma-sub-comp",
    "id-sub-id",
    "id-sub-comp",
];

fn manifest() -> BTreeMap<&'static str, Figure> {
    let mut m = BTreeMap::new();
    for (labels, fig) in [
        (STRUCTURAL, Figure::Structural),
        (CONGRUENCE, Figure::Congruence),
        (PI, Figure::Pi),
        (SIGMA, Figure::Sigma),
        (ID, Figure::IdTy),
        (EMPTY, Figure::EmptyCtx),
    ] {
        for l in labels {
            assert!(m.insert(*l, fig).is_none(), "duplicate manifest label {l}");
        }
    }
    m
}

#[test]
fn registered_rules_match_the_manifest() {
    let manifest = manifest();
    let reg = registry();
    let registered: BTreeSet<&str> = reg.keys().copied().collect();
    let expected: BTreeSet<&str> = manifest.keys().copied().collect();
    let missing: Vec<_> = expected.difference(&registered).collect();
    let extra: Vec<_> = registered.difference(&expected).collect();
    assert!(missing.is_empty(), "unregistered labels: {missing:?}");
    assert!(extra.is_empty(), "extra labels: {extra:?}");
    for (id, spec) in reg.iter() {
        assert_eq!(spec.figure, manifest[id], "figure of {id}");
    }
}

#[test]
fn per_figure_counts() {
    assert_eq!(STRUCTURAL.len(), 29);
    assert_eq!(CONGRUENCE.len(), 18);
    assert_eq!(PI.len(), 12);
    assert_eq!(SIGMA.len(), 12);
    assert_eq!(ID.len(), 14);
    assert_eq!(EMPTY.len(), 3);
}

#[test]
fn every_rule_lives_in_at_least_one_mode_table() {
    for spec in registry().values() {
        assert!(
            spec.for_mode(Mode::NonSplit).is_some() || spec.for_mode(Mode::Split).is_some(),
            "{} registered in no mode",
            spec.id
        );
        let in_split = spec.for_mode(Mode::Split).is_some();
        let should_be_absent = NOT_IN_SPLIT.contains(&spec.id);
        assert_eq!(
            in_split, !should_be_absent,
            "split-table membership of {}",
            spec.id
        );
    }
}

#[test]
fn formation_rules_map_onto_constructors() {
    // one constructor per formation conclusion, and no constructor claimed
    // twice (the constants are declaration forms, not rule-backed)
    let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
    for spec in registry().values() {
        for mode in [Mode::NonSplit, Mode::Split] {
            if let Some(ms) = spec.for_mode(mode) {
                for c in ms.conclusions {
                    if let Concl::Formation(ctor) = c {
                        if let Some(prev) = seen.insert(ctor, spec.id) {
                            assert_eq!(
                                prev, spec.id,
                                "constructor {ctor} claimed by {prev} and {}",
                                spec.id
                            );
                        }
                    }
                }
            }
        }
    }
    let expected: BTreeSet<&str> = [
        "Id", "Comp", "IdT", "CompT", "Ext", "ExtMor", "Proj", "Sub", "SubTm", "IsoId",
        "IsoComp", "IsoSub", "Pair", "P2", "Pi", "Lam", "App", "IsoPi", "PiMap", "Sigma",
        "SigmaPair", "SigmaProj", "IsoSigma", "SigmaMap", "IdTy", "Refl", "J", "IsoIdTy",
        "IdMap", "Empty", "Bang",
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<&str> = seen.keys().copied().collect();
    assert_eq!(got, expected, "constructor coverage");
}
