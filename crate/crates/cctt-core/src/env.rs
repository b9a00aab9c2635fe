//! Checking environment: calculus mode, feature flags, proven equalities,
//! rewrite fuel, and memo tables.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{CheckError, Result};
use crate::syntax::judgment::Judgment;
use crate::syntax::term::{Ctx, CtxMor, Ty, TyMor};

/// Default per-goal budget for recorded rewrite steps.
pub const DEFAULT_FUEL: u64 = 10_000;

/// Internal budget for silent normalization during boundary comparisons;
/// scaled from the goal budget with generous headroom.
fn internal_budget(goal_fuel: u64) -> u64 {
    goal_fuel.saturating_mul(200).max(2_000_000)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    NonSplit,
    Split,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Features {
    pub pi: bool,
    pub sigma: bool,
    pub id: bool,
    pub empty: bool,
}

impl Features {
    pub fn all() -> Features {
        Features {
            pi: true,
            sigma: true,
            id: true,
            empty: true,
        }
    }

    pub fn none() -> Features {
        Features {
            pi: false,
            sigma: false,
            id: false,
            empty: false,
        }
    }
}

impl Default for Features {
    fn default() -> Features {
        Features::all()
    }
}

/// Equality judgments the environment may cite: theory axioms and lemmas
/// registered at load time. Non-split side conditions are discharged against
/// this store.
#[derive(Default, Debug)]
pub struct FactStore {
    named: BTreeMap<String, Judgment>,
    eqs: Vec<Judgment>,
    /// Additional (name, judgment) pairs for directed matching — typically
    /// normalized variants of the named axioms.
    directed: Vec<(String, Judgment)>,
}

impl FactStore {
    pub fn new() -> FactStore {
        FactStore::default()
    }

    pub fn insert(&mut self, name: Option<String>, j: Judgment) {
        if let Some(n) = name {
            self.named.insert(n.clone(), j.clone());
            self.directed.push((n, j.clone()));
        }
        self.eqs.push(j);
    }

    /// Registers an extra directed variant of a named fact (e.g. its normal
    /// form) without touching the named lookup table.
    pub fn insert_directed_variant(&mut self, name: &str, j: Judgment) {
        self.eqs.push(j.clone());
        self.directed.push((name.to_string(), j));
    }

    pub fn lookup_named(&self, name: &str) -> Option<&Judgment> {
        self.named.get(name)
    }

    pub fn contains(&self, j: &Judgment) -> bool {
        if self.eqs.iter().any(|e| e == j) {
            return true;
        }
        match j.flipped() {
            Some(fl) => self.eqs.iter().any(|e| *e == fl),
            None => false,
        }
    }

    /// A size-decreasing rewrite of a context morphism licensed by a named
    /// fact, used by the normalizer. Returns (axiom name, flipped, result).
    pub fn directed_mor(&self, m: &CtxMor) -> Option<(String, bool, CtxMor)> {
        for (name, j) in &self.directed {
            if let Judgment::CtxMorEq { lhs, rhs, .. } = j {
                if lhs == m && term_size_mor(rhs) < term_size_mor(lhs) {
                    return Some((name.clone(), false, rhs.clone()));
                }
                if rhs == m && term_size_mor(lhs) < term_size_mor(rhs) {
                    return Some((name.clone(), true, lhs.clone()));
                }
            }
        }
        None
    }

    pub fn directed_tymor(&self, m: &TyMor) -> Option<(String, bool, TyMor)> {
        for (name, j) in &self.directed {
            if let Judgment::TyMorEq { lhs, rhs, .. } = j {
                if lhs == m && term_size_tymor(rhs) < term_size_tymor(lhs) {
                    return Some((name.clone(), false, rhs.clone()));
                }
                if rhs == m && term_size_tymor(lhs) < term_size_tymor(rhs) {
                    return Some((name.clone(), true, lhs.clone()));
                }
            }
        }
        None
    }
}

fn term_size_mor(m: &CtxMor) -> usize {
    use crate::syntax::term::CtxMorNode::*;
    match m.node() {
        Const(..) | Id(_) | Proj(_) | Bang(_) | App(..) | SigmaPair(..) | SigmaProj(..)
        | Refl(_) => 1,
        Comp(a, b) | Pair(a, b) => 1 + term_size_mor(a) + term_size_mor(b),
        P2(a) | Lam(a) => 1 + term_size_mor(a),
        ExtMor(_, t) => 1 + term_size_tymor(t),
        J(_, _, d) => 1 + term_size_mor(d),
    }
}

fn term_size_tymor(t: &TyMor) -> usize {
    use crate::syntax::term::TyMorNode::*;
    match t.node() {
        Const(..) | Id(_) | IsoId(..) | IsoComp(..) | IsoSub(..) | IsoPi(..) | IsoSigma(..)
        | IsoIdTy(..) => 1,
        Comp(a, b) | PiMap(a, b) | SigmaMap(a, b) => {
            1 + term_size_tymor(a) + term_size_tymor(b)
        }
        Sub(a, s) => 1 + term_size_tymor(a) + term_size_mor(s),
        IdMap(a) => 1 + term_size_tymor(a),
    }
}

/// Per-goal checking context. Cheap to build; memo tables are confined to
/// one environment, so goals checked in parallel each get their own.
pub struct Env {
    pub mode: Mode,
    pub features: Features,
    pub facts: Arc<FactStore>,
    fuel: Cell<u64>,
    initial_fuel: u64,
    goal_fuel: u64,
    // memo keys pin a clone of the keyed term so pointer identities stay
    // valid for the lifetime of the table
    pub(crate) memo_ctx: RefCell<HashMap<usize, (Ctx, ())>>,
    pub(crate) memo_ty: RefCell<HashMap<usize, (Ty, Ctx)>>,
    pub(crate) memo_ctxmor: RefCell<HashMap<usize, (CtxMor, (Ctx, Ctx))>>,
    pub(crate) memo_tymor: RefCell<HashMap<usize, (TyMor, (Ctx, Ty, Ty))>>,
    pub(crate) memo_nf_ctx: RefCell<HashMap<usize, (Ctx, Ctx)>>,
    pub(crate) memo_nf_ty: RefCell<HashMap<usize, (Ty, Ty)>>,
    pub(crate) memo_nf_mor: RefCell<HashMap<usize, (CtxMor, CtxMor)>>,
    pub(crate) memo_nf_tymor: RefCell<HashMap<usize, (TyMor, TyMor)>>,
}

impl Env {
    pub fn new(mode: Mode, features: Features) -> Env {
        Env::with_facts(mode, features, Arc::new(FactStore::new()))
    }

    pub fn with_facts(mode: Mode, features: Features, facts: Arc<FactStore>) -> Env {
        Env {
            mode,
            features,
            facts,
            fuel: Cell::new(internal_budget(DEFAULT_FUEL)),
            initial_fuel: internal_budget(DEFAULT_FUEL),
            goal_fuel: DEFAULT_FUEL,
            memo_ctx: RefCell::new(HashMap::new()),
            memo_ty: RefCell::new(HashMap::new()),
            memo_ctxmor: RefCell::new(HashMap::new()),
            memo_tymor: RefCell::new(HashMap::new()),
            memo_nf_ctx: RefCell::new(HashMap::new()),
            memo_nf_ty: RefCell::new(HashMap::new()),
            memo_nf_mor: RefCell::new(HashMap::new()),
            memo_nf_tymor: RefCell::new(HashMap::new()),
        }
    }

    pub fn set_fuel(&mut self, fuel: u64) {
        self.goal_fuel = fuel;
        self.fuel.set(internal_budget(fuel));
        self.initial_fuel = internal_budget(fuel);
    }

    /// The per-goal budget for recorded rewrite steps.
    pub fn goal_fuel(&self) -> u64 {
        self.goal_fuel
    }

    pub fn split(&self) -> bool {
        self.mode == Mode::Split
    }

    pub fn fuel_left(&self) -> u64 {
        self.fuel.get()
    }

    pub fn fuel_used(&self) -> u64 {
        self.initial_fuel - self.fuel.get()
    }

    /// Resets the fuel meter to the configured per-goal budget.
    pub fn refill_fuel(&self) {
        self.fuel.set(self.initial_fuel);
    }

    pub(crate) fn burn(&self) -> Result<()> {
        let f = self.fuel.get();
        if f == 0 {
            return Err(CheckError::FuelExhausted);
        }
        self.fuel.set(f - 1);
        Ok(())
    }

    pub fn require_feature(&self, flag: &'static str) -> Result<()> {
        let on = match flag {
            "pi" => self.features.pi,
            "sigma" => self.features.sigma,
            "id" => self.features.id,
            "empty" => self.features.empty,
            _ => false,
        };
        if on {
            Ok(())
        } else {
            Err(CheckError::MissingFeature(flag))
        }
    }
}
