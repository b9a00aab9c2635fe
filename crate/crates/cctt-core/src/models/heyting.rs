//! The finite Heyting-algebra predicate model: contexts are finite sets,
//! types are H-valued predicates, type morphisms are pointwise entailments,
//! and comprehension is the ⊤-cut.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::semantics::{ComprehensionModel, MResult, ModelError};

pub type HElem = u8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHeytingAlgebra {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<HElem>>,
    pub join: Vec<Vec<HElem>>,
    pub imp: Vec<Vec<HElem>>,
    pub top: HElem,
    pub bottom: HElem,
}

impl FiniteHeytingAlgebra {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elem(&self, name: &str) -> Option<HElem> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    /// The two-element Boolean algebra.
    pub fn boolean() -> FiniteHeytingAlgebra {
        Self::chain(&["bot", "top"])
    }

    /// The opens of the Sierpiński space: ⊥ < u < ⊤.
    pub fn sierpinski() -> FiniteHeytingAlgebra {
        Self::chain(&["bot", "u", "top"])
    }

    /// A linear order as a Heyting algebra.
    pub fn chain(names: &[&str]) -> FiniteHeytingAlgebra {
        let n = names.len();
        let top = (n - 1) as HElem;
        let leq = (0..n)
            .map(|i| (0..n).map(|j| i <= j).collect())
            .collect();
        let meet = (0..n)
            .map(|i| (0..n).map(|j| i.min(j) as HElem).collect())
            .collect();
        let join = (0..n)
            .map(|i| (0..n).map(|j| i.max(j) as HElem).collect())
            .collect();
        let imp = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i <= j { top } else { j as HElem })
                    .collect()
            })
            .collect();
        FiniteHeytingAlgebra {
            names: names.iter().map(|s| s.to_string()).collect(),
            leq,
            meet,
            join,
            imp,
            top,
            bottom: 0,
        }
    }

    /// The four-element diamond: ⊥ < a, b < ⊤ with a, b incomparable.
    pub fn diamond() -> FiniteHeytingAlgebra {
        let names = ["bot", "a", "b", "top"];
        let leq_pairs = |i: usize, j: usize| i == j || i == 0 || j == 3;
        let n = 4;
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq_pairs(i, j)).collect()).collect();
        let meet_of = |i: usize, j: usize| -> usize {
            if leq_pairs(i, j) {
                i
            } else if leq_pairs(j, i) {
                j
            } else {
                0
            }
        };
        let join_of = |i: usize, j: usize| -> usize {
            if leq_pairs(i, j) {
                j
            } else if leq_pairs(j, i) {
                i
            } else {
                3
            }
        };
        let meet: Vec<Vec<HElem>> = (0..n)
            .map(|i| (0..n).map(|j| meet_of(i, j) as HElem).collect())
            .collect();
        let join: Vec<Vec<HElem>> = (0..n)
            .map(|i| (0..n).map(|j| join_of(i, j) as HElem).collect())
            .collect();
        // a ⇒ c = max { b | a ∧ b ≤ c }
        let mut imp = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut best = 0usize;
                for k in 0..n {
                    if leq_pairs(meet_of(i, k), j) && leq_pairs(best, k) {
                        best = k;
                    }
                }
                imp[i][j] = best as HElem;
            }
        }
        FiniteHeytingAlgebra {
            names: names.iter().map(|s| s.to_string()).collect(),
            leq,
            meet,
            join,
            imp,
            top: 3,
            bottom: 0,
        }
    }

    /// Exhaustively validates the bounded-lattice laws, distributivity, and
    /// residuation.
    pub fn validate(&self) -> MResult<()> {
        let n = self.size();
        let le = |i: HElem, j: HElem| self.leq[i as usize][j as usize];
        let viol = |law: &str, witness: String| ModelError::LatticeLawViolation {
            law: law.to_string(),
            witness,
        };
        for i in 0..n as HElem {
            if !le(i, i) {
                return Err(viol("reflexivity", self.names[i as usize].clone()));
            }
            if !le(self.bottom, i) || !le(i, self.top) {
                return Err(viol("bounds", self.names[i as usize].clone()));
            }
        }
        for i in 0..n as HElem {
            for j in 0..n as HElem {
                if le(i, j) && le(j, i) && i != j {
                    return Err(viol("antisymmetry", format!("{i},{j}")));
                }
                let m = self.meet[i as usize][j as usize];
                if !le(m, i) || !le(m, j) {
                    return Err(viol("meet-lower-bound", format!("{i},{j}")));
                }
                let jn = self.join[i as usize][j as usize];
                if !le(i, jn) || !le(j, jn) {
                    return Err(viol("join-upper-bound", format!("{i},{j}")));
                }
                for k in 0..n as HElem {
                    if le(k, i) && le(k, j) && !le(k, m) {
                        return Err(viol("meet-greatest", format!("{i},{j},{k}")));
                    }
                    if le(i, k) && le(j, k) && !le(jn, k) {
                        return Err(viol("join-least", format!("{i},{j},{k}")));
                    }
                    if !le(j, k) && le(i, j) && !le(i, self.top) {
                        unreachable!();
                    }
                    // transitivity
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(viol("transitivity", format!("{i},{j},{k}")));
                    }
                    // residuation: i ∧ k ≤ j ⟺ k ≤ i ⇒ j
                    let lhs = le(self.meet[i as usize][k as usize], j);
                    let rhs = le(k, self.imp[i as usize][j as usize]);
                    if lhs != rhs {
                        return Err(viol("residuation", format!("{i},{j},{k}")));
                    }
                    // distributivity
                    let d1 = self.meet[i as usize][self.join[j as usize][k as usize] as usize];
                    let d2 = self.join[self.meet[i as usize][j as usize] as usize]
                        [self.meet[i as usize][k as usize] as usize];
                    if d1 != d2 {
                        return Err(viol("distributivity", format!("{i},{j},{k}")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetObj(pub Arc<BTreeSet<String>>);

impl SetObj {
    pub fn new(elems: impl IntoIterator<Item = String>) -> SetObj {
        SetObj(Arc::new(elems.into_iter().collect()))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FnMor {
    pub dom: SetObj,
    pub cod: SetObj,
    pub map: Arc<BTreeMap<String, String>>,
}

impl FnMor {
    pub fn new(dom: SetObj, cod: SetObj, map: BTreeMap<String, String>) -> MResult<FnMor> {
        for x in dom.0.iter() {
            match map.get(x) {
                Some(y) if cod.0.contains(y) => {}
                _ => {
                    return Err(ModelError::ModelBoundaryMismatch(format!(
                        "function not total/valued at {x}"
                    )))
                }
            }
        }
        Ok(FnMor {
            dom,
            cod,
            map: Arc::new(map),
        })
    }

    pub fn apply(&self, x: &str) -> &str {
        &self.map[x]
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HPredicate {
    pub ctx: SetObj,
    pub val: Arc<BTreeMap<String, HElem>>,
}

impl HPredicate {
    pub fn new(ctx: SetObj, val: BTreeMap<String, HElem>) -> MResult<HPredicate> {
        for x in ctx.0.iter() {
            if !val.contains_key(x) {
                return Err(ModelError::ModelBoundaryMismatch(format!(
                    "predicate not total at {x}"
                )));
            }
        }
        Ok(HPredicate {
            ctx,
            val: Arc::new(val),
        })
    }
}

/// Vertical morphisms: at most one, existing iff the domain entails the
/// codomain pointwise (proof irrelevance).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HWitness {
    pub dom: HPredicate,
    pub cod: HPredicate,
}

/// Total-category morphisms: functions respecting the predicate bound.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HTotal {
    pub dom: HPredicate,
    pub cod: HPredicate,
    pub map: FnMor,
}

/// Deliberate defects for negative-control tests.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HeytingSabotage {
    /// pair_mor maps everything to a fixed element, breaking sigma-eta.
    SigmaPairCollapse,
}

pub struct HeytingModel {
    pub algebra: FiniteHeytingAlgebra,
    /// Declared context carriers; the base category is scoped to their
    /// subsets for law enumeration.
    pub carriers: Vec<SetObj>,
    pub sabotage: Option<HeytingSabotage>,
}

/// Validates the algebra and assembles the model.
pub fn build_heyting_model(algebra: FiniteHeytingAlgebra) -> MResult<HeytingModel> {
    algebra.validate()?;
    Ok(HeytingModel {
        algebra,
        carriers: Vec::new(),
        sabotage: None,
    })
}

impl HeytingModel {
    pub fn with_sabotage(mut self, s: HeytingSabotage) -> Self {
        self.sabotage = Some(s);
        self
    }

    pub fn with_carrier(mut self, elems: &[&str]) -> Self {
        self.carriers
            .push(SetObj::new(elems.iter().map(|s| s.to_string())));
        self
    }

    fn le(&self, a: HElem, b: HElem) -> bool {
        self.algebra.leq[a as usize][b as usize]
    }

    fn cut(&self, p: &HPredicate) -> SetObj {
        SetObj::new(
            p.ctx
                .0
                .iter()
                .filter(|x| p.val[*x] == self.algebra.top)
                .cloned(),
        )
    }

    fn inclusion(&self, sub: &SetObj, sup: &SetObj) -> MResult<FnMor> {
        FnMor::new(
            sub.clone(),
            sup.clone(),
            sub.0.iter().map(|x| (x.clone(), x.clone())).collect(),
        )
    }

    fn witness(&self, dom: &HPredicate, cod: &HPredicate) -> MResult<HWitness> {
        if dom.ctx != cod.ctx {
            return Err(ModelError::ModelBoundaryMismatch(
                "witness between predicates on different sets".into(),
            ));
        }
        for x in dom.ctx.0.iter() {
            if !self.le(dom.val[x], cod.val[x]) {
                return Err(ModelError::ModelBoundaryMismatch(format!(
                    "no entailment at {x}"
                )));
            }
        }
        Ok(HWitness {
            dom: dom.clone(),
            cod: cod.clone(),
        })
    }

    pub fn total(&self, dom: &HPredicate, cod: &HPredicate, map: FnMor) -> MResult<HTotal> {
        if map.dom != dom.ctx || map.cod != cod.ctx {
            return Err(ModelError::ModelBoundaryMismatch(
                "total morphism map has the wrong base".into(),
            ));
        }
        for x in dom.ctx.0.iter() {
            if !self.le(dom.val[x], cod.val[map.apply(x)]) {
                return Err(ModelError::ModelBoundaryMismatch(format!(
                    "bound violated at {x}"
                )));
            }
        }
        Ok(HTotal {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }
}

impl ComprehensionModel for HeytingModel {
    type Obj = SetObj;
    type Mor = FnMor;
    type TyObj = HPredicate;
    type TyMor = HWitness;

    fn is_split(&self) -> bool {
        true
    }

    fn mor_dom(&self, m: &FnMor) -> SetObj {
        m.dom.clone()
    }
    fn mor_cod(&self, m: &FnMor) -> SetObj {
        m.cod.clone()
    }
    fn identity(&self, o: &SetObj) -> FnMor {
        FnMor {
            dom: o.clone(),
            cod: o.clone(),
            map: Arc::new(o.0.iter().map(|x| (x.clone(), x.clone())).collect()),
        }
    }
    fn compose(&self, after: &FnMor, before: &FnMor) -> MResult<FnMor> {
        if before.cod != after.dom {
            return Err(ModelError::ModelBoundaryMismatch(
                "composition of incomposable functions".into(),
            ));
        }
        FnMor::new(
            before.dom.clone(),
            after.cod.clone(),
            before
                .dom
                .0
                .iter()
                .map(|x| (x.clone(), after.apply(before.apply(x)).to_string()))
                .collect(),
        )
    }
    fn terminal(&self) -> Option<SetObj> {
        Some(SetObj::new(["*".to_string()]))
    }
    fn bang(&self, o: &SetObj) -> MResult<FnMor> {
        FnMor::new(
            o.clone(),
            self.terminal().unwrap(),
            o.0.iter().map(|x| (x.clone(), "*".to_string())).collect(),
        )
    }

    fn ty_ctx(&self, a: &HPredicate) -> SetObj {
        a.ctx.clone()
    }
    fn vert_dom(&self, t: &HWitness) -> HPredicate {
        t.dom.clone()
    }
    fn vert_cod(&self, t: &HWitness) -> HPredicate {
        t.cod.clone()
    }
    fn vert_identity(&self, a: &HPredicate) -> HWitness {
        HWitness {
            dom: a.clone(),
            cod: a.clone(),
        }
    }
    fn vert_compose(&self, after: &HWitness, before: &HWitness) -> MResult<HWitness> {
        if before.cod != after.dom {
            return Err(ModelError::ModelBoundaryMismatch(
                "vertical composition mismatch".into(),
            ));
        }
        self.witness(&before.dom, &after.cod)
    }

    fn reindex_ty(&self, a: &HPredicate, s: &FnMor) -> MResult<HPredicate> {
        if s.cod != a.ctx {
            return Err(ModelError::ModelBoundaryMismatch(
                "reindexing along a morphism into the wrong set".into(),
            ));
        }
        HPredicate::new(
            s.dom.clone(),
            s.dom
                .0
                .iter()
                .map(|x| (x.clone(), a.val[s.apply(x)]))
                .collect(),
        )
    }
    fn reindex_tymor(&self, t: &HWitness, s: &FnMor) -> MResult<HWitness> {
        let d = self.reindex_ty(&t.dom, s)?;
        let c = self.reindex_ty(&t.cod, s)?;
        self.witness(&d, &c)
    }

    fn comp_obj(&self, a: &HPredicate) -> MResult<SetObj> {
        Ok(self.cut(a))
    }
    fn comp_proj(&self, a: &HPredicate) -> MResult<FnMor> {
        self.inclusion(&self.cut(a), &a.ctx)
    }
    fn comp_mor(&self, t: &HWitness) -> MResult<FnMor> {
        self.inclusion(&self.cut(&t.dom), &self.cut(&t.cod))
    }
    fn cart_lift(&self, a: &HPredicate, s: &FnMor) -> MResult<FnMor> {
        let re = self.reindex_ty(a, s)?;
        let dom = self.cut(&re);
        let cod = self.cut(a);
        FnMor::new(
            dom.clone(),
            cod,
            dom.0
                .iter()
                .map(|x| (x.clone(), s.apply(x).to_string()))
                .collect(),
        )
    }
    fn factor(&self, a: &HPredicate, s: &FnMor, w: &FnMor, theta: &FnMor) -> MResult<FnMor> {
        let re = self.reindex_ty(a, s)?;
        let target = self.cut(&re);
        // cone condition: θ must be s ∘ w pointwise into the cut
        let dom = w.dom.clone();
        let mut map = BTreeMap::new();
        for x in dom.0.iter() {
            let wx = w.apply(x);
            if !target.0.contains(wx) {
                return Err(ModelError::ModelBoundaryMismatch(format!(
                    "cone does not factor at {x}"
                )));
            }
            if theta.apply(x) != s.apply(wx) {
                return Err(ModelError::ModelBoundaryMismatch(format!(
                    "cone legs disagree at {x}"
                )));
            }
            map.insert(x.clone(), wx.to_string());
        }
        FnMor::new(dom, target, map)
    }

    fn has_pi(&self) -> bool {
        true
    }
    fn pi_obj(&self, a: &HPredicate, b: &HPredicate) -> MResult<HPredicate> {
        if b.ctx != self.cut(a) {
            return Err(ModelError::ModelBoundaryMismatch(
                "pi: second argument not over the comprehension".into(),
            ));
        }
        HPredicate::new(
            a.ctx.clone(),
            a.ctx
                .0
                .iter()
                .map(|x| {
                    let v = if a.val[x] == self.algebra.top {
                        b.val[x]
                    } else {
                        self.algebra.top
                    };
                    (x.clone(), v)
                })
                .collect(),
        )
    }
    fn app_mor(&self, a: &HPredicate, b: &HPredicate) -> MResult<FnMor> {
        // Γ.A.Π(A,B)[π_A] = Γ.A.B, and app is the identity on it
        let pi = self.pi_obj(a, b)?;
        let weak = self.reindex_ty(&pi, &self.comp_proj(a)?)?;
        let dom = self.cut(&weak);
        let cod = self.cut(b);
        if dom != cod {
            return Err(ModelError::ModelBoundaryMismatch(
                "app: comprehensions differ".into(),
            ));
        }
        Ok(self.identity(&dom))
    }
    fn lam(&self, a: &HPredicate, b: &HPredicate, section: &FnMor) -> MResult<FnMor> {
        let pi = self.pi_obj(a, b)?;
        let cut_pi = self.cut(&pi);
        if cut_pi != a.ctx {
            return Err(ModelError::ModelBoundaryMismatch(
                "lam: no section exists".into(),
            ));
        }
        let _ = section;
        Ok(self.identity(&a.ctx))
    }
    fn pi_map(&self, f: &HWitness, g: &HWitness, b: &HPredicate) -> MResult<HWitness> {
        // f : A' → A, g : B[Γ.f] → B', b the unrestricted B over cut(A)
        let a_prime = &f.dom;
        let a = &f.cod;
        let b_prime = &g.cod;
        let restricted = self.reindex_ty(b, &self.comp_mor(f)?)?;
        if restricted != g.dom {
            return Err(ModelError::ModelBoundaryMismatch(
                "pi_map: g's domain is not B[Γ.f]".into(),
            ));
        }
        let pi_ab = self.pi_obj(a, b)?;
        let pi_apbp = self.pi_obj(a_prime, b_prime)?;
        self.witness(&pi_ab, &pi_apbp)
    }

    fn has_sigma(&self) -> bool {
        true
    }
    fn sigma_obj(&self, a: &HPredicate, b: &HPredicate) -> MResult<HPredicate> {
        if b.ctx != self.cut(a) {
            return Err(ModelError::ModelBoundaryMismatch(
                "sigma: second argument not over the comprehension".into(),
            ));
        }
        HPredicate::new(
            a.ctx.clone(),
            a.ctx
                .0
                .iter()
                .map(|x| {
                    let v = if a.val[x] == self.algebra.top {
                        b.val[x]
                    } else {
                        self.algebra.bottom
                    };
                    (x.clone(), v)
                })
                .collect(),
        )
    }
    fn pair_mor(&self, a: &HPredicate, b: &HPredicate) -> MResult<FnMor> {
        let sig = self.sigma_obj(a, b)?;
        let dom = self.cut(b);
        let cod = self.cut(&sig);
        if dom != cod {
            return Err(ModelError::ModelBoundaryMismatch(
                "pair: comprehensions differ".into(),
            ));
        }
        if self.sabotage == Some(HeytingSabotage::SigmaPairCollapse) {
            if let Some(first) = cod.0.iter().next() {
                return FnMor::new(
                    dom.clone(),
                    cod.clone(),
                    dom.0.iter().map(|x| (x.clone(), first.clone())).collect(),
                );
            }
        }
        Ok(self.identity(&dom))
    }
    fn proj_mor(&self, a: &HPredicate, b: &HPredicate) -> MResult<FnMor> {
        let sig = self.sigma_obj(a, b)?;
        let dom = self.cut(&sig);
        Ok(self.identity(&dom))
    }
    fn sigma_map(&self, f: &HWitness, g: &HWitness, b_prime: &HPredicate) -> MResult<HWitness> {
        // f : A → A', g : B → B'[Γ.f], b_prime the unrestricted B' over cut(A')
        let a = &f.dom;
        let a_prime = &f.cod;
        let restricted = self.reindex_ty(b_prime, &self.comp_mor(f)?)?;
        if restricted != g.cod {
            return Err(ModelError::ModelBoundaryMismatch(
                "sigma_map: g's codomain is not B'[Γ.f]".into(),
            ));
        }
        let sig_ab = self.sigma_obj(a, &g.dom)?;
        let sig_apbp = self.sigma_obj(a_prime, b_prime)?;
        self.witness(&sig_ab, &sig_apbp)
    }

    fn has_id(&self) -> bool {
        true
    }
    fn id_obj(&self, a: &HPredicate) -> MResult<HPredicate> {
        // Γ.A.A[π_A] is the cut again; Id_A is constantly ⊤ (singleton type)
        let weak = self.reindex_ty(a, &self.comp_proj(a)?)?;
        let ctx = self.cut(&weak);
        HPredicate::new(
            ctx.clone(),
            ctx.0
                .iter()
                .map(|x| (x.clone(), self.algebra.top))
                .collect(),
        )
    }
    fn refl_mor(&self, a: &HPredicate) -> MResult<FnMor> {
        let idp = self.id_obj(a)?;
        let dom = self.cut(a);
        let cod = self.cut(&idp);
        FnMor::new(
            dom.clone(),
            cod,
            dom.0.iter().map(|x| (x.clone(), x.clone())).collect(),
        )
    }
    fn j_mor(&self, a: &HPredicate, c: &HPredicate, d: &FnMor) -> MResult<FnMor> {
        // all proofs collapse: j transports the base point, which is d itself
        let idp = self.id_obj(a)?;
        let dom = self.cut(&idp);
        if d.dom != self.cut(a) {
            return Err(ModelError::ModelBoundaryMismatch(
                "j: base point has the wrong domain".into(),
            ));
        }
        let cod = self.cut(c);
        FnMor::new(
            dom.clone(),
            cod,
            dom.0
                .iter()
                .map(|x| (x.clone(), d.apply(x).to_string()))
                .collect(),
        )
    }
    fn id_map(&self, t: &HWitness) -> MResult<HWitness> {
        let id_a = self.id_obj(&t.dom)?;
        let id_b = self.id_obj(&t.cod)?;
        // Id_B pulled back along Γ.t.t is constantly ⊤ on Id_A's context
        let pulled = HPredicate::new(
            id_a.ctx.clone(),
            id_a.ctx
                .0
                .iter()
                .map(|x| (x.clone(), self.algebra.top))
                .collect(),
        )?;
        let _ = id_b;
        self.witness(&id_a, &pulled)
    }
}




impl crate::semantics::laws::FiniteModel for HeytingModel {
    type TotMor = HTotal;

    fn objects(&self) -> Vec<SetObj> {
        let mut out = vec![self.terminal().unwrap()];
        for carrier in &self.carriers {
            let elems: Vec<String> = carrier.0.iter().cloned().collect();
            let n = elems.len();
            for mask in 0..(1u32 << n) {
                let subset: Vec<String> = elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| e.clone())
                    .collect();
                let s = SetObj::new(subset);
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }

    fn morphisms(&self, dom: &SetObj, cod: &SetObj) -> Vec<FnMor> {
        let d: Vec<&String> = dom.0.iter().collect();
        let c: Vec<&String> = cod.0.iter().collect();
        if d.is_empty() {
            return vec![FnMor {
                dom: dom.clone(),
                cod: cod.clone(),
                map: Arc::new(BTreeMap::new()),
            }];
        }
        if c.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let total = c.len().pow(d.len() as u32);
        for k in 0..total {
            let mut k = k;
            let mut map = BTreeMap::new();
            for x in &d {
                map.insert((*x).clone(), c[k % c.len()].clone());
                k /= c.len();
            }
            out.push(FnMor {
                dom: dom.clone(),
                cod: cod.clone(),
                map: Arc::new(map),
            });
        }
        out
    }

    fn fiber_objects(&self, ctx: &SetObj, bound: usize) -> MResult<Vec<HPredicate>> {
        let elems: Vec<&String> = ctx.0.iter().collect();
        let h = self.algebra.size();
        let count = h.pow(elems.len() as u32);
        if count > bound {
            return Err(ModelError::EnumerationBudgetExceeded(bound));
        }
        let mut out = Vec::new();
        for k in 0..count {
            let mut k = k;
            let mut val = BTreeMap::new();
            for x in &elems {
                val.insert((*x).clone(), (k % h) as HElem);
                k /= h;
            }
            out.push(HPredicate {
                ctx: ctx.clone(),
                val: Arc::new(val),
            });
        }
        Ok(out)
    }

    fn fiber_morphisms(&self, dom: &HPredicate, cod: &HPredicate) -> Vec<HWitness> {
        match self.witness(dom, cod) {
            Ok(w) => vec![w],
            Err(_) => Vec::new(),
        }
    }

    fn total_morphisms(&self, dom: &HPredicate, cod: &HPredicate) -> Vec<HTotal> {
        use crate::semantics::laws::FiniteModel;
        self.morphisms(&dom.ctx, &cod.ctx)
            .into_iter()
            .filter_map(|m| self.total(dom, cod, m).ok())
            .collect()
    }

    fn tot_base(&self, f: &HTotal) -> FnMor {
        f.map.clone()
    }

    fn tot_compose(&self, after: &HTotal, before: &HTotal) -> MResult<HTotal> {
        if before.cod != after.dom {
            return Err(ModelError::ModelBoundaryMismatch(
                "total composition mismatch".into(),
            ));
        }
        let map = self.compose(&after.map, &before.map)?;
        self.total(&before.dom, &after.cod, map)
    }

    fn tot_of_vertical(&self, t: &HWitness) -> HTotal {
        HTotal {
            dom: t.dom.clone(),
            cod: t.cod.clone(),
            map: self.identity(&t.dom.ctx),
        }
    }

    fn chosen_lift(&self, a: &HPredicate, u: &FnMor) -> MResult<HTotal> {
        let re = self.reindex_ty(a, u)?;
        self.total(&re, a, u.clone())
    }
}
