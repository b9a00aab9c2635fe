//! The finite groupoid model: contexts are finite groupoids, types are
//! split isofibrations, type morphisms are cleavage-preserving functors.
//!
//! Internally a split isofibration over Γ is kept in Grothendieck form — a
//! strictly functorial family of fiber groupoids with transport along every
//! base morphism. Totals, projections, and cleavages are derived views with
//! a canonical object/morphism ordering, so structural equality of the
//! tables is meaningful.

pub mod idty;
pub mod pi;
pub mod sigma;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::semantics::{ComprehensionModel, MResult, ModelError};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GArrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite groupoid as explicit tables. Identities are part of `mors`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteGroupoid {
    pub objs: Vec<String>,
    pub mors: Vec<GArrow>,
    /// comp[g][f] = g ∘ f (f applied first); None when incomposable.
    pub comp: Vec<Vec<Option<usize>>>,
    pub id_of: Vec<usize>,
    pub inv: Vec<usize>,
}

impl FiniteGroupoid {
    /// The one-object one-morphism groupoid.
    pub fn point() -> FiniteGroupoid {
        FiniteGroupoid {
            objs: vec!["*".into()],
            mors: vec![GArrow {
                name: "1".into(),
                src: 0,
                dst: 0,
            }],
            comp: vec![vec![Some(0)]],
            id_of: vec![0],
            inv: vec![0],
        }
    }

    /// A discrete groupoid on the given object names.
    pub fn discrete(names: &[&str]) -> FiniteGroupoid {
        let objs: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mors: Vec<GArrow> = objs
            .iter()
            .enumerate()
            .map(|(i, o)| GArrow {
                name: format!("1_{o}"),
                src: i,
                dst: i,
            })
            .collect();
        let n = mors.len();
        let comp = (0..n)
            .map(|g| {
                (0..n)
                    .map(|f| if g == f { Some(g) } else { None })
                    .collect()
            })
            .collect();
        FiniteGroupoid {
            objs,
            mors,
            comp,
            id_of: (0..n).collect(),
            inv: (0..n).collect(),
        }
    }

    /// Two objects with a single isomorphism between them.
    pub fn interval() -> FiniteGroupoid {
        let objs = vec!["a".to_string(), "b".to_string()];
        let mors = vec![
            GArrow {
                name: "1_a".into(),
                src: 0,
                dst: 0,
            },
            GArrow {
                name: "1_b".into(),
                src: 1,
                dst: 1,
            },
            GArrow {
                name: "f".into(),
                src: 0,
                dst: 1,
            },
            GArrow {
                name: "g".into(),
                src: 1,
                dst: 0,
            },
        ];
        let mut comp = vec![vec![None; 4]; 4];
        let table = [
            (0usize, 0usize, 0usize),
            (2, 0, 2),
            (3, 2, 0),
            (1, 1, 1),
            (3, 1, 3),
            (2, 3, 1),
            (0, 3, 3),
            (1, 2, 2),
        ];
        for (g, f, r) in table {
            comp[g][f] = Some(r);
        }
        FiniteGroupoid {
            objs,
            mors,
            comp,
            id_of: vec![0, 1],
            inv: vec![0, 1, 3, 2],
        }
    }

    /// One object with a ℤ/2 automorphism group.
    pub fn z2() -> FiniteGroupoid {
        FiniteGroupoid {
            objs: vec!["*".into()],
            mors: vec![
                GArrow {
                    name: "1".into(),
                    src: 0,
                    dst: 0,
                },
                GArrow {
                    name: "t".into(),
                    src: 0,
                    dst: 0,
                },
            ],
            comp: vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]],
            id_of: vec![0],
            inv: vec![0, 1],
        }
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g][f]
    }

    /// Validates the category laws, totality/closure of the tables, and
    /// invertibility of every morphism.
    pub fn validate(&self) -> MResult<()> {
        let viol = ModelError::FibrationLawViolation;
        if self.id_of.len() != self.objs.len()
            || self.inv.len() != self.mors.len()
            || self.comp.len() != self.mors.len()
        {
            return Err(viol("table sizes".into()));
        }
        for (o, &i) in self.id_of.iter().enumerate() {
            let m = &self.mors[i];
            if m.src != o || m.dst != o {
                return Err(viol(format!("identity of {o} has wrong boundary")));
            }
        }
        for (fi, f) in self.mors.iter().enumerate() {
            if f.src >= self.objs.len() || f.dst >= self.objs.len() {
                return Err(viol(format!("arrow {} out of range", f.name)));
            }
            if self.compose(fi, self.id_of[f.src]) != Some(fi)
                || self.compose(self.id_of[f.dst], fi) != Some(fi)
            {
                return Err(viol(format!("unit law at {}", f.name)));
            }
            let g = self.inv[fi];
            if self.mors[g].src != f.dst || self.mors[g].dst != f.src {
                return Err(viol(format!("inverse boundary at {}", f.name)));
            }
            if self.compose(g, fi) != Some(self.id_of[f.src])
                || self.compose(fi, g) != Some(self.id_of[f.dst])
            {
                return Err(viol(format!("inverse law at {}", f.name)));
            }
            for (gi, g) in self.mors.iter().enumerate() {
                let defined = g.src == f.dst;
                match self.compose(gi, fi) {
                    Some(h) => {
                        if !defined {
                            return Err(viol(format!(
                                "composite of incomposable {} after {}",
                                g.name, f.name
                            )));
                        }
                        let h = &self.mors[h];
                        if h.src != f.src || h.dst != g.dst {
                            return Err(viol(format!(
                                "composite boundary {} after {}",
                                g.name, f.name
                            )));
                        }
                    }
                    None => {
                        if defined {
                            return Err(viol(format!(
                                "missing composite {} after {}",
                                g.name, f.name
                            )));
                        }
                    }
                }
                for (hi, h) in self.mors.iter().enumerate() {
                    let _ = h;
                    if let (Some(gf), Some(hg)) = (self.compose(gi, fi), self.compose(hi, gi)) {
                        if self.compose(hi, gf) != self.compose(hg, fi) {
                            return Err(viol("associativity".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GObj(pub Arc<FiniteGroupoid>);

impl GObj {
    pub fn new(g: FiniteGroupoid) -> GObj {
        GObj(Arc::new(g))
    }
    pub fn g(&self) -> &FiniteGroupoid {
        &self.0
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Functor {
    pub dom: GObj,
    pub cod: GObj,
    pub omap: Arc<Vec<usize>>,
    pub mmap: Arc<Vec<usize>>,
}

impl Functor {
    pub fn new(dom: GObj, cod: GObj, omap: Vec<usize>, mmap: Vec<usize>) -> MResult<Functor> {
        let f = Functor {
            dom,
            cod,
            omap: Arc::new(omap),
            mmap: Arc::new(mmap),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(g: &GObj) -> Functor {
        Functor {
            dom: g.clone(),
            cod: g.clone(),
            omap: Arc::new((0..g.g().objs.len()).collect()),
            mmap: Arc::new((0..g.g().mors.len()).collect()),
        }
    }

    pub fn validate(&self) -> MResult<()> {
        let viol = ModelError::FibrationLawViolation;
        let d = self.dom.g();
        let c = self.cod.g();
        if self.omap.len() != d.objs.len() || self.mmap.len() != d.mors.len() {
            return Err(viol("functor table sizes".into()));
        }
        for (o, &io) in self.omap.iter().enumerate() {
            if io >= c.objs.len() {
                return Err(viol("functor object out of range".into()));
            }
            if self.mmap[d.id_of[o]] != c.id_of[io] {
                return Err(viol(format!("functor identity at object {o}")));
            }
        }
        for (fi, f) in d.mors.iter().enumerate() {
            let im = self.mmap[fi];
            if im >= c.mors.len() {
                return Err(viol("functor arrow out of range".into()));
            }
            let im = &c.mors[im];
            if im.src != self.omap[f.src] || im.dst != self.omap[f.dst] {
                return Err(viol(format!("functor boundary at {}", f.name)));
            }
        }
        for (gi, _) in d.mors.iter().enumerate() {
            for (fi, _) in d.mors.iter().enumerate() {
                if let Some(gf) = d.compose(gi, fi) {
                    let lhs = self.mmap[gf];
                    match c.compose(self.mmap[gi], self.mmap[fi]) {
                        Some(rhs) if rhs == lhs => {}
                        _ => return Err(viol("functor composition".into())),
                    }
                }
            }
        }
        Ok(())
    }

    pub fn on_obj(&self, o: usize) -> usize {
        self.omap[o]
    }
    pub fn on_mor(&self, m: usize) -> usize {
        self.mmap[m]
    }

    pub fn compose(&self, before: &Functor) -> MResult<Functor> {
        if before.cod != self.dom {
            return Err(ModelError::ModelBoundaryMismatch(
                "functor composition mismatch".into(),
            ));
        }
        Ok(Functor {
            dom: before.dom.clone(),
            cod: self.cod.clone(),
            omap: Arc::new(before.omap.iter().map(|&o| self.omap[o]).collect()),
            mmap: Arc::new(before.mmap.iter().map(|&m| self.mmap[m]).collect()),
        })
    }
}

/// A split isofibration over `base` in Grothendieck form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Family {
    pub base: GObj,
    pub fibers: Arc<Vec<GObj>>,
    /// transport[u] : fiber(src u) → fiber(dst u)
    pub transport: Arc<Vec<Functor>>,
}

impl Family {
    pub fn new(base: GObj, fibers: Vec<GObj>, transport: Vec<Functor>) -> MResult<Family> {
        let f = Family {
            base,
            fibers: Arc::new(fibers),
            transport: Arc::new(transport),
        };
        f.validate()?;
        Ok(f)
    }

    /// A constant family.
    pub fn constant(base: GObj, fiber: GObj) -> Family {
        let fibers = vec![fiber.clone(); base.g().objs.len()];
        let transport = base
            .g()
            .mors
            .iter()
            .map(|_| Functor::identity(&fiber))
            .collect();
        Family {
            base,
            fibers: Arc::new(fibers),
            transport: Arc::new(transport),
        }
    }

    pub fn validate(&self) -> MResult<()> {
        let viol = ModelError::FibrationLawViolation;
        let b = self.base.g();
        if self.fibers.len() != b.objs.len() || self.transport.len() != b.mors.len() {
            return Err(viol("family table sizes".into()));
        }
        for (ui, u) in b.mors.iter().enumerate() {
            let t = &self.transport[ui];
            t.validate()?;
            if t.dom != self.fibers[u.src] || t.cod != self.fibers[u.dst] {
                return Err(viol(format!("transport boundary at {}", u.name)));
            }
        }
        // split laws: transports respect identities and composites strictly
        for (o, _) in b.objs.iter().enumerate() {
            if self.transport[b.id_of[o]] != Functor::identity(&self.fibers[o]) {
                return Err(viol(format!("chosen lift of identity at object {o}")));
            }
        }
        for (ui, _) in b.mors.iter().enumerate() {
            for (vi, _) in b.mors.iter().enumerate() {
                if let Some(uv) = b.compose(ui, vi) {
                    let lhs = &self.transport[uv];
                    let rhs = self.transport[ui].compose(&self.transport[vi])?;
                    if *lhs != rhs {
                        return Err(viol("chosen lift of a composite".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A cleavage-preserving functor over the identity: one fiber functor per
/// base object, commuting with the transports.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FamMor {
    pub dom: Family,
    pub cod: Family,
    pub comps: Arc<Vec<Functor>>,
}

impl FamMor {
    pub fn new(dom: Family, cod: Family, comps: Vec<Functor>) -> MResult<FamMor> {
        let f = FamMor {
            dom,
            cod,
            comps: Arc::new(comps),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> MResult<()> {
        let viol = ModelError::FibrationLawViolation;
        if self.dom.base != self.cod.base {
            return Err(viol("vertical morphism across different bases".into()));
        }
        let b = self.dom.base.g();
        if self.comps.len() != b.objs.len() {
            return Err(viol("component count".into()));
        }
        for (o, c) in self.comps.iter().enumerate() {
            if c.dom != self.dom.fibers[o] || c.cod != self.cod.fibers[o] {
                return Err(viol(format!("component boundary at object {o}")));
            }
        }
        for (ui, u) in b.mors.iter().enumerate() {
            let lhs = self.comps[u.dst].compose(&self.dom.transport[ui])?;
            let rhs = self.cod.transport[ui].compose(&self.comps[u.src])?;
            if lhs != rhs {
                return Err(viol(format!("cleavage not preserved at {}", u.name)));
            }
        }
        Ok(())
    }
}

/// Total-category morphisms over an arbitrary base functor; used by the law
/// oracle's cartesianness and fullness checks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GTotal {
    pub dom: Family,
    pub cod: Family,
    pub base: Functor,
    pub comps: Arc<Vec<Functor>>,
}

impl GTotal {
    pub fn new(dom: Family, cod: Family, base: Functor, comps: Vec<Functor>) -> MResult<GTotal> {
        let t = GTotal {
            dom,
            cod,
            base,
            comps: Arc::new(comps),
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> MResult<()> {
        let viol = ModelError::FibrationLawViolation;
        if self.base.dom != self.dom.base || self.base.cod != self.cod.base {
            return Err(viol("total morphism base boundary".into()));
        }
        let b = self.dom.base.g();
        if self.comps.len() != b.objs.len() {
            return Err(viol("total morphism component count".into()));
        }
        for (o, c) in self.comps.iter().enumerate() {
            if c.dom != self.dom.fibers[o] || c.cod != self.cod.fibers[self.base.on_obj(o)] {
                return Err(viol(format!("total component boundary at {o}")));
            }
        }
        for (ui, u) in b.mors.iter().enumerate() {
            let lhs = self.comps[u.dst].compose(&self.dom.transport[ui])?;
            let rhs = self.cod.transport[self.base.on_mor(ui)].compose(&self.comps[u.src])?;
            if lhs != rhs {
                return Err(viol(format!("chosen lifts not preserved at {}", u.name)));
            }
        }
        Ok(())
    }
}

/// Canonical layout of the Grothendieck total of a family.
pub struct TotalLayout {
    /// (base object, fiber object) per total object, in canonical order.
    pub objs: Vec<(usize, usize)>,
    pub obj_index: BTreeMap<(usize, usize), usize>,
    /// (base arrow u, fiber object e at src u, fiber arrow m with
    /// src m = T_u e) per total arrow.
    pub mors: Vec<(usize, usize, usize)>,
    pub mor_index: BTreeMap<(usize, usize, usize), usize>,
}

pub fn total_layout(fam: &Family) -> TotalLayout {
    let b = fam.base.g();
    let mut objs = Vec::new();
    let mut obj_index = BTreeMap::new();
    for (x, _) in b.objs.iter().enumerate() {
        for (e, _) in fam.fibers[x].g().objs.iter().enumerate() {
            obj_index.insert((x, e), objs.len());
            objs.push((x, e));
        }
    }
    let mut mors = Vec::new();
    let mut mor_index = BTreeMap::new();
    for (u, arr) in b.mors.iter().enumerate() {
        let t = &fam.transport[u];
        for (e, _) in fam.fibers[arr.src].g().objs.iter().enumerate() {
            let te = t.on_obj(e);
            for (m, marr) in fam.fibers[arr.dst].g().mors.iter().enumerate() {
                if marr.src == te {
                    mor_index.insert((u, e, m), mors.len());
                    mors.push((u, e, m));
                }
            }
        }
    }
    TotalLayout {
        objs,
        obj_index,
        mors,
        mor_index,
    }
}

/// Builds the total groupoid tables for a family.
pub fn total_groupoid(fam: &Family) -> MResult<GObj> {
    let layout = total_layout(fam);
    let b = fam.base.g();
    let objs: Vec<String> = layout
        .objs
        .iter()
        .map(|&(x, e)| format!("{}.{}", b.objs[x], fam.fibers[x].g().objs[e]))
        .collect();
    let mors: Vec<GArrow> = layout
        .mors
        .iter()
        .map(|&(u, e, m)| {
            let uar = &b.mors[u];
            let src = layout.obj_index[&(uar.src, e)];
            let dst_fiber = fam.fibers[uar.dst].g();
            let dst = layout.obj_index[&(uar.dst, dst_fiber.mors[m].dst)];
            GArrow {
                name: format!(
                    "{}|{}|{}",
                    uar.name,
                    fam.fibers[uar.src].g().objs[e],
                    dst_fiber.mors[m].name
                ),
                src,
                dst,
            }
        })
        .collect();
    let n = mors.len();
    let mut comp = vec![vec![None; n]; n];
    for (i2, &(u2, e2, m2)) in layout.mors.iter().enumerate() {
        for (i1, &(u1, e1, m1)) in layout.mors.iter().enumerate() {
            // second after first
            let u1arr = &b.mors[u1];
            let f1_dst = fam.fibers[u1arr.dst].g().mors[m1].dst;
            if b.mors[u2].src != u1arr.dst || e2 != f1_dst {
                continue;
            }
            let u = match b.compose(u2, u1) {
                Some(u) => u,
                None => continue,
            };
            let t2 = &fam.transport[u2];
            let moved = t2.on_mor(m1);
            let fiber = fam.fibers[b.mors[u2].dst].g();
            let m = fiber
                .compose(m2, moved)
                .ok_or_else(|| ModelError::FibrationLawViolation("total composition".into()))?;
            comp[i2][i1] = Some(layout.mor_index[&(u, e1, m)]);
        }
    }
    let id_of = layout
        .objs
        .iter()
        .map(|&(x, e)| layout.mor_index[&(b.id_of[x], e, fam.fibers[x].g().id_of[e])])
        .collect();
    let inv = layout
        .mors
        .iter()
        .map(|&(u, e, m)| {
            let uinv = b.inv[u];
            let uarr = &b.mors[u];
            let e2 = fam.fibers[uarr.dst].g().mors[m].dst;
            let tinv = &fam.transport[uinv];
            let minv = fam.fibers[uarr.src].g().inv[tinv.on_mor(m)];
            layout.mor_index[&(uinv, e2, minv)]
        })
        .collect();
    let _ = &layout;
    let g = FiniteGroupoid {
        objs,
        mors,
        comp,
        id_of,
        inv,
    };
    Ok(GObj::new(g))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupoidSabotage {
    /// pair_mor swaps fiber objects where possible, breaking sigma-eta.
    SigmaPairSkew,
}

pub struct GroupoidModel {
    pub section_budget: usize,
    /// Base groupoids in scope for law enumeration.
    pub base_seeds: Vec<GObj>,
    /// Fiber groupoids used when enumerating families.
    pub fiber_catalog: Vec<GObj>,
    pub sabotage: Option<GroupoidSabotage>,
}

impl Default for GroupoidModel {
    fn default() -> Self {
        GroupoidModel {
            section_budget: 10_000,
            base_seeds: Vec::new(),
            fiber_catalog: Vec::new(),
            sabotage: None,
        }
    }
}

impl GroupoidModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_sabotage(mut self, s: GroupoidSabotage) -> Self {
        self.sabotage = Some(s);
        self
    }

    pub fn with_base_seed(mut self, g: GObj) -> Self {
        self.base_seeds.push(g);
        self
    }

    pub fn with_fiber_catalog(mut self, gs: Vec<GObj>) -> Self {
        self.fiber_catalog = gs;
        self
    }
}

/// All functors between two finite groupoids.
pub fn all_functors(dom: &GObj, cod: &GObj) -> Vec<Functor> {
    let d = dom.g();
    let c = cod.g();
    let mut out = Vec::new();
    let n_obj = d.objs.len();
    if n_obj == 0 {
        return out;
    }
    let obj_total = c.objs.len().checked_pow(n_obj as u32).unwrap_or(0);
    for k in 0..obj_total {
        let mut kk = k;
        let mut omap = Vec::with_capacity(n_obj);
        for _ in 0..n_obj {
            omap.push(kk % c.objs.len());
            kk /= c.objs.len();
        }
        // candidate arrow images per arrow
        let choices: Vec<Vec<usize>> = d
            .mors
            .iter()
            .map(|arr| {
                c.mors
                    .iter()
                    .enumerate()
                    .filter(|(_, im)| im.src == omap[arr.src] && im.dst == omap[arr.dst])
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if choices.iter().any(|v| v.is_empty()) {
            continue;
        }
        let mut scratch = vec![0usize; d.mors.len()];
        enumerate_assignments(&choices, &mut scratch, 0, &mut |mmap| {
            if let Ok(f) = Functor::new(dom.clone(), cod.clone(), omap.clone(), mmap.to_vec()) {
                out.push(f);
            }
        });
    }
    out
}

fn enumerate_assignments(
    choices: &[Vec<usize>],
    scratch: &mut Vec<usize>,
    i: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if i == choices.len() {
        f(scratch);
        return;
    }
    for &c in &choices[i] {
        scratch[i] = c;
        enumerate_assignments(choices, scratch, i + 1, f);
    }
}

/// Validates all tables and assembles a family.
pub fn build_groupoid_family(
    base: GObj,
    fibers: Vec<GObj>,
    transport: Vec<Functor>,
) -> MResult<Family> {
    base.g().validate()?;
    for f in &fibers {
        f.g().validate()?;
    }
    Family::new(base, fibers, transport)
}

impl ComprehensionModel for GroupoidModel {
    type Obj = GObj;
    type Mor = Functor;
    type TyObj = Family;
    type TyMor = FamMor;

    fn is_split(&self) -> bool {
        true
    }

    fn mor_dom(&self, m: &Functor) -> GObj {
        m.dom.clone()
    }
    fn mor_cod(&self, m: &Functor) -> GObj {
        m.cod.clone()
    }
    fn identity(&self, o: &GObj) -> Functor {
        Functor::identity(o)
    }
    fn compose(&self, after: &Functor, before: &Functor) -> MResult<Functor> {
        after.compose(before)
    }
    fn terminal(&self) -> Option<GObj> {
        Some(GObj::new(FiniteGroupoid::point()))
    }
    fn bang(&self, o: &GObj) -> MResult<Functor> {
        Functor::new(
            o.clone(),
            self.terminal().unwrap(),
            vec![0; o.g().objs.len()],
            vec![0; o.g().mors.len()],
        )
    }

    fn ty_ctx(&self, a: &Family) -> GObj {
        a.base.clone()
    }
    fn vert_dom(&self, t: &FamMor) -> Family {
        t.dom.clone()
    }
    fn vert_cod(&self, t: &FamMor) -> Family {
        t.cod.clone()
    }
    fn vert_identity(&self, a: &Family) -> FamMor {
        FamMor {
            dom: a.clone(),
            cod: a.clone(),
            comps: Arc::new(a.fibers.iter().map(Functor::identity).collect()),
        }
    }
    fn vert_compose(&self, after: &FamMor, before: &FamMor) -> MResult<FamMor> {
        if before.cod != after.dom {
            return Err(ModelError::ModelBoundaryMismatch(
                "vertical composition mismatch".into(),
            ));
        }
        let comps = after
            .comps
            .iter()
            .zip(before.comps.iter())
            .map(|(a, b)| a.compose(b))
            .collect::<MResult<Vec<_>>>()?;
        Ok(FamMor {
            dom: before.dom.clone(),
            cod: after.cod.clone(),
            comps: Arc::new(comps),
        })
    }

    fn reindex_ty(&self, a: &Family, s: &Functor) -> MResult<Family> {
        if s.cod != a.base {
            return Err(ModelError::ModelBoundaryMismatch(
                "reindexing along a functor into the wrong base".into(),
            ));
        }
        let fibers: Vec<GObj> = s.omap.iter().map(|&x| a.fibers[x].clone()).collect();
        let transport: Vec<Functor> = s.mmap.iter().map(|&u| a.transport[u].clone()).collect();
        Ok(Family {
            base: s.dom.clone(),
            fibers: Arc::new(fibers),
            transport: Arc::new(transport),
        })
    }
    fn reindex_tymor(&self, t: &FamMor, s: &Functor) -> MResult<FamMor> {
        let dom = self.reindex_ty(&t.dom, s)?;
        let cod = self.reindex_ty(&t.cod, s)?;
        let comps = s.omap.iter().map(|&x| t.comps[x].clone()).collect();
        Ok(FamMor {
            dom,
            cod,
            comps: Arc::new(comps),
        })
    }

    fn comp_obj(&self, a: &Family) -> MResult<GObj> {
        total_groupoid(a)
    }
    fn comp_proj(&self, a: &Family) -> MResult<Functor> {
        let total = total_groupoid(a)?;
        let layout = total_layout(a);
        let omap = layout.objs.iter().map(|&(x, _)| x).collect();
        let mmap = layout.mors.iter().map(|&(u, _, _)| u).collect();
        Functor::new(total, a.base.clone(), omap, mmap)
    }
    fn comp_mor(&self, t: &FamMor) -> MResult<Functor> {
        let dom_total = total_groupoid(&t.dom)?;
        let cod_total = total_groupoid(&t.cod)?;
        let dl = total_layout(&t.dom);
        let cl = total_layout(&t.cod);
        let omap = dl
            .objs
            .iter()
            .map(|&(x, e)| cl.obj_index[&(x, t.comps[x].on_obj(e))])
            .collect();
        let b = t.dom.base.g();
        let mmap = dl
            .mors
            .iter()
            .map(|&(u, e, m)| {
                let usrc = b.mors[u].src;
                let udst = b.mors[u].dst;
                cl.mor_index[&(u, t.comps[usrc].on_obj(e), t.comps[udst].on_mor(m))]
            })
            .collect();
        Functor::new(dom_total, cod_total, omap, mmap)
    }
    fn cart_lift(&self, a: &Family, s: &Functor) -> MResult<Functor> {
        let re = self.reindex_ty(a, s)?;
        let dom_total = total_groupoid(&re)?;
        let cod_total = total_groupoid(a)?;
        let dl = total_layout(&re);
        let cl = total_layout(a);
        let omap = dl
            .objs
            .iter()
            .map(|&(x, e)| cl.obj_index[&(s.on_obj(x), e)])
            .collect();
        let mmap = dl
            .mors
            .iter()
            .map(|&(u, e, m)| cl.mor_index[&(s.on_mor(u), e, m)])
            .collect();
        Functor::new(dom_total, cod_total, omap, mmap)
    }
    fn factor(&self, a: &Family, s: &Functor, w: &Functor, theta: &Functor) -> MResult<Functor> {
        let re = self.reindex_ty(a, s)?;
        let target = total_groupoid(&re)?;
        let tl = total_layout(&re);
        let al = total_layout(a);
        let x = w.dom.clone();
        if theta.dom != x {
            return Err(ModelError::ModelBoundaryMismatch(
                "cone legs have different apexes".into(),
            ));
        }
        let mut omap = Vec::with_capacity(x.g().objs.len());
        for o in 0..x.g().objs.len() {
            let (bx, e) = al.objs[theta.on_obj(o)];
            if s.on_obj(w.on_obj(o)) != bx {
                return Err(ModelError::ModelBoundaryMismatch(format!(
                    "cone does not commute at object {o}"
                )));
            }
            omap.push(tl.obj_index[&(w.on_obj(o), e)]);
        }
        let mut mmap = Vec::with_capacity(x.g().mors.len());
        for mi in 0..x.g().mors.len() {
            let (u, e, m) = al.mors[theta.on_mor(mi)];
            if s.on_mor(w.on_mor(mi)) != u {
                return Err(ModelError::ModelBoundaryMismatch(format!(
                    "cone does not commute at arrow {mi}"
                )));
            }
            mmap.push(tl.mor_index[&(w.on_mor(mi), e, m)]);
        }
        Functor::new(x, target, omap, mmap)
    }

    fn has_pi(&self) -> bool {
        true
    }
    fn pi_obj(&self, a: &Family, b: &Family) -> MResult<Family> {
        pi::pi_obj(self, a, b)
    }
    fn app_mor(&self, a: &Family, b: &Family) -> MResult<Functor> {
        pi::app_mor(self, a, b)
    }
    fn lam(&self, a: &Family, b: &Family, section: &Functor) -> MResult<Functor> {
        pi::lam(self, a, b, section)
    }
    fn pi_map(&self, f: &FamMor, g: &FamMor, b: &Family) -> MResult<FamMor> {
        pi::pi_map(self, f, g, b)
    }

    fn has_sigma(&self) -> bool {
        true
    }
    fn sigma_obj(&self, a: &Family, b: &Family) -> MResult<Family> {
        sigma::sigma_obj(self, a, b)
    }
    fn pair_mor(&self, a: &Family, b: &Family) -> MResult<Functor> {
        sigma::pair_mor(self, a, b)
    }
    fn proj_mor(&self, a: &Family, b: &Family) -> MResult<Functor> {
        sigma::proj_mor(self, a, b)
    }
    fn sigma_map(&self, f: &FamMor, g: &FamMor, b_prime: &Family) -> MResult<FamMor> {
        sigma::sigma_map(self, f, g, b_prime)
    }

    fn has_id(&self) -> bool {
        true
    }
    fn id_obj(&self, a: &Family) -> MResult<Family> {
        idty::id_obj(self, a)
    }
    fn refl_mor(&self, a: &Family) -> MResult<Functor> {
        idty::refl_mor(self, a)
    }
    fn j_mor(&self, a: &Family, c: &Family, d: &Functor) -> MResult<Functor> {
        idty::j_mor(self, a, c, d)
    }
    fn id_map(&self, t: &FamMor) -> MResult<FamMor> {
        idty::id_map(self, t)
    }
}


impl crate::semantics::laws::FiniteModel for GroupoidModel {
    type TotMor = GTotal;

    fn objects(&self) -> Vec<GObj> {
        let mut out = vec![self.terminal().unwrap()];
        for g in &self.base_seeds {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    fn morphisms(&self, dom: &GObj, cod: &GObj) -> Vec<Functor> {
        all_functors(dom, cod)
    }

    fn fiber_objects(&self, ctx: &GObj, bound: usize) -> MResult<Vec<Family>> {
        let catalog: Vec<GObj> = if self.fiber_catalog.is_empty() {
            vec![self.terminal().unwrap()]
        } else {
            self.fiber_catalog.clone()
        };
        let n_obj = ctx.g().objs.len();
        let mut out = Vec::new();
        let assign_total = catalog.len().checked_pow(n_obj as u32).unwrap_or(0);
        for k in 0..assign_total {
            let mut kk = k;
            let mut fibers = Vec::with_capacity(n_obj);
            for _ in 0..n_obj {
                fibers.push(catalog[kk % catalog.len()].clone());
                kk /= catalog.len();
            }
            // transport choices per base arrow, identities forced on
            // identity arrows
            let b = ctx.g();
            let choices: Vec<Vec<Functor>> = b
                .mors
                .iter()
                .enumerate()
                .map(|(ui, u)| {
                    if b.id_of[u.src] == ui {
                        vec![Functor::identity(&fibers[u.src])]
                    } else {
                        all_functors(&fibers[u.src], &fibers[u.dst])
                    }
                })
                .collect();
            if choices.iter().any(|v| v.is_empty()) {
                continue;
            }
            let mut scratch: Vec<usize> = vec![0; b.mors.len()];
            let idx_choices: Vec<Vec<usize>> =
                choices.iter().map(|v| (0..v.len()).collect()).collect();
            let mut overflow = false;
            enumerate_assignments(&idx_choices, &mut scratch, 0, &mut |pick| {
                if out.len() > bound || overflow {
                    overflow = true;
                    return;
                }
                let transport: Vec<Functor> = pick
                    .iter()
                    .enumerate()
                    .map(|(ui, &c)| choices[ui][c].clone())
                    .collect();
                if let Ok(fam) = Family::new(ctx.clone(), fibers.clone(), transport) {
                    out.push(fam);
                }
            });
            if overflow || out.len() > bound {
                return Err(ModelError::EnumerationBudgetExceeded(bound));
            }
        }
        Ok(out)
    }

    fn fiber_morphisms(&self, dom: &Family, cod: &Family) -> Vec<FamMor> {
        if dom.base != cod.base {
            return Vec::new();
        }
        let b = dom.base.g();
        let choices: Vec<Vec<Functor>> = (0..b.objs.len())
            .map(|x| all_functors(&dom.fibers[x], &cod.fibers[x]))
            .collect();
        if choices.iter().any(|v| v.is_empty()) {
            return Vec::new();
        }
        let idx_choices: Vec<Vec<usize>> =
            choices.iter().map(|v| (0..v.len()).collect()).collect();
        let mut scratch = vec![0usize; b.objs.len()];
        let mut out = Vec::new();
        enumerate_assignments(&idx_choices, &mut scratch, 0, &mut |pick| {
            let comps: Vec<Functor> = pick
                .iter()
                .enumerate()
                .map(|(x, &c)| choices[x][c].clone())
                .collect();
            if let Ok(fm) = FamMor::new(dom.clone(), cod.clone(), comps) {
                out.push(fm);
            }
        });
        out
    }

    fn total_morphisms(&self, dom: &Family, cod: &Family) -> Vec<GTotal> {
        let mut out = Vec::new();
        for base in all_functors(&dom.base, &cod.base) {
            let b = dom.base.g();
            let choices: Vec<Vec<Functor>> = (0..b.objs.len())
                .map(|x| all_functors(&dom.fibers[x], &cod.fibers[base.on_obj(x)]))
                .collect();
            if choices.iter().any(|v| v.is_empty()) {
                continue;
            }
            let idx_choices: Vec<Vec<usize>> =
                choices.iter().map(|v| (0..v.len()).collect()).collect();
            let mut scratch = vec![0usize; b.objs.len()];
            enumerate_assignments(&idx_choices, &mut scratch, 0, &mut |pick| {
                let comps: Vec<Functor> = pick
                    .iter()
                    .enumerate()
                    .map(|(x, &c)| choices[x][c].clone())
                    .collect();
                if let Ok(t) = GTotal::new(dom.clone(), cod.clone(), base.clone(), comps) {
                    out.push(t);
                }
            });
        }
        out
    }

    fn tot_base(&self, f: &GTotal) -> Functor {
        f.base.clone()
    }

    fn tot_compose(&self, after: &GTotal, before: &GTotal) -> MResult<GTotal> {
        if before.cod != after.dom {
            return Err(ModelError::ModelBoundaryMismatch(
                "total composition mismatch".into(),
            ));
        }
        let base = after.base.compose(&before.base)?;
        let comps = before
            .comps
            .iter()
            .enumerate()
            .map(|(x, c)| after.comps[before.base.on_obj(x)].compose(c))
            .collect::<MResult<Vec<_>>>()?;
        GTotal::new(before.dom.clone(), after.cod.clone(), base, comps)
    }

    fn tot_of_vertical(&self, t: &FamMor) -> GTotal {
        GTotal {
            dom: t.dom.clone(),
            cod: t.cod.clone(),
            base: Functor::identity(&t.dom.base),
            comps: t.comps.clone(),
        }
    }

    fn chosen_lift(&self, a: &Family, u: &Functor) -> MResult<GTotal> {
        let re = self.reindex_ty(a, u)?;
        let comps = (0..u.dom.g().objs.len())
            .map(|x| Functor::identity(&a.fibers[u.on_obj(x)]))
            .collect();
        GTotal::new(re, a.clone(), u.clone(), comps)
    }
}
