//! Identity types in the groupoid model: the fiber of Id_A over (x, a, b)
//! is the discrete groupoid on hom_{A_x}(a, b).

use super::{total_layout, Family, FamMor, FiniteGroupoid, Functor, GArrow, GObj, GroupoidModel};
use crate::semantics::{ComprehensionModel, MResult, ModelError};

/// The discrete groupoid on the arrows o → o₂ of the fiber A_x.
fn hom_fiber(a: &Family, x: usize, o: usize, o2: usize) -> (GObj, Vec<usize>) {
    let fib = a.fibers[x].g();
    let arrows: Vec<usize> = fib
        .mors
        .iter()
        .enumerate()
        .filter(|(_, arr)| arr.src == o && arr.dst == o2)
        .map(|(i, _)| i)
        .collect();
    let n = arrows.len();
    let objs: Vec<String> = arrows.iter().map(|&i| fib.mors[i].name.clone()).collect();
    let mors: Vec<GArrow> = (0..n)
        .map(|i| GArrow {
            name: format!("1_{}", objs[i]),
            src: i,
            dst: i,
        })
        .collect();
    let comp = (0..n)
        .map(|g| (0..n).map(|f| if g == f { Some(g) } else { None }).collect())
        .collect();
    (
        GObj::new(FiniteGroupoid {
            objs,
            mors,
            comp,
            id_of: (0..n).collect(),
            inv: (0..n).collect(),
        }),
        arrows,
    )
}

/// The weakened family A[π_A] over the total of A.
pub fn weak_family(model: &GroupoidModel, a: &Family) -> MResult<Family> {
    let proj = model.comp_proj(a)?;
    model.reindex_ty(a, &proj)
}

/// Id_A as a family over the total of A[π_A].
pub fn id_obj(model: &GroupoidModel, a: &Family) -> MResult<Family> {
    let weak = weak_family(model, a)?;
    let wl = total_layout(&weak);
    let al = total_layout(a);
    let bg = a.base.g();
    // total(weak) objects: ((x,o) in total(A), o₂ in A_x)
    let mut fibers = Vec::new();
    let mut arrow_lists = Vec::new();
    for &(t_obj, o2) in &wl.objs {
        let (x, o) = al.objs[t_obj];
        let (f, arrows) = hom_fiber(a, x, o, o2);
        fibers.push(f);
        arrow_lists.push(arrows);
    }
    // transport along total(weak) arrows (β = (u,o,m), o₂, m₂):
    // p : o → o₂  ↦  m₂ ∘ T_u(p) ∘ m⁻¹
    let mut transport = Vec::new();
    for &(beta, o2, m2) in &wl.mors {
        let (u, e, m) = al.mors[beta];
        let x = bg.mors[u].src;
        let y = bg.mors[u].dst;
        let fib_y = a.fibers[y].g();
        let src_tot = al.obj_index[&(x, e)];
        let dst_tot = al.obj_index[&(y, fib_y.mors[m].dst)];
        let src_idx = wl.obj_index[&(src_tot, o2)];
        let dst_idx = wl.obj_index[&(dst_tot, fib_y.mors[m2].dst)];
        let src_arrows = &arrow_lists[src_idx];
        let dst_arrows = &arrow_lists[dst_idx];
        let t_u = &a.transport[u];
        let m_inv = fib_y.inv[m];
        let omap: Vec<usize> = src_arrows
            .iter()
            .map(|&p| {
                let moved = t_u.on_mor(p);
                let step = fib_y
                    .compose(m2, fib_y.compose(moved, m_inv).unwrap())
                    .unwrap();
                dst_arrows
                    .iter()
                    .position(|&q| q == step)
                    .ok_or(ModelError::FibrationLawViolation(
                        "id transport closure".into(),
                    ))
            })
            .collect::<MResult<Vec<_>>>()?;
        let mmap = omap.clone(); // discrete fibers
        transport.push(Functor::new(
            fibers[src_idx].clone(),
            fibers[dst_idx].clone(),
            omap,
            mmap,
        )?);
        let _ = x;
    }
    let weak_total = super::total_groupoid(&weak)?;
    Family::new(weak_total, fibers, transport)
}

/// refl : Γ.A → (Γ.A.A[π_A]).Id_A.
pub fn refl_mor(model: &GroupoidModel, a: &Family) -> MResult<Functor> {
    let idf = id_obj(model, a)?;
    let dom = super::total_groupoid(a)?;
    let cod = super::total_groupoid(&idf)?;
    let weak = weak_family(model, a)?;
    let wl = total_layout(&weak);
    let al = total_layout(a);
    let il = total_layout(&idf);
    let bg = a.base.g();
    let omap: Vec<usize> = al
        .objs
        .iter()
        .enumerate()
        .map(|(t_obj, &(x, o))| {
            let w_obj = wl.obj_index[&(t_obj, o)];
            let (_, arrows) = hom_fiber(a, x, o, o);
            let id_pos = arrows
                .iter()
                .position(|&p| p == a.fibers[x].g().id_of[o])
                .unwrap();
            il.obj_index[&(w_obj, id_pos)]
        })
        .collect();
    let mmap: Vec<usize> = al
        .mors
        .iter()
        .enumerate()
        .map(|(beta, &(u, o, m))| {
            // base part: the weak arrow (β, o, m); fiber part trivial
            let w_arrow = wl.mor_index[&(beta, o, m)];
            let x = bg.mors[u].src;
            let (_, src_arrows) = hom_fiber(a, x, o, o);
            let id_pos = src_arrows
                .iter()
                .position(|&p| p == a.fibers[x].g().id_of[o])
                .unwrap();
            il.mor_index[&(w_arrow, id_pos, transported_id_pos(model, a, &idf, w_arrow, id_pos))]
        })
        .collect();
    Functor::new(dom, cod, omap, mmap)
}

/// In a discrete fiber the only arrows are identities; the transported
/// object index doubles as the arrow index.
fn transported_id_pos(
    _model: &GroupoidModel,
    _a: &Family,
    idf: &Family,
    w_arrow: usize,
    src_pos: usize,
) -> usize {
    idf.transport[w_arrow].on_obj(src_pos)
}

/// j for a motive C over (Γ.A.A[π_A]).Id_A and base point d : Γ.A → ….C.
pub fn j_mor(model: &GroupoidModel, a: &Family, c: &Family, d: &Functor) -> MResult<Functor> {
    let idf = id_obj(model, a)?;
    let id_total = super::total_groupoid(&idf)?;
    if c.base != id_total {
        return Err(ModelError::ModelBoundaryMismatch(
            "j: motive not over the Id context".into(),
        ));
    }
    let dom = id_total.clone();
    let cod = super::total_groupoid(c)?;
    let il = total_layout(&idf);
    let cl = total_layout(c);
    let al = total_layout(a);
    let weak = weak_family(model, a)?;
    let wl = total_layout(&weak);
    let bg = a.base.g();
    let refl = refl_mor(model, a)?;
    // sanity: π_C ∘ d = refl
    let proj_c = model.comp_proj(c)?;
    let composite = proj_c.compose(d)?;
    if composite != refl {
        return Err(ModelError::ModelBoundaryMismatch(
            "j: base point is not over refl".into(),
        ));
    }
    // τ_P for P = ((x,o,o₂), p): the Id-total arrow from refl(x,o) to P
    let tau = |p_idx: usize| -> usize {
        let (w_obj, hom_pos) = il.objs[p_idx];
        let (t_obj, o2) = wl.objs[w_obj];
        let (x, o) = al.objs[t_obj];
        let fib = a.fibers[x].g();
        let (_, arrows) = hom_fiber(a, x, o, o2);
        let p = arrows[hom_pos];
        // weak arrow: base part = identity total(A)-arrow at (x,o), fiber part p
        let beta = al.mor_index[&(bg.id_of[x], o, fib.id_of[o])];
        let w_arrow = wl.mor_index[&(beta, o, p)];
        let (_, id_arrows) = hom_fiber(a, x, o, o);
        let id_pos = id_arrows.iter().position(|&q| q == fib.id_of[o]).unwrap();
        il.mor_index[&(w_arrow, id_pos, idf.transport[w_arrow].on_obj(id_pos))]
    };
    let omap: Vec<usize> = (0..il.objs.len())
        .map(|p_idx| {
            let (w_obj, _) = il.objs[p_idx];
            let (t_obj, _) = wl.objs[w_obj];
            // d's fiber part at (x,o)
            let (_, e) = cl.objs[d.on_obj(t_obj)];
            let t = tau(p_idx);
            cl.obj_index[&(p_idx, c.transport[t].on_obj(e))]
        })
        .collect();
    let mmap: Vec<usize> = (0..il.mors.len())
        .map(|g_idx| {
            let (w_arrow, _hom_pos, _) = il.mors[g_idx];
            let (beta, _o2, _m2) = wl.mors[w_arrow];
            // d maps the underlying total(A)-arrow β to (refl β, n_d)
            let (_, _, n_d) = cl.mors[d.on_mor(beta)];
            let src_idx = dom.g().mors[g_idx].src;
            let dst_idx = dom.g().mors[g_idx].dst;
            let t_q = tau(dst_idx);
            let n = c.transport[t_q].on_mor(n_d);
            // fiber object of j at the source of γ
            let e_src = cl.objs[omap[src_idx]].1;
            Ok(cl.mor_index[&(g_idx, e_src, n)])
        })
        .collect::<MResult<Vec<_>>>()?;
    Functor::new(dom, cod, omap, mmap)
}

/// Id_t : Id_A → Id_B[Γ.t.t].
pub fn id_map(model: &GroupoidModel, t: &FamMor) -> MResult<FamMor> {
    let a = &t.dom;
    let b = &t.cod;
    let id_a = id_obj(model, a)?;
    let id_b = id_obj(model, b)?;
    let diag = diagonal_functor(model, t)?;
    let target = model.reindex_ty(&id_b, &diag)?;
    let wl_a = total_layout(&weak_family(model, a)?);
    let al = total_layout(a);
    let bg = a.base.g();
    let mut comps = Vec::new();
    for (w_idx, &(t_obj, o2)) in wl_a.objs.iter().enumerate() {
        let (x, o) = al.objs[t_obj];
        let (_, arrows_a) = hom_fiber(a, x, o, o2);
        let (_, arrows_b) = hom_fiber(
            b,
            x,
            t.comps[x].on_obj(o),
            t.comps[x].on_obj(o2),
        );
        let omap: Vec<usize> = arrows_a
            .iter()
            .map(|&p| {
                let tp = t.comps[x].on_mor(p);
                arrows_b
                    .iter()
                    .position(|&q| q == tp)
                    .ok_or(ModelError::FibrationLawViolation("id_map image".into()))
            })
            .collect::<MResult<Vec<_>>>()?;
        let mmap = omap.clone();
        comps.push(Functor::new(
            id_a.fibers[w_idx].clone(),
            target.fibers[w_idx].clone(),
            omap,
            mmap,
        )?);
        let _ = bg;
    }
    FamMor::new(id_a, target, comps)
}

/// Γ.t.t : total(A[π_A]) → total(B[π_B]) sending (x, a₁, a₂) to
/// (x, t a₁, t a₂).
pub fn diagonal_functor(model: &GroupoidModel, t: &FamMor) -> MResult<Functor> {
    let a = &t.dom;
    let b = &t.cod;
    let weak_a = weak_family(model, a)?;
    let weak_b = weak_family(model, b)?;
    let dom = super::total_groupoid(&weak_a)?;
    let cod = super::total_groupoid(&weak_b)?;
    let wl_a = total_layout(&weak_a);
    let wl_b = total_layout(&weak_b);
    let al = total_layout(a);
    let bl = total_layout(b);
    let bg = a.base.g();
    let omap: Vec<usize> = wl_a
        .objs
        .iter()
        .map(|&(t_obj, o2)| {
            let (x, o) = al.objs[t_obj];
            let bt = bl.obj_index[&(x, t.comps[x].on_obj(o))];
            wl_b.obj_index[&(bt, t.comps[x].on_obj(o2))]
        })
        .collect();
    let mmap: Vec<usize> = wl_a
        .mors
        .iter()
        .map(|&(beta, o2, m2)| {
            let (u, o, m) = al.mors[beta];
            let (x, y) = (bg.mors[u].src, bg.mors[u].dst);
            let beta_b = bl.mor_index[&(u, t.comps[x].on_obj(o), t.comps[y].on_mor(m))];
            wl_b.mor_index[&(beta_b, t.comps[x].on_obj(o2), t.comps[y].on_mor(m2))]
        })
        .collect();
    Functor::new(dom, cod, omap, mmap)
}
