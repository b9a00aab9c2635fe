//! Dependent sums in the groupoid model: the fiber of Σ(A,B) over x is the
//! total of B restricted to the fiber A_x.

use super::{total_layout, Family, FamMor, FiniteGroupoid, Functor, GArrow, GObj, GroupoidModel, GroupoidSabotage};
use crate::semantics::{ComprehensionModel, MResult, ModelError};

/// Canonical layout of the Σ fiber over base object x: objects (o, e),
/// arrows (m, n) with n : T_B[(1,m)](e) → e'.
pub struct SigmaFiberLayout {
    pub objs: Vec<(usize, usize)>,
    pub mors: Vec<(usize, usize, usize)>, // (m, e at src, n)
}

fn b_vert_transport(a: &Family, b: &Family, x: usize, m: usize) -> Functor {
    let al = total_layout(a);
    let e = a.fibers[x].g().mors[m].src;
    b.transport[al.mor_index[&(a.base.g().id_of[x], e, m)]].clone()
}

pub fn sigma_fiber_layout(a: &Family, b: &Family, x: usize) -> SigmaFiberLayout {
    let fib = a.fibers[x].g();
    let al = total_layout(a);
    let mut objs = Vec::new();
    for (o, _) in fib.objs.iter().enumerate() {
        let bf = b.fibers[al.obj_index[&(x, o)]].g();
        for (e, _) in bf.objs.iter().enumerate() {
            objs.push((o, e));
        }
    }
    let mut mors = Vec::new();
    for (m, arr) in fib.mors.iter().enumerate() {
        let t = b_vert_transport(a, b, x, m);
        let src_bf = b.fibers[al.obj_index[&(x, arr.src)]].g();
        let dst_bf = b.fibers[al.obj_index[&(x, arr.dst)]].g();
        for (e, _) in src_bf.objs.iter().enumerate() {
            let te = t.on_obj(e);
            for (n, narr) in dst_bf.mors.iter().enumerate() {
                if narr.src == te {
                    mors.push((m, e, n));
                }
            }
        }
    }
    SigmaFiberLayout { objs, mors }
}

pub fn sigma_fiber(a: &Family, b: &Family, x: usize) -> MResult<GObj> {
    let fib = a.fibers[x].g();
    let al = total_layout(a);
    let layout = sigma_fiber_layout(a, b, x);
    let obj_idx = |o: usize, e: usize| layout.objs.iter().position(|&p| p == (o, e)).unwrap();
    let objs: Vec<String> = layout
        .objs
        .iter()
        .map(|&(o, e)| {
            format!(
                "{},{}",
                fib.objs[o],
                b.fibers[al.obj_index[&(x, o)]].g().objs[e]
            )
        })
        .collect();
    let mors: Vec<GArrow> = layout
        .mors
        .iter()
        .enumerate()
        .map(|(k, &(m, e, n))| {
            let arr = &fib.mors[m];
            let dst_bf = b.fibers[al.obj_index[&(x, arr.dst)]].g();
            GArrow {
                name: format!("p{k}"),
                src: obj_idx(arr.src, e),
                dst: obj_idx(arr.dst, dst_bf.mors[n].dst),
            }
        })
        .collect();
    let nm = layout.mors.len();
    let mut comp = vec![vec![None; nm]; nm];
    for (k2, &(m2, e2, n2)) in layout.mors.iter().enumerate() {
        for (k1, &(m1, e1, n1)) in layout.mors.iter().enumerate() {
            let a1 = &fib.mors[m1];
            let a2 = &fib.mors[m2];
            if a2.src != a1.dst {
                continue;
            }
            let d1_bf = b.fibers[al.obj_index[&(x, a1.dst)]].g();
            if e2 != d1_bf.mors[n1].dst {
                continue;
            }
            let m = fib.compose(m2, m1).unwrap();
            let t2 = b_vert_transport(a, b, x, m2);
            let d2_bf = b.fibers[al.obj_index[&(x, a2.dst)]].g();
            let n = d2_bf
                .compose(n2, t2.on_mor(n1))
                .ok_or(ModelError::FibrationLawViolation("sigma comp".into()))?;
            let r = layout
                .mors
                .iter()
                .position(|&p| p == (m, e1, n))
                .ok_or(ModelError::FibrationLawViolation("sigma closure".into()))?;
            comp[k2][k1] = Some(r);
        }
    }
    let id_of = layout
        .objs
        .iter()
        .map(|&(o, e)| {
            let bf = b.fibers[al.obj_index[&(x, o)]].g();
            layout
                .mors
                .iter()
                .position(|&p| p == (fib.id_of[o], e, bf.id_of[e]))
                .unwrap()
        })
        .collect();
    let inv = layout
        .mors
        .iter()
        .map(|&(m, e, n)| {
            let arr = &fib.mors[m];
            let minv = fib.inv[m];
            let dst_bf = b.fibers[al.obj_index[&(x, arr.dst)]].g();
            let e2 = dst_bf.mors[n].dst;
            let tinv = b_vert_transport(a, b, x, minv);
            let src_bf = b.fibers[al.obj_index[&(x, arr.src)]].g();
            let ninv = src_bf.inv[tinv.on_mor(n)];
            layout
                .mors
                .iter()
                .position(|&p| p == (minv, e2, ninv))
                .unwrap()
        })
        .collect();
    let _ = &layout;
    Ok(GObj::new(FiniteGroupoid {
        objs,
        mors,
        comp,
        id_of,
        inv,
    }))
}

pub fn sigma_obj(model: &GroupoidModel, a: &Family, b: &Family) -> MResult<Family> {
    let total_a = super::total_groupoid(a)?;
    if b.base != total_a {
        return Err(ModelError::ModelBoundaryMismatch(
            "sigma: second family not over the comprehension of the first".into(),
        ));
    }
    let _ = model;
    let bg = a.base.g();
    let mut fibers = Vec::new();
    for x in 0..bg.objs.len() {
        fibers.push(sigma_fiber(a, b, x)?);
    }
    let al = total_layout(a);
    let mut transport = Vec::new();
    for (u, arr) in bg.mors.iter().enumerate() {
        let (x, y) = (arr.src, arr.dst);
        let src_l = sigma_fiber_layout(a, b, x);
        let dst_l = sigma_fiber_layout(a, b, y);
        let cart = |o: usize| {
            // T_B along the canonical arrow (u, o, id)
            let te = a.transport[u].on_obj(o);
            b.transport[al.mor_index[&(u, o, a.fibers[y].g().id_of[te])]].clone()
        };
        let omap: Vec<usize> = src_l
            .objs
            .iter()
            .map(|&(o, e)| {
                let o2 = a.transport[u].on_obj(o);
                let e2 = cart(o).on_obj(e);
                dst_l.objs.iter().position(|&p| p == (o2, e2)).unwrap()
            })
            .collect();
        let mmap: Vec<usize> = src_l
            .mors
            .iter()
            .map(|&(m, e, n)| {
                let m2 = a.transport[u].on_mor(m);
                let o_src = a.fibers[x].g().mors[m].src;
                let o_dst = a.fibers[x].g().mors[m].dst;
                let e2 = cart(o_src).on_obj(e);
                let n2 = cart(o_dst).on_mor(n);
                dst_l
                    .mors
                    .iter()
                    .position(|&p| p == (m2, e2, n2))
                    .ok_or(ModelError::FibrationLawViolation(
                        "sigma transport closure".into(),
                    ))
            })
            .collect::<MResult<Vec<_>>>()?;
        transport.push(Functor::new(
            fibers[x].clone(),
            fibers[y].clone(),
            omap,
            mmap,
        )?);
    }
    Family::new(a.base.clone(), fibers, transport)
}

/// pair : Γ.A.B → Γ.Σ(A,B).
pub fn pair_mor(model: &GroupoidModel, a: &Family, b: &Family) -> MResult<Functor> {
    let sig = sigma_obj(model, a, b)?;
    let dom = super::total_groupoid(b)?;
    let cod = super::total_groupoid(&sig)?;
    let bl = total_layout(b);
    let sl = total_layout(&sig);
    let al = total_layout(a);
    let bg = a.base.g();
    let omap: Vec<usize> = bl
        .objs
        .iter()
        .map(|&(t_obj, e)| {
            let (x, o) = al.objs[t_obj];
            let fl = sigma_fiber_layout(a, b, x);
            let k = fl.objs.iter().position(|&p| p == (o, e)).unwrap();
            sl.obj_index[&(x, k)]
        })
        .collect();
    let mmap: Vec<usize> = bl
        .mors
        .iter()
        .map(|&(beta, e, n)| {
            // β = (u, o, m) in total(A): decompose into the Σ transport over
            // u followed by the vertical Σ-fiber arrow (m, ·, n) at dst(u)
            let (u, o, m) = al.mors[beta];
            let y = bg.mors[u].dst;
            let src_fl = sigma_fiber_layout(a, b, bg.mors[u].src);
            let dst_fl = sigma_fiber_layout(a, b, y);
            let te = a.transport[u].on_obj(o);
            let cart_b =
                b.transport[al.mor_index[&(u, o, a.fibers[y].g().id_of[te])]].clone();
            let e_moved = cart_b.on_obj(e);
            let k_src = src_fl.objs.iter().position(|&p| p == (o, e)).unwrap();
            let p = dst_fl
                .mors
                .iter()
                .position(|&q| q == (m, e_moved, n))
                .ok_or(ModelError::FibrationLawViolation("pair arrow".into()))?;
            Ok(sl.mor_index[&(u, k_src, p)])
        })
        .collect::<MResult<Vec<_>>>()?;
    if model.sabotage == Some(GroupoidSabotage::SigmaPairSkew) {
        // deliberately wrong tables: rotate the object map and send every
        // arrow to an identity, producing a non-inverse "pairing"
        let rotated: Vec<usize> = omap
            .iter()
            .map(|&k| {
                let (x, fk) = sl.objs[k];
                let count = sl.objs.iter().filter(|&&(x2, _)| x2 == x).count();
                sl.obj_index[&(x, (fk + 1) % count)]
            })
            .collect();
        let idmap: Vec<usize> = bl
            .mors
            .iter()
            .enumerate()
            .map(|(mi, _)| {
                let src_tot = dom.g().mors[mi].src;
                cod.g().id_of[rotated[src_tot]]
            })
            .collect();
        return Ok(Functor {
            dom,
            cod,
            omap: std::sync::Arc::new(rotated),
            mmap: std::sync::Arc::new(idmap),
        });
    }
    Functor::new(dom, cod, omap, mmap)
}

/// proj : Γ.Σ(A,B) → Γ.A.B, inverse to pair.
pub fn proj_mor(model: &GroupoidModel, a: &Family, b: &Family) -> MResult<Functor> {
    let sig = sigma_obj(model, a, b)?;
    let dom = super::total_groupoid(&sig)?;
    let cod = super::total_groupoid(b)?;
    let sl = total_layout(&sig);
    let bl = total_layout(b);
    let al = total_layout(a);
    let bg = a.base.g();
    let omap: Vec<usize> = sl
        .objs
        .iter()
        .map(|&(x, k)| {
            let fl = sigma_fiber_layout(a, b, x);
            let (o, e) = fl.objs[k];
            bl.obj_index[&(al.obj_index[&(x, o)], e)]
        })
        .collect();
    let mmap: Vec<usize> = sl
        .mors
        .iter()
        .map(|&(u, k, p)| {
            let x = bg.mors[u].src;
            let y = bg.mors[u].dst;
            let src_fl = sigma_fiber_layout(a, b, x);
            let dst_fl = sigma_fiber_layout(a, b, y);
            let (o, e) = src_fl.objs[k];
            let (m, _e_moved, n) = dst_fl.mors[p];
            // total(B) arrow: base part (u, o, m) in total(A), fiber n
            let beta = al.mor_index[&(u, o, m)];
            bl.mor_index[&(beta, e, n)]
        })
        .collect();
    Functor::new(dom, cod, omap, mmap)
}

/// Σ_{f,g} : Σ(A,B) → Σ(A',B') for f : A → A', g : B → B'[Γ.f].
pub fn sigma_map(
    model: &GroupoidModel,
    f: &FamMor,
    g: &FamMor,
    b_prime: &Family,
) -> MResult<FamMor> {
    let a = &f.dom;
    let a_prime = &f.cod;
    let b = &g.dom;
    let chi_f = model.comp_mor(f)?;
    let expected = model.reindex_ty(b_prime, &chi_f)?;
    if g.cod != expected {
        return Err(ModelError::ModelBoundaryMismatch(
            "sigma_map: g's codomain is not B'[Γ.f]".into(),
        ));
    }
    let sig_ab = sigma_obj(model, a, b)?;
    let sig_apbp = sigma_obj(model, a_prime, b_prime)?;
    let al = total_layout(a);
    let bg = a.base.g();
    let mut comps = Vec::new();
    for x in 0..bg.objs.len() {
        let src_fl = sigma_fiber_layout(a, b, x);
        let dst_fl = sigma_fiber_layout(a_prime, b_prime, x);
        let omap: Vec<usize> = src_fl
            .objs
            .iter()
            .map(|&(o, e)| {
                let o2 = f.comps[x].on_obj(o);
                let e2 = g.comps[al.obj_index[&(x, o)]].on_obj(e);
                dst_fl
                    .objs
                    .iter()
                    .position(|&p| p == (o2, e2))
                    .ok_or(ModelError::FibrationLawViolation(
                        "sigma_map object".into(),
                    ))
            })
            .collect::<MResult<Vec<_>>>()?;
        let mmap: Vec<usize> = src_fl
            .mors
            .iter()
            .map(|&(m, e, n)| {
                let m2 = f.comps[x].on_mor(m);
                let o_src = a.fibers[x].g().mors[m].src;
                let o_dst = a.fibers[x].g().mors[m].dst;
                let e2 = g.comps[al.obj_index[&(x, o_src)]].on_obj(e);
                let n2 = g.comps[al.obj_index[&(x, o_dst)]].on_mor(n);
                dst_fl
                    .mors
                    .iter()
                    .position(|&p| p == (m2, e2, n2))
                    .ok_or(ModelError::FibrationLawViolation("sigma_map arrow".into()))
            })
            .collect::<MResult<Vec<_>>>()?;
        comps.push(Functor::new(
            sig_ab.fibers[x].clone(),
            sig_apbp.fibers[x].clone(),
            omap,
            mmap,
        )?);
    }
    FamMor::new(sig_ab, sig_apbp, comps)
}
