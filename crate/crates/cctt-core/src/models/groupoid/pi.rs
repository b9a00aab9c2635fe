//! Dependent products in the groupoid model.
//!
//! The fiber of Π(A,B) over x is the groupoid of cleavage-compatible
//! sections of B over the fiber A_x — an object assignment plus a morphism
//! assignment forming a functor into the total of B — with vertical natural
//! transformations as morphisms.

use std::sync::Arc;

use super::{total_layout, Family, FamMor, FiniteGroupoid, Functor, GArrow, GObj, GroupoidModel};
use crate::semantics::{ComprehensionModel, MResult, ModelError};

/// A section of B over the fiber A_x: for each object o of A_x an object of
/// B at (x,o); for each arrow m : o → o' of A_x an arrow of the fiber of B
/// at (x,o') from T_B[(1_x, m)](σ o) to σ o'.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Section {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

/// Transport of B along the total arrow of A over 1_x with fiber part m.
fn b_transport_vertical(a: &Family, b: &Family, x: usize, m: usize) -> Functor {
    let al = total_layout(a);
    let base = a.base.g();
    let e = a.fibers[x].g().mors[m].src;
    let idx = al.mor_index[&(base.id_of[x], e, m)];
    b.transport[idx].clone()
}

/// Transport of B along the canonical cartesian arrow of A over u at fiber
/// object e: the arrow (u, e, id_{T_u e}).
fn b_transport_cart(a: &Family, b: &Family, u: usize, e: usize) -> Functor {
    let al = total_layout(a);
    let base = a.base.g();
    let udst = base.mors[u].dst;
    let te = a.transport[u].on_obj(e);
    let idx = al.mor_index[&(u, e, a.fibers[udst].g().id_of[te])];
    b.transport[idx].clone()
}

/// Enumerates the valid sections of B over the fiber A_x.
pub fn sections_over_fiber(
    model: &GroupoidModel,
    a: &Family,
    b: &Family,
    x: usize,
) -> MResult<Vec<Section>> {
    let fib = a.fibers[x].g();
    let al = total_layout(a);
    let n_obj = fib.objs.len();
    let n_mor = fib.mors.len();
    // candidate object assignments
    let obj_choices: Vec<Vec<usize>> = fib
        .objs
        .iter()
        .enumerate()
        .map(|(o, _)| {
            let bf = &b.fibers[al.obj_index[&(x, o)]];
            (0..bf.g().objs.len()).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut counter = 0usize;
    let mut obj_asst = vec![0usize; n_obj];
    enumerate_product(&obj_choices, &mut obj_asst, 0, &mut |objs| {
        counter += 1;
        if counter > model.section_budget {
            return Err(ModelError::SizeBudgetExceeded(format!(
                "more than {} candidate sections",
                model.section_budget
            )));
        }
        // candidate morphism assignments given the objects
        let mor_choices: Vec<Vec<usize>> = fib
            .mors
            .iter()
            .enumerate()
            .map(|(m, arr)| {
                let t = b_transport_vertical(a, b, x, m);
                let src_b = t.on_obj(objs[arr.src]);
                let dst_fiber = b.fibers[al.obj_index[&(x, arr.dst)]].g();
                dst_fiber
                    .mors
                    .iter()
                    .enumerate()
                    .filter(|(_, ba)| ba.src == src_b && ba.dst == objs[arr.dst])
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut mor_asst = vec![0usize; n_mor];
        enumerate_product(&mor_choices, &mut mor_asst, 0, &mut |mors| {
            let cand = Section {
                obj: objs.to_vec(),
                mor: mors.to_vec(),
            };
            if section_is_functorial(a, b, x, &cand) {
                out.push(cand);
            }
            Ok(())
        })?;
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

fn enumerate_product(
    choices: &[Vec<usize>],
    scratch: &mut Vec<usize>,
    i: usize,
    f: &mut dyn FnMut(&[usize]) -> MResult<()>,
) -> MResult<()> {
    if i == choices.len() {
        return f(scratch);
    }
    for &c in &choices[i] {
        scratch[i] = c;
        enumerate_product(choices, scratch, i + 1, f)?;
    }
    Ok(())
}

fn section_is_functorial(a: &Family, b: &Family, x: usize, s: &Section) -> bool {
    let fib = a.fibers[x].g();
    let al = total_layout(a);
    // identities
    for (o, _) in fib.objs.iter().enumerate() {
        let bf = b.fibers[al.obj_index[&(x, o)]].g();
        if s.mor[fib.id_of[o]] != bf.id_of[s.obj[o]] {
            return false;
        }
    }
    // σ(m2 ∘ m1) = σ(m2) ∘ T_B[(1,m2)](σ m1)
    for (m2, a2) in fib.mors.iter().enumerate() {
        for (m1, a1) in fib.mors.iter().enumerate() {
            if a1.dst != a2.src {
                continue;
            }
            let m21 = fib.compose(m2, m1).unwrap();
            let t2 = b_transport_vertical(a, b, x, m2);
            let moved = t2.on_mor(s.mor[m1]);
            let dst_fiber = b.fibers[al.obj_index[&(x, a2.dst)]].g();
            match dst_fiber.compose(s.mor[m2], moved) {
                Some(r) if r == s.mor[m21] => {}
                _ => return false,
            }
        }
    }
    true
}

/// Natural transformations between sections: one component per fiber object.
fn nat_transfs(
    a: &Family,
    b: &Family,
    x: usize,
    s1: &Section,
    s2: &Section,
) -> Vec<Vec<usize>> {
    let fib = a.fibers[x].g();
    let al = total_layout(a);
    let comp_choices: Vec<Vec<usize>> = fib
        .objs
        .iter()
        .enumerate()
        .map(|(o, _)| {
            let bf = b.fibers[al.obj_index[&(x, o)]].g();
            bf.mors
                .iter()
                .enumerate()
                .filter(|(_, arr)| arr.src == s1.obj[o] && arr.dst == s2.obj[o])
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut scratch = vec![0usize; fib.objs.len()];
    let _ = enumerate_product(&comp_choices, &mut scratch, 0, &mut |comps| {
        // naturality: σ2(m) ∘ T[(1,m)](η_o) = η_{o'} ∘ σ1(m)
        let natural = fib.mors.iter().enumerate().all(|(m, arr)| {
            let t = b_transport_vertical(a, b, x, m);
            let bf = b.fibers[al.obj_index[&(x, arr.dst)]].g();
            let lhs = bf.compose(s2.mor[m], t.on_mor(comps[arr.src]));
            let rhs = bf.compose(comps[arr.dst], s1.mor[m]);
            lhs.is_some() && lhs == rhs
        });
        if natural {
            out.push(comps.to_vec());
        }
        Ok(())
    });
    out
}

/// The Π-fiber groupoid over x, together with its section list.
pub fn pi_fiber(
    model: &GroupoidModel,
    a: &Family,
    b: &Family,
    x: usize,
) -> MResult<(GObj, Vec<Section>)> {
    let sections = sections_over_fiber(model, a, b, x)?;
    let fib = a.fibers[x].g();
    let al = total_layout(a);
    let mut mors = Vec::new();
    let mut comp_data = Vec::new();
    for (i1, s1) in sections.iter().enumerate() {
        for (i2, s2) in sections.iter().enumerate() {
            for eta in nat_transfs(a, b, x, s1, s2) {
                comp_data.push((i1, i2, eta));
            }
        }
    }
    for (k, (i1, i2, _)) in comp_data.iter().enumerate() {
        mors.push(GArrow {
            name: format!("n{k}"),
            src: *i1,
            dst: *i2,
        });
    }
    let n = comp_data.len();
    let mut comp = vec![vec![None; n]; n];
    for (k2, (a2, b2, eta2)) in comp_data.iter().enumerate() {
        for (k1, (a1, b1, eta1)) in comp_data.iter().enumerate() {
            if b1 != a2 {
                continue;
            }
            // componentwise composition in each fiber
            let mut comps = Vec::with_capacity(eta1.len());
            let mut ok = true;
            for (o, _) in fib.objs.iter().enumerate() {
                let bf = b.fibers[al.obj_index[&(x, o)]].g();
                match bf.compose(eta2[o], eta1[o]) {
                    Some(c) => comps.push(c),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let target = comp_data
                .iter()
                .position(|(s, t, e)| s == a1 && t == b2 && *e == comps)
                .ok_or_else(|| {
                    ModelError::FibrationLawViolation("pi fiber not closed".into())
                })?;
            comp[k2][k1] = Some(target);
        }
    }
    let id_of = sections
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let idcomps: Vec<usize> = fib
                .objs
                .iter()
                .enumerate()
                .map(|(o, _)| b.fibers[al.obj_index[&(x, o)]].g().id_of[s.obj[o]])
                .collect();
            comp_data
                .iter()
                .position(|(s1, s2, e)| *s1 == i && *s2 == i && *e == idcomps)
                .expect("identity transformation exists")
        })
        .collect();
    let inv = comp_data
        .iter()
        .map(|(s1, s2, eta)| {
            let icomps: Vec<usize> = fib
                .objs
                .iter()
                .enumerate()
                .map(|(o, _)| b.fibers[al.obj_index[&(x, o)]].g().inv[eta[o]])
                .collect();
            comp_data
                .iter()
                .position(|(t1, t2, e)| t1 == s2 && t2 == s1 && *e == icomps)
                .expect("inverse transformation exists")
        })
        .collect();
    let names = sections
        .iter()
        .enumerate()
        .map(|(i, _)| format!("s{i}"))
        .collect();
    Ok((
        GObj::new(FiniteGroupoid {
            objs: names,
            mors,
            comp,
            id_of,
            inv,
        }),
        sections,
    ))
}

/// Transport of a section along u : x → y.
pub fn transport_section(
    a: &Family,
    b: &Family,
    u: usize,
    s: &Section,
) -> Section {
    let base = a.base.g();
    let x = base.mors[u].src;
    let y = base.mors[u].dst;
    let uinv = base.inv[u];
    let fib_y = a.fibers[y].g();
    let t_a_inv = &a.transport[uinv];
    let mut obj = Vec::with_capacity(fib_y.objs.len());
    for (o2, _) in fib_y.objs.iter().enumerate() {
        let o = t_a_inv.on_obj(o2);
        let tb = b_transport_cart(a, b, u, o);
        obj.push(tb.on_obj(s.obj[o]));
    }
    let mut mor = Vec::with_capacity(fib_y.mors.len());
    for (m2, _) in fib_y.mors.iter().enumerate() {
        let m = t_a_inv.on_mor(m2);
        let o_dst = a.fibers[x].g().mors[m].dst;
        let tb = b_transport_cart(a, b, u, o_dst);
        mor.push(tb.on_mor(s.mor[m]));
    }
    let _ = x;
    Section { obj, mor }
}

pub fn pi_obj(model: &GroupoidModel, a: &Family, b: &Family) -> MResult<Family> {
    let total_a = super::total_groupoid(a)?;
    if b.base != total_a {
        return Err(ModelError::ModelBoundaryMismatch(
            "pi: second family not over the comprehension of the first".into(),
        ));
    }
    let base = a.base.clone();
    let bg = base.g();
    let mut fibers = Vec::new();
    let mut section_lists = Vec::new();
    for x in 0..bg.objs.len() {
        let (f, sections) = pi_fiber(model, a, b, x)?;
        fibers.push(f);
        section_lists.push(sections);
    }
    let mut transport = Vec::new();
    for (u, arr) in bg.mors.iter().enumerate() {
        let src_sections = &section_lists[arr.src];
        let dst_sections = &section_lists[arr.dst];
        let omap: Vec<usize> = src_sections
            .iter()
            .map(|s| {
                let moved = transport_section(a, b, u, s);
                dst_sections
                    .iter()
                    .position(|t| *t == moved)
                    .ok_or(ModelError::FibrationLawViolation(
                        "section transport left the section set".into(),
                    ))
            })
            .collect::<MResult<Vec<_>>>()?;
        // arrows of the Π-fiber: recover the component data to transport η
        let src_fib = fibers[arr.src].g();
        let mmap: Vec<usize> = (0..src_fib.mors.len())
            .map(|k| {
                let eta = eta_components(model, a, b, arr.src, src_sections, k)?;
                let (s1, s2) = (src_fib.mors[k].src, src_fib.mors[k].dst);
                // transported components
                let uinv = bg.inv[u];
                let fib_y = a.fibers[arr.dst].g();
                let moved: Vec<usize> = (0..fib_y.objs.len())
                    .map(|o2| {
                        let o = a.transport[uinv].on_obj(o2);
                        let tb = b_transport_cart(a, b, u, o);
                        tb.on_mor(eta[o])
                    })
                    .collect();
                let ms1 = omap[s1];
                let ms2 = omap[s2];
                find_eta(model, a, b, arr.dst, dst_sections, ms1, ms2, &moved)
            })
            .collect::<MResult<Vec<_>>>()?;
        transport.push(Functor::new(
            fibers[arr.src].clone(),
            fibers[arr.dst].clone(),
            omap,
            mmap,
        )?);
    }
    Family::new(base, fibers, transport)
}

/// Recovers the component vector of the k-th arrow of the Π fiber over x.
pub fn eta_components(
    model: &GroupoidModel,
    a: &Family,
    b: &Family,
    x: usize,
    sections: &[Section],
    k: usize,
) -> MResult<Vec<usize>> {
    // arrows were generated in a deterministic order; regenerate
    let mut idx = 0usize;
    for (_, s1) in sections.iter().enumerate() {
        for (_, s2) in sections.iter().enumerate() {
            for eta in nat_transfs(a, b, x, s1, s2) {
                if idx == k {
                    return Ok(eta);
                }
                idx += 1;
            }
        }
    }
    let _ = model;
    Err(ModelError::FibrationLawViolation(
        "pi fiber arrow index out of range".into(),
    ))
}

/// Finds the arrow index of the Π fiber over x with the given boundary and
/// components.
pub fn find_eta(
    model: &GroupoidModel,
    a: &Family,
    b: &Family,
    x: usize,
    sections: &[Section],
    s1: usize,
    s2: usize,
    comps: &[usize],
) -> MResult<usize> {
    let mut idx = 0usize;
    for (i1, sa) in sections.iter().enumerate() {
        for (i2, sb) in sections.iter().enumerate() {
            for eta in nat_transfs(a, b, x, sa, sb) {
                if i1 == s1 && i2 == s2 && eta == comps {
                    return Ok(idx);
                }
                idx += 1;
            }
        }
    }
    let _ = model;
    Err(ModelError::FibrationLawViolation(
        "natural transformation not found in pi fiber".into(),
    ))
}

/// app : Γ.A.Π(A,B)[π_A] → Γ.A.B.
pub fn app_mor(model: &GroupoidModel, a: &Family, b: &Family) -> MResult<Functor> {
    let pi = pi_obj(model, a, b)?;
    let proj_a = model.comp_proj(a)?;
    let pi_weak = model.reindex_ty(&pi, &proj_a)?;
    let dom = super::total_groupoid(&pi_weak)?;
    let cod = super::total_groupoid(b)?;
    let dl = super::total_layout(&pi_weak);
    let cl = super::total_layout(b);
    let al = super::total_layout(a);
    let bg = a.base.g();
    // section lists per base object (deterministic regeneration)
    let mut section_lists = Vec::new();
    for x in 0..bg.objs.len() {
        section_lists.push(sections_over_fiber(model, a, b, x)?);
    }
    // objects: ((x,o), σ) ↦ ((x,o), σ₀(o))
    let omap: Vec<usize> = dl
        .objs
        .iter()
        .map(|&(t_obj, sidx)| {
            let (x, o) = al.objs[t_obj];
            let s = &section_lists[x][sidx];
            cl.obj_index[&(t_obj, s.obj[o])]
        })
        .collect();
    // arrows: (β : t1 → t2 in total(A), σ, η) ↦ (β, η_{o2} ∘ τ(m-part))
    let mmap: Vec<usize> = dl
        .mors
        .iter()
        .map(|&(beta, sidx, eta_idx)| {
            let (u, o1, m) = al.mors[beta];
            let x = bg.mors[u].src;
            let y = bg.mors[u].dst;
            let o2 = a.fibers[y].g().mors[m].dst;
            let s = &section_lists[x][sidx];
            let tau = transport_section(a, b, u, s);
            // η lives in the Π fiber over y
            let eta = eta_components(model, a, b, y, &section_lists[y], eta_idx)?;
            // fiber part: η_{o2} ∘ τ(m)
            let bf = b.fibers[cl_obj_for(&al, y, o2)].g();
            let part = bf
                .compose(eta[o2], tau.mor[m])
                .ok_or(ModelError::FibrationLawViolation("app composition".into()))?;
            Ok(cl.mor_index[&(beta, s.obj[o1], part)])
        })
        .collect::<MResult<Vec<_>>>()?;
    Functor::new(dom, cod, omap, mmap)
}

fn cl_obj_for(al: &super::TotalLayout, x: usize, e: usize) -> usize {
    al.obj_index[&(x, e)]
}

/// λ(section) for a section of π_B over Γ.A.
pub fn lam(
    model: &GroupoidModel,
    a: &Family,
    b: &Family,
    section: &Functor,
) -> MResult<Functor> {
    let pi = pi_obj(model, a, b)?;
    let total_pi = super::total_groupoid(&pi)?;
    let pl = super::total_layout(&pi);
    let al = super::total_layout(a);
    let cl = super::total_layout(b);
    let bg = a.base.g();
    let mut section_lists = Vec::new();
    for x in 0..bg.objs.len() {
        section_lists.push(sections_over_fiber(model, a, b, x)?);
    }
    // extract the per-x section from the functor
    let mut sigma_of = Vec::new();
    for x in 0..bg.objs.len() {
        let fib = a.fibers[x].g();
        let obj: Vec<usize> = (0..fib.objs.len())
            .map(|o| cl.objs[section.on_obj(al.obj_index[&(x, o)])].1)
            .collect();
        let mor: Vec<usize> = (0..fib.mors.len())
            .map(|m| {
                let tot_arrow = al.mor_index[&(bg.id_of[x], fib.mors[m].src, m)];
                cl.mors[section.on_mor(tot_arrow)].2
            })
            .collect();
        let s = Section { obj, mor };
        let idx = section_lists[x]
            .iter()
            .position(|t| *t == s)
            .ok_or(ModelError::FibrationLawViolation(
                "lam: functor is not a cleavage-compatible section".into(),
            ))?;
        sigma_of.push(idx);
    }
    let omap: Vec<usize> = (0..bg.objs.len())
        .map(|x| pl.obj_index[&(x, sigma_of[x])])
        .collect();
    let mmap: Vec<usize> = bg
        .mors
        .iter()
        .enumerate()
        .map(|(u, arr)| {
            let (x, y) = (arr.src, arr.dst);
            // η_{o'} := fiber part of section on the canonical arrow over u
            let fib_y = a.fibers[y].g();
            let uinv = bg.inv[u];
            let comps: Vec<usize> = (0..fib_y.objs.len())
                .map(|o2| {
                    let o = a.transport[uinv].on_obj(o2);
                    let can = al.mor_index[&(u, o, fib_y.id_of[a.transport[u].on_obj(o)])];
                    cl.mors[section.on_mor(can)].2
                })
                .collect();
            let src_sec = transport_section(a, b, u, &section_lists[x][sigma_of[x]]);
            let src_idx = section_lists[y]
                .iter()
                .position(|t| *t == src_sec)
                .ok_or(ModelError::FibrationLawViolation(
                    "lam: transported section missing".into(),
                ))?;
            let eta = find_eta(
                model,
                a,
                b,
                y,
                &section_lists[y],
                src_idx,
                sigma_of[y],
                &comps,
            )?;
            Ok(pl.mor_index[&(u, sigma_of[x], eta)])
        })
        .collect::<MResult<Vec<_>>>()?;
    Functor::new(a.base.clone(), total_pi, omap, mmap)
}

/// Π_{f,g} : Π(A,B) → Π(A',B') for f : A' → A, g : B[Γ.f] → B'.
pub fn pi_map(model: &GroupoidModel, f: &FamMor, g: &FamMor, b: &Family) -> MResult<FamMor> {
    let a_prime = &f.dom;
    let a = &f.cod;
    // g is vertical over total(A'); its codomain is B'
    let b_prime = &g.cod;
    let chi_f = model.comp_mor(f)?;
    let expected = model.reindex_ty(b, &chi_f)?;
    if g.dom != expected {
        return Err(ModelError::ModelBoundaryMismatch(
            "pi_map: g's domain is not B[Γ.f]".into(),
        ));
    }
    let pi_ab = pi_obj(model, a, b)?;
    let pi_apbp = pi_obj(model, a_prime, b_prime)?;
    let bg = a.base.g();
    let al_prime = super::total_layout(a_prime);
    let mut comps = Vec::new();
    for x in 0..bg.objs.len() {
        let secs_ab = sections_over_fiber(model, a, b, x)?;
        let secs_apbp = sections_over_fiber(model, a_prime, b_prime, x)?;
        // σ ↦ σ' with σ'(o') = g(σ(f o')), σ'(m') = g(σ(f m'))
        let fibp = a_prime.fibers[x].g();
        let map_section = |s: &Section| -> Section {
            let obj = (0..fibp.objs.len())
                .map(|o2| {
                    let gi = &g.comps[al_prime.obj_index[&(x, o2)]];
                    gi.on_obj(s.obj[f.comps[x].on_obj(o2)])
                })
                .collect();
            let mor = (0..fibp.mors.len())
                .map(|m2| {
                    let dst = fibp.mors[m2].dst;
                    let gi = &g.comps[al_prime.obj_index[&(x, dst)]];
                    gi.on_mor(s.mor[f.comps[x].on_mor(m2)])
                })
                .collect();
            Section { obj, mor }
        };
        let omap: Vec<usize> = secs_ab
            .iter()
            .map(|s| {
                let t = map_section(s);
                secs_apbp
                    .iter()
                    .position(|u| *u == t)
                    .ok_or(ModelError::FibrationLawViolation(
                        "pi_map: image is not a section".into(),
                    ))
            })
            .collect::<MResult<Vec<_>>>()?;
        let src_fib = pi_ab.fibers[x].g();
        let mmap: Vec<usize> = (0..src_fib.mors.len())
            .map(|k| {
                let eta = eta_components(model, a, b, x, &secs_ab, k)?;
                let comps2: Vec<usize> = (0..fibp.objs.len())
                    .map(|o2| {
                        let gi = &g.comps[al_prime.obj_index[&(x, o2)]];
                        gi.on_mor(eta[f.comps[x].on_obj(o2)])
                    })
                    .collect();
                find_eta(
                    model,
                    a_prime,
                    b_prime,
                    x,
                    &secs_apbp,
                    omap[src_fib.mors[k].src],
                    omap[src_fib.mors[k].dst],
                    &comps2,
                )
            })
            .collect::<MResult<Vec<_>>>()?;
        comps.push(Functor::new(
            pi_ab.fibers[x].clone(),
            pi_apbp.fibers[x].clone(),
            omap,
            mmap,
        )?);
    }
    FamMor::new(pi_ab, pi_apbp, comps)
}
