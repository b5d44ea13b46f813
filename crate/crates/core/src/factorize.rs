//! Factorisations and lifts: the (covering, full+essentially-surjective)
//! factorisation system and the model-structure factorisations, with the
//! lifting constructions that make them useful.

use crate::caps::SizeCaps;
use crate::groupoid::{assemble, coproduct, pi0, Groupoid, GroupoidFunctor};
use crate::homotopy::{classify_functor, homotopy_pullback, HomotopyError};
use std::collections::HashMap;
use std::sync::Arc;

/// `u = p ∘ r` with `r` full and essentially surjective and `p` a covering.
#[derive(Clone, Debug)]
pub struct CoveringFactorization {
    pub mid: Arc<Groupoid>,
    pub r: GroupoidFunctor,
    pub p: GroupoidFunctor,
}

/// Factor `u : G → H` through the groupoid of equivalence classes of
/// triples `(a, b, h: u(a)→b)`, where `(a,b,h) ~ (a',b,h')` when
/// `h = h' ∘ u(g)` for some `g: a→a'`. The covering part realises the
/// fibre over `b` as `π₀(u ↓ b)`.
pub fn factorize_covering(u: &GroupoidFunctor) -> CoveringFactorization {
    let g = &u.source;
    let h = &u.target;

    // Per target object b: the triples (a, h), unioned along morphisms of G.
    struct Fiber {
        items: Vec<(usize, usize)>,
        index: HashMap<(usize, usize), usize>,
        root: Vec<usize>,
    }
    impl Fiber {
        fn find(&mut self, mut x: usize) -> usize {
            while self.root[x] != x {
                self.root[x] = self.root[self.root[x]];
                x = self.root[x];
            }
            x
        }
        fn union(&mut self, a: usize, b: usize) {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra != rb {
                // keep the least index as root for canonical representatives
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                self.root[hi] = lo;
            }
        }
    }
    let mut fibers: Vec<Fiber> = Vec::with_capacity(h.object_count());
    for b in 0..h.object_count() {
        let mut items = Vec::new();
        for a in 0..g.object_count() {
            for &hm in h.hom(u.obj(a), b) {
                items.push((a, hm));
            }
        }
        let index = items.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
        let root = (0..items.len()).collect();
        fibers.push(Fiber { items, index, root });
    }
    for b in 0..h.object_count() {
        for i in 0..fibers[b].items.len() {
            let (a, hm) = fibers[b].items[i];
            for &gm in g.morphisms_from(a) {
                // (a, h) ~ (dst g, h ∘ u(g)^{-1})
                let other = (g.dst(gm), h.compose2(h.inverse(u.mor(gm)), hm));
                let j = fibers[b].index[&other];
                fibers[b].union(i, j);
            }
        }
    }
    // Freeze the union-find: final root per item, then everything below is
    // a pure lookup.
    let resolved: Vec<Vec<usize>> = fibers
        .iter_mut()
        .map(|fiber| (0..fiber.items.len()).map(|i| fiber.find(i)).collect())
        .collect();
    // Objects of K: (b, class root), roots in ascending order per b.
    let mut objects: Vec<(usize, usize)> = Vec::new();
    let mut object_index: HashMap<(usize, usize), usize> = HashMap::new();
    for (b, roots) in resolved.iter().enumerate() {
        let mut distinct: Vec<usize> = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for root in distinct {
            object_index.insert((b, root), objects.len());
            objects.push((b, root));
        }
    }
    let resolve = |b: usize, a: usize, hm: usize| -> usize {
        let i = fibers[b].index[&(a, hm)];
        object_index[&(b, resolved[b][i])]
    };
    // Morphisms: (object X, k: b → b'), target determined by (a_rep, k∘h_rep).
    let rep_of = |x: usize| -> (usize, usize) {
        let (b, root) = objects[x];
        fibers[b].items[root]
    };
    let mut target_cache: HashMap<(usize, usize), usize> = HashMap::new();
    let mut morphisms = Vec::new();
    for x in 0..objects.len() {
        let (b, _) = objects[x];
        let (a_rep, h_rep) = rep_of(x);
        for &k in h.morphisms_from(b) {
            let target = resolve(h.dst(k), a_rep, h.compose2(h_rep, k));
            target_cache.insert((x, k), target);
            morphisms.push(((x, k), x, target));
        }
    }
    let objects_cl = objects.clone();
    let (mid, mor_index) = assemble(
        objects.len(),
        morphisms,
        |x| (x, h.identity(objects_cl[x].0)),
        |&(x, k)| (target_cache[&(x, k)], h.inverse(k)),
        |&(x, k1), &(_, k2)| (x, h.compose2(k1, k2)),
    );
    let r_obj: Vec<usize> =
        (0..g.object_count()).map(|a| resolve(u.obj(a), a, h.identity(u.obj(a)))).collect();
    let r_mor: Vec<usize> =
        (0..g.morphism_count()).map(|gm| mor_index[&(r_obj[g.src(gm)], u.mor(gm))]).collect();
    let r = GroupoidFunctor::new(g.clone(), mid.clone(), r_obj, r_mor);
    let p_obj: Vec<usize> = objects.iter().map(|&(b, _)| b).collect();
    let p_mor: Vec<usize> = {
        let mut map = vec![0; mid.morphism_count()];
        for (&(_, k), &id) in mor_index.iter() {
            map[id] = k;
        }
        map
    };
    let p = GroupoidFunctor::new(mid.clone(), h.clone(), p_obj, p_mor);
    CoveringFactorization { mid, r, p }
}

/// The two model-structure factorisations of a functor `u : G → H`:
/// `u = p∘i` with `i` an acyclic cofibration and `p` a fibration, and
/// `u = q∘j` with `j` a cofibration and `q` an acyclic fibration. The
/// second factorisation always carries the `L ∐ L'` correction term, with
/// `L'` empty when `u` is essentially surjective.
#[derive(Clone, Debug)]
pub struct ModelFactorization {
    pub mapping_path: Arc<Groupoid>,
    pub i: GroupoidFunctor,
    pub p: GroupoidFunctor,
    pub inflated: Arc<Groupoid>,
    pub j: GroupoidFunctor,
    pub q: GroupoidFunctor,
}

pub fn factorize_model(u: &GroupoidFunctor, caps: &SizeCaps) -> Result<ModelFactorization, HomotopyError> {
    let g = &u.source;
    let h = &u.target;
    // K: triples (a, b, k: u(a)→b) — exactly the homotopy pullback of u and
    // the identity of H.
    let id_h = GroupoidFunctor::identity(h);
    let pb = homotopy_pullback(u, &id_h, caps)?;
    let k_groupoid = pb.groupoid.clone();
    let i_obj: Vec<usize> = (0..g.object_count())
        .map(|a| pb.object_index(a, u.obj(a), h.identity(u.obj(a))).unwrap())
        .collect();
    let i_mor: Vec<usize> = (0..g.morphism_count())
        .map(|gm| pb.morphism_index(i_obj[g.src(gm)], gm, u.mor(gm)).unwrap())
        .collect();
    let i = GroupoidFunctor::new(g.clone(), k_groupoid.clone(), i_obj, i_mor);
    let p = pb.proj_k.clone();

    // L: same objects as K, hom(x, x') = H(b_x, b_{x'}).
    let objects = pb.objects.clone();
    let mut l_morphisms = Vec::new();
    for (x, &(_, bx, _)) in objects.iter().enumerate() {
        for (y, &(_, by, _)) in objects.iter().enumerate() {
            for &hm in h.hom(bx, by) {
                l_morphisms.push(((x, y, hm), x, y));
                caps.check_morphisms(l_morphisms.len())?;
            }
        }
    }
    let objects_cl = objects.clone();
    let (l_groupoid, l_index) = assemble(
        objects.len(),
        l_morphisms,
        |x| (x, x, h.identity(objects_cl[x].1)),
        |&(x, y, hm)| (y, x, h.inverse(hm)),
        |&(x, _, h1), &(_, z, h2)| (x, z, h.compose2(h1, h2)),
    );
    // v: K → L keeps objects, sends (x, r, s) to (x, target, s).
    let v_mor: Vec<usize> = (0..k_groupoid.morphism_count())
        .map(|m| {
            let x = k_groupoid.src(m);
            let y = k_groupoid.dst(m);
            let s = pb.proj_k.mor(m);
            l_index[&(x, y, s)]
        })
        .collect();
    let v = GroupoidFunctor::new(
        k_groupoid.clone(),
        l_groupoid.clone(),
        (0..objects.len()).collect(),
        v_mor,
    );
    let j_on_l = i.then(&v);
    // L': full subcategory of H on objects outside the repletion of the image.
    let h_classes = pi0(h);
    let mut hit = vec![false; h_classes.class_count];
    for a in 0..g.object_count() {
        hit[h_classes.class_of[u.obj(a)]] = true;
    }
    let missed: Vec<usize> =
        (0..h.object_count()).filter(|&b| !hit[h_classes.class_of[b]]).collect();
    let missed_index: HashMap<usize, usize> =
        missed.iter().copied().enumerate().map(|(i2, b)| (b, i2)).collect();
    let mut lp_morphisms = Vec::new();
    for &b in &missed {
        for &m in h.morphisms_from(b) {
            if missed_index.contains_key(&h.dst(m)) {
                lp_morphisms.push((m, missed_index[&b], missed_index[&h.dst(m)]));
            }
        }
    }
    lp_morphisms.sort_by_key(|&(m, _, _)| m);
    let (l_prime, lp_index) = assemble(
        missed.len(),
        lp_morphisms,
        |x| h.identity(missed[x]),
        |&m| h.inverse(m),
        |&m1, &m2| h.compose2(m1, m2),
    );
    let (inflated, inj_l, _inj_lp) = coproduct(&l_groupoid, &l_prime);
    let j = j_on_l.then(&inj_l);
    // q on L: (a,b,k) ↦ b, (x,y,hm) ↦ hm; on L': the inclusion.
    let q_obj: Vec<usize> = objects
        .iter()
        .map(|&(_, b, _)| b)
        .chain(missed.iter().copied())
        .collect();
    let mut q_mor = vec![0usize; inflated.morphism_count()];
    for (&(_, _, hm), &id) in l_index.iter() {
        q_mor[id] = hm;
    }
    for (&m, &id) in lp_index.iter() {
        q_mor[id + l_groupoid.morphism_count()] = m;
    }
    let q = GroupoidFunctor::new(inflated.clone(), h.clone(), q_obj, q_mor);
    Ok(ModelFactorization { mapping_path: k_groupoid, i, p, inflated, j, q })
}

/// Solve the lifting problem
///
/// ```text
///        u
///    L -----> G
///    |      ^ |
///  r |   v/   | p
///    v  /     v
///    K -----> H
///        w
/// ```
///
/// for the two supported hypothesis pairs: `r` full and essentially
/// surjective with `p` a covering (the lift is then unique), or `r` an
/// acyclic cofibration with `p` a fibration.
pub fn lift_square(
    r: &GroupoidFunctor,
    p: &GroupoidFunctor,
    u: &GroupoidFunctor,
    w: &GroupoidFunctor,
) -> Result<GroupoidFunctor, HomotopyError> {
    if !u.then(p).same_maps(&r.then(w)) {
        return Err(HomotopyError::NoLift("square does not commute strictly".into()));
    }
    let cr = classify_functor(r);
    let cp = classify_functor(p);
    let v = if cp.covering && cr.props.full && cr.props.essentially_surjective {
        lift_unique_covering(r, p, u, w)?
    } else if cp.fibration && cr.cofibration && cr.weak_equivalence {
        lift_acyclic_cofibration(r, p, u, w)?
    } else {
        return Err(HomotopyError::NoLift(
            "hypotheses not satisfied: need (full+ess.surjective, covering) or (acyclic cofibration, fibration)".into(),
        ));
    };
    debug_assert!(v.validate().is_ok());
    if !(r.then(&v).same_maps(u) && v.then(p).same_maps(w)) {
        return Err(HomotopyError::NoLift("constructed candidate fails the equations".into()));
    }
    Ok(v)
}

fn lift_unique_covering(
    r: &GroupoidFunctor,
    p: &GroupoidFunctor,
    u: &GroupoidFunctor,
    w: &GroupoidFunctor,
) -> Result<GroupoidFunctor, HomotopyError> {
    let lk = &r.target; // K
    let lg = &p.source; // G
    let ll = &r.source; // L
    let mut v_obj = vec![usize::MAX; lk.object_count()];
    let mut anchor = Vec::with_capacity(lk.object_count());
    for c in 0..lk.object_count() {
        let mut found = None;
        'search: for d in 0..ll.object_count() {
            if let Some(&k) = lk.hom(r.obj(d), c).first() {
                found = Some((d, k));
                break 'search;
            }
        }
        let (d, k) = found.ok_or_else(|| {
            HomotopyError::NoLift(format!("object {c} not reached by r up to isomorphism"))
        })?;
        let wk = w.mor(k); // w(r(d)) = p(u(d)) → w(c)
        let lifts: Vec<usize> = lg
            .morphisms_from(u.obj(d))
            .iter()
            .copied()
            .filter(|&gm| p.mor(gm) == wk)
            .collect();
        if lifts.len() != 1 {
            return Err(HomotopyError::NoLift(format!(
                "covering lift over object {c} is not unique ({} found)",
                lifts.len()
            )));
        }
        let g = lifts[0];
        v_obj[c] = lg.dst(g);
        anchor.push((d, k, g));
    }
    let mut v_mor = vec![usize::MAX; lk.morphism_count()];
    for m in 0..lk.morphism_count() {
        let (c, c2) = (lk.src(m), lk.dst(m));
        let (d, k, g) = anchor[c];
        let (d2, k2, g2) = anchor[c2];
        let needed = lk.compose3(k, m, lk.inverse(k2)); // k'^{-1} ∘ m ∘ k
        let n = ll
            .hom(d, d2)
            .iter()
            .copied()
            .find(|&n| r.mor(n) == needed)
            .ok_or_else(|| HomotopyError::NoLift("r is not full on a needed hom-set".into()))?;
        v_mor[m] = lg.compose3(lg.inverse(g), u.mor(n), g2);
    }
    Ok(GroupoidFunctor::new(lk.clone(), lg.clone(), v_obj, v_mor))
}

fn lift_acyclic_cofibration(
    r: &GroupoidFunctor,
    p: &GroupoidFunctor,
    u: &GroupoidFunctor,
    w: &GroupoidFunctor,
) -> Result<GroupoidFunctor, HomotopyError> {
    let lk = &r.target; // K (codomain of the acyclic cofibration)
    let lg = &p.source; // G
    let ll = &r.source; // L
    let mut preimage = vec![usize::MAX; lk.object_count()];
    for d in 0..ll.object_count() {
        preimage[r.obj(d)] = d;
    }
    let mut ret = vec![usize::MAX; lk.object_count()];
    let mut eta = vec![usize::MAX; lk.object_count()]; // b → r(ret b)
    for b in 0..lk.object_count() {
        if preimage[b] != usize::MAX {
            ret[b] = preimage[b];
            eta[b] = lk.identity(b);
        } else {
            let d = (0..ll.object_count())
                .find(|&d| !lk.hom(r.obj(d), b).is_empty())
                .ok_or_else(|| HomotopyError::NoLift("r is not essentially surjective".into()))?;
            ret[b] = d;
            eta[b] = lk.hom(b, r.obj(d))[0];
        }
    }
    let mut v_obj = vec![usize::MAX; lk.object_count()];
    let mut zeta = vec![usize::MAX; lk.object_count()]; // v(b) → u(ret b)
    for b in 0..lk.object_count() {
        if preimage[b] != usize::MAX {
            v_obj[b] = u.obj(ret[b]);
            zeta[b] = lg.identity(v_obj[b]);
        } else {
            let h = p.target.inverse(w.mor(eta[b])); // p(u(ret b)) → w(b)
            let g = lg
                .morphisms_from(u.obj(ret[b]))
                .iter()
                .copied()
                .find(|&gm| p.mor(gm) == h)
                .ok_or_else(|| HomotopyError::NoLift("p fails the fibration axiom".into()))?;
            v_obj[b] = lg.dst(g);
            zeta[b] = lg.inverse(g);
        }
    }
    let mut v_mor = vec![usize::MAX; lk.morphism_count()];
    for m in 0..lk.morphism_count() {
        let (b, b2) = (lk.src(m), lk.dst(m));
        let mm = lk.compose3(lk.inverse(eta[b]), m, eta[b2]); // η_{b'} ∘ m ∘ η_b^{-1}
        let n = ll
            .hom(ret[b], ret[b2])
            .iter()
            .copied()
            .find(|&n| r.mor(n) == mm)
            .ok_or_else(|| HomotopyError::NoLift("r is not full on a needed hom-set".into()))?;
        v_mor[m] = lg.compose3(zeta[b], u.mor(n), lg.inverse(zeta[b2]));
    }
    Ok(GroupoidFunctor::new(lk.clone(), lg.clone(), v_obj, v_mor))
}

/// Count all lifts of an (E, covering) square by exhaustive propagation,
/// used to confirm uniqueness at desk scale.
pub fn count_lifts(
    r: &GroupoidFunctor,
    p: &GroupoidFunctor,
    u: &GroupoidFunctor,
    w: &GroupoidFunctor,
) -> usize {
    let lk = &r.target;
    let lg = &p.source;
    let classes = pi0(lk);
    let mut product = 1usize;
    for class in 0..classes.class_count {
        let members: Vec<usize> =
            (0..lk.object_count()).filter(|&c| classes.class_of[c] == class).collect();
        let rep = classes.representative[class];
        let fiber: Vec<usize> =
            (0..lg.object_count()).filter(|&a| p.obj(a) == w.obj(rep)).collect();
        let mut valid = 0;
        'candidate: for &start in &fiber {
            // Propagate object assignments by lifting w along p.
            let mut v_obj: HashMap<usize, usize> = HashMap::new();
            v_obj.insert(rep, start);
            let mut queue = std::collections::VecDeque::from([rep]);
            while let Some(c) = queue.pop_front() {
                for &m in lk.morphisms_from(c) {
                    let lifts: Vec<usize> = lg
                        .morphisms_from(v_obj[&c])
                        .iter()
                        .copied()
                        .filter(|&gm| p.mor(gm) == w.mor(m))
                        .collect();
                    if lifts.len() != 1 {
                        continue 'candidate;
                    }
                    let target = lg.dst(lifts[0]);
                    match v_obj.get(&lk.dst(m)) {
                        None => {
                            v_obj.insert(lk.dst(m), target);
                            queue.push_back(lk.dst(m));
                        }
                        Some(&t) if t == target => {}
                        Some(_) => continue 'candidate,
                    }
                }
            }
            // The equation v∘r = u, on the objects and morphisms of L that
            // land in this component.
            for d in 0..r.source.object_count() {
                let c = r.obj(d);
                if classes.class_of[c] == class && v_obj.get(&c) != Some(&u.obj(d)) {
                    continue 'candidate;
                }
            }
            for n in 0..r.source.morphism_count() {
                let m = r.mor(n);
                if classes.class_of[lk.src(m)] != class {
                    continue;
                }
                let lift = lg
                    .morphisms_from(v_obj[&lk.src(m)])
                    .iter()
                    .copied()
                    .find(|&gm| p.mor(gm) == w.mor(m));
                if lift != Some(u.mor(n)) {
                    continue 'candidate;
                }
            }
            let _ = members;
            valid += 1;
        }
        product *= valid;
    }
    product
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::functor_properties;
    use crate::groupoid::{discrete_groupoid, group_groupoid, validate_groupoid};
    use crate::groups::{cyclic, symmetric};

    fn c2_in_s3() -> GroupoidFunctor {
        let s3 = symmetric(3);
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        GroupoidFunctor::new(group_groupoid(&cyclic(2)), group_groupoid(&s3), vec![0], vec![0, t])
    }

    #[test]
    fn covering_factorization_of_identity() {
        let g = group_groupoid(&symmetric(3));
        let fac = factorize_covering(&GroupoidFunctor::identity(&g));
        assert!(fac.r.validate().is_ok());
        assert!(fac.p.validate().is_ok());
        assert!(fac.r.then(&fac.p).same_maps(&GroupoidFunctor::identity(&g)));
        assert!(functor_properties(&fac.r).equivalence);
        assert!(classify_functor(&fac.p).covering);
        assert_eq!(fac.mid.object_count(), 1);
    }

    #[test]
    fn universal_cover_of_c2() {
        // 1 → C2 factors through the indiscrete groupoid on two objects.
        let one = discrete_groupoid(1);
        let c2 = group_groupoid(&cyclic(2));
        let z = GroupoidFunctor::new(one, c2, vec![0], vec![0]);
        let fac = factorize_covering(&z);
        assert!(validate_groupoid(&fac.mid).is_ok());
        assert_eq!(fac.mid.object_count(), 2);
        assert_eq!(fac.mid.morphism_count(), 4); // indiscrete(2)
        assert!(classify_functor(&fac.p).covering);
        assert!(functor_properties(&fac.r).full);
        assert!(functor_properties(&fac.r).essentially_surjective);
        let classes = pi0(&fac.mid);
        assert_eq!(classes.class_count, 1);
        assert_eq!(classes.aut_order, vec![1]);
    }

    #[test]
    fn coset_cover_of_c2_in_s3() {
        let u = c2_in_s3();
        let fac = factorize_covering(&u);
        assert!(validate_groupoid(&fac.mid).is_ok());
        assert!(fac.r.then(&fac.p).same_maps(&u));
        // Three cosets, connected, vertex group C2.
        assert_eq!(fac.mid.object_count(), 3);
        let classes = pi0(&fac.mid);
        assert_eq!(classes.class_count, 1);
        assert_eq!(classes.aut_order, vec![2]);
        assert!(classify_functor(&fac.p).covering);
        let pr = functor_properties(&fac.r);
        assert!(pr.full && pr.essentially_surjective);
    }

    #[test]
    fn model_factorization_of_identity_and_epsilon() {
        let c2 = group_groupoid(&cyclic(2));
        let fac = factorize_model(&GroupoidFunctor::identity(&c2), &SizeCaps::default()).unwrap();
        for f in [&fac.i, &fac.p, &fac.j, &fac.q] {
            assert!(f.validate().is_ok());
        }
        assert!(fac.i.then(&fac.p).same_maps(&GroupoidFunctor::identity(&c2)));
        assert!(fac.j.then(&fac.q).same_maps(&GroupoidFunctor::identity(&c2)));

        let one = discrete_groupoid(1);
        let eps = GroupoidFunctor::new(c2.clone(), one, vec![0], vec![0, 0]);
        let fac = factorize_model(&eps, &SizeCaps::default()).unwrap();
        assert!(fac.i.then(&fac.p).same_maps(&eps));
        assert!(fac.j.then(&fac.q).same_maps(&eps));
        let ci = classify_functor(&fac.i);
        assert!(ci.cofibration && ci.weak_equivalence);
        assert!(classify_functor(&fac.p).fibration);
        assert!(classify_functor(&fac.j).cofibration);
        let cq = classify_functor(&fac.q);
        assert!(cq.fibration && cq.weak_equivalence);
        assert_eq!(fac.mapping_path.object_count(), 1);
    }

    #[test]
    fn model_factorization_with_missed_component() {
        // 1 → C2 ∐ C3 hitting the first summand; L' is the missed part.
        let one = discrete_groupoid(1);
        let c2 = group_groupoid(&cyclic(2));
        let c3 = group_groupoid(&cyclic(3));
        let (_sum, inj2, _) = crate::groupoid::coproduct(&c2, &c3);
        let z = GroupoidFunctor::new(one, c2.clone(), vec![0], vec![0]).then(&inj2);
        let fac = factorize_model(&z, &SizeCaps::default()).unwrap();
        assert!(fac.j.then(&fac.q).same_maps(&z));
        let cq = classify_functor(&fac.q);
        assert!(cq.fibration && cq.weak_equivalence);
        // The inflated middle contains the missed C3 component.
        assert_eq!(pi0(&fac.inflated).class_count, 2);
    }

    #[test]
    fn trivial_lift_returns_u() {
        let c2 = group_groupoid(&cyclic(2));
        let id = GroupoidFunctor::identity(&c2);
        let v = lift_square(&id, &id, &id, &id).unwrap();
        assert!(v.same_maps(&id));
    }

    #[test]
    fn lift_through_coset_covering_is_unique() {
        let u = c2_in_s3();
        let fac = factorize_covering(&u);
        // Square: r: C2→K, p: K→S3, u' = r, w = p.
        let v = lift_square(&fac.r, &fac.p, &fac.r, &fac.p).unwrap();
        assert!(fac.r.then(&v).same_maps(&fac.r));
        assert!(v.then(&fac.p).same_maps(&fac.p));
        assert_eq!(count_lifts(&fac.r, &fac.p, &fac.r, &fac.p), 1);
    }

    #[test]
    fn unsupported_pair_is_rejected() {
        let c2 = group_groupoid(&cyclic(2));
        let one = discrete_groupoid(1);
        let eps = GroupoidFunctor::new(c2.clone(), one.clone(), vec![0], vec![0, 0]);
        // r = eps is full+ess.surjective but p = eps is not a covering, and
        // r is not a cofibration-equivalence either.
        let err = lift_square(&eps, &eps, &GroupoidFunctor::identity(&c2), &GroupoidFunctor::identity(&one));
        assert!(matches!(err, Err(HomotopyError::NoLift(_))));
    }

    #[test]
    fn acyclic_cofibration_lift() {
        // r = i from the model factorization of eps: C2 → 1 is an acyclic
        // cofibration into the mapping path category; p its fibration.
        let c2 = group_groupoid(&cyclic(2));
        let one = discrete_groupoid(1);
        let eps = GroupoidFunctor::new(c2.clone(), one.clone(), vec![0], vec![0, 0]);
        let fac = factorize_model(&eps, &SizeCaps::default()).unwrap();
        // Lift the identity chain: u = id wrapped through i, w = p.
        let v = lift_square(&fac.i, &fac.p, &GroupoidFunctor::identity(&c2).then(&fac.i), &fac.p)
            .unwrap();
        assert!(fac.i.then(&v).same_maps(&fac.i));
        assert!(v.then(&fac.p).same_maps(&fac.p));
    }
}
