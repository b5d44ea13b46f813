//! The closed model structure on groupoids and homotopy pullbacks.
//!
//! Functors are classified exhaustively against the definitions: a weak
//! equivalence is full, faithful and essentially surjective; a cofibration
//! is injective on objects; a fibration lifts morphisms out of every object
//! over its image; a covering lifts them uniquely; a quasi-covering factors
//! as an equivalence followed by a covering, equivalently is faithful.

use crate::caps::{SizeCaps, SizeGuard};
use crate::equivalence::{functor_properties, natiso_rep_choices, transport, FunctorProps};
use crate::groupoid::{assemble, pi0, Groupoid, GroupoidFunctor, NaturalIso};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomotopyError {
    #[error(transparent)]
    SizeGuard(#[from] SizeGuard),
    #[error("functor is not a covering")]
    NotCovering,
    #[error("no lift exists: {0}")]
    NoLift(String),
    #[error("square is not homotopy-cartesian")]
    NotHomotopyCartesian,
    #[error("square data malformed: {0}")]
    BadSquare(String),
}

/// Model-structure flags of a functor, all checked by enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctorClass {
    pub fibration: bool,
    pub cofibration: bool,
    pub weak_equivalence: bool,
    pub covering: bool,
    pub quasicovering: bool,
    pub props: FunctorProps,
}

pub fn classify_functor(u: &GroupoidFunctor) -> FunctorClass {
    let props = functor_properties(u);
    let s = &u.source;
    let t = &u.target;
    let mut objects = u.object_map.clone();
    objects.sort_unstable();
    let injective_on_objects = objects.windows(2).all(|w| w[0] != w[1]);

    let mut fibration = true;
    let mut covering = true;
    for a in 0..s.object_count() {
        for &h in t.morphisms_from(u.obj(a)) {
            let lifts = s.morphisms_from(a).iter().filter(|&&g| u.mor(g) == h).count();
            if lifts == 0 {
                fibration = false;
            }
            if lifts != 1 {
                covering = false;
            }
        }
        if !fibration && !covering {
            break;
        }
    }
    FunctorClass {
        fibration,
        cofibration: injective_on_objects,
        weak_equivalence: props.equivalence,
        covering,
        quasicovering: props.faithful,
        props,
    }
}

/// A square of functors commuting up to the supplied isomorphism
/// (or strictly when `sigma` is absent):
///
/// ```text
///        t
///    F -----> G
///    |        |
///  s |        | u
///    v        v
///    K -----> H
///        v
/// ```
#[derive(Clone, Debug)]
pub struct CommutativeSquare {
    pub t: GroupoidFunctor,
    pub s: GroupoidFunctor,
    pub u: GroupoidFunctor,
    pub v: GroupoidFunctor,
    /// Natural isomorphism `u∘t → v∘s`; absent means the square commutes
    /// strictly.
    pub sigma: Option<NaturalIso>,
}

impl CommutativeSquare {
    pub fn strict(t: GroupoidFunctor, s: GroupoidFunctor, u: GroupoidFunctor, v: GroupoidFunctor) -> Self {
        CommutativeSquare { t, s, u, v, sigma: None }
    }

    pub fn validate(&self) -> Result<(), HomotopyError> {
        let ok_endpoints = *self.t.source == *self.s.source
            && *self.t.target == *self.u.source
            && *self.s.target == *self.v.source
            && *self.u.target == *self.v.target;
        if !ok_endpoints {
            return Err(HomotopyError::BadSquare("edge endpoints do not match".into()));
        }
        let ut = self.t.then(&self.u);
        let vs = self.s.then(&self.v);
        match &self.sigma {
            None => {
                if !ut.same_maps(&vs) {
                    return Err(HomotopyError::BadSquare(
                        "square does not commute strictly and no sigma was supplied".into(),
                    ));
                }
            }
            Some(sig) => {
                if !(sig.from.same_maps(&ut) && sig.to.same_maps(&vs)) || !sig.validate().is_ok() {
                    return Err(HomotopyError::BadSquare("sigma is not a valid u∘t → v∘s".into()));
                }
            }
        }
        Ok(())
    }
}

/// The homotopy pullback of `u: G→H` and `v: K→H`: objects are triples
/// `(a, c, h: u(a)→v(c))`, morphisms are pairs making the evident square
/// commute.
#[derive(Clone, Debug)]
pub struct HomotopyPullback {
    pub groupoid: Arc<Groupoid>,
    pub proj_g: GroupoidFunctor,
    pub proj_k: GroupoidFunctor,
    /// `u∘proj_g → v∘proj_k`, with component `h` at `(a, c, h)`.
    pub phi: NaturalIso,
    /// Descriptor `(a, c, h)` per object.
    pub objects: Vec<(usize, usize, usize)>,
    object_index: HashMap<(usize, usize, usize), usize>,
    morphism_index: HashMap<(usize, usize, usize), usize>,
}

impl HomotopyPullback {
    pub fn object_index(&self, a: usize, c: usize, h: usize) -> Option<usize> {
        self.object_index.get(&(a, c, h)).copied()
    }
    /// Morphism id for `(source object, r, s)`.
    pub fn morphism_index(&self, obj: usize, r: usize, s: usize) -> Option<usize> {
        self.morphism_index.get(&(obj, r, s)).copied()
    }
}

pub fn homotopy_pullback(
    u: &GroupoidFunctor,
    v: &GroupoidFunctor,
    caps: &SizeCaps,
) -> Result<HomotopyPullback, HomotopyError> {
    assert!(*u.target == *v.target, "homotopy pullback needs a common target");
    let g = &u.source;
    let k = &v.source;
    let h = &u.target;
    let mut objects = Vec::new();
    for a in 0..g.object_count() {
        for c in 0..k.object_count() {
            for &hm in h.hom(u.obj(a), v.obj(c)) {
                objects.push((a, c, hm));
                caps.check_objects(objects.len())?;
            }
        }
    }
    let object_index: HashMap<(usize, usize, usize), usize> =
        objects.iter().copied().enumerate().map(|(i, o)| (o, i)).collect();
    let mut morphism_count = 0usize;
    for &(a, c, _) in &objects {
        morphism_count += g.morphisms_from(a).len() * k.morphisms_from(c).len();
        caps.check_morphisms(morphism_count)?;
    }
    // Morphism key: (source object index, r, s). The target is determined:
    // h' = v(s) ∘ h ∘ u(r)^{-1}.
    let target_of = |o: usize, r: usize, s: usize| -> usize {
        let (_, _, hm) = objects[o];
        let ur = u.mor(r);
        let vs = v.mor(s);
        let h2 = h.compose3(h.inverse(ur), hm, vs);
        object_index[&(g.dst(r), k.dst(s), h2)]
    };
    let mut morphisms = Vec::with_capacity(morphism_count);
    for (o, &(a, c, _)) in objects.iter().enumerate() {
        for &r in g.morphisms_from(a) {
            for &s in k.morphisms_from(c) {
                morphisms.push(((o, r, s), o, target_of(o, r, s)));
            }
        }
    }
    let objects_cl = objects.clone();
    let (l, morphism_index) = assemble(
        objects.len(),
        morphisms,
        |o| {
            let (a, c, _) = objects_cl[o];
            (o, g.identity(a), k.identity(c))
        },
        |&(o, r, s)| (target_of(o, r, s), g.inverse(r), k.inverse(s)),
        |&(o, r1, s1), &(_, r2, s2)| (o, g.compose2(r1, r2), k.compose2(s1, s2)),
    );
    let proj_g = GroupoidFunctor::new(
        l.clone(),
        g.clone(),
        objects.iter().map(|&(a, _, _)| a).collect(),
        {
            let mut map = vec![0; l.morphism_count()];
            for (&(_, r, _), &id) in morphism_index.iter() {
                map[id] = r;
            }
            map
        },
    );
    let proj_k = GroupoidFunctor::new(
        l.clone(),
        k.clone(),
        objects.iter().map(|&(_, c, _)| c).collect(),
        {
            let mut map = vec![0; l.morphism_count()];
            for (&(_, _, s), &id) in morphism_index.iter() {
                map[id] = s;
            }
            map
        },
    );
    let phi = NaturalIso {
        from: proj_g.then(u),
        to: proj_k.then(v),
        components: objects.iter().map(|&(_, _, hm)| hm).collect(),
    };
    Ok(HomotopyPullback { groupoid: l, proj_g, proj_k, phi, objects, object_index, morphism_index })
}

/// The square carried by a homotopy pullback, ready for Mackey checks.
pub fn pullback_square(pb: &HomotopyPullback, u: &GroupoidFunctor, v: &GroupoidFunctor) -> CommutativeSquare {
    CommutativeSquare {
        t: pb.proj_g.clone(),
        s: pb.proj_k.clone(),
        u: u.clone(),
        v: v.clone(),
        sigma: Some(pb.phi.clone()),
    }
}

/// The strict pullback `M ⊆ L`, its projections, and the inclusion into the
/// homotopy pullback.
#[derive(Clone, Debug)]
pub struct StrictPullback {
    pub groupoid: Arc<Groupoid>,
    pub proj_g: GroupoidFunctor,
    pub proj_k: GroupoidFunctor,
    pub inclusion: GroupoidFunctor,
    pub homotopy: HomotopyPullback,
}

pub fn strict_pullback(
    u: &GroupoidFunctor,
    v: &GroupoidFunctor,
    caps: &SizeCaps,
) -> Result<StrictPullback, HomotopyError> {
    let l = homotopy_pullback(u, v, caps)?;
    let g = &u.source;
    let k = &v.source;
    let h = &u.target;
    let mut objects = Vec::new();
    for a in 0..g.object_count() {
        for c in 0..k.object_count() {
            if u.obj(a) == v.obj(c) {
                objects.push((a, c));
            }
        }
    }
    let object_index: HashMap<(usize, usize), usize> =
        objects.iter().copied().enumerate().map(|(i, o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    for (o, &(a, c)) in objects.iter().enumerate() {
        for &r in g.morphisms_from(a) {
            for &s in k.morphisms_from(c) {
                if u.mor(r) == v.mor(s) {
                    morphisms.push(((o, r, s), o, object_index[&(g.dst(r), k.dst(s))]));
                }
            }
        }
    }
    let objects_cl = objects.clone();
    let oi = object_index.clone();
    let gc = g.clone();
    let kc = k.clone();
    let (m, mor_index) = assemble(
        objects.len(),
        morphisms,
        |o| {
            let (a, c) = objects_cl[o];
            (o, gc.identity(a), kc.identity(c))
        },
        |&(o, r, s)| {
            let (_, _) = objects_cl[o];
            (oi[&(gc.dst(r), kc.dst(s))], gc.inverse(r), kc.inverse(s))
        },
        |&(o, r1, s1), &(_, r2, s2)| (o, gc.compose2(r1, r2), kc.compose2(s1, s2)),
    );
    let proj_g = GroupoidFunctor::new(m.clone(), g.clone(), objects.iter().map(|&(a, _)| a).collect(), {
        let mut map = vec![0; m.morphism_count()];
        for (&(_, r, _), &id) in mor_index.iter() {
            map[id] = r;
        }
        map
    });
    let proj_k = GroupoidFunctor::new(m.clone(), k.clone(), objects.iter().map(|&(_, c)| c).collect(), {
        let mut map = vec![0; m.morphism_count()];
        for (&(_, _, s), &id) in mor_index.iter() {
            map[id] = s;
        }
        map
    });
    let inclusion = GroupoidFunctor::new(
        m.clone(),
        l.groupoid.clone(),
        objects
            .iter()
            .map(|&(a, c)| l.object_index(a, c, h.identity(u.obj(a))).expect("strict object in L"))
            .collect(),
        {
            let mut map = vec![0; m.morphism_count()];
            for (&(o, r, s), &id) in mor_index.iter() {
                let (a, c) = objects_cl[o];
                let lo = l.object_index(a, c, h.identity(u.obj(a))).unwrap();
                map[id] = l.morphism_index(lo, r, s).expect("strict morphism in L");
            }
            map
        },
    );
    Ok(StrictPullback { groupoid: m, proj_g, proj_k, inclusion, homotopy: l })
}

/// Witness that a square is homotopy-cartesian: the comparison functor
/// `σ̂ : F → L` induced by a natural isomorphism `σ : u∘t → v∘s`.
#[derive(Clone, Debug)]
pub struct CartesianWitness {
    pub sigma: NaturalIso,
    pub comparison: GroupoidFunctor,
}

/// Decide homotopy-cartesianness by searching natural isomorphisms
/// `σ: u∘t → v∘s` and testing whether the induced `σ̂: F → L` is an
/// equivalence. Candidates are enumerated on component representatives and
/// transported along spanning trees; a backtracking pass matches components
/// of `F` to components of `L`.
pub fn is_homotopy_cartesian(
    sq: &CommutativeSquare,
    caps: &SizeCaps,
) -> Result<Option<CartesianWitness>, HomotopyError> {
    sq.validate()?;
    let l = homotopy_pullback(&sq.u, &sq.v, caps)?;
    let f = &sq.t.source;
    let ut = sq.t.then(&sq.u);
    let vs = sq.s.then(&sq.v);
    let tr = transport(f);
    let l_classes = pi0(&l.groupoid);
    if tr.classes.class_count != l_classes.class_count {
        return Ok(None);
    }
    // Candidate data per component of F: (representative component choice,
    // full component vector, landing class in L), keeping only choices that
    // are fully faithful on the component.
    let mut per_component: Vec<Vec<(Vec<usize>, usize)>> = Vec::new();
    let mut total_candidates = 0usize;
    for class in 0..tr.classes.class_count {
        let rep = tr.classes.representative[class];
        let choices = natiso_rep_choices(&ut, &vs, &tr, class);
        total_candidates += choices.len();
        caps.check_candidates(total_candidates)?;
        let mut viable = Vec::new();
        for sig_rep in choices {
            // Build σ on this component only (other components get a dummy
            // choice; we only read this component's entries).
            let mut rep_choice = vec![usize::MAX; tr.classes.class_count];
            rep_choice[class] = sig_rep;
            let members: Vec<usize> = (0..f.object_count())
                .filter(|&a| tr.classes.class_of[a] == class)
                .collect();
            let mut comps = vec![usize::MAX; f.object_count()];
            for &a in &members {
                let p = tr.path_to[a];
                let t_ = &ut.target;
                comps[a] = t_.compose3(t_.inverse(ut.mor(p)), sig_rep, vs.mor(p));
            }
            // σ̂ on objects of this component.
            let image_of = |a: usize| -> usize {
                l.object_index(sq.t.obj(a), sq.s.obj(a), comps[a]).expect("σ component lands in L")
            };
            let l_rep = image_of(rep);
            // Fully faithful on a connected groupoid reduces to a vertex
            // bijection at the representative.
            let dom = f.hom(rep, rep);
            let cod = l.groupoid.hom(l_rep, l_rep);
            let mut images: Vec<usize> = dom
                .iter()
                .map(|&m| {
                    l.morphism_index(image_of(rep), sq.t.mor(m), sq.s.mor(m))
                        .expect("σ̂ image morphism")
                })
                .collect();
            images.sort_unstable();
            images.dedup();
            let ff = images.len() == dom.len() && images.len() == cod.len();
            if ff {
                viable.push((comps, l_classes.class_of[l_rep]));
            }
        }
        per_component.push(viable);
    }
    // Match components of F bijectively onto components of L.
    let mut assignment: Vec<usize> = Vec::new();
    let mut used = vec![false; l_classes.class_count];
    fn backtrack(
        per_component: &[Vec<(Vec<usize>, usize)>],
        class: usize,
        used: &mut Vec<bool>,
        assignment: &mut Vec<usize>,
    ) -> bool {
        if class == per_component.len() {
            return true;
        }
        for (i, &(_, landing)) in per_component[class].iter().enumerate() {
            if !used[landing] {
                used[landing] = true;
                assignment.push(i);
                if backtrack(per_component, class + 1, used, assignment) {
                    return true;
                }
                assignment.pop();
                used[landing] = false;
            }
        }
        false
    }
    if !backtrack(&per_component, 0, &mut used, &mut assignment) {
        return Ok(None);
    }
    // Assemble the witness.
    let mut components = vec![usize::MAX; f.object_count()];
    for (class, &choice) in assignment.iter().enumerate() {
        let comps = &per_component[class][choice].0;
        for a in 0..f.object_count() {
            if tr.classes.class_of[a] == class {
                components[a] = comps[a];
            }
        }
    }
    let sigma = NaturalIso { from: ut.clone(), to: vs.clone(), components: components.clone() };
    debug_assert!(sigma.validate().is_ok());
    let object_map: Vec<usize> = (0..f.object_count())
        .map(|a| l.object_index(sq.t.obj(a), sq.s.obj(a), components[a]).unwrap())
        .collect();
    let morphism_map: Vec<usize> = (0..f.morphism_count())
        .map(|m| {
            l.morphism_index(object_map[f.src(m)], sq.t.mor(m), sq.s.mor(m))
                .expect("comparison functor image")
        })
        .collect();
    let comparison = GroupoidFunctor::new(f.clone(), l.groupoid.clone(), object_map, morphism_map);
    debug_assert!(comparison.validate().is_ok());
    // The matching made σ̂ an equivalence; re-verify against the definitions.
    if !functor_properties(&comparison).equivalence {
        return Ok(None);
    }
    Ok(Some(CartesianWitness { sigma, comparison }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::functor_properties;
    use crate::groupoid::{group_groupoid, product, validate_groupoid};
    use crate::groups::{cyclic, symmetric};

    fn c2_in_s3() -> GroupoidFunctor {
        let s3 = symmetric(3);
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        GroupoidFunctor::new(group_groupoid(&cyclic(2)), group_groupoid(&s3), vec![0], vec![0, t])
    }

    #[test]
    fn classification_of_subgroup_inclusion() {
        let u = c2_in_s3();
        let c = classify_functor(&u);
        assert!(c.cofibration);
        assert!(!c.fibration); // group hom is a fibration iff surjective
        assert!(c.quasicovering);
        assert!(!c.covering); // group hom is a covering iff an isomorphism
        assert!(!c.weak_equivalence);
    }

    #[test]
    fn identity_is_everything() {
        let g = group_groupoid(&symmetric(3));
        let c = classify_functor(&GroupoidFunctor::identity(&g));
        assert!(c.fibration && c.cofibration && c.weak_equivalence && c.covering && c.quasicovering);
    }

    #[test]
    fn terminal_functor_classification() {
        let c2 = group_groupoid(&cyclic(2));
        let one = crate::groupoid::discrete_groupoid(1);
        let eps = GroupoidFunctor::new(c2, one, vec![0], vec![0, 0]);
        let c = classify_functor(&eps);
        assert!(c.fibration);
        assert!(!c.weak_equivalence);
        assert!(!c.props.faithful);
        assert!(!c.quasicovering);
        assert!(!c.covering);
    }

    #[test]
    fn pullback_along_identity_is_equivalent_to_source() {
        let g = group_groupoid(&symmetric(3));
        let u = c2_in_s3();
        let id = GroupoidFunctor::identity(&g);
        let pb = homotopy_pullback(&u, &id, &SizeCaps::default()).unwrap();
        assert!(validate_groupoid(&pb.groupoid).is_ok());
        assert!(pb.proj_g.validate().is_ok());
        assert!(pb.proj_k.validate().is_ok());
        assert!(pb.phi.validate().is_ok());
        assert!(functor_properties(&pb.proj_g).equivalence);
    }

    #[test]
    fn diagonal_pullback_of_c2_matches_loops() {
        // ψ,ψ : G → G² for G = C2 has homotopy pullback with two classes,
        // both with automorphism group of order 2.
        let c2 = group_groupoid(&cyclic(2));
        let (sq, _, _) = product(&c2, &c2);
        let psi = GroupoidFunctor::new(c2.clone(), sq.clone(), vec![0], vec![0, 3]);
        assert!(psi.validate().is_ok());
        let pb = homotopy_pullback(&psi, &psi, &SizeCaps::default()).unwrap();
        let classes = pi0(&pb.groupoid);
        assert_eq!(classes.class_count, 2);
        assert_eq!(classes.sorted_aut_orders(), vec![2, 2]);
    }

    #[test]
    fn double_coset_structure_of_c2_s3_c2() {
        let u = c2_in_s3();
        let pb = homotopy_pullback(&u, &u, &SizeCaps::default()).unwrap();
        assert!(validate_groupoid(&pb.groupoid).is_ok());
        let classes = pi0(&pb.groupoid);
        // Double cosets C2\S3/C2: two of them, with G^t∩K of orders 2 and 1.
        assert_eq!(classes.class_count, 2);
        assert_eq!(classes.sorted_aut_orders(), vec![1, 2]);
    }

    #[test]
    fn strict_pullback_of_subgroups_is_intersection() {
        let u = c2_in_s3();
        let sp = strict_pullback(&u, &u, &SizeCaps::default()).unwrap();
        assert!(validate_groupoid(&sp.groupoid).is_ok());
        assert_eq!(sp.groupoid.object_count(), 1);
        assert_eq!(sp.groupoid.morphism_count(), 2); // C2 ∩ C2 = C2
        assert!(sp.inclusion.validate().is_ok());
    }

    #[test]
    fn strict_inclusion_is_equivalence_when_one_leg_fibers() {
        // ε: S3 → 1 is a fibration; pull back the inclusion C2 → 1... use
        // u: C2→1 arbitrary, v: S3→1 the fibration.
        let one = crate::groupoid::discrete_groupoid(1);
        let c2 = group_groupoid(&cyclic(2));
        let s3 = group_groupoid(&symmetric(3));
        let u = GroupoidFunctor::new(c2, one.clone(), vec![0], vec![0, 0]);
        let v = GroupoidFunctor::new(s3, one.clone(), vec![0], vec![0; 6]);
        assert!(classify_functor(&v).fibration);
        let sp = strict_pullback(&u, &v, &SizeCaps::default()).unwrap();
        assert!(functor_properties(&sp.inclusion).equivalence);
    }

    #[test]
    fn homotopy_pullback_square_is_cartesian() {
        let u = c2_in_s3();
        let pb = homotopy_pullback(&u, &u, &SizeCaps::default()).unwrap();
        let sq = pullback_square(&pb, &u, &u);
        let witness = is_homotopy_cartesian(&sq, &SizeCaps::default()).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn strict_square_of_two_c2s_in_s3_is_not_cartesian() {
        // M = C2 with both legs the strict projections; fails since
        // C2·C2 ≠ S3.
        let u = c2_in_s3();
        let sp = strict_pullback(&u, &u, &SizeCaps::default()).unwrap();
        let sq = CommutativeSquare::strict(sp.proj_g.clone(), sp.proj_k.clone(), u.clone(), u.clone());
        sq.validate().unwrap();
        let witness = is_homotopy_cartesian(&sq, &SizeCaps::default()).unwrap();
        assert!(witness.is_none());
    }

    #[test]
    fn strict_pullback_along_fibration_is_cartesian() {
        let one = crate::groupoid::discrete_groupoid(1);
        let c2 = group_groupoid(&cyclic(2));
        let s3 = group_groupoid(&symmetric(3));
        let u = GroupoidFunctor::new(c2, one.clone(), vec![0], vec![0, 0]);
        let v = GroupoidFunctor::new(s3, one, vec![0], vec![0; 6]);
        let sp = strict_pullback(&u, &v, &SizeCaps::default()).unwrap();
        let sq = CommutativeSquare::strict(sp.proj_g.clone(), sp.proj_k.clone(), u, v);
        let witness = is_homotopy_cartesian(&sq, &SizeCaps::default()).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn size_guard_fires() {
        let s3 = group_groupoid(&symmetric(3));
        let id = GroupoidFunctor::identity(&s3);
        let caps = SizeCaps { max_objects: 2, ..Default::default() };
        assert!(matches!(
            homotopy_pullback(&id, &id, &caps),
            Err(HomotopyError::SizeGuard(_))
        ));
    }
}
