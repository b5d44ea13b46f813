//! Equivalence-level structure: functor flags, natural-isomorphism search,
//! skeleta, and the indiscrete-times-group splitting of components.
//!
//! Representatives and spanning trees are always chosen by least index, so
//! every search here is deterministic.

use crate::groupoid::{
    coproduct, group_groupoid, indiscrete_groupoid, pi0, product, Groupoid, GroupoidFunctor,
    IsoClassTable, NaturalIso,
};
use crate::groups::FiniteGroup;
use std::sync::Arc;

/// Exhaustively computed functor flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctorProps {
    pub full: bool,
    pub faithful: bool,
    pub essentially_surjective: bool,
    pub equivalence: bool,
}

pub fn functor_properties(u: &GroupoidFunctor) -> FunctorProps {
    let s = &u.source;
    let t = &u.target;
    let mut full = true;
    let mut faithful = true;
    for a in 0..s.object_count() {
        for b in 0..s.object_count() {
            let dom = s.hom(a, b);
            let cod = t.hom(u.obj(a), u.obj(b));
            let mut images: Vec<usize> = dom.iter().map(|&m| u.mor(m)).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != dom.len() {
                faithful = false;
            }
            if images.len() != cod.len() {
                full = false;
            }
        }
    }
    let classes = pi0(t);
    let mut hit = vec![false; classes.class_count];
    for a in 0..s.object_count() {
        hit[classes.class_of[u.obj(a)]] = true;
    }
    let essentially_surjective = hit.iter().all(|&h| h);
    FunctorProps { full, faithful, essentially_surjective, equivalence: full && faithful && essentially_surjective }
}

/// Component structure of a groupoid together with least-index spanning
/// paths `path_to[a] : representative(class(a)) → a`.
#[derive(Clone, Debug)]
pub struct Transport {
    pub classes: IsoClassTable,
    pub path_to: Vec<usize>,
}

pub fn transport(g: &Groupoid) -> Transport {
    let classes = pi0(g);
    let mut path_to = vec![usize::MAX; g.object_count()];
    for &rep in &classes.representative {
        path_to[rep] = g.identity(rep);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(rep);
        while let Some(a) = queue.pop_front() {
            for &m in g.morphisms_from(a) {
                let b = g.dst(m);
                if path_to[b] == usize::MAX {
                    path_to[b] = g.compose2(path_to[a], m); // m ∘ path(a)
                    queue.push_back(b);
                }
            }
        }
    }
    Transport { classes, path_to }
}

/// Components at the representative of `class` that extend to a natural
/// isomorphism `u → v` over that component, in ascending morphism order.
///
/// A choice at the representative propagates uniquely along spanning paths;
/// it extends iff it commutes with the image of the vertex group.
pub(crate) fn natiso_rep_choices(
    u: &GroupoidFunctor,
    v: &GroupoidFunctor,
    tr: &Transport,
    class: usize,
) -> Vec<usize> {
    let s = &u.source;
    let t = &u.target;
    let r = tr.classes.representative[class];
    t.hom(u.obj(r), v.obj(r))
        .iter()
        .copied()
        .filter(|&sig| {
            s.hom(r, r).iter().all(|&loop_m| {
                // σ ∘ u(γ) = v(γ) ∘ σ
                t.compose(u.mor(loop_m), sig) == t.compose(sig, v.mor(loop_m))
            })
        })
        .collect()
}

/// Extend representative choices (one per class) to full components.
pub(crate) fn propagate_natiso(
    u: &GroupoidFunctor,
    v: &GroupoidFunctor,
    tr: &Transport,
    rep_choice: &[usize],
) -> Vec<usize> {
    let s = &u.source;
    let t = &u.target;
    (0..s.object_count())
        .map(|a| {
            let sig = rep_choice[tr.classes.class_of[a]];
            let p = tr.path_to[a];
            // σ_a = v(p) ∘ σ_rep ∘ u(p)^{-1}
            t.compose3(t.inverse(u.mor(p)), sig, v.mor(p))
        })
        .collect()
}

/// Search for a natural isomorphism between two parallel functors; the
/// least admissible component is chosen at each representative. Returns
/// `None` when no natural isomorphism exists.
pub fn find_natural_iso(u: &GroupoidFunctor, v: &GroupoidFunctor) -> Option<NaturalIso> {
    assert!(*u.source == *v.source && *u.target == *v.target, "functors are not parallel");
    let tr = transport(&u.source);
    let mut rep_choice = Vec::with_capacity(tr.classes.class_count);
    for class in 0..tr.classes.class_count {
        let choices = natiso_rep_choices(u, v, &tr, class);
        rep_choice.push(*choices.first()?);
    }
    let components = propagate_natiso(u, v, &tr, &rep_choice);
    let iso = NaturalIso { from: u.clone(), to: v.clone(), components };
    debug_assert!(iso.validate().is_ok(), "{}", iso.validate());
    Some(iso)
}

/// A skeleton with the inclusion/retraction pair and a natural isomorphism
/// from `inclusion ∘ retraction` to the identity.
#[derive(Clone, Debug)]
pub struct SkeletonData {
    pub skeleton: Arc<Groupoid>,
    pub inclusion: GroupoidFunctor,
    pub retraction: GroupoidFunctor,
    pub witness: NaturalIso,
}

pub fn skeleton(g: &Arc<Groupoid>) -> SkeletonData {
    let tr = transport(g);
    let classes = &tr.classes;
    let is_rep: Vec<bool> = {
        let mut v = vec![false; g.object_count()];
        for &r in &classes.representative {
            v[r] = true;
        }
        v
    };
    let mut keys: Vec<usize> = (0..g.morphism_count())
        .filter(|&m| is_rep[g.src(m)] && is_rep[g.dst(m)])
        .collect();
    keys.sort_unstable();
    let morphisms: Vec<(usize, usize, usize)> = keys
        .iter()
        .map(|&m| (m, classes.class_of[g.src(m)], classes.class_of[g.dst(m)]))
        .collect();
    let (skel, index) = crate::groupoid::assemble(
        classes.class_count,
        morphisms,
        |c| g.identity(classes.representative[c]),
        |&m| g.inverse(m),
        |&f, &h| g.compose2(f, h),
    );
    let inclusion = GroupoidFunctor::new(
        skel.clone(),
        g.clone(),
        classes.representative.clone(),
        keys.clone(),
    );
    let retraction = GroupoidFunctor::new(
        g.clone(),
        skel.clone(),
        classes.class_of.clone(),
        (0..g.morphism_count())
            .map(|f| {
                let ta = tr.path_to[g.src(f)];
                let tb = tr.path_to[g.dst(f)];
                index[&g.compose3(ta, f, g.inverse(tb))]
            })
            .collect(),
    );
    let round = retraction.then(&inclusion);
    let witness = NaturalIso {
        from: round,
        to: GroupoidFunctor::identity(g),
        components: tr.path_to.clone(),
    };
    SkeletonData { skeleton: skel, inclusion, retraction, witness }
}

/// One component of the splitting `G ≅ ∐ indiscrete(nᵢ) × Hᵢ`.
#[derive(Clone, Debug)]
pub struct SplitPart {
    pub object_count: usize,
    pub vertex_group: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct SplitData {
    pub parts: Vec<SplitPart>,
    /// The model `∐ᵢ indiscrete(nᵢ) × Hᵢ`.
    pub model: Arc<Groupoid>,
    /// An isomorphism from the model onto the original groupoid.
    pub iso: GroupoidFunctor,
}

/// Split every component as an indiscrete groupoid times its vertex group,
/// with the identification constructed from least-index morphism choices.
pub fn connected_split(g: &Arc<Groupoid>) -> SplitData {
    let classes = pi0(g);
    let mut parts = Vec::new();
    let mut part_groupoids = Vec::new();
    let mut object_maps: Vec<Vec<usize>> = Vec::new();
    let mut morphism_maps: Vec<Vec<usize>> = Vec::new();
    for c in 0..classes.class_count {
        let rep = classes.representative[c];
        let members: Vec<usize> =
            (0..g.object_count()).filter(|&a| classes.class_of[a] == c).collect();
        let n = members.len();
        let (vertex, realization) = g.vertex_group(rep);
        let order = vertex.order();
        let anchors: Vec<usize> = members.iter().map(|&a| g.hom(rep, a)[0]).collect();
        let (part, _, _) = product(&indiscrete_groupoid(n), &group_groupoid(&vertex));
        // Product morphism ids: (a*n + b) * order + h.
        let mut object_map = vec![0usize; n];
        for (local, &a) in members.iter().enumerate() {
            object_map[local] = a;
        }
        let mut morphism_map = vec![0usize; part.morphism_count()];
        for a in 0..n {
            for b in 0..n {
                for h in 0..order {
                    let local = (a * n + b) * order + h;
                    // k_b ∘ h ∘ k_a^{-1}
                    morphism_map[local] =
                        g.compose3(g.inverse(anchors[a]), realization[h], anchors[b]);
                }
            }
        }
        parts.push(SplitPart { object_count: n, vertex_group: vertex });
        part_groupoids.push(part);
        object_maps.push(object_map);
        morphism_maps.push(morphism_map);
    }
    // Fold coproducts left to right, tracking offsets.
    let mut model = match part_groupoids.first() {
        Some(p) => p.clone(),
        None => discrete_empty(),
    };
    let mut object_map = object_maps.first().cloned().unwrap_or_default();
    let mut morphism_map = morphism_maps.first().cloned().unwrap_or_default();
    for i in 1..part_groupoids.len() {
        let (sum, _, _) = coproduct(&model, &part_groupoids[i]);
        model = sum;
        object_map.extend(&object_maps[i]);
        morphism_map.extend(&morphism_maps[i]);
    }
    let iso = GroupoidFunctor::new(model.clone(), g.clone(), object_map, morphism_map);
    SplitData { parts, model, iso }
}

fn discrete_empty() -> Arc<Groupoid> {
    crate::groupoid::discrete_groupoid(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::validate_groupoid;
    use crate::groups::{cyclic, symmetric};

    fn s3() -> Arc<Groupoid> {
        group_groupoid(&symmetric(3))
    }

    /// The inclusion C2 → S3 generated by a transposition.
    fn c2_in_s3() -> GroupoidFunctor {
        let s3g = symmetric(3);
        let c2 = cyclic(2);
        let t = (1..6).find(|&x| s3g.element_order(x) == 2).unwrap();
        let src = group_groupoid(&c2);
        let tgt = s3();
        GroupoidFunctor::new(src, tgt, vec![0], vec![0, t])
    }

    #[test]
    fn identity_is_an_equivalence() {
        let u = GroupoidFunctor::identity(&s3());
        let p = functor_properties(&u);
        assert!(p.full && p.faithful && p.essentially_surjective && p.equivalence);
    }

    #[test]
    fn subgroup_inclusion_flags() {
        let u = c2_in_s3();
        assert!(u.validate().is_ok());
        let p = functor_properties(&u);
        assert!(p.faithful);
        assert!(!p.full);
        assert!(p.essentially_surjective); // S3 is connected
        assert!(!p.equivalence);
    }

    #[test]
    fn indiscrete_to_point_is_equivalence() {
        let i2 = indiscrete_groupoid(2);
        let one = indiscrete_groupoid(1);
        let u = GroupoidFunctor::new(i2.clone(), one.clone(), vec![0, 0], vec![0; 4]);
        assert!(u.validate().is_ok());
        assert!(functor_properties(&u).equivalence);
    }

    #[test]
    fn natural_iso_for_equal_functors_is_identity() {
        let u = GroupoidFunctor::identity(&s3());
        let iso = find_natural_iso(&u, &u).unwrap();
        assert_eq!(iso.components, vec![u.target.identity(0)]);
        assert!(iso.validate().is_ok());
    }

    #[test]
    fn conjugation_is_isomorphic_to_identity() {
        let g = s3();
        let grp = symmetric(3);
        for c in 1..6 {
            let object_map = vec![0];
            let morphism_map: Vec<usize> = (0..6).map(|x| grp.conjugate(c, x)).collect();
            let v = GroupoidFunctor::new(g.clone(), g.clone(), object_map, morphism_map);
            assert!(v.validate().is_ok());
            let iso = find_natural_iso(&GroupoidFunctor::identity(&g), &v)
                .expect("inner automorphism is isomorphic to the identity");
            assert!(iso.validate().is_ok());
        }
    }

    #[test]
    fn trivial_endo_vs_identity_on_c2_has_no_iso() {
        let c2 = group_groupoid(&cyclic(2));
        let trivial = GroupoidFunctor::new(c2.clone(), c2.clone(), vec![0], vec![0, 0]);
        assert!(trivial.validate().is_ok());
        assert!(find_natural_iso(&trivial, &GroupoidFunctor::identity(&c2)).is_none());
    }

    #[test]
    fn skeleton_of_indiscrete_is_a_point() {
        let data = skeleton(&indiscrete_groupoid(3));
        assert_eq!(data.skeleton.object_count(), 1);
        assert_eq!(data.skeleton.morphism_count(), 1);
        assert!(validate_groupoid(&data.skeleton).is_ok());
        assert!(data.inclusion.validate().is_ok());
        assert!(data.retraction.validate().is_ok());
        assert!(data.witness.validate().is_ok());
        assert!(functor_properties(&data.inclusion).equivalence);
        // retraction ∘ inclusion is the identity on the skeleton
        let round = data.inclusion.then(&data.retraction);
        assert!(round.same_maps(&GroupoidFunctor::identity(&data.skeleton)));
    }

    #[test]
    fn connected_split_of_indiscrete_and_group() {
        let data = connected_split(&indiscrete_groupoid(2));
        assert_eq!(data.parts.len(), 1);
        assert_eq!(data.parts[0].object_count, 2);
        assert_eq!(data.parts[0].vertex_group.order(), 1);
        assert!(data.iso.validate().is_ok());
        assert!(functor_properties(&data.iso).equivalence);

        let data = connected_split(&s3());
        assert_eq!(data.parts.len(), 1);
        assert_eq!(data.parts[0].object_count, 1);
        assert_eq!(data.parts[0].vertex_group.order(), 6);
        assert!(data.iso.validate().is_ok());
        // The iso is bijective on objects and morphisms.
        assert_eq!(data.model.object_count(), 1);
        assert_eq!(data.model.morphism_count(), 6);
    }

    #[test]
    fn pi0_commutes_with_skeleton() {
        for g in [indiscrete_groupoid(3), s3(), crate::groupoid::discrete_groupoid(4)] {
            let before = pi0(&g);
            let after = pi0(&skeleton(&g).skeleton);
            assert_eq!(before.class_count, after.class_count);
            assert_eq!(before.sorted_aut_orders(), after.sorted_aut_orders());
        }
    }
}
