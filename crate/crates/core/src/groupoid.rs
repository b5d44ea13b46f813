//! Finite groupoids with globally indexed morphisms.
//!
//! A groupoid stores its morphisms flat: endpoint vectors, an identity per
//! object, an inverse per morphism, and a composition table keyed by
//! composable pairs. Hom-sets are derived views. Values are immutable after
//! construction and every operation returns new values.
//!
//! Composition convention, fixed once for the whole crate:
//! `compose(f: a→b, g: b→c)` is defined exactly when `dst(f) = src(g)` and
//! yields `g∘f: a→c`.

use crate::groups::FiniteGroup;
use crate::report::Report;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Groupoid {
    objects: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    table: HashMap<(usize, usize), usize>,
    hom_index: HashMap<(usize, usize), Vec<usize>>,
    out_index: Vec<Vec<usize>>,
}

impl PartialEq for Groupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.src == other.src
            && self.dst == other.dst
            && self.identity == other.identity
            && self.inverse == other.inverse
            && self.table == other.table
    }
}
impl Eq for Groupoid {}

impl Groupoid {
    /// Assemble from raw parts without validation (see [`validate_groupoid`]).
    /// Out-of-range endpoints are tolerated here so that defective tables can
    /// still be inspected and reported.
    pub fn from_parts(
        objects: usize,
        endpoints: Vec<(usize, usize)>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        table: HashMap<(usize, usize), usize>,
    ) -> Self {
        let src: Vec<usize> = endpoints.iter().map(|&(s, _)| s).collect();
        let dst: Vec<usize> = endpoints.iter().map(|&(_, d)| d).collect();
        let mut hom_index: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut out_index = vec![Vec::new(); objects];
        for m in 0..src.len() {
            if src[m] < objects && dst[m] < objects {
                hom_index.entry((src[m], dst[m])).or_default().push(m);
                out_index[src[m]].push(m);
            }
        }
        Groupoid { objects, src, dst, identity, inverse, table, hom_index, out_index }
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }
    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }
    pub fn src(&self, m: usize) -> usize {
        self.src[m]
    }
    pub fn dst(&self, m: usize) -> usize {
        self.dst[m]
    }
    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }
    pub fn inverse(&self, m: usize) -> usize {
        self.inverse[m]
    }

    /// `g∘f`, defined when `dst(f) = src(g)`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.table.get(&(f, g)).copied()
    }

    /// `g∘f` for a pair known to be composable.
    pub fn compose2(&self, f: usize, g: usize) -> usize {
        self.table[&(f, g)]
    }

    /// `h∘g∘f`.
    pub fn compose3(&self, f: usize, g: usize, h: usize) -> usize {
        self.compose2(self.compose2(f, g), h)
    }

    /// Conjugation `g u g^{-1}` for `u: a→a`, `g: a→b`.
    pub fn conjugate(&self, g: usize, u: usize) -> usize {
        self.compose3(self.inverse(g), u, g)
    }

    /// All morphisms `a → b`, in ascending id order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.hom_index.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    /// All morphisms with source `a`, in ascending id order.
    pub fn morphisms_from(&self, a: usize) -> &[usize] {
        &self.out_index[a]
    }

    /// Multiplicative order of a loop `u: a→a`.
    pub fn loop_order(&self, u: usize) -> usize {
        let id = self.identity[self.src[u]];
        let mut x = u;
        let mut n = 1;
        while x != id {
            x = self.compose2(x, u);
            n += 1;
            assert!(n <= self.morphism_count(), "loop does not cycle; corrupt table");
        }
        n
    }

    /// The vertex group `G(a, a)` as a finite group, together with the
    /// morphism ids realising its elements (element 0 is the identity).
    pub fn vertex_group(&self, a: usize) -> (FiniteGroup, Vec<usize>) {
        let mut loops: Vec<usize> = self.hom(a, a).to_vec();
        let ida = self.identity(a);
        loops.retain(|&m| m != ida);
        loops.insert(0, ida);
        let pos: HashMap<usize, usize> = loops.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        // mul(x, y) = x∘y = compose(y, x)
        let table: Vec<Vec<usize>> =
            loops.iter().map(|&x| loops.iter().map(|&y| pos[&self.compose2(y, x)]).collect()).collect();
        let group = FiniteGroup::from_cayley(&format!("G({a})"), table).expect("vertex group");
        (group, loops)
    }
}

/// Uniform constructor for groupoids whose morphisms are described by keys
/// with a composition law. Returns the groupoid and the key→id index.
pub(crate) fn assemble<K>(
    objects: usize,
    morphisms: Vec<(K, usize, usize)>,
    identity_key: impl Fn(usize) -> K,
    inverse_key: impl Fn(&K) -> K,
    compose_key: impl Fn(&K, &K) -> K,
) -> (Arc<Groupoid>, HashMap<K, usize>)
where
    K: Eq + Hash + Clone + std::fmt::Debug,
{
    let mut index: HashMap<K, usize> = HashMap::with_capacity(morphisms.len());
    for (i, (k, _, _)) in morphisms.iter().enumerate() {
        let previous = index.insert(k.clone(), i);
        debug_assert!(previous.is_none(), "duplicate morphism key {k:?}");
    }
    let endpoints: Vec<(usize, usize)> = morphisms.iter().map(|&(_, s, d)| (s, d)).collect();
    let identity: Vec<usize> = (0..objects).map(|a| index[&identity_key(a)]).collect();
    let inverse: Vec<usize> = morphisms.iter().map(|(k, _, _)| index[&inverse_key(k)]).collect();
    let mut out_by_src: Vec<Vec<usize>> = vec![Vec::new(); objects];
    for (i, &(s, _)) in endpoints.iter().enumerate() {
        out_by_src[s].push(i);
    }
    let mut table = HashMap::new();
    for (f, &(_, d)) in endpoints.iter().enumerate() {
        for &g in &out_by_src[d] {
            let key = compose_key(&morphisms[f].0, &morphisms[g].0);
            table.insert((f, g), index[&key]);
        }
    }
    (Arc::new(Groupoid::from_parts(objects, endpoints, identity, inverse, table)), index)
}

/// Check every groupoid invariant exhaustively, reporting the first
/// violation of each kind.
pub fn validate_groupoid(g: &Groupoid) -> Report {
    let mut report = Report::new();
    let n = g.objects;
    let m = g.morphism_count();
    for i in 0..m {
        if g.src[i] >= n || g.dst[i] >= n {
            report.note("index-range", format!("morphism {i} has endpoint out of range"));
            break;
        }
    }
    if g.identity.len() != n {
        report.note("index-range", "identity table length differs from object count");
    }
    if g.inverse.len() != m {
        report.note("index-range", "inverse table length differs from morphism count");
    }
    for (&(f, h), &r) in g.table.iter() {
        if f >= m || h >= m || r >= m {
            report.note("index-range", format!("composition entry ({f},{h}) out of range"));
            break;
        }
    }
    if !report.is_ok() {
        return report; // endpoint data unreliable; stop before derived checks
    }
    for a in 0..n {
        let e = g.identity[a];
        if e >= m || g.src[e] != a || g.dst[e] != a {
            report.note("identity", format!("identity of object {a} is not a loop at {a}"));
            break;
        }
    }
    // Totality and endpoint correctness of the composition table.
    'outer: for f in 0..m {
        for &h in g.morphisms_from(g.dst[f]) {
            match g.compose(f, h) {
                None => {
                    report.note(
                        "composition-totality",
                        format!("composable pair ({f},{h}) missing from table"),
                    );
                    break 'outer;
                }
                Some(r) => {
                    if g.src[r] != g.src[f] || g.dst[r] != g.dst[h] {
                        report.note(
                            "composition-endpoint",
                            format!("entry for ({f},{h}) has wrong endpoints"),
                        );
                        break 'outer;
                    }
                }
            }
        }
    }
    for (&(f, h), _) in g.table.iter() {
        if g.dst[f] != g.src[h] {
            report.note(
                "composition-endpoint",
                format!("table defines ({f},{h}) although dst(f) != src(h)"),
            );
            break;
        }
    }
    // Identity laws.
    'idlaw: for f in 0..m {
        let ls = g.identity[g.src[f]];
        let ld = g.identity[g.dst[f]];
        if g.compose(ls, f) != Some(f) || g.compose(f, ld) != Some(f) {
            report.note("identity", format!("identity is not neutral for morphism {f}"));
            break 'idlaw;
        }
    }
    // Associativity on all composable triples.
    'assoc: for f in 0..m {
        for &h in g.morphisms_from(g.dst[f]) {
            for &k in g.morphisms_from(g.dst[h]) {
                let left = g.compose(f, h).and_then(|fh| g.compose(fh, k));
                let right = g.compose(h, k).and_then(|hk| g.compose(f, hk));
                if left.is_none() || left != right {
                    report.note("associativity", format!("triple ({f},{h},{k}) fails"));
                    break 'assoc;
                }
            }
        }
    }
    // Two-sided inverses.
    for f in 0..m {
        let i = g.inverse[f];
        if i >= m
            || g.src[i] != g.dst[f]
            || g.dst[i] != g.src[f]
            || g.compose(f, i) != Some(g.identity[g.src[f]])
            || g.compose(i, f) != Some(g.identity[g.dst[f]])
        {
            report.note("inverse", format!("morphism {f} lacks a two-sided inverse"));
            break;
        }
    }
    report
}

/// A finite group regarded as a one-object groupoid.
pub fn group_groupoid(group: &FiniteGroup) -> Arc<Groupoid> {
    let n = group.order();
    let morphisms: Vec<(usize, usize, usize)> = (0..n).map(|e| (e, 0, 0)).collect();
    let (g, _) = assemble(
        1,
        morphisms,
        |_| group.identity(),
        |&e| group.inv(e),
        // compose(f, g) = g∘f = mul(g, f)
        |&f, &g| group.mul(g, f),
    );
    g
}

/// Groupoid with `n` objects and only identity morphisms.
pub fn discrete_groupoid(n: usize) -> Arc<Groupoid> {
    let morphisms: Vec<(usize, usize, usize)> = (0..n).map(|a| (a, a, a)).collect();
    let (g, _) = assemble(n, morphisms, |a| a, |&a| a, |&a, _| a);
    g
}

/// Groupoid with `n` objects and exactly one morphism between each ordered
/// pair of objects.
pub fn indiscrete_groupoid(n: usize) -> Arc<Groupoid> {
    let mut morphisms = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            morphisms.push(((a, b), a, b));
        }
    }
    let (g, _) = assemble(n, morphisms, |a| (a, a), |&(a, b)| (b, a), |&(a, _), &(_, c)| (a, c));
    g
}

/// A structure-preserving map of groupoids.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupoidFunctor {
    pub source: Arc<Groupoid>,
    pub target: Arc<Groupoid>,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Self {
        GroupoidFunctor { source, target, object_map, morphism_map }
    }

    pub fn identity(g: &Arc<Groupoid>) -> Self {
        GroupoidFunctor {
            source: g.clone(),
            target: g.clone(),
            object_map: (0..g.object_count()).collect(),
            morphism_map: (0..g.morphism_count()).collect(),
        }
    }

    pub fn obj(&self, a: usize) -> usize {
        self.object_map[a]
    }
    pub fn mor(&self, m: usize) -> usize {
        self.morphism_map[m]
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &GroupoidFunctor) -> GroupoidFunctor {
        assert!(
            Arc::ptr_eq(&self.target, &other.source) || *self.target == *other.source,
            "functor composition endpoint mismatch"
        );
        GroupoidFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map: self.object_map.iter().map(|&a| other.obj(a)).collect(),
            morphism_map: self.morphism_map.iter().map(|&m| other.mor(m)).collect(),
        }
    }

    /// Same underlying maps (used for strict equality of composites).
    pub fn same_maps(&self, other: &GroupoidFunctor) -> bool {
        self.object_map == other.object_map && self.morphism_map == other.morphism_map
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let s = &self.source;
        let t = &self.target;
        report.check("shape", self.object_map.len() == s.object_count(), || {
            "object map length differs from source object count".into()
        });
        report.check("shape", self.morphism_map.len() == s.morphism_count(), || {
            "morphism map length differs from source morphism count".into()
        });
        if !report.is_ok() {
            return report;
        }
        if self.object_map.iter().any(|&a| a >= t.object_count())
            || self.morphism_map.iter().any(|&m| m >= t.morphism_count())
        {
            report.note("shape", "image index out of range");
            return report;
        }
        for m in 0..s.morphism_count() {
            let im = self.mor(m);
            if t.src(im) != self.obj(s.src(m)) || t.dst(im) != self.obj(s.dst(m)) {
                report.note("endpoints", format!("morphism {m} image has wrong endpoints"));
                break;
            }
        }
        for a in 0..s.object_count() {
            if self.mor(s.identity(a)) != t.identity(self.obj(a)) {
                report.note("identities", format!("identity of {a} not preserved"));
                break;
            }
        }
        'comp: for f in 0..s.morphism_count() {
            for &g in s.morphisms_from(s.dst(f)) {
                let lhs = self.mor(s.compose2(f, g));
                let rhs = t.compose(self.mor(f), self.mor(g));
                if rhs != Some(lhs) {
                    report.note("composition", format!("composite ({f},{g}) not preserved"));
                    break 'comp;
                }
            }
        }
        report
    }
}

/// A componentwise isomorphism between two parallel functors.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalIso {
    pub from: GroupoidFunctor,
    pub to: GroupoidFunctor,
    /// For each source object `a`, a morphism `from(a) → to(a)` in the target.
    pub components: Vec<usize>,
}

impl NaturalIso {
    pub fn identity(u: &GroupoidFunctor) -> Self {
        let components =
            (0..u.source.object_count()).map(|a| u.target.identity(u.obj(a))).collect();
        NaturalIso { from: u.clone(), to: u.clone(), components }
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        report.check("parallel", *self.from.source == *self.to.source, || {
            "from/to do not share a source".into()
        });
        report.check("parallel", *self.from.target == *self.to.target, || {
            "from/to do not share a target".into()
        });
        let s = &self.from.source;
        let t = &self.from.target;
        report.check("shape", self.components.len() == s.object_count(), || {
            "component count differs from source object count".into()
        });
        if !report.is_ok() {
            return report;
        }
        for a in 0..s.object_count() {
            let c = self.components[a];
            if c >= t.morphism_count()
                || t.src(c) != self.from.obj(a)
                || t.dst(c) != self.to.obj(a)
            {
                report.note("components", format!("component at {a} has wrong endpoints"));
                return report;
            }
        }
        for f in 0..s.morphism_count() {
            let (a, b) = (s.src(f), s.dst(f));
            // σ_b ∘ from(f) = to(f) ∘ σ_a
            let lhs = t.compose(self.from.mor(f), self.components[b]);
            let rhs = t.compose(self.components[a], self.to.mor(f));
            if lhs.is_none() || lhs != rhs {
                report.note("naturality", format!("square at morphism {f} does not commute"));
                break;
            }
        }
        report
    }
}

/// Product groupoid with its projections.
pub fn product(
    g: &Arc<Groupoid>,
    h: &Arc<Groupoid>,
) -> (Arc<Groupoid>, GroupoidFunctor, GroupoidFunctor) {
    let (ng, nh) = (g.object_count(), h.object_count());
    let (mg, mh) = (g.morphism_count(), h.morphism_count());
    let obj = |a: usize, b: usize| a * nh + b;
    let mut morphisms = Vec::with_capacity(mg * mh);
    for f in 0..mg {
        for k in 0..mh {
            morphisms.push(((f, k), obj(g.src(f), h.src(k)), obj(g.dst(f), h.dst(k))));
        }
    }
    let (prod, index) = assemble(
        ng * nh,
        morphisms,
        |o| (g.identity(o / nh), h.identity(o % nh)),
        |&(f, k)| (g.inverse(f), h.inverse(k)),
        |&(f1, k1), &(f2, k2)| (g.compose2(f1, f2), h.compose2(k1, k2)),
    );
    let proj_g = GroupoidFunctor::new(
        prod.clone(),
        g.clone(),
        (0..ng * nh).map(|o| o / nh).collect(),
        (0..mg * mh).map(|m| m / mh).collect(),
    );
    let proj_h = GroupoidFunctor::new(
        prod.clone(),
        h.clone(),
        (0..ng * nh).map(|o| o % nh).collect(),
        (0..mg * mh).map(|m| m % mh).collect(),
    );
    let _ = index;
    (prod, proj_g, proj_h)
}

/// Product of two functors, `u × v : G×K → H×L`.
pub fn product_functor(
    u: &GroupoidFunctor,
    v: &GroupoidFunctor,
    source_product: &(Arc<Groupoid>, GroupoidFunctor, GroupoidFunctor),
    target_product: &(Arc<Groupoid>, GroupoidFunctor, GroupoidFunctor),
) -> GroupoidFunctor {
    let (src_prod, sp_g, sp_h) = source_product;
    let (tgt_prod, _, _) = target_product;
    let nh_t = v.target.object_count();
    let mh_t = v.target.morphism_count();
    let object_map = (0..src_prod.object_count())
        .map(|o| u.obj(sp_g.obj(o)) * nh_t + v.obj(sp_h.obj(o)))
        .collect();
    let morphism_map = (0..src_prod.morphism_count())
        .map(|m| u.mor(sp_g.mor(m)) * mh_t + v.mor(sp_h.mor(m)))
        .collect();
    GroupoidFunctor::new(src_prod.clone(), tgt_prod.clone(), object_map, morphism_map)
}

/// Coproduct groupoid with its injections.
pub fn coproduct(
    g: &Arc<Groupoid>,
    h: &Arc<Groupoid>,
) -> (Arc<Groupoid>, GroupoidFunctor, GroupoidFunctor) {
    let (ng, mg) = (g.object_count(), g.morphism_count());
    let (nh, mh) = (h.object_count(), h.morphism_count());
    let endpoints: Vec<(usize, usize)> = (0..mg)
        .map(|m| (g.src(m), g.dst(m)))
        .chain((0..mh).map(|m| (h.src(m) + ng, h.dst(m) + ng)))
        .collect();
    let identity: Vec<usize> =
        (0..ng).map(|a| g.identity(a)).chain((0..nh).map(|a| h.identity(a) + mg)).collect();
    let inverse: Vec<usize> =
        (0..mg).map(|m| g.inverse(m)).chain((0..mh).map(|m| h.inverse(m) + mg)).collect();
    let mut table = HashMap::new();
    for f in 0..mg {
        for &k in g.morphisms_from(g.dst(f)) {
            table.insert((f, k), g.compose2(f, k));
        }
    }
    for f in 0..mh {
        for &k in h.morphisms_from(h.dst(f)) {
            table.insert((f + mg, k + mg), h.compose2(f, k) + mg);
        }
    }
    let sum = Arc::new(Groupoid::from_parts(ng + nh, endpoints, identity, inverse, table));
    let inj_g = GroupoidFunctor::new(g.clone(), sum.clone(), (0..ng).collect(), (0..mg).collect());
    let inj_h = GroupoidFunctor::new(
        h.clone(),
        sum.clone(),
        (0..nh).map(|a| a + ng).collect(),
        (0..mh).map(|m| m + mg).collect(),
    );
    (sum, inj_g, inj_h)
}

/// Isomorphism classes of objects with automorphism-group orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClassTable {
    pub class_count: usize,
    /// Least object index in each class; ascending.
    pub representative: Vec<usize>,
    pub class_of: Vec<usize>,
    pub aut_order: Vec<usize>,
}

/// Connected components via union-find over morphism endpoints.
pub fn pi0(g: &Groupoid) -> IsoClassTable {
    let n = g.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for m in 0..g.morphism_count() {
        let (a, b) = (find(&mut parent, g.src(m)), find(&mut parent, g.dst(m)));
        if a != b {
            // Keep the least index as the root so representatives are canonical.
            let (lo, hi) = (a.min(b), a.max(b));
            parent[hi] = lo;
        }
    }
    let mut representative = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for a in 0..n {
        let root = find(&mut parent, a);
        if root == a {
            class_of[a] = representative.len();
            representative.push(a);
        }
    }
    for a in 0..n {
        let root = find(&mut parent, a);
        class_of[a] = class_of[root];
    }
    let aut_order = representative.iter().map(|&r| g.hom(r, r).len()).collect();
    IsoClassTable { class_count: representative.len(), representative, class_of, aut_order }
}

impl IsoClassTable {
    /// Sorted automorphism orders, convenient for comparisons up to ordering.
    pub fn sorted_aut_orders(&self) -> Vec<usize> {
        let mut v = self.aut_order.clone();
        v.sort_unstable();
        v
    }
}
