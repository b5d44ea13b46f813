//! Finite groups presented by multiplication tables.
//!
//! Groups enter the library in two ways: as Cayley tables and as sets of
//! permutation generators (1-based images, closed off by breadth-first
//! multiplication). Element 0 is always the identity after normalisation.
//!
//! The product convention is `mul(a, b) = a ∘ b` ("apply b, then a"), which
//! matches function composition for permutations.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Build from a Cayley table, verifying all group axioms.
    /// The identity is located and moved to index 0.
    pub fn from_cayley(name: &str, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(GroupError::NotAGroup("table is not square".into()));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(GroupError::NotAGroup("entry out of range (closure fails)".into()));
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == id && table[b][a] == id) {
                Some(b) => inv[a] = b,
                None => return Err(GroupError::NotAGroup(format!("element {a} has no inverse"))),
            }
        }
        // Relabel so the identity is element 0.
        let perm: Vec<usize> = std::iter::once(id).chain((0..n).filter(|&x| x != id)).collect();
        let mut pos = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        let mul = (0..n)
            .map(|a| (0..n).map(|b| pos[table[perm[a]][perm[b]]]).collect())
            .collect();
        let inv = (0..n).map(|a| pos[inv[perm[a]]]).collect();
        Ok(FiniteGroup { name: name.to_string(), mul, inv })
    }

    /// Close a set of permutations (1-based images) under composition.
    pub fn from_permutations(name: &str, degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut zero_based = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != degree {
                return Err(GroupError::BadPermutation(format!(
                    "expected {degree} images, got {}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            let mut p = Vec::with_capacity(degree);
            for &img in g {
                if img == 0 || img > degree || seen[img - 1] {
                    return Err(GroupError::BadPermutation(format!("images {g:?} are not a bijection")));
                }
                seen[img - 1] = true;
                p.push(img - 1);
            }
            p.shrink_to_fit();
            zero_based.push(p);
        }
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> {
            // (a ∘ b)(x) = a(b(x))
            (0..degree).map(|x| a[b[x]]).collect()
        };
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut frontier = 0;
        while frontier < elements.len() {
            let cur = elements[frontier].clone();
            for g in &zero_based {
                let next = compose(g, &cur);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            frontier += 1;
        }
        let n = elements.len();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&elements[a], &elements[b])]).collect())
            .collect::<Vec<Vec<usize>>>();
        let inv = (0..n)
            .map(|a| {
                let mut inv_perm = vec![0; degree];
                for (x, &img) in elements[a].iter().enumerate() {
                    inv_perm[img] = x;
                }
                index[&inv_perm]
            })
            .collect();
        Ok(FiniteGroup { name: name.to_string(), mul, inv })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.mul.len()
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent_of_p_part(&self, p: usize) -> u32 {
        let mut m = 0;
        for a in 0..self.order() {
            let mut ord = self.element_order(a);
            let mut k = 0;
            while ord % p == 0 {
                ord /= p;
                k += 1;
            }
            m = m.max(k);
        }
        m
    }

    pub fn centralizer(&self, xs: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| xs.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Closure of a subset under multiplication and inverses, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![false; self.order()];
        set[0] = true;
        let mut stack: Vec<usize> = vec![0];
        for &g in gens {
            if !set[g] {
                set[g] = true;
                stack.push(g);
            }
        }
        let mut i = 0;
        while i < stack.len() {
            let a = stack[i];
            i += 1;
            for &g in gens {
                for x in [self.mul(a, g), self.mul(g, a), self.inv(a)] {
                    if !set[x] {
                        set[x] = true;
                        stack.push(x);
                    }
                }
            }
        }
        (0..self.order()).filter(|&x| set[x]).collect()
    }

    /// All subgroups, each as a sorted element list, ordered by (size, elements).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![vec![0]];
        let mut frontier = 0;
        while frontier < found.len() {
            let base = found[frontier].clone();
            frontier += 1;
            for g in 1..self.order() {
                if base.contains(&g) {
                    continue;
                }
                let mut gens = base.clone();
                gens.push(g);
                let sub = self.generated_subgroup(&gens);
                if !found.contains(&sub) {
                    found.push(sub);
                }
            }
        }
        found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        found.dedup();
        found
    }

    /// Present a subgroup (given by its sorted element list) as a group of
    /// its own, together with the embedding into `self`.
    pub fn subgroup_embedding(&self, elements: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let pos: std::collections::HashMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        // elements is sorted and contains the parent identity 0, so local
        // index 0 is already the identity and from_cayley keeps the order.
        debug_assert_eq!(elements[0], 0);
        let sub = FiniteGroup::from_cayley(&format!("{}-sub{}", self.name, elements.len()), table)
            .expect("subgroup closure");
        (sub, elements.to_vec())
    }

    pub fn direct_product(name: &str, g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let n = g.order() * h.order();
        let idx = |a: usize, b: usize| a * h.order() + b;
        let mut mul = vec![vec![0; n]; n];
        for a1 in 0..g.order() {
            for b1 in 0..h.order() {
                for a2 in 0..g.order() {
                    for b2 in 0..h.order() {
                        mul[idx(a1, b1)][idx(a2, b2)] = idx(g.mul(a1, a2), h.mul(b1, b2));
                    }
                }
            }
        }
        let inv = (0..n).map(|x| idx(g.inv(x / h.order()), h.inv(x % h.order()))).collect();
        FiniteGroup { name: name.to_string(), mul, inv }
    }
}

/// Cyclic group of order `n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let inv = (0..n).map(|a| (n - a) % n).collect();
    FiniteGroup { name: format!("C{n}"), mul, inv }
}

pub fn trivial_group() -> FiniteGroup {
    cyclic(1)
}

/// Symmetric group on `n` letters, as permutations.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((1..=5).contains(&n), "desk-scale symmetric groups only");
    let mut gens = Vec::new();
    if n >= 2 {
        let mut transposition: Vec<usize> = (1..=n).collect();
        transposition.swap(0, 1);
        gens.push(transposition);
    }
    if n >= 3 {
        let cycle: Vec<usize> = (2..=n).chain(std::iter::once(1)).collect();
        gens.push(cycle);
    }
    FiniteGroup::from_permutations(&format!("S{n}"), n, &gens).unwrap()
}

/// Alternating group on `n` letters.
pub fn alternating(n: usize) -> FiniteGroup {
    assert!((3..=5).contains(&n));
    // Generated by 3-cycles (1 2 3) and, for n > 3, (1 2)(3 4)-style even
    // permutations extended with an n-cycle pattern.
    let mut gens = vec![{
        let mut p: Vec<usize> = (1..=n).collect();
        p[0] = 2;
        p[1] = 3;
        p[2] = 1;
        p
    }];
    if n == 4 {
        gens.push(vec![2, 1, 4, 3]);
    }
    if n == 5 {
        gens.push(vec![2, 3, 4, 5, 1]); // 5-cycle is even
    }
    FiniteGroup::from_permutations(&format!("A{n}"), n, &gens).unwrap()
}

/// Dihedral group of order `2n` (symmetries of the n-gon), as permutations.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3, "the permutation model needs n >= 3");
    let rotation: Vec<usize> = (2..=n).chain(std::iter::once(1)).collect();
    let reflection: Vec<usize> = (0..n).map(|i| ((n - i) % n) + 1).collect();
    FiniteGroup::from_permutations(&format!("D{n}"), n, &[rotation, reflection]).unwrap()
}

/// Quaternion group of order 8, {±1, ±i, ±j, ±k} by Cayley table.
pub fn quaternion8() -> FiniteGroup {
    // Indices: 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
    let neg = |x: usize| x ^ 1;
    let mut table = vec![vec![0; 8]; 8];
    let base = |a: usize, b: usize| -> usize {
        // product on {1:0, i:2, j:4, k:6} with sign folded in via neg
        match (a, b) {
            (0, y) => y,
            (x, 0) => x,
            (2, 2) => 1,
            (4, 4) => 1,
            (6, 6) => 1,
            (2, 4) => 6,
            (4, 2) => 7,
            (4, 6) => 2,
            (6, 4) => 3,
            (6, 2) => 4,
            (2, 6) => 5,
            _ => unreachable!(),
        }
    };
    for a in 0..8 {
        for b in 0..8 {
            let mut r = base(a & !1, b & !1);
            if a & 1 == 1 {
                r = neg(r);
            }
            if b & 1 == 1 {
                r = neg(r);
            }
            table[a][b] = r;
        }
    }
    FiniteGroup::from_cayley("Q8", table).unwrap()
}

/// Klein four-group.
pub fn klein_four() -> FiniteGroup {
    FiniteGroup::direct_product("C2xC2", &cyclic(2), &cyclic(2))
}

/// One group per isomorphism type of abelian group of order `2..=max`.
pub fn abelian_groups_up_to(max: usize) -> Vec<FiniteGroup> {
    fn prime_factor(n: usize) -> usize {
        (2..).find(|d| n % d == 0).unwrap()
    }
    // Partitions of the exponent of each prime power give the types.
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        fn go(n: usize, max: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for k in (1..=n.min(max)).rev() {
                for mut rest in go(n - k, k) {
                    let mut p = vec![k];
                    p.append(&mut rest);
                    out.push(p);
                }
            }
            out
        }
        go(n, n)
    }
    let mut out = Vec::new();
    for n in 2..=max {
        // Factor n into prime powers.
        let mut rest = n;
        let mut prime_powers: Vec<(usize, usize)> = Vec::new();
        while rest > 1 {
            let p = prime_factor(rest);
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        // Cartesian product of partition choices per prime.
        let mut shapes: Vec<Vec<usize>> = vec![vec![]];
        for &(p, e) in &prime_powers {
            let mut next = Vec::new();
            for shape in &shapes {
                for part in partitions(e) {
                    let mut s = shape.clone();
                    for k in part {
                        s.push(p.pow(k as u32));
                    }
                    next.push(s);
                }
            }
            shapes = next;
        }
        for factors in shapes {
            let mut g = cyclic(factors[0]);
            for &f in &factors[1..] {
                g = FiniteGroup::direct_product("", &g, &cyclic(f));
            }
            g.name = factors.iter().map(|f| format!("C{f}")).collect::<Vec<_>>().join("x");
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_from_cayley() {
        let g = FiniteGroup::from_cayley("C2", vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn s3_from_generators_has_order_six() {
        let g = FiniteGroup::from_permutations("S3", 3, &[vec![2, 1, 3], vec![2, 3, 1]]).unwrap();
        assert_eq!(g.order(), 6);
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn broken_tables_rejected() {
        // Left-identity only: not a group under our axioms? Build a table
        // failing associativity instead.
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(matches!(FiniteGroup::from_cayley("bad", bad), Err(GroupError::NotAGroup(_))));
        let out_of_range = vec![vec![0, 1], vec![1, 7]];
        assert!(FiniteGroup::from_cayley("bad", out_of_range).is_err());
    }

    #[test]
    fn quaternion_structure() {
        let q = quaternion8();
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        // Exactly one element of order 2.
        let order2 = (0..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(order2, 1);
        assert_eq!(q.conjugacy_classes().len(), 5);
    }

    #[test]
    fn dihedral_and_alternating_orders() {
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(symmetric(3).order(), 6);
    }

    #[test]
    fn subgroup_lattice_of_s3() {
        let s3 = symmetric(3);
        let subs = s3.subgroups();
        // 1, three C2, one C3, S3.
        assert_eq!(subs.len(), 6);
        let mut sizes: Vec<usize> = subs.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn abelian_catalogue_counts() {
        let all = abelian_groups_up_to(16);
        // Number of abelian groups of order n for n=2..16:
        // 1,1,2,1,1,1,3,2,1,1,2,1,1,1,5  => total 24
        assert_eq!(all.len(), 24);
        assert!(all.iter().all(|g| g.is_abelian()));
        assert_eq!(all.iter().filter(|g| g.order() == 16).count(), 5);
    }

    #[test]
    fn centralizers_in_s3() {
        let s3 = symmetric(3);
        for class in s3.conjugacy_classes() {
            let z = s3.centralizer(&[class[0]]);
            assert_eq!(z.len() * class.len(), 6);
        }
    }
}
