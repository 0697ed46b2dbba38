//! Finite groups as dense multiplication tables.
//!
//! Every group, abelian or given by permutations, is materialized as a full
//! Cayley table over element indices `0..|G|`, with index `0` the identity.
//! Elements handed out through the checked API carry the id of their parent
//! group so that mixing elements of two groups is caught; hot loops in the
//! enumeration code use the raw `usize` index methods instead.

mod perm;
mod set;
mod spec;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub use perm::Perm;
pub use set::ElemSet;
pub use spec::{parse_group_spec, SpecError};

/// Largest group `make_permutation_group` will close before giving up.
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;
/// Largest group whose automorphism group is enumerated by default.
pub const DEFAULT_AUT_BOUND: usize = 64;
/// Groups up to this order get an exhaustive associativity check at construction.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 128;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("trivial group not supported")]
    TrivialGroup,
    #[error("cyclic factor order {0} must be at least 2")]
    InvalidInvariant(u32),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("closure exceeded {bound} elements")]
    ClosureBound { bound: usize },
    #[error("group of order {order} exceeds the automorphism bound {bound}")]
    AutomorphismBound { order: usize, bound: usize },
    #[error("element belongs to a different group")]
    ForeignElement,
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("cannot parse element `{0}`")]
    BadElement(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Direct product of cyclic groups of the listed orders; elements are
    /// residue tuples.
    Abelian { invariants: Vec<u32> },
    /// Subgroup of `Sym(degree)` generated by `generators`.
    Permutation {
        degree: usize,
        generators: Vec<Perm>,
    },
}

/// An element bound to its parent group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    group: u64,
    index: u16,
}

impl Element {
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// A finite group with a precomputed multiplication table.
#[derive(Clone)]
pub struct Group {
    id: u64,
    name: String,
    kind: GroupKind,
    order: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    orders: Vec<u32>,
    labels: Vec<String>,
    /// Permutation for every element, when the group is a permutation group.
    perms: Vec<Perm>,
    abelian: bool,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    fn from_parts(
        name: String,
        kind: GroupKind,
        table: Vec<u16>,
        labels: Vec<String>,
        perms: Vec<Perm>,
    ) -> Result<Group, GroupError> {
        let n = labels.len();
        if n < 2 {
            return Err(GroupError::TrivialGroup);
        }
        if table.len() != n * n {
            return Err(GroupError::NotAGroup("table size".into()));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(GroupError::NotAGroup(format!(
                    "index 0 is not an identity for {a}"
                )));
            }
        }
        let mut inverses = vec![u16::MAX; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            if let Some(b) = row.iter().position(|&c| c == 0) {
                if table[b * n + a] != 0 {
                    return Err(GroupError::NotAGroup(format!(
                        "{a} has no two-sided inverse"
                    )));
                }
                inverses[a] = b as u16;
            } else {
                return Err(GroupError::NotAGroup(format!("{a} has no inverse")));
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b] as usize;
                    for c in 0..n {
                        let bc = table[b * n + c] as usize;
                        if table[ab * n + c] != table[a * n + bc] {
                            return Err(GroupError::NotAGroup(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        let mut orders = vec![0u32; n];
        for (a, slot) in orders.iter_mut().enumerate() {
            let (mut x, mut k) = (a, 1u32);
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        let abelian = (0..n).all(|a| (0..a).all(|b| table[a * n + b] == table[b * n + a]));
        Ok(Group {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            name,
            kind,
            order: n,
            table,
            inverses,
            orders,
            labels,
            perms,
            abelian,
        })
    }

    /// Direct product of cyclic groups `Z_{d1} x Z_{d2} x ...`.
    pub fn abelian(invariants: &[u32]) -> Result<Group, GroupError> {
        if invariants.is_empty() {
            return Err(GroupError::TrivialGroup);
        }
        if let Some(&d) = invariants.iter().find(|&&d| d < 2) {
            return Err(GroupError::InvalidInvariant(d));
        }
        let n: usize = invariants.iter().map(|&d| d as usize).product();
        if n > DEFAULT_CLOSURE_BOUND {
            return Err(GroupError::ClosureBound {
                bound: DEFAULT_CLOSURE_BOUND,
            });
        }
        let tuples: Vec<Vec<u32>> = (0..n).map(|i| index_to_tuple(invariants, i)).collect();
        let mut table = vec![0u16; n * n];
        for (a, ta) in tuples.iter().enumerate() {
            for (b, tb) in tuples.iter().enumerate() {
                let sum: Vec<u32> = ta
                    .iter()
                    .zip(tb)
                    .zip(invariants)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                table[a * n + b] = tuple_to_index(invariants, &sum) as u16;
            }
        }
        let labels = tuples.iter().map(|t| tuple_label(t)).collect();
        let name = invariants
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join(" x ");
        Group::from_parts(
            name,
            GroupKind::Abelian {
                invariants: invariants.to_vec(),
            },
            table,
            labels,
            Vec::new(),
        )
    }

    /// Closes `generators` under composition (right-to-left convention).
    pub fn permutation(degree: usize, generators: &[Perm]) -> Result<Group, GroupError> {
        Group::permutation_bounded(degree, generators, DEFAULT_CLOSURE_BOUND)
    }

    pub fn permutation_bounded(
        degree: usize,
        generators: &[Perm],
        bound: usize,
    ) -> Result<Group, GroupError> {
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = g.compose(&p);
                if !seen.contains_key(&q) {
                    if seen.len() >= bound {
                        return Err(GroupError::ClosureBound { bound });
                    }
                    seen.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
        }
        let mut perms: Vec<Perm> = seen.into_keys().collect();
        perms.sort();
        let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = perms.len();
        let mut table = vec![0u16; n * n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                table[a * n + b] = index[&pa.compose(pb)] as u16;
            }
        }
        let labels = perms.iter().map(|p| p.to_string()).collect();
        let name = format!(
            "<{}>",
            generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        Group::from_parts(
            name,
            GroupKind::Permutation {
                degree,
                generators: generators.to_vec(),
            },
            table,
            labels,
            perms,
        )
    }

    pub fn cyclic(n: u32) -> Result<Group, GroupError> {
        Group::abelian(&[n])
    }

    pub fn symmetric(n: usize) -> Result<Group, GroupError> {
        if n < 2 {
            return Err(GroupError::TrivialGroup);
        }
        let mut gens = vec![Perm::from_cycle_list(n, &[vec![1, 2]])?];
        if n > 2 {
            gens.push(Perm::from_cycle_list(n, &[(1..=n).collect()])?);
        }
        Ok(Group::permutation(n, &gens)?.named(format!("S{n}")))
    }

    pub fn alternating(n: usize) -> Result<Group, GroupError> {
        if n < 3 {
            return Err(GroupError::TrivialGroup);
        }
        let gens = (3..=n)
            .map(|k| Perm::from_cycle_list(n, &[vec![1, 2, k]]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Group::permutation(n, &gens)?.named(format!("A{n}")))
    }

    /// Dihedral group of order `2n` acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Result<Group, GroupError> {
        if n < 3 {
            return Err(GroupError::NotAGroup(format!(
                "D{n}: dihedral groups need n >= 3"
            )));
        }
        let (rho, sigma) = dihedral_generators(n)?;
        Ok(Group::permutation(n, &[rho, sigma])?.named(format!("D{n}")))
    }

    /// Dicyclic group of order `4n`, `<a, x | a^{2n} = 1, x^2 = a^n, x a x^{-1} = a^{-1}>`,
    /// realized by its left regular representation.
    pub fn dicyclic(n: usize) -> Result<Group, GroupError> {
        if n < 2 {
            return Err(GroupError::NotAGroup(format!("Dic{n}: need n >= 2")));
        }
        let m = 2 * n;
        // point a^k x^j  <->  k + m*j
        let pt = |k: usize, j: usize| (k % m + m * j) as u16;
        let mut a_img = vec![0u16; 2 * m];
        let mut x_img = vec![0u16; 2 * m];
        for k in 0..m {
            a_img[k] = pt(k + 1, 0);
            a_img[k + m] = pt(k + 1, 1);
            x_img[k] = pt(m - k, 1);
            x_img[k + m] = pt(m - k + n, 0);
        }
        let gens = [Perm::from_images(a_img)?, Perm::from_images(x_img)?];
        Ok(Group::permutation(2 * m, &gens)?.named(format!("Dic{n}")))
    }

    /// Direct product; stays abelian when both factors are abelian, otherwise
    /// becomes a permutation group on the disjoint union of the point sets.
    pub fn direct_product(&self, other: &Group) -> Result<Group, GroupError> {
        let name = format!("{} x {}", self.name, other.name);
        if let (GroupKind::Abelian { invariants: a }, GroupKind::Abelian { invariants: b }) =
            (&self.kind, &other.kind)
        {
            let inv: Vec<u32> = a.iter().chain(b).copied().collect();
            return Ok(Group::abelian(&inv)?.named(name));
        }
        let (da, ga) = self.permutation_generators();
        let (db, gb) = other.permutation_generators();
        let degree = da + db;
        let gens: Vec<Perm> = ga
            .iter()
            .map(|p| p.shifted(0, degree))
            .chain(gb.iter().map(|p| p.shifted(da, degree)))
            .collect();
        Ok(Group::permutation(degree, &gens)?.named(name))
    }

    /// Faithful permutation generators: the stored ones for permutation
    /// groups, one cycle per cyclic factor for abelian groups.
    pub fn permutation_generators(&self) -> (usize, Vec<Perm>) {
        match &self.kind {
            GroupKind::Permutation { degree, generators } => (*degree, generators.clone()),
            GroupKind::Abelian { invariants } => {
                let degree: usize = invariants.iter().map(|&d| d as usize).sum();
                let mut offset = 0;
                let mut gens = Vec::new();
                for &d in invariants {
                    let cycle: Vec<usize> = (offset + 1..=offset + d as usize).collect();
                    gens.push(Perm::from_cycle_list(degree, &[cycle]).expect("valid cycle"));
                    offset += d as usize;
                }
                (degree, gens)
            }
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.order)
    }

    // ----- checked element API -----

    pub fn identity(&self) -> Element {
        Element {
            group: self.id,
            index: 0,
        }
    }

    pub fn element(&self, index: usize) -> Result<Element, GroupError> {
        if index >= self.order {
            return Err(GroupError::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(Element {
            group: self.id,
            index: index as u16,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| Element {
            group: self.id,
            index: i as u16,
        })
    }

    fn own(&self, a: Element) -> Result<usize, GroupError> {
        if a.group != self.id {
            return Err(GroupError::ForeignElement);
        }
        Ok(a.index as usize)
    }

    pub fn mul(&self, a: Element, b: Element) -> Result<Element, GroupError> {
        let (a, b) = (self.own(a)?, self.own(b)?);
        self.element(self.op(a, b))
    }

    pub fn inv(&self, a: Element) -> Result<Element, GroupError> {
        let a = self.own(a)?;
        self.element(self.inverse(a))
    }

    pub fn order_of(&self, a: Element) -> Result<u32, GroupError> {
        Ok(self.elem_order(self.own(a)?))
    }

    // ----- raw index API -----

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    /// `h g h^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.op(self.op(h, g), self.inverse(h))
    }

    /// `[a, b] = a b a^{-1} b^{-1}`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.op(self.op(a, b), self.op(self.inverse(a), self.inverse(b)))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order(a) as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.op(x, a);
        }
        x
    }

    /// Left-to-right product of a word of element indices.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &x| self.op(acc, x))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn perm_of(&self, a: usize) -> Option<&Perm> {
        self.perms.get(a)
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        self.perms.binary_search(p).ok()
    }

    pub fn index_of_tuple(&self, tuple: &[u32]) -> Option<usize> {
        match &self.kind {
            GroupKind::Abelian { invariants } if invariants.len() == tuple.len() => {
                let reduced: Vec<u32> = tuple.iter().zip(invariants).map(|(t, d)| t % d).collect();
                Some(tuple_to_index(invariants, &reduced))
            }
            _ => None,
        }
    }

    /// Parses an element in the group's display notation: residue tuples
    /// such as `(1,3)` for abelian groups, cycle notation for permutation
    /// groups.
    pub fn parse_element(&self, text: &str) -> Result<usize, GroupError> {
        let bad = || GroupError::BadElement(text.to_string());
        match &self.kind {
            GroupKind::Abelian { invariants } => {
                let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
                let tuple: Vec<u32> = inner
                    .split(',')
                    .map(|s| s.trim().parse::<i64>().map_err(|_| bad()))
                    .zip(invariants)
                    .map(|(v, &d)| v.map(|v| v.rem_euclid(d as i64) as u32))
                    .collect::<Result<_, _>>()?;
                self.index_of_tuple(&tuple).ok_or_else(bad)
            }
            GroupKind::Permutation { degree, .. } => {
                let p = Perm::parse_cycles(*degree, text).map_err(|_| bad())?;
                self.index_of_perm(&p).ok_or_else(bad)
            }
        }
    }

    pub fn elements_of_order(&self, m: u32) -> Vec<usize> {
        (0..self.order).filter(|&a| self.orders[a] == m).collect()
    }

    /// Multiset of element orders, `order -> count`; an isomorphism invariant.
    pub fn order_statistics(&self) -> BTreeMap<u32, usize> {
        let mut stats = BTreeMap::new();
        for &o in &self.orders {
            *stats.entry(o).or_insert(0) += 1;
        }
        stats
    }

    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    // ----- subgroups -----

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        set.insert(0);
        let mut frontier = vec![0usize];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.op(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Checked variant of [`Group::subgroup_generated`].
    pub fn subgroup_generated_by(&self, gens: &[Element]) -> Result<Vec<Element>, GroupError> {
        let idx = gens
            .iter()
            .map(|&g| self.own(g))
            .collect::<Result<Vec<_>, _>>()?;
        self.subgroup_generated(&idx)
            .iter()
            .map(|i| self.element(i))
            .collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup_generated(gens).len() == self.order
    }

    pub fn cyclic_subgroup(&self, g: usize) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        let mut x = 0;
        loop {
            set.insert(x);
            x = self.op(x, g);
            if x == 0 {
                break;
            }
        }
        set
    }

    /// Union of the cyclic subgroups generated by all conjugates of `g`.
    pub fn cyclic_conjugate_union(&self, g: usize) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        if self.abelian {
            return self.cyclic_subgroup(g);
        }
        let mut done = ElemSet::empty(self.order);
        for h in 0..self.order {
            let c = self.conjugate(g, h);
            if done.insert(c) {
                set.union_with(&self.cyclic_subgroup(c));
            }
        }
        set
    }

    pub fn conjugacy_class(&self, g: usize) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        set.extend((0..self.order).map(|h| self.conjugate(g, h)));
        set
    }

    /// Greedy generating set: repeatedly adjoin an element of maximal order
    /// outside the current subgroup. Each generator lies outside the span
    /// of the previous ones.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.orders[a]), a));
        let mut gens = Vec::new();
        let mut span = self.subgroup_generated(&[]);
        while span.len() < self.order {
            let next = *by_order
                .iter()
                .find(|&&a| !span.contains(a))
                .expect("proper subgroup has an outside element");
            gens.push(next);
            span = self.subgroup_generated(&gens);
        }
        gens
    }

    // ----- automorphisms -----

    pub fn automorphisms(&self) -> Result<Vec<Automorphism>, GroupError> {
        self.automorphisms_bounded(DEFAULT_AUT_BOUND)
    }

    /// All automorphisms, found by searching images of a small generating set
    /// and extending along the Cayley graph. The identity comes first.
    pub fn automorphisms_bounded(&self, bound: usize) -> Result<Vec<Automorphism>, GroupError> {
        if self.order > bound {
            return Err(GroupError::AutomorphismBound {
                order: self.order,
                bound,
            });
        }
        let gens = self.small_generating_set();
        let mut found = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.aut_search(&gens, &mut images, &mut found);
        found.sort();
        Ok(found)
    }

    fn aut_search(&self, gens: &[usize], images: &mut Vec<usize>, out: &mut Vec<Automorphism>) {
        let k = images.len();
        if k == gens.len() {
            if let Some(map) = self.extend_hom(gens, images) {
                let mut hit = vec![false; self.order];
                if map
                    .iter()
                    .all(|&y| !std::mem::replace(&mut hit[y as usize], true))
                {
                    out.push(Automorphism { map });
                }
            }
            return;
        }
        let span = self.subgroup_generated(images);
        for cand in self.elements_of_order(self.orders[gens[k]]) {
            if span.contains(cand) {
                continue;
            }
            images.push(cand);
            if self.extend_hom(&gens[..=k], images).is_some() {
                self.aut_search(gens, images, out);
            }
            images.pop();
        }
    }

    /// Extends `gens[i] -> images[i]` to a homomorphism on `<gens>`, returning
    /// the map (with `u16::MAX` outside the subgroup) or `None` on conflict.
    fn extend_hom(&self, gens: &[usize], images: &[usize]) -> Option<Vec<u16>> {
        let mut map = vec![u16::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(y) = queue.pop_front() {
            let my = map[y] as usize;
            for (&s, &t) in gens.iter().zip(images) {
                let x = self.op(s, y);
                let want = self.op(t, my) as u16;
                if map[x] == u16::MAX {
                    map[x] = want;
                    queue.push_back(x);
                } else if map[x] != want {
                    return None;
                }
            }
        }
        Some(map)
    }

    pub fn is_automorphism(&self, map: &[u16]) -> bool {
        if map.len() != self.order || map[0] != 0 {
            return false;
        }
        let mut hit = vec![false; self.order];
        for &y in map {
            if (y as usize) >= self.order || std::mem::replace(&mut hit[y as usize], true) {
                return false;
            }
        }
        (0..self.order).all(|a| {
            (0..self.order)
                .all(|b| map[self.op(a, b)] as usize == self.op(map[a] as usize, map[b] as usize))
        })
    }

    /// Inner automorphism `x -> h x h^{-1}`.
    pub fn inner_automorphism(&self, h: usize) -> Automorphism {
        Automorphism {
            map: (0..self.order)
                .map(|x| self.conjugate(x, h) as u16)
                .collect(),
        }
    }

    /// Automorphism determined by images of `gens`, if it exists.
    pub fn automorphism_from_images(
        &self,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Automorphism> {
        if !self.generates(gens) {
            return None;
        }
        let map = self.extend_hom(gens, images)?;
        self.is_automorphism(&map).then_some(Automorphism { map })
    }
}

/// Generators `(rho, sigma)` of the dihedral group of order `2n`:
/// `rho = (1 2 ... n)` and the reflection `sigma: i -> n + 2 - i` fixing 1.
pub fn dihedral_generators(n: usize) -> Result<(Perm, Perm), GroupError> {
    let rho = Perm::from_cycle_list(n, &[(1..=n).collect()])?;
    let images: Vec<u16> = (0..n).map(|i| ((n - i) % n) as u16).collect();
    Ok((rho, Perm::from_images(images)?))
}

/// A bijection of element indices respecting the group law.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Automorphism {
    map: Vec<u16>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism {
            map: (0..order as u16).collect(),
        }
    }

    /// Wraps a raw index map after checking it against `group`.
    pub fn from_map(group: &Group, map: Vec<u16>) -> Result<Self, GroupError> {
        if group.is_automorphism(&map) {
            Ok(Automorphism { map })
        } else {
            Err(GroupError::NotAGroup("map is not an automorphism".into()))
        }
    }

    /// Wraps a map already known to be an automorphism (e.g. a composite).
    pub(crate) fn from_raw(map: Vec<u16>) -> Self {
        Automorphism { map }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a] as usize
    }

    pub fn map(&self) -> &[u16] {
        &self.map
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: other.map.iter().map(|&x| self.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0u16; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Automorphism { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x as usize)
    }
}

fn index_to_tuple(invariants: &[u32], mut i: usize) -> Vec<u32> {
    let mut t = vec![0u32; invariants.len()];
    for (slot, &d) in t.iter_mut().zip(invariants).rev() {
        *slot = (i % d as usize) as u32;
        i /= d as usize;
    }
    t
}

fn tuple_to_index(invariants: &[u32], t: &[u32]) -> usize {
    t.iter()
        .zip(invariants)
        .fold(0, |acc, (&x, &d)| acc * d as usize + x as usize)
}

fn tuple_label(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}
