//! Generating vectors of finite groups with respect to Fuchsian signatures,
//! and the building data of a surface `(C × F)/G`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuchsian::{
    riemann_hurwitz_genus, surface_invariants, GenusPair, Signature, SurfaceInvariants,
};
use crate::group::{ElemSet, Group};

/// Element indices; every group in the pipelines has fewer than 2^16 elements.
pub type Idx = u16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenVecError {
    #[error("expected {expected} elliptic and {expected_h} hyperbolic entries, found {found} and {found_h}")]
    Shape {
        expected: usize,
        expected_h: usize,
        found: usize,
        found_h: usize,
    },
    #[error("entry {position} has order {found}, expected {expected}")]
    WrongOrder {
        position: usize,
        expected: u32,
        found: u32,
    },
    #[error("long relation fails: product is {0}")]
    LongRelation(String),
    #[error("entries generate a subgroup of order {0} only")]
    NotGenerating(usize),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("cannot parse vector `{0}`")]
    Parse(String),
}

/// `{g_1, .., g_r; h_1, .., h_{2g'}}` for a fixed signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratingVector {
    sig: Signature,
    elliptic: Vec<Idx>,
    hyperbolic: Vec<Idx>,
}

impl GeneratingVector {
    /// Wraps the entries without checking them; see [`GeneratingVector::new`].
    pub fn from_parts_unchecked(sig: Signature, elliptic: Vec<Idx>, hyperbolic: Vec<Idx>) -> Self {
        GeneratingVector {
            sig,
            elliptic,
            hyperbolic,
        }
    }

    pub fn new(
        group: &Group,
        sig: Signature,
        elliptic: Vec<Idx>,
        hyperbolic: Vec<Idx>,
    ) -> Result<Self, GenVecError> {
        let v = GeneratingVector::from_parts_unchecked(sig, elliptic, hyperbolic);
        v.check(group)?;
        Ok(v)
    }

    /// Builds a vector from element labels in the group's notation.
    pub fn from_labels(
        group: &Group,
        sig: Signature,
        elliptic: &[&str],
        hyperbolic: &[&str],
    ) -> Result<Self, GenVecError> {
        let parse = |s: &&str| {
            group
                .parse_element(s)
                .map(|i| i as Idx)
                .map_err(|_| GenVecError::Parse(s.to_string()))
        };
        let e = elliptic.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let h = hyperbolic
            .iter()
            .map(parse)
            .collect::<Result<Vec<_>, _>>()?;
        GeneratingVector::new(group, sig, e, h)
    }

    /// Parses the report form `[g1,...,gr ; h1,...,h2g']`.
    pub fn parse(group: &Group, sig: Signature, text: &str) -> Result<Self, GenVecError> {
        let bad = || GenVecError::Parse(text.to_string());
        let inner = text.trim().strip_prefix('[').ok_or_else(bad)?;
        let inner = inner.strip_suffix(']').ok_or_else(bad)?;
        let (e, h) = inner.split_once(';').unwrap_or((inner, ""));
        let e = split_top_level(e);
        let h = split_top_level(h);
        let e: Vec<&str> = e.iter().map(String::as_str).collect();
        let h: Vec<&str> = h.iter().map(String::as_str).collect();
        GeneratingVector::from_labels(group, sig, &e, &h)
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn elliptic(&self) -> &[Idx] {
        &self.elliptic
    }

    pub fn hyperbolic(&self) -> &[Idx] {
        &self.hyperbolic
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.elliptic
            .iter()
            .chain(&self.hyperbolic)
            .map(|&x| x as usize)
    }

    /// Checks the three defining conditions: orders, long relation, generation.
    pub fn check(&self, group: &Group) -> Result<(), GenVecError> {
        let r = self.sig.r();
        let h = 2 * self.sig.orbit_genus() as usize;
        if self.elliptic.len() != r || self.hyperbolic.len() != h {
            return Err(GenVecError::Shape {
                expected: r,
                expected_h: h,
                found: self.elliptic.len(),
                found_h: self.hyperbolic.len(),
            });
        }
        if let Some(x) = self.entries().find(|&x| x >= group.order()) {
            return Err(GenVecError::BadIndex(x));
        }
        for (i, (&g, &m)) in self.elliptic.iter().zip(self.sig.branching()).enumerate() {
            let o = group.elem_order(g as usize);
            if o != m {
                return Err(GenVecError::WrongOrder {
                    position: i + 1,
                    expected: m,
                    found: o,
                });
            }
        }
        let p = long_relation_product(group, &self.elliptic, &self.hyperbolic);
        if p != 0 {
            return Err(GenVecError::LongRelation(group.label(p).to_string()));
        }
        let entries: Vec<usize> = self.entries().collect();
        let span = group.subgroup_generated(&entries).len();
        if span != group.order() {
            return Err(GenVecError::NotGenerating(span));
        }
        Ok(())
    }

    pub fn is_admissible(&self, group: &Group) -> bool {
        self.check(group).is_ok()
    }

    /// Union of the conjugates of all `<g_i>`: the non-trivial stabilizers of
    /// the induced action, plus the identity.
    pub fn stabilizer_union(&self, group: &Group) -> ElemSet {
        stabilizer_union(group, &self.elliptic)
    }

    /// `[g1,...,gr ; h1,...]` using the group's element labels.
    pub fn display(&self, group: &Group) -> String {
        let join = |xs: &[Idx]| {
            xs.iter()
                .map(|&x| group.label(x as usize))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        let _ = write!(s, "[{}", join(&self.elliptic));
        if !self.hyperbolic.is_empty() {
            let _ = write!(s, " ; {}", join(&self.hyperbolic));
        }
        s.push(']');
        s
    }

    /// Applies an element map (e.g. an automorphism) entrywise.
    pub fn map_entries(&self, f: impl Fn(usize) -> usize) -> GeneratingVector {
        GeneratingVector {
            sig: self.sig.clone(),
            elliptic: self
                .elliptic
                .iter()
                .map(|&x| f(x as usize) as Idx)
                .collect(),
            hyperbolic: self
                .hyperbolic
                .iter()
                .map(|&x| f(x as usize) as Idx)
                .collect(),
        }
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    parts.push(cur);
    parts
        .into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// `g_1 ⋯ g_r · Π [h_i, h_{i+g'}]`.
pub fn long_relation_product(group: &Group, elliptic: &[Idx], hyperbolic: &[Idx]) -> usize {
    let gp = hyperbolic.len() / 2;
    let mut acc = elliptic.iter().fold(0, |acc, &g| group.op(acc, g as usize));
    for i in 0..gp {
        let c = group.commutator(hyperbolic[i] as usize, hyperbolic[i + gp] as usize);
        acc = group.op(acc, c);
    }
    acc
}

pub fn stabilizer_union(group: &Group, elliptic: &[Idx]) -> ElemSet {
    let mut set = ElemSet::empty(group.order());
    set.insert(0);
    let mut seen: Vec<Idx> = Vec::new();
    for &g in elliptic {
        if !seen.contains(&g) {
            seen.push(g);
            set.union_with(&group.cyclic_conjugate_union(g as usize));
        }
    }
    set
}

/// All generating vectors of `group` for `sig`, in lexicographic order of
/// `(elliptic, hyperbolic)` indices.
///
/// Hyperbolic entries range over all of `G`; the first `r - 1` elliptic
/// entries range over elements of the right order and the last one is
/// solved from the long relation.
pub fn enumerate_generating_vectors(group: &Group, sig: &Signature) -> Vec<GeneratingVector> {
    let n = group.order();
    let gp = sig.orbit_genus() as usize;
    let by_order: HashMap<u32, Vec<usize>> = sig
        .branching()
        .iter()
        .map(|&m| (m, group.elements_of_order(m)))
        .collect();
    if sig.branching().iter().any(|m| by_order[m].is_empty()) {
        return Vec::new();
    }
    // every hyperbolic tuple, paired with Π [h_i, h_{i+g'}]
    let mut hyps: Vec<(Vec<Idx>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..2 * gp {
        hyps = hyps
            .into_iter()
            .flat_map(|(h, _)| {
                (0..n).map(move |x| {
                    let mut h2 = h.clone();
                    h2.push(x as Idx);
                    (h2, 0)
                })
            })
            .collect();
    }
    for (h, c) in hyps.iter_mut() {
        *c = long_relation_product(group, &[], h);
    }

    let r = sig.r();
    let mut out: Vec<GeneratingVector> = if r == 0 {
        hyps.iter()
            .filter(|(h, c)| {
                *c == 0 && group.generates(&h.iter().map(|&x| x as usize).collect::<Vec<_>>())
            })
            .map(|(h, _)| {
                GeneratingVector::from_parts_unchecked(sig.clone(), Vec::new(), h.clone())
            })
            .collect()
    } else {
        let firsts: Vec<usize> = if r == 1 {
            vec![usize::MAX]
        } else {
            by_order[&sig.branching()[0]].clone()
        };
        firsts
            .par_iter()
            .flat_map_iter(|&first| {
                let mut found = Vec::new();
                let mut prefix: Vec<Idx> = Vec::with_capacity(r);
                if first != usize::MAX {
                    prefix.push(first as Idx);
                }
                for (h, c) in &hyps {
                    extend_elliptic(group, sig, &by_order, h, *c, &mut prefix, &mut found);
                }
                found
            })
            .collect()
    };
    out.sort();
    out
}

fn extend_elliptic(
    group: &Group,
    sig: &Signature,
    by_order: &HashMap<u32, Vec<usize>>,
    hyp: &[Idx],
    comm: usize,
    prefix: &mut Vec<Idx>,
    out: &mut Vec<GeneratingVector>,
) {
    let r = sig.r();
    if prefix.len() == r - 1 {
        // g_r = (g_1 ⋯ g_{r-1})^{-1} (Π[h])^{-1}
        let p = prefix.iter().fold(0, |acc, &g| group.op(acc, g as usize));
        let last = group.op(group.inverse(p), group.inverse(comm));
        if group.elem_order(last) != sig.branching()[r - 1] {
            return;
        }
        let mut gens: Vec<usize> = prefix.iter().map(|&x| x as usize).collect();
        gens.push(last);
        gens.extend(hyp.iter().map(|&x| x as usize));
        if group.generates(&gens) {
            let mut e = prefix.clone();
            e.push(last as Idx);
            out.push(GeneratingVector::from_parts_unchecked(
                sig.clone(),
                e,
                hyp.to_vec(),
            ));
        }
        return;
    }
    let m = sig.branching()[prefix.len()];
    for &x in &by_order[&m] {
        prefix.push(x as Idx);
        extend_elliptic(group, sig, by_order, hyp, comm, prefix, out);
        prefix.pop();
    }
}

/// Whether `G` acts freely on `C × F` for the coverings given by `v` (fiber
/// curve, orbit genus 0) and `w` (base curve, orbit genus 1).
pub fn is_free_diagonal_action(group: &Group, v: &GeneratingVector, w: &GeneratingVector) -> bool {
    freeness_witness(group, v, w).is_none()
}

/// Smallest non-identity element lying in both stabilizer unions, if any.
pub fn freeness_witness(
    group: &Group,
    v: &GeneratingVector,
    w: &GeneratingVector,
) -> Option<usize> {
    let common = v
        .stabilizer_union(group)
        .intersection(&w.stabilizer_union(group));
    let witness = common.iter().find(|&x| x != 0);
    witness
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("fiber vector has orbit genus {0}, expected 0")]
    FiberOrbitGenus(u32),
    #[error("base vector has orbit genus {0}, expected 1")]
    BaseOrbitGenus(u32),
    #[error("fiber vector is not admissible: {0}")]
    FiberInadmissible(GenVecError),
    #[error("base vector is not admissible: {0}")]
    BaseInadmissible(GenVecError),
    #[error("genus condition fails: {0}")]
    Genus(String),
    #[error("|G| = {order} but (g(C)-1)(g(F)-1) = {product}")]
    OrderProduct { order: usize, product: usize },
    #[error("diagonal action is not free: {witness} stabilizes points of both curves")]
    NotFree { witness: String },
}

/// A group with the two coverings defining a surface isogenous to a product.
#[derive(Clone, Debug)]
pub struct BuildingData {
    group: Arc<Group>,
    v: GeneratingVector,
    w: GeneratingVector,
    genus: GenusPair,
    invariants: Option<SurfaceInvariants>,
}

impl BuildingData {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn v(&self) -> &GeneratingVector {
        &self.v
    }

    pub fn w(&self) -> &GeneratingVector {
        &self.w
    }

    pub fn genus(&self) -> GenusPair {
        self.genus
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        self.invariants.expect("set by validation")
    }
}

/// Checks admissibility of both vectors, `g(C), g(F) >= 3`,
/// `|G| = (g(C)-1)(g(F)-1)` and freeness, in that order.
pub fn validate_building_data(
    group: &Arc<Group>,
    v: GeneratingVector,
    w: GeneratingVector,
) -> Result<BuildingData, ValidationError> {
    if v.sig().orbit_genus() != 0 {
        return Err(ValidationError::FiberOrbitGenus(v.sig().orbit_genus()));
    }
    if w.sig().orbit_genus() != 1 {
        return Err(ValidationError::BaseOrbitGenus(w.sig().orbit_genus()));
    }
    v.check(group).map_err(ValidationError::FiberInadmissible)?;
    w.check(group).map_err(ValidationError::BaseInadmissible)?;
    let g_f = riemann_hurwitz_genus(group.order(), v.sig())
        .map_err(|e| ValidationError::Genus(e.to_string()))?;
    let g_c = riemann_hurwitz_genus(group.order(), w.sig())
        .map_err(|e| ValidationError::Genus(e.to_string()))?;
    if g_c < 3 || g_f < 3 {
        return Err(ValidationError::Genus(format!(
            "g(C) = {g_c}, g(F) = {g_f}; both must be >= 3"
        )));
    }
    let product = (g_c as usize - 1) * (g_f as usize - 1);
    if product != group.order() {
        return Err(ValidationError::OrderProduct {
            order: group.order(),
            product,
        });
    }
    if let Some(x) = freeness_witness(group, &v, &w) {
        return Err(ValidationError::NotFree {
            witness: group.label(x).to_string(),
        });
    }
    let mut bd = BuildingData {
        group: Arc::clone(group),
        v,
        w,
        genus: GenusPair { g_c, g_f },
        invariants: None,
    };
    let inv = surface_invariants(&bd).map_err(|e| ValidationError::Genus(e.to_string()))?;
    bd.invariants = Some(inv);
    Ok(bd)
}

/// Every free pair `(V, W)` with `V` of signature `m` and `W` of signature
/// `n`, provided the genus and order conditions hold; empty otherwise.
pub fn building_pairs(
    group: &Group,
    m: &Signature,
    n: &Signature,
) -> Vec<(GeneratingVector, GeneratingVector)> {
    let (Ok(g_f), Ok(g_c)) = (
        riemann_hurwitz_genus(group.order(), m),
        riemann_hurwitz_genus(group.order(), n),
    ) else {
        return Vec::new();
    };
    if g_c < 3 || g_f < 3 || (g_c as usize - 1) * (g_f as usize - 1) != group.order() {
        return Vec::new();
    }
    let vs = enumerate_generating_vectors(group, m);
    if vs.is_empty() {
        return Vec::new();
    }
    let ws = enumerate_generating_vectors(group, n);
    free_pairs(group, &vs, &ws)
}

/// Free pairs from the product of two vector lists, grouped by stabilizer
/// sets so each freeness test is done once per distinct pair of sets.
pub fn free_pairs(
    group: &Group,
    vs: &[GeneratingVector],
    ws: &[GeneratingVector],
) -> Vec<(GeneratingVector, GeneratingVector)> {
    let classes = |xs: &[GeneratingVector]| {
        let mut map: HashMap<ElemSet, Vec<usize>> = HashMap::new();
        for (i, x) in xs.iter().enumerate() {
            map.entry(x.stabilizer_union(group)).or_default().push(i);
        }
        map
    };
    let vcls = classes(vs);
    let wcls = classes(ws);
    let mut out = Vec::new();
    for (vs_set, vi) in &vcls {
        for (ws_set, wi) in &wcls {
            if vs_set.intersection(ws_set).len() == 1 {
                for &a in vi {
                    for &b in wi {
                        out.push((vs[a].clone(), ws[b].clone()));
                    }
                }
            }
        }
    }
    out.sort();
    out
}
