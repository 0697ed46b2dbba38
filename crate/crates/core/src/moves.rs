//! Hurwitz moves on generating vectors, the `Aut(G)` action, and orbit
//! computation for the equivalence relation on pairs `(V, W)`.
//!
//! Move names follow the usual numbering for orbit genus one:
//! `1` = t_alpha, `2` = t_beta, `3` = t_gamma, `4` = rho and the derived
//! `5` = `1,2,1`. Genus-zero braid moves are written `s1`, `s2`, ...
//! Traces such as `1,3,5,3` are applied left to right.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuchsian::Signature;
use crate::genvec::{GeneratingVector, Idx};
use crate::group::{Automorphism, ElemSet, Group, GroupError};

/// Visited-state cap for a single orbit search.
pub const ORBIT_STATE_BOUND: usize = 10_000_000;
/// Cap on `|Aut(G)|` for orbit computations.
pub const ORBIT_AUT_BOUND: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move {mv} does not apply to signature {sig}")]
    WrongSignature { mv: String, sig: String },
    #[error("braid index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("braid move s{index} would swap entries of orders {left} and {right}")]
    OrderMismatch { index: usize, left: u32, right: u32 },
    #[error("unknown move `{0}`")]
    UnknownMove(String),
    #[error("orbit search exceeded {0} states")]
    StateBound(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A named Hurwitz move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// `σ_i`, 1-based.
    Sigma(usize),
    Alpha,
    Beta,
    Gamma,
    Rho,
    /// `1,2,1`.
    Five,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Sigma(i) => write!(f, "s{i}"),
            Move::Alpha => f.write_str("1"),
            Move::Beta => f.write_str("2"),
            Move::Gamma => f.write_str("3"),
            Move::Rho => f.write_str("4"),
            Move::Five => f.write_str("5"),
        }
    }
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "1" => Ok(Move::Alpha),
            "2" => Ok(Move::Beta),
            "3" => Ok(Move::Gamma),
            "4" => Ok(Move::Rho),
            "5" => Ok(Move::Five),
            _ => s
                .strip_prefix('s')
                .and_then(|n| n.parse().ok())
                .filter(|&n| n > 0)
                .map(Move::Sigma)
                .ok_or_else(|| MoveError::UnknownMove(s.to_string())),
        }
    }
}

/// Parses a comma-separated trace like `1,3,5,3`.
pub fn parse_trace(text: &str) -> Result<Vec<Move>, MoveError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_trace(moves: &[Move]) -> String {
    moves
        .iter()
        .map(Move::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Shape of the signatures the move system knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Genus0(usize),
    Torus1,
    Torus2,
}

fn shape(sig: &Signature) -> Option<Shape> {
    match (sig.orbit_genus(), sig.r()) {
        (0, r) => Some(Shape::Genus0(r)),
        (1, 1) => Some(Shape::Torus1),
        (1, 2) if sig.branching()[0] == sig.branching()[1] => Some(Shape::Torus2),
        _ => None,
    }
}

/// The generating moves for one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSet {
    sig: Signature,
    moves: Vec<Move>,
}

impl MoveSet {
    /// All `σ_i` at genus 0; t_alpha, t_beta for `(1|m)`; the four moves for
    /// `(1|m,m)`.
    pub fn for_signature(sig: &Signature) -> Result<MoveSet, MoveError> {
        let moves = match shape(sig) {
            Some(Shape::Genus0(r)) => (1..r).map(Move::Sigma).collect(),
            Some(Shape::Torus1) => vec![Move::Alpha, Move::Beta],
            Some(Shape::Torus2) => vec![Move::Alpha, Move::Beta, Move::Gamma, Move::Rho],
            None => {
                return Err(MoveError::WrongSignature {
                    mv: "any".into(),
                    sig: sig.to_string(),
                })
            }
        };
        Ok(MoveSet {
            sig: sig.clone(),
            moves,
        })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }
}

/// Applies `mv` to a raw entry tuple `elliptic ++ hyperbolic`, without any
/// order check. `r` is the number of elliptic entries.
pub fn apply_raw(group: &Group, r: usize, state: &mut [Idx], mv: Move) {
    let g = |x: Idx| x as usize;
    let inv = |x: usize| group.inverse(x);
    match mv {
        Move::Sigma(i) => {
            let (a, b) = (g(state[i - 1]), g(state[i]));
            state[i - 1] = b as Idx;
            state[i] = group.conjugate(a, inv(b)) as Idx;
        }
        Move::Alpha => {
            let (a, b) = (g(state[r]), g(state[r + 1]));
            state[r + 1] = group.op(b, a) as Idx;
        }
        Move::Beta => {
            let (a, b) = (g(state[r]), g(state[r + 1]));
            state[r] = group.op(a, inv(b)) as Idx;
        }
        Move::Gamma => {
            let (x1, x2, a, b) = (g(state[0]), g(state[1]), g(state[2]), g(state[3]));
            state[1] = group.product(&[a, inv(b), inv(a), x2, a, b, inv(a)]) as Idx;
            state[2] = group.product(&[inv(b), x1, a]) as Idx;
        }
        Move::Rho => {
            let (x1, x2, a, b) = (g(state[0]), g(state[1]), g(state[2]), g(state[3]));
            state[0] = group.product(&[inv(b), inv(a), x2, a, b]) as Idx;
            state[1] = group.product(&[inv(a), inv(b), x1, b, a]) as Idx;
            state[2] = inv(a) as Idx;
            state[3] = inv(b) as Idx;
        }
        Move::Five => {
            for m in [Move::Alpha, Move::Beta, Move::Alpha] {
                apply_raw(group, r, state, m);
            }
        }
    }
}

fn check_applicable(v: &GeneratingVector, mv: Move) -> Result<(), MoveError> {
    let wrong = || MoveError::WrongSignature {
        mv: mv.to_string(),
        sig: v.sig().to_string(),
    };
    match (mv, shape(v.sig())) {
        (Move::Sigma(i), Some(Shape::Genus0(r))) => {
            if i == 0 || i >= r {
                return Err(MoveError::IndexOutOfRange {
                    index: i,
                    max: r.saturating_sub(1),
                });
            }
            let m = v.sig().branching();
            if m[i - 1] != m[i] {
                return Err(MoveError::OrderMismatch {
                    index: i,
                    left: m[i - 1],
                    right: m[i],
                });
            }
            Ok(())
        }
        (Move::Alpha | Move::Beta | Move::Five, Some(Shape::Torus1 | Shape::Torus2)) => Ok(()),
        (Move::Gamma | Move::Rho, Some(Shape::Torus2)) => Ok(()),
        _ => Err(wrong()),
    }
}

/// Applies one move, keeping the result a vector for the same signature.
pub fn apply_move(
    group: &Group,
    v: &GeneratingVector,
    mv: Move,
) -> Result<GeneratingVector, MoveError> {
    check_applicable(v, mv)?;
    let r = v.sig().r();
    let mut state: Vec<Idx> = v.entries().map(|x| x as Idx).collect();
    apply_raw(group, r, &mut state, mv);
    let h = state.split_off(r);
    Ok(GeneratingVector::from_parts_unchecked(
        v.sig().clone(),
        state,
        h,
    ))
}

/// `σ_i` on a genus-0 vector. Neighbours of different orders are rejected,
/// since the image would no longer match the (sorted) signature; orbit
/// searches use [`apply_raw`] to move through other orderings.
pub fn braid_move_genus0(
    group: &Group,
    v: &GeneratingVector,
    i: usize,
) -> Result<GeneratingVector, MoveError> {
    apply_move(group, v, Move::Sigma(i))
}

/// Images of `w` under t_alpha and t_beta, for signature `(1|m)`.
pub fn torus1_moves(
    group: &Group,
    w: &GeneratingVector,
) -> Result<[GeneratingVector; 2], MoveError> {
    if shape(w.sig()) != Some(Shape::Torus1) {
        return Err(MoveError::WrongSignature {
            mv: "t_alpha/t_beta".into(),
            sig: w.sig().to_string(),
        });
    }
    Ok([
        apply_move(group, w, Move::Alpha)?,
        apply_move(group, w, Move::Beta)?,
    ])
}

/// Images of `w` under t_alpha, t_beta, t_gamma and rho, for `(1|m,m)`.
pub fn torus2_moves(
    group: &Group,
    w: &GeneratingVector,
) -> Result<[GeneratingVector; 4], MoveError> {
    if shape(w.sig()) != Some(Shape::Torus2) {
        return Err(MoveError::WrongSignature {
            mv: "t_alpha/t_beta/t_gamma/rho".into(),
            sig: w.sig().to_string(),
        });
    }
    Ok([
        apply_move(group, w, Move::Alpha)?,
        apply_move(group, w, Move::Beta)?,
        apply_move(group, w, Move::Gamma)?,
        apply_move(group, w, Move::Rho)?,
    ])
}

/// Applies a whole trace, left to right.
pub fn apply_trace(
    group: &Group,
    v: &GeneratingVector,
    moves: &[Move],
) -> Result<GeneratingVector, MoveError> {
    moves
        .iter()
        .try_fold(v.clone(), |acc, &mv| apply_move(group, &acc, mv))
}

pub fn apply_automorphism(
    lambda: &Automorphism,
    pair: &(GeneratingVector, GeneratingVector),
) -> (GeneratingVector, GeneratingVector) {
    (
        pair.0.map_entries(|x| lambda.apply(x)),
        pair.1.map_entries(|x| lambda.apply(x)),
    )
}

/// A small subset of `auts` generating the same group (greedy).
pub fn automorphism_generators(auts: &[Automorphism]) -> Vec<Automorphism> {
    let Some(first) = auts.first() else {
        return Vec::new();
    };
    let mut gens: Vec<Automorphism> = Vec::new();
    let mut reached: std::collections::HashSet<Vec<u16>> = std::collections::HashSet::new();
    reached.insert(Automorphism::identity(first.map().len()).map().to_vec());
    for a in auts {
        if reached.contains(a.map()) {
            continue;
        }
        gens.push(a.clone());
        // re-close under the enlarged generating set
        let mut queue: VecDeque<Automorphism> = reached
            .iter()
            .map(|m| Automorphism::from_raw(m.clone()))
            .collect();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x);
                if reached.insert(y.map().to_vec()) {
                    queue.push_back(y);
                }
            }
        }
        if reached.len() == auts.len() {
            break;
        }
    }
    gens
}

/// Is the elliptic part ordered consistently with the (sorted) signature?
fn matches_pattern(group: &Group, sig: &Signature, state: &[Idx]) -> bool {
    state
        .iter()
        .zip(sig.branching())
        .all(|(&g, &m)| group.elem_order(g as usize) == m)
}

fn closure<F>(start: Vec<Idx>, mut step: F, bound: usize) -> Result<Vec<Vec<Idx>>, MoveError>
where
    F: FnMut(&[Idx], &mut dyn FnMut(Vec<Idx>)),
{
    let mut seen: std::collections::HashSet<Vec<Idx>> = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(s) = queue.pop_front() {
        let mut next = Vec::new();
        step(&s, &mut |t| next.push(t));
        for t in next {
            if !seen.contains(&t) {
                if seen.len() >= bound {
                    return Err(MoveError::StateBound(bound));
                }
                seen.insert(t.clone());
                queue.push_back(t);
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// The Hurwitz-move orbit of a single vector, restricted to vectors
/// matching its signature, sorted.
pub fn vector_orbit(
    group: &Group,
    v: &GeneratingVector,
) -> Result<Vec<GeneratingVector>, MoveError> {
    let set = MoveSet::for_signature(v.sig())?;
    let sig = v.sig().clone();
    let r = sig.r();
    let start: Vec<Idx> = v.entries().map(|x| x as Idx).collect();
    let states = closure(
        start,
        |s, push| {
            for &mv in set.moves() {
                let mut t = s.to_vec();
                apply_raw(group, r, &mut t, mv);
                push(t);
            }
        },
        ORBIT_STATE_BOUND,
    )?;
    let mut out: Vec<GeneratingVector> = states
        .into_iter()
        .filter(|s| matches_pattern(group, &sig, s))
        .map(|mut s| {
            let h = s.split_off(r);
            GeneratingVector::from_parts_unchecked(sig.clone(), s, h)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Splits `vs` (all of one signature) into Hurwitz-move orbits. Returns the
/// orbit id of every input vector; ids are numbered by first appearance.
pub fn orbit_partition(group: &Group, vs: &[GeneratingVector]) -> Result<Vec<usize>, MoveError> {
    let index: HashMap<&GeneratingVector, usize> =
        vs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut ids = vec![usize::MAX; vs.len()];
    let mut next = 0;
    for i in 0..vs.len() {
        if ids[i] != usize::MAX {
            continue;
        }
        for w in vector_orbit(group, &vs[i])? {
            if let Some(&j) = index.get(&w) {
                ids[j] = next;
            }
        }
        next += 1;
    }
    Ok(ids)
}

/// One class of the equivalence relation on pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    /// Lexicographically smallest member of the input set in this class.
    pub representative: (GeneratingVector, GeneratingVector),
    /// Number of input pairs in this class.
    pub size: usize,
}

/// Partitions `pairs` under Hurwitz moves on each vector and simultaneous
/// automorphisms, by breadth-first search over pair states.
pub fn r_classes(
    group: &Group,
    pairs: &[(GeneratingVector, GeneratingVector)],
) -> Result<Vec<OrbitClass>, MoveError> {
    let Some(first) = pairs.first() else {
        return Ok(Vec::new());
    };
    let (vsig, wsig) = (first.0.sig().clone(), first.1.sig().clone());
    let vset = MoveSet::for_signature(&vsig)?;
    let wset = MoveSet::for_signature(&wsig)?;
    let auts = automorphism_generators(&group.automorphisms_bounded(ORBIT_AUT_BOUND)?);
    let (rv, rw) = (vsig.r(), wsig.r());
    let nv = rv + 2 * vsig.orbit_genus() as usize;

    let encode = |p: &(GeneratingVector, GeneratingVector)| -> Vec<Idx> {
        p.0.entries()
            .chain(p.1.entries())
            .map(|x| x as Idx)
            .collect()
    };
    let index: HashMap<Vec<Idx>, usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| (encode(p), i))
        .collect();
    let mut class_of = vec![usize::MAX; pairs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..pairs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let states = closure(
            encode(&pairs[i]),
            |s, push| {
                for &mv in vset.moves() {
                    let mut t = s.to_vec();
                    apply_raw(group, rv, &mut t[..nv], mv);
                    push(t);
                }
                for &mv in wset.moves() {
                    let mut t = s.to_vec();
                    apply_raw(group, rw, &mut t[nv..], mv);
                    push(t);
                }
                for a in &auts {
                    push(s.iter().map(|&x| a.apply(x as usize) as Idx).collect());
                }
            },
            ORBIT_STATE_BOUND,
        )?;
        let id = classes.len();
        let mut members = Vec::new();
        for s in states {
            if let Some(&j) = index.get(&s) {
                class_of[j] = id;
                members.push(j);
            }
        }
        classes.push(members);
    }
    let mut out: Vec<OrbitClass> = classes
        .into_iter()
        .map(|members| OrbitClass {
            representative: members
                .iter()
                .map(|&j| pairs[j].clone())
                .min()
                .expect("non-empty class"),
            size: members.len(),
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// Pair classes computed orbit-wise: Hurwitz orbits of `vs` and `ws` are
/// found separately, then `Aut(G)` acts on pairs of orbits. Freeness is
/// constant on a product of orbits, so only free orbit pairs are kept.
/// Agrees with [`r_classes`] on the set of all free pairs from `vs × ws`.
pub fn r_classes_factored(
    group: &Group,
    vs: &[GeneratingVector],
    ws: &[GeneratingVector],
) -> Result<Vec<OrbitClass>, MoveError> {
    if vs.is_empty() || ws.is_empty() {
        return Ok(Vec::new());
    }
    let vid = orbit_partition(group, vs)?;
    let wid = orbit_partition(group, ws)?;
    let nvo = vid.iter().max().map_or(0, |m| m + 1);
    let nwo = wid.iter().max().map_or(0, |m| m + 1);
    let mut vmembers: Vec<Vec<usize>> = vec![Vec::new(); nvo];
    let mut wmembers: Vec<Vec<usize>> = vec![Vec::new(); nwo];
    for (i, &o) in vid.iter().enumerate() {
        vmembers[o].push(i);
    }
    for (i, &o) in wid.iter().enumerate() {
        wmembers[o].push(i);
    }
    let vstab: Vec<ElemSet> = vmembers
        .iter()
        .map(|m| vs[m[0]].stabilizer_union(group))
        .collect();
    let wstab: Vec<ElemSet> = wmembers
        .iter()
        .map(|m| ws[m[0]].stabilizer_union(group))
        .collect();

    let vindex: HashMap<&GeneratingVector, usize> =
        vs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let windex: HashMap<&GeneratingVector, usize> =
        ws.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let auts = automorphism_generators(&group.automorphisms_bounded(ORBIT_AUT_BOUND)?);
    // image orbit of each orbit under each generator
    let vimg: Vec<Vec<usize>> = auts
        .iter()
        .map(|a| {
            vmembers
                .iter()
                .map(|m| vid[vindex[&vs[m[0]].map_entries(|x| a.apply(x))]])
                .collect()
        })
        .collect();
    let wimg: Vec<Vec<usize>> = auts
        .iter()
        .map(|a| {
            wmembers
                .iter()
                .map(|m| wid[windex[&ws[m[0]].map_entries(|x| a.apply(x))]])
                .collect()
        })
        .collect();

    let mut uf = UnionFind::new(nvo * nwo);
    let free = |i: usize, j: usize| vstab[i].intersection(&wstab[j]).len() == 1;
    for i in 0..nvo {
        for j in 0..nwo {
            if free(i, j) {
                for (vk, wk) in vimg.iter().zip(&wimg) {
                    uf.union(i * nwo + j, vk[i] * nwo + wk[j]);
                }
            }
        }
    }
    let mut classes: HashMap<usize, OrbitClass> = HashMap::new();
    for i in 0..nvo {
        for j in 0..nwo {
            if !free(i, j) {
                continue;
            }
            let rep = (vs[vmembers[i][0]].clone(), ws[wmembers[j][0]].clone());
            let size = vmembers[i].len() * wmembers[j].len();
            classes
                .entry(uf.find(i * nwo + j))
                .and_modify(|c| {
                    c.size += size;
                    if rep < c.representative {
                        c.representative = rep.clone();
                    }
                })
                .or_insert(OrbitClass {
                    representative: rep,
                    size,
                });
        }
    }
    let mut out: Vec<OrbitClass> = classes.into_values().collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    pub fn count_roots(&mut self, members: impl IntoIterator<Item = usize>) -> usize {
        let mut roots: Vec<usize> = members.into_iter().map(|x| self.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genvec::{building_pairs, enumerate_generating_vectors};

    fn lbl(g: &Group, v: &GeneratingVector) -> String {
        v.display(g)
    }

    #[test]
    fn trace_round_trip() {
        let t = parse_trace("1,3,5,3").unwrap();
        assert_eq!(t, vec![Move::Alpha, Move::Gamma, Move::Five, Move::Gamma]);
        assert_eq!(format_trace(&t), "1,3,5,3");
        assert_eq!(
            parse_trace("s2, 4").unwrap(),
            vec![Move::Sigma(2), Move::Rho]
        );
        assert!(parse_trace("6").is_err());
        assert!(parse_trace("s0").is_err());
    }

    #[test]
    fn abelian_braid_move_is_a_transposition() {
        let g = Group::abelian(&[2, 2]).unwrap();
        let v = GeneratingVector::from_labels(
            &g,
            Signature::genus0(&[2; 6]),
            &["(0,1)", "(1,1)", "(1,0)", "(1,0)", "(0,1)", "(1,1)"],
            &[],
        )
        .unwrap();
        let s = braid_move_genus0(&g, &v, 1).unwrap();
        assert_eq!(s.elliptic()[..2], [v.elliptic()[1], v.elliptic()[0]]);
        assert_eq!(s.elliptic()[2..], v.elliptic()[2..]);
        assert_eq!(braid_move_genus0(&g, &s, 1).unwrap(), v);
        assert!(matches!(
            braid_move_genus0(&g, &v, 6),
            Err(MoveError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn s3_braid_move_conjugates() {
        let g = Group::symmetric(3).unwrap();
        let v = GeneratingVector::from_labels(
            &g,
            Signature::genus0(&[2; 4]),
            &["(12)", "(13)", "(13)", "(12)"],
            &[],
        )
        .unwrap();
        let s = braid_move_genus0(&g, &v, 1).unwrap();
        // (13)^-1 (12) (13) by direct composition of images
        let p12 = g.perm_of(g.parse_element("(12)").unwrap()).unwrap().clone();
        let p13 = g.perm_of(g.parse_element("(13)").unwrap()).unwrap().clone();
        let expect = p13.inverse().compose(&p12).compose(&p13);
        assert_eq!(g.perm_of(s.elliptic()[1] as usize).unwrap(), &expect);
        assert_eq!(lbl(&g, &s), "[(1 3),(2 3),(1 3),(1 2)]");
        assert!(s.is_admissible(&g));
    }

    #[test]
    fn unequal_orders_are_rejected_but_raw_move_applies() {
        let g = Group::abelian(&[2, 4]).unwrap();
        let v = GeneratingVector::from_labels(
            &g,
            Signature::genus0(&[2, 2, 4, 4]),
            &["(1,2)", "(0,2)", "(0,1)", "(1,3)"],
            &[],
        )
        .unwrap();
        assert!(matches!(
            braid_move_genus0(&g, &v, 2),
            Err(MoveError::OrderMismatch { .. })
        ));
        let mut raw: Vec<Idx> = v.elliptic().to_vec();
        apply_raw(&g, 4, &mut raw, Move::Sigma(2));
        assert_eq!(raw[1], v.elliptic()[2]);
        assert_eq!(raw[2], v.elliptic()[1]);
    }

    #[test]
    fn torus1_moves_on_s3_base() {
        let g = Group::symmetric(3).unwrap();
        let w = GeneratingVector::from_labels(
            &g,
            Signature::genus1(&[3]),
            &["(132)"],
            &["(12)", "(123)"],
        )
        .unwrap();
        let [ta, tb] = torus1_moves(&g, &w).unwrap();
        // b a = (123)(12) = (13) with right-to-left composition
        assert_eq!(g.label(ta.hyperbolic()[1] as usize), "(1 3)");
        assert_eq!(ta.elliptic(), w.elliptic());
        assert_eq!(tb.elliptic(), w.elliptic());
        assert!(ta.is_admissible(&g) && tb.is_admissible(&g));
        assert!(torus2_moves(&g, &w).is_err());
    }

    #[test]
    fn abelian_torus_moves_specialize_to_numbered_moves() {
        let g = Group::abelian(&[2, 4]).unwrap();
        let sig = Signature::genus1(&[2, 2]);
        for w in enumerate_generating_vectors(&g, &sig) {
            let (g1, g2) = (w.elliptic()[0] as usize, w.elliptic()[1] as usize);
            let (h1, h2) = (w.hyperbolic()[0] as usize, w.hyperbolic()[1] as usize);
            let neg = |x| g.inverse(x);
            let [t1, t2, t3, t4] = torus2_moves(&g, &w).unwrap();
            let h = |v: &GeneratingVector| (v.hyperbolic()[0] as usize, v.hyperbolic()[1] as usize);
            assert_eq!(h(&t1), (h1, g.op(h1, h2)));
            assert_eq!(h(&t2), (g.op(h1, neg(h2)), h2));
            assert_eq!(h(&t3), (g.product(&[h1, neg(h2), g1]), h2));
            assert_eq!(h(&t4), (neg(h1), neg(h2)));
            assert_eq!(t4.elliptic(), &[g2 as Idx, g1 as Idx]);
            let five = apply_move(&g, &w, Move::Five).unwrap();
            assert_eq!(h(&five), (neg(h2), h1));
            assert_eq!(apply_trace(&g, &w, &[Move::Rho, Move::Rho]).unwrap(), w);
        }
    }

    #[test]
    fn orbit_of_singleton_contains_it() {
        let g = Group::abelian(&[2, 2]).unwrap();
        let pairs = building_pairs(&g, &Signature::genus0(&[2; 6]), &Signature::genus1(&[2, 2]));
        let classes = r_classes(&g, &pairs[..1]).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].size, 1);
        assert_eq!(classes[0].representative, pairs[0]);
    }

    #[test]
    fn automorphism_generators_generate() {
        let g = Group::abelian(&[2, 2, 2]).unwrap();
        let auts = g.automorphisms_bounded(ORBIT_AUT_BOUND).unwrap();
        assert_eq!(auts.len(), 168);
        let gens = automorphism_generators(&auts);
        assert!(gens.len() < auts.len());
        let mut reached = vec![Automorphism::identity(g.order())];
        let mut i = 0;
        while i < reached.len() {
            for a in &gens {
                let b = a.compose(&reached[i]);
                if !reached.contains(&b) {
                    reached.push(b);
                }
            }
            i += 1;
        }
        assert_eq!(reached.len(), 168);
    }

    #[test]
    fn direct_and_factored_routes_agree() {
        let cases = [
            (
                Group::abelian(&[2, 2]).unwrap(),
                Signature::genus0(&[2; 6]),
                Signature::genus1(&[2, 2]),
            ),
            (
                Group::abelian(&[2, 4]).unwrap(),
                Signature::genus0(&[2, 2, 4, 4]),
                Signature::genus1(&[2, 2]),
            ),
            (
                Group::symmetric(3).unwrap(),
                Signature::genus0(&[2; 6]),
                Signature::genus1(&[3]),
            ),
        ];
        for (g, m, n) in &cases {
            let pairs = building_pairs(g, m, n);
            let direct = r_classes(g, &pairs).unwrap();
            let vs = enumerate_generating_vectors(g, m);
            let ws = enumerate_generating_vectors(g, n);
            let factored = r_classes_factored(g, &vs, &ws).unwrap();
            assert_eq!(direct, factored, "{} {m}", g.name());
            assert_eq!(direct.iter().map(|c| c.size).sum::<usize>(), pairs.len());
        }
    }

    #[test]
    fn class_count_ignores_input_order() {
        let g = Group::abelian(&[2, 4]).unwrap();
        let mut pairs = building_pairs(
            &g,
            &Signature::genus0(&[2, 2, 4, 4]),
            &Signature::genus1(&[2, 2]),
        );
        let a = r_classes(&g, &pairs).unwrap();
        pairs.reverse();
        let b = r_classes(&g, &pairs).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }
}
