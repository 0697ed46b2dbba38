//! Helpers shared by the integration tests: random admissible vectors and
//! deliberately naive oracles that avoid the library's fast paths.

#![allow(dead_code)]

use std::collections::HashMap;

use isoprod::fuchsian::Signature;
use isoprod::genvec::{GeneratingVector, Idx};
use isoprod::group::Group;
use isoprod::moves::{
    apply_automorphism, apply_raw, braid_move_genus0, torus2_moves, Move, UnionFind,
};
use rand::Rng;

fn random_nontrivial<R: Rng>(g: &Group, rng: &mut R) -> usize {
    rng.gen_range(1..g.order())
}

/// Random genus-zero vector with `r` branch points: the first `r - 1`
/// entries are uniform, the last closes the relation; entries are then
/// sorted by order with braid moves so that they match a signature.
pub fn random_genus0<R: Rng>(g: &Group, r: usize, rng: &mut R) -> Option<GeneratingVector> {
    let mut xs: Vec<usize> = (0..r - 1).map(|_| random_nontrivial(g, rng)).collect();
    let last = g.inverse(g.product(&xs));
    if last == 0 {
        return None;
    }
    xs.push(last);
    if !g.generates(&xs) {
        return None;
    }
    let mut state: Vec<Idx> = xs.iter().map(|&x| x as Idx).collect();
    // Bubble sort; sigma_i exchanges the orders at positions i and i+1.
    loop {
        let mut swapped = false;
        for i in 1..r {
            if g.elem_order(state[i - 1] as usize) > g.elem_order(state[i] as usize) {
                apply_raw(g, r, &mut state, Move::Sigma(i));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let orders: Vec<u32> = state.iter().map(|&x| g.elem_order(x as usize)).collect();
    Some(GeneratingVector::from_parts_unchecked(
        Signature::genus0(&orders),
        state,
        vec![],
    ))
}

/// Random genus-one vector with one branch point, or with two branch points
/// of equal order.
pub fn random_genus1<R: Rng>(g: &Group, r: usize, rng: &mut R) -> Option<GeneratingVector> {
    let (h1, h2) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
    let c_inv = g.inverse(g.commutator(h1, h2));
    let elliptic = match r {
        1 => vec![c_inv],
        2 => {
            let g1 = random_nontrivial(g, rng);
            let g2 = g.op(g.inverse(g1), c_inv);
            if g.elem_order(g1) != g.elem_order(g2) {
                return None;
            }
            vec![g1, g2]
        }
        _ => panic!("r must be 1 or 2"),
    };
    if elliptic.contains(&0) {
        return None;
    }
    let all: Vec<usize> = elliptic.iter().copied().chain([h1, h2]).collect();
    if !g.generates(&all) {
        return None;
    }
    let orders: Vec<u32> = elliptic.iter().map(|&x| g.elem_order(x)).collect();
    Some(GeneratingVector::from_parts_unchecked(
        Signature::genus1(&orders),
        elliptic.iter().map(|&x| x as Idx).collect(),
        vec![h1 as Idx, h2 as Idx],
    ))
}

type Key = (Vec<Idx>, Vec<Idx>);

fn key(p: &(GeneratingVector, GeneratingVector)) -> Key {
    (
        p.0.entries().map(|x| x as Idx).collect(),
        p.1.entries().map(|x| x as Idx).collect(),
    )
}

/// Class sizes (sorted) of `pairs` under: transpositions of equal-order
/// neighbours in V, the four torus moves on W, and every automorphism of G.
/// Only valid for abelian groups with base signature `(1|m,m)`, where these
/// moves generate everything. Panics if an image leaves the pair set.
pub fn naive_abelian_classes(
    g: &Group,
    pairs: &[(GeneratingVector, GeneratingVector)],
) -> Vec<usize> {
    assert!(g.is_abelian());
    let index: HashMap<Key, usize> = pairs.iter().enumerate().map(|(i, p)| (key(p), i)).collect();
    let auts = g.automorphisms().expect("small group");
    let mut uf = UnionFind::new(pairs.len());
    for (i, (v, w)) in pairs.iter().enumerate() {
        let mut images = Vec::new();
        for k in 1..v.sig().r() {
            if let Ok(v2) = braid_move_genus0(g, v, k) {
                images.push((v2, w.clone()));
            }
        }
        for w2 in torus2_moves(g, w).expect("two-point base") {
            images.push((v.clone(), w2));
        }
        for a in &auts {
            images.push(apply_automorphism(a, &(v.clone(), w.clone())));
        }
        for img in images {
            let j = *index
                .get(&key(&img))
                .expect("moves preserve the set of free pairs");
            uf.union(i, j);
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..pairs.len() {
        *sizes.entry(uf.find(i)).or_default() += 1;
    }
    let mut out: Vec<usize> = sizes.into_values().collect();
    out.sort_unstable();
    out
}

/// Genus from Riemann–Hurwitz in plain integer arithmetic:
/// `(2g - 2) L = |G| (L (2g' - 2) + Σ (L - L/m_i))` with `L = lcm(m)`.
pub fn integer_riemann_hurwitz(order: i64, orbit_genus: i64, m: &[u32]) -> Option<i64> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let l = m.iter().fold(1i64, |l, &x| l / gcd(l, x as i64) * x as i64);
    let num =
        order * (l * (2 * orbit_genus - 2) + m.iter().map(|&x| l - l / x as i64).sum::<i64>());
    if num % l != 0 {
        return None;
    }
    let two_g_minus_two = num / l;
    if two_g_minus_two % 2 != 0 {
        return None;
    }
    Some(two_g_minus_two / 2 + 1)
}
