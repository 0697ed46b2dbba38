//! Signatures of Fuchsian groups, Riemann–Hurwitz arithmetic and the
//! numerical enumeration of branching data.
//!
//! All genus arithmetic is exact (`Ratio<i64>`).

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genvec::BuildingData;

type Q = Ratio<i64>;

/// Largest `g(C) - 1` for which the abelian candidate search looks for
/// solutions. A hyperbolic genus-zero signature has
/// `-2 + Σ(1 - 1/m_i) >= 1/42`, so `2 = (g(C) - 1) * excess` forces
/// `g(C) - 1 <= 84`.
pub const ABELIAN_GC_MINUS_ONE_CAP: u32 = 84;
/// `(1/2)(r) - 2 <= 2 / (g(C) - 1) <= 1` caps the number of branch points.
pub const ABELIAN_MAX_BRANCH_POINTS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuchsianError {
    #[error("signature incompatible with order: {0}")]
    Incompatible(String),
    #[error("branching order {0} must be at least 2")]
    BadPeriod(u32),
    #[error("cannot parse signature `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("inconsistent surface invariants: {0}")]
    Inconsistent(String),
}

/// `(g' | m_1, ..., m_r)` with `m` sorted non-decreasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    orbit_genus: u32,
    branching: Vec<u32>,
}

impl Signature {
    pub fn new(orbit_genus: u32, mut branching: Vec<u32>) -> Result<Self, FuchsianError> {
        if let Some(&m) = branching.iter().find(|&&m| m < 2) {
            return Err(FuchsianError::BadPeriod(m));
        }
        branching.sort_unstable();
        Ok(Signature {
            orbit_genus,
            branching,
        })
    }

    pub fn genus0(branching: &[u32]) -> Self {
        Signature::new(0, branching.to_vec()).expect("periods >= 2")
    }

    pub fn genus1(branching: &[u32]) -> Self {
        Signature::new(1, branching.to_vec()).expect("periods >= 2")
    }

    pub fn orbit_genus(&self) -> u32 {
        self.orbit_genus
    }

    pub fn branching(&self) -> &[u32] {
        &self.branching
    }

    /// Number of branch points `r`.
    pub fn r(&self) -> usize {
        self.branching.len()
    }

    /// `2g' - 2 + Σ (1 - 1/m_i)`.
    pub fn orbifold_euler_excess(&self) -> Ratio<i64> {
        let base = Q::from_integer(2 * self.orbit_genus as i64 - 2);
        self.branching
            .iter()
            .fold(base, |acc, &m| acc + Q::new(m as i64 - 1, m as i64))
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.orbifold_euler_excess() > Q::from_integer(0)
    }

    /// Branching data in exponent form, e.g. `2^2,4^2`.
    pub fn branching_text(&self) -> String {
        exponent_form(&self.branching)
    }
}

/// Compresses runs: `[2,2,4,4]` -> `2^2,4^2`; `[2,8,8]` -> `2,8^2`.
pub fn exponent_form(values: &[u32]) -> String {
    if values.is_empty() {
        return "-".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i;
        while j < values.len() && values[j] == values[i] {
            j += 1;
        }
        parts.push(if j - i == 1 {
            values[i].to_string()
        } else {
            format!("{}^{}", values[i], j - i)
        });
        i = j;
    }
    parts.join(",")
}

/// Parses `2^2,4^2`, `2,8^2`, or `-`/empty for no branch points.
pub fn parse_exponent_form(text: &str) -> Result<Vec<u32>, String> {
    let text = text.trim();
    if text.is_empty() || text == "-" || text == "—" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (base, exp) = match part.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim()),
            None => (part, "1"),
        };
        let base: u32 = base.parse().map_err(|_| format!("bad period `{base}`"))?;
        let exp: usize = exp.parse().map_err(|_| format!("bad exponent `{exp}`"))?;
        out.extend(std::iter::repeat_n(base, exp));
    }
    Ok(out)
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.orbit_genus, self.branching_text())
    }
}

impl FromStr for Signature {
    type Err = FuchsianError;

    /// Accepts `(g' | m1,m2,...)` with exponent sugar, parentheses optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| FuchsianError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = s.trim();
        let inner = inner.strip_prefix('(').unwrap_or(inner);
        let inner = inner.strip_suffix(')').unwrap_or(inner);
        let (g, m) = inner.split_once('|').ok_or_else(|| err("missing `|`"))?;
        let g: u32 = g
            .trim()
            .parse()
            .map_err(|_| err("orbit genus is not a number"))?;
        let m = parse_exponent_form(m).map_err(|r| err(&r))?;
        Signature::new(g, m)
    }
}

/// Genera of the two curves `C` (carrying the base covering) and `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusPair {
    pub g_c: u32,
    pub g_f: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub p_g: u32,
    pub q: u32,
    pub chi: i32,
    pub k_squared: u32,
    pub group_order: usize,
    pub g_c: u32,
    pub g_f: u32,
}

/// Genus `g` of a curve with a `G`-action of the given signature:
/// `2g - 2 = |G| (2g' - 2 + Σ (1 - 1/m_i))`.
pub fn riemann_hurwitz_genus(group_order: usize, sig: &Signature) -> Result<u32, FuchsianError> {
    if group_order == 0 {
        return Err(FuchsianError::Incompatible(
            "group order must be positive".into(),
        ));
    }
    let rhs = Q::from_integer(group_order as i64) * sig.orbifold_euler_excess();
    let two_g = rhs + Q::from_integer(2);
    if !two_g.is_integer() || two_g.to_integer() % 2 != 0 || two_g.to_integer() < 0 {
        return Err(FuchsianError::Incompatible(format!(
            "|G| = {group_order}, signature {sig}: 2g - 2 = {rhs}"
        )));
    }
    Ok((two_g.to_integer() / 2) as u32)
}

/// One admissible shape of the base covering `C -> E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseOption {
    pub label: char,
    pub g_f: u32,
    pub n: Signature,
    pub abelian_permitted: bool,
}

/// The three possibilities for `(g(F), n)` forced by
/// `2 = (g(F) - 1) Σ (1 - 1/n_j)` with `g(F) >= 3`. Abelian groups cannot be
/// generated with a single branch point, which leaves only `(a)`.
pub fn base_signature_options() -> Vec<BaseOption> {
    vec![
        BaseOption {
            label: 'a',
            g_f: 3,
            n: Signature::genus1(&[2, 2]),
            abelian_permitted: true,
        },
        BaseOption {
            label: 'b',
            g_f: 4,
            n: Signature::genus1(&[3]),
            abelian_permitted: false,
        },
        BaseOption {
            label: 'c',
            g_f: 5,
            n: Signature::genus1(&[2]),
            abelian_permitted: false,
        },
    ]
}

/// A genus-zero branching datum together with the group order it forces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignatureCandidate {
    pub sig: Signature,
    pub group_order: usize,
    pub g_c: u32,
}

/// Purely numerical solutions of `2 = (g(C) - 1)(-2 + Σ (1 - 1/m_i))` with
/// `|G| = 2(g(C) - 1)` and `g(C) >= 3`, before any group theory.
/// Sorted by `r`, then lexicographically by `m`.
pub fn abelian_signature_candidates() -> Vec<SignatureCandidate> {
    abelian_signature_candidates_bounded(ABELIAN_GC_MINUS_ONE_CAP, ABELIAN_MAX_BRANCH_POINTS)
}

pub fn abelian_signature_candidates_bounded(
    max_gc_minus_one: u32,
    max_r: usize,
) -> Vec<SignatureCandidate> {
    let mut out = Vec::new();
    for k in 2..=max_gc_minus_one as i64 {
        for r in 1..=max_r {
            // Σ 1/m_i = r - 2 - 2/k
            let target = Q::from_integer(r as i64 - 2) - Q::new(2, k);
            for m in unit_fraction_decompositions(target, r, &|_| true) {
                out.push(SignatureCandidate {
                    sig: Signature::genus0(&m),
                    group_order: 2 * k as usize,
                    g_c: k as u32 + 1,
                });
            }
        }
    }
    out.sort_by(|a, b| (a.sig.r(), &a.sig.branching).cmp(&(b.sig.r(), &b.sig.branching)));
    out
}

/// Genus-zero branching data `m` (sorted, every `m_i` accepted by
/// `allowed`) such that a group of order `group_order` acting with
/// signature `(0 | m)` yields a curve of genus `genus`.
pub fn genus0_signatures_for(
    group_order: usize,
    genus: u32,
    allowed: &dyn Fn(u32) -> bool,
) -> Vec<Signature> {
    // Σ (1 - 1/m_i) = 2 + (2g - 2)/|G|
    let total = Q::from_integer(2) + Q::new(2 * genus as i64 - 2, group_order as i64);
    let max_r = (total * Q::from_integer(2)).floor().to_integer().max(0) as usize;
    let mut out = Vec::new();
    for r in 1..=max_r {
        let target = Q::from_integer(r as i64) - total;
        for m in unit_fraction_decompositions(target, r, allowed) {
            out.push(Signature::genus0(&m));
        }
    }
    out.sort_by(|a, b| (a.r(), &a.branching).cmp(&(b.r(), &b.branching)));
    out
}

/// All non-decreasing `(m_1, .., m_count)`, `m_i >= 2`, with
/// `Σ 1/m_i = target`.
fn unit_fraction_decompositions(
    target: Q,
    count: usize,
    allowed: &dyn Fn(u32) -> bool,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(count);
    unit_fraction_rec(target, count, 2, allowed, &mut acc, &mut out);
    out
}

fn unit_fraction_rec(
    rem: Q,
    count: usize,
    min_m: i64,
    allowed: &dyn Fn(u32) -> bool,
    acc: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let zero = Q::from_integer(0);
    if count == 0 {
        if rem == zero {
            out.push(acc.clone());
        }
        return;
    }
    if rem <= zero {
        return;
    }
    if count == 1 {
        let inv = rem.recip();
        if inv.is_integer() && inv.to_integer() >= min_m && allowed(inv.to_integer() as u32) {
            acc.push(inv.to_integer() as u32);
            out.push(acc.clone());
            acc.pop();
        }
        return;
    }
    // 1/m < rem (later terms are positive) and count/m >= rem
    let lo = min_m.max(rem.recip().floor().to_integer() + 1);
    let hi = (Q::from_integer(count as i64) / rem).floor().to_integer();
    for m in lo..=hi {
        if !allowed(m as u32) {
            continue;
        }
        acc.push(m as u32);
        unit_fraction_rec(rem - Q::new(1, m), count - 1, m, allowed, acc, out);
        acc.pop();
    }
}

/// Re-derives both genera of validated building data and checks the
/// numerical identities of a surface with `p_g = q = 1`.
pub fn surface_invariants(bd: &BuildingData) -> Result<SurfaceInvariants, FuchsianError> {
    let order = bd.group().order();
    let g_f = riemann_hurwitz_genus(order, bd.v().sig())?;
    let g_c = riemann_hurwitz_genus(order, bd.w().sig())?;
    if g_f != bd.genus().g_f || g_c != bd.genus().g_c {
        return Err(FuchsianError::Inconsistent(format!(
            "recomputed genera ({g_c}, {g_f}) differ from stored {:?}",
            bd.genus()
        )));
    }
    if (g_c as usize - 1) * (g_f as usize - 1) != order {
        return Err(FuchsianError::Inconsistent(format!(
            "|G| = {order} but (g(C)-1)(g(F)-1) = {}",
            (g_c as usize - 1) * (g_f as usize - 1)
        )));
    }
    // χ(O_S) = χ(O_C) χ(O_F) / |G| and K² = 8χ for an étale quotient of C × F
    let chi_num = (g_c as i64 - 1) * (g_f as i64 - 1);
    if chi_num % order as i64 != 0 {
        return Err(FuchsianError::Inconsistent("χ is not an integer".into()));
    }
    let chi = (chi_num / order as i64) as i32;
    let k_squared = 8 * chi as u32;
    if chi != 1 || k_squared != 8 {
        return Err(FuchsianError::Inconsistent(format!(
            "χ = {chi}, K² = {k_squared}"
        )));
    }
    Ok(SurfaceInvariants {
        p_g: 1,
        q: bd.v().sig().orbit_genus() + bd.w().sig().orbit_genus(),
        chi,
        k_squared,
        group_order: order,
        g_c,
        g_f,
    })
}
