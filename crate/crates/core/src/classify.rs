//! End-to-end pipelines: the abelian classification with component counts,
//! the six explicit nonabelian constructions, a catalog-driven nonabelian
//! search, and a replay of the hand computations for the four abelian
//! families.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuchsian::{
    abelian_signature_candidates, base_signature_options, genus0_signatures_for,
    parse_exponent_form, riemann_hurwitz_genus, FuchsianError, Signature, SignatureCandidate,
    SurfaceInvariants,
};
use crate::genvec::{
    enumerate_generating_vectors, validate_building_data, BuildingData, GeneratingVector,
    ValidationError,
};
use crate::group::{dihedral_generators, parse_group_spec, Group, GroupError, Perm, SpecError};
use crate::moves::{
    apply_automorphism, apply_trace, parse_trace, r_classes, r_classes_factored, MoveError,
    OrbitClass,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Moves(#[from] MoveError),
    #[error(transparent)]
    Fuchsian(#[from] FuchsianError),
    #[error("{0}")]
    Signature(String),
    #[error("{section}: {source}")]
    Validation {
        section: String,
        #[source]
        source: ValidationError,
    },
    #[error("{section}: {detail}")]
    BadExample { section: String, detail: String },
    #[error("unknown family `{0}`, expected one of I, II, III, IV")]
    UnknownFamily(String),
    #[error("replay of family {family} failed at `{claim}`: {detail}")]
    Replay {
        family: String,
        claim: String,
        detail: String,
        trace: Box<ReplayTrace>,
    },
}

/// Smallest orders first, then branching data.
fn record_key(r: &FamilyRecord) -> (usize, Vec<u32>, Vec<u32>, String) {
    let parse = |s: &str| parse_exponent_form(s).unwrap_or_default();
    (r.order, parse(&r.m), parse(&r.n), r.group.clone())
}

/// Canonical representative of one class of building data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub v: String,
    pub w: String,
    pub class_size: usize,
}

/// One family (or nonabelian row) of surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub label: String,
    /// Group in the spec grammar of [`parse_group_spec`].
    pub group: String,
    pub order: usize,
    /// Branching data of the genus-zero covering `F -> P^1`, e.g. `2^2,4^2`.
    pub m: String,
    /// Branching data of the covering `C -> E`, e.g. `2^2`.
    pub n: String,
    pub g_c: u32,
    pub g_f: u32,
    /// Number of classes of building data, i.e. irreducible components.
    pub components: usize,
    /// False when the move system used is not known to be complete, in which
    /// case `components` is only an upper bound (classes may be split).
    pub components_exact: bool,
    pub dimension: usize,
    pub invariants: SurfaceInvariants,
    pub representatives: Vec<Representative>,
    /// For nonabelian rows: whether the row is one of the six published ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_paper: Option<bool>,
}

impl FamilyRecord {
    pub fn fiber_signature(&self) -> Signature {
        Signature::genus0(&parse_exponent_form(&self.m).expect("stored branching is well-formed"))
    }

    pub fn base_signature(&self) -> Signature {
        Signature::genus1(&parse_exponent_form(&self.n).expect("stored branching is well-formed"))
    }

    /// Rebuilds and re-validates the building data of every representative.
    pub fn revalidate(&self) -> Result<Vec<BuildingData>, ClassifyError> {
        let g = Arc::new(parse_group_spec(&self.group)?);
        let section = format!("record {} ({})", self.label, self.group);
        self.representatives
            .iter()
            .map(|rep| {
                let bad = |detail: String| ClassifyError::BadExample {
                    section: section.clone(),
                    detail,
                };
                let v = GeneratingVector::parse(&g, self.fiber_signature(), &rep.v)
                    .map_err(|e| bad(e.to_string()))?;
                let w = GeneratingVector::parse(&g, self.base_signature(), &rep.w)
                    .map_err(|e| bad(e.to_string()))?;
                validate_building_data(&g, v, w).map_err(|source| ClassifyError::Validation {
                    section: section.clone(),
                    source,
                })
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// group catalog

/// Invariant factor lists `d_1 | d_2 | ... | d_k` (all `d_i >= 2`) of the
/// abelian groups of order `n`, one per isomorphism type.
pub fn abelian_invariants_of_order(n: usize) -> Vec<Vec<u32>> {
    fn rec(rest: usize, min: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            if !acc.is_empty() {
                out.push(acc.clone());
            }
            return;
        }
        for d in
            (min.max(2)..=rest).filter(|d| rest.is_multiple_of(*d) && d.is_multiple_of(min.max(1)))
        {
            acc.push(d as u32);
            rec(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn abelian_spec(inv: &[u32]) -> String {
    inv.iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Isomorphism invariants used to keep the curated catalog free of
/// duplicates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub order_statistics: Vec<(u32, usize)>,
    pub center: usize,
    pub classes: usize,
    pub derived: usize,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let n = g.order();
    let center = (0..n)
        .filter(|&a| (0..n).all(|b| g.op(a, b) == g.op(b, a)))
        .count();
    let mut seen = vec![false; n];
    let mut classes = 0;
    for a in 0..n {
        if !seen[a] {
            classes += 1;
            for x in g.conjugacy_class(a).iter() {
                seen[x] = true;
            }
        }
    }
    let commutators: BTreeSet<usize> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    let derived = g
        .subgroup_generated(&commutators.into_iter().collect::<Vec<_>>())
        .len();
    Fingerprint {
        order: n,
        order_statistics: g.order_statistics().into_iter().collect(),
        center,
        classes,
        derived,
    }
}

/// Number of isomorphism types of groups of each order `1..=60`.
const GROUPS_OF_ORDER: [usize; 61] = [
    0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4,
    1, 51, 1, 2, 1, 14, 1, 2, 2, 14, 1, 6, 1, 4, 2, 2, 1, 52, 2, 5, 1, 5, 1, 15, 2, 13, 2, 2, 1,
    13,
];

/// Known number of nonabelian isomorphism types of order `n <= 60`.
pub fn nonabelian_type_count(n: usize) -> Option<usize> {
    GROUPS_OF_ORDER.get(n).filter(|_| n >= 1).map(|&total| {
        total
            - abelian_invariants_of_order(n)
                .len()
                .max(usize::from(n == 1))
    })
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: String,
    pub group: Arc<Group>,
    pub fingerprint: Fingerprint,
}

/// Groups available to the searches: every abelian group up to
/// `max_abelian` and a curated list of nonabelian groups up to
/// `max_nonabelian` built from dihedral, dicyclic, symmetric and alternating
/// groups and their direct products with abelian groups.
#[derive(Clone, Debug)]
pub struct GroupCatalog {
    pub max_abelian: usize,
    pub max_nonabelian: usize,
    pub abelian: Vec<CatalogEntry>,
    pub nonabelian: Vec<CatalogEntry>,
}

impl GroupCatalog {
    pub fn standard() -> Result<GroupCatalog, ClassifyError> {
        GroupCatalog::build(64, 60)
    }

    pub fn build(max_abelian: usize, max_nonabelian: usize) -> Result<GroupCatalog, ClassifyError> {
        let abelian = (2..=max_abelian)
            .flat_map(abelian_invariants_of_order)
            .map(|inv| -> Result<CatalogEntry, ClassifyError> {
                let g = Group::abelian(&inv)?;
                Ok(CatalogEntry {
                    spec: abelian_spec(&inv),
                    fingerprint: fingerprint(&g),
                    group: Arc::new(g),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;

        // candidate specs, simplest first; later isomorphic copies are dropped
        let mut specs: Vec<(usize, String)> = Vec::new();
        let mut bases: Vec<(usize, String)> = vec![
            (6, "S3".into()),
            (24, "S4".into()),
            (12, "A4".into()),
            (60, "A5".into()),
        ];
        bases.extend((4..=max_nonabelian / 2).map(|n| (2 * n, format!("D{n}"))));
        bases.extend((2..=max_nonabelian / 4).map(|n| (4 * n, format!("Dic{n}"))));
        bases.push((36, "S3 x S3".into()));
        bases.push((48, "S3 x D4".into()));
        bases.push((48, "S3 x Dic2".into()));
        for (order, spec) in &bases {
            if *order <= max_nonabelian {
                specs.push((*order, spec.clone()));
            }
            for k in 2..=max_nonabelian / order {
                for inv in abelian_invariants_of_order(k) {
                    specs.push((order * k, format!("{spec} x {}", abelian_spec(&inv))));
                }
            }
        }
        specs.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then(a.1.len().cmp(&b.1.len()))
                .then(a.1.cmp(&b.1))
        });

        let built: Vec<(String, Group)> = specs
            .par_iter()
            .map(|(_, spec)| parse_group_spec(spec).map(|g| (spec.clone(), g)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut seen = BTreeSet::new();
        let mut nonabelian = Vec::new();
        for (spec, g) in built {
            let fp = fingerprint(&g);
            if seen.insert(fp.clone()) {
                nonabelian.push(CatalogEntry {
                    spec,
                    group: Arc::new(g),
                    fingerprint: fp,
                });
            }
        }
        Ok(GroupCatalog {
            max_abelian,
            max_nonabelian,
            abelian,
            nonabelian,
        })
    }

    /// Orders `<= max` (and `<= 60`) where the curated nonabelian list
    /// misses some isomorphism types.
    pub fn nonabelian_gaps(&self, max: usize) -> Vec<(usize, usize, usize)> {
        let mut have: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.nonabelian {
            *have.entry(e.group.order()).or_default() += 1;
        }
        (1..=max.min(60))
            .filter_map(|n| {
                let known = nonabelian_type_count(n)?;
                let got = have.get(&n).copied().unwrap_or(0);
                (got < known).then_some((n, got, known))
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "all {} abelian groups of order <= {}; {} curated nonabelian groups of order <= {} (dihedral, dicyclic, S3, S4, A4, A5, a few products of two of these, and direct products with abelian groups; isomorphic copies removed by fingerprint)",
            self.abelian.len(),
            self.max_abelian,
            self.nonabelian.len(),
            self.max_nonabelian
        )
    }
}

// ---------------------------------------------------------------------------
// abelian classification

/// Why a numerical candidate `(m, |G|)` does not give a family for a
/// particular abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exclusion {
    /// The group has no element of one of the orders in `m`.
    MissingElementOrder(u32),
    /// No generating vector of signature `(0|m)`.
    NoFiberVector,
    /// No generating vector of signature `(1|2^2)`.
    NoBaseVector,
    /// Vectors exist but the diagonal action is never free.
    NoFreePair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateOutcome {
    pub m: String,
    pub order: usize,
    pub g_c: u32,
    /// `(group, None)` for a surviving group, `(group, Some(reason))` otherwise.
    pub groups: Vec<(String, Option<Exclusion>)>,
}

impl CandidateOutcome {
    pub fn survives(&self) -> bool {
        self.groups.iter().any(|(_, e)| e.is_none())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbelianClassification {
    pub records: Vec<FamilyRecord>,
    pub outcomes: Vec<CandidateOutcome>,
}

struct Job {
    group: Arc<Group>,
    spec: String,
    m: Signature,
    n: Signature,
    g_c: u32,
    g_f: u32,
}

/// Classes and fibre vectors for one `(G, m, n)`, or why there are none.
type JobOutcome = Result<(Vec<OrbitClass>, Vec<GeneratingVector>), Exclusion>;

fn run_job(job: &Job) -> Result<JobOutcome, ClassifyError> {
    let g = &job.group;
    if let Some(&m) = job
        .m
        .branching()
        .iter()
        .find(|&&m| g.elements_of_order(m).is_empty())
    {
        return Ok(Err(Exclusion::MissingElementOrder(m)));
    }
    let vs = enumerate_generating_vectors(g, &job.m);
    if vs.is_empty() {
        return Ok(Err(Exclusion::NoFiberVector));
    }
    let ws = enumerate_generating_vectors(g, &job.n);
    if ws.is_empty() {
        return Ok(Err(Exclusion::NoBaseVector));
    }
    let classes = r_classes_factored(g, &vs, &ws)?;
    if classes.is_empty() {
        return Ok(Err(Exclusion::NoFreePair));
    }
    Ok(Ok((classes, vs)))
}

fn build_record(
    job: &Job,
    classes: &[OrbitClass],
    label: String,
    exact: bool,
) -> Result<FamilyRecord, ClassifyError> {
    let g = &job.group;
    let (v, w) = classes[0].representative.clone();
    let bd = validate_building_data(g, v, w).map_err(|source| ClassifyError::Validation {
        section: format!("{} {}", job.spec, job.m),
        source,
    })?;
    Ok(FamilyRecord {
        label,
        group: job.spec.clone(),
        order: g.order(),
        m: job.m.branching_text(),
        n: job.n.branching_text(),
        g_c: job.g_c,
        g_f: job.g_f,
        components: classes.len(),
        components_exact: exact,
        dimension: job.m.r() - 1,
        invariants: bd.invariants(),
        representatives: classes
            .iter()
            .map(|c| Representative {
                v: c.representative.0.display(g),
                w: c.representative.1.display(g),
                class_size: c.size,
            })
            .collect(),
        in_paper: None,
    })
}

const ROMAN: [&str; 8] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"];

/// Runs every numerical candidate against every abelian group of the right
/// order and keeps the `(G, m)` admitting free building data, with the
/// number of classes of such data. Records are labelled I, II, ... in order
/// of `(|G|, m)`.
pub fn classify_abelian() -> Result<AbelianClassification, ClassifyError> {
    classify_abelian_from(&abelian_signature_candidates())
}

pub fn classify_abelian_from(
    candidates: &[SignatureCandidate],
) -> Result<AbelianClassification, ClassifyError> {
    let base = base_signature_options()
        .into_iter()
        .find(|b| b.abelian_permitted)
        .expect("one abelian base option");
    let jobs: Vec<(usize, Job)> = candidates
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| {
            abelian_invariants_of_order(c.group_order)
                .into_iter()
                .map(move |inv| (ci, inv))
        })
        .map(|(ci, inv)| -> Result<(usize, Job), ClassifyError> {
            let c = &candidates[ci];
            Ok((
                ci,
                Job {
                    group: Arc::new(Group::abelian(&inv)?),
                    spec: abelian_spec(&inv),
                    m: c.sig.clone(),
                    n: base.n.clone(),
                    g_c: c.g_c,
                    g_f: base.g_f,
                },
            ))
        })
        .collect::<Result<_, _>>()?;

    let results: Vec<_> = jobs
        .par_iter()
        .map(|(ci, job)| run_job(job).map(|r| (*ci, r)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut outcomes: Vec<CandidateOutcome> = candidates
        .iter()
        .map(|c| CandidateOutcome {
            m: c.sig.branching_text(),
            order: c.group_order,
            g_c: c.g_c,
            groups: Vec::new(),
        })
        .collect();
    let mut records = Vec::new();
    for ((ci, res), (_, job)) in results.into_iter().zip(&jobs) {
        match res {
            Ok((classes, _)) => {
                outcomes[ci].groups.push((job.spec.clone(), None));
                records.push(build_record(job, &classes, String::new(), true)?);
            }
            Err(ex) => outcomes[ci].groups.push((job.spec.clone(), Some(ex))),
        }
    }
    records.sort_by_key(record_key);
    for (i, r) in records.iter_mut().enumerate() {
        r.label = ROMAN
            .get(i)
            .map_or_else(|| format!("#{}", i + 1), |s| s.to_string());
    }
    Ok(AbelianClassification { records, outcomes })
}

// ---------------------------------------------------------------------------
// ad-hoc orbit counts

/// Classes of free building data for one `(G, m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub group: String,
    pub m: String,
    pub n: String,
    pub pairs: usize,
    pub classes: Vec<Representative>,
}

/// Enumerates the free pairs for `group_spec` with fibre signature `m` and
/// base signature `n` and splits them into classes.
///
/// A non-integral genus is an error. Genera that are integral but violate
/// `g >= 3` or `|G| = (g(C)-1)(g(F)-1)` give zero pairs and a warning.
pub fn orbit_classes(
    group_spec: &str,
    m: &Signature,
    n: &Signature,
) -> Result<(OrbitSummary, Vec<String>), ClassifyError> {
    if m.orbit_genus() != 0 {
        return Err(ClassifyError::Signature(format!(
            "fibre signature {m} must have orbit genus 0"
        )));
    }
    if n.orbit_genus() != 1 {
        return Err(ClassifyError::Signature(format!(
            "base signature {n} must have orbit genus 1"
        )));
    }
    let g = parse_group_spec(group_spec)?;
    let g_f = riemann_hurwitz_genus(g.order(), m)?;
    let g_c = riemann_hurwitz_genus(g.order(), n)?;
    let mut summary = OrbitSummary {
        group: group_spec.trim().to_string(),
        m: m.branching_text(),
        n: n.branching_text(),
        pairs: 0,
        classes: Vec::new(),
    };
    let mut warnings = Vec::new();
    if g_c < 3 || g_f < 3 {
        warnings.push(format!(
            "g(C) = {g_c}, g(F) = {g_f}: both genera must be at least 3"
        ));
    }
    let product = (g_c as usize).saturating_sub(1) * (g_f as usize).saturating_sub(1);
    if product != g.order() {
        warnings.push(format!(
            "|G| = {} but (g(C)-1)(g(F)-1) = {product}",
            g.order()
        ));
    }
    if !warnings.is_empty() {
        return Ok((summary, warnings));
    }
    let vs = enumerate_generating_vectors(&g, m);
    let ws = if vs.is_empty() {
        Vec::new()
    } else {
        enumerate_generating_vectors(&g, n)
    };
    let classes = r_classes_factored(&g, &vs, &ws)?;
    summary.pairs = classes.iter().map(|c| c.size).sum();
    summary.classes = classes
        .iter()
        .map(|c| Representative {
            v: c.representative.0.display(&g),
            w: c.representative.1.display(&g),
            class_size: c.size,
        })
        .collect();
    if n.r() != 1 && !g.is_abelian() {
        warnings.push(
            "nonabelian group with a two-point base: the class count is an upper bound".into(),
        );
    }
    Ok((summary, warnings))
}

// ---------------------------------------------------------------------------
// nonabelian examples

/// One of the six published nonabelian constructions, as printed.
#[derive(Clone, Debug)]
pub struct PaperExample {
    pub name: &'static str,
    pub group: &'static str,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub g_c: u32,
    pub g_f: u32,
    /// Elements as words in `rho`, `sigma` for dihedral groups, cycle
    /// notation otherwise.
    pub v: Vec<&'static str>,
    pub ell: Vec<&'static str>,
    pub h: [&'static str; 2],
}

pub fn paper_nonabelian_examples() -> Vec<PaperExample> {
    vec![
        PaperExample {
            name: "S3",
            group: "S3",
            m: vec![2; 6],
            n: vec![3],
            g_c: 3,
            g_f: 4,
            v: vec!["(12)", "(12)", "(13)", "(13)", "(23)", "(23)"],
            ell: vec!["(132)"],
            h: ["(12)", "(123)"],
        },
        PaperExample {
            name: "D4",
            group: "D4",
            m: vec![2; 6],
            n: vec![2],
            g_c: 3,
            g_f: 5,
            v: vec!["s", "s", "s", "s", "rs", "rs"],
            ell: vec!["rr"],
            h: ["s", "r"],
        },
        PaperExample {
            name: "D6",
            group: "D6",
            m: vec![2, 2, 2, 6],
            n: vec![2, 2],
            g_c: 7,
            g_f: 3,
            v: vec!["rrr", "rs", "rrrrrs", "r"],
            ell: vec!["s", "s"],
            h: ["r", "r"],
        },
        PaperExample {
            name: "A4",
            group: "A4",
            m: vec![3; 4],
            n: vec![2],
            g_c: 4,
            g_f: 5,
            v: vec!["(234)", "(123)", "(124)", "(134)"],
            ell: vec!["(12)(34)"],
            h: ["(123)", "(124)"],
        },
        PaperExample {
            name: "S4",
            group: "S4",
            m: vec![2, 2, 2, 4],
            n: vec![3],
            g_c: 9,
            g_f: 4,
            v: vec!["(23)", "(24)", "(12)", "(1234)"],
            ell: vec!["(132)"],
            h: ["(12)", "(1234)"],
        },
        PaperExample {
            name: "A5",
            group: "A5",
            m: vec![2, 5, 5],
            n: vec![3],
            g_c: 21,
            g_f: 4,
            v: vec!["(24)(35)", "(13452)", "(12345)"],
            ell: vec!["(235)"],
            h: ["(345)", "(15432)"],
        },
    ]
}

/// Evaluates an element of a published example: a word in `r` (rho) and `s`
/// (sigma) for dihedral groups, where `rho` is the rotation and `sigma` a
/// reflection; cycle notation otherwise.
fn paper_element(g: &Group, spec: &str, text: &str) -> Result<usize, ClassifyError> {
    if let Some(n) = spec.strip_prefix('D').and_then(|n| n.parse::<usize>().ok()) {
        let (rho, sigma) = dihedral_generators(n)?;
        let word: Vec<&Perm> = text
            .chars()
            .map(|c| match c {
                'r' => Ok(&rho),
                's' => Ok(&sigma),
                _ => Err(ClassifyError::BadExample {
                    section: spec.into(),
                    detail: format!("bad word `{text}`"),
                }),
            })
            .collect::<Result<_, _>>()?;
        let p = word.iter().fold(Perm::identity(n), |acc, x| acc.compose(x));
        return g
            .index_of_perm(&p)
            .ok_or_else(|| ClassifyError::BadExample {
                section: spec.into(),
                detail: format!("`{text}` is not in the group"),
            });
    }
    Ok(g.parse_element(text)?)
}

impl PaperExample {
    /// Builds `(G, V, W)` exactly as printed, without validating.
    pub fn vectors(
        &self,
    ) -> Result<(Arc<Group>, GeneratingVector, GeneratingVector), ClassifyError> {
        let g = Arc::new(parse_group_spec(self.group)?);
        let el = |t: &&str| paper_element(&g, self.group, t).map(|x| x as u16);
        let v = self.v.iter().map(el).collect::<Result<Vec<_>, _>>()?;
        let ell = self.ell.iter().map(el).collect::<Result<Vec<_>, _>>()?;
        let h = self.h.iter().map(el).collect::<Result<Vec<_>, _>>()?;
        let v = GeneratingVector::from_parts_unchecked(Signature::genus0(&self.m), v, vec![]);
        let w = GeneratingVector::from_parts_unchecked(Signature::genus1(&self.n), ell, h);
        Ok((g, v, w))
    }

    pub fn validate(&self) -> Result<BuildingData, ClassifyError> {
        let (g, v, w) = self.vectors()?;
        let bd = validate_building_data(&g, v, w).map_err(|source| ClassifyError::Validation {
            section: self.name.to_string(),
            source,
        })?;
        if (bd.genus().g_c, bd.genus().g_f) != (self.g_c, self.g_f) {
            return Err(ClassifyError::BadExample {
                section: self.name.into(),
                detail: format!(
                    "genera ({}, {}) differ from the published ({}, {})",
                    bd.genus().g_c,
                    bd.genus().g_f,
                    self.g_c,
                    self.g_f
                ),
            });
        }
        Ok(bd)
    }
}

/// Validates the six published nonabelian building data, then counts the
/// classes of all building data with the same `(G, m, n)`. Representatives
/// are the canonical ones, so they need not coincide with the printed data.
pub fn verify_paper_nonabelian_examples() -> Result<Vec<FamilyRecord>, ClassifyError> {
    paper_nonabelian_examples()
        .par_iter()
        .map(|ex| {
            let bd = ex.validate()?;
            let job = Job {
                group: Arc::clone(bd.group()),
                spec: ex.group.to_string(),
                m: bd.v().sig().clone(),
                n: bd.w().sig().clone(),
                g_c: bd.genus().g_c,
                g_f: bd.genus().g_f,
            };
            let classes = match run_job(&job)? {
                Ok((classes, _)) => classes,
                Err(ex_) => {
                    return Err(ClassifyError::BadExample {
                        section: ex.name.into(),
                        detail: format!("valid data exists but the search reports {ex_:?}"),
                    })
                }
            };
            let mut rec = build_record(&job, &classes, ex.name.to_string(), job.n.r() == 1)?;
            rec.in_paper = Some(true);
            Ok(rec)
        })
        .collect()
}

/// Result of [`search_nonabelian`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonabelianSearch {
    pub records: Vec<FamilyRecord>,
    pub warnings: Vec<String>,
}

/// `(group, m, n)` of the six published rows.
pub fn paper_rows() -> Vec<(String, String, String)> {
    paper_nonabelian_examples()
        .iter()
        .map(|ex| {
            (
                ex.group.to_string(),
                Signature::genus0(&ex.m).branching_text(),
                Signature::genus1(&ex.n).branching_text(),
            )
        })
        .collect()
}

/// Searches every curated nonabelian group of order `<= max_order`, every
/// base option and every genus-zero signature with the right genus for free
/// building data. Component counts are exact for the one-point base
/// signatures; for `(1|2^2)` only the printed moves are used and the count
/// is flagged as not exact.
pub fn search_nonabelian(max_order: usize) -> Result<NonabelianSearch, ClassifyError> {
    let catalog = GroupCatalog::build(2, max_order.max(6))?;
    search_nonabelian_in(&catalog, max_order)
}

pub fn search_nonabelian_in(
    catalog: &GroupCatalog,
    max_order: usize,
) -> Result<NonabelianSearch, ClassifyError> {
    let mut jobs = Vec::new();
    for entry in catalog
        .nonabelian
        .iter()
        .filter(|e| e.group.order() <= max_order)
    {
        let g = &entry.group;
        let orders: BTreeSet<u32> = g.order_statistics().keys().copied().collect();
        for base in base_signature_options() {
            let Ok(g_c) = riemann_hurwitz_genus(g.order(), &base.n) else {
                continue;
            };
            if g_c < 3 || (g_c as usize - 1) * (base.g_f as usize - 1) != g.order() {
                continue;
            }
            for m in genus0_signatures_for(g.order(), base.g_f, &|k| orders.contains(&k)) {
                jobs.push(Job {
                    group: Arc::clone(g),
                    spec: entry.spec.clone(),
                    m,
                    n: base.n.clone(),
                    g_c,
                    g_f: base.g_f,
                });
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(run_job)
        .collect::<Result<Vec<_>, _>>()?;
    let rows: BTreeSet<(String, String, String)> = paper_rows().into_iter().collect();
    let mut records = Vec::new();
    for (job, res) in jobs.iter().zip(results) {
        if let Ok((classes, _)) = res {
            let exact = job.n.r() == 1;
            let mut rec = build_record(job, &classes, String::new(), exact)?;
            let key = (rec.group.clone(), rec.m.clone(), rec.n.clone());
            rec.in_paper = Some(rows.contains(&key));
            rec.label = if rec.in_paper == Some(true) {
                rec.group.clone()
            } else {
                "beyond-paper".into()
            };
            records.push(rec);
        }
    }
    records.sort_by_key(record_key);
    let warnings = catalog
        .nonabelian_gaps(max_order)
        .into_iter()
        .filter(|(n, _, _)| n % 2 == 0 || n % 3 == 0)
        .map(|(n, got, known)| format!("order {n}: catalog has {got} of {known} nonabelian groups"))
        .collect();
    Ok(NonabelianSearch { records, warnings })
}

// ---------------------------------------------------------------------------
// replay of the hand computations for the abelian families

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayTrace {
    pub family: String,
    pub checks: Vec<ClaimCheck>,
}

impl ReplayTrace {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Replay {
    g: Arc<Group>,
    m: Signature,
    n: Signature,
    checks: Vec<ClaimCheck>,
}

impl Replay {
    fn new(inv: &[u32], m: &[u32]) -> Result<Self, ClassifyError> {
        Ok(Replay {
            g: Arc::new(Group::abelian(inv)?),
            m: Signature::genus0(m),
            n: Signature::genus1(&[2, 2]),
            checks: Vec::new(),
        })
    }

    fn el(&self, t: &str) -> Result<usize, ClassifyError> {
        Ok(self.g.parse_element(t)?)
    }

    /// `{g; h1, h2}` for signature `(1|2^2)`, i.e. `(g, g; h1, h2)`.
    fn w(&self, g: &str, h1: &str, h2: &str) -> Result<GeneratingVector, ClassifyError> {
        let (g, h1, h2) = (self.el(g)? as u16, self.el(h1)? as u16, self.el(h2)? as u16);
        Ok(GeneratingVector::from_parts_unchecked(
            self.n.clone(),
            vec![g, g],
            vec![h1, h2],
        ))
    }

    fn v(&self, entries: &[&str]) -> Result<GeneratingVector, ClassifyError> {
        let e = entries
            .iter()
            .map(|t| self.el(t).map(|x| x as u16))
            .collect::<Result<_, _>>()?;
        Ok(GeneratingVector::from_parts_unchecked(
            self.m.clone(),
            e,
            vec![],
        ))
    }

    fn aut(
        &self,
        gens: &[&str],
        images: &[&str],
    ) -> Result<crate::group::Automorphism, ClassifyError> {
        let gens = gens
            .iter()
            .map(|t| self.el(t))
            .collect::<Result<Vec<_>, _>>()?;
        let images = images
            .iter()
            .map(|t| self.el(t))
            .collect::<Result<Vec<_>, _>>()?;
        self.g
            .automorphism_from_images(&gens, &images)
            .ok_or_else(|| ClassifyError::BadExample {
                section: "replay".into(),
                detail: format!("no automorphism with images {images:?}"),
            })
    }

    fn record(&mut self, claim: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(ClaimCheck {
            claim: claim.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn chain(
        &mut self,
        name: &str,
        from: &GeneratingVector,
        trace: &str,
        to: &GeneratingVector,
    ) -> Result<(), ClassifyError> {
        let moves = parse_trace(trace)?;
        let mut cur = from.clone();
        let mut steps = vec![cur.display(&self.g)];
        for mv in &moves {
            cur = apply_trace(&self.g, &cur, &[*mv])?;
            steps.push(cur.display(&self.g));
        }
        let ok = &cur == to && cur.is_admissible(&self.g);
        self.record(
            format!("{name} --{trace}--> {}", to.display(&self.g)),
            ok,
            steps.join(" -> "),
        );
        Ok(())
    }

    fn maps(
        &mut self,
        name: &str,
        lambda: &crate::group::Automorphism,
        from: &GeneratingVector,
        to: &GeneratingVector,
    ) {
        let img = from.map_entries(|x| lambda.apply(x));
        let ok = &img == to;
        let detail = format!("{} -> {}", from.display(&self.g), img.display(&self.g));
        self.record(format!("{name}: {}", to.display(&self.g)), ok, detail);
    }

    fn valid(&mut self, name: &str, v: &GeneratingVector, w: &GeneratingVector) {
        let res = validate_building_data(&self.g, v.clone(), w.clone());
        let detail = match &res {
            Ok(bd) => format!("g(C) = {}, g(F) = {}", bd.genus().g_c, bd.genus().g_f),
            Err(e) => e.to_string(),
        };
        self.record(
            format!("{name} is valid building data"),
            res.is_ok(),
            detail,
        );
    }

    /// Exhaustive check that two pairs lie in the same class or not.
    fn equivalent(
        &mut self,
        name: &str,
        a: (&GeneratingVector, &GeneratingVector),
        b: (&GeneratingVector, &GeneratingVector),
        expect: bool,
    ) -> Result<(), ClassifyError> {
        let pairs = vec![(a.0.clone(), a.1.clone()), (b.0.clone(), b.1.clone())];
        let classes = r_classes(&self.g, &pairs)?;
        let same = classes.len() == 1;
        self.record(
            name,
            same == expect,
            format!(
                "{} class(es) after closing both pairs under moves and automorphisms",
                classes.len()
            ),
        );
        Ok(())
    }

    fn finish(self, family: &str) -> Result<ReplayTrace, ClassifyError> {
        let trace = ReplayTrace {
            family: family.to_string(),
            checks: self.checks,
        };
        if let Some(bad) = trace.checks.iter().find(|c| !c.passed) {
            return Err(ClassifyError::Replay {
                family: family.into(),
                claim: bad.claim.clone(),
                detail: bad.detail.clone(),
                trace: Box::new(trace.clone()),
            });
        }
        Ok(trace)
    }
}

/// Machine-checks the printed move chains, automorphism maps and
/// (non-)equivalence claims for one abelian family.
pub fn replay_section6(family: &str) -> Result<ReplayTrace, ClassifyError> {
    match family.trim().to_ascii_uppercase().as_str() {
        "I" => replay_type_i(),
        "II" => replay_type_ii(),
        "III" => replay_type_iii(),
        "IV" => replay_type_iv(),
        other => Err(ClassifyError::UnknownFamily(other.to_string())),
    }
}

fn replay_type_i() -> Result<ReplayTrace, ClassifyError> {
    let mut r = Replay::new(&[2, 2], &[2; 6])?;
    let (e1, e2, e12, z) = ("(1,0)", "(0,1)", "(1,1)", "(0,0)");
    let w1 = r.w(e1, e2, z)?;
    let w2 = r.w(e1, e2, e1)?;
    let w3 = r.w(e1, e2, e2)?;
    let w4 = r.w(e1, e2, e12)?;
    // the four choices of h2 are exactly the solutions with g = e1, h1 = e2
    let sols: Vec<GeneratingVector> = enumerate_generating_vectors(&r.g, &r.n)
        .into_iter()
        .filter(|w| w.elliptic()[0] == w1.elliptic()[0] && w.hyperbolic()[0] == w1.hyperbolic()[0])
        .collect();
    let expected = {
        let mut x = vec![w1.clone(), w2.clone(), w3.clone(), w4.clone()];
        x.sort();
        x
    };
    r.record(
        "W1..W4 are all base vectors with g = e1, h1 = e2",
        sols == expected,
        format!("{} solutions", sols.len()),
    );
    r.chain("W2", &w2, "1,3,5,3", &w1)?;
    r.chain("W3", &w3, "1", &w1)?;
    r.chain("W4", &w4, "1,1,3,5,3", &w1)?;
    let v1 = r.v(&[e2, e2, e2, e2, e12, e12])?;
    let v2 = r.v(&[e12, e12, e12, e12, e2, e2])?;
    r.valid("(V1, W1)", &v1, &w1);
    r.valid("(V2, W1)", &v2, &w1);
    let lam = r.aut(&[e1, e2], &[e1, e12])?;
    r.maps("lambda(e1,e2) = (e1, e1+e2) sends V1", &lam, &v1, &v2);
    let lw1 = r.w(e1, e12, z)?;
    r.maps("lambda sends W1", &lam, &w1, &lw1);
    r.chain("lambda(W1)", &lw1, "3", &w1)?;
    r.equivalent("(V1, W1) ~ (V2, W1)", (&v1, &w1), (&v2, &w1), true)?;
    r.finish("I")
}

fn replay_type_ii() -> Result<ReplayTrace, ClassifyError> {
    let mut r = Replay::new(&[2, 2, 2], &[2; 5])?;
    let e = |s: &str| -> String {
        let mut t = [0u32; 3];
        for part in s.split('+') {
            let i: usize = part.trim_start_matches('e').parse().expect("basis name");
            t[i - 1] ^= 1;
        }
        format!("({},{},{})", t[0], t[1], t[2])
    };
    let w = r.w(&e("e1"), &e("e2"), &e("e3"))?;
    let l0 = r.aut(
        &[&e("e1"), &e("e2"), &e("e3")],
        &[&e("e1"), &e("e3"), &e("e2")],
    )?;
    let l0w = r.w(&e("e1"), &e("e3"), &e("e2"))?;
    r.maps("lambda0 sends W", &l0, &w, &l0w);
    r.chain("lambda0(W)", &l0w, "5", &w)?;
    let vs: [[&str; 5]; 7] = [
        ["e2", "e2", "e3", "e1+e2", "e1+e2+e3"],
        ["e2", "e2", "e1+e3", "e1+e2", "e2+e3"],
        ["e1+e2+e3", "e1+e2+e3", "e3", "e2+e3", "e2"],
        ["e1+e2+e3", "e1+e2+e3", "e1+e2", "e2+e3", "e1+e3"],
        ["e1+e2", "e1+e2", "e3", "e2", "e2+e3"],
        ["e1+e2", "e1+e2", "e1+e3", "e2", "e1+e2+e3"],
        ["e2+e3", "e2+e3", "e2", "e1+e2+e3", "e1+e3"],
    ];
    let table: [(&str, &str, &str); 7] = [
        ("e2", "e3", ""),
        ("e2", "e1+e3", "5,3,2,5"),
        ("e1+e2+e3", "e3", "3"),
        ("e1+e2+e3", "e1+e2", "2,5,3,2"),
        ("e1+e2", "e3", "3,2"),
        ("e1+e2", "e1+e3", "1,3,5,2"),
        ("e2+e3", "e2", "2,5"),
    ];
    let v: Vec<GeneratingVector> = vs
        .iter()
        .map(|row| {
            let names: Vec<String> = row.iter().map(|s| e(s)).collect();
            r.v(&names.iter().map(String::as_str).collect::<Vec<_>>())
        })
        .collect::<Result<_, _>>()?;
    for (i, vi) in v.iter().enumerate() {
        r.valid(&format!("(V{}, W)", i + 1), vi, &w);
        let alpha = e(vs[i][0]);
        let beta = e(vs[i][2]);
        let li = r.aut(&[&e("e1"), &e("e2"), &e("e3")], &[&e("e1"), &alpha, &beta])?;
        r.maps(&format!("lambda{} sends V1", i + 1), &li, &v[0], vi);
        let (h1, h2, trace) = table[i];
        let target = r.w(&e("e1"), &e(h1), &e(h2))?;
        r.maps(&format!("lambda{} sends W", i + 1), &li, &w, &target);
        r.chain(&format!("lambda{}(W)", i + 1), &target, trace, &w)?;
    }
    r.finish("II")
}

fn replay_type_iii() -> Result<ReplayTrace, ClassifyError> {
    let mut r = Replay::new(&[2, 4], &[2, 2, 4, 4])?;
    let w0 = r.w("(1,0)", "(0,1)", "(0,0)")?;
    let w = r.w("(1,0)", "(0,1)", "(1,0)")?;
    r.chain("{(1,0); (0,1), (0,0)}", &w0, "1,3,5,4", &w)?;
    let v1 = r.v(&["(1,2)", "(0,2)", "(0,1)", "(1,3)"])?;
    let v2 = r.v(&["(1,2)", "(0,2)", "(0,3)", "(1,1)"])?;
    let v3 = r.v(&["(1,2)", "(1,2)", "(0,1)", "(0,3)"])?;
    let v4 = r.v(&["(1,2)", "(1,2)", "(1,3)", "(1,1)"])?;
    for (i, vi) in [&v1, &v2, &v3, &v4].into_iter().enumerate() {
        r.valid(&format!("(V{}, W)", i + 1), vi, &w);
    }
    let la = r.aut(&["(1,0)", "(0,1)"], &["(1,0)", "(0,3)"])?;
    r.maps("(0,1) -> (0,3) sends V1", &la, &v1, &v2);
    let law = r.w("(1,0)", "(0,3)", "(1,0)")?;
    r.maps("(0,1) -> (0,3) sends W", &la, &w, &law);
    r.chain("image of W", &law, "4", &w)?;
    let lb = r.aut(&["(1,0)", "(0,1)"], &["(1,0)", "(1,3)"])?;
    r.maps("(0,1) -> (1,3) sends V3", &lb, &v3, &v4);
    let lbw = r.w("(1,0)", "(1,3)", "(1,0)")?;
    r.maps("(0,1) -> (1,3) sends W", &lb, &w, &lbw);
    r.chain("image of W", &lbw, "2,4", &w)?;
    let fixed =
        r.g.automorphisms()?
            .iter()
            .all(|a| a.apply(r.el("(0,2)").unwrap()) == r.el("(0,2)").unwrap());
    r.record(
        "every automorphism fixes (0,2)",
        fixed,
        "checked on all of Aut(G)",
    );
    r.equivalent("(V1, W) ~ (V2, W)", (&v1, &w), (&v2, &w), true)?;
    r.equivalent("(V3, W) ~ (V4, W)", (&v3, &w), (&v4, &w), true)?;
    r.equivalent(
        "(V1, W) and (V3, W) are not equivalent",
        (&v1, &w),
        (&v3, &w),
        false,
    )?;
    r.finish("III")
}

fn replay_type_iv() -> Result<ReplayTrace, ClassifyError> {
    let mut r = Replay::new(&[2, 8], &[2, 8, 8])?;
    let w = r.w("(1,0)", "(0,1)", "(1,0)")?;
    let v1 = r.v(&["(1,4)", "(0,1)", "(1,3)"])?;
    let cases = [
        ("(1,1)", ["(1,4)", "(1,1)", "(0,3)"], "2"),
        ("(1,7)", ["(1,4)", "(1,7)", "(0,5)"], "2,4"),
        ("(0,7)", ["(1,4)", "(0,7)", "(1,5)"], "4"),
    ];
    r.valid("(V1, W)", &v1, &w);
    for (i, (img, vt, trace)) in cases.iter().enumerate() {
        let vi = r.v(vt)?;
        r.valid(&format!("(V{}, W)", i + 2), &vi, &w);
        let la = r.aut(&["(1,0)", "(0,1)"], &["(1,0)", img])?;
        r.maps(&format!("(0,1) -> {img} sends V1"), &la, &v1, &vi);
        let lw = r.w("(1,0)", img, "(1,0)")?;
        r.maps(&format!("(0,1) -> {img} sends W"), &la, &w, &lw);
        r.chain("image of W", &lw, trace, &w)?;
        let pair = apply_automorphism(&la, &(v1.clone(), w.clone()));
        r.equivalent(
            &format!("(V1, W) ~ (V{}, W)", i + 2),
            (&v1, &w),
            (&pair.0, &w),
            true,
        )?;
    }
    r.finish("IV")
}
