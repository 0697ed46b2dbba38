//! End-to-end acceptance: one PASS/FAIL line per criterion.
//!
//! Lines are written straight to stdout so they show up without
//! `--nocapture`.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use isoprod::classify::{
    classify_abelian, replay_section6, search_nonabelian, verify_paper_nonabelian_examples,
    Exclusion, FamilyRecord, GroupCatalog,
};
use isoprod::fuchsian::{abelian_signature_candidates, parse_exponent_form, Signature};
use isoprod::genvec::{building_pairs, long_relation_product, GeneratingVector, Idx};
use isoprod::group::{parse_group_spec, Group};
use isoprod::moves::{apply_move, apply_raw, r_classes, torus2_moves, Move, MoveError, MoveSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn abelian_records() -> Result<Vec<FamilyRecord>, String> {
    Ok(classify_abelian().map_err(|e| e.to_string())?.records)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let records = abelian_records()?;
    let elapsed = start.elapsed();
    let expected = [
        ("I", "Z2 x Z2", 3, 3, "2^6"),
        ("II", "Z2 x Z2 x Z2", 5, 3, "2^5"),
        ("III", "Z2 x Z4", 5, 3, "2^2,4^2"),
        ("IV", "Z2 x Z8", 9, 3, "2,8^2"),
    ];
    ensure(records.len() == 4, || {
        format!("{} families instead of 4", records.len())
    })?;
    for (r, (label, group, g_c, g_f, m)) in records.iter().zip(expected) {
        ensure(
            (
                r.label.as_str(),
                r.group.as_str(),
                r.g_c,
                r.g_f,
                r.m.as_str(),
            ) == (label, group, g_c, g_f, m),
            || {
                format!(
                    "{} differs: {} gC={} gF={} m=({})",
                    label, r.group, r.g_c, r.g_f, r.m
                )
            },
        )?;
        ensure(r.n == "2^2", || format!("{label}: n = ({})", r.n))?;
    }
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "four families, exact match, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let records = abelian_records()?;
    let comps: Vec<usize> = records.iter().map(|r| r.components).collect();
    let dims: Vec<usize> = records.iter().map(|r| r.dimension).collect();
    ensure(comps == [1, 1, 2, 1], || format!("components {comps:?}"))?;
    ensure(dims == [5, 4, 3, 2], || format!("dimensions {dims:?}"))?;
    ensure(records.iter().all(|r| r.components_exact), || {
        "abelian counts must be exact".into()
    })?;
    Ok(format!("components {comps:?}, dimensions {dims:?}"))
}

fn criterion_3() -> Outcome {
    let table = [
        ("S3", 6, 3, 4, "2^6", "3"),
        ("D4", 8, 3, 5, "2^6", "2"),
        ("D6", 12, 7, 3, "2^3,6", "2^2"),
        ("A4", 12, 4, 5, "3^4", "2"),
        ("S4", 24, 9, 4, "2^3,4", "3"),
        ("A5", 60, 21, 4, "2,5^2", "3"),
    ];
    let verified = verify_paper_nonabelian_examples().map_err(|e| e.to_string())?;
    ensure(verified.len() == 6, || {
        format!("{} examples verified", verified.len())
    })?;
    for (r, (g, o, gc, gf, m, n)) in verified.iter().zip(table) {
        ensure(
            (
                r.group.as_str(),
                r.order,
                r.g_c,
                r.g_f,
                r.m.as_str(),
                r.n.as_str(),
            ) == (g, o, gc, gf, m, n),
            || {
                format!(
                    "{g}: got {} |G|={} gC={} gF={} m=({}) n=({})",
                    r.group, r.order, r.g_c, r.g_f, r.m, r.n
                )
            },
        )?;
    }
    let start = Instant::now();
    let search = search_nonabelian(60).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (g, o, gc, gf, m, n) in table {
        ensure(
            search.records.iter().any(|r| {
                (
                    r.group.as_str(),
                    r.order,
                    r.g_c,
                    r.g_f,
                    r.m.as_str(),
                    r.n.as_str(),
                ) == (g, o, gc, gf, m, n)
            }),
            || format!("search up to 60 misses the {g} row"),
        )?;
    }
    ensure(elapsed < Duration::from_secs(600), || {
        format!("search took {elapsed:?}")
    })?;
    let extra = search
        .records
        .iter()
        .filter(|r| r.in_paper == Some(false))
        .count();
    Ok(format!(
        "six constructions validate; search to 60 finds all six rows plus {extra} further rows in {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    for family in ["I", "II", "III", "IV"] {
        let trace = replay_section6(family).map_err(|e| e.to_string())?;
        ensure(trace.all_passed(), || {
            format!("family {family} has failing claims")
        })?;
        total += trace.checks.len();
    }
    // Move 5 is 1,2,1 and acts as (h1, h2) -> (-h2, h1) on abelian vectors.
    let g = Group::abelian(&[2, 4]).map_err(|e| e.to_string())?;
    let sig: Signature = "(1|2^2)"
        .parse()
        .map_err(|e: isoprod::fuchsian::FuchsianError| e.to_string())?;
    let mut checked = 0;
    for w in isoprod::genvec::enumerate_generating_vectors(&g, &sig) {
        let five = apply_move(&g, &w, Move::Five).map_err(|e| e.to_string())?;
        let mut chained = w.clone();
        for mv in [Move::Alpha, Move::Beta, Move::Alpha] {
            chained = apply_move(&g, &chained, mv).map_err(|e| e.to_string())?;
        }
        let (h1, h2) = (w.hyperbolic()[0] as usize, w.hyperbolic()[1] as usize);
        ensure(five == chained, || "5 differs from 1,2,1".into())?;
        ensure(
            five.hyperbolic() == [g.inverse(h2) as Idx, h1 as Idx],
            || format!("5 on {} gives {}", w.display(&g), five.display(&g)),
        )?;
        checked += 1;
    }
    // The two type III classes, by exhaustive closure over all free pairs.
    let g = parse_group_spec("Z2 x Z4").map_err(|e| e.to_string())?;
    let m = Signature::genus0(&[2, 2, 4, 4]);
    let n = Signature::genus1(&[2, 2]);
    let pairs = building_pairs(&g, &m, &n);
    let classes = r_classes(&g, &pairs).map_err(|e| e.to_string())?;
    ensure(classes.len() == 2, || {
        format!("{} classes for type III", classes.len())
    })?;
    Ok(format!(
        "{total} replayed claims pass; move 5 checked on {checked} vectors; type III closure has 2 classes"
    ))
}

fn criterion_5() -> Outcome {
    let cands = abelian_signature_candidates();
    let has = |m: &str, order: usize| {
        let m = parse_exponent_form(m).unwrap();
        cands
            .iter()
            .any(|c| c.sig.branching() == m.as_slice() && c.group_order == order)
    };
    let r4 = [
        ("2^2,3^2", 12),
        ("2^2,3,6", 8),
        ("2^2,4^2", 8),
        ("2^2,4,12", 6),
        ("2^2,6^2", 6),
    ];
    for (m, o) in r4 {
        ensure(has(m, o), || {
            format!("candidate ({m}) with |G| = {o} missing")
        })?;
    }
    let result = classify_abelian().map_err(|e| e.to_string())?;
    let outcome = |m: &str, order: usize| {
        result
            .outcomes
            .iter()
            .find(|o| o.m == m && o.order == order)
            .unwrap_or_else(|| panic!("no outcome for ({m}) |G| = {order}"))
    };
    for (m, o) in r4 {
        let survives = outcome(m, o).survives();
        ensure(survives == (m == "2^2,4^2"), || {
            format!("({m}) |G| = {o}: survives = {survives}")
        })?;
    }
    let r_of = |m: &str| parse_exponent_form(m).unwrap().len();
    let survivors: Vec<(usize, String, usize)> = result
        .outcomes
        .iter()
        .filter(|o| o.survives())
        .map(|o| (r_of(&o.m), o.m.clone(), o.order))
        .collect();
    let by_r = |r: usize| {
        survivors
            .iter()
            .filter(|s| s.0 == r)
            .map(|s| (s.1.as_str(), s.2))
            .collect::<Vec<_>>()
    };
    ensure(by_r(6) == [("2^6", 4)], || {
        format!("r = 6 survivors {:?}", by_r(6))
    })?;
    ensure(by_r(5) == [("2^5", 8)], || {
        format!("r = 5 survivors {:?}", by_r(5))
    })?;
    ensure(by_r(4) == [("2^2,4^2", 8)], || {
        format!("r = 4 survivors {:?}", by_r(4))
    })?;
    ensure(by_r(3) == [("2,8^2", 16)], || {
        format!("r = 3 survivors {:?}", by_r(3))
    })?;
    let r5_numeric = result.outcomes.iter().filter(|o| r_of(&o.m) == 5).count();
    let r3_numeric = result.outcomes.iter().filter(|o| r_of(&o.m) == 3).count();
    // (4^3) over Z4 x Z4: vectors exist but no pair is free.
    let z4z4 = outcome("4^3", 16)
        .groups
        .iter()
        .find(|(g, _)| g == "Z4 x Z4")
        .map(|(_, e)| e.clone());
    ensure(z4z4 == Some(Some(Exclusion::NoFreePair)), || {
        format!("Z4 x Z4 with (4^3): {z4z4:?}")
    })?;
    ensure(
        result.outcomes.iter().all(|o| {
            o.groups
                .iter()
                .all(|(g, e)| e.is_some() || !parse_group_spec(g).unwrap().is_cyclic())
        }),
        || "a cyclic group survived".into(),
    )?;
    Ok(format!(
        "r=4: (i)-(v) present, only (iii) survives; r=5: 1 of {r5_numeric} survives; r=3: 1 of {r3_numeric} survives; Z4xZ4 (4^3) not free"
    ))
}

const RANDOM_VECTORS_PER_GROUP: usize = 1000;

/// Move admissibility on random vectors of every catalog group.
fn property_a(catalog: &GroupCatalog, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut total = 0;
    for entry in catalog.abelian.iter().chain(&catalog.nonabelian) {
        let g = &entry.group;
        if g.order() < 2 {
            continue;
        }
        let rank = g.small_generating_set().len();
        let r_max = 6.max(rank + 2);
        let mut found = 0;
        let mut attempts = 0;
        while found < RANDOM_VECTORS_PER_GROUP {
            attempts += 1;
            ensure(attempts < 2_000_000, || {
                format!("{}: only {found} random vectors found", entry.spec)
            })?;
            let v = match rng.gen_range(0..4) {
                0 => common::random_genus1(g, 1, rng),
                1 => common::random_genus1(g, 2, rng),
                _ => {
                    let r = rng.gen_range(3..=r_max);
                    common::random_genus0(g, r, rng)
                }
            };
            let Some(v) = v else { continue };
            v.check(g)
                .map_err(|e| format!("{}: sampled vector invalid: {e}", entry.spec))?;
            found += 1;
            let set = MoveSet::for_signature(v.sig()).map_err(|e| e.to_string())?;
            for &mv in set.moves() {
                match apply_move(g, &v, mv) {
                    Ok(img) => img.check(g).map_err(|e| {
                        format!("{}: move {mv} breaks {}: {e}", entry.spec, v.display(g))
                    })?,
                    Err(MoveError::OrderMismatch { .. }) => {}
                    Err(e) => return Err(format!("{}: {e}", entry.spec)),
                }
            }
            if v.sig().orbit_genus() == 0 {
                // The raw braid move also keeps relation, generation and the
                // multiset of orders when neighbours have different orders.
                let r = v.sig().r();
                for i in 1..r {
                    let mut s: Vec<Idx> = v.elliptic().to_vec();
                    apply_raw(g, r, &mut s, Move::Sigma(i));
                    let mut orders: Vec<u32> =
                        s.iter().map(|&x| g.elem_order(x as usize)).collect();
                    orders.sort_unstable();
                    let xs: Vec<usize> = s.iter().map(|&x| x as usize).collect();
                    ensure(
                        orders == v.sig().branching() && g.product(&xs) == 0 && g.generates(&xs),
                        || format!("{}: raw sigma_{i} breaks {}", entry.spec, v.display(g)),
                    )?;
                }
            }
        }
        total += found;
    }
    Ok(total)
}

fn property_b(catalog: &GroupCatalog, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut checked = 0;
    for entry in catalog.nonabelian.iter().chain(&catalog.abelian) {
        let g = &entry.group;
        if g.order() < 2 {
            continue;
        }
        let mut done = 0;
        let mut attempts = 0;
        while done < 100 && attempts < 100_000 {
            attempts += 1;
            let r = rng.gen_range(3..=7);
            let Some(v) = common::random_genus0(g, r, rng) else {
                continue;
            };
            for i in 1..r - 1 {
                let run = |word: [usize; 3]| {
                    let mut s: Vec<Idx> = v.elliptic().to_vec();
                    for k in word {
                        apply_raw(g, r, &mut s, Move::Sigma(k));
                    }
                    s
                };
                ensure(run([i, i + 1, i]) == run([i + 1, i, i + 1]), || {
                    format!(
                        "{}: braid relation fails at {i} on {}",
                        entry.spec,
                        v.display(g)
                    )
                })?;
                checked += 1;
            }
            done += 1;
        }
    }
    Ok(checked)
}

fn property_c(catalog: &GroupCatalog, rng: &mut ChaCha8Rng) -> Result<(usize, usize), String> {
    let (mut checked, mut groups) = (0, 0);
    for entry in &catalog.nonabelian {
        let g = &entry.group;
        let mut found = 0;
        let mut attempts = 0;
        while found < RANDOM_VECTORS_PER_GROUP && attempts < 200_000 {
            attempts += 1;
            let Some(w) = common::random_genus1(g, 2, rng) else {
                continue;
            };
            found += 1;
            for img in torus2_moves(g, &w).map_err(|e| e.to_string())? {
                ensure(
                    long_relation_product(g, img.elliptic(), img.hyperbolic()) == 0,
                    || format!("{}: relation broken from {}", entry.spec, w.display(g)),
                )?;
                img.check(g).map_err(|e| format!("{}: {e}", entry.spec))?;
                checked += 1;
            }
        }
        if found > 0 {
            groups += 1;
        }
    }
    Ok((checked, groups))
}

fn property_d() -> Result<usize, String> {
    let records = abelian_records()?;
    for r in &records {
        let g = parse_group_spec(&r.group).map_err(|e| e.to_string())?;
        let pairs = building_pairs(&g, &r.fiber_signature(), &r.base_signature());
        let naive = common::naive_abelian_classes(&g, &pairs);
        let mut fast: Vec<usize> = r_classes(&g, &pairs)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|c| c.size)
            .collect();
        fast.sort_unstable();
        let mut recorded: Vec<usize> = r.representatives.iter().map(|c| c.class_size).collect();
        recorded.sort_unstable();
        ensure(
            naive == fast && naive == recorded && naive.len() == r.components,
            || {
                format!(
                    "{}: naive {naive:?}, r_classes {fast:?}, record {recorded:?}",
                    r.label
                )
            },
        )?;
    }
    Ok(records.len())
}

fn criterion_6() -> Outcome {
    let catalog = GroupCatalog::standard().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let a = property_a(&catalog, &mut rng)?;
    let b = property_b(&catalog, &mut rng)?;
    let (c, c_groups) = property_c(&catalog, &mut rng)?;
    let d = property_d()?;
    Ok(format!(
        "(a) {a} random vectors over {} groups; (b) {b} braid relations; (c) {c} torus moves over {c_groups} nonabelian groups; (d) naive oracle agrees on {d} families",
        catalog.abelian.len() + catalog.nonabelian.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut records = abelian_records()?;
    records.extend(verify_paper_nonabelian_examples().map_err(|e| e.to_string())?);
    for r in &records {
        let o = r.order as i64;
        let g_f = common::integer_riemann_hurwitz(o, 0, &parse_exponent_form(&r.m).unwrap());
        let g_c = common::integer_riemann_hurwitz(o, 1, &parse_exponent_form(&r.n).unwrap());
        ensure(
            g_f == Some(r.g_f as i64) && g_c == Some(r.g_c as i64),
            || {
                format!(
                    "{} {}: recomputed ({g_c:?}, {g_f:?}) vs ({}, {})",
                    r.label, r.group, r.g_c, r.g_f
                )
            },
        )?;
        let product = (r.g_c as i64 - 1) * (r.g_f as i64 - 1);
        ensure(product == o, || {
            format!("{}: (gC-1)(gF-1) = {product} != {o}", r.label)
        })?;
        // chi = (gC-1)(gF-1)/|G| and K^2 = 8 chi for a free quotient of C x F.
        let chi = product / o;
        let inv = r.invariants;
        ensure(
            chi == 1 && inv.k_squared == 8 && inv.chi == 1 && inv.p_g == 1 && inv.q == 1,
            || format!("{}: invariants {inv:?}", r.label),
        )?;
        ensure(
            inv.g_c == r.g_c && inv.g_f == r.g_f && inv.group_order == r.order,
            || format!("{}: invariants disagree with the record", r.label),
        )?;
    }
    Ok(format!(
        "{} records recompute exactly, K^2 = 8, chi = 1",
        records.len()
    ))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("abelian families", criterion_1),
        ("component counts", criterion_2),
        ("nonabelian examples", criterion_3),
        ("orbit replay", criterion_4),
        ("case analysis", criterion_5),
        ("property suites", criterion_6),
        ("Riemann-Hurwitz bookkeeping", criterion_7),
    ];
    let mut failures = Vec::new();
    let mut out = std::io::stdout().lock();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        match f() {
            Ok(detail) => writeln!(out, "criterion {n} ({name}): PASS - {detail}").unwrap(),
            Err(e) => {
                writeln!(out, "criterion {n} ({name}): FAIL - {e}").unwrap();
                failures.push(n);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

#[test]
fn random_vectors_are_generated_for_small_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = Group::symmetric(4).unwrap();
    let vs: Vec<GeneratingVector> = (0..2000)
        .filter_map(|_| common::random_genus0(&g, 4, &mut rng))
        .collect();
    assert!(vs.len() > 100);
    for v in &vs {
        v.check(&g).unwrap();
    }
}
