//! Signatures, Riemann–Hurwitz and the numerical candidates for the
//! abelian search.

use isoprod::fuchsian::{
    abelian_signature_candidates, base_signature_options, riemann_hurwitz_genus, Signature,
};

pub fn run_example() -> anyhow::Result<()> {
    let sig: Signature = "(0|2^2,4^2)".parse()?;
    println!(
        "{sig}: r = {}, genus of an order-8 cover = {}",
        sig.r(),
        riemann_hurwitz_genus(8, &sig)?
    );
    match riemann_hurwitz_genus(8, &"(0|2^2,3)".parse()?) {
        Ok(g) => println!("unexpected genus {g}"),
        Err(e) => println!("rejected: {e}"),
    }

    for b in base_signature_options() {
        println!(
            "base option {}: g(F) = {}, n = {}, abelian groups allowed: {}",
            b.label, b.g_f, b.n, b.abelian_permitted
        );
    }

    let cands = abelian_signature_candidates();
    println!(
        "{} numerical candidates for abelian G; the first few:",
        cands.len()
    );
    for c in cands.iter().take(8) {
        println!(
            "  |G| = {:>3}  g(C) = {:>3}  m = {}",
            c.group_order, c.g_c, c.sig
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
