//! Residue-class patterns of the period-5 solutions.
//!
//! cargo run --release --example interleavings

use metafib::{detect_interleaving, eval_single, presets};

fn main() -> metafib::Result<()> {
    for p in presets::table4().into_iter().chain(presets::table5()) {
        let (buf, _) = eval_single(&p.spec, &p.ic, 20_000)?;
        let pat = detect_interleaving(&buf, 5, 10_000, 20_000)?;
        // residue of each constant or linear class mod 5; None for irregular
        let sig: Vec<String> = pat
            .congruence_signature()
            .iter()
            .map(|c| c.map_or("-".into(), |v| v.to_string()))
            .collect();
        println!(
            "{:<5} {}  {}  [{}]",
            p.name,
            pat.pattern_string(),
            pat.compact(),
            sig.join(",")
        );
    }
    Ok(())
}
