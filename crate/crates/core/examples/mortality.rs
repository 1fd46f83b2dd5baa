//! Lifespans of a few meta-Fibonacci solutions, with death diagnostics.
//!
//! cargo run --release --example mortality

use metafib::{lifespan, RecurrenceSpec};

fn main() -> metafib::Result<()> {
    let cases: [(&str, RecurrenceSpec, Vec<i64>, u64); 4] = [
        (
            "V <3,1,4,4>",
            RecurrenceSpec::v(),
            vec![3, 1, 4, 4],
            1_000_000,
        ),
        (
            "B_A <1,1,1,4,3>",
            RecurrenceSpec::b_a(),
            vec![1, 1, 1, 4, 3],
            1_000_000,
        ),
        (
            "L_A 29 ones",
            RecurrenceSpec::l_a(),
            vec![1; 29],
            20_000_000,
        ),
        (
            "V <1,1,1,1>",
            RecurrenceSpec::v(),
            vec![1, 1, 1, 1],
            1_000_000,
        ),
    ];
    for (name, spec, ic, cap) in cases {
        let out = lifespan(&spec, &ic, cap)?;
        match out.death() {
            Some(d) => println!(
                "{name:<18} dies at index {} (a({}) references {}, {} defined terms)",
                d.death_index, d.death_index, d.offending_argument, out.computed_len
            ),
            None => println!("{name:<18} alive through {cap}"),
        }
    }
    Ok(())
}
