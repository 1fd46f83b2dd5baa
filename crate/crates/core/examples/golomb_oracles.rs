//! Golomb-like systems against their slow-solution oracles.
//!
//! cargo run --release --example golomb_oracles

use metafib::golomb::{fg1_closed_form_mismatch, growth_ratio};
use metafib::{verify_oracle, SlowSolutionOracle};

fn main() -> metafib::Result<()> {
    const N: u64 = 1_000_000;
    for o in SlowSolutionOracle::ALL {
        let (sys, f, g) = o.setup();
        let check = verify_oracle(&sys, &f, &g, o, N)?;
        let ratio = growth_ratio(&sys, &f, &g, N)?;
        println!(
            "{o:<5} oracle {} through {N}; f(N)/sqrt(d N) = {ratio:.6}",
            if check.passed() { "holds" } else { "FAILS" }
        );
    }
    match fg1_closed_form_mismatch(10_000_000) {
        None => println!("fg1 closed forms hold through 10^7"),
        Some((which, n)) => println!("fg1 closed form for {which:?} fails at {n}"),
    }
    Ok(())
}
