//! Generation boundaries and the noise exponent of V_c.
//!
//! cargo run --release --example generations [k_max]

use metafib::generations::{alpha_table, parent_diagnostic};
use metafib::{evaluate_generations, RecurrenceSpec};

fn main() -> metafib::Result<()> {
    let k_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(16);
    let (buf, gen) = evaluate_generations(&RecurrenceSpec::v(), &[3, 4, 5, 4, 5, 6], k_max)?;
    let stats = alpha_table(&buf, &gen)?;
    println!(
        "{:>3} {:>9} {:>9} {:>9} {:>8}",
        "k", "P_s", "P", "R", "alpha"
    );
    for k in 1..=k_max {
        let alpha = stats
            .alpha(k)
            .map_or("-".to_string(), |a| format!("{a:.4}"));
        println!(
            "{k:>3} {:>9} {:>9} {:>9} {alpha:>8}",
            gen.p_s(k),
            gen.p(k),
            gen.r(k)
        );
    }
    // later generations are fed almost entirely by the one before
    let d = parent_diagnostic(&buf, &gen, k_max)?;
    println!(
        "generation {k_max}: {} of {} terms have both parents in generation {}",
        d.both_parents_in_previous,
        d.terms,
        k_max - 1
    );
    Ok(())
}
