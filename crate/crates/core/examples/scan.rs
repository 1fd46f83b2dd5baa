//! Exhaustive lifespan scan over small initial conditions for V.
//!
//! cargo run --release --example scan [max_value] [cap]

use metafib::scan::Classification;
use metafib::{scan, IcSpace, RecurrenceSpec};

fn main() -> metafib::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<i64>().ok());
    let top = args.next().flatten().unwrap_or(4);
    let cap = args.next().flatten().unwrap_or(100_000) as u64;
    let space = IcSpace::Ranges(vec![(1, top); 4]);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = scan(&RecurrenceSpec::v(), &space, cap, workers)?;
    println!(
        "{} candidates, {} alive at {cap}",
        report.records.len(),
        report.alive
    );
    for (decade, count) in &report.dead_by_decade {
        println!("  died below 10^{}: {count}", decade + 1);
    }
    for r in report.records.iter().filter(|r| r.alive) {
        if r.classification != Classification::Other {
            println!("  {:?} {:?}", r.ic, r.classification);
        }
    }
    Ok(())
}
