//! Quasi-periodic families: parameter checks, the derived Golomb-like
//! system, and end-to-end verification of the four fixtures.
//!
//! cargo run --release --example quasi_periodic

use metafib::FamilyFixture;

fn main() -> metafib::Result<()> {
    for fx in FamilyFixture::all() {
        let violations = fx.family.validate(&fx.params);
        assert!(violations.is_empty(), "{}: {violations:?}", fx.name);
        let sys = fx.family.derived_system(&fx.params)?;
        let res = fx.verify(20_000)?;
        println!(
            "{} ({:?}, K={}, n0={}): system {sys:?}; {} on [{}, {}]",
            fx.name,
            fx.family,
            fx.params.k,
            fx.family.n0(&fx.params),
            if res.passed() { "holds" } else { "broken" },
            res.checked_from,
            res.checked_to
        );
    }

    // one bad parameter is enough to break the form
    let fx = FamilyFixture::v1();
    let mut bad = fx.params;
    bad.b2 += 1;
    for c in fx.family.validate(&bad) {
        println!("b2 = {}: violates {c}", bad.b2);
    }
    Ok(())
}
