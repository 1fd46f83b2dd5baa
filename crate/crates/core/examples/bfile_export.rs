//! Write a b-file, read it back, and export CSV.
//!
//! cargo run --release --example bfile_export [out_dir]

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use metafib::io::{read_bfile, write_bfile, write_csv};
use metafib::{eval_single, RecurrenceSpec};

fn main() -> metafib::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(std::env::temp_dir, PathBuf::from);
    let (buf, _) = eval_single(&RecurrenceSpec::q(), &[1, 1], 10_000)?;

    let bfile = dir.join("hofstadter_q.b");
    write_bfile(&buf, File::create(&bfile)?)?;
    let back = read_bfile(BufReader::new(File::open(&bfile)?))?;
    assert_eq!(back.to_vec(), buf.to_vec());

    let csv = dir.join("hofstadter_q.csv");
    write_csv(&buf, File::create(&csv)?)?;
    println!(
        "wrote {} and {} ({} terms)",
        bfile.display(),
        csv.display(),
        buf.len()
    );
    Ok(())
}
