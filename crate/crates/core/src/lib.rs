//! Nested (meta-Fibonacci) recurrences `a(n) = c + Σ a(n - p_j - a(n - q_j))`:
//! exact evaluation with death detection, generational statistics of
//! chaotic solutions, Golomb-like systems and their slow solutions, and
//! quasi-periodic solution families of the V- and H-recurrences.

pub mod buffer;
pub mod cli;
pub mod error;
pub mod eval;
pub mod families;
pub mod generations;
pub mod golomb;
pub mod interleave;
pub mod io;
pub mod presets;
pub mod recurrence;
pub mod scan;
pub mod system;

pub use buffer::{SequenceBuffer, ValueWidth};
pub use error::{Error, Result};
pub use eval::{
    check_slow, eval_single, eval_single_with, lifespan, parent_spots, Death, EvalOutcome, Status,
    Violation,
};
pub use families::{Family, FamilyFixture, FamilyParams};
pub use generations::{
    alpha_table, evaluate_generations, generation_table, GenerationTable, NoiseStats,
};
pub use golomb::{verify_oracle, SlowSolutionOracle};
pub use interleave::{detect_interleaving, InterleavePattern};
pub use recurrence::{RecurrenceSpec, Term};
pub use scan::{scan, IcSpace, ScanReport};
pub use system::{eval_system, eval_system_int, Component, GolombSystemSpec, SystemBuffer};
