//! Named recurrence/initial-condition pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::FamilyFixture;
use crate::recurrence::RecurrenceSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Preset {
    pub name: String,
    pub spec: RecurrenceSpec,
    pub ic: Vec<i64>,
    /// Interleaving pattern (mod 5) the tail is expected to settle into.
    pub expected_pattern: Option<&'static str>,
}

impl Preset {
    fn plain(name: &str, spec: RecurrenceSpec, ic: Vec<i64>) -> Self {
        Preset {
            name: name.to_string(),
            spec,
            ic,
            expected_pattern: None,
        }
    }

    fn patterned(name: &str, spec: RecurrenceSpec, ic: Vec<i64>, pattern: &'static str) -> Self {
        Preset {
            name: name.to_string(),
            spec,
            ic,
            expected_pattern: Some(pattern),
        }
    }
}

/// V initial conditions with period-5 tails, one per family, in printed order.
pub fn table4() -> Vec<Preset> {
    let v = RecurrenceSpec::v;
    vec![
        Preset::patterned(
            "T4-1",
            v(),
            vec![5, 4, 0, 0, 0, 5, 0, 5, 5, 1, 5, 4],
            "C,C,C,L,L",
        ),
        Preset::patterned(
            "T4-2",
            v(),
            vec![4, 0, 5, -2, 1, 3, -3, 5, 3, 0, 4, 10, 5, 8],
            "C,C,L,C,L",
        ),
        Preset::patterned(
            "T4-3",
            v(),
            vec![
                0, 14, -4, -7, 8, 5, 14, -2, -2, 8, 0, 0, 6, 3, 18, 15, 14, 11, 8, 8, 20, 14, 16,
                13, 8, 25,
            ],
            "C,L,C,L,L",
        ),
        Preset::patterned(
            "T4-4",
            v(),
            vec![0, 2, -2, -6, 11, 6, 2, 3, 0, 11, 0, 2, 8, -2, 11, 15, 2, 13],
            "C,L,C,L,L",
        ),
    ]
}

/// The H counterparts of [`table4`].
pub fn table5() -> Vec<Preset> {
    let h = RecurrenceSpec::h;
    vec![
        Preset::patterned(
            "T5-1",
            h(),
            vec![5, 3, 0, -1, -1, 5, 0, 1, 4, 2, 5, 3, 10],
            "C,C,C,L,L",
        ),
        Preset::patterned(
            "T5-2",
            h(),
            vec![2, 0, 5, 0, 0, 0, 5, 5, 5, 3, 2],
            "C,C,L,C,L",
        ),
        Preset::patterned(
            "T5-3",
            h(),
            vec![7, 0, -3, 0, 4, 7, 5, 0, 7, 4, 0, 8, 7, 5, 4, 7, 15, 12, 10],
            "C,C,L,L,L",
        ),
        Preset::patterned(
            "T5-4",
            h(),
            vec![6, 1, 0, 3, 3, 0, 6, 4, -1, 3, 6, 0, 12, 4, 3, 6, 16, 14, 9],
            "C,C,L,L,L",
        ),
    ]
}

pub fn all() -> Vec<Preset> {
    let mut out = vec![
        Preset::plain("V", RecurrenceSpec::v(), vec![1, 1, 1, 1]),
        Preset::plain("Q", RecurrenceSpec::q(), vec![1, 1]),
        // <1,1,1> dies at 55; this one is the quasi-periodic h1 solution.
        Preset::plain("H", RecurrenceSpec::h(), vec![3, 1, 4, 2]),
        Preset::plain("BA", RecurrenceSpec::b_a(), vec![1, 1, 1, 4, 3]),
        Preset::plain("LA", RecurrenceSpec::l_a(), vec![1; 29]),
        Preset::plain("G", RecurrenceSpec::golomb(), vec![1]),
        Preset::plain("Vc", RecurrenceSpec::v(), vec![3, 4, 5, 4, 5, 6]),
        Preset::plain("V3144", RecurrenceSpec::v(), vec![3, 1, 4, 4]),
    ];
    out.extend(table4());
    out.extend(table5());
    for fx in FamilyFixture::all() {
        out.push(Preset::plain(
            fx.name,
            fx.family.recurrence(),
            fx.ic.clone(),
        ));
    }
    out
}

/// Case-insensitive lookup.
pub fn get(name: &str) -> Result<Preset> {
    all()
        .into_iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

pub fn names() -> Vec<String> {
    all().into_iter().map(|p| p.name).collect()
}
