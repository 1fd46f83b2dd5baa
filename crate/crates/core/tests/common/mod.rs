//! Fixtures shared by the integration and acceptance targets.

use metafib::{Family, FamilyFixture, FamilyParams};

fn with(p: FamilyParams, f: impl Fn(&mut FamilyParams)) -> FamilyParams {
    let mut q = p;
    f(&mut q);
    q
}

/// Each entry breaks exactly one stated constraint of a valid fixture.
pub fn mutations() -> Vec<(&'static str, Family, FamilyParams, &'static str)> {
    let v = FamilyFixture::v1().params;
    let h = FamilyFixture::h1().params;
    vec![
        (
            "V b0 residue",
            Family::V,
            with(v, |p| p.b0 = 7),
            "b0≡1 (mod 5)",
        ),
        (
            "V b1 residue",
            Family::V,
            with(v, |p| p.b1 = 0),
            "b1≡4 (mod 5)",
        ),
        (
            "V b2 residue",
            Family::V,
            with(v, |p| p.b2 = 11),
            "b2≡2 (mod 5)",
        ),
        (
            "V b2 below range",
            Family::V,
            with(v, |p| p.b2 = 2),
            "7≤b2<K+3",
        ),
        (
            "V b2 above range",
            Family::V,
            with(v, |p| p.b2 = 17),
            "7≤b2<K+3",
        ),
        (
            "V b4 residue",
            Family::V,
            with(v, |p| p.b4 = 14),
            "b4≡3 (mod 5)",
        ),
        (
            "V b4 below range",
            Family::V,
            with(v, |p| p.b4 = 3),
            "8≤b4<K+5",
        ),
        (
            "V b4 above range",
            Family::V,
            with(v, |p| p.b4 = 18),
            "8≤b4<K+5",
        ),
        (
            "V a_f residue",
            Family::V,
            with(v, |p| p.a_f = 3),
            "a_f≡2 (mod 5)",
        ),
        (
            "V a_g residue",
            Family::V,
            with(v, |p| p.a_g = 4),
            "a_g≡3 (mod 5)",
        ),
        (
            "V a_f+a_g",
            Family::V,
            with(v, |p| (p.a_f, p.a_g) = (-3, -2)),
            "a_f+a_g>0",
        ),
        ("V m", Family::V, with(v, |p| p.m = 0), "m≥1"),
        (
            "H b0 below range",
            Family::H,
            with(h, |p| p.b0 = 1),
            "6≤b0<K+2",
        ),
        (
            "H b0 above range",
            Family::H,
            with(h, |p| p.b0 = 16),
            "6≤b0<K+2",
        ),
        (
            "H b1 below range",
            Family::H,
            with(h, |p| p.b1 = 4),
            "9≤b1<K+3",
        ),
        (
            "H b1 above range",
            Family::H,
            with(h, |p| p.b1 = 19),
            "9≤b1<K+3",
        ),
        (
            "H b2 residue",
            Family::H,
            with(h, |p| p.b2 = 3),
            "b2≡2 (mod 5)",
        ),
        (
            "H b4 residue",
            Family::H,
            with(h, |p| p.b4 = -3),
            "b4≡3 (mod 5)",
        ),
        (
            "H a_f residue",
            Family::H,
            with(h, |p| p.a_f = 5),
            "a_f≡4 (mod 5)",
        ),
        (
            "H a_g residue",
            Family::H,
            with(h, |p| p.a_g = 2),
            "a_g≡1 (mod 5)",
        ),
        ("H m", Family::H, with(h, |p| p.m = -1), "m≥1"),
    ]
}
