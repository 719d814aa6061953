//! Problem files shipped with the crate.

pub struct Fixture {
    pub name: &'static str,
    pub json: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture {
            name: $name,
            json: include_str!(concat!("../fixtures/", $name, ".json")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("oscillator"),
    fixture!("remark-aff1"),
    fixture!("translations-r2"),
    fixture!("translations-r3-volume"),
    fixture!("translations-r4"),
    fixture!("heisenberg-free"),
    fixture!("oscillator-abelian"),
    fixture!("heisenberg-control"),
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
