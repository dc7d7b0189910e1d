//! Scenario files bundled into the binary.

use crate::config::ScenarioConfig;

pub const PRESETS: [(&str, &str); 5] = [
    ("fig1_rb87", include_str!("../presets/fig1_rb87.toml")),
    ("quasistatic_anchor", include_str!("../presets/quasistatic_anchor.toml")),
    ("antisymmetry_demo", include_str!("../presets/antisymmetry_demo.toml")),
    ("sweep_w", include_str!("../presets/sweep_w.toml")),
    ("sweep_vperp", include_str!("../presets/sweep_vperp.toml")),
];

pub fn find(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".toml").unwrap_or(name);
    PRESETS.iter().find(|p| p.0 == name).map(|p| p.1)
}

/// (name, description) pairs.
pub fn list() -> Vec<(&'static str, String)> {
    PRESETS
        .iter()
        .map(|(name, text)| {
            let cfg = ScenarioConfig::parse(text).expect("bundled presets parse");
            (*name, cfg.description)
        })
        .collect()
}
