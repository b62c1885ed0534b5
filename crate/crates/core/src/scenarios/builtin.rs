//! Scenario files shipped with the crate.

use super::config::{load_scenario, ScenarioConfig};
use crate::error::{Error, Result};

macro_rules! builtin {
    ($($name:literal),* $(,)?) => {
        /// `(name, document)` for every bundled scenario.
        pub const BUILTIN_SCENARIOS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../scenarios/", $name, ".toml"))),)*
        ];
    };
}

builtin!(
    "ftir-microwave",
    "ftir-infrared",
    "ftir-microwave-10ghz",
    "photonic-lattice-702nm",
    "photonic-lattice-810nm",
    "undersized-waveguide",
    "electron-field-emission",
    "acoustic-1MHz",
    "acoustic-1kHz",
    "free-space",
);

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN_SCENARIOS.iter().map(|(n, _)| *n)
}

pub fn builtin_text(name: &str) -> Option<&'static str> {
    BUILTIN_SCENARIOS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
}

/// Loads a bundled scenario by name.
pub fn builtin_scenario(name: &str) -> Result<ScenarioConfig> {
    let text = builtin_text(name).ok_or_else(|| {
        Error::Config(format!(
            "no builtin scenario `{name}`; available: {}",
            builtin_names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    load_scenario(text).map_err(|e| Error::Scenario {
        name: name.to_string(),
        source: Box::new(e),
    })
}
