//! Scenario files, the bundled scenario library and report emission.
//!
//! A scenario is a TOML document in which every dimensional value carries a
//! unit suffix (`"40 cm"`, `"8.33 GHz"`, `"1.7 eV"`). Loading validates the
//! document strictly and converts it to SI; [`ScenarioConfig::to_toml`] writes
//! it back in SI units.

mod builtin;
mod config;
mod run;
mod table1;
pub mod units;

pub use builtin::{builtin_names, builtin_scenario, builtin_text, BUILTIN_SCENARIOS};
pub use config::{load_scenario, Analysis, GridSpec, HartmanSpec, PulseSpec, ScenarioConfig};
pub use run::{
    emit_csv, emit_hartman_csv, emit_pulse_csv, emit_pulse_summary, emit_virtuality, fmt_num, run_scenario,
    ScenarioReport,
};
pub use table1::{render_table1, table1_report, PrintedTime, Table1Row};
