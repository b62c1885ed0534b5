//! Scenario documents: strict TOML schema, validation into SI, and
//! serialisation back to SI text.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::units::{format_si, parse_quantity, Dimension};
use crate::dispersion::{FieldKind, FtirGeometry, Geometry, Medium, WaveguideGeometry};
use crate::error::{Error, Result};
use crate::scatter::{Layer, Stack};

/// Analyses a scenario can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Scatter,
    Phasetime,
    Hartman,
    Pulse,
    Virtuality,
}

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::Scatter => "scatter",
            Analysis::Phasetime => "phasetime",
            Analysis::Hartman => "hartman",
            Analysis::Pulse => "pulse",
            Analysis::Virtuality => "virtuality",
        }
    }
}

/// Linear drive grid in SI (rad/s, or J for quantum scenarios).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Drive value at which single-point summaries are taken.
    pub probe: Option<f64>,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, points: usize, probe: Option<f64>) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::Config("grid bounds must be finite".into()));
        }
        if stop <= start {
            return Err(Error::Config(format!(
                "grid stop ({stop:e}) must exceed grid start ({start:e})"
            )));
        }
        if points < 2 {
            return Err(Error::Config(format!(
                "grid needs at least 2 points, got {points}"
            )));
        }
        if let Some(p) = probe {
            if !(start..=stop).contains(&p) {
                return Err(Error::Config(format!(
                    "grid probe {p:e} lies outside [{start:e}, {stop:e}]"
                )));
            }
        }
        Ok(GridSpec {
            start,
            stop,
            points,
            probe,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        let h = (self.stop - self.start) / n as f64;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + h * i as f64
                }
            })
            .collect()
    }

    pub fn probe_value(&self) -> f64 {
        self.probe.unwrap_or(0.5 * (self.start + self.stop))
    }

    /// Index of the grid point closest to the probe.
    pub fn probe_index(&self) -> usize {
        let p = self.probe_value();
        let h = (self.stop - self.start) / (self.points - 1) as f64;
        (((p - self.start) / h).round() as usize).min(self.points - 1)
    }
}

/// Gaussian probe pulse parameters in SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    /// Carrier frequency ν, Hz.
    pub carrier: f64,
    /// Envelope standard deviation, s.
    pub width: f64,
    pub samples: usize,
    /// Time window, s.
    pub span: f64,
}

/// Barrier-length sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HartmanSpec {
    pub layer: usize,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub threshold: f64,
}

impl HartmanSpec {
    pub fn lengths(&self) -> Vec<f64> {
        GridSpec {
            start: self.start,
            stop: self.stop,
            points: self.points,
            probe: None,
        }
        .values()
    }
}

/// A validated scenario with every quantity in SI.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub notes: Option<String>,
    pub field_kind: FieldKind,
    pub stack: Stack,
    pub grid: GridSpec,
    pub pulse: Option<PulseSpec>,
    pub hartman: Option<HartmanSpec>,
    /// Requested analyses, deduplicated, in execution order.
    pub analyses: Vec<Analysis>,
}

impl ScenarioConfig {
    pub fn requests(&self, analysis: Analysis) -> bool {
        self.analyses.contains(&analysis)
    }

    /// Copy with a different drive grid; the probe is kept when it still fits.
    pub fn with_grid(&self, start: f64, stop: f64, points: usize) -> Result<Self> {
        let probe = self.grid.probe.filter(|p| (start..=stop).contains(p));
        let mut cfg = self.clone();
        cfg.grid = GridSpec::new(start, stop, points, probe)?;
        Ok(cfg)
    }

    /// Dimension of the drive axis.
    pub fn drive_dimension(&self) -> Dimension {
        drive_dimension(self.field_kind)
    }

    /// TOML text in SI units; loading it gives back an equal config.
    pub fn to_toml(&self) -> String {
        let doc = ScenarioDoc::from_config(self);
        toml::to_string(&doc).expect("scenario documents always serialise")
    }
}

pub(crate) fn drive_dimension(kind: FieldKind) -> Dimension {
    match kind {
        FieldKind::Quantum => Dimension::Energy,
        _ => Dimension::AngularFrequency,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FieldDoc {
    Electromagnetic,
    Acoustic,
    Quantum,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    name: String,
    field: FieldDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    notes: Option<String>,
    analyses: Vec<Analysis>,
    grid: GridDoc,
    left_lead: RegionDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right_lead: Option<RegionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    layers: Vec<RegionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ftir: Option<FtirDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    waveguide: Option<WaveguideDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pulse: Option<PulseDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hartman: Option<HartmanDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDoc {
    start: String,
    stop: String,
    points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probe: Option<String>,
}

/// A lead or a layer; which keys apply depends on the field kind.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    thickness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    permittivity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    permittivity_imag: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    permeability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    permeability_imag: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sound_speed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    density: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    potential: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mass: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FtirDoc {
    angle: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pinned: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WaveguideDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cutoff: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    width: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PulseDoc {
    carrier: String,
    width: String,
    samples: usize,
    span: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HartmanDoc {
    #[serde(default)]
    layer: usize,
    start: String,
    stop: String,
    points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
}

/// Parses and validates a scenario document.
pub fn load_scenario(text: &str) -> Result<ScenarioConfig> {
    let doc: ScenarioDoc =
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))?;
    doc.into_config()
}

fn unit_err(field: &str, message: impl Into<String>) -> Error {
    Error::Unit {
        field: field.to_string(),
        message: message.into(),
    }
}

fn qty(field: &str, text: &Option<String>, dim: Dimension) -> Result<Option<f64>> {
    text.as_deref().map(|t| parse_quantity(field, t, dim)).transpose()
}

fn required(field: &str, text: &Option<String>, dim: Dimension) -> Result<f64> {
    qty(field, text, dim)?.ok_or_else(|| unit_err(field, "missing"))
}

impl RegionDoc {
    fn to_medium(&self, path: &str, kind: FieldKind) -> Result<Medium> {
        let key = |k: &str| format!("{path}.{k}");
        let present: Vec<&str> = [
            ("index", self.index.is_some()),
            ("permittivity", self.permittivity.is_some()),
            ("permittivity_imag", self.permittivity_imag.is_some()),
            ("permeability", self.permeability.is_some()),
            ("permeability_imag", self.permeability_imag.is_some()),
            ("sound_speed", self.sound_speed.is_some()),
            ("density", self.density.is_some()),
            ("potential", self.potential.is_some()),
            ("mass", self.mass.is_some()),
        ]
        .into_iter()
        .filter_map(|(k, p)| p.then_some(k))
        .collect();
        let allowed: &[&str] = match kind {
            FieldKind::Electromagnetic => &[
                "index",
                "permittivity",
                "permittivity_imag",
                "permeability",
                "permeability_imag",
            ],
            FieldKind::Acoustic => &["sound_speed", "density"],
            FieldKind::Quantum => &["potential", "mass"],
        };
        if let Some(k) = present.iter().find(|k| !allowed.contains(k)) {
            return Err(Error::Config(format!(
                "`{}` does not apply to {kind} media",
                key(k)
            )));
        }
        let medium = match kind {
            FieldKind::Electromagnetic => {
                let eps = match (self.index, self.permittivity) {
                    (Some(_), Some(_)) => {
                        return Err(Error::Config(format!(
                            "{path}: give either `index` or `permittivity`, not both"
                        )))
                    }
                    (None, None) => {
                        return Err(Error::Config(format!(
                            "{path}: one of `index` or `permittivity` is required"
                        )))
                    }
                    (Some(n), None) => {
                        if self.permittivity_imag.is_some() {
                            return Err(Error::Config(format!(
                                "{path}: `permittivity_imag` needs `permittivity`"
                            )));
                        }
                        if !(n > 0.0) {
                            return Err(Error::Config(format!("{}: index must be > 0", key("index"))));
                        }
                        Complex64::new(n * n, 0.0)
                    }
                    (None, Some(e)) => Complex64::new(e, self.permittivity_imag.unwrap_or(0.0)),
                };
                let mu = Complex64::new(
                    self.permeability.unwrap_or(1.0),
                    self.permeability_imag.unwrap_or(0.0),
                );
                Medium::electromagnetic(eps, mu)
            }
            FieldKind::Acoustic => Medium::acoustic(
                required(&key("sound_speed"), &self.sound_speed, Dimension::Speed)?,
                required(&key("density"), &self.density, Dimension::Density)?,
            ),
            FieldKind::Quantum => Medium::quantum(
                required(&key("potential"), &self.potential, Dimension::Energy)?,
                required(&key("mass"), &self.mass, Dimension::Mass)?,
            ),
        };
        medium.map_err(|e| Error::Config(format!("{path}: {e}")))
    }

    fn from_medium(m: &Medium, thickness: Option<f64>) -> Self {
        let mut doc = RegionDoc {
            thickness: thickness.map(|t| format_si(t, Dimension::Length)),
            ..Default::default()
        };
        match *m {
            Medium::Electromagnetic {
                permittivity,
                permeability,
            } => {
                doc.permittivity = Some(permittivity.re);
                doc.permittivity_imag = (permittivity.im != 0.0).then_some(permittivity.im);
                doc.permeability =
                    (permeability.re != 1.0 || permeability.im != 0.0).then_some(permeability.re);
                doc.permeability_imag = (permeability.im != 0.0).then_some(permeability.im);
            }
            Medium::Acoustic { sound_speed, density } => {
                doc.sound_speed = Some(format_si(sound_speed, Dimension::Speed));
                doc.density = Some(format_si(density, Dimension::Density));
            }
            Medium::Quantum { potential, mass } => {
                doc.potential = Some(format_si(potential, Dimension::Energy));
                doc.mass = Some(format_si(mass, Dimension::Mass));
            }
        }
        doc
    }
}

fn real_index(m: &Medium, what: &str) -> Result<f64> {
    match m.refractive_index() {
        Some(n) if n.im == 0.0 && n.re > 0.0 => Ok(n.re),
        _ => Err(Error::Config(format!(
            "{what} must be a lossless dielectric for an FTIR geometry"
        ))),
    }
}

impl ScenarioDoc {
    fn into_config(self) -> Result<ScenarioConfig> {
        let field_kind = match self.field {
            FieldDoc::Electromagnetic => FieldKind::Electromagnetic,
            FieldDoc::Acoustic => FieldKind::Acoustic,
            FieldDoc::Quantum => FieldKind::Quantum,
        };
        if self.name.trim().is_empty() {
            return Err(Error::Config("scenario name must not be empty".into()));
        }
        if self.analyses.is_empty() {
            return Err(Error::Config("at least one analysis must be requested".into()));
        }
        let mut analyses = self.analyses.clone();
        analyses.sort();
        analyses.dedup();

        let dim = drive_dimension(field_kind);
        let grid = GridSpec::new(
            parse_quantity("grid.start", &self.grid.start, dim)?,
            parse_quantity("grid.stop", &self.grid.stop, dim)?,
            self.grid.points,
            qty("grid.probe", &self.grid.probe, dim)?,
        )?;

        if self.left_lead.thickness.is_some() {
            return Err(Error::Config(
                "`left_lead.thickness` is not allowed: leads are semi-infinite".into(),
            ));
        }
        let left = self.left_lead.to_medium("left_lead", field_kind)?;
        let right = match &self.right_lead {
            Some(r) => {
                if r.thickness.is_some() {
                    return Err(Error::Config(
                        "`right_lead.thickness` is not allowed: leads are semi-infinite".into(),
                    ));
                }
                r.to_medium("right_lead", field_kind)?
            }
            None => left,
        };
        let mut layers = Vec::with_capacity(self.layers.len());
        for (i, l) in self.layers.iter().enumerate() {
            let path = format!("layers[{i}]");
            let medium = l.to_medium(&path, field_kind)?;
            let d = required(&format!("{path}.thickness"), &l.thickness, Dimension::Length)?;
            layers.push(Layer::new(medium, d).map_err(|e| Error::Config(format!("{path}: {e}")))?);
        }

        let geometry = match (&self.ftir, &self.waveguide) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "`ftir` and `waveguide` are mutually exclusive".into(),
                ))
            }
            (Some(f), None) => {
                let angle = parse_quantity("ftir.angle", &f.angle, Dimension::Angle)?;
                let prism = real_index(&left, "left_lead")?;
                let gap = real_index(layers.first().map(|l| &l.medium).unwrap_or(&right), "layers[0]")?;
                let mut g = FtirGeometry::new(angle, prism, gap)?;
                if let Some(p) = qty("ftir.pinned", &f.pinned, Dimension::AngularFrequency)? {
                    g = g.pinned_at(p)?;
                }
                Some(Geometry::Ftir(g))
            }
            (None, Some(w)) => {
                let g = match (
                    qty("waveguide.cutoff", &w.cutoff, Dimension::AngularFrequency)?,
                    qty("waveguide.width", &w.width, Dimension::Length)?,
                ) {
                    (Some(c), None) => WaveguideGeometry::new(c)?,
                    (None, Some(a)) => WaveguideGeometry::from_width(a)?,
                    _ => {
                        return Err(Error::Config(
                            "waveguide needs exactly one of `cutoff` or `width`".into(),
                        ))
                    }
                };
                Some(Geometry::Waveguide(g))
            }
            (None, None) => None,
        };
        let stack = Stack::new(left, layers, right, geometry)?;

        let pulse = match &self.pulse {
            Some(p) => {
                if field_kind == FieldKind::Quantum {
                    return Err(Error::Config(
                        "pulses are defined for wave fields, not quantum scenarios".into(),
                    ));
                }
                let spec = PulseSpec {
                    carrier: parse_quantity("pulse.carrier", &p.carrier, Dimension::Frequency)?,
                    width: parse_quantity("pulse.width", &p.width, Dimension::Time)?,
                    samples: p.samples,
                    span: parse_quantity("pulse.span", &p.span, Dimension::Time)?,
                };
                if !(spec.carrier > 0.0 && spec.width > 0.0 && spec.span > 0.0) {
                    return Err(Error::Config("pulse carrier, width and span must be > 0".into()));
                }
                Some(spec)
            }
            None => None,
        };
        let hartman = match &self.hartman {
            Some(h) => {
                let spec = HartmanSpec {
                    layer: h.layer,
                    start: parse_quantity("hartman.start", &h.start, Dimension::Length)?,
                    stop: parse_quantity("hartman.stop", &h.stop, Dimension::Length)?,
                    points: h.points,
                    threshold: h.threshold.unwrap_or(crate::timing::SATURATION_THRESHOLD),
                };
                if !(spec.start >= 0.0 && spec.stop > spec.start && spec.points >= 2) {
                    return Err(Error::Config(
                        "hartman sweep needs 0 <= start < stop and at least 2 points".into(),
                    ));
                }
                if !(spec.threshold > 0.0) {
                    return Err(Error::Config("hartman.threshold must be > 0".into()));
                }
                if spec.layer >= stack.layers.len() {
                    return Err(Error::Config(format!(
                        "hartman.layer {} does not exist",
                        spec.layer
                    )));
                }
                Some(spec)
            }
            None => None,
        };
        if analyses.contains(&Analysis::Pulse) && pulse.is_none() {
            return Err(Error::Config("the pulse analysis needs a [pulse] table".into()));
        }
        if analyses.contains(&Analysis::Hartman) && hartman.is_none() {
            return Err(Error::Config(
                "the hartman analysis needs a [hartman] table".into(),
            ));
        }
        if grid.points < 3
            && analyses
                .iter()
                .any(|a| matches!(a, Analysis::Phasetime | Analysis::Hartman))
        {
            return Err(Error::Config(
                "phase times need a grid of at least 3 points".into(),
            ));
        }

        Ok(ScenarioConfig {
            name: self.name,
            notes: self.notes,
            field_kind,
            stack,
            grid,
            pulse,
            hartman,
            analyses,
        })
    }

    fn from_config(cfg: &ScenarioConfig) -> Self {
        let dim = drive_dimension(cfg.field_kind);
        let s = &cfg.stack;
        let (ftir, waveguide) = match s.geometry {
            Some(Geometry::Ftir(g)) => (
                Some(FtirDoc {
                    angle: format_si(g.incidence_angle, Dimension::Angle),
                    pinned: g
                        .pinned_frequency
                        .map(|w| format_si(w, Dimension::AngularFrequency)),
                }),
                None,
            ),
            Some(Geometry::Waveguide(g)) => (
                None,
                Some(WaveguideDoc {
                    cutoff: Some(format_si(g.cutoff, Dimension::AngularFrequency)),
                    width: None,
                }),
            ),
            None => (None, None),
        };
        ScenarioDoc {
            name: cfg.name.clone(),
            field: match cfg.field_kind {
                FieldKind::Electromagnetic => FieldDoc::Electromagnetic,
                FieldKind::Acoustic => FieldDoc::Acoustic,
                FieldKind::Quantum => FieldDoc::Quantum,
            },
            notes: cfg.notes.clone(),
            analyses: cfg.analyses.clone(),
            grid: GridDoc {
                start: format_si(cfg.grid.start, dim),
                stop: format_si(cfg.grid.stop, dim),
                points: cfg.grid.points,
                probe: cfg.grid.probe.map(|p| format_si(p, dim)),
            },
            left_lead: RegionDoc::from_medium(&s.left_lead, None),
            right_lead: Some(RegionDoc::from_medium(&s.right_lead, None)),
            layers: s
                .layers
                .iter()
                .map(|l| RegionDoc::from_medium(&l.medium, Some(l.thickness)))
                .collect(),
            ftir,
            waveguide,
            pulse: cfg.pulse.map(|p| PulseDoc {
                carrier: format_si(p.carrier, Dimension::Frequency),
                width: format_si(p.width, Dimension::Time),
                samples: p.samples,
                span: format_si(p.span, Dimension::Time),
            }),
            hartman: cfg.hartman.map(|h| HartmanDoc {
                layer: h.layer,
                start: format_si(h.start, Dimension::Length),
                stop: format_si(h.stop, Dimension::Length),
                points: h.points,
                threshold: Some(h.threshold),
            }),
        }
    }
}
