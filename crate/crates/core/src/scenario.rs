//! Complete run descriptions and their plain-text configuration format.
//!
//! The format is a flat sequence of `[section]` headers and `key = value`
//! lines; `#` starts a comment. Every key that carries a physical unit names
//! it in its suffix (`gamma3_per_s`, `lambda_p_m`, ...). Physics keys are
//! required; solver and diagnostic keys fall back to documented defaults.
//! Unknown keys are rejected.
//!
//! ```text
//! [atomic]
//! density_per_m3 = 1e20
//! mu13_c_m = 3e-29
//! ...
//! [probe]
//! lambda_p_m = 8e-7
//! source = soliton
//! eigenvalue = 0.005
//! order = 1
//! center_x_m = 0
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::diagnostics::PeakSettings;
use crate::error::{Error, Result};
use crate::medium::{AtomicParams, DEFAULT_DOMINANCE};
use crate::propagator::{Grid, SolverConfig, SolverMode, Sponge};
use crate::soliton::{SolitonOrder, SolitonSpec};
use crate::waveguide::{CouplingBeam, Taper, TransverseProfile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeSource {
    Soliton(SolitonSpec),
    /// CSV file with one `re,im` pair (V/m) per grid point.
    Profile(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputKind {
    /// Per-snapshot metrics, CSV.
    Metrics,
    /// Field snapshots, little-endian binary.
    Snapshots,
    /// χ⁽¹⁾/χ⁽³⁾ transverse profile at z = 0, CSV.
    ChiProfile,
}

impl OutputKind {
    pub fn key(self) -> &'static str {
        match self {
            OutputKind::Metrics => "metrics_csv",
            OutputKind::Snapshots => "snapshots_bin",
            OutputKind::ChiProfile => "chi_profile_csv",
        }
    }

    fn from_key(key: &str) -> Option<Self> {
        [
            OutputKind::Metrics,
            OutputKind::Snapshots,
            OutputKind::ChiProfile,
        ]
        .into_iter()
        .find(|k| k.key() == key)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub kind: OutputKind,
    /// Relative paths are resolved against the run's output directory.
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub atomic: AtomicParams,
    pub beam: CouplingBeam,
    pub probe: ProbeSource,
    /// Probe wavelength, m.
    pub lambda_p: f64,
    pub grid: Grid,
    pub solver: SolverConfig,
    pub peaks: PeakSettings,
    pub outputs: Vec<OutputSpec>,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.atomic.validate()?;
        self.beam.validate()?;
        if let ProbeSource::Soliton(spec) = &self.probe {
            spec.validate()?;
        }
        if !(self.lambda_p.is_finite() && self.lambda_p > 0.0) {
            return Err(Error::domain("lambda_p", "must be positive"));
        }
        self.grid.validate()?;
        self.solver.validate()?;
        self.beam.taper.validate(self.grid.z_end())?;
        if self.peaks.smoothing == 0 || self.peaks.smoothing.is_multiple_of(2) {
            return Err(Error::domain(
                "smoothing",
                "window must be a positive odd count",
            ));
        }
        if !(self.peaks.relative_height > 0.0 && self.peaks.relative_height < 1.0) {
            return Err(Error::domain("relative_height", "must lie in (0, 1)"));
        }
        let mut seen = Vec::new();
        for o in &self.outputs {
            if seen.contains(&o.kind) {
                return Err(Error::Config(format!(
                    "output `{}` listed twice",
                    o.kind.key()
                )));
            }
            seen.push(o.kind);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Need {
    Required,
    Optional,
}

struct KeySpec {
    section: &'static str,
    key: &'static str,
    /// Leading part of the key before its unit suffix, if it has one.
    stem: Option<&'static str>,
    need: Need,
}

const fn key(
    section: &'static str,
    key: &'static str,
    stem: Option<&'static str>,
    need: Need,
) -> KeySpec {
    KeySpec {
        section,
        key,
        stem,
        need,
    }
}

use Need::{Optional, Required};

const KEYS: &[KeySpec] = &[
    key("atomic", "density_per_m3", Some("density"), Required),
    key("atomic", "mu13_c_m", Some("mu13"), Required),
    key("atomic", "mu24_c_m", Some("mu24"), Required),
    key("atomic", "mu23_c_m", Some("mu23"), Required),
    key("atomic", "gamma2_per_s", Some("gamma2"), Required),
    key("atomic", "gamma3_per_s", Some("gamma3"), Required),
    key("atomic", "gamma4_per_s", Some("gamma4"), Required),
    key("atomic", "delta13_per_s", Some("delta13"), Required),
    key("atomic", "delta23_per_s", Some("delta23"), Required),
    key("atomic", "delta24_per_s", Some("delta24"), Required),
    key("probe", "lambda_p_m", Some("lambda_p"), Required),
    key("probe", "source", None, Required),
    key("probe", "eigenvalue", None, Optional),
    key("probe", "order", None, Optional),
    key("probe", "center_x_m", Some("center_x"), Optional),
    key("probe", "transverse_velocity", None, Optional),
    key("probe", "profile_csv", None, Optional),
    key("beam", "profile", None, Required),
    key(
        "beam",
        "peak_amplitude_v_per_m",
        Some("peak_amplitude"),
        Required,
    ),
    key("beam", "waist_m", Some("waist"), Optional),
    key("beam", "center_x_m", Some("center_x"), Required),
    key("beam", "taper", None, Optional),
    key("beam", "taper_rate_per_m", Some("taper_rate"), Optional),
    key("grid", "x_min_m", Some("x_min"), Required),
    key("grid", "x_max_m", Some("x_max"), Required),
    key("grid", "nx", None, Required),
    key("grid", "dz_m", Some("dz"), Required),
    key("grid", "nz", None, Required),
    key("solver", "mode", None, Optional),
    key("solver", "sponge_fraction", None, Optional),
    key("solver", "sponge_rate_per_m", Some("sponge_rate"), Optional),
    key("solver", "corrector_iterations", None, Optional),
    key("solver", "snapshot_stride", None, Optional),
    key("solver", "regime_override", None, Optional),
    key("solver", "dominance", None, Optional),
    key("diagnostics", "peak_relative_height", None, Optional),
    key("diagnostics", "peak_min_separation", None, Optional),
    key("diagnostics", "peak_smoothing", None, Optional),
    key("diagnostics", "split_persistence", None, Optional),
    key("output", "metrics_csv", None, Optional),
    key("output", "snapshots_bin", None, Optional),
    key("output", "chi_profile_csv", None, Optional),
    key("meta", "version", None, Optional),
];

struct Entry {
    value: String,
    line: usize,
}

struct Document {
    entries: BTreeMap<(String, String), Entry>,
    last_line: usize,
}

impl Document {
    fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.get(&(section.to_string(), key.to_string()))
    }

    fn line_of(&self, section: &str, key: &str) -> usize {
        self.get(section, key).map_or(self.last_line, |e| e.line)
    }

    fn require(&self, section: &str, key: &str) -> Result<&Entry> {
        self.get(section, key).ok_or_else(|| Error::Parse {
            line: self.last_line,
            message: format!("missing required key `{key}` in [{section}]"),
        })
    }

    fn f64(&self, section: &str, key: &str) -> Result<f64> {
        let e = self.require(section, key)?;
        parse_f64(&e.value, e.line, key)
    }

    fn f64_or(&self, section: &str, key: &str, default: f64) -> Result<f64> {
        match self.get(section, key) {
            Some(e) => parse_f64(&e.value, e.line, key),
            None => Ok(default),
        }
    }

    fn usize(&self, section: &str, key: &str) -> Result<usize> {
        let e = self.require(section, key)?;
        parse_usize(&e.value, e.line, key)
    }

    fn usize_or(&self, section: &str, key: &str, default: usize) -> Result<usize> {
        match self.get(section, key) {
            Some(e) => parse_usize(&e.value, e.line, key),
            None => Ok(default),
        }
    }

    fn word(&self, section: &str, key: &str) -> Result<(&str, usize)> {
        let e = self.require(section, key)?;
        Ok((e.value.as_str(), e.line))
    }
}

fn parse_f64(v: &str, line: usize, key: &str) -> Result<f64> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("`{key}` expects a finite number, got `{v}`"),
        })
}

fn parse_usize(v: &str, line: usize, key: &str) -> Result<usize> {
    v.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("`{key}` expects a non-negative integer, got `{v}`"),
    })
}

fn tokenize(text: &str) -> Result<Document> {
    let mut entries = BTreeMap::new();
    let mut section: Option<String> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| Error::Parse {
                line,
                message: format!("malformed section header `{content}`"),
            })?;
            let name = name.trim();
            if !KEYS.iter().any(|k| k.section == name) {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown section [{name}]"),
                });
            }
            section = Some(name.to_string());
            continue;
        }
        let (k, v) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let (k, v) = (k.trim(), v.trim());
        let sec = section.clone().ok_or_else(|| Error::Parse {
            line,
            message: format!("`{k}` appears before any [section]"),
        })?;
        check_known(&sec, k, line)?;
        if v.is_empty() {
            return Err(Error::Parse {
                line,
                message: format!("`{k}` has an empty value"),
            });
        }
        let prev = entries.insert(
            (sec.clone(), k.to_string()),
            Entry {
                value: v.to_string(),
                line,
            },
        );
        if let Some(prev) = prev {
            return Err(Error::Parse {
                line,
                message: format!("`{k}` already set on line {}", prev.line),
            });
        }
    }
    Ok(Document { entries, last_line })
}

fn check_known(section: &str, k: &str, line: usize) -> Result<()> {
    let in_section = || KEYS.iter().filter(|s| s.section == section);
    if in_section().any(|s| s.key == k) {
        return Ok(());
    }
    for spec in in_section() {
        if let Some(stem) = spec.stem {
            if k == stem
                || k.strip_prefix(stem)
                    .is_some_and(|rest| rest.starts_with('_'))
            {
                return Err(Error::Parse {
                    line,
                    message: format!("unit suffix mismatch: `{k}` should be `{}`", spec.key),
                });
            }
        }
    }
    Err(Error::Parse {
        line,
        message: format!("unknown key `{k}` in [{section}]"),
    })
}

/// Parses and fully validates a configuration document.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let doc = tokenize(text)?;

    let missing: Vec<String> = KEYS
        .iter()
        .filter(|k| k.need == Required && doc.get(k.section, k.key).is_none())
        .map(|k| format!("[{}] {}", k.section, k.key))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Parse {
            line: doc.last_line,
            message: format!("missing required keys: {}", missing.join(", ")),
        });
    }

    let atomic = AtomicParams {
        n: doc.f64("atomic", "density_per_m3")?,
        mu13: doc.f64("atomic", "mu13_c_m")?,
        mu24: doc.f64("atomic", "mu24_c_m")?,
        mu23: doc.f64("atomic", "mu23_c_m")?,
        gamma2: doc.f64("atomic", "gamma2_per_s")?,
        gamma3: doc.f64("atomic", "gamma3_per_s")?,
        gamma4: doc.f64("atomic", "gamma4_per_s")?,
        delta13: doc.f64("atomic", "delta13_per_s")?,
        delta23: doc.f64("atomic", "delta23_per_s")?,
        delta24: doc.f64("atomic", "delta24_per_s")?,
    };
    atomic.validate().map_err(|e| at_field(&doc, "atomic", e))?;

    let lambda_p = doc.f64("probe", "lambda_p_m")?;
    let (source, source_line) = doc.word("probe", "source")?;
    let probe = match source {
        "soliton" => {
            if let Some(e) = doc.get("probe", "profile_csv") {
                return Err(Error::Parse {
                    line: e.line,
                    message: "`profile_csv` conflicts with `source = soliton`".into(),
                });
            }
            let order_line = doc.line_of("probe", "order");
            let order_number = doc.usize("probe", "order")?;
            let order =
                SolitonOrder::from_number(order_number as u32).ok_or_else(|| Error::Parse {
                    line: order_line,
                    message: format!("`order` must be 1 or 2, got {order_number}"),
                })?;
            ProbeSource::Soliton(SolitonSpec {
                m: doc.f64("probe", "eigenvalue")?,
                order,
                center_x: doc.f64("probe", "center_x_m")?,
                transverse_velocity: doc.f64_or("probe", "transverse_velocity", 0.0)?,
            })
        }
        "profile" => {
            for k in ["eigenvalue", "order", "center_x_m", "transverse_velocity"] {
                if let Some(e) = doc.get("probe", k) {
                    return Err(Error::Parse {
                        line: e.line,
                        message: format!("`{k}` conflicts with `source = profile`"),
                    });
                }
            }
            ProbeSource::Profile(PathBuf::from(&doc.require("probe", "profile_csv")?.value))
        }
        other => {
            return Err(Error::Parse {
                line: source_line,
                message: format!("`source` must be `soliton` or `profile`, got `{other}`"),
            })
        }
    };

    let (profile_word, profile_line) = doc.word("beam", "profile")?;
    let profile = match profile_word {
        "gaussian" => TransverseProfile::Gaussian {
            waist: doc.f64("beam", "waist_m")?,
        },
        "uniform" => {
            if let Some(e) = doc.get("beam", "waist_m") {
                return Err(Error::Parse {
                    line: e.line,
                    message: "`waist_m` given for a uniform beam".into(),
                });
            }
            TransverseProfile::Uniform
        }
        other => {
            return Err(Error::Parse {
                line: profile_line,
                message: format!("`profile` must be `gaussian` or `uniform`, got `{other}`"),
            })
        }
    };
    let taper = match doc.get("beam", "taper").map(|e| (e.value.as_str(), e.line)) {
        None | Some(("none", _)) => {
            if let Some(e) = doc.get("beam", "taper_rate_per_m") {
                return Err(Error::Parse {
                    line: e.line,
                    message: "`taper_rate_per_m` given without a taper".into(),
                });
            }
            Taper::None
        }
        Some(("linear", _)) => Taper::Linear {
            rate: doc.f64("beam", "taper_rate_per_m")?,
        },
        Some(("exponential", _)) => Taper::Exponential {
            rate: doc.f64("beam", "taper_rate_per_m")?,
        },
        Some((other, line)) => {
            return Err(Error::Parse {
                line,
                message: format!("`taper` must be none, linear or exponential, got `{other}`"),
            })
        }
    };
    let beam = CouplingBeam {
        peak_amplitude: doc.f64("beam", "peak_amplitude_v_per_m")?,
        profile,
        center_x: doc.f64("beam", "center_x_m")?,
        taper,
    };

    let grid = Grid {
        x_min: doc.f64("grid", "x_min_m")?,
        x_max: doc.f64("grid", "x_max_m")?,
        nx: doc.usize("grid", "nx")?,
        dz: doc.f64("grid", "dz_m")?,
        nz: doc.usize("grid", "nz")?,
    };

    let defaults = SolverConfig::default();
    let mode = match doc
        .get("solver", "mode")
        .map(|e| (e.value.as_str(), e.line))
    {
        None => defaults.mode,
        Some(("full_chi", _)) => SolverMode::FullChi,
        Some(("cubic_nlse", _)) => SolverMode::CubicNlse,
        Some((other, line)) => {
            return Err(Error::Parse {
                line,
                message: format!("`mode` must be full_chi or cubic_nlse, got `{other}`"),
            })
        }
    };
    let peak_rate = match doc.get("solver", "sponge_rate_per_m") {
        None => None,
        Some(e) if e.value == "auto" => None,
        Some(e) => Some(parse_f64(&e.value, e.line, "sponge_rate_per_m")?),
    };
    let regime_override = match doc.get("solver", "regime_override") {
        None => defaults.regime_override,
        Some(e) => match e.value.as_str() {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Parse {
                    line: e.line,
                    message: format!("`regime_override` must be true or false, got `{other}`"),
                })
            }
        },
    };
    let solver = SolverConfig {
        mode,
        sponge: Sponge {
            fraction: doc.f64_or("solver", "sponge_fraction", defaults.sponge.fraction)?,
            peak_rate,
        },
        corrector_iterations: doc.usize_or(
            "solver",
            "corrector_iterations",
            defaults.corrector_iterations,
        )?,
        snapshot_stride: doc.usize_or("solver", "snapshot_stride", defaults.snapshot_stride)?,
        regime_override,
        dominance: doc.f64_or("solver", "dominance", defaults.dominance)?,
    };

    let pd = PeakSettings::default();
    let peaks = PeakSettings {
        relative_height: doc.f64_or("diagnostics", "peak_relative_height", pd.relative_height)?,
        min_separation: doc.usize_or("diagnostics", "peak_min_separation", pd.min_separation)?,
        smoothing: doc.usize_or("diagnostics", "peak_smoothing", pd.smoothing)?,
        persistence: doc.usize_or("diagnostics", "split_persistence", pd.persistence)?,
    };

    let mut outputs = Vec::new();
    for ((section, k), e) in &doc.entries {
        if section == "output" {
            if let Some(kind) = OutputKind::from_key(k) {
                outputs.push(OutputSpec {
                    kind,
                    path: PathBuf::from(&e.value),
                });
            }
        }
    }
    outputs.sort_by_key(|o| doc.line_of("output", o.kind.key()));

    let config = ScenarioConfig {
        atomic,
        beam,
        probe,
        lambda_p,
        grid,
        solver,
        peaks,
        outputs,
    };
    config.validate().map_err(|e| at_any_field(&doc, e))?;
    Ok(config)
}

/// Reads a configuration file; a relative `profile_csv` is resolved against
/// the file's directory.
pub fn load_scenario(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut config = parse_scenario(&text)?;
    if let ProbeSource::Profile(p) = &mut config.probe {
        if p.is_relative() {
            if let Some(dir) = path.parent() {
                *p = dir.join(&*p);
            }
        }
    }
    Ok(config)
}

/// Config key holding each validated field, for error line lookup.
fn field_keys() -> HashMap<&'static str, (&'static str, &'static str)> {
    HashMap::from([
        ("n", ("atomic", "density_per_m3")),
        ("mu13", ("atomic", "mu13_c_m")),
        ("mu24", ("atomic", "mu24_c_m")),
        ("mu23", ("atomic", "mu23_c_m")),
        ("gamma2", ("atomic", "gamma2_per_s")),
        ("gamma3", ("atomic", "gamma3_per_s")),
        ("gamma4", ("atomic", "gamma4_per_s")),
        ("delta13", ("atomic", "delta13_per_s")),
        ("delta23", ("atomic", "delta23_per_s")),
        ("delta24", ("atomic", "delta24_per_s")),
        ("lambda_p", ("probe", "lambda_p_m")),
        ("m", ("probe", "eigenvalue")),
        ("transverse_velocity", ("probe", "transverse_velocity")),
        ("peak_amplitude", ("beam", "peak_amplitude_v_per_m")),
        ("waist", ("beam", "waist_m")),
        ("center_x", ("beam", "center_x_m")),
        ("taper_rate", ("beam", "taper_rate_per_m")),
        ("x_min", ("grid", "x_min_m")),
        ("x_max", ("grid", "x_max_m")),
        ("nx", ("grid", "nx")),
        ("dz", ("grid", "dz_m")),
        ("nz", ("grid", "nz")),
        ("sponge_fraction", ("solver", "sponge_fraction")),
        ("sponge_rate", ("solver", "sponge_rate_per_m")),
        ("corrector_iterations", ("solver", "corrector_iterations")),
        ("snapshot_stride", ("solver", "snapshot_stride")),
        ("dominance", ("solver", "dominance")),
        ("relative_height", ("diagnostics", "peak_relative_height")),
        ("smoothing", ("diagnostics", "peak_smoothing")),
    ])
}

fn at_field(doc: &Document, _section: &str, e: Error) -> Error {
    at_any_field(doc, e)
}

fn at_any_field(doc: &Document, e: Error) -> Error {
    match e {
        Error::Domain { field, reason } => {
            let line = field_keys()
                .get(field)
                .map_or(doc.last_line, |(s, k)| doc.line_of(s, k));
            let name = field_keys().get(field).map_or(field, |(_, k)| *k);
            Error::Parse {
                line,
                message: format!("invalid `{name}`: {reason}"),
            }
        }
        Error::Config(message) => Error::Parse {
            line: doc.last_line,
            message,
        },
        other => other,
    }
}

/// Renders a configuration in the format accepted by [`parse_scenario`].
/// Floating-point values use the shortest exact representation, so the
/// result parses back to an identical configuration.
pub fn render_scenario(config: &ScenarioConfig) -> String {
    let mut s = String::new();
    let a = &config.atomic;
    let _ = writeln!(s, "[meta]\nversion = {VERSION}\n");
    let _ = writeln!(s, "[atomic]");
    for (k, v) in [
        ("density_per_m3", a.n),
        ("mu13_c_m", a.mu13),
        ("mu24_c_m", a.mu24),
        ("mu23_c_m", a.mu23),
        ("gamma2_per_s", a.gamma2),
        ("gamma3_per_s", a.gamma3),
        ("gamma4_per_s", a.gamma4),
        ("delta13_per_s", a.delta13),
        ("delta23_per_s", a.delta23),
        ("delta24_per_s", a.delta24),
    ] {
        let _ = writeln!(s, "{k} = {v:?}");
    }

    let _ = writeln!(s, "\n[probe]\nlambda_p_m = {:?}", config.lambda_p);
    match &config.probe {
        ProbeSource::Soliton(spec) => {
            let _ = writeln!(s, "source = soliton");
            let _ = writeln!(s, "eigenvalue = {:?}", spec.m);
            let _ = writeln!(s, "order = {}", spec.order.number());
            let _ = writeln!(s, "center_x_m = {:?}", spec.center_x);
            let _ = writeln!(s, "transverse_velocity = {:?}", spec.transverse_velocity);
        }
        ProbeSource::Profile(path) => {
            let _ = writeln!(s, "source = profile\nprofile_csv = {}", path.display());
        }
    }

    let b = &config.beam;
    let _ = writeln!(s, "\n[beam]");
    match b.profile {
        TransverseProfile::Gaussian { waist } => {
            let _ = writeln!(s, "profile = gaussian\nwaist_m = {waist:?}");
        }
        TransverseProfile::Uniform => {
            let _ = writeln!(s, "profile = uniform");
        }
    }
    let _ = writeln!(s, "peak_amplitude_v_per_m = {:?}", b.peak_amplitude);
    let _ = writeln!(s, "center_x_m = {:?}", b.center_x);
    match b.taper {
        Taper::None => {
            let _ = writeln!(s, "taper = none");
        }
        Taper::Linear { rate } => {
            let _ = writeln!(s, "taper = linear\ntaper_rate_per_m = {rate:?}");
        }
        Taper::Exponential { rate } => {
            let _ = writeln!(s, "taper = exponential\ntaper_rate_per_m = {rate:?}");
        }
    }

    let g = &config.grid;
    let _ = writeln!(
        s,
        "\n[grid]\nx_min_m = {:?}\nx_max_m = {:?}\nnx = {}\ndz_m = {:?}\nnz = {}",
        g.x_min, g.x_max, g.nx, g.dz, g.nz
    );

    let v = &config.solver;
    let mode = match v.mode {
        SolverMode::FullChi => "full_chi",
        SolverMode::CubicNlse => "cubic_nlse",
    };
    let _ = writeln!(s, "\n[solver]\nmode = {mode}");
    let _ = writeln!(s, "sponge_fraction = {:?}", v.sponge.fraction);
    match v.sponge.peak_rate {
        Some(r) => {
            let _ = writeln!(s, "sponge_rate_per_m = {r:?}");
        }
        None => {
            let _ = writeln!(s, "sponge_rate_per_m = auto");
        }
    }
    let _ = writeln!(s, "corrector_iterations = {}", v.corrector_iterations);
    let _ = writeln!(s, "snapshot_stride = {}", v.snapshot_stride);
    let _ = writeln!(s, "regime_override = {}", v.regime_override);
    let _ = writeln!(s, "dominance = {:?}", v.dominance);

    let p = &config.peaks;
    let _ = writeln!(
        s,
        "\n[diagnostics]\npeak_relative_height = {:?}\npeak_min_separation = {}\npeak_smoothing = {}\nsplit_persistence = {}",
        p.relative_height, p.min_separation, p.smoothing, p.persistence
    );

    if !config.outputs.is_empty() {
        let _ = writeln!(s, "\n[output]");
        for o in &config.outputs {
            let _ = writeln!(s, "{} = {}", o.kind.key(), o.path.display());
        }
    }
    s
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: SolverMode::FullChi,
            sponge: Sponge {
                fraction: 0.1,
                peak_rate: None,
            },
            corrector_iterations: 2,
            snapshot_stride: 10,
            regime_override: false,
            dominance: DEFAULT_DOMINANCE,
        }
    }
}
