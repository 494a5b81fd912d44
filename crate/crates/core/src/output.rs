//! Artifact writers and the field-dump reader.
//!
//! Field dump layout (little-endian):
//!
//! | bytes | content |
//! |---|---|
//! | 12 | magic `EITSOLFIELD\0` |
//! | 4 | `u32` format version |
//! | 8 | `u64` nx |
//! | 8 | `u64` snapshot count |
//! | 8 | `f64` x_min (m) |
//! | 8 | `f64` dx (m) |
//! | 8 | `f64` snapshot spacing in z (m) |
//! | 16·nx per snapshot | interleaved `(re, im)` `f64` in V/m |

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::diagnostics::SnapshotMetrics;
use crate::error::{Error, Result};
use crate::propagator::{FieldState, Trajectory};
use crate::scenario::{render_scenario, OutputKind, OutputSpec, ScenarioConfig};
use crate::units::NormalizationUnits;
use crate::waveguide::susceptibility_profile;

pub const FIELD_MAGIC: &[u8; 12] = b"EITSOLFIELD\0";
pub const FIELD_VERSION: u32 = 1;
pub const FIELD_HEADER_BYTES: usize = 16 + 40;

pub const METRICS_HEADER: &str = "z,power,peak,peak_x,centroid,fwhm,n_peaks";
pub const CHI_HEADER: &str = "x,re_chi1,im_chi1,re_chi3,im_chi3";

/// Default sidecar file name placed next to the other outputs.
pub const SIDECAR_NAME: &str = "scenario.cfg";

fn sig9(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.8e}")
    } else {
        "nan".to_string()
    }
}

pub fn write_metrics_csv<W: Write>(mut w: W, metrics: &[SnapshotMetrics]) -> std::io::Result<()> {
    writeln!(w, "{METRICS_HEADER}")?;
    for m in metrics {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            sig9(m.z),
            sig9(m.power),
            sig9(m.peak_amplitude),
            sig9(m.peak_x),
            sig9(m.centroid_x),
            m.fwhm.map(sig9).unwrap_or_else(|| "nan".into()),
            m.n_peaks
        )?;
    }
    Ok(())
}

pub fn write_field_binary<W: Write>(mut w: W, traj: &Trajectory) -> std::io::Result<()> {
    w.write_all(FIELD_MAGIC)?;
    w.write_all(&FIELD_VERSION.to_le_bytes())?;
    w.write_all(&(traj.nx as u64).to_le_bytes())?;
    w.write_all(&(traj.snapshots.len() as u64).to_le_bytes())?;
    w.write_all(&traj.x_min.to_le_bytes())?;
    w.write_all(&traj.dx.to_le_bytes())?;
    w.write_all(&traj.dz_snapshot.to_le_bytes())?;
    for s in &traj.snapshots {
        for c in &s.envelope {
            w.write_all(&c.re.to_le_bytes())?;
            w.write_all(&c.im.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Contents of a field dump.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDump {
    pub x_min: f64,
    pub dx: f64,
    pub dz_snapshot: f64,
    pub nx: usize,
    /// Snapshot `k` sits at `z = k·dz_snapshot`.
    pub snapshots: Vec<Vec<Complex64>>,
}

impl FieldDump {
    pub fn states(&self) -> Vec<FieldState> {
        self.snapshots
            .iter()
            .enumerate()
            .map(|(k, env)| FieldState {
                z: k as f64 * self.dz_snapshot,
                envelope: env.clone(),
            })
            .collect()
    }
}

pub fn parse_field_binary(bytes: &[u8]) -> Result<FieldDump> {
    if bytes.len() < FIELD_HEADER_BYTES {
        return Err(Error::Format(format!(
            "{} bytes is shorter than the header",
            bytes.len()
        )));
    }
    if &bytes[..12] != FIELD_MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(12);
    if version != FIELD_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let nx = u64_at(16) as usize;
    let count = u64_at(24) as usize;
    let expected = nx
        .checked_mul(count)
        .and_then(|n| n.checked_mul(16))
        .and_then(|n| n.checked_add(FIELD_HEADER_BYTES))
        .ok_or_else(|| Error::Format("size overflow".into()))?;
    if bytes.len() != expected {
        return Err(Error::Format(format!(
            "expected {expected} bytes for {count} snapshots of {nx} points, found {}",
            bytes.len()
        )));
    }
    let mut snapshots = Vec::with_capacity(count);
    let mut o = FIELD_HEADER_BYTES;
    for _ in 0..count {
        let mut env = Vec::with_capacity(nx);
        for _ in 0..nx {
            env.push(Complex64::new(f64_at(o), f64_at(o + 8)));
            o += 16;
        }
        snapshots.push(env);
    }
    Ok(FieldDump {
        x_min: f64_at(32),
        dx: f64_at(40),
        dz_snapshot: f64_at(48),
        nx,
        snapshots,
    })
}

pub fn read_field_binary(path: &Path) -> Result<FieldDump> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    parse_field_binary(&bytes)
}

/// Writes χ⁽¹⁾, χ⁽³⁾ across the grid at z = 0 in normalized units.
pub fn write_chi_csv<W: Write>(mut w: W, scenario: &ScenarioConfig, xs: &[f64]) -> Result<()> {
    let units = NormalizationUnits::derive(&scenario.atomic, scenario.lambda_p)?;
    let prof =
        susceptibility_profile(&scenario.atomic, &scenario.beam, xs, 0.0)?.normalized(&units);
    let io = |e| Error::Format(format!("writing chi profile: {e}"));
    writeln!(w, "{CHI_HEADER}").map_err(io)?;
    for ((x, c1), c3) in xs.iter().zip(&prof.chi1).zip(&prof.chi3) {
        writeln!(
            w,
            "{},{},{},{},{}",
            sig9(*x),
            sig9(c1.re),
            sig9(c1.im),
            sig9(c3.re),
            sig9(c3.im)
        )
        .map_err(io)?;
    }
    Ok(())
}

fn resolve(dir: Option<&Path>, path: &Path) -> PathBuf {
    match dir {
        Some(d) if path.is_relative() => d.join(path),
        _ => path.to_path_buf(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Writes each requested artifact; relative paths resolve against `dir`.
/// Returns the paths written.
pub fn write_outputs(
    traj: &Trajectory,
    scenario: &ScenarioConfig,
    outputs: &[OutputSpec],
    dir: Option<&Path>,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::with_capacity(outputs.len());
    for spec in outputs {
        let path = resolve(dir, &spec.path);
        let mut w = create(&path)?;
        match spec.kind {
            OutputKind::Metrics => {
                write_metrics_csv(&mut w, &traj.metrics).map_err(|e| Error::io(&path, e))?
            }
            OutputKind::Snapshots => {
                write_field_binary(&mut w, traj).map_err(|e| Error::io(&path, e))?
            }
            OutputKind::ChiProfile => write_chi_csv(&mut w, scenario, &traj.xs())?,
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the resolved scenario as a re-parseable sidecar.
pub fn write_sidecar(scenario: &ScenarioConfig, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(render_scenario(scenario).as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(nx: usize, count: usize) -> Trajectory {
        let snapshots = (0..count)
            .map(|k| FieldState {
                z: k as f64 * 0.5,
                envelope: (0..nx)
                    .map(|i| Complex64::new(i as f64 * 1.25e-3, -(k as f64) / 3.0))
                    .collect(),
            })
            .collect();
        Trajectory {
            x_min: -1e-3,
            dx: 2e-3 / (nx - 1) as f64,
            nx,
            dz_snapshot: 0.5,
            snapshots,
            metrics: Vec::new(),
        }
    }

    #[test]
    fn binary_size_matches_layout() {
        let mut buf = Vec::new();
        write_field_binary(&mut buf, &traj(16, 1)).unwrap();
        assert_eq!(buf.len(), 16 + 40 + 16 * 16);
    }

    #[test]
    fn binary_round_trip_is_bit_exact() {
        let t = traj(16, 3);
        let mut buf = Vec::new();
        write_field_binary(&mut buf, &t).unwrap();
        let d = parse_field_binary(&buf).unwrap();
        assert_eq!(d.nx, 16);
        assert_eq!(d.x_min.to_bits(), t.x_min.to_bits());
        assert_eq!(d.dx.to_bits(), t.dx.to_bits());
        assert_eq!(d.states(), t.snapshots);
    }

    #[test]
    fn truncated_binary_is_rejected() {
        let mut buf = Vec::new();
        write_field_binary(&mut buf, &traj(16, 2)).unwrap();
        buf.pop();
        assert!(matches!(parse_field_binary(&buf), Err(Error::Format(_))));
        buf[0] = b'X';
        assert!(matches!(parse_field_binary(&buf), Err(Error::Format(_))));
    }

    #[test]
    fn metrics_use_nine_significant_digits() {
        let m = SnapshotMetrics {
            z: 1.0 / 3.0,
            power: 2.0,
            peak_amplitude: 1e-5,
            peak_x: -0.0,
            centroid_x: 0.1,
            fwhm: None,
            n_peaks: 2,
        };
        let mut buf = Vec::new();
        write_metrics_csv(&mut buf, &[m]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(row.starts_with("3.33333333e-1,2.00000000e0,"));
        assert!(row.ends_with(",nan,2"));
    }
}
