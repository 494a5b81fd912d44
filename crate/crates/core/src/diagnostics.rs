//! Observables extracted from field snapshots and whole trajectories.

use num_complex::Complex64;

use crate::propagator::{FieldState, Trajectory};

/// Thresholds for peak counting and split detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakSettings {
    /// Minimum height of a counted maximum relative to the global peak.
    pub relative_height: f64,
    /// Minimum separation between counted maxima, grid points.
    pub min_separation: usize,
    /// Moving-average window applied before peak search, grid points (odd).
    pub smoothing: usize,
    /// Consecutive snapshots with ≥ 2 peaks required to report a split.
    pub persistence: usize,
}

impl Default for PeakSettings {
    fn default() -> Self {
        PeakSettings {
            relative_height: 0.1,
            min_separation: 5,
            smoothing: 3,
            persistence: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotMetrics {
    /// m.
    pub z: f64,
    /// `∫|E|² dx`, (V/m)²·m.
    pub power: f64,
    /// V/m.
    pub peak_amplitude: f64,
    /// m.
    pub peak_x: f64,
    /// Intensity-weighted mean position, m.
    pub centroid_x: f64,
    /// Amplitude FWHM around the global peak, m. `None` for an all-zero field.
    pub fwhm: Option<f64>,
    pub n_peaks: usize,
}

impl SnapshotMetrics {
    pub fn is_zero_field(&self) -> bool {
        self.peak_amplitude == 0.0
    }
}

/// One resolved local maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    /// Sub-grid position from a parabolic fit, m.
    pub x: f64,
    pub amplitude: f64,
    /// FWHM relative to this peak's own height, bounded by neighbouring minima.
    pub fwhm: f64,
}

pub fn amplitudes(envelope: &[Complex64]) -> Vec<f64> {
    envelope.iter().map(|e| e.norm()).collect()
}

pub fn metrics(
    state: &FieldState,
    x_min: f64,
    dx: f64,
    settings: &PeakSettings,
) -> SnapshotMetrics {
    let amp = amplitudes(&state.envelope);
    let intensity: Vec<f64> = state.envelope.iter().map(|e| e.norm_sqr()).collect();
    let power = trapezoid(&intensity, dx);

    let (peak_index, peak_amplitude) = amp.iter().copied().enumerate().fold(
        (0, 0.0),
        |best, (i, a)| if a > best.1 { (i, a) } else { best },
    );

    if peak_amplitude == 0.0 {
        return SnapshotMetrics {
            z: state.z,
            power: 0.0,
            peak_amplitude: 0.0,
            peak_x: 0.0,
            centroid_x: 0.0,
            fwhm: None,
            n_peaks: 0,
        };
    }

    let weight: f64 = intensity.iter().sum();
    let centroid_index = intensity
        .iter()
        .enumerate()
        .map(|(i, w)| i as f64 * w)
        .sum::<f64>()
        / weight;

    let (left, right) =
        half_max_crossings(&amp, peak_index, 0.5 * peak_amplitude, 0, amp.len() - 1);

    SnapshotMetrics {
        z: state.z,
        power,
        peak_amplitude,
        peak_x: x_min + dx * refine_peak(&amp, peak_index),
        centroid_x: x_min + dx * centroid_index,
        fwhm: Some((right - left) * dx),
        n_peaks: find_peaks(&amp, settings).len(),
    }
}

fn trapezoid(values: &[f64], dx: f64) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => 0.0,
        n => dx * (values.iter().sum::<f64>() - 0.5 * (values[0] + values[n - 1])),
    }
}

/// Fractional indices where `amp` falls through `level` on either side of
/// `peak`, searching no further than `lo`/`hi`.
fn half_max_crossings(amp: &[f64], peak: usize, level: f64, lo: usize, hi: usize) -> (f64, f64) {
    let mut left = lo as f64;
    let mut i = peak;
    while i > lo {
        if amp[i - 1] < level {
            let t = (amp[i] - level) / (amp[i] - amp[i - 1]);
            left = i as f64 - t;
            break;
        }
        i -= 1;
    }
    let mut right = hi as f64;
    let mut i = peak;
    while i < hi {
        if amp[i + 1] < level {
            let t = (amp[i] - level) / (amp[i] - amp[i + 1]);
            right = i as f64 + t;
            break;
        }
        i += 1;
    }
    (left, right)
}

fn refine_peak(amp: &[f64], i: usize) -> f64 {
    if i == 0 || i + 1 >= amp.len() {
        return i as f64;
    }
    let (a, b, c) = (amp[i - 1], amp[i], amp[i + 1]);
    let curvature = a - 2.0 * b + c;
    if curvature >= 0.0 {
        return i as f64;
    }
    i as f64 + 0.5 * (a - c) / curvature
}

fn smooth(amp: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    if half == 0 {
        return amp.to_vec();
    }
    let n = amp.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            amp[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

/// Indices of significant local maxima, in ascending position order.
pub fn find_peaks(amp: &[f64], settings: &PeakSettings) -> Vec<usize> {
    let s = smooth(amp, settings.smoothing);
    let n = s.len();
    let top = s.iter().copied().fold(0.0, f64::max);
    if top == 0.0 || n < 3 {
        return Vec::new();
    }
    let threshold = settings.relative_height * top;

    let mut candidates: Vec<usize> = (1..n - 1)
        .filter(|&i| s[i] >= threshold && s[i] > s[i - 1] && s[i] >= s[i + 1])
        .collect();
    candidates.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));

    let mut accepted: Vec<usize> = Vec::new();
    for c in candidates {
        if accepted
            .iter()
            .all(|&a| a.abs_diff(c) >= settings.min_separation)
        {
            accepted.push(c);
        }
    }
    accepted.sort_unstable();
    accepted
}

/// Resolves each significant maximum with its own amplitude FWHM.
pub fn resolve_peaks(
    state: &FieldState,
    x_min: f64,
    dx: f64,
    settings: &PeakSettings,
) -> Vec<Peak> {
    let amp = amplitudes(&state.envelope);
    let idx = find_peaks(&amp, settings);
    let mut peaks = Vec::with_capacity(idx.len());
    for (k, &i) in idx.iter().enumerate() {
        // The smoothed maximum can sit one point off the raw one.
        let i = [i.saturating_sub(1), i, (i + 1).min(amp.len() - 1)]
            .into_iter()
            .max_by(|&a, &b| amp[a].total_cmp(&amp[b]))
            .unwrap_or(i);
        let lo = if k == 0 {
            0
        } else {
            argmin(&amp, idx[k - 1], i)
        };
        let hi = if k + 1 == idx.len() {
            amp.len() - 1
        } else {
            argmin(&amp, i, idx[k + 1])
        };
        let (l, r) = half_max_crossings(&amp, i, 0.5 * amp[i], lo, hi);
        peaks.push(Peak {
            index: i,
            x: x_min + dx * refine_peak(&amp, i),
            amplitude: amp[i],
            fwhm: (r - l) * dx,
        });
    }
    peaks
}

fn argmin(amp: &[f64], a: usize, b: usize) -> usize {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (lo..=hi)
        .min_by(|&i, &j| amp[i].total_cmp(&amp[j]))
        .unwrap_or(lo)
}

/// First `z` at which at least two peaks persist for `settings.persistence`
/// consecutive snapshots.
pub fn split_detected(traj: &Trajectory, settings: &PeakSettings) -> Option<f64> {
    let need = settings.persistence.max(1);
    let mut run = 0;
    for (k, m) in traj.metrics.iter().enumerate() {
        if m.n_peaks >= 2 {
            run += 1;
            if run == need {
                return Some(traj.metrics[k + 1 - need].z);
            }
        } else {
            run = 0;
        }
    }
    None
}

const TURNING_WINDOW: usize = 5;

/// Positions `z` where the smoothed centroid velocity changes sign.
pub fn turning_points(traj: &Trajectory) -> Vec<f64> {
    let m = &traj.metrics;
    if m.len() < TURNING_WINDOW + 1 {
        return Vec::new();
    }
    let half = TURNING_WINDOW / 2;
    let smoothed: Vec<(f64, f64)> = (half..m.len() - half)
        .map(|k| {
            let c = m[k - half..=k + half]
                .iter()
                .map(|s| s.centroid_x)
                .sum::<f64>()
                / TURNING_WINDOW as f64;
            (m[k].z, c)
        })
        .collect();

    let z_span = (m[m.len() - 1].z - m[0].z).abs();
    let x_span = traj.dx * traj.nx.saturating_sub(1) as f64;
    let floor = if z_span > 0.0 {
        1e-9 * x_span / z_span
    } else {
        0.0
    };

    let mut turns = Vec::new();
    let mut last_sign = 0.0;
    for w in smoothed.windows(2) {
        let dz = w[1].0 - w[0].0;
        if dz == 0.0 {
            continue;
        }
        let v = (w[1].1 - w[0].1) / dz;
        if v.abs() <= floor {
            continue;
        }
        let sign = v.signum();
        if last_sign != 0.0 && sign != last_sign {
            turns.push(w[0].0);
        }
        last_sign = sign;
    }
    turns
}

/// Mean spacing in `z` between successive maxima of the peak amplitude,
/// each located by a parabolic fit. `None` with fewer than two maxima.
pub fn breathing_period(traj: &Trajectory) -> Option<f64> {
    let m = &traj.metrics;
    let maxima: Vec<f64> = (1..m.len().saturating_sub(1))
        .filter(|&k| {
            m[k].peak_amplitude > m[k - 1].peak_amplitude
                && m[k].peak_amplitude >= m[k + 1].peak_amplitude
        })
        .map(|k| {
            let (a, b, c) = (
                m[k - 1].peak_amplitude,
                m[k].peak_amplitude,
                m[k + 1].peak_amplitude,
            );
            let curvature = a - 2.0 * b + c;
            let shift = if curvature != 0.0 {
                0.5 * (a - c) / curvature
            } else {
                0.0
            };
            m[k].z + shift * (m[k + 1].z - m[k].z)
        })
        .collect();
    (maxima.len() >= 2).then(|| (maxima[maxima.len() - 1] - maxima[0]) / (maxima.len() - 1) as f64)
}

/// A final-snapshot peak together with its transverse drift velocity
/// (dimensionless, dx/dz) measured against an earlier snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakMotion {
    pub peak: Peak,
    pub velocity: f64,
}

/// Tracks the peaks of the last snapshot back `lookback` snapshots by
/// nearest-position matching.
pub fn final_peak_motion(
    traj: &Trajectory,
    settings: &PeakSettings,
    lookback: usize,
) -> Vec<PeakMotion> {
    let n = traj.snapshots.len();
    if n < 2 {
        return Vec::new();
    }
    let back = lookback.clamp(1, n - 1);
    let last = &traj.snapshots[n - 1];
    let earlier = &traj.snapshots[n - 1 - back];
    let now = resolve_peaks(last, traj.x_min, traj.dx, settings);
    let before = resolve_peaks(earlier, traj.x_min, traj.dx, settings);
    let dz = last.z - earlier.z;
    now.into_iter()
        .map(|p| {
            let velocity = before
                .iter()
                .min_by(|a, b| (a.x - p.x).abs().total_cmp(&(b.x - p.x).abs()))
                .map(|q| (p.x - q.x) / dz)
                .unwrap_or(0.0);
            PeakMotion { peak: p, velocity }
        })
        .collect()
}
