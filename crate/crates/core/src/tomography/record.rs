//! Measurement settings and (simulated) coincidence-count records.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::qcore::{c64, kron_all, ComplexMatrix};
use crate::states::DensityMatrix;

/// Identifier written to records produced by [`simulate_counts`].
pub const RNG_ALGORITHM: &str = "chacha8-poisson";
/// Identifier for records holding exact expected counts.
pub const EXACT_ALGORITHM: &str = "exact";

/// Single-photon polarization analyser states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarization {
    H,
    V,
    D,
    A,
    R,
    L,
}

impl Polarization {
    pub const ALL: [Polarization; 6] =
        [Polarization::H, Polarization::V, Polarization::D, Polarization::A, Polarization::R, Polarization::L];

    /// H = |0>, V = |1>, D/A = (H ± V)/√2, R/L = (H ± iV)/√2.
    pub fn ket(self) -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b) = match self {
            Polarization::H => (c64(1.0, 0.0), c64(0.0, 0.0)),
            Polarization::V => (c64(0.0, 0.0), c64(1.0, 0.0)),
            Polarization::D => (c64(s, 0.0), c64(s, 0.0)),
            Polarization::A => (c64(s, 0.0), c64(-s, 0.0)),
            Polarization::R => (c64(s, 0.0), c64(0.0, s)),
            Polarization::L => (c64(s, 0.0), c64(0.0, -s)),
        };
        ComplexMatrix::column(&[a, b])
    }

    pub fn label(self) -> char {
        match self {
            Polarization::H => 'H',
            Polarization::V => 'V',
            Polarization::D => 'D',
            Polarization::A => 'A',
            Polarization::R => 'R',
            Polarization::L => 'L',
        }
    }

    pub fn from_label(c: char) -> Result<Self> {
        Ok(match c.to_ascii_uppercase() {
            'H' => Polarization::H,
            'V' => Polarization::V,
            'D' => Polarization::D,
            'A' => Polarization::A,
            'R' => Polarization::R,
            'L' => Polarization::L,
            other => return Err(Error::Parse(format!("unknown polarization label '{other}'"))),
        })
    }
}

/// One analyser setting per photon; the projector is the tensor product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasurementSetting(pub Vec<Polarization>);

impl MeasurementSetting {
    pub fn qubits(&self) -> usize {
        self.0.len()
    }

    pub fn ket(&self) -> ComplexMatrix {
        let kets: Vec<ComplexMatrix> = self.0.iter().map(|p| p.ket()).collect();
        let refs: Vec<&ComplexMatrix> = kets.iter().collect();
        kron_all(&refs)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.ket())
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            f.write_char(p.label())?;
        }
        Ok(())
    }
}

impl FromStr for MeasurementSetting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty measurement setting".into()));
        }
        s.chars().map(Polarization::from_label).collect::<Result<Vec<_>>>().map(MeasurementSetting)
    }
}

/// The six single-photon analyser states.
pub fn single_qubit_settings() -> Vec<MeasurementSetting> {
    Polarization::ALL.iter().map(|&p| MeasurementSetting(vec![p])).collect()
}

/// All 36 products of the six analyser states.
pub fn two_qubit_settings() -> Vec<MeasurementSetting> {
    let mut out = Vec::with_capacity(36);
    for &a in &Polarization::ALL {
        for &b in &Polarization::ALL {
            out.push(MeasurementSetting(vec![a, b]));
        }
    }
    out
}

/// The 16-setting two-photon sequence commonly used in polarization
/// tomography.
pub fn two_qubit_minimal_settings() -> Vec<MeasurementSetting> {
    ["HH", "HV", "VV", "VH", "RH", "RV", "DV", "DH", "DR", "DD", "RD", "HD", "VD", "VL", "HL", "RL"]
        .iter()
        .map(|s| s.parse().expect("static labels"))
        .collect()
}

/// The default informationally complete set for `qubits` photons (1 or 2).
pub fn standard_settings(qubits: usize) -> Result<Vec<MeasurementSetting>> {
    match qubits {
        1 => Ok(single_qubit_settings()),
        2 => Ok(two_qubit_settings()),
        n => Err(Error::Dimension(format!("no standard setting set for {n} qubits"))),
    }
}

/// Counts for each setting, all taken with the same expected total
/// `total_per_setting` (the count a setting would see if its projector
/// had unit probability).
#[derive(Clone, Debug, PartialEq)]
pub struct TomographyRecord {
    pub settings: Vec<MeasurementSetting>,
    pub total_per_setting: f64,
    /// Nonnegative; integer-valued for sampled records, exact expectations
    /// for noiseless ones.
    pub counts: Vec<f64>,
    pub seed: u64,
    pub algorithm: String,
}

impl TomographyRecord {
    pub fn new(
        settings: Vec<MeasurementSetting>,
        total_per_setting: f64,
        counts: Vec<f64>,
        seed: u64,
        algorithm: impl Into<String>,
    ) -> Result<Self> {
        if settings.is_empty() {
            return Err(Error::Dimension("record has no settings".into()));
        }
        if counts.len() != settings.len() {
            return Err(Error::Dimension(format!("{} counts for {} settings", counts.len(), settings.len())));
        }
        let qubits = settings[0].qubits();
        if qubits == 0 || settings.iter().any(|s| s.qubits() != qubits) {
            return Err(Error::Dimension("settings address different numbers of photons".into()));
        }
        if !(total_per_setting > 0.0 && total_per_setting.is_finite()) {
            return Err(Error::Domain(format!("total per setting {total_per_setting} must be positive")));
        }
        if let Some(bad) = counts.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(Error::Domain(format!("count {bad} is not a nonnegative number")));
        }
        Ok(Self { settings, total_per_setting, counts, seed, algorithm: algorithm.into() })
    }

    pub fn qubits(&self) -> usize {
        self.settings[0].qubits()
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.counts.iter().map(|c| c / self.total_per_setting).collect()
    }

    /// Plain-text form: `#` header lines with `key = value`, then one
    /// `LABELS COUNT` line per setting.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# tomography record\n");
        let _ = writeln!(out, "# total_per_setting = {}", self.total_per_setting);
        let _ = writeln!(out, "# seed = {}", self.seed);
        let _ = writeln!(out, "# algorithm = {}", self.algorithm);
        for (s, c) in self.settings.iter().zip(&self.counts) {
            if c.fract() == 0.0 && *c < 1e15 {
                let _ = writeln!(out, "{s} {}", *c as u64);
            } else {
                let _ = writeln!(out, "{s} {c:e}");
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut total = None;
        let mut seed = 0;
        let mut algorithm = String::from("unknown");
        let mut settings = Vec::new();
        let mut counts = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                if let Some((key, value)) = header.split_once('=') {
                    let value = value.trim();
                    match key.trim() {
                        "total_per_setting" => {
                            total = Some(value.parse::<f64>().map_err(|e| Error::Parse(format!("total_per_setting: {e}")))?)
                        }
                        "seed" => seed = value.parse().map_err(|e| Error::Parse(format!("seed: {e}")))?,
                        "algorithm" => algorithm = value.to_string(),
                        _ => {}
                    }
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(label), Some(count), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse(format!("line {}: expected `LABELS COUNT`", lineno + 1)));
            };
            settings.push(label.parse()?);
            counts.push(count.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?);
        }
        let total = total.ok_or_else(|| Error::Parse("missing `# total_per_setting = ...` header".into()))?;
        Self::new(settings, total, counts, seed, algorithm)
    }
}

fn check_settings(rho: &DensityMatrix, settings: &[MeasurementSetting]) -> Result<()> {
    if let Some(s) = settings.iter().find(|s| 1usize << s.qubits() != rho.dim()) {
        return Err(Error::Dimension(format!("setting {s} does not match a {}-dimensional state", rho.dim())));
    }
    Ok(())
}

/// Poisson-distributed counts with mean `total_per_setting · Tr(P rho)` per
/// setting, from a ChaCha8 stream seeded with `seed`.
pub fn simulate_counts(
    rho: &DensityMatrix,
    settings: &[MeasurementSetting],
    total_per_setting: f64,
    seed: u64,
) -> Result<TomographyRecord> {
    check_settings(rho, settings)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = Vec::with_capacity(settings.len());
    for s in settings {
        let mean = total_per_setting * rho.probability(&s.projector());
        let n = if mean > 0.0 {
            let dist = Poisson::new(mean).map_err(|e| Error::Numeric(format!("Poisson mean {mean}: {e}")))?;
            dist.sample(&mut rng)
        } else {
            0.0
        };
        counts.push(n);
    }
    TomographyRecord::new(settings.to_vec(), total_per_setting, counts, seed, RNG_ALGORITHM)
}

/// Noise-free record holding the exact expected counts.
pub fn expected_counts(
    rho: &DensityMatrix,
    settings: &[MeasurementSetting],
    total_per_setting: f64,
) -> Result<TomographyRecord> {
    check_settings(rho, settings)?;
    let counts = settings.iter().map(|s| total_per_setting * rho.probability(&s.projector())).collect();
    TomographyRecord::new(settings.to_vec(), total_per_setting, counts, 0, EXACT_ALGORITHM)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::inner;

    #[test]
    fn analyser_kets_pair_up_orthogonally() {
        use Polarization::*;
        for (a, b) in [(H, V), (D, A), (R, L)] {
            assert!(inner(&a.ket(), &b.ket()).norm() < 1e-15);
        }
        for p in Polarization::ALL {
            assert_eq!(Polarization::from_label(p.label()).unwrap(), p);
        }
        assert!(Polarization::from_label('X').is_err());
    }

    #[test]
    fn setting_sets_have_expected_sizes() {
        assert_eq!(single_qubit_settings().len(), 6);
        assert_eq!(two_qubit_settings().len(), 36);
        assert_eq!(two_qubit_minimal_settings().len(), 16);
        assert!(standard_settings(3).is_err());
    }

    #[test]
    fn basis_state_counts() {
        let rho = DensityMatrix::new(ComplexMatrix::diag_real(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let settings: Vec<MeasurementSetting> = ["HH", "VV"].iter().map(|s| s.parse().unwrap()).collect();
        let exact = expected_counts(&rho, &settings, 1e4).unwrap();
        assert_eq!(exact.counts, vec![1e4, 0.0]);
        let sampled = simulate_counts(&rho, &settings, 1e4, 3).unwrap();
        assert_eq!(sampled.counts[1], 0.0);
        assert!((sampled.counts[0] - 1e4).abs() < 5.0 * 100.0);
    }

    #[test]
    fn seeded_runs_repeat() {
        let rho = DensityMatrix::maximally_mixed(4);
        let s = two_qubit_settings();
        let a = simulate_counts(&rho, &s, 1e4, 42).unwrap();
        let b = simulate_counts(&rho, &s, 1e4, 42).unwrap();
        let c = simulate_counts(&rho, &s, 1e4, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.counts, c.counts);
        assert!(a.counts.iter().all(|x| x.fract() == 0.0));
    }

    #[test]
    fn poisson_mean_within_three_sigma() {
        // Probability of D for |0><0| is 1/2, so the mean is 50 per draw.
        let rho = DensityMatrix::new(ComplexMatrix::diag_real(&[1.0, 0.0])).unwrap();
        let settings = vec![MeasurementSetting(vec![Polarization::D])];
        let mean_per_draw = 50.0;
        let draws = 1000;
        let total: f64 =
            (0..draws).map(|seed| simulate_counts(&rho, &settings, 100.0, seed).unwrap().counts[0]).sum();
        let sample_mean = total / draws as f64;
        let sigma = (mean_per_draw / draws as f64).sqrt();
        assert!((sample_mean - mean_per_draw).abs() < 3.0 * sigma, "mean {sample_mean}");
    }

    #[test]
    fn text_round_trip() {
        let rho = DensityMatrix::maximally_mixed(4);
        let rec = simulate_counts(&rho, &two_qubit_minimal_settings(), 1e4, 7).unwrap();
        let text = rec.to_text();
        assert!(text.lines().any(|l| l.starts_with("HH ")));
        assert_eq!(TomographyRecord::from_text(&text).unwrap(), rec);

        let exact = expected_counts(&DensityMatrix::maximally_mixed(2), &single_qubit_settings(), 3.0).unwrap();
        assert_eq!(TomographyRecord::from_text(&exact.to_text()).unwrap(), exact);
    }

    #[test]
    fn malformed_records() {
        assert!(TomographyRecord::from_text("HH 3\n").is_err());
        assert!(TomographyRecord::from_text("# total_per_setting = 10\nHH\n").is_err());
        assert!(TomographyRecord::from_text("# total_per_setting = 10\nHQ 4\n").is_err());
        assert!(TomographyRecord::from_text("# total_per_setting = 10\nHH -4\n").is_err());
        assert!(TomographyRecord::from_text("# total_per_setting = 10\nHH 4\nH 3\n").is_err());
    }

    #[test]
    fn mismatched_dimension() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(simulate_counts(&rho, &two_qubit_settings(), 10.0, 0).is_err());
    }
}
