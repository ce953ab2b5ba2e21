//! Parameter sweeps, channel comparison and the tomography pipeline.
//!
//! These are the operations behind the `rsp` binary, exposed here so they
//! can be driven from code and tested without spawning a process.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::{dephased_bell, depolarized_bell, spdc_fixture, spdc_fixture_hermitized};
use crate::error::{Error, Result};
use crate::metrics::{fidelity, fidelity_dephasing_closed, fidelity_depolarizing_closed, uhlmann_fidelity};
use crate::protocol::rsp_run;
use crate::states::{bell_psi_minus, bloch_to_rho, BlochVector, DensityMatrix};
use crate::tomography::{
    expected_counts, mle_reconstruct_with, simulate_counts, standard_settings, two_qubit_minimal_settings, MleFit,
    MleOptions, EXACT_ALGORITHM, RNG_ALGORITHM,
};

/// Shared two-qubit resource.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Ideal,
    Depolarizing,
    Dephasing,
}

impl Channel {
    /// The shared state. `p` is ignored for the ideal channel.
    pub fn shared_state(self, p: f64) -> Result<DensityMatrix> {
        match self {
            Channel::Ideal => Ok(bell_psi_minus()),
            Channel::Depolarizing => depolarized_bell(p),
            Channel::Dephasing => dephased_bell(p),
        }
    }

    /// Closed-form fidelity of the prepared state with the target.
    pub fn closed_form(self, target: &BlochVector, p: f64) -> Result<f64> {
        let t = target.canonical();
        match self {
            Channel::Ideal => Ok(1.0),
            Channel::Depolarizing => fidelity_depolarizing_closed(t.r, p),
            Channel::Dephasing => fidelity_dephasing_closed(t.r, t.theta, p),
        }
    }
}

impl FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ideal" => Ok(Channel::Ideal),
            "depolarizing" | "depolarized" => Ok(Channel::Depolarizing),
            "dephasing" | "dephased" => Ok(Channel::Dephasing),
            other => Err(Error::Parse(format!("unknown channel '{other}' (ideal, depolarizing, dephasing)"))),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Ideal => "ideal",
            Channel::Depolarizing => "depolarizing",
            Channel::Dephasing => "dephasing",
        })
    }
}

/// `n` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Target states for a sweep: one of the seven named families or an
/// explicit list of `(r, theta, phi)` in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSet {
    Named(u8),
    Points(Vec<(f64, f64, f64)>),
}

impl StateSet {
    pub fn named(index: u8) -> Result<Self> {
        if (1..=7).contains(&index) {
            Ok(StateSet::Named(index))
        } else {
            Err(Error::Domain(format!("state set {index} does not exist (1-7)")))
        }
    }

    /// Grid points in sweep order. Set 5 is the single maximally mixed
    /// state; the others sample their free parameter `resolution` times.
    pub fn expand(&self, resolution: usize) -> Vec<(f64, f64, f64)> {
        let n = resolution;
        match self {
            StateSet::Points(p) => p.clone(),
            StateSet::Named(1) => linspace(0.0, PI, n).into_iter().map(|t| (1.0, t, 0.0)).collect(),
            StateSet::Named(2) => linspace(0.0, PI, n).into_iter().map(|t| (1.0, t, FRAC_PI_2)).collect(),
            StateSet::Named(3) => linspace(0.0, 2.0 * PI, n).into_iter().map(|f| (1.0, FRAC_PI_2, f)).collect(),
            StateSet::Named(4) => {
                let r = FRAC_PI_8.cos().powi(2);
                linspace(0.0, PI, n).into_iter().map(|t| (r, t, 0.0)).collect()
            }
            StateSet::Named(5) => vec![(0.0, 0.0, 0.0)],
            StateSet::Named(6) => linspace(-1.0, 1.0, n).into_iter().map(|r| (r, FRAC_PI_4, 0.0)).collect(),
            StateSet::Named(7) => linspace(-1.0, 1.0, n).into_iter().map(|r| (r, FRAC_PI_2, 0.0)).collect(),
            StateSet::Named(_) => Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    /// Bob's state is estimated by single-photon tomography with `n_counts`
    /// per setting; row `i` uses seed `seed + i`.
    MonteCarlo { n_counts: f64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub channel: Channel,
    pub p: f64,
    pub state_set: StateSet,
    pub resolution: usize,
    pub mode: Mode,
}

/// Keys accepted in a sweep config file. Angles are in degrees.
///
/// ```toml
/// channel = "dephasing"
/// p = 0.7
/// set = 1
/// resolution = 91
/// mode = "monte-carlo"
/// n_counts = 10000
/// seed = 7
/// # instead of `set`:
/// # points = [[1.0, 45.0, 0.0], [0.5, 90.0, 180.0]]
/// ```
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub channel: Option<Channel>,
    pub p: Option<f64>,
    pub set: Option<u8>,
    pub points: Option<Vec<[f64; 3]>>,
    pub resolution: Option<usize>,
    pub mode: Option<String>,
    pub n_counts: Option<f64>,
    pub seed: Option<u64>,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overridden_by(self, over: SweepConfig) -> SweepConfig {
        SweepConfig {
            channel: over.channel.or(self.channel),
            p: over.p.or(self.p),
            set: over.set.or(if over.points.is_some() { None } else { self.set }),
            points: over.points.or(if over.set.is_some() { None } else { self.points }),
            resolution: over.resolution.or(self.resolution),
            mode: over.mode.or(self.mode),
            n_counts: over.n_counts.or(self.n_counts),
            seed: over.seed.or(self.seed),
        }
    }

    /// Defaults: dephasing, p = 0.9, set 1, 91 samples, exact mode,
    /// 10^4 counts, seed 0.
    pub fn into_spec(self) -> Result<SweepSpec> {
        let channel = self.channel.unwrap_or(Channel::Dephasing);
        let p = self.p.unwrap_or(0.9);
        check_p(p)?;
        let state_set = match (self.set, self.points) {
            (Some(_), Some(_)) => return Err(Error::Parse("give either a named set or explicit points".into())),
            (Some(s), None) => StateSet::named(s)?,
            (None, Some(points)) => {
                let mut out = Vec::with_capacity(points.len());
                for [r, t, f] in points {
                    let (t, f) = (t.to_radians(), f.to_radians());
                    BlochVector::new(r, t, f)?;
                    out.push((r, t, f));
                }
                if out.is_empty() {
                    return Err(Error::Parse("empty point list".into()));
                }
                StateSet::Points(out)
            }
            (None, None) => StateSet::Named(1),
        };
        let resolution = self.resolution.unwrap_or(91);
        if resolution == 0 {
            return Err(Error::Domain("resolution must be at least 1".into()));
        }
        let mode = match self.mode.as_deref().unwrap_or("exact") {
            "exact" => Mode::Exact,
            "monte-carlo" | "montecarlo" | "mc" => {
                let n_counts = self.n_counts.unwrap_or(1e4);
                if !(n_counts > 0.0 && n_counts.is_finite()) {
                    return Err(Error::Domain(format!("n-counts {n_counts} must be positive")));
                }
                Mode::MonteCarlo { n_counts, seed: self.seed.unwrap_or(0) }
            }
            other => return Err(Error::Parse(format!("unknown mode '{other}' (exact, monte-carlo)"))),
        };
        Ok(SweepSpec { channel, p, state_set, resolution, mode })
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} outside [0, 1]")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub p: f64,
    pub simulated_fidelity: f64,
    pub closed_form_fidelity: f64,
    pub success_probability: f64,
    pub abs_difference: f64,
}

pub const SWEEP_HEADER: &str =
    "r,theta,phi,p,simulated_fidelity,closed_form_fidelity,success_probability,abs_difference";

/// Twelve significant digits.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        [
            self.r,
            self.theta,
            self.phi,
            self.p,
            self.simulated_fidelity,
            self.closed_form_fidelity,
            self.success_probability,
            self.abs_difference,
        ]
        .iter()
        .map(|&x| num(x))
        .collect::<Vec<_>>()
        .join(",")
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    check_p(spec.p)?;
    let shared = spec.channel.shared_state(spec.p)?;
    let p = if spec.channel == Channel::Ideal { 1.0 } else { spec.p };
    spec.state_set
        .expand(spec.resolution)
        .into_iter()
        .enumerate()
        .map(|(i, (r, theta, phi))| {
            let target = BlochVector::new(r, theta, phi)?;
            let outcome = rsp_run(&shared, &target)?;
            let target_rho = bloch_to_rho(&target)?;
            let simulated_fidelity = match spec.mode {
                Mode::Exact => fidelity(&target_rho, &outcome.conditional_state)?,
                Mode::MonteCarlo { n_counts, seed } => {
                    let fit = tomograph(&outcome.conditional_state, n_counts, Some(seed.wrapping_add(i as u64)), false)?;
                    fidelity(&target_rho, &fit.state)?
                }
            };
            let closed_form_fidelity = spec.channel.closed_form(&target, spec.p)?;
            Ok(SweepRow {
                r,
                theta,
                phi,
                p,
                simulated_fidelity,
                closed_form_fidelity,
                success_probability: outcome.success_probability,
                abs_difference: (simulated_fidelity - closed_form_fidelity).abs(),
            })
        })
        .collect()
}

pub fn write_sweep_csv(rows: &[SweepRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv())?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSummary {
    pub rows: usize,
    pub min_fidelity: f64,
    pub max_fidelity: f64,
    pub mean_fidelity: f64,
    pub max_abs_difference: f64,
}

impl SweepSummary {
    pub fn of(rows: &[SweepRow]) -> Self {
        let f = rows.iter().map(|r| r.simulated_fidelity);
        Self {
            rows: rows.len(),
            min_fidelity: f.clone().fold(f64::INFINITY, f64::min),
            max_fidelity: f.clone().fold(f64::NEG_INFINITY, f64::max),
            mean_fidelity: f.sum::<f64>() / rows.len().max(1) as f64,
            max_abs_difference: rows.iter().map(|r| r.abs_difference).fold(0.0, f64::max),
        }
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows {}  fidelity min {:.12} max {:.12} mean {:.12}  max |simulated - closed form| {:.3e}",
            self.rows, self.min_fidelity, self.max_fidelity, self.mean_fidelity, self.max_abs_difference
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub r: f64,
    pub theta: f64,
    pub p: f64,
    pub f_dephasing: f64,
    pub f_depolarizing: f64,
    pub difference: f64,
}

pub const COMPARE_HEADER: &str = "r,theta,p,f_dephasing,f_depolarizing,difference";

/// Rows with `difference` below this count as violations of dephasing
/// noise being no worse than depolarizing noise.
pub const DOMINANCE_TOL: f64 = 1e-12;

impl CompareRow {
    pub fn to_csv(&self) -> String {
        [self.r, self.theta, self.p, self.f_dephasing, self.f_depolarizing, self.difference]
            .iter()
            .map(|&x| num(x))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn is_violation(&self) -> bool {
        self.difference < -DOMINANCE_TOL
    }
}

/// Simulated fidelities for both noisy channels over `r ∈ [0,1]`,
/// `theta ∈ [0,pi]` (`resolution` samples each, `phi = 0`) for every `p`.
pub fn compare_channels(p_list: &[f64], resolution: usize) -> Result<Vec<CompareRow>> {
    let mut rows = Vec::new();
    for &p in p_list {
        check_p(p)?;
        let deph = dephased_bell(p)?;
        let depol = depolarized_bell(p)?;
        for r in linspace(0.0, 1.0, resolution) {
            for theta in linspace(0.0, PI, resolution) {
                let target = BlochVector::new(r, theta, 0.0)?;
                let rho = bloch_to_rho(&target)?;
                let f_dephasing = fidelity(&rho, &rsp_run(&deph, &target)?.conditional_state)?;
                let f_depolarizing = fidelity(&rho, &rsp_run(&depol, &target)?.conditional_state)?;
                rows.push(CompareRow { r, theta, p, f_dephasing, f_depolarizing, difference: f_dephasing - f_depolarizing });
            }
        }
    }
    Ok(rows)
}

pub fn write_compare_csv(rows: &[CompareRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "{COMPARE_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv())?;
    }
    Ok(())
}

/// A state to reconstruct, written `dephased:P`, `depolarized:P`, `bell`,
/// `fixture`, or `bloch:R,THETA_DEG,PHI_DEG`.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Dephased(f64),
    Depolarized(f64),
    Bell,
    /// The measured source matrix, compared with the dephased singlet at
    /// `p = 0.9`.
    Fixture,
    Bloch(BlochVector),
}

impl FromStr for StateSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').map_or((s, None), |(k, a)| (k, Some(a)));
        let number = |a: Option<&str>| -> Result<f64> {
            let a = a.ok_or_else(|| Error::Parse(format!("'{s}' needs a parameter")))?;
            a.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{a}' in '{s}'")))
        };
        match kind.to_ascii_lowercase().as_str() {
            "dephased" | "dephasing" => {
                let p = number(arg)?;
                check_p(p)?;
                Ok(StateSpec::Dephased(p))
            }
            "depolarized" | "depolarizing" => {
                let p = number(arg)?;
                check_p(p)?;
                Ok(StateSpec::Depolarized(p))
            }
            "bell" | "singlet" => Ok(StateSpec::Bell),
            "fixture" => Ok(StateSpec::Fixture),
            "bloch" => {
                let parts: Vec<&str> = arg.ok_or_else(|| Error::Parse(format!("'{s}' needs r,theta,phi")))?.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(format!("'{s}': expected bloch:R,THETA_DEG,PHI_DEG")));
                }
                let v: Vec<f64> = parts.iter().map(|x| number(Some(x))).collect::<Result<_>>()?;
                Ok(StateSpec::Bloch(BlochVector::from_degrees(v[0], v[1], v[2])?))
            }
            other => Err(Error::Parse(format!("unknown state '{other}' (dephased:P, depolarized:P, bell, fixture, bloch:R,T,F)"))),
        }
    }
}

impl StateSpec {
    /// The state that is measured.
    pub fn prepared(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Dephased(p) => dephased_bell(*p),
            StateSpec::Depolarized(p) => depolarized_bell(*p),
            StateSpec::Bell => Ok(bell_psi_minus()),
            StateSpec::Fixture => Ok(spdc_fixture()),
            StateSpec::Bloch(v) => bloch_to_rho(v),
        }
    }

    /// The state the reconstruction is scored against.
    pub fn reference(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Fixture => dephased_bell(0.9),
            other => other.prepared(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TomographyMode {
    /// Poisson counts from a seeded generator.
    Sampled { n_counts: f64, seed: u64 },
    /// Exact expected counts, the infinite-statistics limit.
    ExactProbabilities { n_counts: f64 },
    /// No reconstruction: fidelity of the printed source matrix (hermitized)
    /// with the reference. Only valid for [`StateSpec::Fixture`].
    Direct,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TwoQubitSettings {
    /// 36 product settings.
    #[default]
    Full,
    /// 16 settings.
    Minimal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TomographyReport {
    pub state: String,
    pub mode: String,
    pub n_counts: Option<f64>,
    pub seed: Option<u64>,
    pub algorithm: String,
    pub settings: usize,
    pub fidelity: f64,
    pub log_likelihood: Option<f64>,
    pub evaluations: Option<usize>,
    pub real: Vec<Vec<f64>>,
    pub imag: Vec<Vec<f64>>,
}

fn tomograph(rho: &DensityMatrix, n_counts: f64, seed: Option<u64>, minimal: bool) -> Result<MleFit> {
    let qubits = rho.dim().trailing_zeros() as usize;
    let settings = if minimal && qubits == 2 { two_qubit_minimal_settings() } else { standard_settings(qubits)? };
    let record = match seed {
        Some(seed) => simulate_counts(rho, &settings, n_counts, seed)?,
        None => expected_counts(rho, &settings, n_counts)?,
    };
    mle_reconstruct_with(&record, None, &MleOptions::default())
}

/// Measures the state, reconstructs it by maximum likelihood and scores it
/// against the reference. A non-converged fit is reported as a numeric
/// error that quotes the best iterate's fidelity.
pub fn run_tomography(spec: &StateSpec, mode: TomographyMode, settings: TwoQubitSettings) -> Result<TomographyReport> {
    let reference = spec.reference()?;
    let label = match spec {
        StateSpec::Dephased(p) => format!("dephased:{p}"),
        StateSpec::Depolarized(p) => format!("depolarized:{p}"),
        StateSpec::Bell => "bell".into(),
        StateSpec::Fixture => "fixture".into(),
        StateSpec::Bloch(v) => {
            format!("bloch:{},{},{}", v.r, v.theta.to_degrees(), v.phi.to_degrees())
        }
    };
    let split = |m: &crate::qcore::ComplexMatrix| {
        let rows = |f: fn(crate::qcore::C64) -> f64| {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| f(m.get(i, j))).collect()).collect::<Vec<Vec<f64>>>()
        };
        (rows(|z| z.re), rows(|z| z.im))
    };

    if mode == TomographyMode::Direct {
        if *spec != StateSpec::Fixture {
            return Err(Error::Parse("direct mode compares the printed source matrix and needs state 'fixture'".into()));
        }
        let fixture = spdc_fixture_hermitized();
        let f = uhlmann_fidelity(reference.matrix(), &fixture)?;
        let (real, imag) = split(&fixture);
        return Ok(TomographyReport {
            state: label,
            mode: "direct".into(),
            n_counts: None,
            seed: None,
            algorithm: "none".into(),
            settings: 0,
            fidelity: f,
            log_likelihood: None,
            evaluations: None,
            real,
            imag,
        });
    }

    let prepared = spec.prepared()?;
    let (n_counts, seed, mode_name, algorithm) = match mode {
        TomographyMode::Sampled { n_counts, seed } => (n_counts, Some(seed), "sampled", RNG_ALGORITHM),
        TomographyMode::ExactProbabilities { n_counts } => (n_counts, None, "exact-probabilities", EXACT_ALGORITHM),
        TomographyMode::Direct => unreachable!(),
    };
    let minimal = settings == TwoQubitSettings::Minimal;
    let fit = match tomograph(&prepared, n_counts, seed, minimal) {
        Ok(fit) => fit,
        Err(Error::NonConvergence { evaluations, best, .. }) => {
            let f = fidelity(&reference, &best)?;
            return Err(Error::Numeric(format!(
                "reconstruction did not converge after {evaluations} evaluations; best iterate has fidelity {f:.6}"
            )));
        }
        Err(e) => return Err(e),
    };
    let f = fidelity(&reference, &fit.state)?;
    let (real, imag) = split(fit.state.matrix());
    let n_settings = if minimal && prepared.dim() == 4 { 16 } else { standard_settings(prepared.dim().trailing_zeros() as usize)?.len() };
    Ok(TomographyReport {
        state: label,
        mode: mode_name.into(),
        n_counts: Some(n_counts),
        seed,
        algorithm: algorithm.into(),
        settings: n_settings,
        fidelity: f,
        log_likelihood: Some(fit.log_likelihood),
        evaluations: Some(fit.evaluations),
        real,
        imag,
    })
}

/// The hermitized source matrix as aligned text.
pub fn format_fixture() -> String {
    let m = spdc_fixture_hermitized();
    let mut s = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m.get(i, j);
                format!("{:+.4}{:+.4}i", z.re, z.im)
            })
            .collect();
        s.push_str(&cells.join("  "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(channel: Channel, p: f64, set: u8, resolution: usize) -> SweepSpec {
        SweepSpec { channel, p, state_set: StateSet::Named(set), resolution, mode: Mode::Exact }
    }

    #[test]
    fn named_sets_expand() {
        let s3 = StateSet::Named(3).expand(5);
        assert_eq!(s3.len(), 5);
        assert!(s3.iter().all(|&(r, t, _)| r == 1.0 && t == FRAC_PI_2));
        assert_eq!(s3[4].2, 2.0 * PI);
        assert_eq!(StateSet::Named(5).expand(50), vec![(0.0, 0.0, 0.0)]);
        let s6 = StateSet::Named(6).expand(3);
        assert_eq!(s6, vec![(-1.0, FRAC_PI_4, 0.0), (0.0, FRAC_PI_4, 0.0), (1.0, FRAC_PI_4, 0.0)]);
        assert!((StateSet::Named(4).expand(2)[0].0 - 0.5 * (1.0 + 0.5f64.sqrt()) / 1.0).abs() < 1e-15);
        assert!(StateSet::named(8).is_err());
        assert!(StateSet::named(0).is_err());
    }

    #[test]
    fn polar_circle_at_p07() {
        let rows = run_sweep(&spec(Channel::Dephasing, 0.7, 1, 37)).unwrap();
        for row in &rows {
            let want = 0.5 * (3.7 + 0.3 * (2.0 * row.theta).cos()).sqrt();
            assert!((row.closed_form_fidelity - want).abs() < 1e-10);
            assert!((row.simulated_fidelity - want).abs() < 1e-10);
            assert!(row.abs_difference < 1e-9);
            assert!((row.success_probability - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn maximally_mixed_target_is_perfect() {
        for ch in [Channel::Ideal, Channel::Depolarizing, Channel::Dephasing] {
            for p in [0.0, 0.3, 1.0] {
                let rows = run_sweep(&spec(ch, p, 5, 10)).unwrap();
                assert!(rows.iter().all(|r| (r.simulated_fidelity - 1.0).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn equator_is_phase_independent() {
        let rows = run_sweep(&spec(Channel::Dephasing, 0.9, 3, 41)).unwrap();
        let s = SweepSummary::of(&rows);
        assert!(s.max_fidelity - s.min_fidelity < 1e-9);
    }

    #[test]
    fn signed_radius_sets_match_closed_form() {
        for set in [6, 7] {
            for ch in [Channel::Depolarizing, Channel::Dephasing] {
                let rows = run_sweep(&spec(ch, 0.6, set, 21)).unwrap();
                assert!(rows.iter().any(|r| r.r < 0.0));
                assert!(rows.iter().all(|r| r.abs_difference < 1e-9), "{ch} set {set}");
            }
        }
    }

    #[test]
    fn csv_layout() {
        let rows = run_sweep(&spec(Channel::Depolarizing, 0.5, 1, 3)).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SWEEP_HEADER);
        assert_eq!(lines.len(), 4);
        let first: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(first.len(), 8);
        assert!((first[4] - rows[0].simulated_fidelity).abs() < 1e-11);
    }

    #[test]
    fn config_merging() {
        let file = SweepConfig::from_toml("channel = \"depolarizing\"\np = 0.3\nset = 2\nresolution = 5\n").unwrap();
        let flags = SweepConfig { p: Some(0.8), points: Some(vec![[1.0, 90.0, 0.0]]), ..Default::default() };
        let spec = file.overridden_by(flags).into_spec().unwrap();
        assert_eq!(spec.channel, Channel::Depolarizing);
        assert_eq!(spec.p, 0.8);
        assert_eq!(spec.state_set, StateSet::Points(vec![(1.0, FRAC_PI_2, 0.0)]));
        assert_eq!(spec.resolution, 5);
        assert!(SweepConfig::from_toml("bogus = 1").is_err());
        assert!(SweepConfig { p: Some(1.5), ..Default::default() }.into_spec().is_err());
        assert!(SweepConfig { mode: Some("fast".into()), ..Default::default() }.into_spec().is_err());
    }

    #[test]
    fn monte_carlo_sweep_is_close_and_deterministic() {
        let mut s = spec(Channel::Dephasing, 0.9, 1, 4);
        s.mode = Mode::MonteCarlo { n_counts: 1e4, seed: 3 };
        let a = run_sweep(&s).unwrap();
        let b = run_sweep(&s).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.abs_difference < 0.02));
    }

    #[test]
    fn comparison_has_no_violations() {
        let rows = compare_channels(&[0.0, 0.25, 0.5, 0.75, 1.0], 9).unwrap();
        assert_eq!(rows.len(), 5 * 81);
        assert!(rows.iter().all(|r| !r.is_violation()));
        for row in rows.iter().filter(|r| r.p == 1.0 || r.r == 0.0) {
            assert!((row.f_dephasing - 1.0).abs() < 1e-12 && (row.f_depolarizing - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn state_specs_parse() {
        assert_eq!("dephased:0.9".parse::<StateSpec>().unwrap(), StateSpec::Dephased(0.9));
        assert_eq!("fixture".parse::<StateSpec>().unwrap(), StateSpec::Fixture);
        assert!(matches!("bloch:1,90,0".parse::<StateSpec>().unwrap(), StateSpec::Bloch(_)));
        assert!("bloch:1,90".parse::<StateSpec>().is_err());
        assert!("dephased:2".parse::<StateSpec>().is_err());
        assert!("werner".parse::<StateSpec>().is_err());
    }

    #[test]
    fn direct_fixture_fidelity() {
        let rep = run_tomography(&StateSpec::Fixture, TomographyMode::Direct, TwoQubitSettings::Full).unwrap();
        assert!((rep.fidelity - 0.997).abs() <= 0.005, "{}", rep.fidelity);
        assert!(run_tomography(&StateSpec::Bell, TomographyMode::Direct, TwoQubitSettings::Full).is_err());
    }

    #[test]
    fn exact_probability_pipeline() {
        let spec: StateSpec = "depolarized:0.6".parse().unwrap();
        let rep = run_tomography(&spec, TomographyMode::ExactProbabilities { n_counts: 1e4 }, TwoQubitSettings::Full).unwrap();
        assert!(rep.fidelity > 1.0 - 1e-6);
        assert_eq!(rep.settings, 36);
    }

    #[test]
    fn sampled_bloch_pipeline() {
        let spec: StateSpec = "bloch:1,0,0".parse().unwrap();
        let rep =
            run_tomography(&spec, TomographyMode::Sampled { n_counts: 1e4, seed: 11 }, TwoQubitSettings::Full).unwrap();
        assert!(rep.fidelity >= 0.99);
        assert_eq!(rep.settings, 6);
    }
}
