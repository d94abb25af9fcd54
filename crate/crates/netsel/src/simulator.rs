//! Seeded Monte Carlo reproduction of the handoff experiment.
//!
//! Each trial walks a fixed number of decision points. At every point the
//! bandwidth, delay, jitter and loss of each candidate network are redrawn
//! uniformly from configured intervals (cost per byte and security stay
//! fixed), the same snapshots are fed to every requested algorithm, and each
//! algorithm selects a network while threading its own history state.
//! Handoffs are transitions where the selected network changes.
//!
//! Trials are fully determined by `(master_seed, trial_index)`: the
//! substream seed is `splitmix64(master_seed XOR trial_index * 0x9E3779B97F4A7C15)`
//! feeding a ChaCha8 stream, so reports are reproducible across machines and
//! across sequential or parallel execution.

use rand::distr::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::selector::{
    select, Algorithm, ComposedWeights, HistoryState, NetworkSnapshot, SelectorError, TrafficClass,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error("unknown network '{network}'")]
    UnknownNetwork { network: String },
    #[error("interval [{lo}, {hi}] is not a valid nonnegative range")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("selection sequence is empty")]
    EmptySequence,
    #[error("report does not contain algorithm '{algorithm}'")]
    MissingAlgorithm { algorithm: Algorithm },
    #[error("invalid simulation config: {reason}")]
    InvalidConfig { reason: String },
    #[error(transparent)]
    Selector(#[from] SelectorError),
}

/// Closed interval for uniform sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, SimulationError> {
        if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi < lo {
            return Err(SimulationError::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        (self.lo..=self.hi).contains(&v)
    }

    fn sample(&self, rng: &mut impl Rng) -> f64 {
        Uniform::new_inclusive(self.lo, self.hi)
            .expect("interval validated on construction")
            .sample(rng)
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = SimulationError;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self, Self::Error> {
        Self::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Attribute profile of one candidate network: fixed cost and security plus
/// sampling intervals for the four fluctuating QoS attributes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkProfile {
    pub network: String,
    pub cost_per_byte: f64,
    pub security: f64,
    pub bandwidth: Interval,
    pub delay: Interval,
    pub jitter: Interval,
    pub loss: Interval,
    /// History score before the first decision point.
    pub initial_history: f64,
}

/// Ordered set of candidate network profiles. The order fixes the row order
/// of every decision matrix in the simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<NetworkProfile>", into = "Vec<NetworkProfile>")]
pub struct AttributeRanges {
    networks: Vec<NetworkProfile>,
}

impl AttributeRanges {
    pub fn new(networks: Vec<NetworkProfile>) -> Result<Self, SimulationError> {
        if networks.len() < 2 {
            return Err(SimulationError::InvalidConfig {
                reason: format!("need at least two networks, got {}", networks.len()),
            });
        }
        for (i, profile) in networks.iter().enumerate() {
            for other in &networks[..i] {
                if other.network == profile.network {
                    return Err(SimulationError::InvalidConfig {
                        reason: format!("duplicate network '{}'", profile.network),
                    });
                }
            }
        }
        Ok(Self { networks })
    }

    /// Bundled UMTS / WLAN / WIMAX profiles.
    pub fn builtin() -> Self {
        let interval = |lo, hi| Interval::new(lo, hi).expect("static interval");
        let profile = |network: &str, cb, s, ab: (f64, f64), d: (f64, f64), j: (f64, f64)| {
            NetworkProfile {
                network: network.to_string(),
                cost_per_byte: cb,
                security: s,
                bandwidth: interval(ab.0, ab.1),
                delay: interval(d.0, d.1),
                jitter: interval(j.0, j.1),
                loss: interval(20.0, 80.0),
                initial_history: 1.0,
            }
        };
        Self {
            networks: vec![
                profile("UMTS", 60.0, 70.0, (0.1, 2.0), (25.0, 50.0), (5.0, 10.0)),
                profile("WLAN", 10.0, 50.0, (1.0, 11.0), (100.0, 150.0), (10.0, 20.0)),
                profile("WIMAX", 40.0, 60.0, (1.0, 60.0), (60.0, 100.0), (3.0, 10.0)),
            ],
        }
    }

    pub fn networks(&self) -> &[NetworkProfile] {
        &self.networks
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.networks.iter().map(|p| p.network.as_str())
    }

    pub fn get(&self, network: &str) -> Option<&NetworkProfile> {
        self.networks.iter().find(|p| p.network == network)
    }

    fn initial_history(&self) -> HistoryState {
        HistoryState::from_scores(
            self.networks
                .iter()
                .map(|p| (p.network.as_str(), p.initial_history)),
        )
    }
}

impl TryFrom<Vec<NetworkProfile>> for AttributeRanges {
    type Error = SimulationError;

    fn try_from(networks: Vec<NetworkProfile>) -> Result<Self, Self::Error> {
        Self::new(networks)
    }
}

impl From<AttributeRanges> for Vec<NetworkProfile> {
    fn from(r: AttributeRanges) -> Self {
        r.networks
    }
}

/// Draws one snapshot for `network`: bandwidth, delay, jitter and loss are
/// sampled uniformly, in that order, from the network's closed intervals;
/// cost per byte and security are copied through.
pub fn sample_snapshot(
    rng: &mut impl Rng,
    ranges: &AttributeRanges,
    network: &str,
) -> Result<NetworkSnapshot, SimulationError> {
    let profile = ranges
        .get(network)
        .ok_or_else(|| SimulationError::UnknownNetwork {
            network: network.to_string(),
        })?;
    Ok(NetworkSnapshot {
        network: profile.network.clone(),
        cost_per_byte: profile.cost_per_byte,
        security: profile.security,
        bandwidth: profile.bandwidth.sample(rng),
        delay: profile.delay.sample(rng),
        jitter: profile.jitter.sample(rng),
        loss: profile.loss.sample(rng),
    })
}

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub traffic_class: TrafficClass,
    pub decision_points: u32,
    pub trials: u32,
    pub master_seed: u64,
    /// Weight sets to compare; every algorithm sees the same snapshots.
    pub algorithms: Vec<ComposedWeights>,
    pub ranges: AttributeRanges,
}

impl SimulationConfig {
    fn validate(&self) -> Result<(), SimulationError> {
        if self.decision_points < 2 {
            return Err(SimulationError::InvalidConfig {
                reason: format!(
                    "need at least 2 decision points for handoff counting, got {}",
                    self.decision_points
                ),
            });
        }
        if self.trials < 1 {
            return Err(SimulationError::InvalidConfig {
                reason: "need at least one trial".into(),
            });
        }
        if self.algorithms.is_empty() {
            return Err(SimulationError::InvalidConfig {
                reason: "no algorithms requested".into(),
            });
        }
        for (i, w) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i]
                .iter()
                .any(|other| other.algorithm() == w.algorithm())
            {
                return Err(SimulationError::InvalidConfig {
                    reason: format!("algorithm '{}' listed twice", w.algorithm()),
                });
            }
        }
        Ok(())
    }
}

/// Selections and scores of one algorithm across one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmTrace {
    pub algorithm: Algorithm,
    /// Selected network per decision point.
    pub selections: Vec<String>,
    /// Ranking score per decision point per network, in profile order.
    pub scores: Vec<Vec<f64>>,
    pub handoffs: u32,
}

/// One trial: every algorithm's trace over the shared snapshot sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialTrace {
    pub trial_index: u32,
    pub algorithms: Vec<AlgorithmTrace>,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stable substream seed for a trial; splitmix64 finalizer over the
/// master seed and trial index.
fn trial_seed(master_seed: u64, trial_index: u32) -> u64 {
    let mut z = master_seed ^ u64::from(trial_index).wrapping_mul(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs one trial. At each decision point one snapshot per network is drawn
/// from the trial's private random stream and fed to every algorithm, so the
/// comparison is paired; selection itself consumes no randomness.
pub fn run_trial(config: &SimulationConfig, trial_index: u32) -> Result<TrialTrace, SimulationError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.master_seed, trial_index));

    struct Lane<'a> {
        weights: &'a ComposedWeights,
        history: HistoryState,
        current: Option<String>,
        selections: Vec<String>,
        scores: Vec<Vec<f64>>,
    }

    let mut lanes: Vec<Lane> = config
        .algorithms
        .iter()
        .map(|weights| Lane {
            weights,
            history: config.ranges.initial_history(),
            current: None,
            selections: Vec::with_capacity(config.decision_points as usize),
            scores: Vec::with_capacity(config.decision_points as usize),
        })
        .collect();

    for _ in 0..config.decision_points {
        let snapshots: Vec<NetworkSnapshot> = config
            .ranges
            .networks()
            .iter()
            .map(|p| sample_snapshot(&mut rng, &config.ranges, &p.network))
            .collect::<Result<_, _>>()?;

        for lane in &mut lanes {
            let decision = select(
                &snapshots,
                &lane.history,
                lane.weights,
                lane.current.as_deref(),
            )?;
            lane.history = decision.updated_history;
            lane.scores
                .push(decision.scores.iter().map(|(_, c)| *c).collect());
            lane.current = Some(decision.chosen.clone());
            lane.selections.push(decision.chosen);
        }
    }

    let algorithms = lanes
        .into_iter()
        .map(|lane| {
            let handoffs = count_handoffs(&lane.selections)?;
            Ok(AlgorithmTrace {
                algorithm: lane.weights.algorithm(),
                selections: lane.selections,
                scores: lane.scores,
                handoffs,
            })
        })
        .collect::<Result<_, SimulationError>>()?;

    Ok(TrialTrace {
        trial_index,
        algorithms,
    })
}

/// Number of transitions where the selection changes; the first decision
/// point is never a handoff.
pub fn count_handoffs(selections: &[String]) -> Result<u32, SimulationError> {
    if selections.is_empty() {
        return Err(SimulationError::EmptySequence);
    }
    Ok(selections.windows(2).filter(|w| w[0] != w[1]).count() as u32)
}

/// Handoff distribution of one algorithm over all trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HandoffStats {
    /// Mean handoff count per trial.
    pub mean: f64,
    /// Mean count divided by the `decision_points - 1` possible transitions.
    pub rate: f64,
    pub min: u32,
    pub max: u32,
    /// Population standard deviation of the per-trial counts.
    pub std_dev: f64,
}

/// Aggregated result of one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmReport {
    pub algorithm: Algorithm,
    /// Effective column weights, echoing the configuration.
    pub criteria: Vec<crate::topsis::CriterionSpec>,
    pub handoffs: HandoffStats,
    /// Handoff count of every trial, in trial order.
    pub per_trial_handoffs: Vec<u32>,
}

/// Full simulation result. Embeds the effective configuration (including
/// the master seed), which is sufficient to reproduce the run bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub traffic_class: TrafficClass,
    pub decision_points: u32,
    pub trials: u32,
    pub master_seed: u64,
    pub networks: Vec<NetworkProfile>,
    pub algorithms: Vec<AlgorithmReport>,
}

impl SimulationReport {
    pub fn algorithm(&self, algorithm: Algorithm) -> Option<&AlgorithmReport> {
        self.algorithms.iter().find(|a| a.algorithm == algorithm)
    }
}

/// Runs all trials and aggregates. With the `parallel` feature (default)
/// trials fan out over rayon; the report is identical either way.
pub fn run_simulation(config: &SimulationConfig) -> Result<SimulationReport, SimulationError> {
    #[cfg(feature = "parallel")]
    {
        run_simulation_parallel(config)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_simulation_sequential(config)
    }
}

/// Runs every trial on the calling thread, in trial order.
pub fn run_simulation_sequential(
    config: &SimulationConfig,
) -> Result<SimulationReport, SimulationError> {
    config.validate()?;
    let traces = (0..config.trials)
        .map(|i| run_trial(config, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(config, &traces))
}

/// Runs trials on the rayon thread pool. Traces are collected back in trial
/// order, so the aggregate report is bit-identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn run_simulation_parallel(
    config: &SimulationConfig,
) -> Result<SimulationReport, SimulationError> {
    config.validate()?;
    let traces = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(config, &traces))
}

fn aggregate(config: &SimulationConfig, traces: &[TrialTrace]) -> SimulationReport {
    let algorithms = config
        .algorithms
        .iter()
        .map(|weights| {
            let algorithm = weights.algorithm();
            let counts: Vec<u32> = traces
                .iter()
                .map(|t| {
                    t.algorithms
                        .iter()
                        .find(|a| a.algorithm == algorithm)
                        .expect("every trace covers every configured algorithm")
                        .handoffs
                })
                .collect();
            let n = counts.len() as f64;
            let mean = counts.iter().map(|&c| f64::from(c)).sum::<f64>() / n;
            let variance = counts
                .iter()
                .map(|&c| {
                    let d = f64::from(c) - mean;
                    d * d
                })
                .sum::<f64>()
                / n;
            AlgorithmReport {
                algorithm,
                criteria: weights.criteria(),
                handoffs: HandoffStats {
                    mean,
                    rate: mean / f64::from(config.decision_points - 1),
                    min: counts.iter().copied().min().unwrap_or(0),
                    max: counts.iter().copied().max().unwrap_or(0),
                    std_dev: variance.sqrt(),
                },
                per_trial_handoffs: counts,
            }
        })
        .collect();

    SimulationReport {
        traffic_class: config.traffic_class,
        decision_points: config.decision_points,
        trials: config.trials,
        master_seed: config.master_seed,
        networks: config.ranges.networks().to_vec(),
        algorithms,
    }
}

/// Externally reported mean handoff percentages `(topsis1, topsis2)` per
/// traffic class, used as a directional reference in comparison output.
pub fn reference_rates(class: TrafficClass) -> (f64, f64) {
    match class {
        TrafficClass::Background => (50.0, 30.0),
        TrafficClass::Conversational => (60.0, 40.0),
        TrafficClass::Interactive => (70.0, 40.0),
        TrafficClass::Streaming => (40.0, 20.0),
    }
}

/// Head-to-head summary of the two algorithms in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub traffic_class: TrafficClass,
    pub topsis1_rate: f64,
    pub topsis2_rate: f64,
    /// Rate reduction achieved by `topsis2`, in percentage points.
    pub reduction_points: f64,
    /// Externally reported percentages `(topsis1, topsis2)` for this class.
    pub reference_rates_pct: (f64, f64),
}

/// Compares the two algorithms' handoff rates. Requires both series in the
/// report.
pub fn compare_algorithms(report: &SimulationReport) -> Result<ComparisonSummary, SimulationError> {
    let rate = |algorithm| {
        report
            .algorithm(algorithm)
            .map(|a| a.handoffs.rate)
            .ok_or(SimulationError::MissingAlgorithm { algorithm })
    };
    let topsis1_rate = rate(Algorithm::Topsis1)?;
    let topsis2_rate = rate(Algorithm::Topsis2)?;
    Ok(ComparisonSummary {
        traffic_class: report.traffic_class,
        topsis1_rate,
        topsis2_rate,
        reduction_points: (topsis1_rate - topsis2_rate) * 100.0,
        reference_rates_pct: reference_rates(report.traffic_class),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selector::CriteriaHierarchy;
    use crate::fahp::FuzzyPairwiseMatrix;

    fn uniform_weights(algorithm: Algorithm) -> ComposedWeights {
        CriteriaHierarchy::new(
            algorithm,
            FuzzyPairwiseMatrix::uniform(algorithm.level1_size()),
            FuzzyPairwiseMatrix::uniform(4),
        )
        .unwrap()
        .compose_weights()
        .unwrap()
    }

    fn config(algorithms: Vec<ComposedWeights>, trials: u32, seed: u64) -> SimulationConfig {
        SimulationConfig {
            traffic_class: TrafficClass::Background,
            decision_points: 10,
            trials,
            master_seed: seed,
            algorithms,
            ranges: AttributeRanges::builtin(),
        }
    }

    #[test]
    fn builtin_profiles_match_expected_ranges() {
        let ranges = AttributeRanges::builtin();
        let umts = ranges.get("UMTS").unwrap();
        assert_eq!(umts.cost_per_byte, 60.0);
        assert_eq!(umts.security, 70.0);
        assert_eq!([umts.bandwidth.lo(), umts.bandwidth.hi()], [0.1, 2.0]);
        assert_eq!([umts.delay.lo(), umts.delay.hi()], [25.0, 50.0]);
        assert_eq!([umts.jitter.lo(), umts.jitter.hi()], [5.0, 10.0]);
        assert_eq!([umts.loss.lo(), umts.loss.hi()], [20.0, 80.0]);
        assert_eq!(umts.initial_history, 1.0);

        let wlan = ranges.get("WLAN").unwrap();
        assert_eq!((wlan.cost_per_byte, wlan.security), (10.0, 50.0));
        assert_eq!([wlan.bandwidth.lo(), wlan.bandwidth.hi()], [1.0, 11.0]);
        assert_eq!([wlan.delay.lo(), wlan.delay.hi()], [100.0, 150.0]);
        assert_eq!([wlan.jitter.lo(), wlan.jitter.hi()], [10.0, 20.0]);

        let wimax = ranges.get("WIMAX").unwrap();
        assert_eq!((wimax.cost_per_byte, wimax.security), (40.0, 60.0));
        assert_eq!([wimax.bandwidth.lo(), wimax.bandwidth.hi()], [1.0, 60.0]);
        assert_eq!([wimax.delay.lo(), wimax.delay.hi()], [60.0, 100.0]);
        assert_eq!([wimax.jitter.lo(), wimax.jitter.hi()], [3.0, 10.0]);
    }

    #[test]
    fn sampled_attributes_stay_in_range() {
        let ranges = AttributeRanges::builtin();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            for profile in ranges.networks() {
                let s = sample_snapshot(&mut rng, &ranges, &profile.network).unwrap();
                assert_eq!(s.cost_per_byte, profile.cost_per_byte);
                assert_eq!(s.security, profile.security);
                assert!(profile.bandwidth.contains(s.bandwidth));
                assert!(profile.delay.contains(s.delay));
                assert!(profile.jitter.contains(s.jitter));
                assert!(profile.loss.contains(s.loss));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_stream_state() {
        let ranges = AttributeRanges::builtin();
        let mut a = ChaCha8Rng::seed_from_u64(11);
        let mut b = ChaCha8Rng::seed_from_u64(11);
        let sa = sample_snapshot(&mut a, &ranges, "WIMAX").unwrap();
        let sb = sample_snapshot(&mut b, &ranges, "WIMAX").unwrap();
        assert_eq!(sa, sb);
    }

    #[test]
    fn unknown_network_is_an_error() {
        let ranges = AttributeRanges::builtin();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = sample_snapshot(&mut rng, &ranges, "LTE").unwrap_err();
        assert_eq!(err, SimulationError::UnknownNetwork { network: "LTE".into() });
    }

    #[test]
    fn invalid_intervals_rejected() {
        assert!(Interval::new(5.0, 1.0).is_err());
        assert!(Interval::new(-1.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
        assert!(Interval::new(2.0, 2.0).is_ok());
    }

    #[test]
    fn trial_has_one_selection_per_decision_point() {
        let cfg = config(
            vec![uniform_weights(Algorithm::Topsis1), uniform_weights(Algorithm::Topsis2)],
            1,
            42,
        );
        let trace = run_trial(&cfg, 0).unwrap();
        assert_eq!(trace.algorithms.len(), 2);
        for lane in &trace.algorithms {
            assert_eq!(lane.selections.len(), 10);
            assert_eq!(lane.scores.len(), 10);
            assert!(lane.handoffs <= 9);
        }
    }

    #[test]
    fn identical_seed_and_index_give_identical_traces() {
        let cfg = config(vec![uniform_weights(Algorithm::Topsis2)], 1, 99);
        let a = run_trial(&cfg, 3).unwrap();
        let b = run_trial(&cfg, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn snapshot_stream_does_not_depend_on_algorithm_set() {
        let both = config(
            vec![uniform_weights(Algorithm::Topsis1), uniform_weights(Algorithm::Topsis2)],
            1,
            5,
        );
        let only_t1 = config(vec![uniform_weights(Algorithm::Topsis1)], 1, 5);
        let a = run_trial(&both, 0).unwrap();
        let b = run_trial(&only_t1, 0).unwrap();
        let t1_of_both = a
            .algorithms
            .iter()
            .find(|l| l.algorithm == Algorithm::Topsis1)
            .unwrap();
        assert_eq!(t1_of_both.selections, b.algorithms[0].selections);
        assert_eq!(t1_of_both.scores, b.algorithms[0].scores);
    }

    #[test]
    fn count_handoffs_counts_transitions() {
        let seq = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(count_handoffs(&seq(&["A", "A", "A", "A"])).unwrap(), 0);
        assert_eq!(
            count_handoffs(&seq(&["A", "B", "A", "B", "A", "B", "A", "B", "A", "B"])).unwrap(),
            9
        );
        assert_eq!(count_handoffs(&seq(&["A", "A", "B", "B", "A"])).unwrap(), 2);
        assert_eq!(count_handoffs(&[]).unwrap_err(), SimulationError::EmptySequence);
    }

    #[test]
    fn single_trial_mean_equals_its_count() {
        let cfg = config(vec![uniform_weights(Algorithm::Topsis1)], 1, 13);
        let trace = run_trial(&cfg, 0).unwrap();
        let report = run_simulation_sequential(&cfg).unwrap();
        let stats = &report.algorithm(Algorithm::Topsis1).unwrap().handoffs;
        assert_eq!(stats.mean, f64::from(trace.algorithms[0].handoffs));
        assert_eq!(stats.std_dev, 0.0);
    }

    #[test]
    fn report_covers_every_requested_algorithm() {
        let cfg = config(
            vec![uniform_weights(Algorithm::Topsis1), uniform_weights(Algorithm::Topsis2)],
            8,
            42,
        );
        let report = run_simulation_sequential(&cfg).unwrap();
        assert!(report.algorithm(Algorithm::Topsis1).is_some());
        assert!(report.algorithm(Algorithm::Topsis2).is_some());
        for lane in &report.algorithms {
            assert_eq!(lane.per_trial_handoffs.len(), 8);
            assert!(lane.handoffs.rate >= 0.0 && lane.handoffs.rate <= 1.0);
            assert!(lane.handoffs.mean >= 0.0 && lane.handoffs.mean <= 9.0);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_reports_are_identical() {
        let cfg = config(
            vec![uniform_weights(Algorithm::Topsis1), uniform_weights(Algorithm::Topsis2)],
            64,
            2024,
        );
        let seq = run_simulation_sequential(&cfg).unwrap();
        let par = run_simulation_parallel(&cfg).unwrap();
        assert_eq!(seq, par);
        let a = serde_json::to_string(&seq).unwrap();
        let b = serde_json::to_string(&par).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = config(vec![uniform_weights(Algorithm::Topsis1)], 1, 0);
        cfg.decision_points = 1;
        assert!(matches!(
            run_simulation_sequential(&cfg).unwrap_err(),
            SimulationError::InvalidConfig { .. }
        ));

        let cfg = config(vec![uniform_weights(Algorithm::Topsis1)], 0, 0);
        assert!(run_simulation_sequential(&cfg).is_err());

        let cfg = config(
            vec![uniform_weights(Algorithm::Topsis1), uniform_weights(Algorithm::Topsis1)],
            1,
            0,
        );
        assert!(run_simulation_sequential(&cfg).is_err());
    }

    #[test]
    fn comparison_reports_rate_pair_and_reduction() {
        let make = |t1: f64, t2: f64| {
            let mk = |algorithm, rate: f64| AlgorithmReport {
                algorithm,
                criteria: uniform_weights(algorithm).criteria(),
                handoffs: HandoffStats {
                    mean: rate * 9.0,
                    rate,
                    min: 0,
                    max: 9,
                    std_dev: 0.0,
                },
                per_trial_handoffs: vec![],
            };
            SimulationReport {
                traffic_class: TrafficClass::Background,
                decision_points: 10,
                trials: 0,
                master_seed: 0,
                networks: AttributeRanges::builtin().networks().to_vec(),
                algorithms: vec![mk(Algorithm::Topsis1, t1), mk(Algorithm::Topsis2, t2)],
            }
        };
        let summary = compare_algorithms(&make(0.50, 0.30)).unwrap();
        assert!((summary.reduction_points - 20.0).abs() < 1e-9);
        let summary = compare_algorithms(&make(0.40, 0.20)).unwrap();
        assert!((summary.reduction_points - 20.0).abs() < 1e-9);
        let summary = compare_algorithms(&make(0.35, 0.35)).unwrap();
        assert_eq!(summary.reduction_points, 0.0);

        let mut only_t1 = make(0.5, 0.3);
        only_t1.algorithms.pop();
        assert_eq!(
            compare_algorithms(&only_t1).unwrap_err(),
            SimulationError::MissingAlgorithm { algorithm: Algorithm::Topsis2 }
        );
    }

    #[test]
    fn zero_history_weight_makes_topsis2_match_topsis1() {
        let t1 = uniform_weights(Algorithm::Topsis1);
        let mut weights: Vec<f64> = t1.weights().as_slice().to_vec();
        weights.push(0.0);
        let t2_zero_history = ComposedWeights::from_parts(Algorithm::Topsis2, weights).unwrap();
        let cfg = config(vec![t1, t2_zero_history], 16, 77);
        for trial in 0..cfg.trials {
            let trace = run_trial(&cfg, trial).unwrap();
            assert_eq!(trace.algorithms[0].selections, trace.algorithms[1].selections);
        }
    }

    #[test]
    fn reference_rate_table() {
        assert_eq!(reference_rates(TrafficClass::Background), (50.0, 30.0));
        assert_eq!(reference_rates(TrafficClass::Streaming), (40.0, 20.0));
    }
}
