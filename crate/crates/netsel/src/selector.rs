//! Network selection: composes the two-level criteria hierarchy into global
//! weights, assembles the decision matrix from per-network measurements and
//! the history score, and picks the best access network.
//!
//! Two algorithm variants share the machinery. `Topsis1` ranks on the six
//! measured attributes (cost per byte, security, bandwidth, delay, jitter,
//! loss). `Topsis2` adds a seventh benefit criterion: each network's ranking
//! score from the previous decision point, initialized to 1. Carrying that
//! score forward biases the choice toward the incumbent network and damps
//! ping-pong handoffs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fahp::{FahpError, FuzzyPairwiseMatrix, WeightVector};
use crate::topsis::{CriterionSpec, DecisionMatrix, Direction, TopsisError};
use crate::TIE_EPS;

/// Service categories that induce different criterion weightings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrafficClass {
    Background,
    Conversational,
    Interactive,
    Streaming,
}

impl TrafficClass {
    pub const ALL: [TrafficClass; 4] = [
        TrafficClass::Background,
        TrafficClass::Conversational,
        TrafficClass::Interactive,
        TrafficClass::Streaming,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TrafficClass::Background => "background",
            TrafficClass::Conversational => "conversational",
            TrafficClass::Interactive => "interactive",
            TrafficClass::Streaming => "streaming",
        }
    }
}

impl fmt::Display for TrafficClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrafficClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TrafficClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown traffic class '{s}'"))
    }
}

/// Selection algorithm variant: with or without the history criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Topsis1,
    Topsis2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Topsis1, Algorithm::Topsis2];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Topsis1 => "topsis1",
            Algorithm::Topsis2 => "topsis2",
        }
    }

    /// Whether the variant reads the history score.
    pub fn uses_history(self) -> bool {
        matches!(self, Algorithm::Topsis2)
    }

    /// Number of level-1 criteria (QoS, security, cost, and for `Topsis2`
    /// history).
    pub fn level1_size(self) -> usize {
        match self {
            Algorithm::Topsis1 => 3,
            Algorithm::Topsis2 => 4,
        }
    }

    /// Number of decision-matrix columns.
    pub fn criterion_count(self) -> usize {
        match self {
            Algorithm::Topsis1 => 6,
            Algorithm::Topsis2 => 7,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm '{s}'"))
    }
}

/// Decision-matrix columns in order, with their directions. Cost per byte,
/// delay, jitter and loss are undesirable; security, bandwidth and the
/// history score are desirable.
const CRITERION_COLUMNS: [(&str, Direction); 7] = [
    ("cost_per_byte", Direction::Cost),
    ("security", Direction::Benefit),
    ("bandwidth", Direction::Benefit),
    ("delay", Direction::Cost),
    ("jitter", Direction::Cost),
    ("loss", Direction::Cost),
    ("history", Direction::Benefit),
];

/// Canonical order of level-1 criteria in hierarchy matrices.
pub const LEVEL1_CRITERIA: [&str; 4] = ["qos", "security", "cost", "history"];
/// Canonical order of level-2 QoS sub-criteria in hierarchy matrices.
pub const LEVEL2_QOS_CRITERIA: [&str; 4] = ["bandwidth", "delay", "jitter", "loss"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelectorError {
    #[error("{matrix} matrix has {got} criteria, expected {expected}")]
    HierarchyDimension {
        matrix: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("{matrix} matrix failed the consistency gate: CR = {cr:.4} >= 0.1")]
    ConsistencyGateFailure { matrix: &'static str, cr: f64 },
    #[error("weight vector has {got} entries, {algorithm} expects {expected}")]
    WeightDimension {
        algorithm: Algorithm,
        got: usize,
        expected: usize,
    },
    #[error("need at least two candidate networks, got {got}")]
    NotEnoughNetworks { got: usize },
    #[error("no history entry for network '{network}'")]
    MissingNetwork { network: String },
    #[error(transparent)]
    Fahp(#[from] FahpError),
    #[error(transparent)]
    Topsis(#[from] TopsisError),
}

/// Two-level preference hierarchy: level 1 weighs QoS, security, cost (and
/// history for [`Algorithm::Topsis2`]); level 2 weighs the QoS sub-criteria
/// bandwidth, delay, jitter, loss. Matrix rows follow [`LEVEL1_CRITERIA`]
/// and [`LEVEL2_QOS_CRITERIA`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaHierarchy {
    algorithm: Algorithm,
    level1: FuzzyPairwiseMatrix,
    level2_qos: FuzzyPairwiseMatrix,
}

impl CriteriaHierarchy {
    pub fn new(
        algorithm: Algorithm,
        level1: FuzzyPairwiseMatrix,
        level2_qos: FuzzyPairwiseMatrix,
    ) -> Result<Self, SelectorError> {
        if level1.n() != algorithm.level1_size() {
            return Err(SelectorError::HierarchyDimension {
                matrix: "level1",
                got: level1.n(),
                expected: algorithm.level1_size(),
            });
        }
        if level2_qos.n() != LEVEL2_QOS_CRITERIA.len() {
            return Err(SelectorError::HierarchyDimension {
                matrix: "level2_qos",
                got: level2_qos.n(),
                expected: LEVEL2_QOS_CRITERIA.len(),
            });
        }
        Ok(Self {
            algorithm,
            level1,
            level2_qos,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn level1(&self) -> &FuzzyPairwiseMatrix {
        &self.level1
    }

    pub fn level2_qos(&self) -> &FuzzyPairwiseMatrix {
        &self.level2_qos
    }

    /// Derives both weight vectors, gates each matrix on CR < 0.1, and
    /// distributes the level-1 QoS weight over the level-2 sub-criteria.
    /// Security, cost and history keep their level-1 weights.
    pub fn compose_weights(&self) -> Result<ComposedWeights, SelectorError> {
        let level1_weights = self.gated_weights(&self.level1, "level1")?;
        let level2_weights = self.gated_weights(&self.level2_qos, "level2_qos")?;

        let qos = level1_weights.get(0);
        let mut weights = vec![
            level1_weights.get(2),          // cost_per_byte
            level1_weights.get(1),          // security
            qos * level2_weights.get(0),    // bandwidth
            qos * level2_weights.get(1),    // delay
            qos * level2_weights.get(2),    // jitter
            qos * level2_weights.get(3),    // loss
        ];
        if self.algorithm.uses_history() {
            weights.push(level1_weights.get(3));
        }
        ComposedWeights::from_parts(self.algorithm, weights)
    }

    fn gated_weights(
        &self,
        matrix: &FuzzyPairwiseMatrix,
        name: &'static str,
    ) -> Result<WeightVector, SelectorError> {
        let weights = matrix.derive_weights();
        let report = matrix.consistency(&weights)?;
        if !report.acceptable {
            return Err(SelectorError::ConsistencyGateFailure {
                matrix: name,
                cr: report.cr,
            });
        }
        Ok(weights)
    }
}

/// Global per-column weights for one algorithm, in [`CRITERION_COLUMNS`]
/// order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComposedWeights {
    algorithm: Algorithm,
    weights: WeightVector,
}

impl ComposedWeights {
    /// Wraps an explicit weight vector. The length must match the
    /// algorithm's column count and the weights must be nonnegative and sum
    /// to 1.
    pub fn from_parts(algorithm: Algorithm, weights: Vec<f64>) -> Result<Self, SelectorError> {
        if weights.len() != algorithm.criterion_count() {
            return Err(SelectorError::WeightDimension {
                algorithm,
                got: weights.len(),
                expected: algorithm.criterion_count(),
            });
        }
        Ok(Self {
            algorithm,
            weights: WeightVector::new(weights)?,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Column specifications (name, direction, weight) for the decision
    /// matrix.
    pub fn criteria(&self) -> Vec<CriterionSpec> {
        CRITERION_COLUMNS
            .iter()
            .take(self.algorithm.criterion_count())
            .zip(self.weights.as_slice())
            .map(|(&(name, direction), &w)| CriterionSpec::new(name, direction, w))
            .collect()
    }
}

/// One network's measured attributes at a decision point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSnapshot {
    pub network: String,
    /// Relative cost per byte (%).
    pub cost_per_byte: f64,
    /// Relative security level (%).
    pub security: f64,
    /// Available bandwidth (mbps).
    pub bandwidth: f64,
    /// Packet delay (ms).
    pub delay: f64,
    /// Packet jitter (ms).
    pub jitter: f64,
    /// Packet loss (per 10^6 packets).
    pub loss: f64,
}

/// Per-network history scores in `[0, 1]`: 1 before the first decision,
/// afterwards each network's ranking score from the previous decision point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryState {
    scores: BTreeMap<String, f64>,
}

impl HistoryState {
    /// State before any decision: every network at 1.
    pub fn initial<I, S>(networks: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            scores: networks.into_iter().map(|n| (n.into(), 1.0)).collect(),
        }
    }

    /// Replaces the state with the latest per-network ranking scores. Every
    /// candidate updates, not only the chosen network.
    pub fn from_scores<'a, I>(scores: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        Self {
            scores: scores
                .into_iter()
                .map(|(n, c)| (n.to_string(), c))
                .collect(),
        }
    }

    pub fn get(&self, network: &str) -> Option<f64> {
        self.scores.get(network).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.scores.iter().map(|(n, &h)| (n.as_str(), h))
    }
}

/// Outcome of one selection: the chosen network, all scores, whether the
/// choice moved away from the previous network, and the history to carry
/// into the next decision point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionDecision {
    pub chosen: String,
    /// Ranking score per network, in snapshot order.
    pub scores: Vec<(String, f64)>,
    pub handoff: bool,
    pub updated_history: HistoryState,
}

/// Assembles the decision matrix for the algorithm's column set. `Topsis1`
/// uses the six measured attributes; `Topsis2` appends the history column.
pub fn build_decision_matrix(
    snapshots: &[NetworkSnapshot],
    history: &HistoryState,
    weights: &ComposedWeights,
) -> Result<DecisionMatrix, SelectorError> {
    if snapshots.len() < 2 {
        return Err(SelectorError::NotEnoughNetworks {
            got: snapshots.len(),
        });
    }
    let mut rows = Vec::with_capacity(snapshots.len());
    for snapshot in snapshots {
        let mut row = vec![
            snapshot.cost_per_byte,
            snapshot.security,
            snapshot.bandwidth,
            snapshot.delay,
            snapshot.jitter,
            snapshot.loss,
        ];
        if weights.algorithm().uses_history() {
            let h = history
                .get(&snapshot.network)
                .ok_or_else(|| SelectorError::MissingNetwork {
                    network: snapshot.network.clone(),
                })?;
            row.push(h);
        }
        rows.push(row);
    }
    let alternatives = snapshots.iter().map(|s| s.network.clone()).collect();
    Ok(DecisionMatrix::new(alternatives, weights.criteria(), rows)?)
}

/// Ranks the candidates and picks the network with the highest score.
///
/// Scores within [`TIE_EPS`] of the maximum count as tied; the previous
/// network wins a tie it participates in, otherwise the lowest index does.
/// The returned history maps every candidate to its fresh score.
pub fn select(
    snapshots: &[NetworkSnapshot],
    history: &HistoryState,
    weights: &ComposedWeights,
    current: Option<&str>,
) -> Result<SelectionDecision, SelectorError> {
    let matrix = build_decision_matrix(snapshots, history, weights)?;
    let ranking = matrix.rank();

    let best = ranking
        .closeness
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let tied = |i: usize| ranking.closeness[i] >= best - TIE_EPS;
    let chosen_index = current
        .and_then(|c| snapshots.iter().position(|s| s.network == c))
        .filter(|&i| tied(i))
        .unwrap_or_else(|| (0..snapshots.len()).find(|&i| tied(i)).expect("nonempty"));

    let chosen = snapshots[chosen_index].network.clone();
    let handoff = current.is_some_and(|c| c != chosen);
    let updated_history = HistoryState::from_scores(
        snapshots
            .iter()
            .zip(&ranking.closeness)
            .map(|(s, &c)| (s.network.as_str(), c)),
    );
    let scores = snapshots
        .iter()
        .zip(&ranking.closeness)
        .map(|(s, &c)| (s.network.clone(), c))
        .collect();

    Ok(SelectionDecision {
        chosen,
        scores,
        handoff,
        updated_history,
    })
}
