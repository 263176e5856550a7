//! The UPA growth process.
//!
//! Starting from a star on `l + 1` nodes, each step adds one node with one
//! outgoing edge. With probability `p` the target is picked uniformly among
//! the `w(t)` most recent nodes, otherwise proportionally to degree. Degrees
//! are total degrees (the new node's out-edge counts), so the degree sum is
//! exactly `2t` and degree-proportional sampling is a uniform draw from the
//! edge-endpoint list.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Window regime for the uniform attachment rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WindowSpec {
    /// The `l` most recent nodes.
    Fixed(u32),
    /// The `max(1, ceil(alpha * t))` most recent nodes.
    Linear(f64),
}

impl WindowSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WindowSpec::Fixed(l) if l >= 1 => Ok(()),
            WindowSpec::Fixed(l) => Err(Error::InvalidInput(format!(
                "fixed window size must be at least 1, got {l}"
            ))),
            WindowSpec::Linear(alpha) if alpha > 0.0 && alpha < 1.0 => Ok(()),
            WindowSpec::Linear(alpha) => Err(Error::InvalidInput(format!(
                "linear window factor must lie strictly between 0 and 1, got {alpha}"
            ))),
        }
    }

    /// Number of nodes eligible for the uniform rule at time `t`.
    ///
    /// For linear windows the product `alpha * t` is nudged 1e-12 below the
    /// ceiling boundary so that binary round-off landing a hair above an
    /// exact integer (0.2 * 55 = 11.000000000000002) does not inflate the
    /// window by one.
    pub fn size_at(&self, t: u64) -> u64 {
        match *self {
            WindowSpec::Fixed(l) => u64::from(l),
            WindowSpec::Linear(alpha) => {
                let w = (alpha * t as f64 - 1e-12).ceil() as u64;
                w.max(1)
            }
        }
    }
}

impl FromStr for WindowSpec {
    type Err = Error;

    /// Parses `"fixed:<l>"` or `"linear:<alpha>"`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("window must be fixed:<l> or linear:<alpha>, got {s:?}")))?;
        let spec = match kind {
            "fixed" => WindowSpec::Fixed(
                value
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad fixed window size {value:?}")))?,
            ),
            "linear" => WindowSpec::Linear(
                value
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad linear window factor {value:?}")))?,
            ),
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown window kind {other:?} (expected fixed or linear)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl std::fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            WindowSpec::Fixed(l) => write!(f, "fixed:{l}"),
            WindowSpec::Linear(alpha) => write!(f, "linear:{alpha}"),
        }
    }
}

/// Full specification of one UPA process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Probability of the uniform-in-window rule.
    pub p: f64,
    pub window: WindowSpec,
    /// Final time `T`.
    pub horizon: u64,
    /// Start time and initial-graph parameter; the star has `init_l + 1` nodes.
    /// Tied to `l` for fixed windows, free (default 1) for linear ones.
    pub init_l: u64,
    pub seed: u64,
}

impl ModelParams {
    pub fn new(p: f64, window: WindowSpec, horizon: u64, init_l: u64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
        }
        window.validate()?;
        if init_l < 1 {
            return Err(Error::InvalidInput("init_l must be at least 1".into()));
        }
        if let WindowSpec::Fixed(l) = window {
            if init_l != u64::from(l) {
                return Err(Error::InvalidInput(format!(
                    "fixed windows tie the initial graph to the window: init_l must equal l (init_l = {init_l}, l = {l})"
                )));
            }
        }
        if horizon < init_l {
            return Err(Error::InvalidInput(format!(
                "horizon must be at least init_l (horizon = {horizon}, init_l = {init_l})"
            )));
        }
        if horizon >= u64::from(u32::MAX) {
            return Err(Error::InvalidInput(format!(
                "horizon {horizon} exceeds the supported node-id range"
            )));
        }
        Ok(Self { p, window, horizon, init_l, seed })
    }

    /// Fixed-window process; the initial graph parameter is `l` itself.
    pub fn fixed(p: f64, l: u32, horizon: u64, seed: u64) -> Result<Self> {
        Self::new(p, WindowSpec::Fixed(l), horizon, u64::from(l), seed)
    }

    /// Linear-window process with an explicit initial graph parameter.
    pub fn linear(p: f64, alpha: f64, init_l: u64, horizon: u64, seed: u64) -> Result<Self> {
        Self::new(p, WindowSpec::Linear(alpha), horizon, init_l, seed)
    }

    /// RNG for ensemble run `run`. Distinct runs get distinct ChaCha streams
    /// of the same seed, so results do not depend on scheduling order and
    /// never overlap. Run 0 is the stream `simulate` itself uses.
    pub fn run_rng(&self, run: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(run);
        rng
    }
}

/// Evolving graph: per-node degrees plus the flat edge-endpoint list used
/// for degree-proportional sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphState {
    t: u64,
    degrees: Vec<u32>,
    endpoint_list: Vec<u32>,
    edge_targets: Option<Vec<u32>>,
}

impl GraphState {
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn node_count(&self) -> u64 {
        self.degrees.len() as u64
    }

    pub fn degree(&self, node: u32) -> u32 {
        self.degrees[node as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Node `v` appears here `deg(v)` times; length is `2t`.
    pub fn endpoint_list(&self) -> &[u32] {
        &self.endpoint_list
    }

    /// `edge_targets()[j - 1]` is the neighbour chosen by node `v_j`.
    /// Present only when the state was grown with edge retention.
    pub fn edge_targets(&self) -> Option<&[u32]> {
        self.edge_targets.as_deref()
    }

    /// Advances the process one step: adds node `v_{t+1}` with one edge.
    pub fn step<R: Rng>(&mut self, params: &ModelParams, rng: &mut R) {
        let t = self.t;
        let target = if rng.random_bool(params.p) {
            let w = params.window.size_at(t);
            debug_assert!(w >= 1 && w <= t, "window {w} invalid at t = {t}");
            (t - w + 1 + rng.random_range(0..w)) as u32
        } else {
            self.endpoint_list[rng.random_range(0..self.endpoint_list.len())]
        };
        let new_node = (t + 1) as u32;
        self.degrees.push(1);
        self.degrees[target as usize] += 1;
        self.endpoint_list.push(new_node);
        self.endpoint_list.push(target);
        if let Some(targets) = &mut self.edge_targets {
            targets.push(target);
        }
        self.t = t + 1;
    }

    /// Counts nodes by degree at the current time.
    pub fn degree_histogram(&self) -> DegreeHistogram {
        let mut counts = BTreeMap::new();
        for &d in &self.degrees {
            *counts.entry(d).or_insert(0u64) += 1;
        }
        DegreeHistogram { t: self.t, counts }
    }
}

/// The star `G^l`: nodes `v_0 .. v_l`, every `v_j` (j >= 1) linked to `v_0`.
pub fn init_graph(params: &ModelParams) -> GraphState {
    init_graph_inner(params, false)
}

fn init_graph_inner(params: &ModelParams, retain_edges: bool) -> GraphState {
    let l = params.init_l;
    let mut degrees = Vec::with_capacity((params.horizon + 1) as usize);
    degrees.push(l as u32);
    degrees.extend(std::iter::repeat(1).take(l as usize));
    let mut endpoint_list = Vec::with_capacity(2 * params.horizon as usize);
    for j in 1..=l {
        endpoint_list.push(j as u32);
        endpoint_list.push(0);
    }
    let edge_targets = retain_edges.then(|| {
        let mut targets = Vec::with_capacity(params.horizon as usize);
        targets.extend(std::iter::repeat(0).take(l as usize));
        targets
    });
    GraphState { t: l, degrees, endpoint_list, edge_targets }
}

/// Runs the process to its horizon on ensemble stream `run`, keeping the
/// full per-node state. `retain_edges` additionally records every chosen
/// neighbour for full-graph export.
pub fn grow_run(params: &ModelParams, run: u64, retain_edges: bool) -> GraphState {
    let mut rng = params.run_rng(run);
    let mut state = init_graph_inner(params, retain_edges);
    for _ in params.init_l..params.horizon {
        state.step(params, &mut rng);
    }
    state
}

/// Runs the process to its horizon on stream 0, keeping the full state.
pub fn grow(params: &ModelParams, retain_edges: bool) -> GraphState {
    grow_run(params, 0, retain_edges)
}

/// Runs the process once and returns a degree histogram at each requested
/// time. Snapshot times must be strictly increasing and lie in
/// `[init_l, horizon]`. Bit-reproducible for fixed `(params, seed)`.
pub fn simulate(params: &ModelParams, snapshot_times: &[u64]) -> Result<Vec<DegreeHistogram>> {
    simulate_run(params, 0, snapshot_times)
}

/// Same as [`simulate`] on ensemble stream `run`.
pub fn simulate_run(params: &ModelParams, run: u64, snapshot_times: &[u64]) -> Result<Vec<DegreeHistogram>> {
    for pair in snapshot_times.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidInput(format!(
                "snapshot times must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    if let Some((&first, &last)) = snapshot_times.first().zip(snapshot_times.last()) {
        if first < params.init_l || last > params.horizon {
            return Err(Error::InvalidInput(format!(
                "snapshot times must lie in [{}, {}]",
                params.init_l, params.horizon
            )));
        }
    }

    let mut rng = params.run_rng(run);
    let mut state = init_graph_inner(params, false);
    let mut snapshots = Vec::with_capacity(snapshot_times.len());
    let mut pending = snapshot_times.iter().peekable();
    if pending.next_if_eq(&&params.init_l).is_some() {
        snapshots.push(state.degree_histogram());
    }
    for _ in params.init_l..params.horizon {
        state.step(params, &mut rng);
        if pending.next_if_eq(&&state.t).is_some() {
            snapshots.push(state.degree_histogram());
        }
    }
    Ok(snapshots)
}

/// `N(k, t)`: number of nodes of each degree at a snapshot time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub t: u64,
    /// degree -> node count; degrees with zero count are absent.
    pub counts: BTreeMap<u32, u64>,
}

impl DegreeHistogram {
    pub fn count(&self, k: u32) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// Total node count; equals `t + 1` for any reachable state.
    pub fn node_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Sum of degrees; equals `2t` for any reachable state.
    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().map(|(&k, &c)| u64::from(k) * c).sum()
    }

    pub fn max_degree(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Adds another run's counts taken at the same snapshot time.
    pub fn absorb(&mut self, other: &DegreeHistogram) -> Result<()> {
        if self.t != other.t {
            return Err(Error::InvalidInput(format!(
                "cannot pool histograms at different times ({} vs {})",
                self.t, other.t
            )));
        }
        for (&k, &c) in &other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_consistency(state: &GraphState) {
        let t = state.t();
        assert_eq!(state.node_count(), t + 1);
        let degree_sum: u64 = state.degrees().iter().map(|&d| u64::from(d)).sum();
        assert_eq!(degree_sum, 2 * t);
        assert_eq!(state.endpoint_list().len() as u64, 2 * t);
        assert!(state.degrees().iter().all(|&d| d >= 1));
        // Endpoint multiset equals the degree multiset.
        let mut occurrences = vec![0u32; state.node_count() as usize];
        for &v in state.endpoint_list() {
            occurrences[v as usize] += 1;
        }
        assert_eq!(occurrences, state.degrees());
    }

    #[test]
    fn init_graph_l1_is_a_single_edge() {
        let params = ModelParams::fixed(0.5, 1, 10, 0).unwrap();
        let state = init_graph(&params);
        assert_eq!(state.t(), 1);
        assert_eq!(state.degrees(), &[1, 1]);
        check_consistency(&state);
        assert_eq!(state.degree_histogram().counts, BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn init_graph_l10_is_a_star() {
        let params = ModelParams::fixed(0.5, 10, 20, 0).unwrap();
        let state = init_graph(&params);
        assert_eq!(state.t(), 10);
        assert_eq!(state.degree(0), 10);
        for j in 1..=10 {
            assert_eq!(state.degree(j), 1);
        }
        assert_eq!(state.degrees().iter().map(|&d| u64::from(d)).sum::<u64>(), 20);
        check_consistency(&state);
    }

    #[test]
    fn init_graph_l3_histogram() {
        let params = ModelParams::fixed(0.2, 3, 5, 0).unwrap();
        let hist = init_graph(&params).degree_histogram();
        assert_eq!(hist.counts, BTreeMap::from([(1, 3), (3, 1)]));
        assert_eq!(hist.node_count(), 4);
    }

    #[test]
    fn pure_window_l1_grows_a_path() {
        // Window of size 1 holds only the newest node, so p = 1 chains nodes.
        let params = ModelParams::fixed(1.0, 1, 100, 7).unwrap();
        let hist = simulate(&params, &[100]).unwrap().pop().unwrap();
        assert_eq!(hist.counts, BTreeMap::from([(1, 2), (2, 99)]));
    }

    #[test]
    fn step_preserves_invariants() {
        let params = ModelParams::fixed(0.5, 10, 101, 42).unwrap();
        let mut rng = params.run_rng(0);
        let mut state = init_graph(&params);
        for _ in params.init_l..params.horizon {
            let before = state.degrees().iter().map(|&d| u64::from(d)).sum::<u64>();
            state.step(&params, &mut rng);
            let after = state.degrees().iter().map(|&d| u64::from(d)).sum::<u64>();
            assert_eq!(after, before + 2);
        }
        check_consistency(&state);
        let hist = state.degree_histogram();
        assert_eq!(hist.node_count(), 102);
        assert_eq!(hist.degree_sum(), 202);
    }

    #[test]
    fn endpoint_list_counts_match_degrees_exactly() {
        // On a 5-node graph the endpoint list realizes deg(v)/2t sampling:
        // each node id appears exactly deg(v) times out of 2t slots.
        let params = ModelParams::fixed(0.0, 1, 4, 3).unwrap();
        let state = grow(&params, false);
        assert_eq!(state.node_count(), 5);
        check_consistency(&state);
    }

    #[test]
    fn deterministic_edge_targets_for_fixed_seed() {
        let params = ModelParams::fixed(0.3, 5, 500, 99).unwrap();
        let a = grow(&params, true);
        let b = grow(&params, true);
        assert_eq!(a.edge_targets().unwrap(), b.edge_targets().unwrap());
        assert_eq!(a, b);
        // Another stream diverges.
        let c = grow_run(&params, 1, true);
        assert_ne!(a.edge_targets().unwrap(), c.edge_targets().unwrap());
    }

    #[test]
    fn p_zero_never_consults_the_window() {
        // With p = 0 the Bernoulli draw always takes the preferential branch,
        // so linear and fixed windows of the same init_l produce the same graph.
        let fixed = ModelParams::fixed(0.0, 1, 300, 11).unwrap();
        let linear = ModelParams::linear(0.0, 0.4, 1, 300, 11).unwrap();
        assert_eq!(grow(&fixed, true), grow(&linear, true));
    }

    #[test]
    fn linear_window_sizes_stay_valid() {
        let spec = WindowSpec::Linear(0.5);
        for t in 1..2000 {
            let w = spec.size_at(t);
            assert!(w >= 1 && w <= t, "w = {w} at t = {t}");
        }
        // Exact-integer products must not jump a size: 0.2 * 55 = 11, not 12.
        assert_eq!(WindowSpec::Linear(0.2).size_at(55), 11);
        assert_eq!(WindowSpec::Linear(0.2).size_at(5), 1);
        assert_eq!(WindowSpec::Linear(0.25).size_at(8), 2);
    }

    #[test]
    fn linear_window_simulation_runs() {
        let params = ModelParams::linear(0.8, 0.5, 1, 2000, 5).unwrap();
        let hist = simulate(&params, &[2000]).unwrap().pop().unwrap();
        assert_eq!(hist.node_count(), 2001);
        assert_eq!(hist.degree_sum(), 4000);
    }

    #[test]
    fn snapshot_validation() {
        let params = ModelParams::fixed(0.5, 10, 100, 0).unwrap();
        assert!(simulate(&params, &[5]).is_err());
        assert!(simulate(&params, &[101]).is_err());
        assert!(simulate(&params, &[50, 50]).is_err());
        assert!(simulate(&params, &[50, 20]).is_err());
        let snaps = simulate(&params, &[10, 50, 100]).unwrap();
        assert_eq!(snaps.len(), 3);
        assert_eq!(snaps[0].t, 10);
        assert_eq!(snaps[2].t, 100);
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::fixed(-0.1, 1, 10, 0).is_err());
        assert!(ModelParams::fixed(1.1, 1, 10, 0).is_err());
        assert!(ModelParams::fixed(0.5, 0, 10, 0).is_err());
        assert!(ModelParams::fixed(0.5, 20, 10, 0).is_err());
        assert!(ModelParams::linear(0.5, 0.0, 1, 10, 0).is_err());
        assert!(ModelParams::linear(0.5, 1.0, 1, 10, 0).is_err());
        // init_l tied to l for fixed windows.
        assert!(ModelParams::new(0.5, WindowSpec::Fixed(3), 10, 2, 0).is_err());
        assert!(ModelParams::new(0.5, WindowSpec::Fixed(3), 10, 3, 0).is_ok());
    }

    #[test]
    fn window_spec_parsing() {
        assert_eq!("fixed:10".parse::<WindowSpec>().unwrap(), WindowSpec::Fixed(10));
        assert_eq!("linear:0.5".parse::<WindowSpec>().unwrap(), WindowSpec::Linear(0.5));
        assert!("fixed:0".parse::<WindowSpec>().is_err());
        assert!("linear:1.5".parse::<WindowSpec>().is_err());
        assert!("ring:3".parse::<WindowSpec>().is_err());
        assert!("fixed".parse::<WindowSpec>().is_err());
    }
}
