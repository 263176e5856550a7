//! Exact recursions for the expected degree counts.
//!
//! For window size 1 the counts `E[N(k, t)]` evolve by a three-branch
//! first-order recursion. For window size `l > 1` the recursion consumes,
//! at every step, the degree law of each window slot (`M_m(t)` is the degree
//! of the `m`-th oldest node inside the window); those laws evolve by their
//! own two-term recursion. Both recursions conserve mass exactly:
//! `sum_k E[N(k,t)] = t + 1` and `sum_k k E[N(k,t)] = 2t`.
//!
//! The steppers hold a single time slice and advance in place; the
//! [`ExpectedCountTable`] snapshots whichever columns were requested.

use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// `E[N(k, t)]` at selected times for `1 <= k <= kmax`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedCountTable {
    pub p: f64,
    /// Window size (1 selects the single-slot recursion).
    pub l: u32,
    pub kmax: u32,
    /// Snapshot times, ascending.
    pub times: Vec<u64>,
    /// `columns[i][k - 1] = E[N(k, times[i])]`.
    pub columns: Vec<Vec<f64>>,
}

impl ExpectedCountTable {
    pub fn column(&self, t: u64) -> Option<&[f64]> {
        let i = self.times.iter().position(|&s| s == t)?;
        Some(&self.columns[i])
    }

    pub fn value(&self, k: u32, t: u64) -> Option<f64> {
        if k < 1 || k > self.kmax {
            return None;
        }
        self.column(t).map(|col| col[(k - 1) as usize])
    }
}

/// Stepper for the window-size-1 recursion.
///
/// Starts at `t = 1` with `E[N(1, 1)] = 2`; `advance` moves one time step.
/// Updates run top-down in degree so each new column is computed in place
/// from the previous one. Work per step is `O(min(t, kmax))`.
#[derive(Debug, Clone)]
pub struct L1Expectation {
    p: f64,
    t: u64,
    counts: Vec<f64>,
    /// Largest degree with possibly nonzero mass: `min(t, kmax)`.
    hi: u32,
}

impl L1Expectation {
    pub fn new(p: f64, kmax: u32) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
        }
        if kmax < 2 {
            return Err(Error::InvalidInput("kmax must be at least 2".into()));
        }
        let mut counts = vec![0.0; kmax as usize];
        counts[0] = 2.0;
        Ok(Self { p, t: 1, counts, hi: 1 })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// `counts()[k - 1] = E[N(k, t)]` at the current time.
    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn advance(&mut self) {
        let q = 1.0 - self.p;
        let two_t = 2.0 * self.t as f64;
        let kmax = self.counts.len() as u32;
        let hi = (self.t + 1).min(u64::from(kmax)) as u32;
        let c = &mut self.counts;
        for k in (3..=hi).rev() {
            let kf = f64::from(k);
            let i = (k - 1) as usize;
            c[i] = (1.0 - q * kf / two_t) * c[i] + q * (kf - 1.0) / two_t * c[i - 1];
        }
        if hi >= 2 {
            // The k = 2 coefficient is written as in the source relation,
            // 1 - (1-p)/t, not re-derived from the k > 2 branch.
            c[1] = (1.0 - 2.0 * q / two_t) * c[1] + q / two_t * c[0] + self.p;
        }
        c[0] = (1.0 - q / two_t) * c[0] + q;
        self.t += 1;
        self.hi = hi;
    }

    pub fn advance_to(&mut self, t: u64) {
        while self.t < t {
            self.advance();
        }
    }
}

/// Degree law of every window slot at one time: `probs(m, k) = P(M_m(t) = k)`.
///
/// Slot `m` entered the window at degree 1 and has been inside for `l - m`
/// steps, so `P(M_m(t) = k) = 0` whenever `k > l - m + 1`; the update
/// preserves those zeros exactly. Only the current slice is stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowDegreeMatrix {
    l: u32,
    t: u64,
    /// Row-major `l x l`: `probs[(m-1)*l + (k-1)]`.
    probs: Vec<f64>,
}

impl WindowDegreeMatrix {
    /// The matrix at the start time `t = l`: every slot sits at degree 1.
    pub fn initial(l: u32) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidInput(format!(
                "window degree laws are defined for l >= 2, got {l}"
            )));
        }
        let n = l as usize;
        let mut probs = vec![0.0; n * n];
        for m in 0..n {
            probs[m * n] = 1.0;
        }
        Ok(Self { l, t: u64::from(l), probs })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// `P(M_m(t) = k)`, 1-based in both arguments; zero for `k > l`.
    pub fn prob(&self, m: u32, k: u32) -> f64 {
        assert!(m >= 1 && m <= self.l, "slot {m} out of range 1..={}", self.l);
        assert!(k >= 1, "degree must be at least 1");
        if k > self.l {
            return 0.0;
        }
        self.probs[((m - 1) * self.l + (k - 1)) as usize]
    }

    pub fn row(&self, m: u32) -> &[f64] {
        let l = self.l as usize;
        let start = (m as usize - 1) * l;
        &self.probs[start..start + l]
    }

    /// `S_k = sum_m P(M_m(t) = k)` for `k = 1..=l`.
    pub fn slot_sums(&self) -> Vec<f64> {
        let l = self.l as usize;
        let mut sums = vec![0.0; l];
        for m in 0..l {
            for k in 0..l {
                sums[k] += self.probs[m * l + k];
            }
        }
        sums
    }

    /// One time step. A slot either keeps its degree or gains one link;
    /// the hit probability for a degree-`j` node is
    /// `p/l + (1-p) j/(2t)`, and at `t + 1` every slot's law is the shifted
    /// law of its right neighbour (the newest slot re-enters at degree 1).
    pub fn advance(&mut self, p: f64) {
        let l = self.l as usize;
        let two_t = 2.0 * self.t as f64;
        let pl = p / self.l as f64;
        let hit = |j: f64| pl + (1.0 - p) * j / two_t;
        for m in 0..l - 1 {
            let dst = m * l;
            let src = (m + 1) * l;
            for k in (2..=l).rev() {
                let stay = 1.0 - hit(k as f64);
                let gain = hit(k as f64 - 1.0);
                self.probs[dst + k - 1] =
                    stay * self.probs[src + k - 1] + gain * self.probs[src + k - 2];
            }
            self.probs[dst] = (1.0 - hit(1.0)) * self.probs[src];
        }
        let last = (l - 1) * l;
        self.probs[last] = 1.0;
        self.probs[last + 1..last + l].fill(0.0);
        self.t += 1;
    }
}

/// The slot-law matrices at every time in `[l, t_max]`.
///
/// Materializes `(t_max - l + 1)` matrices of `l * l` entries; for long
/// horizons step a [`WindowDegreeMatrix`] directly instead.
pub fn window_degree_evolution(p: f64, l: u32, t_max: u64) -> Result<Vec<WindowDegreeMatrix>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
    }
    if t_max < u64::from(l) {
        return Err(Error::InvalidInput(format!(
            "t_max must be at least l (t_max = {t_max}, l = {l})"
        )));
    }
    let mut matrix = WindowDegreeMatrix::initial(l)?;
    let mut out = Vec::with_capacity((t_max - u64::from(l) + 1) as usize);
    out.push(matrix.clone());
    while matrix.t() < t_max {
        matrix.advance(p);
        out.push(matrix.clone());
    }
    Ok(out)
}

/// Stepper for the window-size-`l > 1` recursion, coupling the expected
/// counts to the window slot laws.
///
/// Starts at `t = l` with `E[N(1, l)] = l`, `E[N(l, l)] = 1`.
#[derive(Debug, Clone)]
pub struct WindowExpectation {
    p: f64,
    l: u32,
    t: u64,
    counts: Vec<f64>,
    window: WindowDegreeMatrix,
    hi: u32,
}

impl WindowExpectation {
    pub fn new(p: f64, l: u32, kmax: u32) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")));
        }
        if l < 2 {
            return Err(Error::InvalidInput(
                "the window recursion requires l >= 2; window size 1 has its own recursion".into(),
            ));
        }
        if kmax < l + 1 {
            return Err(Error::InvalidInput(format!(
                "kmax must be at least l + 1 (kmax = {kmax}, l = {l})"
            )));
        }
        let mut counts = vec![0.0; kmax as usize];
        counts[0] = f64::from(l);
        counts[(l - 1) as usize] = 1.0;
        Ok(Self { p, l, t: u64::from(l), counts, window: WindowDegreeMatrix::initial(l)?, hi: l })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// `counts()[k - 1] = E[N(k, t)]` at the current time.
    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    /// The slot-law matrix at the current time.
    pub fn window(&self) -> &WindowDegreeMatrix {
        &self.window
    }

    pub fn advance(&mut self) {
        let q = 1.0 - self.p;
        let pl = self.p / f64::from(self.l);
        let two_t = 2.0 * self.t as f64;
        let sums = self.window.slot_sums();
        let slot_sum = |k: u32| -> f64 {
            if k >= 1 && k <= self.l {
                sums[(k - 1) as usize]
            } else {
                0.0
            }
        };
        let kmax = self.counts.len() as u32;
        let hi = (self.t + 1).min(u64::from(kmax)) as u32;
        let c = &mut self.counts;
        for k in (2..=hi).rev() {
            let kf = f64::from(k);
            let i = (k - 1) as usize;
            c[i] += pl * (slot_sum(k - 1) - slot_sum(k))
                + q / two_t * ((kf - 1.0) * c[i - 1] - kf * c[i]);
        }
        c[0] += 1.0 - pl * slot_sum(1) - q / two_t * c[0];
        self.window.advance(self.p);
        self.t += 1;
        self.hi = hi;
    }

    pub fn advance_to(&mut self, t: u64) {
        while self.t < t {
            self.advance();
        }
    }
}

fn validate_times(times: &[u64], t0: u64) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidInput("at least one snapshot time is required".into()));
    }
    for pair in times.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidInput(format!(
                "times must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    if times[0] < t0 {
        return Err(Error::InvalidInput(format!(
            "times must be at least the start time {t0}, got {}",
            times[0]
        )));
    }
    Ok(())
}

/// `E[N(k, t)]` columns at the requested times for window size 1.
pub fn expected_counts_l1_at(p: f64, times: &[u64], kmax: u32) -> Result<ExpectedCountTable> {
    validate_times(times, 1)?;
    let mut stepper = L1Expectation::new(p, kmax)?;
    let mut columns = Vec::with_capacity(times.len());
    for &t in times {
        stepper.advance_to(t);
        columns.push(stepper.counts().to_vec());
    }
    Ok(ExpectedCountTable { p, l: 1, kmax, times: times.to_vec(), columns })
}

/// The full `E[N(k, t)]` grid over `t in [1, t_max]` for window size 1.
/// Stores every column; use [`expected_counts_l1_at`] or [`L1Expectation`]
/// when only a few times matter.
pub fn expected_counts_l1(p: f64, t_max: u64, kmax: u32) -> Result<ExpectedCountTable> {
    if t_max < 1 {
        return Err(Error::InvalidInput("t_max must be at least 1".into()));
    }
    let times: Vec<u64> = (1..=t_max).collect();
    expected_counts_l1_at(p, &times, kmax)
}

/// `E[N(k, t)]` columns at the requested times for window size `l > 1`.
pub fn expected_counts_window_at(p: f64, l: u32, times: &[u64], kmax: u32) -> Result<ExpectedCountTable> {
    validate_times(times, u64::from(l))?;
    let mut stepper = WindowExpectation::new(p, l, kmax)?;
    let mut columns = Vec::with_capacity(times.len());
    for &t in times {
        stepper.advance_to(t);
        columns.push(stepper.counts().to_vec());
    }
    Ok(ExpectedCountTable { p, l, kmax, times: times.to_vec(), columns })
}

/// The full `E[N(k, t)]` grid over `t in [l, t_max]` for window size `l > 1`.
pub fn expected_counts_window(p: f64, l: u32, t_max: u64, kmax: u32) -> Result<ExpectedCountTable> {
    if t_max < u64::from(l) {
        return Err(Error::InvalidInput(format!(
            "t_max must be at least l (t_max = {t_max}, l = {l})"
        )));
    }
    let times: Vec<u64> = (u64::from(l)..=t_max).collect();
    expected_counts_window_at(p, l, &times, kmax)
}

/// Routes to the recursion matching `params.window`; fixed windows only.
pub fn expected_counts_at(params: &ModelParams, times: &[u64], kmax: u32) -> Result<ExpectedCountTable> {
    match params.window {
        crate::model::WindowSpec::Fixed(1) => expected_counts_l1_at(params.p, times, kmax),
        crate::model::WindowSpec::Fixed(l) => expected_counts_window_at(params.p, l, times, kmax),
        crate::model::WindowSpec::Linear(_) => Err(Error::Unsupported(
            "no exact expectation recursion exists for linear windows".into(),
        )),
    }
}

/// Per-degree mean and standard error of `N(k, t)` over a seeded ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloCounts {
    pub runs: u32,
    pub t: u64,
    /// `mean[k - 1]` = ensemble mean of `N(k, t)`, `k = 1..=kmax`.
    pub mean: Vec<f64>,
    /// Sample standard deviation / sqrt(runs); zeros when `runs < 2`.
    pub stderr: Vec<f64>,
}

/// Monte Carlo estimate of `E[N(k, t)]`, the verification bridge between
/// the recursions and the simulator.
pub fn monte_carlo_expected_counts(
    params: &ModelParams,
    runs: u32,
    t: u64,
    kmax: u32,
) -> Result<MonteCarloCounts> {
    if runs < 2 {
        return Err(Error::InvalidInput("at least 2 runs are required".into()));
    }
    let ensemble = analysis::run_ensemble(params, runs, t)?;
    let pad = |v: &[f64]| {
        let mut out = v.to_vec();
        out.resize(kmax as usize, 0.0);
        out.truncate(kmax as usize);
        out
    };
    Ok(MonteCarloCounts { runs, t, mean: pad(&ensemble.mean), stderr: pad(&ensemble.stderr) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column_sums(counts: &[f64]) -> (f64, f64) {
        let total: f64 = counts.iter().sum();
        let weighted: f64 = counts.iter().enumerate().map(|(i, c)| (i + 1) as f64 * c).sum();
        (total, weighted)
    }

    #[test]
    fn l1_initial_conditions() {
        let stepper = L1Expectation::new(0.5, 10).unwrap();
        assert_eq!(stepper.t(), 1);
        assert_eq!(stepper.counts()[0], 2.0);
        assert!(stepper.counts()[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn l1_hand_iteration_p0() {
        // One step of the recursion by hand at p = 0:
        //   E[N(1,2)] = (1 - 1/2) * 2 + 1 = 2
        //   E[N(2,2)] = (1 - 1/1) * 0 + (1/2) * 2 = 1
        let mut s = L1Expectation::new(0.0, 8).unwrap();
        s.advance();
        assert!((s.counts()[0] - 2.0).abs() < 1e-15);
        assert!((s.counts()[1] - 1.0).abs() < 1e-15);
        // And a second step:
        //   E[N(1,3)] = (1 - 1/4) * 2 + 1   = 2.5
        //   E[N(2,3)] = (1 - 1/2) * 1 + 2/4 = 1.0
        //   E[N(3,3)] = (2/4) * 1           = 0.5
        s.advance();
        assert!((s.counts()[0] - 2.5).abs() < 1e-15);
        assert!((s.counts()[1] - 1.0).abs() < 1e-15);
        assert!((s.counts()[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn l1_hand_iteration_p_half() {
        // Two hand steps at p = 0.5.
        let mut s = L1Expectation::new(0.5, 8).unwrap();
        s.advance();
        assert!((s.counts()[0] - 2.0).abs() < 1e-15);
        assert!((s.counts()[1] - 1.0).abs() < 1e-15);
        s.advance();
        assert!((s.counts()[0] - 2.25).abs() < 1e-15);
        assert!((s.counts()[1] - 1.5).abs() < 1e-15);
        assert!((s.counts()[2] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn l1_pure_window_is_the_path() {
        // At p = 1 every (1-p) term vanishes: E[N(1,t)] = 2, E[N(2,t)] = t - 1.
        let mut s = L1Expectation::new(1.0, 5).unwrap();
        for _ in 1..50 {
            s.advance();
        }
        assert_eq!(s.t(), 50);
        assert!((s.counts()[0] - 2.0).abs() < 1e-12);
        assert!((s.counts()[1] - 49.0).abs() < 1e-12);
        assert!(s.counts()[2..].iter().all(|&c| c.abs() < 1e-12));
    }

    #[test]
    fn l1_conservation() {
        for &p in &[0.0, 0.2, 0.5, 0.8, 1.0] {
            let t_max = 400u64;
            let mut s = L1Expectation::new(p, t_max as u32).unwrap();
            for _ in 1..t_max {
                s.advance();
                let (total, weighted) = column_sums(s.counts());
                let t = s.t() as f64;
                assert!((total - (t + 1.0)).abs() < 1e-10, "p={p} t={t} total={total}");
                assert!((weighted - 2.0 * t).abs() < 1e-10, "p={p} t={t} weighted={weighted}");
            }
        }
    }

    #[test]
    fn window_matrix_initial_and_support() {
        let m = WindowDegreeMatrix::initial(4).unwrap();
        for slot in 1..=4 {
            assert_eq!(m.prob(slot, 1), 1.0);
            for k in 2..=4 {
                assert_eq!(m.prob(slot, k), 0.0);
            }
        }
    }

    #[test]
    fn window_matrix_hand_iteration() {
        // l = 2, p = 0.5. Advancing t = 2 -> 3 (coefficients at t = 2):
        //   stay(1) = 1 - (0.25 + 0.5/4) = 0.625, so row 1 = [0.625, 0.375].
        let mut m = WindowDegreeMatrix::initial(2).unwrap();
        m.advance(0.5);
        assert_eq!(m.t(), 3);
        assert!((m.prob(1, 1) - 0.625).abs() < 1e-15);
        assert!((m.prob(1, 2) - 0.375).abs() < 1e-15);
        assert_eq!(m.prob(2, 1), 1.0);
        assert_eq!(m.prob(2, 2), 0.0);
        // t = 3 -> 4: stay(1) = 1 - (0.25 + 0.5/6) = 2/3.
        m.advance(0.5);
        assert!((m.prob(1, 1) - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.prob(1, 2) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn window_matrix_rows_are_distributions() {
        for &(p, l) in &[(0.0, 3u32), (0.5, 2), (0.5, 10), (0.9, 7), (1.0, 5)] {
            let mut m = WindowDegreeMatrix::initial(l).unwrap();
            for _ in 0..500 {
                m.advance(p);
                for slot in 1..=l {
                    let sum: f64 = m.row(slot).iter().sum();
                    assert!((sum - 1.0).abs() < 1e-12, "p={p} l={l} slot={slot} sum={sum}");
                    // Structural support bound: slot m cannot exceed degree l - m + 1.
                    for k in (l - slot + 2)..=l {
                        assert_eq!(m.prob(slot, k), 0.0, "p={p} l={l} slot={slot} k={k}");
                    }
                }
                assert_eq!(m.prob(l, 1), 1.0);
            }
        }
    }

    #[test]
    fn window_matrix_newest_slot_limit() {
        // l = 2, p = 0.5: P(M_1(t) = 1) -> 1 - p/l = 0.75.
        let mut m = WindowDegreeMatrix::initial(2).unwrap();
        for _ in 0..200_000 {
            m.advance(0.5);
        }
        assert!((m.prob(1, 1) - 0.75).abs() < 1e-5);
    }

    #[test]
    fn window_counts_initial_conditions() {
        let s = WindowExpectation::new(0.5, 10, 20).unwrap();
        assert_eq!(s.t(), 10);
        assert_eq!(s.counts()[0], 10.0);
        assert_eq!(s.counts()[9], 1.0);
        let (total, weighted) = column_sums(s.counts());
        assert_eq!(total, 11.0);
        assert_eq!(weighted, 20.0);
    }

    #[test]
    fn window_counts_hand_iteration() {
        // l = 2, p = 0.5, one step from t = 2 (S_1 = 2, S_2 = 0):
        //   E[N(1,3)] = 2 + 1 - 0.25*2 - (0.5/4)*2      = 2.25
        //   E[N(2,3)] = 1 + 0.25*(2-0) + (0.5/4)*(2-2)  = 1.5
        //   E[N(3,3)] = 0 + 0          + (0.5/4)*(2*1)  = 0.25
        let mut s = WindowExpectation::new(0.5, 2, 8).unwrap();
        s.advance();
        assert!((s.counts()[0] - 2.25).abs() < 1e-15);
        assert!((s.counts()[1] - 1.5).abs() < 1e-15);
        assert!((s.counts()[2] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn window_counts_conservation() {
        for &(p, l) in &[(0.0, 2u32), (0.5, 2), (0.5, 10), (0.8, 5), (1.0, 10)] {
            let t_max = 300u64;
            let mut s = WindowExpectation::new(p, l, t_max as u32).unwrap();
            while s.t() < t_max {
                s.advance();
                let (total, weighted) = column_sums(s.counts());
                let t = s.t() as f64;
                assert!((total - (t + 1.0)).abs() < 1e-10, "p={p} l={l} t={t} total={total}");
                assert!((weighted - 2.0 * t).abs() < 1e-10, "p={p} l={l} t={t}");
            }
        }
    }

    #[test]
    fn window_counts_match_l1_at_p0() {
        // At p = 0 the window is inert; after burn-in the normalized columns
        // agree with the l = 1 recursion.
        let t = 10_000u64;
        let mut a = L1Expectation::new(0.0, 30).unwrap();
        a.advance_to(t);
        let mut b = WindowExpectation::new(0.0, 10, 30).unwrap();
        b.advance_to(t);
        for k in 0..20 {
            let da = a.counts()[k] / t as f64;
            let db = b.counts()[k] / t as f64;
            assert!((da - db).abs() < 1e-2, "k={} {da} vs {db}", k + 1);
        }
    }

    #[test]
    fn table_snapshots() {
        let table = expected_counts_l1_at(0.5, &[1, 10, 101], 101).unwrap();
        assert_eq!(table.times, vec![1, 10, 101]);
        assert_eq!(table.value(1, 1), Some(2.0));
        let col = table.column(101).unwrap();
        let (total, weighted) = column_sums(col);
        assert!((total - 102.0).abs() < 1e-10);
        assert!((weighted - 202.0).abs() < 1e-10);
        assert!(table.value(0, 1).is_none());
        assert!(table.value(5, 7).is_none());

        let table = expected_counts_window_at(0.5, 10, &[10, 101], 101).unwrap();
        assert_eq!(table.value(1, 10), Some(10.0));
        assert_eq!(table.value(10, 10), Some(1.0));
        let (total, weighted) = column_sums(table.column(101).unwrap());
        assert!((total - 102.0).abs() < 1e-10);
        assert!((weighted - 202.0).abs() < 1e-10);
    }

    #[test]
    fn full_grid_matches_snapshots() {
        let grid = expected_counts_l1(0.3, 50, 50).unwrap();
        let snap = expected_counts_l1_at(0.3, &[25, 50], 50).unwrap();
        assert_eq!(grid.column(25).unwrap(), snap.column(25).unwrap());
        assert_eq!(grid.column(50).unwrap(), snap.column(50).unwrap());
    }

    #[test]
    fn evolution_sequence() {
        let seq = window_degree_evolution(0.5, 3, 10).unwrap();
        assert_eq!(seq.len(), 8);
        assert_eq!(seq[0].t(), 3);
        assert_eq!(seq[7].t(), 10);
        for m in &seq {
            assert_eq!(m.prob(3, 1), 1.0);
        }
    }

    #[test]
    fn input_validation() {
        assert!(L1Expectation::new(1.5, 10).is_err());
        assert!(L1Expectation::new(0.5, 1).is_err());
        assert!(WindowExpectation::new(0.5, 1, 10).is_err());
        assert!(WindowExpectation::new(0.5, 10, 10).is_err());
        assert!(expected_counts_l1_at(0.5, &[], 10).is_err());
        assert!(expected_counts_l1_at(0.5, &[3, 2], 10).is_err());
        assert!(expected_counts_window_at(0.5, 10, &[5], 20).is_err());
    }
}
