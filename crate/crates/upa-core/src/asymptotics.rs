//! Closed forms for the limiting degree distribution.
//!
//! As `t` grows, `N(k, t) / t` converges to a distribution `P(k)` whose tail
//! decays like `k^(-(1 + 2/(1-p)))`. This module evaluates `P(k)` for both
//! window regimes with fixed size, the window limit constants `H_k`, and the
//! one- and two-term power-law tail approximations. Beta-function ratios go
//! through log-gamma so degrees in the thousands do not overflow.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

fn validate_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("p must lie in [0, 1], got {p}")))
    }
}

/// Magnitude of the power-law tail exponent, `1 + 2/(1-p)`.
pub fn power_law_exponent(p: f64) -> Result<f64> {
    validate_p(p)?;
    if p == 1.0 {
        return Err(Error::Domain("the tail exponent 1 + 2/(1-p) is undefined at p = 1".into()));
    }
    Ok(1.0 + 2.0 / (1.0 - p))
}

/// Binomial coefficient as a float; zero outside `0 <= r <= n`.
fn binomial(n: u32, r: i64) -> f64 {
    if r < 0 || r > i64::from(n) {
        return 0.0;
    }
    let r = (r as u32).min(n - r as u32);
    let mut acc = 1.0;
    for i in 1..=r {
        acc *= f64::from(n - r + i) / f64::from(i);
    }
    acc
}

/// Limit of the expected number of window slots at degree `k`:
/// `H_k = lim_t sum_m P(M_m(t) = k)`.
///
/// Evaluated by the finite sum
/// `(p/l)^(k-1) * sum_m C(l-m, k-1) (1 - p/l)^(l-m-(k-1))`,
/// which is exact for every `p` in `[0, 1]` (the `l/p (1 - (1-p/l)^l)` form
/// of `H_1` is 0/0 at `p = 0`); zero for `k > l`.
pub fn limit_h(p: f64, l: u32, k: u32) -> Result<f64> {
    validate_p(p)?;
    if l < 1 {
        return Err(Error::InvalidInput("l must be at least 1".into()));
    }
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k > l {
        return Ok(0.0);
    }
    let q = p / f64::from(l);
    let r = i64::from(k) - 1;
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for m in 1..=(l - (k - 1)) {
        let n = l - m;
        let term = binomial(n, r) * (1.0 - q).powi(n as i32 - r as i32);
        // Kahan step; the terms are all positive but l can reach a few
        // hundred and the slot-sum identity is checked at 1e-12.
        let y = term - compensation;
        let s = sum + y;
        compensation = (s - sum) - y;
        sum = s;
    }
    Ok(q.powi(r as i32) * sum)
}

/// `H_k` for `k = 1..=l`; the entries sum to `l` (each window slot's law
/// contributes total mass one).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HkVector {
    pub p: f64,
    pub l: u32,
    /// `values[k - 1] = H_k`.
    pub values: Vec<f64>,
}

impl HkVector {
    pub fn value(&self, k: u32) -> f64 {
        if k >= 1 && k <= self.l {
            self.values[(k - 1) as usize]
        } else {
            0.0
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

pub fn hk_vector(p: f64, l: u32) -> Result<HkVector> {
    let values = (1..=l).map(|k| limit_h(p, l, k)).collect::<Result<Vec<_>>>()?;
    Ok(HkVector { p, l, values })
}

/// Which family a [`DegreeDistribution`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionKind {
    /// Limiting `P(k)` for window size 1.
    AsymptoticL1,
    /// Limiting `P(k)` for window size `l > 1`.
    AsymptoticWindow,
    /// `N(k, t) / t` from a simulation snapshot.
    Empirical,
    /// Power-law tail approximation.
    TailApprox,
}

/// `P(k)` over `k = 1..=kmax` with explicit truncation bookkeeping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    pub kind: DistributionKind,
    pub p: Option<f64>,
    pub l: Option<u32>,
    /// Snapshot time for empirical distributions (the `/t` normalizer).
    pub t: Option<u64>,
    /// `values[k - 1] = P(k)`.
    pub values: Vec<f64>,
    /// Mass outside the stored range: `1 - sum` for asymptotic kinds,
    /// `(t+1)/t - sum` for empirical ones (their values sum to `(t+1)/t`
    /// because the normalizer is `t`, not the node count).
    pub tail_mass: f64,
}

impl DegreeDistribution {
    /// `P(k)`; zero outside the stored range.
    pub fn value(&self, k: u32) -> f64 {
        if k >= 1 && (k as usize) <= self.values.len() {
            self.values[(k - 1) as usize]
        } else {
            0.0
        }
    }

    pub fn kmax(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `sum_k k P(k)` over the stored range; tends to 2 for asymptotic kinds.
    pub fn mean_degree(&self) -> f64 {
        self.values.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v).sum()
    }
}

/// Limiting degree distribution for window size 1.
///
/// `P(1) = 2(1-p)/(3-p)`, `P(2) = (1-p)^2/((2-p)(3-p)) + p/(2-p)`, and for
/// `k > 2` the closed form
/// `(2/(1-p)+2)(2/(1-p)+1) B(k, 1 + 2/(1-p)) P(2)`
/// evaluated through log-gamma. At `p = 1` only the point mass at degree 2
/// is defined, so `kmax > 2` is a domain error there.
pub fn limit_pk_l1(p: f64, kmax: u32) -> Result<DegreeDistribution> {
    validate_p(p)?;
    if kmax < 1 {
        return Err(Error::InvalidInput("kmax must be at least 1".into()));
    }
    if p == 1.0 && kmax > 2 {
        return Err(Error::Domain(
            "the k > 2 branch involves 2/(1-p), undefined at p = 1; request kmax <= 2 \
             for the surviving values P(1) = 0, P(2) = 1"
                .into(),
        ));
    }
    let mut values = Vec::with_capacity(kmax as usize);
    values.push(2.0 * (1.0 - p) / (3.0 - p));
    if kmax >= 2 {
        values.push((1.0 - p).powi(2) / ((2.0 - p) * (3.0 - p)) + p / (2.0 - p));
    }
    if kmax > 2 {
        let c = 2.0 / (1.0 - p);
        // ln[(c+2)(c+1) P(2)] + ln B(k, 1+c), with B via log-gamma.
        let ln_front = ((c + 2.0) * (c + 1.0)).ln() + values[1].ln() + ln_gamma(1.0 + c);
        for k in 3..=kmax {
            let kf = f64::from(k);
            values.push((ln_front + ln_gamma(kf) - ln_gamma(kf + 1.0 + c)).exp());
        }
    }
    let tail_mass = 1.0 - values.iter().sum::<f64>();
    Ok(DegreeDistribution {
        kind: DistributionKind::AsymptoticL1,
        p: Some(p),
        l: Some(1),
        t: None,
        values,
        tail_mass,
    })
}

/// Limiting degree distribution for window size `l > 1`.
///
/// `P(1) = 2/(3-p) (1 - p/l)^l`; for `k = 2..=l+1`,
/// `P(k) = 2/(2 + k(1-p)) [ (p/l)(H_{k-1} - H_k) + (1-p)(k-1)/2 P(k-1) ]`;
/// beyond `l + 1` the Beta ratio
/// `B(k, l+2+2/(1-p)) / B(l+1, k+1+2/(1-p)) P(l+1)` takes over
/// (equivalently, the ratio recurrence `P(k)/P(k-1) = (1-p)(k-1)/(2+(1-p)k)`).
pub fn limit_pk(p: f64, l: u32, kmax: u32) -> Result<DegreeDistribution> {
    validate_p(p)?;
    if l < 2 {
        return Err(Error::InvalidInput(
            "limit_pk requires l >= 2; window size 1 has its own closed form".into(),
        ));
    }
    if kmax < 1 {
        return Err(Error::InvalidInput("kmax must be at least 1".into()));
    }
    if p == 1.0 && kmax > l + 1 {
        return Err(Error::Domain(format!(
            "the k > l + 1 branch involves 2/(1-p), undefined at p = 1; request kmax <= {}",
            l + 1
        )));
    }
    let lf = f64::from(l);
    let h = hk_vector(p, l)?;
    let mut values = Vec::with_capacity(kmax as usize);
    values.push(2.0 / (3.0 - p) * (1.0 - p / lf).powi(l as i32));
    for k in 2..=kmax.min(l + 1) {
        let kf = f64::from(k);
        let prev = values[(k - 2) as usize];
        let window_flow = p / lf * (h.value(k - 1) - h.value(k));
        let pk = 2.0 / (2.0 + kf * (1.0 - p)) * (window_flow + (1.0 - p) * (kf - 1.0) / 2.0 * prev);
        values.push(pk);
    }
    if kmax > l + 1 {
        let c = 2.0 / (1.0 - p);
        let p_edge = values[l as usize];
        // B(k, l+2+c) / B(l+1, k+1+c) reduces to
        // Gamma(k) Gamma(l+2+c) / (Gamma(l+1) Gamma(k+1+c)).
        let ln_front = ln_gamma(lf + 2.0 + c) - ln_gamma(lf + 1.0) + p_edge.ln();
        for k in (l + 2)..=kmax {
            let kf = f64::from(k);
            values.push((ln_front + ln_gamma(kf) - ln_gamma(kf + 1.0 + c)).exp());
        }
    }
    let tail_mass = 1.0 - values.iter().sum::<f64>();
    Ok(DegreeDistribution {
        kind: DistributionKind::AsymptoticWindow,
        p: Some(p),
        l: Some(l),
        t: None,
        values,
        tail_mass,
    })
}

/// Power-law tail approximation of `P(k)`.
///
/// Order 1 is `C k^(-(1 + 2/(1-p)))`; order 2 subtracts
/// `C (3-p)/(1-p)^2 k^(-(2 + 2/(1-p)))`. The constant is
/// `C_p = Gamma(1 + 2/(1-p)) (2/(1-p)+2)(2/(1-p)+1) P(2)` for `l = 1` and
/// `C_{p,l} = Gamma(l+2+2/(1-p)) / Gamma(l+1) * P(l+1)` for `l > 1`.
pub fn tail_approx(p: f64, l: u32, k: u32, order: u8) -> Result<f64> {
    validate_p(p)?;
    if p == 1.0 {
        return Err(Error::Domain("the tail approximation involves 2/(1-p), undefined at p = 1".into()));
    }
    if l < 1 || k < 1 {
        return Err(Error::InvalidInput("l and k must be at least 1".into()));
    }
    if !(order == 1 || order == 2) {
        return Err(Error::InvalidInput(format!("order must be 1 or 2, got {order}")));
    }
    let c = 2.0 / (1.0 - p);
    let ln_constant = if l == 1 {
        let p2 = limit_pk_l1(p, 2)?.value(2);
        ln_gamma(1.0 + c) + ((c + 2.0) * (c + 1.0)).ln() + p2.ln()
    } else {
        let lf = f64::from(l);
        let p_edge = limit_pk(p, l, l + 1)?.value(l + 1);
        ln_gamma(lf + 2.0 + c) - ln_gamma(lf + 1.0) + p_edge.ln()
    };
    let kf = f64::from(k);
    let leading = (ln_constant - (1.0 + c) * kf.ln()).exp();
    Ok(match order {
        1 => leading,
        _ => leading * (1.0 - (3.0 - p) / ((1.0 - p).powi(2) * kf)),
    })
}

/// Tail-approximation curve as a [`DegreeDistribution`] (values can be
/// negative at small `k` for order 2; it is an asymptotic form, not a law).
pub fn tail_approx_curve(p: f64, l: u32, kmax: u32, order: u8) -> Result<DegreeDistribution> {
    let values = (1..=kmax).map(|k| tail_approx(p, l, k, order)).collect::<Result<Vec<_>>>()?;
    let tail_mass = 1.0 - values.iter().sum::<f64>();
    Ok(DegreeDistribution {
        kind: DistributionKind::TailApprox,
        p: Some(p),
        l: Some(l),
        t: None,
        values,
        tail_mass,
    })
}
