//! Closed-form analysis of the paired estimator.
//!
//! Everything here is deterministic arithmetic, so these functions double as
//! exact oracles for the stochastic modules: the pair-variance law, the
//! improvement ratio over independent sampling, feasibility bounds on the
//! learning budget, correlation limits of binary contribution streams, and
//! the reference joint distribution of the spanning-tree game under the
//! order-reversing pairing.
//!
//! For general block length `K` the variance of the block estimator is
//! `L * sum_{i,j} C[i][j] / m^2`, where `L = m / K` is the block count and
//! `C` is the `K x K` covariance matrix of the per-block draw streams
//! (stream `k` holds the k-th transform of each seed order). Learning a
//! transformation currently targets `K = 2`, where `C` collapses to a
//! variance and one pair covariance and the law reduces to
//! [`paired_variance`]; nothing here instantiates `C` for larger `K`.

use crate::error::{Error, Result};

fn check_rho(rho: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&rho) || rho.is_nan() {
        return Err(Error::OutOfDomain { what: "rho", value: rho, domain: "[-1, 1]" });
    }
    Ok(())
}

/// Variance of the mean of `m2` i.i.d. pairs with per-draw standard
/// deviation `sigma` and within-pair correlation `rho`:
/// `sigma^2 (1 + rho) / (2 m2)`.
pub fn paired_variance(sigma: f64, rho: f64, m2: f64) -> Result<f64> {
    if sigma.is_nan() || sigma < 0.0 {
        return Err(Error::OutOfDomain { what: "sigma", value: sigma, domain: "[0, inf)" });
    }
    check_rho(rho)?;
    if m2.is_nan() || m2 < 1.0 {
        return Err(Error::OutOfDomain { what: "m2", value: m2, domain: "[1, inf)" });
    }
    Ok(sigma * sigma * (1.0 + rho) / (2.0 * m2))
}

/// Standard-deviation ratio of the paired estimator over independent
/// sampling with budget `m`: `sqrt(m (1 + rho) / (2 m2))`. Values below 1
/// mean the pairing wins.
pub fn improvement_ratio(m: f64, m2: f64, rho: f64) -> Result<f64> {
    for (what, value) in [("m", m), ("m2", m2)] {
        if value.is_nan() || value < 1.0 {
            return Err(Error::OutOfDomain { what, value, domain: "[1, inf)" });
        }
    }
    check_rho(rho)?;
    Ok((m * (1.0 + rho) / (2.0 * m2)).sqrt())
}

/// Largest learning sample that can still beat the baseline:
/// `m1 <= -6 rho m / n^2`. Non-positive when `rho >= 0`, meaning no
/// feasible learning budget exists.
pub fn m1_upper_bound(m: f64, n: usize, rho: f64) -> f64 {
    -6.0 * rho * m / (n as f64 * n as f64)
}

/// A two-dimensional binary distribution with identical marginals:
/// `P(X=1) = P(Y=1) = p` and `P(X=1, Y=1) = a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryJoint {
    p: f64,
    a: f64,
}

impl BinaryJoint {
    /// All four cells `a`, `p - a` (twice) and `1 - 2p + a` must be
    /// non-negative.
    pub fn new(p: f64, a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfDomain { what: "p", value: p, domain: "[0, 1]" });
        }
        if a.is_nan() || a < 0.0 || a > p {
            return Err(Error::OutOfDomain { what: "a", value: a, domain: "[0, p]" });
        }
        if 1.0 - 2.0 * p + a < 0.0 {
            return Err(Error::OutOfDomain {
                what: "1 - 2p + a",
                value: 1.0 - 2.0 * p + a,
                domain: "[0, 1]",
            });
        }
        Ok(BinaryJoint { p, a })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

/// Correlation of a binary joint distribution: `(a - p^2) / (p - p^2)`.
pub fn binary_rho(joint: &BinaryJoint) -> Result<f64> {
    let p = joint.p;
    if p == 0.0 || p == 1.0 {
        return Err(Error::DegenerateDistribution { p });
    }
    Ok((joint.a - p * p) / (p - p * p))
}

/// Most negative correlation any binary joint with marginal `p` can reach:
/// `-p / (1 - p)` (at `a = 0`) for `p <= 1/2`, `-(1 - p) / p` (at
/// `a = 2p - 1`) for `p >= 1/2`.
pub fn binary_rho_min(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || p == 0.0 || p == 1.0 {
        return Err(Error::DegenerateDistribution { p });
    }
    Ok(if p <= 0.5 { -p / (1.0 - p) } else { -(1.0 - p) / p })
}

/// A joint distribution over a small set of support values.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    /// Support of both marginals, in display order.
    pub values: Vec<f64>,
    /// `probs[i][j] = P(X = values[i], Y = values[j])`.
    pub probs: Vec<Vec<f64>>,
}

impl JointTable {
    pub fn total_mass(&self) -> f64 {
        self.probs.iter().flatten().sum()
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        self.probs.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.values.len())
            .map(|j| self.probs.iter().map(|row| row[j]).sum())
            .collect()
    }

    pub fn mean_x(&self) -> f64 {
        self.marginal_x().iter().zip(&self.values).map(|(p, v)| p * v).sum()
    }

    pub fn mean_y(&self) -> f64 {
        self.marginal_y().iter().zip(&self.values).map(|(p, v)| p * v).sum()
    }

    pub fn correlation(&self) -> f64 {
        let mx = self.mean_x();
        let my = self.mean_y();
        let mut exy = 0.0;
        let mut exx = 0.0;
        let mut eyy = 0.0;
        for (i, row) in self.probs.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                exy += p * self.values[i] * self.values[j];
            }
        }
        for (p, v) in self.marginal_x().iter().zip(&self.values) {
            exx += p * v * v;
        }
        for (p, v) in self.marginal_y().iter().zip(&self.values) {
            eyy += p * v * v;
        }
        (exy - mx * my) / ((exx - mx * mx) * (eyy - my * my)).sqrt()
    }
}

/// Exact joint distribution of the spanning-tree game's paired marginal
/// contributions under the order-reversing involution, for any circle
/// player at full scale (n = 100). Support `{101, 1, -99}`; both means are
/// 2 and the correlation is about -0.985.
pub fn mst_reference_joint() -> JointTable {
    let n = 100.0;
    let third = 1.0 / 3.0;
    let inv_n = 1.0 / n;
    JointTable {
        values: vec![101.0, 1.0, -99.0],
        probs: vec![
            vec![0.0, inv_n, third - inv_n],
            vec![inv_n, third, 0.0],
            vec![third - inv_n, 0.0, 0.0],
        ],
    }
}

/// Budget thresholds of the paired estimator against the baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetThresholds {
    /// Budget above which setting A beats independent sampling
    /// (`m = n^2 m1 / (-6 rho)`); `None` when its correlation is
    /// non-negative.
    pub break_even_a: Option<f64>,
    /// Same threshold for setting B.
    pub break_even_b: Option<f64>,
    /// Budget at which B (the larger learning sample) overtakes A, from
    /// `m2_A / m2_B = (1 + rho_A) / (1 + rho_B)`; `None` when the settings
    /// never swap for a positive budget.
    pub swap_dominance: Option<f64>,
}

/// Compare two learning settings `(m1, rho)` on one game and report where
/// each starts beating the baseline and where they swap dominance.
pub fn budget_thresholds(
    n: usize,
    setting_a: (f64, f64),
    setting_b: (f64, f64),
) -> Result<BudgetThresholds> {
    let (m1_a, rho_a) = setting_a;
    let (m1_b, rho_b) = setting_b;
    check_rho(rho_a)?;
    check_rho(rho_b)?;
    let nn = (n * n) as f64;
    let break_even = |m1: f64, rho: f64| (rho < 0.0).then(|| nn * m1 / (-6.0 * rho));
    let swap = if rho_a != rho_b {
        let c = nn / 6.0;
        let m = c * (m1_a * (1.0 + rho_b) - m1_b * (1.0 + rho_a)) / (rho_b - rho_a);
        (m > 0.0).then_some(m)
    } else {
        None
    };
    Ok(BudgetThresholds {
        break_even_a: break_even(m1_a, rho_a),
        break_even_b: break_even(m1_b, rho_b),
        swap_dominance: swap,
    })
}
