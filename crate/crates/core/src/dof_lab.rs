//! Verification campaigns, SNR sweeps with slope fitting, and order-2
//! region arithmetic.
//!
//! Trial `i` of a campaign always uses seed `seed0 + i`; trials run on the
//! rayon pool and are reduced in trial order, so results do not depend on
//! the number of workers.

use std::io::Write;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::ChannelRealization;
use crate::decoding::{decode_report, zf_rate};
use crate::error::{Error, Result};
use crate::numerics::{Exact, Float};
use crate::scheme_core::{run_scheme, LinearScheme, Transcript};

/// Why one verification trial failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialFailure {
    pub seed: u64,
    pub receiver: Option<usize>,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub scheme: String,
    pub trials: usize,
    pub seed0: u64,
    pub passed: usize,
    pub failures: Vec<TrialFailure>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }

    pub fn first_failure(&self) -> Option<&TrialFailure> {
        self.failures.first()
    }
}

fn verify_one<S: LinearScheme + Sync>(scheme: &S, seed: u64, degenerate: bool) -> Option<TrialFailure> {
    let fail = |receiver, missing, extra, message: String| {
        Some(TrialFailure {
            seed,
            receiver,
            missing,
            extra,
            message,
        })
    };
    let d = scheme.descriptor();
    let real = match ChannelRealization::<Exact>::draw(seed, d.antennas, d.receivers, d.slots) {
        Ok(r) => r,
        Err(e) => return fail(None, vec![], vec![], e.to_string()),
    };
    let real = if degenerate {
        // receiver 2 gets receiver 1's slot-0 channel
        match real.with_duplicated_channel(0, 1.min(d.receivers - 1), 0) {
            Ok(r) => r,
            Err(e) => return fail(None, vec![], vec![], e.to_string()),
        }
    } else {
        real
    };
    let tr = match run_scheme(scheme, &real, &d.csit) {
        Ok(tr) => tr,
        Err(e) => return fail(None, vec![], vec![], e.to_string()),
    };
    if !tr.audit_is_clean() {
        return fail(None, vec![], vec![], "CSIT audit log is not clean".into());
    }
    let report = match decode_report(&tr) {
        Ok(r) => r,
        Err(e) => return fail(None, vec![], vec![], e.to_string()),
    };
    report
        .receivers
        .iter()
        .find(|r| !r.targets_feasible || !r.extra.is_empty())
        .and_then(|r| {
            fail(
                Some(r.receiver),
                r.missing(),
                r.extra.clone(),
                format!("receiver {} decodes {:?}, wants {:?}", r.receiver + 1, r.decodable, r.targets),
            )
        })
}

/// Runs `trials` exact draws from `seed0` and checks that every receiver
/// decodes exactly its declared targets with a clean CSIT audit. With
/// `inject_degenerate`, the first trial's slot-0 channel of receiver 2 is
/// replaced by receiver 1's.
pub fn verify_decodability<S: LinearScheme + Sync>(
    scheme: &S,
    trials: usize,
    seed0: u64,
    inject_degenerate: bool,
) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let failures: Vec<TrialFailure> = (0..trials)
        .into_par_iter()
        .map(|i| verify_one(scheme, seed0.wrapping_add(i as u64), inject_degenerate && i == 0))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerifyReport {
        scheme: scheme.descriptor().name,
        trials,
        seed0,
        passed: trials - failures.len(),
        failures,
    })
}

/// Parses `"1e4,1e6,1e8"`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad grid point {p:?}")))
        })
        .collect()
}

/// Grid check: at least three finite positive points, strictly increasing.
pub fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "slope fit needs at least 3 grid points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|p| !p.is_finite() || *p <= 0.0) {
        return Err(Error::InvalidInput("grid points must be finite and positive".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Least-squares line `y = a + b x`; returns `(b, rms residual)`.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidInput("need two or more paired points".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("abscissae are all equal".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - icpt - slope * a).powi(2)).sum();
    Ok((slope, (rss / n).sqrt()))
}

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub p_t: f64,
    pub mean_sum_rate: f64,
    pub mean_rates: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub scheme: String,
    pub grid: Vec<f64>,
    pub trials: usize,
    pub seed0: u64,
    /// Trials whose channel made some zero-forcer infeasible; excluded.
    pub excluded_seeds: Vec<u64>,
    pub points: Vec<SweepPoint>,
    pub slope: f64,
    pub receiver_slopes: Vec<f64>,
    pub residual: f64,
}

const CSV_HEADER: [&str; 7] = [
    "scheme",
    "P_T",
    "trial_mean_sum_rate",
    "r1",
    "r2",
    "r3",
    "slope_fit",
];

impl SweepResult {
    pub fn used_trials(&self) -> usize {
        self.trials - self.excluded_seeds.len()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for p in &self.points {
            let r = |k: usize| p.mean_rates.get(k).map(|v| v.to_string()).unwrap_or_default();
            w.write_record([
                self.scheme.clone(),
                format!("{:e}", p.p_t),
                p.mean_sum_rate.to_string(),
                r(0),
                r(1),
                r(2),
                self.slope.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Per-receiver rates at every grid point, or `None` when some receiver's
/// zero-forcer is infeasible on this draw.
fn trial_rates<S: LinearScheme>(scheme: &S, seed: u64, grid: &[f64]) -> Result<Option<Vec<Vec<f64>>>> {
    let d = scheme.descriptor();
    let real = ChannelRealization::<Float>::draw(seed, d.antennas, d.receivers, d.slots)?;
    let tr: Transcript<Float> = run_scheme(scheme, &real, &d.csit)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &p in grid {
        let mut rates = Vec::with_capacity(d.receivers);
        for k in 0..d.receivers {
            match zf_rate(&tr, k, p) {
                Ok(r) => rates.push(r),
                Err(Error::Infeasible { .. }) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        rows.push(rates);
    }
    Ok(Some(rows))
}

/// Mean zero-forcing rates over `trials` float draws at every grid point,
/// and the least-squares slope of the mean sum rate against `log2(P_T)`.
pub fn fit_dof<S: LinearScheme + Sync>(
    scheme: &S,
    grid: &[f64],
    trials: usize,
    seed0: u64,
) -> Result<SweepResult> {
    check_grid(grid)?;
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let d = scheme.descriptor();
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = seed0.wrapping_add(i as u64);
            trial_rates(scheme, seed, grid).map(|r| (seed, r))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut excluded = Vec::new();
    let mut sums = vec![vec![0.0; d.receivers]; grid.len()];
    let mut used = 0usize;
    for (seed, rates) in per_trial {
        match rates {
            None => excluded.push(seed),
            Some(rows) => {
                used += 1;
                for (acc, row) in sums.iter_mut().zip(rows) {
                    for (a, r) in acc.iter_mut().zip(row) {
                        *a += r;
                    }
                }
            }
        }
    }
    if used == 0 {
        return Err(Error::Infeasible { receiver: 0 });
    }
    let points: Vec<SweepPoint> = grid
        .iter()
        .zip(sums)
        .map(|(&p_t, acc)| {
            let mean_rates: Vec<f64> = acc.iter().map(|a| a / used as f64).collect();
            SweepPoint {
                p_t,
                mean_sum_rate: mean_rates.iter().sum(),
                mean_rates,
            }
        })
        .collect();
    let x: Vec<f64> = grid.iter().map(|p| p.log2()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.mean_sum_rate).collect();
    let (slope, residual) = least_squares_slope(&x, &y)?;
    let receiver_slopes = (0..d.receivers)
        .map(|k| {
            let yk: Vec<f64> = points.iter().map(|p| p.mean_rates[k]).collect();
            least_squares_slope(&x, &yk).map(|(s, _)| s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        scheme: d.name,
        grid: grid.to_vec(),
        trials,
        seed0,
        excluded_seeds: excluded,
        points,
        slope,
        receiver_slopes,
        residual,
    })
}

/// Slope the mean sum rate should approach: decodable streams per slot,
/// `Σ_k |targets_k| / T`. Equal to the counting sum DoF when every symbol
/// has order 1; a symbol wanted by several receivers counts once for each.
pub fn expected_rate_slope<S: LinearScheme>(scheme: &S) -> Rational64 {
    let d = scheme.descriptor();
    let ledger = scheme.ledger();
    let streams: usize = (0..d.receivers).map(|k| ledger.targets_of(k).len()).sum();
    Rational64::new(streams as i64, d.slots as i64)
}

/// Sweep acceptance tolerance on the fitted slope.
pub const SLOPE_TOLERANCE: f64 = 0.05;

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::InvalidInput(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => s.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad()),
    }
}

/// One order-2 region inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub label: &'static str,
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: Rational64,
    pub holds: bool,
    pub tight: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub inside: bool,
    pub inequalities: [Inequality; 3],
}

impl RegionReport {
    pub fn all_tight(&self) -> bool {
        self.inequalities.iter().all(|i| i.tight)
    }
}

/// Membership of `(d12, d23, d13)` in the order-2 DoF region under PDD.
pub fn region_check(d12: Rational64, d23: Rational64, d13: Rational64) -> Result<RegionReport> {
    let zero = Rational64::from_integer(0);
    if d12 < zero || d23 < zero || d13 < zero {
        return Err(Error::InvalidInput("order-2 DoF must be nonnegative".into()));
    }
    let one = Rational64::from_integer(1);
    let two = Rational64::from_integer(2);
    let ineq = |label, lhs: Rational64, rhs: Rational64| Inequality {
        label,
        lhs,
        rhs,
        holds: lhs <= rhs,
        tight: lhs == rhs,
    };
    let inequalities = [
        ineq("d12 + d13 <= 1", d12 + d13, one),
        ineq("2(d12 + d23) + d13 <= 2", two * (d12 + d23) + d13, two),
        ineq("d12 + 2(d23 + d13) <= 2", d12 + two * (d23 + d13), two),
    ];
    Ok(RegionReport {
        inside: inequalities.iter().all(|i| i.holds),
        inequalities,
    })
}

/// Known sum-DoF ceiling for `(config, M, K)`.
pub fn dof_ceiling(config: &str, antennas: usize, receivers: usize) -> Result<Rational64> {
    match (config, antennas, receivers) {
        ("PDD", 2, 3) => Ok(Rational64::new(5, 3)),
        ("PDD", 3, 3) => Ok(Rational64::new(17, 9)),
        ("PPD", 3, 3) => Ok(Rational64::new(7, 3)),
        _ => Err(Error::Unsupported(format!(
            "no sum-DoF bound on file for {config}({antennas},{receivers})"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundVerdict {
    Ok,
    Violation,
}

/// Compares an achieved sum DoF with the ceiling for its configuration.
pub fn bound_check(
    config: &str,
    antennas: usize,
    receivers: usize,
    sum_dof: Rational64,
) -> Result<BoundVerdict> {
    let cap = dof_ceiling(config, antennas, receivers)?;
    Ok(if sum_dof <= cap {
        BoundVerdict::Ok
    } else {
        BoundVerdict::Violation
    })
}
