//! Decodability oracle and zero-forcing rates over transcripts.
//!
//! Receiver `k` recovers symbol `j` with a linear receiver iff `e_j` lies in
//! the row space of `G_k`, i.e. `rank(G_k) = rank(G_k without column j) + 1`.
//! A set `D` is jointly recoverable iff
//! `rank(G_k) = rank(G_k without D) + |D|`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{complement, separable, solve_zero_forcer, Exact, Float, Mat, Mode, Scalar, ZeroForcer};
use crate::scheme_core::Transcript;

/// Columns of `g` individually recoverable from `g · s`.
///
/// `e_j` is in the row space iff it annihilates the right kernel, i.e. iff
/// `j` is a pivot of the reduced echelon form whose row has no other
/// nonzero entry. One elimination covers every column.
pub fn decodable_columns<F: Scalar>(g: &Mat<F>) -> Result<Vec<usize>> {
    if g.rows() == 0 {
        return Ok(Vec::new());
    }
    let (r, pivots) = g.rref();
    Ok(pivots
        .iter()
        .enumerate()
        .filter(|&(row, &p)| (0..g.cols()).all(|c| c == p || r.get(row, c).is_zero()))
        .map(|(_, &p)| p)
        .collect())
}

/// Same set as [`decodable_columns`], straight from the rank criterion:
/// `rank(G) = rank(G without column j) + 1`.
pub fn decodable_columns_by_rank<F: Scalar>(g: &Mat<F>) -> Result<Vec<usize>> {
    let n = g.cols();
    if g.rows() == 0 {
        return Ok(Vec::new());
    }
    let full = g.rank()?;
    let mut out = Vec::new();
    for j in 0..n {
        let rest = g.select_columns(&complement(&[j], n));
        let r = if rest.is_empty() { 0 } else { rest.rank()? };
        if r + 1 == full {
            out.push(j);
        }
    }
    Ok(out)
}

/// `rank(g) = rank(g without cols) + |cols|`, exactly.
pub fn jointly_decodable<F: Scalar>(g: &Mat<F>, cols: &[usize]) -> bool {
    cols.is_empty() || (g.rows() > 0 && separable(g, cols))
}

fn exact_only<F: Scalar>() -> Result<()> {
    if F::MODE != Mode::Exact {
        return Err(Error::InvalidInput(
            "the decodability oracle needs an exact-mode transcript".into(),
        ));
    }
    Ok(())
}

fn receiver<F>(tr: &Transcript<F>, k: usize) -> Result<()> {
    if k >= tr.receivers {
        return Err(Error::InvalidInput(format!(
            "receiver {k} out of range for K={}",
            tr.receivers
        )));
    }
    Ok(())
}

/// The maximal set of receiver `k`'s declared targets that it can decode.
pub fn oracle_decodable<F: Scalar>(tr: &Transcript<F>, k: usize) -> Result<Vec<usize>> {
    exact_only::<F>()?;
    receiver(tr, k)?;
    let targets = &tr.targets[k];
    let g = tr.observation(k);
    if jointly_decodable(g, targets) {
        return Ok(targets.clone());
    }
    let every = decodable_columns(g)?;
    Ok(targets.iter().copied().filter(|j| every.contains(j)).collect())
}

/// Every ledger symbol receiver `k` can decode, targets or not.
pub fn oracle_decodable_all<F: Scalar>(tr: &Transcript<F>, k: usize) -> Result<Vec<usize>> {
    exact_only::<F>()?;
    receiver(tr, k)?;
    decodable_columns(tr.observation(k))
}

/// Oracle verdict for one receiver.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReceiverReport {
    pub receiver: usize,
    pub targets: Vec<String>,
    pub decodable: Vec<String>,
    /// Decodable symbols that are not targets.
    pub extra: Vec<String>,
    pub targets_feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sinr: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
}

impl ReceiverReport {
    pub fn missing(&self) -> Vec<String> {
        self.targets
            .iter()
            .filter(|t| !self.decodable.contains(t))
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecodeReport {
    pub scheme: String,
    pub seed: u64,
    pub receivers: Vec<ReceiverReport>,
}

impl DecodeReport {
    /// Every receiver decodes exactly its targets.
    pub fn matches_declaration(&self) -> bool {
        self.receivers
            .iter()
            .all(|r| r.targets_feasible && r.extra.is_empty())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Exact oracle report over all receivers.
pub fn decode_report(tr: &Transcript<Exact>) -> Result<DecodeReport> {
    let receivers = (0..tr.receivers)
        .map(|k| {
            let all = oracle_decodable_all(tr, k)?;
            let targets = &tr.targets[k];
            let decodable: Vec<usize> = all.iter().copied().filter(|j| targets.contains(j)).collect();
            let extra: Vec<usize> = all.iter().copied().filter(|j| !targets.contains(j)).collect();
            Ok(ReceiverReport {
                receiver: k,
                targets: tr.ledger.names(targets.iter().copied()),
                decodable: tr.ledger.names(decodable.iter().copied()),
                extra: tr.ledger.names(extra),
                // individually decodable symbols are jointly decodable
                targets_feasible: decodable.len() == targets.len(),
                sinr: None,
                rate: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecodeReport {
        scheme: tr.scheme.clone(),
        seed: tr.seed,
        receivers,
    })
}

/// Per-stream SINRs of receiver `k`'s zero-forcer at total power `p_t`.
///
/// Slot `t` is scaled so that it radiates `p_t` in total:
/// `x(t) = sqrt(p_t / ||B(t)||_F^2) B(t) s`, with unit-power symbols and
/// unit-variance noise on every observation. Slots with no power are
/// dropped.
pub fn zf_sinr(tr: &Transcript<Float>, k: usize, p_t: f64) -> Result<Vec<f64>> {
    receiver(tr, k)?;
    if !(p_t.is_finite() && p_t >= 0.0) {
        return Err(Error::InvalidInput(format!("power must be finite and >= 0, got {p_t}")));
    }
    let targets = &tr.targets[k];
    if targets.is_empty() {
        return Ok(Vec::new());
    }
    if p_t == 0.0 {
        return Ok(vec![0.0; targets.len()]);
    }
    let g = tr.observation(k);
    let mut rows = Vec::with_capacity(g.rows());
    for (t, &power) in tr.slot_power.iter().enumerate() {
        if power <= 0.0 {
            continue;
        }
        let gain = Float::new((p_t / power).sqrt(), 0.0);
        rows.push(g.row(t).iter().map(|x| x * gain).collect::<Vec<_>>());
    }
    if rows.is_empty() {
        return Err(Error::Infeasible { receiver: k });
    }
    let whitened = Mat::from_rows(rows)?;
    match solve_zero_forcer(&whitened, targets)? {
        ZeroForcer::Feasible(w) => Ok((0..w.rows())
            .map(|i| {
                let n: f64 = w.row(i).iter().map(|x| x.norm_sqr()).sum();
                1.0 / n
            })
            .collect()),
        ZeroForcer::Infeasible => Err(Error::Infeasible { receiver: k }),
    }
}

/// Receiver `k`'s zero-forcing rate in bits per slot:
/// `(1/T) Σ_i log2(1 + SINR_i)`.
pub fn zf_rate(tr: &Transcript<Float>, k: usize, p_t: f64) -> Result<f64> {
    let sinr = zf_sinr(tr, k, p_t)?;
    Ok(sinr.iter().map(|s| (1.0 + s).log2()).sum::<f64>() / tr.slots as f64)
}

/// Float report with SINRs and rates at `p_t`. Feasibility comes from the
/// zero-forcer; `decodable` lists the targets when it succeeds.
pub fn zf_report(tr: &Transcript<Float>, p_t: f64) -> Result<DecodeReport> {
    let receivers = (0..tr.receivers)
        .map(|k| {
            let targets = tr.ledger.names(tr.targets[k].iter().copied());
            let (feasible, sinr) = match zf_sinr(tr, k, p_t) {
                Ok(s) => (true, Some(s)),
                Err(Error::Infeasible { .. }) => (false, None),
                Err(e) => return Err(e),
            };
            let rate = sinr
                .as_ref()
                .map(|s| s.iter().map(|x| (1.0 + x).log2()).sum::<f64>() / tr.slots as f64);
            Ok(ReceiverReport {
                receiver: k,
                decodable: if feasible { targets.clone() } else { Vec::new() },
                targets,
                extra: Vec::new(),
                targets_feasible: feasible,
                sinr,
                rate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecodeReport {
        scheme: tr.scheme.clone(),
        seed: tr.seed,
        receivers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::exact;

    fn m(rows: &[&[i64]]) -> Mat<Exact> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| exact(x, 0)).collect()).collect())
            .unwrap()
    }

    fn both(g: &Mat<Exact>) -> Vec<usize> {
        let a = decodable_columns(g).unwrap();
        assert_eq!(a, decodable_columns_by_rank(g).unwrap());
        a
    }

    #[test]
    fn identity_decodes_everything() {
        let g = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(both(&g), vec![0, 1, 2]);
    }

    #[test]
    fn sum_of_two_hides_both() {
        let g = m(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(both(&g), vec![2]);
        assert!(jointly_decodable(&g, &[2]));
        assert!(!jointly_decodable(&g, &[0]));
    }

    #[test]
    fn interference_aligned_in_one_dimension() {
        let g = m(&[&[1, 1, 0], &[0, 1, -1], &[0, 0, 1]]);
        assert_eq!(both(&g), vec![0, 1, 2]);
        let g = m(&[&[1, 1, 1], &[0, 1, 1]]);
        assert_eq!(both(&g), vec![0]);
    }

    #[test]
    fn empty_observation_decodes_nothing() {
        let g: Mat<Exact> = Mat::zeros(0, 3);
        assert!(decodable_columns(&g).unwrap().is_empty());
        assert!(!jointly_decodable(&g, &[0]));
        assert!(jointly_decodable(&g, &[]));
    }
}
