//! Channel realizations, hybrid-CSIT configurations and causality-gated views.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numerics::{Mat, Mode, Scalar};

/// CSIT state supplied by one receiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CsitState {
    /// Perfect, instantaneous: `h_k(t)` is known at slot `t`.
    P,
    /// Completely delayed: `h_k(t)` is known from slot `t + 1` on.
    D,
}

/// Per-receiver CSIT states, e.g. `PDD`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CsitConfig(Vec<CsitState>);

impl CsitConfig {
    pub fn new(states: Vec<CsitState>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidInput("empty CSIT configuration".into()));
        }
        Ok(Self(states))
    }

    pub fn receivers(&self) -> usize {
        self.0.len()
    }

    pub fn state(&self, k: usize) -> Option<CsitState> {
        self.0.get(k).copied()
    }

    pub fn states(&self) -> &[CsitState] {
        &self.0
    }

    /// Whether `h_k(tau)` may be used at slot `now`.
    pub fn allows(&self, k: usize, tau: usize, now: usize) -> bool {
        match self.state(k) {
            Some(CsitState::P) => tau <= now,
            Some(CsitState::D) => tau < now,
            None => false,
        }
    }
}

impl FromStr for CsitConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let states = s
            .chars()
            .map(|c| match c {
                'P' | 'p' => Ok(CsitState::P),
                'D' | 'd' => Ok(CsitState::D),
                other => Err(Error::InvalidInput(format!("bad CSIT state {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(states)
    }
}

impl fmt::Display for CsitConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                CsitState::P => "P",
                CsitState::D => "D",
            })?;
        }
        Ok(())
    }
}

impl Serialize for CsitConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CsitConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The channel vectors `h_k(t)` (1 × M) of all receivers over all slots.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization<F> {
    antennas: usize,
    receivers: usize,
    slots: usize,
    seed: u64,
    // indexed [k][t][m]
    h: Vec<F>,
}

impl<F: Scalar> ChannelRealization<F> {
    /// Deterministic draw from `seed`. Slots whose K × M matrix is rank
    /// deficient (or has a zero row) are redrawn from the same stream.
    pub fn draw(seed: u64, antennas: usize, receivers: usize, slots: usize) -> Result<Self> {
        if antennas == 0 || receivers == 0 || slots == 0 {
            return Err(Error::InvalidInput("M, K and T must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = vec![F::zero(); antennas * receivers * slots];
        let full = antennas.min(receivers);
        for t in 0..slots {
            let slice = loop {
                let m = Mat::from_fn(receivers, antennas, |_, _| F::sample(&mut rng));
                let rows_ok = (0..receivers).all(|k| m.row(k).iter().any(|x| !x.is_zero()));
                if rows_ok && F::rank_of(&m) == full {
                    break m;
                }
            };
            for k in 0..receivers {
                for a in 0..antennas {
                    h[(k * slots + t) * antennas + a] = slice.get(k, a).clone();
                }
            }
        }
        Ok(Self {
            antennas,
            receivers,
            slots,
            seed,
            h,
        })
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    pub fn receivers(&self) -> usize {
        self.receivers
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mode(&self) -> Mode {
        F::MODE
    }

    /// `h_k(t)`, unrestricted. Receivers have full CSIR; transmitters must go
    /// through a [`CsitView`].
    pub fn h(&self, k: usize, t: usize) -> &[F] {
        let start = (k * self.slots + t) * self.antennas;
        &self.h[start..start + self.antennas]
    }

    /// The K × M matrix of slot `t`.
    pub fn slot_matrix(&self, t: usize) -> Mat<F> {
        Mat::from_fn(self.receivers, self.antennas, |k, a| self.h(k, t)[a].clone())
    }

    /// Copy with `h_to(t) := h_from(t)`: a measure-zero degenerate instance.
    pub fn with_duplicated_channel(&self, from: usize, to: usize, t: usize) -> Result<Self> {
        if from >= self.receivers || to >= self.receivers || t >= self.slots {
            return Err(Error::InvalidInput("duplicate index out of range".into()));
        }
        let mut out = self.clone();
        let src = self.h(from, t).to_vec();
        let start = (to * self.slots + t) * self.antennas;
        out.h[start..start + self.antennas].clone_from_slice(&src);
        Ok(out)
    }

    pub fn to_fixture(&self) -> RealizationFixture {
        RealizationFixture {
            antennas: self.antennas,
            receivers: self.receivers,
            slots: self.slots,
            seed: self.seed,
            mode: F::MODE,
            h: (0..self.receivers)
                .map(|k| {
                    (0..self.slots)
                        .map(|t| self.h(k, t).iter().map(|x| x.to_json().to_vec()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_fixture(fx: &RealizationFixture) -> Result<Self> {
        if fx.mode != F::MODE {
            return Err(Error::InvalidInput(format!(
                "fixture mode {} does not match {}",
                fx.mode,
                F::MODE
            )));
        }
        let (m, k, t) = (fx.antennas, fx.receivers, fx.slots);
        if m == 0 || k == 0 || t == 0 {
            return Err(Error::InvalidInput("M, K and T must be at least 1".into()));
        }
        let shape_err = || Error::DimensionMismatch(format!("h is not {k}x{t}x{m}"));
        if fx.h.len() != k {
            return Err(shape_err());
        }
        let mut h = Vec::with_capacity(m.saturating_mul(k).saturating_mul(t).min(1 << 20));
        for per_rx in &fx.h {
            if per_rx.len() != t {
                return Err(shape_err());
            }
            for vec in per_rx {
                if vec.len() != m {
                    return Err(shape_err());
                }
                for parts in vec {
                    h.push(F::from_json(parts)?);
                }
            }
        }
        Ok(Self {
            antennas: m,
            receivers: k,
            slots: t,
            seed: fx.seed,
            h,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_fixture())?)
    }

    /// Parses the JSON fixture format; rejects shape or mode mismatches.
    pub fn from_json(s: &str) -> Result<Self> {
        let fx: RealizationFixture = serde_json::from_str(s)?;
        Self::from_fixture(&fx)
    }
}

/// Serialized realization: `h[k][t][m] = [re, im]`. Exact parts are strings
/// `"p/q"`, float parts are numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationFixture {
    #[serde(rename = "M")]
    pub antennas: usize,
    #[serde(rename = "K")]
    pub receivers: usize,
    #[serde(rename = "T")]
    pub slots: usize,
    pub seed: u64,
    pub mode: Mode,
    pub h: Vec<Vec<Vec<Vec<Value>>>>,
}

/// One transmitter-side channel lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Access {
    pub receiver: usize,
    pub slot: usize,
    pub now: usize,
    pub allowed: bool,
}

/// Causality-gated window onto a realization at slot `now`.
#[derive(Debug)]
pub struct CsitView<'a, F> {
    real: &'a ChannelRealization<F>,
    config: &'a CsitConfig,
    now: usize,
    log: Vec<Access>,
}

/// Opens the view for slot `t`.
pub fn view<'a, F: Scalar>(
    real: &'a ChannelRealization<F>,
    config: &'a CsitConfig,
    t: usize,
) -> Result<CsitView<'a, F>> {
    if t >= real.slots() {
        return Err(Error::InvalidInput(format!(
            "slot {t} outside 0..{}",
            real.slots()
        )));
    }
    if config.receivers() != real.receivers() {
        return Err(Error::DimensionMismatch(format!(
            "CSIT config {config} for {} receivers",
            real.receivers()
        )));
    }
    Ok(CsitView {
        real,
        config,
        now: t,
        log: Vec::new(),
    })
}

impl<'a, F: Scalar> CsitView<'a, F> {
    pub fn now(&self) -> usize {
        self.now
    }

    /// `h_k(tau)` if the configuration allows it at this slot. Every call is
    /// logged, including denied ones.
    pub fn get(&mut self, k: usize, tau: usize) -> Result<&'a [F]> {
        if k >= self.real.receivers() || tau >= self.real.slots() {
            return Err(Error::InvalidInput(format!(
                "h_{k}({tau}) outside the realization"
            )));
        }
        let allowed = self.config.allows(k, tau, self.now);
        self.log.push(Access {
            receiver: k,
            slot: tau,
            now: self.now,
            allowed,
        });
        if !allowed {
            return Err(Error::CsitViolation {
                receiver: k,
                slot: tau,
                now: self.now,
            });
        }
        Ok(self.real.h(k, tau))
    }

    pub fn log(&self) -> &[Access] {
        &self.log
    }

    pub fn into_log(self) -> Vec<Access> {
        self.log
    }
}
