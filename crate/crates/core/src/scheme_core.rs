//! The linear-scheme framework.
//!
//! A scheme transmits `x(t) = B(t) · s` where `s` is the vector of fresh
//! information symbols. Precoders are assembled term by term: each term is a
//! beam (M × 1) carrying a [`LinearForm`] over `s`. Symbols the transmitter
//! reconstructs from delayed CSIT (overheard combinations) are just forms
//! with channel-dependent coefficients, so every receiver's observations stay
//! linear in `s`: receiver `k` sees `G_k · s` with row `t` of `G_k` equal to
//! `h_k(t) · B(t)`.
//!
//! Schemes run as ordinary sequential code against a [`Transmitter`], which
//! only hands out channel state through a [`CsitView`] for the current slot
//! and keeps the access log.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::channel::{view, Access, ChannelRealization, CsitConfig, CsitView};
use crate::error::{Error, Result};
use crate::numerics::{dot, norm_sqr, Mat, Mode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Fresh,
    Reconstructed,
}

/// An information symbol and the receivers that want it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    /// Zero-based receiver indices; the order of the symbol is its size.
    pub audience: Vec<usize>,
    pub origin: Origin,
}

impl Symbol {
    pub fn order(&self) -> usize {
        self.audience.len()
    }
}

/// The fresh symbols of a scheme, in column order of every `G_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolLedger {
    symbols: Vec<Symbol>,
}

impl SymbolLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a fresh symbol and returns its column index.
    pub fn fresh(&mut self, name: impl Into<String>, audience: &[usize]) -> usize {
        self.symbols.push(Symbol {
            name: name.into(),
            audience: audience.to_vec(),
            origin: Origin::Fresh,
        });
        self.symbols.len() - 1
    }

    /// Appends `prefix1..=prefixN` for one audience.
    pub fn fresh_run(&mut self, prefix: &str, n: usize, audience: &[usize]) -> Vec<usize> {
        (1..=n)
            .map(|i| self.fresh(format!("{prefix}{i}"), audience))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn names(&self, cols: impl IntoIterator<Item = usize>) -> Vec<String> {
        cols.into_iter()
            .map(|c| self.symbols[c].name.clone())
            .collect()
    }

    /// Receiver `k`'s decode targets: every symbol whose audience holds `k`.
    pub fn targets_of(&self, k: usize) -> Vec<usize> {
        (0..self.symbols.len())
            .filter(|&j| self.symbols[j].audience.contains(&k))
            .collect()
    }
}

/// Coefficient row over the fresh-symbol vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<F>(Vec<F>);

impl<F: Scalar> LinearForm<F> {
    pub fn zero(symbols: usize) -> Self {
        Self(vec![F::zero(); symbols])
    }

    pub fn unit(symbols: usize, j: usize) -> Self {
        let mut v = vec![F::zero(); symbols];
        v[j] = F::one();
        Self(v)
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(F::is_zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn scaled(&self, s: &F) -> Self {
        Self(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }

    /// Keeps the coefficients on `cols` and zeroes the rest.
    pub fn restricted(&self, cols: &[usize]) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .map(|(j, a)| if cols.contains(&j) { a.clone() } else { F::zero() })
                .collect(),
        )
    }

    /// `Σ c_i f_i`.
    pub fn combine(terms: &[(F, &Self)], symbols: usize) -> Self {
        terms
            .iter()
            .fold(Self::zero(symbols), |acc, (c, f)| acc.plus(&f.scaled(c)))
    }
}

/// One beam carrying one linear form.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<F> {
    pub beam: Vec<F>,
    pub form: LinearForm<F>,
}

/// Handle to a term sent in some slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermId {
    pub slot: usize,
    pub index: usize,
}

/// The precoder of one slot: `x(t) = precoder · s`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotPlan<F> {
    pub slot: usize,
    pub precoder: Mat<F>,
    pub terms: Vec<Term<F>>,
    /// Equal share per simultaneously transmitted beam.
    pub power_split: Vec<f64>,
}

/// A transmitter-side combination of fresh symbols, kept for diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructedSymbol<F> {
    pub symbol: Symbol,
    pub form: LinearForm<F>,
    /// Slot during which the transmitter formed it.
    pub formed_at: usize,
}

/// Transmitter state during one scheme run.
pub struct Transmitter<'a, F> {
    real: &'a ChannelRealization<F>,
    config: &'a CsitConfig,
    symbols: usize,
    plans: Vec<SlotPlan<F>>,
    open: Option<(CsitView<'a, F>, Vec<Term<F>>)>,
    audit: Vec<Access>,
    reconstructed: Vec<ReconstructedSymbol<F>>,
}

impl<'a, F: Scalar> Transmitter<'a, F> {
    pub fn new(real: &'a ChannelRealization<F>, config: &'a CsitConfig, symbols: usize) -> Self {
        Self {
            real,
            config,
            symbols,
            plans: Vec::new(),
            open: None,
            audit: Vec::new(),
            reconstructed: Vec::new(),
        }
    }

    pub fn antennas(&self) -> usize {
        self.real.antennas()
    }

    pub fn receivers(&self) -> usize {
        self.real.receivers()
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    /// Form of the fresh symbol in column `j`.
    pub fn fresh(&self, j: usize) -> LinearForm<F> {
        LinearForm::unit(self.symbols, j)
    }

    /// Opens the next slot and returns its index.
    pub fn begin_slot(&mut self) -> Result<usize> {
        if self.open.is_some() {
            return Err(Error::InvalidInput("previous slot still open".into()));
        }
        let t = self.plans.len();
        if t >= self.real.slots() {
            return Err(Error::DimensionMismatch(format!(
                "scheme needs more than {} slots",
                self.real.slots()
            )));
        }
        self.open = Some((view(self.real, self.config, t)?, Vec::new()));
        Ok(t)
    }

    /// Runs `body` inside the next slot: begin, body, end.
    pub fn in_slot<R>(&mut self, body: impl FnOnce(&mut Self, usize) -> Result<R>) -> Result<R> {
        let t = self.begin_slot()?;
        let out = body(self, t)?;
        self.end_slot()?;
        Ok(out)
    }

    fn open_slot(&mut self) -> Result<&mut (CsitView<'a, F>, Vec<Term<F>>)> {
        self.open
            .as_mut()
            .ok_or_else(|| Error::InvalidInput("no slot is open".into()))
    }

    /// `h_k(tau)` through the current slot's CSIT view.
    pub fn channel(&mut self, k: usize, tau: usize) -> Result<Vec<F>> {
        let (v, _) = self.open_slot()?;
        v.get(k, tau).map(<[F]>::to_vec)
    }

    /// Gain `h_k(tau) · beam` of a term sent in an earlier slot.
    pub fn term_gain(&mut self, k: usize, id: TermId) -> Result<F> {
        let h = self.channel(k, id.slot)?;
        let term = self.term(id)?;
        Ok(dot(&h, &term.beam))
    }

    fn term(&self, id: TermId) -> Result<&Term<F>> {
        self.plans
            .get(id.slot)
            .and_then(|p| p.terms.get(id.index))
            .ok_or_else(|| Error::InvalidInput(format!("no committed term {id:?}")))
    }

    /// What receiver `k` heard at `tau` from the listed terms only:
    /// `Σ (h_k(tau) · beam_j) form_j`.
    pub fn observed_terms(&mut self, k: usize, tau: usize, ids: &[TermId]) -> Result<LinearForm<F>> {
        if ids.iter().any(|id| id.slot != tau) {
            return Err(Error::InvalidInput("terms from a different slot".into()));
        }
        let h = self.channel(k, tau)?;
        let mut acc = LinearForm::zero(self.symbols);
        for &id in ids {
            let term = self.term(id)?;
            acc = acc.plus(&term.form.scaled(&dot(&h, &term.beam)));
        }
        Ok(acc)
    }

    /// Everything receiver `k` heard at `tau`: `h_k(tau) · B(tau)`.
    pub fn observed(&mut self, k: usize, tau: usize) -> Result<LinearForm<F>> {
        let plan = self
            .plans
            .get(tau)
            .ok_or_else(|| Error::InvalidInput(format!("slot {tau} not committed")))?;
        let ids: Vec<TermId> = (0..plan.terms.len())
            .map(|index| TermId { slot: tau, index })
            .collect();
        self.observed_terms(k, tau, &ids)
    }

    /// Adds a term to the open slot. Float runs normalize each term to unit
    /// power; exact runs keep the beam as given.
    pub fn send(&mut self, beam: Vec<F>, form: &LinearForm<F>) -> Result<TermId> {
        let m = self.antennas();
        let s = self.symbols;
        if beam.len() != m || form.len() != s {
            return Err(Error::DimensionMismatch(format!(
                "term with beam {} / form {} for M={m}, S={s}",
                beam.len(),
                form.len()
            )));
        }
        let power = norm_sqr(&beam) * norm_sqr(form.coeffs());
        let beam = match F::unit_scale(&power) {
            Some(c) => beam.into_iter().map(|b| b * c.clone()).collect(),
            None => beam,
        };
        let (v, terms) = self.open_slot()?;
        terms.push(Term {
            beam,
            form: form.clone(),
        });
        Ok(TermId {
            slot: v.now(),
            index: terms.len() - 1,
        })
    }

    /// Sends `form` on antenna `a` alone.
    pub fn send_on_antenna(&mut self, a: usize, form: &LinearForm<F>) -> Result<TermId> {
        let mut beam = vec![F::zero(); self.antennas()];
        *beam
            .get_mut(a)
            .ok_or_else(|| Error::InvalidInput(format!("antenna {a} out of range")))? = F::one();
        self.send(beam, form)
    }

    /// Records a transmitter-side combination under a name.
    pub fn reconstruct(
        &mut self,
        name: impl Into<String>,
        audience: &[usize],
        form: LinearForm<F>,
    ) -> LinearForm<F> {
        let formed_at = self.plans.len();
        self.reconstructed.push(ReconstructedSymbol {
            symbol: Symbol {
                name: name.into(),
                audience: audience.to_vec(),
                origin: Origin::Reconstructed,
            },
            form: form.clone(),
            formed_at,
        });
        form
    }

    /// Closes the open slot.
    pub fn end_slot(&mut self) -> Result<()> {
        let (v, terms) = self
            .open
            .take()
            .ok_or_else(|| Error::InvalidInput("no slot is open".into()))?;
        let slot = v.now();
        self.audit.extend(v.into_log());
        let (m, s) = (self.antennas(), self.symbols);
        let mut precoder: Mat<F> = Mat::zeros(m, s);
        for term in &terms {
            for a in 0..m {
                if term.beam[a].is_zero() {
                    continue;
                }
                for j in 0..s {
                    let c = &term.form.coeffs()[j];
                    if c.is_zero() {
                        continue;
                    }
                    let v = precoder.get(a, j).clone() + term.beam[a].clone() * c.clone();
                    precoder.set(a, j, v);
                }
            }
        }
        let n = terms.len().max(1);
        self.plans.push(SlotPlan {
            slot,
            precoder,
            power_split: vec![1.0 / n as f64; terms.len()],
            terms,
        });
        Ok(())
    }
}

/// Per-receiver DoF, order-2 pair DoF, or order-3 DoF, as exact fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DofTuple {
    PerReceiver(Vec<Rational64>),
    /// `(d_12, d_23, d_13)`.
    Order2 {
        d12: Rational64,
        d23: Rational64,
        d13: Rational64,
    },
    Order3(Rational64),
}

impl DofTuple {
    pub fn sum(&self) -> Rational64 {
        match self {
            DofTuple::PerReceiver(v) => v.iter().copied().sum(),
            DofTuple::Order2 { d12, d23, d13 } => d12 + d23 + d13,
            DofTuple::Order3(d) => *d,
        }
    }

    pub fn values(&self) -> Vec<Rational64> {
        match self {
            DofTuple::PerReceiver(v) => v.clone(),
            DofTuple::Order2 { d12, d23, d13 } => vec![*d12, *d23, *d13],
            DofTuple::Order3(d) => vec![*d],
        }
    }

    pub fn per_receiver(values: &[(i64, i64)]) -> Self {
        DofTuple::PerReceiver(values.iter().map(|&(n, d)| Rational64::new(n, d)).collect())
    }
}

impl fmt::Display for DofTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for DofTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: &'static str,
            values: Vec<String>,
            sum: String,
        }
        let kind = match self {
            DofTuple::PerReceiver(_) => "per_receiver",
            DofTuple::Order2 { .. } => "order2",
            DofTuple::Order3(_) => "order3",
        };
        Repr {
            kind,
            values: self.values().iter().map(ToString::to_string).collect(),
            sum: self.sum().to_string(),
        }
        .serialize(s)
    }
}

/// Static metadata of a scheme.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemeDescriptor {
    pub name: String,
    #[serde(rename = "M")]
    pub antennas: usize,
    #[serde(rename = "K")]
    pub receivers: usize,
    pub csit: CsitConfig,
    #[serde(rename = "T")]
    pub slots: usize,
    /// The DoF tuple the scheme is built to achieve.
    pub claimed: DofTuple,
}

/// A linear transmission scheme.
pub trait LinearScheme {
    fn descriptor(&self) -> SchemeDescriptor;

    fn ledger(&self) -> SymbolLedger;

    /// Emits every slot through `tx`.
    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()>;
}

/// Exact symbol/slot counting. Channel independent.
pub fn counting_dof<S: LinearScheme>(scheme: &S) -> DofTuple {
    let desc = scheme.descriptor();
    let ledger = scheme.ledger();
    count_ledger(&ledger, desc.receivers, desc.slots)
}

pub(crate) fn count_ledger(ledger: &SymbolLedger, receivers: usize, slots: usize) -> DofTuple {
    let t = slots as i64;
    let orders: BTreeSet<usize> = ledger.symbols().iter().map(Symbol::order).collect();
    let count = |audience: &[usize]| {
        ledger
            .symbols()
            .iter()
            .filter(|s| s.audience == audience)
            .count() as i64
    };
    let single = orders.len() == 1;
    match orders.iter().next() {
        Some(2) if single && receivers == 3 => DofTuple::Order2 {
            d12: Rational64::new(count(&[0, 1]), t),
            d23: Rational64::new(count(&[1, 2]), t),
            d13: Rational64::new(count(&[0, 2]), t),
        },
        Some(3) if single && receivers == 3 => DofTuple::Order3(Rational64::new(count(&[0, 1, 2]), t)),
        // order-1 counting; symbols of higher order do not contribute
        _ => DofTuple::PerReceiver((0..receivers).map(|k| Rational64::new(count(&[k]), t)).collect()),
    }
}

/// Executes `scheme` on a realization and returns every receiver's linear
/// observation matrix.
pub fn run_scheme<S: LinearScheme, F: Scalar>(
    scheme: &S,
    real: &ChannelRealization<F>,
    config: &CsitConfig,
) -> Result<Transcript<F>> {
    let desc = scheme.descriptor();
    if &desc.csit != config {
        return Err(Error::ConfigMismatch {
            expected: desc.csit.to_string(),
            actual: config.to_string(),
        });
    }
    if (real.antennas(), real.receivers(), real.slots())
        != (desc.antennas, desc.receivers, desc.slots)
    {
        return Err(Error::DimensionMismatch(format!(
            "{} needs (M,K,T)=({},{},{}), realization has ({},{},{})",
            desc.name,
            desc.antennas,
            desc.receivers,
            desc.slots,
            real.antennas(),
            real.receivers(),
            real.slots()
        )));
    }
    let ledger = scheme.ledger();
    let mut tx = Transmitter::new(real, config, ledger.len());
    scheme.transmit(&mut tx)?;
    if tx.open.is_some() || tx.plans.len() != desc.slots {
        return Err(Error::DimensionMismatch(format!(
            "{} committed {} of {} slots",
            desc.name,
            tx.plans.len(),
            desc.slots
        )));
    }
    if let Some(bad) = tx.audit.iter().find(|a| !a.allowed) {
        return Err(Error::CsitViolation {
            receiver: bad.receiver,
            slot: bad.slot,
            now: bad.now,
        });
    }

    let observations = (0..desc.receivers)
        .map(|k| {
            let rows = tx
                .plans
                .iter()
                .map(|p| p.precoder.left_mul(real.h(k, p.slot)))
                .collect::<Result<Vec<_>>>()?;
            Mat::from_rows(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let slot_power = tx
        .plans
        .iter()
        .map(|p| p.precoder.frobenius_sqr().to_float().re)
        .collect();
    let targets = (0..desc.receivers).map(|k| ledger.targets_of(k)).collect();

    Ok(Transcript {
        scheme: desc.name,
        seed: real.seed(),
        antennas: desc.antennas,
        receivers: desc.receivers,
        slots: desc.slots,
        ledger,
        targets,
        observations,
        slot_power,
        plans: tx.plans,
        reconstructed: tx.reconstructed,
        audit: tx.audit,
    })
}

/// Complete linear map from fresh symbols to every receiver's noiseless
/// observations.
#[derive(Clone, Debug, PartialEq)]
pub struct Transcript<F> {
    pub scheme: String,
    pub seed: u64,
    pub antennas: usize,
    pub receivers: usize,
    pub slots: usize,
    pub ledger: SymbolLedger,
    /// Declared decode targets (column indices) per receiver.
    pub targets: Vec<Vec<usize>>,
    /// `G_k`, one T × S matrix per receiver.
    pub observations: Vec<Mat<F>>,
    /// `||B(t)||_F^2` per slot: the transmit power at unit symbol power.
    pub slot_power: Vec<f64>,
    pub plans: Vec<SlotPlan<F>>,
    pub reconstructed: Vec<ReconstructedSymbol<F>>,
    pub audit: Vec<Access>,
}

impl<F: Scalar> Transcript<F> {
    pub fn observation(&self, k: usize) -> &Mat<F> {
        &self.observations[k]
    }

    pub fn audit_is_clean(&self) -> bool {
        self.audit.iter().all(|a| a.allowed)
    }

    /// Noiseless outputs `y_k(t) = h_k(t) · (B(t) · s)`, computed from the
    /// slot plans rather than from `G_k`.
    pub fn simulate(&self, real: &ChannelRealization<F>, s: &[F]) -> Result<Vec<Vec<F>>> {
        if s.len() != self.ledger.len() {
            return Err(Error::DimensionMismatch("symbol vector length".into()));
        }
        let xs = self
            .plans
            .iter()
            .map(|p| {
                let col = Mat::from_vec(s.len(), 1, s.to_vec())?;
                Ok(p.precoder.matmul(&col)?.column(0))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((0..self.receivers)
            .map(|k| {
                self.plans
                    .iter()
                    .zip(&xs)
                    .map(|(p, x)| dot(real.h(k, p.slot), x))
                    .collect()
            })
            .collect())
    }

    /// The transcript with slot `t` removed, as if nothing were sent then.
    pub fn without_slot(&self, t: usize) -> Result<Self> {
        if t >= self.slots {
            return Err(Error::InvalidInput(format!("slot {t} out of range")));
        }
        let mut out = self.clone();
        out.observations = self.observations.iter().map(|g| g.without_row(t)).collect();
        out.slot_power.remove(t);
        out.plans.retain(|p| p.slot != t);
        out.slots -= 1;
        Ok(out)
    }

    pub fn reconstructed_named(&self, name: &str) -> Option<&ReconstructedSymbol<F>> {
        self.reconstructed.iter().find(|r| r.symbol.name == name)
    }

    pub fn to_fixture(&self) -> TranscriptFixture {
        TranscriptFixture {
            scheme: self.scheme.clone(),
            seed: self.seed,
            mode: F::MODE,
            antennas: self.antennas,
            receivers: self.receivers,
            slots: self.slots,
            ledger: self.ledger.clone(),
            targets: self.targets.clone(),
            observations: self
                .observations
                .iter()
                .map(|g| {
                    (0..g.rows())
                        .map(|i| g.row(i).iter().map(|x| x.to_json().to_vec()).collect())
                        .collect()
                })
                .collect(),
            slot_power: self.slot_power.clone(),
            audit: self.audit.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_fixture())?)
    }

    /// Parses a transcript fixture. Slot plans and reconstructed symbols are
    /// not part of the format and come back empty.
    pub fn from_json(s: &str) -> Result<Self> {
        let fx: TranscriptFixture = serde_json::from_str(s)?;
        Self::from_fixture(fx)
    }

    pub fn from_fixture(fx: TranscriptFixture) -> Result<Self> {
        if fx.mode != F::MODE {
            return Err(Error::InvalidInput(format!(
                "fixture mode {} does not match {}",
                fx.mode,
                F::MODE
            )));
        }
        let (k, t, s) = (fx.receivers, fx.slots, fx.ledger.len());
        let shape = || Error::DimensionMismatch(format!("observations are not {k} x {t}x{s}"));
        if fx.observations.len() != k || fx.targets.len() != k || fx.slot_power.len() != t {
            return Err(shape());
        }
        if fx.slot_power.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidInput("slot power must be finite and >= 0".into()));
        }
        for (rx, targets) in fx.targets.iter().enumerate() {
            let mut seen = BTreeSet::new();
            if targets.iter().any(|&j| j >= s || !seen.insert(j)) {
                return Err(Error::InvalidInput(format!("bad targets for receiver {rx}")));
            }
        }
        if fx
            .ledger
            .symbols()
            .iter()
            .any(|sym| sym.audience.iter().any(|&a| a >= k))
        {
            return Err(Error::InvalidInput("audience outside receiver range".into()));
        }
        let mut observations = Vec::with_capacity(k);
        for g in &fx.observations {
            if g.len() != t || g.iter().any(|row| row.len() != s) {
                return Err(shape());
            }
            let data = g
                .iter()
                .flatten()
                .map(|parts| F::from_json(parts))
                .collect::<Result<Vec<_>>>()?;
            observations.push(Mat::from_vec(t, s, data)?);
        }
        Ok(Self {
            scheme: fx.scheme,
            seed: fx.seed,
            antennas: fx.antennas,
            receivers: k,
            slots: t,
            ledger: fx.ledger,
            targets: fx.targets,
            observations,
            slot_power: fx.slot_power,
            plans: Vec::new(),
            reconstructed: Vec::new(),
            audit: fx.audit,
        })
    }
}

/// Serialized transcript: `observations[k][t][j] = [re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptFixture {
    pub scheme: String,
    pub seed: u64,
    pub mode: Mode,
    #[serde(rename = "M")]
    pub antennas: usize,
    #[serde(rename = "K")]
    pub receivers: usize,
    #[serde(rename = "T")]
    pub slots: usize,
    pub ledger: SymbolLedger,
    pub targets: Vec<Vec<usize>>,
    pub observations: Vec<Vec<Vec<Vec<Value>>>>,
    pub slot_power: Vec<f64>,
    #[serde(default)]
    pub audit: Vec<Access>,
}
