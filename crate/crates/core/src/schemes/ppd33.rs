//! (3,3) PPD: 4 symbols each to receivers 1 and 2, one to receiver 3, in
//! 4 slots.
//!
//! Slots 0 and 1 send two `a`s away from receiver 2, two `b`s away from
//! receiver 1, and `c` away from both. Receiver 3 hears everything. Slots 2
//! and 3 resend combinations of what receiver 3 heard, chosen so that
//! receiver 3 can cancel the `a` and `b` interference around `c`.

use super::{null_projector, RX1, RX2, RX3};
use crate::channel::CsitConfig;
use crate::error::Result;
use crate::numerics::Scalar;
use crate::scheme_core::{
    DofTuple, LinearForm, LinearScheme, SchemeDescriptor, SymbolLedger, TermId, Transmitter,
};

/// Which `h_{(1,2)}^⊥` carries `c` in slot 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CBeam {
    /// The slot-1 projector: `c` stays out of receivers 1 and 2.
    #[default]
    CurrentSlot,
    /// The slot-0 projector reused. `c` leaks into receivers 1 and 2 at
    /// slot 1, and receiver 1 can no longer decode.
    FirstSlot,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Ppd33 {
    cbeam: CBeam,
}

impl Ppd33 {
    pub fn new(cbeam: CBeam) -> Self {
        Self { cbeam }
    }

    pub fn cbeam(&self) -> CBeam {
        self.cbeam
    }
}

const C: usize = 8;

fn a(j: usize) -> usize {
    j - 1
}

fn b(j: usize) -> usize {
    4 + j - 1
}

struct FirstSlots {
    a: [[TermId; 2]; 2],
    b: [[TermId; 2]; 2],
}

impl Ppd33 {
    fn first_slots<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<FirstSlots> {
        let mut c_beam: Option<Vec<F>> = None;
        let mut out = FirstSlots {
            a: [[TermId { slot: 0, index: 0 }; 2]; 2],
            b: [[TermId { slot: 0, index: 0 }; 2]; 2],
        };
        for i in 0..2 {
            let (ta, tb, beam) = tx.in_slot(|tx, t| {
                let p2 = null_projector(tx, &[RX2], t)?;
                let p1 = null_projector(tx, &[RX1], t)?;
                let mut ta = [TermId { slot: t, index: 0 }; 2];
                let mut tb = ta;
                for (col, id) in ta.iter_mut().enumerate() {
                    let f = tx.fresh(a(2 * i + col + 1));
                    *id = tx.send(p2.column(col), &f)?;
                }
                for (col, id) in tb.iter_mut().enumerate() {
                    let f = tx.fresh(b(2 * i + col + 1));
                    *id = tx.send(p1.column(col), &f)?;
                }
                let beam = match (&c_beam, self.cbeam) {
                    (Some(first), CBeam::FirstSlot) => first.clone(),
                    _ => null_projector(tx, &[RX1, RX2], t)?.column(0),
                };
                let c = tx.fresh(C);
                tx.send(beam.clone(), &c)?;
                Ok((ta, tb, beam))
            })?;
            out.a[i] = ta;
            out.b[i] = tb;
            c_beam.get_or_insert(beam);
        }
        Ok(out)
    }
}

impl LinearScheme for Ppd33 {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: match self.cbeam {
                CBeam::CurrentSlot => "ppd33".into(),
                CBeam::FirstSlot => "ppd33_printed".into(),
            },
            antennas: 3,
            receivers: 3,
            csit: "PPD".parse::<CsitConfig>().expect("static config"),
            slots: 4,
            claimed: DofTuple::per_receiver(&[(1, 1), (1, 1), (1, 4)]),
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        l.fresh_run("a", 4, &[RX1]);
        l.fresh_run("b", 4, &[RX2]);
        l.fresh("c", &[RX3]);
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        let first = self.first_slots(tx)?;
        let (t0, t1) = (first.a[0][0].slot, first.a[1][0].slot);

        let (forms, sent) = tx.in_slot(|tx, t| {
            let a2 = tx.observed_terms(RX3, t0, &first.a[0])?;
            let a2 = tx.reconstruct("A2", &[RX1, RX3], a2);
            let b2 = tx.observed_terms(RX3, t0, &first.b[0])?;
            let b2 = tx.reconstruct("B2", &[RX2, RX3], b2);
            let a4 = tx.observed_terms(RX3, t1, &first.a[1])?;
            let a4 = tx.reconstruct("A4", &[RX1, RX3], a4);
            let b4 = tx.observed_terms(RX3, t1, &first.b[1])?;
            let b4 = tx.reconstruct("B4", &[RX2, RX3], b4);
            let p2 = null_projector(tx, &[RX2], t)?;
            let p1 = null_projector(tx, &[RX1], t)?;
            let ta2 = tx.send(p2.column(0), &a2)?;
            let tb4 = tx.send(p1.column(0), &b4)?;
            Ok(([a2, b2, a4, b4], [ta2, tb4]))
        })?;
        let [a2, b2, a4, b4] = forms;

        tx.in_slot(|tx, t| {
            // receiver 3's gains on the slot-2 terms
            let alpha = tx.term_gain(RX3, sent[0])?;
            let beta = tx.term_gain(RX3, sent[1])?;
            let s = tx.symbols();
            let g1 = LinearForm::combine(&[(alpha.clone(), &b2), (-beta.clone(), &b4)], s);
            let g1 = tx.reconstruct("G1", &[RX2, RX3], g1);
            let g2 = LinearForm::combine(&[(beta, &a4), (-alpha, &a2)], s);
            let g2 = tx.reconstruct("G2", &[RX1, RX3], g2);
            let p2 = null_projector(tx, &[RX2], t)?;
            let p1 = null_projector(tx, &[RX1], t)?;
            tx.send(p2.column(0), &g2)?;
            tx.send(p1.column(0), &g1)?;
            Ok(())
        })
    }
}
