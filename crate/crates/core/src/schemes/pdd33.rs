//! (3,3) PDD: 10 symbols to receiver 1, 4 each to receivers 2 and 3, in
//! 10 slots.
//!
//! Phase bc (slots 0..3) yields one bc symbol. Phase (ab, ac) (slots 3..6)
//! yields two ab and two ac symbols jointly: slot 5 carries `a10` together
//! with receiver 3's slot-3 output and receiver 2's slot-4 output, each of
//! which is side information for the other unintended receiver. Stage 2
//! (slots 6..10) is [`deliver_order2`] on three antennas.

use super::{deliver_order2, null_projector, Order2Inputs, RX1, RX2, RX3};
use crate::channel::CsitConfig;
use crate::error::Result;
use crate::numerics::Scalar;
use crate::scheme_core::{
    DofTuple, LinearForm, LinearScheme, SchemeDescriptor, SymbolLedger, TermId, Transmitter,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pdd33;

fn a(j: usize) -> usize {
    j - 1
}

fn b(j: usize) -> usize {
    10 + j - 1
}

fn c(j: usize) -> usize {
    14 + j - 1
}

/// `[a_i a_{i+1} a_{i+2}]^T + h_1^⊥(t) [0 s1 s2]^T`; returns the three `a`
/// term ids.
fn a_triple<F: Scalar>(
    tx: &mut Transmitter<'_, F>,
    first_a: usize,
    sides: [usize; 2],
) -> Result<Vec<TermId>> {
    tx.in_slot(|tx, t| {
        let p1 = null_projector(tx, &[RX1], t)?;
        let mut ids = Vec::with_capacity(3);
        for i in 0..3 {
            let f = tx.fresh(a(first_a + i));
            ids.push(tx.send_on_antenna(i, &f)?);
        }
        for (col, &s) in sides.iter().enumerate() {
            let f = tx.fresh(s);
            tx.send(p1.column(col + 1), &f)?;
        }
        Ok(ids)
    })
}

/// `resend` on `antenna` plus `h_1^⊥(t) [0 s1 s2]^T`. The resent form is
/// built inside the slot, from delayed CSIT.
fn resend_with_pair<'a, F: Scalar>(
    tx: &mut Transmitter<'a, F>,
    antenna: usize,
    resend: impl FnOnce(&mut Transmitter<'a, F>) -> Result<LinearForm<F>>,
    sides: [usize; 2],
) -> Result<usize> {
    tx.in_slot(|tx, t| {
        let form = resend(tx)?;
        let p1 = null_projector(tx, &[RX1], t)?;
        tx.send_on_antenna(antenna, &form)?;
        for (col, &s) in sides.iter().enumerate() {
            let f = tx.fresh(s);
            tx.send(p1.column(col + 1), &f)?;
        }
        Ok(t)
    })
}

impl LinearScheme for Pdd33 {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: "pdd33".into(),
            antennas: 3,
            receivers: 3,
            csit: "PDD".parse::<CsitConfig>().expect("static config"),
            slots: 10,
            claimed: DofTuple::per_receiver(&[(1, 1), (2, 5), (2, 5)]),
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        l.fresh_run("a", 10, &[RX1]);
        l.fresh_run("b", 4, &[RX2]);
        l.fresh_run("c", 4, &[RX3]);
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        let a_cols: Vec<usize> = (1..=10).map(a).collect();

        // phase bc
        let t0 = tx.in_slot(|tx, t| {
            for i in 0..3 {
                let f = tx.fresh(a(1 + i));
                tx.send_on_antenna(i, &f)?;
            }
            Ok(t)
        })?;
        let t1 = resend_with_pair(
            tx,
            1,
            |tx| {
                let f = tx.observed(RX2, t0)?;
                Ok(tx.reconstruct("A2", &[RX1, RX2], f))
            },
            [b(1), b(2)],
        )?;
        let t2 = resend_with_pair(
            tx,
            2,
            |tx| {
                let f = tx.observed(RX3, t0)?;
                Ok(tx.reconstruct("A3", &[RX1, RX3], f))
            },
            [c(1), c(2)],
        )?;

        // phase (ab, ac)
        let ab_terms = a_triple(tx, 4, [b(3), b(4)])?;
        let ac_terms = a_triple(tx, 7, [c(3), c(4)])?;
        let (t3, t4) = (ab_terms[0].slot, ac_terms[0].slot);
        let (t5, a10, l4, g3) = tx.in_slot(|tx, t| {
            let l4 = tx.observed(RX3, t3)?;
            let l4 = tx.reconstruct("L4", &[RX2, RX3], l4);
            let g3 = tx.observed(RX2, t4)?;
            let g3 = tx.reconstruct("G3", &[RX2, RX3], g3);
            let p1 = null_projector(tx, &[RX1], t)?;
            let f = tx.fresh(a(10));
            let a10 = tx.send_on_antenna(0, &f)?;
            let l4 = tx.send(p1.column(1), &l4)?;
            let g3 = tx.send(p1.column(2), &g3)?;
            Ok((t, a10, l4, g3))
        })?;

        deliver_order2(tx, |tx| {
            let ab1 = tx.observed_terms(RX2, t3, &ab_terms)?;
            // receiver 2 strips G3 off its slot-5 output using its slot-4 output
            let ab2 = tx.observed_terms(RX2, t5, &[a10, l4])?.restricted(&a_cols);
            let ac1 = tx.observed_terms(RX3, t4, &ac_terms)?;
            let ac2 = tx.observed_terms(RX3, t5, &[a10, g3])?.restricted(&a_cols);
            // receiver 3's slot-1 output plus receiver 2's slot-2 output
            let bc = tx.observed(RX3, t1)?.plus(&tx.observed(RX2, t2)?);
            Ok(Order2Inputs {
                ab: [ab1, ab2],
                ac: [ac1, ac2],
                bc,
            })
        })
    }
}
