//! (2,3) PDD: 12 symbols to receiver 1, 4 each to receivers 2 and 3, in
//! 12 slots.
//!
//! Stage 1 (slots 0..8) manufactures five order-2 symbols:
//!
//! * phase bc (slots 0..4): pairs of `a`s with a single `b` or `c` beamed
//!   orthogonally to receiver 1; the even slots resend the overheard `a`
//!   combination of receiver 2 (resp. 3). The bc symbol is receiver 3's
//!   slot-1 output plus receiver 2's slot-3 output.
//! * phase ab (slots 4, 5) and phase ac (slots 6, 7): receiver 2's (resp.
//!   receiver 3's) view of each `a` pair becomes an ab (ac) symbol.
//!
//! Stage 2 (slots 8..12) is [`deliver_order2`].
//!
//! Every orthogonal beam uses the current slot's `h_1^⊥`.

use super::order2::pair_plus_side;
use super::{deliver_order2, null_projector, Order2Inputs, RX1, RX2, RX3};
use crate::channel::CsitConfig;
use crate::error::Result;
use crate::numerics::Scalar;
use crate::scheme_core::{
    DofTuple, LinearForm, LinearScheme, SchemeDescriptor, SymbolLedger, TermId, Transmitter,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pdd23;

fn a(j: usize) -> usize {
    j - 1
}

fn b(j: usize) -> usize {
    12 + j - 1
}

fn c(j: usize) -> usize {
    16 + j - 1
}

/// `[resend 0]^T + h_1^⊥(t) [side 0]^T`.
fn resend_plus_side<F: Scalar>(
    tx: &mut Transmitter<'_, F>,
    t: usize,
    resend: &LinearForm<F>,
    side: &LinearForm<F>,
) -> Result<()> {
    let p1 = null_projector(tx, &[RX1], t)?;
    tx.send_on_antenna(0, resend)?;
    tx.send(p1.column(0), side)?;
    Ok(())
}

/// A slot carrying `a_i, a_{i+1}` on the antennas and `side` beamed away
/// from receiver 1.
fn a_pair<F: Scalar>(
    tx: &mut Transmitter<'_, F>,
    first_a: usize,
    side: usize,
) -> Result<[TermId; 2]> {
    tx.in_slot(|tx, t| {
        let (x, y, z) = (tx.fresh(a(first_a)), tx.fresh(a(first_a + 1)), tx.fresh(side));
        pair_plus_side(tx, t, [&x, &y], &z)
    })
}

impl LinearScheme for Pdd23 {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: "pdd23".into(),
            antennas: 2,
            receivers: 3,
            csit: "PDD".parse::<CsitConfig>().expect("static config"),
            slots: 12,
            claimed: DofTuple::per_receiver(&[(1, 1), (1, 3), (1, 3)]),
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        l.fresh_run("a", 12, &[RX1]);
        l.fresh_run("b", 4, &[RX2]);
        l.fresh_run("c", 4, &[RX3]);
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        // phase bc
        let first = a_pair(tx, 1, b(1))?;
        let t1 = tx.in_slot(|tx, t| {
            let a2 = tx.observed_terms(RX2, first[0].slot, &first)?;
            let a2 = tx.reconstruct("A2", &[RX1, RX2], a2);
            let side = tx.fresh(b(2));
            resend_plus_side(tx, t, &a2, &side)?;
            Ok(t)
        })?;
        let third = a_pair(tx, 3, c(1))?;
        let t3 = tx.in_slot(|tx, t| {
            let a4 = tx.observed_terms(RX3, third[0].slot, &third)?;
            let a4 = tx.reconstruct("A4", &[RX1, RX3], a4);
            let side = tx.fresh(c(2));
            resend_plus_side(tx, t, &a4, &side)?;
            Ok(t)
        })?;

        // phase ab, phase ac
        let ab = [a_pair(tx, 5, b(3))?, a_pair(tx, 7, b(4))?];
        let ac = [a_pair(tx, 9, c(3))?, a_pair(tx, 11, c(4))?];

        deliver_order2(tx, |tx| {
            let ab1 = tx.observed_terms(RX2, ab[0][0].slot, &ab[0])?;
            let ab2 = tx.observed_terms(RX2, ab[1][0].slot, &ab[1])?;
            let ac1 = tx.observed_terms(RX3, ac[0][0].slot, &ac[0])?;
            let ac2 = tx.observed_terms(RX3, ac[1][0].slot, &ac[1])?;
            // receiver 3's slot-1 output plus receiver 2's slot-3 output
            let bc = tx.observed(RX3, t1)?.plus(&tx.observed(RX2, t3)?);
            Ok(Order2Inputs {
                ab: [ab1, ab2],
                ac: [ac1, ac2],
                bc,
            })
        })
    }
}
