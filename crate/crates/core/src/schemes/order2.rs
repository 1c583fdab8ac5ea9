//! Delivery of five order-2 symbols `(ab1, ab2, ac1, ac2, bc)` in four slots
//! under PDD, and the one-slot order-3 broadcast it ends with.

use num_rational::Rational64;

use super::{null_projector, RX1, RX2, RX3};
use crate::channel::CsitConfig;
use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::scheme_core::{
    DofTuple, LinearForm, LinearScheme, SchemeDescriptor, SymbolLedger, TermId, Transmitter,
};

/// The order-2 payload: forms over the fresh symbols of the host scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct Order2Inputs<F> {
    pub ab: [LinearForm<F>; 2],
    pub ac: [LinearForm<F>; 2],
    pub bc: LinearForm<F>,
}

/// Sends an order-3 form on antenna 1 alone; every receiver hears a nonzero
/// multiple of it.
pub fn order3_broadcast<F: Scalar>(
    tx: &mut Transmitter<'_, F>,
    form: &LinearForm<F>,
) -> Result<TermId> {
    tx.send_on_antenna(0, form)
}

/// Body of a `[p0 p1 0..]^T + h_1^⊥(t) [side 0..]^T` slot. Returns the ids
/// of the two pair terms.
pub(crate) fn pair_plus_side<F: Scalar>(
    tx: &mut Transmitter<'_, F>,
    t: usize,
    pair: [&LinearForm<F>; 2],
    side: &LinearForm<F>,
) -> Result<[TermId; 2]> {
    let p1 = null_projector(tx, &[RX1], t)?;
    let first = tx.send_on_antenna(0, pair[0])?;
    let second = tx.send_on_antenna(1, pair[1])?;
    tx.send(p1.column(0), side)?;
    Ok([first, second])
}

/// Runs the four delivery slots, continuing from whatever the host scheme
/// has already committed. `build` runs inside the first delivery slot, so
/// it may read delayed CSIT of every earlier slot.
pub fn deliver_order2<'a, F: Scalar>(
    tx: &mut Transmitter<'a, F>,
    build: impl FnOnce(&mut Transmitter<'a, F>) -> Result<Order2Inputs<F>>,
) -> Result<()> {
    if tx.antennas() < 2 || tx.receivers() != 3 {
        return Err(Error::Unsupported(format!(
            "order-2 delivery needs M >= 2 and K = 3, got ({}, {})",
            tx.antennas(),
            tx.receivers()
        )));
    }
    let (t_ab, ab_terms, inputs) = tx.in_slot(|tx, t| {
        let inputs = build(tx)?;
        let audiences = [[RX1, RX2], [RX1, RX2], [RX1, RX3], [RX1, RX3]];
        let forms = [&inputs.ab[0], &inputs.ab[1], &inputs.ac[0], &inputs.ac[1]];
        for (i, (audience, form)) in audiences.iter().zip(forms).enumerate() {
            let name = if i < 2 { format!("ab{}", i + 1) } else { format!("ac{}", i - 1) };
            tx.reconstruct(name, audience, form.clone());
        }
        tx.reconstruct("bc", &[RX2, RX3], inputs.bc.clone());
        let ids = pair_plus_side(tx, t, [&inputs.ab[0], &inputs.ab[1]], &inputs.bc)?;
        Ok((t, ids, inputs))
    })?;
    let (t_ac, ac_terms) = tx.in_slot(|tx, t| {
        let ids = pair_plus_side(tx, t, [&inputs.ac[0], &inputs.ac[1]], &inputs.bc)?;
        Ok((t, ids))
    })?;

    // receiver 3's view of the ab pair: wanted by 1 and 2, and lets 3 strip
    // the ab interference off its bc observation
    tx.in_slot(|tx, _| {
        let l3 = tx.observed_terms(RX3, t_ab, &ab_terms)?;
        let l3 = tx.reconstruct("L3(ab)", &[RX1, RX2, RX3], l3);
        order3_broadcast(tx, &l3)
    })?;
    tx.in_slot(|tx, _| {
        let f2 = tx.observed_terms(RX2, t_ac, &ac_terms)?;
        let f2 = tx.reconstruct("F2(ac)", &[RX1, RX2, RX3], f2);
        order3_broadcast(tx, &f2)
    })?;
    Ok(())
}

/// Stand-alone order-2 delivery with five fresh order-2 symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order2Delivery {
    antennas: usize,
}

impl Order2Delivery {
    /// Valid for two or three transmit antennas.
    pub fn new(antennas: usize) -> Result<Self> {
        if !(2..=3).contains(&antennas) {
            return Err(Error::Unsupported(format!(
                "order-2 delivery is defined for M in {{2, 3}}, got {antennas}"
            )));
        }
        Ok(Self { antennas })
    }
}

impl LinearScheme for Order2Delivery {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: if self.antennas == 2 {
                "order2_delivery".into()
            } else {
                "order2_delivery_m3".into()
            },
            antennas: self.antennas,
            receivers: 3,
            csit: "PDD".parse::<CsitConfig>().expect("static config"),
            slots: 4,
            claimed: DofTuple::Order2 {
                d12: Rational64::new(1, 2),
                d23: Rational64::new(1, 4),
                d13: Rational64::new(1, 2),
            },
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        l.fresh_run("ab", 2, &[RX1, RX2]);
        l.fresh_run("ac", 2, &[RX1, RX3]);
        l.fresh("bc", &[RX2, RX3]);
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        deliver_order2(tx, |tx| {
            Ok(Order2Inputs {
                ab: [tx.fresh(0), tx.fresh(1)],
                ac: [tx.fresh(2), tx.fresh(3)],
                bc: tx.fresh(4),
            })
        })
    }
}

/// One order-3 symbol in one slot, no CSIT needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order3Broadcast {
    antennas: usize,
}

impl Order3Broadcast {
    pub fn new(antennas: usize) -> Self {
        Self {
            antennas: antennas.max(1),
        }
    }
}

impl LinearScheme for Order3Broadcast {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: "order3_broadcast".into(),
            antennas: self.antennas,
            receivers: 3,
            csit: "DDD".parse::<CsitConfig>().expect("static config"),
            slots: 1,
            claimed: DofTuple::Order3(Rational64::from_integer(1)),
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        l.fresh("abc", &[RX1, RX2, RX3]);
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        tx.in_slot(|tx, _| {
            let s = tx.fresh(0);
            order3_broadcast(tx, &s).map(drop)
        })
    }
}
