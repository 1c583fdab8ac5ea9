use super::{null_projector, RX1, RX2};
use crate::channel::CsitConfig;
use crate::error::Result;
use crate::numerics::Scalar;
use crate::scheme_core::{DofTuple, LinearScheme, SchemeDescriptor, SymbolLedger, Transmitter};

/// Two-user PD scheme: `(a1, a2)` to receiver 1 and `b` to receiver 2 in two
/// slots. Slot 2 resends receiver 2's view of `(a1, a2)`, which is useful to
/// both receivers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pd22;

const A1: usize = 0;
const A2: usize = 1;
const B: usize = 2;

impl LinearScheme for Pd22 {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: "pd22".into(),
            antennas: 2,
            receivers: 2,
            csit: "PD".parse::<CsitConfig>().expect("static config"),
            slots: 2,
            claimed: DofTuple::per_receiver(&[(1, 1), (1, 2)]),
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        l.fresh_run("a", 2, &[RX1]);
        l.fresh("b", &[RX2]);
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        let sent = tx.in_slot(|tx, t| {
            let p1 = null_projector(tx, &[RX1], t)?;
            let (a1, a2, b) = (tx.fresh(A1), tx.fresh(A2), tx.fresh(B));
            let ids = [tx.send_on_antenna(0, &a1)?, tx.send_on_antenna(1, &a2)?];
            tx.send(p1.column(0), &b)?;
            Ok(ids)
        })?;
        tx.in_slot(|tx, _| {
            let l2 = tx.observed_terms(RX2, sent[0].slot, &sent)?;
            let l2 = tx.reconstruct("L2(a)", &[RX1, RX2], l2);
            tx.send_on_antenna(0, &l2).map(drop)
        })
    }
}
