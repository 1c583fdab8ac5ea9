use super::RX1;
use crate::channel::{CsitConfig, CsitState};
use crate::error::{Error, Result};
use crate::numerics::{Mat, Scalar};
use crate::scheme_core::{DofTuple, LinearScheme, SchemeDescriptor, SymbolLedger, Transmitter};

/// Zero-forcing with perfect CSIT everywhere: one symbol per receiver per
/// slot through the right pseudo-inverse `H^H (H H^H)^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PppZf {
    antennas: usize,
    receivers: usize,
}

impl PppZf {
    pub fn new(antennas: usize, receivers: usize) -> Result<Self> {
        if receivers == 0 || antennas < receivers {
            return Err(Error::Unsupported(format!(
                "zero-forcing needs 1 <= K <= M, got M={antennas}, K={receivers}"
            )));
        }
        Ok(Self {
            antennas,
            receivers,
        })
    }
}

impl LinearScheme for PppZf {
    fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            name: "ppp_zf".into(),
            antennas: self.antennas,
            receivers: self.receivers,
            csit: CsitConfig::new(vec![CsitState::P; self.receivers]).expect("K >= 1"),
            slots: 1,
            claimed: DofTuple::per_receiver(&vec![(1, 1); self.receivers]),
        }
    }

    fn ledger(&self) -> SymbolLedger {
        let mut l = SymbolLedger::new();
        for k in 0..self.receivers {
            l.fresh(format!("s{}", k + 1), &[RX1 + k]);
        }
        l
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        tx.in_slot(|tx, t| {
            let h = (0..self.receivers)
                .map(|k| tx.channel(k, t))
                .collect::<Result<Vec<_>>>()?;
            let h = Mat::from_rows(h)?;
            let hh = h.adjoint();
            let b = hh.matmul(&h.matmul(&hh)?.inverse()?)?;
            for k in 0..self.receivers {
                let f = tx.fresh(k);
                tx.send(b.column(k), &f)?;
            }
            Ok(())
        })
    }
}
