//! Concrete transmission schemes.
//!
//! Receivers are indexed from zero: receiver 1 of the usual `(a, b, c)`
//! naming is index 0. Slots are zero-based as well.

mod order2;
mod pd22;
mod pdd23;
mod pdd33;
mod ppd33;
mod zf;

pub use order2::{deliver_order2, order3_broadcast, Order2Delivery, Order2Inputs, Order3Broadcast};
pub use pd22::Pd22;
pub use pdd23::Pdd23;
pub use pdd33::Pdd33;
pub use ppd33::{CBeam, Ppd33};
pub use zf::PppZf;

use crate::error::Result;
use crate::numerics::{orth_projector, Mat, Scalar};
use crate::scheme_core::{LinearScheme, SchemeDescriptor, SymbolLedger, Transmitter};

pub(crate) const RX1: usize = 0;
pub(crate) const RX2: usize = 1;
pub(crate) const RX3: usize = 2;

/// Orthogonal projector killing the current-slot channels of `receivers`.
pub(crate) fn null_projector<F: Scalar>(
    tx: &mut Transmitter<'_, F>,
    receivers: &[usize],
    slot: usize,
) -> Result<Mat<F>> {
    let rows = receivers
        .iter()
        .map(|&k| tx.channel(k, slot))
        .collect::<Result<Vec<_>>>()?;
    orth_projector(&rows, tx.antennas())
}

pub fn pd22() -> Pd22 {
    Pd22
}

pub fn order2_delivery() -> Order2Delivery {
    Order2Delivery::new(2).expect("two antennas are supported")
}

pub fn pdd23() -> Pdd23 {
    Pdd23
}

pub fn pdd33() -> Pdd33 {
    Pdd33
}

pub fn ppd33() -> Ppd33 {
    Ppd33::new(CBeam::CurrentSlot)
}

pub fn ppp_zf(antennas: usize, receivers: usize) -> Result<PppZf> {
    PppZf::new(antennas, receivers)
}

/// Every shipped scheme behind one type, for lookup by name.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltinScheme {
    Pd22(Pd22),
    Order2Delivery(Order2Delivery),
    Pdd23(Pdd23),
    Pdd33(Pdd33),
    Ppd33(Ppd33),
    PppZf(PppZf),
    Order3Broadcast(Order3Broadcast),
}

macro_rules! each_scheme {
    ($self:expr, $s:ident => $body:expr) => {
        match $self {
            BuiltinScheme::Pd22($s) => $body,
            BuiltinScheme::Order2Delivery($s) => $body,
            BuiltinScheme::Pdd23($s) => $body,
            BuiltinScheme::Pdd33($s) => $body,
            BuiltinScheme::Ppd33($s) => $body,
            BuiltinScheme::PppZf($s) => $body,
            BuiltinScheme::Order3Broadcast($s) => $body,
        }
    };
}

impl LinearScheme for BuiltinScheme {
    fn descriptor(&self) -> SchemeDescriptor {
        each_scheme!(self, s => s.descriptor())
    }

    fn ledger(&self) -> SymbolLedger {
        each_scheme!(self, s => s.ledger())
    }

    fn transmit<F: Scalar>(&self, tx: &mut Transmitter<'_, F>) -> Result<()> {
        each_scheme!(self, s => s.transmit(tx))
    }
}

impl BuiltinScheme {
    pub fn name(&self) -> String {
        self.descriptor().name
    }

    /// Looks a scheme up by its listed name. `ppd33_printed` is the variant
    /// whose slot-2 c beam reuses the slot-1 projector; it is reachable by
    /// name for diagnostics but not listed.
    pub fn by_name(name: &str) -> Option<Self> {
        let s = match name {
            "pd22" => Self::Pd22(pd22()),
            "order2_delivery" => Self::Order2Delivery(order2_delivery()),
            "order2_delivery_m3" => Self::Order2Delivery(Order2Delivery::new(3).ok()?),
            "pdd23" => Self::Pdd23(pdd23()),
            "pdd33" => Self::Pdd33(pdd33()),
            "ppd33" => Self::Ppd33(ppd33()),
            "ppd33_printed" => Self::Ppd33(Ppd33::new(CBeam::FirstSlot)),
            "ppp_zf" => Self::PppZf(ppp_zf(3, 3).ok()?),
            "order3_broadcast" => Self::Order3Broadcast(Order3Broadcast::new(3)),
            _ => return None,
        };
        Some(s)
    }
}

/// Schemes shown by `list-schemes`, in display order.
pub fn registry() -> Vec<BuiltinScheme> {
    [
        "pd22",
        "order2_delivery",
        "order2_delivery_m3",
        "pdd23",
        "pdd33",
        "ppd33",
        "ppp_zf",
        "order3_broadcast",
    ]
    .into_iter()
    .filter_map(BuiltinScheme::by_name)
    .collect()
}
