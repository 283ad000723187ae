//! Exact rendering of pairing values: a rational exponent mod 1 together
//! with the corresponding root of unity.

use endo_core::cohomology::PairingValue;
use serde::{Deserialize, Serialize};

use crate::spec::render_rat;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DeltaOutput {
    /// Exponent as a reduced rational in [0,1).
    pub exponent: String,
    pub mod1: String,
    pub zeta: String,
    /// ±1 when the value is real.
    #[serde(default)]
    pub sign: Option<i64>,
}

pub fn render_pairing(p: &PairingValue) -> DeltaOutput {
    let r = p.0;
    let (k, n) = (*r.numer(), *r.denom());
    DeltaOutput {
        exponent: render_rat(&r),
        mod1: format!("{} mod 1", render_rat(&r)),
        zeta: format!("ζ_{n}^{k}"),
        sign: p.sign(),
    }
}

pub fn pairing_text(p: &PairingValue) -> String {
    let d = render_pairing(p);
    match d.sign {
        Some(s) => format!("{} ({}, {})", d.mod1, d.zeta, if s > 0 { "+1" } else { "-1" }),
        None => format!("{} ({})", d.mod1, d.zeta),
    }
}
