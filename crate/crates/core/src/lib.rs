//! Exact-arithmetic combinatorics of real endoscopic transfer.
//!
//! Everything is computed at the level of lattices and rational vectors:
//! based root data and Weyl groups, involutions encoding real forms,
//! Tate cohomology of real tori with the Tate–Nakayama pairing, Tits-group
//! cocycles, Langlands/Arthur parameter data, packet enumeration across
//! inner forms, and spectral transfer factors. No floating point anywhere.

pub mod error;
pub mod linalg;
pub mod rootdata;
pub mod realform;
pub mod cohomology;
pub mod tits;
pub mod lparam;
pub mod aparam;
pub mod packets;
pub mod transfer;
pub mod fixtures;

pub use error::{Error, Result};
pub use linalg::{IMat, QMat, Rat};
pub use rootdata::{BasedRootDatum, Isogeny, LeviSubset, WeylElement};
pub use realform::{FundamentalPair, Grading, RealTorus, TwistContext};
pub use cohomology::{CohomologyGroup, DualInvariant, PairingValue, TateClass};
pub use tits::TitsElement;
pub use lparam::{CentralizerReport, LParamClass, LParamData};
pub use aparam::{AParamData, Regularity};
pub use packets::{InnerFormSpec, PacketMember, RelativeInvariant};
pub use transfer::{CharValue, DeltaValue, EndoscopicDatum, RelatedPair};
pub use fixtures::{builtin_fixtures, fixture, Fixture, FixtureForm, FixtureParameter, ParamKind};








