//! Membership codes over hereditarily finite sets.
pub mod caps;
pub mod cli;
pub mod etr;
pub mod hfset;
pub mod logic;
pub mod memcode;
pub mod order;
pub mod sample;
pub mod translate;
pub mod truth;
pub mod unroll;

pub use caps::Caps;
pub use hfset::{hf_make, HFSet};
pub use memcode::MemCode;
pub use order::WellOrder;
