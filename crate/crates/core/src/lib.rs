//! Exact search and classification tools for threefold canonical thresholds
//! computed by weighted blow-ups.

pub mod arith;
pub mod blowup;
pub mod classify;
pub mod poly;
pub mod threshold;
pub mod weights;
