//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

pub mod chains;
pub mod joint;
pub mod random;
