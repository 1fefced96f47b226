//! Catalecticant matrices, ideals of their minors and the symmetric-group
//! calculus of generic flattenings, all computed with exact (or multi-modular)
//! linear algebra on graded pieces.

pub mod catalecticant;
pub mod combinatorics;
pub mod error;
pub mod exactla;
pub mod polyalg;
pub mod symgrp;

pub use error::{Error, Result};
