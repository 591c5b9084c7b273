//! Construction and analysis of symmetric graphs built from flags of
//! complements of 2-point-transitive linear spaces.

pub mod catalog;
pub mod closedform;
pub mod data;
pub mod designs;
pub mod field;
pub mod flagcalc;
pub mod permcore;
pub mod report;
