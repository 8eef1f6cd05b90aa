pub mod error;
pub mod exactalg;
pub mod qsymbols;
pub mod report;
pub mod carlitz;
pub mod qbernoulli;
pub mod classical;
pub mod cli;
