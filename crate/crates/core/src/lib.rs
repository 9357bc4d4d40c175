pub mod zcore;
pub mod zparse;
pub mod ztype;
pub mod zeval;
pub mod fms;
pub mod smt_emit;
pub mod witness;
pub mod cli;
