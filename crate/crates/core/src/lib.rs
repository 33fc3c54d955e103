pub mod bqd;
pub mod catalog;
pub mod format;
pub mod hecke;
pub mod linalg;
pub mod par;
pub mod report;
pub mod scalars;
pub mod shape;
