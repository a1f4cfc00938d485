//! Std companion to `matsuo-core`: group files, report formats, parallel
//! Jordan sweeps and the command-line driver.

pub mod catalog;
pub mod cli;
pub mod export;
pub mod groupfile;
pub mod parallel;
pub mod report;

pub use matsuo_core;
