//! Command-line frontend for the mapping-space engine.

pub mod commands;
pub mod model;
pub mod report;
pub mod selftest;
