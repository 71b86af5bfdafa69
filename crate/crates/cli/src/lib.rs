//! Command-line front end for the `chaingreedy` library: config loading,
//! the report commands and their text and CSV rendering.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
