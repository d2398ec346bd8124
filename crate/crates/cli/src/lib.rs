//! Library half of the command-line tool: argument definitions, command
//! implementations, rendering, the result cache and the CAS exporter.
//! The binary in `main.rs` is a thin shell around [`commands::run`].

pub mod args;
pub mod cache;
pub mod cas;
pub mod commands;
pub mod output;
