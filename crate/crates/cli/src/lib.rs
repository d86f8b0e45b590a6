//! Library surface of the command-line interface: file formats, rendering,
//! and the command implementations.

pub mod commands;
pub mod format;
pub mod render;
