//! The `nisalg` command-line tool and its JSON bundle format.

pub mod bundle;
pub mod commands;

pub use bundle::{Bundle, ExtensionBlock, SCHEMA};
