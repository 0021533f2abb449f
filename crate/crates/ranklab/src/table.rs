//! The irreducible-modulus table in effect for a run.

use std::path::Path;

use ranklab_core::ModulusTable;

use crate::error::{CliError, Result};

pub const TABLE_ENV: &str = "RANKLAB_MODULUS_TABLE";

/// Built-in table, with entries from the file named by `RANKLAB_MODULUS_TABLE`
/// taking precedence.
pub fn active_table() -> Result<ModulusTable> {
    match std::env::var_os(TABLE_ENV) {
        Some(path) if !path.is_empty() => with_override(Path::new(&path)),
        _ => Ok(ModulusTable::builtin()),
    }
}

pub fn with_override(path: &Path) -> Result<ModulusTable> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let extra = ModulusTable::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut table = ModulusTable::builtin();
    table.merge(extra);
    Ok(table)
}
