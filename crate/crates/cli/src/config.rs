use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Largest top permutation whose interval may be materialized.
    pub max_interval_top_length: usize,
    /// Fast answers for tops up to this length are re-derived by recursion.
    pub verify_threshold: usize,
    pub parallel_width: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_interval_top_length == 0
            || self.verify_threshold == 0
            || self.parallel_width == 0
        {
            return Err(CliError::Usage("limits must be positive".into()));
        }
        if self.verify_threshold > self.max_interval_top_length {
            return Err(CliError::Usage(format!(
                "verify threshold {} exceeds max interval top length {}",
                self.verify_threshold, self.max_interval_top_length
            )));
        }
        Ok(())
    }
}
