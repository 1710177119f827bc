pub mod demo;
pub mod saturate;
pub mod sweep;
pub mod verify;

use std::path::PathBuf;

use crate::config::ConfigFile;
use crate::error::Result;
use crate::{Format, OutputArgs};

pub(crate) fn load_config(path: Option<&PathBuf>, allowed: &[&str]) -> Result<ConfigFile> {
    match path {
        Some(path) => {
            let cfg = ConfigFile::load(path)?;
            cfg.check_keys(allowed)?;
            Ok(cfg)
        }
        None => Ok(ConfigFile::default()),
    }
}

/// Output destination and format, flags first.
pub(crate) fn output(args: &OutputArgs, cfg: &ConfigFile) -> Result<(Format, Option<PathBuf>)> {
    let format = match args.format {
        Some(f) => f,
        None => cfg.get::<Format>("format")?.unwrap_or(Format::Json),
    };
    let out = match &args.out {
        Some(p) => Some(p.clone()),
        None => cfg.raw("out").map(PathBuf::from),
    };
    Ok((format, out))
}
