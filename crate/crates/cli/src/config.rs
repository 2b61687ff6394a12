//! `key = value` experiment files mirroring the `simulate` flags.
//!
//! ```text
//! # fig2 bundle
//! qubits = 4
//! signal = 3:1,5:2,7:4
//! shots = 1000
//! seed = 7
//! out_dir = out/fig2
//! format = json,csv
//! ```

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::Context;
use qftsim_core::{Error, OutputFormat};

#[derive(Debug, Default, PartialEq)]
pub struct FileConfig {
    pub qubits: Option<usize>,
    pub signal: Option<String>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub formats: Option<BTreeSet<OutputFormat>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Self::parse(&text)?)
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigInvalid {
                field: format!("line {}", lineno + 1),
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |msg: &str| Error::ConfigInvalid { field: key.to_string(), message: format!("{msg}: {value:?}") };
            match key {
                "qubits" => cfg.qubits = Some(value.parse().map_err(|_| bad("not an integer"))?),
                "signal" => cfg.signal = Some(value.to_string()),
                "shots" => cfg.shots = Some(value.parse().map_err(|_| bad("not a nonnegative integer"))?),
                "seed" => cfg.seed = Some(value.parse().map_err(|_| bad("not a nonnegative integer"))?),
                "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
                "format" => {
                    let formats = value.split(',').map(str::parse).collect::<Result<BTreeSet<_>, _>>()?;
                    cfg.formats = Some(formats);
                }
                _ => return Err(bad("unknown key")),
            }
        }
        Ok(cfg)
    }
}
