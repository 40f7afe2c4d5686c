//! On-disk chain description.
//!
//! JSON document holding the couplings and fields of one chain plus the
//! family parameters it was generated from (or `"custom"`). Floats are
//! serialized as shortest-round-trip decimals, so save/load/save is
//! byte-identical.

use std::path::Path;

use serde::{Deserialize, Serialize};
use spinwire::{ChainFamily, JacobiMatrix};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct ChainFile {
    pub schema_version: u32,
    pub meta: ChainMeta,
    pub couplings: Vec<f64>,
    pub fields: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ChainMeta {
    Uniform { m: usize, k: f64 },
    Krawtchouk { n: usize, k: f64 },
    Surgered { n: usize, m: usize, k: f64 },
    Custom,
}

impl From<ChainFamily> for ChainMeta {
    fn from(family: ChainFamily) -> Self {
        match family {
            ChainFamily::Uniform { m, k } => ChainMeta::Uniform { m, k },
            ChainFamily::Krawtchouk { n, k } => ChainMeta::Krawtchouk { n, k },
            ChainFamily::Surgered { n, m, k } => ChainMeta::Surgered { n, m, k },
        }
    }
}

impl ChainFile {
    pub fn from_chain(chain: &JacobiMatrix, meta: ChainMeta) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            meta,
            couplings: chain.couplings().to_vec(),
            fields: chain.fields().to_vec(),
        }
    }

    pub fn to_chain(&self) -> Result<JacobiMatrix, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::usage(format!(
                "unsupported chain file schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        JacobiMatrix::new(self.couplings.clone(), self.fields.clone())
            .map_err(|e| CliError::usage(format!("invalid chain file: {e}")))
    }

    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("chain file serializes");
        text.push('\n');
        text
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.render())
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load_is_bit_exact() {
        let family = ChainFamily::Surgered { n: 30, m: 44, k: 1.0 };
        let chain = family.build().unwrap();
        let file = ChainFile::from_chain(&chain, family.into());
        let path = std::env::temp_dir().join(format!(
            "spinwire-chainfile-{}.json",
            std::process::id()
        ));
        file.save(&path).unwrap();
        let loaded = ChainFile::load(&path).unwrap();
        std::fs::remove_file(&path).ok();

        assert_eq!(loaded.meta, file.meta);
        for (a, b) in loaded.couplings.iter().zip(chain.couplings()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        for (a, b) in loaded.fields.iter().zip(chain.fields()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(loaded.render(), file.render());
    }

    #[test]
    fn rejects_unknown_schema_version() {
        let file = ChainFile {
            schema_version: 99,
            meta: ChainMeta::Custom,
            couplings: vec![1.0],
            fields: vec![0.0, 0.0],
        };
        assert!(file.to_chain().is_err());
    }
}
