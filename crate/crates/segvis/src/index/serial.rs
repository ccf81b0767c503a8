//! Index files: a magic header followed by JSON or bincode.

use std::io::{Read, Write};

use super::WvpIndex;

pub const MAGIC: &[u8; 7] = b"SEGVIS1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Binary,
}

#[derive(Debug, thiserror::Error)]
pub enum IndexFileError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing SEGVIS1 header")]
    BadMagic,
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("binary: {0}")]
    Binary(#[from] bincode::Error),
}

impl WvpIndex {
    pub fn write_to(&self, mut w: impl Write, format: Format) -> Result<(), IndexFileError> {
        w.write_all(MAGIC)?;
        match format {
            Format::Json => {
                w.write_all(b"\n")?;
                serde_json::to_writer(&mut w, self)?;
            }
            Format::Binary => {
                w.write_all(b"\0")?;
                bincode::serialize_into(&mut w, self)?;
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self, format: Format) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out, format).expect("writing to memory");
        out
    }

    /// Reads either format, telling them apart by the byte after the header.
    pub fn read_from(mut r: impl Read) -> Result<WvpIndex, IndexFileError> {
        let mut head = [0u8; 8];
        r.read_exact(&mut head)?;
        if &head[..7] != MAGIC {
            return Err(IndexFileError::BadMagic);
        }
        match head[7] {
            b'\n' => Ok(serde_json::from_reader(r)?),
            0 => Ok(bincode::deserialize_from(r)?),
            _ => Err(IndexFileError::BadMagic),
        }
    }
}
