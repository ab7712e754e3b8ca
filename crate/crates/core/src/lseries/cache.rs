//! Binary coefficient files: "ETACOEF1", u32 N, u32 reserved (0), then N
//! little-endian i64 values.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"ETACOEF1";
pub const HEADER_LEN: usize = 16;

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

pub fn write_cache(path: &Path, coeffs: &[i64]) -> Result<()> {
    let n = u32::try_from(coeffs.len()).map_err(|_| io_err(path, "too many coefficients"))?;
    let tmp = path.with_extension("tmp");
    {
        let f = File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
        let mut w = BufWriter::new(f);
        w.write_all(MAGIC).map_err(|e| io_err(&tmp, e))?;
        w.write_all(&n.to_le_bytes()).map_err(|e| io_err(&tmp, e))?;
        w.write_all(&0u32.to_le_bytes()).map_err(|e| io_err(&tmp, e))?;
        for c in coeffs {
            w.write_all(&c.to_le_bytes()).map_err(|e| io_err(&tmp, e))?;
        }
        w.flush().map_err(|e| io_err(&tmp, e))?;
    }
    std::fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

pub fn read_cache(path: &Path) -> Result<Vec<i64>> {
    let f = File::open(path).map_err(|e| io_err(path, e))?;
    let len = f.metadata().map_err(|e| io_err(path, e))?.len();
    let mut r = BufReader::new(f);
    let mut header = [0u8; HEADER_LEN];
    r.read_exact(&mut header).map_err(|e| io_err(path, e))?;
    if &header[..8] != MAGIC {
        return Err(io_err(path, "bad magic"));
    }
    let n = u32::from_le_bytes(header[8..12].try_into().expect("4 bytes")) as usize;
    let reserved = u32::from_le_bytes(header[12..16].try_into().expect("4 bytes"));
    if reserved != 0 {
        return Err(io_err(path, "reserved header field is not zero"));
    }
    if len != (HEADER_LEN + 8 * n) as u64 {
        return Err(io_err(path, format!("expected {} bytes, found {len}", HEADER_LEN + 8 * n)));
    }
    let mut buf = vec![0u8; 8 * n];
    r.read_exact(&mut buf).map_err(|e| io_err(path, e))?;
    Ok(buf.chunks_exact(8).map(|c| i64::from_le_bytes(c.try_into().expect("8 bytes"))).collect())
}
