//! The `PEMB1` file: magic, `n` and `m` as little-endian `u64`, then the
//! words of `A`, `B` and `B*` as little-endian `u64` with zero padding.
//! Directories are rebuilt on load.

use std::io::{Read, Write};

use super::CompactEmbedding;
use crate::bits::RawBits;
use crate::error::PembFileError;
use crate::par::Executor;

const MAGIC: &[u8; 5] = b"PEMB1";

pub fn write_pemb<W: Write>(c: &CompactEmbedding, mut out: W) -> std::io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&(c.n() as u64).to_le_bytes())?;
    out.write_all(&(c.m() as u64).to_le_bytes())?;
    for raw in [c.a().raw(), c.b().raw(), c.bstar().raw()] {
        for w in raw.words() {
            out.write_all(&w.to_le_bytes())?;
        }
    }
    out.flush()
}

pub fn read_pemb<R: Read>(mut input: R, threads: usize) -> Result<CompactEmbedding, PembFileError> {
    let mut magic = [0u8; 5];
    input
        .read_exact(&mut magic)
        .map_err(|_| PembFileError::Truncated("magic"))?;
    if &magic != MAGIC {
        return Err(PembFileError::BadMagic);
    }
    let n = read_u64(&mut input)?;
    let m = read_u64(&mut input)?;
    if n < 2 || m < n - 1 || m > u32::MAX as u64 / 2 {
        return Err(PembFileError::Corrupt(format!(
            "implausible header n = {n}, m = {m}"
        )));
    }
    let (n, m) = (n as usize, m as usize);
    let a = read_bits(&mut input, 2 * m, "A")?;
    let b = read_bits(&mut input, 2 * (n - 1), "B")?;
    let bstar = read_bits(&mut input, 2 * (m + 1 - n), "B*")?;
    CompactEmbedding::from_bits_with(&Executor::new(threads), n, m, a, b, bstar)
        .map_err(|e| PembFileError::Corrupt(e.to_string()))
}

fn read_u64<R: Read>(input: &mut R) -> Result<u64, PembFileError> {
    let mut buf = [0u8; 8];
    input
        .read_exact(&mut buf)
        .map_err(|_| PembFileError::Truncated("header"))?;
    Ok(u64::from_le_bytes(buf))
}

fn read_bits<R: Read>(
    input: &mut R,
    len: usize,
    name: &'static str,
) -> Result<RawBits, PembFileError> {
    let nbytes = len.div_ceil(64) * 8;
    let mut buf = Vec::new();
    input.by_ref().take(nbytes as u64).read_to_end(&mut buf)?;
    if buf.len() != nbytes {
        return Err(PembFileError::Truncated(name));
    }
    let words: Vec<u64> = buf
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let bits = RawBits::from_words(words.clone(), len);
    if bits.words() != words.as_slice() {
        return Err(PembFileError::Corrupt(format!(
            "{name} has nonzero padding"
        )));
    }
    Ok(bits)
}
