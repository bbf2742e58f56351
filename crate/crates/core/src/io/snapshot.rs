//! Binary field snapshots.
//!
//! Layout, all little-endian: magic `BOFS`, `u32` version, `u64` n, `f64`
//! length, `f64` t, then `n` samples as `f64`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::models::SimState;
use crate::spectral::{Field, TorusGrid};

pub const MAGIC: &[u8; 4] = b"BOFS";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 8 + 8 + 8;

pub fn encode(state: &SimState) -> Vec<u8> {
    let g = state.u.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * g.n());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(g.n() as u64).to_le_bytes());
    out.extend_from_slice(&g.length().to_le_bytes());
    out.extend_from_slice(&state.t.to_le_bytes());
    for v in state.u.samples() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        if self.bytes.len() < N {
            return Err(Error::TruncatedSnapshot);
        }
        let (head, rest) = self.bytes.split_at(N);
        self.bytes = rest;
        Ok(head.try_into().expect("length checked"))
    }
}

pub fn decode(bytes: &[u8]) -> Result<SimState> {
    let mut r = Reader { bytes };
    if bytes.len() < MAGIC.len() {
        // too short to even hold the magic: a prefix of it is still a truncation
        return Err(if MAGIC.starts_with(bytes) {
            Error::TruncatedSnapshot
        } else {
            Error::NotASnapshot
        });
    }
    if &r.take::<4>()? != MAGIC {
        return Err(Error::NotASnapshot);
    }
    let version = u32::from_le_bytes(r.take()?);
    if version != VERSION {
        return Err(Error::SnapshotVersion {
            found: version,
            expected: VERSION,
        });
    }
    let n = u64::from_le_bytes(r.take()?);
    let length = f64::from_le_bytes(r.take()?);
    let t = f64::from_le_bytes(r.take()?);
    let n = usize::try_from(n).map_err(|_| Error::TruncatedSnapshot)?;
    if r.bytes.len() / 8 < n {
        return Err(Error::TruncatedSnapshot);
    }
    if r.bytes.len() != 8 * n {
        return Err(Error::InvalidArgument(format!(
            "snapshot has {} trailing bytes",
            r.bytes.len() - 8 * n
        )));
    }
    let grid = TorusGrid::new(n, length)?;
    let samples = r
        .bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    Ok(SimState::new(Field::new(grid, samples)?, t))
}

pub fn write(path: &Path, state: &SimState) -> Result<()> {
    fs::write(path, encode(state))?;
    Ok(())
}

pub fn read(path: &Path) -> Result<SimState> {
    decode(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_grid;
    use proptest::prelude::*;

    fn state(n: usize, length: f64, t: f64, samples: Vec<f64>) -> SimState {
        SimState::new(
            Field::new(make_grid(n, length).unwrap(), samples).unwrap(),
            t,
        )
    }

    #[test]
    fn header_layout() {
        let s = state(8, 2.0, 0.5, (0..8).map(f64::from).collect());
        let b = encode(&s);
        assert_eq!(b.len(), HEADER_LEN + 64);
        assert_eq!(&b[..4], b"BOFS");
        assert_eq!(&b[4..8], &[1, 0, 0, 0]);
        assert_eq!(&b[8..16], &8u64.to_le_bytes());
        assert_eq!(&b[16..24], &2.0f64.to_le_bytes());
        assert_eq!(&b[24..32], &0.5f64.to_le_bytes());
        assert_eq!(&b[32..40], &0.0f64.to_le_bytes());
    }

    #[test]
    fn distinct_errors() {
        let b = encode(&state(8, 1.0, 0.0, vec![1.0; 8]));
        assert_eq!(
            decode(&b[..b.len() - 3]).unwrap_err(),
            Error::TruncatedSnapshot
        );
        assert_eq!(decode(&b[..10]).unwrap_err(), Error::TruncatedSnapshot);
        assert_eq!(decode(b"BO").unwrap_err(), Error::TruncatedSnapshot);
        let mut bad = b.clone();
        bad[0] = b'X';
        assert_eq!(decode(&bad).unwrap_err(), Error::NotASnapshot);
        assert_eq!(decode(b"PK").unwrap_err(), Error::NotASnapshot);
        let mut v2 = b.clone();
        v2[4] = 2;
        assert_eq!(
            decode(&v2).unwrap_err(),
            Error::SnapshotVersion {
                found: 2,
                expected: 1
            }
        );
        assert_eq!(
            decode(&b[..b.len() - 3]).unwrap_err().to_string(),
            "truncated snapshot"
        );
        assert!(bad_magic_message().starts_with("not a snapshot"));
    }

    fn bad_magic_message() -> String {
        decode(b"ABCDEFGH").unwrap_err().to_string()
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(
            half in 4usize..64,
            length in 1e-3f64..1e4,
            t in -1e6f64..1e6,
            seed in any::<u64>(),
        ) {
            let n = 2 * half;
            let mut x = seed;
            let samples: Vec<f64> = (0..n)
                .map(|_| {
                    // xorshift bits reinterpreted as finite doubles
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    let v = f64::from_bits(x);
                    if v.is_finite() { v } else { 0.0 }
                })
                .collect();
            let s = state(n, length, t, samples);
            let back = decode(&encode(&s)).unwrap();
            prop_assert_eq!(back.t.to_bits(), s.t.to_bits());
            prop_assert_eq!(back.u.grid(), s.u.grid());
            let a: Vec<u64> = back.u.samples().iter().map(|v| v.to_bits()).collect();
            let b: Vec<u64> = s.u.samples().iter().map(|v| v.to_bits()).collect();
            prop_assert_eq!(a, b);
        }
    }
}
