//! Binary snapshots: `CHLC1`, u32 `n`, f64 `L`, f64 `t`, then the eight
//! fields as `n^3` little-endian `(re, im)` f64 pairs in spectral layout.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::State;
use crate::spectral::{make_grid, Parity, SpectralField};

pub const MAGIC: &[u8; 5] = b"CHLC1";

pub fn write_snapshot(w: &mut impl Write, s: &State) -> Result<()> {
    let g = s.grid();
    w.write_all(MAGIC)?;
    w.write_all(&(g.n() as u32).to_le_bytes())?;
    w.write_all(&g.length().to_le_bytes())?;
    w.write_all(&s.t.to_le_bytes())?;
    let mut buf = Vec::with_capacity(16 * g.len());
    for f in s.fields() {
        buf.clear();
        for c in f.coeffs() {
            buf.extend_from_slice(&c.re.to_le_bytes());
            buf.extend_from_slice(&c.im.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    Ok(())
}

pub fn read_snapshot(r: &mut impl Read) -> Result<State> {
    let mut magic = [0u8; 5];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Contract("not a CHLC1 snapshot".into()));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4)?;
    let n = u32::from_le_bytes(b4) as usize;
    r.read_exact(&mut b8)?;
    let length = f64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let t = f64::from_le_bytes(b8);
    let g = make_grid(n, length)?;
    let mut buf = vec![0u8; 16 * g.len()];
    let mut fields = Vec::with_capacity(8);
    for _ in 0..8 {
        r.read_exact(&mut buf)?;
        let coeffs = buf
            .chunks_exact(16)
            .map(|c| {
                let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
                let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
                Complex64::new(re, im)
            })
            .collect();
        fields.push(SpectralField::from_coeffs(&g, coeffs, Parity::Real)?);
    }
    let fields: [SpectralField; 8] = fields.try_into().expect("eight fields");
    Ok(State::from_fields(t, fields))
}

pub fn save(path: &Path, s: &State) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_snapshot(&mut f, s)?;
    f.flush()?;
    Ok(())
}

pub fn load(path: &Path) -> Result<State> {
    read_snapshot(&mut std::io::BufReader::new(std::fs::File::open(path)?))
}
