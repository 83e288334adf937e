//! On-disk store for finite-difference eigendecompositions.
//!
//! Layout, all little-endian:
//!
//! | bytes            | content                                      |
//! |------------------|----------------------------------------------|
//! | 8                | magic `EWAPEIG\0`                            |
//! | 1                | format version (1)                           |
//! | 7                | reserved, zero                               |
//! | 8                | number of pieces `n` (u64)                   |
//! | 8·n              | `α_1 … α_n` (f64)                            |
//! | 8·(n−1)          | `ρ_1 … ρ_{n−1}` (f64)                        |
//! | 8                | grid size `N` (u64)                          |
//! | 1                | coefficient sampling (0 pointwise, 1 cell)   |
//! | 7                | reserved, zero                               |
//! | 8·N              | eigenvalues, descending (f64)                |
//! | 8·N·N            | eigenvectors, column-major (f64)             |
//!
//! Files are named `eig-<16 hex digits of SHA-256 of the key bytes>.bin`;
//! the key bytes are everything from the piece count through the sampling
//! byte and its padding.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::fd::CoefficientSampling;
use crate::error::{Error, Result};
use crate::linalg::SymEigen;
use crate::model::PiecewiseWavenumber;

const MAGIC: &[u8; 8] = b"EWAPEIG\0";
const VERSION: u8 = 1;

#[derive(Debug, Clone)]
pub struct DecompositionCache {
    dir: PathBuf,
}

fn key_bytes(pw: &PiecewiseWavenumber, n: usize, sampling: CoefficientSampling) -> Vec<u8> {
    let mut key = Vec::new();
    key.extend_from_slice(&(pw.n_pieces() as u64).to_le_bytes());
    for a in pw.alphas() {
        key.extend_from_slice(&a.to_le_bytes());
    }
    for r in pw.rhos() {
        key.extend_from_slice(&r.to_le_bytes());
    }
    key.extend_from_slice(&(n as u64).to_le_bytes());
    key.push(sampling.code());
    key.extend_from_slice(&[0u8; 7]);
    key
}

fn read_exact<const K: usize>(r: &mut impl Read) -> Result<[u8; K]> {
    let mut buf = [0u8; K];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

impl DecompositionCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, pw: &PiecewiseWavenumber, n: usize, sampling: CoefficientSampling) -> PathBuf {
        let digest = Sha256::digest(key_bytes(pw, n, sampling));
        let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("eig-{hex}.bin"))
    }

    pub fn store(&self, pw: &PiecewiseWavenumber, sampling: CoefficientSampling, eig: &SymEigen) -> Result<PathBuf> {
        let n = eig.dim();
        let path = self.path_for(pw, n, sampling);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            w.write_all(MAGIC)?;
            w.write_all(&[VERSION, 0, 0, 0, 0, 0, 0, 0])?;
            w.write_all(&key_bytes(pw, n, sampling))?;
            for v in eig.values.iter().chain(&eig.vectors) {
                w.write_all(&v.to_le_bytes())?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` when no file exists for the key.
    pub fn load(&self, pw: &PiecewiseWavenumber, n: usize, sampling: CoefficientSampling) -> Result<Option<SymEigen>> {
        let path = self.path_for(pw, n, sampling);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut r = BufReader::new(file);
        if &read_exact::<8>(&mut r)? != MAGIC {
            return Err(Error::Cache(format!("{}: bad magic", path.display())));
        }
        let header = read_exact::<8>(&mut r)?;
        if header[0] != VERSION {
            return Err(Error::Cache(format!(
                "{}: unsupported version {}",
                path.display(),
                header[0]
            )));
        }
        let expected = key_bytes(pw, n, sampling);
        let mut key = vec![0u8; expected.len()];
        r.read_exact(&mut key)?;
        if key != expected {
            return Err(Error::Cache(format!("{}: key mismatch", path.display())));
        }
        if CoefficientSampling::from_code(key[key.len() - 8]).is_none() {
            return Err(Error::Cache(format!("{}: unknown sampling", path.display())));
        }
        let mut read_f64s = |count: usize| -> Result<Vec<f64>> {
            let mut bytes = vec![0u8; 8 * count];
            r.read_exact(&mut bytes)?;
            Ok(bytes
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
                .collect())
        };
        let values = read_f64s(n)?;
        let vectors = read_f64s(n * n)?;
        Ok(Some(SymEigen { values, vectors }))
    }
}
