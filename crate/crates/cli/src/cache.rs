//! On-disk cache of eigendecompositions keyed by a content hash of the
//! complex (simplices and weights) and the degree.

use std::fs;
use std::path::{Path, PathBuf};

use lphodge_core::spectral::{eigendecompose, SpectralData, SpectralParts};
use lphodge_core::SimplicialComplex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: String,
    parts: SpectralParts,
}

#[derive(Clone, Debug)]
pub struct SpectralCache {
    dir: Option<PathBuf>,
}

/// Hex SHA-256 of the canonical JSON description followed by the degree.
pub fn cache_key(complex: &SimplicialComplex, degree: usize) -> String {
    let canonical = serde_json::to_string(&complex.to_description()).expect("descriptions always serialize");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    hasher.update(format!("\ndegree={degree}").as_bytes());
    hex::encode(hasher.finalize())
}

impl SpectralCache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        Ok(Self { dir: Some(dir.to_path_buf()) })
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Cached spectral data when present and valid for this Laplacian,
    /// otherwise a fresh eigendecomposition that is then stored. Unreadable or
    /// stale entries are overwritten.
    pub fn spectral(&self, complex: &SimplicialComplex, degree: usize) -> Result<(SpectralData, CacheStatus), CliError> {
        let lap = complex.hodge_laplacian(degree).map_err(|e| CliError::Input(e.to_string()))?;
        let weights = complex.weights(degree);
        let Some(dir) = &self.dir else {
            return Ok((eigendecompose(&lap, weights)?, CacheStatus::Disabled));
        };
        let key = cache_key(complex, degree);
        let path = dir.join(format!("{key}.json"));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(entry) = serde_json::from_str::<CacheEntry>(&text) {
                if entry.key == key && entry.parts.degree == degree {
                    if let Ok(data) = SpectralData::from_parts(&lap, weights, &entry.parts) {
                        return Ok((data, CacheStatus::Hit));
                    }
                }
            }
        }
        let data = eigendecompose(&lap, weights)?;
        let entry = CacheEntry { key, parts: data.to_parts() };
        let text = serde_json::to_string(&entry).expect("spectral parts always serialize");
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|source| CliError::Io { path: path.clone(), source })?;
        Ok((data, CacheStatus::Miss))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lphodge_core::shapes;

    #[test]
    fn keys_separate_degree_and_weights() {
        let k = shapes::cycle(4);
        assert_ne!(cache_key(&k, 0), cache_key(&k, 1));
        assert_eq!(cache_key(&k, 1), cache_key(&shapes::cycle(4), 1));
        let mut desc = k.to_description();
        desc.weights.get_mut(&1).unwrap()[0] = 2.0;
        assert_ne!(cache_key(&desc.build().unwrap(), 1), cache_key(&k, 1));
    }

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SpectralCache::new(dir.path()).unwrap();
        let k = shapes::random_two_complex(3);
        let (fresh, s1) = cache.spectral(&k, 1).unwrap();
        let (cached, s2) = cache.spectral(&k, 1).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Miss, CacheStatus::Hit));
        assert_eq!(fresh.eigenvalues(), cached.eigenvalues());
        assert_eq!(fresh.eigencochains(), cached.eigencochains());

        let path = cache.path_for(&cache_key(&k, 1)).unwrap();
        fs::write(&path, "{ not json").unwrap();
        let (_, s3) = cache.spectral(&k, 1).unwrap();
        assert_eq!(s3, CacheStatus::Miss);
    }
}
