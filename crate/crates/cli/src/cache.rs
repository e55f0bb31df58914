//! On-disk cache of nested-set lists, one JSON file per chamber.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use vpf_core::counting::MnsSource;
use vpf_core::mpns::{mpns_enumerate, GenericVector, Mns};
use vpf_core::root_systems::RootSystemType;
use vpf_core::walls::chamber_signature;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    chamber_signature: String,
    mns: Vec<Mns>,
}

/// The nested sets adapted to a vector depend only on its chamber, so files
/// are keyed by (type, rank, chamber signature).
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: PathBuf) -> Self {
        DiskCache { dir }
    }

    fn path(&self, t: RootSystemType, signature: &str) -> PathBuf {
        let mut hasher = Sha256::new();
        hasher.update(format!("{}{}:{}", t.family.letter(), t.rank, signature).as_bytes());
        let digest: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{digest}.json"))
    }

    fn load(&self, t: RootSystemType, signature: &str) -> Option<Vec<Mns>> {
        let text = std::fs::read_to_string(self.path(t, signature)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        let fresh = file.schema_version == SCHEMA_VERSION
            && file.family == t.family.letter().to_string()
            && file.rank == t.rank
            && file.chamber_signature == signature;
        fresh.then_some(file.mns)
    }

    fn store(&self, t: RootSystemType, signature: &str, mns: &[Mns]) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            schema_version: SCHEMA_VERSION,
            family: t.family.letter().to_string(),
            rank: t.rank,
            chamber_signature: signature.to_string(),
            mns: mns.to_vec(),
        };
        let tmp = self.path(t, signature).with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(&file)?)?;
        std::fs::rename(tmp, self.path(t, signature))
    }
}

impl MnsSource for DiskCache {
    fn mns_list(&self, t: RootSystemType, v: &GenericVector) -> vpf_core::Result<Vec<Mns>> {
        let signature = chamber_signature(t, &v.point)?.key();
        if let Some(hit) = self.load(t, &signature) {
            return Ok(hit);
        }
        let list = mpns_enumerate(t, v)?;
        if let Err(e) = self.store(t, &signature, &list) {
            eprintln!("warning: cannot write cache in {}: {e}", self.dir.display());
        }
        Ok(list)
    }
}
