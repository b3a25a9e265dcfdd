use std::path::{Path, PathBuf};
use std::sync::Arc;

use arc_swap::ArcSwap;
use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::model::{Engine, ModelBundle};

/// The active engine behind an atomic pointer. Readers take one snapshot per
/// request; publishing swaps the pointer and never touches a live engine.
pub struct ModelRegistry {
    active: ArcSwap<Engine>,
    dir: Option<PathBuf>,
    versions: Mutex<Vec<u64>>,
}

fn bundle_path(dir: &Path, version: u64) -> PathBuf {
    dir.join(format!("bundle-v{version:06}.json"))
}

/// Versions stored in `dir`, ascending.
pub fn stored_versions(dir: &Path) -> Result<Vec<u64>> {
    let rd = match std::fs::read_dir(dir) {
        Ok(rd) => rd,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(dir, e)),
    };
    let mut out = Vec::new();
    for ent in rd {
        let name = ent.map_err(|e| Error::io(dir, e))?.file_name();
        let name = name.to_string_lossy();
        if let Some(v) = name
            .strip_prefix("bundle-v")
            .and_then(|s| s.strip_suffix(".json"))
            .and_then(|s| s.parse().ok())
        {
            out.push(v);
        }
    }
    out.sort_unstable();
    Ok(out)
}

impl ModelRegistry {
    /// In-memory only; nothing is persisted.
    pub fn ephemeral(engine: Engine) -> ModelRegistry {
        let v = engine.version();
        ModelRegistry {
            active: ArcSwap::from_pointee(engine),
            dir: None,
            versions: Mutex::new(vec![v]),
        }
    }

    /// Load the newest bundle in `dir`, or seed the directory with `initial`.
    pub fn open(dir: &Path, initial: Option<ModelBundle>) -> Result<ModelRegistry> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut versions = stored_versions(dir)?;
        let bundle = match (versions.last(), initial) {
            (Some(&v), Some(b)) if b.version > v => {
                b.save(&bundle_path(dir, b.version))?;
                versions.push(b.version);
                b
            }
            (Some(&v), _) => ModelBundle::load(&bundle_path(dir, v))?,
            (None, Some(b)) => {
                b.save(&bundle_path(dir, b.version))?;
                versions.push(b.version);
                b
            }
            (None, None) => {
                return Err(Error::Data(format!(
                    "no model bundle in {} and none supplied",
                    dir.display()
                )))
            }
        };
        Ok(ModelRegistry {
            active: ArcSwap::from_pointee(Engine::new(bundle)),
            dir: Some(dir.to_path_buf()),
            versions: Mutex::new(versions),
        })
    }

    pub fn active(&self) -> Arc<Engine> {
        self.active.load_full()
    }

    pub fn versions(&self) -> Vec<u64> {
        self.versions.lock().clone()
    }

    /// Persist (when backed by a directory), then swap. Versions must increase.
    pub fn publish(&self, bundle: ModelBundle) -> Result<u64> {
        let mut versions = self.versions.lock();
        let current = versions.last().copied().unwrap_or(0);
        if bundle.version <= current {
            return Err(Error::InvalidArgument(format!(
                "version {} is not newer than {current}",
                bundle.version
            )));
        }
        if let Some(dir) = &self.dir {
            bundle.save(&bundle_path(dir, bundle.version))?;
        }
        let v = bundle.version;
        self.active.store(Arc::new(Engine::new(bundle)));
        versions.push(v);
        Ok(v)
    }

    /// A retained older bundle, for inspection or rollback by an operator.
    pub fn load_version(&self, version: u64) -> Result<ModelBundle> {
        match &self.dir {
            Some(dir) => ModelBundle::load(&bundle_path(dir, version)),
            None => Err(Error::InvalidArgument(
                "registry has no bundle directory".into(),
            )),
        }
    }
}
