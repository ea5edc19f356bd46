//! Library snapshots: readers take an `Arc` of the current library, writers
//! build a modified copy, persist it and swap it in.

use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use squiggle_core::store::save_library;
use squiggle_core::{Config, Dimensionality, Error, Library, RawPath, Template};

pub struct AppState {
    library: RwLock<Arc<Library>>,
    writer: Mutex<()>,
    cfg: Config,
    persist: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateSummary {
    pub name: String,
    pub mirror_allowed: bool,
    pub orientation_gate: bool,
    pub dimensionality: Dimensionality,
    pub milestones: Vec<[f64; 2]>,
}

impl From<&Template> for TemplateSummary {
    fn from(t: &Template) -> Self {
        TemplateSummary {
            name: t.name.clone(),
            mirror_allowed: t.mirror_allowed,
            orientation_gate: t.orientation_gate,
            dimensionality: t.dimensionality(),
            milestones: t.milestones.points().iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

impl AppState {
    /// `persist` is rewritten after every successful change.
    pub fn new(library: Library, cfg: Config, persist: Option<PathBuf>) -> Result<Self, Error> {
        library.check_config(&cfg)?;
        Ok(AppState {
            library: RwLock::new(Arc::new(library)),
            writer: Mutex::new(()),
            cfg,
            persist,
        })
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn snapshot(&self) -> Arc<Library> {
        self.library.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    pub fn list(&self) -> Vec<TemplateSummary> {
        self.snapshot().templates().iter().map(TemplateSummary::from).collect()
    }

    fn update<R>(&self, f: impl FnOnce(&mut Library) -> Result<R, Error>) -> Result<R, Error> {
        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let mut next = (*self.snapshot()).clone();
        let out = f(&mut next)?;
        if let Some(path) = &self.persist {
            save_library(&next, path)?;
        }
        *self.library.write().unwrap_or_else(|e| e.into_inner()) = Arc::new(next);
        Ok(out)
    }

    pub fn add(&self, name: &str, raw: &RawPath, mirror_allowed: bool) -> Result<TemplateSummary, Error> {
        let cfg = self.cfg;
        self.update(|lib| lib.add_template(name, raw, mirror_allowed, &cfg).map(TemplateSummary::from))
    }

    pub fn remove(&self, name: &str) -> Result<(), Error> {
        self.update(|lib| lib.remove(name).map(drop))
    }

    pub fn set_mirror(&self, name: &str, allowed: bool) -> Result<TemplateSummary, Error> {
        self.update(|lib| {
            lib.set_mirror_allowed(name, allowed)?;
            Ok(TemplateSummary::from(lib.get(name).expect("just updated")))
        })
    }
}
