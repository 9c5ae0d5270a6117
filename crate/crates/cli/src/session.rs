//! One system and the tables computed for it so far.
//!
//! Tables are computed on first use, consulting the cache for the expensive
//! ones (`P`, `P^sigma`, `h`, `h^sigma`). Derived tables are always rebuilt.

use klv_core::coxeter::{CoxeterError, CoxeterGroup, CoxeterSystem, TwistSpec};
use klv_core::kl::{compute_h, compute_kl, ConstantsTable, KlTable};
use klv_core::twisted::{
    compute_hsigma, compute_htilde, compute_psigma, split_constants, split_polys, SigmaTable,
    SplitConstants, SplitPolys,
};

use crate::cache::Cache;
use crate::tablefile::{TableFile, TableKind};
use crate::CliError;

/// Parses a `--twist` value: `identity`, `diagram`, `swap` or a
/// comma-separated 0-based permutation.
pub fn parse_twist(s: &str) -> Result<TwistSpec, String> {
    match s {
        "identity" => Ok(TwistSpec::Identity),
        "diagram" => Ok(TwistSpec::Diagram),
        "swap" => Ok(TwistSpec::Swap),
        _ => s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map(TwistSpec::Explicit)
            .map_err(|_| {
                format!(
                    "twist {s:?} is not identity, diagram, swap or a comma-separated permutation"
                )
            }),
    }
}

pub fn coxeter_error(e: CoxeterError) -> CliError {
    match e {
        CoxeterError::CapExceeded(cap) => CliError::ResourceCap(format!(
            "the group has more than {cap} elements; raise --cap to proceed"
        )),
        other => CliError::Usage(other.to_string()),
    }
}

pub struct Session {
    pub system: CoxeterSystem,
    pub g: CoxeterGroup,
    cache: Option<Cache>,
    kl: Option<KlTable>,
    sigma: Option<SigmaTable>,
    h: Option<ConstantsTable>,
    htilde: Option<ConstantsTable>,
    hsigma: Option<ConstantsTable>,
    split_polys: Option<SplitPolys>,
    split_constants: Option<SplitConstants>,
}

impl Session {
    pub fn open(
        label: &str,
        twist: TwistSpec,
        cap: usize,
        cache: Option<Cache>,
    ) -> Result<Self, CliError> {
        let system = CoxeterSystem::from_label(label, twist).map_err(coxeter_error)?;
        let g = system.enumerate_with_cap(cap).map_err(coxeter_error)?;
        Ok(Session {
            system,
            g,
            cache,
            kl: None,
            sigma: None,
            h: None,
            htilde: None,
            hsigma: None,
            split_polys: None,
            split_constants: None,
        })
    }

    fn cached<T>(&self, kind: TableKind, read: impl Fn(&TableFile) -> Option<T>) -> Option<T> {
        let cache = self.cache.as_ref()?;
        match cache.load(&self.system, kind) {
            Ok(Some(file)) => {
                let table = read(&file);
                if table.is_none() {
                    eprintln!("klv: ignoring unusable cached {} table", kind.name());
                }
                table
            }
            Ok(None) => None,
            Err(e) => {
                eprintln!("klv: ignoring cached {} table: {e}", kind.name());
                None
            }
        }
    }

    fn store(&self, file: TableFile) {
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.store(&self.system, &file) {
                eprintln!("klv: could not write cache: {e}");
            }
        }
    }

    pub fn ensure_kl(&mut self) -> Result<(), CliError> {
        if self.kl.is_some() {
            return Ok(());
        }
        let g = &self.g;
        let kl = match self.cached(TableKind::Kl, |f| f.to_kl(g).ok()) {
            Some(t) => t,
            None => {
                let t = compute_kl(g).map_err(|e| CliError::Failed(e.to_string()))?;
                self.store(TableFile::from_kl(g, &t));
                t
            }
        };
        self.kl = Some(kl);
        Ok(())
    }

    pub fn ensure_sigma(&mut self) -> Result<(), CliError> {
        if self.sigma.is_some() {
            return Ok(());
        }
        let g = &self.g;
        let sigma = match self.cached(TableKind::Psigma, |f| f.to_sigma(g).ok()) {
            Some(t) => t,
            None => {
                let t = compute_psigma(g).map_err(|e| CliError::Failed(e.to_string()))?;
                self.store(TableFile::from_sigma(g, &t));
                t
            }
        };
        self.sigma = Some(sigma);
        Ok(())
    }

    pub fn ensure_h(&mut self) -> Result<(), CliError> {
        if self.h.is_some() {
            return Ok(());
        }
        self.ensure_kl()?;
        let g = &self.g;
        let h = match self.cached(TableKind::H, |f| f.to_constants(g).ok()) {
            Some(t) => t,
            None => {
                let t = compute_h(g, self.kl());
                self.store(TableFile::from_constants(g, &t));
                t
            }
        };
        self.h = Some(h);
        Ok(())
    }

    pub fn ensure_htilde(&mut self) -> Result<(), CliError> {
        if self.htilde.is_none() {
            self.ensure_h()?;
            self.htilde = Some(compute_htilde(&self.g, self.h()));
        }
        Ok(())
    }

    pub fn ensure_hsigma(&mut self) -> Result<(), CliError> {
        if self.hsigma.is_some() {
            return Ok(());
        }
        self.ensure_kl()?;
        self.ensure_sigma()?;
        let g = &self.g;
        let hsigma = match self.cached(TableKind::Hsigma, |f| f.to_constants(g).ok()) {
            Some(t) => t,
            None => {
                let t = compute_hsigma(g, self.sigma(), self.kl());
                self.store(TableFile::from_constants(g, &t));
                t
            }
        };
        self.hsigma = Some(hsigma);
        Ok(())
    }

    pub fn ensure_split_polys(&mut self) -> Result<(), CliError> {
        if self.split_polys.is_none() {
            self.ensure_kl()?;
            self.ensure_sigma()?;
            let split = split_polys(&self.g, self.kl(), self.sigma())
                .map_err(|e| CliError::Failed(e.to_string()))?;
            self.split_polys = Some(split);
        }
        Ok(())
    }

    pub fn ensure_split_constants(&mut self) -> Result<(), CliError> {
        if self.split_constants.is_none() {
            self.ensure_htilde()?;
            self.ensure_hsigma()?;
            let split = split_constants(&self.g, self.htilde(), self.hsigma())
                .map_err(|e| CliError::Failed(e.to_string()))?;
            self.split_constants = Some(split);
        }
        Ok(())
    }

    // The accessors below panic unless the matching `ensure_*` succeeded.

    pub fn kl(&self) -> &KlTable {
        self.kl.as_ref().expect("ensure_kl first")
    }

    pub fn sigma(&self) -> &SigmaTable {
        self.sigma.as_ref().expect("ensure_sigma first")
    }

    pub fn h(&self) -> &ConstantsTable {
        self.h.as_ref().expect("ensure_h first")
    }

    pub fn htilde(&self) -> &ConstantsTable {
        self.htilde.as_ref().expect("ensure_htilde first")
    }

    pub fn hsigma(&self) -> &ConstantsTable {
        self.hsigma.as_ref().expect("ensure_hsigma first")
    }

    pub fn split_polys(&self) -> &SplitPolys {
        self.split_polys.as_ref().expect("ensure_split_polys first")
    }

    pub fn split_constants(&self) -> &SplitConstants {
        self.split_constants
            .as_ref()
            .expect("ensure_split_constants first")
    }

    /// Computes `kind` and packages it for output.
    pub fn table_file(&mut self, kind: TableKind) -> Result<TableFile, CliError> {
        Ok(match kind {
            TableKind::Kl => {
                self.ensure_kl()?;
                TableFile::from_kl(&self.g, self.kl())
            }
            TableKind::Psigma => {
                self.ensure_sigma()?;
                TableFile::from_sigma(&self.g, self.sigma())
            }
            TableKind::SplitPolys => {
                self.ensure_split_polys()?;
                TableFile::from_split_polys(&self.g, self.split_polys())
            }
            TableKind::H => {
                self.ensure_h()?;
                TableFile::from_constants(&self.g, self.h())
            }
            TableKind::Htilde => {
                self.ensure_htilde()?;
                TableFile::from_constants(&self.g, self.htilde())
            }
            TableKind::Hsigma => {
                self.ensure_hsigma()?;
                TableFile::from_constants(&self.g, self.hsigma())
            }
            TableKind::SplitConstants => {
                self.ensure_split_constants()?;
                TableFile::from_split_constants(&self.g, self.split_constants())
            }
        })
    }
}
