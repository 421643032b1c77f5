//! Weight-graded bookkeeping for the cohomology of the strata of the
//! toroidal compactifications of `A4`: spectral sequences whose terms are
//! sums of Tate twists, local systems and opaque slots, with symbolic
//! multiplicities in `eps`, `r` and `e(A4)`.

pub mod assemble;
pub mod class;
pub mod constants;
pub mod final_assembly;
pub mod local;
pub mod page;

use std::collections::BTreeMap;

use thiserror::Error;
pub use torus_coh::{duality, Coeff, Symbol, TatePoly};

pub use assemble::{
    assemble_beta1, assemble_beta2, assemble_beta3, assemble_beta4_perf, assemble_beta4_voronoi, assemble_e_divisor,
    assemble_jacobian, pure_row, remove_point, Assembly, Delta, DELTAS,
};
pub use class::{betti_line, compat, parse_coeff, Cell, Class, Compat, GradedEntry, Kind, Row, Tag};
pub use constants::{Constant, ConstantStore, ConstantValue, ManifestEntry};
pub use final_assembly::{assemble_final, FinalOptions, FinalReport, Kill, Strata, PURITY_RANGE};
pub use page::{Declared, PageRun, Provenance, RankRecord, SpecPage, Terms};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LedgerError {
    #[error("{page}: negative multiplicity on E_{r}^({p},{q})")]
    NegativeMultiplicity { page: String, r: usize, p: i64, q: i64 },
    #[error("{page}: d_{r} from ({p},{q}) has no known rank on {class}")]
    Undetermined { page: String, r: usize, p: i64, q: i64, class: String },
    #[error("{page}: declared rank {rank} of d_{r} from ({p},{q}) exceeds source {available} or target {target}")]
    RankTooLarge { page: String, r: usize, p: i64, q: i64, rank: u64, available: String, target: String },
    #[error("{page}: declared d_{r} from ({p},{q}) on {class} joins no terms")]
    UnusedDeclaration { page: String, r: usize, p: i64, q: i64, class: String },
    #[error("{page}: Euler characteristic changed")]
    Euler { page: String },
    #[error("purity: {0}")]
    Purity(String),
    #[error("opaque slot: {0}")]
    Opaque(String),
    #[error("constant: {0}")]
    Constant(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("upstream: {0}")]
    Upstream(String),
}

/// Every reproduced table, computed once.
#[derive(Clone, Debug)]
pub struct Ledger {
    pub beta4_perf: Assembly,
    pub e_divisor: Assembly,
    pub beta4: Assembly,
    pub beta3: Assembly,
    pub beta2: Assembly,
    pub beta1: Assembly,
    pub jacobian: Assembly,
}

impl Ledger {
    pub fn build(store: &ConstantStore) -> Result<Self, LedgerError> {
        let beta4_perf = assemble_beta4_perf()?;
        let e_divisor = assemble_e_divisor()?;
        let beta4 = assemble_beta4_voronoi(&beta4_perf, &e_divisor)?;
        Ok(Ledger {
            beta3: assemble_beta3(store)?,
            beta2: assemble_beta2(store)?,
            beta1: assemble_beta1(store)?,
            jacobian: assemble_jacobian(store)?,
            beta4_perf,
            e_divisor,
            beta4,
        })
    }

    pub fn strata(&self) -> Strata {
        Strata::from_assemblies(&self.beta4, &self.beta3, &self.beta2, &self.beta1, &self.jacobian)
    }

    pub fn assemble_final(&self, store: &ConstantStore, opts: FinalOptions) -> Result<FinalReport, LedgerError> {
        assemble_final(store, &self.strata(), &self.beta4_perf.row, opts)
    }

    pub fn all(&self) -> [&Assembly; 7] {
        [&self.beta4_perf, &self.e_divisor, &self.beta4, &self.beta3, &self.beta2, &self.beta1, &self.jacobian]
    }
}

/// `b_k = b_{2n-k}` for all `k`.
pub fn is_poincare_symmetric(b: &BTreeMap<i64, Coeff>, n: i64) -> bool {
    b.iter().all(|(k, v)| b.get(&(2 * n - k)).copied().unwrap_or_default() == *v)
}
