//! Property suites: each check evaluates an identity on exhaustive or seeded
//! random inputs and tallies passes, failures and rejected samples.

pub mod gen;

mod arith_suite;
mod extension_suite;
mod lattice_suite;
mod muset_suite;
mod symbol_suite;
mod torsor_suite;

pub use arith_suite::*;
pub use extension_suite::*;
pub use lattice_suite::*;
pub use muset_suite::*;
pub use symbol_suite::*;
pub use torsor_suite::*;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{divisors, LocalField};
use crate::error::{Error, Result};
use crate::torsor::DEFAULT_BOUND;

/// Outcome of one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// Samples skipped because a module exceeded the enumeration bound or
    /// the working precision was exhausted.
    pub rejected: u64,
    pub counterexample: Option<Value>,
}

impl PropertyResult {
    pub fn new(name: impl Into<String>) -> Self {
        PropertyResult {
            name: name.into(),
            cases: 0,
            failures: 0,
            rejected: 0,
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one case. Errors count as failures, except exceeding the
    /// enumeration bound or the working precision, which count as rejections.
    pub fn check(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> Value) {
        match outcome {
            Ok(true) => self.cases += 1,
            Ok(false) => {
                self.cases += 1;
                self.fail(describe());
            }
            Err(Error::Bound { .. } | Error::Precision(_)) => self.rejected += 1,
            Err(e) => {
                self.cases += 1;
                let mut ce = describe();
                if let Value::Object(map) = &mut ce {
                    map.insert("error".into(), Value::String(e.to_string()));
                }
                self.fail(ce);
            }
        }
    }

    fn fail(&mut self, ce: Value) {
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(ce);
        }
    }

    /// Combines the tallies of the same property over several parameters.
    pub fn absorb(&mut self, other: PropertyResult) {
        self.cases += other.cases;
        self.failures += other.failures;
        self.rejected += other.rejected;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

/// Parameters shared by all suites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub p: u64,
    pub f: u32,
    /// Restrict to one `n`; all divisors of `q - 1` otherwise.
    pub n: Option<u64>,
    pub seed: u64,
    pub bound: u64,
    /// Evaluated cases per randomized property (per `n` for the extension
    /// properties). Draws rejected by the enumeration bound or precision are
    /// replaced, up to four times the target.
    pub samples: usize,
    /// Valuation range for the symbol sweeps.
    pub vmax: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            p: 7,
            f: 1,
            n: None,
            seed: 42,
            bound: DEFAULT_BOUND,
            samples: 200,
            vmax: 2,
        }
    }
}

impl VerifyConfig {
    pub fn field(&self) -> Result<LocalField> {
        LocalField::new(self.p, self.f)
    }

    /// The values of `n` to run.
    pub fn ns(&self, lf: &LocalField) -> Result<Vec<u64>> {
        match self.n {
            Some(n) => {
                crate::arith::mu::check_n(&lf.residue, n)?;
                Ok(vec![n])
            }
            None => Ok(divisors(lf.q() - 1)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Zolotarev,
    Muset,
    Torsor,
    Lattice,
    Cocycle,
    Theorem,
    Corollary,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Zolotarev,
        Suite::Muset,
        Suite::Torsor,
        Suite::Lattice,
        Suite::Cocycle,
        Suite::Theorem,
        Suite::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Zolotarev => "zolotarev",
            Suite::Muset => "muset",
            Suite::Torsor => "torsor",
            Suite::Lattice => "lattice",
            Suite::Cocycle => "cocycle",
            Suite::Theorem => "theorem",
            Suite::Corollary => "corollary",
            Suite::All => "all",
        }
    }
}

/// Summary of a suite run; contains no timing so identical seeds give
/// identical summaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub p: u64,
    pub f: u32,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let lf = cfg.field()?;
    let properties = match suite {
        Suite::Zolotarev => vec![
            check_zolotarev(&lf),
            check_char_homomorphism(&lf),
            check_embed_dlog(&lf),
            check_transfer(&lf),
            check_norm(&lf, 64),
        ],
        Suite::Muset => vec![
            check_delta_homomorphism(cfg, 6, 20),
            check_conjugation_invariance(cfg, 6, 20),
            check_sign_lemma(cfg, 20),
            check_product_lemma(cfg, 4, 5),
        ],
        Suite::Torsor => vec![
            check_det_paths(&lf, cfg, 3, 50)?,
            check_classical_det(&lf)?,
            check_det_multiplicativity(&lf, cfg)?,
            check_exact_naturality(&lf, cfg)?,
            check_duality_pairing(&lf, cfg)?,
        ],
        Suite::Lattice => vec![
            check_lattice_inclusions(&lf, cfg),
            check_second_isomorphism(&lf, cfg),
            check_commensurability(&lf, cfg),
            check_dim_additivity(&lf, cfg),
            check_rel_dim_antisymmetry(&lf, cfg),
        ],
        Suite::Cocycle => vec![
            check_cocycle_identity(&lf, cfg)?,
            check_symbol_properties(&lf, cfg)?,
            check_trivialization_independence(&lf, cfg)?,
            check_kappa_paths(&lf, cfg)?,
            check_group_law(&lf, cfg)?,
        ],
        Suite::Theorem => vec![check_theorem(&lf, cfg)?, check_steinberg(&lf, cfg, 500)?],
        Suite::Corollary => vec![check_three_way(&lf, cfg)?, check_symbol_laws(&lf, cfg)?],
        Suite::All => {
            let mut props = Vec::new();
            for s in Suite::EACH {
                props.extend(run_suite(s, cfg)?.properties);
            }
            props
        }
    };
    let passed = properties.iter().all(PropertyResult::passed);
    Ok(SuiteReport {
        suite: suite.name().into(),
        p: cfg.p,
        f: cfg.f,
        seed: cfg.seed,
        properties,
        passed,
    })
}

/// A seed derived from the configured one and a property tag, so properties
/// draw independent streams.
pub(crate) fn sub_seed(cfg: &VerifyConfig, tag: &str) -> u64 {
    tag.bytes()
        .fold(cfg.seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
        })
}
