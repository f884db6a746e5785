//! Content-hashed JSON artifacts for eigensymbols, lifts and μ.
//!
//! The hash is SHA-256 over the compact JSON of the body, so identical
//! inputs give byte-identical files.

use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::coeffs::MomentDistribution;
use crate::lfun::{RayClassDistribution, RepTable};
use crate::lift::LiftReport;
use crate::padic::{Ctx, ElementRecord, PAdicElement};
use crate::symbols::{EigenSpec, SymbolRecord};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact<T> {
    pub schema: u32,
    pub kind: String,
    pub content_hash: String,
    pub body: T,
}

pub fn content_hash<T: Serialize>(body: &T) -> Result<String> {
    let bytes = serde_json::to_vec(body).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl<T: Serialize + DeserializeOwned> Artifact<T> {
    pub fn new(kind: &str, body: T) -> Result<Self> {
        Ok(Artifact { schema: SCHEMA, kind: kind.into(), content_hash: content_hash(&body)?, body })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
        }
        std::fs::write(path, self.to_json()?).map_err(|e| Error::Io(e.to_string()))
    }

    /// Reads an artifact and checks its kind, schema and hash.
    pub fn read(path: &Path, kind: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let a: Self = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if a.kind != kind || a.schema != SCHEMA {
            return Err(Error::Parse(format!("{}: expected {kind} schema {SCHEMA}, found {} schema {}", path.display(), a.kind, a.schema)));
        }
        if content_hash(&a.body)? != a.content_hash {
            return Err(Error::Parse(format!("{}: content hash mismatch", path.display())));
        }
        Ok(a)
    }
}

/// A classical eigensymbol with its eigen-data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenBody {
    pub field: String,
    pub level: u64,
    pub k: i64,
    pub v: i64,
    pub p: u64,
    pub precision: i64,
    pub eigen: EigenSpec,
    pub lambda: ElementRecord,
    /// det(1 - U_p X) on the cut-out piece, rationals as strings.
    pub charpoly: Vec<String>,
    pub symbol: SymbolRecord,
}

/// An overconvergent lift and how it was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftBody {
    pub field: String,
    pub level: u64,
    pub k: i64,
    pub v: i64,
    pub p: u64,
    pub precision: i64,
    pub moments: usize,
    pub uniformizer: String,
    pub seed: Option<u64>,
    pub lambda: ElementRecord,
    /// Hash of the eigensymbol artifact this lift came from.
    pub source_hash: String,
    pub report: LiftReport,
    pub symbol: SymbolRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuBody {
    pub context: String,
    pub k: i64,
    pub v: i64,
    pub p: u64,
    pub n: u32,
    pub modulus: String,
    pub reps: Vec<String>,
    pub reps_hash: String,
    pub lambda: ElementRecord,
    pub lambda_f_inv: ElementRecord,
    /// Moments of Ev^{a_y}, one row per class.
    pub classes: Vec<Vec<ElementRecord>>,
    pub lift_hash: String,
}

impl MuBody {
    pub fn from_mu(mu: &RayClassDistribution, lift_hash: &str) -> Result<Self> {
        let reps: Vec<String> = mu.reps.reps.iter().map(|a| a.to_string()).collect();
        Ok(MuBody {
            context: mu.lambda.ctx().id().to_string(),
            k: mu.k,
            v: mu.v,
            p: mu.reps.p,
            n: mu.reps.n,
            modulus: mu.reps.modulus().to_string(),
            reps_hash: content_hash(&reps)?,
            reps,
            lambda: mu.lambda.to_record(),
            lambda_f_inv: mu.lambda_f_inv.to_record(),
            classes: mu.evals.iter().map(|d| d.moments.iter().map(|x| x.to_record()).collect()).collect(),
            lift_hash: lift_hash.into(),
        })
    }

    pub fn to_mu(&self, ctx: &Ctx) -> Result<RayClassDistribution> {
        let reps = self.reps.iter().map(|a| a.parse::<i128>().map_err(|e| Error::Parse(e.to_string()))).collect::<Result<Vec<_>>>()?;
        if content_hash(&self.reps)? != self.reps_hash {
            return Err(Error::Parse("representative table hash mismatch".into()));
        }
        let evals = self
            .classes
            .iter()
            .map(|row| {
                let m = row.iter().map(|r| PAdicElement::from_record(ctx, r)).collect::<Result<Vec<_>>>()?;
                MomentDistribution::from_moments(ctx, &[self.k], &[self.v], m.len(), m)
            })
            .collect::<Result<_>>()?;
        Ok(RayClassDistribution {
            reps: RepTable { p: self.p, n: self.n, reps },
            k: self.k,
            v: self.v,
            lambda: PAdicElement::from_record(ctx, &self.lambda)?,
            lambda_f_inv: PAdicElement::from_record(ctx, &self.lambda_f_inv)?,
            evals,
        })
    }
}

/// One line of an evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalLine {
    pub character: String,
    pub value: String,
    pub record: ElementRecord,
    pub classical: Option<String>,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub mu_hash: String,
    pub lines: Vec<EvalLine>,
}
