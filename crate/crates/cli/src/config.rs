//! Job configuration (TOML, schema 1).

use std::path::{Path, PathBuf};

use padic_lfun::hecke::GeneratorValue;
use padic_lfun::symbols::EigenSpec;
use padic_lfun::{CharacterSpec, Ctx, Error, HeckeCharacter, NumberFieldData, PAdicContext, Result};
use serde::{Deserialize, Serialize};

pub const CONFIG_SCHEMA: u32 = 1;

fn default_field() -> String {
    "Q".into()
}
fn default_out() -> PathBuf {
    PathBuf::from("out")
}
fn default_generator() -> i64 {
    2
}
fn default_sign() -> i8 {
    1
}
fn default_one() -> u32 {
    1
}

/// A Dirichlet-type character of conductor p^conductor sending the
/// generator to ζ_order^exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterConfig {
    pub name: String,
    pub conductor: u32,
    #[serde(default = "default_one")]
    pub order: u32,
    #[serde(default)]
    pub exponent: u32,
    #[serde(default = "default_generator")]
    pub generator: i64,
    #[serde(default = "default_sign")]
    pub sign: i8,
    #[serde(default)]
    pub infinity_type: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub schema: u32,
    /// Built-in field name or path to a field file.
    #[serde(default = "default_field")]
    pub field: String,
    pub level: u64,
    #[serde(default)]
    pub weight: i64,
    #[serde(default)]
    pub v: i64,
    pub p: u64,
    pub precision: i64,
    pub moments: usize,
    /// f = p^modulus.
    #[serde(default = "default_one")]
    pub modulus: u32,
    #[serde(default)]
    pub eigen: EigenSpec,
    #[serde(default)]
    pub characters: Vec<CharacterConfig>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl JobConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let c: JobConfig = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != CONFIG_SCHEMA {
            return Err(Error::Parse(format!("config schema {} (expected {CONFIG_SCHEMA})", self.schema)));
        }
        if self.level % self.p != 0 {
            return Err(Error::Precondition(format!("p = {} must divide the level {}", self.p, self.level)));
        }
        if self.precision <= 0 || self.moments <= self.weight as usize {
            return Err(Error::Precondition("need precision > 0 and moments > weight".into()));
        }
        Ok(())
    }

    /// Applies command-line overrides.
    pub fn with_overrides(mut self, precision: Option<i64>, moments: Option<usize>, out: Option<PathBuf>, seed: Option<u64>) -> Result<Self> {
        if let Some(n) = precision {
            self.precision = n;
        }
        if let Some(m) = moments {
            self.moments = m;
        }
        if let Some(o) = out {
            self.out = o;
        }
        if seed.is_some() {
            self.seed = seed;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn field_data(&self) -> Result<NumberFieldData> {
        let path = Path::new(&self.field);
        if path.exists() {
            NumberFieldData::load(path)
        } else {
            NumberFieldData::builtin(&self.field)
        }
    }

    pub fn ctx(&self) -> Result<Ctx> {
        PAdicContext::qp(self.p, self.precision)
    }

    /// The character with values in Q_p when its order divides p - 1,
    /// otherwise in Q_p(ζ_{p^t}) for the least t that suffices.
    pub fn character(&self, c: &CharacterConfig) -> Result<HeckeCharacter> {
        let q = self.field_data()?;
        let primes = q.local_primes(self.p, self.precision + 2)?;
        let order = c.order.max(1) as u64;
        let pm1 = self.p - 1;
        let l = if pm1 % order == 0 {
            self.ctx()?
        } else {
            let mut t = 1u32;
            while (self.p.pow(t - 1) * pm1) % order != 0 {
                t += 1;
                if t > 4 {
                    return Err(Error::InvalidCharacter(format!("{}: order {order} not realised", c.name)));
                }
            }
            let e = self.p.pow(t - 1) * pm1;
            PAdicContext::cyclotomic(self.p, t, self.precision * e as i64)?
        };
        let generators = if c.conductor == 0 || order == 1 {
            vec![]
        } else {
            vec![GeneratorValue { generator: vec![c.generator], order, exponent: c.exponent as u64 }]
        };
        let spec = CharacterSpec { conductor: vec![c.conductor], infinity_type: vec![c.infinity_type], generators, signs: vec![c.sign] };
        HeckeCharacter::new(&q, &primes, spec, &l)
    }
}
