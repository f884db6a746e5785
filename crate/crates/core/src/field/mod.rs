//! Declarative number-field data loaded from versioned TOML descriptions.

mod local;
mod real;

pub use local::{embed_global, uniformizer_power, uniformizer_scalar, LocalPrime, OFpElement};

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::ContextSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Element of F in the integral basis.
pub type FieldElem = Vec<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub label: String,
    pub kind: EmbeddingKind,
    pub conj: String,
    /// Approximate complex value of the generator θ under this embedding.
    pub approx: [f64; 2],
    /// Isolating interval for θ (real embeddings), as rational strings.
    #[serde(default)]
    pub interval: Option<[String; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimeSpec {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub context: ContextSpec,
    /// Labels of the embeddings σ ∼ 𝔭.
    pub embeddings: Vec<String>,
    /// Per embedding in the fiber: raw context coordinates approximating
    /// the image of θ.
    pub seeds: Vec<Vec<i64>>,
}

/// On-disk description of a number field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    pub schema_version: u32,
    pub name: String,
    pub degree: usize,
    pub signature: [usize; 2],
    /// Minimal polynomial of θ, constant term first; the integral basis is
    /// 1, θ, ..., θ^(d-1).
    pub minpoly: Vec<i64>,
    /// mult[i][j] = coordinates of b_i b_j.
    pub mult: Vec<Vec<Vec<i64>>>,
    pub discriminant: i64,
    pub different_generator: Vec<i64>,
    pub unit_generators: Vec<Vec<i64>>,
    pub positive_unit_generators: Vec<Vec<i64>>,
    pub torsion_order: u32,
    pub narrow_class_number: u32,
    pub ideal_representatives: Vec<Vec<i64>>,
    pub embeddings: Vec<EmbeddingSpec>,
    #[serde(default)]
    pub primes: Vec<PrimeSpec>,
}

/// Validated number-field data.
#[derive(Debug, Clone)]
pub struct NumberFieldData {
    pub file: FieldFile,
    pub label_index: HashMap<String, usize>,
    pub conj: Vec<usize>,
    pub intervals: Vec<Option<(BigRational, BigRational)>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidField(msg.into())
}

fn to128(v: &[i64]) -> FieldElem {
    v.iter().map(|&x| x as i128).collect()
}

impl NumberFieldData {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let file: FieldFile = toml::from_str(s).map_err(|e| invalid(format!("parse: {e}")))?;
        Self::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&s)
    }

    /// One of the shipped fields by short name: Q, Qi, Qsqrtm11, Qsqrt2, Qcbrt2.
    pub fn builtin(name: &str) -> Result<Self> {
        let s = match name {
            "Q" => include_str!("../../data/fields/Q.toml"),
            "Qi" => include_str!("../../data/fields/Qi.toml"),
            "Qsqrtm11" => include_str!("../../data/fields/Qsqrtm11.toml"),
            "Qsqrt2" => include_str!("../../data/fields/Qsqrt2.toml"),
            "Qcbrt2" => include_str!("../../data/fields/Qcbrt2.toml"),
            _ => return Err(invalid(format!("no shipped field named {name}"))),
        };
        Self::from_toml_str(s)
    }

    pub fn from_file(file: FieldFile) -> Result<Self> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(invalid(format!("schema version {} unsupported", file.schema_version)));
        }
        let d = file.degree;
        let [r1, r2] = file.signature;
        if d == 0 || r1 + 2 * r2 != d {
            return Err(invalid("r1 + 2 r2 must equal the degree"));
        }
        if file.minpoly.len() != d + 1 || file.minpoly[d] != 1 {
            return Err(invalid("minpoly must be monic of the field degree"));
        }
        validate_mult(&file)?;
        let mut label_index = HashMap::new();
        for (i, e) in file.embeddings.iter().enumerate() {
            if label_index.insert(e.label.clone(), i).is_some() {
                return Err(invalid(format!("duplicate embedding label {}", e.label)));
            }
        }
        if file.embeddings.len() != d {
            return Err(invalid("need exactly d embedding labels"));
        }
        let mut conj = Vec::with_capacity(d);
        let (mut nr, mut nc) = (0, 0);
        for e in &file.embeddings {
            let c = *label_index.get(&e.conj).ok_or_else(|| invalid(format!("unknown conj label {}", e.conj)))?;
            conj.push(c);
        }
        for (i, e) in file.embeddings.iter().enumerate() {
            if conj[conj[i]] != i {
                return Err(invalid("conjugation is not an involution"));
            }
            match e.kind {
                EmbeddingKind::Real => {
                    nr += 1;
                    if conj[i] != i {
                        return Err(invalid("conjugation must fix real embeddings"));
                    }
                }
                EmbeddingKind::Complex => {
                    nc += 1;
                    let o = &file.embeddings[conj[i]];
                    if conj[i] == i || o.kind != EmbeddingKind::Complex {
                        return Err(invalid("conjugation must swap complex embeddings"));
                    }
                    if (o.approx[0] - e.approx[0]).abs() > 1e-6 || (o.approx[1] + e.approx[1]).abs() > 1e-6 {
                        return Err(invalid("conjugate embeddings must have conjugate values"));
                    }
                }
            }
            let v = real::eval_complex(&file.minpoly, e.approx);
            if v.0.hypot(v.1) > 1e-6 * (1.0 + e.approx[0].hypot(e.approx[1])).powi(d as i32) {
                return Err(invalid(format!("embedding {} does not approximate a root", e.label)));
            }
        }
        if nr != r1 || nc != 2 * r2 {
            return Err(invalid("embedding kinds disagree with the signature"));
        }
        let mut intervals = Vec::with_capacity(d);
        for e in &file.embeddings {
            intervals.push(match (&e.kind, &e.interval) {
                (EmbeddingKind::Real, Some(iv)) => Some(real::parse_interval(&file.minpoly, iv)?),
                (EmbeddingKind::Real, None) if d == 1 => None,
                (EmbeddingKind::Real, None) => return Err(invalid("real embedding needs an isolating interval")),
                _ => None,
            });
        }
        let data = NumberFieldData { file, label_index, conj, intervals };
        data.validate_arith()?;
        for ps in &data.file.primes {
            data.validate_prime(ps)?;
        }
        Ok(data)
    }

    fn validate_arith(&self) -> Result<()> {
        let f = &self.file;
        let dg = to128(&f.different_generator);
        if self.norm(&dg)?.abs() != BigInt::from(f.discriminant.abs()) {
            return Err(invalid("norm of the different generator must equal |D|"));
        }
        for u in f.unit_generators.iter().chain(&f.positive_unit_generators) {
            if self.norm(&to128(u))?.abs() != BigInt::from(1) {
                return Err(invalid(format!("{u:?} is not a unit")));
            }
        }
        for u in &f.positive_unit_generators {
            if !self.is_totally_positive(&to128(u))? {
                return Err(invalid(format!("{u:?} is not totally positive")));
            }
        }
        if f.ideal_representatives.len() != f.narrow_class_number as usize {
            return Err(invalid("need one ideal representative per narrow class"));
        }
        Ok(())
    }

    fn validate_prime(&self, ps: &PrimeSpec) -> Result<()> {
        if ps.embeddings.len() != (ps.e * ps.f) as usize || ps.seeds.len() != ps.embeddings.len() {
            return Err(invalid(format!("fiber over p = {} has the wrong size", ps.p)));
        }
        let mut seen = vec![false; self.degree()];
        for ps2 in self.file.primes.iter().filter(|q| q.p == ps.p) {
            for l in &ps2.embeddings {
                let i = *self.label_index.get(l).ok_or_else(|| invalid(format!("unknown label {l}")))?;
                if seen[i] {
                    return Err(invalid(format!("embedding {l} lies over two primes")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid(format!("fibers over {} do not partition the embeddings", ps.p)));
        }
        LocalPrime::build(self, ps, ps.context.precision).map(|_| ())
    }

    pub fn degree(&self) -> usize {
        self.file.degree
    }
    pub fn name(&self) -> &str {
        &self.file.name
    }
    pub fn r1(&self) -> usize {
        self.file.signature[0]
    }
    pub fn r2(&self) -> usize {
        self.file.signature[1]
    }
    pub fn is_totally_real(&self) -> bool {
        self.r2() == 0
    }
    pub fn is_imaginary_quadratic(&self) -> bool {
        self.degree() == 2 && self.r2() == 1
    }
    pub fn embedding_kind(&self, i: usize) -> EmbeddingKind {
        self.file.embeddings[i].kind
    }
    pub fn unit_generators(&self) -> Vec<FieldElem> {
        self.file.unit_generators.iter().map(|u| to128(u)).collect()
    }
    pub fn positive_unit_generators(&self) -> Vec<FieldElem> {
        self.file.positive_unit_generators.iter().map(|u| to128(u)).collect()
    }
    pub fn different_generator(&self) -> FieldElem {
        to128(&self.file.different_generator)
    }

    pub fn one(&self) -> FieldElem {
        let mut v = vec![0; self.degree()];
        v[0] = 1;
        v
    }

    pub fn from_int(&self, n: i128) -> FieldElem {
        let mut v = vec![0; self.degree()];
        v[0] = n;
        v
    }

    pub fn add(&self, a: &[i128], b: &[i128]) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[i128], b: &[i128]) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn mul(&self, a: &[i128], b: &[i128]) -> FieldElem {
        let d = self.degree();
        let mut r = vec![0i128; d];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                if b[j] == 0 {
                    continue;
                }
                for (k, &c) in self.file.mult[i][j].iter().enumerate() {
                    r[k] += a[i] * b[j] * c as i128;
                }
            }
        }
        r
    }

    pub fn pow(&self, a: &[i128], k: u32) -> FieldElem {
        let mut r = self.one();
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    /// Matrix of multiplication by `a` on the integral basis (columns are
    /// images of basis vectors).
    pub fn mult_matrix(&self, a: &[i128]) -> Vec<Vec<BigInt>> {
        let d = self.degree();
        let mut m = vec![vec![BigInt::from(0); d]; d];
        for j in 0..d {
            let mut e = vec![0i128; d];
            e[j] = 1;
            let col = self.mul(a, &e);
            for i in 0..d {
                m[i][j] = BigInt::from(col[i]);
            }
        }
        m
    }

    /// N_{F/Q}(a) as an exact integer.
    pub fn norm(&self, a: &[i128]) -> Result<BigInt> {
        Ok(crate::qlinalg::det_int(&self.mult_matrix(a)))
    }

    /// Tr_{F/Q}(a).
    pub fn trace(&self, a: &[i128]) -> BigInt {
        let m = self.mult_matrix(a);
        (0..self.degree()).map(|i| m[i][i].clone()).sum()
    }

    /// Every real embedding of `x` is positive; decided exactly.
    /// Exact sign of σ(x) at every embedding (0 at complex places).
    pub fn real_signs(&self, x: &[i128]) -> Result<Vec<i32>> {
        if x.iter().all(|&c| c == 0) {
            return Err(Error::Precondition("zero has no sign".into()));
        }
        self.file
            .embeddings
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if e.kind != EmbeddingKind::Real {
                    return Ok(0);
                }
                match &self.intervals[i] {
                    None => Ok(x[0].signum() as i32),
                    Some(iv) => real::sign_at_root(&self.file.minpoly, iv.clone(), x),
                }
            })
            .collect()
    }

    pub fn is_totally_positive(&self, x: &[i128]) -> Result<bool> {
        if x.iter().all(|&c| c == 0) {
            return Err(Error::Precondition("zero has no sign".into()));
        }
        for (i, e) in self.file.embeddings.iter().enumerate() {
            if e.kind != EmbeddingKind::Real {
                continue;
            }
            let s = match &self.intervals[i] {
                None => x[0].signum() as i32,
                Some(iv) => real::sign_at_root(&self.file.minpoly, iv.clone(), x)?,
            };
            if s <= 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Approximate complex image of `x` under embedding `i`.
    pub fn approx_embedding(&self, x: &[i128], i: usize) -> (f64, f64) {
        let t = self.file.embeddings[i].approx;
        let coeffs: Vec<f64> = x.iter().map(|&c| c as f64).collect();
        real::eval_complex_f(&coeffs, t)
    }

    /// Local data at p, with contexts at the requested precision. Degree-one
    /// fields need no declared primes.
    pub fn local_primes(&self, p: u64, precision: i64) -> Result<Vec<LocalPrime>> {
        if self.degree() == 1 {
            return Ok(vec![LocalPrime::rational(p, precision)?]);
        }
        let specs: Vec<&PrimeSpec> = self.file.primes.iter().filter(|ps| ps.p == p).collect();
        if specs.is_empty() {
            return Err(invalid(format!("no local data declared for p = {p}")));
        }
        specs.into_iter().map(|ps| LocalPrime::build(self, ps, precision)).collect()
    }
}

fn validate_mult(file: &FieldFile) -> Result<()> {
    let d = file.degree;
    let m = &file.mult;
    if m.len() != d || m.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
        return Err(invalid("multiplication table must be d x d x d"));
    }
    for j in 0..d {
        let mut e = vec![0; d];
        e[j] = 1;
        if m[0][j] != e {
            return Err(invalid("b_0 must be the identity"));
        }
        for i in 0..d {
            if m[i][j] != m[j][i] {
                return Err(invalid("multiplication table is not commutative"));
            }
        }
    }
    // power basis: θ · θ^i = θ^(i+1), with θ^d reduced by the minimal polynomial
    if d > 1 {
        for i in 0..d {
            let mut want = vec![0; d];
            if i + 1 < d {
                want[i + 1] = 1;
            } else {
                for k in 0..d {
                    want[k] = -file.minpoly[k];
                }
            }
            if m[1][i] != want {
                return Err(invalid("multiplication table disagrees with the power basis"));
            }
        }
    }
    // associativity on basis triples
    let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut r = vec![0i64; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    r[k] += a[i] * b[j] * m[i][j][k];
                }
            }
        }
        r
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut ek = vec![0; d];
                ek[k] = 1;
                let mut ei = vec![0; d];
                ei[i] = 1;
                if mul(&m[i][j], &ek) != mul(&ei, &m[j][k]) {
                    return Err(invalid("multiplication table is not associative"));
                }
            }
        }
    }
    Ok(())
}
