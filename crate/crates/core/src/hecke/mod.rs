//! Hecke characters of conductor dividing p^∞, realized p-adically.
//!
//! Conventions: φ_∞(x) = ε_φ(sgn x) ∏_σ σ(x)^{r_σ}, and φ(F^×) = 1 forces
//! φ_f(u) ε_φ(sgn u) w^r(u) = 1 on every unit u.

mod gauss;

pub use gauss::additive_exponent;

use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{EmbeddingKind, FieldElem, LocalPrime, NumberFieldData, OFpElement};
use crate::padic::{root_of_unity, Ctx, PAdicElement};
use crate::ray_class::{Residue, ResidueRing};

/// r ∈ Z[Σ], indexed like the field's embedding list.
pub type InfinityType = Vec<i64>;

/// φ_f(g) = ζ_order^exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorValue {
    pub generator: Vec<i64>,
    pub order: u64,
    pub exponent: u64,
}

/// Character description file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSpec {
    /// Exponent of each prime above p, in the order of `local_primes`.
    pub conductor: Vec<u32>,
    pub infinity_type: InfinityType,
    #[serde(default)]
    pub generators: Vec<GeneratorValue>,
    /// ε_φ(-1 at σ) for the real embeddings, in label order; missing = +1.
    #[serde(default)]
    pub signs: Vec<i8>,
}

impl CharacterSpec {
    pub fn trivial(field: &NumberFieldData, n_primes: usize) -> Self {
        CharacterSpec {
            conductor: vec![0; n_primes],
            infinity_type: vec![0; field.degree()],
            generators: vec![],
            signs: vec![],
        }
    }
}

#[derive(Debug, Clone)]
pub struct HeckeCharacter {
    pub field: NumberFieldData,
    pub primes: Vec<LocalPrime>,
    pub ring: ResidueRing,
    pub spec: CharacterSpec,
    /// Value context.
    pub l: Ctx,
    table: HashMap<Residue, PAdicElement>,
}

impl HeckeCharacter {
    /// Build φ_f on (O_F/f)^× from generator values and check that φ is
    /// trivial on the global units.
    pub fn new(field: &NumberFieldData, primes: &[LocalPrime], spec: CharacterSpec, l: &Ctx) -> Result<Self> {
        if spec.infinity_type.len() != field.degree() {
            return Err(Error::InvalidCharacter("infinity type has the wrong length".into()));
        }
        if spec.signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidCharacter("signs must be ±1".into()));
        }
        let ring = ResidueRing::new(primes, &spec.conductor)?;
        let mut gens = Vec::new();
        for g in &spec.generators {
            if g.order == 0 {
                return Err(Error::InvalidCharacter("generator value of order 0".into()));
            }
            let x: FieldElem = g.generator.iter().map(|&c| c as i128).collect();
            let res = ring.of_global(&x)?;
            if !ring.is_unit(&res) {
                return Err(Error::InvalidCharacter(format!("{:?} is not prime to f", g.generator)));
            }
            let v = root_of_unity(l, g.order)?.pow(g.exponent as i64)?;
            gens.push((res, v));
        }
        // closure of the generators inside (O/f)^×
        let mut table: HashMap<Residue, PAdicElement> = HashMap::new();
        let one = ring.one();
        table.insert(one.clone(), PAdicElement::one(l));
        let mut queue = VecDeque::from([one]);
        while let Some(x) = queue.pop_front() {
            let vx = table[&x].clone();
            for (g, vg) in &gens {
                let y = ring.mul(&x, g);
                let vy = vx.mul(vg)?;
                match table.get(&y) {
                    Some(old) if !old.eq_at_prec(&vy) => {
                        return Err(Error::InvalidCharacter("generator values violate a relation".into()))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(y.clone(), vy);
                        queue.push_back(y);
                    }
                }
            }
        }
        if table.len() != ring.units().len() {
            return Err(Error::InvalidCharacter("generators do not generate (O/f)^×".into()));
        }
        let chi = HeckeCharacter { field: field.clone(), primes: primes.to_vec(), ring, spec, l: l.clone(), table };
        chi.check_units()?;
        Ok(chi)
    }

    pub fn infinity_type(&self) -> &[i64] {
        &self.spec.infinity_type
    }

    /// ε_φ evaluated on a sign vector (one entry per embedding, 0 at
    /// complex places).
    pub fn epsilon(&self, signs: &[i32]) -> i64 {
        let mut real = 0;
        let mut out = 1i64;
        for (i, &s) in signs.iter().enumerate() {
            if self.field.embedding_kind(i) != EmbeddingKind::Real {
                continue;
            }
            if s < 0 {
                out *= *self.spec.signs.get(real).unwrap_or(&1) as i64;
            }
            real += 1;
        }
        out
    }

    /// φ_f on a unit residue modulo f.
    pub fn finite_value(&self, a: &Residue) -> Result<PAdicElement> {
        let a = self.ring.reduce_to(a, &self.ring.exps);
        self.table
            .get(&a)
            .cloned()
            .ok_or_else(|| Error::InvalidCharacter("argument is not a unit modulo f".into()))
    }

    pub fn finite_value_global(&self, x: &FieldElem) -> Result<PAdicElement> {
        self.finite_value(&self.ring.of_global(x)?)
    }

    /// ι_p(σ(x)) in the value context.
    pub fn sigma_p(&self, x: &FieldElem, sigma: usize) -> Result<PAdicElement> {
        for l in &self.primes {
            if let Some(k) = l.embeddings.iter().position(|&s| s == sigma) {
                let y = l.image_under(x, k)?;
                return self.to_l(y);
            }
        }
        Err(Error::Precondition(format!("embedding {sigma} lies over no prime")))
    }

    fn to_l(&self, y: PAdicElement) -> Result<PAdicElement> {
        if y.ctx().spec == self.l.spec {
            Ok(y)
        } else if y.ctx().degree() == 1 {
            y.embed(&self.l)
        } else {
            Err(Error::Unsupported(format!("local field {} does not embed in {}", y.ctx().id(), self.l.id())))
        }
    }

    /// w^r(x) = ∏_σ ι_p(σ(x))^{r_σ} for a nonzero global element.
    pub fn w_p(&self, x: &FieldElem) -> Result<PAdicElement> {
        let mut acc = PAdicElement::one(&self.l);
        for (sigma, &r) in self.spec.infinity_type.iter().enumerate() {
            if r != 0 {
                acc = acc.mul(&self.sigma_p(x, sigma)?.pow(r)?)?;
            }
        }
        Ok(acc)
    }

    /// φ_∞(x) for a global element, read in L.
    pub fn phi_infinity(&self, x: &FieldElem) -> Result<PAdicElement> {
        let eps = self.epsilon(&self.field.real_signs(x)?);
        Ok(self.w_p(x)?.scale(eps))
    }

    /// φ_f(u) φ_∞(u) = 1 for the unit generators.
    fn check_units(&self) -> Result<()> {
        for u in self.field.unit_generators() {
            let v = self.finite_value_global(&u)?.mul(&self.phi_infinity(&u)?)?;
            if !v.eq_at_prec(&PAdicElement::one(&self.l)) {
                return Err(Error::InvalidCharacter(format!("φ is not trivial on the unit {u:?}")));
            }
        }
        Ok(())
    }

    /// φ_{p-fin} on the class of an idele whose only nontrivial components
    /// are the units x_𝔭 at the primes above p: φ_f(x) w_p^r(x_p).
    pub fn p_adic_avatar(&self, x: &OFpElement) -> Result<PAdicElement> {
        if !x.is_unit() {
            return Err(Error::Precondition("avatar is evaluated on unit p-components".into()));
        }
        let res: Residue = x
            .comps
            .iter()
            .zip(&self.ring.exps)
            .map(|(c, &n)| c.to_raw_mod(n as i64))
            .collect::<Result<_>>()?;
        let mut acc = self.finite_value(&res)?;
        for (l, c) in self.primes.iter().zip(&x.comps) {
            for (k, &sigma) in l.embeddings.iter().enumerate() {
                let r = self.spec.infinity_type[sigma];
                if r == 0 {
                    continue;
                }
                if k > 0 {
                    return Err(Error::Unsupported("local conjugates inside a fiber".into()));
                }
                acc = acc.mul(&self.to_l(c.clone())?.pow(r)?)?;
            }
        }
        Ok(acc)
    }

    /// The scalar ε_φ φ_f(a_y) in front of z^r on the coset of a_y; the
    /// representative idele has trivial archimedean part so ε_φ contributes 1.
    pub fn coset_scalar(&self, a_y: &Residue) -> Result<PAdicElement> {
        self.finite_value(a_y)
    }

    /// φ_f is primitive: nontrivial on 1 + f𝔭^{-1} for every 𝔭 | f.
    pub fn is_primitive(&self) -> bool {
        let one = PAdicElement::one(&self.l);
        (0..self.ring.exps.len()).filter(|&i| self.ring.exps[i] > 0).all(|i| {
            let mut g = self.ring.exps.clone();
            g[i] -= 1;
            let small_one = self.ring.reduce_to(&self.ring.one(), &g);
            self.table
                .iter()
                .any(|(u, v)| self.ring.reduce_to(u, &g) == small_one && !v.eq_at_prec(&one))
        })
    }
}

/// Whether some n ≥ 1 has ε^{nr} = 1 for every unit generator ε.
pub fn is_admissible_infinity_type(field: &NumberFieldData, r: &[i64]) -> bool {
    if r.len() != field.degree() {
        return false;
    }
    let bound = 2 * field.file.torsion_order as u64 * 12;
    field.unit_generators().iter().all(|u| {
        let (mut log_abs, mut arg) = (0.0f64, 0.0f64);
        for (i, &ri) in r.iter().enumerate() {
            let (re, im) = field.approx_embedding(u, i);
            log_abs += ri as f64 * re.hypot(im).ln();
            arg += ri as f64 * im.atan2(re);
        }
        if log_abs.abs() > 1e-6 {
            return false;
        }
        let turns = arg / std::f64::consts::TAU;
        (1..=bound).any(|n| {
            let t = n as f64 * turns;
            (t - t.round()).abs() < 1e-6
        })
    })
}

/// [r] with r + cr = 2[r]t.
pub fn bracket(field: &NumberFieldData, r: &[i64]) -> Result<Ratio<i64>> {
    if r.len() != field.degree() {
        return Err(Error::Precondition("infinity type has the wrong length".into()));
    }
    let sums: Vec<i64> = (0..r.len()).map(|i| r[i] + r[field.conj[i]]).collect();
    if sums.iter().any(|&s| s != sums[0]) {
        return Err(Error::Precondition("r + cr is not parallel".into()));
    }
    Ok(Ratio::new(sums.first().copied().unwrap_or(0), 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_values() {
        let qi = NumberFieldData::builtin("Qi").unwrap();
        assert_eq!(bracket(&qi, &[3, 4]).unwrap(), Ratio::new(7, 2));
        let q2 = NumberFieldData::builtin("Qsqrt2").unwrap();
        assert_eq!(bracket(&q2, &[1, 1]).unwrap(), Ratio::from_integer(1));
        assert_eq!(bracket(&q2, &[0, 0]).unwrap(), Ratio::from_integer(0));
        assert!(bracket(&q2, &[1, 2]).is_err());
    }
}
