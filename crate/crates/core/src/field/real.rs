//! Exact sign determination at real embeddings by interval bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub(crate) fn eval_complex(poly: &[i64], t: [f64; 2]) -> (f64, f64) {
    let c: Vec<f64> = poly.iter().map(|&x| x as f64).collect();
    eval_complex_f(&c, t)
}

pub(crate) fn eval_complex_f(poly: &[f64], t: [f64; 2]) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    for &c in poly.iter().rev() {
        let nre = re * t[0] - im * t[1] + c;
        let nim = re * t[1] + im * t[0];
        re = nre;
        im = nim;
    }
    (re, im)
}

fn parse_q(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::InvalidField(format!("bad rational {s}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::InvalidField(format!("bad rational {s}")))?;
    if d.is_zero() {
        return Err(Error::InvalidField(format!("bad rational {s}")));
    }
    Ok(BigRational::new(n, d))
}

fn eval_q(poly: &[i64], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for &c in poly.iter().rev() {
        acc = acc * x + BigRational::from_integer(BigInt::from(c));
    }
    acc
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Parse an isolating interval and check the minimal polynomial changes
/// sign across it.
pub(crate) fn parse_interval(minpoly: &[i64], iv: &[String; 2]) -> Result<(BigRational, BigRational)> {
    let lo = parse_q(&iv[0])?;
    let hi = parse_q(&iv[1])?;
    if lo >= hi {
        return Err(Error::InvalidField("empty isolating interval".into()));
    }
    if sgn(&eval_q(minpoly, &lo)) * sgn(&eval_q(minpoly, &hi)) >= 0 {
        return Err(Error::InvalidField("interval does not isolate a root".into()));
    }
    Ok((lo, hi))
}

/// Range of g over [lo, hi] by interval Horner evaluation.
fn range(g: &[i128], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for &c in g.iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        let c = BigRational::from_integer(BigInt::from(c));
        a = mn + &c;
        b = mx + c;
    }
    (a, b)
}

/// Sign of Σ x_i θ^i at the root θ of `minpoly` isolated in `iv`.
pub(crate) fn sign_at_root(minpoly: &[i64], iv: (BigRational, BigRational), x: &[i128]) -> Result<i32> {
    let (mut lo, mut hi) = iv;
    let s_lo = sgn(&eval_q(minpoly, &lo));
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..2000 {
        let (a, b) = range(x, &lo, &hi);
        if a.is_positive() {
            return Ok(1);
        }
        if b.is_negative() {
            return Ok(-1);
        }
        let mid = (&lo + &hi) / &two;
        let s = sgn(&eval_q(minpoly, &mid));
        if s == 0 {
            let xq: Vec<i64> = x.iter().map(|&c| c as i64).collect();
            return Ok(sgn(&eval_q(&xq, &mid)));
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Precondition("sign refinement did not terminate; is x zero?".into()))
}
