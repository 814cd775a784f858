//! Coefficient fields: exact rationals by default, or a prime field `F_p`.
//!
//! All core computations run over the rationals; a prime-field configuration
//! reduces exact results modulo `p` after checking that every denominator is
//! invertible. Characteristic 2 is rejected outright since the split basis of
//! the face modules degenerates there, and a modulus `p <= n` violates the
//! standing hypothesis of the decomposition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// A prime field `F_p`; `p` must be an odd prime.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not supported: the split basis degenerates".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Checks the modulus against the ambient number of coordinates: the
    /// decomposition machinery requires characteristic 0 or `p > n`.
    pub fn validate_ambient(&self, n: usize) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) => {
                if *p > n as u64 {
                    Ok(())
                } else {
                    Err(Error::InvalidField(format!(
                        "prime field modulus {p} must exceed the {n} coordinates"
                    )))
                }
            }
        }
    }

    /// Renders an exact scalar as an element of this field.
    pub fn scalar_string(&self, r: &Rat) -> Result<String> {
        match self {
            FieldSpec::Rationals => Ok(r.to_string()),
            FieldSpec::PrimeField(p) => Ok(reduce_mod(r, *p)?.to_string()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` for the rationals and `fp:P` for a prime field.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "q" | "Q" | "rational" | "rationals" => Ok(FieldSpec::Rationals),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .or_else(|| s.strip_prefix("Fp:"))
                    .ok_or_else(|| {
                        Error::InvalidField(format!("unknown field {s:?}; use q or fp:P"))
                    })?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad modulus {p:?}")))?;
                FieldSpec::prime_field(p)
            }
        }
    }
}

/// Image of an exact rational in `F_p`; errors when the denominator is
/// divisible by `p`.
pub fn reduce_mod(r: &Rat, p: u64) -> Result<u64> {
    let pm = BigInt::from(p);
    let num = r.numer().mod_floor(&pm).to_u64().expect("residue fits u64");
    let den = r.denom().mod_floor(&pm).to_u64().expect("residue fits u64");
    if den == 0 {
        return Err(Error::InvalidField(format!(
            "denominator of {r} is not invertible modulo {p}"
        )));
    }
    Ok(mulmod(num, powmod(den, p - 2, p), p))
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if p.is_multiple_of(q) {
            return p == q;
        }
    }
    let s = (p - 1).trailing_zeros();
    let d = (p - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, p);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, p);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
