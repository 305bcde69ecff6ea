//! Exact scalar arithmetic over the rationals and prime fields.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not 0 or a prime")]
    NotPrime(u64),
}

/// Coefficient field: characteristic 0 means the rationals, otherwise a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldSpec {
    ch: u64,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { ch: 0 }
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime_u64(p) {
            Ok(FieldSpec { ch: p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Characteristic 0 or a validated prime.
    pub fn of_characteristic(ch: u64) -> Result<Self, FieldError> {
        if ch == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(ch)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.ch
    }

    pub fn is_rational(&self) -> bool {
        self.ch == 0
    }

    pub fn zero(&self) -> Scalar {
        match self.ch {
            0 => Scalar::Small { num: 0, den: 1 },
            _ => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.ch {
            0 => Scalar::Small { num: 1, den: 1 },
            _ => Scalar::Fp(1 % self.ch),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.ch {
            0 => Scalar::Small { num: v, den: 1 },
            p => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Fp(r % p)
            }
        }
    }

    /// Reduced fraction num/den; den must be nonzero (and invertible mod p).
    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self.ch {
            0 => normalize_small(num as i128, den as i128),
            _ => {
                let n = self.from_i64(num);
                let d = self.from_i64(den);
                self.mul(&n, &self.inv(&d).expect("denominator divisible by characteristic"))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Small { num, .. } => *num == 0,
            Scalar::Big(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Small { num, den } => *num == 1 && *den == 1,
            Scalar::Big(r) => r.is_one(),
            Scalar::Fp(v) => *v == 1 % self.ch.max(1),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % self.ch as u128) as u64)
            }
            (Scalar::Small { num: n1, den: d1 }, Scalar::Small { num: n2, den: d2 }) => {
                let num = *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128;
                let den = *d1 as i128 * *d2 as i128;
                normalize_small(num, den)
            }
            _ => from_big(to_big(a) + to_big(b)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(0) => Scalar::Fp(0),
            Scalar::Fp(x) => Scalar::Fp(self.ch - x),
            Scalar::Small { num, den } => Scalar::Small { num: -num, den: *den },
            Scalar::Big(r) => from_big(-(**r).clone()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % self.ch as u128) as u64)
            }
            (Scalar::Small { num: n1, den: d1 }, Scalar::Small { num: n2, den: d2 }) => {
                normalize_small(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
            }
            _ => from_big(to_big(a) * to_big(b)),
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match a {
            Scalar::Fp(x) => Scalar::Fp(mod_inv(*x, self.ch)),
            Scalar::Small { num, den } => {
                let s = if *num < 0 { -1 } else { 1 };
                normalize_small(s * *den as i128, (*num as i128).abs())
            }
            Scalar::Big(r) => from_big((**r).recip()),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    /// a^k for k >= 0.
    pub fn pow(&self, a: &Scalar, k: u32) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Canonical printing: `a/b` for non-integer rationals, `a` otherwise.
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Small { num, den: 1 } => format!("{num}"),
            Scalar::Small { num, den } => format!("{num}/{den}"),
            Scalar::Big(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => format!("{v}"),
        }
    }
}

/// Exact field scalar. Rational values stay in the machine-word representation
/// whenever they fit and promote to arbitrary precision on overflow.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Small { num: i64, den: u64 },
    Big(Box<BigRational>),
    Fp(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small { num, den: 1 } => write!(f, "{num}"),
            Scalar::Small { num, den } => write!(f, "{num}/{den}"),
            Scalar::Big(r) => write!(f, "{r}"),
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduce num/den (den != 0) and pick the smallest representation.
fn normalize_small(num: i128, den: i128) -> Scalar {
    debug_assert!(den != 0);
    if num == 0 {
        return Scalar::Small { num: 0, den: 1 };
    }
    let sign = (num < 0) != (den < 0);
    let mut un = num.unsigned_abs();
    let mut ud = den.unsigned_abs();
    let g = gcd_u128(un, ud);
    un /= g;
    ud /= g;
    if un <= i64::MAX as u128 && ud <= u64::MAX as u128 {
        let n = un as i64;
        Scalar::Small { num: if sign { -n } else { n }, den: ud as u64 }
    } else {
        let mut bn = BigInt::from(un);
        if sign {
            bn = -bn;
        }
        Scalar::Big(Box::new(BigRational::new(bn, BigInt::from(ud))))
    }
}

fn to_big(a: &Scalar) -> BigRational {
    match a {
        Scalar::Small { num, den } => BigRational::new(BigInt::from(*num), BigInt::from(*den)),
        Scalar::Big(r) => (**r).clone(),
        Scalar::Fp(_) => panic!("prime-field scalar in rational context"),
    }
}

/// Demote back to the small representation when possible, keeping Eq canonical.
fn from_big(r: BigRational) -> Scalar {
    use num::ToPrimitive;
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_u64()) {
        return Scalar::Small { num: n, den: d };
    }
    Scalar::Big(Box::new(r))
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid over i128
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible");
    t.rem_euclid(p as i128) as u64
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}
