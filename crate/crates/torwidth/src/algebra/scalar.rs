//! Field descriptors and exact scalar arithmetic.
//!
//! A `Scalar` is an element of `F_q` (residue, `q` prime) or of `Q(zeta_n)`
//! (rational coefficient vector in the power basis `1, zeta, ..,
//! zeta^(phi(n)-1)`, reduced mod the n-th cyclotomic polynomial). `Q` itself
//! is `Q(zeta_1)`. Elements are kept canonical: residues in `[0, q)`,
//! coefficient vectors with trailing zeros trimmed, rationals in lowest
//! terms.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Zero};

use super::AlgebraError;

/// A coefficient field: `F_q` for prime `q`, or `Q(zeta_n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Field {
    Prime(u64),
    Cyclotomic(u32),
}

impl Field {
    /// The rationals, realized as `Q(zeta_1)`.
    pub fn rational() -> Field {
        Field::Cyclotomic(1)
    }

    /// Checks that a prime field really has a prime modulus and a
    /// cyclotomic field a positive order.
    pub fn validate(self) -> Result<(), AlgebraError> {
        match self {
            Field::Prime(q) if is_prime_u64(q) => Ok(()),
            Field::Prime(q) => Err(AlgebraError::NotPrime(q)),
            Field::Cyclotomic(n) if n >= 1 => Ok(()),
            Field::Cyclotomic(_) => Err(AlgebraError::BadCyclotomicOrder),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(q) => write!(f, "F_{q}"),
            Field::Cyclotomic(1) => write!(f, "Q"),
            Field::Cyclotomic(n) => write!(f, "Q(zeta_{n})"),
        }
    }
}

/// Deterministic Miller-Rabin for u64 moduli.
pub fn is_prime_u64(n: u64) -> bool {
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
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Coefficients of the n-th cyclotomic polynomial, ascending, monic.
///
/// `Phi_1 = x - 1`; for n > 1 the polynomial is `(x^n - 1)` divided by the
/// product of `Phi_d` over proper divisors `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic order must be at least 1");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = div_exact_int(&p, &cyclotomic_polynomial(d));
        }
    }
    let arc = Arc::new(p);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Exact division of integer polynomials (ascending coefficients, monic
/// divisor). Panics on a nonzero remainder.
fn div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let d = den.len() - 1;
    assert!(den[d].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - d];
    for i in (d..num.len()).rev() {
        let q = std::mem::replace(&mut rem[i], BigInt::zero());
        if q.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate().take(d) {
            rem[i - d + k] -= &q * dk;
        }
        quot[i - d] = q;
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Reduces an ascending rational coefficient vector mod `Phi_n` in place,
/// then trims trailing zeros.
fn reduce_mod_phi(coeffs: &mut Vec<BigRational>, n: u32) {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    while coeffs.len() > d {
        let top = coeffs.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let i = coeffs.len() - d;
        for (k, pk) in phi.iter().enumerate().take(d) {
            coeffs[i + k] -= &top * BigRational::from_integer(pk.clone());
        }
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

/// An exact field element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    Prime(u64),
    Cyclotomic(Vec<BigRational>),
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Prime(_) => Scalar { field, repr: Repr::Prime(0) },
            Field::Cyclotomic(_) => Scalar { field, repr: Repr::Cyclotomic(Vec::new()) },
        }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    pub fn from_integer(field: Field, v: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(v))
    }

    pub fn from_bigint(field: Field, v: &BigInt) -> Scalar {
        match field {
            Field::Prime(q) => {
                let m = BigInt::from(q);
                let r = ((v % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                Scalar { field, repr: Repr::Prime(digits.first().copied().unwrap_or(0)) }
            }
            Field::Cyclotomic(n) => {
                let mut coeffs = vec![BigRational::from_integer(v.clone())];
                reduce_mod_phi(&mut coeffs, n);
                Scalar { field, repr: Repr::Cyclotomic(coeffs) }
            }
        }
    }

    /// Embeds a rational number; in `F_q` the denominator must be a unit.
    pub fn from_rational(field: Field, v: &BigRational) -> Result<Scalar, AlgebraError> {
        match field {
            Field::Prime(q) => {
                let num = Scalar::from_bigint(field, v.numer());
                let den = Scalar::from_bigint(field, v.denom());
                if den.is_zero() {
                    let (_, nd) = v.numer().to_u64_digits();
                    let (_, dd) = v.denom().to_u64_digits();
                    return Err(AlgebraError::NotInvertibleModP(
                        nd.first().copied().unwrap_or(0),
                        dd.first().copied().unwrap_or(0),
                        q,
                    ));
                }
                Ok(num.mul(&den.inv()?))
            }
            Field::Cyclotomic(n) => {
                let mut coeffs = vec![v.clone()];
                reduce_mod_phi(&mut coeffs, n);
                Ok(Scalar { field, repr: Repr::Cyclotomic(coeffs) })
            }
        }
    }

    /// The primitive n-th root of unity: `zeta_n` in `Q(zeta_m)` when `n`
    /// divides `m`, the smallest residue of multiplicative order `n` in
    /// `F_q` (which exists iff `n` divides `q - 1`).
    pub fn root_of_unity(field: Field, n: u64) -> Result<Scalar, AlgebraError> {
        match field {
            Field::Prime(q) => {
                if n == 0 || (q - 1) % n != 0 {
                    return Err(AlgebraError::NoRootOfUnity { n, q });
                }
                for x in 1..q {
                    if multiplicative_order(x, q, n) {
                        return Ok(Scalar { field, repr: Repr::Prime(x) });
                    }
                }
                Err(AlgebraError::NoRootOfUnity { n, q })
            }
            Field::Cyclotomic(m) => {
                if n == 0 || m as u64 % n != 0 {
                    return Err(AlgebraError::NoRootOfUnity { n, q: 0 });
                }
                let e = (m as u64 / n) as usize;
                let mut coeffs = vec![BigRational::zero(); e + 1];
                coeffs[e] = BigRational::one();
                reduce_mod_phi(&mut coeffs, m);
                Ok(Scalar { field: Field::Cyclotomic(m), repr: Repr::Cyclotomic(coeffs) })
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(v) => *v == 0,
            Repr::Cyclotomic(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.field)
    }

    fn same_field(&self, other: &Scalar) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => {
                let q = match self.field {
                    Field::Prime(q) => q,
                    _ => unreachable!(),
                };
                Scalar { field: self.field, repr: Repr::Prime((a + b) % q) }
            }
            (Repr::Cyclotomic(a), Repr::Cyclotomic(b)) => {
                let mut c = vec![BigRational::zero(); a.len().max(b.len())];
                for (i, v) in a.iter().enumerate() {
                    c[i] += v;
                }
                for (i, v) in b.iter().enumerate() {
                    c[i] += v;
                }
                while c.last().is_some_and(Zero::is_zero) {
                    c.pop();
                }
                Scalar { field: self.field, repr: Repr::Cyclotomic(c) }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Prime(v) => {
                let q = match self.field {
                    Field::Prime(q) => q,
                    _ => unreachable!(),
                };
                Scalar { field: self.field, repr: Repr::Prime(if *v == 0 { 0 } else { q - v }) }
            }
            Repr::Cyclotomic(c) => Scalar {
                field: self.field,
                repr: Repr::Cyclotomic(c.iter().map(|v| -v).collect()),
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => {
                let q = match self.field {
                    Field::Prime(q) => q,
                    _ => unreachable!(),
                };
                Scalar { field: self.field, repr: Repr::Prime(mul_mod(*a, *b, q)) }
            }
            (Repr::Cyclotomic(a), Repr::Cyclotomic(b)) => {
                let n = match self.field {
                    Field::Cyclotomic(n) => n,
                    _ => unreachable!(),
                };
                if a.is_empty() || b.is_empty() {
                    return Scalar::zero(self.field);
                }
                let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, ai) in a.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate() {
                        c[i + j] += ai * bj;
                    }
                }
                reduce_mod_phi(&mut c, n);
                Scalar { field: self.field, repr: Repr::Cyclotomic(c) }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match &self.repr {
            Repr::Prime(a) => {
                let q = match self.field {
                    Field::Prime(q) => q,
                    _ => unreachable!(),
                };
                Ok(Scalar { field: self.field, repr: Repr::Prime(pow_mod(*a, q - 2, q)) })
            }
            Repr::Cyclotomic(a) => {
                let n = match self.field {
                    Field::Cyclotomic(n) => n,
                    _ => unreachable!(),
                };
                let phi: Vec<BigRational> = cyclotomic_polynomial(n)
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                let (g, u) = bezout_mod(a, &phi);
                assert_eq!(g.len(), 1, "element not coprime to an irreducible modulus");
                let scale = g[0].recip();
                let mut c: Vec<BigRational> = u.iter().map(|v| v * &scale).collect();
                reduce_mod_phi(&mut c, n);
                Ok(Scalar { field: self.field, repr: Repr::Cyclotomic(c) })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = Scalar::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The Galois substitution `zeta -> zeta^j` on `Q(zeta_n)`, defined when
    /// `gcd(j, n) = 1`. Fixes `Q`; only cyclotomic fields are supported.
    pub fn galois(&self, j: u64) -> Result<Scalar, AlgebraError> {
        let n = match self.field {
            Field::Cyclotomic(n) => n,
            Field::Prime(_) => return Err(AlgebraError::BadGaloisIndex { j, n: 0 }),
        };
        if gcd_u64(j % n as u64, n as u64) != 1 {
            return Err(AlgebraError::BadGaloisIndex { j, n });
        }
        let coeffs = match &self.repr {
            Repr::Cyclotomic(c) => c,
            _ => unreachable!(),
        };
        let mut out = Scalar::zero(self.field);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * j) % n as u64;
            let mut mono = vec![BigRational::zero(); e as usize + 1];
            mono[e as usize] = c.clone();
            reduce_mod_phi(&mut mono, n);
            out = out.add(&Scalar { field: self.field, repr: Repr::Cyclotomic(mono) });
        }
        Ok(out)
    }

    /// The element as a rational number, when it lies in the prime subfield
    /// `Q` of a cyclotomic field.
    pub fn rational_value(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Cyclotomic(c) if c.is_empty() => Some(BigRational::zero()),
            Repr::Cyclotomic(c) if c.len() == 1 => Some(c[0].clone()),
            _ => None,
        }
    }

    /// The residue when the element lives in a prime field.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime(v) => Some(*v),
            _ => None,
        }
    }

    /// Reduces a cyclotomic rational (n = 1 only) to `F_q`.
    pub fn reduce_mod(&self, q: u64) -> Result<Scalar, AlgebraError> {
        let v = self
            .rational_value()
            .filter(|_| self.field == Field::rational())
            .ok_or(AlgebraError::FieldMismatch(self.field, Field::Prime(q)))?;
        Scalar::from_rational(Field::Prime(q), &v)
    }

    /// Parses the output of `Display` back into the given field.
    pub fn parse_in(field: Field, s: &str) -> Result<Scalar, String> {
        let s = s.trim();
        match field {
            Field::Prime(_) => {
                let v = BigInt::from_str(s).map_err(|e| format!("bad residue '{s}': {e}"))?;
                Ok(Scalar::from_bigint(field, &v))
            }
            Field::Cyclotomic(n) => {
                let body = if let Some(stripped) = s.strip_prefix('[') {
                    stripped.strip_suffix(']').ok_or(format!("unclosed '[' in '{s}'"))?
                } else {
                    s
                };
                let mut coeffs = Vec::new();
                if !body.trim().is_empty() {
                    for part in body.split(',') {
                        let c = BigRational::from_str(part.trim())
                            .map_err(|e| format!("bad coefficient '{part}': {e}"))?;
                        coeffs.push(c);
                    }
                }
                reduce_mod_phi(&mut coeffs, n);
                Ok(Scalar { field, repr: Repr::Cyclotomic(coeffs) })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(v) => write!(f, "{v}"),
            Repr::Cyclotomic(c) => {
                if let Some(r) = self.rational_value() {
                    return write!(f, "{r}");
                }
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// Whether `x` has multiplicative order exactly `n` mod prime `q`.
fn multiplicative_order(x: u64, q: u64, n: u64) -> bool {
    if pow_mod(x, n, q) != 1 {
        return false;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            if pow_mod(x, n / p, q) == 1 {
                return false;
            }
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 && pow_mod(x, n / m, q) == 1 {
        return false;
    }
    true
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Extended Euclid over Q[x]: returns `(g, u)` with `g = gcd(a, m)` and
/// `u*a = g mod m`, coefficients ascending, `g` scaled to be the remainder
/// chain's last nonzero entry.
fn bezout_mod(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let trim = |mut v: Vec<BigRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut u0: Vec<BigRational> = vec![];
    let mut u1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let next_u = trim(poly_sub(&u0, &poly_mul(&q, &u1)));
        r0 = r1;
        r1 = trim(rem);
        u0 = u1;
        u1 = next_u;
    }
    (r0, u0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            c[i + j] += ai * bj;
        }
    }
    c
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        c[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        c[i] -= v;
    }
    c
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for i in (b.len() - 1..a.len()).rev() {
        let q = &rem[i] / lead;
        if q.is_zero() {
            continue;
        }
        for (k, bk) in b.iter().enumerate() {
            let delta = &q * bk;
            rem[i + 1 - b.len() + k] -= delta;
        }
        quot[i + 1 - b.len()] = q;
    }
    (quot, rem)
}
