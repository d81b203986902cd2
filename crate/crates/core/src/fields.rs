//! Table-driven arithmetic for the finite fields GF(p^k), q = p^k <= 2^16.
//!
//! Elements are encoded as integers: writing an element in the polynomial
//! basis as c_0 + c_1 x + ... + c_{k-1} x^{k-1}, its encoding is
//! sum c_i p^i. So 0 and 1 always encode the field's zero and one, and for
//! prime fields the encoding is the residue itself. GF(4) = {0, 1, 2, 3}
//! encodes {0, 1, x, x+1}.
//!
//! The defining polynomial for each supported (p, k) is the Conway
//! polynomial, fixed in `CONWAY` below, so encodings are stable and
//! reproducible across implementations. Conway polynomials are primitive:
//! x generates the multiplicative group, which makes the log/exp tables a
//! complete multiplication oracle. Addition uses a Zech logarithm table,
//! so every field operation after construction is O(1) table lookups.

use thiserror::Error;

/// Largest supported field size.
pub const MAX_Q: u32 = 1 << 16;

const NONE: u32 = u32::MAX;

/// A field element by its integer encoding. Only meaningful relative to the
/// `Field` that produced it; mixing fields is a caller bug.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u16);

impl std::fmt::Debug for Fe {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{}", self.0)
    }
}

impl std::fmt::Display for Fe {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p^k = {p}^{k} exceeds the supported range (q <= 2^16)")]
    RangeExceeded { p: u32, k: u32 },
    #[error("no defining polynomial on record for GF({p}^{k})")]
    UnsupportedOrder { p: u32, k: u32 },
}

/// Conway polynomials, low degree coefficient first, including the monic
/// leading 1. Covers every field a rank-at-most-4 form over GF(q), q <= 13,
/// can ask for, plus the quadratic extensions the Hermitian cases need.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 1, &[9, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 1, &[11, 1]),
    (13, 2, &[2, 12, 1]),
];

/// GF(p^k) with its operation tables.
///
/// Debug omits the tables: they are determined by (p, k).
pub struct Field {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    modulus: Vec<u32>,
    /// exp[i] = encoding of x^i, for i in 0..q-1.
    exp: Vec<u16>,
    /// log[e] = i with x^i = e, for e != 0; log[0] = NONE.
    log: Vec<u32>,
    /// zech[i] = log(1 + x^i), or NONE when 1 + x^i = 0.
    zech: Vec<u32>,
    /// log(-1); equals 0 in characteristic 2.
    neg_log: u32,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "Field(GF({}^{}))", self.p, self.k)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(p: u32, k: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 || (p as u64).pow(k) > MAX_Q as u64 {
            return Err(FieldError::RangeExceeded { p, k });
        }
        let modulus = CONWAY
            .iter()
            .find(|&&(cp, ck, _)| cp == p && ck == k)
            .map(|&(_, _, c)| c.to_vec())
            .ok_or(FieldError::UnsupportedOrder { p, k })?;
        let q = p.pow(k);

        // Walk x^0, x^1, ... by shift-and-reduce on coefficient vectors.
        // The Conway polynomial is primitive, so the walk must visit every
        // nonzero element exactly once before returning to 1.
        let mut exp = vec![0u16; (q - 1) as usize];
        let mut log = vec![NONE; q as usize];
        let mut coeffs = vec![0u32; k as usize];
        coeffs[0] = 1;
        for i in 0..(q - 1) as usize {
            let e = encode(&coeffs, p);
            assert!(log[e as usize] == NONE, "defining polynomial is not primitive");
            exp[i] = e as u16;
            log[e as usize] = i as u32;
            // coeffs *= x  (mod modulus)
            let carry = coeffs[k as usize - 1];
            for j in (1..k as usize).rev() {
                coeffs[j] = coeffs[j - 1];
            }
            coeffs[0] = 0;
            if carry != 0 {
                for j in 0..k as usize {
                    coeffs[j] = (coeffs[j] + carry * (p - modulus[j] % p)) % p;
                }
            }
        }
        assert!(encode(&coeffs, p) == 1, "defining polynomial is not primitive");

        let mut zech = vec![NONE; (q - 1) as usize];
        for i in 0..(q - 1) as usize {
            let s = add_encodings(1, exp[i] as u32, p, k);
            if s != 0 {
                zech[i] = log[s as usize];
            }
        }
        let neg_log = if p == 2 { 0 } else { log[(p - 1) as usize] };

        Ok(Field { p, k, q, modulus, exp, log, zech, neg_log })
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The element of the prime subfield congruent to `n`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q as u16).map(Fe)
    }

    /// Polynomial-basis coefficients of `a`, low degree first.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut e = a.0 as u32;
        (0..self.k)
            .map(|_| {
                let c = e % self.p;
                e /= self.p;
                c
            })
            .collect()
    }

    pub fn defining_polynomial(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.q - 1;
        let i = self.log[a.0 as usize];
        let j = self.log[b.0 as usize];
        let z = self.zech[((j + n - i) % n) as usize];
        if z == NONE {
            return Fe(0);
        }
        Fe(self.exp[((i + z) % n) as usize])
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        let n = self.q - 1;
        Fe(self.exp[((self.log[a.0 as usize] + self.neg_log) % n) as usize])
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let n = self.q - 1;
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(i % n) as usize])
    }

    /// Multiplicative inverse; panics on 0.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a.0 != 0, "inverse of zero");
        let n = self.q - 1;
        Fe(self.exp[((n - self.log[a.0 as usize]) % n) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a.0 == 0 {
            return if e == 0 { Fe(1) } else { Fe(0) };
        }
        let n = (self.q - 1) as u64;
        let i = self.log[a.0 as usize] as u64;
        Fe(self.exp[((i * (e % n)) % n) as usize])
    }

    /// The field automorphism a -> a^(p^r).
    pub fn frobenius(&self, a: Fe, r: u32) -> Fe {
        if a.0 == 0 {
            return a;
        }
        let n = (self.q - 1) as u64;
        let f = (self.p as u64).pow(r % self.k) % n;
        let i = self.log[a.0 as usize] as u64;
        Fe(self.exp[((i * f) % n) as usize])
    }

    /// Conjugation x -> x^(p^(k/2)) for fields of square order; identity is
    /// not a valid fallback, so this panics when k is odd.
    pub fn conj(&self, a: Fe) -> Fe {
        assert!(self.k % 2 == 0, "conjugation needs a field of square order");
        self.frobenius(a, self.k / 2)
    }
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    let mut e = 0u32;
    for &c in coeffs.iter().rev() {
        e = e * p + c;
    }
    e
}

/// Digit-wise sum of two encodings, base p: coefficient addition mod p.
fn add_encodings(a: u32, b: u32, p: u32, k: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut e = 0u32;
    let mut shift = 1u32;
    for _ in 0..k {
        e += ((a + b) % p) * shift;
        a /= p;
        b /= p;
        shift *= p;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent multiplication oracle: coefficient-vector product reduced
    /// by long division against the defining polynomial. Shares no code with
    /// the table path.
    fn poly_mul(f: &Field, a: Fe, b: Fe) -> Fe {
        let p = f.p as u64;
        let k = f.k as usize;
        let ca = f.coeffs(a);
        let cb = f.coeffs(b);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m: Vec<u64> = f.defining_polynomial().iter().map(|&c| c as u64).collect();
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for j in 0..k {
                    let sub = (c * m[j]) % p;
                    prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
                }
            }
        }
        let coeffs: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        Fe(encode(&coeffs, f.p) as u16)
    }

    fn supported() -> Vec<(u32, u32)> {
        CONWAY.iter().map(|&(p, k, _)| (p, k)).collect()
    }

    #[test]
    fn rejects_out_of_range_and_bad_orders() {
        assert_eq!(Field::new(2, 17).unwrap_err(), FieldError::RangeExceeded { p: 2, k: 17 });
        assert_eq!(Field::new(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(Field::new(3, 5).unwrap_err(), FieldError::UnsupportedOrder { p: 3, k: 5 });
        assert_eq!(Field::new(2, 0).unwrap_err(), FieldError::RangeExceeded { p: 2, k: 0 });
    }

    #[test]
    fn gf4_encoding_and_product() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.defining_polynomial(), &[1, 1, 1]);
        // x * x = x + 1 under x^2 + x + 1.
        assert_eq!(f.mul(Fe(2), Fe(2)), Fe(3));
        assert_eq!(f.add(Fe(2), Fe(3)), Fe(1));
    }

    #[test]
    fn gf9_frobenius_matches_repeated_multiplication() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.defining_polynomial(), &[2, 2, 1]);
        let x = Fe(3);
        let cube = f.mul(f.mul(x, x), x);
        assert_eq!(cube, Fe(7));
        assert_eq!(f.frobenius(x, 1), cube);
    }

    #[test]
    fn frobenius_agrees_with_pow_everywhere() {
        for &(p, k) in &supported() {
            let f = Field::new(p, k).unwrap();
            for r in 0..k {
                let e = (p as u64).pow(r);
                for a in f.elements() {
                    assert_eq!(f.frobenius(a, r), f.pow(a, e));
                }
            }
        }
    }

    #[test]
    fn conjugation_fixes_exactly_the_subfield() {
        for &(p, k) in &supported() {
            if k % 2 != 0 {
                continue;
            }
            let f = Field::new(p, k).unwrap();
            let fixed = f.elements().filter(|&a| f.conj(a) == a).count();
            assert_eq!(fixed as u64, (p as u64).pow(k / 2), "GF({}^{})", p, k);
        }
    }

    #[test]
    fn multiplication_matches_polynomial_oracle() {
        for &(p, k) in &supported() {
            let f = Field::new(p, k).unwrap();
            if f.q <= 81 {
                for a in f.elements() {
                    for b in f.elements() {
                        assert_eq!(f.mul(a, b), poly_mul(&f, a, b), "GF({})", f.q);
                    }
                }
            } else {
                // Sampled with a fixed stride so the walk covers the range.
                let step = (f.q / 251).max(1) as u16;
                let mut a = 1u16;
                while (a as u32) < f.q {
                    let mut b = 1u16;
                    while (b as u32) < f.q {
                        assert_eq!(f.mul(Fe(a), Fe(b)), poly_mul(&f, Fe(a), Fe(b)));
                        b = b.saturating_add(step * 3 + 1);
                    }
                    a = a.saturating_add(step);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for &(p, k) in &supported() {
            let f = Field::new(p, k).unwrap();
            if f.q > 81 {
                continue;
            }
            for a in f.elements() {
                assert_eq!(f.add(a, Fe(0)), a);
                assert_eq!(f.mul(a, Fe(1)), a);
                assert_eq!(f.add(a, f.neg(a)), Fe(0));
                if a.0 != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), Fe(1));
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn axioms_sampled_large_orders() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &(p, k) in &supported() {
            let f = Field::new(p, k).unwrap();
            if f.q <= 81 {
                continue;
            }
            for _ in 0..20_000 {
                let a = Fe(rng.gen_range(0..f.q) as u16);
                let b = Fe(rng.gen_range(0..f.q) as u16);
                let c = Fe(rng.gen_range(0..f.q) as u16);
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), Fe(0));
                if a.0 != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), Fe(1));
                }
            }
        }
    }

    #[test]
    fn pow_laws() {
        let f = Field::new(3, 4).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 0), Fe(1));
            assert_eq!(f.pow(a, 1), a);
            if a.0 != 0 {
                assert_eq!(f.pow(a, (f.q - 1) as u64), Fe(1));
            }
        }
    }
}
