use std::fmt;
use std::sync::Arc;

use crate::abelian::arith::prime_power;
use crate::error::{Error, Result};

/// Moduli fixed per field order so that encoded elements are stable across
/// runs. Coefficients are listed constant term first; the leading 1 is
/// included.
const FIXED_MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 1, 1]),
];

/// GF(q) for a prime power `q ≤ 256`, with full addition and multiplication
/// tables.
///
/// Element `a` encodes the polynomial `Σ cᵢ xⁱ` with `a = Σ cᵢ pⁱ`, so for
/// GF(4): 0, 1, 2 = x, 3 = x + 1.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

struct Tables {
    q: u32,
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        let (p, degree) = prime_power(q as u64).ok_or(Error::NotPrimePower(q))?;
        if q > 256 {
            return Err(Error::InvalidArgument(format!("field order {q} above 256")));
        }
        let (p, degree) = (p as u32, degree);
        let modulus = match FIXED_MODULI.iter().find(|(qq, _)| *qq == q) {
            Some((_, m)) => m.to_vec(),
            None if degree == 1 => vec![0, 1],
            None => smallest_irreducible(p, degree),
        };
        let t = build_tables(q, p, degree, modulus).expect("modulus is irreducible");
        let f = Field(Arc::new(t));
        if q <= 16 {
            f.verify_axioms();
        }
        Ok(f)
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.q + b) as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.q + b) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize] as u32
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u32> {
        1..self.0.q
    }

    /// Exhaustive check of the field axioms on the tables.
    pub fn verify_axioms(&self) {
        let q = self.q();
        for a in 0..q {
            assert_eq!(self.add(a, 0), a);
            assert_eq!(self.mul(a, 1), a);
            assert_eq!(self.add(a, self.neg(a)), 0);
            if a != 0 {
                assert_eq!(self.mul(a, self.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(self.add(a, b), self.add(b, a));
                assert_eq!(self.mul(a, b), self.mul(b, a));
                for c in 0..q {
                    assert_eq!(self.add(self.add(a, b), c), self.add(a, self.add(b, c)));
                    assert_eq!(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c)));
                    assert_eq!(
                        self.mul(a, self.add(b, c)),
                        self.add(self.mul(a, b), self.mul(a, c))
                    );
                }
            }
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

fn poly_digits(mut a: u32, p: u32, degree: u32) -> Vec<u32> {
    (0..degree)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn poly_encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn build_tables(q: u32, p: u32, degree: u32, modulus: Vec<u32>) -> Option<Tables> {
    let qs = q as usize;
    let digits: Vec<Vec<u32>> = (0..q).map(|a| poly_digits(a, p, degree)).collect();
    let mut add = vec![0u16; qs * qs];
    let mut mul = vec![0u16; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let s: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * qs + b] = poly_encode(&s, p) as u16;
            mul[a * qs + b] = poly_encode(&poly_mulmod(&digits[a], &digits[b], &modulus, p), p) as u16;
        }
    }
    let neg = (0..qs)
        .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16)
        .collect();
    let mut inv = vec![0u16; qs];
    for a in 1..qs {
        inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1)? as u16;
    }
    Some(Tables {
        q,
        p,
        degree,
        modulus,
        add,
        mul,
        neg,
        inv,
    })
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * d.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce with the monic modulus
    for i in (d..prod.len()).rev() {
        let c = prod[i];
        if c != 0 {
            for (j, &m) in modulus.iter().enumerate() {
                let idx = i - d + j;
                prod[idx] = (prod[idx] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(d);
    prod
}

/// Lexicographically smallest monic irreducible of the given degree, where
/// irreducibility is witnessed by every nonzero residue being invertible.
fn smallest_irreducible(p: u32, degree: u32) -> Vec<u32> {
    let q = p.pow(degree);
    for low in 0..q {
        let mut m = poly_digits(low, p, degree);
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if build_tables(q, p, degree, m.clone()).is_some() {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
