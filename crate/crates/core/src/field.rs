//! Small finite fields GF(q) for q ≤ 16, with fixed defining
//! polynomials so the projective-line constructions are bit-exact.
//!
//! Elements are encoded as integers Σ cᵢ·pⁱ where (c_{k−1}, …, c₀) are
//! the polynomial coefficients; the element ordering used everywhere is
//! this integer ordering.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Supported field sizes.
pub const SUPPORTED_Q: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// GF(p^k) with a fixed reduction polynomial x^k = poly (coefficients
/// low-to-high, length k).
#[derive(Debug)]
pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    poly: Vec<u64>,
    primitive: OnceLock<u64>,
}

/// Fixed defining polynomials:
/// GF(4): x²+x+1, GF(8): x³+x+1, GF(9): x²+1, GF(16): x⁴+x+1.
pub fn field(q: u64) -> Result<&'static Field> {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    let fields = FIELDS.get_or_init(|| {
        vec![
            Field::new(2, 1, vec![]),
            Field::new(3, 1, vec![]),
            Field::new(2, 2, vec![1, 1]),    // x^2 = x + 1
            Field::new(5, 1, vec![]),
            Field::new(7, 1, vec![]),
            Field::new(2, 3, vec![1, 1, 0]), // x^3 = x + 1
            Field::new(3, 2, vec![2, 0]),    // x^2 = -1
            Field::new(11, 1, vec![]),
            Field::new(13, 1, vec![]),
            Field::new(2, 4, vec![1, 1, 0, 0]), // x^4 = x + 1
        ]
    });
    fields
        .iter()
        .find(|f| f.q == q)
        .ok_or(Error::UnsupportedField(q))
}

impl Field {
    fn new(p: u64, k: u32, poly: Vec<u64>) -> Field {
        Field {
            p,
            k,
            q: p.pow(k),
            poly,
            primitive: OnceLock::new(),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    /// Polynomial coefficients of an element, low degree first.
    pub fn coefficients(&self, a: u64) -> Vec<u64> {
        debug_assert!(a < self.q);
        let mut digits = Vec::with_capacity(self.k as usize);
        let mut v = a;
        for _ in 0..self.k {
            digits.push(v % self.p);
            v /= self.p;
        }
        digits
    }

    fn pack_coefficients(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + (c % self.p))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let da = self.coefficients(a);
        let db = self.coefficients(b);
        let sum: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.pack_coefficients(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let digits: Vec<u64> = self
            .coefficients(a)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        self.pack_coefficients(&digits)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let da = self.coefficients(a);
        let db = self.coefficients(b);
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by x^k = poly
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for (j, &pc) in self.poly.iter().enumerate() {
                    prod[i - k + j] = (prod[i - k + j] + c * pc) % self.p;
                }
            }
        }
        self.pack_coefficients(&prod[..k])
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        // q ≤ 16: scanning beats bookkeeping
        Ok((1..self.q)
            .find(|&b| self.mul(a, b) == 1)
            .expect("nonzero elements are invertible"))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x ↦ x^p, the Frobenius automorphism.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    fn multiplicative_order(&self, a: u64) -> u64 {
        let mut o = 1;
        let mut x = a;
        while x != 1 {
            x = self.mul(x, a);
            o += 1;
        }
        o
    }

    /// The least element (in the fixed ordering) generating the
    /// multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        *self.primitive.get_or_init(|| {
            (1..self.q)
                .find(|&a| self.multiplicative_order(a) == self.q - 1)
                .expect("finite fields have primitive elements")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf4_multiplication_follows_the_defining_polynomial() {
        let f = field(4).unwrap();
        // x·x = x+1 under x²+x+1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.primitive_element(), 2);
    }

    #[test]
    fn gf9_square_of_x_is_minus_one() {
        let f = field(9).unwrap();
        // x·x = −1 under x²+1; −1 has value 2
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.neg(1), 2);
        assert_eq!(f.primitive_element(), 4); // x+1
    }

    #[test]
    fn primitive_elements_match_the_fixed_ordering() {
        let expected = [
            (2, 1),
            (3, 2),
            (4, 2),
            (5, 2),
            (7, 3),
            (8, 2),
            (9, 4),
            (11, 2),
            (13, 2),
            (16, 2),
        ];
        for (q, prim) in expected {
            assert_eq!(field(q).unwrap().primitive_element(), prim, "GF({})", q);
        }
    }

    #[test]
    fn unsupported_sizes_are_rejected() {
        assert_eq!(field(6).unwrap_err(), Error::UnsupportedField(6));
        assert_eq!(field(32).unwrap_err(), Error::UnsupportedField(32));
    }

    #[test]
    fn inversion_is_total_on_nonzero_elements() {
        for q in SUPPORTED_Q {
            let f = field(q).unwrap();
            assert!(matches!(f.inv(0), Err(Error::DivisionByZero { .. })));
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "GF({}) inv({})", q, a);
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        for q in SUPPORTED_Q {
            let f = field(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(
                        f.frobenius(f.add(a, b)),
                        f.add(f.frobenius(a), f.frobenius(b))
                    );
                    assert_eq!(
                        f.frobenius(f.mul(a, b)),
                        f.mul(f.frobenius(a), f.frobenius(b))
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms_hold(qi in 0usize..SUPPORTED_Q.len(), a in 0u64..16, b in 0u64..16, c in 0u64..16) {
            let f = field(SUPPORTED_Q[qi]).unwrap();
            let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
            prop_assert_eq!(f.add(a, 0), a);
            prop_assert_eq!(f.mul(a, 1), a);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        }
    }
}
