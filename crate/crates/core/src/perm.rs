//! Permutations of {0, …, n−1}, stored as image sequences.
//!
//! Points are 0-based everywhere in memory; the text format and the
//! cycle rendering are 1-based.

use std::borrow::Borrow;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// A point of the permutation domain.
pub type Point = u32;

/// A permutation given by its image sequence: `images[i]` is the image of
/// point `i`. Two permutations are equal iff their degrees and image
/// sequences are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.as_slice().hash(state)
    }
}

// Lets hash maps keyed by `Permutation` be probed with a plain image
// slice, so hot loops can compose into a scratch buffer without
// allocating.
impl Borrow<[Point]> for Permutation {
    fn borrow(&self) -> &[Point] {
        &self.images
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from an image sequence, checking bijectivity.
    pub fn from_images(images: Vec<Point>) -> Result<Permutation> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &v in &images {
            if v as usize >= degree {
                return Err(Error::NotBijective {
                    degree,
                    reason: format!("image {} out of range", v + 1),
                });
            }
            if seen[v as usize] {
                return Err(Error::NotBijective {
                    degree,
                    reason: format!("image {} repeated", v + 1),
                });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Point>) -> Permutation {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<Point>]) -> Result<Permutation> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p as usize >= degree {
                    return Err(Error::InvalidArgument(format!(
                        "cycle point {} out of range for degree {}",
                        p, degree
                    )));
                }
                if moved[p as usize] {
                    return Err(Error::InvalidArgument(format!(
                        "cycles are not disjoint at point {}",
                        p
                    )));
                }
                moved[p as usize] = true;
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn image(&self, p: Point) -> Point {
        self.images[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as Point == v)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = self.images.iter().map(|&v| other.images[v as usize]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as Point;
        }
        Permutation { images }
    }

    /// Conjugate `g⁻¹·self·g` (with products applied left to right).
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        let mut images = vec![0; self.degree()];
        for i in 0..self.images.len() {
            images[g.images[i] as usize] = g.images[self.images[i] as usize];
        }
        Ok(Permutation { images })
    }

    /// `self` raised to an integer power (negative powers via the inverse).
    pub fn pow(&self, n: i64) -> Permutation {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).expect("equal degrees");
            }
            sq = sq.compose(&sq).expect("equal degrees");
            e >>= 1;
        }
        acc
    }

    /// Least k > 0 with self^k = identity: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order: u128 = 1;
        for i in 0..self.degree() {
            if seen[i] {
                continue;
            }
            let mut len: u128 = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        u64::try_from(order).expect("element order exceeds u64")
    }

    /// Nontrivial cycles, each starting at its least point, sorted by
    /// first point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for i in 0..self.degree() {
            if seen[i] || self.images[i] as usize == i {
                seen[i] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j as Point);
                j = self.images[j] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Multiset of cycle lengths (fixed points included), descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for i in 0..self.degree() {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i as Point == v)
            .count()
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[deg {}, {}]", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(degree: usize, cycles: &[&[Point]]) -> Permutation {
        let owned: Vec<Vec<Point>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &owned).unwrap()
    }

    #[test]
    fn involution_squared_is_identity() {
        let t = cyc(2, &[&[0, 1]]);
        assert_eq!(t.compose(&t).unwrap(), Permutation::identity(2));
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let p = cyc(5, &[&[0, 1, 2], &[3, 4]]);
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn inverse_reverses_a_cycle() {
        let p = cyc(4, &[&[0, 1, 2, 3]]);
        assert_eq!(p.inverse(), cyc(4, &[&[0, 3, 2, 1]]));
    }

    #[test]
    fn compose_applies_left_then_right() {
        let p = cyc(3, &[&[0, 1]]);
        let q = cyc(3, &[&[1, 2]]);
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.compose(&q).unwrap().image(0), 2);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(
            p.compose(&q),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn display_uses_one_based_cycles() {
        let p = cyc(5, &[&[0, 1, 2], &[3, 4]]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(images in Just((0u32..9).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::from_images(images).unwrap();
            prop_assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(9));
            prop_assert_eq!(p.inverse().compose(&p).unwrap(), Permutation::identity(9));
        }

        #[test]
        fn conjugation_preserves_cycle_type(
            a in Just((0u32..9).collect::<Vec<_>>()).prop_shuffle(),
            b in Just((0u32..9).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let x = Permutation::from_images(a).unwrap();
            let g = Permutation::from_images(b).unwrap();
            let y = x.conjugate_by(&g).unwrap();
            prop_assert_eq!(x.cycle_type(), y.cycle_type());
            // conjugate the long way round as an independent route
            let z = g.inverse().compose(&x).unwrap().compose(&g).unwrap();
            prop_assert_eq!(y, z);
        }

        #[test]
        fn pow_matches_repeated_composition(
            images in Just((0u32..8).collect::<Vec<_>>()).prop_shuffle(),
            n in 0i64..20,
        ) {
            let p = Permutation::from_images(images).unwrap();
            let mut acc = Permutation::identity(8);
            for _ in 0..n {
                acc = acc.compose(&p).unwrap();
            }
            prop_assert_eq!(p.pow(n), acc);
        }
    }
}
