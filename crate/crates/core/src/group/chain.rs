//! Deterministic Schreier–Sims stabilizer chain.
//!
//! Gives the exact group order and a membership oracle without
//! enumerating elements, which is what keeps groups between the
//! exhaustive cap and the hard cap usable.
//!
//! The strong generating set is cumulative: a strong generator lives at
//! the level of its first moved base point, and level j works with every
//! generator stored at levels ≥ j. Whenever a sifted residue is adjoined
//! somewhere, the levels at or above it are re-verified deepest-first.

use std::collections::HashMap;

use crate::perm::{Permutation, Point};

pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

struct Level {
    point: Point,
    /// Strong generators whose first moved base point is this level's.
    own: Vec<Permutation>,
    /// orbit point -> coset representative u with point^u = orbit point
    transversal: HashMap<Point, Permutation>,
}

impl Level {
    fn new(degree: usize, point: Point) -> Level {
        let mut transversal = HashMap::new();
        transversal.insert(point, Permutation::identity(degree));
        Level {
            point,
            own: Vec::new(),
            transversal,
        }
    }
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            let (residue, level) = chain.sift_from(0, g.clone());
            chain.insert_residue(level, residue);
        }
        chain
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.transversal.len() as u128)
            .product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(0, p.clone());
        residue.is_identity()
    }

    /// Generators available at a level: everything stored at this level
    /// or deeper (those fix this level's base prefix).
    fn gens_for(&self, level: usize) -> Vec<Permutation> {
        self.levels[level..]
            .iter()
            .flat_map(|l| l.own.iter().cloned())
            .collect()
    }

    /// Strips `g` through levels `start..`, returning the residue and the
    /// level at which sifting stopped.
    fn sift_from(&self, start: usize, mut g: Permutation) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            if g.is_identity() {
                return (g, i);
            }
            let delta = g.image(level.point);
            match level.transversal.get(&delta) {
                None => return (g, i),
                Some(u) => {
                    g = g.compose(&u.inverse()).expect("equal degrees");
                }
            }
        }
        (g, self.levels.len())
    }

    /// Adjoins a nontrivial residue whose first moved base point is at
    /// `level` (creating the level if needed), then re-verifies every
    /// affected level, deepest first.
    fn insert_residue(&mut self, level: usize, residue: Permutation) {
        if residue.is_identity() {
            return;
        }
        if level == self.levels.len() {
            let b = min_moved_point(&residue);
            self.levels.push(Level::new(self.degree, b));
        }
        self.levels[level].own.push(residue);
        for j in (0..=level).rev() {
            self.close_level(j);
        }
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let point = self.levels[level].point;
        let gens = self.gens_for(level);
        let lvl = &mut self.levels[level];
        lvl.transversal.clear();
        lvl.transversal
            .insert(point, Permutation::identity(self.degree));
        let mut queue = vec![point];
        let mut qi = 0;
        while qi < queue.len() {
            let delta = queue[qi];
            qi += 1;
            let u = lvl.transversal[&delta].clone();
            for s in &gens {
                let gamma = s.image(delta);
                if let std::collections::hash_map::Entry::Vacant(e) = lvl.transversal.entry(gamma) {
                    e.insert(u.compose(s).expect("equal degrees"));
                    queue.push(gamma);
                }
            }
        }
    }

    /// Verifies every Schreier generator of `level` against the deeper
    /// chain; any nontrivial residue is adjoined (fixing the levels it
    /// touches) and the scan restarts.
    fn close_level(&mut self, level: usize) {
        'restart: loop {
            self.rebuild_orbit(level);
            let mut orbit: Vec<Point> = self.levels[level].transversal.keys().copied().collect();
            orbit.sort_unstable();
            let gens = self.gens_for(level);
            for &delta in &orbit {
                let u_d = self.levels[level].transversal[&delta].clone();
                for s in &gens {
                    let gamma = s.image(delta);
                    let u_g = self.levels[level].transversal[&gamma].clone();
                    let schreier = u_d
                        .compose(s)
                        .and_then(|p| p.compose(&u_g.inverse()))
                        .expect("equal degrees");
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, lvl) = self.sift_from(level + 1, schreier);
                    if residue.is_identity() {
                        continue;
                    }
                    if lvl == self.levels.len() {
                        let b = min_moved_point(&residue);
                        self.levels.push(Level::new(self.degree, b));
                    }
                    self.levels[lvl].own.push(residue);
                    for j in ((level + 1)..=lvl).rev() {
                        self.close_level(j);
                    }
                    continue 'restart;
                }
            }
            return;
        }
    }
}

fn min_moved_point(p: &Permutation) -> Point {
    p.images()
        .iter()
        .enumerate()
        .find(|(i, &v)| *i as Point != v)
        .map(|(i, _)| i as Point)
        .expect("identity has no moved point")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[Point]]) -> Permutation {
        let owned: Vec<Vec<Point>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &owned).unwrap()
    }

    /// Plain pairwise-product fixpoint closure: an oracle independent of
    /// both the chain and the store's breadth-first enumeration.
    fn naive_closure(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
        let mut set: std::collections::BTreeSet<Permutation> = gens.iter().cloned().collect();
        set.insert(Permutation::identity(degree));
        loop {
            let snapshot: Vec<Permutation> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for b in &snapshot {
                    set.insert(a.compose(b).unwrap());
                }
            }
            if set.len() == before {
                return set.into_iter().collect();
            }
        }
    }

    #[test]
    fn orders_match_naive_closure() {
        let cases: Vec<(usize, Vec<Permutation>, u128)> = vec![
            (5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])], 60),
            (4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])], 24),
            (6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[1, 5], &[2, 4]])], 12),
            (3, vec![Permutation::identity(3)], 1),
            (7, vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]])], 7),
            // generators that fix the first points of the domain
            (6, vec![cyc(6, &[&[3, 4, 5]]), cyc(6, &[&[4, 5]])], 6),
        ];
        for (degree, gens, expected) in cases {
            let chain = StabChain::new(degree, &gens);
            assert_eq!(chain.order(), expected);
            assert_eq!(naive_closure(&gens, degree).len() as u128, expected);
        }
    }

    #[test]
    fn membership_agrees_with_naive_closure() {
        let degree = 5;
        let gens = vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])];
        let chain = StabChain::new(degree, &gens);
        let a5 = naive_closure(&gens, degree);
        assert_eq!(a5.len(), 60);
        // all of S5, classified by parity
        let s5 = naive_closure(&[cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])], 5);
        assert_eq!(s5.len(), 120);
        for p in &s5 {
            assert_eq!(chain.contains(p), a5.contains(p), "element {}", p);
        }
    }

    #[test]
    fn large_symmetric_order_without_enumeration() {
        // S9 has order 362880; the chain finds it without an element store.
        let gens = vec![cyc(9, &[&[0, 1]]), cyc(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]])];
        let chain = StabChain::new(9, &gens);
        assert_eq!(chain.order(), 362_880);
    }

    #[test]
    fn mathieu_style_sharp_transitivity() {
        // PGL(2,5) on 6 points: order 120, sharply 3-transitive
        let gens = vec![
            cyc(6, &[&[1, 2, 3, 4, 5]]),       // z -> z+1 on GF(5), inf fixed at 0
            cyc(6, &[&[2, 3, 5, 4]]),          // z -> 2z
            cyc(6, &[&[0, 1], &[2, 5]]),       // z -> -1/z
        ];
        let chain = StabChain::new(6, &gens);
        assert_eq!(chain.order(), 120);
    }
}
