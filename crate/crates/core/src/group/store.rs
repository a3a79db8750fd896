//! Exhaustive element store and the index-level subgroup engine.
//!
//! Elements are addressed by their rank in the sorted store. Subgroup
//! scans (closures, normal closures, subnormality chains, derived
//! series) run entirely on `u32` indices; composing two elements is one
//! image-map pass plus one hash lookup, with no allocation.

use std::collections::HashMap;

use crate::perm::{Permutation, Point};

pub(crate) struct Store {
    degree: usize,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    identity: u32,
}

/// A subgroup of the stored group, as sorted element indices. `Whole`
/// stands for the full group; closures switch to it as soon as more than
/// half the store is reached, since no proper subgroup can be that big.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum SubgroupRef {
    Whole,
    Members(Vec<u32>),
}

impl SubgroupRef {
    pub fn len(&self, store: &Store) -> usize {
        match self {
            SubgroupRef::Whole => store.len(),
            SubgroupRef::Members(m) => m.len(),
        }
    }

    pub fn contains(&self, idx: u32) -> bool {
        match self {
            SubgroupRef::Whole => true,
            SubgroupRef::Members(m) => m.binary_search(&idx).is_ok(),
        }
    }

    pub fn members<'a>(&'a self, store: &'a Store) -> Box<dyn Iterator<Item = u32> + 'a> {
        match self {
            SubgroupRef::Whole => Box::new(0..store.len() as u32),
            SubgroupRef::Members(m) => Box::new(m.iter().copied()),
        }
    }
}

/// Reusable scratch state for index-level scans. The membership stamp is
/// epoch-based so clearing between closures is O(1).
pub(crate) struct ScanSpace {
    stamp: Vec<u32>,
    epoch: u32,
    scratch: Vec<Point>,
}

impl ScanSpace {
    pub fn new(store: &Store) -> ScanSpace {
        ScanSpace {
            stamp: vec![0; store.len()],
            epoch: 0,
            scratch: vec![0; store.degree],
        }
    }

    fn begin(&mut self) {
        self.epoch += 1;
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    fn mark(&mut self, idx: u32) -> bool {
        let slot = &mut self.stamp[idx as usize];
        if *slot == self.epoch {
            false
        } else {
            *slot = self.epoch;
            true
        }
    }
}

impl Store {
    /// Breadth-first enumeration from the generators. The caller has
    /// already established (via the stabilizer chain) that the result
    /// fits in memory.
    pub fn enumerate(degree: usize, gens: &[Permutation]) -> Store {
        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut qi = 0;
        while qi < elems.len() {
            let current = elems[qi].clone();
            qi += 1;
            for g in gens {
                let next = current.compose(g).expect("equal degrees");
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len() as u32);
                    elems.push(next);
                }
            }
        }
        elems.sort_unstable();
        index.clear();
        for (i, p) in elems.iter().enumerate() {
            index.insert(p.clone(), i as u32);
        }
        let inverse = elems
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();
        let orders = elems.iter().map(|p| p.order()).collect();
        let identity = index[Permutation::identity(degree).images()];
        Store {
            degree,
            elems,
            index,
            inverse,
            orders,
            identity,
        }
    }

    /// Wraps an element list that is already known to be closed.
    pub fn from_sorted_elements(degree: usize, elems: Vec<Permutation>) -> Store {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        let mut index = HashMap::with_capacity(elems.len());
        for (i, p) in elems.iter().enumerate() {
            index.insert(p.clone(), i as u32);
        }
        let inverse = elems
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();
        let orders = elems.iter().map(|p| p.order()).collect();
        let identity = index[Permutation::identity(degree).images()];
        Store {
            degree,
            elems,
            index,
            inverse,
            orders,
            identity,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn perm(&self, idx: u32) -> &Permutation {
        &self.elems[idx as usize]
    }

    pub fn idx(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p.images()).copied()
    }

    pub fn order_of(&self, idx: u32) -> u64 {
        self.orders[idx as usize]
    }

    pub fn inv(&self, idx: u32) -> u32 {
        self.inverse[idx as usize]
    }

    /// a followed by b.
    pub fn mul(&self, a: u32, b: u32, space: &mut ScanSpace) -> u32 {
        let pa = self.elems[a as usize].images();
        let pb = self.elems[b as usize].images();
        for (i, &v) in pa.iter().enumerate() {
            space.scratch[i] = pb[v as usize];
        }
        self.index[space.scratch.as_slice()]
    }

    /// g⁻¹ x g.
    pub fn conj(&self, x: u32, g: u32, space: &mut ScanSpace) -> u32 {
        let px = self.elems[x as usize].images();
        let pg = self.elems[g as usize].images();
        for i in 0..self.degree {
            space.scratch[pg[i] as usize] = pg[px[i] as usize];
        }
        self.index[space.scratch.as_slice()]
    }

    /// a⁻¹ b⁻¹ a b.
    pub fn commutator(&self, a: u32, b: u32, space: &mut ScanSpace) -> u32 {
        let ia = self.inv(a);
        let ib = self.inv(b);
        let t = self.mul(ia, ib, space);
        let t = self.mul(t, a, space);
        self.mul(t, b, space)
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[u32], space: &mut ScanSpace) -> SubgroupRef {
        space.begin();
        let mut members = vec![self.identity];
        space.mark(self.identity);
        let mut qi = 0;
        while qi < members.len() {
            let a = members[qi];
            qi += 1;
            for &g in gens {
                let b = self.mul(a, g, space);
                if space.mark(b) {
                    members.push(b);
                    if members.len() * 2 > self.len() {
                        return SubgroupRef::Whole;
                    }
                }
            }
        }
        members.sort_unstable();
        SubgroupRef::Members(members)
    }

    /// Greedy small generating set for a subgroup given by its sorted
    /// member list.
    pub fn small_generating_set(&self, members: &[u32], space: &mut ScanSpace) -> Vec<u32> {
        let target = members.len();
        let mut gens: Vec<u32> = Vec::new();
        let mut current = SubgroupRef::Members(vec![self.identity]);
        for &m in members {
            if current.len(self) == target {
                break;
            }
            if current.contains(m) {
                continue;
            }
            gens.push(m);
            current = self.closure(&gens, space);
        }
        if gens.is_empty() {
            vec![self.identity]
        } else {
            gens
        }
    }

    /// Smallest subgroup containing `seed` that is closed under
    /// conjugation by `under`. Returns the subgroup and a generator list
    /// for it (seed plus the conjugates that were adjoined).
    pub fn normal_closure(
        &self,
        seed: &[u32],
        under: &[u32],
        space: &mut ScanSpace,
    ) -> (SubgroupRef, Vec<u32>) {
        let mut gens: Vec<u32> = seed.to_vec();
        let mut subgroup = self.closure(&gens, space);
        if matches!(subgroup, SubgroupRef::Whole) {
            return (subgroup, gens);
        }
        let mut frontier = gens.clone();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for &h in &frontier {
                for &k in under {
                    let c = self.conj(h, k, space);
                    if !subgroup.contains(c) {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            fresh.sort_unstable();
            fresh.dedup();
            gens.extend_from_slice(&fresh);
            subgroup = self.closure(&gens, space);
            if matches!(subgroup, SubgroupRef::Whole) {
                return (subgroup, gens);
            }
            frontier = fresh;
        }
        (subgroup, gens)
    }

    /// Descending normal-closure chain for ⟨x⟩ inside the subgroup
    /// generated by `k_gens`. Returns whether ⟨x⟩ is subnormal and the
    /// number of strictly decreasing steps taken.
    pub fn subnormal_chain(
        &self,
        x: u32,
        k_gens: &[u32],
        k_size: usize,
        space: &mut ScanSpace,
    ) -> (bool, usize) {
        let x_size = self.order_of(x) as usize;
        let mut gens: Vec<u32> = k_gens.to_vec();
        let mut size = k_size;
        let mut steps = 0;
        loop {
            if size == x_size {
                return (true, steps);
            }
            let (next, next_gens) = self.normal_closure(&[x], &gens, space);
            let next_size = next.len(self);
            if next_size == size {
                return (false, steps);
            }
            steps += 1;
            size = next_size;
            gens = next_gens;
        }
    }

    /// Whether the subgroup is nilpotent, by checking that for each prime
    /// the p-elements exactly fill a Sylow p-subgroup (equivalently: the
    /// Sylow p-subgroup is unique).
    pub fn nilpotent_by_counts(&self, subgroup: &SubgroupRef) -> bool {
        let n = subgroup.len(self) as u64;
        for (p, _) in factorize(n) {
            let p_part = p_part_of(n, p);
            let count = subgroup
                .members(self)
                .filter(|&m| is_prime_power_of(self.order_of(m), p))
                .count() as u64;
            if count != p_part {
                return false;
            }
        }
        true
    }

    /// Solvability via the derived series. `gens` must generate the
    /// subgroup of the given size.
    pub fn solvable_by_derived_series(
        &self,
        gens: &[u32],
        size: usize,
        space: &mut ScanSpace,
    ) -> bool {
        let mut cur_gens: Vec<u32> = gens.to_vec();
        let mut cur_size = size;
        // strictly decreasing, so |G| iterations is an unreachable guard
        for _ in 0..=size {
            if cur_size == 1 {
                return true;
            }
            let mut comms: Vec<u32> = Vec::new();
            for &a in &cur_gens {
                for &b in &cur_gens {
                    let c = self.commutator(a, b, space);
                    if c != self.identity {
                        comms.push(c);
                    }
                }
            }
            if comms.is_empty() {
                return true; // abelian
            }
            comms.sort_unstable();
            comms.dedup();
            let (derived, derived_gens) = self.normal_closure(&comms, &cur_gens, space);
            let derived_size = derived.len(self);
            if derived_size == cur_size {
                return false; // perfect and nontrivial
            }
            cur_size = derived_size;
            cur_gens = if derived_gens.len() > 16 {
                match derived {
                    SubgroupRef::Members(ref m) => self.small_generating_set(m, space),
                    SubgroupRef::Whole => derived_gens,
                }
            } else {
                derived_gens
            };
        }
        unreachable!("derived series exceeded the order of the group");
    }
}

/// Fails unless p is prime; the p-parametrized operations require it.
pub(crate) fn ensure_prime(p: u64) -> crate::error::Result<()> {
    let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if is_prime {
        Ok(())
    } else {
        Err(crate::error::Error::InvalidArgument(format!(
            "{} is not a prime",
            p
        )))
    }
}

/// Trial-division factorization; orders are capped at 10^6 so this is fine.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn p_part_of(mut n: u64, p: u64) -> u64 {
    assert!(p >= 2, "p-part needs p >= 2");
    let mut part = 1;
    while n.is_multiple_of(p) {
        part *= p;
        n /= p;
    }
    part
}

/// True iff n is a power of p (1 counts).
pub fn is_prime_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The unique prime p with |x| a power of p, if any (order 1 gives None).
pub fn prime_power_base(n: u64) -> Option<u64> {
    let f = factorize(n);
    match f.len() {
        1 => Some(f[0].0),
        _ => None,
    }
}
