//! Permutation groups: construction, membership, subgroup machinery.
//!
//! A group is immutable once built. Construction always computes the
//! exact order through a stabilizer chain; groups small enough for the
//! exhaustive cap additionally carry a full element store, which is what
//! the class/centralizer/subnormalizer machinery runs on. Expensive
//! derived data (classes, Sylow systems, subgroup verdicts) is cached
//! behind the shared handle.

mod chain;
pub mod classes;
pub mod products;
pub mod quotient;
mod store;
pub mod sylow;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

use chain::StabChain;
pub use classes::{ClassTable, ConjugacyClass};
pub use store::{factorize, is_prime_power_of, p_part_of, prime_power_base};
pub(crate) use store::{ensure_prime, ScanSpace, Store, SubgroupRef};
pub use sylow::SylowSystem;

/// Outcome of the solvability/nilpotency tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    pub is_solvable: bool,
    pub is_nilpotent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct StructVerdict {
    pub nilpotent: bool,
    pub solvable: bool,
}

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    order: u64,
    caps: Caps,
    store: Option<Store>,
    chain: Option<StabChain>,
    factors: OnceLock<Vec<(u64, u32)>>,
    classes: OnceLock<Arc<ClassTable>>,
    sylow: Mutex<HashMap<u64, Arc<SylowSystem>>>,
    struct_memo: Mutex<HashMap<SubgroupRef, StructVerdict>>,
}

/// A finite permutation group. Cheap to clone (shared handle).
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree={}, order={})", self.degree(), self.order())
    }
}

impl Group {
    /// Builds a group from generators, computing the exact order.
    ///
    /// The element store is materialized iff the order is within the
    /// exhaustive cap; orders beyond the hard cap are refused.
    pub fn from_generators(gens: Vec<Permutation>, caps: &Caps) -> Result<Group> {
        let Some(first) = gens.first() else {
            return Err(Error::EmptyGenerators);
        };
        let degree = first.degree();
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut generators: Vec<Permutation> =
            gens.into_iter().filter(|g| !g.is_identity()).collect();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        let chain = StabChain::new(degree, &generators);
        let order = chain.order();
        if order > caps.max_order as u128 {
            return Err(Error::GroupTooLarge {
                order,
                cap: caps.max_order,
            });
        }
        let order = order as u64;
        let store = if order <= caps.max_exhaustive {
            let store = Store::enumerate(degree, &generators);
            // two independent routes to the order must agree
            assert_eq!(
                store.len() as u64,
                order,
                "closure enumeration disagrees with the stabilizer chain"
            );
            Some(store)
        } else {
            None
        };
        Ok(Group {
            inner: Arc::new(Inner {
                degree,
                generators,
                order,
                caps: *caps,
                store,
                chain: Some(chain),
                factors: OnceLock::new(),
                classes: OnceLock::new(),
                sylow: Mutex::new(HashMap::new()),
                struct_memo: Mutex::new(HashMap::new()),
            }),
        })
    }

    /// Wraps a sorted element list that is already closed under the group
    /// operations (centralizers, Sylow subgroups, cores, …).
    pub(crate) fn from_sorted_elements(
        degree: usize,
        elems: Vec<Permutation>,
        caps: &Caps,
    ) -> Group {
        debug_assert!(!elems.is_empty());
        let store = Store::from_sorted_elements(degree, elems);
        let mut space = ScanSpace::new(&store);
        let members: Vec<u32> = (0..store.len() as u32).collect();
        let gen_indices = store.small_generating_set(&members, &mut space);
        let generators: Vec<Permutation> =
            gen_indices.iter().map(|&i| store.perm(i).clone()).collect();
        let order = store.len() as u64;
        Group {
            inner: Arc::new(Inner {
                degree,
                generators,
                order,
                caps: *caps,
                store: Some(store),
                chain: None,
                factors: OnceLock::new(),
                classes: OnceLock::new(),
                sylow: Mutex::new(HashMap::new()),
                struct_memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn trivial(degree: usize, caps: &Caps) -> Group {
        Group::from_generators(vec![Permutation::identity(degree)], caps)
            .expect("trivial group is always buildable")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub(crate) fn caps(&self) -> &Caps {
        &self.inner.caps
    }

    /// Identity test: same group of elements, regardless of how either
    /// side was generated.
    pub fn same_group_as(&self, other: &Group) -> bool {
        self.degree() == other.degree()
            && self.order() == other.order()
            && other.generators().iter().all(|g| self.contains(g))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree() {
            return false;
        }
        if let Some(store) = &self.inner.store {
            return store.idx(p).is_some();
        }
        self.inner
            .chain
            .as_ref()
            .expect("group has a store or a chain")
            .contains(p)
    }

    pub(crate) fn store(&self) -> Result<&Store> {
        self.inner.store.as_ref().ok_or(Error::StoreRequired {
            order: self.order(),
            cap: self.inner.caps.max_exhaustive,
        })
    }

    pub fn has_element_store(&self) -> bool {
        self.inner.store.is_some()
    }

    /// All elements, sorted by image sequence.
    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(self.store()?.elements())
    }

    pub(crate) fn idx_of(&self, p: &Permutation) -> Result<u32> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: p.degree(),
            });
        }
        self.store()?.idx(p).ok_or(Error::NotAMember)
    }

    pub(crate) fn generator_indices(&self) -> Result<Vec<u32>> {
        let store = self.store()?;
        Ok(self
            .inner
            .generators
            .iter()
            .map(|g| store.idx(g).expect("generators are members"))
            .collect())
    }

    pub fn order_factorization(&self) -> &[(u64, u32)] {
        self.inner.factors.get_or_init(|| factorize(self.order()))
    }

    /// Largest power of p dividing the order.
    pub fn p_part(&self, p: u64) -> u64 {
        p_part_of(self.order(), p)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.order_factorization().iter().map(|&(p, _)| p).collect()
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree() == other.degree()
            && self.order() <= other.order()
            && self.generators().iter().all(|g| other.contains(g))
    }

    /// Whether `self` is a normal subgroup of `other`. Conjugating the
    /// generators of `self` by the generators of `other` suffices.
    pub fn is_normal_in(&self, other: &Group) -> bool {
        if !self.is_subgroup_of(other) {
            return false;
        }
        for g in other.generators() {
            for s in self.generators() {
                let c = s.conjugate_by(g).expect("equal degrees");
                if !self.contains(&c) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every element of `self` commutes with every element of
    /// `other` (i.e. `self` is contained in the centralizer of `other`).
    pub fn is_central_in(&self, other: &Group) -> bool {
        if !self.is_subgroup_of(other) {
            return false;
        }
        for g in other.generators() {
            for s in self.generators() {
                if s.compose(g).expect("equal degrees") != g.compose(s).expect("equal degrees") {
                    return false;
                }
            }
        }
        true
    }

    /// C_G(x): the elements commuting with x.
    pub fn centralizer(&self, x: &Permutation) -> Result<Group> {
        let store = self.store()?;
        if store.idx(x).is_none() {
            return Err(Error::NotAMember);
        }
        let elems: Vec<Permutation> = store
            .elements()
            .iter()
            .filter(|g| {
                g.compose(x).expect("equal degrees") == x.compose(g).expect("equal degrees")
            })
            .cloned()
            .collect();
        Ok(Group::from_sorted_elements(
            self.degree(),
            elems,
            &self.inner.caps,
        ))
    }

    /// N_G(H): the elements whose conjugation fixes H setwise.
    pub fn normalizer(&self, h: &Group) -> Result<Group> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotASubgroup(
                "normalizer argument is not a subgroup".into(),
            ));
        }
        let store = self.store()?;
        let elems: Vec<Permutation> = store
            .elements()
            .iter()
            .filter(|g| {
                h.generators()
                    .iter()
                    .all(|s| h.contains(&s.conjugate_by(g).expect("equal degrees")))
            })
            .cloned()
            .collect();
        Ok(Group::from_sorted_elements(
            self.degree(),
            elems,
            &self.inner.caps,
        ))
    }

    /// Smallest subgroup of `self` containing `xs` and closed under
    /// conjugation by `self`.
    pub fn normal_closure(&self, xs: &[Permutation]) -> Result<Group> {
        let store = self.store()?;
        let mut seed = Vec::with_capacity(xs.len());
        for x in xs {
            seed.push(self.idx_of(x)?);
        }
        let under = self.generator_indices()?;
        let mut space = ScanSpace::new(store);
        let (subgroup, _) = store.normal_closure(&seed, &under, &mut space);
        Ok(self.subgroup_from_ref(subgroup))
    }

    pub(crate) fn subgroup_from_ref(&self, subgroup: SubgroupRef) -> Group {
        match subgroup {
            SubgroupRef::Whole => self.clone(),
            SubgroupRef::Members(members) => {
                let store = self.store().expect("subgroup refs come from the store");
                let elems = members.iter().map(|&i| store.perm(i).clone()).collect();
                Group::from_sorted_elements(self.degree(), elems, &self.inner.caps)
            }
        }
    }

    /// Solvability via the derived series reaching the trivial group.
    pub fn is_solvable(&self) -> Result<bool> {
        let store = self.store()?;
        let gens = self.generator_indices()?;
        let mut space = ScanSpace::new(store);
        Ok(store.solvable_by_derived_series(&gens, store.len(), &mut space))
    }

    /// Nilpotency via every Sylow subgroup being normal (count 1).
    pub fn is_nilpotent(&self) -> Result<bool> {
        for p in self.primes() {
            if self.sylow(p)?.count != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn structure_tests(&self) -> Result<StructureFlags> {
        Ok(StructureFlags {
            is_solvable: self.is_solvable()?,
            is_nilpotent: self.is_nilpotent()?,
        })
    }

    /// Conjugacy classes, ordered by (element order, size, representative).
    pub fn conjugacy_classes(&self) -> Result<Arc<ClassTable>> {
        let store = self.store()?;
        let gens = self.generator_indices()?;
        Ok(self
            .inner
            .classes
            .get_or_init(|| Arc::new(ClassTable::build(store, &gens)))
            .clone())
    }

    /// The Sylow p-system: one Sylow subgroup, its conjugates, the count
    /// and the normalizer order.
    pub fn sylow(&self, p: u64) -> Result<Arc<SylowSystem>> {
        if let Some(sys) = self.inner.sylow.lock().unwrap().get(&p) {
            return Ok(sys.clone());
        }
        let sys = Arc::new(SylowSystem::build(self, p)?);
        self.inner
            .sylow
            .lock()
            .unwrap()
            .entry(p)
            .or_insert(sys.clone());
        Ok(sys)
    }

    /// O_p(G): the intersection of all Sylow p-subgroups.
    pub fn p_core(&self, p: u64) -> Result<Group> {
        let sys = self.sylow(p)?;
        let store = self.store()?;
        let mut core = sys.sets[0].clone();
        for set in sys.sets.iter().skip(1) {
            core.retain(|i| set.binary_search(i).is_ok());
            if core.len() == 1 {
                break;
            }
        }
        let elems = core.iter().map(|&i| store.perm(i).clone()).collect();
        Ok(Group::from_sorted_elements(
            self.degree(),
            elems,
            &self.inner.caps,
        ))
    }

    /// Memoized nilpotency/solvability verdict for a subgroup of this
    /// group, identified by its member set and a generating set.
    pub(crate) fn struct_verdict(
        &self,
        subgroup: &SubgroupRef,
        gens: &[u32],
        space: &mut ScanSpace,
    ) -> StructVerdict {
        if let Some(v) = self.inner.struct_memo.lock().unwrap().get(subgroup) {
            return *v;
        }
        let store = self.store().expect("subgroup refs come from the store");
        let nilpotent = store.nilpotent_by_counts(subgroup);
        let solvable = nilpotent
            || store.solvable_by_derived_series(gens, subgroup.len(store), space);
        let verdict = StructVerdict {
            nilpotent,
            solvable,
        };
        self.inner
            .struct_memo
            .lock()
            .unwrap()
            .insert(subgroup.clone(), verdict);
        verdict
    }
}
