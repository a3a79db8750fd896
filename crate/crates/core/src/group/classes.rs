//! Conjugacy class enumeration over the element store.

use crate::perm::Permutation;

use super::store::{ScanSpace, Store};

/// One conjugacy class. The representative is the lexicographically least
/// member; size × centralizer order equals the group order.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub element_order: u64,
    pub size: u64,
    pub centralizer_order: u64,
    pub(crate) members: Vec<u32>,
    pub(crate) rep_idx: u32,
}

/// All conjugacy classes, ordered by (element order, size, representative),
/// plus the element → class map.
#[derive(Debug)]
pub struct ClassTable {
    pub classes: Vec<ConjugacyClass>,
    pub(crate) class_of: Vec<u32>,
}

impl ClassTable {
    pub(crate) fn build(store: &Store, gen_indices: &[u32]) -> ClassTable {
        let n = store.len();
        let mut space = ScanSpace::new(store);
        let mut assigned = vec![false; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if assigned[start as usize] {
                continue;
            }
            // orbit of `start` under conjugation by the generators
            let mut members = vec![start];
            assigned[start as usize] = true;
            let mut qi = 0;
            while qi < members.len() {
                let m = members[qi];
                qi += 1;
                for &g in gen_indices {
                    let c = store.conj(m, g, &mut space);
                    if !assigned[c as usize] {
                        assigned[c as usize] = true;
                        members.push(c);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        raw.sort_by_key(|members| {
            (
                store.order_of(members[0]),
                members.len(),
                store.perm(members[0]).clone(),
            )
        });
        let mut class_of = vec![0u32; n];
        let mut classes = Vec::with_capacity(raw.len());
        for (ci, members) in raw.into_iter().enumerate() {
            for &m in &members {
                class_of[m as usize] = ci as u32;
            }
            let rep_idx = members[0];
            classes.push(ConjugacyClass {
                representative: store.perm(rep_idx).clone(),
                element_order: store.order_of(rep_idx),
                size: members.len() as u64,
                centralizer_order: n as u64 / members.len() as u64,
                members,
                rep_idx,
            });
        }
        ClassTable { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub(crate) fn class_index_of(&self, elem_idx: u32) -> usize {
        self.class_of[elem_idx as usize] as usize
    }

    /// Multiset of class sizes, ascending.
    pub fn size_multiset(&self) -> Vec<u64> {
        let mut sizes: Vec<u64> = self.classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        sizes
    }
}
