//! Sylow p-subgroups: construction, the conjugation orbit, counts.

use std::collections::HashSet;

use crate::error::Result;

use super::store::{is_prime_power_of, ScanSpace, SubgroupRef};
use super::Group;

/// A Sylow p-subgroup together with its full conjugation orbit.
///
/// `count` is n_p(G) = [G : N_G(P)]; it is ≡ 1 (mod p) and
/// `normalizer_order` = |G| / count.
pub struct SylowSystem {
    pub prime: u64,
    pub p_part: u64,
    pub count: u64,
    pub normalizer_order: u64,
    pub one_sylow: Group,
    /// Sorted element-index sets, one per conjugate; sets[0] is `one_sylow`.
    pub(crate) sets: Vec<Vec<u32>>,
}

impl SylowSystem {
    /// Index set of the distinguished first Sylow subgroup (`one_sylow`).
    pub(crate) fn fixed_sylow_indices(&self) -> &[u32] {
        &self.sets[0]
    }

    /// Number of Sylow p-subgroups containing the element (λ_G(x)).
    pub(crate) fn lambda(&self, elem_idx: u32) -> u64 {
        self.sets
            .iter()
            .filter(|s| s.binary_search(&elem_idx).is_ok())
            .count() as u64
    }

    pub(crate) fn build(group: &Group, p: u64) -> Result<SylowSystem> {
        super::ensure_prime(p)?;
        let store = group.store()?;
        let order = group.order();
        let p_part = group.p_part(p);
        if p_part == 1 {
            // p does not divide |G|: the trivial-subgroup system
            let id = store.identity();
            return Ok(SylowSystem {
                prime: p,
                p_part,
                count: 1,
                normalizer_order: order,
                one_sylow: group.subgroup_from_ref(SubgroupRef::Members(vec![id])),
                sets: vec![vec![id]],
            });
        }
        let mut space = ScanSpace::new(store);

        // Grow a p-subgroup: starting from the least p-element, repeatedly
        // adjoin the least p-element of N_G(P) \ P until the full p-part
        // is reached.
        let first = (0..store.len() as u32)
            .find(|&i| {
                let o = store.order_of(i);
                o > 1 && is_prime_power_of(o, p)
            })
            .expect("Cauchy: a p-element exists when p divides the order");
        let mut gens = vec![first];
        let mut current = members_of(store, store.closure(&gens, &mut space));
        while (current.len() as u64) < p_part {
            let next = (0..store.len() as u32)
                .find(|&y| {
                    let o = store.order_of(y);
                    o > 1
                        && is_prime_power_of(o, p)
                        && current.binary_search(&y).is_err()
                        && gens.iter().all(|&s| {
                            current
                                .binary_search(&store.conj(s, y, &mut space))
                                .is_ok()
                        })
                })
                .expect("a p-subgroup below the p-part has p-elements in its normalizer");
            gens.push(next);
            current = members_of(store, store.closure(&gens, &mut space));
        }
        debug_assert_eq!(current.len() as u64, p_part);

        // Conjugation orbit of the Sylow set under the group generators.
        let gen_indices = group.generator_indices()?;
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(current.clone());
        let mut sets = vec![current];
        let mut qi = 0;
        while qi < sets.len() {
            let base = sets[qi].clone();
            qi += 1;
            for &g in &gen_indices {
                let mut image: Vec<u32> =
                    base.iter().map(|&m| store.conj(m, g, &mut space)).collect();
                image.sort_unstable();
                if !seen.contains(&image) {
                    seen.insert(image.clone());
                    sets.push(image);
                }
            }
        }
        let count = sets.len() as u64;
        assert_eq!(order % count, 0, "Sylow count divides the order");
        let one_sylow = group.subgroup_from_ref(SubgroupRef::Members(sets[0].clone()));
        Ok(SylowSystem {
            prime: p,
            p_part,
            count,
            normalizer_order: order / count,
            one_sylow,
            sets,
        })
    }
}

fn members_of(store: &super::store::Store, subgroup: SubgroupRef) -> Vec<u32> {
    match subgroup {
        SubgroupRef::Whole => (0..store.len() as u32).collect(),
        SubgroupRef::Members(m) => m,
    }
}
