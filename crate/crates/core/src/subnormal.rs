//! Wielandt subnormalizers: brute-force computation of
//! S_G(x) = { g ∈ G | ⟨x⟩ is subnormal in ⟨x,g⟩ }, the λ·|N_G(P)| and
//! α·|C_G(x)| closed forms for p-elements, and their cross-verification.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{prime_power_base, Group, ScanSpace, SubgroupRef};
use crate::perm::Permutation;

/// One element's subnormalizer data with the closed-form cross-checks.
///
/// For a p-element x, `identities_hold` records whether the brute-force
/// order equals both λ_G(x)·|N_G(P)| and α_G(x)·|C_G(x)|.
#[derive(Debug, Clone)]
pub struct SubnormalizerReport {
    pub x: Permutation,
    pub prime: u64,
    pub subnormalizer_order_bruteforce: u64,
    /// Number of Sylow p-subgroups containing x.
    pub lambda: u64,
    /// Number of G-conjugates of x inside one fixed Sylow p-subgroup.
    pub alpha: u64,
    pub n_p: u64,
    pub normalizer_order: u64,
    pub centralizer_order: u64,
    pub identities_hold: bool,
}

/// Whether ⟨x⟩ is subnormal in H, by the descending normal-closure chain
/// K₀ = H, K_{i+1} = ⟨x⟩^{K_i}, which stabilizes at ⟨x⟩ iff x is
/// subnormal. The chain strictly decreases, so it takes at most
/// log₂|H| steps.
pub fn is_subnormal(x: &Permutation, h: &Group) -> Result<bool> {
    let store = h.store()?;
    let x_idx = h.idx_of(x)?;
    let gens = h.generator_indices()?;
    let mut space = ScanSpace::new(store);
    let (subnormal, _steps) = store.subnormal_chain(x_idx, &gens, store.len(), &mut space);
    Ok(subnormal)
}

/// Subnormality with the chain length, for the monotone-chain property
/// tests.
pub fn subnormal_chain_length(x: &Permutation, h: &Group) -> Result<(bool, usize)> {
    let store = h.store()?;
    let x_idx = h.idx_of(x)?;
    let gens = h.generator_indices()?;
    let mut space = ScanSpace::new(store);
    Ok(store.subnormal_chain(x_idx, &gens, store.len(), &mut space))
}

/// Per-element verdicts of one subnormalizer scan, indexed like the
/// element store.
pub(crate) struct SubnormalizerScan {
    pub verdicts: Vec<bool>,
    pub size: u64,
}

/// The g-loop for S_G(x), on store indices.
///
/// Three exact shortcuts keep this viable at catalog scale:
/// - the verdict only depends on K = ⟨x,g⟩, and K is constant on the
///   double coset ⟨x⟩g⟨x⟩, so each double coset is decided once;
/// - if ⟨x⟩ ⊴⊴ K then ⟨x⟩ ⊴⊴ ⟨x,k⟩ for every k ∈ K (subnormality
///   passes to intermediate subgroups), so all of K is marked positive;
/// - closures that exceed half the group are the whole group, whose
///   verdict is computed once.
pub(crate) fn subnormalizer_scan(g: &Group, x_idx: u32) -> Result<SubnormalizerScan> {
    let store = g.store()?;
    let mut space = ScanSpace::new(store);
    let n = store.len();
    let mut verdicts: Vec<Option<bool>> = vec![None; n];

    // powers of x, for double-coset marking
    let x_order = store.order_of(x_idx) as usize;
    let mut x_pows = Vec::with_capacity(x_order);
    let mut acc = store.identity();
    for _ in 0..x_order {
        x_pows.push(acc);
        acc = store.mul(acc, x_idx, &mut space);
    }

    let whole_gens = g.generator_indices()?;
    let mut whole_verdict: Option<bool> = None;
    let mut memo: HashMap<Vec<u32>, bool> = HashMap::new();
    let mut marked = 0usize;

    for e in 0..n as u32 {
        if verdicts[e as usize].is_some() {
            continue;
        }
        let k = store.closure(&[x_idx, e], &mut space);
        let subnormal = match &k {
            SubgroupRef::Whole => *whole_verdict.get_or_insert_with(|| {
                store.subnormal_chain(x_idx, &whole_gens, n, &mut space).0
            }),
            SubgroupRef::Members(members) => match memo.get(members) {
                Some(&v) => v,
                None => {
                    let v = store
                        .subnormal_chain(x_idx, &[x_idx, e], members.len(), &mut space)
                        .0;
                    memo.insert(members.clone(), v);
                    v
                }
            },
        };
        if subnormal {
            // every element of K is in S_G(x)
            for m in k.members(store) {
                if verdicts[m as usize].is_none() {
                    verdicts[m as usize] = Some(true);
                    marked += 1;
                }
            }
        } else {
            // the verdict is shared across the double coset <x> e <x>
            for &pi in &x_pows {
                let left = store.mul(pi, e, &mut space);
                for &pj in &x_pows {
                    let m = store.mul(left, pj, &mut space);
                    if verdicts[m as usize].is_none() {
                        verdicts[m as usize] = Some(false);
                        marked += 1;
                    }
                }
            }
        }
        if marked == n {
            break;
        }
    }

    let verdicts: Vec<bool> = verdicts
        .into_iter()
        .map(|v| v.expect("scan covers every element"))
        .collect();
    let size = verdicts.iter().filter(|&&v| v).count() as u64;
    Ok(SubnormalizerScan { verdicts, size })
}

/// S_G(x) by brute force: the set of g with ⟨x⟩ ⊴⊴ ⟨x,g⟩. This is a
/// plain element set; it need not be a subgroup.
pub fn subnormalizer_bruteforce(g: &Group, x: &Permutation) -> Result<Vec<Permutation>> {
    let x_idx = g.idx_of(x)?;
    let scan = subnormalizer_scan(g, x_idx)?;
    let elems = g.elements()?;
    Ok(scan
        .verdicts
        .iter()
        .enumerate()
        .filter(|(_, &v)| v)
        .map(|(i, _)| elems[i].clone())
        .collect())
}

/// |S_G(x)| without the g-loop when |x| is a prime power: λ_G(x)·|N_G(P)|.
/// Elements of composite order fall back to the brute-force scan.
pub fn subnormalizer_order_fast(g: &Group, x: &Permutation) -> Result<u64> {
    let x_idx = g.idx_of(x)?;
    fast_order_idx(g, x_idx)
}

pub(crate) fn fast_order_idx(g: &Group, x_idx: u32) -> Result<u64> {
    let store = g.store()?;
    let order = store.order_of(x_idx);
    if order == 1 {
        return Ok(g.order());
    }
    match prime_power_base(order) {
        Some(p) => {
            let sylow = g.sylow(p)?;
            Ok(sylow.lambda(x_idx) * sylow.normalizer_order)
        }
        None => Ok(subnormalizer_scan(g, x_idx)?.size),
    }
}

/// Full report for a p-element: brute-force order, λ, α, and whether the
/// two closed forms agree with the brute force.
pub fn casolo_report(g: &Group, x: &Permutation, p: u64) -> Result<SubnormalizerReport> {
    crate::group::ensure_prime(p)?;
    let x_idx = g.idx_of(x)?;
    let store = g.store()?;
    let order = store.order_of(x_idx);
    if !crate::group::is_prime_power_of(order, p) {
        return Err(Error::NotPElement {
            element_order: order,
            prime: p,
        });
    }
    let sylow = g.sylow(p)?;
    let classes = g.conjugacy_classes()?;
    let class = &classes.classes[classes.class_index_of(x_idx)];
    // conjugates of x inside the fixed first Sylow subgroup
    let fixed = sylow.fixed_sylow_indices();
    let alpha = class
        .members
        .iter()
        .filter(|m| fixed.binary_search(m).is_ok())
        .count() as u64;
    let brute = subnormalizer_scan(g, x_idx)?.size;
    let lambda = sylow.lambda(x_idx);
    let identities_hold =
        brute == lambda * sylow.normalizer_order && brute == alpha * class.centralizer_order;
    Ok(SubnormalizerReport {
        x: x.clone(),
        prime: p,
        subnormalizer_order_bruteforce: brute,
        lambda,
        alpha,
        n_p: sylow.count,
        normalizer_order: sylow.normalizer_order,
        centralizer_order: class.centralizer_order,
        identities_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::group::tests::{a5, cyc, s4};

    /// Unoptimized oracle: per-g closure plus chain, no shortcuts. Uses
    /// only the public permutation API.
    fn subnormalizer_oracle(g: &Group, x: &Permutation) -> Vec<Permutation> {
        let mut out = Vec::new();
        for e in g.elements().unwrap() {
            let k = Group::from_generators(vec![x.clone(), e.clone()], g.caps()).unwrap();
            let mut current = k;
            let subnormal = loop {
                let next = current.normal_closure(std::slice::from_ref(x)).unwrap();
                if next.order() == current.order() {
                    break current.order() == x.order();
                }
                current = next;
            };
            if subnormal {
                out.push(e.clone());
            }
        }
        out
    }

    #[test]
    fn subnormal_in_nilpotent_groups() {
        let d4 = Group::from_generators(
            vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])],
            &Caps::default(),
        )
        .unwrap();
        for x in d4.elements().unwrap() {
            assert!(is_subnormal(x, &d4).unwrap());
        }
    }

    #[test]
    fn three_cycle_not_subnormal_in_a5() {
        let g = a5();
        assert!(!is_subnormal(&cyc(5, &[&[0, 1, 2]]), &g).unwrap());
        // but x is subnormal in its own cyclic subgroup
        let c3 = Group::from_generators(vec![cyc(5, &[&[0, 1, 2]])], &Caps::default()).unwrap();
        assert!(is_subnormal(&cyc(5, &[&[0, 1, 2]]), &c3).unwrap());
        // membership precondition
        assert_eq!(
            is_subnormal(&cyc(5, &[&[0, 1]]), &g).unwrap_err(),
            Error::NotAMember
        );
    }

    #[test]
    fn a5_subnormalizer_sizes() {
        let g = a5();
        let s3 = subnormalizer_bruteforce(&g, &cyc(5, &[&[0, 1, 2]])).unwrap();
        assert_eq!(s3.len(), 6);
        let s2 = subnormalizer_bruteforce(&g, &cyc(5, &[&[0, 1], &[2, 3]])).unwrap();
        assert_eq!(s2.len(), 12);
        let s5 = subnormalizer_bruteforce(&g, &cyc(5, &[&[0, 1, 2, 3, 4]])).unwrap();
        assert_eq!(s5.len(), 10);
        let sid = subnormalizer_bruteforce(&g, &Permutation::identity(5)).unwrap();
        assert_eq!(sid.len(), 60);
    }

    #[test]
    fn subnormalizer_contains_centralizer_and_cyclic_subgroup() {
        let g = a5();
        let x = cyc(5, &[&[0, 1, 2]]);
        let s: Vec<Permutation> = subnormalizer_bruteforce(&g, &x).unwrap();
        let c = g.centralizer(&x).unwrap();
        for e in c.elements().unwrap() {
            assert!(s.contains(e));
        }
        assert!(s.contains(&x.pow(2)));
    }

    #[test]
    fn scan_matches_unoptimized_oracle_on_s4_everywhere() {
        let g = s4();
        for x in g.elements().unwrap() {
            let fast = subnormalizer_bruteforce(&g, x).unwrap();
            let slow = subnormalizer_oracle(&g, x);
            assert_eq!(fast, slow, "S_S4({})", x);
            assert_eq!(fast.len() as u64, subnormalizer_order_fast(&g, x).unwrap());
        }
    }

    #[test]
    fn scan_matches_unoptimized_oracle_on_a5_class_reps() {
        let g = a5();
        let table = g.conjugacy_classes().unwrap();
        for class in &table.classes {
            let x = &class.representative;
            let fast = subnormalizer_bruteforce(&g, x).unwrap();
            let slow = subnormalizer_oracle(&g, x);
            assert_eq!(fast, slow, "S_A5({})", x);
        }
    }

    #[test]
    fn casolo_report_for_a5_three_cycle() {
        let g = a5();
        let r = casolo_report(&g, &cyc(5, &[&[0, 1, 2]]), 3).unwrap();
        assert_eq!(r.lambda, 1);
        assert_eq!(r.alpha, 2);
        assert_eq!(r.centralizer_order, 3);
        assert_eq!(r.n_p, 10);
        assert_eq!(r.subnormalizer_order_bruteforce, 6);
        assert!(r.identities_hold);
    }

    #[test]
    fn casolo_report_for_a5_involution() {
        let g = a5();
        let r = casolo_report(&g, &cyc(5, &[&[0, 1], &[2, 3]]), 2).unwrap();
        assert_eq!(r.lambda, 1);
        assert_eq!(r.n_p, 5);
        assert_eq!(r.normalizer_order, 12);
        assert_eq!(r.subnormalizer_order_bruteforce, 12);
        assert!(r.identities_hold);
    }

    #[test]
    fn casolo_report_in_a_p_group() {
        let d4 = Group::from_generators(
            vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])],
            &Caps::default(),
        )
        .unwrap();
        for x in d4.elements().unwrap() {
            let r = casolo_report(&d4, x, 2).unwrap();
            assert_eq!(r.lambda, 1);
            assert_eq!(r.n_p, 1);
            assert_eq!(r.subnormalizer_order_bruteforce, 8);
            assert!(r.identities_hold);
        }
    }

    #[test]
    fn non_p_element_is_rejected() {
        let g = s4();
        let err = casolo_report(&g, &cyc(4, &[&[0, 1], &[2, 3]]), 3).unwrap_err();
        assert_eq!(
            err,
            Error::NotPElement {
                element_order: 2,
                prime: 3
            }
        );
    }

    #[test]
    fn subnormalizer_size_is_class_invariant() {
        let g = s4();
        let table = g.conjugacy_classes().unwrap();
        for class in &table.classes {
            let expected = subnormalizer_bruteforce(&g, &class.representative)
                .unwrap()
                .len();
            for e in g.elements().unwrap() {
                let conj = class.representative.conjugate_by(e).unwrap();
                let size = subnormalizer_bruteforce(&g, &conj).unwrap().len();
                assert_eq!(size, expected);
            }
        }
    }

    #[test]
    fn chain_length_respects_log_bound() {
        for g in [a5(), s4()] {
            for x in g.elements().unwrap() {
                let (_, steps) = subnormal_chain_length(x, &g).unwrap();
                let log2 = 64 - u64::leading_zeros(g.order()) as usize;
                assert!(steps <= log2, "chain length {} in {:?}", steps, g);
            }
        }
    }
}
