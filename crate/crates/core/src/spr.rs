//! The subnormalizer probability spr(G), fixed-point ratios, the
//! nilpotent/solvable pair degrees, and the monotonicity/quotient
//! checks that tie them together. Everything is exact.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::products::power_wreath;
use crate::group::{p_part_of, prime_power_base, Group, ScanSpace, SubgroupRef};
use crate::perm::Permutation;
use crate::ratio::ExactRatio;
use crate::subnormal;

/// Per-class row of an spr report.
#[derive(Debug, Clone)]
pub struct SprClassRow {
    pub representative: Permutation,
    pub element_order: u64,
    pub class_size: u64,
    pub spr: ExactRatio,
}

/// spr(G) with its class decomposition, and the pair degrees when the
/// pair enumeration ran.
#[derive(Debug, Clone)]
pub struct SprReport {
    pub group_order: u64,
    pub rows: Vec<SprClassRow>,
    pub spr_total: ExactRatio,
    /// Probability that a random pair generates a nilpotent subgroup.
    pub dn: Option<ExactRatio>,
    /// Probability that a random pair generates a solvable subgroup.
    pub ds: Option<ExactRatio>,
}

/// Whether spr_report should run the quadratic pair enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPolicy {
    Skip,
    /// Run it iff the order is within the pair cap.
    WithinCap,
    /// Run it, failing if the order exceeds the pair cap.
    Require,
}

/// spr_G(x) = |S_G(x)| / |G|.
pub fn spr_element(g: &Group, x: &Permutation) -> Result<ExactRatio> {
    let size = subnormal::subnormalizer_order_fast(g, x)?;
    Ok(ExactRatio::from_counts(size, g.order()))
}

/// spr(G) summed over conjugacy classes, weighted by class size.
pub fn spr_report(g: &Group, pairs: PairPolicy) -> Result<SprReport> {
    let table = g.conjugacy_classes()?;
    let order = g.order();
    let rows: Vec<Result<SprClassRow>> = table
        .classes
        .par_iter()
        .map(|class| {
            let size = subnormal::fast_order_idx(g, class.rep_idx)?;
            Ok(SprClassRow {
                representative: class.representative.clone(),
                element_order: class.element_order,
                class_size: class.size,
                spr: ExactRatio::from_counts(size, order),
            })
        })
        .collect();
    let rows: Vec<SprClassRow> = rows.into_iter().collect::<Result<_>>()?;
    let spr_total = rows
        .iter()
        .map(|row| ExactRatio::from_counts(row.class_size, order) * row.spr.clone())
        .sum();
    let (dn, ds) = match pairs {
        PairPolicy::Skip => (None, None),
        PairPolicy::WithinCap if order > g.caps().max_pair => (None, None),
        PairPolicy::Require if order > g.caps().max_pair => {
            return Err(Error::PairCapExceeded {
                order,
                cap: g.caps().max_pair,
            });
        }
        _ => {
            let scan = pair_scan(g)?;
            // the scan recounts |S_G(x)| pair by pair; it must agree with
            // the class decomposition above
            assert_eq!(
                scan.spr, spr_total,
                "pair enumeration disagrees with the Casolo fast path"
            );
            (Some(scan.dn), Some(scan.ds))
        }
    };
    Ok(SprReport {
        group_order: order,
        rows,
        spr_total,
        dn,
        ds,
    })
}

/// Exhaustive pair enumeration over (class representative x, element y).
#[derive(Debug, Clone)]
pub struct PairScan {
    pub dn: ExactRatio,
    pub spr: ExactRatio,
    pub ds: ExactRatio,
    /// Pairs where ⟨x,y⟩ nilpotent failed to imply ⟨x⟩ ⊴⊴ ⟨x,y⟩, or
    /// subnormality failed to imply solvability. Expected empty.
    pub implication_violations: Vec<String>,
}

struct RepScan {
    nilpotent: u64,
    subnormal: u64,
    solvable: u64,
    violations: Vec<String>,
}

/// For every pair (class rep x, y ∈ G): tests ⟨x,y⟩ nilpotent,
/// ⟨x⟩ ⊴⊴ ⟨x,y⟩, and ⟨x,y⟩ solvable, checking the implication chain
/// nilpotent ⇒ subnormal ⇒ solvable, and accumulating the three pair
/// degrees dn ≤ spr ≤ ds (class-size weighted).
pub fn pair_scan(g: &Group) -> Result<PairScan> {
    let order = g.order();
    if order > g.caps().max_pair {
        return Err(Error::PairCapExceeded {
            order,
            cap: g.caps().max_pair,
        });
    }
    let table = g.conjugacy_classes()?;
    let per_rep: Vec<Result<RepScan>> = table
        .classes
        .par_iter()
        .map(|class| scan_one_rep(g, class.rep_idx))
        .collect();
    let mut dn_num: u128 = 0;
    let mut spr_num: u128 = 0;
    let mut ds_num: u128 = 0;
    let mut violations = Vec::new();
    for (class, rep) in table.classes.iter().zip(per_rep) {
        let rep = rep?;
        dn_num += class.size as u128 * rep.nilpotent as u128;
        spr_num += class.size as u128 * rep.subnormal as u128;
        ds_num += class.size as u128 * rep.solvable as u128;
        violations.extend(rep.violations);
    }
    let denom = order as u128 * order as u128;
    let as_ratio = |num: u128| ExactRatio::new(num as i128, denom as i128);
    Ok(PairScan {
        dn: as_ratio(dn_num),
        spr: as_ratio(spr_num),
        ds: as_ratio(ds_num),
        implication_violations: violations,
    })
}

fn scan_one_rep(g: &Group, x_idx: u32) -> Result<RepScan> {
    let store = g.store()?;
    let n = store.len();
    if store.order_of(x_idx) == 1 {
        // ⟨1,y⟩ = ⟨y⟩ is cyclic: nilpotent, subnormal, solvable for all y
        return Ok(RepScan {
            nilpotent: n as u64,
            subnormal: n as u64,
            solvable: n as u64,
            violations: Vec::new(),
        });
    }
    let mut space = ScanSpace::new(store);
    let x_order = store.order_of(x_idx) as usize;
    let mut x_pows = Vec::with_capacity(x_order);
    let mut acc = store.identity();
    for _ in 0..x_order {
        x_pows.push(acc);
        acc = store.mul(acc, x_idx, &mut space);
    }
    let whole_gens = g.generator_indices()?;
    let mut subn_memo: std::collections::HashMap<SubgroupRef, bool> =
        std::collections::HashMap::new();
    let mut verdicts: Vec<Option<(bool, bool, bool)>> = vec![None; n];
    let mut marked = 0usize;

    for e in 0..n as u32 {
        if verdicts[e as usize].is_some() {
            continue;
        }
        let k = store.closure(&[x_idx, e], &mut space);
        let k_size = k.len(store);
        let structure = g.struct_verdict(&k, &[x_idx, e], &mut space);
        let pair_gens = [x_idx, e];
        let subn = match subn_memo.get(&k) {
            Some(&v) => v,
            None => {
                let gens: &[u32] = match &k {
                    SubgroupRef::Whole => &whole_gens,
                    SubgroupRef::Members(_) => &pair_gens,
                };
                let v = store.subnormal_chain(x_idx, gens, k_size, &mut space).0;
                subn_memo.insert(k.clone(), v);
                v
            }
        };
        let triple = (structure.nilpotent, subn, structure.solvable);
        // the verdict depends only on K = ⟨x,y⟩, which is constant on
        // the double coset ⟨x⟩ e ⟨x⟩
        for &pi in &x_pows {
            let left = store.mul(pi, e, &mut space);
            for &pj in &x_pows {
                let m = store.mul(left, pj, &mut space);
                if verdicts[m as usize].is_none() {
                    verdicts[m as usize] = Some(triple);
                    marked += 1;
                }
            }
        }
        if marked == n {
            break;
        }
    }

    let mut nilpotent = 0u64;
    let mut subnormal = 0u64;
    let mut solvable = 0u64;
    let mut violations = Vec::new();
    for (i, v) in verdicts.iter().enumerate() {
        let (nil, subn, solv) = v.expect("scan covers every element");
        nilpotent += nil as u64;
        subnormal += subn as u64;
        solvable += solv as u64;
        if nil && !subn {
            violations.push(format!(
                "nilpotent pair without subnormality: x={}, y={}",
                store.perm(x_idx),
                store.perm(i as u32)
            ));
        }
        if subn && !solv {
            violations.push(format!(
                "subnormal pair without solvability: x={}, y={}",
                store.perm(x_idx),
                store.perm(i as u32)
            ));
        }
    }
    Ok(RepScan {
        nilpotent,
        subnormal,
        solvable,
        violations,
    })
}

/// Fixed-point ratio of x in the transitive action on the cosets of H:
/// |x^G ∩ H| / |x^G|.
pub fn fpr(g: &Group, h: &Group, x: &Permutation) -> Result<ExactRatio> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup(
            "fpr needs a subgroup of the ambient group".into(),
        ));
    }
    let x_idx = g.idx_of(x)?;
    let store = g.store()?;
    let table = g.conjugacy_classes()?;
    let class = &table.classes[table.class_index_of(x_idx)];
    let count = class
        .members
        .iter()
        .filter(|&&m| h.contains(store.perm(m)))
        .count() as u64;
    Ok(ExactRatio::from_counts(count, class.size))
}

/// A failure of the p-core criterion: spr_G(x) > 1/(p^k+1) without
/// x^{p^{k-1}} landing in O_p(G).
#[derive(Debug, Clone)]
pub struct OpViolation {
    pub representative: Permutation,
    pub prime: u64,
    pub k: u32,
    pub spr: ExactRatio,
    pub threshold: ExactRatio,
}

/// For every class representative of prime-power order p^r and every
/// 1 ≤ k ≤ r: if spr_G(x) > 1/(p^k+1) then x^{p^{k-1}} must lie in
/// O_p(G). Returns the violations (expected empty).
pub fn check_op_criterion(g: &Group) -> Result<Vec<OpViolation>> {
    let table = g.conjugacy_classes()?;
    let mut violations = Vec::new();
    let mut cores: std::collections::HashMap<u64, Group> = std::collections::HashMap::new();
    for class in &table.classes {
        let order = class.element_order;
        if order == 1 {
            continue;
        }
        let Some(p) = prime_power_base(order) else {
            continue;
        };
        let r = order.ilog(p);
        let spr = spr_element(g, &class.representative)?;
        for k in 1..=r {
            let threshold = ExactRatio::from_counts(1, p.pow(k) + 1);
            if spr > threshold {
                if let std::collections::hash_map::Entry::Vacant(e) = cores.entry(p) {
                    e.insert(g.p_core(p)?);
                }
                let core = &cores[&p];
                let power = class.representative.pow(p.pow(k - 1) as i64);
                if !core.contains(&power) {
                    violations.push(OpViolation {
                        representative: class.representative.clone(),
                        prime: p,
                        k,
                        spr: spr.clone(),
                        threshold,
                    });
                }
            }
        }
    }
    Ok(violations)
}

/// Outcome of the subgroup-monotonicity check spr_G(x) ≤ spr_H(x).
#[derive(Debug, Clone)]
pub struct MonotonicityVerdict {
    pub pairs_checked: usize,
    pub h_is_normal: bool,
    /// p-elements with spr_G(x) > spr_H(x). Expected empty.
    pub violations: Vec<String>,
    /// When H is normal: p-elements with spr_G(x) ≠ spr_H(x). Expected empty.
    pub equality_failures: Vec<String>,
}

/// Checks spr_G(x) ≤ spr_H(x) for every prime-power-order class
/// representative x of H ≤ G, with equality required when H ⊴ G.
pub fn check_monotonicity(g: &Group, h: &Group) -> Result<MonotonicityVerdict> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup(
            "monotonicity check needs H ≤ G".into(),
        ));
    }
    let h_is_normal = h.is_normal_in(g);
    let table = h.conjugacy_classes()?;
    let mut verdict = MonotonicityVerdict {
        pairs_checked: 0,
        h_is_normal,
        violations: Vec::new(),
        equality_failures: Vec::new(),
    };
    for class in &table.classes {
        if prime_power_base(class.element_order).is_none() && class.element_order != 1 {
            continue;
        }
        let x = &class.representative;
        let spr_g = spr_element(g, x)?;
        let spr_h = spr_element(h, x)?;
        verdict.pairs_checked += 1;
        if spr_g > spr_h {
            verdict
                .violations
                .push(format!("spr_G({x}) = {spr_g} > spr_H({x}) = {spr_h}"));
        }
        if h_is_normal && spr_g != spr_h {
            verdict
                .equality_failures
                .push(format!("spr_G({x}) = {spr_g} ≠ spr_H({x}) = {spr_h}"));
        }
    }
    Ok(verdict)
}

/// Outcome of the quotient checks for a normal subgroup N ⊴ G.
#[derive(Debug, Clone)]
pub struct QuotientLemmaVerdict {
    pub spr_group: ExactRatio,
    pub spr_quotient: ExactRatio,
    /// spr(G/N) ≥ spr(G).
    pub quotient_dominates: bool,
    pub n_is_central: bool,
    /// When N is central: p-elements with spr_G(x) ≠ spr_{G/N}(xN).
    /// Expected empty.
    pub central_equality_failures: Vec<String>,
}

/// Verifies spr(G/N) ≥ spr(G), and the per-p-element equality
/// spr_G(x) = spr_{G/N}(xN) when N is central.
pub fn check_quotient_lemmas(g: &Group, n: &Group) -> Result<QuotientLemmaVerdict> {
    let action = g.quotient_action(n)?;
    let spr_group = spr_report(g, PairPolicy::Skip)?.spr_total;
    let spr_quotient = spr_report(&action.group, PairPolicy::Skip)?.spr_total;
    let n_is_central = n.is_central_in(g);
    let mut central_equality_failures = Vec::new();
    if n_is_central {
        let table = g.conjugacy_classes()?;
        for class in &table.classes {
            if prime_power_base(class.element_order).is_none() && class.element_order != 1 {
                continue;
            }
            let x = &class.representative;
            let image = action.image(x)?;
            let lhs = spr_element(g, x)?;
            let rhs = spr_element(&action.group, &image)?;
            if lhs != rhs {
                central_equality_failures
                    .push(format!("spr_G({x}) = {lhs} ≠ spr_(G/N)(image) = {rhs}"));
            }
        }
    }
    Ok(QuotientLemmaVerdict {
        quotient_dominates: spr_quotient >= spr_group,
        spr_group,
        spr_quotient,
        n_is_central,
        central_equality_failures,
    })
}

/// Writes |x| = p^a·m with gcd(m, p) = 1 and returns x^m, the p-part of
/// x, of order p^a.
pub fn p_power_part(x: &Permutation, p: u64) -> Permutation {
    let order = x.order();
    let m = order / p_part_of(order, p);
    x.pow(m as i64)
}

/// Outcome of the wreath-cycle bound check on (L^p)⟨x⟩.
#[derive(Debug, Clone)]
pub struct WreathCycleBound {
    pub group_order: u64,
    pub witness: Permutation,
    pub spr_witness: ExactRatio,
    pub n_p_base: u64,
    pub bound: ExactRatio,
    pub holds: bool,
}

/// Builds G = (L^p)⟨x⟩ with x of order p cyclically permuting the
/// factors and verifies spr_G(x) ≤ 1 / n_p(L)^{p-1}.
pub fn wreath_cycle_bound_check(l: &Group, p: u64) -> Result<WreathCycleBound> {
    crate::group::ensure_prime(p)?;
    let k = p as usize;
    let cycle = Permutation::from_cycles(k, &[(0..k as u32).collect::<Vec<_>>()])?;
    let top = Group::from_generators(vec![cycle], l.caps())?;
    let wreath = power_wreath(l, k, &top, l.caps())?;
    let witness = wreath.top_embedded[0].clone();
    debug_assert_eq!(witness.order(), p);
    let spr_witness = spr_element(&wreath.group, &witness)?;
    let n_p_base = l.sylow(p)?.count;
    let bound = ExactRatio::from_counts(1, n_p_base.pow(p as u32 - 1));
    Ok(WreathCycleBound {
        group_order: wreath.group.order(),
        witness,
        holds: spr_witness <= bound,
        spr_witness,
        n_p_base,
        bound,
    })
}
