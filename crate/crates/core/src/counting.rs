//! p-element censuses: counting p-elements in groups and cosets, the
//! Σ|S_G(x)| = |P|·|G| identity, coset product factorizations, the
//! wreath coset lower bound, φ(L), and the centralizer ratio |L|/c.

use crate::error::{Error, Result};
use crate::group::products::WreathProduct;
use crate::group::{ensure_prime, is_prime_power_of, Group};
use crate::perm::Permutation;
use crate::ratio::ExactRatio;
use crate::subnormal;

/// Census of the p-elements of a group (identity included).
#[derive(Debug, Clone)]
pub struct PElementCensus {
    pub prime: u64,
    pub count: u64,
    pub p_part: u64,
    /// count / p_part, the Frobenius ratio.
    pub ratio: ExactRatio,
}

/// |𝔘_p(G)|: the number of elements of p-power order.
pub fn count_p_elements(g: &Group, p: u64) -> Result<PElementCensus> {
    ensure_prime(p)?;
    let store = g.store()?;
    let count = (0..store.len() as u32)
        .filter(|&i| is_prime_power_of(store.order_of(i), p))
        .count() as u64;
    let p_part = g.p_part(p);
    Ok(PElementCensus {
        prime: p,
        count,
        p_part,
        ratio: ExactRatio::from_counts(count, p_part),
    })
}

/// Σ_{x ∈ 𝔘_p(G)} |S_G(x)| versus |G|_p · |G|.
#[derive(Debug, Clone)]
pub struct SumIdentity {
    pub prime: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

/// Sums |S_G(x)| over all p-elements (class-weighted, fast path) and
/// compares with |G|_p · |G|.
pub fn sum_identity_check(g: &Group, p: u64) -> Result<SumIdentity> {
    ensure_prime(p)?;
    let table = g.conjugacy_classes()?;
    let mut lhs: u64 = 0;
    for class in &table.classes {
        if !is_prime_power_of(class.element_order, p) {
            continue;
        }
        lhs += class.size * subnormal::fast_order_idx(g, class.rep_idx)?;
    }
    let rhs = g.p_part(p) * g.order();
    Ok(SumIdentity {
        prime: p,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// |𝔘_p(Hg)| ≥ |Q| for Q a Sylow p-subgroup of H.
    SubgroupSylow,
    /// The wreath bound |L|^k / |C_L(au)| for a single full cycle.
    Cycle,
    /// The mixed form |L|^s / |C_L(g)| · |P₀|^{k−s}.
    MixedCycle,
}

/// Verification of the product factorization |𝔘_p(Ng)| = Π|𝔘_p(N_i g)|.
#[derive(Debug, Clone)]
pub struct ProductCheck {
    pub factor_counts: Vec<u64>,
    pub product: u64,
    pub holds: bool,
}

/// Exact count of p-elements in a coset Ng, with the Sylow lower bound
/// and (when factors are supplied and g-invariant) the product check.
#[derive(Debug, Clone)]
pub struct CosetCensus {
    pub prime: u64,
    pub count: u64,
    pub sylow_lower_bound: u64,
    pub bound_holds: bool,
    pub bound_kind: BoundKind,
    pub product_check: Option<ProductCheck>,
    /// Set when a requested product check was skipped.
    pub notice: Option<String>,
}

/// Counts the p-elements of the coset N·g exactly. `g` must be a
/// p-element of `ambient` normalizing N. When `factors` decompose N as a
/// direct product, the per-factor coset counts are multiplied and
/// compared (skipped with a notice if some factor is not g-invariant).
pub fn coset_count(
    ambient: &Group,
    n: &Group,
    factors: &[Group],
    g: &Permutation,
    p: u64,
) -> Result<CosetCensus> {
    ensure_prime(p)?;
    if !n.is_subgroup_of(ambient) {
        return Err(Error::NotASubgroup(
            "coset count needs N ≤ G".into(),
        ));
    }
    if !ambient.contains(g) {
        return Err(Error::NotAMember);
    }
    let g_order = g.order();
    if !is_prime_power_of(g_order, p) {
        return Err(Error::NotPElement {
            element_order: g_order,
            prime: p,
        });
    }
    if !normalizes(n, g) {
        return Err(Error::NotNormal);
    }
    let count = count_coset(n, g, p)?;
    let sylow_lower_bound = n.p_part(p);
    let mut product_check = None;
    let mut notice = None;
    if !factors.is_empty() {
        let invariant = factors.iter().all(|f| normalizes(f, g));
        if invariant {
            let mut factor_counts = Vec::with_capacity(factors.len());
            for f in factors {
                factor_counts.push(count_coset(f, g, p)?);
            }
            let product = factor_counts.iter().product();
            product_check = Some(ProductCheck {
                factor_counts,
                holds: product == count,
                product,
            });
        } else {
            notice = Some("product check skipped: factors are not g-invariant".into());
        }
    }
    Ok(CosetCensus {
        prime: p,
        count,
        sylow_lower_bound,
        bound_holds: count >= sylow_lower_bound,
        bound_kind: BoundKind::SubgroupSylow,
        product_check,
        notice,
    })
}

fn normalizes(h: &Group, g: &Permutation) -> bool {
    h.generators()
        .iter()
        .all(|s| h.contains(&s.conjugate_by(g).expect("equal degrees")))
}

/// Number of p-elements in the coset H·g, by direct scan.
fn count_coset(h: &Group, g: &Permutation, p: u64) -> Result<u64> {
    let mut count = 0;
    for e in h.elements()? {
        if is_prime_power_of(e.compose(g)?.order(), p) {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact |𝔘_2(N·vσ)| in a wreath product against the cycle-form lower
/// bound: for every a in a Sylow 2-subgroup P₀ of L,
/// count ≥ |L|^s / |C_L(a·u)| · |P₀|^{k−s}, where s is the largest
/// σ-orbit and u is the product of the v-components along it.
pub fn wreath_coset_bound_check(
    wreath: &WreathProduct,
    v_sigma: &Permutation,
) -> Result<CosetCensus> {
    let sigma = wreath.top_part(v_sigma)?;
    if sigma.is_identity() {
        return Err(Error::InvalidArgument(
            "wreath coset bound needs a nontrivial block permutation".into(),
        ));
    }
    if !is_prime_power_of(v_sigma.order(), 2) {
        return Err(Error::NotPElement {
            element_order: v_sigma.order(),
            prime: 2,
        });
    }
    let l_abstract = component_group(wreath);
    let k = wreath.copies;

    // exact count over the base coset
    let count = count_coset(&wreath.base, v_sigma, 2)?;

    // longest σ-cycle and the product of v-components along it
    let mut cycles = sigma.cycles();
    cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let longest = &cycles[0];
    let s = longest.len();
    // v = v_sigma · σ_embedded⁻¹ has component v_b on block b; following
    // the cycle (b₁ … b_s) the relevant product is v_{b₁} ⋯ v_{b_s}.
    // Extract components of v_sigma directly: block b maps to σ(b) with
    // component map v_b.
    let mut u = Permutation::identity(wreath.block_degree);
    for &b in longest {
        let comp = wreath.component(v_sigma, b as usize, &sigma);
        u = u.compose(&comp)?;
    }
    let p0 = l_abstract.sylow(2)?;
    let p0_order = p0.one_sylow.order();
    let l_order = l_abstract.order();
    let mut best_bound: u64 = 0;
    for a in p0.one_sylow.elements()? {
        let au = a.compose(&u)?;
        let c = l_abstract.centralizer(&au)?.order();
        let bound = l_order.pow(s as u32) / c * p0_order.pow((k - s) as u32);
        best_bound = best_bound.max(bound);
    }
    Ok(CosetCensus {
        prime: 2,
        count,
        sylow_lower_bound: best_bound,
        bound_holds: count >= best_bound,
        bound_kind: if s == k {
            BoundKind::Cycle
        } else {
            BoundKind::MixedCycle
        },
        product_check: None,
        notice: None,
    })
}

/// The base factor as an abstract group on block_degree points.
fn component_group(wreath: &WreathProduct) -> Group {
    let block = wreath.block_degree;
    let gens: Vec<Permutation> = wreath.base_factors[0]
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<u32> = (0..block as u32).map(|j| g.image(j)).collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    Group::from_generators(gens, wreath.group.caps()).expect("factor copy stays in caps")
}

/// φ(L) = |𝔘_2(L)| / |Aut(L)|_2, with the automorphism group supplied as
/// an explicit permutation group containing L as a normal subgroup.
pub fn phi_ratio(l: &Group, aut_l: &Group) -> Result<ExactRatio> {
    if !l.is_subgroup_of(aut_l) {
        return Err(Error::NotASubgroup("φ needs L ≤ Aut(L)".into()));
    }
    if !l.is_normal_in(aut_l) {
        return Err(Error::NotNormal);
    }
    let u2 = count_p_elements(l, 2)?.count;
    Ok(ExactRatio::from_counts(u2, aut_l.p_part(2)))
}

/// c = max over nontrivial x ∈ Aut(L) of |C_L(x)|, and the ratio |L|/c.
#[derive(Debug, Clone)]
pub struct MaxCentralizer {
    pub c: u64,
    pub ratio: ExactRatio,
    pub achieved_by: Permutation,
}

pub fn max_centralizer_ratio(l: &Group, aut_l: &Group) -> Result<MaxCentralizer> {
    if !l.is_subgroup_of(aut_l) {
        return Err(Error::NotASubgroup("centralizer ratio needs L ≤ Aut(L)".into()));
    }
    if !l.is_normal_in(aut_l) {
        return Err(Error::NotNormal);
    }
    let l_store = l.store()?;
    let mut best: Option<(u64, Permutation)> = None;
    for x in aut_l.elements()? {
        if x.is_identity() {
            continue;
        }
        let c = l_store
            .elements()
            .iter()
            .filter(|e| e.compose(x).expect("equal degrees") == x.compose(e).expect("equal degrees"))
            .count() as u64;
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, x.clone()));
        }
    }
    let (c, achieved_by) = best.expect("a nontrivial automorphism exists");
    Ok(MaxCentralizer {
        c,
        ratio: ExactRatio::from_counts(l.order(), c),
        achieved_by,
    })
}

/// Instance of the defining-characteristic census identity
/// |𝔘_p(G)| = (|G|_p)².
#[derive(Debug, Clone)]
pub struct SteinbergInstance {
    pub prime: u64,
    pub count: u64,
    pub square: u64,
    pub holds: bool,
}

pub fn steinberg_instance_check(g: &Group, p: u64) -> Result<SteinbergInstance> {
    ensure_prime(p)?;
    let census = count_p_elements(g, p)?;
    let square = census.p_part * census.p_part;
    Ok(SteinbergInstance {
        prime: p,
        count: census.count,
        square,
        holds: census.count == square,
    })
}

/// |P|² < |L| for every prime, one row per prime.
#[derive(Debug, Clone)]
pub struct LyonsInstance {
    pub prime: u64,
    pub p_part_squared: u64,
    pub order: u64,
    pub holds: bool,
}

pub fn lyons_check(g: &Group) -> Vec<LyonsInstance> {
    let order = g.order();
    g.order_factorization()
        .iter()
        .map(|&(p, _)| {
            let part = g.p_part(p);
            LyonsInstance {
                prime: p,
                p_part_squared: part * part,
                order,
                holds: part * part < order,
            }
        })
        .collect()
}

/// Frobenius-ratio comparison for P ≤ H ≤ G with P a Sylow p-subgroup
/// of G: the ratio cannot grow when passing to H.
#[derive(Debug, Clone)]
pub struct RatioComparison {
    pub group_ratio: ExactRatio,
    pub other_ratio: ExactRatio,
    pub holds: bool,
}

pub fn frobenius_subgroup_check(g: &Group, h: &Group, p: u64) -> Result<RatioComparison> {
    ensure_prime(p)?;
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("Frobenius check needs H ≤ G".into()));
    }
    if h.p_part(p) != g.p_part(p) {
        return Err(Error::NotASubgroup(
            "Frobenius subgroup check needs H to contain a full Sylow p-subgroup of G".into(),
        ));
    }
    let group_ratio = count_p_elements(g, p)?.ratio;
    let other_ratio = count_p_elements(h, p)?.ratio;
    Ok(RatioComparison {
        holds: group_ratio >= other_ratio,
        group_ratio,
        other_ratio,
    })
}

/// Quotient Frobenius-ratio comparison: the ratio of G/N is at most that
/// of G, with equality when N is central.
#[derive(Debug, Clone)]
pub struct QuotientRatioCheck {
    pub group_ratio: ExactRatio,
    pub quotient_ratio: ExactRatio,
    pub holds: bool,
    pub n_is_central: bool,
    pub equality_holds: bool,
}

pub fn frobenius_quotient_check(g: &Group, n: &Group, p: u64) -> Result<QuotientRatioCheck> {
    ensure_prime(p)?;
    let action = g.quotient_action(n)?;
    let group_ratio = count_p_elements(g, p)?.ratio;
    let quotient_ratio = count_p_elements(&action.group, p)?.ratio;
    let n_is_central = n.is_central_in(g);
    Ok(QuotientRatioCheck {
        holds: quotient_ratio <= group_ratio,
        equality_holds: quotient_ratio == group_ratio,
        group_ratio,
        quotient_ratio,
        n_is_central,
    })
}
