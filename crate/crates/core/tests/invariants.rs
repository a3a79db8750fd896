//! Cross-module invariants over the shipped catalog.

use subnorm_core::catalog::{self, manifest};
use subnorm_core::counting;
use subnorm_core::group::products::direct_product;
use subnorm_core::spr;
use subnorm_core::{Caps, ExactRatio, Group, Permutation};

fn build(key: &str) -> Group {
    catalog::build(key, &Caps::default()).unwrap()
}

#[test]
fn class_sizes_partition_and_divide_the_order() {
    for entry in manifest().iter().filter(|e| e.expected_order <= 2000) {
        let g = build(&entry.key);
        let table = g.conjugacy_classes().unwrap();
        let total: u64 = table.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, g.order(), "{}", entry.key);
        for class in &table.classes {
            assert_eq!(g.order() % class.size, 0, "{}", entry.key);
            assert_eq!(
                class.size * class.centralizer_order,
                g.order(),
                "orbit–stabilizer in {}",
                entry.key
            );
        }
    }
}

#[test]
fn sylow_counts_congruent_one_mod_p_across_the_catalog() {
    for entry in manifest().iter().filter(|e| e.expected_order <= 5000) {
        let g = build(&entry.key);
        for p in g.primes() {
            let sys = g.sylow(p).unwrap();
            assert_eq!(sys.count % p, 1, "n_{}({})", p, entry.key);
            assert_eq!(sys.count * sys.normalizer_order, g.order());
            assert_eq!(sys.one_sylow.order(), g.p_part(p));
        }
    }
}

#[test]
fn p_core_is_normal_and_inside_every_sylow() {
    for entry in manifest().iter().filter(|e| e.expected_order <= 2000) {
        let g = build(&entry.key);
        for p in g.primes() {
            let core = g.p_core(p).unwrap();
            assert!(core.is_normal_in(&g), "O_{}({})", p, entry.key);
            let sys = g.sylow(p).unwrap();
            assert!(core.is_subgroup_of(&sys.one_sylow));
        }
    }
}

#[test]
fn quotient_orders_and_homomorphism() {
    let s4 = build("S4");
    let v4 = s4
        .normal_closure(&[Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap()])
        .unwrap();
    let q = s4.quotient_action(&v4).unwrap();
    assert_eq!(q.group.order() * v4.order(), s4.order());
    let elems = s4.elements().unwrap();
    for a in elems.iter().step_by(5) {
        for b in elems.iter().step_by(7) {
            let lhs = q.image(&a.compose(b).unwrap()).unwrap();
            let rhs = q.image(a).unwrap().compose(&q.image(b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn nilpotency_routes_agree() {
    // the Sylow-count route (public op) versus the element-order census
    for entry in manifest().iter().filter(|e| e.expected_order <= 2000) {
        let g = build(&entry.key);
        let by_sylow = g.is_nilpotent().unwrap();
        let mut by_census = true;
        for p in g.primes() {
            let census = counting::count_p_elements(&g, p).unwrap();
            by_census &= census.count == census.p_part;
        }
        assert_eq!(by_sylow, by_census, "{}", entry.key);
    }
}

#[test]
fn spr_fast_path_equals_bruteforce_everywhere_in_small_groups() {
    for key in ["S4", "D6", "A4", "C12", "PSL2_3"] {
        let g = build(key);
        for x in g.elements().unwrap() {
            let brute =
                subnorm_core::subnormal::subnormalizer_bruteforce(&g, x).unwrap().len() as u64;
            let fast = subnorm_core::subnormal::subnormalizer_order_fast(&g, x).unwrap();
            assert_eq!(brute, fast, "{} in {}", x, key);
        }
    }
}

#[test]
fn spr_is_constant_on_conjugacy_classes() {
    let g = build("S5");
    let table = g.conjugacy_classes().unwrap();
    for class in table.classes.iter() {
        let expected = spr::spr_element(&g, &class.representative).unwrap();
        // a few conjugates per class is plenty
        for e in g.elements().unwrap().iter().step_by(17) {
            let y = class.representative.conjugate_by(e).unwrap();
            assert_eq!(spr::spr_element(&g, &y).unwrap(), expected);
        }
    }
}

#[test]
fn frobenius_ratio_monotone_for_sylow_containing_subgroups() {
    // S4 embedded in S5 contains a full Sylow-2 of S5
    let s5 = build("S5");
    let s4_in_s5 = Group::from_generators(
        vec![
            Permutation::from_cycles(5, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(5, &[vec![0, 1, 2, 3]]).unwrap(),
        ],
        &Caps::default(),
    )
    .unwrap();
    let r = counting::frobenius_subgroup_check(&s5, &s4_in_s5, 2).unwrap();
    assert!(r.holds);
    // A4 inside A5 for p = 2
    let a5 = build("A5");
    let a4 = Group::from_generators(
        vec![
            Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap(),
        ],
        &Caps::default(),
    )
    .unwrap();
    let r = counting::frobenius_subgroup_check(&a5, &a4, 2).unwrap();
    assert!(r.holds);
}

#[test]
fn frobenius_quotient_ratio_with_central_equality() {
    let s4 = build("S4");
    let v4 = s4
        .normal_closure(&[Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap()])
        .unwrap();
    for p in [2u64, 3] {
        assert!(counting::frobenius_quotient_check(&s4, &v4, p).unwrap().holds);
    }
    let prod = direct_product(&build("C2"), &build("A5"), &Caps::default()).unwrap();
    for p in [2u64, 3, 5] {
        let r = counting::frobenius_quotient_check(&prod.group, &prod.factors[0], p).unwrap();
        assert!(r.holds && r.n_is_central && r.equality_holds, "p = {}", p);
    }
}

#[test]
fn product_census_factorization_on_a_direct_square() {
    let prod = direct_product(&build("A5"), &build("A5"), &Caps::default()).unwrap();
    // coset of the full product over a diagonal-ish p-element
    let g3 = prod.factors[0].generators()[0].clone();
    for p in [2u64, 3, 5] {
        let census = counting::coset_count(
            &prod.group,
            &prod.group,
            &prod.factors,
            &if p == 3 {
                g3.clone()
            } else {
                Permutation::identity(10)
            },
            p,
        )
        .unwrap();
        let check = census.product_check.unwrap();
        assert!(check.holds, "p = {}: {:?}", p, check);
        assert!(census.bound_holds);
    }
}

#[test]
fn isomorphic_presentations_share_census_data() {
    // A6 built as an alternating group and as PSL(2,9)
    let a6 = build("A6");
    let psl29 = build("PSL2_9");
    assert_eq!(a6.order(), psl29.order());
    for p in [2u64, 3, 5] {
        assert_eq!(
            counting::count_p_elements(&a6, p).unwrap().count,
            counting::count_p_elements(&psl29, p).unwrap().count,
            "p = {}",
            p
        );
    }
    assert_eq!(
        a6.conjugacy_classes().unwrap().size_multiset(),
        psl29.conjugacy_classes().unwrap().size_multiset()
    );
    assert_eq!(
        counting::count_p_elements(&a6, 2).unwrap().count,
        136 // so phi(A6) = 136/32 = 17/4 with |Aut(A6)|_2 = 32
    );
}

#[test]
fn spr_reports_are_deterministic() {
    let a = spr::spr_report(&build("PSL2_7"), spr::PairPolicy::Skip).unwrap();
    let b = spr::spr_report(&build("PSL2_7"), spr::PairPolicy::Skip).unwrap();
    assert_eq!(a.spr_total, b.spr_total);
    let rows_a: Vec<String> = a.rows.iter().map(|r| format!("{} {}", r.representative, r.spr)).collect();
    let rows_b: Vec<String> = b.rows.iter().map(|r| format!("{} {}", r.representative, r.spr)).collect();
    assert_eq!(rows_a, rows_b);
}

#[test]
fn simple_psl_entries_above_the_unit_test_cutoff() {
    // normal closure of any nontrivial class representative is everything
    for key in ["PSL2_11", "PSL2_13", "PSL2_16"] {
        let g = build(key);
        let table = g.conjugacy_classes().unwrap();
        for class in &table.classes {
            if class.element_order == 1 {
                continue;
            }
            let ncl = g.normal_closure(std::slice::from_ref(&class.representative)).unwrap();
            assert_eq!(ncl.order(), g.order(), "{}", key);
        }
    }
}

#[test]
fn nonsolvable_catalog_entries_stay_at_or_below_one_sixth() {
    // the ≤ 2000 slice; the acceptance suite covers the rest
    let sixth = ExactRatio::new(1, 6);
    for entry in manifest().iter().filter(|e| e.expected_order <= 2000) {
        let g = build(&entry.key);
        if g.is_solvable().unwrap() {
            continue;
        }
        let total = spr::spr_report(&g, spr::PairPolicy::Skip).unwrap().spr_total;
        assert!(total <= sixth, "{}: spr = {}", entry.key, total);
    }
}

#[test]
fn element_stores_are_closed_under_product_and_inverse() {
    for key in ["A5", "S4", "D6", "PSL2_7"] {
        let g = build(key);
        let elems = g.elements().unwrap();
        for a in elems.iter().step_by(3) {
            assert!(g.contains(&a.inverse()), "{} in {}", a, key);
            for b in elems.iter().step_by(5) {
                assert!(g.contains(&a.compose(b).unwrap()), "{}·{} in {}", a, b, key);
            }
        }
    }
}

#[test]
fn sylow_normalizer_order_matches_the_filter_oracle() {
    for entry in manifest().iter().filter(|e| e.expected_order <= 720) {
        let g = build(&entry.key);
        for p in g.primes() {
            let sys = g.sylow(p).unwrap();
            let oracle = g.normalizer(&sys.one_sylow).unwrap().order();
            assert_eq!(sys.normalizer_order, oracle, "N_G(P_{}) in {}", p, entry.key);
        }
    }
}

#[test]
fn coset_sylow_lower_bound_over_every_coset() {
    // every 2-power-order element of S4 heads a coset of the Klein group
    let s4 = build("S4");
    let v4 = s4
        .normal_closure(&[Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap()])
        .unwrap();
    for g in s4.elements().unwrap() {
        if !subnorm_core::group::is_prime_power_of(g.order(), 2) {
            continue;
        }
        let census = counting::coset_count(&s4, &v4, &[], g, 2).unwrap();
        assert!(census.bound_holds, "coset of {}", g);
        assert_eq!(census.sylow_lower_bound, 4);
    }
    // and the base coset of the wreath product
    let c2 = build("C2");
    let w = subnorm_core::group::products::power_wreath(&build("A5"), 2, &c2, &Caps::default())
        .unwrap();
    let census = counting::coset_count(&w.group, &w.base, &[], &w.top_embedded[0], 2).unwrap();
    assert!(census.bound_holds);
    assert_eq!(census.count, 960);
    assert_eq!(census.sylow_lower_bound, 16); // |A5×A5|_2
}

#[test]
fn monolithic_nonsolvable_census_or_spr_bound() {
    // catalog entries that are nonsolvable with a unique minimal normal
    // subgroup, with that socle's catalog key
    let socles = [
        ("A5", "A5"),
        ("A6", "A6"),
        ("A7", "A7"),
        ("PSL2_4", "A5"),
        ("PSL2_5", "A5"),
        ("PSL2_7", "PSL2_7"),
        ("PSL2_8", "PSL2_8"),
        ("PSL2_9", "A6"),
        ("PSL2_11", "PSL2_11"),
        ("PSL2_13", "PSL2_13"),
        ("PSL2_16", "PSL2_16"),
        ("S5", "A5"),
        ("S6", "A6"),
        ("PGL2_5", "A5"),
        ("PGL2_7", "PSL2_7"),
        ("PGL2_9", "A6"),
        ("PGL2_11", "PSL2_11"),
        ("PGL2_13", "PSL2_13"),
        ("PGammaL2_8", "PSL2_8"),
        ("PGammaL2_9", "A6"),
        ("PGammaL2_16", "PSL2_16"),
        ("A5wrC2", "A5xA5"),
    ];
    let six = ExactRatio::from_integer(6);
    let sixth = ExactRatio::new(1, 6);
    for (key, socle) in socles {
        let g = build(key);
        assert!(!g.is_solvable().unwrap(), "{}", key);
        let exceptional = catalog::manifest_entry(socle).unwrap().exception_list;
        if exceptional {
            // exceptional socles: the 2-element ratio may drop below 6,
            // but spr stays at or below 1/6
            let total = spr::spr_report(&g, spr::PairPolicy::Skip)
                .unwrap()
                .spr_total;
            assert!(total <= sixth, "{}: spr = {}", key, total);
        } else {
            let ratio = counting::count_p_elements(&g, 2).unwrap().ratio;
            assert!(ratio >= six, "{}: |U_2|/|G|_2 = {}", key, ratio);
        }
    }
}

#[test]
fn chain_regime_agrees_with_the_store_regime() {
    // force the chain-only regime and compare against the stored build
    let tight = Caps {
        max_exhaustive: 100,
        ..Caps::default()
    };
    for key in ["A7", "A5wrC2", "PSL2_16", "PGammaL2_9"] {
        let stored = build(key);
        let chained = catalog::build(key, &tight).unwrap();
        assert_eq!(stored.order(), chained.order(), "{}", key);
        assert!(!chained.has_element_store());
        // membership must agree on members and on near-miss non-members
        for e in stored.elements().unwrap().iter().step_by(97) {
            assert!(chained.contains(e), "{} in {}", e, key);
        }
        let degree = stored.degree();
        let swap_first_two =
            Permutation::from_cycles(degree, &[vec![0, 1]]).unwrap();
        assert_eq!(
            stored.contains(&swap_first_two),
            chained.contains(&swap_first_two),
            "{}",
            key
        );
    }
}

#[test]
fn spr_is_monotone_under_taking_element_powers() {
    // S_G(x) ⊆ S_G(x^k): subnormality of ⟨x⟩ passes down to ⟨x^k⟩ inside
    // any intermediate subgroup, so spr can only grow along prime parts
    for entry in manifest().iter().filter(|e| e.expected_order <= 720) {
        let g = build(&entry.key);
        let table = g.conjugacy_classes().unwrap();
        for class in &table.classes {
            let x = &class.representative;
            let spr_x = spr::spr_element(&g, x).unwrap();
            for (p, _) in subnorm_core::group::factorize(class.element_order) {
                let part = spr::p_power_part(x, p);
                let spr_part = spr::spr_element(&g, &part).unwrap();
                assert!(
                    spr_x <= spr_part,
                    "{}: spr({}) = {} > spr({}) = {}",
                    entry.key,
                    x,
                    spr_x,
                    part,
                    spr_part
                );
            }
        }
    }
}

#[test]
fn two_three_decomposition_inequality() {
    // For G with no nontrivial normal solvable subgroup: splitting the
    // average over 2-elements, {2,3}-elements of order 2^n·3 (bounded by
    // the spr of their 3-part), and the rest (each contributing at most
    // 1/6) overestimates spr(G).
    for key in ["A5", "A6", "S5", "S6", "PSL2_7", "PSL2_8", "PGL2_7"] {
        let g = build(key);
        let report = spr::spr_report(&g, spr::PairPolicy::Skip).unwrap();
        let order = ExactRatio::from_integer(g.order());
        let mut two_part = ExactRatio::zero();
        let mut v_part = ExactRatio::zero();
        let mut rest: u64 = 0;
        for row in &report.rows {
            let weight = ExactRatio::from_integer(row.class_size);
            if subnorm_core::group::is_prime_power_of(row.element_order, 2) {
                two_part = two_part + weight * row.spr.clone();
            } else if subnorm_core::group::p_part_of(row.element_order, 3) == 3
                && subnorm_core::group::is_prime_power_of(row.element_order / 3, 2)
            {
                let three_part = spr::p_power_part(&row.representative, 3);
                let bound = spr::spr_element(&g, &three_part).unwrap();
                v_part = v_part + weight * bound;
            } else {
                rest += row.class_size;
            }
        }
        let rhs = (two_part + v_part) / order.clone()
            + ExactRatio::from_counts(rest, 6 * g.order());
        assert!(
            report.spr_total <= rhs,
            "{}: spr = {} > decomposition bound {}",
            key,
            report.spr_total,
            rhs
        );
    }
}
