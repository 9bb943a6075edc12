use std::cmp::Ordering;
use std::collections::BTreeSet;

use gns_core::canonical::{compare_r, is_representative, isomorphism_between, permute_gns, representative};
use gns_core::point::{all_permutations, orbit_point};
use gns_core::{BaseOrder, GapSemigroup, OrderSpec, Permutation, Point};
use proptest::prelude::*;

const ORDERS: [OrderSpec; 4] = [OrderSpec::Lex, OrderSpec::Glex, OrderSpec::ORDER1, OrderSpec::Order1(BaseOrder::Lex)];

fn point(dim: usize, max: u32) -> impl Strategy<Value = Point> {
    prop::collection::vec(0..=max, dim).prop_map(|c| Point::of(&c))
}

fn order() -> impl Strategy<Value = OrderSpec> {
    prop::sample::select(ORDERS.to_vec())
}

/// A random walk down the full tree: each step removes one element of U(S),
/// stopping early at a leaf.
fn walk(dim: usize, steps: &[usize]) -> GapSemigroup {
    let mut s = GapSemigroup::full(dim);
    for &k in steps {
        let u = s.u_set(&OrderSpec::Lex);
        if u.is_empty() {
            break;
        }
        s = s.remove_generator(&u[k % u.len()]).unwrap();
    }
    s
}

fn semigroup(max_dim: usize, max_genus: usize) -> impl Strategy<Value = GapSemigroup> {
    (1..=max_dim, prop::collection::vec(any::<usize>(), 0..=max_genus)).prop_map(|(d, steps)| walk(d, &steps))
}

/// Minimal generators by definition, scanning the box [0, 2c_i − 1] per
/// axis (2 on axes without gaps, where e_i itself is a generator).
fn naive_generators(s: &GapSemigroup) -> Vec<Point> {
    let c = s.conductor();
    let corner: Vec<u32> = c.coords().iter().map(|&ci| 2 * (ci as u32).max(1) - 1).collect();
    let bound = Point::of(&corner);
    bound
        .lower_box()
        .into_iter()
        .filter(|x| !x.is_zero() && s.contains(x))
        .filter(|x| {
            x.lower_box()
                .iter()
                .all(|a| a.is_zero() || a == x || !s.contains(a) || !s.contains(&x.checked_sub(a).unwrap()))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orders_are_total_and_extend_the_natural_order(o in order(), a in point(3, 4), b in point(3, 4), c in point(3, 4)) {
        let ab = o.cmp_points(&a, &b);
        prop_assert_eq!(ab, o.cmp_points(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if o.lt(&a, &b) && o.lt(&b, &c) {
            prop_assert!(o.lt(&a, &c));
        }
        if a.leq(&b) && a != b {
            prop_assert!(o.lt(&a, &b));
        }
        prop_assert!(o.cmp_points(&Point::zero(3), &a) != Ordering::Greater);
    }

    #[test]
    fn relaxed_axiom_b(o in order(), v in point(3, 4), w in point(3, 4), u in point(3, 4)) {
        if o.lt(&v, &w) {
            prop_assert!(o.lt(&v, &w.add(&u)));
        }
        if o.is_monomial() && o.lt(&v, &w) {
            prop_assert!(o.lt(&v.add(&u), &w.add(&u)));
        }
    }

    #[test]
    fn permutation_action_composes(a in point(4, 5), s in 0usize..24, t in 0usize..24) {
        let perms: Vec<Permutation> = all_permutations(4).collect();
        let (sigma, tau) = (&perms[s], &perms[t]);
        prop_assert_eq!(sigma.compose(tau).apply(&a), sigma.apply(&tau.apply(&a)));
        prop_assert_eq!(sigma.inverse().apply(&sigma.apply(&a)), a);
        prop_assert!(orbit_point(&a).contains(&sigma.apply(&a)));
    }

    #[test]
    fn semigroups_are_closed((s, a, b) in semigroup(3, 8).prop_flat_map(|s| {
        let d = s.dim();
        (Just(s), point(d, 6), point(d, 6))
    })) {
        prop_assert!(GapSemigroup::validate(s.gaps().to_vec(), s.dim()).is_ok());
        if s.contains(&a) && s.contains(&b) {
            prop_assert!(s.contains(&a.add(&b)));
        }
    }

    #[test]
    fn generators_match_the_definition(s in semigroup(3, 7)) {
        prop_assert_eq!(s.minimal_generators().to_vec(), naive_generators(&s));
        let c = s.conductor();
        for x in s.minimal_generators() {
            for i in 0..s.dim() {
                prop_assert!(x.get(i) < 2 * c.get(i).max(1));
            }
        }
    }

    #[test]
    fn special_gaps_cover_maximal_gaps(s in semigroup(3, 8)) {
        let sg: BTreeSet<Point> = s.special_gaps().into_iter().collect();
        for h in s.maximal_gaps() {
            prop_assert!(sg.contains(&h));
        }
        prop_assert_eq!(sg.is_empty(), s.genus() == 0);
        for h in &sg {
            prop_assert!(s.extend(h).is_ok());
        }
        for h in s.gaps() {
            prop_assert_eq!(s.extend(h).is_ok(), sg.contains(h));
        }
    }

    #[test]
    fn remove_then_extend_is_identity(s in semigroup(3, 7), k in any::<usize>()) {
        let gens = s.minimal_generators();
        let n = gens[k % gens.len()];
        let t = s.remove_generator(&n).unwrap();
        prop_assert_eq!(t.genus(), s.genus() + 1);
        prop_assert_eq!(t.extend(&n).unwrap(), s);
    }

    #[test]
    fn pseudo_frobenius_via_apery(s in semigroup(2, 6), k in any::<usize>()) {
        // h ∈ PF(S) iff h + n is maximal in Ap(S, n) for the order x ≤_S y ⇔ y − x ∈ S
        let gens = s.minimal_generators();
        let n = gens[k % gens.len()];
        let c = s.conductor();
        let corner: Vec<u32> = (0..s.dim()).map(|i| c.get(i) as u32 + n.get(i) as u32).collect();
        let ap = s.apery_in_box(&n, &Point::of(&corner)).unwrap();
        let maximal: BTreeSet<Point> = ap
            .iter()
            .filter(|w| !ap.iter().any(|v| v != *w && w.leq(v) && s.contains(&v.checked_sub(w).unwrap())))
            .filter_map(|w| w.checked_sub(&n))
            .collect();
        let pf: BTreeSet<Point> = s.pseudo_frobenius().into_iter().collect();
        prop_assert_eq!(pf, maximal);
    }

    #[test]
    fn u_set_lies_above_frobenius(s in semigroup(3, 8), o in order()) {
        let u = s.u_set(&o);
        if let Some(f) = s.frobenius_element(&o) {
            prop_assert!(u.iter().all(|x| o.lt(&f, x)));
        }
        prop_assert!(!s.is_gap(&s.multiplicity(&o)));
        for x in &u {
            prop_assert_eq!(s.remove_generator(x).unwrap().frobenius_element(&o), Some(*x));
        }
    }

    #[test]
    fn representatives_are_idempotent_and_orbit_constant(s in semigroup(3, 7), o in order(), k in 0usize..6) {
        let r = representative(&s, &o);
        prop_assert_eq!(representative(&r, &o), r.clone());
        let sigma = all_permutations(s.dim()).nth(k % gns_core::point::factorial(s.dim())).unwrap();
        let moved = permute_gns(&sigma, &s).unwrap();
        prop_assert_eq!(representative(&moved, &o), r.clone());
        prop_assert!(compare_r(&r, &s, &o).unwrap() != Ordering::Greater);
        prop_assert_eq!(is_representative(&s, &o).is_representative, r == s);
    }

    #[test]
    fn rejection_witnesses_are_genuine(s in semigroup(3, 7), o in order()) {
        let v = is_representative(&s, &o);
        match v.witness {
            Some(w) => {
                prop_assert!(!v.is_representative);
                let moved = permute_gns(&w, &s).unwrap();
                prop_assert_eq!(compare_r(&moved, &s, &o).unwrap(), Ordering::Less);
            }
            None => prop_assert!(v.is_representative),
        }
    }

    #[test]
    fn isomorphic_semigroups_share_invariants(s in semigroup(3, 6), k in 0usize..6) {
        let sigma = all_permutations(s.dim()).nth(k % gns_core::point::factorial(s.dim())).unwrap();
        let t = permute_gns(&sigma, &s).unwrap();
        let found = isomorphism_between(&s, &t).unwrap();
        prop_assert_eq!(permute_gns(&found, &s).unwrap(), t.clone());
        prop_assert_eq!(s.genus(), t.genus());
        prop_assert_eq!(s.embedding_dimension(), t.embedding_dimension());
        prop_assert_eq!(s.gap_span_dimension(), t.gap_span_dimension());
    }

    #[test]
    fn text_form_round_trips(s in semigroup(3, 8), o in order()) {
        prop_assert_eq!(GapSemigroup::parse(&s.gap_list(&o), Some(s.dim())).unwrap(), s);
    }
}

#[test]
fn order1_is_relaxed_but_not_monomial() {
    let o = OrderSpec::ORDER1;
    let (v, w, u) = (Point::of(&[0, 0, 3]), Point::of(&[0, 1, 1]), Point::of(&[1, 0, 0]));
    assert!(o.lt(&v, &w));
    assert!(o.lt(&w.add(&u), &v.add(&u)));
    assert!(!o.is_monomial());
}
