use std::collections::BTreeSet;
use std::sync::Mutex;

use gns_core::canonical::{is_equivariant, representative};
use gns_core::point::orbit_point;
use gns_core::trees::{collect_level, ordinary_gns, traverse, Checkpoint, TraversalOptions, TreeKind, TreeRule};
use gns_core::{GapSemigroup, GnsError, OrderSpec};

const ORDERS: [OrderSpec; 3] = [OrderSpec::Lex, OrderSpec::Glex, OrderSpec::ORDER1];

fn nodes_by_depth(kind: &TreeKind, dim: usize, limit: usize) -> Vec<(usize, GapSemigroup)> {
    let seen = Mutex::new(Vec::new());
    traverse(kind, dim, limit, &TraversalOptions::default(), |k, s| seen.lock().unwrap().push((k, s.clone()))).unwrap();
    seen.into_inner().unwrap()
}

fn level_set(kind: &TreeKind, dim: usize, depth: usize) -> BTreeSet<GapSemigroup> {
    collect_level(kind, dim, depth, &TraversalOptions::default()).unwrap().into_iter().collect()
}

#[test]
fn parents_round_trip() {
    for o in ORDERS {
        for d in 1..=3 {
            for kind in [TreeKind::full(o), TreeKind::representative(o)] {
                let nodes = nodes_by_depth(&kind, d, 4);
                let set: BTreeSet<GapSemigroup> = nodes.iter().map(|(_, s)| s.clone()).collect();
                assert_eq!(set.len(), nodes.len());
                for (k, s) in nodes.iter().filter(|(k, _)| *k > 0) {
                    let f = s.frobenius_element(&o).unwrap();
                    let parent = s.extend(&f).unwrap();
                    assert_eq!(parent.genus() + 1, *k);
                    assert!(set.contains(&parent), "{s:?}");
                }
            }
        }
    }
}

#[test]
fn every_node_is_a_valid_semigroup_of_the_right_genus() {
    for o in ORDERS {
        for (k, s) in nodes_by_depth(&TreeKind::full(o), 3, 4) {
            assert_eq!(s.genus(), k);
            assert!(GapSemigroup::validate(s.gaps().to_vec(), 3).is_ok());
        }
    }
}

#[test]
fn equivariant_parents_round_trip() {
    for d in 2..=3 {
        let kind = TreeKind::equivariant(OrderSpec::Lex);
        let nodes: BTreeSet<GapSemigroup> = nodes_by_depth(&kind, d, 8).into_iter().map(|(_, s)| s).collect();
        for s in &nodes {
            assert!(is_equivariant(s));
            if s.genus() == 0 {
                continue;
            }
            let f = s.frobenius_element(&OrderSpec::Lex).unwrap();
            let gaps: Vec<_> = s.gaps().iter().filter(|h| !orbit_point(&f).contains(h)).copied().collect();
            let parent = GapSemigroup::validate(gaps, d).unwrap();
            assert!(nodes.contains(&parent), "{s:?}");
        }
    }
}

#[test]
fn fixed_genus_parents_follow_the_transform() {
    for o in [OrderSpec::Lex, OrderSpec::ORDER1] {
        for g in 1..=5 {
            let kind = TreeKind::fixed_genus(o, g).unwrap();
            let nodes = nodes_by_depth(&kind, 2, usize::MAX);
            let set: BTreeSet<GapSemigroup> = nodes.iter().map(|(_, s)| s.clone()).collect();
            assert_eq!(set.len(), nodes.len());
            for (k, s) in &nodes {
                if *k == 0 {
                    assert_eq!(*s, ordinary_gns(g, 2, &o));
                    continue;
                }
                let f = s.frobenius_element(&o).unwrap();
                let m = s.multiplicity(&o);
                let mut gaps: Vec<_> = s.gaps().iter().filter(|h| **h != f).copied().collect();
                gaps.push(m);
                let parent = GapSemigroup::validate(gaps, 2).unwrap();
                assert!(set.contains(&parent), "{s:?}");
            }
        }
    }
}

#[test]
fn constructions_agree() {
    for o in [OrderSpec::Lex, OrderSpec::ORDER1] {
        for d in 2..=3 {
            for g in 0..=4 {
                let rep = level_set(&TreeKind::representative(o), d, g);
                let fixed: BTreeSet<GapSemigroup> =
                    nodes_by_depth(&TreeKind::fixed_genus(o, g).unwrap(), d, usize::MAX)
                        .into_iter()
                        .map(|(_, s)| s)
                        .collect();
                let via_full: BTreeSet<GapSemigroup> =
                    level_set(&TreeKind::full(o), d, g).iter().map(|s| representative(s, &o)).collect();
                assert_eq!(rep, fixed, "d={d} g={g} {o}");
                assert_eq!(rep, via_full, "d={d} g={g} {o}");
            }
        }
    }
}

#[test]
fn equivariant_tree_finds_every_equivariant_representative() {
    for d in 2..=3 {
        let limit = 6;
        let from_tree: BTreeSet<GapSemigroup> =
            nodes_by_depth(&TreeKind::equivariant(OrderSpec::Lex), d, limit).into_iter().map(|(_, s)| s).collect();
        let mut expected = BTreeSet::new();
        for g in 0..=limit {
            expected
                .extend(level_set(&TreeKind::representative(OrderSpec::Lex), d, g).into_iter().filter(is_equivariant));
        }
        assert_eq!(from_tree, expected, "d={d}");
    }
}

#[test]
fn counts_do_not_depend_on_the_order() {
    for d in 2..=3 {
        let mut seen = Vec::new();
        for o in ORDERS {
            let full = traverse(&TreeKind::full(o), d, 5, &TraversalOptions::default(), |_, _| {}).unwrap();
            let rep = traverse(&TreeKind::representative(o), d, 5, &TraversalOptions::default(), |_, _| {}).unwrap();
            seen.push((full.levels, rep.levels));
        }
        assert!(seen.windows(2).all(|w| w[0] == w[1]), "{seen:?}");
    }
}

#[test]
fn worker_count_does_not_change_anything() {
    let kinds = [
        TreeKind::full(OrderSpec::Lex),
        TreeKind::representative(OrderSpec::Glex),
        TreeKind::equivariant(OrderSpec::Lex),
        TreeKind::fixed_genus(OrderSpec::ORDER1, 5).unwrap(),
    ];
    for kind in kinds {
        let limit = if kind.rule() == TreeRule::FixedGenus { usize::MAX } else { 6 };
        let run = |threads: usize| {
            let visited = Mutex::new(BTreeSet::new());
            let opts = if threads == 0 { TraversalOptions::default() } else { TraversalOptions::parallel(threads) };
            let r = traverse(&kind, 3, limit, &opts, |_, s| {
                visited.lock().unwrap().insert(s.clone());
            })
            .unwrap();
            (r.levels, r.genus_counts, visited.into_inner().unwrap())
        };
        let sequential = run(0);
        for threads in [1, 2, 8] {
            assert_eq!(run(threads), sequential, "{kind} with {threads} workers");
        }
        let level = collect_level(&kind, 3, 3.min(limit), &TraversalOptions::parallel(8)).unwrap();
        assert_eq!(level, collect_level(&kind, 3, 3.min(limit), &TraversalOptions::parallel(2)).unwrap());
    }
}

#[test]
fn checkpoint_resume_matches_an_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    for kind in [TreeKind::full(OrderSpec::Lex), TreeKind::representative(OrderSpec::ORDER1)] {
        let path = dir.path().join(format!("{}.ckpt", kind.rule()));
        let opts = TraversalOptions::default().with_checkpoint(&path);
        let first = traverse(&kind, 2, 3, &opts, |_, _| {}).unwrap();
        assert_eq!(first.resumed_from, None);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(Checkpoint::parse(&text).unwrap().to_text(), text);

        let resumed = traverse(&kind, 2, 6, &opts, |_, _| {}).unwrap();
        let plain = traverse(&kind, 2, 6, &TraversalOptions::default(), |_, _| {}).unwrap();
        assert_eq!(resumed.resumed_from, Some(2));
        assert_eq!(resumed.levels, plain.levels);
        assert_eq!(resumed.genus_counts, plain.genus_counts);
    }
}

#[test]
fn checkpoint_is_rejected_for_another_tree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp");
    let opts = TraversalOptions::default().with_checkpoint(&path);
    traverse(&TreeKind::full(OrderSpec::Lex), 2, 3, &opts, |_, _| {}).unwrap();
    let err = traverse(&TreeKind::full(OrderSpec::Glex), 2, 5, &opts, |_, _| {}).unwrap_err();
    assert!(matches!(err, GnsError::CheckpointCorrupt(_)));
    std::fs::write(&path, "#gns-checkpoint v1 kind=full d=2\n").unwrap();
    assert!(matches!(
        traverse(&TreeKind::full(OrderSpec::Lex), 2, 5, &opts, |_, _| {}),
        Err(GnsError::CheckpointCorrupt(_))
    ));
}

#[test]
fn frontier_budget() {
    let opts = TraversalOptions { max_frontier: Some(10), ..TraversalOptions::default() };
    let err = traverse(&TreeKind::full(OrderSpec::Lex), 2, 5, &opts, |_, _| {}).unwrap_err();
    assert!(matches!(err, GnsError::ResourceLimit(_)));
}

#[test]
fn fixed_genus_rejects_glex() {
    assert_eq!(TreeKind::fixed_genus(OrderSpec::Glex, 3).unwrap_err(), GnsError::NotOGoodOrder("glex".into()));
}
