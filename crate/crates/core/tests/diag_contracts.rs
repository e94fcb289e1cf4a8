use itertools::Itertools;
use vipcensus::collapse::clp;
use vipcensus::diagonal::*;
use vipcensus::treecore::*;
use vipcensus::viporder::{LengthLex, TieBreak, VipRule};

fn build(kind: DiagKind, depth: usize) -> DiagMap {
    match kind {
        DiagKind::Sparse => sparse_diagonalize(depth, &LengthLex, &mut GreedyRule::new()),
        DiagKind::Pnp => pnp_diagonalize(depth, &LengthLex, &mut GreedyRule::new()),
    }
    .unwrap()
}

#[test]
fn contracts_hold_up_to_depth_three() {
    for depth in 0..=3 {
        for kind in [DiagKind::Sparse, DiagKind::Pnp] {
            let f = build(kind, depth);
            let rep = verify_diag_contract(&f);
            assert!(rep.all_pass(), "{kind:?} depth {depth}: {:?}", rep.items.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        }
    }
}

#[test]
fn contracts_hold_under_a_vip_enumeration_order() {
    let d = NodeSet::parse(&["", "1", "01", "011"]).unwrap();
    let rule = VipRule::new(&d, TieBreak::Hash(3)).unwrap();
    for kind in [DiagKind::Sparse, DiagKind::Pnp] {
        let f = match kind {
            DiagKind::Sparse => sparse_diagonalize(3, &rule, &mut GreedyRule::starting_at(2)),
            DiagKind::Pnp => pnp_diagonalize(3, &rule, &mut GreedyRule::starting_at(2)),
        }
        .unwrap();
        assert!(verify_diag_contract(&f).all_pass(), "{kind:?}");
    }
}

#[test]
fn q_order_and_images_by_direct_check() {
    for kind in [DiagKind::Sparse, DiagKind::Pnp] {
        let f = build(kind, 3);
        let dom = full_tree(3).to_vec();
        for (s, t) in dom.iter().tuple_combinations() {
            assert_eq!(q_cmp(s, t), q_cmp(&f.phi[s], &f.phi[t]));
        }
        let p = profile(&f.image());
        assert!(p.strongly_diagonal);
        if kind == DiagKind::Sparse {
            assert!(p.sparse);
        }
    }
}

#[test]
fn passing_numbers_carry_over_for_pnp() {
    let f = build(DiagKind::Pnp, 3);
    let dom = full_tree(3).to_vec();
    for s in &dom {
        for t in &dom {
            if s.len() < t.len() {
                let (fs, ft) = (&f.phi[s], &f.phi[t]);
                assert!(fs.len() < ft.len());
                assert_eq!(ft.bit(fs.len()), t.bit(s.len()), "{s:?} {t:?}");
            }
        }
    }
}

#[test]
fn meets_localize_at_the_first_companion() {
    for kind in [DiagKind::Sparse, DiagKind::Pnp] {
        let f = build(kind, 3);
        let dom = full_tree(3).to_vec();
        for (x, y) in dom.iter().tuple_combinations() {
            if x.incomparable(y) {
                assert_eq!(meet(&f.phi[x], &f.phi[y]), f.phi0[&meet(x, y)], "{kind:?} {x:?} {y:?}");
            }
        }
    }
}

#[test]
fn collapse_preserved_on_sparse_subsets() {
    let f = build(DiagKind::Sparse, 3);
    let dom = full_tree(3).to_vec();
    let mut checked = 0;
    for k in 1..=3 {
        for sub in dom.iter().cloned().combinations(k) {
            let sub: NodeSet = sub.into_iter().collect();
            if !is_sparse_diagonal(&sub) {
                continue;
            }
            checked += 1;
            let img = f.image_of(&sub).unwrap();
            assert_eq!(clp(&sub).unwrap().tree, clp(&img).unwrap().tree, "{sub:?}");
        }
    }
    // past the 15 singletons
    assert!(checked > 15);
}

#[test]
fn sparse_recursion_is_not_level_harmonious() {
    // the node-by-node recursion finishes φ(s) before the next node of the
    // same level starts, so a later same-level f̂ outgrows an earlier f
    for depth in 2..=3 {
        let f = build(DiagKind::Sparse, depth);
        let checks = check_level_harmony(&f.phi);
        for c in &checks {
            assert_eq!(c.pass, c.name != "same-level hat below f", "{c:?}");
        }
        let interior: Assoc = f.phi0.iter().filter(|(s, _)| s.len() < depth).map(|(a, b)| (a.clone(), b.clone())).collect();
        assert_eq!(hat(&f.phi), interior);
    }
}

#[test]
fn pnp_maps_compose() {
    let g = build(DiagKind::Pnp, 2);
    let region = g.image().prefix_closure();
    let f = pnp_diagonalize_on(&region, &LengthLex, &mut GreedyRule::new()).unwrap();
    let fg = compose(&f.phi, &g.phi);
    assert_eq!(fg.len(), g.phi.len());
    assert!(is_pnp(&fg));
    assert!(is_polite_to_strongly_diagonal(&fg));
}

#[test]
fn polite_rejects_a_collapsing_map() {
    let pairs = [("", ""), ("0", "0"), ("1", "11"), ("00", "000"), ("01", "0100")];
    let f: Assoc = pairs.iter().map(|(a, b)| (Node::parse(a).unwrap(), Node::parse(b).unwrap())).collect();
    assert!(!is_pnp(&f) || !is_polite(&f));
}
