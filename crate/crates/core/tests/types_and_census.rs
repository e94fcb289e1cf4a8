use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigUint;
use vipcensus::census::*;
use vipcensus::collapse::{SimilarityTree, TypeId};
use vipcensus::treecore::*;
use vipcensus::viporder::*;

fn set(items: &[&str]) -> NodeSet {
    NodeSet::parse(items).unwrap()
}

/// Every strongly diagonal m-subset of `2^{≤2m−2}`, found by a depth-first
/// search that only grows diagonal sets.
fn brute_types(m: usize) -> Vec<NodeSet> {
    let universe = full_tree(2 * m - 2).to_vec();
    let mut out = Vec::new();
    fn go(u: &[Node], start: usize, cur: &mut Vec<Node>, m: usize, out: &mut Vec<NodeSet>) {
        if cur.len() == m {
            let s: NodeSet = cur.iter().cloned().collect();
            if is_strongly_diagonal(&s) {
                out.push(s);
            }
            return;
        }
        for i in start..u.len() {
            cur.push(u[i].clone());
            if is_diagonal(&cur.iter().cloned().collect()) {
                go(u, i + 1, cur, m, out);
            }
            cur.pop();
        }
    }
    go(&universe, 0, &mut Vec::new(), m, &mut out);
    out
}

/// Clause (2) read literally over the closure of a leaf set.
fn clause_two_oracle(leaves: &NodeSet) -> bool {
    let closure = meet_closure(leaves);
    for d in &closure {
        let k = d.len();
        for u in leaves {
            for v in leaves {
                if u == d || v == d || u.len() <= k || v.len() <= k {
                    continue;
                }
                let (du, dv) = (meet(d, u), meet(d, v));
                if du == dv && du != *d && u.bits()[k] < v.bits()[k] && u.len() > v.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// Orders of one level allowed by least-element and clause (1).
fn level_orders_oracle(level: &[Node], d: Option<&Node>) -> Vec<Vec<Node>> {
    level
        .iter()
        .cloned()
        .permutations(level.len())
        .filter(|p| {
            let Some(d) = d else { return true };
            if p[0] != *d {
                return false;
            }
            p.iter().enumerate().all(|(i, u)| {
                p[i + 1..].iter().all(|v| {
                    // v after u: forbidden when d∧v ⊊ d∧u
                    let (du, dv) = (meet(d, u), meet(d, v));
                    !(dv.is_proper_prefix_of(&du) && du != *d)
                })
            })
        })
        .collect()
}

fn vip_orders_oracle(tau: &SimilarityTree) -> Vec<Vec<Vec<Node>>> {
    if !clause_two_oracle(tau.leaves()) {
        return Vec::new();
    }
    let closure = meet_closure(tau.leaves());
    (0..=tau.height())
        .map(|k| {
            let d = closure.iter().find(|c| c.len() == k);
            level_orders_oracle(&tau.level(k), d)
        })
        .multi_cartesian_product()
        .collect()
}

fn vip_count_oracle(tau: &SimilarityTree) -> u64 {
    if !clause_two_oracle(tau.leaves()) {
        return 0;
    }
    let closure = meet_closure(tau.leaves());
    (0..=tau.height())
        .map(|k| level_orders_oracle(&tau.level(k), closure.iter().find(|c| c.len() == k)).len() as u64)
        .product()
}

const T: [u64; 4] = [1, 2, 16, 272];
const T_PLUS: [u64; 4] = [1, 2, 20, 776];
const R: [u64; 4] = [1, 4, 112, 12352];
const R_PLUS: [u64; 4] = [1, 4, 128, 26368];

#[test]
fn census_matches_brute_force_and_tables() {
    for m in 1..=4 {
        let brute = brute_types(m);
        let sparse: Vec<&NodeSet> = brute.iter().filter(|a| is_sparse_diagonal(a)).collect();
        let report = census(m).unwrap();
        let per: BTreeMap<TypeId, u64> = report.per_type.clone().unwrap().0.into_iter().collect();

        assert_eq!(brute.len() as u64, R[m - 1], "r_{m}");
        assert_eq!(sparse.len() as u64, T[m - 1], "t_{m}");
        assert_eq!(report.r, Some(R[m - 1]));
        assert_eq!(report.t, T[m - 1]);

        let mut r_plus = 0;
        let mut t_plus = 0;
        for a in &brute {
            let tau = SimilarityTree::from_leaves(a).unwrap();
            let v = vip_count_oracle(&tau);
            assert_eq!(per[&tau.type_id()], v, "{}", tau.type_id());
            r_plus += v;
            if is_sparse_diagonal(a) {
                t_plus += v;
            }
        }
        assert_eq!(r_plus, R_PLUS[m - 1], "r_{m}+");
        assert_eq!(t_plus, T_PLUS[m - 1], "t_{m}+");
        assert_eq!(report.r_plus, Some(r_plus));
        assert_eq!(report.t_plus, t_plus);
    }
}

#[test]
fn enumerated_orders_match_exhaustive_search() {
    for m in 1..=3 {
        for tau in enumerate_types(m, false).unwrap() {
            let got: BTreeSet<Vec<Vec<Node>>> = enumerate_vip_orders(&tau)
                .unwrap()
                .into_iter()
                .map(|o| o.levels().to_vec())
                .collect();
            let want: BTreeSet<Vec<Vec<Node>>> = vip_orders_oracle(&tau).into_iter().collect();
            assert_eq!(got, want, "{}", tau.type_id());
            assert_eq!(count_vip_orders(&tau).unwrap(), want.len() as u64);
            for o in enumerate_vip_orders(&tau).unwrap() {
                assert!(is_vip(&tau, tau.leaves(), &o));
            }
        }
    }
}

#[test]
fn sparse_types_never_trip_clause_two() {
    for m in 1..=5 {
        for tau in enumerate_types(m, true).unwrap() {
            assert!(vip_compatible(tau.leaves()), "{}", tau.type_id());
        }
    }
}

#[test]
fn pre_vip_on_sparse_types_is_vip() {
    for m in 1..=3 {
        for tau in enumerate_types(m, true).unwrap() {
            let closure = meet_closure(tau.leaves());
            let all = (0..=tau.height())
                .map(|k| tau.level(k).into_iter().permutations(tau.level(k).len()).collect::<Vec<_>>())
                .multi_cartesian_product();
            for levels in all {
                let o = LevelOrder::from_levels(levels).unwrap();
                if is_pre_vip(&tau, &closure, &o) {
                    assert!(is_vip(&tau, tau.leaves(), &o));
                }
            }
        }
    }
}

#[test]
fn make_pre_vip_output_is_pre_vip() {
    let tree = SimilarityTree::from_nodes(full_tree(3)).unwrap();
    let base = LevelOrder::length_lex(&full_tree(3));
    let nodes = full_tree(3).to_vec();
    for k in 0..=2 {
        for d in nodes.iter().cloned().combinations(k) {
            let d: NodeSet = d.into_iter().collect();
            if !is_transverse(&d) {
                assert!(make_pre_vip(&base, &d).is_err());
                continue;
            }
            let o = make_pre_vip(&base, &d).unwrap();
            assert!(is_pre_vip(&tree, &d, &o), "{d:?}");
        }
    }
}

#[test]
fn perm_bijection() {
    for m in 1..=4 {
        let perms = alternating_perms(m).unwrap();
        let types = enumerate_types(m, true).unwrap();
        assert_eq!(BigUint::from(perms.len()), tangent(m).unwrap());
        assert_eq!(types.len(), perms.len());
        for p in &perms {
            assert_eq!(perm_of_type(&type_of_perm(p)).unwrap(), *p);
        }
        for t in &types {
            assert_eq!(type_of_perm(&perm_of_type(t).unwrap()), *t);
        }
        let images: BTreeSet<_> = perms.iter().map(type_of_perm).collect();
        assert_eq!(images, types.iter().cloned().collect());
    }
}

#[test]
fn tangent_counts_sparse_types() {
    for m in 1..=5 {
        assert_eq!(BigUint::from(enumerate_types(m, true).unwrap().len()), tangent(m).unwrap());
    }
}

#[test]
fn bounds_hold_for_small_m() {
    let fact = |n: u64| (1..=n).product::<u64>();
    let prod = |k: u64| (0..k).map(fact).product::<u64>();
    for m in 2..=4u64 {
        let rep = census_with(m as usize, &CensusOptions { sparse_only: true, ..Default::default() }).unwrap();
        let t = rep.t;
        let lower = t + (1 << (m - 1)) * (prod(m) - 1);
        let upper = t * fact(m - 1) * prod(m) * prod(m);
        assert!(lower <= rep.t_plus && rep.t_plus <= upper);
        assert_eq!(rep.bounds.lower, BigUint::from(lower));
        assert_eq!(rep.bounds.upper, BigUint::from(upper));
        assert!(rep.bounds.all_ok());
        let want = match m {
            2 => (4, 2, 8),
            3 => (20, 20, 128),
            _ => (360, 776, 235008),
        };
        if m > 2 {
            assert_eq!((lower, rep.t_plus, upper), want);
        }
    }
}

#[test]
fn per_type_bound_holds() {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    for m in 1..=4 {
        for tau in enumerate_types(m, false).unwrap() {
            let sizes = tau.level_sizes();
            let n = sizes.len();
            let bound: u64 = if n < 3 { 1 } else { sizes[1..n - 1].iter().map(|&l| fact(l - 1)).product() };
            assert!(count_vip_orders(&tau).unwrap() <= bound, "{}", tau.type_id());
        }
        assert_eq!(census(m).unwrap().level_bound_violations, 0);
    }
}

#[test]
fn level_size_formulas_agree() {
    let mut literal_misses = 0;
    for m in 1..=4 {
        for tau in enumerate_types(m, false).unwrap() {
            let f = level_size_formulas(tau.leaves()).unwrap();
            let [leaf_prefix, internal_suffix, internal_prefix] = f.matches();
            assert!(leaf_prefix && internal_suffix, "{}", tau.type_id());
            assert_eq!(f.direct, tau.level_sizes());
            literal_misses += usize::from(!internal_prefix);
        }
    }
    assert!(literal_misses > 0);
}

#[test]
fn tau_star() {
    let leaves = set(&["0000", "010", "1000000", "101000", "10100100"]);
    let c = vipcensus::collapse::clp(&leaves).unwrap();
    assert_eq!(*c.tree.leaves(), leaves);
    assert!(c.tree.is_sparse());
    assert_eq!(meet_closure(&leaves).iter().map(Node::len).collect::<Vec<_>>(), (0..=8).collect::<Vec<_>>());
    assert_eq!(level_sizes(&leaves).unwrap(), [1, 2, 3, 4, 3, 2, 3, 2, 1]);
    assert_eq!(perm_of_type(&c.tree).unwrap().to_string(), "4,1,3,0,7,2,6,5,8");
    assert_eq!(enumerate_vip_orders(&c.tree).unwrap().len(), 8);
    assert_eq!(vip_count_oracle(&c.tree), 8);
}

#[test]
fn sparse_m5_counts_against_oracle() {
    let rep = census_with(5, &CensusOptions { sparse_only: true, per_type: true, ..Default::default() }).unwrap();
    let per: BTreeMap<TypeId, u64> = rep.per_type.unwrap().0.into_iter().collect();
    let types = enumerate_types(5, true).unwrap();
    assert_eq!(types.len(), 7936);
    assert_eq!(rep.t, 7936);
    let mut total = 0;
    for tau in &types {
        let v = vip_count_oracle(tau);
        assert_eq!(per[&tau.type_id()], v);
        total += v;
    }
    assert_eq!(rep.t_plus, total);
    // literal reading of the definitions; the published table lists 151184
    assert_eq!(total, 155_856);
}

#[test]
fn full_m5_census_with_sampled_oracle() {
    let rep = census_with(5, &CensusOptions::default()).unwrap();
    assert_eq!(rep.r, Some(4_437_760));
    assert_eq!(rep.t, 7936);
    assert_eq!(rep.level_bound_violations, 0);
    // the published table lists 41932288
    assert_eq!(rep.r_plus, Some(44_001_792));

    let mut n = 0u64;
    let mut checked = 0;
    for_each_type(5, false, |p| {
        n += 1;
        if n.is_multiple_of(4099) {
            let tau = p.tree();
            assert_eq!(p.vip_count(), vip_count_oracle(&tau), "{}", tau.type_id());
            checked += 1;
        }
    })
    .unwrap();
    assert_eq!(n, 4_437_760);
    assert!(checked > 1000);
}

#[test]
fn sequential_and_parallel_agree() {
    for m in 1..=4 {
        let par = census_with(m, &CensusOptions { per_type: true, ..Default::default() }).unwrap();
        let seq = census_with(m, &CensusOptions { per_type: true, parallel: false, ..Default::default() }).unwrap();
        assert_eq!(serde_json::to_string(&par).unwrap(), serde_json::to_string(&seq).unwrap());
    }
}
