use std::cmp::Ordering;

use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vipcensus::treecore::*;

fn nodes_upto(depth: usize) -> Vec<Node> {
    full_tree(depth).to_vec()
}

/// Definition-level `<_Q`, written against raw bit slices.
fn q_less(s: &[u8], t: &[u8]) -> bool {
    let prefix = |a: &[u8], b: &[u8]| a.len() <= b.len() && b[..a.len()] == *a;
    let t0: Vec<u8> = t.iter().copied().chain([0]).collect();
    let s1: Vec<u8> = s.iter().copied().chain([1]).collect();
    if prefix(&t0, s) || prefix(&s1, t) {
        return true;
    }
    if prefix(s, t) || prefix(t, s) {
        return false;
    }
    let i = s.iter().zip(t).position(|(a, b)| a != b).unwrap();
    s[i] < t[i]
}

#[test]
fn q_order_is_total_and_matches_definition() {
    let v = nodes_upto(5);
    for s in &v {
        for t in &v {
            let c = q_cmp(s, t);
            assert_eq!(c == Ordering::Less, q_less(s.bits(), t.bits()), "{s:?} {t:?}");
            assert_eq!(c, q_cmp(t, s).reverse());
            assert_eq!(c == Ordering::Equal, s == t);
        }
    }
}

#[test]
fn q_order_is_transitive() {
    let v = nodes_upto(5);
    for a in &v {
        for b in &v {
            if q_cmp(a, b) != Ordering::Less {
                continue;
            }
            for c in &v {
                if q_cmp(b, c) == Ordering::Less {
                    assert_eq!(q_cmp(a, c), Ordering::Less, "{a:?} {b:?} {c:?}");
                }
            }
        }
    }
}

#[test]
fn lex_agrees_with_q_on_incomparable_pairs() {
    let v = nodes_upto(5);
    for s in &v {
        for t in &v {
            if s.incomparable(t) {
                assert_eq!(lex_lt(s, t).unwrap(), q_cmp(s, t) == Ordering::Less);
            } else {
                assert!(lex_lt(s, t).is_err());
            }
        }
    }
}

#[test]
fn closure_has_two_m_minus_one_elements() {
    let v = nodes_upto(4);
    for m in 1..=3 {
        let mut seen = 0;
        for combo in v.iter().cloned().combinations(m) {
            let a: NodeSet = combo.into_iter().collect();
            if is_diagonal(&a) {
                seen += 1;
                assert_eq!(meet_closure(&a).len(), 2 * m - 1, "{a:?}");
            }
        }
        assert!(seen > 0);
    }
}

#[test]
fn profile_implications() {
    let v = nodes_upto(4);
    for m in 0..=3 {
        for combo in v.iter().cloned().combinations(m) {
            let a: NodeSet = combo.into_iter().collect();
            let p = profile(&a);
            assert!(!p.sparse || p.strongly_diagonal);
            assert!(!p.strongly_diagonal || p.diagonal);
            assert!(!p.diagonal || p.antichain);
            // antichain and transverse checked against direct definitions
            let anti = a.iter().tuple_combinations().all(|(s, t)| !s.is_prefix_of(t) && !t.is_prefix_of(s));
            let trans = a.iter().map(Node::len).all_unique();
            assert_eq!(p.antichain, anti);
            assert_eq!(p.transverse, trans);
        }
    }
}

/// A random pair `A <_Q B` drawn from `2^{≤6}`: a random cut of the
/// `≤_Q`-sorted tree, with a few nodes taken on each side.
fn random_cut(rng: &mut ChaCha8Rng, sorted: &[Node]) -> (NodeSet, NodeSet) {
    let cut = rng.gen_range(0..=sorted.len());
    let pick = |rng: &mut ChaCha8Rng, part: &[Node]| -> NodeSet {
        if part.is_empty() {
            return NodeSet::new();
        }
        let k = rng.gen_range(0..=3.min(part.len()));
        (0..k).map(|_| part[rng.gen_range(0..part.len())].clone()).collect()
    };
    (pick(rng, &sorted[..cut]), pick(rng, &sorted[cut..]))
}

#[test]
fn density_witness_against_brute_force() {
    let mut sorted = nodes_upto(6);
    sorted.sort_by(q_cmp);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let (a, b) = random_cut(&mut rng, &sorted);
        let between = |c: &Node| {
            !a.contains(c)
                && !b.contains(c)
                && a.iter().all(|x| q_less(x.bits(), c.bits()))
                && b.iter().all(|y| q_less(c.bits(), y.bits()))
        };
        let gamma = a.iter().chain(b.iter()).map(Node::len).max().map_or(0, |l| l + 1);
        let brute = nodes_upto(gamma).into_iter().any(|c| between(&c));
        let c = density_witness(&a, &b).unwrap();
        assert_eq!(c.len(), gamma);
        assert!(between(&c), "A={a:?} B={b:?} c={c:?}");
        assert!(brute);
    }
}

#[test]
fn density_rejects_misordered_sets() {
    let a = NodeSet::parse(&["1"]).unwrap();
    let b = NodeSet::parse(&["0"]).unwrap();
    assert!(density_witness(&a, &b).is_err());
}

fn arb_node(max: usize) -> impl Strategy<Value = Node> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(Node::from_bits)
}

proptest! {
    #[test]
    fn meet_laws(s in arb_node(8), t in arb_node(8)) {
        let m = meet(&s, &t);
        prop_assert_eq!(&m, &meet(&t, &s));
        prop_assert_eq!(meet(&s, &s), s.clone());
        prop_assert!(m.is_prefix_of(&s) && m.is_prefix_of(&t));
        // maximality: the next bits differ or one side has ended
        prop_assert!(m.len() == s.len() || m.len() == t.len() || s.bit(m.len()) != t.bit(m.len()));
    }

    #[test]
    fn passing_number_is_the_bit(t in arb_node(8), s in arb_node(8)) {
        match passing_number(&t, &s) {
            Ok(b) => prop_assert_eq!(Some(b), t.bit(s.len())),
            Err(_) => prop_assert!(s.len() >= t.len()),
        }
    }

    #[test]
    fn text_roundtrip(s in arb_node(12)) {
        prop_assert_eq!(s.to_string().parse::<Node>().unwrap(), s);
    }
}
