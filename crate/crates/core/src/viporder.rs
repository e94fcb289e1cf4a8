//! Level orders and the vip constraint systems.
//!
//! A level order is a total order on a set of nodes that extends the length
//! order, so it is determined by how it arranges each level. Finite orders
//! are stored explicitly ([`LevelOrder`]); orders on the whole tree are given
//! by a rule ([`LengthLex`], [`VipRule`]). Both implement [`LevelOrdering`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::collapse::SimilarityTree;
use crate::error::{precondition, unsupported, Error, Result};
use crate::treecore::{is_diagonal, is_strongly_diagonal, is_transverse, meet_closure, Node, NodeSet};

/// Something that orders the nodes of each level.
pub trait LevelOrdering: Sync {
    /// Compares two distinct nodes of equal length, or `None` when the
    /// ordering does not cover them.
    fn cmp_level(&self, a: &Node, b: &Node) -> Option<Ordering>;

    /// The full level order: shorter nodes first, then [`cmp_level`](Self::cmp_level).
    fn cmp_nodes(&self, a: &Node, b: &Node) -> Option<Ordering> {
        match a.len().cmp(&b.len()) {
            Ordering::Equal if a == b => Some(Ordering::Equal),
            Ordering::Equal => self.cmp_level(a, b),
            o => Some(o),
        }
    }

    /// Sorts one level; fails if some pair is not covered.
    fn sort_level(&self, level: &mut [Node]) -> Result<()> {
        let mut missing = None;
        level.sort_by(|a, b| {
            if a == b {
                return Ordering::Equal;
            }
            self.cmp_level(a, b).unwrap_or_else(|| {
                missing.get_or_insert_with(|| (a.clone(), b.clone()));
                a.cmp(b)
            })
        });
        match missing {
            Some((a, b)) => precondition(format!("level order does not compare {a:?} and {b:?}")),
            None => Ok(()),
        }
    }
}

/// Length first, then lexicographic within a level.
#[derive(Debug, Clone, Copy, Default)]
pub struct LengthLex;

impl LevelOrdering for LengthLex {
    fn cmp_level(&self, a: &Node, b: &Node) -> Option<Ordering> {
        Some(a.cmp(b))
    }
}

/// An explicit level order on a finite carrier.
#[derive(Clone)]
pub struct LevelOrder {
    levels: Vec<Vec<Node>>,
    rank: HashMap<Node, usize>,
}

impl LevelOrder {
    /// Builds an order from levels listed by increasing length, each in order.
    pub fn from_levels(levels: Vec<Vec<Node>>) -> Result<Self> {
        let levels: Vec<Vec<Node>> = levels.into_iter().filter(|l| !l.is_empty()).collect();
        let mut rank = HashMap::new();
        let mut prev_len = None;
        for level in &levels {
            let len = level[0].len();
            if prev_len.is_some_and(|p| p >= len) {
                return precondition("levels must be listed by strictly increasing length");
            }
            prev_len = Some(len);
            for (i, n) in level.iter().enumerate() {
                if n.len() != len {
                    return precondition(format!("{n:?} does not belong on level {len}"));
                }
                if rank.insert(n.clone(), i).is_some() {
                    return precondition(format!("{n:?} listed twice"));
                }
            }
        }
        Ok(LevelOrder { levels, rank })
    }

    /// Orders `carrier` by `ord`.
    pub fn from_ordering(carrier: &NodeSet, ord: &dyn LevelOrdering) -> Result<Self> {
        let mut by_len: BTreeMap<usize, Vec<Node>> = BTreeMap::new();
        for n in carrier {
            by_len.entry(n.len()).or_default().push(n.clone());
        }
        let mut levels = Vec::with_capacity(by_len.len());
        for (_, mut level) in by_len {
            ord.sort_level(&mut level)?;
            levels.push(level);
        }
        Self::from_levels(levels)
    }

    pub fn length_lex(carrier: &NodeSet) -> Self {
        Self::from_ordering(carrier, &LengthLex).expect("length-lex covers every level")
    }

    /// The nonempty levels, shortest first.
    pub fn levels(&self) -> &[Vec<Node>] {
        &self.levels
    }

    /// The ordered level of the given length, if the carrier meets it.
    pub fn level(&self, len: usize) -> Option<&[Node]> {
        self.levels
            .iter()
            .find(|l| l[0].len() == len)
            .map(Vec::as_slice)
    }

    pub fn carrier(&self) -> NodeSet {
        self.levels.iter().flatten().cloned().collect()
    }

    pub fn contains(&self, n: &Node) -> bool {
        self.rank.contains_key(n)
    }

    /// Position of `n` within its level.
    pub fn position(&self, n: &Node) -> Option<usize> {
        self.rank.get(n).copied()
    }
}

impl LevelOrdering for LevelOrder {
    fn cmp_level(&self, a: &Node, b: &Node) -> Option<Ordering> {
        Some(self.rank.get(a)?.cmp(self.rank.get(b)?))
    }
}

impl PartialEq for LevelOrder {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl Eq for LevelOrder {}

impl fmt::Debug for LevelOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.levels).finish()
    }
}

/// Compact text form: levels separated by `/`, nodes by `,`, root as `-`.
impl fmt::Display for LevelOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .levels
            .iter()
            .map(|l| {
                l.iter()
                    .map(|n| if n.is_root() { "-".to_string() } else { n.to_string() })
                    .join(",")
            })
            .join("/");
        f.write_str(&s)
    }
}

impl Serialize for LevelOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.levels.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LevelOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let levels = Vec::<Vec<Node>>::deserialize(d)?;
        LevelOrder::from_levels(levels).map_err(serde::de::Error::custom)
    }
}

/// How [`VipRule`] breaks ties that the vip constraints leave open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieBreak {
    Lex,
    /// A fixed pseudo-random order keyed by the seed.
    Hash(u64),
}

fn mix(seed: u64, n: &Node) -> u64 {
    // splitmix64 over the bits
    let mut h = seed ^ (n.len() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    for chunk in n.bits().chunks(64) {
        let mut w = 0u64;
        for (i, b) in chunk.iter().enumerate() {
            w |= u64::from(*b) << i;
        }
        h = h.wrapping_add(w).wrapping_add(0x9E37_79B9_7F4A_7C15);
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}

/// A pre-vip level order on the whole tree.
///
/// On a level holding a designated node `d`, `d` comes first and the rest
/// are sorted by `lg(d∧u)` ascending; remaining ties, and levels without a
/// designated node, go to the tie-break.
#[derive(Debug, Clone)]
pub struct VipRule {
    designated: BTreeMap<usize, Node>,
    tie: TieBreak,
}

impl VipRule {
    pub fn new(designated: &NodeSet, tie: TieBreak) -> Result<Self> {
        if !is_transverse(designated) {
            return precondition("designated nodes must have distinct lengths");
        }
        Ok(VipRule {
            designated: designated.iter().map(|d| (d.len(), d.clone())).collect(),
            tie,
        })
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie
    }

    fn tie_cmp(&self, a: &Node, b: &Node) -> Ordering {
        match self.tie {
            TieBreak::Lex => a.cmp(b),
            TieBreak::Hash(seed) => mix(seed, a).cmp(&mix(seed, b)).then_with(|| a.cmp(b)),
        }
    }
}

impl LevelOrdering for VipRule {
    fn cmp_level(&self, a: &Node, b: &Node) -> Option<Ordering> {
        let Some(d) = self.designated.get(&a.len()) else {
            return Some(self.tie_cmp(a, b));
        };
        Some(if a == d {
            Ordering::Less
        } else if b == d {
            Ordering::Greater
        } else {
            a.meet_len(d)
                .cmp(&b.meet_len(d))
                .then_with(|| self.tie_cmp(a, b))
        })
    }
}

/// A similarity type together with a level order on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedType {
    pub tree: SimilarityTree,
    pub order: LevelOrder,
}

impl OrderedType {
    pub fn new(tree: SimilarityTree, order: LevelOrder) -> Result<Self> {
        if order.carrier() != *tree.nodes() {
            return precondition("order carrier differs from the tree's node set");
        }
        Ok(OrderedType { tree, order })
    }

    /// Text id `<type id>@<order>`.
    pub fn id(&self) -> String {
        format!("{}@{}", self.tree.type_id(), self.order)
    }
}

fn ordered_level(tree: &SimilarityTree, ord: &LevelOrder, len: usize) -> Option<Vec<Node>> {
    let level = tree.level(len);
    if level.is_empty() {
        return Some(Vec::new());
    }
    let got = ord.level(len)?;
    (got.len() == level.len() && got.iter().all(|n| tree.nodes().contains(n))).then(|| got.to_vec())
}

/// Least-element and clause (1) for every `d ∈ D`.
pub fn is_pre_vip(tree: &SimilarityTree, d_set: &NodeSet, ord: &LevelOrder) -> bool {
    if !is_transverse(d_set) || ord.carrier() != *tree.nodes() {
        return false;
    }
    for d in d_set {
        let Some(level) = ordered_level(tree, ord, d.len()) else {
            return false;
        };
        if level.is_empty() {
            continue;
        }
        if level[0] != *d {
            return false;
        }
        // meet lengths with d must be non-decreasing along the level
        let meets: Vec<usize> = level[1..].iter().map(|u| u.meet_len(d)).collect();
        if meets.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
    }
    true
}

/// Clause (2) against the leaf set `d_set` of a diagonal set, with `≺` given by
/// `ord` (used only when two leaves share a level, which diagonality rules out).
fn clause_two(d_set: &NodeSet, closure: &NodeSet, ord: &dyn LevelOrdering) -> bool {
    for d in closure {
        let k = d.len();
        let above: Vec<&Node> = d_set
            .iter()
            .filter(|u| *u != d && u.len() > k && !d.is_prefix_of(u))
            .collect();
        for u in &above {
            for v in &above {
                if u.bit(k) == Some(0)
                    && v.bit(k) == Some(1)
                    && u.meet_len(d) == v.meet_len(d)
                    && ord.cmp_nodes(u, v) != Some(Ordering::Less)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether clause (2) can hold for a diagonal leaf set at all. Clause (2)
/// only ever compares leaves of different lengths, so it is a property of
/// the set, independent of how each level is ordered.
pub fn vip_compatible(leaves: &NodeSet) -> bool {
    clause_two(leaves, &meet_closure(leaves), &LengthLex)
}

/// Pre-`closure(D)`-vip plus clause (2).
pub fn is_vip(tree: &SimilarityTree, d_set: &NodeSet, ord: &LevelOrder) -> bool {
    if !is_diagonal(d_set) {
        return false;
    }
    let closure = meet_closure(d_set);
    is_pre_vip(tree, &closure, ord) && clause_two(d_set, &closure, ord)
}

fn check_m_type(tau: &SimilarityTree) -> Result<()> {
    let m = tau.leaves().len();
    if m == 0 || !is_strongly_diagonal(tau.leaves()) || tau.height() > 2 * m - 2 {
        return unsupported(format!("{} is not an m-type", tau.type_id()));
    }
    Ok(())
}

/// For each level of `tau`: the bucket sizes forced by clause (1), and the
/// nodes in each bucket.
fn level_buckets(tau: &SimilarityTree) -> Vec<(Option<Node>, Vec<Vec<Node>>)> {
    let closure = meet_closure(tau.leaves());
    (0..=tau.height())
        .map(|k| {
            let level = tau.level(k);
            let d = closure.iter().find(|c| c.len() == k).cloned();
            match &d {
                Some(d) => {
                    let mut buckets: BTreeMap<usize, Vec<Node>> = BTreeMap::new();
                    for u in level.into_iter().filter(|u| u != d) {
                        buckets.entry(u.meet_len(d)).or_default().push(u);
                    }
                    (Some(d.clone()), buckets.into_values().collect())
                }
                None => (None, vec![level]),
            }
        })
        .collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Number of vip orders of an m-type, without listing them.
pub fn count_vip_orders(tau: &SimilarityTree) -> Result<u64> {
    check_m_type(tau)?;
    if !vip_compatible(tau.leaves()) {
        return Ok(0);
    }
    Ok(level_buckets(tau)
        .iter()
        .flat_map(|(_, b)| b.iter().map(|b| factorial(b.len())))
        .product())
}

/// Every vip order of an m-type with respect to its leaf set.
///
/// Orders are listed with level 0 most significant; within a level, buckets
/// vary in lexicographic permutation order.
pub fn enumerate_vip_orders(tau: &SimilarityTree) -> Result<Vec<LevelOrder>> {
    check_m_type(tau)?;
    if !vip_compatible(tau.leaves()) {
        return Ok(Vec::new());
    }
    let per_level: Vec<Vec<Vec<Node>>> = level_buckets(tau)
        .into_iter()
        .map(|(d, buckets)| {
            buckets
                .into_iter()
                .map(|b| {
                    let k = b.len();
                    b.into_iter().permutations(k).collect::<Vec<_>>()
                })
                .multi_cartesian_product()
                .map(|parts| d.iter().cloned().chain(parts.into_iter().flatten()).collect())
                .collect()
        })
        .collect();
    per_level
        .into_iter()
        .multi_cartesian_product()
        .map(LevelOrder::from_levels)
        .collect()
}

/// Reorders each level of `base` holding some `d ∈ D` into a pre-D-vip order:
/// `d` first, the rest by `lg(d∧·)` ascending, ties kept in `base` order.
pub fn make_pre_vip(base: &LevelOrder, d_set: &NodeSet) -> Result<LevelOrder> {
    if !is_transverse(d_set) {
        return precondition("D must be transverse");
    }
    let by_len: BTreeMap<usize, &Node> = d_set.iter().map(|d| (d.len(), d)).collect();
    let levels = base
        .levels()
        .iter()
        .map(|level| {
            let mut level = level.clone();
            if let Some(d) = by_len.get(&level[0].len()) {
                // stable sort keeps base order inside each bucket
                level.sort_by_key(|u| if u == *d { None } else { Some(u.meet_len(d)) });
            }
            level
        })
        .collect();
    LevelOrder::from_levels(levels)
}

impl std::str::FromStr for LevelOrder {
    type Err = Error;

    /// Parses the compact text form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let levels = s
            .split('/')
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split(',')
                    .map(|n| if n == "-" { Ok(Node::root()) } else { Node::parse(n) })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LevelOrder::from_levels(levels)
    }
}
