//! Finite binary words and the orders defined on them.
//!
//! A [`Node`] is a finite 0/1 word; the empty word is the root. Nodes are
//! ordered canonically by length and then numerically, which is the order
//! [`NodeSet`] stores its members in. The tree orders proper are end
//! extension ([`Node::is_prefix_of`]), the lexicographic order on
//! incomparable nodes ([`lex_lt`]) and the dense linear order `≤_Q`
//! ([`q_cmp`]).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{precondition, Error, Result};

/// A finite binary word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Node {
    bits: Vec<u8>,
}

impl Node {
    pub fn root() -> Self {
        Node { bits: Vec::new() }
    }

    /// Builds a node from 0/1 values. Any nonzero value is read as 1.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        Node {
            bits: bits.into_iter().map(|b| u8::from(b != 0)).collect(),
        }
    }

    /// Parses the canonical text form, a string over `{0,1}`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::Parse(format!(
                        "invalid character {c:?} at position {i} in node {s:?}"
                    )))
                }
            }
        }
        Ok(Node { bits })
    }

    // the empty word is `is_root`
    #[allow(clippy::len_without_is_empty)]
    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_root(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The bit at position `i`, if the node is long enough.
    #[inline]
    pub fn bit(&self, i: usize) -> Option<u8> {
        self.bits.get(i).copied()
    }

    /// `self⌢⟨bit⟩`.
    pub fn child(&self, bit: u8) -> Node {
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.extend_from_slice(&self.bits);
        bits.push(u8::from(bit != 0));
        Node { bits }
    }

    /// The initial segment of length `n` (the whole node if `n ≥ len`).
    pub fn restrict(&self, n: usize) -> Node {
        Node {
            bits: self.bits[..n.min(self.bits.len())].to_vec(),
        }
    }

    /// Extends with zeros up to length `n`; longer nodes are returned unchanged.
    pub fn pad_zeros(&self, n: usize) -> Node {
        let mut bits = self.bits.clone();
        if bits.len() < n {
            bits.resize(n, 0);
        }
        Node { bits }
    }

    /// `self ⊆ other`: `self` is an initial segment of `other`.
    #[inline]
    pub fn is_prefix_of(&self, other: &Node) -> bool {
        other.bits.starts_with(&self.bits)
    }

    #[inline]
    pub fn is_proper_prefix_of(&self, other: &Node) -> bool {
        self.bits.len() < other.bits.len() && self.is_prefix_of(other)
    }

    /// Neither node extends the other.
    #[inline]
    pub fn incomparable(&self, other: &Node) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    /// Length of the longest common initial segment.
    #[inline]
    pub fn meet_len(&self, other: &Node) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .take_while(|(a, b)| a == b)
            .count()
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            f.write_str(if *b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Node::parse(s)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Node::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A finite set of nodes kept in canonical order (length, then bits).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet {
    members: BTreeSet<Node>,
}

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses node strings, rejecting malformed ones.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items.iter().map(|s| Node::parse(s.as_ref())).collect()
    }

    pub fn insert(&mut self, n: Node) -> bool {
        self.members.insert(n)
    }

    pub fn contains(&self, n: &Node) -> bool {
        self.members.contains(n)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Node> + ExactSizeIterator + Clone {
        self.members.iter()
    }

    pub fn first(&self) -> Option<&Node> {
        self.members.first()
    }

    pub fn last(&self) -> Option<&Node> {
        self.members.last()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn to_vec(&self) -> Vec<Node> {
        self.members.iter().cloned().collect()
    }

    /// Every initial segment of every member.
    pub fn prefix_closure(&self) -> NodeSet {
        let mut out = BTreeSet::new();
        for n in &self.members {
            for i in 0..=n.len() {
                out.insert(n.restrict(i));
            }
        }
        NodeSet { members: out }
    }

    /// Members of length `len`, in canonical order.
    pub fn level(&self, len: usize) -> Vec<Node> {
        self.members
            .iter()
            .filter(|n| n.len() == len)
            .cloned()
            .collect()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.members.last().map(Node::len)
    }
}

impl FromIterator<Node> for NodeSet {
    fn from_iter<I: IntoIterator<Item = Node>>(iter: I) -> Self {
        NodeSet {
            members: iter.into_iter().collect(),
        }
    }
}

impl Extend<Node> for NodeSet {
    fn extend<I: IntoIterator<Item = Node>>(&mut self, iter: I) {
        self.members.extend(iter)
    }
}

impl IntoIterator for NodeSet {
    type Item = Node;
    type IntoIter = std::collections::btree_set::IntoIter<Node>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.into_iter()
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a Node;
    type IntoIter = std::collections::btree_set::Iter<'a, Node>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// All nodes of length at most `depth`, in canonical order.
pub fn full_tree(depth: usize) -> NodeSet {
    let mut out = NodeSet::new();
    let mut level = vec![Node::root()];
    for _ in 0..=depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for n in &level {
            next.push(n.child(0));
            next.push(n.child(1));
        }
        out.extend(level);
        level = next;
    }
    out
}

/// Longest common initial segment.
pub fn meet(s: &Node, t: &Node) -> Node {
    s.restrict(s.meet_len(t))
}

/// Lexicographic order on incomparable nodes: true iff `s` leaves the meet
/// through its 0-branch.
pub fn lex_lt(s: &Node, t: &Node) -> Result<bool> {
    if !s.incomparable(t) {
        return precondition(format!("lex_lt needs incomparable nodes, got {s:?} and {t:?}"));
    }
    Ok(s.bits[s.meet_len(t)] == 0)
}

/// The dense linear order `≤_Q`.
///
/// `s <_Q t` iff `t⌢⟨0⟩ ⊆ s`, or `s⌢⟨1⟩ ⊆ t`, or the two are incomparable
/// and `s` is lexicographically smaller.
pub fn q_cmp(s: &Node, t: &Node) -> Ordering {
    if s == t {
        return Ordering::Equal;
    }
    let k = s.meet_len(t);
    if k == t.len() {
        // t ⊊ s
        if s.bits[k] == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if k == s.len() {
        // s ⊊ t
        if t.bits[k] == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if s.bits[k] == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// The passing number of `t` at `s`, namely `t(lg(s))`.
pub fn passing_number(t: &Node, s: &Node) -> Result<u8> {
    match t.bit(s.len()) {
        Some(b) => Ok(b),
        None => precondition(format!(
            "passing number needs lg(s) < lg(t), got lg(s)={} and lg(t)={}",
            s.len(),
            t.len()
        )),
    }
}

/// The set of all pairwise meets. Contains `a` itself (as `s ∧ s`).
pub fn meet_closure(a: &NodeSet) -> NodeSet {
    let v: Vec<&Node> = a.iter().collect();
    let mut out: NodeSet = a.clone();
    for (i, s) in v.iter().enumerate() {
        for t in &v[i + 1..] {
            out.insert(meet(s, t));
        }
    }
    out
}

/// Structural flags of a finite set of nodes.
///
/// `sparse` is reported for sparse *diagonal* sets, so the flags always
/// satisfy sparse ⇒ strongly_diagonal ⇒ diagonal ⇒ antichain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetProfile {
    pub antichain: bool,
    pub transverse: bool,
    pub diagonal: bool,
    pub strongly_diagonal: bool,
    pub sparse: bool,
}

pub fn is_antichain(a: &NodeSet) -> bool {
    let v: Vec<&Node> = a.iter().collect();
    v.iter()
        .enumerate()
        .all(|(i, s)| v[i + 1..].iter().all(|t| s.incomparable(t)))
}

/// Distinct members have distinct lengths.
pub fn is_transverse(a: &NodeSet) -> bool {
    let mut prev = None;
    for n in a {
        if prev == Some(n.len()) {
            return false;
        }
        prev = Some(n.len());
    }
    true
}

pub fn is_diagonal(a: &NodeSet) -> bool {
    is_antichain(a) && is_transverse(&meet_closure(a))
}

/// Checks the passing-number condition shared by strong diagonality and
/// sparseness: for `t ∈ A` and `s ∈ closure(A) \ {t}` with `lg(s) < lg(t)`
/// and `t(lg(s)) = 1`, require `s ⊆ t`, or (when `allow_leaf` holds) `s`
/// has no proper extension in `A`.
fn passing_condition(a: &NodeSet, closure: &NodeSet, allow_leaf: bool) -> bool {
    for t in a {
        for s in closure {
            if s == t || s.len() >= t.len() || t.bits[s.len()] != 1 || s.is_prefix_of(t) {
                continue;
            }
            if allow_leaf && !a.iter().any(|u| s.is_proper_prefix_of(u)) {
                continue;
            }
            return false;
        }
    }
    true
}

pub fn is_strongly_diagonal(a: &NodeSet) -> bool {
    if !is_antichain(a) {
        return false;
    }
    let c = meet_closure(a);
    is_transverse(&c) && passing_condition(a, &c, true)
}

/// Sparse and diagonal.
pub fn is_sparse_diagonal(a: &NodeSet) -> bool {
    if !is_antichain(a) {
        return false;
    }
    let c = meet_closure(a);
    is_transverse(&c) && passing_condition(a, &c, false)
}

pub fn profile(a: &NodeSet) -> SetProfile {
    let antichain = is_antichain(a);
    let transverse = is_transverse(a);
    let closure = meet_closure(a);
    let diagonal = antichain && is_transverse(&closure);
    let strongly_diagonal = diagonal && passing_condition(a, &closure, true);
    let sparse = diagonal && passing_condition(a, &closure, false);
    SetProfile {
        antichain,
        transverse,
        diagonal,
        strongly_diagonal,
        sparse,
    }
}

/// A node strictly between `A` and `B` in `≤_Q`.
///
/// With `γ = 1 + max length in A∪B` (0 for two empty sets) the witness `c`
/// has length `γ` and `c(α) = 0` iff `c↾α ∈ B ∪ B*`, where `B*` collects the
/// `t` with `t⌢⟨0⟩ ⊆ b` for some `b ∈ B`.
pub fn density_witness(a: &NodeSet, b: &NodeSet) -> Result<Node> {
    for x in a {
        for y in b {
            if q_cmp(x, y) != Ordering::Less {
                return precondition(format!("need A <_Q B, but {x:?} is not below {y:?}"));
            }
        }
    }
    let gamma = a.iter().chain(b.iter()).map(Node::len).max().map_or(0, |l| l + 1);
    let zero_here = |c: &Node| {
        b.contains(c) || b.iter().any(|y| c.is_proper_prefix_of(y) && y.bits[c.len()] == 0)
    };
    let mut c = Node::root();
    for _ in 0..gamma {
        let bit = if zero_here(&c) { 0 } else { 1 };
        c.bits.push(bit);
    }
    Ok(c)
}
