//! Collapse of diagonal sets to similarity types.
//!
//! For a diagonal set `x` with meet closure `a₀, …, a_{k−1}` (sorted by
//! length `L₀ < … < L_{k−1}`), the collapse of `a_i` is the word
//! `⟨a_i(L₀), …, a_i(L_{i−1})⟩`, so closure element `i` lands on level `i`.
//! The similarity tree is the prefix closure of the collapsed members of `x`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{precondition, unsupported, Error, Result};
use crate::treecore::{
    is_diagonal, is_sparse_diagonal, is_strongly_diagonal, meet_closure, Node, NodeSet,
};
use crate::viporder::{LevelOrder, LevelOrdering};

/// Canonical key of a type: its leaves in canonical node order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TypeId(pub Vec<Node>);

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for TypeId {
    type Err = Error;

    /// `"0;10"`; the root leaf may be written as `""` or `"-"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut leaves: Vec<Node> = s
            .split(';')
            .map(|p| if p == "-" { Ok(Node::root()) } else { Node::parse(p) })
            .collect::<Result<_>>()?;
        leaves.sort();
        leaves.dedup();
        Ok(TypeId(leaves))
    }
}

impl Serialize for TypeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TypeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite prefix-closed subtree, identified by its leaves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimilarityTree {
    nodes: NodeSet,
    leaves: NodeSet,
}

impl SimilarityTree {
    /// The prefix closure of an antichain, whose members become the leaves.
    pub fn from_leaves(leaves: &NodeSet) -> Result<Self> {
        if leaves.is_empty() {
            return precondition("a similarity tree needs at least one leaf");
        }
        let tree = Self::from_nodes(leaves.prefix_closure())?;
        if tree.leaves != *leaves {
            return precondition("leaves must form an antichain");
        }
        Ok(tree)
    }

    pub fn from_nodes(nodes: NodeSet) -> Result<Self> {
        if nodes.is_empty() {
            return precondition("a similarity tree is nonempty");
        }
        if let Some(n) = nodes.iter().find(|n| !n.is_root() && !nodes.contains(&n.restrict(n.len() - 1))) {
            return precondition(format!("node set is not prefix closed at {n:?}"));
        }
        let leaves = nodes
            .iter()
            .filter(|n| !nodes.contains(&n.child(0)) && !nodes.contains(&n.child(1)))
            .cloned()
            .collect();
        Ok(SimilarityTree { nodes, leaves })
    }

    pub fn from_type_id(id: &TypeId) -> Result<Self> {
        Self::from_leaves(&id.0.iter().cloned().collect())
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn leaves(&self) -> &NodeSet {
        &self.leaves
    }

    pub fn type_id(&self) -> TypeId {
        TypeId(self.leaves.to_vec())
    }

    /// Length of the longest node.
    pub fn height(&self) -> usize {
        self.nodes.max_len().unwrap_or(0)
    }

    /// Nodes of length `k`, in canonical order.
    pub fn level(&self, k: usize) -> Vec<Node> {
        self.nodes.level(k)
    }

    /// Number of nodes on each level `0..=height`.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.height() + 1];
        for n in &self.nodes {
            sizes[n.len()] += 1;
        }
        sizes
    }

    /// Leaves strongly diagonal and the tree inside `2^{≤2m−2}`.
    pub fn is_m_type(&self) -> bool {
        let m = self.leaves.len();
        is_strongly_diagonal(&self.leaves) && self.height() <= 2 * m - 2
    }

    pub fn is_sparse(&self) -> bool {
        self.is_m_type() && is_sparse_diagonal(&self.leaves)
    }
}

impl PartialOrd for SimilarityTree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimilarityTree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.leaves.iter().cmp(other.leaves.iter())
    }
}

impl Serialize for SimilarityTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.type_id().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimilarityTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let id = TypeId::deserialize(d)?;
        SimilarityTree::from_type_id(&id).map_err(serde::de::Error::custom)
    }
}

/// A finite map between node sets, checked against the strong-embedding clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub pairs: BTreeMap<Node, Node>,
}

impl EmbeddingWitness {
    pub fn identity(s: &NodeSet) -> Self {
        EmbeddingWitness {
            pairs: s.iter().map(|n| (n.clone(), n.clone())).collect(),
        }
    }

    /// Injective, and preserves extension, relative length and passing numbers.
    pub fn is_strong_embedding(&self) -> bool {
        let pairs: Vec<(&Node, &Node)> = self.pairs.iter().collect();
        let image: NodeSet = self.pairs.values().cloned().collect();
        if image.len() != pairs.len() {
            return false;
        }
        for &(s, es) in &pairs {
            for &(t, et) in &pairs {
                if s.is_prefix_of(t) != es.is_prefix_of(et)
                    || s.len().cmp(&t.len()) != es.len().cmp(&et.len())
                {
                    return false;
                }
                if s.len() < t.len() && et.bit(es.len()) != t.bit(s.len()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of collapsing a diagonal set.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub tree: SimilarityTree,
    /// Collapsed closure node ↦ closure node of the input.
    pub witness: EmbeddingWitness,
    /// Tree node on level `k` ↦ its ambient node of length `L_k`.
    pub ambient: BTreeMap<Node, Node>,
    /// `L_k`, the length of the `k`-th closure element.
    pub lengths: Vec<usize>,
}

impl Collapse {
    /// Transports an ambient level ordering onto the collapsed tree.
    pub fn induced_order(&self, amb: &dyn LevelOrdering) -> Result<LevelOrder> {
        let mut levels = Vec::new();
        for k in 0..=self.tree.height() {
            let mut level = self.tree.level(k);
            let mut err = None;
            level.sort_by(|a, b| {
                if a == b {
                    return std::cmp::Ordering::Equal;
                }
                let (ea, eb) = (&self.ambient[a], &self.ambient[b]);
                amb.cmp_level(ea, eb).unwrap_or_else(|| {
                    err.get_or_insert_with(|| (ea.clone(), eb.clone()));
                    a.cmp(b)
                })
            });
            if let Some((a, b)) = err {
                return precondition(format!("ambient order does not compare {a:?} and {b:?}"));
            }
            levels.push(level);
        }
        LevelOrder::from_levels(levels)
    }
}

/// Collapses a diagonal set to its similarity tree.
pub fn clp(x: &NodeSet) -> Result<Collapse> {
    if x.is_empty() || !is_diagonal(x) {
        return unsupported("collapse needs a nonempty diagonal set");
    }
    let closure: Vec<Node> = meet_closure(x).to_vec(); // canonical order = by length
    let lengths: Vec<usize> = closure.iter().map(Node::len).collect();
    let collapsed = |a: &Node, i: usize| Node::from_bits(lengths[..i].iter().map(|&l| a.bits()[l]));

    let mut witness = BTreeMap::new();
    let mut leaves = NodeSet::new();
    for (i, a) in closure.iter().enumerate() {
        let c = collapsed(a, i);
        if x.contains(a) {
            leaves.insert(c.clone());
        }
        witness.insert(c, a.clone());
    }
    let tree = SimilarityTree::from_leaves(&leaves)?;

    let mut ambient = BTreeMap::new();
    for y in tree.nodes() {
        let k = y.len();
        let (_, a) = witness
            .iter()
            .find(|(c, _)| y.is_prefix_of(c))
            .expect("every tree node lies below a collapsed leaf");
        ambient.insert(y.clone(), a.restrict(lengths[k]));
    }
    Ok(Collapse {
        tree,
        witness: EmbeddingWitness { pairs: witness },
        ambient,
        lengths,
    })
}

/// The order induced on `clp(x)` by an ambient level ordering.
pub fn induced_order(x: &NodeSet, amb: &dyn LevelOrdering) -> Result<LevelOrder> {
    clp(x)?.induced_order(amb)
}

/// Same collapse and the same induced order.
pub fn same_ordered_type(x: &NodeSet, y: &NodeSet, amb: &dyn LevelOrdering) -> Result<bool> {
    let (cx, cy) = (clp(x)?, clp(y)?);
    Ok(cx.tree == cy.tree && cx.induced_order(amb)? == cy.induced_order(amb)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::viporder::LengthLex;

    fn set(items: &[&str]) -> NodeSet {
        NodeSet::parse(items).unwrap()
    }

    #[test]
    fn worked_example() {
        let x = set(&["0001", "001", "010001"]);
        let c = clp(&x).unwrap();
        assert_eq!(
            *c.tree.nodes(),
            set(&["", "0", "1", "00", "01", "10", "001", "100", "1000"])
        );
        assert!(c.witness.is_strong_embedding());
        let amb: LevelOrder = "0/00,01/000,010,001/0001,0100".parse().unwrap();
        let ind = c.induced_order(&amb).unwrap();
        assert_eq!(ind.to_string(), "-/0,1/00,10,01/001,100/1000");
    }

    #[test]
    fn singleton_collapses_to_root() {
        let c = clp(&set(&["0110"])).unwrap();
        assert_eq!(*c.tree.nodes(), set(&[""]));
        assert_eq!(c.witness.pairs[&Node::root()], Node::parse("0110").unwrap());
    }

    #[test]
    fn rejects_non_diagonal() {
        assert!(matches!(clp(&set(&["00", "01", "1"])), Err(Error::Unsupported(_))));
        assert!(clp(&set(&["0", "01"])).is_err());
    }

    #[test]
    fn strong_embedding_examples() {
        assert!(EmbeddingWitness::identity(&set(&["", "0", "11"])).is_strong_embedding());
        let bad = EmbeddingWitness {
            pairs: [("", ""), ("0", "0"), ("1", "11")]
                .iter()
                .map(|(a, b)| (Node::parse(a).unwrap(), Node::parse(b).unwrap()))
                .collect(),
        };
        assert!(!bad.is_strong_embedding());
    }

    #[test]
    fn similarity_examples() {
        let a = set(&["0", "10"]);
        assert!(same_ordered_type(&a, &a, &LengthLex).unwrap());
        assert!(same_ordered_type(&a, &set(&["00", "100"]), &LengthLex).unwrap());
        assert!(!same_ordered_type(&a, &set(&["1", "00"]), &LengthLex).unwrap());
    }

    #[test]
    fn type_id_text() {
        let id: TypeId = "10;0".parse().unwrap();
        assert_eq!(id.to_string(), "0;10");
        let root: TypeId = "-".parse().unwrap();
        assert_eq!(root.to_string(), "");
        assert_eq!(SimilarityTree::from_type_id(&root).unwrap().height(), 0);
    }
}
