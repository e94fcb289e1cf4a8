//! Type-classifying colorings of m-subsets and audits of which colors occur.
//!
//! A color is a position in a palette of ordered types. Class 0 also absorbs
//! every subset whose ordered type is not in the palette; such results carry
//! `overflow = true`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::census::enumerate_types;
use crate::collapse::clp;
use crate::diagonal::DiagMap;
use crate::error::{precondition, Result};
use crate::rado::{tree_embed, Graph};
use crate::treecore::{is_sparse_diagonal, meet_closure, Node, NodeSet};
use crate::viporder::{
    enumerate_vip_orders, is_vip, LevelOrdering, OrderedType, TieBreak, VipRule,
};

/// Largest arity for which palettes are materialized.
pub const MAX_PALETTE_M: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Sparse vip m-types; colors subsets of the tree.
    Linear,
    /// All vip m-types; colors vertex sets of a graph.
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Color {
    pub index: usize,
    pub overflow: bool,
}

impl Color {
    const OVERFLOW: Color = Color { index: 0, overflow: true };
}

/// The ordered types of one side at arity `m`, in canonical order: types by
/// id, then each type's vip orders in enumeration order.
#[derive(Debug, Clone)]
pub struct Palette {
    side: Side,
    m: usize,
    entries: Vec<OrderedType>,
    index: HashMap<String, usize>,
}

impl Palette {
    pub fn new(side: Side, m: usize) -> Result<Self> {
        if m == 0 || m > MAX_PALETTE_M {
            return precondition(format!("palettes are built for 1 ≤ m ≤ {MAX_PALETTE_M}, got {m}"));
        }
        let mut entries = Vec::new();
        for tree in enumerate_types(m, side == Side::Linear)? {
            for order in enumerate_vip_orders(&tree)? {
                entries.push(OrderedType::new(tree.clone(), order)?);
            }
        }
        let index = entries.iter().enumerate().map(|(i, t)| (t.id(), i)).collect();
        Ok(Palette { side, m, entries, index })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[OrderedType] {
        &self.entries
    }

    pub fn position(&self, t: &OrderedType) -> Option<usize> {
        self.index.get(&t.id()).copied()
    }

    /// Color of an image set: its collapse with the induced order.
    pub fn color_of(&self, x: &NodeSet, amb: &dyn LevelOrdering) -> Result<Color> {
        let Ok(c) = clp(x) else {
            return Ok(Color::OVERFLOW);
        };
        let t = OrderedType::new(c.tree.clone(), c.induced_order(amb)?)?;
        Ok(self
            .position(&t)
            .map_or(Color::OVERFLOW, |index| Color { index, overflow: false }))
    }
}

/// The ambient order used for classification: each level of the image region
/// led by the meet-closure element of `f`'s image on it.
pub fn ambient_rule(f: &DiagMap, tie: TieBreak) -> Result<VipRule> {
    VipRule::new(&meet_closure(&f.image()), tie)
}

fn distinct_set(items: &[Node], m: usize) -> Result<NodeSet> {
    let set: NodeSet = items.iter().cloned().collect();
    if items.len() != m || set.len() != m {
        return precondition(format!("expected {m} distinct nodes, got {items:?}"));
    }
    Ok(set)
}

/// Color of an m-subset of `f`'s domain by the ordered type of its image.
pub fn classify_linear(
    a: &[Node],
    palette: &Palette,
    f: &DiagMap,
    amb: &dyn LevelOrdering,
) -> Result<Color> {
    if palette.side != Side::Linear {
        return precondition("classify_linear needs a linear palette");
    }
    let a = distinct_set(a, palette.m)?;
    palette.color_of(&f.image_of(&a)?, amb)
}

/// Color of an m-set of vertices by the ordered type of `f[σ[b]]`.
pub fn classify_graph(
    b: &[usize],
    palette: &Palette,
    g: &Graph,
    f: &DiagMap,
    amb: &dyn LevelOrdering,
) -> Result<Color> {
    if palette.side != Side::Graph {
        return precondition("classify_graph needs a graph palette");
    }
    let set: BTreeSet<usize> = b.iter().copied().collect();
    if b.len() != palette.m || set.len() != palette.m {
        return precondition(format!("expected {} distinct vertices, got {b:?}", palette.m));
    }
    if let Some(v) = b.iter().find(|&&v| v >= g.n()) {
        return precondition(format!("vertex {v} is not in the {}-vertex graph", g.n()));
    }
    let codes = tree_embed(g);
    let nodes: Vec<Node> = b.iter().map(|&v| codes[v].clone()).collect();
    let a = distinct_set(&nodes, palette.m)?;
    palette.color_of(&f.image_of(&a)?, amb)
}

/// How many m-subsets a scan may touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBudget {
    /// Scan every subset when there are at most this many.
    pub exhaustive_limit: u64,
    /// Otherwise draw this many random subsets.
    pub samples: u64,
    pub seed: u64,
}

impl Default for ScanBudget {
    fn default() -> Self {
        ScanBudget { exhaustive_limit: 1_000_000, samples: 200_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub m: usize,
    pub palette_size: usize,
    pub realized: Vec<String>,
    pub missing: Vec<String>,
    pub scanned: u64,
    pub budget: u64,
    pub exhaustive: bool,
    /// Subsets that fell into the overflow class.
    pub overflow: u64,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

#[derive(Default)]
struct Seen {
    colors: BTreeSet<usize>,
    overflow: u64,
    scanned: u64,
}

impl Seen {
    fn add(mut self, c: Color) -> Self {
        self.scanned += 1;
        if c.overflow {
            self.overflow += 1;
        } else {
            self.colors.insert(c.index);
        }
        self
    }

    #[cfg(feature = "parallel")]
    fn merge(mut self, o: Seen) -> Self {
        self.colors.extend(o.colors);
        self.overflow += o.overflow;
        self.scanned += o.scanned;
        self
    }
}

fn scan<I>(subsets: I, classify: &(dyn Fn(&[usize]) -> Result<Color> + Sync)) -> Result<Seen>
where
    I: Iterator<Item = Vec<usize>> + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        subsets
            .par_bridge()
            .map(|s| classify(&s))
            .try_fold(Seen::default, |acc, c| c.map(|c| acc.add(c)))
            .try_reduce(Seen::default, |a, b| Ok(a.merge(b)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        subsets.map(|s| classify(&s)).try_fold(Seen::default(), |acc, c| c.map(|c| acc.add(c)))
    }
}

/// Colors realized by the m-subsets of `universe`: every subset when there
/// are few enough, otherwise a seeded sample.
pub fn realized_colors<T: Clone + Sync>(
    universe: &[T],
    palette: &Palette,
    budget: &ScanBudget,
    classify: impl Fn(&[T]) -> Result<Color> + Sync,
) -> Result<AuditReport> {
    let m = palette.m;
    let total = binomial(universe.len(), m);
    let by_index = |ix: &[usize]| {
        let items: Vec<T> = ix.iter().map(|&i| universe[i].clone()).collect();
        classify(&items)
    };
    let exhaustive = total <= budget.exhaustive_limit;
    let seen = if total == 0 {
        Seen::default()
    } else if exhaustive {
        scan((0..universe.len()).combinations(m), &by_index)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let draws: Vec<Vec<usize>> = (0..budget.samples)
            .map(|_| rand::seq::index::sample(&mut rng, universe.len(), m).into_vec())
            .collect();
        scan(draws.into_iter(), &by_index)?
    };
    let (realized, missing) = palette
        .entries
        .iter()
        .enumerate()
        .partition::<Vec<_>, _>(|(i, _)| seen.colors.contains(i));
    Ok(AuditReport {
        m,
        palette_size: palette.len(),
        realized: realized.into_iter().map(|(_, t)| t.id()).collect(),
        missing: missing.into_iter().map(|(_, t)| t.id()).collect(),
        scanned: seen.scanned,
        budget: if exhaustive { budget.exhaustive_limit } else { budget.samples },
        exhaustive,
        overflow: seen.overflow,
    })
}

/// Whether `t` belongs to the palette of `side` at its arity.
pub fn in_palette(t: &OrderedType, side: Side) -> bool {
    let leaves = t.tree.leaves();
    t.tree.is_m_type()
        && (side == Side::Graph || is_sparse_diagonal(leaves))
        && is_vip(&t.tree, leaves, &t.order)
}

/// Outcome of a realization search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    /// The m-subset of `f`'s domain that was found.
    pub domain_set: Option<NodeSet>,
    /// Its image; collapses to the target with the target's order.
    pub witness: Option<NodeSet>,
    pub tried: u64,
    pub budget: u64,
    /// `"guided"` or `"exhaustive"` when found.
    pub stage: Option<String>,
}

/// Searches `f`'s domain for an m-set whose image has the ordered type
/// `target`.
///
/// First tries skeleton placements: the target's tree stretched along an
/// increasing choice of lengths with a shared filler word, which collapse to
/// the target by construction. Then falls back to scanning m-subsets of the
/// domain. At most `budget` candidates are examined overall.
pub fn realize_type(
    target: &OrderedType,
    side: Side,
    f: &DiagMap,
    amb: &dyn LevelOrdering,
    budget: u64,
) -> Result<Realization> {
    if !in_palette(target, side) {
        return precondition(format!("{} is not in the {side:?} palette", target.id()));
    }
    let mut tried = 0u64;
    let hit = |x: &NodeSet| -> Result<Option<NodeSet>> {
        let img = f.image_of(x)?;
        let Ok(c) = clp(&img) else { return Ok(None) };
        if c.tree != target.tree || c.induced_order(amb)? != target.order {
            return Ok(None);
        }
        Ok(Some(img))
    };
    let found = |x: NodeSet, img: NodeSet, tried, stage: &str| Realization {
        domain_set: Some(x),
        witness: Some(img),
        tried,
        budget,
        stage: Some(stage.into()),
    };

    let depth = f.domain_depth;
    let h = target.tree.height();
    let leaves = target.tree.leaves().to_vec();
    if h <= depth {
        for lengths in (0..=depth).combinations(h + 1) {
            let free: Vec<usize> = (0..depth).filter(|p| !lengths.contains(p)).collect();
            // all filler words when few, else zeros, ones and a walk
            let words: u64 = if free.len() < 12 { 1 << free.len() } else { 3 };
            for w in 0..words {
                if tried >= budget {
                    return Ok(none(tried, budget));
                }
                let filler = |p: usize| -> u8 {
                    let i = free.iter().position(|&q| q == p).unwrap_or(0);
                    if free.len() < 12 {
                        (w >> i & 1) as u8
                    } else {
                        [0, 1, (i % 2) as u8][w as usize]
                    }
                };
                let x: NodeSet = leaves
                    .iter()
                    .map(|c| {
                        let len = lengths[c.len()];
                        Node::from_bits((0..len).map(|p| match lengths.iter().position(|&l| l == p) {
                            Some(j) => c.bits()[j],
                            None => filler(p),
                        }))
                    })
                    .collect();
                tried += 1;
                if let Some(img) = hit(&x)? {
                    return Ok(found(x, img, tried, "guided"));
                }
            }
        }
    }

    let domain = f.domain().to_vec();
    for ix in (0..domain.len()).combinations(leaves.len()) {
        if tried >= budget {
            break;
        }
        tried += 1;
        let x: NodeSet = ix.iter().map(|&i| domain[i].clone()).collect();
        if let Some(img) = hit(&x)? {
            return Ok(found(x, img, tried, "exhaustive"));
        }
    }
    Ok(none(tried, budget))
}

fn none(tried: u64, budget: u64) -> Realization {
    Realization { domain_set: None, witness: None, tried, budget, stage: None }
}
