//! Finite graphs coded into the binary tree.
//!
//! Vertex `α` is coded by `σ(α)`, the word of length `α` whose bit `β` records
//! whether `{α, β}` is an edge. Passing numbers between codes are then edge
//! bits, which turns increasing graph embeddings into pnp maps and back.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagonal::Assoc;
use crate::error::{precondition, Result};
use crate::treecore::Node;

/// A simple graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(into = "GraphJson", try_from = "GraphJson")]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = String;

    fn try_from(j: GraphJson) -> std::result::Result<Self, String> {
        Graph::from_edges(j.n, &j.edges).map_err(|e| e.to_string())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![vec![false; n]; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return precondition(format!("bad edge ({i},{j}) for {n} vertices"));
            }
            g.adj[i][j] = true;
            g.adj[j][i] = true;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i][j]
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|&(i, j)| self.adj[i][j])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// `{i, j}` (i < j) is an edge iff bit `i` of `j` is set.
pub fn bit_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for j in 0..n {
        for i in 0..j.min(usize::BITS as usize) {
            if j >> i & 1 == 1 {
                g.adj[i][j] = true;
                g.adj[j][i] = true;
            }
        }
    }
    g
}

/// `G(n, p)` with a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.adj[i][j] = true;
                g.adj[j][i] = true;
            }
        }
    }
    g
}

/// `σ(α)`: length `α`, bit `β` set iff `{α, β}` is an edge.
pub fn tree_embed(g: &Graph) -> Vec<Node> {
    (0..g.n)
        .map(|a| Node::from_bits((0..a).map(|b| u8::from(g.adj[a][b]))))
        .collect()
}

fn sigma_inverse(g: &Graph, codes: &[Node], x: &Node) -> Result<usize> {
    match codes.get(x.len()) {
        Some(c) if c == x => Ok(x.len()),
        _ => precondition(format!("{x:?} is not the code of a vertex of the {}-vertex graph", g.n)),
    }
}

/// Checks that `g` is increasing and preserves edges and non-edges.
pub fn audit_embedding(gr: &Graph, g: &BTreeMap<usize, usize>) -> Result<()> {
    for (&a, &ga) in g {
        if ga >= gr.n {
            return precondition(format!("g({a}) = {ga} is not a vertex"));
        }
        for (&b, &gb) in g {
            if a < b && ga >= gb {
                return precondition(format!("g is not increasing at ({a},{b})"));
            }
            if a != b && gr.adjacent(a, b) != gr.adjacent(ga, gb) {
                return precondition(format!("g does not preserve adjacency of ({a},{b})"));
            }
        }
    }
    Ok(())
}

/// `σ ∘ g ∘ σ⁻¹` on the codes of `g`'s domain.
pub fn embedding_to_pnp(g: &BTreeMap<usize, usize>, gr: &Graph) -> Result<Assoc> {
    audit_embedding(gr, g)?;
    let codes = tree_embed(gr);
    Ok(g.iter()
        .map(|(&a, &ga)| (codes[a].clone(), codes[ga].clone()))
        .collect())
}

/// `σ⁻¹ ∘ f ∘ σ`; every node involved must be a vertex code.
pub fn pnp_to_embedding(f: &Assoc, gr: &Graph) -> Result<BTreeMap<usize, usize>> {
    let codes = tree_embed(gr);
    f.iter()
        .map(|(x, fx)| Ok((sigma_inverse(gr, &codes, x)?, sigma_inverse(gr, &codes, fx)?)))
        .collect()
}

/// Least vertex outside `A ∪ B` adjacent to all of `A` and none of `B`.
pub fn extension_witness(gr: &Graph, a: &[usize], b: &[usize]) -> Result<Option<usize>> {
    if let Some(x) = a.iter().find(|x| b.contains(x)) {
        return precondition(format!("vertex {x} is in both A and B"));
    }
    Ok((0..gr.n).find(|&c| {
        !a.contains(&c)
            && !b.contains(&c)
            && a.iter().all(|&x| gr.adjacent(c, x))
            && b.iter().all(|&y| !gr.adjacent(c, y))
    }))
}

/// Every increasing embedding of the subgraph on `0..k` into `gr`.
pub fn increasing_embeddings(gr: &Graph, k: usize) -> Vec<BTreeMap<usize, usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    fn go(gr: &Graph, k: usize, cur: &mut Vec<usize>, out: &mut Vec<BTreeMap<usize, usize>>) {
        let i = cur.len();
        if i == k {
            out.push(cur.iter().copied().enumerate().collect());
            return;
        }
        let start = cur.last().map_or(0, |&l| l + 1);
        for c in start..gr.n {
            if (0..i).all(|j| gr.adjacent(i, j) == gr.adjacent(c, cur[j])) {
                cur.push(c);
                go(gr, k, cur, out);
                cur.pop();
            }
        }
    }
    go(gr, k, &mut cur, &mut out);
    out
}

/// Result of a bounded search for an increasing copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopySearch {
    /// The longest increasing partial isomorphism found, on `0..k`.
    pub copy: BTreeMap<usize, usize>,
    /// Whether it covers every vertex of the pattern.
    pub complete: bool,
    /// Placement attempts made.
    pub steps: u64,
}

/// Looks for an increasing copy of `pattern` inside the vertex set `host` of
/// `big`, by backtracking over the least candidates first. Gives up after
/// `budget` placement attempts and reports the longest partial copy seen.
pub fn increasing_copy(pattern: &Graph, big: &Graph, host: &[usize], budget: u64) -> CopySearch {
    let mut host: Vec<usize> = host.iter().copied().filter(|&c| c < big.n).collect();
    host.sort_unstable();
    host.dedup();
    struct St<'a> {
        pattern: &'a Graph,
        big: &'a Graph,
        host: Vec<usize>,
        cur: Vec<usize>,
        best: Vec<usize>,
        steps: u64,
        budget: u64,
    }
    fn go(st: &mut St, from: usize) -> bool {
        if st.cur.len() > st.best.len() {
            st.best = st.cur.clone();
        }
        let i = st.cur.len();
        if i == st.pattern.n {
            return true;
        }
        for h in from..st.host.len() {
            if st.steps >= st.budget {
                return false;
            }
            st.steps += 1;
            let c = st.host[h];
            if (0..i).all(|j| st.pattern.adjacent(i, j) == st.big.adjacent(c, st.cur[j])) {
                st.cur.push(c);
                if go(st, h + 1) {
                    return true;
                }
                st.cur.pop();
            }
        }
        false
    }
    let mut st = St { pattern, big, host, cur: Vec::new(), best: Vec::new(), steps: 0, budget };
    let complete = go(&mut st, 0);
    CopySearch {
        complete,
        copy: st.best.into_iter().enumerate().collect(),
        steps: st.steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::is_pnp;

    #[test]
    fn bit_graph_edges() {
        assert_eq!(bit_graph(2).edges(), [(0, 1)]);
        assert_eq!(bit_graph(3).edges(), [(0, 1), (1, 2)]);
        assert_eq!(bit_graph(4).edges(), [(0, 1), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn codes() {
        let s = tree_embed(&bit_graph(3));
        let want: Vec<Node> = ["", "1", "01"].iter().map(|x| Node::parse(x).unwrap()).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn witnesses() {
        assert_eq!(extension_witness(&bit_graph(4), &[0], &[]).unwrap(), Some(1));
        assert_eq!(extension_witness(&bit_graph(4), &[], &[0]).unwrap(), Some(2));
        assert_eq!(extension_witness(&bit_graph(8), &[0], &[1]).unwrap(), Some(5));
        assert!(extension_witness(&bit_graph(8), &[0], &[0]).is_err());
    }

    #[test]
    fn translation() {
        let g = bit_graph(8);
        let id: BTreeMap<usize, usize> = (0..8).map(|i| (i, i)).collect();
        let f = embedding_to_pnp(&id, &g).unwrap();
        assert!(f.iter().all(|(a, b)| a == b));
        assert_eq!(pnp_to_embedding(&f, &g).unwrap(), id);
        let bad: BTreeMap<usize, usize> = [(0, 0), (1, 2)].into_iter().collect();
        assert!(embedding_to_pnp(&bad, &g).is_err());
        for e in increasing_embeddings(&g, 3) {
            assert!(is_pnp(&embedding_to_pnp(&e, &g).unwrap()));
        }
    }

    #[test]
    fn copy_of_itself() {
        let g = bit_graph(16);
        let host: Vec<usize> = (0..16).collect();
        let c = increasing_copy(&g, &g, &host, 1000);
        assert!(c.complete);
        assert_eq!(c.copy, (0..16).map(|i| (i, i)).collect());
        assert!(audit_embedding(&g, &c.copy).is_ok());
    }

    #[test]
    fn json_shape() {
        let js = serde_json::to_string(&bit_graph(3)).unwrap();
        assert_eq!(js, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let back: Graph = serde_json::from_str(&js).unwrap();
        assert_eq!(back, bit_graph(3));
    }
}
