//! Diagonalization maps and the predicates that audit them.
//!
//! Both constructions thread a global length counter through a recursion
//! over the domain and return the main map `φ` together with its companions
//! `φ₀ ⊊ φ₁ ⊊ φ`. The predicates work on any finite association of nodes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::collapse::clp;
use crate::error::{precondition, Result};
use crate::treecore::{
    full_tree, is_sparse_diagonal, is_strongly_diagonal, lex_lt, meet, meet_closure, profile, q_cmp,
    Node, NodeSet,
};
use crate::viporder::LevelOrdering;

/// A finite map between nodes.
pub type Assoc = BTreeMap<Node, Node>;

/// Supplies members of a cofinal transverse set on demand.
pub trait TransverseRule {
    /// A member extending `t` with length at least `min_len`, longer than
    /// anything handed out before.
    fn extend(&mut self, t: &Node, min_len: usize) -> Node;
}

/// Pads with zeros up to a running counter, then bumps the counter.
#[derive(Debug, Clone, Default)]
pub struct GreedyRule {
    next: usize,
}

impl GreedyRule {
    pub fn new() -> Self {
        Self::default()
    }

    /// First length the rule will hand out.
    pub fn starting_at(next: usize) -> Self {
        GreedyRule { next }
    }
}

impl TransverseRule for GreedyRule {
    fn extend(&mut self, t: &Node, min_len: usize) -> Node {
        let len = min_len.max(t.len()).max(self.next);
        self.next = len + 1;
        t.pad_zeros(len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagKind {
    Sparse,
    Pnp,
}

/// Output of a diagonalization: `φ` and its companions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DiagMapJson", try_from = "DiagMapJson")]
pub struct DiagMap {
    pub kind: DiagKind,
    /// Length of the longest domain node.
    pub domain_depth: usize,
    pub phi: Assoc,
    pub phi0: Assoc,
    pub phi1: Assoc,
}

#[derive(Serialize, Deserialize)]
struct DiagMapJson {
    kind: DiagKind,
    domain_depth: usize,
    phi: Vec<(Node, Node)>,
    phi0: Vec<(Node, Node)>,
    phi1: Vec<(Node, Node)>,
}

impl From<DiagMap> for DiagMapJson {
    fn from(d: DiagMap) -> Self {
        DiagMapJson {
            kind: d.kind,
            domain_depth: d.domain_depth,
            phi: d.phi.into_iter().collect(),
            phi0: d.phi0.into_iter().collect(),
            phi1: d.phi1.into_iter().collect(),
        }
    }
}

impl TryFrom<DiagMapJson> for DiagMap {
    type Error = String;

    fn try_from(j: DiagMapJson) -> std::result::Result<Self, String> {
        let d = DiagMap {
            kind: j.kind,
            domain_depth: j.domain_depth,
            phi: j.phi.into_iter().collect(),
            phi0: j.phi0.into_iter().collect(),
            phi1: j.phi1.into_iter().collect(),
        };
        if d.phi.keys().ne(d.phi0.keys()) || d.phi.keys().ne(d.phi1.keys()) {
            return Err("phi, phi0 and phi1 must share one domain".into());
        }
        Ok(d)
    }
}

impl DiagMap {
    pub fn domain(&self) -> NodeSet {
        self.phi.keys().cloned().collect()
    }

    pub fn image(&self) -> NodeSet {
        self.phi.values().cloned().collect()
    }

    /// Union of the ranges of `φ₀`, `φ₁` and `φ`; for the greedy rule these
    /// are exactly the members of the transverse set that were used.
    pub fn s_range(&self) -> NodeSet {
        self.phi
            .values()
            .chain(self.phi0.values())
            .chain(self.phi1.values())
            .cloned()
            .collect()
    }

    pub fn apply(&self, s: &Node) -> Option<&Node> {
        self.phi.get(s)
    }

    /// `φ[a]`, failing on nodes outside the domain.
    pub fn image_of(&self, a: &NodeSet) -> Result<NodeSet> {
        a.iter()
            .map(|s| match self.phi.get(s) {
                Some(x) => Ok(x.clone()),
                None => precondition(format!("{s:?} is outside the domain")),
            })
            .collect()
    }
}

fn check_domain(domain: &NodeSet) -> Result<()> {
    if domain.is_empty() || !domain.contains(&Node::root()) {
        return precondition("domain must contain the root");
    }
    if let Some(n) = domain.iter().find(|n| !n.is_root() && !domain.contains(&n.restrict(n.len() - 1))) {
        return precondition(format!("domain is not prefix closed at {n:?}"));
    }
    Ok(())
}

fn levels_in_order(domain: &NodeSet, ord: &dyn LevelOrdering) -> Result<Vec<Vec<Node>>> {
    let depth = domain.max_len().unwrap_or(0);
    (0..=depth)
        .map(|k| {
            let mut level = domain.level(k);
            ord.sort_level(&mut level)?;
            Ok(level)
        })
        .collect()
}

/// The sparse recursion on `2^{≤depth}`.
pub fn sparse_diagonalize(
    depth: usize,
    enum_order: &dyn LevelOrdering,
    rule: &mut dyn TransverseRule,
) -> Result<DiagMap> {
    sparse_diagonalize_on(&full_tree(depth), enum_order, rule)
}

/// The sparse recursion on any finite prefix-closed domain.
///
/// Nodes are taken one at a time in level order; each gets
/// `φ₀ ⊊ φ₁ ⊊ φ` before the next starts.
pub fn sparse_diagonalize_on(
    domain: &NodeSet,
    enum_order: &dyn LevelOrdering,
    rule: &mut dyn TransverseRule,
) -> Result<DiagMap> {
    check_domain(domain)?;
    let (mut phi, mut phi0, mut phi1) = (Assoc::new(), Assoc::new(), Assoc::new());
    let mut longest: Option<usize> = None;
    for t in levels_in_order(domain, enum_order)?.into_iter().flatten() {
        let f0 = if t.is_root() {
            rule.extend(&Node::root(), 0)
        } else {
            let s = t.restrict(t.len() - 1);
            let delta = t.bits()[t.len() - 1];
            let from = if delta == 0 { &phi0[&s] } else { &phi1[&s] };
            let gamma = longest.map_or(0, |l| l + 1);
            rule.extend(&from.child(delta).pad_zeros(gamma), gamma)
        };
        let f1 = rule.extend(&f0.child(1), 0);
        let f = rule.extend(&f1.child(0), 0);
        longest = Some(longest.map_or(f.len(), |l| l.max(f.len())));
        phi0.insert(t.clone(), f0);
        phi1.insert(t.clone(), f1);
        phi.insert(t, f);
    }
    Ok(DiagMap {
        kind: DiagKind::Sparse,
        domain_depth: domain.max_len().unwrap_or(0),
        phi,
        phi0,
        phi1,
    })
}

/// The level-by-level pnp recursion on `2^{≤depth}`.
pub fn pnp_diagonalize(
    depth: usize,
    enum_order: &dyn LevelOrdering,
    rule: &mut dyn TransverseRule,
) -> Result<DiagMap> {
    pnp_diagonalize_on(&full_tree(depth), enum_order, rule)
}

/// The pnp recursion on any finite prefix-closed domain.
///
/// Each level is handled in two passes: first `φ₀, φ₁` for the whole level,
/// with `φ₀(t)` copying `t`'s last bit at the lengths of the images of the
/// previous level; then `φ` for the whole level.
pub fn pnp_diagonalize_on(
    domain: &NodeSet,
    enum_order: &dyn LevelOrdering,
    rule: &mut dyn TransverseRule,
) -> Result<DiagMap> {
    check_domain(domain)?;
    let (mut phi, mut phi0, mut phi1) = (Assoc::new(), Assoc::new(), Assoc::new());
    let mut prev_level: Vec<Node> = Vec::new();
    for level in levels_in_order(domain, enum_order)? {
        // ℓ₀: past every image so far
        let l0 = phi.values().map(|f: &Node| f.len() + 1).max().unwrap_or(0);
        let marks: Vec<usize> = prev_level.iter().map(|s| phi[s].len()).collect();
        let mut last1: Option<usize> = None;
        for t in &level {
            let (minus, delta) = if t.is_root() {
                (Node::root(), 0)
            } else {
                let s = t.restrict(t.len() - 1);
                let delta = t.bits()[t.len() - 1];
                let from = if delta == 0 { &phi0[&s] } else { &phi1[&s] };
                (from.child(delta), delta)
            };
            let gamma0 = last1.map_or(l0, |l| l + 1);
            let plus = Node::from_bits(
                minus
                    .bits()
                    .iter()
                    .copied()
                    .chain((minus.len()..gamma0).map(|eta| if marks.contains(&eta) { delta } else { 0 })),
            );
            let f0 = rule.extend(&plus, gamma0);
            let f1 = rule.extend(&f0.child(1), 0);
            last1 = Some(f1.len());
            phi0.insert(t.clone(), f0);
            phi1.insert(t.clone(), f1);
        }
        // ℓ₁: past every φ₁ so far
        let l1 = phi1.values().map(|f| f.len() + 1).max().unwrap_or(0);
        let mut last: Option<usize> = None;
        for t in &level {
            let gamma1 = last.map_or(l1, |l| l + 1);
            let f = rule.extend(&phi1[t].child(0).pad_zeros(gamma1), gamma1);
            last = Some(f.len());
            phi.insert(t.clone(), f);
        }
        prev_level = level;
    }
    Ok(DiagMap {
        kind: DiagKind::Pnp,
        domain_depth: domain.max_len().unwrap_or(0),
        phi,
        phi0,
        phi1,
    })
}

/// `f ∘ g` on the part of `g`'s domain that `g` maps into `f`'s domain.
pub fn compose(f: &Assoc, g: &Assoc) -> Assoc {
    g.iter()
        .filter_map(|(s, gs)| f.get(gs).map(|x| (s.clone(), x.clone())))
        .collect()
}

// ---------------------------------------------------------------------------
// predicates

/// Outcome of one audited property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Number of tuples examined.
    pub checked: u64,
    /// A failing tuple, as node strings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.into(), pass: true, checked: 0, witness: None }
    }

    fn fail(&mut self, nodes: &[&Node]) {
        if self.pass {
            self.pass = false;
            self.witness = Some(nodes.iter().map(|n| n.to_string()).collect());
        }
    }
}

fn entries(f: &Assoc) -> Vec<(&Node, &Node)> {
    f.iter().collect()
}

/// Length order and passing numbers, with a counterexample pair.
pub fn check_pnp(f: &Assoc) -> Check {
    let mut c = Check::new("pnp");
    let e = entries(f);
    for &(s, fs) in &e {
        for &(t, ft) in &e {
            if s.len() >= t.len() {
                continue;
            }
            c.checked += 1;
            if fs.len() >= ft.len() || ft.bit(fs.len()) != t.bit(s.len()) {
                c.fail(&[s, t]);
            }
        }
    }
    c
}

pub fn is_pnp(f: &Assoc) -> bool {
    check_pnp(f).pass
}

/// Which tuples the politeness clauses range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoliteScope {
    /// All tuples from the domain.
    All,
    /// Tuples whose underlying set is strongly diagonal (and `f` must be pnp).
    StronglyDiagonal,
}

fn lex_clause(c: &mut Check, f: &Assoc, x: &Node, y: &Node) {
    if x.incomparable(y) && lex_lt(x, y).unwrap_or(false) {
        c.checked += 1;
        let (fx, fy) = (&f[x], &f[y]);
        if !fx.incomparable(fy) || !lex_lt(fx, fy).unwrap_or(false) {
            c.fail(&[x, y]);
        }
    }
}

fn regularity_clause(c: &mut Check, f: &Assoc, x: &Node, u: &Node, v: &Node) {
    if x == u || x == v || u == v || x.meet_len(u) != x.meet_len(v) {
        return;
    }
    let trio: NodeSet = [x, u, v].into_iter().cloned().collect();
    if !profile(&trio).diagonal {
        return;
    }
    c.checked += 1;
    if meet(&f[x], &f[u]) != meet(&f[x], &f[v]) {
        c.fail(&[x, u, v]);
    }
}

/// The three politeness clauses, reported separately.
pub fn check_polite(f: &Assoc, scope: PoliteScope) -> Vec<Check> {
    let mut lex = Check::new("lex order");
    let mut reg = Check::new("meet regularity");
    let mut len = Check::new("meet length order");
    let dom: Vec<&Node> = f.keys().collect();
    match scope {
        PoliteScope::All => {
            for x in &dom {
                for y in &dom {
                    lex_clause(&mut lex, f, x, y);
                    for v in &dom {
                        regularity_clause(&mut reg, f, x, y, v);
                    }
                }
            }
            // meet lengths must move monotonically: group pairs by domain meet length
            let mut groups: BTreeMap<usize, Vec<(usize, [&Node; 2])>> = BTreeMap::new();
            for x in &dom {
                for y in &dom {
                    let il = f[*x].meet_len(&f[*y]);
                    groups.entry(x.meet_len(y)).or_default().push((il, [*x, *y]));
                }
            }
            let g: Vec<_> = groups.values().collect();
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    for (a, pa) in g[i] {
                        for (b, pb) in g[j] {
                            len.checked += 1;
                            if a >= b {
                                len.fail(&[pa[0], pa[1], pb[0], pb[1]]);
                            }
                        }
                    }
                }
            }
        }
        PoliteScope::StronglyDiagonal => {
            let n = dom.len();
            let mut seen = std::collections::HashSet::new();
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        for l in k..n {
                            let set: NodeSet = [dom[i], dom[j], dom[k], dom[l]].into_iter().cloned().collect();
                            if !seen.insert(set.clone()) || !is_strongly_diagonal(&set) {
                                continue;
                            }
                            let s: Vec<&Node> = set.iter().collect();
                            for x in &s {
                                for y in &s {
                                    lex_clause(&mut lex, f, x, y);
                                    for v in &s {
                                        regularity_clause(&mut reg, f, x, y, v);
                                    }
                                    for u in &s {
                                        for v in &s {
                                            if x.meet_len(y) < u.meet_len(v) {
                                                len.checked += 1;
                                                if f[*x].meet_len(&f[*y]) >= f[*u].meet_len(&f[*v]) {
                                                    len.fail(&[x, y, u, v]);
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    vec![lex, reg, len]
}

pub fn is_polite(f: &Assoc) -> bool {
    check_polite(f, PoliteScope::All).iter().all(|c| c.pass)
}

/// Polite to strongly diagonal sets: pnp plus the clauses on strongly diagonal tuples.
pub fn is_polite_to_strongly_diagonal(f: &Assoc) -> bool {
    is_pnp(f) && check_polite(f, PoliteScope::StronglyDiagonal).iter().all(|c| c.pass)
}

/// `f̂(s) = f(s⌢0) ∧ f(s⌢1)` wherever both children are in the domain.
pub fn hat(f: &Assoc) -> Assoc {
    f.keys()
        .filter_map(|s| {
            let (a, b) = (f.get(&s.child(0))?, f.get(&s.child(1))?);
            Some((s.clone(), meet(a, b)))
        })
        .collect()
}

/// The level-harmony conditions, one check each.
pub fn check_level_harmony(f: &Assoc) -> Vec<Check> {
    let h = hat(f);
    let mut ext = Check::new("hat preserves extension");
    let mut lex = Check::new("hat preserves lex order");
    let mut below = Check::new("hat below f");
    let mut longer = Check::new("shorter f below longer hat");
    let mut same = Check::new("same-level hat below f");
    for (s, hs) in &h {
        for (t, ht) in &h {
            ext.checked += 1;
            if s.is_prefix_of(t) != hs.is_prefix_of(ht) {
                ext.fail(&[s, t]);
            }
            if s.incomparable(t) && lex_lt(s, t).unwrap_or(false) {
                lex.checked += 1;
                if !hs.incomparable(ht) || !lex_lt(hs, ht).unwrap_or(false) {
                    lex.fail(&[s, t]);
                }
            }
        }
        below.checked += 1;
        if !hs.is_proper_prefix_of(&f[s]) {
            below.fail(&[s]);
        }
    }
    for (s, fs) in f {
        for (t, ht) in &h {
            if s.len() < t.len() {
                longer.checked += 1;
                if fs.len() >= ht.len() {
                    longer.fail(&[s, t]);
                }
            }
        }
    }
    for (s, hs) in &h {
        for (t, ft) in f {
            if s.len() == t.len() {
                same.checked += 1;
                if hs.len() >= ft.len() {
                    same.fail(&[s, t]);
                }
            }
        }
    }
    vec![ext, lex, below, longer, same]
}

pub fn has_level_harmony(f: &Assoc) -> bool {
    check_level_harmony(f).iter().all(|c| c.pass)
}

/// Itemized audit of a diagonalization.
#[derive(Debug, Clone, Serialize)]
pub struct ContractReport {
    pub kind: DiagKind,
    pub items: Vec<Check>,
}

impl ContractReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.items.iter().find(|c| c.name == name)
    }
}

fn subsets_up_to(dom: &[Node], k: usize) -> Vec<NodeSet> {
    let mut out = Vec::new();
    fn go(dom: &[Node], start: usize, k: usize, cur: &mut Vec<Node>, out: &mut Vec<NodeSet>) {
        if !cur.is_empty() {
            out.push(cur.iter().cloned().collect());
        }
        if cur.len() == k {
            return;
        }
        for i in start..dom.len() {
            cur.push(dom[i].clone());
            go(dom, i + 1, k, cur, out);
            cur.pop();
        }
    }
    go(dom, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Audits the map against its contract. Collapse preservation is checked on
/// subsets of size at most `max_subset` of the appropriate kind (sparse
/// diagonal for the sparse recursion, strongly diagonal for the pnp one).
pub fn verify_diag_contract_with(f: &DiagMap, max_subset: usize) -> ContractReport {
    let phi = &f.phi;
    let e = entries(phi);
    let mut items = Vec::new();

    let mut inj = Check::new("injective");
    let mut back: BTreeMap<&Node, &Node> = BTreeMap::new();
    for &(s, fs) in &e {
        inj.checked += 1;
        if let Some(prev) = back.insert(fs, s) {
            inj.fail(&[prev, s]);
        }
    }
    items.push(inj);

    let mut chain = Check::new("companions nested");
    for &(s, fs) in &e {
        chain.checked += 1;
        let (f0, f1) = (&f.phi0[s], &f.phi1[s]);
        if !(f0.is_proper_prefix_of(f1) && f1.is_proper_prefix_of(fs)) {
            chain.fail(&[s]);
        }
    }
    items.push(chain);

    let mut lengths = Check::new("ranges transverse");
    let all: Vec<&Node> = f.phi.values().chain(f.phi0.values()).chain(f.phi1.values()).collect();
    let mut seen = BTreeMap::new();
    for n in &all {
        lengths.checked += 1;
        if let Some(prev) = seen.insert(n.len(), *n) {
            if prev != *n {
                lengths.fail(&[prev, n]);
            }
        }
    }
    items.push(lengths);

    let mut q = Check::new("q order");
    for &(s, fs) in &e {
        for &(t, ft) in &e {
            q.checked += 1;
            if q_cmp(s, t) != q_cmp(fs, ft) {
                q.fail(&[s, t]);
            }
        }
    }
    items.push(q);

    let image = f.image();
    let mut img = Check::new(match f.kind {
        DiagKind::Sparse => "image sparse diagonal",
        DiagKind::Pnp => "image strongly diagonal",
    });
    img.checked = 1;
    let ok = match f.kind {
        DiagKind::Sparse => is_sparse_diagonal(&image),
        DiagKind::Pnp => is_strongly_diagonal(&image),
    };
    if !ok {
        img.pass = false;
    }
    items.push(img);

    let mut cl = Check::new("closure inside S");
    let s = f.s_range();
    for c in &meet_closure(&image) {
        cl.checked += 1;
        if !s.contains(c) {
            cl.fail(&[c]);
        }
    }
    items.push(cl);

    let mut lift = Check::new("meet lift");
    for &(x, _) in &e {
        for &(u, _) in &e {
            for &(v, _) in &e {
                regularity_clause(&mut lift, phi, x, u, v);
            }
        }
    }
    items.push(lift);

    let mut ml = Check::new("meet length");
    let mut groups: BTreeMap<usize, Vec<(usize, [&Node; 2])>> = BTreeMap::new();
    for &(x, fx) in &e {
        for &(y, fy) in &e {
            groups.entry(x.meet_len(y)).or_default().push((fx.meet_len(fy), [x, y]));
        }
    }
    let g: Vec<_> = groups.values().collect();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            for (a, pa) in g[i] {
                for (b, pb) in g[j] {
                    ml.checked += 1;
                    if a >= b {
                        ml.fail(&[pa[0], pa[1], pb[0], pb[1]]);
                    }
                }
            }
        }
    }
    items.push(ml);

    let mut cp = Check::new("collapse preserved");
    let dom: Vec<Node> = phi.keys().cloned().collect();
    for sub in subsets_up_to(&dom, max_subset) {
        let eligible = match f.kind {
            DiagKind::Sparse => is_sparse_diagonal(&sub),
            DiagKind::Pnp => is_strongly_diagonal(&sub),
        };
        if !eligible {
            continue;
        }
        cp.checked += 1;
        let img: NodeSet = sub.iter().map(|s| phi[s].clone()).collect();
        let same = match (clp(&sub), clp(&img)) {
            (Ok(a), Ok(b)) => a.tree == b.tree,
            _ => false,
        };
        if !same {
            let w: Vec<&Node> = sub.iter().collect();
            cp.fail(&w);
        }
    }
    items.push(cp);

    if f.kind == DiagKind::Pnp {
        items.push(check_pnp(phi));
        for mut c in check_polite(phi, PoliteScope::All) {
            c.name = format!("polite: {}", c.name);
            items.push(c);
        }
        for mut c in check_level_harmony(phi) {
            c.name = format!("harmony: {}", c.name);
            items.push(c);
        }
    }
    ContractReport { kind: f.kind, items }
}

pub fn verify_diag_contract(f: &DiagMap) -> ContractReport {
    verify_diag_contract_with(f, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::viporder::LengthLex;

    fn n(s: &str) -> Node {
        Node::parse(s).unwrap()
    }

    #[test]
    fn greedy_rule() {
        let mut r = GreedyRule::new();
        assert_eq!(r.extend(&Node::root(), 0), Node::root());
        assert_eq!(r.extend(&n("1"), 0), n("1"));
        assert_eq!(r.extend(&n("1"), 4), n("1000"));
        assert_eq!(r.extend(&n("0"), 0), n("00000"));
    }

    #[test]
    fn depth_zero() {
        for f in [
            sparse_diagonalize(0, &LengthLex, &mut GreedyRule::new()).unwrap(),
            pnp_diagonalize(0, &LengthLex, &mut GreedyRule::new()).unwrap(),
        ] {
            let r = Node::root();
            assert!(f.phi0[&r].is_proper_prefix_of(&f.phi1[&r]));
            assert!(f.phi1[&r].is_proper_prefix_of(&f.phi[&r]));
            assert_eq!(f.phi0[&r], Node::root());
        }
    }

    #[test]
    fn sparse_contract_depth_two() {
        let f = sparse_diagonalize(2, &LengthLex, &mut GreedyRule::new()).unwrap();
        let rep = verify_diag_contract(&f);
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(hat(&f.phi), f.phi0.iter().filter(|(s, _)| s.len() < 2).map(|(a, b)| (a.clone(), b.clone())).collect());
    }

    #[test]
    fn pnp_contract_depth_two() {
        let f = pnp_diagonalize(2, &LengthLex, &mut GreedyRule::new()).unwrap();
        let rep = verify_diag_contract(&f);
        assert!(rep.all_pass(), "{rep:?}");
        assert!(is_pnp(&f.phi) && is_polite(&f.phi) && has_level_harmony(&f.phi));
    }

    #[test]
    fn pnp_counterexample() {
        let f: Assoc = [("0", "00"), ("11", "100")].iter().map(|(a, b)| (n(a), n(b))).collect();
        assert!(!is_pnp(&f));
        let id: Assoc = [("", ""), ("10", "10"), ("0", "0")].iter().map(|(a, b)| (n(a), n(b))).collect();
        assert!(is_pnp(&id));
    }

    #[test]
    fn json_roundtrip() {
        let f = pnp_diagonalize(1, &LengthLex, &mut GreedyRule::new()).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert!(js.starts_with(r#"{"kind":"pnp","domain_depth":1,"phi":[[""#));
        let back: DiagMap = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
