//! Enumeration of m-types and their vip orders.
//!
//! Every m-type has a meet closure with exactly one element on each level
//! `0..=2m−2`. Forgetting which leaves are passed with a 1 leaves a sparse
//! type, and sparse types correspond to alternating permutations of
//! `{0,…,2m−2}`. So the census walks the alternating permutations and, for
//! each, the subsets of its free passing bits: positions between a closure
//! node and its closure parent that sit at the length of a leaf.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::collapse::{SimilarityTree, TypeId};
use crate::error::{precondition, unsupported, Error, Result};
use crate::treecore::{is_diagonal, lex_lt, meet_closure, Node, NodeSet};

/// An alternating permutation of `{0,…,2m−2}`: falls at even positions,
/// rises at odd ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AltPerm(Vec<usize>);

impl AltPerm {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n.is_multiple_of(2) {
            return precondition(format!("length {n} is not of the form 2m−1"));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return precondition(format!("{values:?} is not a permutation of 0..{n}"));
            }
        }
        if !is_alternating(&values) {
            return precondition(format!("{values:?} is not alternating"));
        }
        Ok(AltPerm(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len().div_ceil(2)
    }
}

fn is_alternating(v: &[usize]) -> bool {
    v.windows(2)
        .enumerate()
        .all(|(i, w)| if i % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] })
}

impl fmt::Display for AltPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for AltPerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad permutation entry {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        AltPerm::new(values)
    }
}

/// All alternating permutations of `{0,…,2m−2}`, in lexicographic order.
pub fn alternating_perms(m: usize) -> Result<Vec<AltPerm>> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let n = 2 * m - 1;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<AltPerm>) {
        if cur.len() == n {
            out.push(AltPerm(cur.clone()));
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            if let Some(&last) = cur.last() {
                let fall = (cur.len() - 1).is_multiple_of(2);
                if (fall && last < v) || (!fall && last > v) {
                    continue;
                }
            }
            used[v] = true;
            cur.push(v);
            go(n, cur, used, out);
            cur.pop();
            used[v] = false;
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    Ok(out)
}

/// Tangent numbers: `t₁ = 1`, `t_n = Σ_{i=1}^{n−1} C(2n−2, 2i−1)·t_i·t_{n−i}`.
pub fn tangent(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("tangent numbers start at index 1".into()));
    }
    let mut t: Vec<BigUint> = vec![BigUint::zero(), BigUint::one()];
    for k in 2..=n {
        let mut sum = BigUint::zero();
        for i in 1..k {
            sum += binomial(2 * k - 2, 2 * i - 1) * &t[i] * &t[k - i];
        }
        t.push(sum);
    }
    Ok(t.swap_remove(n))
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn big_factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Leaves of a diagonal set in lexicographic order.
fn lex_sorted(leaves: &NodeSet) -> Vec<Node> {
    let mut v = leaves.to_vec();
    v.sort_by(|a, b| match lex_lt(a, b) {
        Ok(true) => Ordering::Less,
        Ok(false) => Ordering::Greater,
        Err(_) => a.cmp(b),
    });
    v
}

/// `P(τ)`: leaf lengths at even positions, adjacent meet lengths at odd ones.
pub fn perm_of_type(tau: &SimilarityTree) -> Result<AltPerm> {
    if !tau.is_sparse() {
        return unsupported(format!("{} is not a sparse m-type", tau.type_id()));
    }
    let d = lex_sorted(tau.leaves());
    let mut values = Vec::with_capacity(2 * d.len() - 1);
    for (i, di) in d.iter().enumerate() {
        values.push(di.len());
        if let Some(next) = d.get(i + 1) {
            values.push(di.meet_len(next));
        }
    }
    AltPerm::new(values)
}

/// The sparse m-type whose permutation is `p`.
pub fn type_of_perm(p: &AltPerm) -> SimilarityTree {
    SimilarityTree::from_leaves(&perm_leaves(p).into_iter().collect())
        .expect("leaves built from an alternating permutation form an antichain")
}

fn perm_leaves(p: &AltPerm) -> Vec<Node> {
    let v = p.values();
    let mut d = vec![Node::root().pad_zeros(v[0])];
    for i in 0..p.m() - 1 {
        let next = d[i].restrict(v[2 * i + 1]).child(1).pad_zeros(v[2 * i + 2]);
        d.push(next);
    }
    d
}

/// `ℓ_i`: the number of distinct length-`i` prefixes of closure members.
pub fn level_sizes(a: &NodeSet) -> Result<Vec<usize>> {
    let m = a.len();
    let closure = meet_closure(a);
    if m == 0 || !is_diagonal(a) || !closure.iter().map(Node::len).eq(0..2 * m - 1) {
        return precondition("level sizes need an m-element diagonal set with closure lengths 0..2m−2");
    }
    Ok((0..2 * m - 1)
        .map(|i| {
            closure
                .iter()
                .filter(|c| c.len() >= i)
                .map(|c| c.restrict(i))
                .collect::<NodeSet>()
                .len()
        })
        .collect())
}

/// Level sizes next to three closed-form candidates for them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSizeFormulas {
    pub direct: Vec<usize>,
    /// `i + 1 − 2·|{j < i : a_j a leaf}|`.
    pub leaf_prefix: Vec<i64>,
    /// `(2m−1) − i − 2·|{j ≥ i : a_j internal}|`.
    pub internal_suffix: Vec<i64>,
    /// `i + 1 − 2·|{j < i : a_j internal}|`, as literally displayed in the
    /// source definition; known not to match.
    pub internal_prefix: Vec<i64>,
}

impl LevelSizeFormulas {
    pub fn matches(&self) -> [bool; 3] {
        let d: Vec<i64> = self.direct.iter().map(|&x| x as i64).collect();
        [d == self.leaf_prefix, d == self.internal_suffix, d == self.internal_prefix]
    }
}

pub fn level_size_formulas(a: &NodeSet) -> Result<LevelSizeFormulas> {
    let direct = level_sizes(a)?;
    let m = a.len() as i64;
    let closure = meet_closure(a);
    let is_leaf: Vec<bool> = closure.iter().map(|c| a.contains(c)).collect();
    let n = is_leaf.len();
    let leaves_before = |i: usize| is_leaf[..i].iter().filter(|&&l| l).count() as i64;
    let internal_before = |i: usize| is_leaf[..i].iter().filter(|&&l| !l).count() as i64;
    let internal_from = |i: usize| is_leaf[i..].iter().filter(|&&l| !l).count() as i64;
    Ok(LevelSizeFormulas {
        direct,
        leaf_prefix: (0..n).map(|i| i as i64 + 1 - 2 * leaves_before(i)).collect(),
        internal_suffix: (0..n).map(|i| (2 * m - 1) - i as i64 - 2 * internal_from(i)).collect(),
        internal_prefix: (0..n).map(|i| i as i64 + 1 - 2 * internal_before(i)).collect(),
    })
}

// ---------------------------------------------------------------------------
// packed enumeration

const MAX_M: usize = 16;

/// The closure of one m-type, one node per length; bit `i` of a word is
/// position `i` of the node.
#[derive(Clone, Copy, Debug)]
pub struct PackedType {
    m: usize,
    bits: [u32; 2 * MAX_M - 1],
    leaf_mask: u32,
    sparse: bool,
}

impl PackedType {
    fn n(&self) -> usize {
        2 * self.m - 1
    }

    pub fn is_sparse(&self) -> bool {
        self.sparse
    }

    fn node(&self, len: usize) -> Node {
        Node::from_bits((0..len).map(|i| ((self.bits[len] >> i) & 1) as u8))
    }

    pub fn leaves(&self) -> NodeSet {
        (0..self.n())
            .filter(|&l| self.leaf_mask >> l & 1 == 1)
            .map(|l| self.node(l))
            .collect()
    }

    pub fn type_id(&self) -> TypeId {
        TypeId(self.leaves().to_vec())
    }

    pub fn tree(&self) -> SimilarityTree {
        SimilarityTree::from_leaves(&self.leaves()).expect("packed leaves are an antichain")
    }

    #[inline]
    fn meet_len(&self, a: usize, b: usize) -> usize {
        let x = self.bits[a] ^ self.bits[b];
        (x.trailing_zeros() as usize).min(a).min(b)
    }

    /// Clause (2) of the vip definition, on the leaf lengths.
    fn vip_compatible(&self) -> bool {
        let n = self.n();
        for k in 0..n {
            for u in k + 1..n {
                if self.leaf_mask >> u & 1 == 0 || self.meet_len(k, u) == k {
                    continue;
                }
                for v in k + 1..n {
                    if self.leaf_mask >> v & 1 == 0 || self.meet_len(k, v) == k {
                        continue;
                    }
                    if self.bits[u] >> k & 1 == 0
                        && self.bits[v] >> k & 1 == 1
                        && self.meet_len(k, u) == self.meet_len(k, v)
                        && u > v
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Level sizes and the number of vip orders, ignoring clause (2).
    fn levels(&self) -> (Vec<usize>, u64) {
        let n = self.n();
        let mut sizes = Vec::with_capacity(n);
        let mut orders = 1u64;
        let mut seen = [0u32; 2 * MAX_M - 1];
        for k in 0..n {
            let mask = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
            let d = self.bits[k];
            let mut cnt = 0;
            let mut bucket = [0u64; 2 * MAX_M];
            for c in k..n {
                let p = self.bits[c] & mask;
                if seen[..cnt].contains(&p) {
                    continue;
                }
                seen[cnt] = p;
                cnt += 1;
                if p != d {
                    let ml = ((p ^ d).trailing_zeros() as usize).min(k);
                    bucket[ml] += 1;
                    orders *= bucket[ml];
                }
            }
            sizes.push(cnt);
        }
        (sizes, orders)
    }

    /// Number of vip orders of this type.
    pub fn vip_count(&self) -> u64 {
        if self.vip_compatible() {
            self.levels().1
        } else {
            0
        }
    }
}

/// A sparse skeleton plus the positions where a 1 may be passed over a leaf.
struct Skeleton {
    base: PackedType,
    parent: Vec<Option<usize>>,
    free: Vec<Vec<usize>>,
    free_total: usize,
}

impl Skeleton {
    fn new(p: &AltPerm) -> Self {
        let m = p.m();
        let n = 2 * m - 1;
        let leaves = perm_leaves(p);
        let closure = meet_closure(&leaves.iter().cloned().collect());
        let mut bits = [0u32; 2 * MAX_M - 1];
        let mut leaf_mask = 0u32;
        for c in &closure {
            let mut w = 0u32;
            for (i, b) in c.bits().iter().enumerate() {
                w |= u32::from(*b) << i;
            }
            bits[c.len()] = w;
            if leaves.contains(c) {
                leaf_mask |= 1 << c.len();
            }
        }
        let base = PackedType { m, bits, leaf_mask, sparse: true };
        let mut parent = vec![None; n];
        let mut free = vec![Vec::new(); n];
        for x in 1..n {
            let par = (0..x).rev().find(|&q| base.meet_len(q, x) == q).expect("root is a prefix");
            parent[x] = Some(par);
            free[x] = (par + 1..x).filter(|&q| leaf_mask >> q & 1 == 1).collect();
        }
        let free_total = free.iter().map(Vec::len).sum();
        Skeleton { base, parent, free, free_total }
    }

    /// Calls `f` on every m-type with this skeleton; mask 0 is the sparse one.
    fn for_each(&self, mut f: impl FnMut(&PackedType)) {
        let n = self.base.n();
        let mut t = self.base;
        for mask in 0u64..(1u64 << self.free_total) {
            let mut used = 0;
            for x in 1..n {
                let par = self.parent[x].unwrap();
                let keep = (1u32 << par) - 1;
                let mut w = (t.bits[par] & keep) | (self.base.bits[x] & (1u32 << par));
                for &q in &self.free[x] {
                    if mask >> used & 1 == 1 {
                        w |= 1 << q;
                    }
                    used += 1;
                }
                t.bits[x] = w;
            }
            t.sparse = mask == 0;
            f(&t);
        }
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 || m > MAX_M {
        return Err(Error::Domain(format!("m must lie in 1..={MAX_M}")));
    }
    Ok(())
}

/// Calls `f` on every m-type (or every sparse one), skeleton by skeleton.
pub fn for_each_type(m: usize, sparse_only: bool, mut f: impl FnMut(&PackedType)) -> Result<()> {
    check_m(m)?;
    for p in alternating_perms(m)? {
        let sk = Skeleton::new(&p);
        if sparse_only {
            f(&sk.base);
        } else {
            sk.for_each(&mut f);
        }
    }
    Ok(())
}

/// All m-types (or sparse m-types), sorted by type id.
pub fn enumerate_types(m: usize, sparse_only: bool) -> Result<Vec<SimilarityTree>> {
    let mut out = Vec::new();
    for_each_type(m, sparse_only, |t| out.push(t.tree()))?;
    out.sort();
    Ok(out)
}

/// Per-type vip counts in type-id order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PerType(pub Vec<(TypeId, u64)>);

impl Serialize for PerType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (id, c) in &self.0 {
            map.serialize_entry(&id.to_string(), c)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOptions {
    pub sparse_only: bool,
    pub per_type: bool,
    /// Spread skeletons over the rayon pool (ignored without the `parallel` feature).
    pub parallel: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { sparse_only: false, per_type: false, parallel: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_plus: Option<u64>,
    pub t: u64,
    pub t_plus: u64,
    /// Types admitting no vip order at all.
    pub zero_vip_types: u64,
    /// Types whose vip count exceeds `∏_{0<i<2m−2}(ℓ_i−1)!`.
    pub level_bound_violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_type: Option<PerType>,
    pub bounds: BoundsRecord,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    r: u64,
    r_plus: u64,
    t: u64,
    t_plus: u64,
    zero: u64,
    bound_violations: u64,
}

impl Tally {
    fn add(mut self, o: Tally) -> Tally {
        self.r += o.r;
        self.r_plus += o.r_plus;
        self.t += o.t;
        self.t_plus += o.t_plus;
        self.zero += o.zero;
        self.bound_violations += o.bound_violations;
        self
    }
}

fn per_type_bound(sizes: &[usize]) -> u64 {
    let n = sizes.len();
    if n < 3 {
        return 1;
    }
    sizes[1..n - 1]
        .iter()
        .map(|&l| (1..l as u64).product::<u64>())
        .product()
}

fn tally_skeleton(p: &AltPerm, opts: &CensusOptions) -> (Tally, Vec<(TypeId, u64)>) {
    let sk = Skeleton::new(p);
    let mut tally = Tally::default();
    let mut per = Vec::new();
    let mut visit = |t: &PackedType| {
        let (sizes, free_orders) = t.levels();
        let count = if t.vip_compatible() { free_orders } else { 0 };
        tally.r += 1;
        tally.r_plus += count;
        if t.sparse {
            tally.t += 1;
            tally.t_plus += count;
        }
        if count == 0 {
            tally.zero += 1;
        }
        if count > per_type_bound(&sizes) {
            tally.bound_violations += 1;
        }
        if opts.per_type {
            per.push((t.type_id(), count));
        }
    };
    if opts.sparse_only {
        visit(&sk.base);
    } else {
        sk.for_each(visit);
    }
    (tally, per)
}

/// Counts every (sparse) m-type and its vip orders.
pub fn census_with(m: usize, opts: &CensusOptions) -> Result<CensusReport> {
    check_m(m)?;
    let perms = alternating_perms(m)?;
    let parts: Vec<(Tally, Vec<(TypeId, u64)>)> = run_skeletons(&perms, opts);
    let mut tally = Tally::default();
    let mut per = Vec::new();
    for (t, p) in parts {
        tally = tally.add(t);
        per.extend(p);
    }
    per.sort_unstable();
    let mut report = CensusReport {
        m,
        r: (!opts.sparse_only).then_some(tally.r),
        r_plus: (!opts.sparse_only).then_some(tally.r_plus),
        t: tally.t,
        t_plus: tally.t_plus,
        zero_vip_types: tally.zero,
        level_bound_violations: tally.bound_violations,
        per_type: opts.per_type.then_some(PerType(per)),
        bounds: BoundsRecord::default(),
    };
    report.bounds = bounds_check(&report);
    Ok(report)
}

#[cfg(feature = "parallel")]
fn run_skeletons(perms: &[AltPerm], opts: &CensusOptions) -> Vec<(Tally, Vec<(TypeId, u64)>)> {
    use rayon::prelude::*;
    if opts.parallel {
        perms.par_iter().map(|p| tally_skeleton(p, opts)).collect()
    } else {
        perms.iter().map(|p| tally_skeleton(p, opts)).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn run_skeletons(perms: &[AltPerm], opts: &CensusOptions) -> Vec<(Tally, Vec<(TypeId, u64)>)> {
    perms.iter().map(|p| tally_skeleton(p, opts)).collect()
}

/// Full census with per-type counts.
pub fn census(m: usize) -> Result<CensusReport> {
    census_with(m, &CensusOptions { per_type: true, ..Default::default() })
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// The closed-form bounds on the sparse vip count, evaluated for one report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundsRecord {
    /// `t_m + 2^{m−1}(−1 + ∏_{i<m} i!)`.
    #[serde(serialize_with = "ser_big")]
    pub lower: BigUint,
    /// `t_m (m−1)! ∏_{i<m} (i!)²`.
    #[serde(serialize_with = "ser_big")]
    pub upper: BigUint,
    /// The same with the product over `i < m−1`.
    #[serde(serialize_with = "ser_big")]
    pub upper_short: BigUint,
    pub lower_ok: bool,
    pub lower_tight: bool,
    pub upper_ok: bool,
    pub upper_short_ok: bool,
    /// Every type's vip count is at most `∏_{0<i<2m−2}(ℓ_i−1)!`.
    pub per_type_ok: bool,
}

impl BoundsRecord {
    pub fn all_ok(&self) -> bool {
        self.lower_ok && self.upper_ok && self.upper_short_ok && self.per_type_ok
    }
}

/// Evaluates both bound formulas against a report.
pub fn bounds_check(report: &CensusReport) -> BoundsRecord {
    let m = report.m;
    let t = BigUint::from(report.t);
    let t_plus = BigUint::from(report.t_plus);
    let fact_prod = |k: usize| (0..k).fold(BigUint::one(), |acc, i| acc * big_factorial(i));
    let lower = &t + (BigUint::one() << (m - 1)) * (fact_prod(m) - BigUint::one());
    let sq = |k: usize| {
        let p = fact_prod(k);
        &p * &p
    };
    let upper = &t * big_factorial(m - 1) * sq(m);
    let upper_short = &t * big_factorial(m - 1) * sq(m.saturating_sub(1));
    BoundsRecord {
        lower_ok: lower <= t_plus,
        lower_tight: lower == t_plus,
        upper_ok: t_plus <= upper,
        upper_short_ok: t_plus <= upper_short,
        per_type_ok: report.level_bound_violations == 0,
        lower,
        upper,
        upper_short,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> NodeSet {
        NodeSet::parse(items).unwrap()
    }

    #[test]
    fn tangent_values() {
        let v: Vec<u64> = (1..=6).map(|n| tangent(n).unwrap().try_into().unwrap()).collect();
        assert_eq!(v, [1, 2, 16, 272, 7936, 353792]);
        assert!(matches!(tangent(0), Err(Error::Domain(_))));
    }

    #[test]
    fn perms_count() {
        for m in 1..=5 {
            let n = alternating_perms(m).unwrap().len();
            assert_eq!(BigUint::from(n), tangent(m).unwrap());
        }
    }

    #[test]
    fn perm_examples() {
        let t = type_of_perm(&"1,0,2".parse().unwrap());
        assert_eq!(*t.leaves(), set(&["0", "10"]));
        let t = type_of_perm(&"2,0,1".parse().unwrap());
        assert_eq!(*t.leaves(), set(&["00", "1"]));
        let star = "4,1,3,0,7,2,6,5,8".parse().unwrap();
        let t = type_of_perm(&star);
        assert_eq!(*t.leaves(), set(&["0000", "010", "1000000", "101000", "10100100"]));
        assert_eq!(perm_of_type(&t).unwrap(), star);
        assert_eq!(perm_of_type(&SimilarityTree::from_leaves(&set(&[""])).unwrap()).unwrap().values(), &[0]);
        assert!("1,2,0".parse::<AltPerm>().is_err());
    }

    #[test]
    fn level_size_examples() {
        assert_eq!(level_sizes(&set(&["00", "100", "1100"])).unwrap(), [1, 2, 3, 2, 1]);
        assert_eq!(
            level_sizes(&set(&["0000", "010", "1000000", "101000", "10100100"])).unwrap(),
            [1, 2, 3, 4, 3, 2, 3, 2, 1]
        );
        assert_eq!(level_sizes(&set(&[""])).unwrap(), [1]);
        let f = level_size_formulas(&set(&["00", "100", "1100"])).unwrap();
        assert_eq!(f.matches(), [true, true, false]);
    }

    #[test]
    fn small_census() {
        let r = census(2).unwrap();
        assert_eq!((r.r, r.r_plus, r.t, r.t_plus), (Some(4), Some(4), 2, 2));
        let r = census(3).unwrap();
        assert_eq!((r.r, r.r_plus, r.t, r.t_plus), (Some(112), Some(128), 16, 20));
        assert!(r.bounds.all_ok() && r.bounds.lower_tight);
        let r = census(1).unwrap();
        assert_eq!((r.r, r.r_plus, r.t, r.t_plus), (Some(1), Some(1), 1, 1));
    }

    #[test]
    fn two_types_listed() {
        let ids: Vec<String> = enumerate_types(2, false)
            .unwrap()
            .iter()
            .map(|t| t.type_id().to_string())
            .collect();
        assert_eq!(ids, ["0;10", "0;11", "1;00", "1;01"]);
        let sparse: Vec<String> = enumerate_types(2, true)
            .unwrap()
            .iter()
            .map(|t| t.type_id().to_string())
            .collect();
        assert_eq!(sparse, ["0;10", "1;00"]);
    }

    #[test]
    fn bound_values() {
        let r = census_with(4, &CensusOptions::default()).unwrap();
        assert_eq!(r.bounds.lower, BigUint::from(360u32));
        assert_eq!(r.bounds.upper, BigUint::from(235008u32));
        assert_eq!(r.bounds.upper_short, BigUint::from(6528u32));
    }
}
