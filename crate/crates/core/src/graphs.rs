//! `ℤ_k`-colored labelled multigraphs.
//!
//! Every edge runs from a vertex of color `i` (its tail) to a vertex of color
//! `i + 1 mod k` (its head); its class is the tail color. Orientation matters
//! only for `k = 2`, where both classes join the same pair of colors.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coefrings::Rational;
use crate::fock::{order_abnormally, vev, BosonIndex, BosonWord};
use crate::partitions::{enumerate_partitions, z_factor, Partition, PartitionPairPlus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("k must be at least 2, got {0}")]
    BadK(u32),
    #[error("vertex {vertex} has color {color} outside 0..{k}")]
    BadColor { vertex: usize, color: u32, k: u32 },
    #[error("edge {edge} refers to a missing vertex")]
    MissingVertex { edge: usize },
    #[error("edge {edge} joins colors {tail} and {head}, which are not consecutive")]
    NotConsecutive { edge: usize, tail: u32, head: u32 },
    #[error("edge {edge} has degree 0")]
    ZeroDegree { edge: usize },
    #[error("vertex {0} has no edges")]
    Isolated(usize),
    #[error("degree vector has length {got}, expected {k}")]
    DegreeLength { got: usize, k: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    k: u32,
    colors: Vec<u32>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    k: u32,
    vertices: Vec<u32>,
    edges: Vec<[u64; 3]>,
}

/// Counts `n^i_{(μ⁺,μ⁻)}` of vertices of each color and type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomProfile {
    pub k: u32,
    pub counts: BTreeMap<(u32, PartitionPairPlus), u32>,
}

impl AtomProfile {
    pub fn new(k: u32) -> Self {
        AtomProfile { k, counts: BTreeMap::new() }
    }

    pub fn add(&mut self, color: u32, atom: PartitionPairPlus, n: u32) {
        if n > 0 {
            *self.counts.entry((color, atom)).or_insert(0) += n;
        }
    }

    /// `Σ n · (l(μ⁺) + l(μ⁻))`: the number of half-edges.
    pub fn bond_count(&self) -> u32 {
        self.counts.iter().map(|((_, a), n)| n * (a.plus.len() + a.minus.len()) as u32).sum()
    }

    /// Degree vector implied by the outgoing half-edges.
    pub fn degree(&self) -> Vec<u32> {
        let mut d = vec![0; self.k as usize];
        for ((c, a), n) in &self.counts {
            d[*c as usize] += n * a.plus.size();
        }
        d
    }

    /// Whether, for every class, outgoing degrees at color `i` match the
    /// incoming degrees at color `i + 1` as multisets.
    pub fn is_balanced(&self) -> bool {
        let k = self.k as usize;
        let mut out: Vec<Vec<u32>> = vec![Vec::new(); k];
        let mut inc: Vec<Vec<u32>> = vec![Vec::new(); k];
        for ((c, a), n) in &self.counts {
            let c = *c as usize;
            for _ in 0..*n {
                out[c].extend_from_slice(a.plus.parts());
                inc[(c + k - 1) % k].extend_from_slice(a.minus.parts());
            }
        }
        out.iter_mut().chain(inc.iter_mut()).for_each(|v| v.sort_unstable());
        out == inc
    }

    /// `Σ n · (l(μ⁺) + l(μ⁻) − 2)`.
    pub fn valence_sum(&self) -> i64 {
        self.counts
            .iter()
            .map(|((_, a), n)| *n as i64 * (a.plus.len() as i64 + a.minus.len() as i64 - 2))
            .sum()
    }
}

impl ColoredGraph {
    pub fn new(k: u32, colors: Vec<u32>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if k < 2 {
            return Err(GraphError::BadK(k));
        }
        for (v, &c) in colors.iter().enumerate() {
            if c >= k {
                return Err(GraphError::BadColor { vertex: v, color: c, k });
            }
        }
        let mut touched = vec![false; colors.len()];
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= colors.len() || e.head >= colors.len() {
                return Err(GraphError::MissingVertex { edge: i });
            }
            if e.degree == 0 {
                return Err(GraphError::ZeroDegree { edge: i });
            }
            let (ct, ch) = (colors[e.tail], colors[e.head]);
            if (ct + 1) % k != ch {
                return Err(GraphError::NotConsecutive { edge: i, tail: ct, head: ch });
            }
            touched[e.tail] = true;
            touched[e.head] = true;
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(GraphError::Isolated(v));
        }
        Ok(ColoredGraph { k, colors, edges })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_class(&self, e: &Edge) -> u32 {
        self.colors[e.tail]
    }

    pub fn genus(&self) -> i64 {
        1 - self.colors.len() as i64 + self.edges.len() as i64
    }

    pub fn degree(&self) -> Vec<u32> {
        let mut d = vec![0; self.k as usize];
        for e in &self.edges {
            d[self.colors[e.tail] as usize] += e.degree;
        }
        d
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v || e.head == v).count()
    }

    /// `(μ⁺(v), μ⁻(v))`: outgoing and incoming edge degrees at `v`.
    pub fn atom(&self, v: usize) -> PartitionPairPlus {
        let plus = self.edges.iter().filter(|e| e.tail == v).map(|e| e.degree).collect();
        let minus = self.edges.iter().filter(|e| e.head == v).map(|e| e.degree).collect();
        PartitionPairPlus {
            plus: Partition::from_unsorted(plus),
            minus: Partition::from_unsorted(minus),
        }
    }

    pub fn profile(&self) -> AtomProfile {
        let mut p = AtomProfile::new(self.k);
        for v in 0..self.colors.len() {
            p.add(self.colors[v], self.atom(v), 1);
        }
        p
    }

    pub fn edge_degree_product(&self) -> BigInt {
        self.edges.iter().fold(BigInt::one(), |acc, e| acc * BigInt::from(e.degree))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.colors.len();
        if n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            k: self.k,
            vertices: self.colors.clone(),
            edges: self.edges.iter().map(|e| [e.tail as u64, e.head as u64, e.degree as u64]).collect(),
        };
        serde_json::to_string(&raw).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let edges = raw
            .edges
            .iter()
            .map(|[t, h, d]| Edge { tail: *t as usize, head: *h as usize, degree: *d as u32 })
            .collect();
        ColoredGraph::new(raw.k, raw.vertices, edges).map_err(|e| e.to_string())
    }

    fn signature(&self, v: usize) -> (u32, PartitionPairPlus) {
        (self.colors[v], self.atom(v))
    }

    /// Canonical relabelling and the number of vertex permutations that fix
    /// the graph.
    fn canonical(&self) -> (ColoredGraph, u64) {
        let n = self.colors.len();
        let sigs: Vec<_> = (0..n).map(|v| self.signature(v)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|a, b| sigs[*a].cmp(&sigs[*b]));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(g) if sigs[g[0]] == sigs[v] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut best: Option<Vec<Edge>> = None;
        let mut hits = 0u64;
        let mut label = vec![0usize; n];
        let mut visit = |label: &[usize]| {
            let mut enc: Vec<Edge> = self
                .edges
                .iter()
                .map(|e| Edge { tail: label[e.tail], head: label[e.head], degree: e.degree })
                .collect();
            enc.sort_unstable();
            match &best {
                Some(b) if enc > *b => {}
                Some(b) if enc == *b => hits += 1,
                _ => {
                    best = Some(enc);
                    hits = 1;
                }
            }
        };
        permute_groups(&groups, 0, 0, &mut label, &mut visit);
        let colors = order.iter().map(|&v| self.colors[v]).collect();
        (ColoredGraph { k: self.k, colors, edges: best.unwrap_or_default() }, hits)
    }

    /// `∏ m!` over groups of edges sharing tail, head and degree.
    fn parallel_edge_factor(&self) -> u64 {
        let mut groups: HashMap<Edge, u64> = HashMap::new();
        for e in &self.edges {
            *groups.entry(*e).or_insert(0) += 1;
        }
        groups.values().map(|m| (1..=*m).product::<u64>()).product()
    }
}

/// Runs `visit` on every labelling that permutes vertices within each group.
fn permute_groups<F: FnMut(&[usize])>(
    groups: &[Vec<usize>],
    gi: usize,
    offset: usize,
    label: &mut Vec<usize>,
    visit: &mut F,
) {
    if gi == groups.len() {
        visit(label);
        return;
    }
    let len = groups[gi].len();
    let mut items = groups[gi].clone();
    heap_permutations(&mut items, len, &mut |perm: &[usize]| {
        for (j, &v) in perm.iter().enumerate() {
            label[v] = offset + j;
        }
        permute_groups(groups, gi + 1, offset + len, label, visit);
    });
}

fn heap_permutations<F: FnMut(&[usize])>(items: &mut [usize], n: usize, f: &mut F) {
    if n <= 1 {
        f(items);
        return;
    }
    for i in 0..n - 1 {
        heap_permutations(items, n - 1, f);
        if n.is_multiple_of(2) {
            items.swap(i, n - 1);
        } else {
            items.swap(0, n - 1);
        }
    }
    heap_permutations(items, n - 1, f);
}

/// `|Aut(Γ)|` by exhaustive search over color-preserving vertex bijections,
/// each extended by all bijections of parallel edges.
pub fn automorphism_order(g: &ColoredGraph) -> u64 {
    let n = g.colors.len();
    let mut mult: HashMap<(usize, usize, u32), u32> = HashMap::new();
    for e in &g.edges {
        *mult.entry((e.tail, e.head, e.degree)).or_insert(0) += 1;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(
        mult: &HashMap<(usize, usize, u32), u32>,
        image: &[usize],
        v: usize,
    ) -> bool {
        // Edges between v and already-mapped vertices (including v itself).
        for ((t, h, d), m) in mult {
            let (t, h) = (*t, *h);
            if ((t == v && image[h] != usize::MAX) || (h == v && image[t] != usize::MAX))
                && mult.get(&(image[t], image[h], *d)) != Some(m) {
                    return false;
                }
        }
        true
    }
    fn rec(
        g: &ColoredGraph,
        mult: &HashMap<(usize, usize, u32), u32>,
        v: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        count: &mut u64,
    ) {
        if v == image.len() {
            *count += 1;
            return;
        }
        for u in 0..image.len() {
            if used[u] || g.colors[u] != g.colors[v] {
                continue;
            }
            image[v] = u;
            used[u] = true;
            if consistent(mult, image, v) {
                rec(g, mult, v + 1, image, used, count);
            }
            used[u] = false;
            image[v] = usize::MAX;
        }
    }
    let mut count = 0u64;
    rec(g, &mult, 0, &mut image, &mut used, &mut count);
    count * g.parallel_edge_factor()
}

/// Genus, degree vector and atom profile.
pub fn graph_invariants(g: &ColoredGraph) -> (i64, Vec<u32>, AtomProfile) {
    (g.genus(), g.degree(), g.profile())
}

/// One enumerated isomorphism class.
#[derive(Clone, Debug)]
pub struct GraphClass {
    pub graph: ColoredGraph,
    pub aut: u64,
}

type Cache = HashMap<(u32, Vec<u32>), Arc<Vec<GraphClass>>>;

static CACHE: LazyLock<Mutex<Cache>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Restricted-growth strings: all set partitions of `n` labelled items.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur[i] = b;
            rec(i + 1, if b == max { max + 1 } else { max }, cur, out);
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(0, 0, &mut cur, &mut out);
    }
    out
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

/// Labelled structures for one choice of edge-degree partitions per class:
/// every way of grouping half-edges at each color into vertices.
fn labelled_structures(k: u32, parts: &[Partition]) -> Vec<ColoredGraph> {
    let ku = k as usize;
    let mut edge_list: Vec<(u32, u32)> = Vec::new();
    for (c, p) in parts.iter().enumerate() {
        for &deg in p.parts() {
            edge_list.push((c as u32, deg));
        }
    }
    // Half-edges at each color: (edge index, is_tail).
    let mut halves: Vec<Vec<(usize, bool)>> = vec![Vec::new(); ku];
    for (i, &(c, _)) in edge_list.iter().enumerate() {
        halves[c as usize].push((i, true));
        halves[(c as usize + 1) % ku].push((i, false));
    }
    let options: Vec<Vec<Vec<usize>>> = halves.iter().map(|h| set_partitions(h.len())).collect();
    let mut out = Vec::new();
    for choice in cartesian(&options) {
        let mut colors = Vec::new();
        let mut tail = vec![0usize; edge_list.len()];
        let mut head = vec![0usize; edge_list.len()];
        for (color, blocks) in choice.iter().enumerate() {
            let base = colors.len();
            let nblocks = blocks.iter().max().map(|m| m + 1).unwrap_or(0);
            colors.extend(std::iter::repeat_n(color as u32, nblocks));
            for (j, &b) in blocks.iter().enumerate() {
                let (e, is_tail) = halves[color][j];
                if is_tail {
                    tail[e] = base + b;
                } else {
                    head[e] = base + b;
                }
            }
        }
        let edges = edge_list
            .iter()
            .enumerate()
            .map(|(i, &(_, deg))| Edge { tail: tail[i], head: head[i], degree: deg })
            .collect();
        out.push(ColoredGraph { k, colors, edges });
    }
    out
}

fn enumerate_all(k: u32, d: &[u32]) -> Vec<GraphClass> {
    let per_class: Vec<Vec<Partition>> = d.iter().map(|&di| enumerate_partitions(di)).collect();
    let mut found: BTreeMap<(Vec<u32>, Vec<Edge>), GraphClass> = BTreeMap::new();
    for parts in cartesian(&per_class) {
        for g in labelled_structures(k, &parts) {
            let (canon, vertex_autos) = g.canonical();
            let key = (canon.colors.clone(), canon.edges.clone());
            found.entry(key).or_insert_with(|| {
                let aut = vertex_autos * canon.parallel_edge_factor();
                GraphClass { graph: canon, aut }
            });
        }
    }
    found.into_values().collect()
}

/// One representative per isomorphism class of graphs with degree vector
/// `d`, together with `|Aut|`, in a canonical order.
pub fn enumerate_graphs(k: u32, d: &[u32], connected_only: bool) -> Result<Arc<Vec<GraphClass>>, GraphError> {
    if k < 2 {
        return Err(GraphError::BadK(k));
    }
    if d.len() != k as usize {
        return Err(GraphError::DegreeLength { got: d.len(), k });
    }
    let key = (k, d.to_vec());
    let all = {
        let cached = CACHE.lock().unwrap().get(&key).cloned();
        match cached {
            Some(v) => v,
            None => {
                let v = Arc::new(enumerate_all(k, d));
                CACHE.lock().unwrap().insert(key, v.clone());
                v
            }
        }
    };
    if connected_only {
        Ok(Arc::new(all.iter().filter(|c| c.graph.is_connected()).cloned().collect()))
    } else {
        Ok(all)
    }
}

/// Orbit-counting check: for each choice of edge degrees, each class must be
/// hit by exactly `|H| / |Aut|` labelled structures, where `H` permutes edges
/// of equal class and degree.
pub fn orbit_count_consistent(k: u32, d: &[u32]) -> bool {
    let per_class: Vec<Vec<Partition>> = d.iter().map(|&di| enumerate_partitions(di)).collect();
    for parts in cartesian(&per_class) {
        let h: u64 = parts
            .iter()
            .flat_map(|p| p.multiplicities())
            .map(|(_, m)| (1..=m as u64).product::<u64>())
            .product();
        let mut hits: BTreeMap<(Vec<u32>, Vec<Edge>), (u64, u64)> = BTreeMap::new();
        for g in labelled_structures(k, &parts) {
            let aut = automorphism_order(&g);
            let (canon, _) = g.canonical();
            let slot = hits.entry((canon.colors, canon.edges)).or_insert((0, aut));
            slot.0 += 1;
        }
        if hits.values().any(|(count, aut)| count * aut != h) {
            return false;
        }
    }
    true
}

/// Graphs with every total degree `1..=max_total` (all degree vectors).
pub fn degree_vectors(k: u32, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(k, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k as usize, max_total, &mut Vec::new(), &mut out);
    out.retain(|d| d.iter().any(|x| *x > 0));
    out
}

/// `⟨;∏ (1/n!)(β_{i,μ⁺}/z_{μ⁺} · β_{i−1,−μ⁻}/z_{μ⁻})^n;⟩` computed in the Fock space.
pub fn chemistry_vev(profile: &AtomProfile) -> Rational {
    let k = profile.k;
    let mut modes: Vec<(u32, i32)> = Vec::new();
    let mut scale = Rational::one();
    for ((i, atom), n) in &profile.counts {
        let zz = z_factor(&atom.plus) * z_factor(&atom.minus);
        let mut nfact = BigInt::one();
        for j in 1..=*n {
            nfact *= BigInt::from(j);
        }
        scale /= Rational::from_integer(zz.pow(*n) * nfact);
        for _ in 0..*n {
            modes.extend(atom.plus.parts().iter().map(|&p| (*i, p as i32)));
            let prev = (i + k - 1) % k;
            modes.extend(atom.minus.parts().iter().map(|&p| (prev, -(p as i32))));
        }
    }
    let factors = modes
        .into_iter()
        .map(|(c, m)| (BosonIndex { color: c, mode: m }, Rational::one()))
        .collect();
    let word = order_abnormally(&BosonWord::new(factors));
    vev(&word) * scale
}

/// `Σ_Γ 1/(|Aut_Γ| ∏ d_e)` over enumerated graphs realizing `profile`.
pub fn chemistry_graph_sum(profile: &AtomProfile) -> Rational {
    if profile.counts.is_empty() {
        return Rational::one();
    }
    let d = profile.degree();
    let Ok(classes) = enumerate_graphs(profile.k, &d, false) else {
        return Rational::zero();
    };
    let mut acc = Rational::zero();
    for c in classes.iter() {
        if c.graph.profile() == *profile {
            acc += Rational::new(BigInt::one(), BigInt::from(c.aut) * c.graph.edge_degree_product());
        }
    }
    acc
}

/// Result of checking the genus/degree identities on one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub balance: bool,
    pub degree_both_ways: bool,
    pub valence_sum: bool,
}

impl LemmaCheck {
    pub fn all(&self) -> bool {
        self.balance && self.degree_both_ways && self.valence_sum
    }
}

/// Checks, from vertex data alone: outgoing degrees at color `i` match
/// incoming degrees at color `i + 1`; the degree vector computed from either
/// side agrees with the edge sum; and `2g − 2 = Σ_v (l(μ⁺) + l(μ⁻) − 2)`.
pub fn lemma_identities(g: &ColoredGraph) -> LemmaCheck {
    let k = g.k as usize;
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut inc: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut d_out = vec![0u32; k];
    let mut d_in = vec![0u32; k];
    let mut valence = 0i64;
    for v in 0..g.num_vertices() {
        let c = g.colors[v] as usize;
        let a = g.atom(v);
        out[c].extend_from_slice(a.plus.parts());
        inc[c].extend_from_slice(a.minus.parts());
        d_out[c] += a.plus.size();
        d_in[(c + k - 1) % k] += a.minus.size();
        valence += a.plus.len() as i64 + a.minus.len() as i64 - 2;
    }
    let balance = (0..k).all(|i| {
        let mut a = out[i].clone();
        let mut b = inc[(i + 1) % k].clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    });
    let degree = g.degree();
    LemmaCheck {
        balance,
        degree_both_ways: d_out == degree && d_in == degree,
        valence_sum: 2 * g.genus() - 2 == valence,
    }
}

/// All balanced profiles on `k` colors with at most `max_bonds` half-edges
/// and total degree at most `max_degree`.
pub fn balanced_profiles(k: u32, max_bonds: u32, max_degree: u32) -> Vec<AtomProfile> {
    // Atoms are (color, pair) with l(μ⁺)+l(μ⁻) ≤ max_bonds and |μ⁺|+|μ⁻| ≤ 2·max_degree.
    let mut atoms: Vec<(u32, PartitionPairPlus, u32)> = Vec::new();
    for c in 0..k {
        for a in crate::partitions::enumerate_pairs_plus(2 * max_degree) {
            let bonds = (a.plus.len() + a.minus.len()) as u32;
            if bonds <= max_bonds && a.plus.size() <= max_degree && a.minus.size() <= max_degree {
                atoms.push((c, a, bonds));
            }
        }
    }
    let mut out = Vec::new();
    fn rec(
        atoms: &[(u32, PartitionPairPlus, u32)],
        idx: usize,
        bonds_left: u32,
        cur: &mut AtomProfile,
        max_degree: u32,
        out: &mut Vec<AtomProfile>,
    ) {
        if idx == atoms.len() {
            if cur.is_balanced() && cur.degree().iter().sum::<u32>() <= max_degree {
                out.push(cur.clone());
            }
            return;
        }
        let (c, a, b) = &atoms[idx];
        let mut n = 0;
        loop {
            rec(atoms, idx + 1, bonds_left - n * b, cur, max_degree, out);
            if (n + 1) * b > bonds_left {
                break;
            }
            n += 1;
            cur.add(*c, a.clone(), 1);
            if cur.degree().iter().sum::<u32>() > max_degree {
                break;
            }
        }
        if n > 0 {
            let key = (*c, a.clone());
            let slot = cur.counts.get_mut(&key).unwrap();
            *slot -= n;
            if *slot == 0 {
                cur.counts.remove(&key);
            }
        }
    }
    let mut cur = AtomProfile::new(k);
    rec(&atoms, 0, max_bonds, &mut cur, max_degree, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefrings::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn e(t: usize, h: usize, d: u32) -> Edge {
        Edge { tail: t, head: h, degree: d }
    }

    #[test]
    fn invariants_examples() {
        let single = ColoredGraph::new(3, vec![0, 1], vec![e(0, 1, 1)]).unwrap();
        assert_eq!(single.genus(), 0);
        assert_eq!(single.degree(), vec![1, 0, 0]);
        let cycle = ColoredGraph::new(2, vec![0, 1], vec![e(0, 1, 1), e(1, 0, 1)]).unwrap();
        assert_eq!(cycle.genus(), 1);
        assert_eq!(cycle.degree(), vec![1, 1]);
        let two = ColoredGraph::new(3, vec![0, 1, 0, 1], vec![e(0, 1, 1), e(2, 3, 1)]).unwrap();
        assert_eq!(two.genus(), -1);
    }

    #[test]
    fn malformed_graphs() {
        assert!(matches!(
            ColoredGraph::new(3, vec![0, 2], vec![e(0, 1, 1)]),
            Err(GraphError::NotConsecutive { .. })
        ));
        assert!(matches!(ColoredGraph::new(3, vec![0, 1, 0], vec![e(0, 1, 1)]), Err(GraphError::Isolated(2))));
        assert!(ColoredGraph::new(1, vec![], vec![]).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let cycle = ColoredGraph::new(2, vec![0, 1], vec![e(0, 1, 1), e(1, 0, 1)]).unwrap();
        assert_eq!(automorphism_order(&cycle), 1);
        let parallel = ColoredGraph::new(3, vec![0, 1], vec![e(0, 1, 1), e(0, 1, 1)]).unwrap();
        assert_eq!(automorphism_order(&parallel), 2);
        let two = ColoredGraph::new(3, vec![0, 1, 0, 1], vec![e(0, 1, 1), e(2, 3, 1)]).unwrap();
        assert_eq!(automorphism_order(&two), 2);
    }

    #[test]
    fn enumeration_examples() {
        let c = enumerate_graphs(2, &[1, 1], true).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.iter().filter(|g| g.graph.genus() == 1).count(), 1);
        assert_eq!(enumerate_graphs(3, &[1, 0, 0], false).unwrap().len(), 1);
        let all = enumerate_graphs(3, &[2, 0, 0], false).unwrap();
        assert_eq!(all.len(), 5);
        let mut summary: Vec<(i64, u64)> = all.iter().map(|g| (g.graph.genus(), g.aut)).collect();
        summary.sort();
        assert_eq!(summary, vec![(-1, 2), (0, 1), (0, 2), (0, 2), (1, 2)]);
        for g in all.iter() {
            assert_eq!(g.aut, automorphism_order(&g.graph));
        }
    }

    #[test]
    fn json_round_trip() {
        let g = ColoredGraph::new(2, vec![0, 1], vec![e(0, 1, 2), e(1, 0, 1)]).unwrap();
        let s = g.to_json();
        assert_eq!(ColoredGraph::from_json(&s).unwrap(), g);
        assert!(ColoredGraph::from_json(r#"{"k":3,"vertices":[0,2],"edges":[[0,1,1]]}"#).is_err());
    }

    #[test]
    fn chemistry_examples() {
        assert_eq!(chemistry_vev(&AtomProfile::new(3)), rat(1, 1));
        let mut two_cycle = AtomProfile::new(2);
        two_cycle.add(0, PartitionPairPlus { plus: p(&[1]), minus: p(&[1]) }, 1);
        two_cycle.add(1, PartitionPairPlus { plus: p(&[1]), minus: p(&[1]) }, 1);
        assert_eq!(chemistry_vev(&two_cycle), rat(1, 1));
        assert_eq!(chemistry_graph_sum(&two_cycle), rat(1, 1));
        let mut star = AtomProfile::new(3);
        star.add(0, PartitionPairPlus { plus: p(&[1, 1]), minus: Partition::empty() }, 1);
        star.add(1, PartitionPairPlus { plus: Partition::empty(), minus: p(&[1]) }, 2);
        assert_eq!(chemistry_vev(&star), rat(1, 2));
        assert_eq!(chemistry_graph_sum(&star), rat(1, 2));
    }

    #[test]
    fn orbit_counting_small() {
        assert!(orbit_count_consistent(2, &[1, 1]));
        assert!(orbit_count_consistent(3, &[2, 1, 0]));
    }
}
