//! Extension graphs and the combinatorial side: balls, cycles, foldings, tree decompositions.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::algebra::{concat_reduce, reduce_word, Graph, IndexSet, MatrixPolynomial, Word};
use crate::dense::{C64, ZERO};
use crate::error::{Error, Result};
use crate::lifting::Lift;
use crate::spectra::{adjacency_operator, DenseMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct ExtEdge {
    pub u: usize,
    pub v: usize,
    /// A[u, v]; the reversed edge carries the conjugate.
    pub weight: C64,
    pub word: Word,
}

/// Scalar-weighted graph on V_n × [r], vertex (x, a) at x·r + a.
#[derive(Clone, Debug)]
pub struct ExtensionGraph {
    pub n_vertices: usize,
    pub edges: Vec<ExtEdge>,
}

fn word_tag(w: &Word) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// The extension of the lifted graph: one edge per nonzero entry of each P_{σ^w} ⊗ a_w on or
/// above the diagonal.
pub fn extend(lift: &Lift, p: &MatrixPolynomial) -> Result<ExtensionGraph> {
    adjacency_operator(lift, p, None)?;
    let r = p.r;
    let mut edges = vec![];
    for (w, a) in p.terms() {
        for u in 0..lift.n {
            let x = lift.word_action(w, u);
            for i in 0..r {
                for k in 0..r {
                    let (row, col) = (x * r + i, u * r + k);
                    if a[(i, k)] != ZERO && row <= col {
                        edges.push(ExtEdge { u: row, v: col, weight: a[(i, k)], word: w.clone() });
                    }
                }
            }
        }
    }
    Ok(ExtensionGraph { n_vertices: lift.n * r, edges })
}

impl ExtensionGraph {
    pub fn adjacency(&self) -> DenseMatrix {
        let mut m = crate::dense::zeros(self.n_vertices, self.n_vertices);
        for e in &self.edges {
            m[(e.u, e.v)] += e.weight;
            if e.u != e.v {
                m[(e.v, e.u)] += e.weight.conj();
            }
        }
        DenseMatrix::from_complex(m)
    }

    /// Unweighted multigraph on the same vertices.
    pub fn support(&self) -> Graph {
        Graph { n: self.n_vertices, edges: self.edges.iter().map(|e| (e.u, e.v)).collect() }
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("u\tv\tre\tim\tword\n");
        for e in &self.edges {
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", e.u, e.v, e.weight.re, e.weight.im, word_tag(&e.word));
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph extension {\n");
        for v in 0..self.n_vertices {
            let _ = writeln!(s, "  {v};");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -- {} [label=\"{}{:+}i\", word=\"{}\"];",
                e.u,
                e.v,
                e.weight.re,
                e.weight.im,
                word_tag(&e.word)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// The colored base graph G_L of a lift (identity color omitted).
pub fn lift_graph(lift: &Lift) -> Graph {
    lift.graph().0
}

fn neighbor_lists(g: &Graph) -> Vec<Vec<usize>> {
    let mut nb = vec![vec![]; g.n];
    for &(u, v) in &g.edges {
        nb[u].push(v);
        if u != v {
            nb[v].push(u);
        }
    }
    nb
}

fn bfs_dist(nb: &[Vec<usize>], src: usize, cap: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; nb.len()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        if dist[u] == cap {
            continue;
        }
        for &v in &nb[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
        }
    }
    dist
}

/// Cycle rank |E| − |V| + 1 of the induced ball B(src, λ) for λ = 0..=cap.
/// Balls are connected, loops and parallel edges each count.
fn ball_cycle_ranks(g: &Graph, nb: &[Vec<usize>], src: usize, cap: usize) -> Vec<i64> {
    let dist = bfs_dist(nb, src, cap);
    let mut vcount = vec![0i64; cap + 1];
    for &d in &dist {
        if d <= cap {
            vcount[d] += 1;
        }
    }
    let mut ecount = vec![0i64; cap + 1];
    for &(u, v) in &g.edges {
        let m = dist[u].max(dist[v]);
        if m <= cap {
            ecount[m] += 1;
        }
    }
    let (mut vs, mut es) = (0, 0);
    (0..=cap)
        .map(|l| {
            vs += vcount[l];
            es += ecount[l];
            es - vs + 1
        })
        .collect()
}

/// Largest λ ≤ cap such that every induced radius-λ ball has at most one cycle (0 if even
/// single vertices fail).
pub fn bicycle_free_radius(g: &Graph, cap: usize) -> usize {
    let nb = neighbor_lists(g);
    let mut best = cap;
    for v in 0..g.n {
        let ranks = ball_cycle_ranks(g, &nb, v, best);
        if let Some(l) = ranks.iter().position(|&c| c > 1) {
            best = l.saturating_sub(1);
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

/// First vertex whose induced radius-h ball is a tree.
pub fn acyclic_ball_vertex(g: &Graph, h: usize) -> Option<usize> {
    let nb = neighbor_lists(g);
    (0..g.n).find(|&v| ball_cycle_ranks(g, &nb, v, h)[h] == 0)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: vec![] }
    }
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Deterministic inverse automaton over the generators: states 0..r are the index states,
/// transitions (state, letter) → state are closed under the involution.
#[derive(Clone, Debug)]
pub struct FoldedAutomaton {
    pub index_set: IndexSet,
    pub r: usize,
    /// Representative state of each index state.
    index_state: Vec<usize>,
    pub transitions: BTreeMap<(usize, usize), usize>,
    pub num_states: usize,
}

impl FoldedAutomaton {
    /// Reads `w` from the state of index `from`; true iff the run ends at the state of `to`.
    pub fn accepts(&self, w: &Word, from: usize, to: usize) -> bool {
        let mut s = self.index_state[from];
        for &x in w.letters() {
            match self.transitions.get(&(s, x)) {
                Some(&t) => s = t,
                None => return false,
            }
        }
        s == self.index_state[to]
    }

    /// Loop language at the base state (the r = 1 reading).
    pub fn accepts_loop(&self, w: &Word) -> bool {
        self.accepts(w, 0, 0)
    }
}

/// Stallings folding of the graph with, for every a_w[j, i] ≠ 0, a path from index state j to
/// index state i spelling w. Readable words from j to i are then exactly the group elements
/// v·u⁻¹ with (u, i) and (v, j) connected in the infinite extension.
pub fn folding_automaton(p: &MatrixPolynomial) -> Result<FoldedAutomaton> {
    if !p.is_self_adjoint() {
        return Err(Error::Invalid("polynomial is not self-adjoint".into()));
    }
    let idx = p.index_set;
    let r = p.r;
    let mut uf = UnionFind::new();
    for _ in 0..r {
        uf.add();
    }
    let mut edges: Vec<(usize, usize, usize)> = vec![];
    for (w, a) in p.terms() {
        for j in 0..r {
            for i in 0..r {
                if a[(j, i)] == ZERO {
                    continue;
                }
                let letters = w.letters();
                if letters.is_empty() {
                    uf.union(i, j);
                    continue;
                }
                let mut s = j;
                for (k, &x) in letters.iter().enumerate() {
                    let t = if k + 1 == letters.len() { i } else { uf.add() };
                    edges.push((s, x, t));
                    edges.push((t, idx.star(x), s));
                    s = t;
                }
            }
        }
    }
    loop {
        let mut trans: HashMap<(usize, usize), usize> = HashMap::new();
        let mut changed = false;
        for &(s, x, t) in &edges {
            let (s, t) = (uf.find(s), uf.find(t));
            match trans.get(&(s, x)).copied() {
                Some(t2) if uf.find(t2) != t => {
                    changed |= uf.union(t, t2);
                }
                Some(_) => {}
                None => {
                    trans.insert((s, x), t);
                }
            }
        }
        if !changed {
            let transitions: BTreeMap<(usize, usize), usize> =
                trans.into_iter().map(|((s, x), t)| ((uf.find(s), x), uf.find(t))).collect();
            let num_states = (0..uf.parent.len()).filter(|&x| uf.find(x) == x).count();
            let index_state = (0..r).map(|i| uf.find(i)).collect();
            return Ok(FoldedAutomaton { index_set: idx, r, index_state, transitions, num_states });
        }
    }
}

fn inverse(w: &Word, idx: &IndexSet) -> Word {
    w.star(idx)
}

/// Whether (u_word, i) and (v_word, j) lie in one component of the infinite extension.
pub fn connected_in_infinite_lift(p: &MatrixPolynomial, u: (&[usize], usize), v: (&[usize], usize)) -> Result<bool> {
    let idx = p.index_set;
    for (w, k) in [u, v] {
        if k >= p.r {
            return Err(Error::InvalidIndex { index: k, max: p.r.saturating_sub(1) });
        }
        if !reduce_word(w, &idx)?.letters().eq(w) {
            return Err(Error::Invalid(format!("word {w:?} is not reduced")));
        }
    }
    let aut = folding_automaton(p)?;
    let g = concat_reduce(&Word(v.0.to_vec()), &inverse(&Word(u.0.to_vec()), &idx), &idx);
    Ok(aut.accepts(&g, v.1, u.1))
}

/// All reduced words of length ≤ depth, shortlex order.
pub fn ball_words(idx: &IndexSet, depth: usize, limit: usize) -> Result<Vec<Word>> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..depth {
        let mut next = vec![];
        for w in &frontier {
            for x in 1..=idx.colors() {
                // left multiplication x·w
                if w.letters().first() == Some(&idx.star(x)) {
                    continue;
                }
                let mut l = vec![x];
                l.extend_from_slice(w.letters());
                next.push(Word(l));
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > limit {
            return Err(Error::Invalid(format!("ball has more than {limit} group elements")));
        }
        frontier = next;
    }
    Ok(out)
}

const BALL_LIMIT: usize = 200_000;

/// The truncation of the infinite extension to group elements of length ≤ depth.
#[derive(Clone, Debug)]
pub struct TruncatedExtension {
    pub words: Vec<Word>,
    pub r: usize,
    /// Vertex (words[k], i) is k·r + i.
    pub edges: Vec<(usize, usize)>,
}

impl TruncatedExtension {
    pub fn vertex(&self, w: &Word, i: usize) -> Option<usize> {
        self.words.binary_search_by(|x| shortlex(x, w)).ok().map(|k| k * self.r + i)
    }

    pub fn graph(&self) -> Graph {
        Graph { n: self.words.len() * self.r, edges: self.edges.clone() }
    }
}

fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.letters().cmp(b.letters()))
}

pub fn truncated_extension(p: &MatrixPolynomial, depth: usize) -> Result<TruncatedExtension> {
    let idx = p.index_set;
    let mut words = ball_words(&idx, depth, BALL_LIMIT)?;
    words.sort_by(shortlex);
    let r = p.r;
    let mut t = TruncatedExtension { words, r, edges: vec![] };
    let mut edges = vec![];
    for (k, g) in t.words.iter().enumerate() {
        for (w, a) in p.terms() {
            let h = concat_reduce(w, g, &idx);
            if h.len() > depth {
                continue;
            }
            let Some(base) = t.vertex(&h, 0) else { continue };
            for j in 0..r {
                for i in 0..r {
                    let (x, y) = (k * r + i, base + j);
                    if a[(j, i)] != ZERO && x <= y {
                        edges.push((x, y));
                    }
                }
            }
        }
    }
    t.edges = edges;
    Ok(t)
}

/// BFS reachability inside the radius-depth truncation.
pub fn connected_in_truncation(t: &TruncatedExtension, u: (&Word, usize), v: (&Word, usize)) -> Option<bool> {
    let (a, b) = (t.vertex(u.0, u.1)?, t.vertex(v.0, v.1)?);
    let g = t.graph();
    let nb = neighbor_lists(&g);
    Some(bfs_dist(&nb, a, usize::MAX)[b] != usize::MAX)
}

#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    /// Vertices of the decomposed graph as (group element, index).
    pub vertices: Vec<(Word, usize)>,
    pub graph_edges: Vec<(usize, usize)>,
    pub bags: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Decomposition of the radius-depth ball indexed by the Cayley tree: the source (g, i) of every
/// edge to (w·g, j) is added to the bags along the geodesic g → w·g. Bags have at most
/// (m + 1)·r vertices, m the total degree of p.
pub fn tree_decomposition_ball(p: &MatrixPolynomial, depth: usize) -> Result<TreeDecomposition> {
    let idx = p.index_set;
    let t = truncated_extension(p, depth)?;
    let r = p.r;
    let nw = t.words.len();
    let mut bags: Vec<Vec<usize>> = (0..nw).map(|k| (0..r).map(|i| k * r + i).collect()).collect();
    for (k, g) in t.words.iter().enumerate() {
        for (w, a) in p.terms() {
            if concat_reduce(w, g, &idx).len() > depth {
                continue;
            }
            let sources: Vec<usize> = (0..r).filter(|&i| (0..r).any(|j| a[(j, i)] != ZERO)).collect();
            let mut h = g.clone();
            for &x in w.letters().iter().rev() {
                h = concat_reduce(&Word(vec![x]), &h, &idx);
                let b = t.vertex(&h, 0).expect("geodesics stay inside the ball") / r;
                bags[b].extend(sources.iter().map(|&i| k * r + i));
            }
        }
    }
    for b in bags.iter_mut() {
        b.sort_unstable();
        b.dedup();
    }
    let mut tree_edges = vec![];
    for (k, w) in t.words.iter().enumerate().skip(1) {
        let parent = Word(w.letters()[1..].to_vec());
        tree_edges.push((t.vertex(&parent, 0).expect("prefix closed") / r, k));
    }
    let vertices = t.words.iter().flat_map(|w| (0..r).map(move |i| (w.clone(), i))).collect();
    Ok(TreeDecomposition { vertices, graph_edges: t.edges, bags, tree_edges })
}

/// Checks the three tree-decomposition axioms and that the bag graph is a tree.
pub fn check_tree_decomposition(td: &TreeDecomposition) -> std::result::Result<(), String> {
    let nb = td.bags.len();
    let nv = td.vertices.len();
    if nb == 0 {
        return if nv == 0 { Ok(()) } else { Err("no bags".into()) };
    }
    if td.tree_edges.len() + 1 != nb {
        return Err(format!("{} tree edges for {} bags", td.tree_edges.len(), nb));
    }
    let tree = Graph { n: nb, edges: td.tree_edges.clone() };
    if !tree.is_connected() {
        return Err("bag graph is not connected".into());
    }
    let mut holders: Vec<Vec<usize>> = vec![vec![]; nv];
    for (b, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= nv {
                return Err(format!("bag {b} holds unknown vertex {v}"));
            }
            holders[v].push(b);
        }
    }
    if let Some(v) = holders.iter().position(|h| h.is_empty()) {
        return Err(format!("vertex {v} is in no bag"));
    }
    for &(u, v) in &td.graph_edges {
        if !holders[u].iter().any(|b| td.bags[*b].binary_search(&v).is_ok()) {
            return Err(format!("edge ({u},{v}) is in no bag"));
        }
    }
    let tnb = neighbor_lists(&tree);
    for (v, hs) in holders.iter().enumerate() {
        let mut inside = vec![false; nb];
        hs.iter().for_each(|&b| inside[b] = true);
        let mut seen = vec![false; nb];
        let mut q = VecDeque::from([hs[0]]);
        seen[hs[0]] = true;
        let mut count = 1;
        while let Some(b) = q.pop_front() {
            for &c in &tnb[b] {
                if inside[c] && !seen[c] {
                    seen[c] = true;
                    count += 1;
                    q.push_back(c);
                }
            }
        }
        if count != hs.len() {
            return Err(format!("bags holding vertex {v} are not connected"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkConnectivity {
    pub connected: bool,
    pub gap: f64,
}

/// Uses S = D^{-1/2} |A| D^{-1/2}: connected iff eigenvalue 1 is simple; gap = 1 − λ₂(S).
pub fn random_walk_connectivity(g: &ExtensionGraph) -> Result<WalkConnectivity> {
    let n = g.n_vertices;
    let mut a = faer::Mat::<f64>::zeros(n, n);
    for e in &g.edges {
        let w = e.weight.norm();
        a[(e.u, e.v)] += w;
        if e.u != e.v {
            a[(e.v, e.u)] += w;
        }
    }
    let deg: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).sum()).collect();
    if n == 1 {
        return Ok(WalkConnectivity { connected: true, gap: 0.0 });
    }
    if deg.iter().any(|&x| x <= 0.0) {
        return Ok(WalkConnectivity { connected: false, gap: 0.0 });
    }
    let s = DenseMatrix::Real(faer::Mat::from_fn(n, n, |i, j| a[(i, j)] / (deg[i] * deg[j]).sqrt()));
    let ev = s.hermitian_eigenvalues()?;
    let lam2 = ev[n - 2];
    Ok(WalkConnectivity { connected: 1.0 - lam2 > 1e-9, gap: 1.0 - lam2 })
}

/// Self-test of the covering map: BFS over the colored radius ball of the infinite extension at
/// (ε, i), mapping (g, i) ↦ (σ^g(u), i), and checking every out-edge lands where the finite
/// extension's edge does.
pub fn local_cover_check(lift: &Lift, p: &MatrixPolynomial, radius: usize) -> Result<bool> {
    if lift.index_set != p.index_set {
        return Err(Error::Dimension("lift and polynomial use different index sets".into()));
    }
    let idx = p.index_set;
    let terms: Vec<(&Word, Vec<(usize, usize)>)> = p
        .terms()
        .map(|(w, a)| {
            let nz = (0..p.r).flat_map(|j| (0..p.r).map(move |i| (j, i))).filter(|&(j, i)| a[(j, i)] != ZERO).collect();
            (w, nz)
        })
        .collect();
    for u in 0..lift.n {
        for i0 in 0..p.r {
            let mut seen: HashMap<(Word, usize), usize> = HashMap::new();
            let mut q = VecDeque::from([(Word::empty(), i0, 0usize)]);
            seen.insert((Word::empty(), i0), u);
            while let Some((g, i, dist)) = q.pop_front() {
                if dist == radius {
                    continue;
                }
                let x = seen[&(g.clone(), i)];
                for (w, nz) in &terms {
                    for &(j, src) in nz {
                        if src != i {
                            continue;
                        }
                        let h = concat_reduce(w, &g, &idx);
                        let image = lift.word_action(&h, u);
                        if image != lift.word_action(w, x) {
                            return Ok(false);
                        }
                        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry((h.clone(), j)) {
                            e.insert(image);
                            q.push_back((h, j, dist + 1));
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}
