//! Generating polynomials for named MPL graphs: bouquets with closure terms, free, additive and
//! amalgamated products, replacement and zig-zag products, plus a registry of worked examples.

use std::collections::{HashMap, VecDeque};

use crate::algebra::{bouquet_of_graph, ketbra, Graph, IndexSet, MatrixBouquet, MatrixPolynomial};
use crate::dense::{self, CMat, ONE};
use crate::error::{Error, Result};
use crate::lifting::Lift;
use crate::spectra::SpectrumSet;

/// BFS spanning tree from vertex 0, scanning incident edges in input order. Returns the tree
/// edges oriented parent → child in discovery order, plus parent and depth tables.
pub fn bfs_spanning_tree(g: &Graph) -> Result<(Vec<(usize, usize)>, Vec<Option<usize>>, Vec<usize>)> {
    if !g.is_connected() {
        return Err(Error::Invalid("graph is not connected".into()));
    }
    let inc = g.incidence();
    let mut parent = vec![None; g.n];
    let mut depth = vec![0; g.n];
    let mut seen = vec![false; g.n];
    let mut tree = vec![];
    if g.n == 0 {
        return Ok((tree, parent, depth));
    }
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(u) = q.pop_front() {
        for &k in &inc[u] {
            let (a, b) = g.edges[k];
            let w = if a == u { b } else { a };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                depth[w] = depth[u] + 1;
                tree.push((u, w));
                q.push_back(w);
            }
        }
    }
    Ok((tree, parent, depth))
}

/// Vertex sequence of the tree path from `a` to `b`.
fn tree_path(parent: &[Option<usize>], depth: &[usize], a: usize, b: usize) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let (mut up, mut down) = (vec![x], vec![y]);
    while depth[x] > depth[y] {
        x = parent[x].expect("non-root");
        up.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].expect("non-root");
        down.push(y);
    }
    while x != y {
        x = parent[x].expect("non-root");
        y = parent[y].expect("non-root");
        up.push(x);
        down.push(y);
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up
}

/// Bouquet of `base` (edge k = (u, v) gets a_k = |v⟩⟨u|) plus, for each vertex path
/// x_0 … x_k through `base`, the term |x_k⟩⟨x_0| Z_{i_k}⋯Z_{i_1} and its adjoint.
pub fn bouquet_with_closures(base: &Graph, paths: &[Vec<usize>]) -> Result<MatrixPolynomial> {
    let e = base.edges.len();
    let mut arcs: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, &(u, v)) in base.edges.iter().enumerate() {
        arcs.entry((u, v)).or_insert(k + 1);
        arcs.entry((v, u)).or_insert(k + 1 + e);
    }
    let mut p = bouquet_of_graph(base)?.to_polynomial();
    for path in paths {
        let (Some(&x0), Some(&xk)) = (path.first(), path.last()) else { continue };
        let mut word = vec![];
        for s in path.windows(2) {
            let c = arcs
                .get(&(s[0], s[1]))
                .ok_or_else(|| Error::Invalid(format!("closure path uses a non-edge {}-{}", s[0], s[1])))?;
            word.push(*c);
        }
        word.reverse();
        let adj: Vec<usize> = word.iter().rev().map(|&c| p.index_set.star(c)).collect();
        p.add_term(&word, ketbra(base.n, xk, x0))?;
        p.add_term(&adj, ketbra(base.n, x0, xk))?;
    }
    Ok(p)
}

/// Spanning-tree bouquet of G plus one closure term per non-tree edge; the infinite extension
/// is a disjoint union of copies of G.
pub fn cycle_closure_polynomial(g: &Graph) -> Result<MatrixPolynomial> {
    if g.has_loops() {
        return Err(Error::Unsupported("loops are not supported".into()));
    }
    let (tree, parent, depth) = bfs_spanning_tree(g)?;
    let is_tree_edge = |u: usize, v: usize| parent[v] == Some(u) || parent[u] == Some(v);
    let mut used = vec![false; g.n];
    let mut paths = vec![];
    for &(u, v) in &g.edges {
        // the first copy of a tree edge is the tree edge itself
        let child = if parent[v] == Some(u) { v } else { u };
        if is_tree_edge(u, v) && !used[child] {
            used[child] = true;
            continue;
        }
        paths.push(tree_path(&parent, &depth, u, v));
    }
    bouquet_with_closures(&Graph::new(g.n, tree)?, &paths)
}

/// Backtracking search for an automorphism sending 0 to v, for every v. None above 16 vertices.
pub fn is_vertex_transitive(g: &Graph) -> Option<bool> {
    if g.n > 16 {
        return None;
    }
    if g.n == 0 {
        return Some(true);
    }
    let n = g.n;
    let mut adj = vec![vec![0u32; n]; n];
    for &(u, v) in &g.edges {
        adj[u][v] += 1;
        if u != v {
            adj[v][u] += 1;
        }
    }
    let order: Vec<usize> = {
        let mut o = vec![];
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                o.push(u);
                for w in 0..n {
                    if adj[u][w] > 0 && !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        o
    };
    fn extend(adj: &[Vec<u32>], order: &[usize], phi: &mut Vec<Option<usize>>, used: &mut Vec<bool>, k: usize) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..adj.len() {
            if used[y] {
                continue;
            }
            let ok = order[..k].iter().all(|&w| adj[x][w] == adj[y][phi[w].unwrap()]) && adj[x][x] == adj[y][y];
            if ok {
                phi[x] = Some(y);
                used[y] = true;
                if extend(adj, order, phi, used, k + 1) {
                    return true;
                }
                phi[x] = None;
                used[y] = false;
            }
        }
        false
    }
    Some((0..n).all(|v| {
        let mut phi = vec![None; n];
        let mut used = vec![false; n];
        phi[order[0]] = Some(v);
        used[v] = true;
        // order[0] is vertex 0
        extend(&adj, &order, &mut phi, &mut used, 1)
    }))
}

/// Free product of finite vertex-transitive graphs: the bouquet of the Cartesian product of
/// BFS spanning trees plus closure terms for the remaining edges of the Cartesian product.
/// Graphs too large to check are accepted only when `trusted` is set.
pub fn free_product_polynomial(graphs: &[Graph], trusted: bool) -> Result<MatrixPolynomial> {
    if graphs.is_empty() {
        return Err(Error::Invalid("need at least one graph".into()));
    }
    let mut trees = vec![];
    for (k, g) in graphs.iter().enumerate() {
        if g.has_loops() {
            return Err(Error::Unsupported("loops are not supported".into()));
        }
        if !g.is_connected() {
            return Err(Error::Invalid(format!("graph {k} is not connected")));
        }
        match (is_vertex_transitive(g), trusted) {
            (Some(false), _) => return Err(Error::Invalid(format!("graph {k} is not vertex-transitive"))),
            (None, false) => {
                return Err(Error::Invalid(format!("graph {k} is too large to check vertex-transitivity; pass trusted")))
            }
            _ => {}
        }
        trees.push(bfs_spanning_tree(g)?);
    }
    let sizes: Vec<usize> = graphs.iter().map(|g| g.n).collect();
    let total: usize = sizes.iter().product();
    // mixed radix with the first graph most significant
    let mut stride = vec![1; sizes.len()];
    for k in (0..sizes.len().saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * sizes[k + 1];
    }
    let digit = |x: usize, k: usize| (x / stride[k]) % sizes[k];
    let with = |x: usize, k: usize, val: usize| x - digit(x, k) * stride[k] + val * stride[k];

    let mut grid = vec![];
    for (k, (tree, _, _)) in trees.iter().enumerate() {
        for &(a, b) in tree {
            for x in (0..total).filter(|&x| digit(x, k) == 0) {
                grid.push((with(x, k, a), with(x, k, b)));
            }
        }
    }
    let mut paths = vec![];
    for (k, g) in graphs.iter().enumerate() {
        let (tree, parent, depth) = &trees[k];
        let mut used = vec![false; g.n];
        for &(u, v) in &g.edges {
            let child = if parent[v] == Some(u) { v } else { u };
            if tree.contains(&(u, v)) || tree.contains(&(v, u)) {
                if !used[child] {
                    used[child] = true;
                    continue;
                }
            }
            let path = tree_path(parent, depth, u, v);
            for x in (0..total).filter(|&x| digit(x, k) == 0) {
                paths.push(path.iter().map(|&a| with(x, k, a)).collect());
            }
        }
    }
    bouquet_with_closures(&Graph::new(total, grid)?, &paths)
}

/// p = Y + Z + Z⁻¹ + Z⁻¹YZ with r = 1, whose infinite extension is C₄ ⋆ C₄.
pub fn c4_star_c4_scalar() -> MatrixPolynomial {
    let idx = IndexSet::new(1, 1);
    let one = dense::identity(1);
    let mut p = MatrixPolynomial::new(idx, 1);
    for w in [vec![1], vec![2], vec![3], vec![3, 1, 2]] {
        p.add_term(&w, one.clone()).expect("1x1");
    }
    p
}

/// Induced subgraph on the non-isolated vertices is connected and nonempty.
fn atom_ok(a: &Graph) -> bool {
    let s = a.support();
    if s.is_empty() {
        return false;
    }
    let pos: HashMap<usize, usize> = s.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = a.edges.iter().map(|&(u, v)| (pos[&u], pos[&v])).collect();
    Graph { n: s.len(), edges }.is_connected()
}

/// One adjoint pair Z_{A,v}, Z_{A,v}* per atom A and non-isolated vertex v; each atom edge
/// {u, v} contributes |v⟩⟨u| Z_{A,v} Z_{A,u}* plus its adjoint.
pub fn additive_product_polynomial(atoms: &[Graph]) -> Result<MatrixPolynomial> {
    let r = atoms.first().map(|a| a.n).ok_or_else(|| Error::Invalid("need at least one atom".into()))?;
    if atoms.iter().any(|a| a.n != r) {
        return Err(Error::Dimension("atoms must share a vertex set".into()));
    }
    if atoms.iter().any(Graph::has_loops) {
        return Err(Error::Unsupported("atoms cannot have loops".into()));
    }
    let sum = Graph { n: r, edges: atoms.iter().flat_map(|a| a.edges.iter().copied()).collect() };
    if !sum.is_connected() {
        return Err(Error::Invalid("the sum graph of the atoms is not connected".into()));
    }
    if let Some(k) = atoms.iter().position(|a| !atom_ok(a)) {
        return Err(Error::Invalid(format!("atom {k} is empty or disconnected after removing isolated vertices")));
    }
    let mut color: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, a) in atoms.iter().enumerate() {
        for v in a.support() {
            let c = color.len() + 1;
            color.insert((k, v), c);
        }
    }
    let idx = IndexSet::new(0, color.len());
    let mut p = MatrixPolynomial::new(idx, r);
    for (k, a) in atoms.iter().enumerate() {
        for &(u, v) in &a.edges {
            let (cu, cv) = (color[&(k, u)], color[&(k, v)]);
            p.add_term(&[cv, idx.star(cu)], ketbra(r, v, u))?;
            p.add_term(&[cu, idx.star(cv)], ketbra(r, u, v))?;
        }
    }
    Ok(p)
}

#[derive(Clone, Debug)]
pub struct RootedColoredGraph {
    pub n: usize,
    pub root: usize,
    /// (u, v, color)
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct RelatorGraph {
    pub k: usize,
    /// (k0, k1, color); loops allowed.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Free product with amalgamation over a relator graph. Y_{G,v} is a self-adjoint indeterminate
/// per non-root vertex; edge {u, v} of color c contributes M_c·(Y_u Y_v + Y_v Y_u), or M_c·Y_v
/// when u is the root, where M_c = Σ over relator edges of color c of |k1⟩⟨k0| + |k0⟩⟨k1|.
/// The product term is symmetrized so the polynomial is self-adjoint.
pub fn amalgamated_product_polynomial(graphs: &[RootedColoredGraph], relator: &RelatorGraph) -> Result<MatrixPolynomial> {
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, g) in graphs.iter().enumerate() {
        if g.root >= g.n {
            return Err(Error::Invalid(format!("graph {i} has root {} outside {} vertices", g.root, g.n)));
        }
        for &(u, v, c) in &g.edges {
            if u >= g.n || v >= g.n || u == v {
                return Err(Error::Invalid(format!("graph {i} has a bad edge ({u},{v})")));
            }
            if *owner.entry(c).or_insert(i) != i {
                return Err(Error::Invalid(format!("color {c} is used by more than one graph")));
            }
        }
    }
    if let Some(&(a, b, c)) = relator.edges.iter().find(|(a, b, _)| *a >= relator.k || *b >= relator.k) {
        return Err(Error::Invalid(format!("relator edge ({a},{b}) of color {c} is out of range")));
    }
    if let Some(&(_, _, c)) = relator.edges.iter().find(|(_, _, c)| !owner.contains_key(c)) {
        return Err(Error::Invalid(format!("relator color {c} does not occur in any graph")));
    }
    let k = relator.k;
    let m = |c: usize| -> CMat {
        let mut out = dense::zeros(k, k);
        for &(a, b, _) in relator.edges.iter().filter(|e| e.2 == c) {
            out[(b, a)] += ONE;
            if a != b {
                out[(a, b)] += ONE;
            }
        }
        out
    };
    let mut var: Vec<Vec<Option<usize>>> = vec![];
    let mut next = 1;
    for g in graphs {
        let mut row = vec![None; g.n];
        for (v, slot) in row.iter_mut().enumerate() {
            if v != g.root {
                *slot = Some(next);
                next += 1;
            }
        }
        var.push(row);
    }
    let idx = IndexSet::new(next - 1, 0);
    let mut p = MatrixPolynomial::new(idx, k);
    for (i, g) in graphs.iter().enumerate() {
        for &(u, v, c) in &g.edges {
            let coeff = m(c);
            match (var[i][u], var[i][v]) {
                (Some(yu), Some(yv)) => {
                    p.add_term(&[yu, yv], coeff.clone())?;
                    p.add_term(&[yv, yu], coeff)?;
                }
                (None, Some(y)) | (Some(y), None) => p.add_term(&[y], coeff)?,
                (None, None) => unreachable!("edges join distinct vertices"),
            }
        }
    }
    Ok(p)
}

/// The SL(2,Z) instance of the amalgamated product: G_1 = K_2, G_2 = a triangle, relator on
/// two vertices.
pub fn sl2z_amalgamation_input() -> (Vec<RootedColoredGraph>, RelatorGraph) {
    let g1 = RootedColoredGraph { n: 2, root: 0, edges: vec![(0, 1, 0)] };
    let g2 = RootedColoredGraph { n: 3, root: 0, edges: vec![(0, 1, 1), (0, 2, 2), (1, 2, 3)] };
    let rel = RelatorGraph { k: 2, edges: vec![(0, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 1, 2), (0, 0, 3), (1, 1, 3)] };
    (vec![g1, g2], rel)
}

/// J·Y₁₁ + I·Y₂₁ + X·Y₂₂ + I·Y₂₁Y₂₂ exactly as displayed; not self-adjoint.
pub fn sl2z_displayed_polynomial() -> MatrixPolynomial {
    let idx = IndexSet::new(3, 0);
    let j = dense::from_real(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
    let i = dense::identity(2);
    let x = dense::from_real(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let mut p = MatrixPolynomial::new(idx, 2);
    for (w, a) in [(vec![1], j), (vec![2], i.clone()), (vec![3], x), (vec![2, 3], i)] {
        p.add_term(&w, a).expect("2x2");
    }
    p
}

/// Clouds of triangles joined by three matchings, one per cloud vertex: the Cayley graph of the
/// modular group Z/2 ⋆ Z/3.
pub fn modular_group_polynomial() -> MatrixPolynomial {
    let idx = IndexSet::new(3, 0);
    let mut p = MatrixPolynomial::constant(idx, Graph::complete(3).adjacency());
    for k in 0..3 {
        p.add_term(&[k + 1], ketbra(3, k, k)).expect("3x3");
    }
    p
}

fn check_product_input(lift: &Lift, h: &Graph) -> Result<usize> {
    let dd = lift.index_set.colors();
    if h.n != dd {
        return Err(Error::Dimension(format!("H has {} vertices, the lift has {dd} colors", h.n)));
    }
    Ok(dd)
}

/// p = A_H + Σ_i |i*⟩⟨i| X_i (vertex i−1 of H stands for color i); A_n(L, p) is the
/// replacement product of the lift graph with H.
pub fn replacement_product(lift: &Lift, h: &Graph) -> Result<(Lift, MatrixPolynomial)> {
    let dd = check_product_input(lift, h)?;
    let idx = lift.index_set;
    let mut p = MatrixPolynomial::constant(idx, h.adjacency());
    for i in 1..=dd {
        p.add_term(&[i], ketbra(dd, idx.star(i) - 1, i - 1))?;
    }
    Ok((lift.clone(), p))
}

/// p = Σ_i A_H |i*⟩⟨i| A_H X_i; A_n(L, p) is the zig-zag product of the lift graph with H.
pub fn zigzag_product(lift: &Lift, h: &Graph) -> Result<(Lift, MatrixPolynomial)> {
    let dd = check_product_input(lift, h)?;
    let idx = lift.index_set;
    let a = h.adjacency();
    let mut p = MatrixPolynomial::new(idx, dd);
    for i in 1..=dd {
        p.add_term(&[i], &(&a * &ketbra(dd, idx.star(i) - 1, i - 1)) * &a)?;
    }
    Ok((lift.clone(), p))
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub polynomial: MatrixPolynomial,
    pub known_spectrum: Option<SpectrumSet>,
    pub note: &'static str,
}

fn interval_set(iv: &[[f64; 2]], pts: &[f64]) -> Option<SpectrumSet> {
    Some(SpectrumSet::from_parts(iv.to_vec(), pts.to_vec()))
}

/// ±[|√(a−1) − √(b−1)|, √(a−1) + √(b−1)] ∪ {0}: the (a, b)-biregular tree.
fn biregular(a: usize, b: usize) -> Option<SpectrumSet> {
    let (x, y) = (((a - 1) as f64).sqrt(), ((b - 1) as f64).sqrt());
    let (lo, hi) = ((x - y).abs(), x + y);
    interval_set(&[[-hi, -lo], [lo, hi]], &[0.0])
}

pub fn hexagon_ladder_polynomial() -> MatrixPolynomial {
    let idx = IndexSet::new(0, 6);
    let mut q = MatrixPolynomial::new(idx, 6);
    // vertices 1..6 and edges a..f, shifted to 0-based
    let terms: [(usize, usize, &[usize]); 8] = [
        (1, 5, &[1]),
        (2, 1, &[2]),
        (3, 2, &[3]),
        (4, 3, &[4]),
        (5, 4, &[5]),
        (2, 6, &[6]),
        (3, 5, &[3, 2, 1]),
        (6, 1, &[1, 5, 4, 3, 6]),
    ];
    for (v, u, w) in terms {
        q.add_term(w, ketbra(6, v - 1, u - 1)).expect("6x6");
    }
    q.add(&q.star()).expect("same shape")
}

pub fn ladder_polynomial() -> MatrixPolynomial {
    let idx = IndexSet::new(0, 1);
    let x = dense::from_real(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let mut p = MatrixPolynomial::constant(idx, x);
    p.add_term(&[1], dense::identity(2)).expect("2x2");
    p.add_term(&[2], dense::identity(2)).expect("2x2");
    p
}

/// C₄ with the chord 1–4, vertices renumbered from 0.
pub fn cycles_example_graph() -> Graph {
    Graph { n: 4, edges: vec![(0, 1), (0, 3), (0, 2), (1, 3), (3, 2)] }
}

fn graph_spectrum(g: &Graph) -> Option<SpectrumSet> {
    let ev = dense::hermitian_eigenvalues(&g.adjacency()).ok()?;
    Some(SpectrumSet::from_parts(vec![], ev))
}

/// Every named example; all polynomials are self-adjoint.
pub fn entries() -> Vec<CatalogEntry> {
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let tree3 = MatrixBouquet::scalar(IndexSet::new(3, 0), &[1.0; 3]).expect("valid");
    let signed4 = MatrixBouquet::scalar(IndexSet::new(4, 0), &[1.0, 1.0, -1.0, -1.0]).expect("valid");
    let tri = Graph::cycle(3);
    let (amal_graphs, amal_rel) = sl2z_amalgamation_input();
    let t = (13.0 + 8.0 * s2).sqrt();
    let u = (13.0 - 8.0 * s2).sqrt();
    let cyc = cycles_example_graph();
    vec![
        CatalogEntry {
            name: "tree3",
            polynomial: tree3.to_polynomial(),
            known_spectrum: interval_set(&[[-2.0 * s2, 2.0 * s2]], &[]),
            note: "three matchings: the 3-regular tree",
        },
        CatalogEntry {
            name: "signed_tree4",
            polynomial: signed4.to_polynomial(),
            known_spectrum: interval_set(&[[-2.0 * 3f64.sqrt(), 2.0 * 3f64.sqrt()]], &[]),
            note: "four matchings with weights +1, +1, -1, -1: same spectrum as the 4-regular tree",
        },
        CatalogEntry {
            name: "k23",
            polynomial: bouquet_of_graph(&Graph::complete_bipartite(2, 3)).expect("no loops").to_polynomial(),
            known_spectrum: biregular(2, 3),
            note: "bouquet of K_{2,3}: copies of the (2,3)-biregular tree",
        },
        CatalogEntry {
            name: "k34",
            polynomial: bouquet_of_graph(&Graph::complete_bipartite(3, 4)).expect("no loops").to_polynomial(),
            known_spectrum: biregular(3, 4),
            note: "bouquet of K_{3,4}: copies of the (3,4)-biregular tree",
        },
        CatalogEntry {
            name: "c4_star_c4",
            polynomial: c4_star_c4_scalar(),
            known_spectrum: None,
            note: "r = 1 polynomial Y + Z + Z^-1 + Z^-1 Y Z",
        },
        CatalogEntry {
            name: "c3_star_c4",
            polynomial: free_product_polynomial(&[Graph::cycle(3), Graph::cycle(4)], false).expect("valid"),
            known_spectrum: None,
            note: "grid of spanning paths plus 7 closure terms",
        },
        CatalogEntry {
            name: "k2_star_k2_star_k2",
            polynomial: free_product_polynomial(&[Graph::path(2), Graph::path(2), Graph::path(2)], false)
                .expect("valid"),
            known_spectrum: interval_set(&[[-2.0 * s2, 2.0 * s2]], &[]),
            note: "bouquet of the cube: the 3-regular tree",
        },
        CatalogEntry {
            name: "c3_star4",
            polynomial: additive_product_polynomial(&[tri.clone(), tri.clone(), tri.clone(), tri]).expect("valid"),
            known_spectrum: interval_set(&[[1.0 - 2.0 * s6, 1.0 + 2.0 * s6]], &[]),
            note: "additive product of four triangles on one vertex set",
        },
        CatalogEntry {
            name: "sl2z",
            polynomial: modular_group_polynomial(),
            known_spectrum: interval_set(&[[(1.0 - t) / 2.0, (1.0 - u) / 2.0], [(1.0 + u) / 2.0, (1.0 + t) / 2.0]], &[
                -2.0, 0.0,
            ]),
            note: "triangle clouds joined by matchings: the modular group",
        },
        CatalogEntry {
            name: "sl2z_amalgamated",
            polynomial: amalgamated_product_polynomial(&amal_graphs, &amal_rel).expect("valid"),
            known_spectrum: None,
            note: "amalgamated product with the product term symmetrized",
        },
        CatalogEntry {
            name: "cycles_example",
            polynomial: cycle_closure_polynomial(&cyc).expect("connected"),
            known_spectrum: graph_spectrum(&cyc),
            note: "C4 with a chord: copies of a finite graph",
        },
        CatalogEntry {
            name: "ladder",
            polynomial: ladder_polynomial(),
            known_spectrum: interval_set(&[[-3.0, 3.0]], &[]),
            note: "constant term X plus Z and Z*",
        },
        CatalogEntry {
            name: "hexagon_ladder",
            polynomial: hexagon_ladder_polynomial(),
            known_spectrum: None,
            note: "ladder of alternating hexagons and squares",
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Invalid(format!("no catalog entry '{name}', expected one of {:?}", names())))
}
