//! Index sets, reduced words of Z2^{*d} * Z^{*e}, matrix polynomials and bouquets.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dense::{self, CMat, C64};
use crate::error::{Error, Result};

/// Coefficients with every entry below this are treated as absent.
pub const PRUNE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet {
    pub d: usize,
    pub e: usize,
    pub has_identity: bool,
}

impl IndexSet {
    pub fn new(d: usize, e: usize) -> Self {
        IndexSet { d, e, has_identity: true }
    }

    /// Number of non-identity colors, d + 2e.
    pub fn colors(&self) -> usize {
        self.d + 2 * self.e
    }

    pub fn star(&self, i: usize) -> usize {
        if i <= self.d {
            i
        } else if i <= self.d + self.e {
            i + self.e
        } else {
            i - self.e
        }
    }

    pub fn is_matching(&self, i: usize) -> bool {
        (1..=self.d).contains(&i)
    }

    /// One color out of every {i, i*} pair: 1..=d+e.
    pub fn base_colors(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.d + self.e
    }

    pub fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.colors() {
            Err(Error::InvalidIndex { index: i, max: self.colors() })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (X_{j1}...X_{jk})* = X_{jk}*...X_{j1}*
    pub fn star(&self, idx: &IndexSet) -> Word {
        Word(self.0.iter().rev().map(|&i| idx.star(i)).collect())
    }

    pub fn is_reduced(&self, idx: &IndexSet) -> bool {
        self.0.iter().all(|&i| idx.check(i).is_ok())
            && self.0.windows(2).all(|w| w[1] != idx.star(w[0]))
    }
}

/// Free-product normal form: cancels X_j X_j (matchings) and X_j X_{j*}.
pub fn reduce_word(letters: &[usize], idx: &IndexSet) -> Result<Word> {
    let mut stack: Vec<usize> = Vec::with_capacity(letters.len());
    for &l in letters {
        idx.check(l)?;
        if stack.last() == Some(&idx.star(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Ok(Word(stack))
}

/// Reduced form of the concatenation `a b` of two already valid words.
pub fn concat_reduce(a: &Word, b: &Word, idx: &IndexSet) -> Word {
    let mut stack = a.0.clone();
    for &l in &b.0 {
        if stack.last() == Some(&idx.star(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

#[derive(Clone, Debug)]
pub struct MatrixPolynomial {
    pub index_set: IndexSet,
    pub r: usize,
    terms: BTreeMap<Word, CMat>,
}

impl MatrixPolynomial {
    pub fn new(index_set: IndexSet, r: usize) -> Self {
        MatrixPolynomial { index_set, r, terms: BTreeMap::new() }
    }

    /// Identity-word polynomial a·ε.
    pub fn constant(index_set: IndexSet, a: CMat) -> Self {
        let mut p = MatrixPolynomial::new(index_set, a.nrows());
        p.add_term(&[], a).expect("square coefficient");
        p
    }

    pub fn add_term(&mut self, letters: &[usize], coeff: CMat) -> Result<()> {
        if coeff.nrows() != self.r || coeff.ncols() != self.r {
            return Err(Error::Dimension(format!(
                "coefficient is {}x{}, polynomial has r={}",
                coeff.nrows(),
                coeff.ncols(),
                self.r
            )));
        }
        let w = reduce_word(letters, &self.index_set)?;
        self.accumulate(w, coeff);
        Ok(())
    }

    fn accumulate(&mut self, w: Word, coeff: CMat) {
        let sum = match self.terms.remove(&w) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !dense::is_zero(&sum, PRUNE_TOL) {
            self.terms.insert(w, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CMat)> {
        self.terms.iter()
    }

    pub fn term(&self, w: &Word) -> Option<&CMat> {
        self.terms.get(w)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn star(&self) -> MatrixPolynomial {
        let mut out = MatrixPolynomial::new(self.index_set, self.r);
        for (w, a) in &self.terms {
            out.accumulate(w.star(&self.index_set), dense::adjoint(a));
        }
        out
    }

    fn check_compatible(&self, other: &MatrixPolynomial) -> Result<()> {
        if self.index_set != other.index_set || self.r != other.r {
            return Err(Error::Dimension(format!(
                "polynomials over ({:?}, r={}) and ({:?}, r={})",
                self.index_set, self.r, other.index_set, other.r
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixPolynomial) -> Result<MatrixPolynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, a) in &other.terms {
            out.accumulate(w.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &MatrixPolynomial) -> Result<MatrixPolynomial> {
        self.check_compatible(other)?;
        let mut out = MatrixPolynomial::new(self.index_set, self.r);
        for (w1, a1) in &self.terms {
            for (w2, a2) in &other.terms {
                out.accumulate(concat_reduce(w1, w2, &self.index_set), a1 * a2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> MatrixPolynomial {
        let mut out = MatrixPolynomial::new(self.index_set, self.r);
        for (w, a) in &self.terms {
            out.accumulate(w.clone(), dense::scale(a, s));
        }
        out
    }

    /// Term maps agree key-for-key with coefficients within `tol` (max-entry norm).
    pub fn approx_eq(&self, other: &MatrixPolynomial, tol: f64) -> bool {
        self.index_set == other.index_set
            && self.r == other.r
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(w, a)| match other.terms.get(w) {
                Some(b) => dense::max_abs(&(a - b)) <= tol,
                None => false,
            })
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.approx_eq(&self.star(), PRUNE_TOL)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Sum of term degrees, the m of the treewidth bound.
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Word::len).sum()
    }

    pub fn is_linear(&self) -> bool {
        self.degree() <= 1
    }

    /// p(1, ..., 1): the adjacency matrix of the 1-lift.
    pub fn one_lift(&self) -> CMat {
        let mut s = dense::zeros(self.r, self.r);
        for a in self.terms.values() {
            s = &s + a;
        }
        s
    }

    pub fn to_bouquet(&self) -> Result<MatrixBouquet> {
        if !self.is_linear() {
            return Err(Error::Unsupported(format!(
                "polynomial of degree {} is not a bouquet",
                self.degree()
            )));
        }
        let mut coeffs = vec![dense::zeros(self.r, self.r); self.index_set.colors() + 1];
        for (w, a) in &self.terms {
            let i = w.letters().first().copied().unwrap_or(0);
            coeffs[i] = a.clone();
        }
        MatrixBouquet::new(self.index_set, coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<usize>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    d: usize,
    e: usize,
    r: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MatrixPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let part = |a: &CMat, f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| f(&a[(i, j)])).collect()).collect()
        };
        PolyJson {
            d: self.index_set.d,
            e: self.index_set.e,
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(w, a)| TermJson { word: w.0.clone(), re: part(a, |z| z.re), im: part(a, |z| z.im) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let pj = PolyJson::deserialize(d)?;
        let mut p = MatrixPolynomial::new(IndexSet::new(pj.d, pj.e), pj.r);
        for t in pj.terms {
            let shape_ok = t.re.len() == pj.r
                && t.im.len() == pj.r
                && t.re.iter().chain(&t.im).all(|row| row.len() == pj.r);
            if !shape_ok {
                return Err(D::Error::custom(format!("term {:?} is not {}x{}", t.word, pj.r, pj.r)));
            }
            let a = CMat::from_fn(pj.r, pj.r, |i, j| C64::new(t.re[i][j], t.im[i][j]));
            p.add_term(&t.word, a).map_err(D::Error::custom)?;
        }
        Ok(p)
    }
}

/// A one-vertex color-regular weighted graph: a_0 plus one coefficient per color.
#[derive(Clone, Debug)]
pub struct MatrixBouquet {
    pub index_set: IndexSet,
    pub r: usize,
    /// coeffs[0] is a_0 (zero when absent); coeffs[i] for colors 1..=d+2e.
    pub coeffs: Vec<CMat>,
}

impl MatrixBouquet {
    /// Checked constructor: a_{i*} = a_i† and a_0 Hermitian.
    pub fn new(index_set: IndexSet, coeffs: Vec<CMat>) -> Result<Self> {
        let k = MatrixBouquet::general(index_set, coeffs)?;
        if !k.is_self_adjoint() {
            return Err(Error::Invalid("bouquet violates a_{i*} = a_i^dagger".into()));
        }
        Ok(k)
    }

    /// Unchecked symmetry, e.g. for the Ihara-Bass transform.
    pub fn general(index_set: IndexSet, coeffs: Vec<CMat>) -> Result<Self> {
        if coeffs.len() != index_set.colors() + 1 {
            return Err(Error::Dimension(format!(
                "expected {} coefficients, got {}",
                index_set.colors() + 1,
                coeffs.len()
            )));
        }
        let r = coeffs[0].nrows();
        if coeffs.iter().any(|a| a.nrows() != r || a.ncols() != r) {
            return Err(Error::Dimension("bouquet coefficients differ in size".into()));
        }
        Ok(MatrixBouquet { index_set, r, coeffs })
    }

    /// Builds the partner coefficients: a_{i+e} = a_i† for permutation colors.
    /// `base` holds a_1..a_{d+e}; matching coefficients must be Hermitian.
    pub fn from_base(index_set: IndexSet, a0: Option<CMat>, base: Vec<CMat>) -> Result<Self> {
        if base.len() != index_set.d + index_set.e {
            return Err(Error::Dimension(format!(
                "expected {} base coefficients, got {}",
                index_set.d + index_set.e,
                base.len()
            )));
        }
        let r = base.first().map(|a| a.nrows()).or(a0.as_ref().map(|a| a.nrows())).unwrap_or(1);
        let mut coeffs = vec![a0.unwrap_or_else(|| dense::zeros(r, r))];
        coeffs.extend(base.iter().cloned());
        coeffs.extend(base[index_set.d..].iter().map(dense::adjoint));
        MatrixBouquet::new(index_set, coeffs)
    }

    /// r = 1 bouquet with real weights per base color.
    pub fn scalar(index_set: IndexSet, weights: &[f64]) -> Result<Self> {
        let base = weights.iter().map(|&w| dense::from_real(&[vec![w]])).collect();
        MatrixBouquet::from_base(index_set, None, base)
    }

    pub fn a(&self, i: usize) -> &CMat {
        &self.coeffs[i]
    }

    pub fn is_self_adjoint(&self) -> bool {
        let tol = PRUNE_TOL * self.coeffs.iter().map(dense::max_abs).fold(1.0, f64::max);
        dense::is_hermitian(&self.coeffs[0], PRUNE_TOL)
            && (1..=self.index_set.colors()).all(|i| {
                let j = self.index_set.star(i);
                dense::max_abs(&(&self.coeffs[j] - &dense::adjoint(&self.coeffs[i]))) <= tol
            })
    }

    /// ‖a_i‖_F ≤ R and ‖a_i⁻¹‖_F ≤ R for every color.
    pub fn is_r_bounded(&self, bound: f64) -> bool {
        (1..=self.index_set.colors()).all(|i| {
            let a = &self.coeffs[i];
            dense::frob(a) <= bound
                && dense::inverse(a).map(|inv| dense::frob(&inv) <= bound).unwrap_or(false)
        })
    }

    pub fn max_frob(&self) -> f64 {
        (1..=self.index_set.colors()).map(|i| dense::frob(&self.coeffs[i])).fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: f64) -> MatrixBouquet {
        let c = C64::new(s, 0.0);
        MatrixBouquet { index_set: self.index_set, r: self.r, coeffs: self.coeffs.iter().map(|a| dense::scale(a, c)).collect() }
    }

    pub fn to_polynomial(&self) -> MatrixPolynomial {
        let mut p = MatrixPolynomial::new(self.index_set, self.r);
        p.accumulate(Word::empty(), self.coeffs[0].clone());
        for i in 1..=self.index_set.colors() {
            p.accumulate(Word(vec![i]), self.coeffs[i].clone());
        }
        p
    }
}

/// Finite undirected multigraph; parallel edges and loops are representable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|(u, v)| *u >= n || *v >= n) {
            return Err(Error::Invalid(format!("edge ({u},{v}) outside {n} vertices")));
        }
        Ok(Graph { n, edges })
    }

    pub fn cycle(n: usize) -> Self {
        Graph { n, edges: (0..n).map(|i| (i, (i + 1) % n)).collect() }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = vec![];
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph { n, edges }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = vec![];
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Graph { n: a + b, edges }
    }

    pub fn path(n: usize) -> Self {
        Graph { n, edges: (1..n).map(|i| (i - 1, i)).collect() }
    }

    /// Edge ids incident to each vertex, in input order (a loop is listed once).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![vec![]; self.n];
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(k);
            if v != u {
                inc[v].push(k);
            }
        }
        inc
    }

    pub fn adjacency(&self) -> CMat {
        let mut a = dense::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] += dense::ONE;
            if u != v {
                a[(v, u)] += dense::ONE;
            }
        }
        a
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|(u, v)| u == v)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let inc = self.incidence();
        let mut seen = vec![false; self.n];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = q.pop_front() {
            for &k in &inc[u] {
                let (a, b) = self.edges[k];
                let w = if a == u { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Vertices that touch at least one edge.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// |i⟩⟨j| as an r×r matrix.
pub fn ketbra(r: usize, i: usize, j: usize) -> CMat {
    let mut m = dense::zeros(r, r);
    m[(i, j)] = dense::ONE;
    m
}

/// d = 0, e = |E|; edge k = {u, v} gets a_k = |v⟩⟨u| and a_{k+e} = |u⟩⟨v|.
pub fn bouquet_of_graph(g: &Graph) -> Result<MatrixBouquet> {
    if g.has_loops() {
        return Err(Error::Unsupported("half-loops are not supported".into()));
    }
    let idx = IndexSet::new(0, g.edges.len());
    let base = g.edges.iter().map(|&(u, v)| ketbra(g.n, v, u)).collect();
    MatrixBouquet::from_base(idx, Some(dense::zeros(g.n, g.n)), base)
}
