//! Finite n-lifts, edge signings, product lifts and the seeded generators that feed the builder.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Graph, IndexSet, Word};
use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn invert(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (u, &v) in p.iter().enumerate() {
        inv[v] = u;
    }
    inv
}

/// An n-lift: sigmas[0] = id, sigmas[i*] = sigmas[i]⁻¹, matchings fixed-point free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub index_set: IndexSet,
    pub n: usize,
    sigmas: Vec<Perm>,
}

impl Lift {
    /// `base[k]` is the permutation of color k+1, for colors 1..=d+e.
    pub fn new(index_set: IndexSet, n: usize, base: Vec<Perm>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("lift size must be positive".into()));
        }
        if index_set.d > 0 && n > 1 && n % 2 == 1 {
            return Err(Error::Parity(n));
        }
        if base.len() != index_set.d + index_set.e {
            return Err(Error::Dimension(format!(
                "expected {} permutations, got {}",
                index_set.d + index_set.e,
                base.len()
            )));
        }
        for (k, p) in base.iter().enumerate() {
            if p.len() != n || !is_perm(p) {
                return Err(Error::Invalid(format!("color {} is not a permutation of {n} points", k + 1)));
            }
            if k < index_set.d {
                let involution = (0..n).all(|u| p[p[u]] == u);
                let fp_free = n == 1 || (0..n).all(|u| p[u] != u);
                if !involution || !fp_free {
                    return Err(Error::Invalid(format!("color {} is not a perfect matching", k + 1)));
                }
            }
        }
        let mut sigmas = vec![(0..n).collect::<Perm>()];
        sigmas.extend(base.iter().cloned());
        sigmas.extend(base[index_set.d..].iter().map(|p| invert(p)));
        Ok(Lift { index_set, n, sigmas })
    }

    /// The unique 1-lift.
    pub fn trivial(index_set: IndexSet) -> Self {
        Lift { index_set, n: 1, sigmas: vec![vec![0]; index_set.colors() + 1] }
    }

    pub fn sigma(&self, i: usize) -> &Perm {
        &self.sigmas[i]
    }

    pub fn base_perms(&self) -> Vec<Perm> {
        self.sigmas[1..=self.index_set.d + self.index_set.e].to_vec()
    }

    /// σ^w(u) for w = X_{j1}...X_{jk}: the rightmost letter acts first.
    pub fn word_action(&self, w: &Word, u: usize) -> usize {
        w.letters().iter().rev().fold(u, |x, &j| self.sigmas[j][x])
    }

    /// The colored base graph G_L (identity color omitted): one edge per matching pair, one per
    /// arc u → σ_i(u) of each permutation color i ≤ d+e. Returns the graph and each edge's color.
    pub fn graph(&self) -> (Graph, Vec<usize>) {
        let mut edges = vec![];
        let mut colors = vec![];
        for i in self.index_set.base_colors() {
            for u in 0..self.n {
                let v = self.sigmas[i][u];
                if !self.index_set.is_matching(i) || u < v {
                    edges.push((u, v));
                    colors.push(i);
                }
            }
        }
        (Graph { n: self.n, edges }, colors)
    }

    pub fn num_edges(&self) -> usize {
        if self.n == 1 {
            return self.index_set.d + self.index_set.e;
        }
        self.index_set.d * self.n / 2 + self.index_set.e * self.n
    }
}

#[derive(Serialize, Deserialize)]
struct LiftJson {
    n: usize,
    d: usize,
    e: usize,
    perms: Vec<Perm>,
}

impl Serialize for Lift {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LiftJson { n: self.n, d: self.index_set.d, e: self.index_set.e, perms: self.base_perms() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lift {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lj = LiftJson::deserialize(d)?;
        Lift::new(IndexSet::new(lj.d, lj.e), lj.n, lj.perms).map_err(serde::de::Error::custom)
    }
}

/// For a matching color, the position of each vertex's edge when edges are sorted by smaller endpoint.
fn matching_edge_ids(p: &[usize]) -> Vec<usize> {
    let mut ids = vec![0; p.len()];
    let mut k = 0;
    for u in 0..p.len() {
        if u <= p[u] {
            ids[u] = k;
            ids[p[u]] = k;
            k += 1;
        }
    }
    ids
}

/// ±1 per undirected edge of each base color 1..=d+e.
/// Matching colors hold n/2 signs ordered by smaller endpoint; permutation colors hold
/// n signs where entry u is the sign of the edge u → σ_i(u).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signing {
    pub chi: Vec<Vec<i8>>,
}

impl Signing {
    fn lengths(lift: &Lift) -> Vec<usize> {
        lift.index_set
            .base_colors()
            .map(|i| if lift.index_set.is_matching(i) { lift.n.div_ceil(2) } else { lift.n })
            .collect()
    }

    pub fn all_plus(lift: &Lift) -> Self {
        Signing { chi: Signing::lengths(lift).into_iter().map(|l| vec![1; l]).collect() }
    }

    /// Consumes signs in color order; `bits.len()` must equal the lift's edge count.
    pub fn from_flat(lift: &Lift, bits: &[i8]) -> Result<Self> {
        let lens = Signing::lengths(lift);
        let total: usize = lens.iter().sum();
        if bits.len() != total {
            return Err(Error::Dimension(format!("signing needs {total} signs, got {}", bits.len())));
        }
        let mut chi = vec![];
        let mut at = 0;
        for l in lens {
            chi.push(bits[at..at + l].to_vec());
            at += l;
        }
        let s = Signing { chi };
        s.validate(lift)?;
        Ok(s)
    }

    pub fn random(lift: &Lift, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Signing {
            chi: Signing::lengths(lift)
                .into_iter()
                .map(|l| (0..l).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect())
                .collect(),
        }
    }

    pub fn validate(&self, lift: &Lift) -> Result<()> {
        let lens = Signing::lengths(lift);
        if self.chi.len() != lens.len() || self.chi.iter().zip(&lens).any(|(c, &l)| c.len() != l) {
            return Err(Error::Dimension("signing shape does not match the lift".into()));
        }
        if self.chi.iter().flatten().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid("signs must be +1 or -1".into()));
        }
        Ok(())
    }

    /// table[i][u] = sign picked up on the arc u → σ_i(u), for colors 0..=d+2e.
    /// Edge consistency: χ_{i*}(σ_i(u)) = χ_i(u).
    pub fn arc_signs(&self, lift: &Lift) -> Vec<Vec<f64>> {
        let idx = &lift.index_set;
        let n = lift.n;
        let mut table = vec![vec![1.0; n]; idx.colors() + 1];
        for i in idx.base_colors() {
            let chi = &self.chi[i - 1];
            if idx.is_matching(i) {
                let ids = matching_edge_ids(lift.sigma(i));
                for u in 0..n {
                    table[i][u] = chi[ids[u]] as f64;
                }
            } else {
                let j = idx.star(i);
                for u in 0..n {
                    table[i][u] = chi[u] as f64;
                    table[j][lift.sigma(i)[u]] = chi[u] as f64;
                }
            }
        }
        table
    }

    pub fn flat(&self) -> Vec<i8> {
        self.chi.iter().flatten().copied().collect()
    }
}

/// Uniform random lift; matchings are the associated matchings of uniform permutations.
pub fn random_lift(index_set: IndexSet, n: usize, seed: u64) -> Result<Lift> {
    if n == 1 {
        return Ok(Lift::trivial(index_set));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = vec![];
    for i in index_set.base_colors() {
        let mut pi: Perm = (0..n).collect();
        pi.shuffle(&mut rng);
        base.push(if index_set.is_matching(i) { associated_matching(&pi)? } else { pi });
    }
    Lift::new(index_set, n, base)
}

/// Pairs (π(0), π(1)), (π(2), π(3)), ...
pub fn associated_matching(pi: &[usize]) -> Result<Perm> {
    if pi.len() % 2 == 1 {
        return Err(Error::Parity(pi.len()));
    }
    let mut m = vec![0; pi.len()];
    for k in (0..pi.len()).step_by(2) {
        m[pi[k]] = pi[k + 1];
        m[pi[k + 1]] = pi[k];
    }
    Ok(m)
}

/// The mn-lift with P_ρ = Σ_j P_{τ_j} ⊗ |σ(j)⟩⟨j|, vertex (a, j) stored at a·n + j.
/// `factors[k][j]` is τ_j for base color k+1.
pub fn product_lift(factors: &[Vec<Perm>], base: &Lift) -> Result<Lift> {
    let idx = base.index_set;
    let n = base.n;
    if factors.len() != idx.d + idx.e || factors.iter().any(|f| f.len() != n) {
        return Err(Error::Dimension("one factor permutation per color and base vertex required".into()));
    }
    let m = factors[0].first().map_or(1, |t| t.len());
    let mut out = vec![];
    for (k, taus) in factors.iter().enumerate() {
        let i = k + 1;
        let sigma = base.sigma(i);
        if taus.iter().any(|t| t.len() != m || !is_perm(t)) {
            return Err(Error::Invalid(format!("color {i}: factors are not permutations of {m} points")));
        }
        if idx.is_matching(i) {
            for j in 0..n {
                let back = &taus[sigma[j]];
                if (0..m).any(|a| back[taus[j][a]] != a) {
                    return Err(Error::Invalid(format!(
                        "color {i}: factor at {} is not the inverse of the factor at {j}",
                        sigma[j]
                    )));
                }
            }
        }
        let mut rho = vec![0; m * n];
        for a in 0..m {
            for j in 0..n {
                rho[a * n + j] = taus[j][a] * n + sigma[j];
            }
        }
        out.push(rho);
    }
    Lift::new(idx, m * n, out)
}

/// 2-lift whose |−⟩ half is the signed lift: copies stay parallel on +1 edges and cross on −1 edges.
pub fn signing_to_2lift(base: &Lift, chi: &Signing) -> Result<Lift> {
    chi.validate(base)?;
    let signs = chi.arc_signs(base);
    let factors: Vec<Vec<Perm>> = base
        .index_set
        .base_colors()
        .map(|i| (0..base.n).map(|u| if signs[i][u] > 0.0 { vec![0, 1] } else { vec![1, 0] }).collect())
        .collect();
    product_lift(&factors, base)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedConfig {
    pub seed: Vec<u8>,
    pub t: usize,
    pub delta: f64,
}

impl SeedConfig {
    pub fn from_index(seed: u128, t: usize, delta: f64) -> Self {
        SeedConfig { seed: seed.to_le_bytes().to_vec(), t, delta }
    }

    fn seed_value(&self) -> u128 {
        let mut b = [0u8; 16];
        for (k, &x) in self.seed.iter().take(16).enumerate() {
            b[k] = x;
        }
        u128::from_le_bytes(b)
    }
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut r = 0u128;
    for k in 0..64 {
        if (b >> k) & 1 == 1 {
            r ^= (a as u128) << k;
        }
    }
    r
}

fn deg(x: u128) -> i32 {
    127 - x.leading_zeros() as i32
}

fn poly_rem(mut x: u128, f: u128) -> u128 {
    let df = deg(f);
    while x != 0 && deg(x) >= df {
        x ^= f << (deg(x) - df);
    }
    x
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: f of degree m is irreducible iff gcd(x^{2^i} − x, f) = 1 for i ≤ m/2.
fn is_irreducible(f: u128, m: u32) -> bool {
    let mut xp: u128 = 2;
    for _ in 0..m / 2 {
        xp = poly_rem(clmul(xp as u64, xp as u64), f);
        if poly_gcd(f, xp ^ 2) != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest irreducible x^m + ... over GF(2), as a bit mask.
pub fn irreducible_poly(m: u32) -> u128 {
    assert!((1..=62).contains(&m), "field degree out of range");
    let top = 1u128 << m;
    (1u128..top).step_by(2).map(|low| top | low).find(|&f| is_irreducible(f, m)).expect("irreducible exists")
}

/// Field degree m for which the powering construction has bias (count−1)/2^m ≤ delta.
pub fn field_degree(count: usize, delta: f64) -> u32 {
    let need = (count.saturating_sub(1)).max(1) as f64 / delta;
    (need.log2().ceil().max(1.0) as u32).min(62)
}

/// Number of distinct seeds: α and β each range over GF(2^m).
pub fn small_bias_seed_space(count: usize, delta: f64) -> u128 {
    1u128 << (2 * field_degree(count, delta))
}

/// x_i = (−1)^{⟨α^i, β⟩} over GF(2^m), with (α, β) read from the seed.
pub fn small_bias_bits(count: usize, config: &SeedConfig) -> Vec<i8> {
    let m = field_degree(count, config.delta);
    let f = irreducible_poly(m);
    let mask = (1u128 << m) - 1;
    let s = config.seed_value();
    let alpha = (s & mask) as u64;
    let beta = ((s >> m) & mask) as u64;
    let mut p: u64 = 1;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(if (p & beta).count_ones() % 2 == 0 { 1 } else { -1 });
        p = poly_rem(clmul(p, alpha), f) as u64;
    }
    out
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const FEISTEL_ROUNDS: usize = 8;

/// Keyed permutation of [n]: balanced Feistel network on 2h bits with cycle walking.
#[derive(Clone, Debug)]
struct Prp {
    n: usize,
    half: u32,
    keys: [u64; FEISTEL_ROUNDS],
}

impl Prp {
    fn new(n: usize, seed: u64, stream: u64) -> Self {
        let bits = (usize::BITS - (n.max(2) - 1).leading_zeros()).max(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut keys = [0u64; FEISTEL_ROUNDS];
        for k in keys.iter_mut() {
            *k = rng.random();
        }
        Prp { n, half: bits.div_ceil(2), keys }
    }

    fn round(&self, k: usize, x: u64) -> u64 {
        mix64(x ^ self.keys[k]) & ((1u64 << self.half) - 1)
    }

    fn encrypt_once(&self, x: u64) -> u64 {
        let mask = (1u64 << self.half) - 1;
        let (mut l, mut r) = (x >> self.half, x & mask);
        for k in 0..FEISTEL_ROUNDS {
            let t = l ^ self.round(k, r);
            l = r;
            r = t;
        }
        (l << self.half) | r
    }

    fn decrypt_once(&self, y: u64) -> u64 {
        let mask = (1u64 << self.half) - 1;
        let (mut l, mut r) = (y >> self.half, y & mask);
        for k in (0..FEISTEL_ROUNDS).rev() {
            let t = r ^ self.round(k, l);
            r = l;
            l = t;
        }
        (l << self.half) | r
    }

    fn forward(&self, x: usize) -> usize {
        let mut y = self.encrypt_once(x as u64);
        while y as usize >= self.n {
            y = self.encrypt_once(y);
        }
        y as usize
    }

    fn backward(&self, y: usize) -> usize {
        let mut x = self.decrypt_once(y as u64);
        while x as usize >= self.n {
            x = self.decrypt_once(x);
        }
        x as usize
    }
}

/// Seed-indexed lift family with pointwise access to σ_i(j).
/// The independence parameter `t` is recorded but the backend is a keyed PRP, not a t-wise
/// uniform construction; callers certify every lift they accept.
#[derive(Clone, Debug)]
pub struct SeededLiftFamily {
    pub index_set: IndexSet,
    pub n: usize,
    pub t: usize,
    pub seed: u64,
    prps: Vec<Prp>,
}

impl SeededLiftFamily {
    pub fn new(index_set: IndexSet, n: usize, t: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("lift size must be positive".into()));
        }
        if index_set.d > 0 && n > 1 && n % 2 == 1 {
            return Err(Error::Parity(n));
        }
        let prps = index_set.base_colors().map(|i| Prp::new(n, seed, i as u64)).collect();
        Ok(SeededLiftFamily { index_set, n, t, seed, prps })
    }

    /// σ_i(j) for a base color i in 1..=d+e without building the whole lift.
    pub fn sigma(&self, i: usize, j: usize) -> usize {
        if self.n == 1 {
            return 0;
        }
        let prp = &self.prps[i - 1];
        if self.index_set.is_matching(i) {
            prp.forward(prp.backward(j) ^ 1)
        } else {
            prp.forward(j)
        }
    }

    pub fn materialize(&self) -> Result<Lift> {
        if self.n == 1 {
            return Ok(Lift::trivial(self.index_set));
        }
        let base = self.index_set.base_colors().map(|i| (0..self.n).map(|j| self.sigma(i, j)).collect()).collect();
        Lift::new(self.index_set, self.n, base)
    }
}

pub fn seeded_lift_family(index_set: IndexSet, n: usize, t: usize, seed: u64) -> Result<Lift> {
    SeededLiftFamily::new(index_set, n, t, seed)?.materialize()
}

/// A named way of turning (index set, size, seed) into a lift.
pub trait LiftSampler: Send + Sync {
    fn name(&self) -> &'static str;
    fn sample(&self, index_set: IndexSet, n: usize, seed: u64) -> Result<Lift>;
}

pub struct UniformSampler;

impl LiftSampler for UniformSampler {
    fn name(&self) -> &'static str {
        "uniform"
    }
    fn sample(&self, index_set: IndexSet, n: usize, seed: u64) -> Result<Lift> {
        random_lift(index_set, n, seed)
    }
}

pub struct PrpSampler {
    pub t: usize,
}

impl LiftSampler for PrpSampler {
    fn name(&self) -> &'static str {
        "prp"
    }
    fn sample(&self, index_set: IndexSet, n: usize, seed: u64) -> Result<Lift> {
        seeded_lift_family(index_set, n, self.t, seed)
    }
}

pub fn samplers() -> Vec<Box<dyn LiftSampler>> {
    vec![Box::new(UniformSampler), Box::new(PrpSampler { t: 2 })]
}

pub fn sampler(name: &str) -> Result<Box<dyn LiftSampler>> {
    samplers()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::Invalid(format!("unknown lift sampler '{name}'")))
}
