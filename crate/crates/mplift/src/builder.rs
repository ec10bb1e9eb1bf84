//! ε-nets of bouquets, lift certificates, the certify-and-double construction and the
//! expected signed trace.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{IndexSet, MatrixBouquet, MatrixPolynomial};
use crate::dense::{self, CMat, C64, ZERO};
use crate::error::{Error, Result};
use crate::graphview::{acyclic_ball_vertex, bicycle_free_radius, lift_graph};
use crate::lifting::{
    seeded_lift_family, signing_to_2lift, small_bias_bits, small_bias_seed_space, Lift, SeedConfig, Signing,
};
use crate::limitspec::{estimate_spectrum_general, infinite_spectrum_scan, rho_b_infinity};
use crate::spectra::{
    adjacency_operator, hausdorff_distance, nonbacktracking_operator, norm_power_certificate, PowerNormCheck,
    SpectrumSet,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetParams {
    /// Bound R on ‖a_i‖_F.
    pub r_bound: f64,
    pub eps: f64,
    pub lambda_power: u32,
    pub grid_delta: f64,
    /// Refuse nets larger than this.
    pub cap: usize,
}

impl NetParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_bound > 0.0) {
            return Err(Error::Invalid("R must be positive".into()));
        }
        if !(self.eps > 0.0) {
            return Err(Error::Invalid("eps must be positive".into()));
        }
        if !(self.grid_delta > 0.0 && self.grid_delta < 1.0 / (2.0 * self.r_bound)) {
            return Err(Error::Invalid(format!("grid spacing must lie in (0, 1/(2R)) = (0, {})", 0.5 / self.r_bound)));
        }
        if self.lambda_power == 0 {
            return Err(Error::Invalid("certificate power must be at least 1".into()));
        }
        Ok(())
    }
}

/// Grid points k·h, |k·h| ≤ limit.
fn axis(h: f64, limit: f64) -> Vec<f64> {
    let k = (limit / h + 1e-9).floor() as i64;
    (-k..=k).map(|i| i as f64 * h).collect()
}

/// Coefficient grid for one color: Hermitian for matchings, general otherwise. The spacing
/// shrinks with the number of real coordinates so that rounding stays within δ in Frobenius norm.
fn color_grid(r: usize, hermitian: bool, p: &NetParams, cap: usize) -> Result<Vec<CMat>> {
    let coords = if hermitian { r * r } else { 2 * r * r };
    let h = p.grid_delta * (2.0 / (coords as f64).sqrt()).min(1.0);
    let cover = 0.5 * h * (coords as f64).sqrt();
    let limit = p.r_bound + cover;
    let ax = axis(h, limit);
    // real coordinates: (row, col, is_imag)
    let mut slots = vec![];
    for i in 0..r {
        for j in 0..r {
            if hermitian && j < i {
                continue;
            }
            slots.push((i, j, false));
            if !(hermitian && i == j) {
                slots.push((i, j, true));
            }
        }
    }
    let mut out = vec![];
    let mut cur = vec![0usize; slots.len()];
    loop {
        let mut m = dense::zeros(r, r);
        for (s, &(i, j, im)) in slots.iter().enumerate() {
            let v = ax[cur[s]];
            let z = if im { C64::new(0.0, v) } else { C64::new(v, 0.0) };
            m[(i, j)] += z;
            if hermitian && i != j {
                m[(j, i)] += z.conj();
            }
        }
        if dense::frob(&m) <= limit + 1e-12 {
            out.push(m);
            if out.len() > cap {
                return Err(Error::Invalid(format!("net exceeds {cap} elements per color; use a coarser grid")));
            }
        }
        let mut s = 0;
        while s < slots.len() {
            cur[s] += 1;
            if cur[s] < ax.len() {
                break;
            }
            cur[s] = 0;
            s += 1;
        }
        if s == slots.len() {
            return Ok(out);
        }
    }
}

/// Every combination of per-color grid points, in dimension r.
pub fn epsilon_net(index_set: IndexSet, r: usize, params: &NetParams) -> Result<Vec<MatrixBouquet>> {
    params.validate()?;
    let grids: Vec<Vec<CMat>> = index_set
        .base_colors()
        .map(|i| color_grid(r, index_set.is_matching(i), params, params.cap))
        .collect::<Result<_>>()?;
    let total = grids.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.len()));
    match total {
        Some(t) if t <= params.cap => {}
        _ => return Err(Error::Invalid(format!("net would exceed {} bouquets; use a coarser grid", params.cap))),
    }
    let mut out = vec![];
    let mut cur = vec![0usize; grids.len()];
    loop {
        let base = cur.iter().zip(&grids).map(|(&k, g)| g[k].clone()).collect();
        out.push(MatrixBouquet::from_base(index_set, Some(dense::zeros(r, r)), base)?);
        let mut s = 0;
        while s < grids.len() {
            cur[s] += 1;
            if cur[s] < grids[s].len() {
                break;
            }
            cur[s] = 0;
            s += 1;
        }
        if s == grids.len() {
            return Ok(out);
        }
    }
}

/// Nets in every dimension 1..=r_max, concatenated.
pub fn epsilon_net_all(index_set: IndexSet, r_max: usize, params: &NetParams) -> Result<Vec<MatrixBouquet>> {
    let mut out = vec![];
    for r in 1..=r_max {
        out.extend(epsilon_net(index_set, r, params)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BouquetCheck {
    pub id: usize,
    pub rho_inf: f64,
    /// Allowed value of ‖M^power‖: (ρ(B∞) + ε/3)^power.
    pub bound: f64,
    pub check: PowerNormCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub n: usize,
    pub bicycle_free_radius: usize,
    pub lambda: usize,
    /// (vertex, radius) of an acyclic ball.
    pub acyclic_ball_vertex: Option<(usize, usize)>,
    pub checks: Vec<BouquetCheck>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub n_target: usize,
    pub n0: usize,
    pub ell: usize,
    pub lambda: usize,
    pub eps: f64,
    pub r_bound: f64,
    pub r_max: usize,
    pub power: u32,
    pub grid_delta: f64,
    pub seed_budget: usize,
    /// Signings tried per doubling stage before restarting from the next base seed.
    pub signing_budget: usize,
    pub t: usize,
    pub bias_delta: f64,
    pub net_cap: usize,
}

impl PipelineConfig {
    /// Desk-scale defaults: n₀ = 2^⌈√log₂N⌉, λ = max(1, ⌈log₂n₀⌉/2), ℓ = ⌈2 ln N⌉, power 4ℓ.
    pub fn defaults(n_target: usize, eps: f64) -> Self {
        let lg = (n_target.max(2) as f64).log2();
        let n0 = 1usize << (lg.sqrt().ceil() as u32).max(1);
        let lambda = ((n0 as f64).log2().ceil() as usize / 2).max(1);
        let ell = ((2.0 * (n_target.max(2) as f64).ln()).ceil() as usize).max(lambda);
        PipelineConfig {
            n_target,
            n0,
            ell,
            lambda,
            eps,
            r_bound: 1.0,
            r_max: 1,
            power: 4 * ell as u32,
            grid_delta: 0.45,
            seed_budget: 2000,
            signing_budget: 300,
            t: 4,
            bias_delta: 0.01,
            net_cap: 20000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda < 1 || self.ell < self.lambda {
            return Err(Error::Invalid("need lambda ≥ 1 and ell ≥ lambda".into()));
        }
        if self.n0 == 0 || self.n_target < self.n0 {
            return Err(Error::Invalid("need 1 ≤ n0 ≤ N".into()));
        }
        if self.r_max == 0 {
            return Err(Error::Invalid("r_max must be at least 1".into()));
        }
        if !(self.bias_delta > 0.0 && self.bias_delta < 1.0) {
            return Err(Error::Invalid("bias delta must lie in (0, 1)".into()));
        }
        self.net_params().validate()
    }

    pub fn net_params(&self) -> NetParams {
        NetParams {
            r_bound: self.r_bound,
            eps: self.eps,
            lambda_power: self.power,
            grid_delta: self.grid_delta,
            cap: self.net_cap,
        }
    }
}

/// ρ(B∞) per net element, computed once per run.
pub struct CertifiedNet {
    pub bouquets: Vec<MatrixBouquet>,
    pub rho_inf: Vec<f64>,
}

impl CertifiedNet {
    pub fn new(bouquets: Vec<MatrixBouquet>) -> Result<Self> {
        let rho_inf = bouquets.iter().map(rho_b_infinity).collect::<Result<_>>()?;
        Ok(CertifiedNet { bouquets, rho_inf })
    }

    fn bound(&self, id: usize, eps: f64, power: u32) -> f64 {
        (self.rho_inf[id] + eps / 3.0).powi(power as i32)
    }
}

/// ‖M^power‖ for M = B_{n,⊥}(K) or B_n(χL, K).
fn check_one(m: &crate::spectra::DenseMatrix, net: &CertifiedNet, id: usize, eps: f64, power: u32) -> Result<BouquetCheck> {
    let bound = net.bound(id, eps, power);
    let check = norm_power_certificate(m, power, bound)?;
    Ok(BouquetCheck { id, rho_inf: net.rho_inf[id], bound, check })
}

fn structural(lift: &Lift, lambda: usize) -> (usize, Option<(usize, usize)>) {
    let g = lift_graph(lift);
    let bf = bicycle_free_radius(&g, lambda);
    let ball = acyclic_ball_vertex(&g, lambda).map(|v| (v, lambda));
    (bf, ball)
}

/// Acyclic ball and bicycle-free radius at λ, then ‖B_{n,⊥}(K)^power‖ ≤ (ρ(B∞(K)) + ε/3)^power
/// for every net bouquet. Stops at the first failing bouquet unless `exhaustive`.
pub fn certify_base_lift_with(lift: &Lift, net: &CertifiedNet, config: &PipelineConfig, exhaustive: bool) -> Result<LiftCertificate> {
    let (bf, ball) = structural(lift, config.lambda);
    let mut pass = bf >= config.lambda && ball.is_some();
    let mut checks = vec![];
    if pass || exhaustive {
        for (id, k) in net.bouquets.iter().enumerate() {
            let m = nonbacktracking_operator(lift, k, None)?.nontrivial()?;
            let c = check_one(&m, net, id, config.eps, config.power)?;
            pass &= c.check.pass;
            let failed = !c.check.pass;
            checks.push(c);
            if failed && !exhaustive {
                break;
            }
        }
    }
    Ok(LiftCertificate { n: lift.n, bicycle_free_radius: bf, lambda: config.lambda, acyclic_ball_vertex: ball, checks, pass })
}

pub fn certify_base_lift(lift: &Lift, net: &[MatrixBouquet], config: &PipelineConfig) -> Result<LiftCertificate> {
    certify_base_lift_with(lift, &CertifiedNet::new(net.to_vec())?, config, true)
}

/// ‖B_n(χL, K)^power‖ ≤ (ρ(B∞(K)) + ε/3)^power for every K in the net; the checks are returned.
pub fn certify_signing_checks(
    lift: &Lift,
    chi: &Signing,
    net: &CertifiedNet,
    eps: f64,
    power: u32,
    exhaustive: bool,
) -> Result<(bool, Vec<BouquetCheck>)> {
    let mut pass = true;
    let mut checks = vec![];
    for (id, k) in net.bouquets.iter().enumerate() {
        let m = nonbacktracking_operator(lift, k, Some(chi))?.to_dense();
        let c = check_one(&m, net, id, eps, power)?;
        pass &= c.check.pass;
        let failed = !c.check.pass;
        checks.push(c);
        if failed && !exhaustive {
            break;
        }
    }
    Ok((pass, checks))
}

pub fn certify_signing(lift: &Lift, chi: &Signing, net: &[MatrixBouquet], eps: f64, power: u32) -> Result<bool> {
    Ok(certify_signing_checks(lift, chi, &CertifiedNet::new(net.to_vec())?, eps, power, false)?.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: usize,
    /// Size of the lift produced by this stage.
    pub n: usize,
    pub seed: u128,
    pub tried: usize,
    /// Per-bouquet norms of the accepted lift (stage 0) or signed operator (doubling stages).
    pub checks: Vec<BouquetCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub config: PipelineConfig,
    pub index_set: IndexSet,
    pub net_size: usize,
    /// Certified base seeds abandoned because a doubling stage ran out of signings.
    pub restarts: Vec<u128>,
    pub stages: Vec<StageRecord>,
    pub lift: Lift,
    /// Direct certificate of the final lift.
    pub certificate: LiftCertificate,
}

/// Pseudo-random but fixed enumeration order of small-bias seeds for a stage.
fn stage_seed(stage: usize, attempt: usize, space: u128) -> u128 {
    let mut z = (stage as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (attempt as u64).wrapping_add(0x632b_e59b_d9b4_e019);
    let mut hi = 0u128;
    for _ in 0..2 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut x = z;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^= x >> 31;
        hi = (hi << 64) | x as u128;
    }
    hi % space
}

/// Doubling stages from a certified base; None when some stage exhausts its signing budget.
fn double_up(mut lift: Lift, net: &CertifiedNet, config: &PipelineConfig, stages: &mut Vec<StageRecord>) -> Result<Option<Lift>> {
    let mut stage = 1;
    while lift.n < config.n_target {
        let count = Signing::all_plus(&lift).flat().len();
        let space = small_bias_seed_space(count, config.bias_delta);
        let mut accepted = None;
        for attempt in 0..config.signing_budget {
            let seed = stage_seed(stage, attempt, space);
            let bits = small_bias_bits(count, &SeedConfig::from_index(seed, config.t, config.bias_delta));
            let chi = Signing::from_flat(&lift, &bits)?;
            let (ok, checks) = certify_signing_checks(&lift, &chi, net, config.eps, config.power, false)?;
            if ok {
                accepted = Some((chi, seed, attempt + 1, checks));
                break;
            }
        }
        let Some((chi, seed, tried, checks)) = accepted else {
            return Ok(None);
        };
        lift = signing_to_2lift(&lift, &chi)?;
        stages.push(StageRecord { stage, n: lift.n, seed, tried, checks });
        stage += 1;
    }
    Ok(Some(lift))
}

/// Stage 0 searches the seeded lift family on n₀ vertices for a certified lift; each doubling
/// stage searches small-bias signings whose signed operator passes, and takes the 2-lift.
pub fn construct(index_set: IndexSet, config: &PipelineConfig) -> Result<Construction> {
    config.validate()?;
    if index_set.d > 0 && config.n0 % 2 == 1 {
        return Err(Error::Parity(config.n0));
    }
    let net = CertifiedNet::new(epsilon_net_all(index_set, config.r_max, &config.net_params())?)?;
    let mut restarts = vec![];
    let mut done = None;
    for attempt in 0..config.seed_budget {
        let base = seeded_lift_family(index_set, config.n0, config.t, attempt as u64)?;
        let cert = certify_base_lift_with(&base, &net, config, false)?;
        if !cert.pass {
            continue;
        }
        let mut stages = vec![StageRecord { stage: 0, n: base.n, seed: attempt as u128, tried: attempt + 1, checks: cert.checks }];
        match double_up(base, &net, config, &mut stages)? {
            Some(lift) => {
                done = Some((lift, stages));
                break;
            }
            None => restarts.push(attempt as u128),
        }
    }
    let (lift, stages) = done.ok_or_else(|| {
        Error::ConstructionFailed(format!(
            "no certified chain to {} vertices from {} base seeds ({} certified bases ran out of signings)",
            config.n_target,
            config.seed_budget,
            restarts.len()
        ))
    })?;
    let certificate = certify_base_lift_with(&lift, &net, config, true)?;
    if !certificate.pass {
        return Err(Error::ConstructionFailed("final lift failed its direct certificate".into()));
    }
    Ok(Construction { config: config.clone(), index_set, net_size: net.bouquets.len(), restarts, stages, lift, certificate })
}

pub fn explicit_good_lift(index_set: IndexSet, config: &PipelineConfig) -> Result<(Lift, LiftCertificate)> {
    let c = construct(index_set, config)?;
    Ok((c.lift, c.certificate))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialReport {
    pub name: String,
    /// Hausdorff distance between spec(A_{n,⊥}) and the estimate of σ(A∞).
    pub distance: f64,
    pub method: String,
    pub within_eps: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialLiftReport {
    pub construction: Construction,
    pub polynomials: Vec<PolynomialReport>,
}

/// Nontrivial spectrum of A_n(L, p): trivial eigenvalues (those of p(1,…,1)) removed.
pub fn nontrivial_spectrum(lift: &Lift, p: &MatrixPolynomial) -> Result<Vec<f64>> {
    adjacency_operator(lift, p, None)?.nontrivial()?.hermitian_eigenvalues()
}

/// σ(A∞) by the resolvent scan for bouquets, by large signed lifts otherwise.
pub fn infinite_spectrum_estimate(p: &MatrixPolynomial) -> Result<(SpectrumSet, &'static str)> {
    if p.is_linear() {
        let k = p.to_bouquet()?;
        let b: f64 = k.coeffs.iter().map(dense::frob).sum::<f64>() + 0.05;
        return Ok((infinite_spectrum_scan(&k, -b, b, 0.05)?.spectrum(), "resolvent"));
    }
    Ok((estimate_spectrum_general(p, 1000, &[0, 1])?.spectrum, "lift"))
}

/// Runs the construction with the dimension bound r and reports, for each test polynomial, how far
/// the nontrivial spectrum of its lift is from σ(A∞).
pub fn explicit_polynomial_lift(
    index_set: IndexSet,
    r: usize,
    config: &PipelineConfig,
    tests: &[(String, MatrixPolynomial)],
) -> Result<PolynomialLiftReport> {
    let mut cfg = config.clone();
    cfg.r_max = cfg.r_max.max(r);
    let construction = construct(index_set, &cfg)?;
    let mut polynomials = vec![];
    for (name, p) in tests {
        let spec = SpectrumSet::from_values(nontrivial_spectrum(&construction.lift, p)?);
        let (inf, method) = infinite_spectrum_estimate(p)?;
        let distance = hausdorff_distance(&spec, &inf)?;
        polynomials.push(PolynomialReport { name: name.clone(), distance, method: method.into(), within_eps: distance <= cfg.eps });
    }
    Ok(PolynomialLiftReport { construction, polynomials })
}

/// Undirected edge of the lift graph traversed by the arc (u, i).
fn edge_id(lift: &Lift, u: usize, i: usize) -> (usize, usize) {
    let idx = lift.index_set;
    let v = lift.sigma(i)[u];
    if idx.is_matching(i) {
        (u.min(v), i)
    } else if i <= idx.d + idx.e {
        (u, i)
    } else {
        (v, idx.star(i))
    }
}

pub const TRACE_GUARD: f64 = 1e7;

/// E_χ tr(B^ℓ (B^ℓ)†) over uniform signings. (B^ℓ)† pairs walks with the same endpoints, and a
/// pair survives the average iff every edge is crossed an even number of times in total;
/// nonbacktracking walks are enumerated depth-first.
pub fn expected_signed_trace(lift: &Lift, k: &MatrixBouquet, ell: usize) -> Result<f64> {
    if lift.index_set != k.index_set {
        return Err(Error::Dimension("lift and bouquet use different index sets".into()));
    }
    let idx = lift.index_set;
    let dd = idx.colors();
    let work = lift.n as f64 * (dd as f64).powi(2 * ell as i32);
    if work > TRACE_GUARD {
        return Err(Error::Invalid(format!("hike enumeration too large ({work:.0} > {TRACE_GUARD:.0})")));
    }
    if dd == 0 {
        return Ok(0.0);
    }
    struct Walk {
        end: (usize, usize),
        edges: Vec<(usize, usize)>,
        m: CMat,
    }
    fn dfs(lift: &Lift, k: &MatrixBouquet, state: (usize, usize), left: usize, edges: &mut Vec<(usize, usize)>, m: &CMat, out: &mut Vec<Walk>) {
        if left == 0 {
            out.push(Walk { end: state, edges: edges.clone(), m: m.clone() });
            return;
        }
        let (u, i) = state;
        let idx = lift.index_set;
        let v = lift.sigma(i)[u];
        edges.push(edge_id(lift, u, i));
        for j in 1..=idx.colors() {
            if j == idx.star(i) {
                continue;
            }
            let next = k.a(j) * m;
            dfs(lift, k, (v, j), left - 1, edges, &next, out);
        }
        edges.pop();
    }
    let r = k.r;
    let mut total = 0.0;
    for u in 0..lift.n {
        for i in 1..=dd {
            let mut walks = vec![];
            dfs(lift, k, (u, i), ell, &mut vec![], &dense::identity(r), &mut walks);
            let mut by_end: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
            for (w, walk) in walks.iter().enumerate() {
                by_end.entry(walk.end).or_default().push(w);
            }
            for group in by_end.values() {
                for &a in group {
                    for &b in group {
                        let mut parity: HashMap<(usize, usize), bool> = HashMap::new();
                        for e in walks[a].edges.iter().chain(&walks[b].edges) {
                            *parity.entry(*e).or_insert(false) ^= true;
                        }
                        if parity.values().any(|&odd| odd) {
                            continue;
                        }
                        let (ma, mb) = (&walks[a].m, &walks[b].m);
                        let mut s = ZERO;
                        for x in 0..r {
                            for y in 0..r {
                                s += ma[(x, y)] * mb[(x, y)].conj();
                            }
                        }
                        total += s.re;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Σ over nonbacktracking color sequences γ of length t of ‖a_{γ_t}⋯a_{γ_1}‖_F².
pub fn nonbacktracking_mass(k: &MatrixBouquet, t: usize) -> f64 {
    let idx = k.index_set;
    let dd = idx.colors();
    if t == 0 || dd == 0 {
        return 0.0;
    }
    let mut z: Vec<CMat> = (1..=dd).map(|j| k.a(j) * dense::adjoint(k.a(j))).collect();
    for _ in 1..t {
        z = (1..=dd)
            .map(|kk| {
                let mut acc = dense::zeros(k.r, k.r);
                for j in 1..=dd {
                    if j != idx.star(kk) {
                        acc = &acc + &z[j - 1];
                    }
                }
                &(k.a(kk) * &acc) * dense::adjoint(k.a(kk))
            })
            .collect();
    }
    z.iter().map(|m| (0..k.r).map(|i| m[(i, i)].re).sum::<f64>()).sum()
}
