//! Degree-2 valued CSPs: instance graphs, the eigenvalue bound, the polynomial of an atom layout
//! and random regular instances drawn from signed lifts.

use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{ketbra, IndexSet, MatrixPolynomial};
use crate::dense::{self, C64};
use crate::error::{Error, Result};
use crate::lifting::{random_lift, Lift, Signing};

/// ψ(x) = constant + Σ_{a<b} w_ab x_a x_b on ±1 inputs; only the homogeneous part is used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintType {
    pub name: String,
    pub arity: usize,
    pub w: Vec<Vec<f64>>,
    #[serde(default)]
    pub constant: f64,
}

impl ConstraintType {
    /// Symmetrizes w (pairs listed once or twice are summed) and drops the diagonal.
    pub fn new(name: &str, arity: usize, w: Vec<Vec<f64>>, constant: f64) -> Result<Self> {
        if w.len() != arity || w.iter().any(|row| row.len() != arity) {
            return Err(Error::Dimension(format!("coefficient table must be {arity}x{arity}")));
        }
        let sym = (0..arity)
            .map(|a| (0..arity).map(|b| if a == b { 0.0 } else { 0.5 * (w[a][b] + w[b][a]) }).collect())
            .collect();
        Ok(ConstraintType { name: name.into(), arity, w: sym, constant })
    }

    /// ½ − ½x₁x₂, stored with w symmetric so that Σ_{a<b} w_ab = −½.
    pub fn max_cut() -> Self {
        ConstraintType { name: "maxcut".into(), arity: 2, w: vec![vec![0.0, -0.5], vec![-0.5, 0.0]], constant: 0.5 }
    }

    /// ¾ − ¼(x₁x₂ + x₁x₃ + x₂x₃).
    pub fn nae3() -> Self {
        let q = -0.25;
        ConstraintType {
            name: "nae3".into(),
            arity: 3,
            w: vec![vec![0.0, q, q], vec![q, 0.0, q], vec![q, q, 0.0]],
            constant: 0.75,
        }
    }

    pub fn eval(&self, vals: &[f64]) -> f64 {
        let mut s = 0.0;
        for a in 0..self.arity {
            for b in a + 1..self.arity {
                s += self.w[a][b] * vals[a] * vals[b];
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub atom: usize,
    pub scope: Vec<usize>,
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CspInstance {
    pub n: usize,
    pub atoms: Vec<ConstraintType>,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn validate(&self) -> Result<()> {
        for (k, c) in self.constraints.iter().enumerate() {
            let t = self
                .atoms
                .get(c.atom)
                .ok_or_else(|| Error::InvalidIndex { index: c.atom, max: self.atoms.len().saturating_sub(1) })?;
            if c.scope.len() != t.arity || c.signs.len() != t.arity {
                return Err(Error::Dimension(format!("constraint {k}: scope and signs must have length {}", t.arity)));
            }
            if let Some(&v) = c.scope.iter().find(|&&v| v >= self.n) {
                return Err(Error::InvalidIndex { index: v, max: self.n.saturating_sub(1) });
            }
            let mut s = c.scope.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != c.scope.len() {
                return Err(Error::Invalid(format!("constraint {k} repeats a variable")));
            }
            if c.signs.iter().any(|&x| x != 1 && x != -1) {
                return Err(Error::Invalid(format!("constraint {k} has a literal sign other than ±1")));
            }
        }
        Ok(())
    }

    /// Σ of the dropped additive constants.
    pub fn constant_offset(&self) -> f64 {
        self.constraints.iter().map(|c| self.atoms[c.atom].constant).sum()
    }

    /// Homogeneous objective Σ_C ψ_C(ℓ ∘ x|_S).
    pub fn objective(&self, x: &[i8]) -> f64 {
        self.constraints
            .iter()
            .map(|c| {
                let vals: Vec<f64> = c.scope.iter().zip(&c.signs).map(|(&v, &s)| f64::from(x[v] * s)).collect();
                self.atoms[c.atom].eval(&vals)
            })
            .sum()
    }
}

/// A with A_{S_a S_b} += ½ w_ab ℓ_a ℓ_b, so obj(x) = xᵀAx on {±1}ⁿ.
pub fn instance_graph(inst: &CspInstance) -> Result<Mat<f64>> {
    inst.validate()?;
    let mut a = Mat::<f64>::zeros(inst.n, inst.n);
    for c in &inst.constraints {
        let t = &inst.atoms[c.atom];
        for x in 0..t.arity {
            for y in 0..t.arity {
                if x != y && t.w[x][y] != 0.0 {
                    a[(c.scope[x], c.scope[y])] += 0.5 * t.w[x][y] * f64::from(c.signs[x] * c.signs[y]);
                }
            }
        }
    }
    Ok(a)
}

/// n·λmax(A), an upper bound on the homogeneous optimum.
pub fn eig_bound(inst: &CspInstance) -> Result<f64> {
    if inst.n == 0 {
        return Ok(0.0);
    }
    let a = instance_graph(inst)?;
    let ev = dense::real_symmetric_eigenvalues(&a)?;
    Ok(inst.n as f64 * ev.iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

/// Exhaustive maximum of the homogeneous objective; n ≤ 20.
pub fn brute_force_opt(inst: &CspInstance) -> Result<f64> {
    inst.validate()?;
    if inst.n > 20 {
        return Err(Error::Invalid(format!("brute force needs n ≤ 20, got {}", inst.n)));
    }
    let a = instance_graph(inst)?;
    let n = inst.n;
    let mut best = f64::NEG_INFINITY;
    for mask in 0u32..(1u32 << n) {
        let x: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += x[i] * a[(i, j)] * x[j];
            }
        }
        best = best.max(s);
    }
    Ok(best)
}

/// Colors of the layout polynomial: X_{v,j} is color j·r + v + 1.
fn layout_color(r: usize, v: usize, j: usize) -> usize {
    j * r + v + 1
}

/// For constraint j of the layout and each pair {u, v} of its scope:
/// ½w_{vu}ℓ_uℓ_v |v⟩⟨u| X_{v,j} X_{u,j}* plus the adjoint. Index set: e = r·c, d = 0.
pub fn csp_polynomial(layout: &CspInstance) -> Result<MatrixPolynomial> {
    layout.validate()?;
    let r = layout.n;
    let c = layout.constraints.len();
    let idx = IndexSet::new(0, r * c);
    let mut p = MatrixPolynomial::new(idx, r);
    for (j, con) in layout.constraints.iter().enumerate() {
        let t = &layout.atoms[con.atom];
        for a in 0..t.arity {
            for b in 0..t.arity {
                if a == b || t.w[b][a] == 0.0 {
                    continue;
                }
                let (u, v) = (con.scope[a], con.scope[b]);
                let wt = 0.5 * t.w[b][a] * f64::from(con.signs[a] * con.signs[b]);
                let word = [layout_color(r, v, j), idx.star(layout_color(r, u, j))];
                p.add_term(&word, dense::scale(&ketbra(r, v, u), C64::new(wt, 0.0)))?;
            }
        }
    }
    Ok(p)
}

/// Instance on n·r variables ((x, v) ↦ x·r + v) read off a random signed n-lift of the layout
/// polynomial: copy y of layout constraint j has variables (σ_{v,j}(y), v) and literal signs
/// χ_{v,j}(y)·ℓ_v. Its instance graph equals A_n(χL, csp_polynomial(layout)).
pub fn random_regular_instance(layout: &CspInstance, n: usize, seed: u64) -> Result<(CspInstance, Lift, Signing)> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let p = csp_polynomial(layout)?;
    let lift = random_lift(p.index_set, n, seed)?;
    let chi = Signing::random(&lift, seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ 1);
    let inst = instance_from_lift(layout, &lift, &chi)?;
    Ok((inst, lift, chi))
}

pub fn instance_from_lift(layout: &CspInstance, lift: &Lift, chi: &Signing) -> Result<CspInstance> {
    layout.validate()?;
    let r = layout.n;
    let signs = chi.arc_signs(lift);
    let mut constraints = vec![];
    for (j, con) in layout.constraints.iter().enumerate() {
        for y in 0..lift.n {
            let scope = con.scope.iter().map(|&v| lift.sigma(layout_color(r, v, j))[y] * r + v).collect();
            let sg = con
                .scope
                .iter()
                .zip(&con.signs)
                .map(|(&v, &l)| l * signs[layout_color(r, v, j)][y] as i8)
                .collect();
            constraints.push(Constraint { atom: con.atom, scope, signs: sg });
        }
    }
    Ok(CspInstance { n: lift.n * r, atoms: layout.atoms.clone(), constraints })
}

/// Uniformly random scopes and literal signs.
pub fn random_instance(atoms: Vec<ConstraintType>, n: usize, m: usize, seed: u64) -> Result<CspInstance> {
    if atoms.is_empty() {
        return Err(Error::Invalid("need at least one constraint type".into()));
    }
    if let Some(t) = atoms.iter().find(|t| t.arity > n) {
        return Err(Error::Invalid(format!("arity {} exceeds n = {n}", t.arity)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constraints = vec![];
    for _ in 0..m {
        let atom = rng.random_range(0..atoms.len());
        let scope = rand::seq::index::sample(&mut rng, n, atoms[atom].arity).into_vec();
        let signs = scope.iter().map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
        constraints.push(Constraint { atom, scope, signs });
    }
    let inst = CspInstance { n, atoms, constraints };
    inst.validate()?;
    Ok(inst)
}

/// c NAE-3Sat constraints on the same three variables: the instance graph of the lift is
/// −⅛ times the additive product of c triangles.
pub fn nae3_layout(c: usize) -> CspInstance {
    CspInstance {
        n: 3,
        atoms: vec![ConstraintType::nae3()],
        constraints: (0..c).map(|_| Constraint { atom: 0, scope: vec![0, 1, 2], signs: vec![1; 3] }).collect(),
    }
}

pub fn max_cut_layout() -> CspInstance {
    CspInstance {
        n: 2,
        atoms: vec![ConstraintType::max_cut()],
        constraints: vec![Constraint { atom: 0, scope: vec![0, 1], signs: vec![1, 1] }],
    }
}

/// 2XOR export for instances whose atoms are all binary: `p 2xor n m`, then one
/// `i j s` line per constraint with 1-based variables and s the product of literal signs.
pub fn to_2xor_dimacs(inst: &CspInstance) -> Result<String> {
    inst.validate()?;
    if inst.atoms.iter().any(|t| t.arity != 2) {
        return Err(Error::Unsupported("2XOR export needs binary constraints".into()));
    }
    let mut out = format!("p 2xor {} {}\n", inst.n, inst.constraints.len());
    for c in &inst.constraints {
        out.push_str(&format!("{} {} {}\n", c.scope[0] + 1, c.scope[1] + 1, c.signs[0] * c.signs[1]));
    }
    Ok(out)
}
