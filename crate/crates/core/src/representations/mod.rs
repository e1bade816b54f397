//! Representations of Coxeter groups as lists of generator matrices.

pub mod invariants;
pub mod symmetric;

pub use invariants::{invariants, InvariantBasis};

use crate::coxeter::{CoxeterGraph, Label};
use crate::error::{Error, Result};
use crate::exactfield::{elim, ExactMatrix, FieldSpec, Rat};
use symmetric::{all_perms, compose, perm_index, Perm};

/// Default bound on `m_st` for braid-relation checks.
pub const RELATION_CHECK_BOUND: u64 = 8;

/// The common field ℚ(2cos(π/M)) for a modulus, collapsing `M ≤ 3` to ℚ.
pub fn field_for_modulus(m: u64) -> FieldSpec {
    if m <= 3 {
        FieldSpec::rationals()
    } else {
        FieldSpec::real_cyclotomic(m)
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    graph: CoxeterGraph,
    field: FieldSpec,
    dim: usize,
    gens: Vec<ExactMatrix>,
    label: String,
    warnings: Vec<String>,
}

impl Representation {
    /// Assembles a representation, checking matrix shapes and fields.
    pub fn new(
        graph: CoxeterGraph,
        field: FieldSpec,
        dim: usize,
        gens: Vec<ExactMatrix>,
        label: impl Into<String>,
    ) -> Result<Representation> {
        if gens.len() != graph.n() {
            return Err(Error::InvalidRepresentation(format!(
                "{} generator matrices for a graph with {} vertices",
                gens.len(),
                graph.n()
            )));
        }
        for m in &gens {
            field.ensure_same(m.field())?;
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidRepresentation(format!(
                    "generator of shape {:?}, expected {dim}x{dim}",
                    m.shape()
                )));
            }
        }
        Ok(Representation { graph, field, dim, gens, label: label.into(), warnings: Vec::new() })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, s: usize) -> &ExactMatrix {
        &self.gens[s]
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.gens
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Representation {
        self.label = label.into();
        self
    }

    /// Checks `M_s² = I` and `(M_s M_t)^{m_st} = I` for finite `m_st ≤ bound`.
    pub fn check_relations(&self, bound: u64) -> Result<()> {
        let id = ExactMatrix::identity(&self.field, self.dim);
        for (s, m) in self.gens.iter().enumerate() {
            if m.mul(m)? != id {
                return Err(Error::InvalidRepresentation(format!("{}: generator s{} is not an involution", self.label, s + 1)));
            }
        }
        for s in 0..self.gens.len() {
            for t in s + 1..self.gens.len() {
                let Label::Finite(m) = self.graph.label(s, t) else { continue };
                if m > bound {
                    continue;
                }
                let st = self.gens[s].mul(&self.gens[t])?;
                if st.pow(m as u32)? != id {
                    return Err(Error::InvalidRepresentation(format!(
                        "{}: (s{} s{})^{m} is not the identity",
                        self.label,
                        s + 1,
                        t + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Re-expresses the matrices over a larger field.
    pub fn extend_field(&self, target: &FieldSpec) -> Result<Representation> {
        if !target.contains(&self.field) {
            return Err(Error::FieldMismatch { left: self.field.m(), right: target.m() });
        }
        let gens = self.gens.iter().map(|m| m.lift(target)).collect::<Result<Vec<_>>>()?;
        let mut r = Representation::new(self.graph.clone(), target.clone(), self.dim, gens, self.label.clone())?;
        r.warnings = self.warnings.clone();
        Ok(r)
    }
}

/// The geometric representation: `σ_s(α_t) = α_t + 2cos(π/m_st) α_s`, `σ_s(α_s) = -α_s`.
///
/// Infinite labels use the value 2 and add a warning.
pub fn reflection(g: &CoxeterGraph) -> Result<Representation> {
    let field = field_for_modulus(g.field_modulus());
    let n = g.n();
    let mut warnings = Vec::new();
    let mut gens = Vec::with_capacity(n);
    for s in 0..n {
        let mut m = ExactMatrix::identity(&field, n);
        m.set_rat(s, s, Rat::int(-1));
        for t in 0..n {
            if t == s {
                continue;
            }
            let c = match g.label(s, t) {
                Label::Finite(mst) => field.embed_cos(mst)?,
                Label::Infinite => {
                    let w = format!("label inf on s{}-s{} uses 2cos(pi/inf) = 2", s.min(t) + 1, s.max(t) + 1);
                    if !warnings.contains(&w) {
                        warnings.push(w);
                    }
                    field.from_i64(2)
                }
            };
            m.set(s, t, &c);
        }
        gens.push(m);
    }
    let mut r = Representation::new(g.clone(), field, n, gens, format!("V_{}", n))?;
    r.warnings = warnings;
    Ok(r)
}

/// `d` copies of the trivial representation (`d = 0` is the zero module).
pub fn trivial(g: &CoxeterGraph, d: usize) -> Representation {
    let q = FieldSpec::rationals();
    let gens = vec![ExactMatrix::identity(&q, d); g.n()];
    let label = if d == 0 { "0".to_string() } else if d == 1 { "triv".into() } else { format!("triv^{d}") };
    Representation::new(g.clone(), q, d, gens, label).expect("shapes are consistent")
}

pub fn zero(g: &CoxeterGraph) -> Representation {
    trivial(g, 0)
}

pub fn sign(g: &CoxeterGraph) -> Representation {
    let q = FieldSpec::rationals();
    let gens = vec![ExactMatrix::from_i64_rows(&q, &[vec![-1]]); g.n()];
    Representation::new(g.clone(), q, 1, gens, "sgn").expect("shapes are consistent")
}

fn require_type_a(g: &CoxeterGraph, what: &str) -> Result<usize> {
    if !g.is_standard_type_a() {
        return Err(Error::InvalidRepresentation(format!("{what} needs a type A graph, got {}", g.name())));
    }
    Ok(g.n() + 1)
}

/// ℚ[S_n] with `S_n` acting by left multiplication on the basis of
/// permutations in lexicographic order: `M_s e_g = e_{s g}`.
pub fn regular(g: &CoxeterGraph) -> Result<Representation> {
    let n = require_type_a(g, "the regular representation")?;
    let q = FieldSpec::rationals();
    let perms = all_perms(n);
    let gens = (0..g.n())
        .map(|k| {
            let s = symmetric::adjacent(n, k);
            let target: Vec<usize> = perms.iter().map(|p| perm_index(&compose(&s, p))).collect();
            ExactMatrix::permutation(&q, &target)
        })
        .collect();
    Representation::new(g.clone(), q, perms.len(), gens, format!("Q[S_{n}]"))
}

/// The permutation representation on ℚ^n.
pub fn natural(g: &CoxeterGraph) -> Result<Representation> {
    let n = require_type_a(g, "the natural representation")?;
    let q = FieldSpec::rationals();
    let gens = (0..g.n()).map(|k| ExactMatrix::permutation(&q, &symmetric::adjacent(n, k))).collect();
    Representation::new(g.clone(), q, n, gens, format!("Q^{n}"))
}

/// `(ℚ^m)^{⊗N}` for `A_{N-1}`, generator `s_k` exchanging tensor factors
/// `k` and `k+1`. Basis index of `e_{i_1} ⊗ … ⊗ e_{i_N}` is the base-`m`
/// number with digit `i_1` most significant.
pub fn tensor_power(g: &CoxeterGraph, m: usize) -> Result<Representation> {
    let big_n = require_type_a(g, "a tensor power")?;
    let q = FieldSpec::rationals();
    let dim = m.pow(big_n as u32);
    let gens = (0..g.n())
        .map(|k| {
            let target: Vec<usize> = (0..dim).map(|idx| swap_digits(idx, m, big_n, k)).collect();
            ExactMatrix::permutation(&q, &target)
        })
        .collect();
    Representation::new(g.clone(), q, dim, gens, format!("(Q^{m})^(x{big_n})"))
}

/// Digits of `idx` in base `m` (most significant first, `len` digits).
pub fn digits(mut idx: usize, m: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = idx % m;
        idx /= m;
    }
    d
}

pub fn from_digits(d: &[usize], m: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * m + x)
}

fn swap_digits(idx: usize, m: usize, len: usize, k: usize) -> usize {
    let mut d = digits(idx, m, len);
    d.swap(k, k + 1);
    from_digits(&d, m)
}

/// Row and column groups of the row-filled tableau of shape `lambda`.
fn tableau_groups(lambda: &[usize]) -> (Vec<Perm>, Vec<Perm>) {
    let n: usize = lambda.iter().sum();
    let mut row_of = vec![0; n];
    let mut col_of = vec![0; n];
    let mut k = 0;
    for (i, &len) in lambda.iter().enumerate() {
        for j in 0..len {
            row_of[k] = i;
            col_of[k] = j;
            k += 1;
        }
    }
    let perms = all_perms(n);
    let rows = perms.iter().filter(|p| (0..n).all(|x| row_of[p[x]] == row_of[x])).cloned().collect();
    let cols = perms.iter().filter(|p| (0..n).all(|x| col_of[p[x]] == col_of[x])).cloned().collect();
    (rows, cols)
}

/// The Specht module of `lambda`: the left ideal `ℚ[S_n]·c_λ` where
/// `c_λ = (Σ_{p ∈ Row} p)(Σ_{q ∈ Col} sgn(q) q)`, with the left action.
pub fn specht(g: &CoxeterGraph, lambda: &[usize]) -> Result<Representation> {
    let n = require_type_a(g, "a Specht module")?;
    if lambda.iter().sum::<usize>() != n || lambda.windows(2).any(|w| w[0] < w[1]) || lambda.contains(&0) {
        return Err(Error::InvalidRepresentation(format!("{lambda:?} is not a partition of {n}")));
    }
    if n > 6 {
        return Err(Error::Unsupported(format!("Specht modules are limited to n <= 6, got {n}")));
    }
    let q = FieldSpec::rationals();
    let (rows, cols) = tableau_groups(lambda);
    let mut c: Vec<(Perm, i64)> = Vec::new();
    for p in &rows {
        for qq in &cols {
            c.push((compose(p, qq), symmetric::sign(qq)));
        }
    }
    let perms = all_perms(n);
    let size = perms.len();
    // Column g is g * c_λ.
    let mut right = ExactMatrix::zeros(&q, size, size);
    for (gi, gp) in perms.iter().enumerate() {
        let mut col = vec![0i64; size];
        for (h, sgn) in &c {
            col[perm_index(&compose(gp, h))] += sgn;
        }
        for (r, v) in col.into_iter().enumerate() {
            if v != 0 {
                right.set_rat(r, gi, Rat::int(v));
            }
        }
    }
    let basis = elim::image(&right);
    let reg = regular(g)?;
    let gens = reg
        .generators()
        .iter()
        .map(|m| elim::solve_exact(&basis, &m.mul(&basis)?, "Specht module is not a left ideal"))
        .collect::<Result<Vec<_>>>()?;
    let label = format!("S^({})", lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    Representation::new(g.clone(), q, basis.cols(), gens, label)
}

fn common_field(a: &FieldSpec, b: &FieldSpec) -> FieldSpec {
    use num_integer::Integer;
    if a.is_rational() {
        b.clone()
    } else if b.is_rational() || a.same_field(b) {
        a.clone()
    } else {
        field_for_modulus(a.m().lcm(&b.m()))
    }
}

/// `r1 ⊠ r2` on the disjoint union of the graphs.
pub fn external_tensor(r1: &Representation, r2: &Representation) -> Result<Representation> {
    let field = common_field(&r1.field, &r2.field);
    let a = r1.extend_field(&field)?;
    let b = r2.extend_field(&field)?;
    let i1 = ExactMatrix::identity(&field, a.dim);
    let i2 = ExactMatrix::identity(&field, b.dim);
    let mut gens = Vec::with_capacity(a.gens.len() + b.gens.len());
    for m in &a.gens {
        gens.push(m.kron(&i2)?);
    }
    for m in &b.gens {
        gens.push(i1.kron(m)?);
    }
    let label = format!("{} (x) {}", a.label, b.label);
    let mut r = Representation::new(a.graph.product(&b.graph), field, a.dim * b.dim, gens, label)?;
    r.warnings = a.warnings.iter().chain(&b.warnings).cloned().collect();
    Ok(r)
}

/// Restriction to the parabolic subgroup generated by `vertices`.
pub fn restrict(rep: &Representation, vertices: &[usize]) -> Result<Representation> {
    if vertices.iter().any(|&v| v >= rep.graph.n()) {
        return Err(Error::InvalidRepresentation(format!("restriction to {vertices:?} leaves the graph")));
    }
    let sub = rep.graph.induced(vertices);
    let gens = vertices.iter().map(|&v| rep.gens[v].clone()).collect();
    Representation::new(sub, rep.field.clone(), rep.dim, gens, format!("{}|", rep.label))
}

/// Tensor with the sign character.
pub fn sign_twist(rep: &Representation) -> Representation {
    let gens = rep.gens.iter().map(ExactMatrix::neg).collect();
    let mut r = Representation::new(rep.graph.clone(), rep.field.clone(), rep.dim, gens, format!("{} (x) sgn", rep.label))
        .expect("shapes are unchanged");
    r.warnings = rep.warnings.clone();
    r
}

pub fn direct_sum(r1: &Representation, r2: &Representation) -> Result<Representation> {
    if r1.graph.n() != r2.graph.n() || r1.graph.edges() != r2.graph.edges() {
        return Err(Error::InvalidRepresentation(format!(
            "direct sum over different graphs {} and {}",
            r1.graph.name(),
            r2.graph.name()
        )));
    }
    let field = common_field(&r1.field, &r2.field);
    let a = r1.extend_field(&field)?;
    let b = r2.extend_field(&field)?;
    let gens = a.gens.iter().zip(&b.gens).map(|(x, y)| ExactMatrix::block_diag(&field, &[x, y])).collect();
    let mut r = Representation::new(a.graph.clone(), field, a.dim + b.dim, gens, format!("{} + {}", a.label, b.label))?;
    r.warnings = a.warnings.iter().chain(&b.warnings).cloned().collect();
    Ok(r)
}
