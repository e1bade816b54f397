//! The complex `⋯ → 𝔪^{⊗3} → 𝔪^{⊗2} → 𝔪 → 0` computing `Tor^{R}(ℂ, ℂ)` for
//! `R = ℚ[x_1, …, x_m]/𝔪³`, its splitting `𝔪 ≅ V ⊕ Sym²V`, and the map
//! from the Coxeter complexes `X•_C(A_{N-1}, V^{⊗N})`.

use serde_json::json;

use crate::cochain::{build_coxeter_complex, CoxeterComplex, GradedComplex, Orientation};
use crate::coxeter::{CoxeterGraph, IndependentSet};
use crate::error::{Error, Result};
use crate::exactfield::{elim, ExactMatrix, FieldSpec, RankMode, Rat};
use crate::par;
use crate::report::Check;
use crate::representations::{digits, from_digits, tensor_power};

pub const BUDGET_ENV: &str = "COXCOH_BUDGET_MB";
pub const DEFAULT_BUDGET_MB: u64 = 2048;

/// Memory budget in MiB, from the environment or the default.
pub fn budget_mb() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET_MB)
}

/// Monomial basis of `𝔪 / 𝔪³`: `x_1, …, x_m`, then `x_a x_b` (`a ≤ b`) lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MBasis {
    pub m: usize,
    /// Each monomial as its sorted variable list (0-based).
    pub monomials: Vec<Vec<usize>>,
}

impl MBasis {
    pub fn new(m: usize) -> MBasis {
        let mut monomials: Vec<Vec<usize>> = (0..m).map(|a| vec![a]).collect();
        for a in 0..m {
            for b in a..m {
                monomials.push(vec![a, b]);
            }
        }
        MBasis { m, monomials }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn linear(&self, a: usize) -> usize {
        a
    }

    pub fn quadratic(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.m + a * self.m - a * a.saturating_sub(1) / 2 + (b - a)
    }

    /// Product in `R`; `None` when it lands in `𝔪³ = 0`.
    pub fn mul(&self, u: usize, v: usize) -> Option<usize> {
        match (&self.monomials[u][..], &self.monomials[v][..]) {
            ([a], [b]) => Some(self.quadratic(*a, *b)),
            _ => None,
        }
    }
}

/// A summand of `𝔪^{⊗i} ≅ ⊕_Σ (V^{⊗(i+j)})^{⟨T_Σ⟩}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaBlock {
    pub i: usize,
    pub j: usize,
    /// Tensor factors (1-based) carrying `Sym²V`.
    pub sigma: Vec<usize>,
    /// `T_Σ` as 0-based generator indices of `A_{i+j-1}`.
    pub t_sigma: IndependentSet,
}

/// `T_Σ = { s_k : k = h + |{1, …, h-1} ∩ Σ|, h ∈ Σ }` with 1-based `k`,
/// returned 0-based.
pub fn t_sigma(sigma: &[usize]) -> IndependentSet {
    sigma.iter().map(|&h| h + sigma.iter().filter(|&&x| x < h).count() - 1).collect()
}

/// Inverse of [`t_sigma`]: the factors carrying `Sym²V`, given `T` in `A_{N-1}`.
pub fn sigma_of(t: &[usize]) -> Vec<usize> {
    t.iter().enumerate().map(|(a, &k)| k + 1 - a).collect()
}

/// All `2^i` blocks of degree `i`, with `Σ` in order of size then lexicographic.
pub fn msum_blocks(i: usize) -> Vec<SigmaBlock> {
    let mut out = Vec::new();
    for j in 0..=i {
        let mut subsets: Vec<Vec<usize>> = (0u32..1 << i)
            .filter(|mask| mask.count_ones() as usize == j)
            .map(|mask| (1..=i).filter(|h| mask & (1 << (h - 1)) != 0).collect())
            .collect();
        subsets.sort();
        for sigma in subsets {
            let t = t_sigma(&sigma);
            out.push(SigmaBlock { i, j, sigma, t_sigma: t });
        }
    }
    out
}

/// `Σ_blocks m^{i-j} (m(m+1)/2)^j == (m + m(m+1)/2)^i`.
pub fn msum_dimension_identity(m: usize, i: usize) -> bool {
    let q = m * (m + 1) / 2;
    let lhs: usize = msum_blocks(i).iter().map(|b| m.pow((i - b.j) as u32) * q.pow(b.j as u32)).sum();
    lhs == (m + q).pow(i as u32)
}

fn check_args(m: usize, i_max: usize) -> Result<()> {
    if !(1..=3).contains(&m) || !(1..=6).contains(&i_max) {
        return Err(Error::Unsupported(format!("need 1 <= m <= 3 and 1 <= i_max <= 6, got m={m}, i_max={i_max}")));
    }
    Ok(())
}

/// Rough peak footprint of [`compare_tor`] in bytes.
pub fn estimated_bytes(m: usize, i_max: usize) -> u64 {
    let q = FieldSpec::rationals();
    let d = MBasis::new(m).dim();
    let tor = ExactMatrix::estimated_bytes(&q, d.pow(i_max as u32), d.pow(i_max as u32 + 1));
    let v = m.pow(2 * i_max as u32);
    let cox = ExactMatrix::estimated_bytes(&q, v, v) * (2 * i_max as u64);
    tor.max(cox)
}

fn ensure_budget(m: usize, i_max: usize) -> Result<()> {
    let needed_mb = estimated_bytes(m, i_max).div_ceil(1 << 20);
    let budget_mb = budget_mb();
    if needed_mb > budget_mb {
        return Err(Error::BudgetExceeded { needed_mb, budget_mb });
    }
    Ok(())
}

/// `∂_i = Σ_{a=1}^{i-1} (-1)^a d_a : 𝔪^{⊗i} → 𝔪^{⊗(i-1)}`.
pub fn tor_differential(basis: &MBasis, i: usize) -> ExactMatrix {
    let d = basis.dim();
    let q = FieldSpec::rationals();
    let cols = d.pow(i as u32);
    let mut out = ExactMatrix::zeros(&q, d.pow(i as u32 - 1), cols);
    for col in 0..cols {
        let f = digits(col, d, i);
        for a in 1..i {
            if let Some(p) = basis.mul(f[a - 1], f[a]) {
                let mut g = f[..a - 1].to_vec();
                g.push(p);
                g.extend_from_slice(&f[a + 1..]);
                let row = from_digits(&g, d);
                let cur = out.get_rat(row, col).unwrap();
                out.set_rat(row, col, &cur + &Rat::int(if a % 2 == 0 { 1 } else { -1 }));
            }
        }
    }
    out
}

/// Chain complex in degrees `1..=i_max+1`; `∂_1 = 0` is implicit.
pub fn tor_complex(m: usize, i_max: usize) -> Result<GradedComplex> {
    check_args(m, i_max)?;
    ensure_budget(m, i_max)?;
    let basis = MBasis::new(m);
    let dims = (1..=i_max + 1).map(|i| basis.dim().pow(i as u32)).collect();
    let degrees: Vec<usize> = (2..=i_max + 1).collect();
    let diffs = par::map(&degrees, |&i| tor_differential(&basis, i));
    let c = GradedComplex::new(FieldSpec::rationals(), Orientation::Chain, 1, dims, diffs)?;
    c.check_d_squared()?;
    Ok(c)
}

/// Multiplies paired positions of a basis tensor of `V^{⊗N}`.
fn mu(basis: &MBasis, t: &[usize], c: &[usize]) -> usize {
    let mut factors = Vec::with_capacity(c.len());
    let mut p = 0;
    while p < c.len() {
        if t.contains(&p) {
            factors.push(basis.quadratic(c[p], c[p + 1]));
            p += 2;
        } else {
            factors.push(basis.linear(c[p]));
            p += 1;
        }
    }
    from_digits(&factors, basis.dim())
}

/// `φ` on `X^j_C(A_{N-1}, V^{⊗N}) → 𝔪^{⊗(N-j)}`: a block-`T` vector `v` goes to
/// `(-1)^{Σ k_a} 2^{-j} μ_T(v)` with 1-based `k_a`.
pub fn phi_block(basis: &MBasis, cox: &CoxeterComplex, big_n: usize, j: usize) -> Result<ExactMatrix> {
    let q = FieldSpec::rationals();
    let d = basis.dim();
    let m = basis.m;
    let xdim = cox.complex.dims.get(j).copied().unwrap_or(0);
    let mut out = ExactMatrix::zeros(&q, d.pow((big_n - j) as u32), xdim);
    let Some(blocks) = cox.blocks.get(j) else { return Ok(out) };
    for block in blocks {
        let t = &block.basis.t;
        let ksum: usize = t.iter().map(|k| k + 1).sum();
        let scale = Rat::new(if ksum.is_multiple_of(2) { 1 } else { -1 }, 1i64 << j);
        let cols = &block.basis.columns;
        for c in 0..cols.cols() {
            for r in 0..cols.rows() {
                if let Some(v) = cols.get_rat(r, c).filter(|v| !v.is_zero()) {
                    let row = mu(basis, t, &digits(r, m, big_n));
                    let cur = out.get_rat(row, block.offset + c).unwrap();
                    out.set_rat(row, block.offset + c, &cur + &(&v * &scale));
                }
            }
        }
    }
    Ok(out)
}

/// Result of [`phi_tor`].
pub struct PhiTor {
    /// Per degree `i = 1..=i_max`, the stacked map `⊕_j X^j(A_{i+j-1}) → 𝔪^{⊗i}`.
    pub maps: Vec<ExactMatrix>,
    pub bijective: bool,
    pub chain_map: bool,
    /// `(N, j)` pairs where `∂ φ ≠ φ d`.
    pub failures: Vec<(usize, usize)>,
}

/// Coxeter complexes `X•_C(A_{N-1}, V^{⊗N})` for `N = 1..=2 i_max`.
pub fn coxeter_side(m: usize, i_max: usize) -> Result<Vec<CoxeterComplex>> {
    let ns: Vec<usize> = (1..=2 * i_max).collect();
    par::map(&ns, |&n| build_coxeter_complex(&tensor_power(&CoxeterGraph::type_a(n - 1), m)?))
        .into_iter()
        .collect()
}

/// Builds `φ` against `tor` from the complexes of [`coxeter_side`] and checks
/// bijectivity in degrees `1..=i_max` and `∂_i φ = φ d` for `2 ≤ i ≤ i_max`.
pub fn phi_tor_with(m: usize, i_max: usize, tor: &GradedComplex, cox: &[CoxeterComplex]) -> Result<PhiTor> {
    let basis = MBasis::new(m);
    let mut phi: Vec<Vec<Option<ExactMatrix>>> = Vec::new();
    for (idx, c) in cox.iter().enumerate() {
        let big_n = idx + 1;
        let mut row = Vec::new();
        for j in 0..=big_n / 2 {
            let i = big_n - j;
            row.push(if (1..=i_max).contains(&i) { Some(phi_block(&basis, c, big_n, j)?) } else { None });
        }
        phi.push(row);
    }

    let mut failures = Vec::new();
    for (idx, c) in cox.iter().enumerate() {
        let big_n = idx + 1;
        for j in 0..big_n / 2 {
            let i = big_n - j;
            if !(2..=i_max).contains(&i) {
                continue;
            }
            let (Some(pj), Some(pj1)) = (&phi[idx][j], &phi[idx][j + 1]) else { continue };
            let lhs = tor.differential_from(i as i64).expect("degree in range").mul(pj)?;
            let rhs = pj1.mul(&c.complex.diffs[j])?;
            if lhs != rhs {
                failures.push((big_n, j));
            }
        }
    }

    let mut maps = Vec::new();
    let mut bijective = true;
    for i in 1..=i_max {
        let parts: Vec<&ExactMatrix> = (0..=i).filter_map(|j| phi[i + j - 1][j].as_ref()).collect();
        let stacked = ExactMatrix::hstack(&parts)?;
        bijective &= stacked.rows() == stacked.cols() && (stacked.is_monomial() || elim::rank(&stacked) == stacked.rows());
        maps.push(stacked);
    }
    Ok(PhiTor { maps, bijective, chain_map: failures.is_empty(), failures })
}

pub fn phi_tor(m: usize, i_max: usize) -> Result<PhiTor> {
    let tor = tor_complex(m, i_max)?;
    let cox = coxeter_side(m, i_max)?;
    phi_tor_with(m, i_max, &tor, &cox)
}

/// Per-degree comparison of `Tor_i` with `Σ_j H^j_C(A_{i+j-1}, V^{⊗(i+j)})`.
#[derive(Clone, Debug)]
pub struct TorReport {
    pub m: usize,
    pub i_max: usize,
    /// `dim 𝔪^{⊗i}` for `i = 1..=i_max`.
    pub space_dims: Vec<usize>,
    /// Homology of the Tor complex, `i = 1..=i_max`.
    pub tor_dims: Vec<usize>,
    /// Coxeter-side sums, `i = 1..=i_max`.
    pub coxeter_dims: Vec<usize>,
    pub probabilistic: bool,
    pub checks: Vec<Check>,
}

pub fn compare_tor(m: usize, i_max: usize, mode: RankMode, seed: u64) -> Result<TorReport> {
    check_args(m, i_max)?;
    ensure_budget(m, i_max)?;
    let (tor, cox) = par::join(|| tor_complex(m, i_max), || coxeter_side(m, i_max));
    let (tor, cox) = (tor?, cox?);

    let ht = tor.homology(mode, seed)?;
    let hc: Vec<_> = par::map(&cox, |c| c.complex.homology(mode, seed)).into_iter().collect::<Result<_>>()?;
    let tor_dims: Vec<usize> = (1..=i_max).map(|i| ht.dim_at(i as i64)).collect();
    let coxeter_dims: Vec<usize> =
        (1..=i_max).map(|i| (0..=i).map(|j| hc[i + j - 1].dim_at(j as i64)).sum()).collect();

    let mut checks = Vec::new();
    if ht.probabilistic || hc.iter().any(|h| h.probabilistic) {
        let agreed = ht.agreed && hc.iter().all(|h| h.agreed);
        checks.push(Check::new("modular ranks agree across primes", agreed, json!({})));
    }
    let ids: Vec<bool> = (1..=i_max).map(|i| msum_dimension_identity(m, i)).collect();
    checks.push(Check::new("m-sum dimension identity", ids.iter().all(|&b| b), json!({"per_degree": ids})));
    checks.push(Check::new("tor differential squares to zero", tor.check_d_squared().is_ok(), json!({"m": m})));

    let phi = phi_tor_with(m, i_max, &tor, &cox)?;
    checks.push(Check::new("phi is bijective", phi.bijective, json!({"degrees": (1..=i_max).collect::<Vec<_>>()})));
    checks.push(Check::new(
        "phi is a chain map",
        phi.chain_map,
        json!({"failing_blocks": phi.failures.iter().map(|(n, j)| json!({"N": n, "j": j})).collect::<Vec<_>>()}),
    ));
    checks.push(Check::new(
        "tor dims equal coxeter sums",
        tor_dims == coxeter_dims,
        json!({"tor": tor_dims, "coxeter": coxeter_dims}),
    ));

    Ok(TorReport {
        m,
        i_max,
        space_dims: (1..=i_max).map(|i| tor.dim_at(i as i64)).collect(),
        tor_dims,
        coxeter_dims,
        probabilistic: ht.probabilistic || hc.iter().any(|h| h.probabilistic),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order() {
        let b = MBasis::new(3);
        assert_eq!(b.dim(), 9);
        for (idx, mono) in b.monomials.iter().enumerate() {
            match mono[..] {
                [a] => assert_eq!(b.linear(a), idx),
                [a, c] => assert_eq!(b.quadratic(a, c), idx),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn sigma_rule_roundtrips() {
        for i in 1..=6 {
            for blk in msum_blocks(i) {
                assert_eq!(sigma_of(&blk.t_sigma), blk.sigma);
                assert!(blk.t_sigma.windows(2).all(|w| w[1] >= w[0] + 2));
            }
        }
    }
}
