//! The relative cube complex of `([0,1]^n, ∂[0,1]^n ∪ Δ_{n,3})` and its
//! comparison with `X•_C(A_{n-1}, ℚ[S_n])`.
//!
//! Cells are ordered partitions `(G_1, …, G_k)` of `{0, …, n-1}` into parts
//! of size 1 or 2. The boundary merges adjacent singletons:
//! `∂(G_1, …, G_k) = Σ_{i=1}^{k-1} (-1)^i (…, G_i ∪ G_{i+1}, …)` over `i`
//! with `|G_i| = |G_{i+1}| = 1`; other faces lie in `Δ_{n,3}` or the cube boundary.

use std::collections::HashMap;
use std::fmt;

use serde_json::json;

use crate::cochain::{build_coxeter_complex, CoxeterComplex, GradedComplex, Homology, Orientation};
use crate::coxeter::{CoxeterGraph, IndependentSet};
use crate::error::{Error, Result};
use crate::exactfield::{elim, ExactMatrix, FieldSpec, RankMode, Rat};
use crate::par;
use crate::report::Check;
use crate::representations::symmetric::{all_perms, compose, inverse, perm_index, sign as perm_sign, Perm};
use crate::representations::{regular, sign_twist, specht};

/// An ordered partition with parts of size 1 or 2; pairs are stored increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    pub parts: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(mut parts: Vec<Vec<usize>>) -> OrderedPartition {
        for p in &mut parts {
            p.sort_unstable();
        }
        OrderedPartition { parts }
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Elements listed part by part.
    pub fn word(&self) -> Vec<usize> {
        self.parts.iter().flatten().copied().collect()
    }

    /// Whether earlier parts hold smaller elements throughout.
    pub fn is_order_preserving(&self) -> bool {
        self.word().iter().enumerate().all(|(p, &x)| p == x)
    }

    /// The right action `(G_1, …)σ = (σ^{-1}(G_1), …)`.
    pub fn act(&self, sigma: &[usize]) -> OrderedPartition {
        let inv = inverse(sigma);
        OrderedPartition::new(self.parts.iter().map(|p| p.iter().map(|&x| inv[x]).collect()).collect())
    }

    /// Merge of parts `i` and `i + 1` (0-based).
    fn merged(&self, i: usize) -> OrderedPartition {
        let mut parts = self.parts.clone();
        let next = parts.remove(i + 1);
        parts[i].extend(next);
        OrderedPartition::new(parts)
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| format!("{{{}}}", p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Independent set of `A_{n-1}` for a size vector: generator index
/// `|G_1| + … + |G_{i-1}|` (0-based, i.e. the transposition of positions
/// `j, j+1`) for each part with `|G_i| = 2`.
pub fn sizes_to_set(sizes: &[usize]) -> IndependentSet {
    let mut out = Vec::new();
    let mut acc = 0;
    for &s in sizes {
        if s == 2 {
            out.push(acc);
        }
        acc += s;
    }
    out
}

/// Inverse of [`sizes_to_set`] for `A_{n-1}`.
pub fn set_to_sizes(t: &[usize], n: usize) -> Option<Vec<usize>> {
    let mut sizes = Vec::new();
    let mut pos = 0;
    while pos < n {
        if t.contains(&pos) {
            if pos + 1 >= n {
                return None;
            }
            sizes.push(2);
            pos += 2;
        } else {
            sizes.push(1);
            pos += 1;
        }
    }
    (sizes_to_set(&sizes) == t).then_some(sizes)
}

fn size_vectors(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n || 2 * k < n {
        return Vec::new();
    }
    let pairs = n - k;
    let mut out = Vec::new();
    // Lexicographic order with 1 < 2: choose positions of the 2s.
    fn go(k: usize, pairs: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let placed = cur.iter().filter(|&&x| x == 2).count();
        if cur.len() == k {
            if placed == pairs {
                out.push(cur.clone());
            }
            return;
        }
        let left = k - cur.len();
        if pairs - placed < left {
            cur.push(1);
            go(k, pairs, cur, out);
            cur.pop();
        }
        if placed < pairs {
            cur.push(2);
            go(k, pairs, cur, out);
            cur.pop();
        }
    }
    go(k, pairs, &mut Vec::new(), &mut out);
    out
}

/// All cells with `k` parts, by size vector (lexicographic) then contents.
pub fn enumerate_cells(n: usize, k: usize) -> Vec<OrderedPartition> {
    let mut out = Vec::new();
    let perms = all_perms(n);
    for sizes in size_vectors(n, k) {
        for p in &perms {
            let mut parts = Vec::with_capacity(k);
            let mut pos = 0;
            let mut ok = true;
            for &s in &sizes {
                let part = p[pos..pos + s].to_vec();
                if s == 2 && part[0] > part[1] {
                    ok = false;
                    break;
                }
                parts.push(part);
                pos += s;
            }
            if ok {
                out.push(OrderedPartition { parts });
            }
        }
    }
    out
}

/// Boundary of one cell as `(sign, face)` pairs.
pub fn boundary(cell: &OrderedPartition) -> Vec<(i64, OrderedPartition)> {
    let k = cell.k();
    (1..k)
        .filter(|&i| cell.parts[i - 1].len() == 1 && cell.parts[i].len() == 1)
        .map(|i| (if i % 2 == 0 { 1 } else { -1 }, cell.merged(i - 1)))
        .collect()
}

/// The relative chain complex with its cells.
pub struct RelativeComplex {
    pub n: usize,
    /// Lowest degree with cells, `⌈n/2⌉`.
    pub lo: usize,
    /// Cells by degree, starting at `lo`.
    pub cells: Vec<Vec<OrderedPartition>>,
    pub index: Vec<HashMap<OrderedPartition, usize>>,
    pub complex: GradedComplex,
}

impl RelativeComplex {
    pub fn cells_in(&self, k: usize) -> &[OrderedPartition] {
        if k < self.lo || k > self.n {
            &[]
        } else {
            &self.cells[k - self.lo]
        }
    }

    pub fn index_of(&self, cell: &OrderedPartition) -> Option<usize> {
        self.index.get(cell.k().checked_sub(self.lo)?)?.get(cell).copied()
    }

    /// Dimensions of all degrees `0..=n`.
    pub fn dims_by_degree(&self) -> Vec<usize> {
        (0..=self.n).map(|k| self.cells_in(k).len()).collect()
    }
}

fn check_n(n: usize, hi: usize) -> Result<()> {
    if !(2..=hi).contains(&n) {
        return Err(Error::Unsupported(format!("n must lie in 2..={hi}, got {n}")));
    }
    Ok(())
}

pub fn relative_complex(n: usize) -> Result<RelativeComplex> {
    check_n(n, 7)?;
    let lo = n.div_ceil(2);
    let cells: Vec<Vec<OrderedPartition>> = (lo..=n).map(|k| enumerate_cells(n, k)).collect();
    let index: Vec<HashMap<OrderedPartition, usize>> =
        cells.iter().map(|cs| cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()).collect();
    let field = FieldSpec::rationals();
    let mut diffs = Vec::new();
    for k in lo + 1..=n {
        let src = &cells[k - lo];
        let dst = &index[k - 1 - lo];
        let mut m = ExactMatrix::zeros(&field, dst.len(), src.len());
        for (j, c) in src.iter().enumerate() {
            for (sgn, face) in boundary(c) {
                let i = dst[&face];
                let cur = m.get_rat(i, j).unwrap();
                m.set_rat(i, j, &cur + &Rat::int(sgn));
            }
        }
        diffs.push(m);
    }
    let dims = cells.iter().map(Vec::len).collect();
    let complex = GradedComplex::new(field, Orientation::Chain, lo as i64, dims, diffs)?;
    complex.check_d_squared()?;
    Ok(RelativeComplex { n, lo, cells, index, complex })
}

/// `∂∂ = 0` on every cell, by symbolic expansion (no matrices).
pub fn boundary_squared_zero_sparse(n: usize) -> Result<bool> {
    check_n(n, 8)?;
    let ks: Vec<usize> = (n.div_ceil(2)..=n).collect();
    let ok = par::map(&ks, |&k| {
        enumerate_cells(n, k).iter().all(|c| {
            let mut acc: HashMap<OrderedPartition, i64> = HashMap::new();
            for (s1, f1) in boundary(c) {
                for (s2, f2) in boundary(&f1) {
                    *acc.entry(f2).or_default() += s1 * s2;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    });
    Ok(ok.into_iter().all(|b| b))
}

/// Stabilizer of an order-preserving cell, by brute force, against `⟨T⟩`.
pub fn stabilizer_check(n: usize) -> Result<bool> {
    check_n(n, 6)?;
    let perms = all_perms(n);
    for k in n.div_ceil(2)..=n {
        for cell in enumerate_cells(n, k).into_iter().filter(OrderedPartition::is_order_preserving) {
            let mut stab: Vec<Perm> = perms.iter().filter(|g| cell.act(g) == cell).cloned().collect();
            stab.sort();
            let mut sub = parabolic_elements(n, &sizes_to_set(&cell.sizes()));
            sub.sort();
            if stab != sub {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Elements of `⟨T⟩` for commuting adjacent transpositions `T`.
fn parabolic_elements(n: usize, t: &[usize]) -> Vec<Perm> {
    let mut out: Vec<Perm> = vec![(0..n).collect()];
    for &j in t {
        let s = crate::representations::symmetric::adjacent(n, j);
        let more: Vec<Perm> = out.iter().map(|g| compose(&s, g)).collect();
        out.extend(more);
    }
    out
}

/// `φ` on every degree, as matrices `C_k → X^{n-k}`.
pub struct PhiConfig {
    /// `maps[k - lo]` is `φ_k`.
    pub maps: Vec<ExactMatrix>,
    /// `ε` with `φ_{k-1} ∂_k = ε d φ_k` in every degree, if such a sign exists.
    pub commutation_sign: Option<i64>,
    /// `φ'_k = (-1)^{nk} φ_k` commutes with the differentials exactly.
    pub corrected_is_chain_map: bool,
    pub bijective: bool,
}

/// Builds `φ` cell by cell: an order-preserving cell `P` goes to
/// `(-1)^{Σ_{m≥2} (m-1)|G_m|} Σ_{t∈⟨T⟩} e_t` in the block of `T`; a
/// general cell `Pσ` goes to the right translate by `σ`.
pub fn phi_config(rel: &RelativeComplex, cox: &CoxeterComplex) -> Result<PhiConfig> {
    let n = rel.n;
    let field = FieldSpec::rationals();
    let fact: usize = (1..=n).product();
    let mut maps = Vec::new();
    for k in rel.lo..=n {
        let deg = n - k;
        let xdim = cox.complex.dims.get(deg).copied().unwrap_or(0);
        let cells = rel.cells_in(k);
        let mut m = ExactMatrix::zeros(&field, xdim, cells.len());
        for (j, cell) in cells.iter().enumerate() {
            let sizes = cell.sizes();
            let t = sizes_to_set(&sizes);
            let bi = cox.block_index(&t).ok_or_else(|| Error::Internal(format!("no block for {t:?}")))?;
            let block = &cox.blocks[deg][bi];
            let sign_p: usize = sizes.iter().enumerate().skip(1).map(|(m, &s)| m * s).sum();
            let sign_p = if sign_p.is_multiple_of(2) { 1 } else { -1 };
            // σ^{-1} sends positions to the elements of the cell, so σ = word^{-1}.
            let sigma = inverse(&cell.word());
            let mut v = ExactMatrix::zeros(&field, fact, 1);
            for t_el in parabolic_elements(n, &t) {
                v.set_rat(perm_index(&compose(&t_el, &sigma)), 0, Rat::int(sign_p));
            }
            let coords = block.basis.coordinates(&v)?;
            m.set_block(block.offset, j, &coords);
        }
        maps.push(m);
    }

    let mut signs = Vec::new();
    let mut corrected = true;
    for k in rel.lo + 1..=n {
        let dk = &rel.complex.diffs[k - rel.lo - 1];
        let lhs = maps[k - 1 - rel.lo].mul(dk)?;
        let deg = n - k;
        let rhs = match cox.complex.diffs.get(deg) {
            Some(d) => d.mul(&maps[k - rel.lo])?,
            None => ExactMatrix::zeros(&field, lhs.rows(), lhs.cols()),
        };
        if lhs == rhs {
            signs.push(1);
        } else if lhs == rhs.neg() {
            signs.push(-1);
        } else {
            signs.push(0);
        }
        let e = |k: usize| if (n * k).is_multiple_of(2) { 1 } else { -1 };
        corrected &= if e(k - 1) * e(k) == 1 { lhs == rhs } else { lhs == rhs.neg() };
    }
    let commutation_sign = match signs.first() {
        None => Some(1),
        Some(&s) if s != 0 && signs.iter().all(|&x| x == s) => Some(s),
        _ => None,
    };
    let bijective = maps.iter().all(|m| m.rows() == m.cols() && (m.is_monomial() || elim::rank(m) == m.rows()));
    Ok(PhiConfig { maps, commutation_sign, corrected_is_chain_map: corrected, bijective })
}

/// Homology of both sides and all checks for one `n`.
#[derive(Clone, Debug)]
pub struct ConfigReport {
    pub n: usize,
    /// `dim C_k` for `k = 0..=n`.
    pub cell_dims: Vec<usize>,
    /// `dim X^m` for `m = 0..=n`.
    pub coxeter_space_dims: Vec<usize>,
    /// Relative homology `H_k` for `k = 0..=n`.
    pub relative_h: Vec<usize>,
    /// `H^m_C(A_{n-1}, ℚ[S_n])` for `m = 0..=n`.
    pub coxeter_h: Vec<usize>,
    /// `H_k(X_{n,3})` through `H_k(X) ≅ H_{n-k}(relative)`.
    pub complement_h: Vec<usize>,
    pub probabilistic: bool,
    pub checks: Vec<Check>,
}

fn pad(h: &Homology, n: usize) -> Vec<usize> {
    (0..=n as i64).map(|k| h.dim_at(k)).collect()
}

/// Right multiplication of cells by a group-algebra element `Σ c_g g`.
fn right_action_matrix(rel: &RelativeComplex, k: usize, elem: &[(Perm, i64)]) -> ExactMatrix {
    let cells = rel.cells_in(k);
    let mut m = ExactMatrix::zeros(&FieldSpec::rationals(), cells.len(), cells.len());
    for (j, c) in cells.iter().enumerate() {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (g, coef) in elem {
            *acc.entry(rel.index_of(&c.act(g)).expect("cells are closed under the action")).or_default() += coef;
        }
        for (i, v) in acc {
            if v != 0 {
                m.set_rat(i, j, Rat::int(v));
            }
        }
    }
    m
}

/// Young symmetrizer of the row-filled tableau, optionally sign-twisted.
fn young_symmetrizer(lambda: &[usize], twist: bool) -> Vec<(Perm, i64)> {
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
    let rows: Vec<&Perm> = perms.iter().filter(|p| (0..n).all(|x| row_of[p[x]] == row_of[x])).collect();
    let cols: Vec<&Perm> = perms.iter().filter(|p| (0..n).all(|x| col_of[p[x]] == col_of[x])).collect();
    let mut acc: HashMap<Perm, i64> = HashMap::new();
    for p in &rows {
        for q in &cols {
            let g = compose(p, q);
            let tw = if twist { perm_sign(&g) } else { 1 };
            *acc.entry(g).or_default() += perm_sign(q) * tw;
        }
    }
    let mut v: Vec<(Perm, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

/// Multiplicity of each Specht module in `H_k(X_{n,3}) = H_{n-k}(relative) ⊗ sgn`,
/// read off as `dim H·c_λ^{sgn}`, against Coxeter cohomology of `S^λ ⊗ sgn`.
fn specht_checks(rel: &RelativeComplex, n: usize) -> Result<Check> {
    let g = CoxeterGraph::type_a(n - 1);
    let mut rows = Vec::new();
    let mut ok = true;
    let sums = crate::representations::symmetric::partitions(n);
    for lambda in &sums {
        let c = young_symmetrizer(lambda, true);
        let tw = sign_twist(&specht(&g, lambda)?);
        let cox = crate::cochain::coxeter_cohomology_dims(&tw)?;
        let mut topo = vec![0; n + 1];
        for j in rel.lo..=n {
            let cells = rel.cells_in(j).len();
            let z = match rel.complex.differential_from(j as i64) {
                Some(d) => elim::kernel(d),
                None => ExactMatrix::identity(&FieldSpec::rationals(), cells),
            };
            let b = if j < n { elim::image(&rel.complex.diffs[j - rel.lo]) } else { ExactMatrix::zeros(&FieldSpec::rationals(), cells, 0) };
            let zc = right_action_matrix(rel, j, &c).mul(&z)?;
            let mult = elim::rank(&ExactMatrix::hstack(&[&zc, &b])?) - b.cols();
            topo[n - j] = mult;
        }
        let coxeter: Vec<usize> = (0..=n).map(|k| cox.get(k).copied().unwrap_or(0)).collect();
        ok &= topo == coxeter;
        rows.push(json!({"lambda": lambda, "complement_multiplicity": topo, "coxeter_specht_twisted": coxeter}));
    }
    Ok(Check::new("specht multiplicities", ok, json!(rows)))
}

/// Everything for one `n`: complexes, `φ`, homology on both sides, and the
/// degree alignment. `n ≥ 6` should use modular ranks.
pub fn compare_homology(n: usize, mode: RankMode, seed: u64) -> Result<ConfigReport> {
    check_n(n, 6)?;
    let rel = relative_complex(n)?;
    let g = CoxeterGraph::type_a(n - 1);
    let cox = build_coxeter_complex(&regular(&g)?)?;
    let mut checks = Vec::new();

    let cell_dims = rel.dims_by_degree();
    let coxeter_space_dims: Vec<usize> = (0..=n).map(|m| cox.complex.dims.get(m).copied().unwrap_or(0)).collect();
    let bases_match = (0..=n).all(|k| cell_dims[k] == coxeter_space_dims[n - k]);
    checks.push(Check::new(
        "cell counts match coxeter spaces under k <-> n-k",
        bases_match,
        json!({"cells": cell_dims, "coxeter_spaces": coxeter_space_dims}),
    ));
    checks.push(Check::new("boundary squares to zero", rel.complex.check_d_squared().is_ok(), json!({"n": n})));

    let phi = phi_config(&rel, &cox)?;
    checks.push(Check::new(
        "phi is bijective",
        phi.bijective,
        json!({"degrees": (rel.lo..=n).collect::<Vec<_>>()}),
    ));
    checks.push(Check::new(
        "phi is a chain map",
        phi.corrected_is_chain_map,
        json!({
            "commutation_sign_of_phi": phi.commutation_sign,
            "corrected_map": "(-1)^(n*k) phi_k",
        }),
    ));

    let (hr, hc) = par::join(|| rel.complex.homology(mode, seed), || cox.complex.homology(mode, seed));
    let (hr, hc) = (hr?, hc?);
    if hr.probabilistic || hc.probabilistic {
        checks.push(Check::new(
            "modular ranks agree across primes",
            hr.agreed && hc.agreed,
            json!({"relative": hr.agreed, "coxeter": hc.agreed}),
        ));
    }
    let relative_h = pad(&hr, n);
    let coxeter_h = pad(&hc, n);
    let aligned = (0..=n).all(|k| relative_h[k] == coxeter_h[n - k]);
    checks.push(Check::new(
        "relative H_k equals coxeter H^(n-k)",
        aligned,
        json!({"relative": relative_h, "coxeter": coxeter_h}),
    ));
    let complement_h: Vec<usize> = (0..=n).map(|k| relative_h[n - k]).collect();
    let printed = (0..=n).all(|k| complement_h[k] == coxeter_h[n - k]);
    let inferred = (0..=n).all(|k| complement_h[k] == coxeter_h[k]);
    checks.push(Check::new(
        "degree convention",
        inferred,
        json!({
            "complement_homology": complement_h,
            "matches_H^k_C": inferred,
            "matches_H^(n-k)_C": printed,
            "h0_of_complement": complement_h[0],
        }),
    ));
    if n == 3 {
        let circle = relative_h == vec![0, 0, 1, 1];
        checks.push(Check::new("n=3 circle", circle, json!({"relative": relative_h})));
    }
    if n <= 5 {
        checks.push(Check::new("stabilizers equal parabolic subgroups", stabilizer_check(n)?, json!({"n": n})));
        checks.push(specht_checks(&rel, n)?);
    }
    Ok(ConfigReport {
        n,
        cell_dims,
        coxeter_space_dims,
        relative_h,
        coxeter_h,
        complement_h,
        probabilistic: hr.probabilistic || hc.probabilistic,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_vector_bijection_roundtrips() {
        for n in 2..=6usize {
            for k in n.div_ceil(2)..=n {
                for sizes in size_vectors(n, k) {
                    let t = sizes_to_set(&sizes);
                    assert_eq!(t.len(), n - k);
                    assert_eq!(set_to_sizes(&t, n), Some(sizes));
                }
            }
        }
    }

    #[test]
    fn boundary_of_three_singletons() {
        let c = OrderedPartition::new(vec![vec![0], vec![1], vec![2]]);
        let b = boundary(&c);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], (-1, OrderedPartition::new(vec![vec![0, 1], vec![2]])));
        assert_eq!(b[1], (1, OrderedPartition::new(vec![vec![0], vec![1, 2]])));
    }
}
