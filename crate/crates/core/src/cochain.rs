//! Graded complexes, the Coxeter cochain complex and its cohomology.

use crate::coxeter::{all_independent_sets, CoxeterGraph, IndependentSet};
use crate::error::{Error, Result};
use crate::exactfield::{rank_with_mode, ExactMatrix, FieldSpec, RankMode, Rat};
use crate::par;
use crate::representations::{invariants, InvariantBasis, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Differentials raise the degree.
    Cochain,
    /// Differentials lower the degree.
    Chain,
}

/// Finite-dimensional graded vector spaces with differentials.
///
/// Degrees run over `lo .. lo + dims.len()`. For a cochain complex
/// `diffs[i]` maps degree `lo + i` to `lo + i + 1`; for a chain complex it
/// maps degree `lo + i + 1` to `lo + i`. Degrees outside the range are zero.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub field: FieldSpec,
    pub orientation: Orientation,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<ExactMatrix>,
}

/// Ranks and (co)homology dimensions of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub lo: i64,
    pub space_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub dims: Vec<usize>,
    pub probabilistic: bool,
    /// False if some modular rank saw the primes disagree.
    pub agreed: bool,
}

impl Homology {
    pub fn euler(&self) -> i64 {
        alternating_sum(self.lo, &self.dims)
    }

    pub fn space_euler(&self) -> i64 {
        alternating_sum(self.lo, &self.space_dims)
    }

    /// Dimension in absolute degree `k`.
    pub fn dim_at(&self, k: i64) -> usize {
        let i = k - self.lo;
        if i < 0 {
            0
        } else {
            self.dims.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

pub fn alternating_sum(lo: i64, dims: &[usize]) -> i64 {
    dims.iter().enumerate().map(|(i, &d)| if (lo + i as i64) % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

impl GradedComplex {
    pub fn new(
        field: FieldSpec,
        orientation: Orientation,
        lo: i64,
        dims: Vec<usize>,
        diffs: Vec<ExactMatrix>,
    ) -> Result<GradedComplex> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Internal(format!("{} differentials for {} degrees", diffs.len(), dims.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            let (src, dst) = match orientation {
                Orientation::Cochain => (dims[i], dims[i + 1]),
                Orientation::Chain => (dims[i + 1], dims[i]),
            };
            if d.shape() != (dst, src) {
                return Err(Error::DimensionMismatch { op: "differential", left: d.shape(), right: (dst, src) });
            }
        }
        Ok(GradedComplex { field, orientation, lo, dims, diffs })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim_at(&self, k: i64) -> usize {
        let i = k - self.lo;
        if i < 0 {
            0
        } else {
            self.dims.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// The differential leaving degree `k`, if both ends are in range.
    pub fn differential_from(&self, k: i64) -> Option<&ExactMatrix> {
        let i = k - self.lo;
        match self.orientation {
            Orientation::Cochain => (i >= 0).then(|| self.diffs.get(i as usize)).flatten(),
            Orientation::Chain => (i >= 1).then(|| self.diffs.get(i as usize - 1)).flatten(),
        }
    }

    /// Verifies that consecutive differentials compose to zero.
    pub fn check_d_squared(&self) -> Result<()> {
        for w in self.diffs.windows(2) {
            let (first, second) = match self.orientation {
                Orientation::Cochain => (&w[0], &w[1]),
                Orientation::Chain => (&w[1], &w[0]),
            };
            if !second.mul(first)?.is_zero() {
                return Err(Error::Internal("d^2 != 0".into()));
            }
        }
        Ok(())
    }

    /// (Co)homology dimensions; the ranks of all differentials are computed
    /// independently and in parallel.
    pub fn homology(&self, mode: RankMode, seed: u64) -> Result<Homology> {
        let infos = par::map(&self.diffs, |d| rank_with_mode(d, mode, seed));
        let infos = infos.into_iter().collect::<Result<Vec<_>>>()?;
        let ranks: Vec<usize> = infos.iter().map(|r| r.rank).collect();
        let mut dims = Vec::with_capacity(self.dims.len());
        for (i, &d) in self.dims.iter().enumerate() {
            let (out, inc) = match self.orientation {
                Orientation::Cochain => (ranks.get(i).copied(), i.checked_sub(1).map(|j| ranks[j])),
                Orientation::Chain => (i.checked_sub(1).map(|j| ranks[j]), ranks.get(i).copied()),
            };
            let h = d as i64 - out.unwrap_or(0) as i64 - inc.unwrap_or(0) as i64;
            if h < 0 {
                return Err(Error::Internal(format!("negative homology dimension {h} in degree {}", self.lo + i as i64)));
            }
            dims.push(h as usize);
        }
        let h = Homology {
            lo: self.lo,
            space_dims: self.dims.clone(),
            probabilistic: infos.iter().any(|r| r.probabilistic),
            agreed: infos.iter().all(|r| r.agreed),
            ranks,
            dims,
        };
        if h.euler() != h.space_euler() {
            return Err(Error::Internal("Euler characteristic of spaces and homology differ".into()));
        }
        Ok(h)
    }
}

/// One summand `A^⟨T⟩` of `X^k`.
#[derive(Clone, Debug)]
pub struct Block {
    pub basis: InvariantBasis,
    /// Offset of this block inside `X^k`.
    pub offset: usize,
}

/// `X•_C(G, A)` with its block structure.
#[derive(Clone, Debug)]
pub struct CoxeterComplex {
    pub graph: CoxeterGraph,
    pub rep: Representation,
    /// Position of each generator in the order used for the signs.
    pub order: Vec<usize>,
    /// Blocks per degree, `T` in lexicographic order.
    pub blocks: Vec<Vec<Block>>,
    pub complex: GradedComplex,
}

impl CoxeterComplex {
    pub fn block_structure(&self) -> Vec<Vec<(IndependentSet, usize)>> {
        self.blocks.iter().map(|bs| bs.iter().map(|b| (b.basis.t.clone(), b.basis.dim())).collect()).collect()
    }

    /// Index of the block for `t` in degree `t.len()`.
    pub fn block_index(&self, t: &[usize]) -> Option<usize> {
        self.blocks.get(t.len())?.iter().position(|b| b.basis.t == t)
    }

    pub fn space_dims(&self) -> &[usize] {
        &self.complex.dims
    }
}

/// Sign `(-1)^{|{t ∈ T : t < s}|}` for the generator order `order`.
pub fn d_sign(t: &[usize], s: usize, order: &[usize]) -> i64 {
    let below = t.iter().filter(|&&u| order[u] < order[s]).count();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn build_coxeter_complex(rep: &Representation) -> Result<CoxeterComplex> {
    let order: Vec<usize> = (0..rep.graph().n()).collect();
    build_coxeter_complex_ordered(rep, &order)
}

/// Builds `X•_C` with `d_{T,s}(v) = ±(v + s v)` where the sign counts
/// generators of `T` preceding `s` in `order` (`order[s]` is the rank of `s`).
pub fn build_coxeter_complex_ordered(rep: &Representation, order: &[usize]) -> Result<CoxeterComplex> {
    let g = rep.graph().clone();
    if order.len() != g.n() {
        return Err(Error::Internal("generator order has the wrong length".into()));
    }
    let field = rep.field().clone();
    let sets = all_independent_sets(&g);
    let flat: Vec<&IndependentSet> = sets.iter().flatten().collect();
    let bases = par::map(&flat, |t| invariants(rep, t));
    let mut bases = bases.into_iter();
    let mut blocks: Vec<Vec<Block>> = Vec::new();
    let mut dims = Vec::new();
    for level in &sets {
        let mut off = 0;
        let mut row = Vec::new();
        for _ in level {
            let basis = bases.next().unwrap()?;
            let dim = basis.dim();
            row.push(Block { basis, offset: off });
            off += dim;
        }
        dims.push(off);
        blocks.push(row);
    }

    let id = ExactMatrix::identity(&field, rep.dim());
    let sym: Vec<ExactMatrix> = rep.generators().iter().map(|m| id.add(m)).collect::<Result<_>>()?;
    let degrees: Vec<usize> = (0..blocks.len().saturating_sub(1)).collect();
    let diffs = par::map(&degrees, |&k| -> Result<ExactMatrix> {
        let mut d = ExactMatrix::zeros(&field, dims[k + 1], dims[k]);
        for src in &blocks[k] {
            let t = &src.basis.t;
            let image_all = (0..g.n()).filter(|s| !t.contains(s) && t.iter().all(|&u| g.commute(u, *s)));
            for s in image_all {
                let mut target = t.clone();
                target.push(s);
                target.sort_unstable();
                let dst = blocks[k + 1].iter().find(|b| b.basis.t == target).expect("independent superset");
                let w = sym[s].mul(&src.basis.columns)?;
                let coords = dst.basis.coordinates(&w).map_err(|e| {
                    Error::SolveFailed(format!("d from {:?} along s{}: {e}", t, s + 1))
                })?;
                let coords = if d_sign(t, s, order) < 0 { coords.neg() } else { coords };
                d.set_block(dst.offset, src.offset, &coords);
            }
        }
        Ok(d)
    });
    let diffs = diffs.into_iter().collect::<Result<Vec<_>>>()?;
    let complex = GradedComplex::new(field, Orientation::Cochain, 0, dims, diffs)?;
    complex.check_d_squared()?;
    Ok(CoxeterComplex { graph: g, rep: rep.clone(), order: order.to_vec(), blocks, complex })
}

/// Per-degree cohomology of `X•_C` plus bookkeeping for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub space_dims: Vec<usize>,
    pub dims: Vec<usize>,
    pub euler: i64,
    pub mode: RankMode,
    pub probabilistic: bool,
    pub agreed: bool,
    pub block_structure: Vec<Vec<(IndependentSet, usize)>>,
}

pub fn cohomology(c: &CoxeterComplex, mode: RankMode, seed: u64) -> Result<CohomologyReport> {
    let h = c.complex.homology(mode, seed)?;
    Ok(CohomologyReport {
        space_dims: h.space_dims.clone(),
        euler: h.euler(),
        dims: h.dims,
        mode,
        probabilistic: h.probabilistic,
        agreed: h.agreed,
        block_structure: c.block_structure(),
    })
}

/// Cohomology dimensions of `X•_C(G, rep)`, exact.
pub fn coxeter_cohomology_dims(rep: &Representation) -> Result<Vec<usize>> {
    Ok(cohomology(&build_coxeter_complex(rep)?, RankMode::Exact, 0)?.dims)
}

/// Sign of the permutation sorting `t` (given in index order) into `order`.
pub fn reorder_sign(t: &[usize], order: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            if order[t[a]] > order[t[b]] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The complex under another generator order, with the block-diagonal
/// `ε_T` map from the index-ordered complex, checked to be a chain isomorphism.
pub struct Reordering {
    pub reordered: CoxeterComplex,
    pub epsilon: Vec<Vec<i64>>,
    pub is_chain_isomorphism: bool,
}

pub fn reordering_isomorphism(rep: &Representation, order: &[usize]) -> Result<Reordering> {
    let base = build_coxeter_complex(rep)?;
    let reordered = build_coxeter_complex_ordered(rep, order)?;
    let field = rep.field().clone();
    let epsilon: Vec<Vec<i64>> =
        base.blocks.iter().map(|bs| bs.iter().map(|b| reorder_sign(&b.basis.t, order)).collect()).collect();
    let maps: Vec<ExactMatrix> = base
        .blocks
        .iter()
        .zip(&epsilon)
        .zip(&base.complex.dims)
        .map(|((bs, eps), &dim)| {
            let mut m = ExactMatrix::zeros(&field, dim, dim);
            for (b, &e) in bs.iter().zip(eps) {
                for i in 0..b.basis.dim() {
                    m.set_rat(b.offset + i, b.offset + i, Rat::int(e));
                }
            }
            m
        })
        .collect();
    let mut ok = true;
    for (k, d) in base.complex.diffs.iter().enumerate() {
        let lhs = reordered.complex.diffs[k].mul(&maps[k])?;
        let rhs = maps[k + 1].mul(d)?;
        ok &= lhs == rhs;
    }
    Ok(Reordering { reordered, epsilon, is_chain_isomorphism: ok })
}

/// Reduced simplicial cochain complex of the independence complex with
/// coefficients ℚ^d. Degree `k` holds the `k`-element independent sets
/// (so `(k-1)`-simplices), degree 0 being the augmentation.
pub fn simplicial_reduced_complex(g: &CoxeterGraph, d: usize) -> Result<GradedComplex> {
    let field = FieldSpec::rationals();
    let sets = all_independent_sets(g);
    let order: Vec<usize> = (0..g.n()).collect();
    let dims: Vec<usize> = sets.iter().map(|l| l.len() * d).collect();
    let mut diffs = Vec::new();
    for k in 0..sets.len().saturating_sub(1) {
        let mut m = ExactMatrix::zeros(&field, dims[k + 1], dims[k]);
        for (j, t) in sets[k].iter().enumerate() {
            for (i, u) in sets[k + 1].iter().enumerate() {
                let Some(s) = u.iter().copied().find(|x| !t.contains(x)) else { continue };
                if !t.iter().all(|x| u.contains(x)) {
                    continue;
                }
                let sign = d_sign(t, s, &order);
                for c in 0..d {
                    m.set_rat(i * d + c, j * d + c, Rat::int(sign));
                }
            }
        }
        diffs.push(m);
    }
    let c = GradedComplex::new(field, Orientation::Cochain, 0, dims, diffs)?;
    c.check_d_squared()?;
    Ok(c)
}
