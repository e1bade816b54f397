use super::Representation;
use crate::coxeter::IndependentSet;
use crate::error::{Error, Result};
use crate::exactfield::{elim, ExactMatrix, Rat};

/// A basis of `A^⟨T⟩`, the vectors fixed by every generator in `T`.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub t: IndependentSet,
    /// Basis vectors as columns.
    pub columns: ExactMatrix,
    /// Rows on which `columns` restricts to the identity, so the coordinates
    /// of an invariant vector are its entries at these rows.
    pub free_rows: Vec<usize>,
}

impl InvariantBasis {
    pub fn dim(&self) -> usize {
        self.columns.cols()
    }

    /// Coordinates of the columns of `v` in this basis, verified exactly.
    pub fn coordinates(&self, v: &ExactMatrix) -> Result<ExactMatrix> {
        let c = v.select_rows(&self.free_rows);
        if self.columns.mul(&c)? != *v {
            return Err(Error::SolveFailed(format!(
                "vector is not invariant under {:?}",
                self.t.iter().map(|s| s + 1).collect::<Vec<_>>()
            )));
        }
        Ok(c)
    }
}

/// Kernel of the stacked `M_s - I` for `s ∈ t`, cross-checked against the
/// image of the averaging projector `∏_{s∈t} (I + M_s) / 2^{|t|}`.
pub fn invariants(rep: &Representation, t: &[usize]) -> Result<InvariantBasis> {
    let g = rep.graph();
    if t.iter().any(|&s| s >= g.n()) || !g.is_independent(t) || t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIndependent(t.to_vec()));
    }
    let field = rep.field();
    let n = rep.dim();
    let id = ExactMatrix::identity(field, n);
    if t.is_empty() {
        return Ok(InvariantBasis { t: Vec::new(), columns: id, free_rows: (0..n).collect() });
    }
    let blocks = t.iter().map(|&s| rep.generator(s).sub(&id)).collect::<Result<Vec<_>>>()?;
    let stacked = ExactMatrix::vstack(&blocks.iter().collect::<Vec<_>>())?;
    let (columns, free_rows) = elim::kernel_with_free_rows(&stacked);

    let mut proj = id.clone();
    for &s in t {
        proj = id.add(rep.generator(s))?.mul(&proj)?;
    }
    let proj = proj.scale_rat(&Rat::int(1 << t.len()).recip());
    let fixed = proj.mul(&columns)? == columns;
    let spans = columns.mul(&proj.select_rows(&free_rows))? == proj;
    if !(fixed && spans) {
        return Err(Error::Internal(format!(
            "kernel and projector disagree on the invariants of {:?} in {}",
            t.iter().map(|s| s + 1).collect::<Vec<_>>(),
            rep.label()
        )));
    }
    Ok(InvariantBasis { t: t.to_vec(), columns, free_rows })
}
