//! Exact Gaussian elimination over a [`FieldSpec`].
//!
//! Rows are normalized so that pivots are 1, which keeps entries small in
//! the sparse, mostly-integral matrices the complexes produce. Zero
//! multipliers and zero pivot-row entries are skipped, and row updates run
//! data-parallel once a step is large enough.

use super::field::FieldSpec;
use super::matrix::ExactMatrix;
use super::rational::Rat;
use crate::error::{Error, Result};
use crate::par;

/// Result of reducing a matrix to (reduced) row echelon form in place.
pub struct Echelon {
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
}

fn invert_slice(field: &FieldSpec, e: &[Rat]) -> Vec<Rat> {
    if field.degree() == 1 {
        vec![e[0].recip()]
    } else {
        field.inv(&super::field::FieldElement(e.to_vec())).0
    }
}

/// Number of candidate rows inspected when choosing the sparsest pivot.
const PIVOT_SCAN: usize = 24;

/// Reduces `m` in place. With `full`, entries above each pivot are cleared
/// as well, giving the reduced row echelon form.
pub fn echelonize(m: &mut ExactMatrix, full: bool) -> Echelon {
    let (rows, cols) = m.shape();
    let d = m.degree();
    let field = m.field().clone();
    let row_len = cols * d;
    let mut pivots = Vec::new();
    let mut rank = 0;
    let mut tmp = vec![Rat::ZERO; d];

    for c in 0..cols {
        if rank == rows {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        let mut scanned = 0;
        for r in rank..rows {
            if m.is_entry_zero(r, c) {
                continue;
            }
            let nz = (c..cols).filter(|&j| !m.is_entry_zero(r, j)).count();
            if best.is_none_or(|(_, b)| nz < b) {
                best = Some((r, nz));
            }
            scanned += 1;
            if scanned >= PIVOT_SCAN || nz == 1 {
                break;
            }
        }
        let Some((p, _)) = best else { continue };
        if p != rank {
            let (a, b) = m.data.split_at_mut(p * row_len);
            a[rank * row_len..(rank + 1) * row_len].swap_with_slice(&mut b[..row_len]);
        }

        // Normalize the pivot row and record its nonzero columns.
        let inv = invert_slice(&field, m.entry(rank, c));
        let mut piv_cols = Vec::new();
        {
            let row = &mut m.data[rank * row_len..(rank + 1) * row_len];
            for j in c..cols {
                let e = &mut row[j * d..(j + 1) * d];
                if e.iter().all(Rat::is_zero) {
                    continue;
                }
                if d == 1 {
                    e[0] = &e[0] * &inv[0];
                } else {
                    field.mul_slices(e, &inv, &mut tmp);
                    e.clone_from_slice(&tmp);
                }
                piv_cols.push(j);
            }
        }
        let pivot_row: Vec<Rat> = m.data[rank * row_len..(rank + 1) * row_len].to_vec();

        let lo = if full { 0 } else { rank + 1 };
        let targets = (lo..rows).filter(|&r| r != rank && !m.is_entry_zero(r, c)).count();
        if targets > 0 {
            let parallel = targets * piv_cols.len() * d * d > par::PAR_THRESHOLD;
            let pr = rank;
            let f = &field;
            par::for_each_row(&mut m.data, row_len, parallel, |r, row| {
                if r < lo || r == pr {
                    return;
                }
                let factor: Vec<Rat> = row[c * d..(c + 1) * d].to_vec();
                if factor.iter().all(Rat::is_zero) {
                    return;
                }
                if d == 1 {
                    let fac = &factor[0];
                    for &j in &piv_cols {
                        row[j] = row[j].sub_mul(fac, &pivot_row[j]);
                    }
                } else {
                    let mut t = vec![Rat::ZERO; d];
                    for &j in &piv_cols {
                        f.mul_slices(&factor, &pivot_row[j * d..(j + 1) * d], &mut t);
                        for (x, y) in row[j * d..(j + 1) * d].iter_mut().zip(&t) {
                            *x = &*x - y;
                        }
                    }
                }
            });
        }
        pivots.push(c);
        rank += 1;
    }
    Echelon { pivots }
}

/// Splits the nonzero pattern of `a` into connected components of the
/// row/column bipartite graph. Returns `(rows, cols)` index lists per
/// component with at least one nonzero entry.
fn components(a: &ExactMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (rows, cols) = a.shape();
    let mut parent: Vec<usize> = (0..rows + cols).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut touched_row = vec![false; rows];
    let mut touched_col = vec![false; cols];
    for i in 0..rows {
        for j in 0..cols {
            if !a.is_entry_zero(i, j) {
                touched_row[i] = true;
                touched_col[j] = true;
                let (x, y) = (find(&mut parent, i), find(&mut parent, rows + j));
                if x != y {
                    parent[x] = y;
                }
            }
        }
    }
    let mut index = std::collections::BTreeMap::new();
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for i in (0..rows).filter(|&i| touched_row[i]) {
        let root = find(&mut parent, i);
        let k = *index.entry(root).or_insert_with(|| {
            out.push((Vec::new(), Vec::new()));
            out.len() - 1
        });
        out[k].0.push(i);
    }
    for j in (0..cols).filter(|&j| touched_col[j]) {
        let root = find(&mut parent, rows + j);
        let k = index[&root];
        out[k].1.push(j);
    }
    out
}

/// Exact rank. Block-decomposable matrices (the common case for
/// coboundaries) are split into independent components first.
pub fn rank(a: &ExactMatrix) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    let comps = components(a);
    if comps.len() <= 1 {
        let mut m = a.clone();
        return echelonize(&mut m, false).pivots.len();
    }
    let ranks = par::map(&comps, |(r, c)| {
        let mut sub = a.select_rows(r).select_columns(c);
        echelonize(&mut sub, false).pivots.len()
    });
    ranks.into_iter().sum()
}

/// Kernel basis (as columns) read off a reduced row echelon form.
///
/// Column `f` of the result belongs to the `f`-th free column; its entry at
/// that free column is 1 and its entries at the other free columns are 0.
pub(crate) fn kernel_from_rref(r: &ExactMatrix, pivots: &[usize]) -> (ExactMatrix, Vec<usize>) {
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&j| !is_pivot[j]).collect();
    let mut k = ExactMatrix::zeros(r.field(), cols, free.len());
    for (fi, &f) in free.iter().enumerate() {
        k.set_rat(f, fi, Rat::ONE);
        for (i, &p) in pivots.iter().enumerate() {
            if !r.is_entry_zero(i, f) {
                let v: Vec<Rat> = r.entry(i, f).iter().map(|x| -x).collect();
                k.entry_mut(p, fi).clone_from_slice(&v);
            }
        }
    }
    (k, free)
}

/// Basis of the null space of `a`, as columns.
pub fn kernel(a: &ExactMatrix) -> ExactMatrix {
    kernel_with_free_rows(a).0
}

/// Kernel basis together with its "free rows": the coordinates of a kernel
/// vector in this basis are its entries at those rows.
pub fn kernel_with_free_rows(a: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    if a.rows() == 0 {
        return (ExactMatrix::identity(a.field(), a.cols()), (0..a.cols()).collect());
    }
    let mut r = a.clone();
    let e = echelonize(&mut r, true);
    kernel_from_rref(&r, &e.pivots)
}

/// Basis of the column space of `a`, chosen among its own columns.
pub fn image(a: &ExactMatrix) -> ExactMatrix {
    let mut r = a.clone();
    let e = echelonize(&mut r, false);
    a.select_columns(&e.pivots)
}

/// Indices of a maximal linearly independent set of columns (greedy from the left).
pub fn independent_columns(a: &ExactMatrix) -> Vec<usize> {
    let mut r = a.clone();
    echelonize(&mut r, false).pivots
}

/// Solves `A X = B` exactly, returning `None` if some column of `B` is not
/// in the column space of `A`. Free variables are set to zero.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch { op: "solve", left: a.shape(), right: b.shape() });
    }
    let n = a.cols();
    let mut aug = ExactMatrix::hstack(&[a, b])?;
    let e = echelonize(&mut aug, true);
    if e.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = ExactMatrix::zeros(a.field(), n, b.cols());
    for (i, &p) in e.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            if !aug.is_entry_zero(i, n + j) {
                x.entry_mut(p, j).clone_from_slice(aug.entry(i, n + j));
            }
        }
    }
    Ok(Some(x))
}

/// Like [`solve`] but treats an unsolvable system as an error.
pub fn solve_exact(a: &ExactMatrix, b: &ExactMatrix, what: &str) -> Result<ExactMatrix> {
    solve(a, b)?.ok_or_else(|| Error::SolveFailed(what.to_string()))
}

/// Whether the column spaces of `a` and `b` coincide.
pub fn same_column_space(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return Ok(false);
    }
    let both = ExactMatrix::hstack(&[a, b])?;
    Ok(rank(&both) == ra)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn identity_and_zero() {
        let i3 = ExactMatrix::identity(&q(), 3);
        assert_eq!(rank(&i3), 3);
        assert_eq!(kernel(&i3).cols(), 0);
        let z = ExactMatrix::zeros(&q(), 4, 5);
        assert_eq!(rank(&z), 0);
        assert_eq!(kernel(&z).cols(), 5);
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(rank(&ExactMatrix::zeros(&q(), 0, 4)), 0);
        assert_eq!(rank(&ExactMatrix::zeros(&q(), 4, 0)), 0);
        assert_eq!(kernel(&ExactMatrix::zeros(&q(), 0, 4)).cols(), 4);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = ExactMatrix::from_i64_rows(&q(), &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let (k, free) = kernel_with_free_rows(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        assert_eq!(k.select_rows(&free), ExactMatrix::identity(&q(), 2));
    }

    #[test]
    fn block_diagonal_rank_splits() {
        let a = ExactMatrix::from_i64_rows(&q(), &[vec![1, 1, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 2, 3]]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn solve_roundtrip_and_failure() {
        let a = ExactMatrix::from_i64_rows(&q(), &[vec![2, 1], vec![1, 3], vec![1, 1]]);
        let x = ExactMatrix::from_i64_rows(&q(), &[vec![1], vec![-2]]);
        let b = a.mul(&x).unwrap();
        assert_eq!(solve(&a, &b).unwrap().unwrap(), x);
        let bad = ExactMatrix::from_i64_rows(&q(), &[vec![1], vec![0], vec![0]]);
        assert!(solve(&a, &bad).unwrap().is_none());
    }

    #[test]
    fn extension_field_rank() {
        let f = FieldSpec::real_cyclotomic(5);
        let y = f.generator();
        let one = f.one();
        // det [[1, y], [y, 1]] = 1 - y^2 = -y, nonzero.
        let rows = [[one.clone(), y.clone()], [y.clone(), f.mul(&y, &y)]];
        let m = ExactMatrix::from_fn(&f, 2, 2, |i, j| rows[i][j].clone());
        assert_eq!(rank(&m), 1);
        let rows2 = [[one.clone(), y.clone()], [y.clone(), one.clone()]];
        let m2 = ExactMatrix::from_fn(&f, 2, 2, |i, j| rows2[i][j].clone());
        assert_eq!(rank(&m2), 2);
    }
}
