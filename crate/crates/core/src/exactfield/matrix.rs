use std::fmt;

use super::field::{FieldElement, FieldSpec};
use super::rational::Rat;
use crate::error::{Error, Result};
use crate::par;

/// Dense row-major matrix over a [`FieldSpec`].
///
/// Entries are stored flat: entry `(i, j)` occupies the residue slice
/// `data[(i * cols + j) * degree ..][..degree]`.
#[derive(Clone)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    pub(crate) data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Rat::ZERO; rows * cols * field.degree()],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set_rat(i, i, Rat::ONE);
        }
        m
    }

    /// Matrix with rational entries given row by row.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<Rat>]) -> ExactMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set_rat(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64_rows(field: &FieldSpec, rows: &[Vec<i64>]) -> ExactMatrix {
        let rows: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect();
        ExactMatrix::from_rows(field, &rows)
    }

    pub fn from_fn(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                m.set(i, j, &v);
            }
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(field: &FieldSpec, perm: &[usize]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, perm.len(), perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m.set_rat(i, j, Rat::ONE);
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub(crate) fn degree(&self) -> usize {
        self.field.degree()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[Rat] {
        let d = self.degree();
        let k = (i * self.cols + j) * d;
        &self.data[k..k + d]
    }

    #[inline]
    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut [Rat] {
        let d = self.degree();
        let k = (i * self.cols + j) * d;
        &mut self.data[k..k + d]
    }

    #[inline]
    pub fn is_entry_zero(&self, i: usize, j: usize) -> bool {
        self.entry(i, j).iter().all(Rat::is_zero)
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        FieldElement(self.entry(i, j).to_vec())
    }

    pub fn set(&mut self, i: usize, j: usize, v: &FieldElement) {
        self.entry_mut(i, j).clone_from_slice(&v.0);
    }

    pub fn set_rat(&mut self, i: usize, j: usize, v: Rat) {
        let e = self.entry_mut(i, j);
        for x in e.iter_mut() {
            *x = Rat::ZERO;
        }
        e[0] = v;
    }

    /// Rational value of an entry, if it lies in ℚ.
    pub fn get_rat(&self, i: usize, j: usize) -> Option<Rat> {
        let e = self.entry(i, j);
        e[1..].iter().all(Rat::is_zero).then(|| e[0].clone())
    }

    pub fn row_slice(&self, i: usize) -> &[Rat] {
        let l = self.cols * self.degree();
        &self.data[i * l..(i + 1) * l]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn nnz(&self) -> usize {
        (0..self.rows).map(|i| (0..self.cols).filter(|&j| !self.is_entry_zero(i, j)).count()).sum()
    }

    pub fn rational_entries(&self) -> impl Iterator<Item = &Rat> {
        self.data.iter()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_entry_zero(i, j) {
                    t.entry_mut(j, i).clone_from_slice(self.entry(i, j));
                }
            }
        }
        t
    }

    fn check_same_shape(&self, other: &ExactMatrix, op: &'static str) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> ExactMatrix {
        let data = self.data.iter().map(|a| -a).collect();
        ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_rat(&self, c: &Rat) -> ExactMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &FieldElement) -> ExactMatrix {
        if let Some(r) = c.as_rational() {
            return self.scale_rat(&r);
        }
        let mut out = self.clone();
        let d = self.degree();
        for (o, a) in out.data.chunks_mut(d).zip(self.data.chunks(d)) {
            self.field.mul_slices(a, &c.0, o);
        }
        out
    }

    /// Product skipping zero entries of `self`; cost is `nnz(self) * other.cols`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.field.ensure_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let d = self.degree();
        let mut out = ExactMatrix::zeros(&self.field, self.rows, other.cols);
        let row_len = other.cols * d;
        let parallel = self.rows * other.cols > par::PAR_THRESHOLD;
        let field = &self.field;
        par::for_each_row(&mut out.data, row_len, parallel, |i, orow| {
            let mut tmp = vec![Rat::ZERO; d];
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.iter().all(Rat::is_zero) {
                    continue;
                }
                let brow = other.row_slice(k);
                for j in 0..other.cols {
                    let b = &brow[j * d..(j + 1) * d];
                    if b.iter().all(Rat::is_zero) {
                        continue;
                    }
                    let o = &mut orow[j * d..(j + 1) * d];
                    if d == 1 {
                        o[0] = &o[0] + &(&a[0] * &b[0]);
                    } else {
                        field.mul_slices(a, b, &mut tmp);
                        for (x, y) in o.iter_mut().zip(&tmp) {
                            *x = &*x + y;
                        }
                    }
                }
            }
        });
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.field.ensure_same(&other.field)?;
        let d = self.degree();
        let (r2, c2) = other.shape();
        let mut out = ExactMatrix::zeros(&self.field, self.rows * r2, self.cols * c2);
        let mut tmp = vec![Rat::ZERO; d];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.entry(i, j);
                if a.iter().all(Rat::is_zero) {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.entry(k, l);
                        if b.iter().all(Rat::is_zero) {
                            continue;
                        }
                        self.field.mul_slices(a, b, &mut tmp);
                        out.entry_mut(i * r2 + k, j * c2 + l).clone_from_slice(&tmp);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(parts: &[&ExactMatrix]) -> Result<ExactMatrix> {
        let first = parts.first().expect("hstack of nothing");
        let rows = first.rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = ExactMatrix::zeros(&first.field, rows, cols);
        let mut off = 0;
        for p in parts {
            first.field.ensure_same(&p.field)?;
            if p.rows != rows {
                return Err(Error::DimensionMismatch { op: "hstack", left: first.shape(), right: p.shape() });
            }
            out.set_block(0, off, p);
            off += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&ExactMatrix]) -> Result<ExactMatrix> {
        let first = parts.first().expect("vstack of nothing");
        let cols = first.cols;
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols * first.degree());
        for p in parts {
            first.field.ensure_same(&p.field)?;
            if p.cols != cols {
                return Err(Error::DimensionMismatch { op: "vstack", left: first.shape(), right: p.shape() });
            }
            data.extend_from_slice(&p.data);
        }
        Ok(ExactMatrix { field: first.field.clone(), rows, cols, data })
    }

    pub fn block_diag(field: &FieldSpec, parts: &[&ExactMatrix]) -> ExactMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = ExactMatrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        let d = self.degree();
        for i in 0..block.rows {
            let src = block.row_slice(i);
            let start = ((r0 + i) * self.cols + c0) * d;
            self.data[start..start + block.cols * d].clone_from_slice(src);
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ExactMatrix {
        let d = self.degree();
        let mut out = ExactMatrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            let start = ((r0 + i) * self.cols + c0) * d;
            out.data[i * cols * d..(i + 1) * cols * d].clone_from_slice(&self.data[start..start + cols * d]);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.entry_mut(i, jj).clone_from_slice(self.entry(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let l = self.cols * self.degree();
        let mut data = Vec::with_capacity(idx.len() * l);
        for &i in idx {
            data.extend_from_slice(self.row_slice(i));
        }
        ExactMatrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    /// Re-expresses every entry in a larger field.
    pub fn lift(&self, target: &FieldSpec) -> Result<ExactMatrix> {
        if self.field.same_field(target) && self.degree() == target.degree() {
            let mut m = self.clone();
            m.field = target.clone();
            return Ok(m);
        }
        let mut out = ExactMatrix::zeros(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_entry_zero(i, j) {
                    let v = target.lift(&self.get(i, j), &self.field)?;
                    out.set(i, j, &v);
                }
            }
        }
        Ok(out)
    }

    /// Whether every row and column holds exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let mut col_seen = vec![false; self.cols];
        for i in 0..self.rows {
            let mut count = 0;
            for j in 0..self.cols {
                if !self.is_entry_zero(i, j) {
                    count += 1;
                    if count > 1 || col_seen[j] {
                        return false;
                    }
                    col_seen[j] = true;
                }
            }
            if count != 1 {
                return false;
            }
        }
        true
    }

    pub fn pow(&self, e: u32) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Approximate heap footprint of a `rows x cols` matrix over `field`.
    pub fn estimated_bytes(field: &FieldSpec, rows: usize, cols: usize) -> u64 {
        (rows as u64) * (cols as u64) * (field.degree() as u64) * std::mem::size_of::<Rat>() as u64
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.shape() == other.shape() && self.data == other.data
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        if self.rows * self.cols <= 400 {
            for i in 0..self.rows {
                let row: Vec<String> = (0..self.cols).map(|j| self.field.display(&self.get(i, j))).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}
