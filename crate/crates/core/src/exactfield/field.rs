//! The real cyclotomic fields ℚ(2cos(π/M)).

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::poly::{cyclotomic, Poly};
use super::rational::Rat;
use crate::error::{Error, Result};

/// `ℚ(y)` with `y = 2cos(π/M)`, elements stored as residues modulo the
/// minimal polynomial of `y`. Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    m: u64,
    minpoly: Poly,
    degree: usize,
}

/// An element of a [`FieldSpec`]: residue coefficients in `y`, lowest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(pub(crate) Vec<Rat>);

impl FieldElement {
    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.0.iter().skip(1).all(Rat::is_zero) {
            Some(self.0[0].clone())
        } else {
            None
        }
    }
}

/// Monic minimal polynomial of `2cos(π/M)` over ℚ.
///
/// Computed as the square-free part of the characteristic polynomial of
/// multiplication by `z + z^{-1}` on `ℚ[z]/Φ_{2M}(z)`; that characteristic
/// polynomial is a power of the minimal polynomial.
pub fn minimal_polynomial(m: u64) -> Poly {
    assert!(m >= 1, "M must be positive");
    let phi = cyclotomic(2 * m);
    let d = phi.degree().unwrap();
    // z^{-1} = z^{2M-1} modulo Φ_{2M}
    let w = Poly::monomial(1).add(&Poly::monomial(2 * m as usize - 1)).rem(&phi);
    let mut mat = vec![vec![Rat::ZERO; d]; d];
    for j in 0..d {
        let col = w.mul(&Poly::monomial(j)).rem(&phi);
        for (i, row) in mat.iter_mut().enumerate() {
            row[j] = col.coeff(i);
        }
    }
    charpoly(&mat).squarefree_part()
}

/// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier.
fn charpoly(a: &[Vec<Rat>]) -> Poly {
    let n = a.len();
    let mut coeffs = vec![Rat::ZERO; n + 1];
    coeffs[n] = Rat::ONE;
    let mut mk = vec![vec![Rat::ZERO; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rat::ZERO; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rat::ZERO;
                for (l, mkl) in mk.iter().enumerate() {
                    if !a[i][l].is_zero() && !mkl[j].is_zero() {
                        acc = &acc + &(&a[i][l] * &mkl[j]);
                    }
                }
                if i == j {
                    acc = &acc + &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        mk = next;
        let mut tr = Rat::ZERO;
        for i in 0..n {
            for l in 0..n {
                tr = &tr + &(&a[i][l] * &mk[l][i]);
            }
        }
        coeffs[n - k] = -(&tr / &Rat::int(k as i64));
    }
    Poly(coeffs).trimmed()
}

/// Smallest admissible `M` for a set of Coxeter labels: the lcm of the
/// labels whose cosine is irrational. Labels 2 and 3 (and ∞) contribute
/// rational constants and leave `M` alone.
pub fn field_modulus_for_labels(labels: impl IntoIterator<Item = u64>) -> u64 {
    labels.into_iter().filter(|&m| m > 3).fold(1, |acc, m| acc.lcm(&m))
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec::real_cyclotomic(1)
    }

    pub fn real_cyclotomic(m: u64) -> FieldSpec {
        let minpoly = minimal_polynomial(m);
        let degree = minpoly.degree().unwrap();
        FieldSpec(Arc::new(Inner { m, minpoly, degree }))
    }

    pub fn m(&self) -> u64 {
        self.0.m
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn minpoly(&self) -> &Poly {
        &self.0.minpoly
    }

    pub fn is_rational(&self) -> bool {
        self.0.degree == 1
    }

    /// Two specs describe the same field (every degree-1 spec is ℚ).
    pub fn same_field(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.is_rational() && other.is_rational()) || self.m() == other.m()
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.m(), right: other.m() })
        }
    }

    /// Whether every element of `other` embeds into this field.
    pub fn contains(&self, other: &FieldSpec) -> bool {
        other.is_rational() || self.m().is_multiple_of(other.m())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![Rat::ZERO; self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rat(Rat::ONE)
    }

    pub fn from_rat(&self, r: Rat) -> FieldElement {
        let mut v = vec![Rat::ZERO; self.degree()];
        v[0] = r;
        FieldElement(v)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_rat(Rat::int(n))
    }

    /// Reduces an arbitrary polynomial in `y` into canonical residue form.
    pub fn from_poly(&self, p: &Poly) -> FieldElement {
        let r = p.rem(self.minpoly());
        let mut v = r.0;
        v.resize(self.degree(), Rat::ZERO);
        FieldElement(v)
    }

    pub fn to_poly(&self, a: &FieldElement) -> Poly {
        Poly(a.0.clone()).trimmed()
    }

    /// The generator `y = 2cos(π/M)`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&Poly::monomial(1))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = vec![Rat::ZERO; self.degree()];
        self.mul_slices(&a.0, &b.0, &mut out);
        FieldElement(out)
    }

    /// `out = a * b` on raw residue slices of length `degree`.
    pub fn mul_slices(&self, a: &[Rat], b: &[Rat], out: &mut [Rat]) {
        let d = self.degree();
        if d == 1 {
            out[0] = &a[0] * &b[0];
            return;
        }
        let mut t = vec![Rat::ZERO; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    t[i + j] = &t[i + j] + &(x * y);
                }
            }
        }
        let mp = &self.minpoly().0;
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut t[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                t[k - d + i] = t[k - d + i].sub_mul(&c, &mp[i]);
            }
        }
        for (o, v) in out.iter_mut().zip(t) {
            *o = v;
        }
    }

    pub fn inv(&self, a: &FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "inverse of zero");
        if self.degree() == 1 {
            return FieldElement(vec![a.0[0].recip()]);
        }
        let (g, s) = self.to_poly(a).ext_gcd_mod(self.minpoly());
        debug_assert_eq!(g, Poly::constant(Rat::ONE));
        self.from_poly(&s)
    }

    pub fn pow(&self, a: &FieldElement, e: u32) -> FieldElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `2cos(π/m)` inside this field, via `P_0 = 2, P_1 = y,
    /// P_{k+1} = y P_k - P_{k-1}` evaluated at `k = M/m`.
    ///
    /// The rational values for `m ≤ 3` are available in every field.
    pub fn embed_cos(&self, m: u64) -> Result<FieldElement> {
        match m {
            0 => return Err(Error::NotDivisor { m, field_m: self.m() }),
            1 => return Ok(self.from_i64(-2)),
            2 => return Ok(self.zero()),
            3 => return Ok(self.one()),
            _ => {}
        }
        if !self.m().is_multiple_of(m) {
            return Err(Error::NotDivisor { m, field_m: self.m() });
        }
        let k = self.m() / m;
        let y = self.generator();
        let (mut prev, mut cur) = (self.from_i64(2), y.clone());
        for _ in 1..k {
            let next = self.sub(&self.mul(&y, &cur), &prev);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Re-expresses an element of `from` inside this field.
    pub fn lift(&self, a: &FieldElement, from: &FieldSpec) -> Result<FieldElement> {
        if from.is_rational() {
            return Ok(self.from_rat(a.0[0].clone()));
        }
        if self.m() == from.m() {
            return Ok(a.clone());
        }
        let y = self.embed_cos(from.m())?;
        let mut acc = self.zero();
        for c in a.0.iter().rev() {
            acc = self.add(&self.mul(&acc, &y), &self.from_rat(c.clone()));
        }
        Ok(acc)
    }

    pub fn to_f64(&self, a: &FieldElement) -> f64 {
        let y = 2.0 * (std::f64::consts::PI / self.m() as f64).cos();
        Poly(a.0.clone()).eval_f64(y)
    }

    pub fn display(&self, a: &FieldElement) -> String {
        self.to_poly(a).display("y")
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(2cos(pi/{})) [{}]", self.m(), self.minpoly().display("x"))
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_phi(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn small_minimal_polynomials() {
        assert_eq!(minimal_polynomial(1), Poly::from_i64(&[2, 1]));
        assert_eq!(minimal_polynomial(2), Poly::from_i64(&[0, 1]));
        assert_eq!(minimal_polynomial(3), Poly::from_i64(&[-1, 1]));
        assert_eq!(minimal_polynomial(4), Poly::from_i64(&[-2, 0, 1]));
        assert_eq!(minimal_polynomial(5), Poly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn minimal_polynomials_vanish_numerically_with_expected_degree() {
        for m in 1..=30u64 {
            let p = minimal_polynomial(m);
            let y = 2.0 * (std::f64::consts::PI / m as f64).cos();
            assert!(p.eval_f64(y).abs() < 1e-9, "M={m}: {}", p.display("x"));
            assert!(p.to_i64().is_some(), "M={m} has non-integer coefficients");
            let expected = if m <= 2 { 1 } else { euler_phi(2 * m) / 2 };
            assert_eq!(p.degree().unwrap() as u64, expected, "M={m}");
        }
    }

    #[test]
    fn embedded_cosines_satisfy_their_own_minimal_polynomials() {
        for big_m in 1..=30u64 {
            let f = FieldSpec::real_cyclotomic(big_m);
            for m in (1..=big_m).filter(|m| big_m % m == 0) {
                let c = f.embed_cos(m).unwrap();
                let mp = minimal_polynomial(m);
                let mut acc = f.zero();
                for coef in mp.0.iter().rev() {
                    acc = f.add(&f.mul(&acc, &c), &f.from_rat(coef.clone()));
                }
                assert!(acc.is_zero(), "M={big_m}, m={m}");
                let want = 2.0 * (std::f64::consts::PI / m as f64).cos();
                assert!((f.to_f64(&c) - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn embed_cos_examples() {
        let f = FieldSpec::real_cyclotomic(5);
        assert_eq!(f.embed_cos(5).unwrap(), f.generator());
        assert!(f.embed_cos(2).unwrap().is_zero());
        let q = FieldSpec::real_cyclotomic(3);
        assert_eq!(q.embed_cos(3).unwrap(), q.one());
        assert!(matches!(f.embed_cos(7), Err(Error::NotDivisor { .. })));
    }

    #[test]
    fn inverses_in_q_sqrt5() {
        let f = FieldSpec::real_cyclotomic(5);
        let a = f.add(&f.generator(), &f.from_i64(3));
        let b = f.inv(&a);
        assert_eq!(f.mul(&a, &b), f.one());
    }

    #[test]
    fn lifting_between_fields() {
        let small = FieldSpec::real_cyclotomic(4);
        let big = FieldSpec::real_cyclotomic(8);
        let y = small.generator();
        let lifted = big.lift(&y, &small).unwrap();
        assert_eq!(big.mul(&lifted, &lifted), big.from_i64(2));
    }
}
