//! Dense univariate polynomials over ℚ, lowest coefficient first.

use super::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<Rat>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly(vec![c]).trimmed()
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Poly {
        let mut v = vec![Rat::ZERO; k + 1];
        v[k] = Rat::ONE;
        Poly(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Poly {
        Poly(coeffs.iter().map(|&c| Rat::int(c)).collect()).trimmed()
    }

    pub fn trimmed(mut self) -> Poly {
        while self.0.last().is_some_and(Rat::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &Rat {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.get(k).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect()).trimmed()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect()).trimmed()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::ZERO; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly(out).trimmed()
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.lead().recip();
        let mut r = self.0.clone();
        let mut q = vec![Rat::ZERO; self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] * &lead_inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (k, b) in divisor.0.iter().enumerate() {
                    r[shift + k] = r[shift + k].sub_mul(&c, b);
                }
                q[shift] = c;
            }
            r.pop();
        }
        (Poly(q).trimmed(), Poly(r).trimmed())
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        let l = self.lead().recip();
        self.scale(&l)
    }

    pub fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(k, c)| c * &Rat::int(k as i64)).collect()).trimmed()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and
    /// `s * self ≡ g (mod modulus)`.
    pub fn ext_gcd_mod(&self, modulus: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (Poly::zero(), Poly::constant(Rat::ONE));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let l = r0.lead().recip();
        (r0.scale(&l), s0.scale(&l))
    }

    /// Square-free part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::ZERO, |acc, c| &(&acc * x) + c)
    }

    /// Integer coefficients, when all coefficients are integers fitting in `i64`.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Rat::to_i64).collect()
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

/// The cyclotomic polynomial Φ_n, by exact division of `x^n - 1`.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n >= 1);
    let mut p = Poly::monomial(n as usize).sub(&Poly::constant(Rat::ONE));
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = p.div_rem(&cyclotomic(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(10), Poly::from_i64(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn ext_gcd_gives_inverse() {
        let m = Poly::from_i64(&[-1, -1, 1]);
        let a = Poly::from_i64(&[3, 2]);
        let (g, s) = a.ext_gcd_mod(&m);
        assert_eq!(g, Poly::constant(Rat::ONE));
        assert_eq!(s.mul(&a).rem(&m), Poly::constant(Rat::ONE));
    }

    #[test]
    fn squarefree_of_power() {
        let p = Poly::from_i64(&[-2, 0, 1]);
        let cube = p.mul(&p).mul(&p);
        assert_eq!(cube.squarefree_part(), p);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(Poly::from_i64(&[-1, -1, 1]).display("x"), "x^2 - x - 1");
        assert_eq!(Poly::from_i64(&[2, 1]).display("x"), "x + 2");
    }
}
