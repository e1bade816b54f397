//! Künneth, split additivity and the comparison with the independence complex.

use serde_json::json;

use crate::cochain::{build_coxeter_complex, coxeter_cohomology_dims, simplicial_reduced_complex};
use crate::coxeter::CoxeterGraph;
use crate::error::Result;
use crate::exactfield::{ExactMatrix, RankMode, Rat};
use crate::report::Check;
use crate::representations::{direct_sum, external_tensor, reflection, sign, trivial, zero, Representation};

/// Degreewise convolution of two dimension sequences.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn padded_eq(a: &[usize], b: &[usize]) -> bool {
    (0..a.len().max(b.len())).all(|i| a.get(i).copied().unwrap_or(0) == b.get(i).copied().unwrap_or(0))
}

/// `H•_C(G_1 × G_2, V_1 ⊠ V_2)` against the convolution of the factors.
pub fn kunneth_check(r1: &Representation, r2: &Representation) -> Result<Check> {
    let h1 = coxeter_cohomology_dims(r1)?;
    let h2 = coxeter_cohomology_dims(r2)?;
    let prod = external_tensor(r1, r2)?;
    let h = coxeter_cohomology_dims(&prod)?;
    let expected = convolve(&h1, &h2);
    Ok(Check::new(
        format!("kunneth {} [{}] x {} [{}]", r1.graph().name(), r1.label(), r2.graph().name(), r2.label()),
        padded_eq(&h, &expected),
        json!({"factor_1": h1, "factor_2": h2, "expected": expected, "computed": h}),
    ))
}

/// `H•_C(G, A_1 ⊕ A_2)` against the degreewise sum.
pub fn split_additivity_check(r1: &Representation, r2: &Representation) -> Result<Check> {
    let h1 = coxeter_cohomology_dims(r1)?;
    let h2 = coxeter_cohomology_dims(r2)?;
    let sum = direct_sum(r1, r2)?;
    let h = coxeter_cohomology_dims(&sum)?;
    let len = h1.len().max(h2.len());
    let expected: Vec<usize> =
        (0..len).map(|i| h1.get(i).copied().unwrap_or(0) + h2.get(i).copied().unwrap_or(0)).collect();
    Ok(Check::new(
        format!("split {} [{} + {}]", r1.graph().name(), r1.label(), r2.label()),
        padded_eq(&h, &expected),
        json!({"summand_1": h1, "summand_2": h2, "expected": expected, "computed": h}),
    ))
}

/// Trivial coefficients against reduced cohomology of the independence
/// complex, plus the rescaling `v ↦ v / 2^k` as an explicit chain isomorphism.
pub fn geometric_check(g: &CoxeterGraph, d: usize) -> Result<Check> {
    let rep = trivial(g, d);
    let cox = build_coxeter_complex(&rep)?;
    let simp = simplicial_reduced_complex(g, d)?;
    let hc = cox.complex.homology(RankMode::Exact, 0)?.dims;
    let hs = simp.homology(RankMode::Exact, 0)?.dims;
    let mut iso = cox.complex.dims == simp.dims;
    if iso {
        // With trivial coefficients every block basis is the identity, so
        // both complexes share the basis indexed by (T, coordinate).
        let field = simp.field.clone();
        let scale = |k: usize| {
            let mut m = ExactMatrix::zeros(&field, simp.dims[k], simp.dims[k]);
            let f = Rat::new(1, 1i64 << k);
            for i in 0..simp.dims[k] {
                m.set_rat(i, i, f.clone());
            }
            m
        };
        for (k, dc) in cox.complex.diffs.iter().enumerate() {
            let lhs = simp.diffs[k].mul(&scale(k))?;
            let rhs = scale(k + 1).mul(dc)?;
            iso &= lhs == rhs;
        }
    }
    Ok(Check::new(
        format!("independence complex {} (coefficients Q^{d})", g.name()),
        padded_eq(&hc, &hs) && iso,
        json!({"coxeter": hc, "reduced_simplicial_shifted": hs, "rescaling_is_chain_isomorphism": iso}),
    ))
}

/// The ten product cases of the structural suite.
pub fn default_kunneth_cases() -> Result<Vec<(Representation, Representation)>> {
    use CoxeterGraph as G;
    let refl = |g: G| reflection(&g);
    Ok(vec![
        (refl(G::type_a(1))?, refl(G::type_a(1))?),
        (refl(G::type_a(2))?, refl(G::type_a(3))?),
        (trivial(&G::type_a(2), 1), trivial(&G::type_a(2), 1)),
        (refl(G::type_a(3))?, refl(G::type_a(1))?),
        (refl(G::type_a(3))?, trivial(&G::type_a(3), 1)),
        (refl(G::type_b(3))?, trivial(&G::type_a(2), 1)),
        (refl(G::type_h(3))?, refl(G::type_a(1))?),
        (refl(G::type_d(4))?, refl(G::type_a(1))?),
        (trivial(&G::type_a(5), 1), refl(G::type_a(3))?),
        (refl(G::type_b(2))?, refl(G::type_h(2))?),
    ])
}

/// The five direct-sum cases of the structural suite.
pub fn default_split_cases() -> Result<Vec<(Representation, Representation)>> {
    use CoxeterGraph as G;
    let a3 = G::type_a(3);
    let a2 = G::type_a(2);
    let a4 = G::type_a(4);
    let d4 = G::type_d(4);
    let b3 = G::type_b(3);
    Ok(vec![
        (reflection(&a3)?, trivial(&a3, 1)),
        (reflection(&a2)?, reflection(&a2)?),
        (reflection(&a4)?, zero(&a4)),
        (reflection(&d4)?, trivial(&d4, 1)),
        (reflection(&b3)?, sign(&b3)),
    ])
}

/// `(representation, s)` pairs for the long exact sequence suite:
/// `A_n` at `s_{n-2}` for `n = 4..=7`, `D_n` at the branch vertex for
/// `n = 4..=6`, and `E_6` at `s_4` (indices are 0-based).
pub fn default_les_cases() -> Result<Vec<(Representation, usize)>> {
    use CoxeterGraph as G;
    let mut out = Vec::new();
    for n in 4..=7 {
        out.push((reflection(&G::type_a(n))?, n - 3));
    }
    for n in 4..=6 {
        out.push((reflection(&G::type_d(n))?, n - 3));
    }
    out.push((reflection(&G::type_e(6))?, 3));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution() {
        assert_eq!(convolve(&[0, 1], &[0, 1]), vec![0, 0, 1]);
        assert_eq!(convolve(&[1], &[2, 3]), vec![2, 3]);
    }
}
