//! Cohomology tables for trivial and reflection coefficients.

use serde::{Deserialize, Serialize};

use crate::cochain::{build_coxeter_complex, cohomology};
use crate::coxeter::{classify, CoxeterGraph};
use crate::error::{Error, Result};
use crate::exactfield::RankMode;
use crate::par;
use crate::representations::{reflection, trivial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    ExactMatch,
    MatchWithDegreeShift { shift: i64 },
    DimensionMismatch { expected: Vec<usize>, computed: Vec<usize> },
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        !matches!(self, Verdict::DimensionMismatch { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableComparison {
    pub group: String,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
    pub space_dims: Vec<usize>,
    pub euler: i64,
    /// Euler characteristic of the spaces equals that of the cohomology.
    pub euler_consistent: bool,
    pub verdict: Verdict,
}

impl TableComparison {
    pub fn nonzero_multisets_agree(&self) -> bool {
        nonzero_sorted(&self.expected) == nonzero_sorted(&self.computed)
    }
}

fn nonzero_sorted(v: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = v.iter().copied().filter(|&d| d > 0).collect();
    out.sort_unstable();
    out
}

fn at(v: &[usize], i: i64) -> usize {
    if i < 0 {
        0
    } else {
        v.get(i as usize).copied().unwrap_or(0)
    }
}

/// Compares two dimension sequences indexed from degree 0, zero padded.
///
/// A shift `k` means `computed[i] = expected[i - k]` for every `i`; the
/// smallest `|k|` is reported, positive first.
pub fn compare_dims(expected: &[usize], computed: &[usize]) -> Verdict {
    let len = expected.len().max(computed.len()) as i64;
    let agree = |k: i64| (-len..2 * len).all(|i| at(computed, i) == at(expected, i - k));
    if agree(0) {
        return Verdict::ExactMatch;
    }
    if expected.iter().any(|&d| d > 0) {
        for mag in 1..=len {
            for k in [mag, -mag] {
                if agree(k) {
                    return Verdict::MatchWithDegreeShift { shift: k };
                }
            }
        }
    }
    Verdict::DimensionMismatch { expected: expected.to_vec(), computed: computed.to_vec() }
}

/// Places `(degree, dim)` pairs into a zero vector of length `len` (extended if needed).
fn sparse_to_vec(len: usize, entries: &[(usize, usize)]) -> Vec<usize> {
    let need = entries.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let mut v = vec![0; len.max(need)];
    for &(i, d) in entries {
        v[i] = d;
    }
    v
}

/// `dim H^i_C(A_n, ℚ)`: 1 when `n ∈ {3i-1, 3i}`, else 0.
pub fn trivial_expected(n: usize) -> Vec<(usize, usize)> {
    (0..=n).filter(|&i| i >= 1 && (n + 1 == 3 * i || n == 3 * i)).map(|i| (i, 1)).collect()
}

/// Nonzero entries `(degree, dim)` predicted for the reflection representation.
pub fn reflection_expected(g: &CoxeterGraph) -> Result<Vec<(usize, usize)>> {
    let kind = classify(g);
    let n = g.n();
    let family = kind.chars().next().unwrap_or('?');
    let case = |i: usize, d: usize| if d == 0 { vec![] } else { vec![(i, d)] };
    match (family, kind.as_str()) {
        (_, "E6") => Ok(vec![(2, 1)]),
        (_, "E7") => Ok(vec![(2, 2)]),
        (_, "E8") => Ok(vec![(1, 1)]),
        ('D', _) if n >= 4 => Ok(match n % 3 {
            0 => case((n - 3) / 3, (n - 3) / 3 + 2),
            1 => case((n - 4) / 3, 2 * ((n - 4) / 3) + 3),
            _ => case((n - 5) / 3, (n - 5) / 3 + 1),
        }),
        ('A' | 'B' | 'F' | 'H' | 'I' | 'G', _) if !kind.contains('x') => Ok(match n % 3 {
            2 => case((n + 1) / 3, (n + 1) / 3 - 1),
            0 => case(n / 3, 2 * (n / 3)),
            _ => case((n - 1) / 3, (n - 1) / 3 + 1),
        }),
        _ => Err(Error::Unsupported(format!("no tabulated reflection cohomology for {kind}"))),
    }
}

/// A_1 … A_8, B_2 … B_7, D_4 … D_8, E_6 … E_8, F_4, H_2 … H_4, I_2(5) … I_2(8).
pub fn default_reflection_groups() -> Vec<CoxeterGraph> {
    let mut gs = Vec::new();
    gs.extend((1..=8).map(CoxeterGraph::type_a));
    gs.extend((2..=7).map(CoxeterGraph::type_b));
    gs.extend((4..=8).map(CoxeterGraph::type_d));
    gs.extend((6..=8).map(CoxeterGraph::type_e));
    gs.push(CoxeterGraph::type_f4());
    gs.extend((2..=4).map(CoxeterGraph::type_h));
    gs.extend((5..=8).map(CoxeterGraph::type_i2));
    gs
}

fn compare_one(group: &str, rep: &crate::representations::Representation, expected: &[(usize, usize)]) -> Result<TableComparison> {
    let c = build_coxeter_complex(rep)?;
    let h = cohomology(&c, RankMode::Exact, 0)?;
    let expected = sparse_to_vec(h.dims.len(), expected);
    let space_euler = crate::cochain::alternating_sum(0, &h.space_dims);
    Ok(TableComparison {
        group: group.to_string(),
        verdict: compare_dims(&expected, &h.dims),
        expected,
        computed: h.dims,
        space_dims: h.space_dims,
        euler: h.euler,
        euler_consistent: space_euler == h.euler,
    })
}

/// `H•_C(A_n, ℚ)` against the closed formula for `n = 1..=n_max`.
pub fn verify_trivial_table(n_max: usize) -> Result<Vec<TableComparison>> {
    if !(1..=12).contains(&n_max) {
        return Err(Error::Unsupported(format!("n-max must lie in 1..=12, got {n_max}")));
    }
    let ns: Vec<usize> = (1..=n_max).collect();
    par::map(&ns, |&n| {
        let g = CoxeterGraph::type_a(n);
        compare_one(g.name(), &trivial(&g, 1), &trivial_expected(n))
    })
    .into_iter()
    .collect()
}

/// `H•_C(G, V)` for reflection representations against the tabulated cases.
pub fn verify_reflection_table(groups: &[CoxeterGraph]) -> Result<Vec<TableComparison>> {
    par::map(groups, |g| {
        if g.has_infinite_label() {
            return Err(Error::Unsupported(format!("{} is not a finite Coxeter group", g.name())));
        }
        let expected = reflection_expected(g)?;
        compare_one(g.name(), &reflection(g)?, &expected)
    })
    .into_iter()
    .collect()
}
