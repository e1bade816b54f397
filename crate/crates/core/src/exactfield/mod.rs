//! Exact arithmetic in ℚ and ℚ(2cos(π/M)), with exact and modular linear algebra.

pub mod elim;
pub mod field;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod rational;

use std::fmt;
use std::str::FromStr;

pub use field::{field_modulus_for_labels, minimal_polynomial, FieldElement, FieldSpec};
pub use matrix::ExactMatrix;
pub use poly::Poly;
pub use rational::Rat;

use crate::error::{Error, Result};

/// How ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RankMode {
    Exact,
    Modular,
    /// Exact over extension fields and for at most [`AUTO_EXACT_COLUMNS`]
    /// columns, modular otherwise.
    #[default]
    Auto,
}

pub const AUTO_EXACT_COLUMNS: usize = 2000;

impl RankMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RankMode::Exact => "exact",
            RankMode::Modular => "modular",
            RankMode::Auto => "auto",
        }
    }

    /// Whether a matrix of this shape over `field` is reduced modularly.
    pub fn uses_modular(self, field: &FieldSpec, cols: usize) -> bool {
        match self {
            RankMode::Exact => false,
            RankMode::Modular => field.is_rational(),
            RankMode::Auto => field.is_rational() && cols > AUTO_EXACT_COLUMNS,
        }
    }
}

impl fmt::Display for RankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RankMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(RankMode::Exact),
            "modular" => Ok(RankMode::Modular),
            "auto" => Ok(RankMode::Auto),
            _ => Err(Error::Unsupported(format!("rank mode {s:?}"))),
        }
    }
}

/// A rank together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    /// True when the rank came from prime-field reduction.
    pub probabilistic: bool,
    /// False only if the primes disagreed.
    pub agreed: bool,
}

/// Rank of `a` under `mode`. Modular mode over an extension field is an error.
pub fn rank_with_mode(a: &ExactMatrix, mode: RankMode, seed: u64) -> Result<RankInfo> {
    if mode == RankMode::Modular && !a.field().is_rational() {
        return Err(Error::ModularOverExtension { degree: a.field().degree() });
    }
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(RankInfo { rank: 0, probabilistic: false, agreed: true });
    }
    if mode.uses_modular(a.field(), a.cols()) {
        let m = modular::modular_rank(a, seed)?;
        Ok(RankInfo { rank: m.rank, probabilistic: true, agreed: m.agreed })
    } else {
        Ok(RankInfo { rank: elim::rank(a), probabilistic: false, agreed: true })
    }
}

#[derive(Clone, Debug)]
pub struct RankKernelImage {
    pub rank: usize,
    /// Kernel basis as columns; absent when the rank was computed modularly.
    pub kernel: Option<ExactMatrix>,
    /// Column-space basis taken from the columns of the input; absent in modular mode.
    pub image: Option<ExactMatrix>,
    pub probabilistic: bool,
    pub agreed: bool,
}

impl RankKernelImage {
    pub fn nullity(&self, cols: usize) -> usize {
        cols - self.rank
    }
}

/// Rank with kernel and image bases. In modular mode only the rank is
/// produced, since residues cannot be lifted back to exact bases.
pub fn rank_kernel_image(a: &ExactMatrix, mode: RankMode, seed: u64) -> Result<RankKernelImage> {
    if mode == RankMode::Modular && !a.field().is_rational() {
        return Err(Error::ModularOverExtension { degree: a.field().degree() });
    }
    if mode.uses_modular(a.field(), a.cols()) {
        let info = rank_with_mode(a, mode, seed)?;
        return Ok(RankKernelImage {
            rank: info.rank,
            kernel: None,
            image: None,
            probabilistic: true,
            agreed: info.agreed,
        });
    }
    let mut r = a.clone();
    let e = elim::echelonize(&mut r, true);
    let (kernel, _) = kernel_from_parts(&r, &e.pivots);
    let image = a.select_columns(&e.pivots);
    Ok(RankKernelImage {
        rank: e.pivots.len(),
        kernel: Some(kernel),
        image: Some(image),
        probabilistic: false,
        agreed: true,
    })
}

fn kernel_from_parts(r: &ExactMatrix, pivots: &[usize]) -> (ExactMatrix, Vec<usize>) {
    if r.rows() == 0 {
        return (ExactMatrix::identity(r.field(), r.cols()), (0..r.cols()).collect());
    }
    elim::kernel_from_rref(r, pivots)
}
