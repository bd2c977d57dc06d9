//! Principal solutions and solvability verdicts.
//!
//! Every solver here follows the same recipe: compute the greatest
//! candidate X* by residuation (conjugates and min-plus products), substitute
//! it back with max-plus arithmetic, and compare with the right-hand side.
//! The equation is solvable exactly when that comparison succeeds, and in
//! that case X* is its greatest solution.
//!
//! For `⊕ₖ Aₖ ⊗ X ⊗ Bₖ = C` the candidate is
//! `X* = ⊕'ₖ Aₖ♯ ⊗' C ⊗' Bₖ♯`, which costs `O(p(m²n + mn²))`.

use crate::error::{Error, Result};
use crate::matrix::TropicalMatrix;
use crate::opcount;
use crate::semiring::ExtendedReal;

/// Default absolute tolerance for finite-vs-finite comparisons on
/// non-integral data.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Absolute tolerance for finite entries. Ignored (treated as 0) when
    /// every input entry is integral.
    pub tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl SolveOptions {
    /// The tolerance actually used: 0 for all-integral data.
    pub fn effective_tolerance(&self, integral: bool) -> f64 {
        if integral {
            0.0
        } else {
            self.tolerance
        }
    }
}

/// `⊕ₖ Aₖ ⊗ X ⊗ Bₖ = C` with `Aₖ` m×m, `Bₖ` n×n and `C` m×n.
#[derive(Debug, Clone, PartialEq)]
pub struct SylvesterInstance {
    a: Vec<TropicalMatrix>,
    b: Vec<TropicalMatrix>,
    c: TropicalMatrix,
}

impl SylvesterInstance {
    pub fn new(a: Vec<TropicalMatrix>, b: Vec<TropicalMatrix>, c: TropicalMatrix) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Instance("at least one term is required".into()));
        }
        if a.len() != b.len() {
            return Err(Error::Instance(format!(
                "{} left factors but {} right factors",
                a.len(),
                b.len()
            )));
        }
        let (m, n) = c.shape();
        for (k, ak) in a.iter().enumerate() {
            if ak.shape() != (m, m) {
                return Err(Error::Instance(format!(
                    "term {}: left factor is {}x{} but C is {m}x{n}",
                    k + 1,
                    ak.rows(),
                    ak.cols()
                )));
            }
        }
        for (k, bk) in b.iter().enumerate() {
            if bk.shape() != (n, n) {
                return Err(Error::Instance(format!(
                    "term {}: right factor is {}x{} but C is {m}x{n}",
                    k + 1,
                    bk.rows(),
                    bk.cols()
                )));
            }
        }
        Ok(Self { a, b, c })
    }

    /// The single-term equation `A ⊗ X ⊗ B = C`.
    pub fn single(a: TropicalMatrix, b: TropicalMatrix, c: TropicalMatrix) -> Result<Self> {
        Self::new(vec![a], vec![b], c)
    }

    pub fn m(&self) -> usize {
        self.c.rows()
    }

    pub fn n(&self) -> usize {
        self.c.cols()
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[TropicalMatrix] {
        &self.a
    }

    pub fn b(&self) -> &[TropicalMatrix] {
        &self.b
    }

    pub fn c(&self) -> &TropicalMatrix {
        &self.c
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TropicalMatrix, &TropicalMatrix)> {
        self.a.iter().zip(&self.b)
    }

    pub fn is_integral(&self) -> bool {
        self.c.is_integral()
            && self.a.iter().all(TropicalMatrix::is_integral)
            && self.b.iter().all(TropicalMatrix::is_integral)
    }

    /// `⊕ₖ Aₖ ⊗ X ⊗ Bₖ`.
    pub fn apply(&self, x: &TropicalMatrix) -> Result<TropicalMatrix> {
        let mut acc: Option<TropicalMatrix> = None;
        for (a, b) in self.terms() {
            let term = a.max_plus_matmul(x)?.max_plus_matmul(b)?;
            match acc.as_mut() {
                None => acc = Some(term),
                Some(s) => s.max_assign(&term)?,
            }
        }
        Ok(acc.expect("p >= 1"))
    }
}

/// Largest discrepancy between the substituted left-hand side and the
/// right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual {
    /// Largest absolute difference over cells where both sides are finite.
    Finite(f64),
    /// Some mismatched cell has an infinity on one side.
    Infinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// x* or X*. Cells with no finite constraint hold +∞.
    pub principal: TropicalMatrix,
    pub solvable: bool,
    /// Row-major sorted `(row, col)` cells where substitution differs from
    /// the right-hand side.
    pub mismatches: Vec<(usize, usize)>,
    pub residual_max_abs: Residual,
}

impl SolveReport {
    pub(crate) fn from_substitution(
        principal: TropicalMatrix,
        substituted: &TropicalMatrix,
        target: &TropicalMatrix,
        tolerance: f64,
    ) -> Result<Self> {
        let (mismatches, residual_max_abs) = compare(substituted, target, tolerance)?;
        Ok(Self {
            principal,
            solvable: mismatches.is_empty(),
            mismatches,
            residual_max_abs,
        })
    }
}

/// Cells where `lhs` and `rhs` disagree. Infinity states must match
/// exactly; finite values may differ by at most `tolerance`.
pub fn compare(
    lhs: &TropicalMatrix,
    rhs: &TropicalMatrix,
    tolerance: f64,
) -> Result<(Vec<(usize, usize)>, Residual)> {
    if lhs.shape() != rhs.shape() {
        return Err(Error::shape("substitution check", lhs.shape(), rhs.shape()));
    }
    let mut mismatches = Vec::new();
    let mut worst = 0.0f64;
    let mut infinite = false;
    for ((i, j, s), t) in lhs.indexed().zip(rhs.iter()) {
        match (s.finite(), t.finite()) {
            (Some(x), Some(y)) => {
                let d = (x - y).abs();
                worst = worst.max(d);
                if d > tolerance {
                    mismatches.push((i, j));
                }
            }
            _ if s == t => {}
            _ => {
                infinite = true;
                mismatches.push((i, j));
            }
        }
    }
    opcount::add(lhs.rows() * lhs.cols());
    let residual = if infinite {
        Residual::Infinite
    } else {
        Residual::Finite(worst)
    };
    Ok((mismatches, residual))
}

/// x* = A♯ ⊗' b, the greatest x with A ⊗ x ≤ b.
///
/// Evaluated without materializing A♯ so the oracle's large Kronecker
/// systems need only one copy of their matrix.
pub fn linear_principal_solution(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<TropicalMatrix> {
    if b.cols() != 1 || a.rows() != b.rows() {
        return Err(Error::shape(
            "linear principal solution",
            a.shape(),
            b.shape(),
        ));
    }
    let mut x = vec![ExtendedReal::POS_INF; a.cols()];
    for (row, bi) in b.iter().enumerate() {
        for (xj, &aij) in x.iter_mut().zip(a.row(row)) {
            *xj = xj.min_plus_add(aij.conjugate().min_plus_mul(bi));
        }
    }
    opcount::add(a.rows() * a.cols());
    TropicalMatrix::new(a.cols(), 1, x)
}

pub fn solve_linear(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<SolveReport> {
    solve_linear_with(a, b, &SolveOptions::default())
}

pub fn solve_linear_with(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let x = linear_principal_solution(a, b)?;
    let substituted = a.max_plus_matmul(&x)?;
    let tol = opts.effective_tolerance(a.is_integral() && b.is_integral());
    SolveReport::from_substitution(x, &substituted, b, tol)
}

/// X* = A♯ ⊗' C ⊗' B♯ for `A ⊗ X ⊗ B = C`.
pub fn axb_principal_solution(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    c: &TropicalMatrix,
) -> Result<TropicalMatrix> {
    if !a.is_square() || a.rows() != c.rows() {
        return Err(Error::shape("left factor vs C", a.shape(), c.shape()));
    }
    if !b.is_square() || b.rows() != c.cols() {
        return Err(Error::shape("right factor vs C", b.shape(), c.shape()));
    }
    a.conjugate()
        .min_plus_matmul(c)?
        .min_plus_matmul(&b.conjugate())
}

/// X* = ⊕'ₖ Aₖ♯ ⊗' C ⊗' Bₖ♯, one term at a time with a running minimum.
pub fn sylvester_principal_solution(inst: &SylvesterInstance) -> Result<TropicalMatrix> {
    let mut acc: Option<TropicalMatrix> = None;
    for (a, b) in inst.terms() {
        let term = axb_principal_solution(a, b, inst.c())?;
        match acc.as_mut() {
            None => acc = Some(term),
            Some(x) => x.min_assign(&term)?,
        }
    }
    Ok(acc.expect("p >= 1"))
}

pub fn solve_sylvester(inst: &SylvesterInstance) -> Result<SolveReport> {
    solve_sylvester_with(inst, &SolveOptions::default())
}

pub fn solve_sylvester_with(inst: &SylvesterInstance, opts: &SolveOptions) -> Result<SolveReport> {
    let x = sylvester_principal_solution(inst)?;
    let substituted = inst.apply(&x)?;
    let tol = opts.effective_tolerance(inst.is_integral());
    SolveReport::from_substitution(x, &substituted, inst.c(), tol)
}

/// The two-term instance behind `A ⊗ X ⊕ X ⊗ B = C`: (A, E) and (E, B).
pub fn two_sided_instance(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    c: &TropicalMatrix,
) -> Result<SylvesterInstance> {
    SylvesterInstance::new(
        vec![a.clone(), TropicalMatrix::unit(c.rows())],
        vec![TropicalMatrix::unit(c.cols()), b.clone()],
        c.clone(),
    )
}

/// Solves `A ⊗ X ⊕ X ⊗ B = C`.
pub fn solve_two_sided_special(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    c: &TropicalMatrix,
) -> Result<SolveReport> {
    solve_two_sided_special_with(a, b, c, &SolveOptions::default())
}

pub fn solve_two_sided_special_with(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    c: &TropicalMatrix,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    solve_sylvester_with(&two_sided_instance(a, b, c)?, opts)
}

/// Every row and every column has at least one finite entry.
pub fn is_doubly_r_astic(a: &TropicalMatrix) -> bool {
    let mut col_ok = vec![false; a.cols()];
    for i in 0..a.rows() {
        let mut row_ok = false;
        for (j, v) in a.row(i).iter().enumerate() {
            if v.is_finite() {
                row_ok = true;
                col_ok[j] = true;
            }
        }
        if !row_ok {
            return false;
        }
    }
    col_ok.into_iter().all(|ok| ok)
}
