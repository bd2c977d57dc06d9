//! Brute-force reference path.
//!
//! Rewrites `⊕ₖ Aₖ ⊗ X ⊗ Bₖ = C` as the single max-plus linear system
//! `(⊕ₖ Bₖᵀ ⊠ Aₖ) ⊗ vec(X) = vec(C)` and solves that with the generic
//! linear-system residuation. It costs `O(p m² n²)` time and `O(m² n²)`
//! memory, and exists only to cross-check the fast path.

use crate::error::{Error, Result};
use crate::matrix::TropicalMatrix;
use crate::semiring::ExtendedReal;
use crate::solver::{
    compare, linear_principal_solution, SolveOptions, SolveReport, SylvesterInstance,
};

/// Default cap on `m·n`, the side length of the Kronecker system.
pub const DEFAULT_MAX_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Largest `m·n` the oracle will materialize.
    pub max_dim: usize,
    pub solve: SolveOptions,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            max_dim: DEFAULT_MAX_DIM,
            solve: SolveOptions::default(),
        }
    }
}

fn check_size(inst: &SylvesterInstance, opts: &OracleOptions) -> Result<()> {
    let dim = inst.m() * inst.n();
    if dim > opts.max_dim {
        return Err(Error::OracleTooLarge {
            dim,
            cap: opts.max_dim,
        });
    }
    Ok(())
}

/// `K = ⊕ₖ Bₖᵀ ⊠ Aₖ` and `c = vec(C)`.
pub fn kron_reformulate(inst: &SylvesterInstance) -> Result<(TropicalMatrix, TropicalMatrix)> {
    kron_reformulate_with(inst, &OracleOptions::default())
}

pub fn kron_reformulate_with(
    inst: &SylvesterInstance,
    opts: &OracleOptions,
) -> Result<(TropicalMatrix, TropicalMatrix)> {
    check_size(inst, opts)?;
    let mut terms = inst.terms();
    let (a0, b0) = terms.next().expect("p >= 1");
    let mut k = b0.transpose().kron_max(a0);
    for (a, b) in terms {
        k.max_assign_kron(&b.transpose(), a)?;
    }
    Ok((k, inst.c().vec()))
}

/// X* recovered from the Kronecker system's principal solution.
pub fn oracle_principal_solution(inst: &SylvesterInstance) -> Result<TropicalMatrix> {
    oracle_principal_solution_with(inst, &OracleOptions::default())
}

pub fn oracle_principal_solution_with(
    inst: &SylvesterInstance,
    opts: &OracleOptions,
) -> Result<TropicalMatrix> {
    let (k, c) = kron_reformulate_with(inst, opts)?;
    TropicalMatrix::unvec(&linear_principal_solution(&k, &c)?, inst.m(), inst.n())
}

pub fn oracle_solve(inst: &SylvesterInstance) -> Result<SolveReport> {
    oracle_solve_with(inst, &OracleOptions::default())
}

/// Decides solvability on `K ⊗ vec(X) = vec(C)`. Mismatches are reported in
/// matrix coordinates of C.
pub fn oracle_solve_with(inst: &SylvesterInstance, opts: &OracleOptions) -> Result<SolveReport> {
    let (k, c) = kron_reformulate_with(inst, opts)?;
    let x = linear_principal_solution(&k, &c)?;
    let substituted = k.max_plus_matmul(&x)?;
    drop(k);
    let tol = opts.solve.effective_tolerance(inst.is_integral());
    let vec_report = SolveReport::from_substitution(x, &substituted, &c, tol)?;

    let m = inst.m();
    let mut mismatches: Vec<(usize, usize)> = vec_report
        .mismatches
        .iter()
        .map(|&(q, _)| (q % m, q / m))
        .collect();
    mismatches.sort_unstable();
    Ok(SolveReport {
        principal: TropicalMatrix::unvec(&vec_report.principal, m, inst.n())?,
        solvable: vec_report.solvable,
        mismatches,
        residual_max_abs: vec_report.residual_max_abs,
    })
}

/// Whether two reports for the same instance agree: same verdict, same
/// mismatch cells, and principal solutions equal within `tolerance`.
pub fn reports_agree(fast: &SolveReport, slow: &SolveReport, tolerance: f64) -> bool {
    fast.solvable == slow.solvable
        && fast.mismatches == slow.mismatches
        && compare(&fast.principal, &slow.principal, tolerance)
            .map(|(cells, _)| cells.is_empty())
            .unwrap_or(false)
}

/// Entrywise evaluation of `K[q][r]` without building K, for index checks.
pub fn kron_entry(inst: &SylvesterInstance, q: usize, r: usize) -> ExtendedReal {
    let m = inst.m();
    let (i, j) = (q % m, q / m);
    let (k, l) = (r % m, r / m);
    inst.terms()
        .map(|(a, b)| b.get(l, j).max_plus_mul(a.get(i, k)))
        .fold(ExtendedReal::NEG_INF, ExtendedReal::max_plus_add)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_sylvester, sylvester_principal_solution};

    const NI: f64 = f64::NEG_INFINITY;

    fn m<R: AsRef<[f64]>>(rows: &[R]) -> TropicalMatrix {
        TropicalMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn scalar_kron() {
        let inst = SylvesterInstance::single(m(&[[2.]]), m(&[[3.]]), m(&[[9.]])).unwrap();
        let (k, c) = kron_reformulate(&inst).unwrap();
        assert_eq!(k, m(&[[5.]]));
        assert_eq!(c, m(&[[9.]]));
    }

    #[test]
    fn unit_right_factor_gives_block_diagonal() {
        let a = m(&[[1., 2.], [NI, 4.]]);
        let inst = SylvesterInstance::single(
            a.clone(),
            TropicalMatrix::unit(3),
            TropicalMatrix::filled(2, 3, ExtendedReal::ZERO),
        )
        .unwrap();
        let (k, _) = kron_reformulate(&inst).unwrap();
        assert_eq!(k.shape(), (6, 6));
        for bi in 0..3 {
            for bj in 0..3 {
                for i in 0..2 {
                    for j in 0..2 {
                        let expect = if bi == bj {
                            a.get(i, j)
                        } else {
                            ExtendedReal::NEG_INF
                        };
                        assert_eq!(k.get(bi * 2 + i, bj * 2 + j), expect);
                    }
                }
            }
        }
    }

    /// Column r of K is vec(A ⊗ Eᵣ ⊗ B) where Eᵣ is the indicator matrix
    /// (0 at the cell behind r, -∞ elsewhere). Checked for the 2×2 case
    /// against K[j·2+i][l·2+k] = B[l][j] + A[i][k].
    #[test]
    fn kron_index_identity_on_indicator_matrices() {
        let a = m(&[[3., -1.], [4., 7.]]);
        let b = m(&[[-2., 5.], [0., 6.]]);
        let inst =
            SylvesterInstance::single(a.clone(), b.clone(), m(&[[0., 0.], [0., 0.]])).unwrap();
        let (kk, _) = kron_reformulate(&inst).unwrap();
        for k in 0..2 {
            for l in 0..2 {
                let mut e = TropicalMatrix::filled(2, 2, ExtendedReal::NEG_INF);
                e.set(k, l, ExtendedReal::ZERO);
                let col = a
                    .max_plus_matmul(&e)
                    .unwrap()
                    .max_plus_matmul(&b)
                    .unwrap()
                    .vec();
                for i in 0..2 {
                    for j in 0..2 {
                        let q = j * 2 + i;
                        let r = l * 2 + k;
                        let expect = b.get(l, j).to_f64() + a.get(i, k).to_f64();
                        assert_eq!(kk.get(q, r).to_f64(), expect);
                        assert_eq!(col.get(q, 0).to_f64(), expect);
                        assert_eq!(kron_entry(&inst, q, r), kk.get(q, r));
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_matches_worked_examples() {
        let scalar_pair = SylvesterInstance::new(
            vec![m(&[[1.]]), m(&[[0.]])],
            vec![m(&[[0.]]), m(&[[2.]])],
            m(&[[5.]]),
        )
        .unwrap();
        let (k, _) = kron_reformulate(&scalar_pair).unwrap();
        assert_eq!(k, m(&[[2.]]));
        assert_eq!(oracle_principal_solution(&scalar_pair).unwrap(), m(&[[3.]]));

        let e = TropicalMatrix::unit(2);
        let c = m(&[[1., 2.], [3., NI]]);
        let inst = SylvesterInstance::single(e.clone(), e.clone(), c.clone()).unwrap();
        assert_eq!(oracle_principal_solution(&inst).unwrap(), c);

        let axb = SylvesterInstance::single(
            m(&[[0., 1.], [2., 0.]]),
            e.clone(),
            m(&[[3., 3.], [4., 4.]]),
        )
        .unwrap();
        assert_eq!(
            oracle_principal_solution(&axb).unwrap(),
            m(&[[2., 2.], [2., 2.]])
        );

        let unsolvable =
            SylvesterInstance::single(m(&[[0., 0.], [0., 0.]]), m(&[[0.]]), m(&[[0.], [1.]]))
                .unwrap();
        let r = oracle_solve(&unsolvable).unwrap();
        assert!(!r.solvable);
        assert_eq!(r.mismatches, vec![(1, 0)]);
        assert_eq!(r, solve_sylvester(&unsolvable).unwrap());

        for inst in [scalar_pair, inst, axb] {
            assert_eq!(
                oracle_solve(&inst).unwrap(),
                solve_sylvester(&inst).unwrap()
            );
            assert_eq!(
                oracle_principal_solution(&inst).unwrap(),
                sylvester_principal_solution(&inst).unwrap()
            );
        }
    }

    #[test]
    fn mismatches_map_back_through_column_stacking() {
        // 2×3 C with only cell (1, 2) unreachable
        let e2 = TropicalMatrix::unit(2);
        let e3 = TropicalMatrix::unit(3);
        let mut a = e2.clone();
        a.set(0, 1, ExtendedReal::from(5));
        let c = m(&[[0., 0., 0.], [-5., -5., 1.]]);
        let inst = SylvesterInstance::single(a, e3, c).unwrap();
        let fast = solve_sylvester(&inst).unwrap();
        let slow = oracle_solve(&inst).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast.mismatches, vec![(1, 2)]);
    }

    #[test]
    fn size_cap() {
        let inst = SylvesterInstance::single(
            TropicalMatrix::unit(3),
            TropicalMatrix::unit(3),
            TropicalMatrix::filled(3, 3, ExtendedReal::ZERO),
        )
        .unwrap();
        let opts = OracleOptions {
            max_dim: 8,
            ..Default::default()
        };
        assert!(matches!(
            oracle_solve_with(&inst, &opts),
            Err(Error::OracleTooLarge { dim: 9, cap: 8 })
        ));
        let opts = OracleOptions {
            max_dim: 9,
            ..Default::default()
        };
        assert!(oracle_solve_with(&inst, &opts).unwrap().solvable);
    }

    #[test]
    fn agreement_tolerates_rounding_on_fractional_data() {
        let inst = SylvesterInstance::new(
            vec![m(&[[0.1, 0.7], [NI, 0.3]]), m(&[[0.2, NI], [0.9, 0.4]])],
            vec![m(&[[0.3]]), m(&[[0.6]])],
            m(&[[1.1], [0.7]]),
        )
        .unwrap();
        let fast = solve_sylvester(&inst).unwrap();
        let slow = oracle_solve(&inst).unwrap();
        assert!(reports_agree(&fast, &slow, 1e-9));
        let mut off = slow.clone();
        off.principal.set(
            0,
            0,
            ExtendedReal::from_f64(off.principal.get(0, 0).to_f64() + 1e-6),
        );
        assert!(!reports_agree(&fast, &off, 1e-9));
        off.solvable = !off.solvable;
        assert!(!reports_agree(&fast, &off, 1.0));
    }

    #[test]
    fn conjugate_distributes_over_sum() {
        let p = m(&[[1., NI], [3., 4.]]);
        let q = m(&[[0., 2.], [NI, 5.]]);
        assert_eq!(
            p.max_plus_add(&q).unwrap().conjugate(),
            p.conjugate().min_plus_add(&q.conjugate()).unwrap()
        );
    }
}
