//! Timing and operation-count harness for the fast path and the oracle.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance_io::{generate_instance, GeneratorConfig, GeneratorMode};
use crate::opcount;
use crate::oracle::{oracle_solve_with, OracleOptions};
use crate::solver::solve_sylvester;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fast,
    Oracle,
}

/// One measured solve. Serialized as `m,n,p,method,rep,wall_seconds,op_count`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub method: Method,
    pub rep: usize,
    pub wall_seconds: f64,
    pub op_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

/// `p(m²n + mn² + mn)`, the fast-path reference count.
pub fn fast_reference_ops(pt: GridPoint) -> f64 {
    let (m, n, p) = (pt.m as f64, pt.n as f64, pt.p as f64);
    p * (m * m * n + m * n * n + m * n)
}

/// `p·m²n² + mn·mn`, the oracle reference count.
pub fn oracle_reference_ops(pt: GridPoint) -> f64 {
    let mn = (pt.m * pt.n) as f64;
    pt.p as f64 * mn * mn + mn * mn
}

fn instance_config(pt: GridPoint, seed: u64) -> GeneratorConfig {
    GeneratorConfig {
        m: pt.m,
        n: pt.n,
        p: pt.p,
        seed,
        mode: GeneratorMode::SolvableByConstruction,
        ..GeneratorConfig::default()
    }
}

/// Solves one generated instance with `method` and records time and ops.
/// The full solve is measured: principal solution plus verification.
pub fn measure(
    pt: GridPoint,
    method: Method,
    rep: usize,
    seed: u64,
    oracle: &OracleOptions,
) -> Result<BenchRecord> {
    let (inst, _) = generate_instance(&instance_config(pt, seed))?;
    let start = Instant::now();
    let (report, op_count) = opcount::measure(|| match method {
        Method::Fast => solve_sylvester(&inst),
        Method::Oracle => oracle_solve_with(&inst, oracle),
    });
    let wall_seconds = start.elapsed().as_secs_f64();
    let report = report?;
    if !report.solvable {
        return Err(Error::Instance(format!(
            "constructed benchmark instance at {pt:?} reported unsolvable"
        )));
    }
    Ok(BenchRecord {
        m: pt.m,
        n: pt.n,
        p: pt.p,
        method,
        rep,
        wall_seconds,
        op_count,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    if records.is_empty() {
        w.write_record(["m", "n", "p", "method", "rep", "wall_seconds", "op_count"])
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = [2.0f64, 4.0, 8.0, 16.0]
            .iter()
            .map(|&x| (x, 5.0 * x.powi(3)))
            .collect();
        assert!((loglog_slope(&pts) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn csv_header_is_stable() {
        let rec = BenchRecord {
            m: 2,
            n: 3,
            p: 1,
            method: Method::Oracle,
            rep: 0,
            wall_seconds: 0.5,
            op_count: 77,
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "m,n,p,method,rep,wall_seconds,op_count\n2,3,1,oracle,0,0.5,77\n"
        );
        let mut buf = Vec::new();
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "m,n,p,method,rep,wall_seconds,op_count\n"
        );
    }

    #[test]
    fn counts_stay_within_four_times_reference() {
        let oracle = OracleOptions::default();
        for (m, n, p) in [(1, 1, 1), (3, 2, 2), (5, 7, 4), (8, 8, 3)] {
            let pt = GridPoint { m, n, p };
            let fast = measure(pt, Method::Fast, 0, 1, &oracle).unwrap();
            let ratio = fast.op_count as f64 / fast_reference_ops(pt);
            assert!((0.25..=4.0).contains(&ratio), "fast {pt:?}: {ratio}");
            let slow = measure(pt, Method::Oracle, 0, 1, &oracle).unwrap();
            let ratio = slow.op_count as f64 / oracle_reference_ops(pt);
            assert!((0.25..=4.0).contains(&ratio), "oracle {pt:?}: {ratio}");
        }
    }
}
