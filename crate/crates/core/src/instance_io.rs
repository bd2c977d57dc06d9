//! Matrix text format, instance files, and the seeded instance generator.
//!
//! # Text format
//!
//! ```text
//! # comments start with '#'
//! 2 3
//! 0 -inf 1.5
//! +inf 4 -2
//! ```
//!
//! The first non-comment line is `rows cols`; each following line is one
//! row. Tokens are decimal literals, `-inf` or `+inf` (any case). Output
//! separates entries by single spaces, prints integral values without a
//! decimal point, and ends with a newline.
//!
//! # Generator
//!
//! Instances are drawn from xoshiro256++ seeded from the 64-bit seed via
//! SplitMix64 (`Xoshiro256PlusPlus::seed_from_u64`). The factor stream
//! draws every `A_k` then every `B_k` (k = 1..p) in row-major order; for
//! each entry it first draws a `-inf` coin (`(u64 >> 11) / 2^53 <
//! density`) and, if finite, an integer by rejection sampling
//! (`u64 mod span`, rejecting the low `2^64 mod span` values). Rows and
//! then columns that come out all `-inf` are redrawn until the factor is
//! doubly ℝ-astic. The right-hand stream is the factor stream's seed state
//! advanced by one `jump()` (2^128 steps); it draws the witness `X0` (or
//! `C` in raw mode) in row-major order with the same integer rule.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::matrix::TropicalMatrix;
use crate::semiring::ExtendedReal;
use crate::solver::{is_doubly_r_astic, SylvesterInstance};

pub fn parse_matrix(text: &str) -> Result<TropicalMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `rows cols` header".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::Parse {
        line: header_line,
        msg: format!("expected `rows cols`, got `{header}`"),
    };
    if dims.len() != 2 {
        return Err(bad_header());
    }
    let rows: usize = dims[0].parse().map_err(|_| bad_header())?;
    let cols: usize = dims[1].parse().map_err(|_| bad_header())?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse {
            line: header_line,
            msg: "dimensions must be positive".into(),
        });
    }

    let mut data = Vec::with_capacity(rows * cols);
    let mut last_line = header_line;
    for r in 0..rows {
        let (line, row) = lines.next().ok_or_else(|| Error::Parse {
            line: last_line + 1,
            msg: format!("expected {rows} rows, found {r}"),
        })?;
        last_line = line;
        let before = data.len();
        for tok in row.split_whitespace() {
            let v: ExtendedReal = tok.parse().map_err(|msg| Error::Parse { line, msg })?;
            data.push(v);
        }
        let got = data.len() - before;
        if got != cols {
            return Err(Error::Parse {
                line,
                msg: format!("row has {got} entries, expected {cols}"),
            });
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: format!("extra row after {rows} rows"),
        });
    }
    TropicalMatrix::new(rows, cols, data)
}

pub fn format_matrix(m: &TropicalMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        for (j, v) in m.row(i).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<TropicalMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    parse_matrix(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

pub fn write_matrix(path: impl AsRef<Path>, m: &TropicalMatrix) -> Result<()> {
    fs::write(path, format_matrix(m))?;
    Ok(())
}

/// The files making up one Sylvester instance, in term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFileSet {
    pub a: Vec<PathBuf>,
    pub b: Vec<PathBuf>,
    pub c: PathBuf,
}

impl InstanceFileSet {
    /// `A1.txt`, `A2.txt`, ... `B1.txt`, ... and `C.txt` inside `dir`.
    pub fn in_dir(dir: impl AsRef<Path>, p: usize) -> Self {
        let dir = dir.as_ref();
        Self {
            a: (1..=p).map(|k| dir.join(format!("A{k}.txt"))).collect(),
            b: (1..=p).map(|k| dir.join(format!("B{k}.txt"))).collect(),
            c: dir.join("C.txt"),
        }
    }

    /// Discovers the file set in `dir` by counting consecutive `A{k}.txt`.
    pub fn discover(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let p = (1..)
            .take_while(|k| dir.join(format!("A{k}.txt")).is_file())
            .count();
        if p == 0 {
            return Err(Error::Instance(format!("no A1.txt in {}", dir.display())));
        }
        Ok(Self::in_dir(dir, p))
    }

    pub fn load(&self) -> Result<SylvesterInstance> {
        if self.a.len() != self.b.len() {
            return Err(Error::Instance(format!(
                "{} A-files but {} B-files",
                self.a.len(),
                self.b.len()
            )));
        }
        let a = self.a.iter().map(read_matrix).collect::<Result<Vec<_>>>()?;
        let b = self.b.iter().map(read_matrix).collect::<Result<Vec<_>>>()?;
        SylvesterInstance::new(a, b, read_matrix(&self.c)?)
    }
}

/// Writes `A{k}.txt`, `B{k}.txt`, `C.txt` and, when given, `X0.txt`.
pub fn write_instance(
    dir: impl AsRef<Path>,
    inst: &SylvesterInstance,
    witness: Option<&TropicalMatrix>,
) -> Result<InstanceFileSet> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let files = InstanceFileSet::in_dir(dir, inst.p());
    for (path, m) in files.a.iter().zip(inst.a()) {
        write_matrix(path, m)?;
    }
    for (path, m) in files.b.iter().zip(inst.b()) {
        write_matrix(path, m)?;
    }
    write_matrix(&files.c, inst.c())?;
    if let Some(x0) = witness {
        write_matrix(dir.join("X0.txt"), x0)?;
    }
    Ok(files)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    /// Draw X0 and set C := ⊕ₖ Aₖ ⊗ X0 ⊗ Bₖ.
    SolvableByConstruction,
    /// Draw C independently of the factors.
    RawRandom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub entry_low: i64,
    pub entry_high: i64,
    pub neginf_density: f64,
    pub mode: GeneratorMode,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            m: 3,
            n: 3,
            p: 2,
            seed: 0,
            entry_low: -10,
            entry_high: 10,
            neginf_density: 0.1,
            mode: GeneratorMode::SolvableByConstruction,
        }
    }
}

/// Integers up to this magnitude stay exact through sums of a few terms.
const MAX_ENTRY: i64 = 1 << 50;

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 || self.p == 0 {
            return Err(Error::Config("m, n and p must be positive".into()));
        }
        if self.entry_low > self.entry_high {
            return Err(Error::Config(format!(
                "entry_low {} exceeds entry_high {}",
                self.entry_low, self.entry_high
            )));
        }
        if self.entry_low < -MAX_ENTRY || self.entry_high > MAX_ENTRY {
            return Err(Error::Config("entries must lie within ±2^50".into()));
        }
        if !(0.0..1.0).contains(&self.neginf_density) {
            return Err(Error::Config(format!(
                "neginf_density {} not in [0, 1)",
                self.neginf_density
            )));
        }
        Ok(())
    }
}

struct Sampler {
    rng: Xoshiro256PlusPlus,
    low: i64,
    span: u64,
    density: f64,
}

impl Sampler {
    fn int(&mut self) -> ExtendedReal {
        let zone = self.span.wrapping_neg() % self.span;
        loop {
            let x = self.rng.next_u64();
            if x >= zone {
                return ExtendedReal::from_f64((self.low + (x % self.span) as i64) as f64);
            }
        }
    }

    fn entry(&mut self) -> ExtendedReal {
        let coin = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        if coin < self.density {
            ExtendedReal::NEG_INF
        } else {
            self.int()
        }
    }

    fn finite_matrix(&mut self, rows: usize, cols: usize) -> TropicalMatrix {
        TropicalMatrix::from_fn(rows, cols, |_, _| self.int())
    }

    fn factor(&mut self, size: usize) -> TropicalMatrix {
        let mut m = TropicalMatrix::from_fn(size, size, |_, _| self.entry());
        while !is_doubly_r_astic(&m) {
            for i in 0..size {
                while m.row(i).iter().all(|v| v.is_neg_inf()) {
                    for j in 0..size {
                        m.set(i, j, self.entry());
                    }
                }
            }
            for j in 0..size {
                while (0..size).all(|i| m.get(i, j).is_neg_inf()) {
                    for i in 0..size {
                        m.set(i, j, self.entry());
                    }
                }
            }
        }
        m
    }
}

/// Draws a Sylvester instance; returns the witness X0 in construction mode.
pub fn generate_instance(
    cfg: &GeneratorConfig,
) -> Result<(SylvesterInstance, Option<TropicalMatrix>)> {
    cfg.validate()?;
    let base = Xoshiro256PlusPlus::seed_from_u64(cfg.seed);
    let mut rhs_rng = base.clone();
    rhs_rng.jump();
    let span = (cfg.entry_high - cfg.entry_low) as u64 + 1;
    let mut factors = Sampler {
        rng: base,
        low: cfg.entry_low,
        span,
        density: cfg.neginf_density,
    };
    let mut rhs = Sampler {
        rng: rhs_rng,
        low: cfg.entry_low,
        span,
        density: 0.0,
    };

    let a: Vec<_> = (0..cfg.p).map(|_| factors.factor(cfg.m)).collect();
    let b: Vec<_> = (0..cfg.p).map(|_| factors.factor(cfg.n)).collect();
    match cfg.mode {
        GeneratorMode::SolvableByConstruction => {
            let x0 = rhs.finite_matrix(cfg.m, cfg.n);
            let placeholder = TropicalMatrix::filled(cfg.m, cfg.n, ExtendedReal::ZERO);
            let c = SylvesterInstance::new(a.clone(), b.clone(), placeholder)?.apply(&x0)?;
            Ok((SylvesterInstance::new(a, b, c)?, Some(x0)))
        }
        GeneratorMode::RawRandom => {
            let c = rhs.finite_matrix(cfg.m, cfg.n);
            Ok((SylvesterInstance::new(a, b, c)?, None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_sylvester;

    const NI: f64 = f64::NEG_INFINITY;

    fn m<R: AsRef<[f64]>>(rows: &[R]) -> TropicalMatrix {
        TropicalMatrix::from_rows(rows).unwrap()
    }

    fn parse_err_line(text: &str) -> usize {
        match parse_matrix(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_matrix("2 2\n0 1\n2 0\n").unwrap(),
            m(&[[0., 1.], [2., 0.]])
        );
        assert_eq!(parse_matrix("1 2\n-inf 3.5\n").unwrap(), m(&[[NI, 3.5]]));
        assert_eq!(parse_err_line("2 1\n0\n1 2\n"), 3);
    }

    #[test]
    fn parse_accepts_comments_and_missing_trailing_newline() {
        let text = "# A1\n1 2\n# row\n+INF -Inf";
        assert_eq!(parse_matrix(text).unwrap(), m(&[[f64::INFINITY, NI]]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(parse_err_line(""), 1);
        assert_eq!(parse_err_line("2\n"), 1);
        assert_eq!(parse_err_line("0 2\n"), 1);
        assert_eq!(parse_err_line("a b\n"), 1);
        assert_eq!(parse_err_line("1 1\nnan\n"), 2);
        assert_eq!(parse_err_line("1 2\n1 x\n"), 2);
        assert_eq!(parse_err_line("2 1\n1\n"), 3);
        assert_eq!(parse_err_line("1 1\n1\n2\n"), 3);
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_matrix(&m(&[[0., 1.], [2., 0.]])), "2 2\n0 1\n2 0\n");
        assert_eq!(format_matrix(&m(&[[NI]])), "1 1\n-inf\n");
        assert_eq!(
            format_matrix(&m(&[[0.5, f64::INFINITY]])),
            "1 2\n0.5 +inf\n"
        );
    }

    #[test]
    fn config_validation() {
        let ok = GeneratorConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            GeneratorConfig { m: 0, ..ok },
            GeneratorConfig { p: 0, ..ok },
            GeneratorConfig {
                entry_low: 3,
                entry_high: 2,
                ..ok
            },
            GeneratorConfig {
                neginf_density: 1.0,
                ..ok
            },
            GeneratorConfig {
                neginf_density: -0.1,
                ..ok
            },
            GeneratorConfig {
                entry_high: i64::MAX,
                ..ok
            },
        ] {
            assert!(
                matches!(generate_instance(&bad), Err(Error::Config(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = GeneratorConfig {
            m: 4,
            n: 3,
            p: 3,
            seed: 42,
            ..Default::default()
        };
        let (a, wa) = generate_instance(&cfg).unwrap();
        let (b, wb) = generate_instance(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(wa, wb);
        let (c, _) = generate_instance(&GeneratorConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn factors_do_not_depend_on_mode() {
        let cfg = GeneratorConfig {
            m: 3,
            n: 5,
            p: 2,
            seed: 7,
            ..Default::default()
        };
        let (solv, _) = generate_instance(&cfg).unwrap();
        let (raw, w) = generate_instance(&GeneratorConfig {
            mode: GeneratorMode::RawRandom,
            ..cfg
        })
        .unwrap();
        assert!(w.is_none());
        assert_eq!(solv.a(), raw.a());
        assert_eq!(solv.b(), raw.b());
    }

    #[test]
    fn dense_neginf_still_doubly_r_astic() {
        for seed in 0..50 {
            let cfg = GeneratorConfig {
                m: 1 + (seed as usize % 5),
                n: 1 + (seed as usize % 3),
                p: 2,
                seed,
                neginf_density: 0.9,
                ..Default::default()
            };
            let (inst, x0) = generate_instance(&cfg).unwrap();
            assert!(inst.a().iter().chain(inst.b()).all(is_doubly_r_astic));
            let r = solve_sylvester(&inst).unwrap();
            assert!(r.solvable);
            assert!(x0.unwrap().le(&r.principal).unwrap());
        }
    }

    #[test]
    fn entries_stay_in_range() {
        let cfg = GeneratorConfig {
            m: 6,
            n: 6,
            p: 4,
            seed: 3,
            entry_low: -2,
            entry_high: 2,
            mode: GeneratorMode::RawRandom,
            ..Default::default()
        };
        let (inst, _) = generate_instance(&cfg).unwrap();
        for v in inst
            .a()
            .iter()
            .chain(inst.b())
            .chain([inst.c()])
            .flat_map(|m| m.iter())
        {
            assert!(v.is_neg_inf() || (-2.0..=2.0).contains(&v.to_f64()), "{v}");
        }
        assert!(inst.c().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = GeneratorConfig {
            m: 2,
            n: 3,
            p: 2,
            seed: 1,
            ..Default::default()
        };
        let (inst, x0) = generate_instance(&cfg).unwrap();
        let files = write_instance(dir.path(), &inst, x0.as_ref()).unwrap();
        assert_eq!(files, InstanceFileSet::discover(dir.path()).unwrap());
        assert_eq!(files.load().unwrap(), inst);
        assert_eq!(read_matrix(dir.path().join("X0.txt")).unwrap(), x0.unwrap());
        assert!(InstanceFileSet::discover(dir.path().join("nope")).is_err());
    }
}
