//! Command-line surface for the Schubert calculus engines.
//!
//! Subcommands cover product expansion (either engine, or both with a
//! cross-check), puzzle listing and counting, rendering, the verification
//! suites, Molev-Sagan tables, fixed-point restrictions, and a benchmark of
//! the transfer-matrix count against direct enumeration.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a
//! verification (a suite run or an `--engine both` cross-check) fails.
//!
//! Computed tables are memoized on disk, one JSON file per `(n, k)` per
//! table kind, under the directory named by `SCHUBERT_CACHE_DIR` (default:
//! `schubert-cache` in the system temp directory). Every file carries a
//! schema version; files from other versions are ignored and rewritten,
//! never silently reused, and `--no-cache` bypasses the store entirely.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use schubert::gkm::{self, SchubertBasis};
use schubert::mspuzzle;
use schubert::poly::Poly;
use schubert::puzzle::{
    count_dp_table, enumerate_products, enumerate_puzzles, product_via_puzzles, render_ascii,
    render_svg, table_from_puzzles, Puzzle,
};
use schubert::strings::BitString;
use schubert::verify::{self, Budget, Suite};

const CACHE_SCHEMA: u32 = 1;
const CACHE_DIR_VAR: &str = "SCHUBERT_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Equivariant Schubert calculus on Grassmannians"
)]
struct Cli {
    /// Bypass the on-disk table cache for this invocation.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the product of two Schubert classes.
    Multiply {
        n: usize,
        k: usize,
        lam: String,
        mu: String,
        /// Engine computing the table; `both` cross-checks them.
        #[arg(long, value_enum, default_value_t = Engine::Puzzle)]
        engine: Engine,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// List or count the puzzles with boundary (lam, mu; nu).
    Puzzles {
        n: usize,
        k: usize,
        lam: String,
        mu: String,
        nu: String,
        /// Print only the number of puzzles.
        #[arg(long)]
        count_only: bool,
        /// Keep only puzzles without equivariant pieces.
        #[arg(long)]
        ordinary_only: bool,
        #[arg(long, value_enum, default_value_t = RenderKind::None)]
        render: RenderKind,
    },
    /// Render one serialized puzzle read from a file.
    Render {
        /// File holding a puzzle in its text form (`n;upcodes;downcodes`).
        puzzle_file: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Run a named verification suite and print its report.
    Verify {
        /// One of: gkm, pieri, c-identities, oracle-equality, positivity,
        /// duality, flux, gash-identities, ordinary, ms, dp-equivalence,
        /// or regression-fixtures (which ignores n and k).
        suite: String,
        n: Option<usize>,
        k: Option<usize>,
        /// Largest n still checked exhaustively.
        #[arg(long, default_value_t = 6)]
        exhaustive_max_n: usize,
        /// Number of sampled index triples past the exhaustive bound.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Expand a product in the doubly-equivariant Molev-Sagan basis.
    Ms {
        n: usize,
        k: usize,
        theta: String,
        mu: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print every fixed-point restriction of one Schubert class.
    Class {
        n: usize,
        k: usize,
        lam: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Time direct puzzle enumeration against the transfer-matrix count.
    Bench {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Puzzle,
    Gkm,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderKind {
    None,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let cache = CacheStore::new(cli.no_cache);
    match run(cli.command, &cache) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, cache: &CacheStore) -> Result<ExitCode> {
    match command {
        Command::Multiply {
            n,
            k,
            lam,
            mu,
            engine,
            format,
        } => multiply(cache, n, k, &lam, &mu, engine, format),
        Command::Puzzles {
            n,
            k,
            lam,
            mu,
            nu,
            count_only,
            ordinary_only,
            render,
        } => puzzles(n, k, &lam, &mu, &nu, count_only, ordinary_only, render),
        Command::Render {
            puzzle_file,
            format,
        } => render(&puzzle_file, format),
        Command::Verify {
            suite,
            n,
            k,
            exhaustive_max_n,
            samples,
            format,
        } => run_verify(&suite, n, k, exhaustive_max_n, samples, format),
        Command::Ms {
            n,
            k,
            theta,
            mu,
            format,
        } => ms(n, k, &theta, &mu, format),
        Command::Class { n, k, lam, format } => class(cache, n, k, &lam, format),
        Command::Bench { max_n } => bench(max_n),
    }
}

/// Parse a 0/1 word and pin it to the requested Grassmannian.
fn parse_string(n: usize, k: usize, text: &str) -> Result<BitString> {
    let s: BitString = text.parse()?;
    if (s.n(), s.k()) != (n, k) {
        bail!("{text} is not a word of length {n} with {k} ones");
    }
    Ok(s)
}

/// Render a structure-constant table on one line, entries joined by " | ".
fn table_line(table: &BTreeMap<BitString, Poly>) -> String {
    if table.is_empty() {
        return "0".to_string();
    }
    table
        .iter()
        .map(|(nu, c)| format!("{nu}: {c}"))
        .collect::<Vec<_>>()
        .join(" | ")
}

#[derive(Serialize)]
struct TableOutput<'a> {
    n: usize,
    k: usize,
    lam: &'a BitString,
    mu: &'a BitString,
    engine: &'a str,
    table: &'a BTreeMap<BitString, Poly>,
}

fn multiply(
    cache: &CacheStore,
    n: usize,
    k: usize,
    lam: &str,
    mu: &str,
    engine: Engine,
    format: Format,
) -> Result<ExitCode> {
    let lam = parse_string(n, k, lam)?;
    let mu = parse_string(n, k, mu)?;
    let via_gkm = |lam: &BitString, mu: &BitString| -> Result<BTreeMap<BitString, Poly>> {
        Ok(gkm::structure_constants(n, k, lam, mu)?)
    };
    match engine {
        Engine::Puzzle => {
            let table = cache.product("products-puzzle", n, k, &lam, &mu, || {
                Ok(product_via_puzzles(&lam, &mu))
            })?;
            emit_table(format, n, k, &lam, &mu, "puzzle", &table);
            Ok(ExitCode::SUCCESS)
        }
        Engine::Gkm => {
            let table =
                cache.product("products-gkm", n, k, &lam, &mu, || via_gkm(&lam, &mu))?;
            emit_table(format, n, k, &lam, &mu, "gkm", &table);
            Ok(ExitCode::SUCCESS)
        }
        Engine::Both => {
            // computed fresh on both sides so the cross-check is real
            let p = product_via_puzzles(&lam, &mu);
            let g = via_gkm(&lam, &mu)?;
            let agree = p == g;
            match format {
                Format::Table => {
                    println!("puzzle: {}", table_line(&p));
                    println!("gkm:    {}", table_line(&g));
                    println!("{}", if agree { "oracles agree" } else { "ORACLE MISMATCH" });
                }
                Format::Structured => {
                    #[derive(Serialize)]
                    struct BothOutput<'a> {
                        n: usize,
                        k: usize,
                        lam: &'a BitString,
                        mu: &'a BitString,
                        puzzle: &'a BTreeMap<BitString, Poly>,
                        gkm: &'a BTreeMap<BitString, Poly>,
                        agree: bool,
                    }
                    let out = BothOutput {
                        n,
                        k,
                        lam: &lam,
                        mu: &mu,
                        puzzle: &p,
                        gkm: &g,
                        agree,
                    };
                    println!("{}", serde_json::to_string(&out)?);
                }
            }
            Ok(if agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

fn emit_table(
    format: Format,
    n: usize,
    k: usize,
    lam: &BitString,
    mu: &BitString,
    engine: &str,
    table: &BTreeMap<BitString, Poly>,
) {
    match format {
        Format::Table => println!("{}", table_line(table)),
        Format::Structured => {
            let out = TableOutput {
                n,
                k,
                lam,
                mu,
                engine,
                table,
            };
            println!("{}", serde_json::to_string(&out).expect("tables serialize"));
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn puzzles(
    n: usize,
    k: usize,
    lam: &str,
    mu: &str,
    nu: &str,
    count_only: bool,
    ordinary_only: bool,
    render: RenderKind,
) -> Result<ExitCode> {
    let lam = parse_string(n, k, lam)?;
    let mu = parse_string(n, k, mu)?;
    let nu = parse_string(n, k, nu)?;
    let mut found = enumerate_puzzles(&lam, &mu, &nu);
    if ordinary_only {
        found.retain(Puzzle::is_ordinary);
    }
    if count_only {
        println!("{}", found.len());
        return Ok(ExitCode::SUCCESS);
    }
    for (i, p) in found.iter().enumerate() {
        println!("puzzle {}: {p}", i + 1);
        println!("  weight: {}", p.weight());
        match render {
            RenderKind::None => {}
            RenderKind::Ascii => print!("{}", render_ascii(p)),
            RenderKind::Svg => println!("{}", render_svg(p)),
        }
    }
    let total = found
        .iter()
        .fold(Poly::zero(), |acc, p| &acc + &p.weight());
    println!("{} puzzles, total weight {}", found.len(), total);
    Ok(ExitCode::SUCCESS)
}

fn render(puzzle_file: &PathBuf, format: RenderFormat) -> Result<ExitCode> {
    let text = fs::read_to_string(puzzle_file)
        .with_context(|| format!("reading {}", puzzle_file.display()))?;
    let puzzle: Puzzle = text
        .trim()
        .parse()
        .with_context(|| format!("parsing {}", puzzle_file.display()))?;
    match format {
        RenderFormat::Ascii => print!("{}", render_ascii(&puzzle)),
        RenderFormat::Svg => println!("{}", render_svg(&puzzle)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(
    suite: &str,
    n: Option<usize>,
    k: Option<usize>,
    exhaustive_max_n: usize,
    samples: usize,
    format: Format,
) -> Result<ExitCode> {
    let report = if suite == "regression-fixtures" {
        verify::regression_fixtures()
    } else {
        let suite: Suite = suite.parse()?;
        let (Some(n), Some(k)) = (n, k) else {
            bail!("suite {suite} needs n and k");
        };
        if k > n {
            bail!("k = {k} exceeds n = {n}");
        }
        let budget = Budget {
            exhaustive_max_n,
            samples,
            ..Budget::default()
        };
        verify::run_suite_with(suite, n, k, &budget)
    };
    match format {
        Format::Table => print!("{report}"),
        Format::Structured => println!("{}", serde_json::to_string(&report)?),
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn ms(n: usize, k: usize, theta: &str, mu: &str, format: Format) -> Result<ExitCode> {
    let theta = parse_string(n, k, theta)?;
    let mu = parse_string(n, k, mu)?;
    let table = mspuzzle::molev_sagan_constants(&theta, &mu);
    emit_table(format, n, k, &theta, &mu, "ms", &table);
    Ok(ExitCode::SUCCESS)
}

fn class(cache: &CacheStore, n: usize, k: usize, lam: &str, format: Format) -> Result<ExitCode> {
    let lam = parse_string(n, k, lam)?;
    let nonzero = cache.class(n, k, &lam)?;
    // every fixed point is listed, zeros included
    let mut table = BTreeMap::new();
    for point in BitString::all(n, k) {
        let c = nonzero.get(&point).cloned().unwrap_or_else(Poly::zero);
        table.insert(point, c);
    }
    match format {
        Format::Table => println!("{}", table_line(&table)),
        Format::Structured => {
            #[derive(Serialize)]
            struct ClassOutput<'a> {
                n: usize,
                k: usize,
                lam: &'a BitString,
                restrictions: &'a BTreeMap<BitString, Poly>,
            }
            let out = ClassOutput {
                n,
                k,
                lam: &lam,
                restrictions: &table,
            };
            println!("{}", serde_json::to_string(&out)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(max_n: usize) -> Result<ExitCode> {
    if max_n < 3 {
        bail!("--max-n must be at least 3");
    }
    println!(
        "{:<3} {:<3} {:<10} {:>12} {:>12} {:>9}  result",
        "n", "k", "lam=mu", "enumerate", "transfer", "speedup"
    );
    for n in 3..=max_n {
        let k = n / 2;
        let lam = BitString::new((1..=n).map(|i| i % 2 == 0).collect());
        let start = Instant::now();
        let direct = table_from_puzzles(&enumerate_products(&lam, &lam));
        let enumerate_s = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let dp = count_dp_table(&lam, &lam);
        let transfer_s = start.elapsed().as_secs_f64();
        let agree = direct == dp;
        let lam_text = lam.to_string();
        println!(
            "{n:<3} {k:<3} {lam_text:<10} {enumerate_s:>11.4}s {transfer_s:>11.4}s {:>8.1}x  {}",
            enumerate_s / transfer_s.max(1e-9),
            if agree { "tables match" } else { "MISMATCH" }
        );
        if !agree {
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// On-disk memo of computed tables: one JSON file per `(n, k)` per table
/// kind, each carrying a schema version. Read or write failures and foreign
/// versions are treated as misses; the cache is a memo, never a source of
/// truth.
struct CacheStore {
    dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct CacheFileRef<'a, T> {
    schema: u32,
    kind: &'a str,
    n: usize,
    k: usize,
    table: &'a T,
}

#[derive(Deserialize)]
struct CacheFile<T> {
    schema: u32,
    kind: String,
    n: usize,
    k: usize,
    table: T,
}

/// Product tables grouped as lam -> mu -> (nu -> coefficient).
type ProductCube = BTreeMap<BitString, BTreeMap<BitString, BTreeMap<BitString, Poly>>>;

impl CacheStore {
    fn new(disabled: bool) -> Self {
        if disabled {
            return CacheStore { dir: None };
        }
        let dir = std::env::var_os(CACHE_DIR_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("schubert-cache"));
        CacheStore { dir: Some(dir) }
    }

    fn path(&self, kind: &str, n: usize, k: usize) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|dir| dir.join(format!("{kind}-n{n}-k{k}-v{CACHE_SCHEMA}.json")))
    }

    fn load<T: DeserializeOwned>(&self, kind: &str, n: usize, k: usize) -> Option<T> {
        let text = fs::read_to_string(self.path(kind, n, k)?).ok()?;
        let file: CacheFile<T> = serde_json::from_str(&text).ok()?;
        (file.schema == CACHE_SCHEMA && file.kind == kind && (file.n, file.k) == (n, k))
            .then_some(file.table)
    }

    fn store<T: Serialize>(&self, kind: &str, n: usize, k: usize, table: &T) {
        let Some(path) = self.path(kind, n, k) else {
            return;
        };
        if let Some(dir) = path.parent() {
            if fs::create_dir_all(dir).is_err() {
                return;
            }
        }
        let file = CacheFileRef {
            schema: CACHE_SCHEMA,
            kind,
            n,
            k,
            table,
        };
        if let Ok(text) = serde_json::to_string(&file) {
            let _ = fs::write(path, text);
        }
    }

    /// One product table, memoized inside the (n, k) cube for `kind`.
    fn product(
        &self,
        kind: &str,
        n: usize,
        k: usize,
        lam: &BitString,
        mu: &BitString,
        compute: impl FnOnce() -> Result<BTreeMap<BitString, Poly>>,
    ) -> Result<BTreeMap<BitString, Poly>> {
        let mut cube: ProductCube = self.load(kind, n, k).unwrap_or_default();
        if let Some(table) = cube.get(lam).and_then(|row| row.get(mu)) {
            return Ok(table.clone());
        }
        let table = compute()?;
        cube.entry(lam.clone())
            .or_default()
            .insert(mu.clone(), table.clone());
        self.store(kind, n, k, &cube);
        Ok(table)
    }

    /// Nonzero restrictions of one Schubert class, memoized per (n, k).
    fn class(&self, n: usize, k: usize, lam: &BitString) -> Result<BTreeMap<BitString, Poly>> {
        let mut all: BTreeMap<BitString, BTreeMap<BitString, Poly>> =
            self.load("classes", n, k).unwrap_or_default();
        if let Some(table) = all.get(lam) {
            return Ok(table.clone());
        }
        let basis = SchubertBasis::shared(n, k);
        let table = basis.class(lam).restrictions().clone();
        all.insert(lam.clone(), table.clone());
        self.store("classes", n, k, &all);
        Ok(table)
    }
}
