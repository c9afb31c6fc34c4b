//! Argument parsing and subcommands.

use crate::manifest::RunManifest;
use crate::oeis::{self, FetchOptions, OeisError};
use crate::svg::{emit_svg, Figure, SvgOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::{One, Zero};
use riderlab::configs::{
    best_parallelogram, config_denominator, golden_parallelogram, golden_rectangle, is_vertex, parallelogram_choices,
    queens_spiral, twisted_spiral, GeneratedConfig,
};
use riderlab::exactmath::{frac_string, rint};
use riderlab::model::{Board, PieceSpec};
use riderlab::polytope::{denominator_set, enumerate_vertices, vertex_dump, Budget, UNBUDGETED_MAX_Q};
use riderlab::quasipoly::{
    detect_period_with, formula_eval, interpolate, types_count, unlabeled_leading, FormulaId,
};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "riderlab", version, about = "Nonattacking rider placements: counts, quasipolynomials, vertices")]
pub struct Cli {
    /// Write a JSON run manifest here.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PieceQ {
    /// Preset name (queen, nightrider, n3, ...) or move list like "(1,0);(2,1)".
    #[arg(long, value_name = "P")]
    pub piece: String,
    #[arg(long, value_name = "Q", value_parser = clap::value_parser!(u32).range(1..))]
    pub q: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoardArg {
    Square,
    Triangle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Rectangle,
    Parallelogram,
    Spiral,
    Twisted,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Brute-force counts u(q;n) for n = 1..N as CSV.
    Count {
        #[command(flatten)]
        pq: PieceQ,
        #[arg(long = "n-max", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[arg(long, value_enum, default_value = "square")]
        board: BoardArg,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Detect the period from brute counts and fit the quasipolynomial.
    Fit {
        #[command(flatten)]
        pq: PieceQ,
        #[arg(long = "period-max", value_name = "P", value_parser = clap::value_parser!(u32).range(1..))]
        period_max: u32,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Empirical period of the counts, compared with the vertex denominator.
    Period {
        #[command(flatten)]
        pq: PieceQ,
        #[arg(long = "n-max", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
    },
    /// Denominator of the inside-out polytope by vertex enumeration.
    Denom {
        #[command(flatten)]
        pq: PieceQ,
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
    },
    /// Vertex dump, one vertex per line.
    Vertices {
        #[command(flatten)]
        pq: PieceQ,
        #[arg(long, value_name = "PATH")]
        dump: Option<PathBuf>,
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
    },
    /// Build a golden rectangle, golden parallelogram, or (twisted) spiral.
    Spiral {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        pq: PieceQ,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// Parallelogram only: index 0..=5 of the move pair; default is the largest denominator.
        #[arg(long)]
        choice: Option<usize>,
        /// Twisted only: the four signed moves in spiral order, e.g. "(2,1);(1,-2);(1,2);(2,-1)".
        #[arg(long)]
        assignment: Option<String>,
    },
    /// Compare brute counts with library formulas and/or OEIS.
    Verify {
        #[command(flatten)]
        pq: PieceQ,
        #[arg(long = "n-max", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[arg(long)]
        oeis: bool,
        #[arg(long)]
        formula: bool,
    },
    /// Fetch (or read from cache) an OEIS b-file and print it.
    Oeis {
        #[arg(long, value_name = "AXXXXXX")]
        id: String,
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }
}

impl From<riderlab::Error> for Failure {
    fn from(e: riderlab::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<OeisError> for Failure {
    fn from(e: OeisError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Run = Result<i32, Failure>;

fn parse_piece(pq: &PieceQ, m: &mut RunManifest) -> Result<(PieceSpec, usize), Failure> {
    let p = PieceSpec::parse(&pq.piece)?;
    m.piece = Some(p.label());
    m.q = Some(pq.q as usize);
    Ok((p, pq.q as usize))
}

/// Sends `text` to `path` when given, else to stdout.
fn emit(text: &str, path: Option<&Path>, m: &mut RunManifest) -> Result<(), Failure> {
    match path {
        Some(p) => m.write_output(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn counts(piece: &PieceSpec, board: &Board, q: usize, n_max: u32) -> Result<Vec<(i64, BigInt)>, Failure> {
    Ok(oeis::brute_counts(piece, board, q, n_max)?)
}

pub fn csv(values: &[(i64, BigInt)]) -> String {
    let mut s = String::from("n,count\n");
    for (n, v) in values {
        writeln!(s, "{n},{v}").unwrap();
    }
    s
}

/// Closed form in the library for this piece and q, if any.
pub fn library_formula(piece: &PieceSpec, q: usize) -> Option<FormulaId> {
    use FormulaId::*;
    let name = oeis::preset_of(piece)?;
    Some(match name {
        "rook" => RookGeneral,
        "semirook" => SemirookGeneral,
        "bishop" if q <= 6 => BishopTable,
        "bishop" => KotesovecBishopDoubleSum,
        "semibishop" => SemibishopGeneral,
        "queen" if q <= 4 => QueenTable,
        "nightrider" if q == 2 => NightriderQ2,
        "n1" | "n2-lateral" | "n2-inclined" | "n2-ortho" | "n3" if q == 2 => {
            PartialNightriderQ2 { k: piece.moves.len() as u32 }
        }
        _ => return None,
    })
}

fn cmd_count(pq: &PieceQ, n_max: u32, board: BoardArg, out: Option<&Path>, m: &mut RunManifest) -> Run {
    let (p, q) = parse_piece(pq, m)?;
    m.n_range = Some((1, n_max));
    let b = match board {
        BoardArg::Square => Board::Square,
        BoardArg::Triangle => Board::Triangle,
    };
    emit(&csv(&counts(&p, &b, q, n_max)?), out, m)?;
    Ok(EXIT_PASS)
}

/// Samples per residue class: degree + holdout, the leading coefficient being known.
fn samples_per_class(q: usize) -> u32 {
    (2 * q + riderlab::quasipoly::MIN_HOLDOUT) as u32
}

fn cmd_fit(pq: &PieceQ, period_max: u32, out: Option<&Path>, m: &mut RunManifest) -> Run {
    let (p, q) = parse_piece(pq, m)?;
    let n_max = period_max * samples_per_class(q);
    m.n_range = Some((1, n_max));
    let values = counts(&p, &Board::Square, q, n_max)?;
    let lead = unlabeled_leading(q);
    let period = detect_period_with(&values, 2 * q, period_max as usize, 0, Some(&lead))?;
    let fit = interpolate(&values, 2 * q, period, Some(&lead))?;
    eprintln!("period {period} from n <= {n_max}; value at n=-1: {}", frac_string(&types_count(&fit)));
    let mut json = fit.to_json();
    json.push('\n');
    emit(&json, out, m)?;
    Ok(EXIT_PASS)
}

fn cmd_period(pq: &PieceQ, n_max: u32) -> Run {
    let mut m = RunManifest::default();
    let (p, q) = parse_piece(pq, &mut m)?;
    let max_period = n_max / samples_per_class(q);
    if max_period == 0 {
        return Err(Failure::usage(format!("--n-max must be at least {} for q={q}", samples_per_class(q))));
    }
    let values = counts(&p, &Board::Square, q, n_max)?;
    let period = detect_period_with(&values, 2 * q, max_period as usize, 0, Some(&unlabeled_leading(q)))?;
    println!("period={period}");
    if q > UNBUDGETED_MAX_Q {
        println!("denominator=skipped (q > {UNBUDGETED_MAX_Q}; run denom with --budget)");
        return Ok(EXIT_PASS);
    }
    let d = riderlab::polytope::polytope_denominator(&p, q, None)?;
    let divides = (&d % BigInt::from(period)).is_zero();
    println!("denominator={d}");
    println!("period-divides-denominator={divides}");
    if !divides {
        eprintln!("period {period} does not divide denominator {d}");
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_PASS)
}

fn vertices_for(p: &PieceSpec, q: usize, budget: Option<u64>) -> Result<Vec<riderlab::polytope::VertexRecord>, Failure> {
    Ok(enumerate_vertices(p, q, budget.map(|max_nodes| Budget { max_nodes }))?)
}

fn cmd_denom(pq: &PieceQ, budget: Option<u64>) -> Run {
    let mut m = RunManifest::default();
    let (p, q) = parse_piece(pq, &mut m)?;
    let vs = vertices_for(&p, q, budget)?;
    let set = denominator_set(&vs);
    let d = set.iter().fold(BigInt::one(), |a, b| riderlab::exactmath::lcm_big(&a, b));
    println!("vertices={}", vs.len());
    println!("denominators={}", set.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    println!("denominator={d}");
    Ok(EXIT_PASS)
}

fn cmd_vertices(pq: &PieceQ, out: Option<&Path>, budget: Option<u64>, m: &mut RunManifest) -> Run {
    let (p, q) = parse_piece(pq, m)?;
    let vs = vertices_for(&p, q, budget)?;
    emit(&vertex_dump(&vs), out, m)?;
    Ok(EXIT_PASS)
}

fn parse_assignment(s: &str) -> Result<[(i64, i64); 4], Failure> {
    let bad = || Failure::usage(format!("bad assignment `{s}`; expected four moves like (2,1);(1,-2);(1,2);(2,-1)"));
    let mut out = Vec::new();
    for part in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
        let inner = part.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        out.push((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
    }
    out.try_into().map_err(|_| bad())
}

fn default_assignment(p: &PieceSpec) -> Result<[(i64, i64); 4], Failure> {
    if oeis::preset_of(p) == Some("nightrider") {
        return Ok([(2, 1), (1, -2), (1, 2), (2, -1)]);
    }
    let v: Vec<(i64, i64)> = p.moves.iter().map(|mv| (mv.c, mv.d)).collect();
    v.try_into().map_err(|_| Failure::usage("twisted spirals need a piece with exactly four moves"))
}

pub fn build_config(kind: KindArg, p: &PieceSpec, q: usize, choice: Option<usize>, assignment: Option<&str>) -> Result<GeneratedConfig, Failure> {
    Ok(match kind {
        KindArg::Rectangle => golden_rectangle(q)?,
        KindArg::Spiral => queens_spiral(q)?,
        KindArg::Parallelogram => match choice {
            None => best_parallelogram(p, q)?,
            Some(k) => {
                let chs = parallelogram_choices();
                let ch = *chs.get(k).ok_or_else(|| Failure::usage(format!("--choice must be below {}", chs.len())))?;
                golden_parallelogram(p, ch, q)?
            }
        },
        KindArg::Twisted => {
            let a = match assignment {
                Some(s) => parse_assignment(s)?,
                None => default_assignment(p)?,
            };
            twisted_spiral(p, a, q)?
        }
    })
}

fn cmd_spiral(
    kind: KindArg,
    pq: &PieceQ,
    out: Option<&Path>,
    choice: Option<usize>,
    assignment: Option<&str>,
    m: &mut RunManifest,
) -> Run {
    let (p, q) = parse_piece(pq, m)?;
    let c = build_config(kind, &p, q, choice, assignment)?;
    let delta = config_denominator(&c)?;
    let vertex = is_vertex(&c, &p)?;
    println!("kind={}", c.kind);
    println!("q={}", c.q());
    println!("delta={delta}");
    println!("extent={}x{}", c.width(), c.height());
    let pos: Vec<String> = c.positions.iter().map(|(x, y)| format!("({x},{y})")).collect();
    println!("positions={}", pos.join(" "));
    println!("vertex-for-{}={vertex}", p.label());
    if let Some(path) = out {
        m.write_output(path, &emit_svg(&Figure::from_config(&c), &SvgOptions::default()))?;
    }
    if delta != BigInt::from(c.claimed_delta) {
        eprintln!("generator claimed {} but the constraints give {delta}", c.claimed_delta);
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_PASS)
}

fn print_mismatches(list: &[oeis::Mismatch]) {
    for x in list.iter().take(10) {
        let e = x.expected.as_ref().map_or("missing".to_string(), |v| v.to_string());
        println!("  n={} expected={e} brute={}", x.n, x.actual);
    }
}

fn cmd_verify(pq: &PieceQ, n_max: u32, want_oeis: bool, want_formula: bool, m: &mut RunManifest) -> Run {
    let (p, q) = parse_piece(pq, m)?;
    m.n_range = Some((1, n_max));
    let want_formula = want_formula || !want_oeis;
    let brute = counts(&p, &Board::Square, q, n_max)?;
    let mut code = EXIT_PASS;

    if want_formula {
        let id = library_formula(&p, q)
            .ok_or_else(|| Failure::usage(format!("no closed form for {} with q={q}", p.label())))?;
        let mut bad = Vec::new();
        for (n, v) in &brute {
            let f = formula_eval(id, q, *n)?;
            if f != rint(v.clone()) {
                bad.push(oeis::Mismatch { n: *n, expected: Some(f.to_integer()), actual: v.clone() });
            }
        }
        println!("formula {id}: {}/{} agree", brute.len() - bad.len(), brute.len());
        print_mismatches(&bad);
        if !bad.is_empty() {
            code = EXIT_MISMATCH;
        }
    }

    if want_oeis {
        let map = oeis::oeis_mapping(&p, q)
            .ok_or_else(|| Failure::usage(format!("no OEIS sequence listed for {} with q={q}", p.label())))?;
        let opts = FetchOptions {
            cache_dir: oeis::default_cache_dir(),
            network: network_allowed(),
            fixtures: Some(oeis::bundled_fixtures()),
        };
        let got = oeis::oeis_fetch(map.id, &opts)?;
        if let Some(k) = &got.cache_key {
            m.cache_keys.push(k.display().to_string());
        }
        let rep = oeis::compare_counts(&got.entry, map.shift, &brute);
        println!(
            "oeis {} (index shift {}, source {}): {}/{} agree",
            rep.id,
            rep.shift,
            got.source,
            rep.compared - rep.mismatches.len(),
            rep.compared
        );
        print_mismatches(&rep.mismatches);
        if !rep.passed() {
            code = EXIT_MISMATCH;
        }
    }
    Ok(code)
}

/// Set `RIDERLAB_OFFLINE=1` to skip network access.
pub fn network_allowed() -> bool {
    std::env::var("RIDERLAB_OFFLINE").map_or(true, |v| v.is_empty() || v == "0")
}

fn cmd_oeis(id: &str, cache: Option<&Path>, m: &mut RunManifest) -> Run {
    let opts = FetchOptions {
        cache_dir: cache.map_or_else(oeis::default_cache_dir, Path::to_path_buf),
        network: network_allowed(),
        fixtures: Some(oeis::bundled_fixtures()),
    };
    let got = oeis::oeis_fetch(id, &opts)?;
    if let Some(k) = &got.cache_key {
        m.cache_keys.push(k.display().to_string());
    }
    eprintln!("{}: {} terms from offset {}, source {}", id, got.entry.values.len(), got.entry.offset, got.source);
    print!("{}", got.entry.to_bfile());
    Ok(EXIT_PASS)
}

pub fn run(cli: &Cli, m: &mut RunManifest) -> Run {
    match &cli.cmd {
        Command::Count { pq, n_max, board, csv } => cmd_count(pq, *n_max, *board, csv.as_deref(), m),
        Command::Fit { pq, period_max, json } => cmd_fit(pq, *period_max, json.as_deref(), m),
        Command::Period { pq, n_max } => cmd_period(pq, *n_max),
        Command::Denom { pq, budget } => cmd_denom(pq, *budget),
        Command::Vertices { pq, dump, budget } => cmd_vertices(pq, dump.as_deref(), *budget, m),
        Command::Spiral { kind, pq, svg, choice, assignment } => {
            cmd_spiral(*kind, pq, svg.as_deref(), *choice, assignment.as_deref(), m)
        }
        Command::Verify { pq, n_max, oeis, formula } => cmd_verify(pq, *n_max, *oeis, *formula, m),
        Command::Oeis { id, cache } => cmd_oeis(id, cache.as_deref(), m),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count { .. } => "count",
        Command::Fit { .. } => "fit",
        Command::Period { .. } => "period",
        Command::Denom { .. } => "denom",
        Command::Vertices { .. } => "vertices",
        Command::Spiral { .. } => "spiral",
        Command::Verify { .. } => "verify",
        Command::Oeis { .. } => "oeis",
    }
}

/// Parses, runs, writes the manifest if asked, and returns the exit code.
pub fn main_with(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let mut m = RunManifest::new(command_name(&cli.cmd), args.into_iter().skip(1).collect());
    let code = match run(&cli, &mut m) {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    };
    m.exit_code = code;
    m.finished_unix = crate::manifest::now_unix();
    if let Some(path) = &cli.manifest {
        if let Err(e) = std::fs::write(path, m.to_json()) {
            eprintln!("error: cannot write manifest: {e}");
            return EXIT_USAGE;
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse() {
        let c = Cli::try_parse_from(["riderlab", "count", "--piece", "queen", "--q", "2", "--n-max", "5", "--board", "triangle"]).unwrap();
        assert!(matches!(c.cmd, Command::Count { n_max: 5, board: BoardArg::Triangle, .. }));
        let c = Cli::try_parse_from(["riderlab", "spiral", "--kind", "twisted", "--piece", "nightrider", "--q", "5"]).unwrap();
        assert!(matches!(c.cmd, Command::Spiral { kind: KindArg::Twisted, .. }));
        assert!(Cli::try_parse_from(["riderlab", "count", "--piece", "queen", "--q", "0", "--n-max", "5"]).is_err());
        assert!(Cli::try_parse_from(["riderlab", "denom", "--piece", "queen"]).is_err());
    }

    #[test]
    fn assignments() {
        assert_eq!(parse_assignment("(2,1);(1,-2);(1,2);(2,-1)").unwrap(), [(2, 1), (1, -2), (1, 2), (2, -1)]);
        assert!(parse_assignment("(2,1);(1,-2)").is_err());
        assert!(parse_assignment("2,1;1,2;3,4;5,6").is_err());
    }

    #[test]
    fn csv_format() {
        assert_eq!(csv(&[(1, BigInt::from(0)), (2, BigInt::from(2))]), "n,count\n1,0\n2,2\n");
    }

    #[test]
    fn formulas_known() {
        let p = |s: &str| PieceSpec::parse(s).unwrap();
        assert_eq!(library_formula(&p("queen"), 3), Some(FormulaId::QueenTable));
        assert_eq!(library_formula(&p("queen"), 5), None);
        assert_eq!(library_formula(&p("(1,0);(0,1)"), 7), Some(FormulaId::RookGeneral));
        assert_eq!(library_formula(&p("n3"), 2), Some(FormulaId::PartialNightriderQ2 { k: 3 }));
    }
}
