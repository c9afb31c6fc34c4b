//! OEIS b-files: parsing, disk cache, fetching, and comparison with brute counts.

use num::bigint::BigInt;
use regex::Regex;
use riderlab::counting::count_placements;
use riderlab::model::{Board, PieceSpec, PRESET_NAMES};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Duration;

#[derive(Debug)]
pub enum OeisError {
    BadId(String),
    Malformed { id: String, line: usize, msg: String },
    Unavailable { id: String, why: String },
    Io(std::io::Error),
    Count(riderlab::Error),
}

impl fmt::Display for OeisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OeisError::BadId(s) => write!(f, "`{s}` is not a sequence id (expected A followed by six digits)"),
            OeisError::Malformed { id, line, msg } => write!(f, "malformed b-file for {id}, line {line}: {msg}"),
            OeisError::Unavailable { id, why } => write!(f, "{id} not cached and not fetchable: {why}"),
            OeisError::Io(e) => write!(f, "{e}"),
            OeisError::Count(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OeisError {}

impl From<std::io::Error> for OeisError {
    fn from(e: std::io::Error) -> Self {
        OeisError::Io(e)
    }
}

impl From<riderlab::Error> for OeisError {
    fn from(e: riderlab::Error) -> Self {
        OeisError::Count(e)
    }
}

fn id_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^A\d{6}$").unwrap())
}

pub fn check_id(id: &str) -> Result<(), OeisError> {
    if id_regex().is_match(id) {
        Ok(())
    } else {
        Err(OeisError::BadId(id.to_string()))
    }
}

/// Terms of one sequence; `offset` is the first index present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisEntry {
    pub id: String,
    pub offset: i64,
    pub values: Vec<(i64, BigInt)>,
}

impl OeisEntry {
    pub fn new(id: &str, values: Vec<(i64, BigInt)>) -> Result<OeisEntry, OeisError> {
        check_id(id)?;
        if let Some(w) = values.windows(2).find(|w| w[1].0 <= w[0].0) {
            return Err(OeisError::Malformed { id: id.into(), line: 0, msg: format!("index {} after {}", w[1].0, w[0].0) });
        }
        let offset = values.first().map_or(0, |v| v.0);
        Ok(OeisEntry { id: id.to_string(), offset, values })
    }

    pub fn get(&self, n: i64) -> Option<&BigInt> {
        self.values.binary_search_by_key(&n, |v| v.0).ok().map(|k| &self.values[k].1)
    }

    /// b-file text: one `n value` pair per line.
    pub fn to_bfile(&self) -> String {
        self.values.iter().map(|(n, v)| format!("{n} {v}\n")).collect()
    }

    pub fn file_name(&self) -> String {
        bfile_name(&self.id)
    }
}

pub fn bfile_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

/// Parses b-file text. Blank lines and `#` comments are skipped.
pub fn parse_bfile(id: &str, text: &str) -> Result<OeisEntry, OeisError> {
    check_id(id)?;
    let mut values = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| OeisError::Malformed { id: id.into(), line: k + 1, msg: msg.into() };
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad("expected two fields"));
        };
        let n: i64 = a.parse().map_err(|_| bad("index is not an integer"))?;
        let v: BigInt = b.parse().map_err(|_| bad("value is not an integer"))?;
        if values.last().is_some_and(|&(m, _)| n <= m) {
            return Err(bad("indices not strictly increasing"));
        }
        values.push((n, v));
    }
    if values.is_empty() {
        return Err(OeisError::Malformed { id: id.into(), line: 0, msg: "no terms".into() });
    }
    OeisEntry::new(id, values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Cache,
    Network,
    /// Bundled offline reconstruction, not data downloaded from OEIS.
    Fixture,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Cache => "cache",
            Source::Network => "network",
            Source::Fixture => "fixture (offline reconstruction)",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Fetched {
    pub entry: OeisEntry,
    pub source: Source,
    /// Cache file the entry was read from or written to.
    pub cache_key: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct FetchOptions {
    pub cache_dir: PathBuf,
    pub network: bool,
    /// Directory of bundled b-files used when the cache misses and the network fails.
    pub fixtures: Option<PathBuf>,
}

pub fn bundled_fixtures() -> PathBuf {
    match std::env::var_os("RIDERLAB_FIXTURES") {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("oeis"),
    }
}

/// `RIDERLAB_CACHE`, else the user cache directory, else `.riderlab-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(p) = std::env::var_os("RIDERLAB_CACHE") {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(p).join("riderlab");
    }
    if let Some(p) = std::env::var_os("HOME") {
        return PathBuf::from(p).join(".cache").join("riderlab");
    }
    PathBuf::from(".riderlab-cache")
}

fn download(id: &str) -> Result<String, String> {
    let url = format!("https://oeis.org/{id}/{}", bfile_name(id));
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(30)))
        .build()
        .into();
    let mut resp = agent.get(&url).call().map_err(|e| e.to_string())?;
    resp.body_mut().read_to_string().map_err(|e| e.to_string())
}

/// Cache, then network (written back to the cache), then bundled fixtures.
pub fn oeis_fetch(id: &str, opts: &FetchOptions) -> Result<Fetched, OeisError> {
    check_id(id)?;
    let key = opts.cache_dir.join(bfile_name(id));
    if key.is_file() {
        let entry = parse_bfile(id, &std::fs::read_to_string(&key)?)?;
        return Ok(Fetched { entry, source: Source::Cache, cache_key: Some(key) });
    }
    let mut why = String::from("network disabled");
    if opts.network {
        match download(id) {
            Ok(text) => {
                let entry = parse_bfile(id, &text)?;
                std::fs::create_dir_all(&opts.cache_dir)?;
                std::fs::write(&key, &text)?;
                return Ok(Fetched { entry, source: Source::Network, cache_key: Some(key) });
            }
            Err(e) => why = e,
        }
    }
    if let Some(dir) = &opts.fixtures {
        let path = dir.join(bfile_name(id));
        if path.is_file() {
            let entry = parse_bfile(id, &std::fs::read_to_string(&path)?)?;
            return Ok(Fetched { entry, source: Source::Fixture, cache_key: None });
        }
    }
    Err(OeisError::Unavailable { id: id.to_string(), why })
}

/// Sequence for (piece, q) and the index shift: our `n` is the OEIS index plus `shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mapping {
    pub id: &'static str,
    pub shift: i64,
}

const TABLE: &[(&str, &[&str])] = &[
    ("rook", &["A163102", "A179058", "A179059", "A179060", "A179061", "A179062", "A179063", "A179064", "A179065"]),
    ("bishop", &["A172123", "A172124", "A172127", "A172129", "A176886", "A187239", "A187240", "A187241", "A187242"]),
    ("queen", &["A036464", "A047659", "A061994", "A108792", "A176186", "A178721"]),
    ("nightrider", &["A172141", "A173429"]),
];

/// Sequences whose index runs one behind the board size.
const SHIFTED: &[&str] = &["A163102"];

/// The preset a piece is equal to, by move set.
pub fn preset_of(piece: &PieceSpec) -> Option<&'static str> {
    let moves = piece.sorted_moves();
    PRESET_NAMES
        .iter()
        .copied()
        .find(|name| PieceSpec::preset(name).is_ok_and(|p| p.sorted_moves() == moves))
}

pub fn oeis_mapping(piece: &PieceSpec, q: usize) -> Option<Mapping> {
    let name = preset_of(piece)?;
    if q == 1 {
        return Some(Mapping { id: "A000290", shift: 0 });
    }
    let (_, ids) = TABLE.iter().find(|(p, _)| *p == name)?;
    let id = *ids.get(q.checked_sub(2)?)?;
    Some(Mapping { id, shift: SHIFTED.contains(&id) as i64 })
}

/// Every (piece, q, mapping) in the table.
pub fn all_mappings() -> Vec<(&'static str, usize, Mapping)> {
    let mut out = Vec::new();
    for (name, ids) in TABLE {
        let p = PieceSpec::preset(name).unwrap();
        for q in 1..=ids.len() + 1 {
            out.push((*name, q, oeis_mapping(&p, q).unwrap()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: i64,
    pub expected: Option<BigInt>,
    pub actual: BigInt,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub id: String,
    pub shift: i64,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.compared > 0
    }
}

/// Compares precomputed counts `(n, u(q;n))` with the entry under the given shift.
/// Board sizes missing from the entry count as mismatches.
pub fn compare_counts(entry: &OeisEntry, shift: i64, counts: &[(i64, BigInt)]) -> VerifyReport {
    let mut mismatches = Vec::new();
    for (n, actual) in counts {
        let expected = entry.get(n - shift);
        if expected != Some(actual) {
            mismatches.push(Mismatch { n: *n, expected: expected.cloned(), actual: actual.clone() });
        }
    }
    VerifyReport { id: entry.id.clone(), shift, compared: counts.len(), mismatches }
}

pub fn brute_counts(piece: &PieceSpec, board: &Board, q: usize, n_max: u32) -> Result<Vec<(i64, BigInt)>, riderlab::Error> {
    (1..=n_max).map(|n| Ok((n as i64, count_placements(piece, board, q, n)?))).collect()
}

/// Brute counts for `n <= n_max` against the mapped sequence.
pub fn verify_against_oeis(piece: &PieceSpec, q: usize, n_max: u32, entry: &OeisEntry) -> Result<VerifyReport, OeisError> {
    let m = oeis_mapping(piece, q).ok_or_else(|| OeisError::Unavailable {
        id: entry.id.clone(),
        why: format!("no sequence listed for {} with q={q}", piece.label()),
    })?;
    if m.id != entry.id {
        return Err(OeisError::BadId(format!("{} (expected {})", entry.id, m.id)));
    }
    let counts = brute_counts(piece, &Board::Square, q, n_max)?;
    Ok(compare_counts(entry, m.shift, &counts))
}
