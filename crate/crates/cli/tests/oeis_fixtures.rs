use num::bigint::BigInt;
use riderlab::model::PieceSpec;
use riderlab_cli::oeis::{
    all_mappings, bundled_fixtures, compare_counts, oeis_fetch, oeis_mapping, parse_bfile, verify_against_oeis,
    FetchOptions, OeisEntry, Source,
};

fn offline(cache: &std::path::Path) -> FetchOptions {
    FetchOptions { cache_dir: cache.to_path_buf(), network: false, fixtures: Some(bundled_fixtures()) }
}

fn fetch(id: &str) -> OeisEntry {
    let dir = tempfile::tempdir().unwrap();
    oeis_fetch(id, &offline(dir.path())).unwrap().entry
}

fn piece(s: &str) -> PieceSpec {
    PieceSpec::parse(s).unwrap()
}

#[test]
fn anchor_values() {
    assert_eq!(fetch("A036464").get(3), Some(&BigInt::from(8)));
    assert_eq!(fetch("A172141").get(3), Some(&BigInt::from(28)));
}

#[test]
fn every_mapped_sequence_has_a_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for (name, q, m) in all_mappings() {
        let got = oeis_fetch(m.id, &offline(dir.path())).unwrap_or_else(|e| panic!("{name} q={q}: {e}"));
        assert_eq!(got.source, Source::Fixture);
        assert!(got.entry.values.len() >= 9, "{}", m.id);
    }
}

#[test]
fn warm_cache_replays_without_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let cold = oeis_fetch("A047659", &offline(dir.path())).unwrap();
    std::fs::write(dir.path().join(cold.entry.file_name()), cold.entry.to_bfile()).unwrap();
    let opts = FetchOptions { cache_dir: dir.path().to_path_buf(), network: false, fixtures: None };
    let warm = oeis_fetch("A047659", &opts).unwrap();
    assert_eq!(warm.source, Source::Cache);
    assert_eq!(warm.entry, cold.entry);
}

#[test]
fn cold_cache_without_network_or_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let opts = FetchOptions { cache_dir: dir.path().to_path_buf(), network: false, fixtures: None };
    assert!(oeis_fetch("A036464", &opts).is_err());
    assert!(oeis_fetch("A999999", &offline(dir.path())).is_err());
}

#[test]
fn bfile_round_trip() {
    let mut n = 0;
    for f in std::fs::read_dir(bundled_fixtures()).unwrap() {
        let path = f.unwrap().path();
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let id = format!("A{}", &stem[1..]);
        let a = parse_bfile(&id, &std::fs::read_to_string(&path).unwrap()).unwrap();
        let b = parse_bfile(&id, &a.to_bfile()).unwrap();
        assert_eq!(a, b, "{id}");
        assert_eq!(a.to_bfile(), b.to_bfile());
        n += 1;
    }
    assert!(n >= 20, "only {n} fixtures");
}

#[test]
fn queens_two() {
    let r = verify_against_oeis(&piece("queen"), 2, 15, &fetch("A036464")).unwrap();
    assert!(r.passed(), "{:?}", r.mismatches);
    assert_eq!(r.compared, 15);
}

#[test]
fn rooks_two_needs_the_shift() {
    let e = fetch("A163102");
    let r = verify_against_oeis(&piece("rook"), 2, 15, &e).unwrap();
    assert!(r.passed(), "{:?}", r.mismatches);
    assert_eq!(r.shift, 1);
    let brute = riderlab_cli::oeis::brute_counts(&piece("rook"), &riderlab::model::Board::Square, 2, 15).unwrap();
    assert!(!compare_counts(&e, 0, &brute).passed());
}

#[test]
fn nightriders_three() {
    let r = verify_against_oeis(&piece("nightrider"), 3, 10, &fetch("A173429")).unwrap();
    assert!(r.passed(), "{:?}", r.mismatches);
}

#[test]
fn wrong_sequence_or_piece_is_rejected() {
    assert!(verify_against_oeis(&piece("queen"), 2, 5, &fetch("A172141")).is_err());
    assert!(verify_against_oeis(&piece("semiqueen"), 2, 5, &fetch("A036464")).is_err());
    assert!(oeis_mapping(&piece("queen"), 8).is_none());
}

#[test]
fn single_corruption_never_passes() {
    for (name, q, id) in [("queen", 2, "A036464"), ("rook", 3, "A179058"), ("bishop", 2, "A172123"), ("nightrider", 2, "A172141")] {
        let p = piece(name);
        let clean = fetch(id);
        let shift = oeis_mapping(&p, q).unwrap().shift;
        let brute = riderlab_cli::oeis::brute_counts(&p, &riderlab::model::Board::Square, q, 12).unwrap();
        assert!(compare_counts(&clean, shift, &brute).passed(), "{id} clean");
        for k in 0..brute.len() {
            let n = brute[k].0 - shift;
            for delta in [-1i64, 1] {
                let mut bad = clean.clone();
                let slot = bad.values.iter_mut().find(|v| v.0 == n).unwrap();
                slot.1 += delta;
                assert!(!compare_counts(&bad, shift, &brute).passed(), "{id} n={n} {delta:+}");
            }
        }
        // whole sequence off by one index
        let moved = OeisEntry::new(id, clean.values.iter().map(|(n, v)| (n + 1, v.clone())).collect()).unwrap();
        assert!(!compare_counts(&moved, shift, &brute).passed(), "{id} shifted");
    }
}
