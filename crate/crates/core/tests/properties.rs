use num::bigint::BigInt;
use num::{One, Signed, Zero};
use proptest::prelude::*;
use riderlab::configs::generate_trajectory;
use riderlab::counting::{alpha_line, count_placements};
use riderlab::exactmath::{
    elem_sym, fib, mat_vec, rat, rint, solve_linear, stirling_first, Rational,
};
use riderlab::model::{antipode, attacks, canonical_move, pt, Board, Move, PieceSpec, PRESET_NAMES};
use riderlab::polytope::{
    enumerate_vertices, one_move_denominator, one_move_denominator_square, polytope_denominator, verify_vertex,
};
use riderlab::quasipoly::{detect_period, formula_eval, interpolate, parity_check, FormulaId};

fn piece(s: &str) -> PieceSpec {
    PieceSpec::parse(s).unwrap()
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=30).prop_map(|(a, b)| rat(a, b))
}

fn small_move() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..=4, -4i64..=4).prop_filter("nonzero primitive", |&(c, d)| (c, d) != (0, 0) && num::integer::gcd(c, d) == 1)
}

fn brute_values(p: &PieceSpec, q: usize, top: i64) -> Vec<(i64, BigInt)> {
    (1..=top).map(|n| (n, count_placements(p, &Board::Square, q, n as u32).unwrap())).collect()
}

// exactmath

proptest! {
    #[test]
    fn rational_field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        let r = Rational::new(a.numer() * 7, a.denom() * 7);
        prop_assert_eq!(r.reduced(), a.clone());
    }
}

#[test]
fn fibonacci_recurrence() {
    for i in 0..=60 {
        assert_eq!(fib(i + 2), fib(i + 1) + fib(i));
    }
}

#[test]
fn stirling_is_elementary_symmetric() {
    for n in 0..=20usize {
        for q in 0..=n {
            assert_eq!(stirling_first(n + 1, (n + 1 - q) as i64).abs(), elem_sym(q, n), "n={n} q={q}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn solve_then_multiply(m in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 6), 6),
                           x in proptest::collection::vec(small_rat(), 6)) {
        let a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| rint(v)).collect()).collect();
        let b = mat_vec(&a, &x);
        match solve_linear(&a, &b) {
            Ok(sol) => prop_assert_eq!(mat_vec(&a, &sol), b),
            Err(_) => prop_assert!(riderlab::exactmath::rank(&a) < 6),
        }
    }
}

// model

proptest! {
    #[test]
    fn attack_symmetry(m in proptest::collection::vec(small_move(), 1..4), a in (0i64..8, 0i64..8), b in (0i64..8, 0i64..8)) {
        if let Ok(p) = PieceSpec::from_pairs(&m, None) {
            let (za, zb) = (pt(rint(a.0), rint(a.1)), pt(rint(b.0), rint(b.1)));
            prop_assert_eq!(attacks(&za, &zb, &p), attacks(&zb, &za, &p));
            prop_assert!(attacks(&za, &za, &p));
        }
    }

    #[test]
    fn canonical_idempotent((c, d) in small_move()) {
        let m = canonical_move(c, d).unwrap();
        prop_assert_eq!(canonical_move(m.c, m.d).unwrap(), m);
        prop_assert_eq!(canonical_move(-c, -d).unwrap(), m);
    }

    #[test]
    fn antipode_involution((c, d) in small_move()) {
        let m = Move::new(c, d).unwrap();
        for corner in Board::Square.corners() {
            if let Some(a) = antipode(&Board::Square, &corner, &m).unwrap() {
                if let Ok(Some(back)) = antipode(&Board::Square, &a, &m) {
                    prop_assert_eq!(back, corner.clone());
                }
            }
        }
    }
}

// counting

fn symmetry(k: u8, (c, d): (i64, i64)) -> (i64, i64) {
    let (c, d) = if k & 4 != 0 { (d, c) } else { (c, d) };
    (if k & 1 != 0 { -c } else { c }, if k & 2 != 0 { -d } else { d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn counts_invariant_under_board_symmetries(m in proptest::collection::vec(small_move(), 1..4), k in 0u8..8, q in 1usize..=3, n in 1u32..=6) {
        if let Ok(p) = PieceSpec::from_pairs(&m, None) {
            let img: Vec<(i64, i64)> = m.iter().map(|&v| symmetry(k, v)).collect();
            let s = PieceSpec::from_pairs(&img, None).unwrap();
            prop_assert_eq!(count_placements(&p, &Board::Square, q, n).unwrap(), count_placements(&s, &Board::Square, q, n).unwrap());
        }
    }
}

#[test]
fn lateral_nightrider_orientations() {
    let a = PieceSpec::from_pairs(&[(2, 1), (2, -1)], None).unwrap();
    let b = PieceSpec::from_pairs(&[(1, 2), (1, -2)], None).unwrap();
    for q in 1..=3 {
        for n in 1..=8 {
            assert_eq!(count_placements(&a, &Board::Square, q, n).unwrap(), count_placements(&b, &Board::Square, q, n).unwrap());
        }
    }
}

#[test]
fn one_cell_board_holds_one_piece() {
    for name in PRESET_NAMES {
        for q in 2..=4 {
            assert!(count_placements(&piece(name), &Board::Square, q, 1).unwrap().is_zero());
        }
    }
}

#[test]
fn more_moves_fewer_placements() {
    for a in PRESET_NAMES {
        for b in PRESET_NAMES {
            let (pa, pb) = (piece(a), piece(b));
            if a == b || !pa.is_subpiece_of(&pb) {
                continue;
            }
            for q in 1..=3 {
                for n in 1..=8 {
                    let (ca, cb) = (
                        count_placements(&pa, &Board::Square, q, n).unwrap(),
                        count_placements(&pb, &Board::Square, q, n).unwrap(),
                    );
                    assert!(cb <= ca, "{b} vs {a} q={q} n={n}");
                }
            }
        }
    }
}

#[test]
fn line_counts_satisfy_reflection() {
    for (c, d) in [(1, 0), (1, 1), (2, 1), (1, -2), (3, 1), (3, 2)] {
        let m = Move::new(c, d).unwrap();
        let p = c.abs().max(d.abs()) as usize;
        let top = (6 * p) as i64;
        let vals: Vec<(i64, BigInt)> = (1..=top).map(|n| (n, alpha_line(&m, n as u32))).collect();
        let fit = interpolate(&vals, 3, p, None).unwrap();
        assert!(parity_check(&fit, 3), "({c},{d})");
    }
}

// quasipoly

fn library_formula(name: &str, q: usize) -> Option<FormulaId> {
    use FormulaId::*;
    Some(match name {
        "rook" => RookGeneral,
        "semirook" => SemirookGeneral,
        "bishop" => BishopTable,
        "semibishop" => SemibishopTable,
        "queen" => QueenTable,
        "nightrider" if q == 2 => NightriderQ2,
        "n1" | "n2-lateral" | "n2-inclined" | "n2-ortho" | "n3" if q == 2 => {
            PartialNightriderQ2 { k: piece(name).moves.len() as u32 }
        }
        _ => return None,
    })
}

#[test]
fn formulas_match_brute_on_presets() {
    let mut checked = 0;
    for name in PRESET_NAMES {
        for q in 1..=3 {
            if let Some(id) = library_formula(name, q) {
                for n in 1..=10 {
                    let f = formula_eval(id, q, n).unwrap();
                    let b = rint(count_placements(&piece(name), &Board::Square, q, n as u32).unwrap());
                    assert_eq!(f, b, "{name} q={q} n={n}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 200);
}

#[test]
fn period_divides_denominator() {
    // nightriders at q = 3 have period 60, beyond brute-force reach
    for (name, qmax) in [("queen", 3), ("nightrider", 2)] {
        let p = piece(name);
        for q in 1..=qmax {
            let v = brute_values(&p, q, (4 * (2 * q + 3)) as i64);
            let per = detect_period(&v, 2 * q, 2, 2).unwrap();
            let den = polytope_denominator(&p, q, None).unwrap();
            assert!((&den % BigInt::from(per)).is_zero(), "{name} q={q}: period {per}, denominator {den}");
        }
    }
}

#[test]
fn fitted_leading_coefficient() {
    for name in ["rook", "bishop", "queen", "nightrider", "semiqueen"] {
        for q in 1..=3usize {
            if name == "nightrider" && q == 3 {
                continue;
            }
            let p = piece(name);
            let per = if q >= 2 && name != "rook" { 2 } else { 1 };
            let v = brute_values(&p, q, ((2 * q + 3) * per) as i64);
            let fit = interpolate(&v, 2 * q, per, None).unwrap();
            let lead = Rational::new(BigInt::one(), riderlab::exactmath::falling(q as i64, q as i64));
            for c in &fit.constituents {
                assert_eq!(c[2 * q], lead, "{name} q={q}");
            }
        }
    }
}

// polytope

#[test]
fn vertices_verify_independently() {
    for name in PRESET_NAMES {
        for q in 1..=3 {
            for v in enumerate_vertices(&piece(name), q, None).unwrap() {
                assert!(verify_vertex(&v).unwrap(), "{name} q={q}: {}", v.dump_line());
                assert!(v.position.iter().all(|x| !x.is_negative() && *x <= Rational::one()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn one_move_paths_agree(c in -15i64..=15, d in -15i64..=15, q in 1usize..=12) {
        prop_assume!((c, d) != (0, 0) && num::integer::gcd(c, d) == 1);
        let m = Move::new(c, d).unwrap();
        prop_assert_eq!(one_move_denominator(&Board::Square, &m, q).unwrap(), one_move_denominator_square(&m, q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn vertex_set_ignores_move_order(m in proptest::collection::vec(small_move(), 2..4), seed in any::<u64>()) {
        if let Ok(p) = PieceSpec::from_pairs(&m, None) {
            let mut shuffled = m.clone();
            let k = shuffled.len();
            shuffled.rotate_left((seed as usize) % k);
            if seed & 1 == 1 {
                shuffled.reverse();
            }
            let s = PieceSpec::from_pairs(&shuffled, None).unwrap();
            let a: Vec<_> = enumerate_vertices(&p, 3, None).unwrap().into_iter().map(|v| v.position).collect();
            let b: Vec<_> = enumerate_vertices(&s, 3, None).unwrap().into_iter().map(|v| v.position).collect();
            prop_assert_eq!(a, b);
        }
    }
}

// configs

proptest! {
    #[test]
    fn trajectory_denominators(c in 1u64..=15, d in 1u64..=15) {
        prop_assume!(num::integer::gcd(c, d) == 1);
        let t = generate_trajectory(c, d, 200).unwrap();
        prop_assert!(t.is_primitive());
        let (cb, cd) = (BigInt::from(c), BigInt::from(c * d));
        let mut crossed = false;
        for p in &t.points {
            crossed |= p.1.is_one();
            let lim = if crossed { &cd } else { &cb };
            for x in [&p.0, &p.1] {
                prop_assert!(x >= &Rational::zero() && x <= &Rational::one());
                prop_assert!((lim % x.denom()).is_zero(), "({c},{d}) {x}");
            }
        }
    }
}
