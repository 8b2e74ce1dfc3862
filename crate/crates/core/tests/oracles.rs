//! Values computed by the independent brute-force oracle in `oracle.py` and frozen here.

use subshift::cohomology::{ap_induced_matrix, cohomology, Method};
use subshift::complexes::bd_subcomplex_and_eventual_range;
use subshift::language::{admitted_words, complexity};
use subshift::pisot::{balanced_pair_algorithm, classify_pisot, strong_coincidence, BalancedPairBudget};
use subshift::properize::pre_left_properize;
use subshift::recognizability::{find_fixed_letter, return_words};
use subshift::search::{enumerate_substitutions, CanonicalEnumerator};
use subshift::{IntMatrix, IntPolynomial, Substitution, Word};

fn sub(s: &str) -> Substitution {
    Substitution::parse(s).unwrap()
}

fn rendered(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::render).collect()
}

#[test]
fn period_doubling_expansion() {
    assert_eq!(sub("01,00").iterate(&[0], 3).unwrap().render(), "01000101");
}

#[test]
fn complexity_prefixes() {
    let cases: &[(&str, [usize; 8])] = &[
        ("01,0", [2, 3, 4, 5, 6, 7, 8, 9]),
        ("01,10", [2, 4, 6, 10, 12, 16, 20, 22]),
        ("01,00", [2, 3, 5, 6, 8, 10, 11, 12]),
        ("0001,001", [2, 3, 4, 5, 6, 7, 8, 9]),
        ("01,02,0", [3, 5, 7, 9, 11, 13, 15, 17]),
        ("01,20,0", [3, 5, 7, 10, 12, 14, 17, 20]),
        ("2011,02,0", [3, 8, 12, 16, 21, 26, 30, 34]),
    ];
    for (s, want) in cases {
        assert_eq!(complexity(&sub(s), 8).unwrap(), want, "{s}");
    }
}

#[test]
fn short_word_listings() {
    let cases: &[(&str, &[&str], &[&str])] = &[
        ("001,01", &["00", "01", "10"], &["001", "010", "100", "101"]),
        ("01,02,0", &["00", "01", "02", "10", "20"], &["001", "010", "020", "100", "101", "102", "201"]),
        ("01,20,0", &["00", "01", "10", "12", "20"], &["000", "001", "010", "012", "101", "120", "200"]),
    ];
    for (s, l2, l3) in cases {
        assert_eq!(rendered(&admitted_words(&sub(s), 2).unwrap().words), *l2, "{s}");
        assert_eq!(rendered(&admitted_words(&sub(s), 3).unwrap().words), *l3, "{s}");
    }
}

#[test]
fn return_word_sets() {
    let cases: &[(&str, &[&str])] = &[
        ("01,0", &["0", "01"]),
        ("01,10", &["0", "01", "011"]),
        ("01,02,0", &["0", "01", "02"]),
        ("0001,001", &["0", "01"]),
    ];
    for (s, want) in cases {
        let p = sub(s);
        assert_eq!(rendered(&return_words(&p, find_fixed_letter(&p)).unwrap().words), *want, "{s}");
    }
}

#[test]
fn barge_diamond_eventual_ranges() {
    let cases: &[(&str, &[&str], usize, usize, usize)] = &[
        ("01,0", &["00", "10"], 1, 0, 2),
        ("01,10", &["00", "01", "10", "11"], 1, 1, 2),
        ("0001,001", &["10"], 1, 0, 2),
        ("01,02,0", &["00", "10", "20"], 1, 0, 3),
        ("01,20,0", &["00", "10"], 1, 0, 3),
        ("001,01", &["10"], 1, 0, 2),
    ];
    for &(s, er, k, m, total) in cases {
        let r = bd_subcomplex_and_eventual_range(&sub(s)).unwrap();
        let labels: Vec<&str> = r.eventual_range.edges.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, er, "{s}");
        assert_eq!((r.components, r.rank), (k, m), "{s}");
        assert_eq!(cohomology(&sub(s), Method::BargeDiamond).unwrap().total_rank, total, "{s}");
    }
}

#[test]
fn anderson_putnam_induced_maps() {
    // char polys are basis independent, so they compare against any rational cycle basis
    let cases: &[(&str, &[i64], usize)] = &[
        ("01,0", &[-1, -1, 1], 2),
        ("01,10", &[0, -2, -1, 1], 2),
        ("0001,001", &[1, -4, 1], 2),
        ("01,02,0", &[-1, -1, -1, 1], 3),
        ("01,20,0", &[-1, -1, -1, 1], 3),
        ("001,01", &[1, -3, 1], 2),
    ];
    for &(s, cp, rank) in cases {
        let ap = ap_induced_matrix(&sub(s)).unwrap();
        assert_eq!(ap.matrix.char_poly(), IntPolynomial::from_i64(cp), "{s}");
        assert_eq!(ap.matrix.eventual_rank(), rank, "{s}");
    }
}

#[test]
fn proper_presentations() {
    let cases: &[(&str, &str, &[&[i64]], usize)] = &[
        ("01,0", "1,10", &[&[0, 1], &[1, 1]], 2),
        ("01,10", "1,20,210", &[&[0, 1, 0], &[1, 0, 1], &[1, 1, 1]], 2),
        ("0001,001", "001,00101", &[&[2, 1], &[3, 2]], 2),
        ("01,02,0", "1,12,10", &[&[0, 1, 0], &[0, 1, 1], &[1, 1, 0]], 3),
        ("01,20,0", "1,20,200", &[&[0, 1, 0], &[1, 0, 1], &[2, 0, 1]], 3),
    ];
    for &(s, eta, m, rank) in cases {
        let (_, e) = pre_left_properize(&sub(s)).unwrap();
        assert_eq!(e.share_string().unwrap(), eta, "{s}");
        let c = cohomology(&sub(s), Method::Proper).unwrap();
        assert_eq!(c.matrix, IntMatrix::from_i64(m), "{s}");
        assert_eq!(c.total_rank, rank, "{s}");
    }
}

fn pairs(out: &[subshift::pisot::BalancedPair]) -> Vec<(String, String)> {
    out.iter().map(|p| (p.u.render(), p.v.render())).collect()
}

fn owned(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn balanced_pair_closures() {
    let w = |s: &str| Word::parse(s).unwrap();
    let tm = balanced_pair_algorithm(&sub("01,10"), &w("01"), &w("10"), BalancedPairBudget::default()).unwrap();
    assert_eq!(tm.terminates, Some(true));
    assert_eq!(pairs(&tm.pairs), owned(&[("01", "10"), ("10", "01")]));

    let tri = balanced_pair_algorithm(&sub("01,02,0"), &w("01"), &w("10"), BalancedPairBudget::default()).unwrap();
    assert_eq!(tri.terminates, Some(true));
    assert!(tri.with_coincidence);
    let want = owned(&[
        ("0", "0"),
        ("1", "1"),
        ("2", "2"),
        ("01", "10"),
        ("02", "20"),
        ("10", "01"),
        ("20", "02"),
        ("102", "201"),
        ("201", "102"),
        ("0102", "2010"),
        ("2010", "0102"),
    ]);
    assert_eq!(pairs(&tri.pairs), want);
}

#[test]
fn canonical_enumeration_prefix() {
    let first: Vec<String> = CanonicalEnumerator::new(3).take(40).map(|(_, s)| s.share_string().unwrap()).collect();
    let want = [
        "0,0,0", "0,0,1", "0,0,2", "0,1,2", "0,2,1", "1,0,0", "1,2,0", "0,0,00", "0,0,01", "0,0,02", "0,0,11",
        "0,0,12", "0,0,22", "0,1,00", "0,1,01", "0,1,02", "0,1,22", "0,2,00", "0,2,01", "0,2,02", "0,2,11",
        "0,2,12", "0,2,22", "1,0,00", "1,0,01", "1,0,02", "1,0,22", "1,2,00", "1,2,01", "1,2,02", "1,2,11",
        "1,2,12", "1,2,22", "1,00,1", "1,01,1", "1,02,1", "1,11,1", "0,0,000", "0,0,001", "0,0,002",
    ];
    assert_eq!(first, want);
    let count = |l: usize, g: usize| CanonicalEnumerator::new(l).take_while(|(_, s)| s.total_length() <= g).count();
    assert_eq!(count(3, 7), 3828);
    assert_eq!(count(2, 6), 168);
}

#[test]
fn pisot_and_coincidence_on_a_sample() {
    let want: &[u64] = &[
        28, 29, 125, 127, 128, 130, 135, 169, 170, 171, 174, 476, 481, 483, 484, 486, 487, 488, 489, 490, 491, 495,
        496, 497, 498, 503, 507, 508, 509, 560, 564, 566, 576, 578, 582, 607, 608, 610, 611, 613, 614, 615, 618, 622,
        623, 624, 627, 635, 637, 638, 640, 645, 688, 690, 692, 694, 703, 705, 707, 709, 713, 717, 727, 729, 731, 733,
        741, 742, 743, 744, 747, 750, 751, 752, 757, 759, 767, 772,
    ];
    let mut got = Vec::new();
    let mut hist = std::collections::BTreeMap::new();
    for (i, s) in enumerate_substitutions(3, 0, 1500) {
        if classify_pisot(&s).unwrap().irreducible_pisot {
            got.push(i);
            let n = strong_coincidence(&s, 30).unwrap().iteration.unwrap();
            *hist.entry(n).or_insert(0) += 1;
        }
    }
    assert_eq!(got, want);
    let want_hist = [(1, 9), (2, 19), (3, 4), (4, 22), (5, 5), (6, 6), (7, 10), (8, 2), (14, 1)];
    assert_eq!(hist.into_iter().collect::<Vec<_>>(), want_hist);
}
