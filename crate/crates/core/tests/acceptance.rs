//! One line per acceptance criterion. Runs without the libtest harness so the
//! table is always printed.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use subshift::cohomology::{ap_induced_matrix, cohomology, Method};
use subshift::complexes::{anderson_putnam, barge_diamond};
use subshift::language::{admitted_words, complexity};
use subshift::pf::pf_data;
use subshift::pisot::{balanced_pair_algorithm, classify_pisot, pure_discrete_spectrum, strong_coincidence, BalancedPairBudget};
use subshift::properize::{full_properize, proper_composition};
use subshift::recognizability::is_recognizable;
use subshift::search::{canonical_form, orbit, search, CanonicalEnumerator, Execution, RawEnumerator, SearchConfig};
use subshift::{abelianize, substitution_matrix, IntMatrix, IntPolynomial, Letter, Substitution, Word};

type Check = std::result::Result<(), String>;

fn sub(s: &str) -> Substitution {
    Substitution::parse(s).unwrap()
}

fn ensure(ok: bool, what: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Check {
    ensure(got == want, format!("{what}: got {got:?}, want {want:?}"))
}

fn rendered(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::render).collect()
}

fn matrix_suite() -> Check {
    eq(substitution_matrix(&sub("01,00")), IntMatrix::from_i64(&[&[1, 2], &[1, 0]]), "period doubling")?;
    let chacon = substitution_matrix(&sub("0010,1"));
    eq(chacon.clone(), IntMatrix::from_i64(&[&[3, 0], &[1, 1]]), "Chacon matrix")?;
    eq(chacon.is_primitive().unwrap(), false, "Chacon primitivity")?;
    let pf = pf_data(&substitution_matrix(&sub("01,02,31,32"))).map_err(|e| e.to_string())?;
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    eq(pf.eigenvalue.as_rational(), Some(q(2, 1)), "Rudin-Shapiro eigenvalue")?;
    let left: Vec<_> = pf.left.iter().map(|x| x.as_rational()).collect();
    let right: Vec<_> = pf.right.iter().map(|x| x.as_rational()).collect();
    eq(left, vec![Some(q(1, 1)); 4], "Rudin-Shapiro left vector")?;
    eq(right, vec![Some(q(1, 4)); 4], "Rudin-Shapiro right vector")
}

fn words_suite() -> Check {
    let fib = complexity(&sub("01,0"), 50).map_err(|e| e.to_string())?;
    eq(fib, (2..=51).collect(), "Fibonacci complexity")?;
    eq(complexity(&sub("01,00"), 10).unwrap(), vec![2, 3, 5, 6, 8, 10, 11, 12, 14, 16], "period doubling complexity")?;
    let pm = sub("0001,001");
    eq(rendered(&admitted_words(&pm, 2).unwrap().words), vec!["00".into(), "01".into(), "10".into()], "platinum L2")?;
    eq(
        rendered(&admitted_words(&pm, 3).unwrap().words),
        ["000", "001", "010", "100"].map(String::from).to_vec(),
        "platinum L3",
    )
}

fn recognizability_suite() -> Check {
    let tm = sub("01,10");
    let r = is_recognizable(&tm).map_err(|e| e.to_string())?;
    ensure(r.recognizable && r.power == 2, "Thue-Morse recognizable at power 2")?;
    eq(rendered(&r.return_words.words), ["0", "01", "011"].map(String::from).to_vec(), "return words")?;
    ensure(r.pairs.len() == 3 && r.pairs.iter().all(|p| !p.equal), "all three pairs unequal")?;
    let six: Vec<[String; 2]> = r
        .pairs
        .iter()
        .map(|p| {
            let (v, w) = (p.v.as_slice(), p.w.as_slice());
            [tm.iterate(&[v, w].concat(), 2).unwrap().render(), tm.iterate(&[w, v].concat(), 2).unwrap().render()]
        })
        .collect();
    let want = [
        ["011001101001", "011010010110"],
        ["0110011010011001", "0110100110010110"],
        ["01101001011010011001", "01101001100101101001"],
    ];
    eq(six, want.map(|r| r.map(String::from)).to_vec(), "six images")?;
    eq(is_recognizable(&sub("01,01")).unwrap().recognizable, false, "a->ab, b->ab")
}

fn cohomology_suite() -> Check {
    let tm = sub("01,10");
    let bd = cohomology(&tm, Method::BargeDiamond).map_err(|e| e.to_string())?;
    eq(bd.matrix.clone(), IntMatrix::from_i64(&[&[1, 1], &[1, 1]]), "BD matrix")?;
    eq((bd.quotient_rank, bd.free_rank), (0, 1), "BD quotient and free rank")?;
    let ap = ap_induced_matrix(&tm).map_err(|e| e.to_string())?;
    let b = IntMatrix::from_i64(&[
        &[-1, 0, 0, 1, 0, 0],
        &[1, -1, -1, 0, 1, 0],
        &[0, 1, 0, -1, -1, 1],
        &[0, 0, 1, 0, 0, -1],
    ]);
    eq(ap.boundary, b, "AP boundary")?;
    // λ(λ−2)(λ+1)
    eq(ap.matrix.char_poly(), IntPolynomial::from_i64(&[0, -2, -1, 1]), "AP char poly")?;
    let proper = cohomology(&tm, Method::Proper).map_err(|e| e.to_string())?;
    eq(proper.matrix.clone(), IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 1], &[1, 1, 1]]), "PROPER matrix")?;
    for s in ["01,10", "01,0", "0001,001"] {
        let ranks: Vec<usize> = [Method::BargeDiamond, Method::AndersonPutnam, Method::Proper]
            .iter()
            .map(|&m| cohomology(&sub(s), m).map(|c| c.total_rank).unwrap_or(usize::MAX))
            .collect();
        eq(ranks, vec![2; 3], &format!("{s} total ranks"))?;
    }
    Ok(())
}

fn properization_suite() -> Check {
    let p = full_properize(&sub("01,10")).map_err(|e| e.to_string())?;
    eq(p.eta.share_string().unwrap(), "1,20,210".into(), "Thue-Morse eta")?;
    ensure(p.left_proper.left_proper_letter().is_some(), "eta^n left-proper")?;
    ensure(p.full.left_proper_letter().is_some() && p.full.right_proper_letter().is_some(), "fully proper")?;
    eq(proper_composition(&sub("01,0")).unwrap().share_string().unwrap(), "001,01".into(), "Fibonacci composition")
}

fn pisot_suite() -> Check {
    for s in ["01,0", "001,0", "01,02,0", "01,20,0"] {
        ensure(classify_pisot(&sub(s)).unwrap().irreducible_pisot, format!("{s} irreducible Pisot"))?;
    }
    let tm = classify_pisot(&sub("01,10")).unwrap();
    ensure(tm.pisot && !tm.irreducible_pisot, "Thue-Morse Pisot but reducible")?;
    let v = classify_pisot(&sub("001111,001")).unwrap();
    eq(v.char_poly, IntPolynomial::from_i64(&[-6, -3, 1]), "char poly")?;
    ensure(!v.pisot, "001111,001 not Pisot")
}

fn balanced_pair_suite() -> Check {
    let fib = sub("01,0");
    let (u, v) = (Word::parse("01").unwrap(), Word::parse("10").unwrap());
    let out = balanced_pair_algorithm(&fib, &u, &v, BalancedPairBudget::default()).map_err(|e| e.to_string())?;
    let got: Vec<String> = out.pairs.iter().map(|p| p.render()).collect();
    eq(got, ["(0,0)", "(1,1)", "(01,10)", "(10,01)"].map(String::from).to_vec(), "I(01,10)")?;
    eq(pure_discrete_spectrum(&fib, BalancedPairBudget::default()).unwrap(), Some(true), "pure discrete spectrum")
}

fn coincidence_suite() -> Check {
    eq(strong_coincidence(&sub("01,0"), 30).unwrap().iteration, Some(1), "Fibonacci")?;
    let rev = sub("10,0");
    let r = strong_coincidence(&rev, 30).unwrap();
    eq(r.iteration, Some(3), "reversed Fibonacci")?;
    eq(
        r.witness_partition(&rev, 0, 1),
        Some(["(10)(0)(10)".into(), "(01)(0)()".into()]),
        "reversed Fibonacci partition",
    )?;
    for s in ["2011,02,0", "212101,0,1"] {
        eq(strong_coincidence(&sub(s), 30).unwrap().iteration, Some(10), s)?;
    }
    Ok(())
}

fn desk_search() -> Check {
    let config = SearchConfig::new(3, 0, 200_000, 30);
    let seq = search(&config, Execution::Sequential).map_err(|e| e.to_string())?;
    let par = search(&config, Execution::Parallel { workers: 4 }).map_err(|e| e.to_string())?;
    let h = &seq.histogram;
    println!(
        "  examined {}, irreducible Pisot {}, iterations {:?}, cap {}, budget {}, undecided {}",
        h.examined, h.irreducible_pisot, h.iterations, h.cap_reached, h.budget_exhausted, h.undecided
    );
    eq(h.examined, 200_000, "examined")?;
    eq(seq.counterexample_candidates().count(), 0, "counterexamples")?;
    eq((h.cap_reached, h.budget_exhausted, h.undecided), (0, 0, 0), "cap-outs, budget, undecided")?;
    ensure(seq == par, "output depends on worker count")
}

fn property_suites() -> Check {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let random_sub = |rng: &mut rand::rngs::StdRng, l: usize| {
        let ims = (0..l).map(|_| Word::new((0..rng.gen_range(1..=4)).map(|_| rng.gen_range(0..l) as Letter).collect()));
        Substitution::new(ims.collect()).unwrap()
    };
    let big = |v: &[u64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    for _ in 0..1000 {
        let l = rng.gen_range(2..=4);
        let s = random_sub(&mut rng, l);
        let w: Vec<Letter> = (0..rng.gen_range(1..=12)).map(|_| rng.gen_range(0..l) as Letter).collect();
        let lhs = big(&abelianize(&s.apply(&w), l).0);
        ensure(lhs == substitution_matrix(&s).mul_vec(&big(&abelianize(&w, l).0)), "abelianization intertwining")?;
        let t = random_sub(&mut rng, l);
        let m = substitution_matrix(&s.compose(&t).unwrap());
        ensure(m == substitution_matrix(&s).mul(&substitution_matrix(&t)), "composition multiplicativity")?;
    }
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let rows = (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect()).collect();
        let m = IntMatrix::from_rows(rows);
        let brute = (0..=2 * n).map(|p| m.pow(p).rank()).min().unwrap();
        ensure(m.eventual_rank() == brute, format!("eventual rank of {m}"))?;
    }
    for _ in 0..300 {
        let l = rng.gen_range(2..=3);
        let s = random_sub(&mut rng, l);
        if !substitution_matrix(&s).is_primitive().unwrap() {
            continue;
        }
        for g in [barge_diamond(&s).unwrap(), anderson_putnam(&s).unwrap()] {
            let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
            let mut forest = 0;
            for e in &g.edges {
                let mut a = e.source;
                while parent[a] != a {
                    a = parent[a];
                }
                let mut b = e.target;
                while parent[b] != b {
                    b = parent[b];
                }
                if a != b {
                    parent[a] = b;
                    forest += 1;
                }
            }
            ensure(g.cycle_rank() == g.edge_count() - forest, format!("cycle rank of {s}"))?;
        }
    }
    let universe: Vec<Substitution> = RawEnumerator::new(2)
        .take_while(|s| s.total_length() <= 4)
        .filter(|s| s.images().iter().all(|w| w.len() <= 2))
        .collect();
    let canon: Vec<Substitution> = CanonicalEnumerator::new(2)
        .map(|(_, s)| s)
        .take_while(|s| s.total_length() <= 4)
        .filter(|s| s.images().iter().all(|w| w.len() <= 2))
        .collect();
    eq(universe.len(), 36, "universe size")?;
    for s in &universe {
        let hits: std::collections::BTreeSet<String> =
            orbit(s).iter().filter(|o| canon.contains(o)).map(|o| o.share_string().unwrap()).collect();
        ensure(hits.len() == 1 && hits.contains(&canonical_form(s).share_string().unwrap()), format!("orbit of {s}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("matrix suite", Duration::from_secs(1), matrix_suite),
        ("words suite", Duration::from_secs(5), words_suite),
        ("recognizability suite", Duration::from_secs(1), recognizability_suite),
        ("cohomology cross-method", Duration::from_secs(10), cohomology_suite),
        ("properization", Duration::from_secs(1), properization_suite),
        ("pisot suite", Duration::from_secs(4), pisot_suite),
        ("balanced pairs", Duration::from_secs(1), balanced_pair_suite),
        ("strong coincidence", Duration::from_secs(10), coincidence_suite),
        ("desk-scale search", Duration::from_secs(30 * 60), desk_search),
        ("property suites", Duration::from_secs(60), property_suites),
    ];
    let mut failed = Vec::new();
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|_| ensure(elapsed <= limit, format!("took {elapsed:.2?}, limit {limit:?}")));
        match &outcome {
            Ok(()) => println!("PASS {name} ({elapsed:.2?}, limit {limit:?})"),
            Err(why) => {
                println!("FAIL {name} ({elapsed:.2?}, limit {limit:?}): {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
