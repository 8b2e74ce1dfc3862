//! Plain-text rendering of an analysis report.

use std::fmt::Write as _;

use subshift::cohomology::Method;
use subshift::report::{AnalysisReport, SpectrumVerdict, Stage};
use subshift::Word;

fn join(ws: &[Word]) -> String {
    ws.iter().map(Word::render).collect::<Vec<_>>().join(", ")
}

fn stage<T>(out: &mut String, title: &str, s: &Stage<T>, body: impl FnOnce(&mut String, &T)) {
    match s {
        Stage::Ok { value } => {
            let _ = writeln!(out, "{title}:");
            body(out, value);
        }
        Stage::Refused { reason, .. } => {
            let _ = writeln!(out, "{title}: refused ({reason})");
        }
        Stage::NotRequested => {}
    }
}

pub fn render(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "substitution {} on {} letters", r.input, r.letters);
    let _ = writeln!(out, "matrix {}", r.matrix.render());
    match r.primitivity.power {
        Some(p) if r.primitivity.primitive => {
            let _ = writeln!(out, "primitive (M^{p} > 0)");
        }
        _ => out.push_str("not primitive\n"),
    }
    stage(&mut out, "Perron-Frobenius", &r.pf, |o, pf| {
        let _ = writeln!(o, "  minimal polynomial {}", pf.minimal_polynomial);
        let _ = writeln!(o, "  eigenvalue {}", pf.eigenvalue);
        let _ = writeln!(o, "  left  ({})", pf.left.join(", "));
        let _ = writeln!(o, "  right ({})", pf.right.join(", "));
    });
    stage(&mut out, "complexity", &r.complexity, |o, c| {
        let counts: Vec<String> = c.counts.iter().map(ToString::to_string).collect();
        let _ = writeln!(o, "  p(1..{}) = {}", c.counts.len(), counts.join(", "));
        if c.eventually_periodic {
            o.push_str("  some p(n) <= n: eventually periodic\n");
        }
    });
    stage(&mut out, "admitted words", &r.words, |o, sets| {
        for s in sets {
            let n = s.words.first().map_or(0, |w| w.len());
            let _ = writeln!(o, "  L^{n} ({}) = {{{}}}", s.len(), join(&s.words));
        }
    });
    stage(&mut out, "recognizability", &r.recognizability, |o, rec| {
        let _ = writeln!(o, "  return words to {}: {{{}}}", rec.return_words.fixed.letter, join(&rec.return_words.words));
        match &rec.witness {
            Some((v, w)) if rec.recognizable => {
                let _ = writeln!(o, "  recognizable, witness ({}, {}) at power {}", v.render(), w.render(), rec.power);
            }
            _ => o.push_str("  not recognizable\n"),
        }
    });
    stage(&mut out, "complexes", &r.complexes, |o, c| {
        let bd = &c.barge_diamond;
        let ap = &c.anderson_putnam;
        let _ = writeln!(o, "  Barge-Diamond {} vertices, {} edges", bd.vertex_count(), bd.edge_count());
        let er = &c.bd_eventual_range;
        let _ = writeln!(o, "  eventual range [{}], {} components, rank {}", er.edges.join(", "), er.components, er.rank);
        let _ = writeln!(o, "  Anderson-Putnam {} vertices, {} edges", ap.vertex_count(), ap.edge_count());
    });
    for m in [Method::BargeDiamond, Method::AndersonPutnam, Method::Proper] {
        stage(&mut out, &format!("cohomology ({m})"), r.cohomology.get(m), |o, c| {
            let _ = writeln!(o, "  {}  (rank {})", c.rendering, c.total_rank);
        });
    }
    stage(&mut out, "Pisot", &r.pisot, |o, p| {
        let v = &p.verdict;
        let _ = writeln!(o, "  characteristic polynomial {}", v.char_poly.render("λ"));
        if let Some(mp) = &v.minimal_polynomial {
            let _ = writeln!(o, "  PF minimal polynomial {}", mp.render("λ"));
        }
        let kind = if v.irreducible_pisot {
            "irreducible Pisot"
        } else if v.pisot {
            "Pisot, reducible"
        } else {
            "not Pisot"
        };
        let _ = writeln!(o, "  {kind} ({})", v.reason.as_str());
        let spectrum = match p.pure_discrete_spectrum {
            SpectrumVerdict::PureDiscrete => Some("pure discrete spectrum"),
            SpectrumVerdict::NotPureDiscrete => Some("not pure discrete spectrum"),
            SpectrumVerdict::Unknown => Some("balanced pair closure out of budget"),
            SpectrumVerdict::NotApplicable => None,
        };
        if let Some(s) = spectrum {
            let _ = writeln!(o, "  {s}");
        }
    });
    stage(&mut out, "strong coincidence", &r.coincidence, |o, c| {
        for p in &c.pairs {
            match &p.witness {
                Some(w) => {
                    let _ = writeln!(o, "  ({},{}) n={} at position {} letter {}", p.i, p.j, w.n, w.position, w.letter);
                }
                None => {
                    let _ = writeln!(o, "  ({},{}) none within {}", p.i, p.j, c.cap);
                }
            }
        }
        match c.iteration {
            Some(n) => {
                let _ = writeln!(o, "  strongly coincident, iteration {n}");
            }
            None => {
                let _ = writeln!(o, "  no strong coincidence within {}", c.cap);
            }
        }
    });
    stage(&mut out, "properization", &r.properization, |o, p| {
        let share = |s: &subshift::Substitution| s.share_string().unwrap_or_else(|_| s.to_string());
        let _ = writeln!(o, "  return words {}", p.labels().join(" "));
        let _ = writeln!(o, "  eta {}", share(&p.eta));
        let _ = writeln!(o, "  eta^{} {}", p.power, share(&p.left_proper));
        let _ = writeln!(o, "  fully proper {}", share(&p.full));
    });
    if let Some(t) = &r.timings {
        out.push_str("timings (ms):\n");
        for (k, v) in t {
            let _ = writeln!(out, "  {k} {v:.3}");
        }
    }
    out
}
