//! The analysis report shared by the CLI and the HTTP service, and its LaTeX export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cohomology::{cohomology, CohomologyPresentation, Method};
use crate::complexes::{anderson_putnam, barge_diamond, bd_subcomplex_and_eventual_range, tikz_picture, ComplexGraph};
use crate::error::{Error, Result};
use crate::language::{admitted_words, complexity, morse_hedlund_periodic, WordSet};
use crate::matrix::{substitution_matrix, IntMatrix, Primitivity};
use crate::pf::{pf_data, PFSummary, DEFAULT_PRECISION};
use crate::pisot::{
    classify_pisot, pure_discrete_spectrum, strong_coincidence_with_budget, BalancedPairBudget, CoincidenceReport,
    PisotVerdict, DEFAULT_COINCIDENCE_CAP,
};
use crate::properize::{full_properize, Properization};
use crate::recognizability::{is_recognizable, Recognizability};
use crate::word::Substitution;

pub const SCHEMA_VERSION: u32 = 1;

/// Why a stage produced no value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefusalKind {
    NotPrimitive,
    /// Primitive but periodic, equivalently not recognizable.
    Periodic,
    NotLeftProper,
    DegreeCap,
    Budget,
    Precondition,
    Internal,
}

impl RefusalKind {
    pub fn from_error(e: &Error) -> Self {
        match e {
            Error::NotPrimitive => RefusalKind::NotPrimitive,
            Error::NotRecognizable => RefusalKind::Periodic,
            Error::NotLeftProper => RefusalKind::NotLeftProper,
            Error::DegreeCap { .. } => RefusalKind::DegreeCap,
            Error::Budget { .. } => RefusalKind::Budget,
            Error::Internal(_) | Error::Io(_) => RefusalKind::Internal,
            _ => RefusalKind::Precondition,
        }
    }
}

/// One stage of the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Stage<T> {
    Ok { value: T },
    Refused { kind: RefusalKind, reason: String },
    NotRequested,
}

impl<T> Stage<T> {
    pub fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(value) => Stage::Ok { value },
            Err(e) => Stage::refused(RefusalKind::from_error(&e), e.to_string()),
        }
    }

    pub fn refused(kind: RefusalKind, reason: impl Into<String>) -> Self {
        Stage::Refused { kind, reason: reason.into() }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Stage::Ok { value } => Some(value),
            _ => None,
        }
    }

    pub fn refusal(&self) -> Option<(RefusalKind, &str)> {
        match self {
            Stage::Refused { kind, reason } => Some((*kind, reason)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CohomologySelection {
    Bd,
    Ap,
    Proper,
    All,
}

impl CohomologySelection {
    pub fn methods(self) -> &'static [Method] {
        match self {
            CohomologySelection::Bd => &[Method::BargeDiamond],
            CohomologySelection::Ap => &[Method::AndersonPutnam],
            CohomologySelection::Proper => &[Method::Proper],
            CohomologySelection::All => &[Method::BargeDiamond, Method::AndersonPutnam, Method::Proper],
        }
    }
}

impl std::str::FromStr for CohomologySelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bd" => Ok(CohomologySelection::Bd),
            "ap" => Ok(CohomologySelection::Ap),
            "proper" => Ok(CohomologySelection::Proper),
            "all" => Ok(CohomologySelection::All),
            _ => Err(Error::Parse(format!("unknown cohomology method {s:?}"))),
        }
    }
}

/// What to compute. A `None` stage runs with defaults and may be refused
/// quietly; a `Some` (or `true`) stage was asked for explicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisOptions {
    pub complexity: Option<usize>,
    pub words: Option<Vec<usize>>,
    pub cohomology: Option<CohomologySelection>,
    pub pisot: bool,
    pub coincidence: bool,
    pub coincidence_cap: Option<usize>,
    pub precision: Option<usize>,
    /// Longest word any single stage may build.
    pub word_budget: Option<usize>,
    pub timings: bool,
}

pub const DEFAULT_COMPLEXITY: usize = 10;
pub const DEFAULT_REPORT_WORD_BUDGET: usize = 2_000_000;
pub const MAX_COMPLEXITY: usize = 64;
pub const MAX_WORD_LENGTH: usize = 16;

impl AnalysisOptions {
    fn check(&self) -> Result<()> {
        if self.complexity.is_some_and(|n| n == 0 || n > MAX_COMPLEXITY) {
            return Err(Error::budget("complexity prefix length", MAX_COMPLEXITY as u64));
        }
        if let Some(ws) = &self.words {
            if ws.iter().any(|&n| n == 0 || n > MAX_WORD_LENGTH) {
                return Err(Error::budget("admitted-word length", MAX_WORD_LENGTH as u64));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub counts: Vec<usize>,
    /// Some `p(n) ≤ n`, which forces eventual periodicity.
    pub eventually_periodic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventualRangeSummary {
    pub edges: Vec<String>,
    pub components: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexesReport {
    pub barge_diamond: ComplexGraph,
    pub bd_eventual_range: EventualRangeSummary,
    pub anderson_putnam: ComplexGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub bd: Stage<CohomologyPresentation>,
    pub ap: Stage<CohomologyPresentation>,
    pub proper: Stage<CohomologyPresentation>,
}

impl CohomologyReport {
    pub fn get(&self, m: Method) -> &Stage<CohomologyPresentation> {
        match m {
            Method::BargeDiamond => &self.bd,
            Method::AndersonPutnam => &self.ap,
            Method::Proper => &self.proper,
        }
    }

    fn get_mut(&mut self, m: Method) -> &mut Stage<CohomologyPresentation> {
        match m {
            Method::BargeDiamond => &mut self.bd,
            Method::AndersonPutnam => &mut self.ap,
            Method::Proper => &mut self.proper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumVerdict {
    PureDiscrete,
    NotPureDiscrete,
    /// The balanced pair closure ran out of budget.
    Unknown,
    /// The criterion only applies to irreducible Pisot substitutions.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PisotReport {
    pub verdict: PisotVerdict,
    pub pure_discrete_spectrum: SpectrumVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: String,
    pub letters: usize,
    pub matrix: IntMatrix,
    pub primitivity: Primitivity,
    pub pf: Stage<PFSummary>,
    pub complexity: Stage<ComplexityReport>,
    pub words: Stage<Vec<WordSet>>,
    pub recognizability: Stage<Recognizability>,
    pub complexes: Stage<ComplexesReport>,
    pub cohomology: CohomologyReport,
    pub pisot: Stage<PisotReport>,
    pub coincidence: Stage<CoincidenceReport>,
    pub properization: Stage<Properization>,
    /// Milliseconds per stage, only when asked for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl AnalysisReport {
    /// Stages that were asked for explicitly and refused, by name.
    pub fn explicit_refusals(&self, options: &AnalysisOptions) -> Vec<(&'static str, RefusalKind, String)> {
        let mut out = Vec::new();
        let mut push = |name, stage: Option<(RefusalKind, &str)>| {
            if let Some((k, r)) = stage {
                out.push((name, k, r.to_string()));
            }
        };
        if options.complexity.is_some() {
            push("complexity", self.complexity.refusal());
        }
        if options.words.is_some() {
            push("words", self.words.refusal());
        }
        if let Some(sel) = options.cohomology {
            for &m in sel.methods() {
                let name = match m {
                    Method::BargeDiamond => "cohomology-bd",
                    Method::AndersonPutnam => "cohomology-ap",
                    Method::Proper => "cohomology-proper",
                };
                push(name, self.cohomology.get(m).refusal());
            }
        }
        if options.pisot {
            push("pisot", self.pisot.refusal());
        }
        if options.coincidence {
            push("coincidence", self.coincidence.refusal());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Timer {
    on: bool,
    map: BTreeMap<String, f64>,
}

impl Timer {
    fn run<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.on {
            self.map.insert(name.to_string(), t.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

/// Runs every stage. Fails only on malformed options; stage failures become refusals.
pub fn analyze(sub: &Substitution, options: &AnalysisOptions) -> Result<AnalysisReport> {
    options.check()?;
    let mut timer = Timer { on: options.timings, map: BTreeMap::new() };
    let budget = options.word_budget.unwrap_or(DEFAULT_REPORT_WORD_BUDGET);
    let precision = options.precision.unwrap_or(DEFAULT_PRECISION).clamp(1, 60);
    let matrix = substitution_matrix(sub);
    let primitivity = timer.run("primitivity", || matrix.primitivity())?;
    let primitive = primitivity.primitive;

    let pf = timer.run("pf", || Stage::from_result(pf_data(&matrix).map(|d| d.summary(precision))));
    let complexity_stage = timer.run("complexity", || {
        let n = options.complexity.unwrap_or(DEFAULT_COMPLEXITY);
        Stage::from_result(complexity(sub, n).map(|counts| ComplexityReport {
            eventually_periodic: morse_hedlund_periodic(&counts),
            counts,
        }))
    });
    let words = timer.run("words", || {
        let lens = options.words.clone().unwrap_or_else(|| vec![2, 3]);
        Stage::from_result(lens.iter().map(|&n| admitted_words(sub, n)).collect())
    });

    let recognizability = timer.run("recognizability", || {
        if primitive {
            Stage::from_result(is_recognizable(sub))
        } else {
            Stage::refused(RefusalKind::NotPrimitive, Error::NotPrimitive.to_string())
        }
    });
    // primitive and recognizable means aperiodic
    let aperiodic = recognizability.value().is_some_and(|r| r.recognizable);
    let gate = |what: &str| -> Option<(RefusalKind, String)> {
        if !primitive {
            Some((RefusalKind::NotPrimitive, format!("{what}: substitution is not primitive")))
        } else if !aperiodic {
            Some((RefusalKind::Periodic, format!("{what}: substitution is periodic (not recognizable)")))
        } else {
            None
        }
    };

    let complexes = timer.run("complexes", || {
        Stage::from_result((|| {
            let bd = barge_diamond(sub)?;
            let er = bd_subcomplex_and_eventual_range(sub)?;
            Ok(ComplexesReport {
                barge_diamond: bd,
                bd_eventual_range: EventualRangeSummary {
                    edges: er.eventual_range.edges.iter().map(|e| e.label.clone()).collect(),
                    components: er.components,
                    rank: er.rank,
                },
                anderson_putnam: anderson_putnam(sub)?,
            })
        })())
    });

    let mut coh = CohomologyReport { bd: Stage::NotRequested, ap: Stage::NotRequested, proper: Stage::NotRequested };
    for &m in options.cohomology.unwrap_or(CohomologySelection::All).methods() {
        let stage = timer.run(&format!("cohomology-{}", m.to_string().to_lowercase()), || match gate("cohomology") {
            Some((k, r)) => Stage::refused(k, r),
            None => Stage::from_result(cohomology(sub, m)),
        });
        *coh.get_mut(m) = stage;
    }

    let pisot = timer.run("pisot", || match gate("Pisot classification") {
        Some((k, r)) => Stage::refused(k, r),
        None => Stage::from_result((|| {
            let verdict = classify_pisot(sub)?;
            let pure_discrete_spectrum = if verdict.irreducible_pisot {
                match pure_discrete_spectrum(sub, BalancedPairBudget::default())? {
                    Some(true) => SpectrumVerdict::PureDiscrete,
                    Some(false) => SpectrumVerdict::NotPureDiscrete,
                    None => SpectrumVerdict::Unknown,
                }
            } else {
                SpectrumVerdict::NotApplicable
            };
            Ok(PisotReport { verdict, pure_discrete_spectrum })
        })()),
    });

    let coincidence = timer.run("coincidence", || match gate("strong coincidence") {
        Some((k, r)) => Stage::refused(k, r),
        None => {
            let cap = options.coincidence_cap.unwrap_or(DEFAULT_COINCIDENCE_CAP);
            Stage::from_result(strong_coincidence_with_budget(sub, cap, budget))
        }
    });

    let properization = timer.run("properization", || match gate("properization") {
        Some((k, r)) => Stage::refused(k, r),
        None => Stage::from_result(full_properize(sub)),
    });

    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        input: sub.share_string()?,
        letters: sub.len(),
        matrix,
        primitivity,
        pf,
        complexity: complexity_stage,
        words,
        recognizability,
        complexes,
        cohomology: coh,
        pisot,
        coincidence,
        properization,
        timings: options.timings.then_some(timer.map),
    })
}

/// Escapes text for LaTeX outside math mode.
fn tex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '$' | '&' | '#' | '%' | '_' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(c),
        }
    }
    out
}

fn tex_matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}}{}\\end{{pmatrix}}", rows.join(" \\\\ "))
}

fn tex_stage<T>(out: &mut String, stage: &Stage<T>, body: impl FnOnce(&mut String, &T)) {
    match stage {
        Stage::Ok { value } => body(out, value),
        Stage::Refused { reason, .. } => {
            let _ = writeln!(out, "\\emph{{Refused: {}.}}\n", tex_escape(reason));
        }
        Stage::NotRequested => out.push_str("\\emph{Not requested.}\n\n"),
    }
}

fn tex_lambda(s: &str) -> String {
    s.replace('λ', "\\lambda ")
}

/// A standalone LaTeX document with the report tables and TikZ pictures of the
/// complexes. Timings are left out so the output depends on the report only.
pub fn export_latex(report: &AnalysisReport) -> String {
    let mut s = String::new();
    s.push_str("\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\usepackage{tikz}\n");
    s.push_str("\\usetikzlibrary{arrows.meta}\n\\begin{document}\n\n");
    let _ = writeln!(s, "\\section*{{Substitution \\texttt{{{}}}}}\n", tex_escape(&report.input));

    s.push_str("\\subsection*{Substitution matrix}\n");
    let _ = writeln!(s, "\\[ M_\\phi = {} \\]\n", tex_matrix(&report.matrix));
    let _ = writeln!(
        s,
        "Primitive: {}{}.\n",
        if report.primitivity.primitive { "yes" } else { "no" },
        report.primitivity.power.map(|p| format!(" (all entries of $M_\\phi^{{{p}}}$ positive)")).unwrap_or_default()
    );
    tex_stage(&mut s, &report.pf, |s, pf| {
        let _ = writeln!(s, "Minimal polynomial of $\\lambda_{{PF}}$: ${}$, $\\lambda_{{PF}} \\approx {}$.\n", tex_lambda(&pf.minimal_polynomial), pf.eigenvalue);
        let _ = writeln!(s, "Left eigenvector: $({})$.\n", tex_lambda(&pf.left.join(", ")));
        let _ = writeln!(s, "Right eigenvector: $({})$.\n", tex_lambda(&pf.right.join(", ")));
    });

    s.push_str("\\subsection*{Language}\n");
    tex_stage(&mut s, &report.complexity, |s, c| {
        let ns: Vec<String> = (1..=c.counts.len()).map(|n| n.to_string()).collect();
        let ps: Vec<String> = c.counts.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "\\begin{{tabular}}{{r|{}}}\n$n$ & {} \\\\ \\hline\n$p(n)$ & {} \\\\\n\\end{{tabular}}\n",
            "c".repeat(ns.len()),
            ns.join(" & "),
            ps.join(" & ")
        );
    });
    tex_stage(&mut s, &report.words, |s, sets| {
        for set in sets {
            let ws: Vec<String> = set.words.iter().map(|w| tex_escape(&w.render())).collect();
            let _ = writeln!(s, "$\\mathcal{{L}}^{{{}}}$: \\texttt{{{}}}\n", set.n, ws.join(", "));
        }
    });

    s.push_str("\\subsection*{Recognizability}\n");
    tex_stage(&mut s, &report.recognizability, |s, r| {
        let words: Vec<String> = r.return_words.words.iter().map(|w| tex_escape(&w.render())).collect();
        let _ = writeln!(s, "Return words to {}: \\texttt{{{}}}.\n", r.return_words.fixed.letter, words.join(", "));
        match &r.witness {
            Some((v, w)) => {
                let _ = writeln!(s, "Recognizable, witnessed by the pair \\texttt{{{}}}, \\texttt{{{}}}.\n", tex_escape(&v.render()), tex_escape(&w.render()));
            }
            None => s.push_str("Not recognizable.\n\n"),
        }
    });

    s.push_str("\\subsection*{Complexes}\n");
    tex_stage(&mut s, &report.complexes, |s, c| {
        s.push_str("Barge-Diamond complex:\n\n\\begin{center}\n");
        s.push_str(&tikz_picture(&c.barge_diamond));
        s.push_str("\\end{center}\n\n");
        let _ = writeln!(
            s,
            "Eventual range: edges \\texttt{{{}}}, {} component(s), cycle rank {}.\n",
            tex_escape(&c.bd_eventual_range.edges.join(", ")),
            c.bd_eventual_range.components,
            c.bd_eventual_range.rank
        );
        s.push_str("Anderson-Putnam complex:\n\n\\begin{center}\n");
        s.push_str(&tikz_picture(&c.anderson_putnam));
        s.push_str("\\end{center}\n\n");
    });

    s.push_str("\\subsection*{Cohomology}\n");
    for m in [Method::BargeDiamond, Method::AndersonPutnam, Method::Proper] {
        let _ = write!(s, "{}: ", m);
        tex_stage(&mut s, report.cohomology.get(m), |s, c| {
            let mut body = format!("\\varinjlim {}", tex_matrix(&c.matrix));
            if m == Method::BargeDiamond {
                let _ = write!(body, " / \\mathbb{{Z}}^{{{}}} \\oplus \\mathbb{{Z}}^{{{}}}", c.quotient_rank, c.free_rank);
            }
            let _ = writeln!(s, "$\\check{{H}}^1 \\cong {body}$, total rank {}.\n", c.total_rank);
        });
    }

    s.push_str("\\subsection*{Pisot classification}\n");
    tex_stage(&mut s, &report.pisot, |s, p| {
        let v = &p.verdict;
        let _ = writeln!(s, "Characteristic polynomial: ${}$.\n", tex_lambda(&v.char_poly.to_string()));
        let _ = writeln!(
            s,
            "Pisot: {}; irreducible Pisot: {}; reason: {}.\n",
            if v.pisot { "yes" } else { "no" },
            if v.irreducible_pisot { "yes" } else { "no" },
            v.reason.as_str()
        );
        let spectrum = match p.pure_discrete_spectrum {
            SpectrumVerdict::PureDiscrete => "pure discrete",
            SpectrumVerdict::NotPureDiscrete => "not pure discrete",
            SpectrumVerdict::Unknown => "undecided within budget",
            SpectrumVerdict::NotApplicable => "criterion not applicable",
        };
        let _ = writeln!(s, "Spectrum: {spectrum}.\n");
    });
    tex_stage(&mut s, &report.coincidence, |s, c| {
        match c.iteration {
            Some(n) => {
                let _ = writeln!(s, "Strongly coincident after {n} iteration(s).\n");
            }
            None => {
                let _ = writeln!(s, "No strong coincidence within {} iterations.\n", c.cap);
            }
        }
    });

    s.push_str("\\subsection*{Properization}\n");
    tex_stage(&mut s, &report.properization, |s, p| {
        let share = |x: &Substitution| tex_escape(&x.share_string().unwrap_or_default());
        let _ = writeln!(s, "Return words: \\texttt{{{}}}.\n", tex_escape(&p.labels().join(", ")));
        let _ = writeln!(s, "$\\eta$: \\texttt{{{}}}; left-proper power $n = {}$.\n", share(&p.eta), p.power);
        let _ = writeln!(s, "$\\eta^{{n}}$: \\texttt{{{}}}.\n", share(&p.left_proper));
        let _ = writeln!(s, "$(\\eta^{{n}})^{{(R)}}$: \\texttt{{{}}}.\n", share(&p.right_conjugate));
        let _ = writeln!(s, "$\\eta^{{n}} \\circ (\\eta^{{n}})^{{(R)}}$: \\texttt{{{}}}.\n", share(&p.full));
    });

    s.push_str("\\end{document}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    #[test]
    fn thue_morse_report() {
        let opts = AnalysisOptions { cohomology: Some(CohomologySelection::All), ..Default::default() };
        let r = analyze(&sub("01,10"), &opts).unwrap();
        assert_eq!(r.schema, 1);
        let ranks: Vec<usize> = [Method::BargeDiamond, Method::AndersonPutnam, Method::Proper]
            .iter()
            .map(|&m| r.cohomology.get(m).value().unwrap().total_rank)
            .collect();
        assert_eq!(ranks, [2, 2, 2]);
        assert!(r.explicit_refusals(&opts).is_empty());
        assert!(r.timings.is_none());
        let back: AnalysisReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn refusals_are_explicit() {
        let opts = AnalysisOptions { pisot: true, ..Default::default() };
        let r = analyze(&sub("0"), &opts).unwrap();
        assert_eq!(r.pisot.refusal().unwrap().0, RefusalKind::Periodic);
        assert_eq!(r.explicit_refusals(&opts).len(), 1);
        let np = analyze(&sub("0010,1"), &AnalysisOptions::default()).unwrap();
        assert_eq!(np.cohomology.bd.refusal().unwrap().0, RefusalKind::NotPrimitive);
        // defaults never count as explicit
        assert!(np.explicit_refusals(&AnalysisOptions::default()).is_empty());
        let json: serde_json::Value = serde_json::from_str(&np.to_json()).unwrap();
        assert_eq!(json["pisot"]["status"], "refused");
        assert!(json["pisot"]["reason"].as_str().unwrap().contains("not primitive"));
    }

    #[test]
    fn option_limits() {
        let opts = AnalysisOptions { words: Some(vec![2, 40]), ..Default::default() };
        assert!(analyze(&sub("01,0"), &opts).unwrap_err().is_budget());
        let o: AnalysisOptions = serde_json::from_str(r#"{"cohomology":"all","words":[2,3]}"#).unwrap();
        assert_eq!(o.cohomology, Some(CohomologySelection::All));
        assert!(serde_json::from_str::<AnalysisOptions>(r#"{"bogus":1}"#).is_err());
    }

    #[test]
    fn latex_export() {
        let r = analyze(&sub("01,10"), &AnalysisOptions { timings: true, ..Default::default() }).unwrap();
        let tex = export_latex(&r);
        assert!(tex.starts_with("\\documentclass{article}"));
        assert_eq!(tex.matches("\\begin{tikzpicture}").count(), 2);
        assert!(tex.trim_end().ends_with("\\end{document}"));
        assert_eq!(tex, export_latex(&analyze(&sub("01,10"), &AnalysisOptions::default()).unwrap()));
    }
}
