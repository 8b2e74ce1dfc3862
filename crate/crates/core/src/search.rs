//! Enumeration of canonical substitutions and the strong coincidence search.
//!
//! Substitutions on `l` letters are listed by total image length, then by the
//! tuple `(φ(0), ..., φ(l-1))` compared entrywise in shortlex order. Only the
//! least member of each orbit under letter permutation and image reversal is
//! emitted; indices count these canonical representatives from 0.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pisot::{classify_pisot, strong_coincidence_with_budget, PisotReason};
use crate::word::{Letter, Substitution, Word, DEFAULT_WORD_BUDGET};

/// All substitutions on `l` letters in enumeration order, canonical or not.
#[derive(Debug, Clone)]
pub struct RawEnumerator {
    l: usize,
    grade: usize,
    lengths: Vec<usize>,
    words: Vec<Vec<Letter>>,
    started: bool,
}

impl RawEnumerator {
    pub fn new(l: usize) -> Self {
        assert!((1..=crate::word::MAX_ALPHABET).contains(&l), "alphabet size out of range");
        let mut e = RawEnumerator { l, grade: l, lengths: vec![1; l], words: vec![vec![0]; l], started: false };
        e.reset_from(0);
        e
    }

    /// Total image length of the current tuple.
    pub fn grade(&self) -> usize {
        self.grade
    }

    /// Positions after `k` get the smallest tuple fitting the remaining length.
    fn reset_from(&mut self, k: usize) {
        let used: usize = self.lengths[..k].iter().sum();
        for i in k..self.l {
            let len = if i + 1 == self.l { self.grade - used - (self.l - 1 - k) } else { 1 };
            self.lengths[i] = len;
            self.words[i] = vec![0; len];
        }
    }

    fn increment_word(&mut self, i: usize) -> bool {
        let l = self.l as Letter;
        for x in self.words[i].iter_mut().rev() {
            if *x + 1 < l {
                *x += 1;
                return true;
            }
            *x = 0;
        }
        false
    }

    fn advance(&mut self) {
        let mut k = self.l - 1;
        loop {
            if self.increment_word(k) {
                break;
            }
            if k + 1 < self.l {
                // lengthen word k if the later words still get a letter each
                let used: usize = self.lengths[..=k].iter().sum();
                if used + (self.l - 1 - k) < self.grade {
                    self.lengths[k] += 1;
                    self.words[k] = vec![0; self.lengths[k]];
                    break;
                }
            }
            if k == 0 {
                self.grade += 1;
                self.reset_from(0);
                return;
            }
            k -= 1;
        }
        self.reset_from(k + 1);
    }

    fn current(&self) -> Substitution {
        Substitution::new(self.words.iter().map(|w| Word::new(w.clone())).collect()).expect("valid alphabet size")
    }
}

impl Iterator for RawEnumerator {
    type Item = Substitution;

    fn next(&mut self) -> Option<Substitution> {
        if self.started {
            self.advance();
        }
        self.started = true;
        Some(self.current())
    }
}

fn permutations(l: usize) -> Vec<Vec<Letter>> {
    fn go(prefix: &mut Vec<Letter>, used: &mut [bool], out: &mut Vec<Vec<Letter>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for a in 0..used.len() {
            if !used[a] {
                used[a] = true;
                prefix.push(a as Letter);
                go(prefix, used, out);
                prefix.pop();
                used[a] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; l], &mut out);
    out
}

/// The orbit under letter permutations and image reversal, with repeats.
pub fn orbit(sub: &Substitution) -> Vec<Substitution> {
    permutations(sub.len())
        .iter()
        .flat_map(|p| {
            let q = sub.permute_letters(p).expect("permutation of the right size");
            let r = q.reverse();
            [q, r]
        })
        .collect()
}

/// Least orbit member in enumeration order.
pub fn canonical_form(sub: &Substitution) -> Substitution {
    orbit(sub).into_iter().min_by(|a, b| order(a, b)).expect("orbit contains the identity")
}

/// Enumeration order for substitutions of equal alphabet size.
pub fn order(a: &Substitution, b: &Substitution) -> std::cmp::Ordering {
    a.total_length().cmp(&b.total_length()).then_with(|| a.images().cmp(b.images()))
}

pub fn is_canonical(sub: &Substitution, perms: &[Vec<Letter>]) -> bool {
    let images = sub.images();
    perms.iter().all(|p| {
        // relabelled images compared without building a substitution
        let mut q: Vec<Word> = vec![Word::empty(); images.len()];
        for (i, w) in images.iter().enumerate() {
            q[p[i] as usize] = Word::new(w.iter().map(|&a| p[a as usize]).collect());
        }
        if q.as_slice() < images {
            return false;
        }
        let r: Vec<Word> = q.iter().map(Word::reversed).collect();
        r.as_slice() >= images
    })
}

/// Canonical substitutions paired with their canonical index.
pub struct CanonicalEnumerator {
    raw: RawEnumerator,
    perms: Vec<Vec<Letter>>,
    index: u64,
}

impl CanonicalEnumerator {
    pub fn new(l: usize) -> Self {
        CanonicalEnumerator { raw: RawEnumerator::new(l), perms: permutations(l), index: 0 }
    }
}

impl Iterator for CanonicalEnumerator {
    type Item = (u64, Substitution);

    fn next(&mut self) -> Option<(u64, Substitution)> {
        loop {
            let s = self.raw.next()?;
            if is_canonical(&s, &self.perms) {
                let i = self.index;
                self.index += 1;
                return Some((i, s));
            }
        }
    }
}

/// Canonical substitutions with indices in `[start, start + count)`.
pub fn enumerate_substitutions(l: usize, start: u64, count: u64) -> impl Iterator<Item = (u64, Substitution)> {
    CanonicalEnumerator::new(l).skip_while(move |(i, _)| *i < start).take(count as usize)
}

/// How the per-chunk work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// `workers == 0` uses all available cores. Without the `parallel`
    /// feature this runs sequentially.
    Parallel { workers: usize },
}

impl Default for Execution {
    fn default() -> Self {
        Execution::Parallel { workers: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub letters: usize,
    pub from: u64,
    pub count: u64,
    pub cap: usize,
    pub chunk_size: u64,
    /// Letters scanned per letter pair before a substitution is given up.
    pub word_budget: usize,
}

impl SearchConfig {
    pub fn new(letters: usize, from: u64, count: u64, cap: usize) -> Self {
        SearchConfig { letters, from, count, cap, chunk_size: 1000, word_budget: DEFAULT_WORD_BUDGET }
    }

    fn chunk_count(&self) -> u64 {
        self.count.div_ceil(self.chunk_size.max(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoincidenceOutcome {
    Iterations(usize),
    /// No coincidence for some pair within the cap: a counterexample candidate.
    CapReached,
    BudgetExhausted,
}

impl CoincidenceOutcome {
    pub fn render(self) -> String {
        match self {
            CoincidenceOutcome::Iterations(n) => n.to_string(),
            CoincidenceOutcome::CapReached => "cap".into(),
            CoincidenceOutcome::BudgetExhausted => "budget".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cap" => Some(CoincidenceOutcome::CapReached),
            "budget" => Some(CoincidenceOutcome::BudgetExhausted),
            _ => s.parse().ok().map(CoincidenceOutcome::Iterations),
        }
    }
}

/// One irreducible Pisot substitution met by the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub index: u64,
    pub share_string: String,
    pub irreducible_pisot: bool,
    pub coincidence: CoincidenceOutcome,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    index: u64,
    share_string: String,
    irreducible_pisot: bool,
    coincidence_n: String,
}

/// Aggregate of a search range; merging is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub examined: u64,
    pub irreducible_pisot: u64,
    /// Overall coincidence iteration to number of substitutions.
    pub iterations: BTreeMap<usize, u64>,
    pub cap_reached: u64,
    pub budget_exhausted: u64,
    /// Past the exact-factorization degree cap.
    pub undecided: u64,
}

impl Histogram {
    pub fn merge(&mut self, other: &Histogram) {
        self.examined += other.examined;
        self.irreducible_pisot += other.irreducible_pisot;
        for (k, v) in &other.iterations {
            *self.iterations.entry(*k).or_default() += v;
        }
        self.cap_reached += other.cap_reached;
        self.budget_exhausted += other.budget_exhausted;
        self.undecided += other.undecided;
    }

    fn add(&mut self, r: &SearchRecord) {
        self.irreducible_pisot += 1;
        match r.coincidence {
            CoincidenceOutcome::Iterations(n) => *self.iterations.entry(n).or_default() += 1,
            CoincidenceOutcome::CapReached => self.cap_reached += 1,
            CoincidenceOutcome::BudgetExhausted => self.budget_exhausted += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    pub records: Vec<SearchRecord>,
    pub histogram: Histogram,
}

impl SearchOutcome {
    /// Records that did not reach a coincidence within the cap.
    pub fn counterexample_candidates(&self) -> impl Iterator<Item = &SearchRecord> {
        self.records.iter().filter(|r| r.coincidence == CoincidenceOutcome::CapReached)
    }
}

/// Classifies one substitution; only irreducible Pisot ones produce a record.
pub fn evaluate(index: u64, sub: &Substitution, cap: usize, word_budget: usize) -> Result<(Option<SearchRecord>, bool)> {
    let verdict = classify_pisot(sub)?;
    if verdict.reason == PisotReason::UndecidedExact {
        return Ok((None, true));
    }
    if !verdict.irreducible_pisot {
        return Ok((None, false));
    }
    let coincidence = match strong_coincidence_with_budget(sub, cap, word_budget) {
        Ok(r) => r.iteration.map_or(CoincidenceOutcome::CapReached, CoincidenceOutcome::Iterations),
        Err(e) if e.is_budget() => CoincidenceOutcome::BudgetExhausted,
        Err(e) => return Err(e),
    };
    let record = SearchRecord { index, share_string: sub.share_string()?, irreducible_pisot: true, coincidence };
    Ok((Some(record), false))
}

struct ChunkResult {
    id: u64,
    records: Vec<SearchRecord>,
    histogram: Histogram,
}

fn run_chunk(id: u64, items: &[(u64, Substitution)], config: &SearchConfig) -> Result<ChunkResult> {
    let mut histogram = Histogram::default();
    let mut records = Vec::new();
    for (i, s) in items {
        histogram.examined += 1;
        let (rec, undecided) = evaluate(*i, s, config.cap, config.word_budget)?;
        histogram.undecided += u64::from(undecided);
        if let Some(r) = rec {
            histogram.add(&r);
            records.push(r);
        }
    }
    Ok(ChunkResult { id, records, histogram })
}

fn run_wave(wave: &[(u64, Vec<(u64, Substitution)>)], config: &SearchConfig, exec: Execution) -> Result<Vec<ChunkResult>> {
    let sequential = || wave.iter().map(|(id, items)| run_chunk(*id, items, config)).collect();
    match exec {
        Execution::Sequential => sequential(),
        #[cfg(feature = "parallel")]
        Execution::Parallel { workers } => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            pool.install(|| wave.par_iter().map(|(id, items)| run_chunk(*id, items, config)).collect())
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel { .. } => sequential(),
    }
}

/// Chunks of the configured range in order, skipping those in `done`.
fn chunks<'a>(
    config: &'a SearchConfig,
    done: &'a BTreeMap<u64, u64>,
) -> impl Iterator<Item = (u64, Vec<(u64, Substitution)>)> + 'a {
    let size = config.chunk_size.max(1);
    let mut items = enumerate_substitutions(config.letters, config.from, config.count).peekable();
    (0..config.chunk_count()).filter_map(move |id| {
        let end = config.from + ((id + 1) * size).min(config.count);
        let mut chunk = Vec::new();
        while let Some((i, _)) = items.peek() {
            if *i >= end {
                break;
            }
            chunk.push(items.next().expect("peeked"));
        }
        (!done.contains_key(&id)).then_some((id, chunk))
    })
}

fn check_config(config: &SearchConfig) -> Result<()> {
    if config.letters < 2 {
        return Err(Error::Precondition("search needs at least two letters".into()));
    }
    Ok(())
}

/// Runs the search in memory.
pub fn search(config: &SearchConfig, exec: Execution) -> Result<SearchOutcome> {
    check_config(config)?;
    let done = BTreeMap::new();
    let wave: Vec<_> = chunks(config, &done).collect();
    let results = run_wave(&wave, config, exec)?;
    Ok(assemble(config, results))
}

fn assemble(config: &SearchConfig, mut results: Vec<ChunkResult>) -> SearchOutcome {
    results.sort_by_key(|r| r.id);
    let mut histogram = Histogram::default();
    let mut records = Vec::new();
    for r in results {
        histogram.merge(&r.histogram);
        records.extend(r.records);
    }
    SearchOutcome { config: *config, records, histogram }
}

/// Output files of a search directory.
pub struct SearchPaths {
    pub records: PathBuf,
    pub histogram: PathBuf,
    pub checkpoint: PathBuf,
    pub config: PathBuf,
    pub chunks: PathBuf,
}

impl SearchPaths {
    pub fn new(dir: &Path) -> Self {
        SearchPaths {
            records: dir.join("records.csv"),
            histogram: dir.join("histogram.json"),
            checkpoint: dir.join("checkpoint.txt"),
            config: dir.join("search.json"),
            chunks: dir.join("chunks"),
        }
    }

    fn chunk(&self, id: u64) -> (PathBuf, PathBuf) {
        (self.chunks.join(format!("{id}.csv")), self.chunks.join(format!("{id}.json")))
    }
}

/// `chunk_id:last_index` per completed chunk.
pub fn read_checkpoint(path: &Path) -> Result<BTreeMap<u64, u64>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e.into()),
    };
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (a, b) = l.split_once(':').ok_or_else(|| Error::Parse(format!("checkpoint line {l:?}")))?;
            let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("checkpoint line {l:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_records(path: &Path, records: &[SearchRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow {
            index: r.index,
            share_string: r.share_string.clone(),
            irreducible_pisot: r.irreducible_pisot,
            coincidence_n: r.coincidence.render(),
        })
        .map_err(csv_error)?;
    }
    if records.is_empty() {
        w.write_record(["index", "share_string", "irreducible_pisot", "coincidence_n"]).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(path, &bytes)
}

pub fn read_records(path: &Path) -> Result<Vec<SearchRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_error)?;
    r.deserialize::<CsvRow>()
        .map(|row| {
            let row = row.map_err(csv_error)?;
            let coincidence = CoincidenceOutcome::parse(&row.coincidence_n)
                .ok_or_else(|| Error::Parse(format!("coincidence_n {:?}", row.coincidence_n)))?;
            Ok(SearchRecord {
                index: row.index,
                share_string: row.share_string,
                irreducible_pisot: row.irreducible_pisot,
                coincidence,
            })
        })
        .collect()
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    s.push(b'\n');
    Ok(s)
}

/// The JSON histogram file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramFile {
    pub letters: usize,
    pub from: u64,
    pub count: u64,
    pub cap: usize,
    #[serde(flatten)]
    pub histogram: Histogram,
    pub counterexample_candidates: Vec<String>,
    pub budget_exhausted_substitutions: Vec<String>,
}

impl HistogramFile {
    pub fn new(outcome: &SearchOutcome) -> Self {
        let pick = |o: CoincidenceOutcome| {
            outcome.records.iter().filter(|r| r.coincidence == o).map(|r| r.share_string.clone()).collect()
        };
        HistogramFile {
            letters: outcome.config.letters,
            from: outcome.config.from,
            count: outcome.config.count,
            cap: outcome.config.cap,
            histogram: outcome.histogram.clone(),
            counterexample_candidates: pick(CoincidenceOutcome::CapReached),
            budget_exhausted_substitutions: pick(CoincidenceOutcome::BudgetExhausted),
        }
    }
}

/// Runs the search with per-chunk files and a checkpoint under `dir`, then
/// writes `records.csv` and `histogram.json`. With `resume`, completed chunks
/// listed in the checkpoint are loaded instead of recomputed.
pub fn search_to_dir(config: &SearchConfig, exec: Execution, dir: &Path, resume: bool) -> Result<SearchOutcome> {
    check_config(config)?;
    let paths = SearchPaths::new(dir);
    fs::create_dir_all(&paths.chunks)?;
    let config_bytes = json_bytes(config)?;
    let mut done = BTreeMap::new();
    if resume {
        match fs::read(&paths.config) {
            Ok(prev) if prev == config_bytes => done = read_checkpoint(&paths.checkpoint)?,
            Ok(_) => return Err(Error::Precondition("resume with a different search configuration".into())),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
    } else {
        write_atomic(&paths.checkpoint, b"")?;
    }
    write_atomic(&paths.config, &config_bytes)?;

    let wave_len = match exec {
        Execution::Sequential => 1,
        Execution::Parallel { workers: 0 } => 4 * std::thread::available_parallelism().map_or(1, |n| n.get()),
        Execution::Parallel { workers } => 4 * workers,
    };
    let mut finished = done.clone();
    let mut pending = chunks(config, &done).peekable();
    while pending.peek().is_some() {
        let wave: Vec<_> = pending.by_ref().take(wave_len).collect();
        let ends: BTreeMap<u64, Option<u64>> =
            wave.iter().map(|(id, items)| (*id, items.last().map(|(i, _)| *i))).collect();
        for r in run_wave(&wave, config, exec)? {
            let (csv_path, hist_path) = paths.chunk(r.id);
            write_records(&csv_path, &r.records)?;
            write_atomic(&hist_path, &json_bytes(&r.histogram)?)?;
            let last = ends[&r.id].unwrap_or(config.from);
            finished.insert(r.id, last);
        }
        let text: String = finished.iter().map(|(id, last)| format!("{id}:{last}\n")).collect();
        write_atomic(&paths.checkpoint, text.as_bytes())?;
    }

    let results = finished
        .keys()
        .map(|&id| {
            let (csv_path, hist_path) = paths.chunk(id);
            let histogram: Histogram = serde_json::from_slice(&fs::read(&hist_path)?)
                .map_err(|e| Error::Parse(format!("{}: {e}", hist_path.display())))?;
            Ok(ChunkResult { id, records: read_records(&csv_path)?, histogram })
        })
        .collect::<Result<Vec<_>>>()?;
    let outcome = assemble(config, results);
    write_records(&paths.records, &outcome.records)?;
    write_atomic(&paths.histogram, &json_bytes(&HistogramFile::new(&outcome))?)?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    fn shares(it: impl Iterator<Item = Substitution>) -> Vec<String> {
        it.map(|s| s.share_string().unwrap()).collect()
    }

    #[test]
    fn raw_order_starts_as_expected() {
        let first = shares(RawEnumerator::new(3).take(200));
        assert_eq!(&first[..3], ["0,0,0", "0,0,1", "0,0,2"]);
        let pos = |s: &str| first.iter().position(|x| x == s).unwrap();
        assert!(pos("0,0,1") < pos("0,2,0") && pos("0,2,0") < pos("00,0,0"));
        // grade 4 opens with the last word lengthened; 162 tuples keep φ(0) a single letter
        assert_eq!(first[27], "0,0,00");
        assert_eq!(pos("00,0,0"), 27 + 162);
        let g4 = shares(RawEnumerator::new(2).skip(4).take(3));
        assert_eq!(g4, ["0,00", "0,01", "0,10"]);
    }

    #[test]
    fn raw_counts_per_grade() {
        // compositions of the grade times l^grade
        let mut e = RawEnumerator::new(3);
        let mut counts = BTreeMap::new();
        while e.grade() <= 6 {
            e.next();
            if e.grade() <= 6 {
                *counts.entry(e.grade()).or_insert(0u64) += 1;
            }
        }
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), [(3, 27), (4, 243), (5, 1458), (6, 7290)]);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_form(&sub("01,0")), canonical_form(&sub("10,0")));
        assert_eq!(canonical_form(&sub("01,0")), canonical_form(&sub("1,10")));
        assert_eq!(canonical_form(&sub("01,0")).share_string().unwrap(), "1,01");
        let fib: Vec<_> = CanonicalEnumerator::new(2)
            .take(200)
            .filter(|(_, s)| canonical_form(s) == canonical_form(&sub("01,0")))
            .collect();
        assert_eq!(fib.len(), 1);
    }

    #[test]
    fn orbits_partition_short_substitutions() {
        let perms = permutations(2);
        let mut total = 0;
        let mut seen = std::collections::BTreeSet::new();
        for s in RawEnumerator::new(2).take_while(|s| s.total_length() <= 4) {
            if s.images().iter().all(|w| w.len() <= 2) && is_canonical(&s, &perms) {
                let members: std::collections::BTreeSet<String> =
                    orbit(&s).iter().map(|x| x.share_string().unwrap()).collect();
                total += members.len();
                for m in members {
                    assert!(seen.insert(m));
                }
            }
        }
        assert_eq!(total, 36);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let cfg = SearchConfig { chunk_size: 37, ..SearchConfig::new(3, 0, 600, 30) };
        let a = search(&cfg, Execution::Sequential).unwrap();
        let b = search(&cfg, Execution::Parallel { workers: 3 }).unwrap();
        assert_eq!(a, b);
        assert!(a.histogram.irreducible_pisot > 0);
        assert_eq!(a.histogram.examined, 600);
        assert_eq!(a.histogram.cap_reached, 0);
    }

    #[test]
    fn non_pisot_range_is_empty() {
        // the first few 2-letter substitutions are all non-primitive
        let out = search(&SearchConfig::new(2, 0, 2, 30), Execution::Sequential).unwrap();
        assert!(out.records.is_empty());
        assert!(out.histogram.iterations.is_empty());
    }

    #[test]
    fn directory_run_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SearchConfig { chunk_size: 50, ..SearchConfig::new(3, 100, 300, 30) };
        let full = search_to_dir(&cfg, Execution::Sequential, dir.path(), false).unwrap();
        let paths = SearchPaths::new(dir.path());
        let csv = fs::read_to_string(&paths.records).unwrap();
        assert!(csv.starts_with("index,share_string,irreducible_pisot,coincidence_n\n"));
        assert_eq!(read_checkpoint(&paths.checkpoint).unwrap().len(), 6);

        // drop the tail of the checkpoint as if the run had been killed
        let keep: String = fs::read_to_string(&paths.checkpoint).unwrap().lines().take(2).map(|l| format!("{l}\n")).collect();
        fs::write(&paths.checkpoint, keep).unwrap();
        fs::remove_file(&paths.records).unwrap();
        let resumed = search_to_dir(&cfg, Execution::Parallel { workers: 2 }, dir.path(), true).unwrap();
        assert_eq!(resumed, full);
        assert_eq!(fs::read_to_string(&paths.records).unwrap(), csv);

        let other = SearchConfig { cap: 12, ..cfg };
        assert!(search_to_dir(&other, Execution::Sequential, dir.path(), true).is_err());
    }
}
