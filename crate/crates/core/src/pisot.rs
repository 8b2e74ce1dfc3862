//! Pisot classification, the balanced pair algorithm and strong coincidence.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::substitution_matrix;
use crate::pf::pf_root;
use crate::poly::{
    count_roots_inside_unit_disc, factor_with_cap, has_unit_circle_root, IntPolynomial, DEFAULT_FACTOR_DEGREE_CAP,
};
use crate::word::{abelianize, AbelianVector, Letter, PowerWalker, Substitution, Word, DEFAULT_WORD_BUDGET};

/// Default iteration cap for the strong coincidence check.
pub const DEFAULT_COINCIDENCE_CAP: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PisotReason {
    IrreduciblePisot,
    /// Pisot, but the characteristic polynomial has the factor `λ`.
    ZeroEigenvalue,
    /// Pisot, but the characteristic polynomial has another nontrivial factor.
    Reducible,
    /// Not Pisot: the minimal polynomial of `λ_PF` has a root of modulus 1.
    UnitCircleRoot,
    /// Not Pisot: some conjugate of `λ_PF` has modulus greater than 1.
    ModulusAtLeastOne,
    NotPrimitive,
    /// The characteristic polynomial exceeds the factorization degree cap.
    UndecidedExact,
}

impl PisotReason {
    pub fn as_str(self) -> &'static str {
        match self {
            PisotReason::IrreduciblePisot => "irreducible-pisot",
            PisotReason::ZeroEigenvalue => "zero-eigenvalue",
            PisotReason::Reducible => "reducible",
            PisotReason::UnitCircleRoot => "unit-circle-root",
            PisotReason::ModulusAtLeastOne => "modulus-at-least-one",
            PisotReason::NotPrimitive => "not-primitive",
            PisotReason::UndecidedExact => "undecided-exact",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PisotVerdict {
    pub primitive: bool,
    pub char_poly: IntPolynomial,
    /// `None` when not primitive or past the degree cap.
    pub minimal_polynomial: Option<IntPolynomial>,
    pub pisot: bool,
    pub irreducible_pisot: bool,
    pub reason: PisotReason,
}

pub fn classify_pisot(sub: &Substitution) -> Result<PisotVerdict> {
    classify_pisot_with_cap(sub, DEFAULT_FACTOR_DEGREE_CAP)
}

pub fn classify_pisot_with_cap(sub: &Substitution, cap: usize) -> Result<PisotVerdict> {
    let m = substitution_matrix(sub);
    let char_poly = m.char_poly();
    let verdict = |minimal_polynomial, pisot, irreducible_pisot, reason| PisotVerdict {
        primitive: reason != PisotReason::NotPrimitive,
        char_poly: char_poly.clone(),
        minimal_polynomial,
        pisot,
        irreducible_pisot,
        reason,
    };
    if !m.is_primitive()? {
        return Ok(verdict(None, false, false, PisotReason::NotPrimitive));
    }
    let (_, root) = pf_root(&m)?;
    let fac = match factor_with_cap(&char_poly, cap) {
        Ok(f) => f,
        Err(Error::DegreeCap { .. }) => return Ok(verdict(None, false, false, PisotReason::UndecidedExact)),
        Err(e) => return Err(e),
    };
    let minimal = fac
        .factors
        .iter()
        .map(|(f, _)| f)
        .find(|f| if root.is_exact() { f.sign_at(root.lo()) == 0 } else { f.count_real_roots(root.lo(), root.hi()) > 0 })
        .cloned()
        .ok_or_else(|| Error::Internal("no factor vanishes at the PF eigenvalue".into()))?;

    // exact and decided before any counting; a PF eigenvalue of 1 lands here too
    if has_unit_circle_root(&minimal) {
        return Ok(verdict(Some(minimal), false, false, PisotReason::UnitCircleRoot));
    }
    let inside = count_roots_inside_unit_disc(&minimal)?;
    if inside + 1 != minimal.degree() {
        return Ok(verdict(Some(minimal), false, false, PisotReason::ModulusAtLeastOne));
    }
    let reason = if fac.is_irreducible() {
        PisotReason::IrreduciblePisot
    } else if char_poly.coeff(0) == 0.into() {
        PisotReason::ZeroEigenvalue
    } else {
        PisotReason::Reducible
    };
    Ok(verdict(Some(minimal), true, reason == PisotReason::IrreduciblePisot, reason))
}

/// Two words with equal abelianization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BalancedPair {
    pub u: Word,
    pub v: Word,
}

impl BalancedPair {
    pub fn new(u: Word, v: Word) -> Result<Self> {
        let l = u.iter().chain(v.iter()).max().map_or(0, |&a| a as usize + 1);
        if abelianize(&u, l) != abelianize(&v, l) {
            return Err(Error::Unbalanced(format!("{},{}", u.render(), v.render())));
        }
        Ok(BalancedPair { u, v })
    }

    /// `(i,i)` for a single letter `i`.
    pub fn is_coincidence(&self) -> bool {
        self.u.len() == 1 && self.u == self.v
    }

    pub fn render(&self) -> String {
        format!("({},{})", self.u.render(), self.v.render())
    }
}

/// Splits a balanced pair at every index where the prefixes are balanced.
pub fn factor_balanced_pair(bp: &BalancedPair) -> Result<Vec<BalancedPair>> {
    factor_words(&bp.u, &bp.v)
}

fn factor_words(u: &[Letter], v: &[Letter]) -> Result<Vec<BalancedPair>> {
    let unbalanced = || Error::Unbalanced(format!("{},{}", Word::from(u).render(), Word::from(v).render()));
    if u.len() != v.len() {
        return Err(unbalanced());
    }
    let mut diff = [0i64; 256];
    let mut nonzero = 0usize;
    let mut bump = |a: Letter, d: i64, nonzero: &mut usize| {
        let before = diff[a as usize];
        diff[a as usize] += d;
        match (before == 0, diff[a as usize] == 0) {
            (true, false) => *nonzero += 1,
            (false, true) => *nonzero -= 1,
            _ => {}
        }
    };
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..u.len() {
        bump(u[i], 1, &mut nonzero);
        bump(v[i], -1, &mut nonzero);
        if nonzero == 0 {
            out.push(BalancedPair { u: Word::from(&u[start..=i]), v: Word::from(&v[start..=i]) });
            start = i + 1;
        }
    }
    if start != u.len() {
        return Err(unbalanced());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedPairBudget {
    pub max_pairs: usize,
    pub max_side: usize,
}

impl Default for BalancedPairBudget {
    fn default() -> Self {
        BalancedPairBudget { max_pairs: 4096, max_side: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedPairOutcome {
    /// `None` when the budget ran out first.
    pub terminates: Option<bool>,
    pub with_coincidence: bool,
    /// `I(u,v)`, sorted; partial when the budget ran out.
    pub pairs: Vec<BalancedPair>,
}

/// Closure of the irreducible factors of `(u,v)` under substitution.
pub fn balanced_pair_algorithm(
    sub: &Substitution,
    u: &Word,
    v: &Word,
    budget: BalancedPairBudget,
) -> Result<BalancedPairOutcome> {
    let start = BalancedPair::new(u.clone(), v.clone())?;
    let mut seen: BTreeSet<BalancedPair> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for p in factor_balanced_pair(&start)? {
        if seen.insert(p.clone()) {
            queue.push_back(p);
        }
    }
    let mut exhausted = seen.len() > budget.max_pairs;
    while let Some(p) = queue.pop_front() {
        if exhausted {
            break;
        }
        if sub.image_len(&p.u) > budget.max_side {
            exhausted = true;
            break;
        }
        for q in factor_words(&sub.apply(&p.u), &sub.apply(&p.v))? {
            if !seen.contains(&q) {
                seen.insert(q.clone());
                queue.push_back(q);
                if seen.len() > budget.max_pairs {
                    exhausted = true;
                    break;
                }
            }
        }
    }
    let with_coincidence = seen.iter().any(BalancedPair::is_coincidence);
    Ok(BalancedPairOutcome {
        terminates: if exhausted { None } else { Some(true) },
        with_coincidence,
        pairs: seen.into_iter().collect(),
    })
}

/// Pure discrete spectrum for an irreducible Pisot substitution: the balanced
/// pair algorithm on `(01,10)` terminates with coincidence. `None` when undecided.
pub fn pure_discrete_spectrum(sub: &Substitution, budget: BalancedPairBudget) -> Result<Option<bool>> {
    if !classify_pisot(sub)?.irreducible_pisot {
        return Err(Error::Precondition("pure discrete spectrum criterion needs an irreducible Pisot substitution".into()));
    }
    let out = balanced_pair_algorithm(sub, &Word::new(vec![0, 1]), &Word::new(vec![1, 0]), budget)?;
    Ok(out.terminates.map(|_| out.with_coincidence))
}

/// `φⁿ(i) = u k v` and `φⁿ(j) = ũ k ṽ` with `ψ(u) = ψ(ũ)`; equal abelianizations force `|u| = |ũ|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceWitness {
    pub n: usize,
    pub position: usize,
    pub letter: Letter,
    pub prefix_abelianization: AbelianVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCoincidence {
    pub i: Letter,
    pub j: Letter,
    pub found: bool,
    pub witness: Option<CoincidenceWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceReport {
    pub cap: usize,
    pub pairs: Vec<PairCoincidence>,
    pub strongly_coincident: bool,
    /// Max over pairs of the least coincidence power, when every pair has one.
    pub iteration: Option<usize>,
}

impl CoincidenceReport {
    pub fn witness_partition(&self, sub: &Substitution, i: Letter, j: Letter) -> Option<[String; 2]> {
        let pair = self.pairs.iter().find(|p| p.i == i && p.j == j)?;
        let w = pair.witness.as_ref()?;
        let split = |a: Letter| {
            let img = sub.iterate(&[a], w.n).ok()?;
            Some(format!(
                "({})({})({})",
                Word::from(&img[..w.position]).render(),
                Word::from(&img[w.position..=w.position]).render(),
                Word::from(&img[w.position + 1..]).render()
            ))
        };
        Some([split(i)?, split(j)?])
    }
}

/// First position where `φⁿ(i)` and `φⁿ(j)` carry the same letter over balanced prefixes.
fn scan_coincidence(
    sub: &Substitution,
    i: Letter,
    j: Letter,
    n: usize,
    scanned: &mut usize,
    budget: usize,
) -> Result<Option<CoincidenceWitness>> {
    let l = sub.len();
    let (si, sj) = ([i], [j]);
    let mut a = PowerWalker::new(sub, &si, n);
    let mut b = PowerWalker::new(sub, &sj, n);
    let mut diff = vec![0i64; l];
    let mut nonzero = 0usize;
    let mut prefix = vec![0u64; l];
    let mut position = 0usize;
    while let (Some(x), Some(y)) = (a.next(), b.next()) {
        if nonzero == 0 && x == y {
            return Ok(Some(CoincidenceWitness { n, position, letter: x, prefix_abelianization: AbelianVector(prefix) }));
        }
        *scanned += 1;
        if *scanned > budget {
            return Err(Error::budget("coincidence scan", budget as u64));
        }
        for (c, d) in [(x, 1i64), (y, -1)] {
            let before = diff[c as usize];
            diff[c as usize] += d;
            if before == 0 {
                nonzero += 1;
            } else if diff[c as usize] == 0 {
                nonzero -= 1;
            }
        }
        prefix[x as usize] += 1;
        position += 1;
    }
    Ok(None)
}

pub fn strong_coincidence(sub: &Substitution, cap: usize) -> Result<CoincidenceReport> {
    strong_coincidence_with_budget(sub, cap, DEFAULT_WORD_BUDGET)
}

/// For each pair `i < j`, the least `n ≤ cap` with a coincidence. `budget` bounds
/// the letters scanned per pair.
pub fn strong_coincidence_with_budget(sub: &Substitution, cap: usize, budget: usize) -> Result<CoincidenceReport> {
    if !substitution_matrix(sub).is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let l = sub.len();
    let mut pairs = Vec::with_capacity(l * l.saturating_sub(1) / 2);
    for i in 0..l {
        for j in i + 1..l {
            let (i, j) = (i as Letter, j as Letter);
            let mut scanned = 0usize;
            let mut witness = None;
            // a coincidence at n persists at n + 1, so the first hit is the least n
            for n in 1..=cap {
                if let Some(w) = scan_coincidence(sub, i, j, n, &mut scanned, budget)? {
                    witness = Some(w);
                    break;
                }
            }
            pairs.push(PairCoincidence { i, j, found: witness.is_some(), witness });
        }
    }
    let strongly_coincident = pairs.iter().all(|p| p.found);
    let iteration = if strongly_coincident {
        Some(pairs.iter().filter_map(|p| p.witness.as_ref().map(|w| w.n)).max().unwrap_or(0))
    } else {
        None
    };
    Ok(CoincidenceReport { cap, pairs, strongly_coincident, iteration })
}

/// Rechecks a witness against freshly computed images.
pub fn validate_witness(sub: &Substitution, i: Letter, j: Letter, w: &CoincidenceWitness) -> Result<bool> {
    let a = sub.iterate(&[i], w.n)?;
    let b = sub.iterate(&[j], w.n)?;
    if w.position >= a.len() || w.position >= b.len() {
        return Ok(false);
    }
    let l = sub.len();
    let pa = abelianize(&a[..w.position], l);
    Ok(a[w.position] == w.letter
        && b[w.position] == w.letter
        && pa == abelianize(&b[..w.position], l)
        && pa == w.prefix_abelianization)
}
