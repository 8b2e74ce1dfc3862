//! Univariate polynomials over the integers.
//!
//! Everything here is exact: gcds and Sturm sequences are computed with
//! primitive pseudo-remainders, real roots are isolated by bisection on
//! rational intervals, and questions about the unit circle are answered
//! without floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree cap for exact factorization.
pub const DEFAULT_FACTOR_DEGREE_CAP: usize = 8;

/// Integer polynomial, coefficients in ascending degree. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    #[serde(with = "crate::bigser::vec")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// From ascending small coefficients: `from_i64(&[-6, -3, 1])` is `x² - 3x - 6`.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// `x - c`.
    pub fn linear_root(c: BigInt) -> Self {
        Self::new(vec![-c, BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign(&self.eval(x))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Reciprocal `x^deg · p(1/x)`.
    pub fn reciprocal(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Pseudo-remainder `lc(d)^(deg - deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "pseudo-division by zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return self.clone();
        }
        let lc = d.leading();
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let steps = self.degree() - dd + 1;
        for _ in 0..steps {
            if r.len() <= dd {
                // keep the scaling uniform
                r.iter_mut().for_each(|c| *c *= &lc);
                continue;
            }
            let top = r.pop().unwrap();
            let k = r.len() - dd;
            r.iter_mut().for_each(|c| *c *= &lc);
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                r[k + j] -= &top * dc;
            }
        }
        Self::new(r)
    }

    /// Exact quotient over the integers, if `d` divides `self` in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let lc = d.leading();
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (quot, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &quot * dc;
            }
            q[k] = quot;
        }
        r.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Gcd over Q, returned primitive with positive leading coefficient.
    /// Coprime inputs give the constant 1.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.degree() == 0 {
            Self::one()
        } else {
            a
        }
    }

    /// Square-free decomposition of the primitive part: `p = Π f_i^i` up to content.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let p = self.primitive_part();
        if p.degree() == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.div_exact(&a).expect("gcd divides");
        let mut c = dp.div_exact(&a).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).expect("gcd divides");
            if b.degree() == 0 {
                break;
            }
            c = d.div_exact(&g).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors (primitive).
    pub fn squarefree_part(&self) -> Self {
        let p = self.primitive_part();
        if p.degree() == 0 {
            return p;
        }
        p.div_exact(&p.gcd(&p.derivative())).expect("gcd divides").primitive_part()
    }

    /// Cauchy bound: every complex root has modulus below it.
    pub fn root_bound(&self) -> BigRational {
        let lc = BigRational::from_integer(self.leading().abs());
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| BigRational::from_integer(c.abs()) / &lc)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Sturm sequence of the square-free part.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let p = self.squarefree_part();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            if seq[n - 1].degree() == 0 {
                break;
            }
            let a = &seq[n - 2];
            let b = &seq[n - 1];
            let delta = a.degree() - b.degree() + 1;
            let mut r = a.pseudo_rem(b);
            // prem carries a factor lc(b)^delta; keep the true remainder's sign
            if b.leading().is_negative() && delta % 2 == 1 {
                r = r.neg();
            }
            let r = r.neg();
            if r.is_zero() {
                break;
            }
            let c = r.content();
            seq.push(Self::new(r.coeffs.iter().map(|x| x / &c).collect()));
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let seq = self.sturm_sequence();
        let v = |x: &BigRational| sign_variations(seq.iter().map(|p| p.sign_at(x)));
        v(lo).saturating_sub(v(hi))
    }

    /// Number of distinct real roots.
    pub fn count_all_real_roots(&self) -> usize {
        let seq = self.sturm_sequence();
        let at_neg = sign_variations(seq.iter().map(|p| {
            let s = sign_int(&p.leading());
            if p.degree() % 2 == 1 { -s } else { s }
        }));
        let at_pos = sign_variations(seq.iter().map(|p| sign_int(&p.leading())));
        at_neg.saturating_sub(at_pos)
    }

    /// Isolating intervals for every distinct real root, in increasing order.
    pub fn real_roots(&self) -> Vec<RealRoot> {
        let p = self.squarefree_part();
        if p.degree() == 0 {
            return Vec::new();
        }
        let seq = p.sturm_sequence();
        let b = p.root_bound();
        let mut out = Vec::new();
        isolate(&p, &seq, -b.clone(), b, &mut out);
        out
    }

    /// The largest real root, if any.
    pub fn largest_real_root(&self) -> Option<RealRoot> {
        self.real_roots().pop()
    }

    /// Rendering with variable name `var`, highest degree first: `λ^2 - 3λ - 6`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                s.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{i}")),
            }
        }
        s
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self.render("x"))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("λ"))
    }
}

pub(crate) fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

fn sign_int(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut prev = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

fn isolate(p: &IntPolynomial, seq: &[IntPolynomial], lo: BigRational, hi: BigRational, out: &mut Vec<RealRoot>) {
    let v = |x: &BigRational| sign_variations(seq.iter().map(|q| q.sign_at(x)));
    let n = v(&lo).saturating_sub(v(&hi));
    match n {
        0 => {}
        1 => {
            if p.sign_at(&hi) == 0 {
                out.push(RealRoot { poly: p.clone(), lo: hi.clone(), hi });
            } else {
                out.push(RealRoot { poly: p.clone(), lo, hi });
            }
        }
        _ => {
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            isolate(p, seq, lo, mid.clone(), out);
            isolate(p, seq, mid, hi, out);
        }
    }
}

/// A real root of a square-free polynomial, isolated in `(lo, hi]`; `lo == hi` means the root is exactly `lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    poly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl RealRoot {
    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// The same isolating interval, attached to a factor `p` of the original polynomial that vanishes at the root.
    pub(crate) fn with_poly(&self, p: IntPolynomial) -> RealRoot {
        RealRoot { poly: p.squarefree_part(), lo: self.lo.clone(), hi: self.hi.clone() }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halves the isolating interval.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let s_lo = self.poly.sign_at(&self.lo);
        let s_hi = self.poly.sign_at(&self.hi);
        if s_lo != 0 && s_hi != 0 {
            if s_mid == s_hi {
                self.hi = mid;
            } else {
                self.lo = mid;
            }
        } else if self.poly.count_real_roots(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Bisects until the interval is narrower than `width`.
    pub fn refine_to(&mut self, width: &BigRational) {
        while !self.is_exact() && &self.width() >= width {
            self.bisect();
        }
    }

    /// Midpoint approximation.
    pub fn approx(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        let mut r = self.clone();
        r.refine_to(&BigRational::new(1.into(), BigInt::from(1u64) << 60));
        rational_to_f64(&r.approx())
    }

    /// Compares the root with a rational number.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        let mut r = self.clone();
        loop {
            if r.is_exact() {
                return r.lo.cmp(x);
            }
            if &r.hi < x {
                return Ordering::Less;
            }
            if &r.lo >= x {
                return Ordering::Greater;
            }
            // lo < x <= hi, and the interval holds a single root
            if r.poly.sign_at(x) == 0 {
                return Ordering::Equal;
            }
            r.bisect();
        }
    }
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    // scale into a range where both parts convert without overflow
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift > 0 {
        (n.clone() / (d.clone() << shift as usize)).to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    } else {
        ((n.clone() << (-shift) as usize) / d.clone()).to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    };
    scaled
}

/// Decimal rendering with `sig` significant digits.
pub fn format_decimal(x: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // exponent e with 10^e <= ax < 10^(e+1)
    let ten = BigRational::from_integer(10.into());
    let mut e: i64 = 0;
    let mut probe = BigRational::one();
    if ax >= probe {
        while ax >= &probe * &ten {
            probe = probe * &ten;
            e += 1;
        }
    } else {
        while ax < probe {
            probe = probe / &ten;
            e -= 1;
        }
    }
    let digits_after = sig as i64 - 1 - e;
    let scaled = if digits_after >= 0 {
        &ax * BigRational::from_integer(BigInt::from(10).pow(digits_after as u32))
    } else {
        &ax / BigRational::from_integer(BigInt::from(10).pow((-digits_after) as u32))
    };
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let mut digits = rounded.to_string();
    let mut after = digits_after;
    if after > 0 {
        if digits.len() as i64 <= after {
            let pad = after as usize + 1 - digits.len();
            digits = "0".repeat(pad) + &digits;
        }
        let split = digits.len() - after as usize;
        let (int_part, frac_part) = digits.split_at(split);
        let frac = frac_part.trim_end_matches('0');
        digits = if frac.is_empty() { int_part.to_string() } else { format!("{int_part}.{frac}") };
    } else {
        while after < 0 {
            digits.push('0');
            after += 1;
        }
    }
    if neg {
        format!("-{digits}")
    } else {
        digits
    }
}

/// Factorization over Z: `content · Π factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, usize)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.content.abs().is_one()
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.content.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }
}

/// Complete factorization into irreducible primitive factors, sorted by (degree, coefficients).
pub fn factor(p: &IntPolynomial) -> Result<Factorization> {
    factor_with_cap(p, DEFAULT_FACTOR_DEGREE_CAP)
}

pub fn factor_with_cap(p: &IntPolynomial, cap: usize) -> Result<Factorization> {
    if p.degree() == 0 {
        return Err(Error::Precondition("factorization needs degree at least 1".into()));
    }
    let zero_roots = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if p.degree() - zero_roots > cap {
        return Err(Error::DegreeCap { degree: p.degree(), cap });
    }
    let prim = p.primitive_part();
    let mut content = p.content();
    if p.leading().is_negative() {
        content = -content;
    }
    let mut factors = Vec::new();
    for (part, mult) in prim.squarefree_decomposition() {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs.iter().rev().cmp(b.0.coeffs.iter().rev()))
    });
    Ok(Factorization { content, factors })
}

/// Factors a primitive square-free polynomial.
fn factor_squarefree(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut rest = p.primitive_part();
    // zero root
    if rest.coeff(0).is_zero() {
        out.push(IntPolynomial::from_i64(&[0, 1]));
        rest = rest.div_exact(&IntPolynomial::from_i64(&[0, 1])).unwrap();
    }
    // linear factors via the rational root test
    for (num, den) in rational_root_candidates(&rest) {
        if rest.degree() == 0 {
            break;
        }
        let lin = IntPolynomial::new(vec![-num.clone(), den.clone()]);
        if let Some(q) = rest.div_exact(&lin) {
            out.push(lin.primitive_part());
            rest = q;
        }
    }
    let mut k = 2;
    while rest.degree() >= 2 * k {
        match kronecker_factor(&rest, k) {
            Some(g) => {
                rest = rest.div_exact(&g).expect("found factor divides");
                out.push(g.primitive_part());
            }
            None => k += 1,
        }
    }
    if rest.degree() > 0 {
        out.push(rest.primitive_part());
    }
    out
}

fn rational_root_candidates(p: &IntPolynomial) -> Vec<(BigInt, BigInt)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let a0 = p.coeff(0).abs();
    let an = p.leading().abs();
    let (Some(nums), Some(dens)) = (divisors(&a0), divisors(&an)) else {
        // coefficients too large to enumerate divisors; fall back to root isolation
        return p
            .real_roots()
            .into_iter()
            .filter_map(|r| {
                let mut r = r;
                r.refine_to(&BigRational::new(1.into(), (an.clone() * an.clone() * 4u32).max(BigInt::one())));
                let x = r.approx();
                let cand = (x * BigRational::from_integer(an.clone())).round() / BigRational::from_integer(an.clone());
                (p.sign_at(&cand) == 0).then(|| (cand.numer().clone(), cand.denom().clone()))
            })
            .collect();
    };
    let mut out = Vec::new();
    for d in &dens {
        for n in &nums {
            if n.gcd(d).is_one() {
                out.push((n.clone(), d.clone()));
                out.push((-n.clone(), d.clone()));
            }
        }
    }
    out
}

/// Positive divisors of `n > 0` by trial division; `None` when `n` is too large.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&n| n > 0 && n <= 1u64 << 50)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small.into_iter().map(BigInt::from).collect())
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Kronecker search for a factor of degree exactly `k`.
fn kronecker_factor(p: &IntPolynomial, k: usize) -> Option<IntPolynomial> {
    // k + 1 evaluation points with the fewest divisors
    let mut pts: Vec<(i64, BigInt, usize)> = Vec::new();
    for x in -12i64..=12 {
        let v = p.eval_int(&BigInt::from(x));
        if v.is_zero() {
            continue;
        }
        if let Some(ds) = divisors(&v.abs()) {
            pts.push((x, v, ds.len()));
        }
    }
    if pts.len() < k + 1 {
        return None;
    }
    pts.sort_by_key(|t| t.2);
    pts.truncate(k + 1);
    let xs: Vec<BigRational> = pts.iter().map(|t| BigRational::from_integer(t.0.into())).collect();
    let choices: Vec<Vec<BigInt>> = pts
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let ds = divisors(&t.1.abs()).unwrap();
            if i == 0 {
                ds
            } else {
                ds.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
            }
        })
        .collect();
    // Lagrange basis polynomials over the chosen points
    let basis: Vec<Vec<BigRational>> = (0..=k)
        .map(|i| {
            let mut poly = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for j in 0..=k {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * &xs[j];
                }
                poly = next;
                denom *= &xs[i] - &xs[j];
            }
            poly.into_iter().map(|c| c / &denom).collect()
        })
        .collect();
    let norm2: BigInt = p.coeffs.iter().map(|c| c * c).sum();
    let lead = p.leading();
    let tail = p.coeff(0);
    let mut idx = vec![0usize; k + 1];
    loop {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        for (i, &ci) in idx.iter().enumerate() {
            let v = BigRational::from_integer(choices[i][ci].clone());
            for (d, b) in basis[i].iter().enumerate() {
                coeffs[d] += &v * b;
            }
        }
        if coeffs.iter().all(|c| c.is_integer()) && !coeffs[k].is_zero() {
            let ints: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
            let within_bound = ints
                .iter()
                .enumerate()
                .all(|(j, c)| {
                    let b = binomial(k, j);
                    c * c <= &b * &b * &norm2
                });
            let g = IntPolynomial::new(ints);
            if within_bound
                && (&lead % g.leading()).is_zero()
                && !g.coeff(0).is_zero()
                && (&tail % g.coeff(0)).is_zero()
                && p.div_exact(&g).is_some()
            {
                return Some(g);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos > k {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Whether `p` has a complex root of modulus exactly 1.
pub fn has_unit_circle_root(p: &IntPolynomial) -> bool {
    assert!(!p.is_zero(), "zero polynomial");
    let g = p.gcd(&p.reciprocal());
    if g.degree() == 0 {
        return false;
    }
    let one = BigInt::one();
    if g.eval_int(&one).is_zero() || g.eval_int(&-one).is_zero() {
        return true;
    }
    // roots of g are closed under inversion and avoid ±1, so g is palindromic of even degree
    let c = g.coeffs();
    let n = g.degree();
    debug_assert!(n % 2 == 0 && (0..=n).all(|i| c[i] == c[n - i]));
    let m = n / 2;
    // g(x) = x^m · h(x + 1/x)
    let mut h = IntPolynomial::constant(c[m].clone());
    let y = IntPolynomial::from_i64(&[0, 1]);
    let mut d_prev = IntPolynomial::from_i64(&[2]);
    let mut d_cur = y.clone();
    for k in 1..=m {
        h = h.add(&d_cur.scale(&c[m + k]));
        let next = y.mul(&d_cur).sub(&d_prev);
        d_prev = d_cur;
        d_cur = next;
    }
    let two = BigRational::from_integer(2.into());
    // real roots of h strictly inside (-2, 2) correspond to unit-circle roots
    let inside = h.count_real_roots(&-two.clone(), &two);
    let at_two = usize::from(h.sign_at(&two) == 0);
    inside > at_two
}

/// Number of roots (with multiplicity) strictly inside the unit disc.
/// Requires that no root lies on the unit circle.
pub fn count_roots_inside_unit_disc(p: &IntPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    if has_unit_circle_root(p) {
        return Err(Error::Precondition("polynomial has a root on the unit circle".into()));
    }
    if let Some(n) = schur_count(p) {
        return Ok(n);
    }
    // A pair of roots symmetric about the circle stalls the recursion at radius 1;
    // compare the counts for radii 1 ± ε, which agree once no root lies in between.
    for j in 4..400u32 {
        let den = BigInt::one() << j;
        let inner = schur_count(&rescale(p, &(&den - 1u32), &den));
        let outer = schur_count(&rescale(p, &(&den + 1u32), &den));
        if let (Some(a), Some(b)) = (inner, outer) {
            if a == b {
                return Ok(a);
            }
        }
    }
    Err(Error::Internal("unit-disc root count did not converge".into()))
}

/// Integer polynomial with the roots of `p` divided by `num/den`: `den^n · p(num/den · z)`.
fn rescale(p: &IntPolynomial, num: &BigInt, den: &BigInt) -> IntPolynomial {
    let n = p.degree();
    IntPolynomial::new(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * num.pow(k as u32) * den.pow((n - k) as u32))
            .collect(),
    )
}

/// Schur-Cohn style recursion by Rouché's theorem; `None` when `|a_0| = |a_n|` is hit.
fn schur_count(p: &IntPolynomial) -> Option<usize> {
    let mut p = p.primitive_part();
    let mut count = 0;
    loop {
        while !p.is_zero() && p.coeff(0).is_zero() {
            count += 1;
            p = IntPolynomial::new(p.coeffs[1..].to_vec());
        }
        if p.is_zero() {
            return None;
        }
        if p.degree() == 0 {
            return Some(count);
        }
        let a0 = p.coeff(0);
        let an = p.leading();
        let star = p.reciprocal();
        match an.abs().cmp(&a0.abs()) {
            Ordering::Greater => {
                // a_n p - a_0 p* vanishes at 0 and has as many roots inside as p
                let s = p.scale(&an).sub(&star.scale(&a0));
                count += 1;
                p = IntPolynomial::new(s.coeffs.get(1..).map(<[BigInt]>::to_vec).unwrap_or_default());
            }
            Ordering::Less => {
                p = p.scale(&a0).sub(&star.scale(&an));
            }
            Ordering::Equal => return None,
        }
        p = p.primitive_part();
    }
}

/// Whether every root other than `exclude` lies strictly inside the unit disc.
/// `exclude` must be a simple root of the square-free polynomial `p`.
pub fn roots_strictly_inside_unit_disc(p: &IntPolynomial, exclude: &RealRoot) -> Result<bool> {
    if p.squarefree_part().degree() != p.degree() {
        return Err(Error::Precondition("polynomial must be square-free".into()));
    }
    let inside = count_roots_inside_unit_disc(p)?;
    let one = BigRational::one();
    let excluded_inside =
        exclude.cmp_rational(&one) == Ordering::Less && exclude.cmp_rational(&-one) == Ordering::Greater;
    Ok(inside - usize::from(excluded_inside) == p.degree() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_render() {
        let a = p(&[-6, -3, 1]);
        assert_eq!(a.render("λ"), "λ^2 - 3λ - 6");
        assert_eq!(p(&[0, -2, 1]).render("λ"), "λ^2 - 2λ");
        assert_eq!(p(&[1, -2, 1]), p(&[-1, 1]).pow(2));
        assert_eq!(a.mul(&p(&[1, 1])).div_exact(&p(&[1, 1])), Some(a.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[2, 4, 6]).primitive_part(), p(&[1, 2, 3]));
        assert_eq!(p(&[-2, -4]).primitive_part(), p(&[1, 2]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), IntPolynomial::one());
        let f = p(&[-1, 1]).pow(2).mul(&p(&[1, 0, 1]));
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(p(&[1, 0, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x-2)(x+3)
        let f = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[3, 1]));
        assert_eq!(f.count_all_real_roots(), 3);
        assert_eq!(f.count_real_roots(&q(0, 1), &q(5, 2)), 2);
        assert_eq!(f.count_real_roots(&q(1, 1), &q(2, 1)), 1);
        assert_eq!(p(&[1, 0, 1]).count_all_real_roots(), 0);
        let roots = f.real_roots();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[2].cmp_rational(&q(2, 1)), Ordering::Equal);
    }

    #[test]
    fn golden_mean_root() {
        let f = p(&[-1, -1, 1]);
        let mut r = f.largest_real_root().unwrap();
        r.refine_to(&q(1, 1_000_000_000));
        assert_eq!(format_decimal(&r.approx(), 6), "1.61803");
        assert!((r.to_f64() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&q(1, 4), 6), "0.25");
        assert_eq!(format_decimal(&q(2, 1), 6), "2");
        assert_eq!(format_decimal(&q(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&q(123456, 1), 3), "123000");
        assert_eq!(format_decimal(&q(1, 1000), 2), "0.001");
    }

    #[test]
    fn factor_examples() {
        let f = factor(&p(&[-6, -3, 1])).unwrap();
        assert!(f.is_irreducible());
        let f = factor(&p(&[0, -2, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-2, 1]), 1), (p(&[0, 1]), 1)]);
        assert!(factor(&p(&[-1, -1, 1])).unwrap().is_irreducible());
        let f = factor(&p(&[1, -2, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 2)]);
        // (x^2 + x + 1)(x^2 - 2)(2x + 1)
        let g = p(&[1, 1, 1]).mul(&p(&[-2, 0, 1])).mul(&p(&[1, 2])).scale(&BigInt::from(3));
        let fg = factor(&g).unwrap();
        assert_eq!(fg.expand(), g);
        assert_eq!(fg.factors.len(), 3);
        assert_eq!(fg.content, BigInt::from(3));
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2), no rational roots
        let f = factor(&p(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(matches!(factor(&p(&[1; 10])), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn unit_circle_detection() {
        assert!(!has_unit_circle_root(&p(&[-1, -1, 1])));
        assert!(has_unit_circle_root(&p(&[-1, 1])));
        assert!(has_unit_circle_root(&p(&[1, 0, 1])));
        assert!(has_unit_circle_root(&p(&[1, 1, 1])));
        // x^2 - 5/2 x + 1 scaled: roots 2 and 1/2 are reciprocal but off the circle
        assert!(!has_unit_circle_root(&p(&[2, -5, 2])));
        // Salem-like quartic x^4 - x^3 - x^2 - x + 1 has two unit-circle roots
        assert!(has_unit_circle_root(&p(&[1, -1, -1, -1, 1])));
        assert!(!has_unit_circle_root(&p(&[0, 0, 1])));
    }

    #[test]
    fn disc_counts() {
        assert_eq!(count_roots_inside_unit_disc(&p(&[-1, -1, 1])).unwrap(), 1);
        assert_eq!(count_roots_inside_unit_disc(&p(&[-6, -3, 1])).unwrap(), 0);
        assert_eq!(count_roots_inside_unit_disc(&p(&[-1, -1, -1, 1])).unwrap(), 2);
        // reciprocal pair 2, 1/2 forces the annulus fallback
        assert_eq!(count_roots_inside_unit_disc(&p(&[2, -5, 2])).unwrap(), 1);
        assert_eq!(count_roots_inside_unit_disc(&p(&[0, 0, 1])).unwrap(), 2);
        assert!(count_roots_inside_unit_disc(&p(&[1, 0, 1])).is_err());
    }

    #[test]
    fn inside_disc_excluding_pf_root() {
        let fib = p(&[-1, -1, 1]);
        let r = fib.largest_real_root().unwrap();
        assert!(roots_strictly_inside_unit_disc(&fib, &r).unwrap());
        let f = p(&[-6, -3, 1]);
        let r = f.largest_real_root().unwrap();
        assert!(!roots_strictly_inside_unit_disc(&f, &r).unwrap());
        let trib = p(&[-1, -1, -1, 1]);
        let r = trib.largest_real_root().unwrap();
        assert!(roots_strictly_inside_unit_disc(&trib, &r).unwrap());
    }
}
