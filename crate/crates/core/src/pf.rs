//! Perron-Frobenius eigendata computed exactly in `Q(λ_PF)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{self, format_decimal, IntPolynomial, RealRoot, DEFAULT_FACTOR_DEGREE_CAP};

/// Default significant digits for decimal rendering.
pub const DEFAULT_PRECISION: usize = 6;

type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lc = b[db].clone();
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let f = r.last().unwrap() / &lc;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &f * bj;
        }
        q[k] = f;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// `Q[x]/(m)` for an irreducible integer polynomial `m`, with a distinguished real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: IntPolynomial,
    monic: QPoly,
    root: RealRoot,
}

/// An element of a [`NumberField`]: a rational polynomial in the generator of degree below the field degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement(QPoly);

impl FieldElement {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The element as a plain rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }
}

impl NumberField {
    /// `root` must be a root of the irreducible polynomial `modulus`.
    pub fn new(modulus: IntPolynomial, root: RealRoot) -> Self {
        let modulus = modulus.primitive_part();
        let lc = BigRational::from_integer(modulus.leading());
        let monic = modulus.coeffs().iter().map(|c| BigRational::from_integer(c.clone()) / &lc).collect();
        NumberField { modulus, monic, root }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn root(&self) -> &RealRoot {
        &self.root
    }

    /// The generator as a rational, for degree-one fields.
    pub fn as_rational_root(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| -self.monic[0].clone())
    }

    fn reduce(&self, p: QPoly) -> FieldElement {
        FieldElement(q_divrem(&p, &self.monic).1)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(Vec::new())
    }

    pub fn one(&self) -> FieldElement {
        self.rational(BigRational::one())
    }

    pub fn rational(&self, x: BigRational) -> FieldElement {
        FieldElement(trim(vec![x]))
    }

    pub fn integer(&self, x: &BigInt) -> FieldElement {
        self.rational(BigRational::from_integer(x.clone()))
    }

    /// The generator `λ`.
    pub fn generator(&self) -> FieldElement {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = a.0.len().max(b.0.len());
        FieldElement(trim(
            (0..n)
                .map(|i| a.0.get(i).cloned().unwrap_or_default() + b.0.get(i).cloned().unwrap_or_default())
                .collect(),
        ))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(q_sub(&a.0, &b.0))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(q_mul(&a.0, &b.0))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        // invariant: s_i · a ≡ r_i (mod m)
        let (mut r0, mut r1) = (self.monic.clone(), a.0.clone());
        let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = q_divrem(&r0, &r1);
            let s = q_sub(&s0, &q_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return Err(Error::Internal("modulus is reducible".into()));
        }
        let c = r1[0].recip();
        Ok(self.reduce(s1.into_iter().map(|x| x * &c).collect()))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Interval enclosure of the real value on a root interval.
    fn enclose(a: &FieldElement, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in a.0.iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = prods.iter().min().unwrap().clone();
            let max = prods.iter().max().unwrap().clone();
            acc = (min + c, max + c);
        }
        acc
    }

    /// Sign of the real value at the distinguished root.
    pub fn sign(&self, a: &FieldElement) -> i32 {
        if a.is_zero() {
            return 0;
        }
        let mut r = self.root.clone();
        loop {
            let (x, y) = Self::enclose(a, r.lo(), r.hi());
            if x.is_positive() {
                return 1;
            }
            if y.is_negative() {
                return -1;
            }
            if r.is_exact() {
                return poly::sign(&x);
            }
            r.bisect();
        }
    }

    pub fn cmp(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        self.sign(&self.sub(a, b)).cmp(&0)
    }

    /// Rational approximation with relative error below `10^-digits`.
    pub fn approximate(&self, a: &FieldElement, digits: usize) -> BigRational {
        if a.is_zero() {
            return BigRational::zero();
        }
        let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32));
        let mut r = self.root.clone();
        loop {
            let (x, y) = Self::enclose(a, r.lo(), r.hi());
            let mag = x.abs().min(y.abs());
            let straddles = !x.is_positive() && !y.is_negative();
            if r.is_exact() || (!straddles && (&y - &x) <= &mag * &tol) {
                return (x + y) / BigRational::from_integer(2.into());
            }
            r.bisect();
        }
    }

    pub fn to_decimal(&self, a: &FieldElement, sig: usize) -> String {
        format_decimal(&self.approximate(a, sig + 3), sig)
    }

    pub fn to_f64(&self, a: &FieldElement) -> f64 {
        poly::rational_to_f64(&self.approximate(a, 20))
    }

    /// Exact rendering as a polynomial in `var`, highest power first: `1/2λ + 1/2`.
    pub fn render(&self, a: &FieldElement, var: &str) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in a.0.iter().enumerate().rev() {
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
            if i == 0 || !mag.is_one() {
                if mag.is_integer() {
                    s.push_str(&mag.numer().to_string());
                } else {
                    s.push_str(&format!("{}/{}", mag.numer(), mag.denom()));
                }
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

/// Perron-Frobenius eigenvalue and normalized eigenvectors of a primitive matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFData {
    pub field: NumberField,
    pub eigenvalue: FieldElement,
    /// Left eigenvector, smallest entry 1.
    pub left: Vec<FieldElement>,
    /// Right eigenvector, entries summing to 1.
    pub right: Vec<FieldElement>,
}

impl PFData {
    pub fn minimal_polynomial(&self) -> &IntPolynomial {
        self.field.modulus()
    }

    pub fn eigenvalue_decimal(&self, sig: usize) -> String {
        self.field.to_decimal(&self.eigenvalue, sig)
    }

    pub fn summary(&self, sig: usize) -> PFSummary {
        let f = &self.field;
        let render = |v: &[FieldElement]| v.iter().map(|x| f.render(x, "λ")).collect();
        let decimal = |v: &[FieldElement]| v.iter().map(|x| f.to_decimal(x, sig)).collect();
        let mut root = f.root().clone();
        root.refine_to(&BigRational::new(1.into(), BigInt::from(10).pow(sig as u32 + 2)));
        PFSummary {
            minimal_polynomial: f.modulus().render("λ"),
            eigenvalue: self.eigenvalue_decimal(sig),
            eigenvalue_interval: [root.lo().clone(), root.hi().clone()],
            left: render(&self.left),
            right: render(&self.right),
            left_decimal: decimal(&self.left),
            right_decimal: decimal(&self.right),
        }
    }
}

/// Serializable rendering of [`PFData`]. Exact entries are polynomials in `λ`
/// reduced modulo the minimal polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PFSummary {
    pub minimal_polynomial: String,
    pub eigenvalue: String,
    #[serde(with = "interval_serde")]
    pub eigenvalue_interval: [BigRational; 2],
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub left_decimal: Vec<String>,
    pub right_decimal: Vec<String>,
}

mod interval_serde {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "crate::bigser::rational")] BigRational);

    pub fn serialize<S: Serializer>(x: &[BigRational; 2], s: S) -> Result<S::Ok, S::Error> {
        [W(x[0].clone()), W(x[1].clone())].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigRational; 2], D::Error> {
        let [a, b] = <[W; 2]>::deserialize(d)?;
        Ok([a.0, b.0])
    }
}

/// The irreducible factor of `p` vanishing at `root`, where `root` isolates a root of `p`.
pub fn minimal_polynomial_of(p: &IntPolynomial, root: &RealRoot, cap: usize) -> Result<IntPolynomial> {
    let fac = poly::factor_with_cap(p, cap)?;
    for (f, _) in fac.factors {
        let hit = if root.is_exact() {
            f.sign_at(root.lo()) == 0
        } else {
            f.count_real_roots(root.lo(), root.hi()) > 0
        };
        if hit {
            return Ok(f);
        }
    }
    Err(Error::Internal("no factor vanishes at the isolated root".into()))
}

/// The Perron-Frobenius eigenvalue of a primitive matrix as an isolated root
/// of the square-free part of its characteristic polynomial.
pub fn pf_root(m: &IntMatrix) -> Result<(IntPolynomial, RealRoot)> {
    if !m.is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let cp = m.char_poly();
    let root = cp
        .largest_real_root()
        .ok_or_else(|| Error::Internal("primitive matrix without a real eigenvalue".into()))?;
    Ok((cp, root))
}

pub fn pf_data(m: &IntMatrix) -> Result<PFData> {
    pf_data_with_cap(m, DEFAULT_FACTOR_DEGREE_CAP)
}

pub fn pf_data_with_cap(m: &IntMatrix, cap: usize) -> Result<PFData> {
    let (cp, root) = pf_root(m)?;
    let minimal = minimal_polynomial_of(&cp, &root, cap)?;
    // the interval isolates λ among the roots of the characteristic polynomial, hence of any factor
    let iso = root.with_poly(minimal.clone());
    let field = NumberField::new(minimal, iso);
    let lambda = field.generator();
    let right = eigenvector(&field, m, &lambda)?;
    let left = eigenvector(&field, &m.transpose(), &lambda)?;

    let sum = right.iter().fold(field.zero(), |acc, x| field.add(&acc, x));
    let right: Vec<FieldElement> = right.iter().map(|x| field.div(x, &sum)).collect::<Result<_>>()?;
    let smallest = left
        .iter()
        .min_by(|a, b| field.cmp(a, b))
        .cloned()
        .ok_or_else(|| Error::Precondition("empty matrix".into()))?;
    let left: Vec<FieldElement> = left.iter().map(|x| field.div(x, &smallest)).collect::<Result<_>>()?;

    if right.iter().chain(&left).any(|x| field.sign(x) <= 0) {
        return Err(Error::Internal("Perron-Frobenius eigenvector has a non-positive entry".into()));
    }
    Ok(PFData { field, eigenvalue: lambda, left, right })
}

/// A non-zero vector spanning `ker(M - λI)` over the field.
fn eigenvector(field: &NumberField, m: &IntMatrix, lambda: &FieldElement) -> Result<Vec<FieldElement>> {
    let n = m.rows();
    let mut a: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = field.integer(m.get(i, j));
                    if i == j {
                        field.sub(&x, lambda)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = field.inv(&a[r][c])?;
        a[r] = a[r].iter().map(|x| field.mul(x, &inv)).collect();
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let v = field.mul(&a[r][j], &f);
                    a[i][j] = field.sub(&a[i][j], &v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::Internal(format!("eigenspace has dimension {}", free.len())));
    }
    let f = free[0];
    let mut v = vec![field.zero(); n];
    v[f] = field.one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = field.neg(&a[row][f]);
    }
    Ok(v)
}
