//! First Čech cohomology of the tiling space, presented as direct limits.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complexes::{
    anderson_putnam_from_words, bd_subcomplex_and_eventual_range, collared_substitution_on_edges, ComplexGraph,
    UnionFind,
};
use crate::error::{Error, Result};
use crate::language::admitted_words;
use crate::matrix::{substitution_matrix, IntMatrix};
use crate::properize::pre_left_properize;
use crate::recognizability::is_recognizable;
use crate::word::Substitution;

/// Cap on the number of 0/1 candidate cycles scanned for the AP kernel basis.
pub const BINARY_KERNEL_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "BD")]
    BargeDiamond,
    #[serde(rename = "AP")]
    AndersonPutnam,
    #[serde(rename = "PROPER")]
    Proper,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BargeDiamond => "BD",
            Method::AndersonPutnam => "AP",
            Method::Proper => "PROPER",
        })
    }
}

/// `lim C / Z^q ⊕ Z^m`, kept unsimplified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyPresentation {
    pub method: Method,
    /// The matrix whose direct limit is taken.
    pub matrix: IntMatrix,
    pub quotient_rank: usize,
    pub free_rank: usize,
    pub rendering: String,
    pub total_rank: usize,
}

impl CohomologyPresentation {
    pub fn new(method: Method, matrix: IntMatrix, quotient_rank: usize, free_rank: usize) -> Self {
        let total_rank = matrix.eventual_rank() + free_rank - quotient_rank;
        let rendering = render(method, &matrix, quotient_rank, free_rank);
        CohomologyPresentation { method, matrix, quotient_rank, free_rank, rendering, total_rank }
    }
}

/// `lim^T[r1;r2;...]` with rows of the limit matrix, followed by ` / Z^q + Z^m` for BD.
fn render(method: Method, c: &IntMatrix, q: usize, m: usize) -> String {
    let rows: Vec<String> = (0..c.rows())
        .map(|i| c.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect();
    let mut s = format!("lim^T[{}]", rows.join(";"));
    if method == Method::BargeDiamond {
        s.push_str(&format!(" / Z^{q} + Z^{m}"));
    }
    s
}

fn require_recognizable(sub: &Substitution) -> Result<()> {
    if !substitution_matrix(sub).is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    if !is_recognizable(sub)?.recognizable {
        return Err(Error::NotRecognizable);
    }
    Ok(())
}

/// Barge-Diamond method: `lim M_φ^T / Z^(k-1) ⊕ Z^m` from the eventual range.
pub fn cohomology_bd(sub: &Substitution) -> Result<CohomologyPresentation> {
    require_recognizable(sub)?;
    let er = bd_subcomplex_and_eventual_range(sub)?;
    Ok(CohomologyPresentation::new(
        Method::BargeDiamond,
        substitution_matrix(sub).transpose(),
        er.components - 1,
        er.rank,
    ))
}

/// How the AP cycle basis was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisSource {
    /// Lexicographically first independent 0/1 cycles.
    Binary,
    /// 0/1 cycles completed by fundamental cycles of a spanning forest.
    Completed,
    /// Fundamental cycles only.
    FundamentalCycles,
}

/// Everything computed on the way to the AP matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApComputation {
    pub complex: ComplexGraph,
    /// Rows `L²`, columns `L³`; column `abc` is `bc - ab`.
    pub boundary: IntMatrix,
    /// Basis cycles as columns over the edges.
    pub basis: Vec<Vec<BigInt>>,
    pub basis_source: BasisSource,
    /// Column `i` holds the coordinates of the image of basis cycle `i`.
    pub induced_on_homology: IntMatrix,
    /// The transpose: the induced map on cohomology.
    pub matrix: IntMatrix,
}

/// Boundary matrix of a graph: column `e` has `+1` at its target and `-1` at its source.
pub fn boundary_matrix(g: &ComplexGraph) -> IntMatrix {
    let mut b = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (j, e) in g.edges.iter().enumerate() {
        let t = b.get(e.target, j) + 1;
        b.set(e.target, j, t);
        let s = b.get(e.source, j) - 1;
        b.set(e.source, j, s);
    }
    b
}

/// Tree and cotree edges of a spanning forest chosen greedily in edge order.
fn spanning_forest(g: &ComplexGraph) -> (Vec<bool>, Vec<usize>) {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut in_tree = vec![false; g.edge_count()];
    let mut cotree = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if uf.union(e.source, e.target) {
            in_tree[i] = true;
        } else {
            cotree.push(i);
        }
    }
    (in_tree, cotree)
}

/// Fundamental cycle of a cotree edge: the edge plus the tree path back.
fn fundamental_cycle(g: &ComplexGraph, in_tree: &[bool], edge: usize) -> Vec<BigInt> {
    let n = g.vertex_count();
    // undirected adjacency over tree edges: (neighbour, edge, sign when walked forward)
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        if in_tree[i] {
            adj[e.source].push((e.target, i, 1));
            adj[e.target].push((e.source, i, -1));
        }
    }
    let e = &g.edges[edge];
    let mut cycle = vec![BigInt::zero(); g.edge_count()];
    cycle[edge] += 1;
    // walk from the edge's target back to its source through the tree
    let mut prev: Vec<Option<(usize, usize, i64)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![e.target];
    seen[e.target] = true;
    while let Some(v) = stack.pop() {
        for &(w, id, sign) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, id, sign));
                stack.push(w);
            }
        }
    }
    let mut v = e.source;
    while v != e.target {
        let (u, id, sign) = prev[v].expect("endpoints of a cotree edge are tree-connected");
        cycle[id] += sign;
        v = u;
    }
    cycle
}

/// Incremental independence test over the rationals, fraction-free.
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = &*x * &a - y * &b;
            }
        }
        v
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, v: &[BigInt]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// Whether the cycles form a Z-basis of the integer cycle lattice: the lattice
/// restricts isomorphically onto the cotree coordinates, so the restricted
/// square matrix must be unimodular.
fn restriction(basis: &[Vec<BigInt>], cotree: &[usize]) -> IntMatrix {
    IntMatrix::from_rows(cotree.iter().map(|&e| basis.iter().map(|c| c[e].clone()).collect()).collect())
}

fn binary_cycles(g: &ComplexGraph, want: usize, cap: u64) -> Vec<Vec<BigInt>> {
    let e = g.edge_count();
    // candidates below 2^bits only touch the last `bits` coordinates
    let bits = e.min(63).min(cap.trailing_zeros() as usize + usize::from(!cap.is_power_of_two()) * 64).min(e);
    let limit = if bits >= 63 { cap } else { (1u64 << bits).min(cap) };
    // bit b of a candidate is coordinate e-1-b
    let mut out_mask = vec![0u64; g.vertex_count()];
    let mut in_mask = vec![0u64; g.vertex_count()];
    for (i, edge) in g.edges.iter().enumerate() {
        if i + bits < e {
            continue;
        }
        let bit = 1u64 << (e - 1 - i);
        out_mask[edge.source] |= bit;
        in_mask[edge.target] |= bit;
    }
    let mut echelon = Echelon::new();
    let mut found = Vec::new();
    for x in 1..limit {
        if found.len() == want {
            break;
        }
        let balanced = out_mask
            .iter()
            .zip(&in_mask)
            .all(|(o, i)| (o & x).count_ones() == (i & x).count_ones());
        if !balanced {
            continue;
        }
        let v: Vec<BigInt> = (0..e)
            .map(|i| if i + bits >= e && x >> (e - 1 - i) & 1 == 1 { BigInt::one() } else { BigInt::zero() })
            .collect();
        if echelon.insert(&v) {
            found.push(v);
        }
    }
    found
}

/// Cycle basis of the AP complex and the matrix of the collared substitution on it.
pub fn ap_induced_matrix(sub: &Substitution) -> Result<ApComputation> {
    require_recognizable(sub)?;
    ap_computation(sub, BINARY_KERNEL_CAP)
}

pub(crate) fn ap_computation(sub: &Substitution, cap: u64) -> Result<ApComputation> {
    let l2 = admitted_words(sub, 2)?;
    let l3 = admitted_words(sub, 3)?;
    let complex = anderson_putnam_from_words(&l2, &l3);
    let boundary = boundary_matrix(&complex);
    let want = complex.cycle_rank();
    let (in_tree, cotree) = spanning_forest(&complex);
    debug_assert_eq!(cotree.len(), want);

    let mut basis = binary_cycles(&complex, want, cap);
    let mut source = BasisSource::Binary;
    if basis.len() < want {
        source = BasisSource::Completed;
        let mut echelon = Echelon::new();
        for c in &basis {
            echelon.insert(c);
        }
        for &e in &cotree {
            if basis.len() == want {
                break;
            }
            let c = fundamental_cycle(&complex, &in_tree, e);
            if echelon.insert(&c) {
                basis.push(c);
            }
        }
    }
    if !restriction(&basis, &cotree).determinant().abs().is_one() {
        source = BasisSource::FundamentalCycles;
        basis = cotree.iter().map(|&e| fundamental_cycle(&complex, &in_tree, e)).collect();
    }
    let p = restriction(&basis, &cotree);
    for c in &basis {
        if boundary.mul_vec(c).iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal("basis vector is not a cycle".into()));
        }
    }

    let images = collared_substitution_on_edges(sub, &complex)?;
    let r = basis.len();
    let mut induced = IntMatrix::zeros(r, r);
    for (i, c) in basis.iter().enumerate() {
        let mut image = vec![BigInt::zero(); complex.edge_count()];
        for (e, coeff) in c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for &f in &images[e] {
                image[f] += coeff;
            }
        }
        let rhs: Vec<BigInt> = cotree.iter().map(|&e| image[e].clone()).collect();
        let x = p
            .solve_rational(&rhs)
            .ok_or_else(|| Error::Internal("image cycle outside the span of the basis".into()))?;
        if x.iter().any(|v| !v.is_integer()) {
            return Err(Error::Internal("image cycle has non-integral coordinates".into()));
        }
        let x: Vec<BigInt> = x.into_iter().map(|v| v.to_integer()).collect();
        let mut check = vec![BigInt::zero(); complex.edge_count()];
        for (k, xk) in x.iter().enumerate() {
            for (e, b) in basis[k].iter().enumerate() {
                check[e] += xk * b;
            }
        }
        if check != image {
            return Err(Error::Internal("image cycle not reproduced by its coordinates".into()));
        }
        for (k, xk) in x.into_iter().enumerate() {
            induced.set(k, i, xk);
        }
    }
    let matrix = induced.transpose();
    Ok(ApComputation { complex, boundary, basis, basis_source: source, induced_on_homology: induced, matrix })
}

/// Anderson-Putnam method: `lim M_AP`.
pub fn cohomology_ap(sub: &Substitution) -> Result<CohomologyPresentation> {
    let ap = ap_induced_matrix(sub)?;
    Ok(CohomologyPresentation::new(Method::AndersonPutnam, ap.matrix, 0, 0))
}

/// Properization method: `lim M_η^T` for the pre-left-properization `η`.
pub fn cohomology_proper(sub: &Substitution) -> Result<CohomologyPresentation> {
    require_recognizable(sub)?;
    let (_, eta) = pre_left_properize(sub)?;
    Ok(CohomologyPresentation::new(Method::Proper, substitution_matrix(&eta).transpose(), 0, 0))
}

pub fn cohomology(sub: &Substitution, method: Method) -> Result<CohomologyPresentation> {
    match method {
        Method::BargeDiamond => cohomology_bd(sub),
        Method::AndersonPutnam => cohomology_ap(sub),
        Method::Proper => cohomology_proper(sub),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    #[test]
    fn thue_morse_bd() {
        let c = cohomology_bd(&sub("01,10")).unwrap();
        assert_eq!(c.matrix, IntMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!((c.quotient_rank, c.free_rank, c.total_rank), (0, 1, 2));
        assert_eq!(c.rendering, "lim^T[1,1;1,1] / Z^0 + Z^1");
    }

    #[test]
    fn thue_morse_ap() {
        let ap = ap_induced_matrix(&sub("01,10")).unwrap();
        let b = IntMatrix::from_i64(&[
            &[-1, 0, 0, 1, 0, 0],
            &[1, -1, -1, 0, 1, 0],
            &[0, 1, 0, -1, -1, 1],
            &[0, 0, 1, 0, 0, -1],
        ]);
        assert_eq!(ap.boundary, b);
        assert_eq!(ap.basis_source, BasisSource::Binary);
        assert_eq!(ap.matrix.char_poly(), IntPolynomial::from_i64(&[0, -2, -1, 1]));
        assert_eq!(cohomology_ap(&sub("01,10")).unwrap().total_rank, 2);
    }

    #[test]
    fn thue_morse_proper() {
        let c = cohomology_proper(&sub("01,10")).unwrap();
        assert_eq!(c.matrix, IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 1], &[1, 1, 1]]));
        assert_eq!(c.total_rank, 2);
        assert_eq!(c.rendering, "lim^T[0,1,0;1,0,1;1,1,1]");
    }

    #[test]
    fn cross_method_ranks() {
        for s in ["01,0", "0001,001", "001,01", "01,02,0", "01,02,31,32", "01,00"] {
            let ranks: Vec<usize> = [Method::BargeDiamond, Method::AndersonPutnam, Method::Proper]
                .iter()
                .map(|&m| cohomology(&sub(s), m).unwrap().total_rank)
                .collect();
            assert!(ranks.iter().all(|&r| r == ranks[0]), "{s}: {ranks:?}");
        }
        assert_eq!(cohomology_bd(&sub("01,0")).unwrap().total_rank, 2);
    }

    #[test]
    fn refusals() {
        assert_eq!(cohomology_bd(&sub("00")), Err(Error::NotRecognizable));
        assert_eq!(cohomology_proper(&sub("0")), Err(Error::NotRecognizable));
        assert_eq!(cohomology_ap(&sub("0010,1")), Err(Error::NotPrimitive));
    }

    #[test]
    fn fundamental_cycle_fallback_agrees() {
        // with no binary candidates the basis comes from the spanning forest
        for s in ["01,10", "0001,001", "01,02,0"] {
            let a = ap_computation(&sub(s), 1).unwrap();
            let b = ap_computation(&sub(s), BINARY_KERNEL_CAP).unwrap();
            assert_ne!(a.basis_source, BasisSource::Binary);
            assert_eq!(a.matrix.char_poly(), b.matrix.char_poly(), "{s}");
        }
    }
}
