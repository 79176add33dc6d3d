//! Mod-2 simplicial cohomology: coboundaries, cocycle and coboundary tests,
//! the sheet-switching cocycle of a double cover, Alexander-Whitney cup
//! powers and the Stiefel-Whitney number `<w_1^n, [M/Z2]>`.

mod gf2;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gf2::GF2Matrix;

use crate::complexes::{
    barycentric_subdivide, downward_closure, quotient, ComplexError, QuotientComplex, Simplex, VertexId, Z2Complex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Z2Error {
    #[error("no coboundary map from dimension {0} in this complex")]
    DimensionOutOfRange(usize),
    #[error("simplex {0:?} is not a simplex of dimension {1} of the complex")]
    UnknownSimplex(Simplex, usize),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cup powers need a degree-1 cochain, got degree {0}")]
    WrongDegree(usize),
    #[error("quotient carries no covering data for edge {0:?}")]
    MissingCoveringData(Simplex),
    #[error("sum of facets is not a mod-2 cycle: ridge {0:?} lies in an odd number of facets")]
    NotACycle(Simplex),
    #[error("vertex order does not rank vertex {0}")]
    IncompleteOrder(VertexId),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("quotient still not simplicial after two subdivisions")]
    SubdivisionLimit,
}

/// Simplices of a complex by dimension, each group in lexicographic order,
/// with reverse lookup.
#[derive(Debug, Clone)]
pub struct SimplexTable {
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplexTable {
    pub fn from_facets(facets: &[Simplex]) -> Self {
        let by_dim = downward_closure(facets);
        let index = by_dim
            .iter()
            .map(|group| group.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplexTable { by_dim, index }
    }

    pub fn of_complex(k: &Z2Complex) -> Self {
        SimplexTable::from_facets(k.facets())
    }

    pub fn of_quotient(q: &QuotientComplex) -> Self {
        SimplexTable::from_facets(q.facets())
    }

    pub fn top_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn position(&self, s: &[VertexId]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }
}

/// A mod-2 cochain: the set of `dim`-simplices with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GF2Cochain {
    pub dim: usize,
    #[serde(rename = "simplices")]
    pub support: BTreeSet<Simplex>,
}

impl GF2Cochain {
    pub fn zero(dim: usize) -> Self {
        GF2Cochain { dim, support: BTreeSet::new() }
    }

    pub fn new(dim: usize, simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let support = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        GF2Cochain { dim, support }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn value(&self, s: &[VertexId]) -> bool {
        self.support.contains(s)
    }

    pub fn add(&self, other: &GF2Cochain) -> GF2Cochain {
        assert_eq!(self.dim, other.dim);
        GF2Cochain { dim: self.dim, support: self.support.symmetric_difference(&other.support).cloned().collect() }
    }

    pub fn to_vector(&self, table: &SimplexTable) -> Result<Vec<bool>, Z2Error> {
        let mut v = vec![false; table.count(self.dim)];
        for s in &self.support {
            let i = table
                .position(s)
                .filter(|_| s.len() == self.dim + 1)
                .ok_or_else(|| Z2Error::UnknownSimplex(s.clone(), self.dim))?;
            v[i] = true;
        }
        Ok(v)
    }

    pub fn from_vector(table: &SimplexTable, dim: usize, v: &[bool]) -> GF2Cochain {
        GF2Cochain {
            dim,
            support: table.simplices(dim).iter().zip(v).filter(|(_, &b)| b).map(|(s, _)| s.clone()).collect(),
        }
    }
}

/// Matrix of `δ: C^d -> C^{d+1}`; row of a `(d+1)`-simplex has ones at its
/// `d`-faces.
pub fn coboundary_matrix(table: &SimplexTable, d: usize) -> Result<GF2Matrix, Z2Error> {
    if d >= table.top_dim() {
        return Err(Z2Error::DimensionOutOfRange(d));
    }
    let upper = table.simplices(d + 1);
    let mut m = GF2Matrix::zeros(upper.len(), table.count(d));
    for (r, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            let face: Simplex = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
            let c = table.position(&face).expect("faces of a simplex are in the table");
            m.set(r, c, true);
        }
    }
    Ok(m)
}

pub fn coboundary(table: &SimplexTable, c: &GF2Cochain) -> Result<GF2Cochain, Z2Error> {
    let v = c.to_vector(table)?;
    if c.dim >= table.top_dim() {
        return Ok(GF2Cochain::zero(c.dim + 1));
    }
    let up = coboundary_matrix(table, c.dim)?.mul_vec(&v);
    Ok(GF2Cochain::from_vector(table, c.dim + 1, &up))
}

pub fn is_cocycle(table: &SimplexTable, c: &GF2Cochain) -> Result<bool, Z2Error> {
    Ok(coboundary(table, c)?.is_zero())
}

/// Some `ψ` with `δψ = c`, by Gaussian elimination; `None` if `c` is not a
/// coboundary. In degree 0 only the zero cochain is a coboundary and this
/// returns an empty degree-0 witness for it.
pub fn coboundary_witness(table: &SimplexTable, c: &GF2Cochain) -> Result<Option<GF2Cochain>, Z2Error> {
    let b = c.to_vector(table)?;
    if c.dim == 0 {
        return Ok(c.is_zero().then(|| GF2Cochain::zero(0)));
    }
    let delta = coboundary_matrix(table, c.dim - 1)?;
    Ok(delta.solve(&b).map(|x| GF2Cochain::from_vector(table, c.dim - 1, &x)))
}

pub fn is_coboundary(table: &SimplexTable, c: &GF2Cochain) -> Result<bool, Z2Error> {
    Ok(coboundary_witness(table, c)?.is_some())
}

/// Like [`coboundary_witness`] but with `ψ` restricted to cochains invariant
/// under the vertex involution `nu`; the unknowns are orbit pairs
/// `{τ, ν(τ)}` of `(d-1)`-simplices.
pub fn invariant_coboundary_witness(
    table: &SimplexTable,
    c: &GF2Cochain,
    nu: impl Fn(VertexId) -> VertexId,
) -> Result<Option<GF2Cochain>, Z2Error> {
    let b = c.to_vector(table)?;
    if c.dim == 0 {
        return Ok(c.is_zero().then(|| GF2Cochain::zero(0)));
    }
    let delta = coboundary_matrix(table, c.dim - 1)?;
    let lower = table.simplices(c.dim - 1);
    let mut orbit_index: Vec<Option<usize>> = vec![None; lower.len()];
    let mut orbits: Vec<(usize, usize)> = Vec::new();
    for (i, s) in lower.iter().enumerate() {
        if orbit_index[i].is_some() {
            continue;
        }
        let mut img: Simplex = s.iter().map(|&v| nu(v)).collect();
        img.sort_unstable();
        let j = table.position(&img).ok_or_else(|| Z2Error::UnknownSimplex(img.clone(), c.dim - 1))?;
        orbit_index[i] = Some(orbits.len());
        orbit_index[j] = Some(orbits.len());
        orbits.push((i, j));
    }
    let mut reduced = GF2Matrix::zeros(delta.rows(), orbits.len());
    for r in 0..delta.rows() {
        for (o, &(i, j)) in orbits.iter().enumerate() {
            let v = delta.get(r, i) ^ (i != j && delta.get(r, j));
            reduced.set(r, o, v);
        }
    }
    Ok(reduced.solve(&b).map(|x| {
        let mut full = vec![false; lower.len()];
        for (o, &(i, j)) in orbits.iter().enumerate() {
            if x[o] {
                full[i] = true;
                full[j] = true;
            }
        }
        GF2Cochain::from_vector(table, c.dim - 1, &full)
    }))
}

/// Sheet-switching 1-cochain of the double cover, relative to the section
/// stored in the quotient.
pub fn w1_cocycle(q: &QuotientComplex) -> Result<GF2Cochain, Z2Error> {
    let table = SimplexTable::of_quotient(q);
    let mut support = BTreeSet::new();
    for e in table.simplices(1) {
        match q.crossing().get(&(e[0], e[1])) {
            None => return Err(Z2Error::MissingCoveringData(e.clone())),
            Some(true) => {
                support.insert(e.clone());
            }
            Some(false) => {}
        }
    }
    let w1 = GF2Cochain { dim: 1, support };
    if !is_cocycle(&table, &w1)? {
        return Err(Z2Error::NotACocycle);
    }
    Ok(w1)
}

/// A total order on vertices, as ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    rank: HashMap<VertexId, usize>,
}

impl VertexOrder {
    pub fn ascending(vertices: &[VertexId]) -> Self {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        VertexOrder::from_sequence(&sorted)
    }

    /// Earlier in `seq` = smaller.
    pub fn from_sequence(seq: &[VertexId]) -> Self {
        VertexOrder { rank: seq.iter().enumerate().map(|(i, &v)| (v, i)).collect() }
    }

    pub fn shuffled<R: Rng + ?Sized>(vertices: &[VertexId], rng: &mut R) -> Self {
        let mut seq = vertices.to_vec();
        seq.shuffle(rng);
        VertexOrder::from_sequence(&seq)
    }

    fn sort(&self, s: &[VertexId]) -> Result<Vec<VertexId>, Z2Error> {
        let mut out = s.to_vec();
        if let Some(&v) = out.iter().find(|v| !self.rank.contains_key(v)) {
            return Err(Z2Error::IncompleteOrder(v));
        }
        out.sort_by_key(|v| self.rank[v]);
        Ok(out)
    }
}

/// n-fold Alexander-Whitney cup power of a 1-cocycle: on `[v_0 < … < v_n]`
/// the value is `∏_j ω([v_{j-1}, v_j])`.
pub fn cup_power(
    table: &SimplexTable,
    omega: &GF2Cochain,
    n: usize,
    order: &VertexOrder,
) -> Result<GF2Cochain, Z2Error> {
    if omega.dim != 1 {
        return Err(Z2Error::WrongDegree(omega.dim));
    }
    if !is_cocycle(table, omega)? {
        return Err(Z2Error::NotACocycle);
    }
    let mut support = BTreeSet::new();
    for s in table.simplices(n) {
        let ordered = order.sort(s)?;
        let hit = ordered.windows(2).all(|w| {
            let edge = [w[0].min(w[1]), w[0].max(w[1])];
            omega.value(&edge)
        });
        if hit {
            support.insert(s.clone());
        }
    }
    Ok(GF2Cochain { dim: n, support })
}

/// The mod-2 sum of every top simplex of a closed pseudomanifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalClass {
    dim: usize,
    facets: BTreeSet<Simplex>,
}

impl FundamentalClass {
    pub fn new(facets: &[Simplex]) -> Result<Self, Z2Error> {
        let dim = facets.first().map_or(0, |f| f.len().saturating_sub(1));
        let mut parity: BTreeMap<Simplex, bool> = BTreeMap::new();
        for f in facets {
            for skip in 0..f.len() {
                let ridge: Simplex = f.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                *parity.entry(ridge).or_default() ^= true;
            }
        }
        if let Some((ridge, _)) = parity.into_iter().find(|(_, odd)| *odd) {
            return Err(Z2Error::NotACycle(ridge));
        }
        Ok(FundamentalClass { dim, facets: facets.iter().cloned().collect() })
    }

    pub fn of_quotient(q: &QuotientComplex) -> Result<Self, Z2Error> {
        FundamentalClass::new(q.facets())
    }

    pub fn pair(&self, c: &GF2Cochain) -> bool {
        c.dim == self.dim && c.support.iter().filter(|s| self.facets.contains(*s)).count() % 2 == 1
    }
}

/// Subdivides (at most twice) until the quotient is simplicial.
pub fn simplicial_quotient(k: &Z2Complex) -> Result<(Z2Complex, QuotientComplex, usize), Z2Error> {
    let mut current = k.clone();
    for times in 0..=2 {
        match quotient(&current) {
            Ok(q) => return Ok((current, q, times)),
            Err(ComplexError::QuotientNotSimplicial { .. }) if times < 2 => {
                current = barycentric_subdivide(&current)?;
            }
            Err(ComplexError::QuotientNotSimplicial { .. }) => return Err(Z2Error::SubdivisionLimit),
            Err(e) => return Err(e.into()),
        }
    }
    unreachable!()
}

/// `⟨w_1^n, [M/Z2]⟩` with cup products taken in the order chosen by `order`.
pub fn sw_number_with_order(
    k: &Z2Complex,
    order: impl FnOnce(&QuotientComplex) -> VertexOrder,
) -> Result<bool, Z2Error> {
    k.validate().map_err(|v| Z2Error::Complex(ComplexError::Invalid(v)))?;
    let (_, q, _) = simplicial_quotient(k)?;
    let table = SimplexTable::of_quotient(&q);
    let w1 = w1_cocycle(&q)?;
    let power = cup_power(&table, &w1, q.dim(), &order(&q))?;
    Ok(FundamentalClass::of_quotient(&q)?.pair(&power))
}

/// Stiefel-Whitney number `w(M) = ⟨w_1^n, [M/Z2]⟩`.
pub fn sw_number(k: &Z2Complex) -> Result<bool, Z2Error> {
    sw_number_with_order(k, |q| VertexOrder::ascending(q.vertices()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{crosspolytope_boundary, quotient_with_section, torus_fixture};

    fn triangle_boundary() -> SimplexTable {
        SimplexTable::from_facets(&[vec![0, 1], vec![0, 2], vec![1, 2]])
    }

    fn hexagon() -> Z2Complex {
        let antipode = (0..6).map(|v| (v, (v + 3) % 6)).collect();
        Z2Complex::new(1, 0..6, antipode, (0..6).map(|v| vec![v, (v + 1) % 6]), None)
    }

    #[test]
    fn triangle_coboundary() {
        let t = triangle_boundary();
        let d0 = coboundary_matrix(&t, 0).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (3, 3));
        assert!((0..3).all(|r| d0.row_weight(r) == 2));
        assert_eq!(d0.rank(), 2);
        assert!(matches!(coboundary_matrix(&t, 1), Err(Z2Error::DimensionOutOfRange(1))));
    }

    #[test]
    fn delta_squared_vanishes_on_octahedron() {
        let oct = SimplexTable::of_complex(&crosspolytope_boundary(3).unwrap());
        let d0 = coboundary_matrix(&oct, 0).unwrap();
        let d1 = coboundary_matrix(&oct, 1).unwrap();
        assert!(d1.mul(&d0).is_zero());
        assert_eq!(d0.rank(), oct.count(0) - 1);
    }

    #[test]
    fn cocycle_and_coboundary_examples() {
        let t = triangle_boundary();
        let zero = GF2Cochain::zero(1);
        assert!(is_cocycle(&t, &zero).unwrap());
        assert!(is_coboundary(&t, &zero).unwrap());
        let all = GF2Cochain::new(1, t.simplices(1).to_vec());
        assert!(is_cocycle(&t, &all).unwrap());
        assert!(!is_coboundary(&t, &all).unwrap());
        let two = GF2Cochain::new(1, vec![vec![0, 1], vec![0, 2]]);
        let psi = coboundary_witness(&t, &two).unwrap().unwrap();
        assert_eq!(coboundary(&t, &psi).unwrap(), two);
        let vertex = GF2Cochain::new(0, vec![vec![0]]);
        assert!(!is_cocycle(&t, &vertex).unwrap());
        assert!(!is_coboundary(&t, &vertex).unwrap());
    }

    #[test]
    fn unknown_simplex_rejected() {
        let t = triangle_boundary();
        let c = GF2Cochain::new(1, vec![vec![0, 7]]);
        assert!(matches!(is_cocycle(&t, &c), Err(Z2Error::UnknownSimplex(..))));
    }

    #[test]
    fn hexagon_w1() {
        let q = quotient(&hexagon()).unwrap();
        let w1 = w1_cocycle(&q).unwrap();
        assert_eq!(w1.support.len() % 2, 1);
        let fc = FundamentalClass::of_quotient(&q).unwrap();
        assert!(fc.pair(&w1));
        assert_eq!(sw_number(&hexagon()), Ok(true));
    }

    #[test]
    fn section_change_is_a_coboundary() {
        let hex = hexagon();
        let mut section = crate::complexes::canonical_section(&hex);
        let base = w1_cocycle(&quotient(&hex).unwrap()).unwrap();
        section.insert(2, 5);
        let moved = w1_cocycle(&quotient_with_section(&hex, &section).unwrap()).unwrap();
        assert_ne!(base, moved);
        let q = quotient(&hex).unwrap();
        let t = SimplexTable::of_quotient(&q);
        let diff = base.add(&moved);
        let psi = coboundary_witness(&t, &diff).unwrap().unwrap();
        assert_eq!(coboundary(&t, &psi).unwrap(), diff);
        // the witness is {2} up to the constant cochain
        let expected = GF2Cochain::new(0, vec![vec![2]]);
        assert!(psi == expected || psi.add(&expected).support.len() == 3);
    }

    #[test]
    fn missing_covering_data() {
        let q = quotient(&hexagon()).unwrap().without_covering_data();
        assert!(matches!(w1_cocycle(&q), Err(Z2Error::MissingCoveringData(_))));
    }

    #[test]
    fn cup_power_one_is_identity() {
        let q = quotient(&hexagon()).unwrap();
        let t = SimplexTable::of_quotient(&q);
        let w1 = w1_cocycle(&q).unwrap();
        assert_eq!(cup_power(&t, &w1, 1, &VertexOrder::ascending(q.vertices())).unwrap(), w1);
        let not_cocycle = GF2Cochain::new(0, vec![vec![0]]);
        assert!(matches!(
            cup_power(&t, &not_cocycle, 1, &VertexOrder::ascending(q.vertices())),
            Err(Z2Error::WrongDegree(0))
        ));
    }

    #[test]
    fn sphere_and_torus_numbers() {
        for k in 2..=4 {
            assert_eq!(sw_number(&crosspolytope_boundary(k).unwrap()), Ok(true), "S^{}", k - 1);
        }
        assert_eq!(sw_number(&torus_fixture(6).unwrap()), Ok(false));
    }

    #[test]
    fn invariant_solve_on_square() {
        let sq = crosspolytope_boundary(2).unwrap();
        let t = SimplexTable::of_complex(&sq);
        // edges {1,-2} and {-1,2}
        let c = GF2Cochain::new(1, vec![vec![-2, 1], vec![-1, 2]]);
        assert!(is_cocycle(&t, &c).unwrap());
        assert!(invariant_coboundary_witness(&t, &c, |v| -v).unwrap().is_none());
        // without the invariance restriction it is a coboundary (H^1(S^1) sees two edges as even)
        assert!(is_coboundary(&t, &c).unwrap());
        let pair = GF2Cochain::new(1, vec![vec![-2, 1], vec![-1, 2], vec![1, 2], vec![-2, -1]]);
        assert!(invariant_coboundary_witness(&t, &pair, |v| -v).unwrap().is_some());
    }
}
