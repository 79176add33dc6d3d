//! Finite simplicial complexes with a free simplicial involution.
//!
//! Complexes are stored by their facets (sorted vertex lists); the full
//! simplex set is the downward closure. Vertex ids are signed integers so
//! that the crosspolytope boundary can use its labels `±1, …, ±k` directly.

mod generators;
mod labelling;
mod quotient;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generators::{barycentric_subdivide, crosspolytope_boundary, torus_fixture, TORUS_DEFAULT_N};
pub use labelling::{
    argmax_labelling, lambda_image, random_rotation, validate_labelling, LabelImage, Labelling,
    LabellingFile, LabellingViolation, SignedInjection,
};
pub use quotient::{canonical_section, quotient, quotient_with_section, QuotientComplex};

pub type VertexId = i64;
pub type Simplex = Vec<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("complex is not a valid Z2-manifold: {0}")]
    Invalid(ManifoldViolation),
    #[error("quotient is not simplicial: {first:?} and {second:?} have the same orbit set (subdivide and retry)")]
    QuotientNotSimplicial { first: Simplex, second: Simplex },
    #[error("crosspolytope dimension must be at least 1")]
    BadCrossPolytope,
    #[error("torus grid size must be even and at least 4 (got {0})")]
    BadTorusSize(usize),
    #[error("vertex {0} has no coordinates")]
    MissingCoordinates(VertexId),
    #[error("coordinates of {vertex} have dimension {got}, expected {expected}")]
    CoordinateDimension { vertex: VertexId, got: usize, expected: usize },
    #[error("coordinates of {0} and its antipode are not negatives of each other")]
    CoordinatesNotAntipodal(VertexId),
    #[error("signed injection is malformed: {0}")]
    BadInjection(String),
    #[error("argmax labelling violates condition (b) on edge {edge:?} (subdivide and retry)")]
    LabellingInadmissible { edge: [VertexId; 2], label: i64 },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("section does not pick a vertex of orbit {0}")]
    BadSection(VertexId),
}

/// First failed manifold condition, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum ManifoldViolation {
    NoFacets,
    MissingAntipode { vertex: VertexId },
    UnknownVertex { vertex: VertexId },
    NotAnInvolution { vertex: VertexId, image: VertexId, image_of_image: VertexId },
    FixedVertex { vertex: VertexId },
    WrongFacetSize { facet: Simplex, expected: usize },
    RepeatedFacet { facet: Simplex },
    IsolatedVertex { vertex: VertexId },
    FixedSimplex { edge: [VertexId; 2] },
    FacetImageMissing { facet: Simplex, image: Simplex },
    RidgeDegree { ridge: Simplex, facets: usize },
    Disconnected { unreached: Simplex },
}

impl std::fmt::Display for ManifoldViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ManifoldViolation::NoFacets => write!(f, "no facets"),
            ManifoldViolation::MissingAntipode { vertex } => write!(f, "vertex {vertex} has no antipode"),
            ManifoldViolation::UnknownVertex { vertex } => write!(f, "unknown vertex {vertex}"),
            ManifoldViolation::NotAnInvolution { vertex, image, image_of_image } => write!(
                f,
                "involution is not an involution: {vertex} -> {image} -> {image_of_image}"
            ),
            ManifoldViolation::FixedVertex { vertex } => write!(f, "vertex {vertex} is fixed"),
            ManifoldViolation::WrongFacetSize { facet, expected } => {
                write!(f, "facet {facet:?} does not have {expected} distinct vertices")
            }
            ManifoldViolation::RepeatedFacet { facet } => write!(f, "facet {facet:?} listed twice"),
            ManifoldViolation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} lies in no facet"),
            ManifoldViolation::FixedSimplex { edge } => {
                write!(f, "edge {edge:?} joins a vertex to its antipode")
            }
            ManifoldViolation::FacetImageMissing { facet, image } => {
                write!(f, "image {image:?} of facet {facet:?} is not a facet")
            }
            ManifoldViolation::RidgeDegree { ridge, facets } => {
                write!(f, "ridge {ridge:?} lies in {facets} facets (expected 2)")
            }
            ManifoldViolation::Disconnected { unreached } => {
                write!(f, "facet {unreached:?} is not reachable through ridges")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Complex {
    n: usize,
    vertices: Vec<VertexId>,
    antipode: BTreeMap<VertexId, VertexId>,
    facets: Vec<Simplex>,
    coords: Option<BTreeMap<VertexId, Vec<BigRational>>>,
}

impl Z2Complex {
    /// Normalizes (sorts vertex lists) without validating; see [`validate_z2_manifold`].
    pub fn new(
        n: usize,
        vertices: impl IntoIterator<Item = VertexId>,
        antipode: BTreeMap<VertexId, VertexId>,
        facets: impl IntoIterator<Item = Simplex>,
        coords: Option<BTreeMap<VertexId, Vec<BigRational>>>,
    ) -> Self {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut facets: Vec<Simplex> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        facets.sort();
        Z2Complex { n, vertices: vertices.into_iter().collect(), antipode, facets, coords }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn antipode_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.antipode
    }

    /// # Panics
    /// If `v` has no antipode; only call on validated complexes.
    pub fn antipode(&self, v: VertexId) -> VertexId {
        self.antipode[&v]
    }

    pub fn coords(&self) -> Option<&BTreeMap<VertexId, Vec<BigRational>>> {
        self.coords.as_ref()
    }

    pub fn with_coords(mut self, coords: Option<BTreeMap<VertexId, Vec<BigRational>>>) -> Self {
        self.coords = coords;
        self
    }

    pub fn map_simplex(&self, s: &[VertexId]) -> Simplex {
        let mut img: Simplex = s.iter().map(|v| self.antipode[v]).collect();
        img.sort_unstable();
        img
    }

    /// All nonempty simplices, grouped by dimension, each group sorted.
    pub fn simplices(&self) -> Vec<Vec<Simplex>> {
        downward_closure(&self.facets)
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(&self.simplices())
    }

    pub fn validate(&self) -> Result<(), ManifoldViolation> {
        validate_z2_manifold(self)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            n: self.n,
            vertices: self.vertices.clone(),
            antipode: self.antipode.clone(),
            facets: self.facets.clone(),
            coords: self.coords.as_ref().map(|c| {
                c.iter()
                    .map(|(&v, xs)| (v, xs.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect()))
                    .collect()
            }),
        }
    }
}

/// Every nonempty face of the given facets, by dimension, sorted.
pub fn downward_closure(facets: &[Simplex]) -> Vec<Vec<Simplex>> {
    let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); top];
    for f in facets {
        let k = f.len();
        for mask in 1u64..(1u64 << k) {
            let s: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            by_dim[s.len() - 1].insert(s);
        }
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

pub fn euler_characteristic(by_dim: &[Vec<Simplex>]) -> i64 {
    by_dim
        .iter()
        .enumerate()
        .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
        .sum()
}

/// Closed connected pseudomanifold of dimension `n` with a simplicial
/// involution that is free on vertices and on every simplex.
pub fn validate_z2_manifold(k: &Z2Complex) -> Result<(), ManifoldViolation> {
    if k.facets.is_empty() {
        return Err(ManifoldViolation::NoFacets);
    }
    let vset: BTreeSet<VertexId> = k.vertices.iter().copied().collect();
    for &v in &k.vertices {
        let Some(&w) = k.antipode.get(&v) else {
            return Err(ManifoldViolation::MissingAntipode { vertex: v });
        };
        if !vset.contains(&w) {
            return Err(ManifoldViolation::UnknownVertex { vertex: w });
        }
        let back = k.antipode.get(&w).copied().unwrap_or(w);
        if back != v {
            return Err(ManifoldViolation::NotAnInvolution { vertex: v, image: w, image_of_image: back });
        }
        if w == v {
            return Err(ManifoldViolation::FixedVertex { vertex: v });
        }
    }
    if let Some((&v, _)) = k.antipode.iter().find(|(v, _)| !vset.contains(v)) {
        return Err(ManifoldViolation::UnknownVertex { vertex: v });
    }

    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    for (i, f) in k.facets.iter().enumerate() {
        if let Some(&v) = f.iter().find(|v| !vset.contains(v)) {
            return Err(ManifoldViolation::UnknownVertex { vertex: v });
        }
        if f.len() != k.n + 1 || f.windows(2).any(|w| w[0] == w[1]) {
            return Err(ManifoldViolation::WrongFacetSize { facet: f.clone(), expected: k.n + 1 });
        }
        if i > 0 && k.facets[i - 1] == *f {
            return Err(ManifoldViolation::RepeatedFacet { facet: f.clone() });
        }
        used.extend(f.iter().copied());
    }
    if let Some(&v) = k.vertices.iter().find(|v| !used.contains(v)) {
        return Err(ManifoldViolation::IsolatedVertex { vertex: v });
    }

    // a simplex is setwise fixed iff it contains some pair {v, nu(v)}
    for f in &k.facets {
        for &v in f {
            let w = k.antipode[&v];
            if v < w && f.binary_search(&w).is_ok() {
                return Err(ManifoldViolation::FixedSimplex { edge: [v, w] });
            }
        }
    }
    let facet_set: BTreeSet<&Simplex> = k.facets.iter().collect();
    for f in &k.facets {
        let img = k.map_simplex(f);
        if !facet_set.contains(&img) {
            return Err(ManifoldViolation::FacetImageMissing { facet: f.clone(), image: img });
        }
    }

    let mut ridges: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (i, f) in k.facets.iter().enumerate() {
        for skip in 0..f.len() {
            let ridge: Simplex = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
            ridges.entry(ridge).or_default().push(i);
        }
    }
    for (ridge, fs) in &ridges {
        if fs.len() != 2 {
            return Err(ManifoldViolation::RidgeDegree { ridge: ridge.clone(), facets: fs.len() });
        }
    }
    let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
    for fs in ridges.values() {
        adjacency.entry(fs[0]).or_default().push(fs[1]);
        adjacency.entry(fs[1]).or_default().push(fs[0]);
    }
    let mut seen = vec![false; k.facets.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in adjacency.get(&i).into_iter().flatten() {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(ManifoldViolation::Disconnected { unreached: k.facets[i].clone() });
    }
    Ok(())
}

/// `{ "n", "vertices", "antipode": {id: id}, "facets", "coords"?: {id: ["p/q", ...]} }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub vertices: Vec<VertexId>,
    pub antipode: BTreeMap<VertexId, VertexId>,
    pub facets: Vec<Simplex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<BTreeMap<VertexId, Vec<String>>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<Z2Complex, ComplexError> {
        let coords = match self.coords {
            None => None,
            Some(c) => Some(
                c.into_iter()
                    .map(|(v, xs)| Ok((v, xs.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>()?)))
                    .collect::<Result<BTreeMap<_, _>, ComplexError>>()?,
            ),
        };
        Ok(Z2Complex::new(self.n, self.vertices, self.antipode, self.facets, coords))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, ComplexError> {
    let bad = || ComplexError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&q) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}
