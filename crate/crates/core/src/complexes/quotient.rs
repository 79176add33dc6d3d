use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{ComplexError, Simplex, VertexId, Z2Complex};

/// `K / nu` as a simplicial complex, with the double-cover data needed for
/// the first Stiefel-Whitney class.
///
/// Orbit ids are the least vertex id of each orbit. `crossing` records, for
/// every quotient edge `{a, b}` (`a < b`), whether the lift of the edge that
/// starts at the section vertex over `a` ends at a vertex outside the section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientComplex {
    n: usize,
    vertices: Vec<VertexId>,
    facets: Vec<Simplex>,
    section: BTreeMap<VertexId, VertexId>,
    crossing: BTreeMap<(VertexId, VertexId), bool>,
}

impl QuotientComplex {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn section(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.section
    }

    pub fn crossing(&self) -> &BTreeMap<(VertexId, VertexId), bool> {
        &self.crossing
    }

    /// Same complex with the sheet-switching data emptied; for unit tests
    /// of downstream error paths.
    pub fn without_covering_data(mut self) -> Self {
        self.crossing.clear();
        self
    }
}

/// Section choosing the least id in every orbit.
pub fn canonical_section(k: &Z2Complex) -> BTreeMap<VertexId, VertexId> {
    k.vertices()
        .iter()
        .map(|&v| {
            let o = v.min(k.antipode(v));
            (o, o)
        })
        .collect()
}

pub fn quotient(k: &Z2Complex) -> Result<QuotientComplex, ComplexError> {
    quotient_with_section(k, &canonical_section(k))
}

/// Quotient with covering data measured against `section` (orbit id ->
/// chosen vertex of that orbit). Fails with `QuotientNotSimplicial` when
/// two simplices other than `σ` and `ν(σ)` have the same orbit set.
pub fn quotient_with_section(
    k: &Z2Complex,
    section: &BTreeMap<VertexId, VertexId>,
) -> Result<QuotientComplex, ComplexError> {
    k.validate().map_err(ComplexError::Invalid)?;
    let orbit = |v: VertexId| v.min(k.antipode(v));
    for &v in k.vertices() {
        let o = orbit(v);
        match section.get(&o) {
            Some(&s) if s == o || s == k.antipode(o) => {}
            _ => return Err(ComplexError::BadSection(o)),
        }
    }

    let simplices = k.simplices();
    let mut images: HashMap<Simplex, &Simplex> = HashMap::new();
    for s in simplices.iter().flatten() {
        let mut img: Simplex = s.iter().map(|&v| orbit(v)).collect();
        img.sort_unstable();
        img.dedup();
        if img.len() != s.len() {
            // cannot happen on a validated complex (freeness), kept as a guard
            return Err(ComplexError::QuotientNotSimplicial { first: s.clone(), second: s.clone() });
        }
        match images.get(&img) {
            None => {
                images.insert(img, s);
            }
            Some(&prev) => {
                if *prev != k.map_simplex(s) {
                    return Err(ComplexError::QuotientNotSimplicial {
                        first: prev.clone(),
                        second: s.clone(),
                    });
                }
            }
        }
    }

    let vertices: BTreeSet<VertexId> = k.vertices().iter().map(|&v| orbit(v)).collect();
    let facets: BTreeSet<Simplex> = k
        .facets()
        .iter()
        .map(|f| {
            let mut img: Simplex = f.iter().map(|&v| orbit(v)).collect();
            img.sort_unstable();
            img
        })
        .collect();

    let edges: BTreeSet<(VertexId, VertexId)> = simplices
        .get(1)
        .into_iter()
        .flatten()
        .map(|e| (e[0], e[1]))
        .collect();
    let has_edge = |u: VertexId, v: VertexId| edges.contains(&(u.min(v), u.max(v)));
    let mut crossing = BTreeMap::new();
    for (a, b) in edges.iter().map(|&(u, v)| (orbit(u).min(orbit(v)), orbit(u).max(orbit(v)))) {
        if crossing.contains_key(&(a, b)) {
            continue;
        }
        let (sa, sb) = (section[&a], section[&b]);
        let switches = if has_edge(sa, sb) {
            false
        } else {
            debug_assert!(has_edge(sa, k.antipode(sb)));
            true
        };
        crossing.insert((a, b), switches);
    }

    Ok(QuotientComplex {
        n: k.dim(),
        vertices: vertices.into_iter().collect(),
        facets: facets.into_iter().collect(),
        section: section.clone(),
        crossing,
    })
}
