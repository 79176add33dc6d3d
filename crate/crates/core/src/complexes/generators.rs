use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use super::{ComplexError, Simplex, VertexId, Z2Complex};

pub const TORUS_DEFAULT_N: usize = 6;

/// Boundary of `conv{±e_1, …, ±e_k}`: vertex `±i` is `±e_i`, facets pick one
/// vertex from every pair, the involution is `v -> -v`.
pub fn crosspolytope_boundary(k: usize) -> Result<Z2Complex, ComplexError> {
    if k == 0 {
        return Err(ComplexError::BadCrossPolytope);
    }
    let vertices: Vec<VertexId> = (1..=k as i64).flat_map(|i| [i, -i]).collect();
    let antipode = vertices.iter().map(|&v| (v, -v)).collect();
    let facets = (0..1u64 << k).map(|mask| {
        (0..k)
            .map(|i| {
                let label = i as i64 + 1;
                if mask >> i & 1 == 1 {
                    -label
                } else {
                    label
                }
            })
            .collect::<Simplex>()
    });
    let one = BigRational::from_integer(1.into());
    let coords = vertices
        .iter()
        .map(|&v| {
            let mut x = vec![BigRational::zero(); k];
            x[v.unsigned_abs() as usize - 1] = if v > 0 { one.clone() } else { -one.clone() };
            (v, x)
        })
        .collect();
    Ok(Z2Complex::new(k - 1, vertices.clone(), antipode, facets, Some(coords)))
}

/// Point at arc length `s` (in units of `1/steps` of the perimeter) on the
/// boundary of the square `[-1,1]^2`, starting at `(1,-1)` and running
/// counter-clockwise. Half a perimeter later is the antipodal point.
fn square_point(step: usize, steps: usize) -> (BigRational, BigRational) {
    let s = BigRational::new(8.into(), 1.into()) * BigRational::new((step % steps).into(), steps.into());
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    let side = (&s / &two).floor();
    let t = &s - &two * &side - &one; // in [-1, 1)
    match side.to_integer().try_into().unwrap_or(0u8) {
        0 => (one.clone(), t),
        1 => (-t, one.clone()),
        2 => (-one.clone(), -t),
        _ => (t, -one),
    }
}

/// Grid triangulation of the torus on an `N x N` vertex grid (vertex
/// `x + N y`), every square cut along its main diagonal, with the free
/// involution `(x, y) -> (x + N/2, y + N/2)`. Coordinates in `Q^3` are odd
/// under the involution and never vanish.
pub fn torus_fixture(n_grid: usize) -> Result<Z2Complex, ComplexError> {
    if n_grid < 4 || n_grid % 2 == 1 {
        return Err(ComplexError::BadTorusSize(n_grid));
    }
    let n = n_grid as i64;
    let id = |x: i64, y: i64| x.rem_euclid(n) + n * y.rem_euclid(n);
    let half = n / 2;
    let mut facets = Vec::new();
    let mut antipode = BTreeMap::new();
    let mut coords = BTreeMap::new();
    for y in 0..n {
        for x in 0..n {
            facets.push(vec![id(x, y), id(x + 1, y), id(x + 1, y + 1)]);
            facets.push(vec![id(x, y), id(x, y + 1), id(x + 1, y + 1)]);
            antipode.insert(id(x, y), id(x + half, y + half));
            let (a, b) = square_point(x as usize, n_grid);
            let (c, _) = square_point(y as usize, n_grid);
            coords.insert(id(x, y), vec![a, b, c]);
        }
    }
    Ok(Z2Complex::new(2, 0..n * n, antipode, facets, Some(coords)))
}

fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Barycentric subdivision. New vertex ids number the simplices of `k` in
/// order of (dimension, vertex list); coordinates, when present, become
/// barycenters.
pub fn barycentric_subdivide(k: &Z2Complex) -> Result<Z2Complex, ComplexError> {
    k.validate().map_err(ComplexError::Invalid)?;
    let simplices: Vec<Simplex> = k.simplices().into_iter().flatten().collect();
    let ids: HashMap<&Simplex, VertexId> =
        simplices.iter().enumerate().map(|(i, s)| (s, i as VertexId)).collect();
    let mut facets = Vec::new();
    for f in k.facets() {
        for perm in permutations(f) {
            let mut chain = Vec::with_capacity(perm.len());
            let mut prefix: Simplex = Vec::with_capacity(perm.len());
            for v in perm {
                prefix.push(v);
                let mut key = prefix.clone();
                key.sort_unstable();
                chain.push(ids[&key]);
            }
            facets.push(chain);
        }
    }
    let antipode = simplices.iter().map(|s| (ids[s], ids[&k.map_simplex(s)])).collect();
    let coords = k.coords().map(|c| {
        simplices
            .iter()
            .map(|s| {
                let dim = c[&s[0]].len();
                let mut sum = vec![BigRational::zero(); dim];
                for v in s {
                    for (acc, x) in sum.iter_mut().zip(&c[v]) {
                        *acc += x;
                    }
                }
                let count = BigRational::from_integer((s.len() as i64).into());
                (ids[s], sum.into_iter().map(|x| x / &count).collect())
            })
            .collect()
    });
    Ok(Z2Complex::new(k.dim(), 0..simplices.len() as VertexId, antipode, facets, coords))
}
