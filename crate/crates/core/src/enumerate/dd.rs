//! Double description (Motzkin) vertex enumeration with exact arithmetic.
//!
//! The polytope is first restricted to the affine hull of its equalities:
//! `x = x0 + N y` with `x0` a particular solution and the columns of `N` a
//! nullspace basis. Each inequality `a·x >= b` becomes the homogeneous row
//! `(a·x0 - b) t + (a N)·y >= 0` over `(t, y)`, and `t >= 0` is added. The
//! extreme rays of that cone with `t > 0` are exactly the vertices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::PolytopeError;
use crate::linalg::{dot, integer_rank, primitive, scale_to_integers, RationalMatrix};
use crate::polytope::HRepresentation;
use crate::tensor::StochasticTensor;

/// Canonically ordered vertex list of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    /// Source tensor dimension, when the polytope is a stochastic tensor polytope.
    pub n: Option<usize>,
    pub ambient_dim: usize,
    /// Sorted lexicographically by coordinates, no duplicates.
    pub vertices: Vec<Vec<BigRational>>,
    pub integral_count: usize,
    pub nonintegral_count: usize,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The vertices as tensors; `None` unless built from a tensor polytope.
    pub fn tensors(&self) -> Option<Vec<StochasticTensor>> {
        let n = self.n?;
        Some(
            self.vertices
                .iter()
                .map(|v| StochasticTensor::from_valid(n, v.clone()))
                .collect(),
        )
    }
}

/// Small fixed-width bitset over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RowSet(Vec<u64>);

impl RowSet {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: RowSet,
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Every vertex of a bounded polytope, in canonical order.
///
/// Fails with [`PolytopeError::Empty`] when no point satisfies the system and
/// with [`PolytopeError::Unbounded`] when it has recession directions.
pub fn enumerate_vertices(h: &HRepresentation) -> Result<VertexSet, PolytopeError> {
    let eq = h.equalities();
    let particular = eq.solve(h.equality_rhs())?.ok_or(PolytopeError::Empty)?;
    let basis = eq.nullspace_basis();
    let d = basis.len();
    let width = d + 1;

    // Homogenized constraint rows over (t, y): inequalities in order, then t >= 0.
    let mut rows: Vec<Vec<BigInt>> = h
        .inequalities()
        .iter()
        .map(|ineq| {
            let mut row = Vec::with_capacity(width);
            row.push(dot(&ineq.coeffs, &particular) - &ineq.rhs);
            row.extend(basis.iter().map(|b| dot(&ineq.coeffs, b)));
            scale_to_integers(&row)
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); width];
    t_row[0] = BigInt::from(1);
    rows.push(t_row);

    let rays = double_description(&rows, width).ok_or(PolytopeError::Unbounded)?;

    let mut vertices = Vec::new();
    for ray in rays {
        let t = &ray[0];
        if t.is_zero() {
            return Err(PolytopeError::Unbounded);
        }
        let t = BigRational::from_integer(t.clone());
        let y: Vec<BigRational> = ray[1..]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) / &t)
            .collect();
        let mut x = particular.clone();
        for (coef, b) in y.iter().zip(&basis) {
            if coef.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += coef * bi;
                }
            }
        }
        vertices.push(x);
    }
    if vertices.is_empty() {
        return Err(PolytopeError::Empty);
    }
    vertices.sort();
    vertices.dedup();
    let integral_count = vertices
        .iter()
        .filter(|v| v.iter().all(|c| c.is_zero() || c == &BigRational::from_integer(1.into())))
        .count();
    Ok(VertexSet {
        n: h.n(),
        ambient_dim: h.ambient_dim(),
        nonintegral_count: vertices.len() - integral_count,
        integral_count,
        vertices,
    })
}

/// Extreme rays of the pointed cone `{ z : row · z >= 0 for every row }`.
/// Returns `None` when the rows do not span the space (the cone has a
/// lineality space).
fn double_description(rows: &[Vec<BigInt>], width: usize) -> Option<Vec<Vec<BigInt>>> {
    let m = rows.len();

    // Initial basis: first rows in order that raise the rank.
    let mut basis_rows: Vec<usize> = Vec::with_capacity(width);
    for (i, row) in rows.iter().enumerate() {
        if basis_rows.len() == width {
            break;
        }
        let mut candidate: Vec<&[BigInt]> = basis_rows.iter().map(|&b| rows[b].as_slice()).collect();
        candidate.push(row);
        if integer_rank(&candidate, width) > basis_rows.len() {
            basis_rows.push(i);
        }
    }
    if basis_rows.len() < width {
        return None;
    }

    // Rays of the simplicial cone B z >= 0 are the columns of B^-1.
    let b = RationalMatrix::from_rows(
        basis_rows
            .iter()
            .map(|&r| rows[r].iter().map(|v| BigRational::from_integer(v.clone())).collect())
            .collect(),
        width,
    )
    .expect("basis rows have uniform width");
    let mut rays: Vec<Ray> = Vec::with_capacity(width);
    for j in 0..width {
        let mut e = vec![BigRational::zero(); width];
        e[j] = BigRational::from_integer(1.into());
        let col = b.solve(&e).ok().flatten().expect("basis is invertible");
        let mut zeros = RowSet::new(m);
        for (pos, &r) in basis_rows.iter().enumerate() {
            if pos != j {
                zeros.insert(r);
            }
        }
        rays.push(Ray {
            coords: primitive(scale_to_integers(&col)),
            zeros,
        });
    }

    let mut processed = vec![false; m];
    for &r in &basis_rows {
        processed[r] = true;
    }
    for next in 0..m {
        if processed[next] {
            continue;
        }
        let row = &rows[next];
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut kept = Vec::new();
        for ray in rays {
            let value = int_dot(row, &ray.coords);
            if value.is_positive() {
                positive.push((value, ray));
            } else if value.is_negative() {
                negative.push((value, ray));
            } else {
                let mut ray = ray;
                ray.zeros.insert(next);
                kept.push(ray);
            }
        }
        let mut created = Vec::new();
        for (pv, p) in &positive {
            for (nv, q) in &negative {
                let common = p.zeros.intersection(&q.zeros);
                if common.count() + 2 < width {
                    continue;
                }
                let common_rows: Vec<&[BigInt]> = common.iter().map(|r| rows[r].as_slice()).collect();
                if integer_rank(&common_rows, width) + 2 != width {
                    continue;
                }
                // pv > 0 > nv, so this is a positive combination zero on `row`.
                let coords: Vec<BigInt> = p
                    .coords
                    .iter()
                    .zip(&q.coords)
                    .map(|(a, b)| pv * b - nv * a)
                    .collect();
                let mut zeros = common;
                zeros.insert(next);
                created.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        rays = positive
            .into_iter()
            .map(|(_, r)| r)
            .chain(kept)
            .chain(created)
            .collect();
        processed[next] = true;
    }
    Some(rays.into_iter().map(|r| r.coords).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{build_omega_h, Inequality};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn generic(ineqs: &[(&[i64], i64)], dim: usize) -> HRepresentation {
        let ineqs = ineqs
            .iter()
            .map(|(c, r)| Inequality {
                coeffs: c.iter().map(|&v| q(v)).collect(),
                rhs: q(*r),
            })
            .collect();
        HRepresentation::new(dim, RationalMatrix::zeros(0, dim), vec![], ineqs).unwrap()
    }

    #[test]
    fn triangle() {
        let h = generic(&[(&[1, 0], 0), (&[0, 1], 0), (&[-1, -1], -1)], 2);
        let vs = enumerate_vertices(&h).unwrap();
        assert_eq!(
            vs.vertices,
            vec![vec![q(0), q(0)], vec![q(0), q(1)], vec![q(1), q(0)]]
        );
        assert_eq!(vs.integral_count, 3);
    }

    #[test]
    fn square_with_redundant_constraint() {
        let h = generic(
            &[
                (&[1, 0], 0),
                (&[0, 1], 0),
                (&[-1, 0], -1),
                (&[0, -1], -1),
                (&[-1, -1], -3),
            ],
            2,
        );
        assert_eq!(enumerate_vertices(&h).unwrap().len(), 4);
    }

    #[test]
    fn cube_is_degenerate_friendly() {
        let mut ineqs: Vec<(Vec<i64>, i64)> = Vec::new();
        for axis in 0..3 {
            let mut lo = vec![0; 3];
            lo[axis] = 1;
            let mut hi = vec![0; 3];
            hi[axis] = -1;
            ineqs.push((lo, 0));
            ineqs.push((hi, -1));
        }
        let refs: Vec<(&[i64], i64)> = ineqs.iter().map(|(c, r)| (c.as_slice(), *r)).collect();
        let vs = enumerate_vertices(&generic(&refs, 3)).unwrap();
        assert_eq!(vs.len(), 8);
        assert_eq!(vs.integral_count, 8);
    }

    #[test]
    fn empty_polytope() {
        let h = generic(&[(&[1], 0), (&[-1], 1)], 1);
        assert_eq!(enumerate_vertices(&h).unwrap_err(), PolytopeError::Empty);
    }

    #[test]
    fn inconsistent_equalities_are_empty() {
        let eq = RationalMatrix::from_i64(2, 1, &[1, 1]).unwrap();
        let h = HRepresentation::new(1, eq, vec![q(0), q(1)], vec![]).unwrap();
        assert_eq!(enumerate_vertices(&h).unwrap_err(), PolytopeError::Empty);
    }

    #[test]
    fn unbounded_rejected() {
        let h = generic(&[(&[1, 0], 0), (&[0, 1], 0)], 2);
        assert_eq!(enumerate_vertices(&h).unwrap_err(), PolytopeError::Unbounded);
    }

    #[test]
    fn omega_one_and_two() {
        let one = enumerate_vertices(&build_omega_h(1).unwrap()).unwrap();
        assert_eq!((one.len(), one.integral_count), (1, 1));
        let two = enumerate_vertices(&build_omega_h(2).unwrap()).unwrap();
        assert_eq!((two.len(), two.integral_count, two.nonintegral_count), (2, 2, 0));
    }
}
