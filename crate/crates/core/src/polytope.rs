//! H-representations, vertex certificates, and Carathéodory decomposition.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolytopeError;
use crate::linalg::{dot, RationalMatrix};
use crate::tensor::{flat_index, unflatten, StochasticTensor};

/// `coeffs · x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Inequality {
    fn slack(&self, x: &[BigRational]) -> BigRational {
        dot(&self.coeffs, x) - &self.rhs
    }
}

/// `{ x : equalities · x = equality_rhs, every inequality holds }`.
#[derive(Clone, Debug)]
pub struct HRepresentation {
    n: Option<usize>,
    ambient_dim: usize,
    equalities: RationalMatrix,
    equality_rhs: Vec<BigRational>,
    inequalities: Vec<Inequality>,
}

impl HRepresentation {
    pub fn new(
        ambient_dim: usize,
        equalities: RationalMatrix,
        equality_rhs: Vec<BigRational>,
        inequalities: Vec<Inequality>,
    ) -> Result<Self, PolytopeError> {
        if equalities.cols() != ambient_dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: ambient_dim,
                found: equalities.cols(),
            });
        }
        if equality_rhs.len() != equalities.rows() {
            return Err(PolytopeError::DimensionMismatch {
                expected: equalities.rows(),
                found: equality_rhs.len(),
            });
        }
        if let Some(bad) = inequalities.iter().find(|h| h.coeffs.len() != ambient_dim) {
            return Err(PolytopeError::DimensionMismatch {
                expected: ambient_dim,
                found: bad.coeffs.len(),
            });
        }
        Ok(Self {
            n: None,
            ambient_dim,
            equalities,
            equality_rhs,
            inequalities,
        })
    }

    /// Source tensor dimension when built by [`build_omega_h`].
    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equalities(&self) -> &RationalMatrix {
        &self.equalities
    }

    pub fn equality_rhs(&self) -> &[BigRational] {
        &self.equality_rhs
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    /// Dimension of the affine hull of the equality system.
    pub fn dimension(&self) -> usize {
        self.ambient_dim - self.equalities.rank()
    }

    /// Number of inequality constraints. For `build_omega_h(n)` this is the
    /// `n^3` facets `x_ijk = 0`; for `n <= 2` several of these constraints are
    /// not geometric facets, and they are still counted.
    pub fn facet_count(&self) -> usize {
        self.inequalities.len()
    }

    pub fn contains(&self, x: &[BigRational]) -> Result<bool, PolytopeError> {
        Ok(self.check_feasible(x).is_ok())
    }

    fn check_feasible(&self, x: &[BigRational]) -> Result<(), PolytopeError> {
        if x.len() != self.ambient_dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        let lhs = self.equalities.mul_vec(x)?;
        if let Some(r) = (0..lhs.len()).find(|&r| lhs[r] != self.equality_rhs[r]) {
            return Err(PolytopeError::Infeasible(format!("equality row {r}")));
        }
        if let Some(idx) = self
            .inequalities
            .iter()
            .position(|h| h.slack(x).is_negative())
        {
            return Err(PolytopeError::Infeasible(self.describe_inequality(idx)));
        }
        Ok(())
    }

    fn describe_inequality(&self, idx: usize) -> String {
        match self.n {
            Some(n) => {
                let (i, j, k) = unflatten(n, idx);
                format!("x({i},{j},{k}) >= 0")
            }
            None => format!("inequality {idx}"),
        }
    }

    fn active_matrix(&self, active: &[usize]) -> RationalMatrix {
        let mut m = self.equalities.clone();
        for &a in active {
            m.push_row(self.inequalities[a].coeffs.clone())
                .expect("inequality width checked at construction");
        }
        m
    }

    /// Vertex certificate for a feasible point.
    pub fn certify_point(&self, x: &[BigRational]) -> Result<VertexCertificate, PolytopeError> {
        self.check_feasible(x)?;
        let active: Vec<usize> = (0..self.inequalities.len())
            .filter(|&i| self.inequalities[i].slack(x).is_zero())
            .collect();
        let active_rank = self.active_matrix(&active).rank();
        Ok(VertexCertificate {
            point: x.to_vec(),
            active_inequalities: active,
            active_rank,
            ambient_dim: self.ambient_dim,
        })
    }

    /// Vertex certificate for a stochastic tensor against `build_omega_h(n)`.
    pub fn is_vertex(&self, t: &StochasticTensor) -> Result<VertexCertificate, PolytopeError> {
        self.check_tensor(t)?;
        self.certify_point(t.entries())
    }

    fn check_tensor(&self, t: &StochasticTensor) -> Result<(), PolytopeError> {
        let n = self.n.unwrap_or(0);
        if self.n.is_none() || t.n() != n {
            return Err(PolytopeError::DimensionMismatch {
                expected: n,
                found: t.n(),
            });
        }
        Ok(())
    }

    /// Writes a feasible point as a convex combination of vertices.
    ///
    /// Each round walks from the current point to a vertex of its minimal
    /// face, then splits the point between that vertex and the boundary point
    /// where the ray from the vertex through the point leaves the face. The
    /// residual gains at least one tight constraint every round, so at most
    /// `dimension + 1` terms come out.
    pub fn decompose_point(
        &self,
        x: &[BigRational],
    ) -> Result<Vec<(BigRational, Vec<BigRational>)>, PolytopeError> {
        self.check_feasible(x)?;
        let mut terms = Vec::new();
        let mut remaining = BigRational::one();
        let mut current = x.to_vec();
        loop {
            let vertex = self.descend_to_vertex(current.clone())?;
            if vertex == current {
                terms.push((remaining, vertex));
                return Ok(terms);
            }
            let direction: Vec<BigRational> =
                current.iter().zip(&vertex).map(|(c, v)| c - v).collect();
            // r = v + mu (p - v), mu as large as feasibility allows; mu > 1.
            let mu = self
                .max_step(&vertex, &direction)
                .ok_or(PolytopeError::Unbounded)?
                .0;
            let inv = mu.recip();
            let theta = BigRational::one() - &inv;
            terms.push((&remaining * &theta, vertex.clone()));
            remaining *= inv;
            current = vertex
                .iter()
                .zip(&direction)
                .map(|(v, d)| v + &mu * d)
                .collect();
        }
    }

    /// Carathéodory decomposition of a tensor into vertices of the polytope.
    pub fn caratheodory_decompose(
        &self,
        t: &StochasticTensor,
    ) -> Result<Vec<(BigRational, StochasticTensor)>, PolytopeError> {
        self.check_tensor(t)?;
        let n = t.n();
        Ok(self
            .decompose_point(t.entries())?
            .into_iter()
            .map(|(w, v)| (w, StochasticTensor::from_valid(n, v)))
            .collect())
    }

    /// Moves along nullspace directions of the active constraints until the
    /// point is a vertex. First basis vector, `+` direction first, exact
    /// minimum-ratio step.
    fn descend_to_vertex(&self, mut x: Vec<BigRational>) -> Result<Vec<BigRational>, PolytopeError> {
        loop {
            let active: Vec<usize> = (0..self.inequalities.len())
                .filter(|&i| self.inequalities[i].slack(&x).is_zero())
                .collect();
            let basis = self.active_matrix(&active).nullspace_basis();
            let Some(dir) = basis.into_iter().next() else {
                return Ok(x);
            };
            let (step, dir) = match self.max_step(&x, &dir) {
                Some((step, _)) => (step, dir),
                None => {
                    let neg: Vec<BigRational> = dir.iter().map(|v| -v).collect();
                    let (step, _) = self.max_step(&x, &neg).ok_or(PolytopeError::Unbounded)?;
                    (step, neg)
                }
            };
            for (xi, di) in x.iter_mut().zip(&dir) {
                if !di.is_zero() {
                    *xi += &step * di;
                }
            }
        }
    }

    /// Largest `s` with `x + s d` feasible, and the lowest-index constraint
    /// attaining it. `None` if `d` is a recession direction.
    fn max_step(&self, x: &[BigRational], d: &[BigRational]) -> Option<(BigRational, usize)> {
        let mut best: Option<(BigRational, usize)> = None;
        for (idx, h) in self.inequalities.iter().enumerate() {
            let rate = dot(&h.coeffs, d);
            if !rate.is_negative() {
                continue;
            }
            let ratio = h.slack(x) / -rate;
            if best.as_ref().is_none_or(|(b, _)| &ratio < b) {
                best = Some((ratio, idx));
            }
        }
        best
    }
}

/// Tight constraints at a point and the rank they reach together with the
/// equalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCertificate {
    pub point: Vec<BigRational>,
    pub active_inequalities: Vec<usize>,
    pub active_rank: usize,
    pub ambient_dim: usize,
}

impl VertexCertificate {
    pub fn is_vertex(&self) -> bool {
        self.active_rank == self.ambient_dim
    }
}

/// H-representation of the stochastic tensor polytope of dimension `n`.
///
/// Equality rows, all with right-hand side 1, come in three blocks of `n^2`:
/// sums over `i` for each `(j, k)`, over `j` for each `(i, k)`, and over `k`
/// for each `(i, j)`. All `3n^2` rows are kept; only `3n^2 - 3n + 1` are
/// independent. Inequality `idx` is `x[idx] >= 0`, ordered by `(i, j, k)`.
pub fn build_omega_h(n: usize) -> Result<HRepresentation, PolytopeError> {
    if n == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    let dim = n * n * n;
    let mut eq = RationalMatrix::zeros(3 * n * n, dim);
    let one = BigRational::one();
    let mut row = 0;
    for block in 0..3 {
        for a in 0..n {
            for b in 0..n {
                for t in 0..n {
                    let col = match block {
                        0 => flat_index(n, t, a, b),
                        1 => flat_index(n, a, t, b),
                        _ => flat_index(n, a, b, t),
                    };
                    eq.set(row, col, one.clone());
                }
                row += 1;
            }
        }
    }
    let inequalities = (0..dim)
        .map(|idx| {
            let mut coeffs = vec![BigRational::zero(); dim];
            coeffs[idx] = one.clone();
            Inequality {
                coeffs,
                rhs: BigRational::zero(),
            }
        })
        .collect();
    let mut h = HRepresentation::new(dim, eq, vec![one; 3 * n * n], inequalities)?;
    h.n = Some(n);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{random_tensor, LatinSquare};

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn omega_shapes() {
        for (n, rows, ineqs, rank, dim) in [(1, 3, 1, 1, 0), (2, 12, 8, 7, 1), (3, 27, 27, 19, 8)] {
            let h = build_omega_h(n).unwrap();
            assert_eq!(h.equalities().rows(), rows);
            assert_eq!(h.inequalities().len(), ineqs);
            assert_eq!(h.equalities().rank(), rank);
            assert_eq!(h.dimension(), dim);
            assert_eq!(h.facet_count(), n * n * n);
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        assert_eq!(build_omega_h(0).unwrap_err(), PolytopeError::ZeroDimension);
    }

    #[test]
    fn permutation_tensor_is_vertex() {
        let h = build_omega_h(3).unwrap();
        let cert = h.is_vertex(&LatinSquare::cyclic(3).unwrap().to_tensor()).unwrap();
        assert!(cert.is_vertex());
        assert_eq!(cert.active_rank, 27);
        assert_eq!(cert.active_inequalities.len(), 18);
    }

    #[test]
    fn uniform_is_not_vertex() {
        let h = build_omega_h(2).unwrap();
        let cert = h.is_vertex(&StochasticTensor::uniform(2).unwrap()).unwrap();
        assert!(!cert.is_vertex());
        assert_eq!(cert.active_rank, 7);
    }

    #[test]
    fn midpoint_is_not_vertex() {
        let h = build_omega_h(3).unwrap();
        let a = LatinSquare::cyclic(3).unwrap().to_tensor();
        let b = LatinSquare::new(vec![vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]])
            .unwrap()
            .to_tensor();
        let mid = StochasticTensor::convex_combination(&[(q(1, 2), &a), (q(1, 2), &b)]).unwrap();
        assert!(!h.is_vertex(&mid).unwrap().is_vertex());
    }

    #[test]
    fn wrong_dimension_rejected() {
        let h = build_omega_h(3).unwrap();
        let t = StochasticTensor::uniform(2).unwrap();
        assert!(matches!(h.is_vertex(&t), Err(PolytopeError::DimensionMismatch { .. })));
    }

    #[test]
    fn vertex_decomposes_to_itself() {
        let h = build_omega_h(3).unwrap();
        let t = LatinSquare::cyclic(3).unwrap().to_tensor();
        assert_eq!(h.caratheodory_decompose(&t).unwrap(), vec![(q(1, 1), t)]);
    }

    #[test]
    fn uniform_two_splits_in_half() {
        let h = build_omega_h(2).unwrap();
        let terms = h.caratheodory_decompose(&StochasticTensor::uniform(2).unwrap()).unwrap();
        assert_eq!(terms.len(), 2);
        for (w, v) in &terms {
            assert_eq!(w, &q(1, 2));
            assert!(v.is_integral());
        }
        assert_ne!(terms[0].1, terms[1].1);
    }

    #[test]
    fn order_one_is_a_point() {
        let h = build_omega_h(1).unwrap();
        let t = StochasticTensor::uniform(1).unwrap();
        assert_eq!(h.caratheodory_decompose(&t).unwrap(), vec![(q(1, 1), t)]);
    }

    #[test]
    fn random_decomposition_reconstructs() {
        let h = build_omega_h(3).unwrap();
        let t = random_tensor(3, 11).unwrap();
        let terms = h.caratheodory_decompose(&t).unwrap();
        assert!(terms.len() <= 9);
        let refs: Vec<(BigRational, &StochasticTensor)> =
            terms.iter().map(|(w, v)| (w.clone(), v)).collect();
        assert_eq!(StochasticTensor::convex_combination(&refs).unwrap(), t);
    }

    #[test]
    fn generic_triangle_decomposition() {
        // x >= 0, y >= 0, x + y <= 1
        let ineqs = vec![
            Inequality { coeffs: vec![q(1, 1), q(0, 1)], rhs: q(0, 1) },
            Inequality { coeffs: vec![q(0, 1), q(1, 1)], rhs: q(0, 1) },
            Inequality { coeffs: vec![q(-1, 1), q(-1, 1)], rhs: q(-1, 1) },
        ];
        let h = HRepresentation::new(2, RationalMatrix::zeros(0, 2), vec![], ineqs).unwrap();
        let p = vec![q(1, 4), q(1, 3)];
        let terms = h.decompose_point(&p).unwrap();
        assert!(terms.len() <= 3);
        let mut sum = vec![q(0, 1), q(0, 1)];
        let mut wsum = q(0, 1);
        for (w, v) in &terms {
            assert!(w.is_positive());
            assert!(h.certify_point(v).unwrap().is_vertex());
            wsum += w;
            for (s, c) in sum.iter_mut().zip(v) {
                *s += w * c;
            }
        }
        assert_eq!(wsum, q(1, 1));
        assert_eq!(sum, p);
    }

    #[test]
    fn infeasible_point_rejected() {
        let h = build_omega_h(2).unwrap();
        let x = vec![q(1, 3); 8];
        assert!(matches!(h.certify_point(&x), Err(PolytopeError::Infeasible(_))));
    }
}
