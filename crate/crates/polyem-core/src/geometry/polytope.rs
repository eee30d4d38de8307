//! Rational polytopes from vertex data, with exhaustively enumerated exact
//! face lattices (ambient dimension <= 4).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{
    adapted_basis, dot, primitive_integer_direction, vec_add, vec_scale, vec_sub, LatticeContext,
    Rat, RatMatrix, RatVec,
};

/// A face of a polytope, named by the vertices lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    lattice: LatticeContext,
    vertices: Vec<RatVec>,
    faces: Vec<Face>,
    dim: usize,
    /// Affine chart: a base point and a basis of lin(P); internal
    /// coordinates of `x` solve `x = base + span * y`.
    base_point: RatVec,
    span: RatMatrix,
    /// Facet inequalities `<n, y> >= b` in chart coordinates.
    facet_ineqs: Vec<(RatVec, Rat)>,
}

impl Polytope {
    /// Build the convex hull of the given points. Non-extreme points are
    /// dropped; an empty point list is the (legal) empty polytope.
    pub fn new(lattice: LatticeContext, points: Vec<RatVec>) -> Result<Polytope> {
        let n = lattice.dim();
        for p in &points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.len(),
                });
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();

        if points.is_empty() {
            return Ok(Polytope {
                lattice,
                vertices: Vec::new(),
                faces: Vec::new(),
                dim: 0,
                base_point: vec![Rat::zero(); n],
                span: RatMatrix::zero(n, 0),
                facet_ineqs: Vec::new(),
            });
        }

        // Affine chart through the first point.
        let base_point = points[0].clone();
        let diffs: Vec<RatVec> = points[1..]
            .iter()
            .map(|p| vec_sub(p, &base_point))
            .collect();
        let qd = adapted_basis(&lattice, &diffs);
        let d = qd.sub_dim;
        let span = {
            let mut m = RatMatrix::zero(n, d);
            for j in 0..d {
                let col = qd.adapted.col(j);
                for i in 0..n {
                    m[(i, j)] = col[i].clone();
                }
            }
            m
        };
        // Chart coordinates of each point.
        let inv = qd.adapted.inverse().expect("adapted basis invertible");
        let coords: Vec<RatVec> = points
            .iter()
            .map(|p| inv.mul_vec(&vec_sub(p, &base_point))[..d].to_vec())
            .collect();

        if d == 0 {
            return Ok(Polytope {
                lattice,
                vertices: vec![base_point.clone()],
                faces: vec![Face {
                    vertex_indices: vec![0],
                    dim: 0,
                }],
                dim: 0,
                base_point,
                span,
                facet_ineqs: Vec::new(),
            });
        }

        // Supporting hyperplanes spanned by d affinely independent points.
        let m = points.len();
        assert!(m < 63, "vertex count beyond brute-force scale");
        let mut facet_ineqs: Vec<(RatVec, Rat)> = Vec::new();
        let mut facet_sets: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        enumerate_subsets(m, d, &mut stack, &mut |subset| {
            let rows: Vec<RatVec> = subset[1..]
                .iter()
                .map(|&i| vec_sub(&coords[i], &coords[subset[0]]))
                .collect();
            let mat = if rows.is_empty() {
                RatMatrix::zero(0, d)
            } else {
                RatMatrix::from_rows(rows)
            };
            if !(d == 1 || mat.rank() == d - 1) {
                return;
            }
            let normals = mat.kernel();
            if normals.len() != 1 {
                return;
            }
            let mut normal = primitive_rational(&normals[0]);
            let mut offset = dot(&normal, &coords[subset[0]]);
            let mut has_above = false;
            let mut has_below = false;
            for y in &coords {
                let v = dot(&normal, y);
                if v > offset {
                    has_above = true;
                } else if v < offset {
                    has_below = true;
                }
            }
            if has_above && has_below {
                return;
            }
            if has_below {
                normal = vec_scale(&normal, &-Rat::from_integer(1.into()));
                offset = -offset;
            }
            let on: Vec<usize> = (0..m)
                .filter(|&i| dot(&normal, &coords[i]) == offset)
                .collect();
            if on.len() == m {
                return;
            }
            if !facet_sets.contains(&on) {
                facet_sets.push(on);
                facet_ineqs.push((normal, offset));
            }
        });

        // Vertices: points whose active facet normals span the chart.
        let mut vertex_idx: Vec<usize> = Vec::new();
        for i in 0..m {
            let active: Vec<RatVec> = facet_sets
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(&i))
                .map(|(f, _)| facet_ineqs[f].0.clone())
                .collect();
            let rank = if active.is_empty() {
                0
            } else {
                RatMatrix::from_rows(active).rank()
            };
            if rank == d {
                vertex_idx.push(i);
            }
        }
        let vertices: Vec<RatVec> = vertex_idx.iter().map(|&i| points[i].clone()).collect();
        let vcoords: Vec<RatVec> = vertex_idx.iter().map(|&i| coords[i].clone()).collect();
        let facet_vertex_sets: Vec<Vec<usize>> = facet_sets
            .iter()
            .map(|s| {
                (0..vertices.len())
                    .filter(|&vi| s.contains(&vertex_idx[vi]))
                    .collect()
            })
            .collect();

        // Face lattice: closure of facet vertex sets under intersection.
        let all: Vec<usize> = (0..vertices.len()).collect();
        let mut sets: Vec<Vec<usize>> = vec![all];
        for f in &facet_vertex_sets {
            if !sets.contains(f) {
                sets.push(f.clone());
            }
        }
        loop {
            let mut added = false;
            let snapshot = sets.clone();
            for a in &snapshot {
                for b in &facet_vertex_sets {
                    let inter: Vec<usize> =
                        a.iter().filter(|i| b.contains(i)).copied().collect();
                    if inter.is_empty() {
                        continue;
                    }
                    if !sets.contains(&inter) {
                        sets.push(inter);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }

        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vertex_indices| {
                let rows: Vec<RatVec> = vertex_indices[1..]
                    .iter()
                    .map(|&i| vec_sub(&vcoords[i], &vcoords[vertex_indices[0]]))
                    .collect();
                let rank = if rows.is_empty() {
                    0
                } else {
                    RatMatrix::from_rows(rows).rank()
                };
                Face {
                    vertex_indices,
                    dim: rank,
                }
            })
            .collect();
        faces.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then_with(|| a.vertex_indices.cmp(&b.vertex_indices))
        });

        Ok(Polytope {
            lattice,
            vertices,
            faces,
            dim: d,
            base_point,
            span,
            facet_ineqs,
        })
    }

    pub fn lattice(&self) -> &LatticeContext {
        &self.lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    /// All faces (including the polytope itself and the vertices), sorted by
    /// (dimension, vertex set). Empty for the empty polytope.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn top_face(&self) -> &Face {
        self.faces
            .iter()
            .find(|f| f.vertex_indices.len() == self.vertices.len())
            .expect("nonempty polytope is a face of itself")
    }

    pub fn face_vertices(&self, face: &Face) -> Vec<RatVec> {
        face.vertex_indices
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    /// Barycenter of a face's vertices: a relative-interior point.
    pub fn face_relint_point(&self, face: &Face) -> RatVec {
        let vs = self.face_vertices(face);
        let k = Rat::from_integer((vs.len() as i64).into());
        let mut acc = vec![Rat::zero(); self.ambient_dim()];
        for v in &vs {
            acc = vec_add(&acc, v);
        }
        vec_scale(&acc, &k.recip())
    }

    /// Basis of lin(F).
    pub fn face_span(&self, face: &Face) -> Vec<RatVec> {
        let vs = self.face_vertices(face);
        let diffs: Vec<RatVec> = vs[1..].iter().map(|v| vec_sub(v, &vs[0])).collect();
        let qd = adapted_basis(&self.lattice, &diffs);
        (0..qd.sub_dim).map(|j| qd.adapted.col(j)).collect()
    }

    /// Exact membership.
    pub fn contains(&self, x: &[Rat]) -> bool {
        if self.is_empty() {
            return false;
        }
        let Some(y) = self.chart_coords(x) else {
            return false;
        };
        self.facet_ineqs.iter().all(|(n, b)| dot(n, &y) >= *b)
    }

    /// Chart coordinates of a point of aff(P), if it lies there.
    pub fn chart_coords(&self, x: &[Rat]) -> Option<RatVec> {
        let rhs = vec_sub(x, &self.base_point);
        let y = self.span.solve(&rhs)?;
        // Verify (solve only checks consistency of the least-squares-free
        // exact system; reconstruct).
        let back = self.span.mul_vec(&y);
        if back == rhs {
            Some(y)
        } else {
            None
        }
    }

    /// The face a vertex set describes, if present.
    pub fn find_face(&self, vertex_indices: &[usize]) -> Option<&Face> {
        let mut key = vertex_indices.to_vec();
        key.sort_unstable();
        self.faces.iter().find(|f| f.vertex_indices == key)
    }
}

fn primitive_rational(v: &[Rat]) -> RatVec {
    primitive_integer_direction(v)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

/// Visit all `k`-subsets of `0..m` in lexicographic order.
fn enumerate_subsets(m: usize, k: usize, stack: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if stack.len() == k {
        visit(stack);
        return;
    }
    let start = stack.last().map(|&x| x + 1).unwrap_or(0);
    for i in start..m {
        stack.push(i);
        enumerate_subsets(m, k, stack, visit);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec_from_ints;

    fn z2() -> LatticeContext {
        LatticeContext::standard(2)
    }

    fn poly2(points: &[[i64; 2]]) -> Polytope {
        Polytope::new(z2(), points.iter().map(|p| vec_from_ints(p)).collect()).unwrap()
    }

    #[test]
    fn unit_triangle_faces() {
        let p = poly2(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(p.vertices().len(), 3);
        let by_dim = |d: usize| p.faces().iter().filter(|f| f.dim == d).count();
        assert_eq!(by_dim(0), 3);
        assert_eq!(by_dim(1), 3);
        assert_eq!(by_dim(2), 1);
        assert_eq!(p.faces().len(), 7);
    }

    #[test]
    fn triangle_2_0_1_faces() {
        let p = poly2(&[[0, 0], [2, 0], [0, 1]]);
        assert_eq!(p.faces().len(), 7);
    }

    #[test]
    fn interior_points_dropped() {
        let p = poly2(&[[0, 0], [2, 0], [0, 2], [1, 1], [2, 2], [1, 0]]);
        // Square hull: (0,0),(2,0),(0,2),(2,2); (1,1) interior, (1,0) on an
        // edge.
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.faces().len(), 9);
    }

    #[test]
    fn segment_and_point() {
        let seg = poly2(&[[0, 0], [2, 0]]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.faces().len(), 3);
        let pt = poly2(&[[3, 4]]);
        assert_eq!(pt.dim(), 0);
        assert_eq!(pt.faces().len(), 1);
        let empty = Polytope::new(z2(), vec![]).unwrap();
        assert!(empty.is_empty());
        assert!(empty.faces().is_empty());
    }

    #[test]
    fn euler_relation_simplex_3d() {
        let lat = LatticeContext::standard(3);
        let p = Polytope::new(
            lat,
            vec![
                vec_from_ints(&[0, 0, 0]),
                vec_from_ints(&[1, 0, 0]),
                vec_from_ints(&[0, 1, 0]),
                vec_from_ints(&[0, 0, 1]),
            ],
        )
        .unwrap();
        let count = |d: usize| p.faces().iter().filter(|f| f.dim == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (4, 6, 4, 1));
        let euler: i64 = p
            .faces()
            .iter()
            .map(|f| if f.dim % 2 == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(euler, 1);
    }

    #[test]
    fn membership() {
        let p = poly2(&[[0, 0], [2, 0], [0, 1]]);
        assert!(p.contains(&vec_from_ints(&[1, 0])));
        assert!(p.contains(&vec![crate::lattice::rat(1, 2), crate::lattice::rat(1, 4)]));
        assert!(!p.contains(&vec_from_ints(&[2, 1])));
        // Lower-dimensional polytope membership.
        let seg = poly2(&[[0, 0], [2, 0]]);
        assert!(seg.contains(&vec_from_ints(&[1, 0])));
        assert!(!seg.contains(&vec_from_ints(&[1, 1])));
    }
}
