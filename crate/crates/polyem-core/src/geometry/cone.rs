//! Rational polyhedral cones with exact face lattices.
//!
//! A cone is stored as `apex + lineality + cone(generators)`. Generators are
//! primitive lattice directions reduced modulo the lineality space, deduped
//! and sorted; the lineality space is detected at construction, so a value
//! is pointed exactly when its lineality basis is empty. Face enumeration is
//! exhaustive (the supported pipeline stays in ambient dimension <= 4).

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    adapted_basis, dot, is_zero_vec, vec_add, vec_neg, vec_sub, LatticeContext,
    QuotientData, Rat, RatMatrix, RatVec,
};

/// A face of a cone, named by the generators lying on it. The minimal face
/// (the apex translate of the lineality space) has an empty generator set;
/// the cone itself carries all generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFace {
    pub generator_indices: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct Cone {
    lattice: LatticeContext,
    apex: RatVec,
    generators: Vec<RatVec>,
    lineality: Vec<RatVec>,
    dim: usize,
    faces: Vec<ConeFace>,
}

impl PartialEq for Cone {
    /// Structural equality of the canonical representation. Equal values are
    /// equal sets; translated apexes inside the same minimal face compare
    /// unequal, use [`Cone::same_set`] for set equality.
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
            && self.apex == other.apex
            && self.generators == other.generators
            && self.lineality == other.lineality
    }
}

impl Cone {
    pub fn new(
        lattice: LatticeContext,
        apex: RatVec,
        raw_generators: Vec<RatVec>,
        raw_lineality: Vec<RatVec>,
    ) -> Result<Cone> {
        let n = lattice.dim();
        if apex.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: apex.len(),
            });
        }
        for v in raw_generators.iter().chain(&raw_lineality) {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }

        // Grow the lineality space until no generator's negative stays inside.
        let mut lin_span: Vec<RatVec> = raw_lineality
            .iter()
            .filter(|v| !is_zero_vec(v))
            .cloned()
            .collect();
        let mut gens: Vec<RatVec> = raw_generators;
        loop {
            let qd = adapted_basis(&lattice, &lin_span);
            let mut reduced: Vec<RatVec> = Vec::new();
            for g in &gens {
                let y = qd.project(g);
                if is_zero_vec(&y) {
                    continue;
                }
                let lifted = qd.lift_vec(&y);
                let prim = lattice.primitive_direction(&lifted);
                if !reduced.contains(&prim) {
                    reduced.push(prim);
                }
            }
            // Lineality detection on the reduced, pointed-candidate set.
            let projected: Vec<RatVec> = reduced.iter().map(|g| qd.project(g)).collect();
            let mut extra = Vec::new();
            for (i, y) in projected.iter().enumerate() {
                if caratheodory_member(&vec_neg(y), &projected) {
                    extra.push(reduced[i].clone());
                }
            }
            if extra.is_empty() {
                gens = reduced;
                break;
            }
            lin_span.extend(extra);
            gens = reduced;
        }

        // Canonical lineality basis: the saturated sublattice columns of the
        // adapted basis.
        let qd = adapted_basis(&lattice, &lin_span);
        let lineality: Vec<RatVec> = (0..qd.sub_dim).map(|j| qd.adapted.col(j)).collect();
        gens.sort();
        let span_rank = if gens.is_empty() {
            0
        } else {
            RatMatrix::from_rows(gens.iter().map(|g| qd.project(g)).collect()).rank()
        };
        let dim = qd.sub_dim + span_rank;

        let faces = enumerate_faces(&qd, &gens, qd.sub_dim);
        Ok(Cone {
            lattice,
            apex,
            generators: gens,
            lineality,
            dim,
            faces,
        })
    }

    pub fn from_generators(
        lattice: LatticeContext,
        apex: RatVec,
        generators: Vec<RatVec>,
    ) -> Result<Cone> {
        Cone::new(lattice, apex, generators, Vec::new())
    }

    pub fn ray(lattice: LatticeContext, apex: RatVec, direction: RatVec) -> Result<Cone> {
        Cone::from_generators(lattice, apex, vec![direction])
    }

    pub fn point(lattice: LatticeContext, apex: RatVec) -> Result<Cone> {
        Cone::from_generators(lattice, apex, Vec::new())
    }

    pub fn lattice(&self) -> &LatticeContext {
        &self.lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn apex(&self) -> &RatVec {
        &self.apex
    }

    pub fn generators(&self) -> &[RatVec] {
        &self.generators
    }

    pub fn lineality(&self) -> &[RatVec] {
        &self.lineality
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.generators.len() == self.dim
    }

    /// All faces, sorted by (dimension, generator set). Includes the minimal
    /// face and the cone itself.
    pub fn faces(&self) -> &[ConeFace] {
        &self.faces
    }

    pub fn top_face(&self) -> &ConeFace {
        self.faces
            .iter()
            .find(|f| f.generator_indices.len() == self.generators.len())
            .expect("the cone is a face of itself")
    }

    /// Basis of lin(F): the lineality space plus the face's generators.
    pub fn face_span(&self, face: &ConeFace) -> Vec<RatVec> {
        let mut vectors: Vec<RatVec> = self.lineality.clone();
        for &i in &face.generator_indices {
            vectors.push(self.generators[i].clone());
        }
        let qd = adapted_basis(&self.lattice, &vectors);
        (0..qd.sub_dim).map(|j| qd.adapted.col(j)).collect()
    }

    /// A point in the relative interior of a face.
    pub fn face_relint_point(&self, face: &ConeFace) -> RatVec {
        let mut p = self.apex.clone();
        for &i in &face.generator_indices {
            p = vec_add(&p, &self.generators[i]);
        }
        p
    }

    /// The supporting cone `Supp(K, F)`: all directions staying in the cone
    /// from a relative-interior point of the face, translated back.
    pub fn supporting_cone(&self, face: &ConeFace) -> Result<Cone> {
        let apex = self.face_relint_point(face);
        let mut lineality = self.lineality.clone();
        lineality.extend(self.face_span(face));
        Cone::new(
            self.lattice.clone(),
            apex,
            self.generators.clone(),
            lineality,
        )
    }

    /// The transverse cone `T(K, F)`: the image of `Supp(K, F)` in
    /// `V/lin(F)`, together with the quotient data. Always pointed.
    pub fn transverse_cone(&self, face: &ConeFace) -> Result<(QuotientData, Cone)> {
        let span = self.face_span(face);
        let qd = adapted_basis(&self.lattice, &span);
        let apex = qd.project(&self.face_relint_point(face));
        let gens: Vec<RatVec> = self
            .generators
            .iter()
            .map(|g| qd.project(g))
            .filter(|y| !is_zero_vec(y))
            .collect();
        // Every face contains the minimal face, so the lineality space dies
        // in the quotient.
        debug_assert!(self
            .lineality
            .iter()
            .all(|l| is_zero_vec(&qd.project(l))));
        let cone = Cone::from_generators(qd.quotient_lattice.clone(), apex, gens)?;
        debug_assert!(cone.is_pointed(), "transverse cone must be pointed");
        Ok((qd, cone))
    }

    /// Membership of a direction in the recession cone.
    pub fn contains_direction(&self, d: &[Rat]) -> bool {
        let qd = adapted_basis(&self.lattice, &self.lineality);
        let y = qd.project(d);
        let gens: Vec<RatVec> = self.generators.iter().map(|g| qd.project(g)).collect();
        caratheodory_member(&y, &gens)
    }

    /// Membership of a point.
    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.contains_direction(&vec_sub(x, &self.apex))
    }

    /// Set equality, tested through generators, lineality and apexes.
    pub fn same_set(&self, other: &Cone) -> bool {
        if self.lattice != other.lattice || self.dim != other.dim {
            return false;
        }
        let covers = |a: &Cone, b: &Cone| -> bool {
            b.contains_point(&a.apex)
                && a.generators.iter().all(|g| b.contains_direction(g))
                && a.lineality.iter().all(|l| {
                    b.contains_direction(l) && b.contains_direction(&vec_neg(l))
                })
        };
        covers(self, other) && covers(other, self)
    }

    /// Extreme rays (primitive directions) of the pointed part.
    pub fn extreme_rays(&self) -> Vec<RatVec> {
        let target = self.lineality.len() + 1;
        let mut out = Vec::new();
        for f in &self.faces {
            if f.dim == target && f.generator_indices.len() == 1 {
                out.push(self.generators[f.generator_indices[0]].clone());
            }
        }
        out
    }

    /// The same cone with only its extreme rays as generators.
    pub fn minimalized(&self) -> Cone {
        Cone::new(
            self.lattice.clone(),
            self.apex.clone(),
            self.extreme_rays(),
            self.lineality.clone(),
        )
        .expect("canonical data is valid")
    }

    pub fn translate(&self, v: &[Rat]) -> Cone {
        let mut c = self.clone();
        c.apex = vec_add(&c.apex, v);
        c
    }

    /// Whether the minimal face contains a lattice point.
    pub fn is_lattice_cone(&self) -> bool {
        self.minimal_face_lattice_point().is_some()
    }

    /// A lattice point in the minimal face (`apex + lineality`), if any.
    pub fn minimal_face_lattice_point(&self) -> Option<RatVec> {
        crate::geometry::lattice_point_in_affine(&self.lattice, &self.apex, &self.lineality)
    }

    /// The dual cone `{w : <w, v> >= 0 for all v}`, for cones with apex at
    /// the origin, with primitive generators in the dual lattice.
    pub fn dual(&self) -> Result<Cone> {
        if !is_zero_vec(&self.apex) {
            return Err(Error::DegenerateInput(
                "dual cone requires the apex at the origin".into(),
            ));
        }
        let n = self.ambient_dim();
        let dual_lattice = self.lattice.dual();
        // Lineality of the dual: annihilator of the span of the cone.
        let mut span_rows: Vec<RatVec> = self.generators.clone();
        span_rows.extend(self.lineality.iter().cloned());
        let span_matrix = if span_rows.is_empty() {
            RatMatrix::zero(0, n)
        } else {
            RatMatrix::from_rows(span_rows)
        };
        let dual_lin = span_matrix.kernel();

        // Candidate rays: kernels of equality systems built from generator
        // subsets, one dimension above the dual lineality.
        let m = self.generators.len();
        let mut rays: Vec<RatVec> = Vec::new();
        let lin_rank = dual_lin.len();
        for mask in 0u32..(1 << m) {
            let mut rows: Vec<RatVec> = self.lineality.clone();
            for (i, g) in self.generators.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    rows.push(g.clone());
                }
            }
            let mat = if rows.is_empty() {
                RatMatrix::zero(0, n)
            } else {
                RatMatrix::from_rows(rows)
            };
            let kernel = mat.kernel();
            if kernel.len() != lin_rank + 1 {
                continue;
            }
            // Pick a kernel vector outside the dual lineality.
            let lin_mat = if dual_lin.is_empty() {
                RatMatrix::zero(0, n)
            } else {
                RatMatrix::from_rows(dual_lin.clone())
            };
            for v in &kernel {
                let mut stacked = lin_mat.clone();
                let mut rows: Vec<RatVec> = (0..stacked.rows).map(|i| stacked.row(i)).collect();
                rows.push(v.clone());
                stacked = RatMatrix::from_rows(rows);
                if stacked.rank() != lin_rank + 1 {
                    continue;
                }
                for cand in [v.clone(), vec_neg(v)] {
                    if self
                        .generators
                        .iter()
                        .all(|g| !dot(&cand, g).is_negative())
                    {
                        rays.push(cand);
                    }
                }
                break;
            }
        }
        let dual = Cone::new(
            dual_lattice,
            vec![Rat::zero(); n],
            rays,
            dual_lin,
        )?;
        Ok(dual.minimalized())
    }
}

/// Carathéodory membership: `y` lies in `cone(gens)` iff it is a
/// non-negative combination of some linearly independent subset.
pub fn caratheodory_member(y: &[Rat], gens: &[RatVec]) -> bool {
    if is_zero_vec(y) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let m = gens.len();
    assert!(m < 31, "generator count beyond brute-force scale");
    for mask in 1u32..(1 << m) {
        let subset: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        if subset.len() > y.len() {
            continue;
        }
        let cols: Vec<RatVec> = subset.iter().map(|&i| gens[i].clone()).collect();
        let mat = RatMatrix::from_cols(cols);
        if mat.rank() != subset.len() {
            continue;
        }
        if let Some(coeffs) = mat.solve(y) {
            if coeffs.iter().all(|c| !c.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Enumerate the faces of `lineality + cone(gens)` (generators reduced mod
/// lineality, cone pointed in the quotient).
fn enumerate_faces(qd: &QuotientData, gens: &[RatVec], lin_dim: usize) -> Vec<ConeFace> {
    let m = gens.len();
    let all: Vec<usize> = (0..m).collect();
    if m == 0 {
        return vec![ConeFace {
            generator_indices: Vec::new(),
            dim: lin_dim,
        }];
    }
    let ys: Vec<RatVec> = gens.iter().map(|g| qd.project(g)).collect();
    // Work inside the span of the projected generators.
    let span_qd = adapted_basis(&qd.quotient_lattice, &ys);
    let s = span_qd.sub_dim;
    let inv = span_qd.adapted.inverse().expect("invertible");
    let coords: Vec<RatVec> = ys.iter().map(|y| inv.mul_vec(y)[..s].to_vec()).collect();

    // Supporting hyperplanes through the origin spanned by generator subsets.
    let mut facet_sets: Vec<Vec<usize>> = Vec::new();
    if s >= 1 {
        for mask in 0u32..(1 << m) {
            let subset: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            if subset.len() != s - 1 {
                continue;
            }
            let rows: Vec<RatVec> = subset.iter().map(|&i| coords[i].clone()).collect();
            let mat = if rows.is_empty() {
                RatMatrix::zero(0, s)
            } else {
                RatMatrix::from_rows(rows.clone())
            };
            if !rows.is_empty() && mat.rank() != s - 1 {
                continue;
            }
            let normals = mat.kernel();
            if normals.len() != 1 {
                continue;
            }
            let normal = &normals[0];
            let values: Vec<Rat> = coords.iter().map(|y| dot(normal, y)).collect();
            let has_pos = values.iter().any(|v| v.is_positive());
            let has_neg = values.iter().any(|v| v.is_negative());
            if has_pos && has_neg {
                continue;
            }
            let on: Vec<usize> = (0..m).filter(|&i| values[i].is_zero()).collect();
            if on.len() == m {
                continue; // spans less than the cone's own span
            }
            if !facet_sets.contains(&on) {
                facet_sets.push(on);
            }
        }
    }

    // Closure under intersection.
    let mut sets: Vec<Vec<usize>> = vec![all];
    for f in &facet_sets {
        if !sets.contains(f) {
            sets.push(f.clone());
        }
    }
    loop {
        let mut added = false;
        let snapshot = sets.clone();
        for a in &snapshot {
            for b in &facet_sets {
                let inter: Vec<usize> = a.iter().filter(|i| b.contains(i)).copied().collect();
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

    let mut faces: Vec<ConeFace> = sets
        .into_iter()
        .map(|generator_indices| {
            let rows: Vec<RatVec> = generator_indices
                .iter()
                .map(|&i| coords[i].clone())
                .collect();
            let rank = if rows.is_empty() {
                0
            } else {
                RatMatrix::from_rows(rows).rank()
            };
            ConeFace {
                generator_indices,
                dim: lin_dim + rank,
            }
        })
        .collect();
    faces.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then_with(|| a.generator_indices.cmp(&b.generator_indices))
    });
    faces
}
