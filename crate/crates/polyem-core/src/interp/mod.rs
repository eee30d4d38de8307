//! Rigid complement maps and the interpolators they induce.
//!
//! A complement map on the dual space assigns to (generic) subspaces a
//! complementary subspace, inclusion-reversing. The two constructions are an
//! inner product (`Psi(U) = U-perp`) and a complete flag
//! (`Psi(U) = L_{n-dim U}`, defined only when complementary). Either choice
//! induces, for every quotient `V/W0`, a projection of dual spaces and a
//! complement map on the quotient, which is exactly what the interpolator
//! recursions consume.

mod closed2d;
mod recursion;

pub use closed2d::{inner_product_vertex_constant, morelli_duality_check, mu_closed_form_2d,
    nu_closed_form_2d};
pub use recursion::{Interpolator, InterpolatorKind};

use crate::error::{Error, Result};
use crate::exactmath::{ParamSet, Scalar, ScalarMatrix};
use crate::genfun::{scalar_vec, ScalarVec};
use crate::lattice::{adapted_basis, LatticeContext, QuotientData, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplementMapKind {
    /// Symmetric matrix of an inner product on the dual space (positive
    /// definite when numeric; symbolic entries are taken at face value).
    InnerProduct(ScalarMatrix),
    /// Flag vectors: prefixes span the flag subspaces `L_1 c ... c L_n`.
    Flag(Vec<ScalarVec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementMap {
    kind: ComplementMapKind,
    params: ParamSet,
    dim: usize,
    fingerprint: String,
}

/// The data of a Psi-compatible quotient: the lattice quotient along `W0`,
/// the dual projection `pi : V^* -> W^*` in quotient coordinates, and the
/// induced complement map on the quotient.
#[derive(Debug, Clone)]
pub struct QuotientProjection {
    pub quotient: QuotientData,
    pub pi: ScalarMatrix,
    pub induced: ComplementMap,
}

impl ComplementMap {
    pub fn inner_product(matrix: ScalarMatrix, params: ParamSet) -> Result<ComplementMap> {
        if matrix.rows != matrix.cols {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows,
                got: matrix.cols,
            });
        }
        let n = matrix.rows;
        for i in 0..n {
            for j in 0..i {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(Error::DegenerateInput(
                        "inner-product matrix must be symmetric".into(),
                    ));
                }
            }
        }
        if matrix.det().is_zero() {
            return Err(Error::DegenerateInput(
                "inner-product matrix must be nonsingular".into(),
            ));
        }
        let fingerprint = format!(
            "Q[{}]",
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| matrix[(i, j)].render())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect::<Vec<_>>()
                .join(";")
        );
        Ok(ComplementMap {
            kind: ComplementMapKind::InnerProduct(matrix),
            params,
            dim: n,
            fingerprint,
        })
    }

    pub fn flag(vectors: Vec<ScalarVec>, params: ParamSet) -> Result<ComplementMap> {
        let n = vectors.len();
        for v in &vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let m = ScalarMatrix::from_rows(vectors.clone());
        if n > 0 && m.rank() != n {
            return Err(Error::DegenerateInput(
                "flag vectors must be linearly independent".into(),
            ));
        }
        let fingerprint = format!(
            "L[{}]",
            vectors
                .iter()
                .map(|v| v.iter().map(|c| c.render()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        );
        Ok(ComplementMap {
            kind: ComplementMapKind::Flag(vectors),
            params,
            dim: n,
            fingerprint,
        })
    }

    /// The standard inner product.
    pub fn standard(dim: usize) -> ComplementMap {
        ComplementMap::inner_product(ScalarMatrix::identity(dim), ParamSet::empty())
            .expect("identity is a valid inner product")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn kind(&self) -> &ComplementMapKind {
        &self.kind
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn is_flag(&self) -> bool {
        matches!(self.kind, ComplementMapKind::Flag(_))
    }

    /// The complementary subspace of `span(u_basis)`, as a basis.
    pub fn complement(&self, u_basis: &[ScalarVec]) -> Result<Vec<ScalarVec>> {
        let n = self.dim;
        let u_rank = if u_basis.is_empty() {
            0
        } else {
            ScalarMatrix::from_rows(u_basis.to_vec()).rank()
        };
        match &self.kind {
            ComplementMapKind::InnerProduct(q) => {
                if u_basis.is_empty() {
                    return Ok((0..n)
                        .map(|i| {
                            let mut e = vec![Scalar::zero(); n];
                            e[i] = Scalar::one();
                            e
                        })
                        .collect());
                }
                // Kernel of (rows u_i^T Q).
                let rows: Vec<ScalarVec> = u_basis.iter().map(|u| q.mul_vec(u)).collect();
                Ok(ScalarMatrix::from_rows(rows).kernel())
            }
            ComplementMapKind::Flag(vectors) => {
                let j = n - u_rank;
                let prefix: Vec<ScalarVec> = vectors[..j].to_vec();
                // Complementarity check: the union must span.
                let mut all = prefix.clone();
                all.extend(u_basis.iter().cloned());
                if !all.is_empty() && ScalarMatrix::from_rows(all).rank() != n {
                    return Err(Error::GenericityFailure(format!(
                        "subspace of dimension {} meets the flag subspace L_{}",
                        u_rank, j
                    )));
                }
                Ok(prefix)
            }
        }
    }

    /// The projection data for the quotient `V -> V/W0`.
    pub fn projection_to_quotient(
        &self,
        lattice: &LatticeContext,
        w0: &[RatVec],
    ) -> Result<QuotientProjection> {
        let n = self.dim;
        assert_eq!(lattice.dim(), n);
        let quotient = adapted_basis(lattice, w0);
        let k = quotient.sub_dim;
        let m = n - k;

        // Embedding of W^* = ann(W0) into V^*: the projection rows are dual
        // to the chosen quotient lifts.
        let embed_rows: Vec<ScalarVec> = (0..m)
            .map(|i| scalar_vec(&quotient.projection.row(i)))
            .collect();
        let mut embed = ScalarMatrix::zero(n, m); // columns embed W^*
        for (i, row) in embed_rows.iter().enumerate() {
            for j in 0..n {
                embed[(j, i)] = row[j].clone();
            }
        }

        // Psi(W^*), then pi = first m coordinates of [E | C]^{-1}.
        let psi_w = self.complement(&embed_rows)?;
        debug_assert_eq!(psi_w.len(), k);
        let mut cols: Vec<ScalarVec> = (0..m).map(|j| embed.col(j)).collect();
        cols.extend(psi_w.iter().cloned());
        let basis = ScalarMatrix::from_cols(cols);
        let inv = basis.inverse().ok_or_else(|| {
            Error::GenericityFailure(
                "complement does not split the dual space (degenerate flag data)".into(),
            )
        })?;
        let mut pi = ScalarMatrix::zero(m, n);
        for i in 0..m {
            for j in 0..n {
                pi[(i, j)] = inv[(i, j)].clone();
            }
        }

        let induced = self.induce_on_quotient(&embed, m)?;
        Ok(QuotientProjection {
            quotient,
            pi,
            induced,
        })
    }

    /// The induced complement map on `W^*`, expressed in the embedding
    /// coordinates (columns of `embed`).
    fn induce_on_quotient(&self, embed: &ScalarMatrix, m: usize) -> Result<ComplementMap> {
        match &self.kind {
            ComplementMapKind::InnerProduct(q) => {
                let restricted = embed.transpose().mul(&q.mul(embed));
                ComplementMap::inner_product(restricted, self.params.clone())
            }
            ComplementMapKind::Flag(vectors) => {
                let n = self.dim;
                let k = n - m;
                // Nested bases of L_{k+j} ∩ W^*, in embed coordinates.
                let mut induced: Vec<ScalarVec> = Vec::new();
                for j in 1..=m {
                    let prefix: Vec<ScalarVec> = vectors[..k + j].to_vec();
                    // Solve prefix-combo = embed-combo: kernel of [P^T | -E].
                    let mut cols: Vec<ScalarVec> = prefix.clone();
                    for c in 0..m {
                        cols.push(embed.col(c).iter().map(|x| x.neg()).collect());
                    }
                    let stacked = ScalarMatrix::from_cols(cols);
                    let kernel = stacked.kernel();
                    // Intersection vectors in embed coordinates.
                    let mut candidates: Vec<ScalarVec> = kernel
                        .iter()
                        .map(|v| v[k + j..].to_vec())
                        .filter(|w| w.iter().any(|c| !c.is_zero()))
                        .collect();
                    candidates.sort();
                    let mut found = false;
                    for cand in candidates {
                        let mut trial = induced.clone();
                        trial.push(cand.clone());
                        if ScalarMatrix::from_rows(trial).rank() == j {
                            induced.push(cand);
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Err(Error::GenericityFailure(format!(
                            "flag meets the quotient dual space non-generically at level {j}"
                        )));
                    }
                }
                ComplementMap::flag(induced, self.params.clone())
            }
        }
    }

    /// The corresponding complement map on the predual space (for cones in
    /// `V^*`): the inverse inner product, or the dual flag
    /// `L*_j = ann(L_{n-j})`.
    pub fn dual_map(&self) -> Result<ComplementMap> {
        match &self.kind {
            ComplementMapKind::InnerProduct(q) => {
                let inv = q
                    .inverse()
                    .ok_or_else(|| Error::DegenerateInput("singular inner product".into()))?;
                ComplementMap::inner_product(inv, self.params.clone())
            }
            ComplementMapKind::Flag(vectors) => {
                let n = self.dim;
                let mut dual_vectors: Vec<ScalarVec> = Vec::new();
                for j in 1..=n {
                    // ann(L_{n-j}) has dimension j and contains the previous.
                    let prefix: Vec<ScalarVec> = vectors[..n - j].to_vec();
                    let ann = if prefix.is_empty() {
                        (0..n)
                            .map(|i| {
                                let mut e = vec![Scalar::zero(); n];
                                e[i] = Scalar::one();
                                e
                            })
                            .collect()
                    } else {
                        ScalarMatrix::from_rows(prefix).kernel()
                    };
                    let mut found = false;
                    let mut ann_sorted = ann;
                    ann_sorted.sort();
                    for cand in ann_sorted {
                        let mut trial = dual_vectors.clone();
                        trial.push(cand.clone());
                        if ScalarMatrix::from_rows(trial).rank() == j {
                            dual_vectors.push(cand);
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Err(Error::DegenerateInput(
                            "flag annihilators failed to nest".into(),
                        ));
                    }
                }
                ComplementMap::flag(dual_vectors, self.params.clone())
            }
        }
    }
}
