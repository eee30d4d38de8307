//! Half-open simplicial decomposition of pointed cones, and lattice-point
//! enumeration in half-open parallelepiped boxes.
//!
//! Pieces are disjoint and cover the cone exactly, so exponential sums are
//! literally additive over them. Wall ownership follows a generic interior
//! reference point: a piece facet is excluded exactly when the reference
//! point lies strictly on its far side. Two-dimensional cones are refined to
//! unimodular sectors along the lattice hull path between their extreme rays.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    adapted_basis, dot, vec_add, vec_scale, vec_sub, LatticeContext, Rat, RatMatrix, RatVec,
};

use super::cone::Cone;
use super::lattice_point_in_affine;

/// A simplicial cone with a subset of its facets removed: the points
/// `apex + sum t_i g_i` with `t_i >= 0`, and `t_i > 0` for `i` in
/// `open_facets` (excluding the facet where `t_i = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct HalfOpenSimplicialCone {
    pub lattice: LatticeContext,
    pub apex: RatVec,
    /// Ordered, linearly independent generators.
    pub generators: Vec<RatVec>,
    pub open_facets: BTreeSet<usize>,
}

impl HalfOpenSimplicialCone {
    pub fn closed(lattice: LatticeContext, apex: RatVec, generators: Vec<RatVec>) -> Self {
        HalfOpenSimplicialCone {
            lattice,
            apex,
            generators,
            open_facets: BTreeSet::new(),
        }
    }

    pub fn to_cone(&self) -> Cone {
        Cone::from_generators(
            self.lattice.clone(),
            self.apex.clone(),
            self.generators.clone(),
        )
        .expect("simplicial data is valid")
    }

    /// Exact membership respecting the open facets.
    pub fn contains_point(&self, x: &[Rat]) -> bool {
        let Some(t) = simplex_coords(&self.lattice, &self.apex, &self.generators, x) else {
            return false;
        };
        t.iter().enumerate().all(|(i, ti)| {
            if self.open_facets.contains(&i) {
                ti.is_positive()
            } else {
                !ti.is_negative()
            }
        })
    }

    /// Lattice points of the half-open fundamental box
    /// `apex + sum t_i g_i`, `t_i` in `[0,1)` (or `(0,1]` for open facets).
    pub fn box_points(&self) -> Result<Vec<RatVec>> {
        box_lattice_points(
            &self.lattice,
            &self.apex,
            &self.generators,
            &self.open_facets,
        )
    }
}

/// Barycentric-style coordinates of `x - apex` in the generator basis, or
/// `None` when `x` is outside the affine span.
fn simplex_coords(
    lattice: &LatticeContext,
    apex: &[Rat],
    gens: &[RatVec],
    x: &[Rat],
) -> Option<RatVec> {
    let _ = lattice;
    let rhs = vec_sub(x, apex);
    let mat = RatMatrix::from_cols(gens.to_vec());
    let t = mat.solve(&rhs)?;
    if mat.mul_vec(&t) == rhs {
        Some(t)
    } else {
        None
    }
}

/// Lattice points of a half-open parallelepiped box.
pub fn box_lattice_points(
    lattice: &LatticeContext,
    apex: &[Rat],
    generators: &[RatVec],
    open_facets: &BTreeSet<usize>,
) -> Result<Vec<RatVec>> {
    let k = generators.len();
    if k > 0 {
        let rank = RatMatrix::from_rows(generators.to_vec()).rank();
        if rank != k {
            return Err(Error::DependentGenerators);
        }
    }
    // A lattice anchor in the affine span, if any.
    let Some(x0) = lattice_point_in_affine(lattice, apex, generators) else {
        return Ok(Vec::new());
    };
    if k == 0 {
        // The box is the single point `apex`.
        return Ok(if x0 == apex { vec![x0] } else { Vec::new() });
    }

    let qd = adapted_basis(lattice, generators);
    debug_assert_eq!(qd.sub_dim, k);
    let inv = qd.adapted.inverse().expect("adapted basis invertible");
    let coords_of = |x: &[Rat]| -> RatVec { inv.mul_vec(&vec_sub(x, &x0))[..k].to_vec() };

    let a = coords_of(apex);
    let g = RatMatrix::from_cols(generators.iter().map(|v| coords_of(&vec_add(v, &x0))).collect());
    let g_inv = g.inverse().ok_or(Error::DependentGenerators)?;

    // Bounding box over the parallelepiped corners.
    let mut lo = vec![Rat::zero(); k];
    let mut hi = vec![Rat::zero(); k];
    for mask in 0u32..(1 << k) {
        let mut corner = a.clone();
        for i in 0..k {
            if mask & (1 << i) != 0 {
                corner = vec_add(&corner, &g.col(i));
            }
        }
        for i in 0..k {
            if mask == 0 || corner[i] < lo[i] {
                lo[i] = corner[i].clone();
            }
            if mask == 0 || corner[i] > hi[i] {
                hi[i] = corner[i].clone();
            }
        }
    }
    let lo_i: Vec<BigInt> = lo.iter().map(|r| r.ceil().to_integer()).collect();
    let hi_i: Vec<BigInt> = hi.iter().map(|r| r.floor().to_integer()).collect();

    let mut out = Vec::new();
    let mut cursor = lo_i.clone();
    'outer: loop {
        let y: RatVec = cursor.iter().map(|z| Rat::from_integer(z.clone())).collect();
        let t = g_inv.mul_vec(&vec_sub(&y, &a));
        let inside = t.iter().enumerate().all(|(i, ti)| {
            if open_facets.contains(&i) {
                ti.is_positive() && *ti <= Rat::one()
            } else {
                !ti.is_negative() && *ti < Rat::one()
            }
        });
        if inside {
            // Back to ambient coordinates through the adapted lift.
            let mut full = y.clone();
            full.resize(lattice.dim(), Rat::zero());
            out.push(vec_add(&qd.adapted.mul_vec(&full), &x0));
        }
        // Advance the integer cursor.
        for i in 0..k {
            cursor[i] += BigInt::one();
            if cursor[i] <= hi_i[i] {
                continue 'outer;
            }
            cursor[i] = lo_i[i].clone();
        }
        break;
    }
    out.sort();
    Ok(out)
}

/// Decompose a pointed cone into disjoint half-open simplicial pieces whose
/// union is the cone.
pub fn halfopen_decompose(cone: &Cone) -> Result<Vec<HalfOpenSimplicialCone>> {
    if !cone.is_pointed() {
        return Err(Error::UnsupportedInput(
            "half-open decomposition requires a pointed cone".into(),
        ));
    }
    let k = cone.dim();
    let lattice = cone.lattice().clone();
    let apex = cone.apex().clone();
    if k == 0 {
        return Ok(vec![HalfOpenSimplicialCone::closed(lattice, apex, vec![])]);
    }

    // Span coordinates: primitive integer vectors in Z^k.
    let qd = adapted_basis(&lattice, cone.generators());
    debug_assert_eq!(qd.sub_dim, k);
    let inv = qd.adapted.inverse().expect("adapted basis invertible");
    let ys: Vec<RatVec> = cone
        .generators()
        .iter()
        .map(|g| inv.mul_vec(g)[..k].to_vec())
        .collect();

    let simplices_y: Vec<Vec<RatVec>> = if k == 1 {
        vec![vec![ys[0].clone()]]
    } else if k == 2 {
        decompose_2d(&ys)
    } else {
        triangulate_fan(&ys, k)?
            .into_iter()
            .map(|idx| idx.into_iter().map(|i| ys[i].clone()).collect())
            .collect()
    };

    // Generic interior reference point: perturbed positive combination of
    // the generators, avoiding every piece's facet hyperplanes.
    let z = generic_interior_point(&ys, &simplices_y);

    let lift = |y: &RatVec| -> RatVec {
        let mut full = y.clone();
        full.resize(lattice.dim(), Rat::zero());
        qd.adapted.mul_vec(&full)
    };

    let mut pieces = Vec::new();
    for gens_y in &simplices_y {
        let g = RatMatrix::from_cols(gens_y.clone());
        let g_inv = g.inverse().ok_or(Error::DependentGenerators)?;
        let t = g_inv.mul_vec(&z);
        let mut open = BTreeSet::new();
        for (i, ti) in t.iter().enumerate() {
            assert!(!ti.is_zero(), "reference point must be generic");
            if ti.is_negative() {
                open.insert(i);
            }
        }
        pieces.push(HalfOpenSimplicialCone {
            lattice: lattice.clone(),
            apex: apex.clone(),
            generators: gens_y.iter().map(&lift).collect(),
            open_facets: open,
        });
    }
    Ok(pieces)
}

/// 2D: sort the rays, then refine each sector to unimodular sectors along
/// the lattice hull path.
fn decompose_2d(ys: &[RatVec]) -> Vec<Vec<RatVec>> {
    let mut rays = ys.to_vec();
    // Rotational sort inside the pointed cone (all pairwise angles < pi):
    // r before s iff det(r, s) > 0.
    rays.sort_by(|r, s| {
        let d = det2(r, s);
        if d.is_positive() {
            std::cmp::Ordering::Less
        } else if d.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    let mut refined: Vec<RatVec> = Vec::new();
    for w in rays.windows(2) {
        let chain = unimodular_chain(&w[0], &w[1]);
        for p in chain {
            if refined.last() != Some(&p) {
                refined.push(p);
            }
        }
    }
    if rays.len() == 1 {
        refined.push(rays[0].clone());
    }
    refined
        .windows(2)
        .map(|w| vec![w[0].clone(), w[1].clone()])
        .collect()
}

fn det2(a: &[Rat], b: &[Rat]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// The lattice points on the inner hull path of `cone(u, w) ∩ Z² \ {0}`
/// from `u` to `w`; consecutive points span unimodular sectors.
fn unimodular_chain(u: &RatVec, w: &RatVec) -> Vec<RatVec> {
    let d = det2(u, w);
    assert!(d.is_positive(), "sector must be positively oriented");
    if d == Rat::one() {
        return vec![u.clone(), w.clone()];
    }
    // All nonzero lattice points of the closed parallelogram {su + tw}.
    let m = RatMatrix::from_cols(vec![u.clone(), w.clone()]);
    let m_inv = m.inverse().expect("independent rays");
    let corners = [
        vec![Rat::zero(), Rat::zero()],
        u.clone(),
        w.clone(),
        vec_add(u, w),
    ];
    let lo: Vec<BigInt> = (0..2)
        .map(|i| corners.iter().map(|c| c[i].ceil().to_integer()).min().unwrap())
        .collect();
    let hi: Vec<BigInt> = (0..2)
        .map(|i| corners.iter().map(|c| c[i].floor().to_integer()).max().unwrap())
        .collect();
    // Points in (s, t) coordinates paired with the original vector.
    let mut pts: Vec<(RatVec, RatVec)> = Vec::new();
    let mut x = lo[0].clone();
    while x <= hi[0] {
        let mut y = lo[1].clone();
        while y <= hi[1] {
            let p = vec![Rat::from_integer(x.clone()), Rat::from_integer(y.clone())];
            let st = m_inv.mul_vec(&p);
            let in_box = st.iter().all(|c| !c.is_negative() && *c <= Rat::one());
            let nonzero = !(st[0].is_zero() && st[1].is_zero());
            if in_box && nonzero {
                pts.push((st, p));
            }
            y += BigInt::one();
        }
        x += BigInt::one();
    }
    // Convex hull in (s,t), counterclockwise, strict vertices only.
    let hull = convex_hull_ccw(&pts);
    // Near chain: walk CCW from w = (0,1) to u = (1,0), then reverse.
    let u_st = vec![Rat::one(), Rat::zero()];
    let w_st = vec![Rat::zero(), Rat::one()];
    let iu = hull.iter().position(|(st, _)| *st == u_st).expect("u on hull");
    let iw = hull.iter().position(|(st, _)| *st == w_st).expect("w on hull");
    let mut chain: Vec<(RatVec, RatVec)> = Vec::new();
    let n = hull.len();
    let mut i = iw;
    loop {
        chain.push(hull[i].clone());
        if i == iu {
            break;
        }
        i = (i + 1) % n;
    }
    chain.reverse();
    // Insert collinear lattice points on each chain edge, ordered along it.
    let mut full: Vec<RatVec> = Vec::new();
    for pair in chain.windows(2) {
        let (a_st, a_xy) = &pair[0];
        let (b_st, _) = &pair[1];
        let mut on_edge: Vec<(Rat, RatVec)> = pts
            .iter()
            .filter(|(st, _)| {
                let d = det2(
                    &vec_sub(b_st, a_st),
                    &vec_sub(st, a_st),
                );
                d.is_zero() && between(a_st, b_st, st)
            })
            .map(|(st, xy)| (param_along(a_st, b_st, st), xy.clone()))
            .collect();
        on_edge.sort_by(|x, y| x.0.cmp(&y.0));
        if full.last() != Some(a_xy) {
            full.push(a_xy.clone());
        }
        for (_, xy) in on_edge {
            if full.last() != Some(&xy) {
                full.push(xy);
            }
        }
    }
    full
}

fn between(a: &[Rat], b: &[Rat], p: &[Rat]) -> bool {
    for i in 0..a.len() {
        let (lo, hi) = if a[i] <= b[i] {
            (&a[i], &b[i])
        } else {
            (&b[i], &a[i])
        };
        if p[i] < *lo || p[i] > *hi {
            return false;
        }
    }
    true
}

fn param_along(a: &[Rat], b: &[Rat], p: &[Rat]) -> Rat {
    for i in 0..a.len() {
        let d = &b[i] - &a[i];
        if !d.is_zero() {
            return (&p[i] - &a[i]) / d;
        }
    }
    Rat::zero()
}

/// Monotone-chain convex hull, counterclockwise, strict vertices.
fn convex_hull_ccw(pts: &[(RatVec, RatVec)]) -> Vec<(RatVec, RatVec)> {
    let mut sorted: Vec<(RatVec, RatVec)> = pts.to_vec();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    sorted.dedup_by(|a, b| a.0 == b.0);
    if sorted.len() <= 2 {
        return sorted;
    }
    let cross = |o: &RatVec, a: &RatVec, b: &RatVec| -> Rat {
        det2(&vec_sub(a, o), &vec_sub(b, o))
    };
    let mut lower: Vec<(RatVec, RatVec)> = Vec::new();
    for p in &sorted {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2].0, &lower[lower.len() - 1].0, &p.0).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(RatVec, RatVec)> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2].0, &upper[upper.len() - 1].0, &p.0).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Fan triangulation from the lexicographically first ray, recursing on the
/// facets that do not contain it. Returns ordered generator index lists.
fn triangulate_fan(ys: &[RatVec], _dim: usize) -> Result<Vec<Vec<usize>>> {
    let all: Vec<usize> = (0..ys.len()).collect();
    triangulate_subcone(ys, &all)
}

fn triangulate_subcone(ys: &[RatVec], subset: &[usize]) -> Result<Vec<Vec<usize>>> {
    let vectors: Vec<RatVec> = subset.iter().map(|&i| ys[i].clone()).collect();
    let span = RatMatrix::from_rows(vectors.clone());
    let d = span.rank();
    if subset.len() == d {
        return Ok(vec![subset.to_vec()]);
    }
    // Coordinates within the subcone's span.
    let ambient = ys[0].len();
    let lat = LatticeContext::standard(ambient);
    let qd = adapted_basis(&lat, &vectors);
    let inv = qd.adapted.inverse().expect("invertible");
    let coords: Vec<RatVec> = vectors.iter().map(|v| inv.mul_vec(v)[..d].to_vec()).collect();

    // The fan apex ray: lexicographically smallest.
    let apex_pos = (0..subset.len())
        .min_by(|&a, &b| ys[subset[a]].cmp(&ys[subset[b]]))
        .unwrap();

    // Facets: supporting hyperplanes spanned by rank d-1 subsets.
    let m = subset.len();
    let mut facet_sets: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << m) {
        let picked: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        if picked.len() != d - 1 {
            continue;
        }
        let rows: Vec<RatVec> = picked.iter().map(|&i| coords[i].clone()).collect();
        let mat = if rows.is_empty() {
            RatMatrix::zero(0, d)
        } else {
            RatMatrix::from_rows(rows.clone())
        };
        if !rows.is_empty() && mat.rank() != d - 1 {
            continue;
        }
        let normals = mat.kernel();
        if normals.len() != 1 {
            continue;
        }
        let vals: Vec<Rat> = coords.iter().map(|y| dot(&normals[0], y)).collect();
        if vals.iter().any(|v| v.is_positive()) && vals.iter().any(|v| v.is_negative()) {
            continue;
        }
        let on: Vec<usize> = (0..m).filter(|&i| vals[i].is_zero()).collect();
        if on.len() == m {
            continue;
        }
        if !facet_sets.contains(&on) {
            facet_sets.push(on);
        }
    }

    let mut out = Vec::new();
    for facet in facet_sets {
        if facet.contains(&apex_pos) {
            continue;
        }
        let facet_subset: Vec<usize> = facet.iter().map(|&i| subset[i]).collect();
        for mut simplex in triangulate_subcone(ys, &facet_subset)? {
            let mut piece = vec![subset[apex_pos]];
            piece.append(&mut simplex);
            out.push(piece);
        }
    }
    Ok(out)
}

/// A perturbed positive combination of the generators avoiding every facet
/// hyperplane of every piece.
fn generic_interior_point(ys: &[RatVec], simplices: &[Vec<RatVec>]) -> RatVec {
    let k = ys[0].len();
    let mut denom = 2i64;
    loop {
        let mut z = vec![Rat::zero(); k];
        let mut weight = Rat::one();
        let step = Rat::new(BigInt::one(), BigInt::from(denom));
        for y in ys {
            z = vec_add(&z, &vec_scale(y, &weight));
            weight += &step * &weight;
        }
        let generic = simplices.iter().all(|gens| {
            let g = RatMatrix::from_cols(gens.clone());
            match g.inverse() {
                Some(inv) => inv.mul_vec(&z).iter().all(|t| !t.is_zero()),
                None => false,
            }
        });
        if generic {
            return z;
        }
        denom += 1;
        assert!(denom < 1000, "failed to find a generic reference point");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec_from_ints;

    fn z2() -> LatticeContext {
        LatticeContext::standard(2)
    }

    fn cone2(gens: &[[i64; 2]]) -> Cone {
        Cone::from_generators(
            z2(),
            vec_from_ints(&[0, 0]),
            gens.iter().map(|g| vec_from_ints(g)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn unimodular_simplicial_single_piece() {
        let k = cone2(&[[1, 0], [0, 1]]);
        let pieces = halfopen_decompose(&k).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].open_facets.is_empty());
    }

    #[test]
    fn singular_k2_splits_along_inner_ray() {
        // Cone((0,-1),(2,-1)) refines along (1,-1) into two pieces, one of
        // them half-open on the shared wall.
        let k = cone2(&[[0, -1], [2, -1]]);
        let pieces = halfopen_decompose(&k).unwrap();
        assert_eq!(pieces.len(), 2);
        let all_gens: Vec<&RatVec> = pieces.iter().flat_map(|p| &p.generators).collect();
        assert!(all_gens.contains(&&vec_from_ints(&[1, -1])));
        let open_count: usize = pieces.iter().map(|p| p.open_facets.len()).sum();
        assert_eq!(open_count, 1);
    }

    #[test]
    fn four_ray_cone_three_pieces() {
        // First quadrant with interior subdivision rays (1,1) and (1,2):
        // all sectors unimodular, so exactly three pieces.
        let k = cone2(&[[1, 0], [1, 1], [1, 2], [0, 1]]);
        let pieces = halfopen_decompose(&k).unwrap();
        assert_eq!(pieces.len(), 3);
    }

    #[test]
    fn decomposition_partitions_probe_grid() {
        for gens in [
            vec![[0i64, -1], [2, -1]],
            vec![[1, 0], [1, 3]],
            vec![[1, 0], [1, 1], [0, 1]],
            vec![[2, -1], [1, 3]],
        ] {
            let k = cone2(&gens);
            let pieces = halfopen_decompose(&k).unwrap();
            // Rational probe grid.
            for i in -12..=12 {
                for j in -12..=12 {
                    let p = vec![Rat::new(i.into(), 4.into()), Rat::new(j.into(), 4.into())];
                    let inside = k.contains_point(&p);
                    let count = pieces.iter().filter(|hc| hc.contains_point(&p)).count();
                    assert_eq!(
                        count,
                        usize::from(inside),
                        "probe ({i}/4,{j}/4) in cone {gens:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn decomposition_3d_partitions() {
        let lat = LatticeContext::standard(3);
        // Cone over a square: four rays, non-simplicial.
        let k = Cone::from_generators(
            lat,
            vec_from_ints(&[0, 0, 0]),
            vec![
                vec_from_ints(&[1, 0, 1]),
                vec_from_ints(&[0, 1, 1]),
                vec_from_ints(&[-1, 0, 1]),
                vec_from_ints(&[0, -1, 1]),
            ],
        )
        .unwrap();
        let pieces = halfopen_decompose(&k).unwrap();
        assert_eq!(pieces.len(), 2);
        for i in -6i64..=6 {
            for j in -6i64..=6 {
                for l in 0i64..=4 {
                    let p = vec![
                        Rat::new(i.into(), 2.into()),
                        Rat::new(j.into(), 2.into()),
                        Rat::new(l.into(), 2.into()),
                    ];
                    let inside = k.contains_point(&p);
                    let count = pieces.iter().filter(|hc| hc.contains_point(&p)).count();
                    assert_eq!(count, usize::from(inside), "probe {p:?}");
                }
            }
        }
    }

    #[test]
    fn box_points_unimodular() {
        let hc = HalfOpenSimplicialCone::closed(
            z2(),
            vec_from_ints(&[0, 0]),
            vec![vec_from_ints(&[1, 0]), vec_from_ints(&[0, 1])],
        );
        assert_eq!(hc.box_points().unwrap(), vec![vec_from_ints(&[0, 0])]);
    }

    #[test]
    fn box_points_index_two() {
        let hc = HalfOpenSimplicialCone::closed(
            z2(),
            vec_from_ints(&[0, 0]),
            vec![vec_from_ints(&[2, 0]), vec_from_ints(&[0, 1])],
        );
        let pts = hc.box_points().unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.contains(&vec_from_ints(&[0, 0])));
        assert!(pts.contains(&vec_from_ints(&[1, 0])));
    }

    #[test]
    fn box_points_match_volume_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let g1 = vec_from_ints(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
            let g2 = vec_from_ints(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
            if det2(&g1, &g2).is_zero() {
                continue;
            }
            let hc = HalfOpenSimplicialCone::closed(z2(), vec_from_ints(&[0, 0]), vec![g1.clone(), g2.clone()]);
            let count = hc.box_points().unwrap().len();
            let vol = crate::lattice::relative_volume(&[g1, g2], &z2()).unwrap();
            assert_eq!(Rat::from_integer((count as i64).into()), vol);
        }
    }

    #[test]
    fn box_points_fractional_apex() {
        // Shifted box with no lattice point in its affine span.
        let hc = HalfOpenSimplicialCone::closed(
            z2(),
            vec![Rat::new(1.into(), 2.into()), Rat::zero()],
            vec![vec_from_ints(&[1, 0])],
        );
        // Span is the x-axis: lattice points exist; box [1/2, 3/2) has x=1.
        assert_eq!(hc.box_points().unwrap(), vec![vec_from_ints(&[1, 0])]);
        let off_axis = HalfOpenSimplicialCone::closed(
            z2(),
            vec![Rat::zero(), Rat::new(1.into(), 2.into())],
            vec![vec_from_ints(&[1, 0])],
        );
        assert!(off_axis.box_points().unwrap().is_empty());
    }
}
