//! Exact Taylor expansion of meromorphic expressions at the origin.
//!
//! Every term is brought over the common product of linear forms (each
//! exponential factor `1/(1-e^z)` contributes `-E(z)^{-1}/z` with the unit
//! series `E(z) = (e^z-1)/z`), the numerator series are summed, and the
//! common linear forms are divided out one by one. A division failure means
//! the function has a genuine pole at the origin.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactmath::{invert_univariate, unit_exp_series, Scalar, TruncSeries};

use super::merofun::MeroFun;
use super::ScalarVec;

/// Scale-normalize a linear-form vector: `(v / c, c)` with `c` the first
/// nonzero coordinate.
fn normalize_form(v: &ScalarVec) -> (ScalarVec, Scalar) {
    let i = v.iter().position(|c| !c.is_zero()).expect("zero form");
    let c = v[i].clone();
    (v.iter().map(|x| x.div(&c)).collect(), c)
}

/// Taylor coefficients of `f` at 0, exact to total degree `order`.
///
/// Terms sharing a denominator signature are grouped so that the expensive
/// series products (the inverted unit-exponential factors) are computed once
/// per group rather than once per fundamental-box point.
pub fn taylor_at_zero(f: &MeroFun, order: usize) -> Result<TruncSeries> {
    let n = f.nvars();

    // Common multiset of scale-normalized linear forms (from both kinds of
    // denominator factors). Terms are grouped by their exponential
    // denominator multiset: the costly series products depend only on that
    // multiset, while the missing linear forms are cheap per-term factors.
    struct PlannedTerm {
        coeff: Scalar,
        point: ScalarVec,
        own: BTreeMap<ScalarVec, usize>,
    }
    let mut groups: BTreeMap<Vec<ScalarVec>, Vec<PlannedTerm>> = BTreeMap::new();
    let mut common: BTreeMap<ScalarVec, usize> = BTreeMap::new();
    for t in f.terms() {
        let mut own: BTreeMap<ScalarVec, usize> = BTreeMap::new();
        let mut scale = Scalar::one();
        for v in t.lin_dens.iter().chain(&t.exp_dens) {
            let (u, c) = normalize_form(v);
            scale = scale.div(&c);
            *own.entry(u).or_insert(0) += 1;
        }
        for (u, m) in &own {
            let e = common.entry(u.clone()).or_insert(0);
            if m > e {
                *e = *m;
            }
        }
        groups
            .entry(t.exp_dens.clone())
            .or_default()
            .push(PlannedTerm {
                coeff: t.coeff.mul(&scale),
                point: t.point.clone(),
                own,
            });
    }
    let total_forms: usize = common.values().sum();
    let work_order = order + total_forms;

    let e_inv = invert_univariate(&unit_exp_series(work_order));
    // The composed series depends only on the direction vector; memoize.
    let mut composed: BTreeMap<ScalarVec, TruncSeries> = BTreeMap::new();

    let mut acc = TruncSeries::zero(n, work_order);
    for (exp_dens, terms) in &groups {
        // Per-term polynomial parts: the exponential of the point times the
        // missing common linear forms (linear passes, no full products).
        let mut num = TruncSeries::zero(n, work_order);
        for t in terms {
            let mut part = TruncSeries::exp_linear(&t.point, work_order).scale(&t.coeff);
            for (u, mult) in &common {
                let have = t.own.get(u).copied().unwrap_or(0);
                for _ in have..*mult {
                    part = part.mul_linear(u);
                }
            }
            num = num.add(&part)?;
        }
        // One multiplication chain per distinct exponential multiset.
        for w in exp_dens {
            let series = composed
                .entry(w.clone())
                .or_insert_with(|| TruncSeries::compose_univariate(&e_inv, w, n, work_order));
            num = num.mul(series)?.scale(&Scalar::from_int(-1));
        }
        acc = acc.add(&num)?;
    }

    // Divide out the common forms; failure signals a genuine pole.
    for (u, mult) in &common {
        for _ in 0..*mult {
            acc = acc.divide_by_linear_form(u)?;
        }
    }
    debug_assert!(acc.valid_order() >= order);
    Ok(acc)
}
