//! The explicit fibrewise Strøm structure on `(B x B, Δ(B))`: the
//! overlap gauge `v`, the averaged point `μ`, the two-leg path `λ`, the
//! clamp `w`, the gauge `u = min(1, v)`, and the homotopy `h`, together
//! with an exact sampled verification of all their identities.
//!
//! On a pair `(x, y)` with barycentric coordinates `ξ`, `η`:
//!
//! ```text
//!   v(x,y) = 3 - 3 Σ_β min(ξ_β, η_β)             (3 off the overlap set)
//!   μ(x,y) = normalized pointwise min             (needs Σ min > 0)
//!   λ(x,y,t) = (1-2t) x + 2t μ    for t <= 1/2
//!            = (2-2t) μ + (2t-1) y for t >= 1/2
//!   u = min(1, v),   w = clamp of 2 - v to [0, 1]
//!   h((x,y), t) = (λ(x, y, min(t, w)), y)   if v < 3
//!               = (x, y)                     if v > 2
//! ```
//!
//! The two `h` clauses agree on `2 < v < 3` because `w = 0` there; the
//! verifier asserts this instead of assuming it.

use crate::complex::{ComplexError, SimplicialComplex};
use crate::geometry::{BaryPoint, ProductPoint, Region, RegionFacts};
use crate::linalg::{rat, Rat};
use crate::report::{CheckAccumulator, CheckResult, VerificationReport};
use crate::sampling::{product_samples, unit_grid};
use num::{One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StromError {
    #[error("point support {0:?} is not a simplex of this complex")]
    ForeignPoint(Vec<u32>),
    #[error("pair has disjoint supports; the averaged point needs positive overlap")]
    OutsideOverlap,
    #[error("time {0} outside [0, 1]")]
    BadTime(Rat),
}

/// Evaluator bundle for the Strøm data on one complex.
pub struct StromStructure {
    complex: Arc<SimplicialComplex>,
}

impl StromStructure {
    pub fn new(complex: Arc<SimplicialComplex>) -> Self {
        StromStructure { complex }
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    fn check_point(&self, x: &BaryPoint) -> Result<(), StromError> {
        let support = x.support();
        if self.complex.contains(&support) {
            Ok(())
        } else {
            Err(StromError::ForeignPoint(support))
        }
    }

    /// `Σ_β min(ξ_β, η_β)`; 1 exactly when `x = y`, 0 exactly on
    /// disjoint supports.
    pub fn overlap_sum(&self, x: &BaryPoint, y: &BaryPoint) -> Rat {
        let mut acc = Rat::zero();
        for (v, wx) in x.weights() {
            let wy = y.weight(*v);
            acc += if *wx <= wy { wx.clone() } else { wy };
        }
        acc
    }

    /// `v = 3 (1 - Σ min)`, ranging over `[0, 3]`; `v = 0` iff `x = y`.
    pub fn v(&self, x: &BaryPoint, y: &BaryPoint) -> Result<Rat, StromError> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(rat(3, 1) - rat(3, 1) * self.overlap_sum(x, y))
    }

    /// Milnor's averaged point `μ(x, y)`: the normalized pointwise
    /// minimum. Needs positive overlap.
    pub fn mu(&self, x: &BaryPoint, y: &BaryPoint) -> Result<BaryPoint, StromError> {
        self.check_point(x)?;
        self.check_point(y)?;
        let total = self.overlap_sum(x, y);
        if total.is_zero() {
            return Err(StromError::OutsideOverlap);
        }
        let mut weights = Vec::new();
        for (v, wx) in x.weights() {
            let wy = y.weight(*v);
            let m = if *wx <= wy { wx.clone() } else { wy };
            if !m.is_zero() {
                weights.push((*v, m / &total));
            }
        }
        BaryPoint::new(&self.complex, weights).map_err(|_| StromError::OutsideOverlap)
    }

    /// The two-leg path `x -> μ -> y`, affine on each half.
    pub fn lambda(&self, x: &BaryPoint, y: &BaryPoint, t: &Rat) -> Result<BaryPoint, StromError> {
        if *t < Rat::zero() || *t > Rat::one() {
            return Err(StromError::BadTime(t.clone()));
        }
        let mu = self.mu(x, y)?;
        let half = rat(1, 2);
        let carried = |r: Result<BaryPoint, ComplexError>| {
            r.map_err(|e| match e {
                ComplexError::UnknownSimplex(v) => StromError::ForeignPoint(v),
                _ => StromError::OutsideOverlap,
            })
        };
        if *t <= half {
            let s = t * rat(2, 1);
            carried(BaryPoint::convex(&self.complex, x, &mu, &s))
        } else {
            let s = (t - half) * rat(2, 1);
            carried(BaryPoint::convex(&self.complex, &mu, y, &s))
        }
    }

    /// Clamp of `2 - v` to `[0, 1]`.
    pub fn w(&self, x: &BaryPoint, y: &BaryPoint) -> Result<Rat, StromError> {
        let v = self.v(x, y)?;
        Ok(w_of_v(&v))
    }

    /// The gauge `u = min(1, v)`; `u^{-1}(0) = Δ`, `u^{-1}([0,1)) = U`.
    pub fn u(&self, x: &BaryPoint, y: &BaryPoint) -> Result<Rat, StromError> {
        let v = self.v(x, y)?;
        Ok(if v < Rat::one() { v } else { Rat::one() })
    }

    /// `u` on a product point; panics on points of a foreign complex
    /// (region closures only ever see points of this one).
    pub fn u_value(&self, p: &ProductPoint) -> Rat {
        self.u(&p.first, &p.second).expect("point of this complex")
    }

    /// The compression homotopy: fibrewise over the second projection,
    /// stationary on the diagonal.
    pub fn h(&self, p: &ProductPoint, t: &Rat) -> Result<ProductPoint, StromError> {
        let v = self.v(&p.first, &p.second)?;
        if v >= rat(2, 1) {
            // w = 0 there, so the moving clause would sit at λ(·,·,0) = x;
            // return (x, y) directly, which is also the v > 2 clause
            return Ok(p.clone());
        }
        let w = w_of_v(&v);
        let clamped = if *t <= w { t.clone() } else { w };
        let first = self.lambda(&p.first, &p.second, &clamped)?;
        Ok(ProductPoint::new(first, p.second.clone()))
    }

    /// `r(p) = h(p, 1)`.
    pub fn retraction(&self, p: &ProductPoint) -> Result<ProductPoint, StromError> {
        self.h(p, &Rat::one())
    }

    /// Piecewise-linear breakpoints of `t -> h(p, t)`.
    pub fn h_breakpoints(&self, p: &ProductPoint) -> Vec<Rat> {
        let v = self.v(&p.first, &p.second).expect("point of this complex");
        let w = w_of_v(&v);
        let mut times = vec![Rat::zero(), Rat::one()];
        if !w.is_zero() {
            times.push(w.clone());
            let half = rat(1, 2);
            if w > half {
                times.push(half);
            }
        }
        times.sort();
        times.dedup();
        times
    }

    /// `{u < bound}`, an open neighbourhood of the diagonal when
    /// `bound > 0`.
    pub fn u_sublevel(self: &Arc<Self>, bound: Rat) -> Region<ProductPoint> {
        let me = self.clone();
        let positive = bound > Rat::zero();
        let facts = RegionFacts {
            contains_diagonal: Some(positive),
            diagonal_disjoint: Some(!positive),
            closed_under_diag_proj: if positive { Some(true) } else { None },
        };
        let b = bound.clone();
        Region::new(format!("u<{bound}"), facts, move |p: &ProductPoint| {
            me.u_value(p) < b
        })
    }

    /// `{u > bound}` for `bound >= 0`; misses the diagonal entirely.
    pub fn u_superlevel(self: &Arc<Self>, bound: Rat) -> Region<ProductPoint> {
        assert!(bound >= Rat::zero());
        let me = self.clone();
        let facts = RegionFacts {
            contains_diagonal: Some(false),
            diagonal_disjoint: Some(true),
            closed_under_diag_proj: Some(false),
        };
        let b = bound.clone();
        Region::new(format!("u>{bound}"), facts, move |p: &ProductPoint| {
            me.u_value(p) > b
        })
    }

    /// The off-diagonal set `{x != y}`.
    pub fn off_diagonal(self: &Arc<Self>) -> Region<ProductPoint> {
        let facts = RegionFacts {
            contains_diagonal: Some(false),
            diagonal_disjoint: Some(true),
            closed_under_diag_proj: Some(false),
        };
        Region::new("x≠y", facts, move |p: &ProductPoint| !p.is_diagonal())
    }

    /// The square of the open star of a vertex: both coordinates carry
    /// positive weight at `beta`. Closed under the diagonal projection.
    pub fn star_square(self: &Arc<Self>, beta: u32) -> Region<ProductPoint> {
        let facts = RegionFacts {
            contains_diagonal: Some(false),
            diagonal_disjoint: Some(false),
            closed_under_diag_proj: Some(true),
        };
        Region::new(format!("star({beta})²"), facts, move |p: &ProductPoint| {
            p.first.weight(beta) > Rat::zero() && p.second.weight(beta) > Rat::zero()
        })
    }

    /// All of `B x B`.
    pub fn full(self: &Arc<Self>) -> Region<ProductPoint> {
        let facts = RegionFacts {
            contains_diagonal: Some(true),
            diagonal_disjoint: Some(false),
            closed_under_diag_proj: Some(true),
        };
        Region::new("B×B", facts, |_: &ProductPoint| true)
    }
}

fn w_of_v(v: &Rat) -> Rat {
    if *v <= Rat::one() {
        Rat::one()
    } else if *v >= rat(2, 1) {
        Rat::zero()
    } else {
        rat(2, 1) - v
    }
}

/// Runs the identity suite on `samples` seeded product points plus the
/// diagonal vertex points, with the canonical `h`.
pub fn verify_strom(
    name: &str,
    complex: &Arc<SimplicialComplex>,
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let strom = StromStructure::new(complex.clone());
    let h = |p: &ProductPoint, t: &Rat| strom.h(p, t).expect("total on the complex");
    verify_strom_with(name, complex, &h, samples, seed)
}

/// Same suite with an injected homotopy evaluator; lets callers exercise
/// deliberately broken variants and watch the checks catch them.
pub fn verify_strom_with(
    name: &str,
    complex: &Arc<SimplicialComplex>,
    h: &dyn Fn(&ProductPoint, &Rat) -> ProductPoint,
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let strom = StromStructure::new(complex.clone());
    let mut report = VerificationReport::new(name, samples);
    if samples == 0 {
        report.push(CheckResult::warn(
            "nonempty_sample_set",
            "no samples requested; all checks vacuous",
        ));
        return report;
    }
    let points = product_samples(complex, samples, seed);
    let t_grid = unit_grid(4);

    let mut gauge_ranges = CheckAccumulator::new("gauge_ranges");
    let mut u_zero_iff_diagonal = CheckAccumulator::new("u_zero_iff_diagonal");
    let mut w_matches_v = CheckAccumulator::new("w_matches_v_bands");
    let mut h_identity_at_zero = CheckAccumulator::new("h_identity_at_zero");
    let mut h_fibrewise = CheckAccumulator::new("h_fibrewise_second_projection");
    let mut h_pointed = CheckAccumulator::new("h_pointed_on_diagonal");
    let mut h_compresses = CheckAccumulator::new("h_lands_on_diagonal_for_u_lt_1");
    let mut branch_agreement = CheckAccumulator::new("h_branch_agreement_on_2_lt_v_lt_3");
    let mut mu_symmetric = CheckAccumulator::new("mu_symmetric_and_fixed_on_diagonal");
    let mut lambda_endpoints = CheckAccumulator::new("lambda_endpoints_and_midpoint");
    let mut v_lipschitz = CheckAccumulator::new("v_lipschitz_in_l1");
    let mut v_convex = CheckAccumulator::new("v_midpoint_convexity_on_segments");

    let one = Rat::one();
    let two = rat(2, 1);
    let three = rat(3, 1);
    for (i, p) in points.iter().enumerate() {
        let x = &p.first;
        let y = &p.second;
        let v = strom.v(x, y).expect("sampled point");
        let u = strom.u(x, y).expect("sampled point");
        let w = strom.w(x, y).expect("sampled point");

        gauge_ranges.record(
            v >= Rat::zero()
                && v <= three
                && u >= Rat::zero()
                && u <= one
                && w >= Rat::zero()
                && w <= one,
            || format!("sample {i}: v={v} u={u} w={w}"),
        );
        u_zero_iff_diagonal.record(u.is_zero() == p.is_diagonal(), || {
            format!("sample {i}: u={u} at {p:?}")
        });
        let expected_w = w_of_v(&v);
        w_matches_v.record(
            w == expected_w && u == if v < one { v.clone() } else { one.clone() },
            || format!("sample {i}: v={v} w={w} u={u}"),
        );

        let at_zero = h(p, &Rat::zero());
        h_identity_at_zero.record(at_zero == *p, || format!("sample {i}: h(p,0)={at_zero:?}"));
        for t in &t_grid {
            let ht = h(p, t);
            h_fibrewise.record(ht.second == p.second, || {
                format!("sample {i}: t={t} second coordinate moved")
            });
            if p.is_diagonal() {
                h_pointed.record(ht == *p, || format!("sample {i}: t={t} diagonal moved"));
            }
            if v > two && v < three {
                // both clauses are in force here: the moving one with the
                // clamp min(t, w) = 0, and the stationary one
                let clamped = if *t <= w { t.clone() } else { w.clone() };
                let moving = ProductPoint::new(
                    strom.lambda(x, y, &clamped).expect("overlap since v < 3"),
                    y.clone(),
                );
                branch_agreement.record(ht == *p && moving == *p, || {
                    format!("sample {i}: t={t} v={v}: clauses give {ht:?} vs {moving:?}")
                });
            }
        }
        if u < one {
            let at_one = h(p, &one);
            h_compresses.record(at_one.is_diagonal() && at_one.second == p.second, || {
                format!("sample {i}: u={u} h(p,1)={at_one:?}")
            });
        }

        if !strom.overlap_sum(x, y).is_zero() {
            let mu_xy = strom.mu(x, y).expect("overlap");
            let mu_yx = strom.mu(y, x).expect("overlap");
            let fixed = if p.is_diagonal() { mu_xy == *x } else { true };
            mu_symmetric.record(mu_xy == mu_yx && fixed, || format!("sample {i}"));
            let l0 = strom.lambda(x, y, &Rat::zero()).expect("overlap");
            let l1 = strom.lambda(x, y, &one).expect("overlap");
            let lh = strom.lambda(x, y, &rat(1, 2)).expect("overlap");
            lambda_endpoints.record(l0 == *x && l1 == *y && lh == mu_xy, || {
                format!("sample {i}: λ endpoints {l0:?} {l1:?} mid {lh:?}")
            });
        }

        // pair consecutive samples for the continuity certificates
        if i + 1 < points.len() {
            let q = &points[i + 1];
            let vq = strom.v(&q.first, &q.second).expect("sampled point");
            let uq = strom.u(&q.first, &q.second).expect("sampled point");
            let wq = strom.w(&q.first, &q.second).expect("sampled point");
            let bound = three.clone()
                * (BaryPoint::l1_distance(x, &q.first) + BaryPoint::l1_distance(y, &q.second));
            let dv = if v >= vq { &v - &vq } else { &vq - &v };
            let du = if u >= uq { &u - &uq } else { &uq - &u };
            let dw = if w >= wq { &w - &wq } else { &wq - &w };
            // u and w are clamps of v, so their variation is bounded by
            // the variation of v, which is 3-Lipschitz in L1
            v_lipschitz.record(dv <= bound && du <= dv && dw <= dv, || {
                format!(
                    "samples {i},{}: |Δv|={dv} bound={bound} |Δu|={du} |Δw|={dw}",
                    i + 1
                )
            });
            let carrier_x = union_support(x, &q.first);
            let carrier_y = union_support(y, &q.second);
            if complex.contains(&carrier_x) && complex.contains(&carrier_y) {
                let half = rat(1, 2);
                let mx = BaryPoint::convex(complex, x, &q.first, &half).expect("carrier");
                let my = BaryPoint::convex(complex, y, &q.second, &half).expect("carrier");
                let vm = strom.v(&mx, &my).expect("sampled point");
                let avg = (&v + &vq) / rat(2, 1);
                v_convex.record(vm <= avg, || {
                    format!("samples {i},{}: v(mid)={vm} > avg={avg}", i + 1)
                });
            }
        }
    }

    report.push(gauge_ranges.finish());
    report.push(u_zero_iff_diagonal.finish());
    report.push(w_matches_v.finish());
    report.push(h_identity_at_zero.finish());
    report.push(h_fibrewise.finish());
    report.push(h_pointed.finish());
    report.push(h_compresses.finish());
    report.push(branch_agreement.finish());
    report.push(mu_symmetric.finish());
    report.push(lambda_endpoints.finish());
    report.push(v_lipschitz.finish());
    report.push(v_convex.finish());
    report
}

fn union_support(a: &BaryPoint, b: &BaryPoint) -> Vec<u32> {
    let mut s = a.support();
    s.extend(b.support());
    s.sort_unstable();
    s.dedup();
    s
}
