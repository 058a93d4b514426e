//! The two explicit reparametrization combinators: lifting a homotopy of
//! endpoint pairs through the path fibration, and extending a homotopy of
//! the two track ends through the track cofibration.
//!
//! Both are pure evaluators over abstract callables; the `(s, t)` branch
//! structure is
//!
//! ```text
//!   t in [0, s/3]          replay the endpoint homotopy backwards
//!   t in [s/3, (3-s)/3]    the original data, reparametrized by
//!                          (3t - s)/(3 - 2s)
//!   t in [(3-s)/3, 1]      replay the endpoint homotopy forwards
//! ```
//!
//! with the degenerate rows at the seams spelled out so seam agreement
//! can be asserted rather than assumed.

use crate::linalg::Rat;
use crate::report::{CheckAccumulator, VerificationReport};
use crate::sampling::{random_times, unit_grid};
use num::{One, Zero};
use std::fmt::Debug;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FibrewiseError {
    #[error("not a lift: the endpoint homotopy does not start at the path endpoints ({0})")]
    NotALift(String),
    #[error("not an extension: the end homotopy does not start at the restricted map ({0})")]
    NotAnExtension(String),
}

type Eval2<A, B, P> = Arc<dyn Fn(&A, &B) -> P + Send + Sync>;

/// A family of paths `φ(w)(t)`, one per parameter point.
pub struct PathFamily<W, P> {
    eval: Eval2<W, Rat, P>,
}

impl<W, P> Clone for PathFamily<W, P> {
    fn clone(&self) -> Self {
        PathFamily {
            eval: self.eval.clone(),
        }
    }
}

impl<W, P> PathFamily<W, P> {
    pub fn new(eval: impl Fn(&W, &Rat) -> P + Send + Sync + 'static) -> Self {
        PathFamily {
            eval: Arc::new(eval),
        }
    }

    pub fn at(&self, w: &W, t: &Rat) -> P {
        (self.eval)(w, t)
    }
}

/// A homotopy of endpoint pairs `H(w, s) = (p0, p1)`.
pub struct EndpointHomotopy<W, P> {
    eval: Eval2<W, Rat, (P, P)>,
}

impl<W, P> Clone for EndpointHomotopy<W, P> {
    fn clone(&self) -> Self {
        EndpointHomotopy {
            eval: self.eval.clone(),
        }
    }
}

impl<W, P> EndpointHomotopy<W, P> {
    pub fn new(eval: impl Fn(&W, &Rat) -> (P, P) + Send + Sync + 'static) -> Self {
        EndpointHomotopy {
            eval: Arc::new(eval),
        }
    }

    pub fn at(&self, w: &W, s: &Rat) -> (P, P) {
        (self.eval)(w, s)
    }
}

/// The lifted homotopy: a path family in `(w, s)` whose value at `s = 0`
/// is the original family and whose endpoints track the endpoint
/// homotopy.
pub struct LiftedHomotopy<W, P> {
    phi: PathFamily<W, P>,
    h: EndpointHomotopy<W, P>,
}

impl<W, P: Clone + PartialEq + Debug> LiftedHomotopy<W, P> {
    /// Evaluates the lifted path at `(w, s, t)`:
    ///
    /// * `t = 0` — first endpoint at homotopy time `s`;
    /// * `0 < t < s/3` — first endpoint replayed backwards
    ///   (`s - 3t`);
    /// * `t = s/3` — the path start `φ(w)(0)`;
    /// * `s/3 < t < (3-s)/3` — `φ(w)((3t-s)/(3-2s))`;
    /// * `t = (3-s)/3` — the path end `φ(w)(1)`;
    /// * `(3-s)/3 < t < 1` — second endpoint forwards (`3t - 3 + s`);
    /// * `t = 1` — second endpoint at homotopy time `s`.
    pub fn at(&self, w: &W, s: &Rat, t: &Rat) -> P {
        let three_t = t * crate::linalg::rat(3, 1);
        let upper = Rat::from_integer(3.into()) - s;
        if t.is_zero() {
            return self.h.at(w, s).0;
        }
        if three_t < *s {
            return self.h.at(w, &(s - &three_t)).0;
        }
        if three_t == *s {
            return self.phi.at(w, &Rat::zero());
        }
        if three_t < upper {
            let denom = Rat::from_integer(3.into()) - s * crate::linalg::rat(2, 1);
            return self.phi.at(w, &((three_t - s) / denom));
        }
        if three_t == upper {
            return self.phi.at(w, &Rat::one());
        }
        if *t < Rat::one() {
            return self.h.at(w, &(three_t - Rat::from_integer(3.into()) + s)).1;
        }
        self.h.at(w, s).1
    }
}

/// Lifts `h` through the endpoint projection of `phi`, after checking
/// `h(w, 0) = (φ(w)(0), φ(w)(1))` at the given parameter probes.
pub fn lift_homotopy<W: Debug, P: Clone + PartialEq + Debug>(
    phi: &PathFamily<W, P>,
    h: &EndpointHomotopy<W, P>,
    probes: &[W],
) -> Result<LiftedHomotopy<W, P>, FibrewiseError> {
    for w in probes {
        let (p0, p1) = h.at(w, &Rat::zero());
        if p0 != phi.at(w, &Rat::zero()) || p1 != phi.at(w, &Rat::one()) {
            return Err(FibrewiseError::NotALift(format!("{w:?}")));
        }
    }
    Ok(LiftedHomotopy {
        phi: phi.clone(),
        h: h.clone(),
    })
}

/// A point of the reduced track: a pair `(z, time)`, with every section
/// point collapsed across times by the maps that consume it.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackPoint<Z> {
    pub z: Z,
    pub time: Rat,
}

type Eval1<A, P> = Arc<dyn Fn(&A) -> P + Send + Sync>;

/// A map off the reduced track.
pub struct TrackMap<Z, P> {
    eval: Eval1<TrackPoint<Z>, P>,
}

impl<Z, P> Clone for TrackMap<Z, P> {
    fn clone(&self) -> Self {
        TrackMap {
            eval: self.eval.clone(),
        }
    }
}

impl<Z, P> TrackMap<Z, P> {
    pub fn new(eval: impl Fn(&TrackPoint<Z>) -> P + Send + Sync + 'static) -> Self {
        TrackMap {
            eval: Arc::new(eval),
        }
    }

    pub fn at(&self, q: &TrackPoint<Z>) -> P {
        (self.eval)(q)
    }
}

/// Which end of the two-ended wedge a homotopy argument sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeEnd {
    Start,
    End,
}

type EndEval<Z, P> = Arc<dyn Fn(WedgeEnd, &Z, &Rat) -> P + Send + Sync>;

/// A homotopy of the two track ends.
pub struct WedgeHomotopy<Z, P> {
    eval: EndEval<Z, P>,
}

impl<Z, P> Clone for WedgeHomotopy<Z, P> {
    fn clone(&self) -> Self {
        WedgeHomotopy {
            eval: self.eval.clone(),
        }
    }
}

impl<Z, P> WedgeHomotopy<Z, P> {
    pub fn new(eval: impl Fn(WedgeEnd, &Z, &Rat) -> P + Send + Sync + 'static) -> Self {
        WedgeHomotopy {
            eval: Arc::new(eval),
        }
    }

    pub fn at(&self, end: WedgeEnd, z: &Z, s: &Rat) -> P {
        (self.eval)(end, z, s)
    }
}

/// The extended homotopy over the whole track.
pub struct ExtendedHomotopy<Z, P> {
    phi: TrackMap<Z, P>,
    h: WedgeHomotopy<Z, P>,
}

impl<Z: Clone, P: Clone + PartialEq + Debug> ExtendedHomotopy<Z, P> {
    /// Evaluates at `(q(z, t), s)`:
    ///
    /// * `0 <= t < s/3` — start end backwards (`s - 3t`);
    /// * `t = s/3` — `φ(q(z, 0))`;
    /// * `s/3 < t < (3-s)/3` — `φ(q(z, (3t-s)/(3-2s)))`;
    /// * `t = (3-s)/3` — `φ(q(z, 1))`;
    /// * `(3-s)/3 < t <= 1` — end forwards (`3t - 3 + s`).
    pub fn at(&self, q: &TrackPoint<Z>, s: &Rat) -> P {
        let three_t = &q.time * crate::linalg::rat(3, 1);
        let upper = Rat::from_integer(3.into()) - s;
        if three_t < *s {
            return self.h.at(WedgeEnd::Start, &q.z, &(s - &three_t));
        }
        if three_t == *s {
            return self.phi.at(&TrackPoint {
                z: q.z.clone(),
                time: Rat::zero(),
            });
        }
        if three_t < upper {
            let denom = Rat::from_integer(3.into()) - s * crate::linalg::rat(2, 1);
            let inner = (three_t - s) / denom;
            return self.phi.at(&TrackPoint {
                z: q.z.clone(),
                time: inner,
            });
        }
        if three_t == upper {
            return self.phi.at(&TrackPoint {
                z: q.z.clone(),
                time: Rat::one(),
            });
        }
        self.h.at(
            WedgeEnd::End,
            &q.z,
            &(three_t - Rat::from_integer(3.into()) + s),
        )
    }
}

/// Extends `h` across the track of `phi`, after checking end
/// compatibility `h(in_k(z), 0) = φ(q(z, k))` at the given probes.
pub fn extend_homotopy<Z: Clone + Debug, P: Clone + PartialEq + Debug>(
    phi: &TrackMap<Z, P>,
    h: &WedgeHomotopy<Z, P>,
    probes: &[Z],
) -> Result<ExtendedHomotopy<Z, P>, FibrewiseError> {
    for z in probes {
        let s0 = h.at(WedgeEnd::Start, z, &Rat::zero());
        let e0 = h.at(WedgeEnd::End, z, &Rat::zero());
        let q0 = phi.at(&TrackPoint {
            z: z.clone(),
            time: Rat::zero(),
        });
        let q1 = phi.at(&TrackPoint {
            z: z.clone(),
            time: Rat::one(),
        });
        if s0 != q0 || e0 != q1 {
            return Err(FibrewiseError::NotAnExtension(format!("{z:?}")));
        }
    }
    Ok(ExtendedHomotopy {
        phi: phi.clone(),
        h: h.clone(),
    })
}

/// Checks the lifting laws on a `(s, t)` grid plus random times, for each
/// parameter probe: value at `s = 0` is the original path family, the
/// endpoints equal the endpoint homotopy, and the four branch formulas
/// agree at the two seams.
#[allow(clippy::too_many_arguments)]
pub fn verify_lift<W: Debug, P: Clone + PartialEq + Debug>(
    name: &str,
    phi: &PathFamily<W, P>,
    h: &EndpointHomotopy<W, P>,
    lifted: &LiftedHomotopy<W, P>,
    probes: &[W],
    grid: i64,
    random: usize,
    seed: u64,
) -> VerificationReport {
    let mut report = VerificationReport::new(name, probes.len());
    let grid_times = unit_grid(grid);
    let extra = random_times(random, seed);
    let mut starts_at_phi = CheckAccumulator::new("lift_restricts_to_original_at_s0");
    let mut endpoints = CheckAccumulator::new("lift_endpoints_track_the_homotopy");
    let mut seams = CheckAccumulator::new("lift_branch_seam_agreement");
    let three = Rat::from_integer(3.into());
    for (i, w) in probes.iter().enumerate() {
        for t in grid_times.iter().chain(extra.iter()) {
            let lifted_value = lifted.at(w, &Rat::zero(), t);
            let original = phi.at(w, t);
            starts_at_phi.record(lifted_value == original, || {
                format!("probe {i} t={t}: {lifted_value:?} vs {original:?}")
            });
        }
        for s in grid_times.iter().chain(extra.iter()) {
            let (p0, p1) = h.at(w, s);
            let at0 = lifted.at(w, s, &Rat::zero());
            let at1 = lifted.at(w, s, &Rat::one());
            endpoints.record(at0 == p0 && at1 == p1, || {
                format!("probe {i} s={s}: ends {at0:?},{at1:?} vs {p0:?},{p1:?}")
            });
            // seam t = s/3: backwards replay, the row value, and the
            // reparametrized middle must all agree there
            let seam1 = s / &three;
            let backwards = self::lift_branch_backwards(h, w, s, &seam1);
            let row1 = phi.at(w, &Rat::zero());
            let mid1 = lift_branch_middle(phi, w, s, &seam1);
            // seam t = (3-s)/3
            let seam2 = (&three - s) / &three;
            let forwards = lift_branch_forwards(h, w, s, &seam2);
            let row2 = phi.at(w, &Rat::one());
            let mid2 = lift_branch_middle(phi, w, s, &seam2);
            seams.record(
                backwards == row1 && mid1 == row1 && forwards == row2 && mid2 == row2,
                || format!("probe {i} s={s}: seam values differ"),
            );
        }
    }
    report.push(starts_at_phi.finish());
    report.push(endpoints.finish());
    report.push(seams.finish());
    report
}

fn lift_branch_backwards<W, P>(h: &EndpointHomotopy<W, P>, w: &W, s: &Rat, t: &Rat) -> P {
    h.at(w, &(s - t * crate::linalg::rat(3, 1))).0
}

fn lift_branch_forwards<W, P>(h: &EndpointHomotopy<W, P>, w: &W, s: &Rat, t: &Rat) -> P {
    h.at(
        w,
        &(t * crate::linalg::rat(3, 1) - Rat::from_integer(3.into()) + s),
    )
    .1
}

fn lift_branch_middle<W, P>(phi: &PathFamily<W, P>, w: &W, s: &Rat, t: &Rat) -> P {
    let denom = Rat::from_integer(3.into()) - s * crate::linalg::rat(2, 1);
    phi.at(w, &((t * crate::linalg::rat(3, 1) - s) / denom))
}

/// Checks the extension laws: value at `s = 0` is the original track map,
/// the two track ends replay the end homotopy, declared section points
/// stay pinned, and the branch formulas agree at the seams.
#[allow(clippy::too_many_arguments)]
pub fn verify_extend<Z: Clone + Debug, P: Clone + PartialEq + Debug>(
    name: &str,
    phi: &TrackMap<Z, P>,
    h: &WedgeHomotopy<Z, P>,
    extended: &ExtendedHomotopy<Z, P>,
    probes: &[Z],
    section_probes: &[(Z, P)],
    grid: i64,
    random: usize,
    seed: u64,
) -> VerificationReport {
    let mut report = VerificationReport::new(name, probes.len());
    let grid_times = unit_grid(grid);
    let extra = random_times(random, seed);
    let mut restricts = CheckAccumulator::new("extension_restricts_to_original_at_s0");
    let mut ends = CheckAccumulator::new("extension_matches_end_homotopy_on_track_ends");
    let mut seams = CheckAccumulator::new("extension_branch_seam_agreement");
    let mut pinned = CheckAccumulator::new("extension_fixes_section_points");
    let three = Rat::from_integer(3.into());
    for (i, z) in probes.iter().enumerate() {
        for t in grid_times.iter().chain(extra.iter()) {
            let q = TrackPoint {
                z: z.clone(),
                time: t.clone(),
            };
            let v = extended.at(&q, &Rat::zero());
            let original = phi.at(&q);
            restricts.record(v == original, || {
                format!("probe {i} t={t}: {v:?} vs {original:?}")
            });
        }
        for s in grid_times.iter().chain(extra.iter()) {
            let start = extended.at(
                &TrackPoint {
                    z: z.clone(),
                    time: Rat::zero(),
                },
                s,
            );
            let end = extended.at(
                &TrackPoint {
                    z: z.clone(),
                    time: Rat::one(),
                },
                s,
            );
            let h0 = h.at(WedgeEnd::Start, z, s);
            let h1 = h.at(WedgeEnd::End, z, s);
            ends.record(start == h0 && end == h1, || {
                format!("probe {i} s={s}: ends {start:?},{end:?} vs {h0:?},{h1:?}")
            });
            let seam1 = s / &three;
            let row1 = phi.at(&TrackPoint {
                z: z.clone(),
                time: Rat::zero(),
            });
            let back = h.at(WedgeEnd::Start, z, &(s - &seam1 * crate::linalg::rat(3, 1)));
            let seam2 = (&three - s) / &three;
            let row2 = phi.at(&TrackPoint {
                z: z.clone(),
                time: Rat::one(),
            });
            let fwd = h.at(
                WedgeEnd::End,
                z,
                &(&seam2 * crate::linalg::rat(3, 1) - &three + s),
            );
            seams.record(back == row1 && fwd == row2, || {
                format!("probe {i} s={s}: seam values differ")
            });
        }
    }
    for (i, (z, expected)) in section_probes.iter().enumerate() {
        for t in grid_times.iter() {
            for s in grid_times.iter() {
                let v = extended.at(
                    &TrackPoint {
                        z: z.clone(),
                        time: t.clone(),
                    },
                    s,
                );
                pinned.record(v == *expected, || {
                    format!("section probe {i} t={t} s={s}: {v:?} vs {expected:?}")
                });
            }
        }
    }
    report.push(restricts.finish());
    report.push(ends.finish());
    report.push(seams.finish());
    if !section_probes.is_empty() {
        report.push(pinned.finish());
    }
    report
}

/// The compression-homotopy instantiation of the lifting combinator on a
/// complex: paths are the fibrewise compression paths of product points,
/// and the endpoint homotopy slides the start along the compression while
/// pinning the end at the retraction. Checks the boundary and seam laws
/// plus fibrewise coherence of every value on the full `(s, t)` grid.
pub fn verify_lift_on_strom(
    name: &str,
    complex: &std::sync::Arc<crate::complex::SimplicialComplex>,
    samples: usize,
    seed: u64,
    grid: i64,
    random: usize,
) -> Result<VerificationReport, FibrewiseError> {
    use crate::geometry::ProductPoint;
    use crate::strom::StromStructure;

    let strom = Arc::new(StromStructure::new(complex.clone()));
    let s1 = strom.clone();
    let phi = PathFamily::new(move |w: &ProductPoint, t: &Rat| s1.h(w, t).expect("total"));
    let s2 = strom.clone();
    let h = EndpointHomotopy::new(move |w: &ProductPoint, s: &Rat| {
        let third = s / crate::linalg::rat(3, 1);
        (
            s2.h(w, &third).expect("total"),
            s2.retraction(w).expect("total"),
        )
    });
    let probe_count = (samples / 50).clamp(8, 64);
    let probes = crate::sampling::product_samples(complex, probe_count, seed);
    let lifted = lift_homotopy(&phi, &h, &probes)?;
    let mut report = verify_lift(name, &phi, &h, &lifted, &probes, grid, random, seed);
    // fibrewise coherence: every lifted value stays in the fibre of its
    // parameter point
    let mut fibre = CheckAccumulator::new("lift_values_stay_in_the_fibre");
    let grid_times = unit_grid(grid);
    for (i, w) in probes.iter().enumerate() {
        for s in &grid_times {
            for t in &grid_times {
                let value = lifted.at(w, s, t);
                fibre.record(value.second == w.second, || {
                    format!("probe {i} s={s} t={t}: left the fibre")
                });
            }
        }
    }
    report.push(fibre.finish());
    // a homotopy constant in s freezes the lifted endpoints
    let s3 = strom.clone();
    let frozen = EndpointHomotopy::new(move |w: &ProductPoint, _s: &Rat| {
        (w.clone(), s3.retraction(w).expect("total"))
    });
    let lifted_frozen = lift_homotopy(&phi, &frozen, &probes)?;
    let mut constant_ends = CheckAccumulator::new("lift_of_constant_homotopy_freezes_endpoints");
    for (i, w) in probes.iter().enumerate() {
        let expect0 = w.clone();
        let expect1 = strom.retraction(w).expect("total");
        for s in &grid_times {
            let at0 = lifted_frozen.at(w, s, &Rat::zero());
            let at1 = lifted_frozen.at(w, s, &Rat::one());
            constant_ends.record(at0 == expect0 && at1 == expect1, || {
                format!("probe {i} s={s}: endpoints moved")
            });
        }
    }
    report.push(constant_ends.finish());
    Ok(report)
}

/// The compression-homotopy instantiation of the extension combinator:
/// the track map is the compression itself (well defined on the reduced
/// track since the compression is stationary on the diagonal), the start
/// end deforms along the compression and the far end is pinned at the
/// retraction. Diagonal points act as the section and must stay pinned.
pub fn verify_extend_on_strom(
    name: &str,
    complex: &std::sync::Arc<crate::complex::SimplicialComplex>,
    samples: usize,
    seed: u64,
    grid: i64,
    random: usize,
) -> Result<VerificationReport, FibrewiseError> {
    use crate::geometry::{BaryPoint, ProductPoint};
    use crate::strom::StromStructure;

    let strom = Arc::new(StromStructure::new(complex.clone()));
    let s1 = strom.clone();
    let phi =
        TrackMap::new(move |q: &TrackPoint<ProductPoint>| s1.h(&q.z, &q.time).expect("total"));
    let s2 = strom.clone();
    let h = WedgeHomotopy::new(move |end: WedgeEnd, z: &ProductPoint, s: &Rat| match end {
        WedgeEnd::Start => s2.h(z, s).expect("total"),
        WedgeEnd::End => s2.retraction(z).expect("total"),
    });
    let probe_count = (samples / 50).clamp(8, 64);
    let probes = crate::sampling::product_samples(complex, probe_count, seed);
    let extended = extend_homotopy(&phi, &h, &probes)?;
    let sections: Vec<(ProductPoint, ProductPoint)> = (0..complex.vertex_count() as u32)
        .map(|v| {
            let b = BaryPoint::vertex(complex, v).expect("vertex");
            let d = ProductPoint::diagonal(b);
            (d.clone(), d)
        })
        .collect();
    let mut report = verify_extend(
        name, &phi, &h, &extended, &probes, &sections, grid, random, seed,
    );
    let mut fibre = CheckAccumulator::new("extension_values_stay_in_the_fibre");
    let grid_times = unit_grid(grid);
    for (i, z) in probes.iter().enumerate() {
        for t in &grid_times {
            for s in &grid_times {
                let value = extended.at(
                    &TrackPoint {
                        z: z.clone(),
                        time: t.clone(),
                    },
                    s,
                );
                fibre.record(value.second == z.second, || {
                    format!("probe {i} t={t} s={s}: left the fibre")
                });
            }
        }
    }
    report.push(fibre.finish());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    // a concrete fixture over rational points on a line: paths are affine
    fn affine_phi() -> PathFamily<Rat, Rat> {
        PathFamily::new(|w: &Rat, t: &Rat| w + t * rat(2, 1))
    }

    #[test]
    fn lift_reproduces_phi_at_s0() {
        let phi = affine_phi();
        let h = EndpointHomotopy::new(|w: &Rat, s: &Rat| (w - s, w + rat(2, 1) + s));
        let probes: Vec<Rat> = (0..5).map(|i| rat(i, 3)).collect();
        let lifted = lift_homotopy(&phi, &h, &probes).unwrap();
        for w in &probes {
            for t in unit_grid(7) {
                assert_eq!(lifted.at(w, &Rat::zero(), &t), phi.at(w, &t));
            }
            for s in unit_grid(5) {
                let (p0, p1) = h.at(w, &s);
                assert_eq!(lifted.at(w, &s, &Rat::zero()), p0);
                assert_eq!(lifted.at(w, &s, &Rat::one()), p1);
            }
        }
        let report = verify_lift("line", &phi, &h, &lifted, &probes, 10, 20, 3);
        assert!(report.all_pass(), "{:?}", report.failing());
    }

    #[test]
    fn lift_rejects_mismatched_homotopy() {
        let phi = affine_phi();
        let bad = EndpointHomotopy::new(|w: &Rat, _s: &Rat| (w + rat(1, 7), w.clone()));
        let probes = vec![rat(1, 2)];
        assert!(matches!(
            lift_homotopy(&phi, &bad, &probes),
            Err(FibrewiseError::NotALift(_))
        ));
    }

    #[test]
    fn constant_endpoint_homotopy_freezes_the_ends() {
        let phi = affine_phi();
        let h = EndpointHomotopy::new(|w: &Rat, _s: &Rat| (w.clone(), w + rat(2, 1)));
        let probes = vec![rat(0, 1), rat(5, 4)];
        let lifted = lift_homotopy(&phi, &h, &probes).unwrap();
        for w in &probes {
            for s in unit_grid(6) {
                assert_eq!(lifted.at(w, &s, &Rat::zero()), w.clone());
                assert_eq!(lifted.at(w, &s, &Rat::one()), w + rat(2, 1));
            }
        }
    }

    #[test]
    fn lift_at_s1_replays_ends_and_compresses_the_middle() {
        let phi = affine_phi();
        let h = EndpointHomotopy::new(|w: &Rat, s: &Rat| (w - s, w + rat(2, 1) + s));
        let probes = vec![rat(1, 1)];
        let lifted = lift_homotopy(&phi, &h, &probes).unwrap();
        let w = rat(1, 1);
        let one = Rat::one();
        // t = 1/6 sits in the backwards third: value = p0 at time 1 - 1/2
        assert_eq!(lifted.at(&w, &one, &rat(1, 6)), h.at(&w, &rat(1, 2)).0);
        // t = 1/2 sits mid-path: (3t-1)/(3-2) = 1/2
        assert_eq!(lifted.at(&w, &one, &rat(1, 2)), phi.at(&w, &rat(1, 2)));
        // t = 5/6: forwards third at time 3t-2 = 1/2
        assert_eq!(lifted.at(&w, &one, &rat(5, 6)), h.at(&w, &rat(1, 2)).1);
    }

    #[test]
    fn extension_laws_on_a_line_track() {
        // φ(q(z,t)) = z + t, ends deformed affinely, z = 0 pinned
        let phi = TrackMap::new(|q: &TrackPoint<Rat>| {
            if q.z.is_zero() {
                Rat::zero()
            } else {
                &q.z + &q.time
            }
        });
        let h = WedgeHomotopy::new(|end, z: &Rat, s: &Rat| {
            if z.is_zero() {
                return Rat::zero();
            }
            match end {
                WedgeEnd::Start => z - s,
                WedgeEnd::End => z + Rat::one() + s,
            }
        });
        let probes: Vec<Rat> = (1..5).map(|i| rat(i, 2)).collect();
        let extended = extend_homotopy(&phi, &h, &probes).unwrap();
        let sections = vec![(Rat::zero(), Rat::zero())];
        let report = verify_extend("line", &phi, &h, &extended, &probes, &sections, 8, 15, 11);
        assert!(report.all_pass(), "{:?}", report.failing());
        // spot values: t = 0 replays the start end
        let z = rat(3, 2);
        let s = rat(1, 2);
        assert_eq!(
            extended.at(
                &TrackPoint {
                    z: z.clone(),
                    time: Rat::zero()
                },
                &s
            ),
            h.at(WedgeEnd::Start, &z, &s)
        );
        assert_eq!(
            extended.at(
                &TrackPoint {
                    z: z.clone(),
                    time: Rat::one()
                },
                &s
            ),
            h.at(WedgeEnd::End, &z, &s)
        );
    }

    #[test]
    fn extension_rejects_incompatible_ends() {
        let phi = TrackMap::new(|q: &TrackPoint<Rat>| &q.z + &q.time);
        let h = WedgeHomotopy::new(|_end, z: &Rat, s: &Rat| z + s + rat(1, 9));
        assert!(matches!(
            extend_homotopy(&phi, &h, &[rat(1, 2)]),
            Err(FibrewiseError::NotAnExtension(_))
        ));
    }
}
