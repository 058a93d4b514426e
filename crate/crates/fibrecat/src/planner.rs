//! Motion planners as covers-with-sections, the section/compression
//! correspondence, and the cover transformations that trade an unpointed
//! cover for a pointed one (at the cost of one extra set, or for free
//! under either of two sufficient conditions).
//!
//! Paths are piecewise linear with simplex-carried segments, the only
//! finitely representable path class compatible with exact arithmetic.
//! Covers and contractions are verified at seeded samples; reports say
//! "validated at N samples", never "proved".

use crate::complex::SimplicialComplex;
use crate::geometry::{BaryPoint, ProductPoint, Region};
use crate::linalg::{rat, Rat};
use crate::report::{CheckAccumulator, CheckResult, VerificationReport};
use crate::sampling::{product_samples, random_times, unit_grid};
use crate::strom::StromStructure;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlannerError {
    #[error("path times must increase from 0 to 1")]
    BadTimeline,
    #[error("segment {0} is not carried by a simplex")]
    CarrierViolation(usize),
    #[error("evaluation time {0} outside [0, 1]")]
    BadTime(Rat),
    #[error("section violates its endpoint contract at {0}")]
    SectionInvalid(String),
    #[error("compression fails to land on the diagonal at {0}")]
    CompressionInvalid(String),
    #[error("compression has no declared piecewise-linear time structure")]
    NoTimeStructure,
    #[error("circle planner needs a subdivision of at least 3, got {0}")]
    FixtureError(usize),
    #[error("planner fixture: {0}")]
    BadFixture(String),
    #[error(
        "no cover set satisfies the requested condition; the equal-size upgrade does not apply"
    )]
    Inapplicable,
    #[error("point lies outside every piece of the cover set")]
    OutsideCover,
}

/// A piecewise-linear path: increasing breakpoint times from 0 to 1, each
/// consecutive pair of points carried by a common simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct PLPath {
    breakpoints: Vec<(Rat, BaryPoint)>,
}

impl PLPath {
    pub fn new(
        k: &SimplicialComplex,
        breakpoints: Vec<(Rat, BaryPoint)>,
    ) -> Result<Self, PlannerError> {
        if breakpoints.is_empty()
            || !breakpoints[0].0.is_zero()
            || !breakpoints.last().unwrap().0.is_one()
        {
            return Err(PlannerError::BadTimeline);
        }
        for w in breakpoints.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(PlannerError::BadTimeline);
            }
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            let mut carrier = w[0].1.support();
            carrier.extend(w[1].1.support());
            carrier.sort_unstable();
            carrier.dedup();
            if !k.contains(&carrier) {
                return Err(PlannerError::CarrierViolation(i));
            }
        }
        Ok(PLPath { breakpoints })
    }

    pub fn constant(b: &BaryPoint) -> Self {
        PLPath {
            breakpoints: vec![(Rat::zero(), b.clone()), (Rat::one(), b.clone())],
        }
    }

    pub fn start(&self) -> &BaryPoint {
        &self.breakpoints[0].1
    }

    pub fn end(&self) -> &BaryPoint {
        &self.breakpoints.last().unwrap().1
    }

    pub fn times(&self) -> Vec<Rat> {
        self.breakpoints.iter().map(|b| b.0.clone()).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.breakpoints
            .iter()
            .all(|b| b.1 == self.breakpoints[0].1)
    }

    pub fn eval(&self, k: &SimplicialComplex, t: &Rat) -> Result<BaryPoint, PlannerError> {
        if *t < Rat::zero() || *t > Rat::one() {
            return Err(PlannerError::BadTime(t.clone()));
        }
        let mut i = 0;
        while i + 2 < self.breakpoints.len() && self.breakpoints[i + 1].0 <= *t {
            i += 1;
        }
        let (t0, p0) = &self.breakpoints[i];
        let (t1, p1) = &self.breakpoints[i + 1];
        if t == t0 {
            return Ok(p0.clone());
        }
        if t == t1 {
            return Ok(p1.clone());
        }
        let s = (t - t0) / (t1 - t0);
        BaryPoint::convex(k, p0, p1, &s).map_err(|_| PlannerError::CarrierViolation(i))
    }
}

type SectionMap = Arc<dyn Fn(&ProductPoint) -> Result<PLPath, PlannerError> + Send + Sync>;
type HomotopyMap =
    Arc<dyn Fn(&ProductPoint, &Rat) -> Result<ProductPoint, PlannerError> + Send + Sync>;
type TimeMap = Arc<dyn Fn(&ProductPoint) -> Vec<Rat> + Send + Sync>;

/// A local section of the endpoint fibration: over its domain it must
/// produce a path from the first coordinate to the second.
#[derive(Clone)]
pub struct Section {
    pub domain: Region<ProductPoint>,
    map: SectionMap,
}

impl Section {
    pub fn new(
        domain: Region<ProductPoint>,
        map: impl Fn(&ProductPoint) -> Result<PLPath, PlannerError> + Send + Sync + 'static,
    ) -> Self {
        Section {
            domain,
            map: Arc::new(map),
        }
    }

    pub fn path(&self, p: &ProductPoint) -> Result<PLPath, PlannerError> {
        (self.map)(p)
    }
}

/// A fibrewise deformation of an open set of `B x B`: second coordinate
/// frozen, time 0 the identity. Carries optional piecewise-linear time
/// breakpoints so it can be rewritten as a section.
#[derive(Clone)]
pub struct FibrewiseHomotopy {
    pub domain: Region<ProductPoint>,
    map: HomotopyMap,
    times: Option<TimeMap>,
}

impl FibrewiseHomotopy {
    pub fn new(
        domain: Region<ProductPoint>,
        map: impl Fn(&ProductPoint, &Rat) -> Result<ProductPoint, PlannerError> + Send + Sync + 'static,
    ) -> Self {
        FibrewiseHomotopy {
            domain,
            map: Arc::new(map),
            times: None,
        }
    }

    pub fn with_times(
        mut self,
        times: impl Fn(&ProductPoint) -> Vec<Rat> + Send + Sync + 'static,
    ) -> Self {
        self.times = Some(Arc::new(times));
        self
    }

    pub fn eval(&self, p: &ProductPoint, t: &Rat) -> Result<ProductPoint, PlannerError> {
        (self.map)(p, t)
    }

    pub fn breakpoints(&self, p: &ProductPoint) -> Option<Vec<Rat>> {
        self.times.as_ref().map(|f| f(p))
    }
}

/// Turns a section into the compression `H(a,b;t) = (s(a,b)(t), b)`,
/// checking the endpoint contract at the supplied probes.
pub fn section_to_compression(
    k: &Arc<SimplicialComplex>,
    section: &Section,
    probes: &[ProductPoint],
) -> Result<FibrewiseHomotopy, PlannerError> {
    for p in probes {
        if !section.domain.contains(p) {
            continue;
        }
        let path = section.path(p)?;
        if path.start() != &p.first || path.end() != &p.second {
            return Err(PlannerError::SectionInvalid(format!("{p:?}")));
        }
    }
    let kk = k.clone();
    let inner = section.clone();
    let inner2 = section.clone();
    Ok(FibrewiseHomotopy::new(section.domain.clone(), move |p, t| {
        let path = inner.path(p)?;
        let first = path.eval(&kk, t)?;
        Ok(ProductPoint::new(first, p.second.clone()))
    })
    .with_times(move |p| match inner2.path(p) {
        Ok(path) => path.times(),
        Err(_) => vec![Rat::zero(), Rat::one()],
    }))
}

/// Reads a section back off a compression: the path of `(a, b)` is the
/// first coordinate of `H((a,b), ·)` sampled at its declared breakpoints.
/// Checks `H(·, 1)` lands on the diagonal at the supplied probes.
pub fn compression_to_section(
    k: &Arc<SimplicialComplex>,
    homotopy: &FibrewiseHomotopy,
    probes: &[ProductPoint],
) -> Result<Section, PlannerError> {
    if homotopy.times.is_none() {
        return Err(PlannerError::NoTimeStructure);
    }
    for p in probes {
        if !homotopy.domain.contains(p) {
            continue;
        }
        let start = homotopy.eval(p, &Rat::zero())?;
        if start != *p {
            return Err(PlannerError::CompressionInvalid(format!("{p:?} at t=0")));
        }
        let end = homotopy.eval(p, &Rat::one())?;
        if !end.is_diagonal() {
            return Err(PlannerError::CompressionInvalid(format!("{p:?}")));
        }
    }
    let kk = k.clone();
    let inner = homotopy.clone();
    Ok(Section::new(homotopy.domain.clone(), move |p| {
        let mut times = inner.breakpoints(p).expect("checked above");
        times.push(Rat::zero());
        times.push(Rat::one());
        times.sort();
        times.dedup();
        let mut breakpoints = Vec::with_capacity(times.len());
        for t in times {
            let q = inner.eval(p, &t)?;
            breakpoints.push((t, q.first));
        }
        PLPath::new(&kk, breakpoints)
    }))
}

/// An open cover of `B x B` with per-set sections: a motion planner.
/// When `monoidal` is set, every domain must contain the diagonal and
/// every section must be stasis there.
pub struct MotionPlanner {
    pub complex: Arc<SimplicialComplex>,
    pub sections: Vec<Section>,
    pub monoidal: bool,
}

impl MotionPlanner {
    pub fn size(&self) -> usize {
        self.sections.len()
    }
}

/// Section over the near-diagonal set `{u < 1}`: the two-leg averaged
/// path, which is stasis on the diagonal.
pub fn milnor_section(strom: &Arc<StromStructure>, domain: Region<ProductPoint>) -> Section {
    let s = strom.clone();
    Section::new(domain, move |p| {
        let k = s.complex();
        if p.is_diagonal() {
            return Ok(PLPath::constant(&p.first));
        }
        let mu = s
            .mu(&p.first, &p.second)
            .map_err(|e| PlannerError::SectionInvalid(e.to_string()))?;
        let mut breakpoints = vec![(Rat::zero(), p.first.clone())];
        if mu != p.first && mu != p.second {
            breakpoints.push((rat(1, 2), mu));
        }
        breakpoints.push((Rat::one(), p.second.clone()));
        PLPath::new(k, breakpoints)
    })
}

/// Section over a single-simplex complex: the straight segment, stasis on
/// the diagonal. Only valid when the whole complex is one closed simplex.
pub fn linear_section(k: &Arc<SimplicialComplex>, domain: Region<ProductPoint>) -> Section {
    let kk = k.clone();
    Section::new(domain, move |p| {
        if p.first == p.second {
            return Ok(PLPath::constant(&p.first));
        }
        PLPath::new(
            &kk,
            vec![
                (Rat::zero(), p.first.clone()),
                (Rat::one(), p.second.clone()),
            ],
        )
    })
}

/// Angular position of a point on the `n`-gon circle: `i + weight(i+1)`
/// on the edge `{i, i+1}` (indices mod `n`), in `[0, n)`.
fn circle_position(n: usize, x: &BaryPoint) -> Rat {
    let support = x.support();
    if support.len() == 1 {
        return Rat::from_integer(support[0].into());
    }
    let (a, b) = (support[0], support[1]);
    if a == 0 && b == (n - 1) as u32 {
        // wrap-around edge {n-1, 0}
        Rat::from_integer(b.into()) + x.weight(a)
    } else {
        Rat::from_integer(a.into()) + x.weight(b)
    }
}

fn circle_point(k: &SimplicialComplex, n: usize, pos: &Rat) -> BaryPoint {
    let n_rat = Rat::from_integer((n as i64).into());
    let mut q = pos.clone();
    while q < Rat::zero() {
        q += &n_rat;
    }
    while q >= n_rat {
        q -= &n_rat;
    }
    let i = q.floor().to_integer();
    let frac = &q - Rat::from_integer(i.clone());
    let i: usize = i.to_string().parse().expect("small");
    let j = (i + 1) % n;
    if frac.is_zero() {
        BaryPoint::vertex(k, i as u32).expect("vertex")
    } else {
        BaryPoint::new(k, vec![(i as u32, Rat::one() - &frac), (j as u32, frac)])
            .expect("edge point")
    }
}

/// Section over `{x != y}` on the `n`-gon circle: travel at constant
/// speed in the direction of increasing vertex index.
pub fn cyclic_section(
    k: &Arc<SimplicialComplex>,
    n: usize,
    domain: Region<ProductPoint>,
) -> Section {
    let kk = k.clone();
    Section::new(domain, move |p| {
        let pos_x = circle_position(n, &p.first);
        let pos_y = circle_position(n, &p.second);
        let n_rat = Rat::from_integer((n as i64).into());
        let mut d = &pos_y - &pos_x;
        while d <= Rat::zero() {
            d += &n_rat;
        }
        // waypoints: start, each integer position strictly between, end
        let mut positions = vec![pos_x.clone()];
        let mut next = pos_x.floor() + Rat::one();
        while next < &pos_x + &d {
            positions.push(next.clone());
            next += Rat::one();
        }
        positions.push(&pos_x + &d);
        positions.dedup();
        let breakpoints = positions
            .iter()
            .map(|q| {
                let t = (q - &pos_x) / &d;
                (t, circle_point(&kk, n, q))
            })
            .collect();
        PLPath::new(&kk, breakpoints)
    })
}

/// The two-set planner on the `n`-gon circle: the near-diagonal averaged
/// section plus the fixed-orientation section off the diagonal.
pub fn circle_planner(n: usize) -> Result<MotionPlanner, PlannerError> {
    if n < 3 {
        return Err(PlannerError::FixtureError(n));
    }
    let k = Arc::new(crate::fixtures::circle(n).map_err(|_| PlannerError::FixtureError(n))?);
    let strom = Arc::new(StromStructure::new(k.clone()));
    let near = milnor_section(&strom, strom.u_sublevel(Rat::one()));
    let around = cyclic_section(&k, n, strom.off_diagonal());
    Ok(MotionPlanner {
        complex: k,
        sections: vec![near, around],
        monoidal: false,
    })
}

/// Validates a planner at seeded samples: coverage, endpoint contracts,
/// and (for monoidal planners) diagonal domains with stasis sections.
/// `expected_lower_bound`, when given, is reported against the size.
pub fn validate_planner(
    name: &str,
    planner: &MotionPlanner,
    samples: usize,
    seed: u64,
    expected_lower_bound: Option<usize>,
) -> VerificationReport {
    let k = &planner.complex;
    let mut report = VerificationReport::new(name, samples);
    if samples == 0 {
        report.push(CheckResult::warn(
            "nonempty_sample_set",
            "no samples requested; all checks vacuous",
        ));
        return report;
    }
    let points = product_samples(k, samples, seed);
    let mut coverage = CheckAccumulator::new("cover_hits_every_sample");
    let mut endpoints = CheckAccumulator::new("sections_satisfy_endpoint_contract");
    let mut stasis = CheckAccumulator::new("monoidal_sections_are_stasis_on_diagonal");
    for (i, p) in points.iter().enumerate() {
        let mut hit = false;
        for (j, section) in planner.sections.iter().enumerate() {
            if !section.domain.contains(p) {
                continue;
            }
            hit = true;
            match section.path(p) {
                Ok(path) => {
                    endpoints.record(path.start() == &p.first && path.end() == &p.second, || {
                        format!(
                            "sample {i} set {j}: endpoints {:?} -> {:?}",
                            path.start(),
                            path.end()
                        )
                    });
                    if planner.monoidal && p.is_diagonal() {
                        stasis.record(path.is_constant(), || {
                            format!("sample {i} set {j}: diagonal path not constant")
                        });
                    }
                }
                Err(e) => endpoints.record(false, || format!("sample {i} set {j}: {e}")),
            }
        }
        coverage.record(hit, || format!("sample {i}: {p:?} uncovered"));
        if planner.monoidal && p.is_diagonal() {
            for (j, section) in planner.sections.iter().enumerate() {
                stasis.record(section.domain.contains(p), || {
                    format!("sample {i}: diagonal point outside monoidal domain {j}")
                });
            }
        }
    }
    report.push(coverage.finish());
    report.push(endpoints.finish());
    if planner.monoidal {
        report.push(stasis.finish());
    }
    report.push(CheckResult::warn(
        "planner_size",
        format!("size {}", planner.size()),
    ));
    if let Some(zcl_plus_one) = expected_lower_bound {
        report.push(if planner.size() >= zcl_plus_one {
            CheckResult::warn(
                "size_respects_zero_divisor_bound",
                format!("size {} >= {zcl_plus_one} expected", planner.size()),
            )
        } else {
            CheckResult::fail(
                "size_respects_zero_divisor_bound",
                format!("size {} < {zcl_plus_one} expected", planner.size()),
            )
        });
    }
    report
}

pub fn planner_size(planner: &MotionPlanner) -> usize {
    planner.size()
}

/// One set of a categorical cover: a union of pieces, each piece with its
/// own fibrewise contraction. Piece regions must agree wherever they
/// overlap (validated at samples).
pub struct CoverSet {
    pub pieces: Vec<(Region<ProductPoint>, FibrewiseHomotopy)>,
}

impl CoverSet {
    pub fn simple(region: Region<ProductPoint>, homotopy: FibrewiseHomotopy) -> Self {
        CoverSet {
            pieces: vec![(region, homotopy)],
        }
    }

    pub fn contains(&self, p: &ProductPoint) -> bool {
        self.pieces.iter().any(|(r, _)| r.contains(p))
    }

    pub fn contains_diagonal_fact(&self) -> Option<bool> {
        let mut any = None;
        for (r, _) in &self.pieces {
            match r.facts().contains_diagonal {
                Some(true) => return Some(true),
                Some(false) => any = any.or(Some(false)),
                None => return None,
            }
        }
        any
    }

    pub fn eval(&self, p: &ProductPoint, t: &Rat) -> Result<ProductPoint, PlannerError> {
        for (r, h) in &self.pieces {
            if r.contains(p) {
                return h.eval(p, t);
            }
        }
        Err(PlannerError::OutsideCover)
    }

    pub fn tag(&self) -> String {
        self.pieces
            .iter()
            .map(|(r, _)| r.tag().to_string())
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }

    /// The union of the piece regions.
    pub fn union_region(&self) -> Region<ProductPoint> {
        let mut it = self.pieces.iter().map(|(r, _)| r);
        let first = it.next().expect("cover set has at least one piece").clone();
        it.fold(first, |acc, r| Region::union(&acc, r))
    }

    /// A single homotopy evaluator for the whole set (first matching
    /// piece wins; pieces agree on overlaps by the validated contract).
    pub fn combined_homotopy(&self) -> FibrewiseHomotopy {
        let pieces: Vec<(Region<ProductPoint>, FibrewiseHomotopy)> = self.pieces.clone();
        FibrewiseHomotopy::new(self.union_region(), move |p, t| {
            for (r, h) in &pieces {
                if r.contains(p) {
                    return h.eval(p, t);
                }
            }
            Err(PlannerError::OutsideCover)
        })
    }
}

/// The band bounds of the cover-enlargement procedure. The canonical
/// values keep the carved sets and the diagonal collar disjoint.
#[derive(Clone, Debug)]
pub struct CoverBands {
    /// Collar `{u < collar}` glued into every carved set.
    pub collar: Rat,
    /// Carve `{u <= cut}` out of each original set.
    pub cut: Rat,
    /// The extra set is `{u < outer}`.
    pub outer: Rat,
}

impl Default for CoverBands {
    fn default() -> Self {
        CoverBands {
            collar: rat(1, 3),
            cut: rat(1, 2),
            outer: rat(2, 3),
        }
    }
}

/// Enlarges an unpointed categorical cover of size `m+1` into a pointed
/// one of size `m+2`: each set is carved away from the diagonal and glued
/// to a collar contracted by the Strøm homotopy, and one extra collar set
/// is appended.
pub fn cover_plus_one(cover: &[CoverSet], strom: &Arc<StromStructure>) -> Vec<CoverSet> {
    cover_plus_one_with_bands(cover, strom, &CoverBands::default())
}

/// Band-parametrized variant; the default bands satisfy
/// `collar <= cut < outer`, which makes the pieces of each output set
/// disjoint. Off values are caught by the piece-agreement check of
/// [`validate_pointed_cover`].
pub fn cover_plus_one_with_bands(
    cover: &[CoverSet],
    strom: &Arc<StromStructure>,
    bands: &CoverBands,
) -> Vec<CoverSet> {
    let mut out = Vec::with_capacity(cover.len() + 1);
    let collar_region = strom.u_sublevel(bands.collar.clone());
    let collar_homotopy = strom_homotopy(strom, collar_region.clone());
    for set in cover {
        let mut pieces = Vec::new();
        for (region, homotopy) in &set.pieces {
            let carved = Region::intersection(region, &strom.u_superlevel(bands.cut.clone()));
            pieces.push((carved, homotopy.clone()));
        }
        pieces.push((collar_region.clone(), collar_homotopy.clone()));
        out.push(CoverSet { pieces });
    }
    let outer_region = strom.u_sublevel(bands.outer.clone());
    let outer_homotopy = strom_homotopy(strom, outer_region.clone());
    out.push(CoverSet::simple(outer_region, outer_homotopy));
    out
}

/// The Strøm homotopy as a fibrewise contraction of a diagonal
/// neighbourhood.
pub fn strom_homotopy(
    strom: &Arc<StromStructure>,
    domain: Region<ProductPoint>,
) -> FibrewiseHomotopy {
    let s = strom.clone();
    let s2 = strom.clone();
    FibrewiseHomotopy::new(domain, move |p, t| {
        s.h(p, t)
            .map_err(|e| PlannerError::SectionInvalid(e.to_string()))
    })
    .with_times(move |p| s2.h_breakpoints(p))
}

/// Which sufficient condition the equal-size pointed upgrade should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpgradeCase {
    /// Some set misses the diagonal entirely.
    OffDiagonalSet,
    /// Some set contains the diagonal shadow of its own second
    /// projection.
    ProjectionClosedSet,
}

/// Upgrades an unpointed cover to a pointed cover of the SAME size,
/// provided some set satisfies the chosen condition; errors with
/// [`PlannerError::Inapplicable`] otherwise (that gap is the open case).
///
/// The construction pulls the whole cover back along `r = h(·, 1)`,
/// collars every set, and on the distinguished set uses either the
/// off-diagonal shortcut (case 1) or the four-stage pointed homotopy
/// built from the set's own contraction (case 2).
pub fn pointed_upgrade(
    cover: &[CoverSet],
    strom: &Arc<StromStructure>,
    case: UpgradeCase,
) -> Result<Vec<CoverSet>, PlannerError> {
    let satisfies = |set: &CoverSet| -> bool {
        match case {
            UpgradeCase::OffDiagonalSet => set
                .pieces
                .iter()
                .all(|(r, _)| r.facts().diagonal_disjoint == Some(true)),
            UpgradeCase::ProjectionClosedSet => set
                .pieces
                .iter()
                .all(|(r, _)| r.facts().closed_under_diag_proj == Some(true)),
        }
    };
    let chosen = cover
        .iter()
        .position(satisfies)
        .ok_or(PlannerError::Inapplicable)?;

    let s = strom.clone();
    let r_map: Arc<dyn Fn(&ProductPoint) -> ProductPoint + Send + Sync> =
        Arc::new(move |p| s.retraction(p).expect("total on the complex"));

    let mut out = Vec::with_capacity(cover.len());
    for (i, set) in cover.iter().enumerate() {
        let region = set.union_region();
        let inner = set.combined_homotopy();
        let pulled = Region::preimage(format!("r⁻¹({})", region.tag()), r_map.clone(), &region);
        let pieces: Vec<(Region<ProductPoint>, FibrewiseHomotopy)> = if i == chosen {
            match case {
                UpgradeCase::OffDiagonalSet => {
                    // the pulled-back set misses {u < 1} entirely (there
                    // r lands on the diagonal, which this set avoids), so
                    // it is disjoint from the wide collar glued next to it
                    let flowed = flow_then_contract(strom, pulled.clone(), inner);
                    let collar = strom.u_sublevel(rat(2, 3));
                    let collar_h = strom_homotopy(strom, collar.clone());
                    vec![(pulled, flowed), (collar, collar_h)]
                }
                UpgradeCase::ProjectionClosedSet => {
                    // one region, one formula branched on the gauge value;
                    // the set's own contraction is run from the shadow,
                    // which the closedness condition keeps inside the set
                    let collar = strom.u_sublevel(rat(2, 3));
                    let union = Region::union(&pulled, &collar);
                    let pointed = four_stage_pointed_homotopy(strom, union.clone(), inner);
                    vec![(union, pointed)]
                }
            }
        } else {
            let carved = Region::intersection(&pulled, &strom.u_superlevel(rat(1, 2)));
            let flowed = flow_then_contract(strom, carved.clone(), inner);
            let collar = strom.u_sublevel(rat(1, 3));
            let collar_h = strom_homotopy(strom, collar.clone());
            vec![(carved, flowed), (collar, collar_h)]
        };
        out.push(CoverSet { pieces });
    }
    Ok(out)
}

/// `G(p, t)`: run the Strøm flow to `r(p)` on `[0, 1/2]`, then the given
/// contraction from `r(p)` on `[1/2, 1]`.
fn flow_then_contract(
    strom: &Arc<StromStructure>,
    domain: Region<ProductPoint>,
    inner: FibrewiseHomotopy,
) -> FibrewiseHomotopy {
    let s = strom.clone();
    FibrewiseHomotopy::new(domain, move |p, t| {
        let half = rat(1, 2);
        if *t <= half {
            let scaled = t * rat(2, 1);
            s.h(p, &scaled)
                .map_err(|e| PlannerError::SectionInvalid(e.to_string()))
        } else {
            let r = s
                .retraction(p)
                .map_err(|e| PlannerError::SectionInvalid(e.to_string()))?;
            let scaled = (t - half) * rat(2, 1);
            inner.eval(&r, &scaled)
        }
    })
}

/// The four-stage pointed contraction of the distinguished set in the
/// projection-closed case: flow to `r(x)`, run the set's contraction from
/// there, then run it backwards from the diagonal shadow, with a plateau
/// whose width interpolates in `u(x)` between the stages.
fn four_stage_pointed_homotopy(
    strom: &Arc<StromStructure>,
    domain: Region<ProductPoint>,
    inner: FibrewiseHomotopy,
) -> FibrewiseHomotopy {
    let s = strom.clone();
    FibrewiseHomotopy::new(domain, move |p, t| {
        let b = &p.second;
        let shadow = ProductPoint::diagonal(b.clone());
        if p.is_diagonal() {
            return Ok(shadow);
        }
        let u = s
            .u(&p.first, &p.second)
            .map_err(|e| PlannerError::SectionInvalid(e.to_string()))?;
        let third = rat(1, 3);
        let two_thirds = rat(2, 3);
        let one = Rat::one();
        let err = |e: crate::strom::StromError| PlannerError::SectionInvalid(e.to_string());
        if u < two_thirds {
            // flow reaches the diagonal shadow and stays there
            if *t <= third {
                return s.h(p, &(t * rat(3, 1))).map_err(err);
            }
            return Ok(shadow);
        }
        if u < one {
            // plateau of width 2 - 2u around the middle: run the inner
            // contraction of the shadow up to time 3u - 2 and back
            if *t <= third {
                return s.h(p, &(t * rat(3, 1))).map_err(err);
            }
            let rise_end = &u - &third; // t where inner time hits 3u - 2
            let fall_start = rat(5, 3) - &u;
            if *t <= rise_end {
                return inner.eval(&shadow, &(t * rat(3, 1) - one));
            }
            if *t <= fall_start {
                return inner.eval(&shadow, &(rat(3, 1) * &u - rat(2, 1)));
            }
            return inner.eval(&shadow, &(rat(3, 1) - t * rat(3, 1)));
        }
        // u = 1: flow to r(x) in the set, contract it, then run the
        // contraction of the shadow backwards
        if *t <= third {
            return s.h(p, &(t * rat(3, 1))).map_err(err);
        }
        let r = s.retraction(p).map_err(err)?;
        if *t <= two_thirds {
            return inner.eval(&r, &(t * rat(3, 1) - one));
        }
        inner.eval(&shadow, &(rat(3, 1) - t * rat(3, 1)))
    })
}

/// Validates a pointed categorical cover at seeded samples: coverage,
/// every set contains the diagonal, contractions start at the identity,
/// stay fibrewise, end on the diagonal, are stationary on it, and agree
/// wherever two pieces of one set overlap.
pub fn validate_pointed_cover(
    name: &str,
    k: &Arc<SimplicialComplex>,
    cover: &[CoverSet],
    samples: usize,
    seed: u64,
    pointed: bool,
) -> VerificationReport {
    let mut report = VerificationReport::new(name, samples);
    if samples == 0 {
        report.push(CheckResult::warn(
            "nonempty_sample_set",
            "no samples requested; all checks vacuous",
        ));
        return report;
    }
    let points = product_samples(k, samples, seed);
    let t_grid = unit_grid(6);
    let mut coverage = CheckAccumulator::new("cover_hits_every_sample");
    let mut diagonal_in_all = CheckAccumulator::new("every_set_contains_diagonal_samples");
    let mut identity = CheckAccumulator::new("contraction_identity_at_zero");
    let mut fibrewise = CheckAccumulator::new("contraction_fibrewise_second_projection");
    let mut lands = CheckAccumulator::new("contraction_lands_on_diagonal");
    let mut stationary = CheckAccumulator::new("contraction_stationary_on_diagonal");
    let mut agreement = CheckAccumulator::new("piece_overlap_agreement");
    for (i, p) in points.iter().enumerate() {
        let mut hit = false;
        for (si, set) in cover.iter().enumerate() {
            let inside = set.contains(p);
            if pointed && p.is_diagonal() {
                diagonal_in_all.record(inside, || {
                    format!(
                        "sample {i}: diagonal point missing from set {si} ({})",
                        set.tag()
                    )
                });
            }
            if !inside {
                continue;
            }
            hit = true;
            match set.eval(p, &Rat::zero()) {
                Ok(start) => identity.record(start == *p, || {
                    format!("sample {i} set {si}: H(p,0) = {start:?}")
                }),
                Err(e) => identity.record(false, || format!("sample {i} set {si}: {e}")),
            }
            match set.eval(p, &Rat::one()) {
                Ok(end) => lands.record(end.is_diagonal() && end.second == p.second, || {
                    format!("sample {i} set {si}: H(p,1) = {end:?}")
                }),
                Err(e) => lands.record(false, || format!("sample {i} set {si}: {e}")),
            }
            for t in &t_grid {
                match set.eval(p, t) {
                    Ok(q) => {
                        fibrewise.record(q.second == p.second, || {
                            format!("sample {i} set {si} t={t}: second moved")
                        });
                        if pointed && p.is_diagonal() {
                            stationary.record(q == *p, || {
                                format!("sample {i} set {si} t={t}: diagonal moved")
                            });
                        }
                    }
                    Err(e) => fibrewise.record(false, || format!("sample {i} set {si} t={t}: {e}")),
                }
            }
            // pairwise agreement of pieces on their overlaps
            for a in 0..set.pieces.len() {
                for b in a + 1..set.pieces.len() {
                    let (ra, ha) = &set.pieces[a];
                    let (rb, hb) = &set.pieces[b];
                    if ra.contains(p) && rb.contains(p) {
                        for t in &t_grid {
                            let qa = ha.eval(p, t);
                            let qb = hb.eval(p, t);
                            let ok = matches!((&qa, &qb), (Ok(x), Ok(y)) if x == y);
                            agreement.record(ok, || {
                                format!(
                                    "sample {i} set {si} t={t}: pieces '{}' and '{}' disagree",
                                    ra.tag(),
                                    rb.tag()
                                )
                            });
                        }
                    }
                }
            }
        }
        coverage.record(hit, || format!("sample {i}: {p:?} uncovered"));
    }
    report.push(coverage.finish());
    if pointed {
        report.push(diagonal_in_all.finish());
    }
    report.push(identity.finish());
    report.push(fibrewise.finish());
    report.push(lands.finish());
    if pointed {
        report.push(stationary.finish());
    }
    report.push(agreement.finish());
    report
}

/// A cover of `B x B` together with its complex and Strøm data.
pub type CoverFixture = (Arc<SimplicialComplex>, Arc<StromStructure>, Vec<CoverSet>);

/// The unpointed cover behind the circle planner, as cover sets with
/// contractions (via the section-to-compression translation).
pub fn circle_cover(n: usize) -> Result<CoverFixture, PlannerError> {
    let planner = circle_planner(n)?;
    let k = planner.complex.clone();
    let strom = Arc::new(StromStructure::new(k.clone()));
    let probes = product_samples(&k, 64, 5);
    let mut sets = Vec::new();
    for section in &planner.sections {
        let h = section_to_compression(&k, section, &probes)?;
        sets.push(CoverSet::simple(section.domain.clone(), h));
    }
    Ok((k, strom, sets))
}

/// Round-trip agreement between a section and the section induced by its
/// compression, at sampled `(a, b, t)` triples.
pub fn verify_roundtrip(
    name: &str,
    k: &Arc<SimplicialComplex>,
    section: &Section,
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let mut report = VerificationReport::new(name, samples);
    let points = product_samples(k, samples, seed);
    let times = random_times(8, seed);
    let mut roundtrip = CheckAccumulator::new("section_compression_roundtrip");
    let mut monoidal_iff = CheckAccumulator::new("stasis_iff_stationary_compression");
    let probes: Vec<ProductPoint> = points
        .iter()
        .filter(|p| section.domain.contains(p))
        .cloned()
        .collect();
    let compression = match section_to_compression(k, section, &probes) {
        Ok(h) => h,
        Err(e) => {
            report.push(CheckResult::fail(
                "section_compression_roundtrip",
                e.to_string(),
            ));
            return report;
        }
    };
    let recovered = match compression_to_section(k, &compression, &probes) {
        Ok(s) => s,
        Err(e) => {
            report.push(CheckResult::fail(
                "section_compression_roundtrip",
                e.to_string(),
            ));
            return report;
        }
    };
    for (i, p) in probes.iter().enumerate() {
        let original = match section.path(p) {
            Ok(path) => path,
            Err(e) => {
                roundtrip.record(false, || format!("sample {i}: {e}"));
                continue;
            }
        };
        let back = match recovered.path(p) {
            Ok(path) => path,
            Err(e) => {
                roundtrip.record(false, || format!("sample {i}: {e}"));
                continue;
            }
        };
        for t in unit_grid(6).iter().chain(times.iter()) {
            let a = original.eval(k, t);
            let b = back.eval(k, t);
            let ok = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
            roundtrip.record(ok, || format!("sample {i} t={t}: paths disagree"));
        }
        if p.is_diagonal() {
            let stasis = original.is_constant();
            let mut stationary = true;
            for t in unit_grid(6) {
                match compression.eval(p, &t) {
                    Ok(q) => {
                        if q != *p {
                            stationary = false;
                        }
                    }
                    Err(_) => stationary = false,
                }
            }
            monoidal_iff.record(stasis == stationary, || {
                format!("sample {i}: stasis={stasis} stationary={stationary}")
            });
        }
    }
    report.push(roundtrip.finish());
    report.push(monoidal_iff.finish());
    report
}

/// The symmetric round trip: rewrite a compression as a section, then
/// back, and compare against the original at sampled `(p, t)` pairs.
pub fn verify_compression_roundtrip(
    name: &str,
    k: &Arc<SimplicialComplex>,
    homotopy: &FibrewiseHomotopy,
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let mut report = VerificationReport::new(name, samples);
    let points = product_samples(k, samples, seed);
    let probes: Vec<ProductPoint> = points
        .into_iter()
        .filter(|p| homotopy.domain.contains(p))
        .collect();
    let mut roundtrip = CheckAccumulator::new("compression_section_roundtrip");
    let section = match compression_to_section(k, homotopy, &probes) {
        Ok(s) => s,
        Err(e) => {
            report.push(CheckResult::fail(
                "compression_section_roundtrip",
                e.to_string(),
            ));
            return report;
        }
    };
    let back = match section_to_compression(k, &section, &probes) {
        Ok(h) => h,
        Err(e) => {
            report.push(CheckResult::fail(
                "compression_section_roundtrip",
                e.to_string(),
            ));
            return report;
        }
    };
    let times = random_times(8, seed);
    for (i, p) in probes.iter().enumerate() {
        for t in unit_grid(6).iter().chain(times.iter()) {
            let a = homotopy.eval(p, t);
            let b = back.eval(p, t);
            let ok = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
            roundtrip.record(ok, || format!("sample {i} t={t}: compressions disagree"));
        }
    }
    report.push(roundtrip.finish());
    report
}

/// Fixture description of a planner, loadable from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlannerSpec {
    pub complex: String,
    pub sets: Vec<PlannerSetSpec>,
    pub monoidal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlannerSetSpec {
    /// `{u < bound}` with a named section rule.
    USublevel { bound: String, section: SectionRule },
    /// A tagged predicate set with a named section rule.
    PredicateTag {
        tag: PredicateTag,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertex: Option<u32>,
        section: SectionRule,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateTag {
    OffDiagonal,
    StarSquare,
    Full,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionRule {
    /// Two-leg averaged path (needs overlapping supports on its domain).
    Milnor,
    /// Fixed-orientation travel on a circle complex.
    Cyclic,
    /// Straight segment (single-simplex complexes only).
    Linear,
}

/// Builds a planner from its fixture description.
pub fn build_planner(
    k: &Arc<SimplicialComplex>,
    spec: &PlannerSpec,
) -> Result<MotionPlanner, PlannerError> {
    let strom = Arc::new(StromStructure::new(k.clone()));
    let mut sections = Vec::new();
    for set in &spec.sets {
        let (region, rule) = match set {
            PlannerSetSpec::USublevel { bound, section } => {
                let b = Rat::from_str(bound)
                    .map_err(|_| PlannerError::BadFixture(format!("bad bound `{bound}`")))?;
                if b.is_negative() {
                    return Err(PlannerError::BadFixture(format!(
                        "negative bound `{bound}`"
                    )));
                }
                (strom.u_sublevel(b), *section)
            }
            PlannerSetSpec::PredicateTag {
                tag,
                vertex,
                section,
            } => {
                let region = match tag {
                    PredicateTag::OffDiagonal => strom.off_diagonal(),
                    PredicateTag::Full => strom.full(),
                    PredicateTag::StarSquare => {
                        let v = vertex.ok_or_else(|| {
                            PlannerError::BadFixture("star_square needs a vertex".into())
                        })?;
                        if v as usize >= k.vertex_count() {
                            return Err(PlannerError::BadFixture(format!("no vertex {v}")));
                        }
                        strom.star_square(v)
                    }
                };
                (region, *section)
            }
        };
        let section = match rule {
            SectionRule::Milnor => milnor_section(&strom, region),
            SectionRule::Linear => linear_section(k, region),
            SectionRule::Cyclic => {
                let n = k.vertex_count();
                let consecutive = n >= 3
                    && k.dimension() == 1
                    && k.simplex_count(1) == n
                    && (0..n).all(|i| {
                        let mut e = vec![i as u32, ((i + 1) % n) as u32];
                        e.sort_unstable();
                        k.contains(&e)
                    });
                if !consecutive {
                    return Err(PlannerError::BadFixture(
                        "cyclic rule needs an n-gon circle complex".into(),
                    ));
                }
                cyclic_section(k, n, region)
            }
        };
        sections.push(section);
    }
    Ok(MotionPlanner {
        complex: k.clone(),
        sections,
        monoidal: spec.monoidal,
    })
}
