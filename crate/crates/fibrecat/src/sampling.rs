//! Deterministic sample streams for the verification suites.
//!
//! Samples mix seeded random points with engineered ones: diagonal
//! vertex points, and edge pairs whose overlap is tuned to land in each
//! band of the Strøm data `v` (including the exact seam values).

use crate::complex::SimplicialComplex;
use crate::geometry::{random_point_with, BaryPoint, ProductPoint};
use crate::linalg::{rat, Rat};
use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Overlap parameters `(a, b)` for edge pairs `x = (1-a, a)`,
/// `y = (b, 1-b)`: the overlap sum is `a + b`, so `v = 3 - 3(a+b)`.
/// The list covers v in (2,3), the seam v = 2, (1,2), the seam v = 1,
/// (1/2, 2/3) (the upgrade band), the seam v = 2/3, and (0, 1/2).
const EDGE_BANDS: &[(i64, i64, i64, i64)] = &[
    (1, 10, 1, 10), // v = 12/5 in (2,3)
    (1, 12, 1, 8),  // v = 27/... a=1/12, b=1/8: a+b=5/24, v=3-5/8=19/8 in (2,3)
    (1, 6, 1, 6),   // v = 2 exactly (seam)
    (1, 5, 1, 5),   // v = 9/5 in (1,2)
    (3, 10, 3, 10), // v = 6/5 in (1,2)
    (1, 3, 1, 3),   // v = 1 exactly (seam)
    (2, 5, 2, 5),   // v = 3/5 in (1/2, 2/3)
    (1, 3, 17, 36), // asymmetric, v = 3 - 3*29/36 = 7/12 in (1/2, 2/3)
    (7, 18, 7, 18), // v = 2/3 exactly (seam)
    (2, 5, 1, 2),   // v = 3/10 in (0, 1/2)
    (9, 20, 9, 20), // v = 3/10
];

/// Deterministic stream of product points on `|K| x |K|`.
pub fn product_samples(k: &SimplicialComplex, count: usize, seed: u64) -> Vec<ProductPoint> {
    let mut out = Vec::with_capacity(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // engineered: diagonal vertex points
    for v in 0..k.vertex_count() as u32 {
        if out.len() >= count {
            return out;
        }
        let p = BaryPoint::vertex(k, v).expect("vertex point");
        out.push(ProductPoint::diagonal(p));
    }
    // engineered: banded edge pairs, both orientations
    'bands: for edge in k.simplices(1) {
        for (an, ad, bn, bd) in EDGE_BANDS {
            if out.len() >= count {
                break 'bands;
            }
            let a = rat(*an, *ad);
            let b = rat(*bn, *bd);
            let x = BaryPoint::new(k, vec![(edge[0], Rat::one() - &a), (edge[1], a.clone())])
                .expect("edge point");
            let y = BaryPoint::new(k, vec![(edge[0], b.clone()), (edge[1], Rat::one() - &b)])
                .expect("edge point");
            out.push(ProductPoint::new(x, y));
        }
    }
    // random fill
    let simplices: Vec<Vec<u32>> = k.all_simplices().cloned().collect();
    while out.len() < count {
        let sigma = &simplices[rng.gen_range(0..simplices.len())];
        let x = random_point_with(k, sigma, &mut rng);
        let style = rng.gen_range(0..8u8);
        let y = match style {
            0 => x.clone(),
            1..=3 => random_point_with(k, sigma, &mut rng),
            _ => {
                let tau = &simplices[rng.gen_range(0..simplices.len())];
                random_point_with(k, tau, &mut rng)
            }
        };
        out.push(ProductPoint::new(x, y));
    }
    out
}

/// Deterministic stream of single points on `|K|`.
pub fn base_samples(k: &SimplicialComplex, count: usize, seed: u64) -> Vec<BaryPoint> {
    let mut out = Vec::with_capacity(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15));
    for v in 0..k.vertex_count() as u32 {
        if out.len() >= count {
            return out;
        }
        out.push(BaryPoint::vertex(k, v).expect("vertex point"));
    }
    let simplices: Vec<Vec<u32>> = k.all_simplices().cloned().collect();
    while out.len() < count {
        let sigma = &simplices[rng.gen_range(0..simplices.len())];
        out.push(random_point_with(k, sigma, &mut rng));
    }
    out
}

/// Evenly spaced rational grid `0, 1/n, ..., 1`.
pub fn unit_grid(n: i64) -> Vec<Rat> {
    (0..=n).map(|i| rat(i, n)).collect()
}

/// Deterministic random rationals in `[0, 1]` with small denominators.
pub fn random_times(count: usize, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bf0_3635);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(2..=97i64);
            let n = rng.gen_range(0..=d);
            rat(n, d)
        })
        .collect()
}
