//! Built-in fixture complexes: spheres, the 7-vertex torus, the 6-vertex
//! projective plane, and a wedge. All pass the closure validation of the
//! complex builder by construction.

use crate::complex::{build_complex, ComplexError, SimplicialComplex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("bad parameter in `{0}`")]
    BadParameter(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A single vertex.
pub fn point() -> SimplicialComplex {
    build_complex(&[vec![0]]).expect("point fixture")
}

/// The `n`-gon model of the circle, `n >= 3`.
pub fn circle(n: usize) -> Result<SimplicialComplex, FixtureError> {
    if n < 3 {
        return Err(FixtureError::BadParameter(format!("s1-{n}")));
    }
    let facets: Vec<Vec<i64>> = (0..n)
        .map(|i| vec![i as i64, ((i + 1) % n) as i64])
        .collect();
    Ok(build_complex(&facets)?)
}

/// Boundary of the `m`-simplex on `m + 1` vertices, a model of `S^(m-1)`.
pub fn boundary_delta(m: usize) -> Result<SimplicialComplex, FixtureError> {
    if m < 1 {
        return Err(FixtureError::BadParameter(format!("bddelta-{m}")));
    }
    let mut facets = Vec::new();
    for mask in 0u32..(1 << (m + 1)) {
        if mask.count_ones() as usize == m {
            let facet: Vec<i64> = (0..=m as u32)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i as i64)
                .collect();
            facets.push(facet);
        }
    }
    Ok(build_complex(&facets)?)
}

/// The tetrahedron boundary, a model of `S^2`.
pub fn sphere2() -> SimplicialComplex {
    boundary_delta(3).expect("sphere fixture")
}

/// The 7-vertex triangulation of the torus (Möbius' torus): triangles
/// `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7i64 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    build_complex(&facets).expect("torus fixture")
}

/// The 6-vertex triangulation of the real projective plane (icosahedron
/// quotient).
pub fn rp2_6() -> SimplicialComplex {
    let facets: Vec<Vec<i64>> = vec![
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 4, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 5],
        vec![2, 3, 4],
        vec![3, 4, 5],
    ];
    build_complex(&facets).expect("projective plane fixture")
}

/// A circle and a tetrahedron boundary glued at vertex 0.
pub fn wedge_s1_s2() -> SimplicialComplex {
    let facets: Vec<Vec<i64>> = vec![
        vec![0, 1],
        vec![1, 2],
        vec![0, 2],
        vec![0, 3, 4],
        vec![0, 3, 5],
        vec![0, 4, 5],
        vec![3, 4, 5],
    ];
    build_complex(&facets).expect("wedge fixture")
}

/// Names accepted by [`by_name`], in report order.
pub fn catalog() -> &'static [&'static str] {
    &["point", "s1", "s2", "t2", "rp2", "wedge", "bddelta-4"]
}

/// Looks up a fixture by name: `point`, `s1`, `s1-<n>`, `s2`, `t2`,
/// `rp2`, `wedge`, `bddelta-<m>`.
pub fn by_name(name: &str) -> Result<SimplicialComplex, FixtureError> {
    match name {
        "point" => Ok(point()),
        "s1" => circle(3),
        "s2" => Ok(sphere2()),
        "t2" => Ok(torus7()),
        "rp2" => Ok(rp2_6()),
        "wedge" => Ok(wedge_s1_s2()),
        _ => {
            if let Some(n) = name.strip_prefix("s1-") {
                let n: usize = n
                    .parse()
                    .map_err(|_| FixtureError::BadParameter(name.to_string()))?;
                return circle(n);
            }
            if let Some(m) = name.strip_prefix("bddelta-") {
                let m: usize = m
                    .parse()
                    .map_err(|_| FixtureError::BadParameter(name.to_string()))?;
                return boundary_delta(m);
            }
            Err(FixtureError::Unknown(name.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_vectors() {
        assert_eq!(point().f_vector(), vec![1]);
        assert_eq!(circle(3).unwrap().f_vector(), vec![3, 3]);
        assert_eq!(circle(12).unwrap().f_vector(), vec![12, 12]);
        assert_eq!(sphere2().f_vector(), vec![4, 6, 4]);
        assert_eq!(torus7().f_vector(), vec![7, 21, 14]);
        assert_eq!(rp2_6().f_vector(), vec![6, 15, 10]);
        assert_eq!(wedge_s1_s2().f_vector(), vec![6, 9, 4]);
        assert_eq!(boundary_delta(4).unwrap().f_vector(), vec![5, 10, 10, 5]);
    }

    #[test]
    fn closed_surfaces_have_each_edge_in_two_triangles() {
        for k in [torus7(), rp2_6(), sphere2()] {
            for edge in k.simplices(1) {
                let count = k
                    .simplices(2)
                    .iter()
                    .filter(|t| edge.iter().all(|v| t.contains(v)))
                    .count();
                assert_eq!(count, 2, "edge {edge:?}");
            }
        }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(torus7().euler_characteristic(), 0);
        assert_eq!(rp2_6().euler_characteristic(), 1);
        assert_eq!(sphere2().euler_characteristic(), 2);
        assert_eq!(boundary_delta(4).unwrap().euler_characteristic(), 0);
    }

    #[test]
    fn lookup() {
        assert!(by_name("t2").is_ok());
        assert!(by_name("s1-12").is_ok());
        assert!(by_name("s1-2").is_err());
        assert!(by_name("mystery").is_err());
        for name in catalog() {
            assert!(by_name(name).is_ok(), "{name}");
        }
    }
}
