//! Small reference complexes used across tests, docs, and the CLI examples.

use super::complex::SimplicialComplex;

/// The solid `d`-simplex on vertices `0..=d`.
pub fn standard_simplex(d: usize) -> SimplicialComplex {
    SimplicialComplex::from_top_simplices(d, vec![(0..=d).collect()], None)
        .expect("standard simplex is valid")
}

/// The boundary of a triangle: a circle made of three edges.
pub fn triangle() -> SimplicialComplex {
    SimplicialComplex::from_top_simplices(1, vec![vec![0, 1], vec![1, 2], vec![0, 2]], None)
        .expect("triangle is valid")
}

/// The boundary of the 3-simplex: a 2-sphere with four triangles.
pub fn boundary_delta3() -> SimplicialComplex {
    SimplicialComplex::from_top_simplices(
        2,
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        None,
    )
    .expect("boundary of the 3-simplex is valid")
}

/// The 7-vertex triangulated torus: triangles `{i, i+1, i+3}` and
/// `{i, i+2, i+3}` modulo 7.
pub fn torus_seven() -> SimplicialComplex {
    let mut tops = Vec::new();
    for i in 0..7usize {
        for offsets in [[0usize, 1, 3], [0, 2, 3]] {
            let mut t: Vec<usize> = offsets.iter().map(|o| (i + o) % 7).collect();
            t.sort_unstable();
            tops.push(t);
        }
    }
    SimplicialComplex::from_top_simplices(2, tops, None).expect("7-vertex torus is valid")
}

/// A 9-vertex Klein bottle: a 3x3 grid of squares, each split into two
/// triangles, glued with one orientation-reversing wrap. Vertex `(i, j)` of
/// the grid is labeled `3 j + i`; the top row is glued to the bottom row with
/// a horizontal flip.
pub fn klein_nine() -> SimplicialComplex {
    fn q(i: usize, j: usize) -> usize {
        let i = i % 3;
        if j == 3 {
            (3 - i) % 3
        } else {
            3 * j + i
        }
    }
    let mut tops = Vec::new();
    for i in 0..3usize {
        for j in 0..3usize {
            for corner in [
                [q(i, j), q(i + 1, j), q(i, j + 1)],
                [q(i + 1, j), q(i + 1, j + 1), q(i, j + 1)],
            ] {
                let mut t = corner.to_vec();
                t.sort_unstable();
                tops.push(t);
            }
        }
    }
    SimplicialComplex::from_top_simplices(2, tops, None).expect("9-vertex Klein bottle is valid")
}
