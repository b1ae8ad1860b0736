//! Small reference complexes used by tests, examples and the CLI corpus.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;

use crate::complex::{ComplexDescription, SimplicialComplex};
use crate::random::seeded_rng;

fn build(desc: ComplexDescription) -> SimplicialComplex {
    desc.build().expect("reference complexes are valid by construction")
}

pub fn single_vertex() -> SimplicialComplex {
    build(ComplexDescription::new().with(&[0]))
}

/// One edge `(0, 1)`.
pub fn interval() -> SimplicialComplex {
    path(2)
}

/// Path graph on `n ≥ 2` vertices.
pub fn path(n: usize) -> SimplicialComplex {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    build(ComplexDescription::from_edges(&edges))
}

/// Cycle graph `C_n`, `n ≥ 3`, without 2-cells.
pub fn cycle(n: usize) -> SimplicialComplex {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(ComplexDescription::from_edges(&edges))
}

pub fn complete_graph(n: usize) -> SimplicialComplex {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    build(ComplexDescription::from_edges(&edges))
}

pub fn filled_triangle() -> SimplicialComplex {
    build(ComplexDescription::from_triangles(&[[0, 1, 2]]))
}

/// Boundary of the 3-simplex: a triangulated 2-sphere.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    build(ComplexDescription::from_triangles(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]))
}

/// Periodic `rows × cols` grid, each square split along its diagonal.
/// Needs `rows, cols ≥ 3` to be a genuine torus.
pub fn flat_torus(rows: usize, cols: usize) -> SimplicialComplex {
    let v = |i: usize, j: usize| (i % rows) * cols + (j % cols);
    let mut tris = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            tris.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tris.push([v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    build(ComplexDescription::from_triangles(&tris))
}

/// Seeded random weighted 2-complex on 8 to 12 vertices.
///
/// A Hamiltonian path keeps the 1-skeleton connected; extra edges and
/// triangles are sampled uniformly. Every simplex gets a weight drawn from
/// `[0.5, 2]`.
pub fn random_two_complex(seed: u64) -> SimplicialComplex {
    let mut rng = seeded_rng(seed);
    let n = rng.random_range(8..=12usize);
    let mut triangles = BTreeSet::new();
    let target = rng.random_range(n / 2..=n + 2);
    while triangles.len() < target {
        let mut t = [rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)];
        t.sort_unstable();
        if t[0] != t[1] && t[1] != t[2] {
            triangles.insert(t);
        }
    }
    let mut edges: BTreeSet<[usize; 2]> = (1..n).map(|i| [i - 1, i]).collect();
    for _ in 0..n / 2 {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            edges.insert([a.min(b), a.max(b)]);
        }
    }
    for t in &triangles {
        edges.extend([[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]]);
    }

    let mut desc = ComplexDescription::new();
    for v in 0..n {
        desc.push(&[v], Some(rng.random_range(0.5..=2.0)));
    }
    for e in &edges {
        desc.push(e, Some(rng.random_range(0.5..=2.0)));
    }
    for t in &triangles {
        desc.push(t, Some(rng.random_range(0.5..=2.0)));
    }
    build(desc)
}
