//! Weighted simplicial complexes, cochains and the discrete operators
//! `d`, `δ` and `Δ` acting on them.
//!
//! Simplices are stored as strictly increasing vertex tuples; that order is
//! the reference orientation. Every degree is indexed lexicographically, so
//! two complexes built from the same description are identical.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold separating zero from nonzero eigenvalues and singular
/// values. Shared by rank computations and the spectral kernel split.
pub const KERNEL_TOL: f64 = 1e-10;

/// Relative tolerance for the weighted self-adjointness check.
pub const ADJOINT_TOL: f64 = 1e-12;

fn default_weight() -> f64 {
    1.0
}

/// Input description of a complex: simplices grouped by degree with
/// optional per-simplex weights. Mirrors the JSON complex format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDescription {
    #[serde(default = "default_weight")]
    pub weights_default: f64,
    #[serde(default)]
    pub simplices: BTreeMap<usize, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<usize, Vec<f64>>,
}

impl Default for ComplexDescription {
    fn default() -> Self {
        Self {
            weights_default: 1.0,
            simplices: BTreeMap::new(),
            weights: BTreeMap::new(),
        }
    }
}

impl ComplexDescription {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a simplex; its degree is `vertices.len() - 1`.
    ///
    /// When a weight is given for a degree whose earlier simplices had none,
    /// those earlier entries are filled with `weights_default`.
    pub fn push(&mut self, vertices: &[usize], weight: Option<f64>) -> &mut Self {
        assert!(!vertices.is_empty(), "a simplex needs at least one vertex");
        let degree = vertices.len() - 1;
        let list = self.simplices.entry(degree).or_default();
        list.push(vertices.to_vec());
        let n = list.len();
        match weight {
            Some(w) => {
                let ws = self.weights.entry(degree).or_default();
                ws.resize(n - 1, self.weights_default);
                ws.push(w);
            }
            None => {
                if let Some(ws) = self.weights.get_mut(&degree) {
                    ws.resize(n, self.weights_default);
                }
            }
        }
        self
    }

    pub fn with(mut self, vertices: &[usize]) -> Self {
        self.push(vertices, None);
        self
    }

    pub fn with_weighted(mut self, vertices: &[usize], weight: f64) -> Self {
        self.push(vertices, Some(weight));
        self
    }

    pub fn from_edges(edges: &[(usize, usize)]) -> Self {
        let mut d = Self::new();
        for &(a, b) in edges {
            d.push(&[a, b], None);
        }
        d
    }

    pub fn from_triangles(triangles: &[[usize; 3]]) -> Self {
        let mut d = Self::new();
        for t in triangles {
            d.push(t, None);
        }
        d
    }

    pub fn build(&self) -> Result<SimplicialComplex> {
        build_complex(self)
    }
}

/// A finite weighted simplicial complex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Vec<usize>>>,
    weights: Vec<Vec<f64>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

/// Builds a complex from a description, adding missing faces with weight 1.
pub fn build_complex(desc: &ComplexDescription) -> Result<SimplicialComplex> {
    if !(desc.weights_default.is_finite() && desc.weights_default > 0.0) {
        return Err(Error::InvalidWeight { simplex: Vec::new(), weight: desc.weights_default });
    }
    let top = desc
        .simplices
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(&k, _)| k)
        .max()
        .ok_or(Error::EmptyComplex)?;
    let mut levels: Vec<BTreeMap<Vec<usize>, f64>> = vec![BTreeMap::new(); top + 1];

    for (&degree, list) in &desc.simplices {
        let weights = desc.weights.get(&degree);
        if let Some(ws) = weights {
            if ws.len() != list.len() {
                return Err(Error::WeightCountMismatch {
                    degree,
                    simplices: list.len(),
                    weights: ws.len(),
                });
            }
        }
        for (i, raw) in list.iter().enumerate() {
            if raw.len() != degree + 1 {
                return Err(Error::InvalidParameter(format!(
                    "simplex {raw:?} listed under degree {degree}"
                )));
            }
            let mut s = raw.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DegenerateSimplex(raw.clone()));
            }
            let w = weights.map_or(desc.weights_default, |ws| ws[i]);
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight { simplex: s, weight: w });
            }
            if levels[degree].insert(s.clone(), w).is_some() {
                return Err(Error::DuplicateSimplex(s));
            }
        }
    }
    for (degree, level) in &desc.weights {
        if !desc.simplices.contains_key(degree) && !level.is_empty() {
            return Err(Error::WeightCountMismatch { degree: *degree, simplices: 0, weights: level.len() });
        }
    }

    for degree in (1..=top).rev() {
        let faces: Vec<Vec<usize>> = levels[degree]
            .keys()
            .flat_map(|s| (0..s.len()).map(move |i| face(s, i)))
            .collect();
        for f in faces {
            levels[degree - 1].entry(f).or_insert(1.0);
        }
    }

    let mut simplices = Vec::with_capacity(top + 1);
    let mut weights = Vec::with_capacity(top + 1);
    let mut index = Vec::with_capacity(top + 1);
    for level in levels {
        let mut map = BTreeMap::new();
        let mut ss = Vec::with_capacity(level.len());
        let mut ws = Vec::with_capacity(level.len());
        for (i, (s, w)) in level.into_iter().enumerate() {
            map.insert(s.clone(), i);
            ss.push(s);
            ws.push(w);
        }
        simplices.push(ss);
        weights.push(ws);
        index.push(map);
    }
    Ok(SimplicialComplex { simplices, weights, index })
}

fn face(s: &[usize], skip: usize) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(j, _)| j != skip)
        .map(|(_, &v)| v)
        .collect()
}

impl SimplicialComplex {
    pub fn max_degree(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices[0].len()
    }

    /// Number of simplices of degree `degree` (zero above the top degree).
    pub fn count(&self, degree: usize) -> usize {
        self.simplices.get(degree).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, degree: usize) -> &[Vec<usize>] {
        self.simplices.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn weights(&self, degree: usize) -> &[f64] {
        self.weights.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn total_weight(&self, degree: usize) -> f64 {
        self.weights(degree).iter().sum()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let degree = simplex.len().checked_sub(1)?;
        self.index.get(degree)?.get(simplex).copied()
    }

    /// Canonical description (every simplex listed, explicit weights).
    pub fn to_description(&self) -> ComplexDescription {
        let mut d = ComplexDescription::new();
        for (k, (ss, ws)) in self.simplices.iter().zip(&self.weights).enumerate() {
            d.simplices.insert(k, ss.clone());
            d.weights.insert(k, ws.clone());
        }
        d
    }

    fn check_degree(&self, degree: usize, min: usize, max: usize) -> Result<()> {
        if degree < min || degree > max {
            Err(Error::DegreeOutOfRange { degree, min, max })
        } else {
            Ok(())
        }
    }

    /// Checks that a cochain belongs to this complex.
    pub fn check_cochain(&self, omega: &Cochain, degree: usize) -> Result<()> {
        let expected_len = self.count(degree);
        if omega.degree() != degree || omega.len() != expected_len {
            return Err(Error::CochainMismatch {
                expected_degree: degree,
                expected_len,
                degree: omega.degree(),
                len: omega.len(),
            });
        }
        Ok(())
    }

    /// Signed incidence of degree `degree`: for each `(degree+1)`-simplex the
    /// list of `(face index, sign)` with the alternating-face sign.
    pub fn incidence(&self, degree: usize) -> Vec<Vec<(usize, i8)>> {
        self.simplices(degree + 1)
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let f = face(s, i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (self.index[degree][&f], sign)
                    })
                    .collect()
            })
            .collect()
    }

    /// Verifies `d_{ℓ+1} d_ℓ = 0` in integer arithmetic for every degree.
    pub fn coboundary_squares_to_zero(&self) -> bool {
        for degree in 0..self.max_degree().saturating_sub(1) {
            let lower = self.incidence(degree);
            let upper = self.incidence(degree + 1);
            for row in &upper {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(mid, s1) in row {
                    for &(col, s2) in &lower[mid] {
                        *acc.entry(col).or_insert(0) += i64::from(s1) * i64::from(s2);
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Dense `d_ℓ` without range checks; zero rows when `ℓ` is the top degree.
    pub(crate) fn coboundary_matrix(&self, degree: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.count(degree + 1), self.count(degree));
        for (r, row) in self.incidence(degree).into_iter().enumerate() {
            for (c, s) in row {
                m[(r, c)] = f64::from(s);
            }
        }
        m
    }

    /// Dense `δ_ℓ = W_{ℓ-1}^{-1} d_{ℓ-1}ᵀ W_ℓ` for `ℓ ≥ 1`.
    pub(crate) fn codifferential_matrix(&self, degree: usize) -> DMatrix<f64> {
        let d = self.coboundary_matrix(degree - 1);
        let lower = self.weights(degree - 1);
        let upper = self.weights(degree);
        DMatrix::from_fn(d.ncols(), d.nrows(), |i, j| d[(j, i)] * upper[j] / lower[i])
    }

    pub(crate) fn laplacian_matrix(&self, degree: usize) -> DMatrix<f64> {
        let n = self.count(degree);
        let mut lap = DMatrix::zeros(n, n);
        if degree >= 1 {
            lap += self.coboundary_matrix(degree - 1) * self.codifferential_matrix(degree);
        }
        if degree < self.max_degree() {
            lap += self.codifferential_matrix(degree + 1) * self.coboundary_matrix(degree);
        }
        lap
    }

    pub fn coboundary(&self, degree: usize) -> Result<OperatorMatrix> {
        if self.max_degree() == 0 {
            return Err(Error::DegreeOutOfRange { degree, min: 0, max: 0 });
        }
        self.check_degree(degree, 0, self.max_degree() - 1)?;
        Ok(OperatorMatrix::new(degree, degree + 1, self.coboundary_matrix(degree)))
    }

    pub fn codifferential(&self, degree: usize) -> Result<OperatorMatrix> {
        self.check_degree(degree, 1, self.max_degree().max(1))?;
        if degree > self.max_degree() {
            return Err(Error::DegreeOutOfRange { degree, min: 1, max: self.max_degree() });
        }
        Ok(OperatorMatrix::new(degree, degree - 1, self.codifferential_matrix(degree)))
    }

    /// `Δ_ℓ = d_{ℓ-1} δ_ℓ + δ_{ℓ+1} d_ℓ`, flagged self-adjoint after the
    /// weighted check.
    pub fn hodge_laplacian(&self, degree: usize) -> Result<OperatorMatrix> {
        self.check_degree(degree, 0, self.max_degree())?;
        OperatorMatrix::self_adjoint(degree, self.laplacian_matrix(degree), self.weights(degree))
    }

    /// Betti numbers over the reals from ranks of the incidence matrices.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.max_degree())
            .map(|k| matrix_rank(&self.coboundary_matrix(k)))
            .collect();
        (0..=self.max_degree())
            .map(|k| {
                let up = ranks.get(k).copied().unwrap_or(0);
                let down = if k == 0 { 0 } else { ranks[k - 1] };
                self.count(k) - up - down
            })
            .collect()
    }

    /// Weighted `ℓ^p` norm of a cochain on this complex.
    pub fn lp_norm(&self, omega: &Cochain, p: f64) -> Result<f64> {
        self.check_cochain(omega, omega.degree())?;
        weighted_lp_norm(omega.values(), self.weights(omega.degree()), p)
    }

    pub fn inner(&self, a: &Cochain, b: &Cochain) -> Result<f64> {
        self.check_cochain(a, a.degree())?;
        self.check_cochain(b, a.degree())?;
        Ok(weighted_dot(a.values(), b.values(), self.weights(a.degree())))
    }

    /// Graph distance between vertices (by position in `simplices(0)`),
    /// `None` when disconnected.
    pub fn vertex_distances(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.vertex_count();
        let adjacency = self.vertex_adjacency();
        (0..n)
            .map(|src| {
                let mut dist = vec![None; n];
                dist[src] = Some(0);
                let mut queue = VecDeque::from([src]);
                while let Some(v) = queue.pop_front() {
                    let dv = dist[v].unwrap_or(0);
                    for &u in &adjacency[v] {
                        if dist[u].is_none() {
                            dist[u] = Some(dv + 1);
                            queue.push_back(u);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    pub(crate) fn vertex_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.vertex_count()];
        for e in self.simplices(1) {
            let a = self.index[0][&e[..1]];
            let b = self.index[0][&e[1..]];
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        adjacency
    }

    /// Connected component label of every vertex (by position).
    pub fn vertex_components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let adjacency = self.vertex_adjacency();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &adjacency[v] {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

/// Numerical rank with singular values cut at `KERNEL_TOL · σ_max`.
pub fn matrix_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().fold(0.0_f64, |a, &b| a.max(b));
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > KERNEL_TOL * smax).count()
}

/// `(Σ w_i |x_i|^p)^{1/p}`, or `max |x_i|` for `p = ∞`.
pub fn weighted_lp_norm(values: &[f64], weights: &[f64], p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let m = values.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    if p.is_infinite() || m == 0.0 {
        return Ok(m);
    }
    let s: f64 = values
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w * (x.abs() / m).powf(p))
        .sum();
    Ok(m * s.powf(1.0 / p))
}

pub fn weighted_dot(a: &[f64], b: &[f64], weights: &[f64]) -> f64 {
    a.iter().zip(b).zip(weights).map(|((x, y), w)| x * y * w).sum()
}

pub(crate) fn weighted_l2(values: &[f64], weights: &[f64]) -> f64 {
    weighted_dot(values, values, weights).sqrt()
}

/// A real-valued function on the oriented simplices of one degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cochain {
    degree: usize,
    values: Vec<f64>,
}

impl Cochain {
    pub fn new(degree: usize, values: Vec<f64>) -> Self {
        Self { degree, values }
    }

    pub fn zeros(degree: usize, len: usize) -> Self {
        Self::new(degree, vec![0.0; len])
    }

    pub fn from_vector(degree: usize, v: DVector<f64>) -> Self {
        Self::new(degree, v.as_slice().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.values)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.degree, self.values.iter().map(|x| x * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self::new(self.degree, self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self::new(self.degree, self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, &b| a.max(b.abs()))
    }
}

/// A linear map between cochain spaces of two degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    domain_degree: usize,
    codomain_degree: usize,
    matrix: DMatrix<f64>,
    self_adjoint: bool,
}

impl OperatorMatrix {
    pub fn new(domain_degree: usize, codomain_degree: usize, matrix: DMatrix<f64>) -> Self {
        Self { domain_degree, codomain_degree, matrix, self_adjoint: false }
    }

    /// Wraps an endomorphism of degree `degree`, verifying weighted
    /// self-adjointness to `ADJOINT_TOL`.
    pub fn self_adjoint(degree: usize, matrix: DMatrix<f64>, weights: &[f64]) -> Result<Self> {
        let mut op = Self::new(degree, degree, matrix);
        if op.matrix.nrows() != weights.len() || op.matrix.ncols() != weights.len() {
            return Err(Error::ShapeMismatch {
                expected: (weights.len(), weights.len()),
                found: op.matrix.shape(),
            });
        }
        let residual = op.adjoint_residual(weights);
        if residual > ADJOINT_TOL {
            return Err(Error::NotSelfAdjoint { residual });
        }
        op.self_adjoint = true;
        Ok(op)
    }

    pub fn domain_degree(&self) -> usize {
        self.domain_degree
    }

    pub fn codomain_degree(&self) -> usize {
        self.codomain_degree
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.self_adjoint
    }

    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }

    /// Weighted adjoint `W_dom^{-1} Aᵀ W_cod`.
    pub fn adjoint(&self, domain_weights: &[f64], codomain_weights: &[f64]) -> Self {
        let a = &self.matrix;
        let m = DMatrix::from_fn(a.ncols(), a.nrows(), |i, j| {
            a[(j, i)] * codomain_weights[j] / domain_weights[i]
        });
        Self::new(self.codomain_degree, self.domain_degree, m)
    }

    /// `‖A − A*‖_F / ‖A‖_F` for an endomorphism with weights `W`.
    pub fn adjoint_residual(&self, weights: &[f64]) -> f64 {
        let norm = self.matrix.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let adj = self.adjoint(weights, weights);
        (&self.matrix - adj.matrix).norm() / norm
    }

    pub fn apply(&self, omega: &Cochain) -> Result<Cochain> {
        if omega.degree() != self.domain_degree || omega.len() != self.matrix.ncols() {
            return Err(Error::CochainMismatch {
                expected_degree: self.domain_degree,
                expected_len: self.matrix.ncols(),
                degree: omega.degree(),
                len: omega.len(),
            });
        }
        Ok(Cochain::from_vector(self.codomain_degree, &self.matrix * omega.to_vector()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.codomain_degree != self.domain_degree || other.matrix.nrows() != self.matrix.ncols() {
            return Err(Error::ShapeMismatch {
                expected: (self.matrix.ncols(), other.matrix.ncols()),
                found: other.matrix.shape(),
            });
        }
        Ok(Self::new(other.domain_degree, self.codomain_degree, &self.matrix * &other.matrix))
    }
}
