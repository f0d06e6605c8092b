//! Finite simplicial complexes, integral chains, and boundary matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matrix::Mat;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("complex has no top simplices")]
    Empty,
    #[error("top simplex {simplex:?} has the wrong number of vertices for dimension {dimension}")]
    WrongArity { simplex: Vec<usize>, dimension: usize },
    #[error("vertex tuple {0:?} is not strictly increasing")]
    VertexOrder(Vec<usize>),
    #[error("top simplex {0:?} appears more than once")]
    DuplicateTop(Vec<usize>),
    #[error("expected {expected} orientation signs, got {got}")]
    OrientationCount { expected: usize, got: usize },
    #[error("orientation signs must be +1 or -1, got {0}")]
    OrientationValue(i64),
    #[error("complex file is not valid JSON: {0}")]
    Json(String),
}

/// On-disk description: the top-dimensional simplices (faces are closed over
/// automatically) and optional orientation signs, one per top simplex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dimension: usize,
    pub top_simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<Vec<i64>>,
}

/// A finite pure simplicial complex.
///
/// Simplices in each dimension are stored as strictly increasing vertex
/// tuples in lexicographic order, so an index into `simplices(k)` identifies
/// a simplex and doubles as a chain-coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    dimension: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    orientations: Option<Vec<i64>>,
}

impl SimplicialComplex {
    pub fn from_top_simplices(
        dimension: usize,
        top_simplices: Vec<Vec<usize>>,
        orientations: Option<Vec<i64>>,
    ) -> Result<Self, ComplexError> {
        if top_simplices.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut seen = BTreeSet::new();
        for top in &top_simplices {
            if top.len() != dimension + 1 {
                return Err(ComplexError::WrongArity {
                    simplex: top.clone(),
                    dimension,
                });
            }
            if !top.windows(2).all(|w| w[0] < w[1]) {
                return Err(ComplexError::VertexOrder(top.clone()));
            }
            if !seen.insert(top.clone()) {
                return Err(ComplexError::DuplicateTop(top.clone()));
            }
        }
        if let Some(signs) = &orientations {
            if signs.len() != top_simplices.len() {
                return Err(ComplexError::OrientationCount {
                    expected: top_simplices.len(),
                    got: signs.len(),
                });
            }
            if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
                return Err(ComplexError::OrientationValue(bad));
            }
        }

        // Close over faces, one dimension at a time.
        let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dimension + 1];
        levels[dimension] = seen;
        for k in (1..=dimension).rev() {
            let mut faces = BTreeSet::new();
            for simplex in &levels[k] {
                for drop in 0..simplex.len() {
                    let mut face = simplex.clone();
                    face.remove(drop);
                    faces.insert(face);
                }
            }
            levels[k - 1] = faces;
        }

        let simplices: Vec<Vec<Vec<usize>>> = levels
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();

        // Orientation signs were given in input order; re-key them to the
        // sorted top-simplex order.
        let orientations = orientations.map(|signs| {
            let lookup: &HashMap<Vec<usize>, usize> = &index[dimension];
            let mut by_index = vec![0i64; top_simplices.len()];
            for (top, sign) in top_simplices.iter().zip(&signs) {
                by_index[lookup[top]] = *sign;
            }
            by_index
        });

        Ok(SimplicialComplex {
            dimension,
            simplices,
            index,
            orientations,
        })
    }

    pub fn from_file(file: ComplexFile) -> Result<Self, ComplexError> {
        SimplicialComplex::from_top_simplices(file.dimension, file.top_simplices, file.orientations)
    }

    pub fn from_json_str(text: &str) -> Result<Self, ComplexError> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        SimplicialComplex::from_file(file)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The `k`-simplices, each a strictly increasing vertex tuple, in
    /// lexicographic order. Empty above the dimension.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn simplex_index(&self, k: usize, tuple: &[usize]) -> Option<usize> {
        self.index.get(k)?.get(tuple).copied()
    }

    /// Vertex labels in increasing order.
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|v| v[0]).collect()
    }

    /// Orientation signs per top simplex (in sorted top-simplex order), when
    /// the complex was built with them.
    pub fn orientations(&self) -> Option<&[i64]> {
        self.orientations.as_deref()
    }

    /// The matrix of the boundary map from `k`-chains to `(k-1)`-chains.
    /// For `k = 0` this is the zero map out of the vertices.
    pub(crate) fn boundary_matrix(&self, k: usize) -> Mat {
        if k == 0 {
            return Mat::zeros(0, self.simplex_count(0));
        }
        if k > self.dimension {
            return Mat::zeros(self.simplex_count(self.dimension.min(k - 1)), 0);
        }
        let rows = self.simplex_count(k - 1);
        let cols = self.simplex_count(k);
        let mut out = Mat::zeros(rows, cols);
        for (j, simplex) in self.simplices(k).iter().enumerate() {
            for drop in 0..simplex.len() {
                let mut face = simplex.clone();
                face.remove(drop);
                let i = self.index[k - 1][&face];
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                out.set(i, j, BigInt::from(sign));
            }
        }
        out
    }
}

/// An integral chain in a fixed degree, stored sparsely; zero coefficients
/// are never kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialChain {
    degree: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

impl SimplicialChain {
    pub fn zero(degree: usize) -> Self {
        SimplicialChain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new(degree: usize, entries: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut chain = SimplicialChain::zero(degree);
        for (idx, c) in entries {
            chain.add_coefficient(idx, c);
        }
        chain
    }

    pub fn from_dense(degree: usize, dense: &[BigInt]) -> Self {
        SimplicialChain::new(
            degree,
            dense
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.clone())),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, idx: usize) -> BigInt {
        self.coeffs.get(&idx).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn add_coefficient(&mut self, idx: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(idx).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    /// self += k * other (degrees must match).
    pub fn add_assign_scaled(&mut self, other: &SimplicialChain, k: &BigInt) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for (i, c) in other.iter() {
            self.add_coefficient(i, c * k);
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.values().map(|c| c.abs()).sum()
    }

    pub fn scale(&self, m: &BigInt) -> SimplicialChain {
        if m.is_zero() {
            return SimplicialChain::zero(self.degree);
        }
        SimplicialChain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c * m)).collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        for (&i, c) in &self.coeffs {
            assert!(i < len, "chain index {i} out of range {len}");
            out[i] = c.clone();
        }
        out
    }

    /// Boundary of this chain inside the given complex.
    pub fn boundary(&self, complex: &SimplicialComplex) -> SimplicialChain {
        assert!(self.degree >= 1, "boundary needs degree at least 1");
        let mut out = SimplicialChain::zero(self.degree - 1);
        for (&idx, c) in &self.coeffs {
            let simplex = &complex.simplices(self.degree)[idx];
            for drop in 0..simplex.len() {
                let mut face = simplex.clone();
                face.remove(drop);
                let i = complex
                    .simplex_index(self.degree - 1, &face)
                    .expect("face of a simplex is in the complex");
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                out.add_coefficient(i, c * BigInt::from(sign));
            }
        }
        out
    }

    pub fn is_cycle(&self, complex: &SimplicialComplex) -> bool {
        self.degree == 0 || self.boundary(complex).is_zero()
    }
}
