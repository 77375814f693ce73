//! Linear matroids over a prime field: graphic, out-partition, uniform,
//! direct sums, truncation, and the layered matroid used by the extension
//! solver.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{IncrementalBasis, Matrix, PrimeField};
use crate::graph::EquivalentDigraph;

/// One copy of a base element inside a layer of a direct sum. Matroids
/// that are not sums use layer 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundElement {
    pub layer: usize,
    pub element: usize,
}

impl GroundElement {
    pub fn new(layer: usize, element: usize) -> Self {
        GroundElement { layer, element }
    }
}

/// A matroid given by the columns of a matrix: a set of ground elements is
/// independent iff its columns are linearly independent.
#[derive(Debug, Clone)]
pub struct LinearMatroid {
    field: PrimeField,
    matrix: Matrix,
    elements: Vec<GroundElement>,
    column_of: HashMap<GroundElement, usize>,
    rank: usize,
}

impl LinearMatroid {
    pub fn from_matrix(field: PrimeField, matrix: Matrix, elements: Vec<GroundElement>) -> Result<Self> {
        if elements.len() != matrix.cols() {
            return Err(Error::InvalidArgument(format!(
                "{} ground elements for {} columns",
                elements.len(),
                matrix.cols()
            )));
        }
        let mut column_of = HashMap::with_capacity(elements.len());
        for (c, &e) in elements.iter().enumerate() {
            if column_of.insert(e, c).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "ground element (layer {}, element {}) listed twice",
                    e.layer, e.element
                )));
            }
        }
        let rank = matrix.rank(&field);
        Ok(LinearMatroid {
            field,
            matrix,
            elements,
            column_of,
            rank,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> &[GroundElement] {
        &self.elements
    }

    pub fn column_index(&self, e: GroundElement) -> Result<usize> {
        self.column_of.get(&e).copied().ok_or(Error::UnknownElement {
            layer: e.layer,
            element: e.element,
        })
    }

    pub fn column(&self, e: GroundElement) -> Result<Vec<u64>> {
        Ok(self.matrix.column(self.column_index(e)?))
    }

    pub fn is_independent(&self, set: &[GroundElement]) -> Result<bool> {
        let mut basis = IncrementalBasis::new(self.matrix.rows(), self.field);
        let mut columns = Vec::with_capacity(set.len());
        for &e in set {
            columns.push(self.column_index(e)?);
        }
        Ok(columns.into_iter().all(|c| basis.insert(&self.matrix.column(c))))
    }
}

/// Arcs of `d` as layer-0 elements; the column of both orientations of an
/// edge `uv` (`u < v`) is `e_u - e_v`, so antiparallel arcs are parallel.
pub fn graphic_representation(d: &EquivalentDigraph, field: PrimeField) -> LinearMatroid {
    let n = d.base.n();
    let mut matrix = Matrix::zeros(n, d.arcs.len());
    for (a, _) in d.arcs.iter().enumerate() {
        let (u, v) = d.base.edges()[EquivalentDigraph::edge_of(a)];
        matrix.set(u, a, 1);
        matrix.set(v, a, field.neg(1));
    }
    let elements = (0..d.arcs.len()).map(|a| GroundElement::new(0, a)).collect();
    LinearMatroid::from_matrix(field, matrix, elements).expect("arc ids are distinct")
}

/// Column of arc `(u, v)` is `e_v`, or zero when `v` is the root.
pub fn out_partition_representation(d: &EquivalentDigraph, field: PrimeField) -> LinearMatroid {
    let n = d.base.n();
    let mut matrix = Matrix::zeros(n, d.arcs.len());
    for (a, arc) in d.arcs.iter().enumerate() {
        if arc.head != d.root {
            matrix.set(arc.head, a, 1);
        }
    }
    let elements = (0..d.arcs.len()).map(|a| GroundElement::new(0, a)).collect();
    LinearMatroid::from_matrix(field, matrix, elements).expect("arc ids are distinct")
}

/// Uniform matroid of rank `rank` on `ground_size` elements: a Vandermonde
/// matrix with evaluation point `a + 1` for element `a`.
pub fn uniform_representation(ground_size: usize, rank: usize, field: PrimeField) -> Result<LinearMatroid> {
    if field.modulus() <= ground_size as u64 {
        return Err(Error::FieldTooSmall(format!(
            "a uniform matroid on {ground_size} elements needs a modulus above {ground_size}, got {}",
            field.modulus()
        )));
    }
    if rank > ground_size {
        return Err(Error::InvalidArgument(format!(
            "rank {rank} exceeds ground size {ground_size}"
        )));
    }
    let mut matrix = Matrix::zeros(rank, ground_size);
    for a in 0..ground_size {
        let x = a as u64 + 1;
        let mut power = 1;
        for r in 0..rank {
            matrix.set(r, a, power);
            power = field.mul(power, x);
        }
    }
    let elements = (0..ground_size).map(|a| GroundElement::new(0, a)).collect();
    LinearMatroid::from_matrix(field, matrix, elements)
}

/// Block-diagonal sum. Element `(layer, x)` of part `i` becomes
/// `(i, x)`; parts are expected to use a single layer each.
pub fn direct_sum(parts: &[LinearMatroid]) -> Result<LinearMatroid> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidArgument("direct sum of no matroids".into()));
    };
    let field = first.field;
    if parts.iter().any(|m| m.field != field) {
        return Err(Error::FieldMismatch);
    }
    let rows: usize = parts.iter().map(|m| m.matrix.rows()).sum();
    let cols: usize = parts.iter().map(|m| m.matrix.cols()).sum();
    let mut matrix = Matrix::zeros(rows, cols);
    let mut elements = Vec::with_capacity(cols);
    let (mut r0, mut c0) = (0, 0);
    for (i, part) in parts.iter().enumerate() {
        for c in 0..part.matrix.cols() {
            for r in 0..part.matrix.rows() {
                matrix.set(r0 + r, c0 + c, part.matrix.get(r, c));
            }
            elements.push(GroundElement::new(i, part.elements[c].element));
        }
        r0 += part.matrix.rows();
        c0 += part.matrix.cols();
    }
    LinearMatroid::from_matrix(field, matrix, elements)
}

/// Left-multiplies by a seeded random `rank × rows` matrix. Sets of size
/// at most `rank` keep their independence status except with probability
/// at most `rank(m) · rank / modulus`; larger sets become dependent.
pub fn truncate(m: &LinearMatroid, rank: usize, seed: u64) -> Result<LinearMatroid> {
    if rank > m.rank {
        return Err(Error::InvalidArgument(format!(
            "cannot truncate a rank {} matroid to rank {rank}",
            m.rank
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mixer = Matrix::zeros(rank, m.matrix.rows());
    for r in 0..rank {
        for c in 0..m.matrix.rows() {
            mixer.set(r, c, m.field.random(&mut rng));
        }
    }
    let matrix = mixer.mul(&m.matrix, &m.field);
    let column_of = m.column_of.clone();
    let actual = matrix.rank(&m.field);
    Ok(LinearMatroid {
        field: m.field,
        matrix,
        elements: m.elements.clone(),
        column_of,
        rank: actual,
    })
}

/// The three copies of an arc used for one branching: graphic layer,
/// out-partition layer and the shared uniform layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcTriple {
    pub arc: usize,
    /// Branching index, 0-based.
    pub branch: usize,
    pub elements: [GroundElement; 3],
}

/// The truncated sum `graphic × p ⊕ out-partition × p ⊕ uniform`, with
/// layer `2h` the graphic copy and layer `2h + 1` the out-partition copy for
/// branching `h`, and layer `2p` the uniform matroid of rank `p(k - 1)`.
#[derive(Debug, Clone)]
pub struct SseMatroid {
    pub matroid: LinearMatroid,
    pub p: usize,
    pub k: usize,
    pub arc_count: usize,
}

impl SseMatroid {
    pub fn triple(&self, arc: usize, branch: usize) -> ArcTriple {
        debug_assert!(arc < self.arc_count && branch < self.p);
        ArcTriple {
            arc,
            branch,
            elements: [
                GroundElement::new(2 * branch, arc),
                GroundElement::new(2 * branch + 1, arc),
                GroundElement::new(2 * self.p, arc),
            ],
        }
    }

    /// Column index of a ground element; columns are laid out layer by
    /// layer.
    pub fn column_index(&self, e: GroundElement) -> usize {
        e.layer * self.arc_count + e.element
    }

    /// Target rank `3p(k - 1)`.
    pub fn target_rank(&self) -> usize {
        3 * self.p * (self.k - 1)
    }
}

pub fn build_sse_matroid(d: &EquivalentDigraph, k: usize, p: usize, field: PrimeField, seed: u64) -> Result<SseMatroid> {
    if k < 2 || p == 0 {
        return Err(Error::InvalidArgument(format!("layered matroid needs k >= 2 and p >= 1, got k={k}, p={p}")));
    }
    let graphic = graphic_representation(d, field);
    let out = out_partition_representation(d, field);
    let uniform_rank = (p * (k - 1)).min(d.arcs.len());
    let uniform = uniform_representation(d.arcs.len(), uniform_rank, field)?;
    let mut parts = Vec::with_capacity(2 * p + 1);
    for _ in 0..p {
        parts.push(graphic.clone());
        parts.push(out.clone());
    }
    parts.push(uniform);
    let sum = direct_sum(&parts)?;
    let target = (3 * p * (k - 1)).min(sum.rank());
    let matroid = truncate(&sum, target, seed)?;
    Ok(SseMatroid {
        matroid,
        p,
        k,
        arc_count: d.arcs.len(),
    })
}
