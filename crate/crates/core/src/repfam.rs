//! q-representative subfamilies of independent sets in a linear matroid.
//!
//! Every member `S` of size `s` is mapped to the vector of its `s × s`
//! minors (one per `s`-subset of rows, colex order). A member whose vector
//! lies in the span of earlier kept vectors is dropped: by the Laplace
//! expansion of `det[A_S | A_Y | E_Z]` along the first `s` columns, any
//! completion `Y` that works for the dropped member works for some kept one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{IncrementalBasis, Matrix, PrimeField};
use crate::matroid::{GroundElement, LinearMatroid};

/// Seed used when a matroid must be truncated to rank `s + q` before
/// reducing.
const COMPRESSION_SEED: u64 = 0x005e_ed0f_5e75;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub member_size: usize,
    pub sets: Vec<Vec<GroundElement>>,
}

impl SetFamily {
    pub fn new(member_size: usize, sets: Vec<Vec<GroundElement>>) -> Result<Self> {
        if let Some(bad) = sets.iter().find(|s| s.len() != member_size) {
            return Err(Error::InvalidArgument(format!(
                "member of size {} in a family of {member_size}-sets",
                bad.len()
            )));
        }
        Ok(SetFamily { member_size, sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// `x` and `y` are disjoint and `x ∪ y` is independent.
pub fn extends(m: &LinearMatroid, x: &[GroundElement], y: &[GroundElement]) -> Result<bool> {
    if x.iter().any(|e| y.contains(e)) {
        // still validate membership so unknown elements are reported
        for &e in x.iter().chain(y) {
            m.column_index(e)?;
        }
        return Ok(false);
    }
    let union: Vec<GroundElement> = x.iter().chain(y).copied().collect();
    m.is_independent(&union)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Keeps at most `C(s + q, q)` members that q-represent `fam`. Members
/// that are not independent are dropped first.
pub fn reduce_family(m: &LinearMatroid, fam: &SetFamily, q: usize) -> Result<SetFamily> {
    let s = fam.member_size;
    if s + q > m.rank() {
        return Err(Error::InvalidArgument(format!(
            "member size {s} plus budget {q} exceeds matroid rank {}",
            m.rank()
        )));
    }
    let mut members = Vec::with_capacity(fam.sets.len());
    for set in &fam.sets {
        members.push(set.iter().map(|&e| m.column_index(e)).collect::<Result<Vec<_>>>()?);
    }
    let matrix = compress(m.matrix(), m.field(), s + q);
    let keep = representative_indices(m.field(), &matrix, &members, s);
    Ok(SetFamily {
        member_size: s,
        sets: keep.into_iter().map(|i| fam.sets[i].clone()).collect(),
    })
}

/// Mixes the rows down to `rank` rows with a fixed seeded random matrix;
/// returns the input unchanged when it has at most `rank` rows.
fn compress(matrix: &Matrix, field: &PrimeField, rank: usize) -> Matrix {
    if matrix.rows() <= rank {
        return matrix.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(COMPRESSION_SEED);
    let mut mixer = Matrix::zeros(rank, matrix.rows());
    for r in 0..rank {
        for c in 0..matrix.rows() {
            mixer.set(r, c, field.random(&mut rng));
        }
    }
    mixer.mul(matrix, field)
}

/// Indices of the members kept by the minor-vector basis, in input order.
/// `members` hold column indices of `matrix`, each exactly `s` of them.
pub fn representative_indices(field: &PrimeField, matrix: &Matrix, members: &[Vec<usize>], s: usize) -> Vec<usize> {
    let rows = matrix.rows();
    let dimension = binomial(rows, s);
    let row_sets = colex_subsets(rows, s);
    let mut basis = IncrementalBasis::new(dimension, *field);
    let mut kept = Vec::new();
    for (i, member) in members.iter().enumerate() {
        if basis.rank() == dimension {
            break;
        }
        let vector = minor_vector(field, matrix, member, &row_sets);
        if basis.insert(&vector) {
            kept.push(i);
        }
    }
    kept
}

/// All `s`-subsets of `0..rows` in colex order.
fn colex_subsets(rows: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(rows, s));
    if s > rows {
        return out;
    }
    let mut current: Vec<usize> = (0..s).collect();
    loop {
        out.push(current.clone());
        // advance the lowest position that has room below its successor
        let bump = (0..s).find(|&i| {
            let limit = if i + 1 < s { current[i + 1] } else { rows };
            current[i] + 1 < limit
        });
        let Some(i) = bump else {
            return out;
        };
        current[i] += 1;
        for (j, slot) in current.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

fn minor_vector(field: &PrimeField, matrix: &Matrix, member: &[usize], row_sets: &[Vec<usize>]) -> Vec<u64> {
    let s = member.len();
    let mut block = vec![0u64; s * s];
    row_sets
        .iter()
        .map(|rows| {
            for (r, &row) in rows.iter().enumerate() {
                for (c, &col) in member.iter().enumerate() {
                    block[r * s + c] = matrix.get(row, col);
                }
            }
            determinant(field, &mut block, s)
        })
        .collect()
}

/// Determinant of an `s × s` row-major block, destroying it.
pub(crate) fn determinant(field: &PrimeField, a: &mut [u64], s: usize) -> u64 {
    let mut det = 1;
    for col in 0..s {
        let Some(pivot) = (col..s).find(|&r| a[r * s + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for c in 0..s {
                a.swap(pivot * s + c, col * s + c);
            }
            det = field.neg(det);
        }
        let p = a[col * s + col];
        det = field.mul(det, p);
        let inv = field.inv(p);
        for r in col + 1..s {
            let factor = field.mul(a[r * s + col], inv);
            if factor != 0 {
                for c in col..s {
                    let v = field.sub(a[r * s + c], field.mul(factor, a[col * s + c]));
                    a[r * s + c] = v;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::uniform_representation;

    fn e(x: usize) -> GroundElement {
        GroundElement::new(0, x)
    }

    #[test]
    fn colex_order() {
        assert_eq!(
            colex_subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(colex_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(colex_subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(colex_subsets(2, 3).is_empty());
        for (n, k) in [(6, 3), (7, 1), (8, 4)] {
            assert_eq!(colex_subsets(n, k).len(), binomial(n, k));
        }
    }

    #[test]
    fn determinant_small() {
        let f = PrimeField::new(7).unwrap();
        let mut a = vec![1, 2, 3, 4];
        assert_eq!(determinant(&f, &mut a, 2), f.reduce(-2));
        let mut z = vec![0, 1, 0, 1];
        assert_eq!(determinant(&f, &mut z, 2), 0);
    }

    #[test]
    fn extends_examples() {
        let m = uniform_representation(4, 2, PrimeField::new(5).unwrap()).unwrap();
        assert!(extends(&m, &[], &[e(1), e(2)]).unwrap());
        assert!(!extends(&m, &[e(1)], &[e(1)]).unwrap());
        assert!(extends(&m, &[e(0)], &[e(1)]).unwrap());
        assert!(!extends(&m, &[e(0), e(1)], &[e(2)]).unwrap());
    }

    #[test]
    fn uniform_singletons() {
        let m = uniform_representation(4, 2, PrimeField::new(5).unwrap()).unwrap();
        let fam = SetFamily::new(1, (0..4).map(|x| vec![e(x)]).collect()).unwrap();
        let reduced = reduce_family(&m, &fam, 1).unwrap();
        assert!(reduced.len() <= 2);
        // every single Y is extended by some kept member
        for y in 0..4 {
            let found = reduced.sets.iter().any(|x| extends(&m, x, &[e(y)]).unwrap());
            assert!(found, "y = {y}");
        }
    }

    #[test]
    fn trivial_budgets() {
        let m = uniform_representation(4, 2, PrimeField::new(5).unwrap()).unwrap();
        let fam = SetFamily::new(1, (0..4).map(|x| vec![e(x)]).collect()).unwrap();
        assert_eq!(reduce_family(&m, &fam, 0).unwrap().len(), 1);
        let empty = SetFamily::new(1, vec![]).unwrap();
        assert!(reduce_family(&m, &empty, 1).unwrap().is_empty());
        assert!(reduce_family(&m, &fam, 2).is_err());
    }
}
