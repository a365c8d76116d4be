//! Exact linear algebra used by the resultant and jet-dimension routines:
//! a fraction-free Bareiss determinant over any integral domain with exact
//! division, and a sparse-row Gaussian rank profile over the rationals.
//!
//! Invariants:
//! * No floating point; all arithmetic is exact.
//! * `rank_profile` returns the canonical pivot-column set of the row space
//!   (column `j` is a pivot iff it enlarges the rank of the first `j+1`
//!   columns), which is independent of the row order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::Rat;

/// Integral domain with exact division, enough for Bareiss elimination.
///
/// Constructors are instance-based (`zero_like`, `one_like`) so that rings
/// whose elements carry a context handle (e.g. polynomials over a number
/// field) can implement the trait.
pub trait Domain: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Quotient of an exact division; callers only divide Bareiss
    /// intermediates, which are divisible by construction.
    fn exact_div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

impl Domain for Rat {
    fn zero_like(&self) -> Self {
        Zero::zero()
    }
    fn one_like(&self) -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Determinant of a nonempty square matrix by fraction-free Bareiss
/// elimination.
///
/// Every intermediate value is a minor of the input, so entries never leave
/// the domain and only exact divisions occur.
pub fn bareiss_determinant<D: Domain>(mut m: Vec<Vec<D>>) -> D {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    debug_assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut sign_flip = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return m[k][k].zero_like();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = m[i][k].zero_like();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Sparse row vector over the rationals; keys are column indices, values
/// are nonzero.
pub type SparseRow = BTreeMap<usize, Rat>;

/// Pivot columns of the row space, in increasing order.
///
/// Rows are eliminated one at a time against the pivots found so far; a
/// row's surviving leading column becomes a new pivot. Rows that reduce to
/// zero contribute nothing. The returned set is the canonical column rank
/// profile for the given column ordering.
pub fn rank_profile(rows: impl IntoIterator<Item = SparseRow>) -> Vec<usize> {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, _)) = row.first_key_value() else {
                break;
            };
            let Some(pivot_row) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let factor = &row[&lead] / &pivot_row[&lead];
            for (col, val) in pivot_row {
                let delta = &factor * val;
                match row.entry(*col) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let next = e.get() - &delta;
                        if Zero::is_zero(&next) {
                            e.remove();
                        } else {
                            *e.get_mut() = next;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            debug_assert!(!row.contains_key(&lead));
        }
    }
    pivots.into_keys().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn sparse(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, rat(v))).collect()
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(bareiss_determinant(mat(&[&[7]])), rat(7));
        assert_eq!(bareiss_determinant(mat(&[&[1, 2], &[3, 4]])), rat(-2));
        // Needs a row swap at the first step.
        assert_eq!(bareiss_determinant(mat(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(
            bareiss_determinant(mat(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]])),
            rat(5)
        );
    }

    #[test]
    fn determinant_of_singular_matrix_is_zero() {
        assert_eq!(
            bareiss_determinant(mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])),
            rat(0)
        );
    }

    #[test]
    fn rank_profile_identifies_pivot_columns() {
        // Columns 0 and 2 are pivots: column 1 = 2 * column 0.
        let rows = vec![
            sparse(&[(0, 1), (1, 2), (2, 0)]),
            sparse(&[(0, 3), (1, 6), (2, 1)]),
            sparse(&[(0, 4), (1, 8), (2, 1)]),
        ];
        assert_eq!(rank_profile(rows), vec![0, 2]);
    }

    #[test]
    fn rank_profile_is_row_order_independent() {
        let a = sparse(&[(1, 1), (3, 2)]);
        let b = sparse(&[(1, 2), (3, 4), (4, 1)]);
        let c = sparse(&[(0, 5)]);
        let forward = rank_profile(vec![a.clone(), b.clone(), c.clone()]);
        let backward = rank_profile(vec![c, b, a]);
        assert_eq!(forward, vec![0, 1, 4]);
        assert_eq!(forward, backward);
    }

    #[test]
    fn zero_rows_contribute_nothing() {
        assert_eq!(rank_profile(vec![SparseRow::new(), sparse(&[(2, 1)])]), vec![2]);
    }
}
