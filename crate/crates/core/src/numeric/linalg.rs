//! Gaussian elimination over Q(ζ_n).

use super::cyclotomic::{lcm_order, CyclotomicValue};

/// Rank of a dense matrix (rows of equal length). Entries of mixed order are
/// lifted to a common field first.
pub fn rank(rows: &[Vec<CyclotomicValue>]) -> usize {
    row_echelon(rows).len()
}

/// Nonzero rows of a reduced row-echelon form, one per pivot.
pub fn row_echelon(rows: &[Vec<CyclotomicValue>]) -> Vec<Vec<CyclotomicValue>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let order = rows
        .iter()
        .flatten()
        .map(CyclotomicValue::order)
        .fold(1, lcm_order);
    let mut m: Vec<Vec<CyclotomicValue>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), width, "ragged matrix");
            r.iter().map(|x| x.lift(order).unwrap()).collect()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(p) = (pivot_row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].inverse().unwrap();
        let pivot: Vec<CyclotomicValue> = m[pivot_row].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        m[pivot_row] = pivot;
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

/// Dimension of {x : A x = 0} for an `rows × width` matrix.
pub fn nullity(rows: &[Vec<CyclotomicValue>], width: usize) -> usize {
    width - rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CyclotomicValue {
        CyclotomicValue::from_int(1, n)
    }

    #[test]
    fn rational_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![c(1), c(2)], vec![c(2), c(4)]]), 1);
        assert_eq!(rank(&[vec![c(1), c(2)], vec![c(0), c(1)], vec![c(3), c(3)]]), 2);
        assert_eq!(nullity(&[vec![c(1), c(1), c(0)]], 3), 2);
    }

    #[test]
    fn cyclotomic_rank() {
        // rows (1, ζ) and (ζ, ζ²) are proportional
        let z = |k| CyclotomicValue::zeta_pow(5, k);
        assert_eq!(rank(&[vec![z(0), z(1)], vec![z(1), z(2)]]), 1);
        assert_eq!(rank(&[vec![z(0), z(1)], vec![z(1), z(3)]]), 2);
    }
}
