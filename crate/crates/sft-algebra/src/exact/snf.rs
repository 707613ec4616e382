use super::{Int, IntMatrix};
use crate::Result;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

/// Result of a Smith normal form computation: `u * m * v = d` with
/// `u, v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

/// A finitely generated abelian group in invariant-factor form:
/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FGAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    fn check_invariants(&self) {
        for w in self.torsion.windows(2) {
            debug_assert!(
                w[1].is_multiple_of(&w[0]),
                "torsion divisibility chain broken"
            );
        }
        debug_assert!(self.torsion.iter().all(|d| *d >= Int::from(2)));
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Smith normal form over the integers.
///
/// Pivoting picks the smallest nonzero absolute value in the remaining
/// block, which keeps coefficient growth tame at this scale. Row and
/// column operations are mirrored into `u` and `v`, so the defining
/// equation `u*m*v = d` can be (and in tests, is) re-checked exactly.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let add_row = |d: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, c: &Int| {
        for j in 0..cols {
            let x = d.get(dst, j) + c * d.get(src, j);
            d.set(dst, j, x);
        }
        for j in 0..rows {
            let x = u.get(dst, j) + c * u.get(src, j);
            u.set(dst, j, x);
        }
    };
    let add_col = |d: &mut IntMatrix, v: &mut IntMatrix, dst: usize, src: usize, c: &Int| {
        for i in 0..rows {
            let x = d.get(i, dst) + c * d.get(i, src);
            d.set(i, dst, x);
        }
        for i in 0..cols {
            let x = v.get(i, dst) + c * v.get(i, src);
            v.set(i, dst, x);
        }
    };
    let swap_rows = |d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize| {
        for j in 0..cols {
            let (x, y) = (d.get(a, j).clone(), d.get(b, j).clone());
            d.set(a, j, y);
            d.set(b, j, x);
        }
        for j in 0..rows {
            let (x, y) = (u.get(a, j).clone(), u.get(b, j).clone());
            u.set(a, j, y);
            u.set(b, j, x);
        }
    };
    let swap_cols = |d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize| {
        for i in 0..rows {
            let (x, y) = (d.get(i, a).clone(), d.get(i, b).clone());
            d.set(i, a, y);
            d.set(i, b, x);
        }
        for i in 0..cols {
            let (x, y) = (v.get(i, a).clone(), v.get(i, b).clone());
            v.set(i, a, y);
            v.set(i, b, x);
        }
    };
    let negate_row = |d: &mut IntMatrix, u: &mut IntMatrix, r: usize| {
        for j in 0..cols {
            let x = -d.get(r, j);
            d.set(r, j, x);
        }
        for j in 0..rows {
            let x = -u.get(r, j);
            u.set(r, j, x);
        }
    };

    let n = rows.min(cols);
    for k in 0..n {
        'pivot: loop {
            // Smallest nonzero |entry| in the remaining block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !d.get(i, j).is_zero()
                        && best.is_none_or(|(bi, bj)| d.get(i, j).abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivot };
            if pi != k {
                swap_rows(&mut d, &mut u, k, pi);
            }
            if pj != k {
                swap_cols(&mut d, &mut v, k, pj);
            }
            if d.get(k, k).is_negative() {
                negate_row(&mut d, &mut u, k);
            }

            // Reduce the pivot row and column.
            let mut clean = true;
            for i in k + 1..rows {
                if !d.get(i, k).is_zero() {
                    let q = -(d.get(i, k).div_floor(d.get(k, k)));
                    add_row(&mut d, &mut u, i, k, &q);
                    if !d.get(i, k).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !d.get(k, j).is_zero() {
                    let q = -(d.get(k, j).div_floor(d.get(k, k)));
                    add_col(&mut d, &mut v, j, k, &q);
                    if !d.get(k, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }

            // Enforce divisibility into the remaining block: if some
            // entry is not a multiple of the pivot, fold its row in and
            // restart the pivot step.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !d.get(i, j).is_multiple_of(d.get(k, k)) {
                        add_row(&mut d, &mut u, k, i, &Int::from(1));
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    SmithNormalForm { u, d, v }
}

/// Cokernel `Z^n / im(M)` of a square integer matrix, read off the
/// Smith normal form: zero diagonal entries contribute free rank,
/// entries `>= 2` contribute torsion.
pub fn cokernel(m: &IntMatrix) -> Result<FGAbelianGroup> {
    let n = m.square_size()?;
    let snf = smith_normal_form(m);
    let mut free_rank = 0;
    let mut torsion = Vec::new();
    for i in 0..n {
        let d = snf.d.get(i, i).abs();
        if d.is_zero() {
            free_rank += 1;
        } else if d >= Int::from(2) {
            torsion.push(d);
        }
    }
    let g = FGAbelianGroup { free_rank, torsion };
    g.check_invariants();
    Ok(g)
}
