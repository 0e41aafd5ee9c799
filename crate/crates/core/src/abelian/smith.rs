//! Smith normal form over the integers.
//!
//! Pivoting picks the entry of least nonzero absolute value in the trailing
//! submatrix, ties broken by lowest (row, column) index, so every output is
//! reproducible bit for bit.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::Int;

/// Which transforms to accumulate alongside the diagonal.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub left_inverse: bool,
    pub right: bool,
    pub right_inverse: bool,
}

impl Track {
    pub const ALL: Track = Track {
        left: true,
        left_inverse: true,
        right: true,
        right_inverse: true,
    };
}

/// Result of a Smith decomposition `left · m · right = diagonal`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Unimodular row transform `U` (rows × rows).
    pub left: IntMatrix,
    /// `U⁻¹`
    pub left_inverse: IntMatrix,
    /// The diagonal matrix `D`.
    pub diagonal: IntMatrix,
    /// Unimodular column transform `V` (cols × cols).
    pub right: IntMatrix,
    /// `V⁻¹`
    pub right_inverse: IntMatrix,
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub invariants: Vec<Int>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// Computes `(U, D, V)` with `U·m·V = D`, `D` diagonal with a divisor chain
/// and `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    decompose(m, Track::ALL)
}

pub(crate) fn decompose(m: &IntMatrix, track: Track) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let placeholder = || IntMatrix::zeros(0, 0);
    let mut u = if track.left { IntMatrix::identity(rows) } else { placeholder() };
    let mut ui = if track.left_inverse { IntMatrix::identity(rows) } else { placeholder() };
    let mut v = if track.right { IntMatrix::identity(cols) } else { placeholder() };
    let mut vi = if track.right_inverse { IntMatrix::identity(cols) } else { placeholder() };

    macro_rules! swap_rows {
        ($i:expr, $j:expr) => {{
            let (i, j) = ($i, $j);
            if i != j {
                a.swap_rows(i, j);
                if track.left {
                    u.swap_rows(i, j);
                }
                if track.left_inverse {
                    ui.swap_cols(i, j);
                }
            }
        }};
    }
    macro_rules! swap_cols {
        ($i:expr, $j:expr) => {{
            let (i, j) = ($i, $j);
            if i != j {
                a.swap_cols(i, j);
                if track.right {
                    v.swap_cols(i, j);
                }
                if track.right_inverse {
                    vi.swap_rows(i, j);
                }
            }
        }};
    }
    // row[dst] += q·row[src]
    macro_rules! add_row {
        ($dst:expr, $src:expr, $q:expr) => {{
            let (dst, src, q): (usize, usize, &Int) = ($dst, $src, $q);
            a.add_row_multiple(dst, src, q);
            if track.left {
                u.add_row_multiple(dst, src, q);
            }
            if track.left_inverse {
                ui.add_col_multiple(src, dst, &-q);
            }
        }};
    }
    // col[dst] += q·col[src]
    macro_rules! add_col {
        ($dst:expr, $src:expr, $q:expr) => {{
            let (dst, src, q): (usize, usize, &Int) = ($dst, $src, $q);
            a.add_col_multiple(dst, src, q);
            if track.right {
                v.add_col_multiple(dst, src, q);
            }
            if track.right_inverse {
                vi.add_row_multiple(src, dst, &-q);
            }
        }};
    }

    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&a, t) else {
            break;
        };
        swap_rows!(t, pi);
        swap_cols!(t, pj);
        loop {
            let p = a[(t, t)].clone();
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&p);
                    add_row!(i, t, &-q);
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&p);
                    add_col!(j, t, &-q);
                }
            }
            let column_clear = (t + 1..rows).all(|i| a[(i, t)].is_zero());
            let row_clear = (t + 1..cols).all(|j| a[(t, j)].is_zero());
            if column_clear && row_clear {
                // Enforce the divisor chain: fold in a row holding a non-multiple.
                let p = a[(t, t)].clone();
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !a[(i, j)].is_zero() && !a[(i, j)].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => add_row!(t, i, &Int::from(1)),
                    None => break,
                }
            }
            // Remainders are strictly smaller than the old pivot; move the new
            // minimum of row/column t (or of the trailing block) into place.
            let (pi, pj) = min_pivot(&a, t).expect("pivot block cannot become zero");
            swap_rows!(t, pi);
            swap_cols!(t, pj);
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if track.left {
                u.negate_row(t);
            }
            if track.left_inverse {
                ui.negate_col(t);
            }
        }
        invariants.push(a[(t, t)].clone());
        t += 1;
    }

    Smith {
        left: u,
        left_inverse: ui,
        diagonal: a,
        right: v,
        right_inverse: vi,
        invariants,
    }
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), Int)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(_, b)| ax < *b) {
                let one = ax == Int::from(1);
                best = Some(((i, j), ax));
                if one {
                    return best.map(|(ij, _)| ij);
                }
            }
        }
    }
    best.map(|(ij, _)| ij)
}
