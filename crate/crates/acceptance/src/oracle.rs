//! A second, deliberately naive cohomology computation.
//!
//! Everything here is rebuilt from a facet list: faces by subset masks,
//! coboundary matrices as plain `i128` arrays, invariant factors by textbook
//! elimination. Nothing is shared with the library beyond the facets.

use std::collections::{BTreeMap, BTreeSet};

/// `H^k` as (free rank, torsion orders > 1 in divisibility order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleGroup {
    pub free_rank: usize,
    pub torsion: Vec<i128>,
}

impl std::fmt::Display for OracleGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integral cohomology in degrees `0..=dim`.
pub fn integral_cohomology(facets: &[Vec<u32>]) -> Vec<OracleGroup> {
    let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
    for facet in facets {
        let mut f = facet.clone();
        f.sort_unstable();
        for mask in 1u32..(1 << f.len()) {
            let face: Vec<u32> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            let d = face.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(face);
        }
    }
    let index: Vec<BTreeMap<&Vec<u32>, usize>> =
        by_dim.iter().map(|s| s.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
    let n: Vec<usize> = by_dim.iter().map(BTreeSet::len).collect();
    let top = n.len();

    // delta[k]: C^k → C^{k+1}, rows indexed by (k+1)-simplices
    let delta: Vec<Vec<Vec<i128>>> = (0..top)
        .map(|k| {
            let rows = if k + 1 < top { n[k + 1] } else { 0 };
            let mut m = vec![vec![0i128; n[k]]; rows];
            if k + 1 < top {
                for (r, tau) in by_dim[k + 1].iter().enumerate() {
                    for j in 0..tau.len() {
                        let mut face = tau.clone();
                        face.remove(j);
                        let c = index[k][&face];
                        m[r][c] += if j % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            m
        })
        .collect();
    let factors: Vec<Vec<i128>> = delta.iter().map(|m| invariant_factors(m.clone())).collect();

    (0..top)
        .map(|k| {
            let rank_out = factors[k].len();
            let incoming: &[i128] = if k == 0 { &[] } else { &factors[k - 1] };
            OracleGroup {
                free_rank: n[k] - rank_out - incoming.len(),
                torsion: incoming.iter().copied().filter(|&d| d > 1).collect(),
            }
        })
        .collect()
}

/// Nonzero invariant factors of an integer matrix, smallest first.
pub fn invariant_factors(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if q != 0 {
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide everything left; otherwise fold in the offending row
        let p = a[t][t];
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
        if let Some(i) = bad {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}
