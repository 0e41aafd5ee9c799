//! Sublattices of `Zⁿ` and their quotients.
//!
//! Every subgroup computation in the crate (cocycles, coboundaries, filtration
//! pieces, images and kernels of induced maps) is phrased as a lattice in the
//! free lift of a presented group, with the presentation's relations already
//! folded in. Quotients of one lattice by a smaller one are [`Subquotient`]s.

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::smith::{decompose, Smith, Track};
use super::{AbelianGroup, IntMatrix};
use crate::{Error, Int, Result};

/// A sublattice of `Zⁿ` stored by a basis (columns, full column rank).
#[derive(Debug, Clone)]
pub struct Lattice {
    basis: IntMatrix,
    solver: OnceLock<Smith>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient() == other.ambient() && self.contains_lattice(other) && other.contains_lattice(self)
    }
}

impl Eq for Lattice {}

impl Lattice {
    fn from_basis(basis: IntMatrix) -> Self {
        Lattice {
            basis,
            solver: OnceLock::new(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_basis(IntMatrix::zeros(ambient, 0))
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_basis(IntMatrix::identity(ambient))
    }

    /// Lattice spanned by the columns of `generators`.
    pub fn span(generators: &IntMatrix) -> Self {
        let rows = generators.rows();
        if generators.cols() == 0 || generators.is_zero() {
            return Self::zero(rows);
        }
        let s = decompose(
            generators,
            Track {
                left_inverse: true,
                ..Track::default()
            },
        );
        // span(G) = span(G·V) = span(U⁻¹·D)
        let mut basis = IntMatrix::zeros(rows, s.rank());
        for (j, d) in s.invariants.iter().enumerate() {
            for i in 0..rows {
                let x = &s.left_inverse[(i, j)];
                if !x.is_zero() {
                    basis[(i, j)] = x * d;
                }
            }
        }
        Self::from_basis(basis)
    }

    pub fn span_vectors(ambient: usize, vectors: &[Vec<Int>]) -> Self {
        Self::span(&IntMatrix::from_columns(ambient, vectors))
    }

    /// Coordinate sublattice: `modulus·e_i` for each coordinate (a zero
    /// modulus contributes nothing).
    pub fn diagonal(moduli: &[Int]) -> Self {
        let cols: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
        let mut basis = IntMatrix::zeros(moduli.len(), cols.len());
        for (j, &i) in cols.iter().enumerate() {
            basis[(i, j)] = moduli[i].clone();
        }
        Self::from_basis(basis)
    }

    /// Kernel of `map` as a sublattice of its domain.
    pub fn kernel(map: &IntMatrix) -> Self {
        let n = map.cols();
        if map.rows() == 0 || map.is_zero() {
            return Self::full(n);
        }
        let s = decompose(
            map,
            Track {
                right: true,
                ..Track::default()
            },
        );
        Self::from_basis(s.right.select_columns(s.rank()..n))
    }

    /// `{ x ∈ Zⁿ : map·x ∈ target }`
    pub fn preimage(map: &IntMatrix, target: &Lattice) -> Self {
        assert_eq!(map.rows(), target.ambient(), "preimage: target ambient mismatch");
        let n = map.cols();
        let stacked = map.hstack(&target.basis.neg());
        let k = Self::kernel(&stacked);
        // The target basis is independent, so projecting away its part is injective.
        Self::from_basis(k.basis.row_block(0..n))
    }

    /// `{ x ∈ self : map·x ∈ target }`
    pub fn restricted_preimage(&self, map: &IntMatrix, target: &Lattice) -> Self {
        let pulled = Self::preimage(&map.mul(&self.basis), target);
        Self::from_basis(self.basis.mul(&pulled.basis))
    }

    /// `map(self)`
    pub fn image(&self, map: &IntMatrix) -> Self {
        Self::span(&map.mul(&self.basis))
    }

    pub fn sum(&self, other: &Lattice) -> Self {
        assert_eq!(self.ambient(), other.ambient(), "sum of lattices in different spaces");
        Self::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersect(&self, other: &Lattice) -> Self {
        assert_eq!(self.ambient(), other.ambient(), "intersection of lattices in different spaces");
        if self.rank() == 0 || other.rank() == 0 {
            return Self::zero(self.ambient());
        }
        let stacked = self.basis.hstack(&other.basis.neg());
        let k = Self::kernel(&stacked);
        let coeffs = k.basis.row_block(0..self.rank());
        Self::from_basis(self.basis.mul(&coeffs))
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn generators(&self) -> Vec<Vec<Int>> {
        self.basis.columns().collect()
    }

    fn solver(&self) -> &Smith {
        self.solver.get_or_init(|| {
            decompose(
                &self.basis,
                Track {
                    left: true,
                    right: true,
                    ..Track::default()
                },
            )
        })
    }

    /// Coordinates `a` with `basis·a = v`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.ambient(), "vector length does not match the lattice ambient");
        if self.rank() == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        solve_with(self.solver(), v)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.columns().all(|c| self.contains(&c))
    }

    /// Index of `self` in `Zⁿ` when the lattice has full rank (`None` otherwise).
    pub fn index(&self) -> Option<Int> {
        if self.rank() != self.ambient() {
            return None;
        }
        Some(self.solver().invariants.iter().product())
    }
}

/// Solves `m·x = b` over the integers; deterministic (free directions set to 0).
pub fn solve(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows(), b.len(), "solve: right-hand side length mismatch");
    let s = decompose(
        m,
        Track {
            left: true,
            right: true,
            ..Track::default()
        },
    );
    solve_with(&s, b)
}

fn solve_with(s: &Smith, b: &[Int]) -> Option<Vec<Int>> {
    // D·(V⁻¹x) = U·b
    let y = s.left.mul_vec(b);
    let rank = s.rank();
    if y[rank..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![Int::zero(); s.right.rows()];
    for i in 0..rank {
        let (q, r) = y[i].div_rem(&s.invariants[i]);
        if !r.is_zero() {
            return None;
        }
        z[i] = q;
    }
    Some(s.right.mul_vec(&z))
}

/// The quotient `numerator / denominator` of two lattices with
/// `denominator ⊆ numerator`, together with canonical coordinates.
///
/// Coordinates follow [`AbelianGroup`]: free coordinates first, then one
/// coordinate per torsion factor reduced into `[0, dᵢ)`.
#[derive(Debug, Clone)]
pub struct Subquotient {
    numerator: Lattice,
    denominator: Lattice,
    group: AbelianGroup,
    /// Rows of `U` selected and ordered to produce canonical coordinates.
    reduce_rows: IntMatrix,
    moduli: Vec<Int>,
    /// Representatives in the ambient space, one per canonical coordinate.
    representatives: Vec<Vec<Int>>,
}

impl Subquotient {
    pub fn new(numerator: Lattice, denominator: Lattice) -> Result<Self> {
        if numerator.ambient() != denominator.ambient() {
            return Err(Error::Mismatch("subquotient lattices live in different spaces".into()));
        }
        let m = numerator.rank();
        let mut relations = Vec::with_capacity(denominator.rank());
        for g in denominator.basis.columns() {
            let c = numerator.coordinates(&g).ok_or_else(|| {
                Error::Mismatch("denominator is not contained in numerator".into())
            })?;
            relations.push(c);
        }
        let rel = IntMatrix::from_columns(m, &relations);
        let s = decompose(
            &rel,
            Track {
                left: true,
                left_inverse: true,
                ..Track::default()
            },
        );
        let rank = s.rank();
        // Z^m / span(rel) ≅ (via U) Z^m / span(D)
        let mut order: Vec<usize> = (rank..m).collect();
        let torsion_idx: Vec<usize> = (0..rank).filter(|&i| !s.invariants[i].is_one()).collect();
        order.extend(torsion_idx.iter().copied());
        let mut moduli = vec![Int::zero(); m - rank];
        moduli.extend(torsion_idx.iter().map(|&i| s.invariants[i].clone()));
        let reduce_rows = IntMatrix::from_rows(
            m,
            order.iter().map(|&i| if m == 0 { Vec::new() } else { s.left.row(i).to_vec() }),
        );
        let representatives = order
            .iter()
            .map(|&i| numerator.basis.mul_vec(&s.left_inverse.column(i)))
            .collect();
        let group = AbelianGroup::from_canonical(m - rank, torsion_idx.iter().map(|&i| s.invariants[i].clone()).collect());
        Ok(Subquotient {
            numerator,
            denominator,
            group,
            reduce_rows,
            moduli,
            representatives,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn numerator(&self) -> &Lattice {
        &self.numerator
    }

    pub fn denominator(&self) -> &Lattice {
        &self.denominator
    }

    /// Canonical coordinates of the class of `v`; `None` when `v` is not in the numerator.
    pub fn reduce(&self, v: &[Int]) -> Option<Vec<Int>> {
        let a = self.numerator.coordinates(v)?;
        let y = self.reduce_rows.mul_vec(&a);
        Some(
            y.into_iter()
                .zip(&self.moduli)
                .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) })
                .collect(),
        )
    }

    /// Ambient representative of the `i`-th canonical generator.
    pub fn representative(&self, i: usize) -> &[Int] {
        &self.representatives[i]
    }

    pub fn representatives(&self) -> &[Vec<Int>] {
        &self.representatives
    }

    /// Ambient representative of the class with the given canonical coordinates.
    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.representatives.len(), "class coordinate length mismatch");
        let mut out = vec![Int::zero(); self.numerator.ambient()];
        for (c, r) in coords.iter().zip(&self.representatives) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(r) {
                *o += c * x;
            }
        }
        out
    }
}
