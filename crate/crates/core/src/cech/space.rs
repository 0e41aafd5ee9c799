//! Lattice model of a cochain complex with coefficients in a presented group.
//!
//! Degree-k cochains with values in `⨁ Z/mⱼ` (mⱼ = 0 meaning `Z`) are lifted
//! to `Z^{n_k · w}`, simplex-major: coordinate `σ·w + j` is component `j` of
//! the value on the σ-th k-simplex. Every subgroup is a lattice containing
//! the relations, so quotients are honest subquotients.

use crate::abelian::{IntMatrix, Lattice, Subquotient};
use crate::complexes::Complex;
use crate::Int;

#[derive(Debug, Clone)]
pub(crate) struct CochainSpace {
    complex: Complex,
    moduli: Vec<Int>,
}

impl CochainSpace {
    pub fn new(complex: Complex, moduli: Vec<Int>) -> Self {
        CochainSpace { complex, moduli }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn width(&self) -> usize {
        self.moduli.len()
    }

    pub fn len(&self, k: usize) -> usize {
        self.complex.count(k) * self.width()
    }

    pub fn relations(&self, k: usize) -> Lattice {
        let n = self.complex.count(k);
        let all: Vec<Int> = (0..n).flat_map(|_| self.moduli.iter().cloned()).collect();
        Lattice::diagonal(&all)
    }

    /// Matrix of `d: C^k → C^{k+1}` on lifted coordinates.
    pub fn coboundary_matrix(&self, k: usize) -> IntMatrix {
        let w = self.width();
        let mut m = IntMatrix::zeros(self.len(k + 1), self.len(k));
        for (t, tau) in self.complex.simplices(k + 1).iter().enumerate() {
            for skip in 0..tau.len() {
                let face: Vec<u32> = tau.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let s = self.complex.index_of(&face).expect("complex is closed under faces");
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                for c in 0..w {
                    m[(t * w + c, s * w + c)] += sign;
                }
            }
        }
        m
    }

    /// Cocycles `{x : d x ≡ 0}`, including the relations of degree k.
    pub fn cocycles(&self, k: usize) -> Lattice {
        Lattice::preimage(&self.coboundary_matrix(k), &self.relations(k + 1))
    }

    /// Coboundaries `d(C^{k-1})` plus the relations of degree k.
    pub fn coboundaries(&self, k: usize) -> Lattice {
        let rel = self.relations(k);
        match k.checked_sub(1) {
            None => rel,
            Some(prev) => Lattice::span(&self.coboundary_matrix(prev)).sum(&rel),
        }
    }

    pub fn cohomology(&self, k: usize) -> Subquotient {
        Subquotient::new(self.cocycles(k), self.coboundaries(k)).expect("coboundaries are cocycles")
    }
}
