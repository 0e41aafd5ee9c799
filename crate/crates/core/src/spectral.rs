//! The filtered Čech complex of `L = L₀ ⊕ … ⊕ L_s` and its spectral sequence.
//!
//! `K_p = C*(X; ⊕_{q≥p} L_q)`, so `K₀` is everything and `K_{s+1} = 0`. All
//! terms are computed from their definitions as lattices in the free lift of
//! the total cochain space:
//!
//! - `Z^p_r = {x ∈ K_p : dx ∈ K_{p+r}}`
//! - `B^p_r = d(K_{p−r} ∩ K_p)`
//! - `E^{pq}_r = Z^{pq}_r / (B^{pq}_{r−1} + Z^{p+1,q−1}_{r−1})`
//!
//! with the bidegree `(p, q)` living in total Čech degree `p + q`.

use std::ops::RangeInclusive;

use num_traits::One;

use crate::abelian::{AbelianGroup, ExactnessReport, GroupHom, IntMatrix, Lattice, SequenceMap, Subquotient};
use crate::cech::{Cochain, CochainSpace};
use crate::complexes::Complex;
use crate::towers::LinkStack;
use crate::{Error, Int, Result};

/// `C*(X; L)` with the filtration by coefficient summands. Links are indexed
/// from 0 here: `stack.links()[q]` is `L_q`.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    space: CochainSpace,
    stack: LinkStack,
    /// Component index of each coordinate inside one simplex block.
    component: Vec<usize>,
}

pub fn build_filtered(x: &Complex, stack: LinkStack) -> FilteredComplex {
    FilteredComplex::new(x, stack)
}

impl FilteredComplex {
    pub fn new(x: &Complex, stack: LinkStack) -> Self {
        let mut moduli = Vec::new();
        let mut component = Vec::new();
        for (q, l) in stack.links().iter().enumerate() {
            for m in l.moduli() {
                moduli.push(m);
                component.push(q);
            }
        }
        FilteredComplex {
            space: CochainSpace::new(x.clone(), moduli),
            stack,
            component,
        }
    }

    pub fn complex(&self) -> &Complex {
        self.space.complex()
    }

    pub fn stack(&self) -> &LinkStack {
        &self.stack
    }

    /// The largest link index `s`.
    pub fn top_index(&self) -> usize {
        self.stack.height() - 1
    }

    /// `L_q`, or `None` past the top of the stack.
    pub fn link(&self, q: usize) -> Option<&AbelianGroup> {
        self.stack.links().get(q)
    }

    /// `L = ⊕ L_q` in canonical form.
    pub fn total_group(&self) -> AbelianGroup {
        self.stack.links().iter().fold(AbelianGroup::zero(), |acc, l| acc.direct_sum(l))
    }

    /// Highest degree with cochains (`None` for the empty complex).
    pub fn max_degree(&self) -> Option<usize> {
        self.complex().dimension()
    }

    /// Rank of the free lift of `C^k(X; L)`.
    pub fn ambient(&self, k: usize) -> usize {
        self.space.len(k)
    }

    /// Lift of `{x ∈ C^k : components where keep(q) fails vanish}`.
    fn coordinate_lattice(&self, k: usize, keep: impl Fn(usize) -> bool) -> Lattice {
        let w = self.space.width();
        let moduli = self.space.moduli();
        let diag: Vec<Int> = (0..self.space.len(k))
            .map(|i| if keep(self.component[i % w]) { Int::one() } else { moduli[i % w].clone() })
            .collect();
        Lattice::diagonal(&diag)
    }

    /// `K_p` in degree `k`.
    pub fn filtration(&self, p: usize, k: usize) -> Lattice {
        self.coordinate_lattice(k, |q| q >= p)
    }

    /// `K^k = C^k(X; L)`, the whole degree-`k` piece.
    pub fn graded(&self, k: usize) -> Lattice {
        Lattice::full(self.space.len(k))
    }

    /// `C^k(X; L_q)` inside `C^k(X; L)`.
    pub fn component(&self, q: usize, k: usize) -> Lattice {
        self.coordinate_lattice(k, |c| c == q)
    }

    /// Matrix of `d: C^k(X; L) → C^{k+1}(X; L)` on the lift.
    pub fn differential(&self, k: usize) -> IntMatrix {
        self.space.coboundary_matrix(k)
    }

    /// `Z^p_r` in degree `k`. `r = 0` gives `K_p`.
    pub fn z_term(&self, p: usize, r: usize, k: usize) -> Lattice {
        self.filtration(p, k)
            .restricted_preimage(&self.differential(k), &self.filtration(p + r, k + 1))
    }

    /// `B^p_r = d(K_{p−r} ∩ K_p)` in degree `k`, read literally
    /// (`K_{p−r} = K₀` once `p − r` drops below zero).
    pub fn b_term(&self, p: usize, r: usize, k: usize) -> Lattice {
        let rel = self.space.relations(k);
        let Some(prev) = k.checked_sub(1) else {
            return rel;
        };
        let source = self.filtration(p.saturating_sub(r), prev).intersect(&self.filtration(p, prev));
        source.image(&self.differential(prev)).sum(&rel)
    }

    /// The other common reading `d(K_{p−r}) ∩ K_p`.
    pub fn b_term_restricted(&self, p: usize, r: usize, k: usize) -> Lattice {
        let rel = self.space.relations(k);
        let image = match k.checked_sub(1) {
            None => rel,
            Some(prev) => self.filtration(p.saturating_sub(r), prev).image(&self.differential(prev)).sum(&rel),
        };
        image.intersect(&self.filtration(p, k))
    }

    /// `d(K_p)` in degree `k`.
    pub fn boundary_of_filtration(&self, p: usize, k: usize) -> Lattice {
        let rel = self.space.relations(k);
        match k.checked_sub(1) {
            None => rel,
            Some(prev) => self.filtration(p, prev).image(&self.differential(prev)).sum(&rel),
        }
    }

    /// `E^{pq}_r` for `r ≥ 1`.
    pub fn e_page(&self, p: usize, q: i64, r: usize) -> Result<SpectralTerm> {
        if r == 0 {
            return Err(Error::Invalid("spectral pages start at r = 1".into()));
        }
        let Some(k) = total_degree(p, q) else {
            return Ok(SpectralTerm::zero(p, q, Some(r)));
        };
        let numerator = self.z_term(p, r, k);
        let denominator = self.b_term(p, r - 1, k).sum(&self.z_term(p + 1, r - 1, k));
        self.term(p, q, Some(r), k, numerator, denominator)
    }

    /// `E^p_∞ = Z^p_∞ / (Z^{p+1}_∞ + B^p_∞)` in degree `k`, where `Z^p_∞` and
    /// `B^p_∞` are the cocycles and coboundaries lying in `K_p`.
    pub fn e_infinity_at(&self, p: usize, k: usize) -> Result<SpectralTerm> {
        let cocycles = self.space.cocycles(k);
        let coboundaries = self.space.coboundaries(k);
        let z = |p: usize| cocycles.intersect(&self.filtration(p, k));
        let numerator = z(p);
        let denominator = z(p + 1).sum(&coboundaries.intersect(&self.filtration(p, k)));
        self.term(p, k as i64 - p as i64, None, k, numerator, denominator)
    }

    /// `E^p_∞` in every degree `0..=dim`.
    pub fn e_infinity(&self, p: usize) -> Result<Vec<SpectralTerm>> {
        let top = self.max_degree().map_or(0, |d| d + 1);
        (0..top).map(|k| self.e_infinity_at(p, k)).collect()
    }

    /// `H^k(X; L)` of the whole complex.
    pub fn total_cohomology(&self, k: usize) -> Subquotient {
        self.space.cohomology(k)
    }

    /// `H^k(X; L_q)`, realized inside the total lift.
    pub fn component_cohomology(&self, q: usize, k: usize) -> Subquotient {
        let c = self.component(q, k);
        Subquotient::new(self.space.cocycles(k).intersect(&c), self.space.coboundaries(k).intersect(&c))
            .expect("coboundaries are cocycles")
    }

    fn term(&self, p: usize, q: i64, r: Option<usize>, k: usize, num: Lattice, den: Lattice) -> Result<SpectralTerm> {
        let quotient = Subquotient::new(num, den)?;
        let representatives = quotient.representatives().iter().map(|v| self.split(k, v)).collect();
        Ok(SpectralTerm {
            p,
            q,
            r,
            invariants: quotient.group().clone(),
            representatives,
        })
    }

    /// Splits a lifted total cochain into one cochain per link.
    pub fn split(&self, k: usize, v: &[Int]) -> Vec<Cochain> {
        let w = self.space.width();
        self.stack
            .links()
            .iter()
            .enumerate()
            .map(|(q, l)| {
                let values = v
                    .chunks(w.max(1))
                    .take(self.complex().count(k))
                    .flat_map(|block| {
                        block.iter().zip(&self.component).filter(move |&(_, &c)| c == q).map(|(x, _)| x.clone())
                    })
                    .collect();
                Cochain::from_flat(self.complex(), l, k, values)
            })
            .collect()
    }
}

fn total_degree(p: usize, q: i64) -> Option<usize> {
    usize::try_from(p as i64 + q).ok()
}

/// One term of the spectral sequence. `r = None` stands for `E_∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralTerm {
    pub p: usize,
    pub q: i64,
    pub r: Option<usize>,
    pub invariants: AbelianGroup,
    /// One witness per canonical generator, split into its `L_q` components.
    pub representatives: Vec<Vec<Cochain>>,
}

impl SpectralTerm {
    fn zero(p: usize, q: i64, r: Option<usize>) -> Self {
        SpectralTerm {
            p,
            q,
            r,
            invariants: AbelianGroup::zero(),
            representatives: Vec::new(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.p as i64 + self.q
    }
}

/// The sequence
/// `… → H^i(X; L_n) → H^i(X; L) → H^i(X; L₀) → H^{i+1}(X; L_n) → …`
/// for a stack whose links other than `L₀` and `L_n` are zero.
///
/// The first map includes the `L_n` summand, the second projects onto `L₀`
/// and the third is the connecting map of `0 → K_n → K₀ → K₀/K_n → 0`: an
/// `L₀`-cocycle, viewed in `K₀`, has its coboundary in `K_n`.
/// Nodes run from `H^a(X; L_n)` to `H^{b+1}(X; L_n)` for `degrees = a..=b`.
pub fn two_link_sequence(fc: &FilteredComplex, n: usize, degrees: RangeInclusive<usize>) -> Result<ExactnessReport> {
    if n == 0 {
        return Err(Error::Hypothesis("the upper link index n must be positive".into()));
    }
    if let Some(p) = (1..fc.stack.height()).find(|&p| p != n && !fc.stack.links()[p].is_zero()) {
        return Err(Error::Hypothesis(format!("L_{p} = {} is nonzero but p is neither 0 nor {n}", fc.stack.links()[p])));
    }
    let (a, b) = (*degrees.start(), *degrees.end());
    if a > b {
        return Err(Error::Invalid(format!("empty degree window {a}..{b}")));
    }
    let upper = |i: usize| fc.component_cohomology(n, i);
    let lower = |i: usize| fc.component_cohomology(0, i);
    let total = |i: usize| fc.total_cohomology(i);
    let w = fc.space.width();
    let projection = |i: usize| -> IntMatrix {
        let len = fc.space.len(i);
        let mut m = IntMatrix::zeros(len, len);
        for j in (0..len).filter(|j| fc.component[j % w] == 0) {
            m[(j, j)] = Int::one();
        }
        m
    };
    let by_matrix = |m: IntMatrix| move |v: &[Int]| Ok(m.mul_vec(v));

    let mut labels = Vec::new();
    let mut maps = Vec::new();
    let incoming = match a.checked_sub(1) {
        None => GroupHom::zero(AbelianGroup::zero(), upper(0).group().clone()),
        Some(prev) => lower(prev).induced(&upper(a), by_matrix(fc.differential(prev)))?,
    };
    maps.push(SequenceMap {
        label: format!("delta^{}", a as i64 - 1),
        hom: incoming,
    });
    for i in a..=b {
        let (hn, hl, h0) = (upper(i), total(i), lower(i));
        let len = fc.space.len(i);
        labels.push(format!("H^{i}(X; L_{n})"));
        maps.push(SequenceMap {
            label: format!("incl^{i}"),
            hom: hn.induced(&hl, by_matrix(IntMatrix::identity(len)))?,
        });
        labels.push(format!("H^{i}(X; L)"));
        maps.push(SequenceMap {
            label: format!("proj^{i}"),
            hom: hl.induced(&h0, by_matrix(projection(i)))?,
        });
        labels.push(format!("H^{i}(X; L_0)"));
        maps.push(SequenceMap {
            label: format!("delta^{i}"),
            hom: h0.induced(&upper(i + 1), by_matrix(fc.differential(i)))?,
        });
    }
    labels.push(format!("H^{}(X; L_{n})", b + 1));
    maps.push(SequenceMap {
        label: format!("incl^{}", b + 1),
        hom: upper(b + 1).induced(&total(b + 1), by_matrix(IntMatrix::identity(fc.space.len(b + 1))))?,
    });
    ExactnessReport::new(labels, maps)
}

impl LinkStack {
    /// `(L₀, 0, …, 0, L_n)`, the shape required by [`two_link_sequence`].
    pub fn two_step(l0: AbelianGroup, ln: AbelianGroup, n: usize) -> Result<LinkStack> {
        if n == 0 {
            return Err(Error::Hypothesis("the upper link index n must be positive".into()));
        }
        let mut links = vec![l0];
        links.extend((1..n).map(|_| AbelianGroup::zero()));
        links.push(ln);
        LinkStack::new(links)
    }
}
