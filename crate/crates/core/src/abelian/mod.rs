//! Finitely generated abelian groups `Zʳ ⊕ Z/d₁ ⊕ … ⊕ Z/dₜ` with exact
//! integer arithmetic, homomorphisms between them, and the Smith-normal-form
//! machinery that every cohomology computation runs on.

mod lattice;
mod matrix;
mod sequence;
mod smith;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use lattice::{solve, Lattice, Subquotient};
pub use matrix::IntMatrix;
pub use sequence::{ExactnessReport, SequenceMap, SequenceNode};
pub use smith::{smith_normal_form, Smith};

use crate::{Error, Int, Result};

/// A finitely generated abelian group in canonical form: free rank plus a
/// torsion divisor chain `d₁ | d₂ | … | dₜ` with every `dᵢ ≥ 2`.
///
/// Two groups are isomorphic exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl AbelianGroup {
    /// Canonicalizes `Zʳ ⊕ ⨁ Z/mᵢ` for arbitrary positive `mᵢ`
    /// (entries equal to 1 vanish, coprime factors merge).
    ///
    /// Panics if some `mᵢ ≤ 0`; use [`AbelianGroup::try_new`] for untrusted input.
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Self {
        Self::try_new(free_rank, torsion).expect("torsion orders must be positive")
    }

    pub fn try_new(free_rank: usize, torsion: Vec<Int>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|d| !d.is_positive()) {
            return Err(Error::Invalid(format!("torsion order {bad} must be positive")));
        }
        let is_chain = torsion.iter().all(|d| !d.is_one())
            && torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if is_chain {
            return Ok(Self::from_canonical(free_rank, torsion));
        }
        let s = smith::decompose(&IntMatrix::diagonal(&torsion), smith::Track::default());
        let chain = s.invariants.into_iter().filter(|d| !d.is_one()).collect();
        Ok(Self::from_canonical(free_rank, chain))
    }

    pub(crate) fn from_canonical(free_rank: usize, torsion: Vec<Int>) -> Self {
        debug_assert!(torsion.iter().all(|d| d > &Int::one()));
        AbelianGroup { free_rank, torsion }
    }

    pub fn zero() -> Self {
        Self::from_canonical(0, Vec::new())
    }

    /// `Z`
    pub fn integers() -> Self {
        Self::free(1)
    }

    /// `Zʳ`
    pub fn free(rank: usize) -> Self {
        Self::from_canonical(rank, Vec::new())
    }

    /// `Z/m`; `Z/1` is the zero group.
    pub fn cyclic(m: u64) -> Self {
        Self::new(0, vec![Int::from(m)])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Number of canonical coordinates.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Per-coordinate moduli: 0 for a free coordinate, `dᵢ` for torsion.
    pub fn moduli(&self) -> Vec<Int> {
        let mut m = vec![Int::zero(); self.free_rank];
        m.extend(self.torsion.iter().cloned());
        m
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        Self::new(self.free_rank + other.free_rank, torsion)
    }

    /// The lattice of relations in the coordinate lift `Z^{ngens}`.
    pub fn relations(&self) -> Lattice {
        Lattice::diagonal(&self.moduli())
    }

    pub fn element<T: Into<Int> + Clone>(&self, coords: &[T]) -> Result<GroupElement> {
        let coords: Vec<Int> = coords.iter().cloned().map(Into::into).collect();
        GroupElement::new(self.clone(), coords)
    }

    pub fn identity_element(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![Int::zero(); self.ngens()],
        }
    }

    /// Reduces raw coordinates into canonical range.
    pub(crate) fn reduce_coords(&self, coords: &mut [Int]) {
        for (x, d) in coords[self.free_rank..].iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(d);
        }
    }

    /// Every element of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup(self.to_string()));
        }
        let mut out = Vec::new();
        let mut coords = vec![Int::zero(); self.torsion.len()];
        loop {
            out.push(GroupElement {
                group: self.clone(),
                coords: coords.clone(),
            });
            let mut i = coords.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.torsion[i] {
                    break;
                }
                coords[i] = Int::zero();
            }
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of an [`AbelianGroup`] in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: AbelianGroup,
    coords: Vec<Int>,
}

impl GroupElement {
    /// Torsion coordinates are reduced into `[0, dᵢ)`.
    pub fn new(group: AbelianGroup, mut coords: Vec<Int>) -> Result<Self> {
        if coords.len() != group.ngens() {
            return Err(Error::NotAnElement {
                group: group.to_string(),
                reason: format!("expected {} coordinates, got {}", group.ngens(), coords.len()),
            });
        }
        group.reduce_coords(&mut coords);
        Ok(GroupElement { group, coords })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn combine(&self, other: &GroupElement, f: impl Fn(&Int, &Int) -> Int) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::Mismatch(format!(
                "elements of {} and {} cannot be combined",
                self.group, other.group
            )));
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect();
        GroupElement::new(self.group.clone(), coords)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.combine(other, |a, b| a - b)
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(&Int::from(-1))
    }

    pub fn scale(&self, k: &Int) -> GroupElement {
        let coords = self.coords.iter().map(|x| x * k).collect();
        GroupElement::new(self.group.clone(), coords).expect("same length")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A homomorphism given by an integer matrix on canonical coordinates
/// (`target.ngens()` rows, `source.ngens()` columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: AbelianGroup,
    target: AbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks dimensions and that relations of the source land in relations
    /// of the target.
    pub fn new(source: AbelianGroup, target: AbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::IllDefinedHom(format!(
                "matrix is {}x{}, expected {}x{} for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens(),
                source,
                target
            )));
        }
        let target_rel = target.relations();
        for (j, d) in source.moduli().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let image: Vec<Int> = matrix.column(j).iter().map(|x| x * d).collect();
            if !target_rel.contains(&image) {
                return Err(Error::IllDefinedHom(format!(
                    "generator {j} of {source} has order {d} but its image does not"
                )));
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: AbelianGroup, target: AbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(target.ngens(), source.ngens());
        GroupHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: AbelianGroup) -> Self {
        let matrix = IntMatrix::identity(group.ngens());
        GroupHom {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Raw coordinate action, reduced in the target.
    pub(crate) fn apply_coords(&self, coords: &[Int]) -> Vec<Int> {
        let mut y = self.matrix.mul_vec(coords);
        self.target.reduce_coords(&mut y);
        y
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group != self.source {
            return Err(Error::NotAnElement {
                group: self.source.to_string(),
                reason: format!("element lives in {}", x.group),
            });
        }
        Ok(GroupElement {
            group: self.target.clone(),
            coords: self.apply_coords(&x.coords),
        })
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::Mismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    /// Kernel as a lattice in the source lift (contains the source relations).
    pub fn kernel_lattice(&self) -> Lattice {
        Lattice::preimage(&self.matrix, &self.target.relations())
    }

    /// Image as a lattice in the target lift (contains the target relations).
    pub fn image_lattice(&self) -> Lattice {
        Lattice::span(&self.matrix).sum(&self.target.relations())
    }

    pub fn kernel(&self) -> AbelianGroup {
        Subquotient::new(self.kernel_lattice(), self.source.relations())
            .expect("relations lie in the kernel")
            .group()
            .clone()
    }

    pub fn image(&self) -> AbelianGroup {
        Subquotient::new(self.image_lattice(), self.target.relations())
            .expect("relations lie in the image")
            .group()
            .clone()
    }

    pub fn is_zero(&self) -> bool {
        let rel = self.target.relations();
        self.matrix.columns().all(|c| rel.contains(&c))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lattice() == self.source.relations()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice() == Lattice::full(self.target.ngens())
    }
}

/// Some `x` with `h(x) = y`, or `None` when `y` is outside the image.
///
/// Deterministic: the solver fixes every free direction to zero.
pub fn solve_in_image(h: &GroupHom, y: &GroupElement) -> Result<Option<GroupElement>> {
    if y.group != h.target {
        return Err(Error::NotAnElement {
            group: h.target.to_string(),
            reason: format!("element lives in {}", y.group),
        });
    }
    Ok(solve_coords(h, &y.coords).map(|coords| GroupElement::new(h.source.clone(), coords).expect("length")))
}

pub(crate) fn solve_coords(h: &GroupHom, y: &[Int]) -> Option<Vec<Int>> {
    let n = h.source.ngens();
    let system = h.matrix.hstack(h.target.relations().basis());
    let sol = solve(&system, y)?;
    let mut x = sol[..n].to_vec();
    h.source.reduce_coords(&mut x);
    Some(x)
}

/// Canonical invariants of `ambient / ⟨subgen⟩`.
pub fn quotient_invariants(ambient: &AbelianGroup, subgen: &[GroupElement]) -> Result<AbelianGroup> {
    let mut gens = Vec::with_capacity(subgen.len());
    for g in subgen {
        if g.group != *ambient {
            return Err(Error::NotAnElement {
                group: ambient.to_string(),
                reason: format!("generator lives in {}", g.group),
            });
        }
        gens.push(g.coords.clone());
    }
    let sub = Lattice::span_vectors(ambient.ngens(), &gens).sum(&ambient.relations());
    Ok(Subquotient::new(Lattice::full(ambient.ngens()), sub)?.group().clone())
}

/// Canonical form of the group presented by per-coordinate moduli
/// (0 = free), with the coordinate changes in both directions.
#[derive(Debug, Clone)]
pub(crate) struct Canonicalized {
    pub group: AbelianGroup,
    /// presentation coords → canonical coords
    pub to_canonical: IntMatrix,
    /// canonical coords → presentation coords
    pub from_canonical: IntMatrix,
}

pub(crate) fn canonicalize(moduli: &[Int]) -> Canonicalized {
    let n = moduli.len();
    let q = Subquotient::new(Lattice::full(n), Lattice::diagonal(moduli)).expect("diagonal ⊆ full");
    let columns: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::one();
            q.reduce(&e).expect("full lattice")
        })
        .collect();
    let to_canonical = IntMatrix::from_columns(q.group().ngens(), &columns);
    let from_canonical = IntMatrix::from_columns(n, q.representatives());
    Canonicalized {
        group: q.group().clone(),
        to_canonical,
        from_canonical,
    }
}
