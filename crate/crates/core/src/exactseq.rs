//! Short exact coefficient sequences `0 → A′ → A → A″ → 0`, the connecting
//! homomorphism `δ: H^k(X; A″) → H^{k+1}(X; A′)` and the long exact sequence.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use crate::abelian::{solve_coords, AbelianGroup, ExactnessReport, GroupElement, GroupHom, IntMatrix, SequenceMap};
use crate::cech::{coboundary, cohomology, Cochain, CohomologyGroup};
use crate::complexes::Complex;
use crate::towers::enumerate_classes;
use crate::{Error, Int, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExactSequence {
    inject: GroupHom,
    project: GroupHom,
}

impl ShortExactSequence {
    /// Builds the sequence and checks all three exactness conditions.
    pub fn new(inject: GroupHom, project: GroupHom) -> Result<Self> {
        let s = Self::unchecked(inject, project)?;
        let report = validate_ses(&s);
        if !report.passed() {
            return Err(Error::Invalid(format!("not a short exact sequence: {report}")));
        }
        Ok(s)
    }

    /// Only checks that the maps compose; see [`validate_ses`].
    pub fn unchecked(inject: GroupHom, project: GroupHom) -> Result<Self> {
        if inject.target() != project.source() {
            return Err(Error::Mismatch(format!(
                "inject lands in {} but project starts from {}",
                inject.target(),
                project.source()
            )));
        }
        Ok(ShortExactSequence { inject, project })
    }

    /// `0 → Z -(×m)→ Z → Z/m → 0`
    pub fn integer_reduction(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Invalid(format!("modulus {m} must be at least 2")));
        }
        let z = AbelianGroup::integers();
        let inject = GroupHom::new(z.clone(), z.clone(), scalar(m))?;
        let project = GroupHom::new(z, AbelianGroup::cyclic(m), scalar(1))?;
        Self::new(inject, project)
    }

    /// `0 → Z/p -(×p)→ Z/p² → Z/p → 0`
    pub fn bockstein(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Invalid(format!("modulus {p} must be at least 2")));
        }
        let small = AbelianGroup::cyclic(p);
        let big = AbelianGroup::cyclic(p * p);
        let inject = GroupHom::new(small.clone(), big.clone(), scalar(p))?;
        let project = GroupHom::new(big, small, scalar(1))?;
        Self::new(inject, project)
    }

    /// `A′`
    pub fn sub(&self) -> &AbelianGroup {
        self.inject.source()
    }

    /// `A`
    pub fn middle(&self) -> &AbelianGroup {
        self.inject.target()
    }

    /// `A″`
    pub fn quotient(&self) -> &AbelianGroup {
        self.project.target()
    }

    pub fn inject(&self) -> &GroupHom {
        &self.inject
    }

    pub fn project(&self) -> &GroupHom {
        &self.project
    }
}

fn scalar(m: u64) -> IntMatrix {
    IntMatrix::from_rows(1, [vec![Int::from(m)]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SesReport {
    pub injective: bool,
    pub surjective: bool,
    pub exact_middle: bool,
}

impl SesReport {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective && self.exact_middle
    }
}

impl std::fmt::Display for SesReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let word = |b: bool| if b { "ok" } else { "FAIL" };
        write!(
            f,
            "injective {}, surjective {}, exact at middle {}",
            word(self.injective),
            word(self.surjective),
            word(self.exact_middle)
        )
    }
}

pub fn validate_ses(s: &ShortExactSequence) -> SesReport {
    SesReport {
        injective: s.inject.is_injective(),
        surjective: s.project.is_surjective(),
        exact_middle: s.inject.image_lattice() == s.project.kernel_lattice(),
    }
}

/// Lifts an `A″`-cochain through `project`, value by value.
pub fn lift(s: &ShortExactSequence, c: &Cochain) -> Result<Cochain> {
    if c.group() != s.quotient() {
        return Err(Error::Mismatch(format!("cochain over {} but A'' is {}", c.group(), s.quotient())));
    }
    let w = s.quotient().ngens();
    let mut values = Vec::with_capacity(c.complex().count(c.degree()) * s.middle().ngens());
    for i in 0..c.complex().count(c.degree()) {
        let v = &c.values()[i * w..(i + 1) * w];
        values.extend(solve_coords(&s.project, v).ok_or_else(|| Error::Invalid("project is not surjective".into()))?);
    }
    Ok(Cochain::from_flat(c.complex(), s.middle(), c.degree(), values))
}

/// `δ[c]` computed from an arbitrary lift `b` of `c` to `A`: the class of
/// the unique `A′`-cochain `a` with `inject(a) = d(b)`.
pub fn connecting_from_lift(s: &ShortExactSequence, b: &Cochain) -> Result<GroupElement> {
    let target = cohomology(b.complex(), s.sub(), b.degree() + 1);
    pull_back(s, b, &target)
}

fn pull_back(s: &ShortExactSequence, b: &Cochain, target: &CohomologyGroup) -> Result<GroupElement> {
    if b.group() != s.middle() {
        return Err(Error::Mismatch(format!("lift over {} but A is {}", b.group(), s.middle())));
    }
    let db = coboundary(b);
    let w = s.middle().ngens();
    let mut values = Vec::with_capacity(db.complex().count(db.degree()) * s.sub().ngens());
    for i in 0..db.complex().count(db.degree()) {
        let v = &db.values()[i * w..(i + 1) * w];
        // fails exactly when project(d b) ≠ 0, i.e. the projected cochain is not a cocycle
        values.extend(solve_coords(&s.inject, v).ok_or(Error::NotACocycle(b.degree()))?);
    }
    target.reduce(&Cochain::from_flat(db.complex(), s.sub(), db.degree(), values))
}

/// `δ: H^k(X; A″) → H^{k+1}(X; A′)` on a cocycle, in canonical coordinates.
pub fn connecting(s: &ShortExactSequence, x: &Complex, c: &Cochain) -> Result<GroupElement> {
    if c.complex() != x {
        return Err(Error::Mismatch("cochain lives on a different complex".into()));
    }
    connecting_from_lift(s, &lift(s, c)?)
}

fn induced(h: &GroupHom, from: &CohomologyGroup, to: &CohomologyGroup) -> Result<GroupHom> {
    let columns = from
        .basis()
        .iter()
        .map(|b| Ok(to.reduce(&b.map_coefficients(h)?)?.into_coords()))
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(
        from.invariants().clone(),
        to.invariants().clone(),
        IntMatrix::from_columns(to.invariants().ngens(), &columns),
    )
}

fn connecting_hom(s: &ShortExactSequence, from: &CohomologyGroup, to: &CohomologyGroup) -> Result<GroupHom> {
    let columns = from
        .basis()
        .iter()
        .map(|c| Ok(pull_back(s, &lift(s, c)?, to)?.into_coords()))
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(
        from.invariants().clone(),
        to.invariants().clone(),
        IntMatrix::from_columns(to.invariants().ngens(), &columns),
    )
}

/// The connecting map on all of `H^k(X; A″)` as a homomorphism.
pub fn connecting_map(s: &ShortExactSequence, x: &Complex, k: usize) -> Result<GroupHom> {
    connecting_hom(s, &cohomology(x, s.quotient(), k), &cohomology(x, s.sub(), k + 1))
}

/// `H^k(A′) → H^k(A) → H^k(A″) → H^{k+1}(A′) → …` for `k` in `degrees`,
/// ending at `H^{b+1}(A′)`, with exactness checked at every node.
pub fn long_exact_sequence(s: &ShortExactSequence, x: &Complex, degrees: RangeInclusive<usize>) -> Result<ExactnessReport> {
    let (a, b) = (*degrees.start(), *degrees.end());
    if a > b {
        return Err(Error::Invalid(format!("empty degree window {a}..{b}")));
    }
    let report = validate_ses(s);
    if !report.passed() {
        return Err(Error::Invalid(format!("not a short exact sequence: {report}")));
    }
    let h = |g: &AbelianGroup, k: usize| cohomology(x, g, k);
    let mut labels = Vec::new();
    let mut maps = Vec::new();
    let mut sub = h(s.sub(), a);
    let incoming = match a.checked_sub(1) {
        None => GroupHom::zero(AbelianGroup::zero(), sub.invariants().clone()),
        Some(prev) => connecting_hom(s, &h(s.quotient(), prev), &sub)?,
    };
    maps.push(SequenceMap {
        label: format!("delta^{}", a as i64 - 1),
        hom: incoming,
    });
    for k in a..=b {
        let mid = h(s.middle(), k);
        let quo = h(s.quotient(), k);
        let next = h(s.sub(), k + 1);
        labels.push(format!("H^{k}(X; A')"));
        maps.push(SequenceMap {
            label: format!("i^{k}"),
            hom: induced(&s.inject, &sub, &mid)?,
        });
        labels.push(format!("H^{k}(X; A)"));
        maps.push(SequenceMap {
            label: format!("p^{k}"),
            hom: induced(&s.project, &mid, &quo)?,
        });
        labels.push(format!("H^{k}(X; A'')"));
        maps.push(SequenceMap {
            label: format!("delta^{k}"),
            hom: connecting_hom(s, &quo, &next)?,
        });
        sub = next;
    }
    labels.push(format!("H^{}(X; A')", b + 1));
    maps.push(SequenceMap {
        label: format!("i^{}", b + 1),
        hom: induced(&s.inject, &sub, &h(s.middle(), b + 1))?,
    });
    ExactnessReport::new(labels, maps)
}

/// How bijectivity of `δ` was confirmed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BijectivityCheck {
    /// Classes on both sides found by exhaustive search over cochains.
    EnumeratedClasses,
    /// All elements of the finite source mapped and counted.
    Elements,
    /// Kernel and cokernel of `δ` computed as groups.
    Invariants,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcyclicMiddleVerdict {
    /// `H^k(X; A)` or `H^{k+1}(X; A)` is nonzero, so nothing is claimed.
    HypothesisNotMet { middle: AbelianGroup, middle_next: AbelianGroup },
    Checked {
        delta: GroupHom,
        bijective: bool,
        method: BijectivityCheck,
    },
}

impl AcyclicMiddleVerdict {
    pub fn hypothesis_met(&self) -> bool {
        matches!(self, AcyclicMiddleVerdict::Checked { .. })
    }

    /// `true` when the hypothesis holds and `δ` is a bijection.
    pub fn is_isomorphism(&self) -> bool {
        matches!(self, AcyclicMiddleVerdict::Checked { bijective: true, .. })
    }
}

/// If `H^k(X; A) = H^{k+1}(X; A) = 0`, checks that
/// `δ: H^k(X; A″) → H^{k+1}(X; A′)` is an isomorphism.
pub fn acyclic_middle_check(s: &ShortExactSequence, x: &Complex, k: usize) -> Result<AcyclicMiddleVerdict> {
    let middle = cohomology(x, s.middle(), k);
    let middle_next = cohomology(x, s.middle(), k + 1);
    if !middle.is_zero() || !middle_next.is_zero() {
        return Ok(AcyclicMiddleVerdict::HypothesisNotMet {
            middle: middle.invariants().clone(),
            middle_next: middle_next.invariants().clone(),
        });
    }
    let source = cohomology(x, s.quotient(), k);
    let target = cohomology(x, s.sub(), k + 1);
    let delta = connecting_hom(s, &source, &target)?;
    let algebraic = delta.is_injective() && delta.is_surjective();
    if !(s.quotient().is_finite() && s.sub().is_finite()) {
        return Ok(AcyclicMiddleVerdict::Checked {
            delta,
            bijective: algebraic,
            method: BijectivityCheck::Invariants,
        });
    }
    let by_classes = || -> Result<bool> {
        let left = enumerate_classes(x, s.quotient(), k)?;
        let right = enumerate_classes(x, s.sub(), k + 1)?;
        let images: HashSet<Vec<Int>> = left
            .iter()
            .map(|c| Ok(pull_back(s, &lift(s, c)?, &target)?.into_coords()))
            .collect::<Result<_>>()?;
        Ok(images.len() == left.len() && images.len() == right.len())
    };
    match by_classes() {
        Ok(ok) => Ok(AcyclicMiddleVerdict::Checked {
            delta,
            bijective: ok && algebraic,
            method: BijectivityCheck::EnumeratedClasses,
        }),
        Err(Error::EnumerationTooLarge(..)) => {
            let elements = source.invariants().elements()?;
            let images: HashSet<Vec<Int>> =
                elements.iter().map(|e| delta.apply(e).map(GroupElement::into_coords)).collect::<Result<_>>()?;
            let order = target.invariants().order().expect("finite");
            let bijective = images.len() == elements.len() && Int::from(images.len()) == order;
            Ok(AcyclicMiddleVerdict::Checked {
                delta,
                bijective: bijective && algebraic,
                method: BijectivityCheck::Elements,
            })
        }
        Err(e) => Err(e),
    }
}
