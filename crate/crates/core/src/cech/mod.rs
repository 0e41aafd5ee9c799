//! Čech cochains on a nerve, the coboundary operator and cohomology.
//!
//! Cochains are alternating: the value on a permuted tuple carries the sign
//! of the permutation, and any tuple with a repeated index evaluates to zero.
//! Coefficients are written additively.

mod space;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use rand::Rng;

pub(crate) use space::CochainSpace;

use crate::abelian::{AbelianGroup, GroupElement, GroupHom, Subquotient};
use crate::complexes::{orient, Complex};
use crate::{Error, Int, Result};

/// A degree-k cochain: one group element per k-simplex.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    complex: Complex,
    group: AbelianGroup,
    degree: usize,
    // simplex-major flat coordinates, torsion reduced
    values: Vec<Int>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.group.ngens();
        let mut m = f.debug_map();
        for (i, s) in self.complex.simplices(self.degree).iter().enumerate() {
            let v = &self.values[i * w..(i + 1) * w];
            if v.iter().any(|x| !x.is_zero()) {
                m.entry(s, &v.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
        }
        m.finish()
    }
}

impl Cochain {
    pub fn zero(complex: &Complex, group: &AbelianGroup, degree: usize) -> Self {
        let len = complex.count(degree) * group.ngens();
        Cochain {
            complex: complex.clone(),
            group: group.clone(),
            degree,
            values: vec![Int::zero(); len],
        }
    }

    pub(crate) fn from_flat(complex: &Complex, group: &AbelianGroup, degree: usize, mut values: Vec<Int>) -> Self {
        assert_eq!(values.len(), complex.count(degree) * group.ngens(), "flat cochain length mismatch");
        let w = group.ngens();
        if w > 0 {
            for chunk in values.chunks_mut(w) {
                group.reduce_coords(chunk);
            }
        }
        Cochain {
            complex: complex.clone(),
            group: group.clone(),
            degree,
            values,
        }
    }

    /// Builds a cochain from its value on each k-simplex (given in sorted form).
    pub fn from_fn(
        complex: &Complex,
        group: &AbelianGroup,
        degree: usize,
        mut f: impl FnMut(&[u32]) -> GroupElement,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(complex.count(degree) * group.ngens());
        for s in complex.simplices(degree) {
            let x = f(s);
            if x.group() != group {
                return Err(Error::Mismatch(format!("value on {s:?} lives in {}, expected {group}", x.group())));
            }
            values.extend(x.into_coords());
        }
        Ok(Self::from_flat(complex, group, degree, values))
    }

    /// Uniform random cochain: torsion coordinates uniform in `[0, d)`,
    /// free coordinates uniform in `[-5, 5]`.
    pub fn random<R: Rng + ?Sized>(complex: &Complex, group: &AbelianGroup, degree: usize, rng: &mut R) -> Self {
        let moduli = group.moduli();
        let n = complex.count(degree);
        let values = (0..n)
            .flat_map(|_| moduli.iter())
            .map(|d| {
                if d.is_zero() {
                    Int::from(rng.gen_range(-5i64..=5))
                } else {
                    let bound: u64 = d.try_into().unwrap_or(u64::MAX);
                    Int::from(rng.gen_range(0..bound))
                }
            })
            .collect::<Vec<_>>();
        Self::from_flat(complex, group, degree, values)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Flat coordinates, simplex-major in the complex's simplex order.
    pub fn values(&self) -> &[Int] {
        &self.values
    }

    /// Stored coordinates on the `i`-th k-simplex.
    pub fn value_at(&self, i: usize) -> &[Int] {
        let w = self.group.ngens();
        &self.values[i * w..(i + 1) * w]
    }

    /// Alternating evaluation on an arbitrary ordering of a simplex.
    pub fn value(&self, tuple: &[u32]) -> Result<GroupElement> {
        if tuple.len() != self.degree + 1 {
            return Err(Error::Mismatch(format!(
                "tuple {tuple:?} has length {}, cochain has degree {}",
                tuple.len(),
                self.degree
            )));
        }
        let Some((sorted, sign)) = orient(tuple) else {
            // Only tuples whose distinct vertices span a simplex are meaningful.
            let mut distinct = tuple.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            if !self.complex.contains(&distinct) {
                return Err(Error::NotASimplex(tuple.to_vec()));
            }
            return Ok(self.group.identity_element());
        };
        let i = self.complex.index_of(&sorted).ok_or_else(|| Error::NotASimplex(tuple.to_vec()))?;
        let x = GroupElement::new(self.group.clone(), self.value_at(i).to_vec())?;
        Ok(if sign < 0 { x.neg() } else { x })
    }

    /// Sets the value on `tuple` (any ordering; the sign is absorbed).
    pub fn set(&mut self, tuple: &[u32], value: &GroupElement) -> Result<()> {
        if value.group() != &self.group {
            return Err(Error::Mismatch(format!("value lives in {}, expected {}", value.group(), self.group)));
        }
        let (sorted, sign) = orient(tuple).ok_or_else(|| Error::RepeatedVertex(tuple.to_vec()))?;
        if sorted.len() != self.degree + 1 {
            return Err(Error::Mismatch(format!("tuple {tuple:?} does not have degree {}", self.degree)));
        }
        let i = self.complex.index_of(&sorted).ok_or_else(|| Error::NotASimplex(tuple.to_vec()))?;
        let v = if sign < 0 { value.neg() } else { value.clone() };
        let w = self.group.ngens();
        self.values[i * w..(i + 1) * w].clone_from_slice(v.coords());
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Int) -> Cochain {
        Self::from_flat(&self.complex, &self.group, self.degree, self.values.iter().map(|x| x * k).collect())
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || self.group != other.group || self.complex != other.complex {
            return Err(Error::Mismatch(format!(
                "cochains of degree {} over {} and degree {} over {} on possibly different complexes",
                self.degree, self.group, other.degree, other.group
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self::from_flat(&self.complex, &self.group, self.degree, values))
    }

    /// Applies a coefficient homomorphism simplex by simplex.
    pub fn map_coefficients(&self, h: &GroupHom) -> Result<Cochain> {
        if h.source() != &self.group {
            return Err(Error::Mismatch(format!("homomorphism source {} is not {}", h.source(), self.group)));
        }
        let w = self.group.ngens();
        let mut values = Vec::with_capacity(self.complex.count(self.degree) * h.target().ngens());
        for i in 0..self.complex.count(self.degree) {
            values.extend(h.apply_coords(&self.values[i * w..(i + 1) * w]));
        }
        Ok(Self::from_flat(&self.complex, h.target(), self.degree, values))
    }

    pub(crate) fn space(&self) -> CochainSpace {
        CochainSpace::new(self.complex.clone(), self.group.moduli())
    }
}

impl Add for &Cochain {
    type Output = Cochain;

    /// Panics on incompatible operands; see [`Cochain::checked_add`].
    fn add(self, rhs: &Cochain) -> Cochain {
        self.checked_add(rhs).expect("incompatible cochains")
    }
}

impl Neg for &Cochain {
    type Output = Cochain;

    fn neg(self) -> Cochain {
        self.scale(&Int::from(-1))
    }
}

impl Sub for &Cochain {
    type Output = Cochain;

    fn sub(self, rhs: &Cochain) -> Cochain {
        self + &(-rhs)
    }
}

/// `(dc)_{i₀…i_{k+1}} = Σⱼ (−1)ʲ c_{i₀…îⱼ…i_{k+1}}`
pub fn coboundary(c: &Cochain) -> Cochain {
    let w = c.group.ngens();
    let k = c.degree;
    let complex = &c.complex;
    let mut values = vec![Int::zero(); complex.count(k + 1) * w];
    for (t, tau) in complex.simplices(k + 1).iter().enumerate() {
        let out = &mut values[t * w..(t + 1) * w];
        for skip in 0..tau.len() {
            let face: Vec<u32> = tau.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            let s = complex.index_of(&face).expect("complex is closed under faces");
            for (o, x) in out.iter_mut().zip(c.value_at(s)) {
                if skip % 2 == 0 {
                    *o += x;
                } else {
                    *o -= x;
                }
            }
        }
    }
    Cochain::from_flat(complex, &c.group, k + 1, values)
}

pub fn is_cocycle(c: &Cochain) -> bool {
    coboundary(c).is_zero()
}

/// Whether `c` lies in the image of `d`. In degree 0 only the zero cochain does.
pub fn is_coboundary(c: &Cochain) -> bool {
    if c.degree == 0 {
        return c.is_zero();
    }
    coboundary_witness(c).is_some()
}

/// Some `b` with `d(b) = c`, when `c` is a coboundary of positive degree.
///
/// Torsion coefficients are handled by lifting to the integers with explicit
/// relation columns, so a single Smith-form solver serves every group.
pub fn coboundary_witness(c: &Cochain) -> Option<Cochain> {
    let prev = c.degree.checked_sub(1)?;
    let space = c.space();
    let system = space.coboundary_matrix(prev).hstack(space.relations(c.degree).basis());
    let sol = crate::abelian::solve(&system, &c.values)?;
    let b = sol[..space.len(prev)].to_vec();
    Some(Cochain::from_flat(&c.complex, &c.group, prev, b))
}

/// The cohomology group `H^k(X; G)` with representatives and a class map.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    complex: Complex,
    coefficients: AbelianGroup,
    degree: usize,
    quotient: Subquotient,
    basis: Vec<Cochain>,
}

/// Computes `H^k(x; g) = ker d_k / im d_{k−1}` via Smith normal form.
pub fn cohomology(x: &Complex, g: &AbelianGroup, k: usize) -> CohomologyGroup {
    let space = CochainSpace::new(x.clone(), g.moduli());
    let quotient = space.cohomology(k);
    let basis = quotient
        .representatives()
        .iter()
        .map(|r| Cochain::from_flat(x, g, k, r.clone()))
        .collect();
    CohomologyGroup {
        complex: x.clone(),
        coefficients: g.clone(),
        degree: k,
        quotient,
        basis,
    }
}

impl CohomologyGroup {
    pub fn invariants(&self) -> &AbelianGroup {
        self.quotient.group()
    }

    pub fn is_zero(&self) -> bool {
        self.invariants().is_zero()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &AbelianGroup {
        &self.coefficients
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// Representative cocycles, one per canonical generator.
    pub fn basis(&self) -> &[Cochain] {
        &self.basis
    }

    /// Class of a cocycle in canonical coordinates of [`Self::invariants`].
    pub fn reduce(&self, c: &Cochain) -> Result<GroupElement> {
        if c.degree != self.degree || c.group != self.coefficients || c.complex != self.complex {
            return Err(Error::Mismatch(format!(
                "cochain of degree {} over {} does not belong to H^{}(-; {})",
                c.degree, c.group, self.degree, self.coefficients
            )));
        }
        let coords = self.quotient.reduce(&c.values).ok_or(Error::NotACocycle(c.degree))?;
        GroupElement::new(self.invariants().clone(), coords)
    }

    /// The representative `Σ xᵢ · basisᵢ` of the class with coordinates `x`.
    pub fn representative(&self, class: &GroupElement) -> Result<Cochain> {
        if class.group() != self.invariants() {
            return Err(Error::NotAnElement {
                group: self.invariants().to_string(),
                reason: format!("class coordinates belong to {}", class.group()),
            });
        }
        Ok(Cochain::from_flat(
            &self.complex,
            &self.coefficients,
            self.degree,
            self.quotient.lift(class.coords()),
        ))
    }
}

/// Transition data `u_{ij}` on the edges of a nerve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionData {
    u: Cochain,
}

impl TransitionData {
    pub fn new(u: Cochain) -> Result<Self> {
        if u.degree != 1 {
            return Err(Error::Mismatch(format!("transition data has degree 1, got {}", u.degree)));
        }
        Ok(TransitionData { u })
    }

    pub fn cochain(&self) -> &Cochain {
        &self.u
    }

    pub fn complex(&self) -> &Complex {
        &self.u.complex
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.u.group
    }
}

/// The classifying 2-cocycle `c_{ijk} = u_{jk} − u_{ik} + u_{ij}` of a gerbe
/// glued from trivial pieces by the transitions `u`.
pub fn giraud_cocycle(t: &TransitionData) -> Cochain {
    let u = &t.u;
    let complex = u.complex();
    let group = u.group();
    Cochain::from_fn(complex, group, 2, |s| {
        let (i, j, k) = (s[0], s[1], s[2]);
        let ujk = u.value(&[j, k]).expect("edge of a triangle");
        let uik = u.value(&[i, k]).expect("edge of a triangle");
        let uij = u.value(&[i, j]).expect("edge of a triangle");
        ujk.sub(&uik).and_then(|x| x.add(&uij)).expect("same group")
    })
    .expect("values live in the transition group")
}

/// The cone homotopy `(Kc)_σ = (−1)^k c_{σ·apex}` (apex appended last),
/// which satisfies `dK + Kd = id` in positive degrees on a cone.
pub fn cone_homotopy(c: &Cochain, apex: u32) -> Result<Cochain> {
    if let Some(missing) = c.complex.cone_defect(apex)? {
        return Err(Error::NotACone { apex, missing });
    }
    let k = c.degree.checked_sub(1).ok_or_else(|| Error::Invalid("cone homotopy needs degree ≥ 1".into()))?;
    let sign = if c.degree % 2 == 0 { Int::from(1) } else { Int::from(-1) };
    Cochain::from_fn(&c.complex, &c.group, k, |s| {
        if s.contains(&apex) {
            return c.group.identity_element();
        }
        let mut t = s.to_vec();
        t.push(apex);
        c.value(&t).expect("cone extends every simplex").scale(&sign)
    })
}

/// A primitive `h` with `d(h) = c` for a cocycle `c` of positive degree on a
/// cone with the given apex.
pub fn cone_contraction(c: &Cochain, apex: u32) -> Result<Cochain> {
    if c.degree == 0 {
        return Err(Error::Invalid("cone contraction needs a cocycle of degree ≥ 1".into()));
    }
    if let Some(missing) = c.complex.cone_defect(apex)? {
        return Err(Error::NotACone { apex, missing });
    }
    if !is_cocycle(c) {
        return Err(Error::NotACocycle(c.degree));
    }
    cone_homotopy(c, apex)
}

#[cfg(test)]
mod tests;
