//! Abelian n-gerbed towers in cocycle form.
//!
//! A tower with links `(L₁,…,L_n)` is represented by its family of Čech
//! cocycles `(c₂,…,c_{n+1})`, where `c_{j+1}` has degree `j+1` and values in
//! `L_j`. Its isomorphism class is the class of the top cocycle in
//! `H^{n+1}(X; L_n)`; the lower cocycles are carried along but do not enter
//! the invariant.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::abelian::{AbelianGroup, GroupElement};
use crate::cech::{cohomology, is_coboundary, is_cocycle, Cochain, CohomologyGroup};
use crate::complexes::Complex;
use crate::{Error, Int, Result};

/// The links `(L₁,…,L_n)` of a tower; never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkStack(Vec<AbelianGroup>);

impl LinkStack {
    pub fn new(links: Vec<AbelianGroup>) -> Result<Self> {
        if links.is_empty() {
            return Err(Error::InvalidTower("a link stack needs at least one link".into()));
        }
        Ok(LinkStack(links))
    }

    pub fn links(&self) -> &[AbelianGroup] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn top(&self) -> &AbelianGroup {
        self.0.last().expect("non-empty")
    }

    fn pushed(&self, link: AbelianGroup) -> LinkStack {
        let mut links = self.0.clone();
        links.push(link);
        LinkStack(links)
    }
}

/// The cocycle family `(c₂,…,c_{n+1})` of an abelian n-gerbed tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerCocycle {
    complex: Complex,
    stack: LinkStack,
    cocycles: Vec<Cochain>,
}

impl TowerCocycle {
    /// Pairs links with cochains. Degrees, groups and the cocycle condition
    /// are checked by [`validate_tower`], so malformed families can still be
    /// built and reported on.
    pub fn new(complex: Complex, stack: LinkStack, cocycles: Vec<Cochain>) -> Result<Self> {
        if cocycles.len() != stack.height() {
            return Err(Error::InvalidTower(format!(
                "{} links but {} cocycles",
                stack.height(),
                cocycles.len()
            )));
        }
        if let Some(c) = cocycles.iter().find(|c| c.complex() != &complex) {
            return Err(Error::InvalidTower(format!(
                "cocycle of degree {} lives on a different complex",
                c.degree()
            )));
        }
        Ok(TowerCocycle {
            complex,
            stack,
            cocycles,
        })
    }

    /// The all-zero family for the given links.
    pub fn zero(complex: &Complex, stack: LinkStack) -> Self {
        let cocycles = stack
            .links()
            .iter()
            .enumerate()
            .map(|(j, l)| Cochain::zero(complex, l, j + 2))
            .collect();
        TowerCocycle {
            complex: complex.clone(),
            stack,
            cocycles,
        }
    }

    /// A single gerbe (height 1) whose class in `H²(X; L₁)` is `class`.
    pub fn from_class(complex: &Complex, link: AbelianGroup, class: &GroupElement) -> Result<Self> {
        let h = cohomology(complex, &link, 2);
        let rep = representative_for(&h, class)?;
        Ok(TowerCocycle {
            complex: complex.clone(),
            stack: LinkStack(vec![link]),
            cocycles: vec![rep],
        })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn stack(&self) -> &LinkStack {
        &self.stack
    }

    pub fn height(&self) -> usize {
        self.stack.height()
    }

    pub fn cocycles(&self) -> &[Cochain] {
        &self.cocycles
    }

    pub fn top(&self) -> &Cochain {
        self.cocycles.last().expect("non-empty")
    }

    /// Replaces the top cocycle (no validation).
    pub fn with_top(&self, top: Cochain) -> Result<Self> {
        let mut cocycles = self.cocycles.clone();
        *cocycles.last_mut().expect("non-empty") = top;
        Self::new(self.complex.clone(), self.stack.clone(), cocycles)
    }

    /// Replaces the cocycle at `level` (1-based: level j holds `c_{j+1}`).
    pub fn with_level(&self, level: usize, c: Cochain) -> Result<Self> {
        let mut cocycles = self.cocycles.clone();
        let slot = level
            .checked_sub(1)
            .and_then(|i| cocycles.get_mut(i))
            .ok_or_else(|| Error::InvalidTower(format!("no level {level}")))?;
        *slot = c;
        Self::new(self.complex.clone(), self.stack.clone(), cocycles)
    }

    fn top_cohomology(&self) -> CohomologyGroup {
        cohomology(&self.complex, self.stack.top(), self.height() + 1)
    }
}

/// Verdict for one level `j` of a tower (cocycle `c_{j+1}` over `L_j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub level: usize,
    pub expected_degree: usize,
    pub degree: usize,
    pub degree_ok: bool,
    pub group_ok: bool,
    pub cocycle: bool,
    /// Whether this level's cocycle is itself a coboundary; `None` when the
    /// level is structurally broken.
    pub coboundary: Option<bool>,
}

impl LevelReport {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.group_ok && self.cocycle
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub levels: Vec<LevelReport>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(LevelReport::passed)
    }

    /// First failing level, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.passed()).map(|l| l.level)
    }
}

/// Checks each level: degree `j+1`, values in `L_j`, and `d(c_{j+1}) = 0`.
pub fn validate_tower(t: &TowerCocycle) -> TowerReport {
    let levels = t
        .cocycles
        .iter()
        .zip(t.stack.links())
        .enumerate()
        .map(|(i, (c, link))| {
            let level = i + 1;
            let expected_degree = level + 1;
            let degree_ok = c.degree() == expected_degree;
            let group_ok = c.group() == link;
            let cocycle = degree_ok && is_cocycle(c);
            LevelReport {
                level,
                expected_degree,
                degree: c.degree(),
                degree_ok,
                group_ok,
                cocycle,
                coboundary: (degree_ok && group_ok && cocycle).then(|| is_coboundary(c)),
            }
        })
        .collect();
    TowerReport { levels }
}

fn ensure_valid(t: &TowerCocycle) -> Result<()> {
    let report = validate_tower(t);
    match report.first_failure() {
        None => Ok(()),
        Some(level) => Err(Error::InvalidTower(format!("level {level} fails validation"))),
    }
}

/// The class `[c_{n+1}] ∈ H^{n+1}(X; L_n)` in canonical coordinates.
pub fn classify(t: &TowerCocycle) -> Result<GroupElement> {
    ensure_valid(t)?;
    t.top_cohomology().reduce(t.top())
}

/// Whether the top cocycle is a coboundary.
pub fn is_trivial(t: &TowerCocycle) -> Result<bool> {
    Ok(classify(t)?.is_zero())
}

/// Whether two towers over the same complex and links have the same class.
pub fn equivalent(t1: &TowerCocycle, t2: &TowerCocycle) -> Result<bool> {
    if t1.complex != t2.complex {
        return Err(Error::Mismatch("towers live on different complexes".into()));
    }
    if t1.stack != t2.stack {
        return Err(Error::Mismatch("towers have different link stacks".into()));
    }
    Ok(classify(t1)? == classify(t2)?)
}

/// Appends a level with link `next` whose cocycle represents `class` in
/// `H^{n+2}(X; next)`. Lower cocycles are kept unchanged.
pub fn extend_from_class(t: &TowerCocycle, next: AbelianGroup, class: &GroupElement) -> Result<TowerCocycle> {
    ensure_valid(t)?;
    let h = cohomology(&t.complex, &next, t.height() + 2);
    let rep = representative_for(&h, class)?;
    let mut cocycles = t.cocycles.clone();
    cocycles.push(rep);
    Ok(TowerCocycle {
        complex: t.complex.clone(),
        stack: t.stack.pushed(next),
        cocycles,
    })
}

fn representative_for(h: &CohomologyGroup, class: &GroupElement) -> Result<Cochain> {
    if class.group() != h.invariants() {
        let reason = if h.is_zero() {
            format!("H^{} is zero but class coordinates {} were given", h.degree(), class)
        } else {
            format!("class coordinates {} belong to {}", class, class.group())
        };
        return Err(Error::NotAnElement {
            group: h.invariants().to_string(),
            reason,
        });
    }
    h.representative(class)
}

/// Largest number of cochains [`enumerate_classes`] will walk.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

/// One representative cocycle per class of `H^k(x; g)` for finite `g`,
/// found by exhaustive search over all cochains (no Smith form involved).
///
/// Each representative is the lexicographically first cocycle of its class
/// in the flat coordinate order; the result is sorted the same way.
pub fn enumerate_classes(x: &Complex, g: &AbelianGroup, k: usize) -> Result<Vec<Cochain>> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup(g.to_string()));
    }
    let too_large = || Error::EnumerationTooLarge(format!("C^{k}(X; {g})"), ENUMERATION_LIMIT);
    let moduli: Vec<u64> = g
        .torsion()
        .iter()
        .map(|d| d.to_u64().filter(|&d| d <= ENUMERATION_LIMIT).ok_or_else(too_large))
        .collect::<Result<_>>()?;
    let w = moduli.len();
    let radix: Vec<u64> = (0..x.count(k)).flat_map(|_| moduli.iter().copied()).collect();
    let total = radix
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d).filter(|&v| v <= ENUMERATION_LIMIT))
        .ok_or_else(too_large)?;

    // Signed face incidences of d on flat coordinates: (target, source, sign).
    let incidences = |from: usize| -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for (t, tau) in x.simplices(from + 1).iter().enumerate() {
            for skip in 0..tau.len() {
                let face: Vec<u32> = tau.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let s = x.index_of(&face).expect("closed under faces");
                for c in 0..w {
                    out.push((t * w + c, s * w + c, skip % 2 == 0));
                }
            }
        }
        out
    };
    let apply = |inc: &[(usize, usize, bool)], src: &[u64], len: usize| -> Vec<u64> {
        let mut out = vec![0u64; len];
        for &(t, s, plus) in inc {
            let d = moduli[t % w];
            let v = src[s] % d;
            out[t] = if plus { (out[t] + v) % d } else { (out[t] + d - v) % d };
        }
        out
    };
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).zip(&radix).map(|((x, y), d)| (x + y) % d).collect() };

    // All coboundaries, by closing the images of unit cochains under addition.
    let zero = vec![0u64; radix.len()];
    let mut boundaries = vec![zero.clone()];
    if let Some(prev) = k.checked_sub(1) {
        let inc = incidences(prev);
        let len_prev = x.count(prev) * w;
        let unit_images: Vec<Vec<u64>> = (0..len_prev)
            .map(|i| {
                let mut e = vec![0u64; len_prev];
                e[i] = 1;
                apply(&inc, &e, radix.len())
            })
            .collect();
        let mut seen: HashSet<Vec<u64>> = boundaries.iter().cloned().collect();
        let mut frontier = boundaries.clone();
        while let Some(b) = frontier.pop() {
            for u in &unit_images {
                let s = add(&b, u);
                if seen.insert(s.clone()) {
                    boundaries.push(s.clone());
                    frontier.push(s);
                }
            }
        }
    }

    let next = incidences(k);
    let next_len = x.count(k + 1) * w;
    let mut covered: HashSet<Vec<u64>> = HashSet::new();
    let mut reps = Vec::new();
    let mut digits = zero;
    for step in 0..total {
        if step > 0 {
            // increment, last coordinate fastest
            for i in (0..digits.len()).rev() {
                digits[i] += 1;
                if digits[i] < radix[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
        if covered.contains(&digits) || apply(&next, &digits, next_len).iter().any(|&v| v != 0) {
            continue;
        }
        for b in &boundaries {
            covered.insert(add(&digits, b));
        }
        reps.push(Cochain::from_flat(x, g, k, digits.iter().map(|&v| Int::from(v)).collect()));
    }
    Ok(reps)
}
