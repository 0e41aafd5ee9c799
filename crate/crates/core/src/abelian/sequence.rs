//! Finite windows of a sequence of homomorphisms and their exactness.

use num_traits::Zero;

use super::{AbelianGroup, GroupHom, Subquotient};
use crate::{Error, Result};

/// One group of a sequence window together with the subgroups that meet there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceNode {
    pub label: String,
    pub group: AbelianGroup,
    /// Image of the incoming map.
    pub image: AbelianGroup,
    /// Kernel of the outgoing map.
    pub kernel: AbelianGroup,
    pub exact: bool,
}

/// A labelled homomorphism between consecutive nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceMap {
    pub label: String,
    pub hom: GroupHom,
}

/// `G₀ → G₁ → … → G_m` with one extra map on each side, so that exactness
/// can be checked at every listed node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub nodes: Vec<SequenceNode>,
    /// `maps[i]` ends at node `i`; the last map leaves the last node.
    pub maps: Vec<SequenceMap>,
}

impl ExactnessReport {
    /// `maps.len()` must be `labels.len() + 1`, and consecutive maps must compose.
    pub fn new(labels: Vec<String>, maps: Vec<SequenceMap>) -> Result<Self> {
        if maps.len() != labels.len() + 1 {
            return Err(Error::Mismatch(format!(
                "{} nodes need {} maps, got {}",
                labels.len(),
                labels.len() + 1,
                maps.len()
            )));
        }
        let nodes = labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| {
                let (inc, out) = (&maps[i].hom, &maps[i + 1].hom);
                if inc.target() != out.source() {
                    return Err(Error::Mismatch(format!(
                        "{} ends in {} but {} starts in {}",
                        maps[i].label,
                        inc.target(),
                        maps[i + 1].label,
                        out.source()
                    )));
                }
                let image_lattice = inc.image_lattice();
                let kernel_lattice = out.kernel_lattice();
                Ok(SequenceNode {
                    label,
                    group: inc.target().clone(),
                    image: inc.image(),
                    kernel: out.kernel(),
                    exact: image_lattice == kernel_lattice,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ExactnessReport { nodes, maps })
    }

    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    /// Labels of nodes where exactness fails.
    pub fn failures(&self) -> Vec<&str> {
        self.nodes.iter().filter(|n| !n.exact).map(|n| n.label.as_str()).collect()
    }
}

impl Subquotient {
    /// The map `self → target` induced by an ambient map `f`, given on
    /// representatives. Fails if `f` leaves the target numerator or does not
    /// send the denominator into the target denominator.
    pub fn induced<F>(&self, target: &Subquotient, f: F) -> Result<GroupHom>
    where
        F: Fn(&[crate::Int]) -> Result<Vec<crate::Int>>,
    {
        let outside = || Error::IllDefinedHom("image leaves the target numerator".into());
        for g in self.denominator().generators() {
            let y = target.reduce(&f(&g)?).ok_or_else(outside)?;
            if y.iter().any(|c| !c.is_zero()) {
                return Err(Error::IllDefinedHom("denominator does not map into the target denominator".into()));
            }
        }
        let columns = self
            .representatives()
            .iter()
            .map(|r| target.reduce(&f(r)?).ok_or_else(outside))
            .collect::<Result<Vec<_>>>()?;
        let matrix = super::IntMatrix::from_columns(target.group().ngens(), &columns);
        GroupHom::new(self.group().clone(), target.group().clone(), matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{IntMatrix, Lattice};
    use crate::Int;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn hom(src: &AbelianGroup, tgt: &AbelianGroup, rows: &[&[i64]]) -> GroupHom {
        let m = IntMatrix::from_rows(src.ngens(), rows.iter().map(|r| ints(r)));
        GroupHom::new(src.clone(), tgt.clone(), m).unwrap()
    }

    fn map(label: &str, h: GroupHom) -> SequenceMap {
        SequenceMap { label: label.into(), hom: h }
    }

    #[test]
    fn multiplication_by_two_sequence() {
        // 0 → Z →×2→ Z → Z/2 → 0
        let (zero, z, z2) = (AbelianGroup::zero(), AbelianGroup::integers(), AbelianGroup::cyclic(2));
        let maps = vec![
            map("in", GroupHom::zero(zero.clone(), z.clone())),
            map("x2", hom(&z, &z, &[&[2]])),
            map("mod2", hom(&z, &z2, &[&[1]])),
            map("out", GroupHom::zero(z2.clone(), zero.clone())),
        ];
        let r = ExactnessReport::new(vec!["Z".into(), "Z'".into(), "Z/2".into()], maps).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.nodes[1].image, z);
    }

    #[test]
    fn detects_failure() {
        let (zero, z) = (AbelianGroup::zero(), AbelianGroup::integers());
        let maps = vec![
            map("in", GroupHom::zero(zero.clone(), z.clone())),
            map("x2", hom(&z, &z, &[&[2]])),
        ];
        let r = ExactnessReport::new(vec!["Z".into()], maps).unwrap();
        assert!(r.is_exact());
        let maps = vec![
            map("in", GroupHom::zero(zero.clone(), z.clone())),
            map("zero", GroupHom::zero(z.clone(), z.clone())),
        ];
        let r = ExactnessReport::new(vec!["Z".into()], maps).unwrap();
        assert_eq!(r.failures(), vec!["Z"]);
    }

    #[test]
    fn mismatched_maps_are_rejected() {
        let z = AbelianGroup::integers();
        let z2 = AbelianGroup::cyclic(2);
        let maps = vec![map("a", GroupHom::identity(z.clone())), map("b", GroupHom::identity(z2))];
        assert!(ExactnessReport::new(vec!["Z".into()], maps).is_err());
    }

    #[test]
    fn induced_map_on_quotients() {
        // Z/4 = Z/4Z → Z/2 = Z/2Z, induced by the identity on Z.
        let a = Subquotient::new(Lattice::full(1), Lattice::diagonal(&ints(&[4]))).unwrap();
        let b = Subquotient::new(Lattice::full(1), Lattice::diagonal(&ints(&[2]))).unwrap();
        let h = a.induced(&b, |v| Ok(v.to_vec())).unwrap();
        assert!(h.is_surjective());
        assert_eq!(h.kernel(), AbelianGroup::cyclic(2));
        // the other direction is not well defined
        assert!(b.induced(&a, |v| Ok(v.to_vec())).is_err());
    }
}
