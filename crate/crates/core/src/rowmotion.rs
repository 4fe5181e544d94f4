//! Rowmotion on antichains (`ρ = ∇∘c∘Δ⁻¹`) and on ideals
//! (`ρ̂ = Δ⁻¹∘∇∘c`), orbit decomposition, ideal complements and superorbits.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{FenceError, Result};
use crate::fence::{ElementSet, Fence, Kappa, SetKind};

/// Which family rowmotion (or a toggle) acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Antichains,
    Ideals,
}

impl Family {
    pub fn kind(self) -> SetKind {
        match self {
            Family::Antichains => SetKind::Antichain,
            Family::Ideals => SetKind::Ideal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Antichains => "antichains",
            Family::Ideals => "ideals",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FenceError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "antichains" | "antichain" => Ok(Family::Antichains),
            "ideals" | "ideal" => Ok(Family::Ideals),
            other => Err(FenceError::Parse(format!(
                "unknown family '{other}' (expected antichains or ideals)"
            ))),
        }
    }
}

// Mask-level maps. Inputs are assumed to be in the right family.

pub fn rho_bits(f: &Fence, a: u64) -> u64 {
    f.minima(f.full_mask() & !f.down_set(a))
}

pub fn rho_inverse_bits(f: &Fence, a: u64) -> u64 {
    f.maxima(f.full_mask() & !f.up_set(a))
}

pub fn rho_hat_bits(f: &Fence, i: u64) -> u64 {
    f.down_set(f.minima(f.full_mask() & !i))
}

pub fn rho_hat_inverse_bits(f: &Fence, i: u64) -> u64 {
    f.full_mask() & !f.up_set(f.maxima(i))
}

/// One rowmotion step on the given family.
pub fn step_bits(f: &Fence, family: Family, bits: u64) -> u64 {
    match family {
        Family::Antichains => rho_bits(f, bits),
        Family::Ideals => rho_hat_bits(f, bits),
    }
}

pub fn step_inverse_bits(f: &Fence, family: Family, bits: u64) -> u64 {
    match family {
        Family::Antichains => rho_inverse_bits(f, bits),
        Family::Ideals => rho_hat_inverse_bits(f, bits),
    }
}

/// `ρ` on an antichain.
pub fn rho(f: &Fence, a: &ElementSet) -> Result<ElementSet> {
    a.expect_kind(SetKind::Antichain)?;
    Ok(ElementSet::from_bits(rho_bits(f, a.bits()), SetKind::Antichain))
}

pub fn rho_inverse(f: &Fence, a: &ElementSet) -> Result<ElementSet> {
    a.expect_kind(SetKind::Antichain)?;
    Ok(ElementSet::from_bits(
        rho_inverse_bits(f, a.bits()),
        SetKind::Antichain,
    ))
}

/// `ρ̂` on an ideal.
pub fn rho_hat(f: &Fence, i: &ElementSet) -> Result<ElementSet> {
    i.expect_kind(SetKind::Ideal)?;
    Ok(ElementSet::from_bits(rho_hat_bits(f, i.bits()), SetKind::Ideal))
}

pub fn rho_hat_inverse(f: &Fence, i: &ElementSet) -> Result<ElementSet> {
    i.expect_kind(SetKind::Ideal)?;
    Ok(ElementSet::from_bits(
        rho_hat_inverse_bits(f, i.bits()),
        SetKind::Ideal,
    ))
}

/// All members of a family as masks, in no particular order.
pub fn family_masks(f: &Fence, family: Family, cap: usize) -> Result<Vec<u64>> {
    match family {
        Family::Antichains => f.antichain_masks(cap),
        Family::Ideals => f.ideal_masks(cap),
    }
}

/// A cyclic sequence of family members closed under rowmotion.
///
/// The member with the smallest bitmask comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    family: Family,
    members: Vec<u64>,
}

impl Orbit {
    /// Wraps a cycle, rotating it to start at its canonical member.
    pub fn from_cycle(family: Family, mut members: Vec<u64>) -> Self {
        if let Some(pos) = (0..members.len()).min_by_key(|&k| members[k]) {
            members.rotate_left(pos);
        }
        Orbit { family, members }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Canonical representative.
    pub fn representative(&self) -> ElementSet {
        ElementSet::from_bits(self.members[0], self.family.kind())
    }

    pub fn bits(&self) -> &[u64] {
        &self.members
    }

    pub fn members(&self) -> impl Iterator<Item = ElementSet> + '_ {
        let kind = self.family.kind();
        self.members
            .iter()
            .map(move |&b| ElementSet::from_bits(b, kind))
    }

    pub fn contains_bits(&self, bits: u64) -> bool {
        self.members.contains(&bits)
    }
}

impl Serialize for Orbit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let labels: Vec<Vec<usize>> = self.members().map(|m| m.labels()).collect();
        let mut st = serializer.serialize_struct("Orbit", 3)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("members", &labels)?;
        st.end()
    }
}

/// Splits `domain` into cycles of `map`, failing if `map` does not permute
/// it. Cycles are returned in the order their smallest member appears when
/// `domain` is sorted.
pub fn cycle_decomposition<F>(domain: &[u64], map: F) -> Result<Vec<Vec<u64>>>
where
    F: Fn(u64) -> u64,
{
    let mut sorted = domain.to_vec();
    sorted.sort_unstable();
    let index: HashMap<u64, usize> = sorted.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    if index.len() != sorted.len() {
        return Err(FenceError::Internal("family has repeated members".into()));
    }
    let mut seen = vec![false; sorted.len()];
    let mut cycles = Vec::new();
    for start in 0..sorted.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        loop {
            seen[k] = true;
            cycle.push(sorted[k]);
            let next = map(sorted[k]);
            let Some(&j) = index.get(&next) else {
                return Err(FenceError::Internal(format!(
                    "map leaves the family at {next:#x}"
                )));
            };
            if j == start {
                break;
            }
            if seen[j] {
                return Err(FenceError::Internal(
                    "map is not injective on the family".into(),
                ));
            }
            k = j;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Rowmotion orbits of a family, sorted by canonical representative.
pub fn orbits(f: &Fence, family: Family, cap: usize) -> Result<Vec<Orbit>> {
    let domain = family_masks(f, family, cap)?;
    let cycles = cycle_decomposition(&domain, |b| step_bits(f, family, b))?;
    Ok(cycles
        .into_iter()
        .map(|c| Orbit::from_cycle(family, c))
        .collect())
}

pub fn antichain_orbits(f: &Fence) -> Result<Vec<Orbit>> {
    orbits(f, Family::Antichains, crate::fence::DEFAULT_MAX_FAMILY)
}

pub fn ideal_orbits(f: &Fence) -> Result<Vec<Orbit>> {
    orbits(f, Family::Ideals, crate::fence::DEFAULT_MAX_FAMILY)
}

/// The orbit through `seed`, which must be an antichain or an ideal.
pub fn orbit_of(f: &Fence, seed: &ElementSet) -> Result<Orbit> {
    let family = match seed.kind() {
        SetKind::Antichain => Family::Antichains,
        SetKind::Ideal => Family::Ideals,
        found => {
            return Err(FenceError::KindMismatch {
                expected: SetKind::Antichain,
                found,
            })
        }
    };
    let start = seed.bits();
    let mut members = vec![start];
    let mut cur = step_bits(f, family, start);
    while cur != start {
        members.push(cur);
        cur = step_bits(f, family, cur);
    }
    Ok(Orbit::from_cycle(family, members))
}

/// `Ī = κ(c(I))`.
pub fn ideal_complement(f: &Fence, i: &ElementSet) -> Result<ElementSet> {
    let kappa = f.kappa()?;
    ideal_complement_with(f, &kappa, i)
}

pub fn ideal_complement_with(f: &Fence, kappa: &Kappa, i: &ElementSet) -> Result<ElementSet> {
    i.expect_kind(SetKind::Ideal)?;
    Ok(ElementSet::from_bits(
        kappa.ideal_complement_bits(f.full_mask(), i.bits()),
        SetKind::Ideal,
    ))
}

/// A ρ̂-orbit closed under ideal complement, or a pair of orbits swapped
/// by it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Superorbit {
    /// Indices into the orbit list the superorbit was built from.
    pub orbit_indices: Vec<usize>,
    pub size: usize,
}

impl Superorbit {
    pub fn is_pair(&self) -> bool {
        self.orbit_indices.len() == 2
    }
}

/// Groups ideal orbits into superorbits. `orbits` must be the complete
/// ρ̂-orbit list of `f`.
pub fn superorbits(f: &Fence, orbits: &[Orbit]) -> Result<Vec<Superorbit>> {
    let kappa = f.kappa()?;
    let full = f.full_mask();
    let mut owner: HashMap<u64, usize> = HashMap::new();
    for (k, o) in orbits.iter().enumerate() {
        if o.family() != Family::Ideals {
            return Err(FenceError::KindMismatch {
                expected: SetKind::Ideal,
                found: SetKind::Antichain,
            });
        }
        for &b in o.bits() {
            owner.insert(b, k);
        }
    }
    let mut done = vec![false; orbits.len()];
    let mut out = Vec::new();
    for (k, o) in orbits.iter().enumerate() {
        if done[k] {
            continue;
        }
        let partner_of = |b: u64| owner.get(&kappa.ideal_complement_bits(full, b)).copied();
        let partner = partner_of(o.bits()[0])
            .ok_or_else(|| FenceError::Internal("ideal complement left the family".into()))?;
        // An orbit's complement must land in a single orbit.
        if o.bits().iter().any(|&b| partner_of(b) != Some(partner)) {
            return Err(FenceError::Internal(format!(
                "complement of orbit {k} meets several orbits"
            )));
        }
        done[k] = true;
        done[partner] = true;
        let mut orbit_indices = vec![k];
        let mut size = o.size();
        if partner != k {
            orbit_indices.push(partner);
            size += orbits[partner].size();
        }
        out.push(Superorbit {
            orbit_indices,
            size,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(alpha: &str) -> Fence {
        Fence::parse(alpha).unwrap()
    }

    fn sizes(orbits: &[Orbit]) -> Vec<usize> {
        let mut v: Vec<usize> = orbits.iter().map(Orbit::size).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn rho_on_the_v() {
        let v = f("2,2");
        let empty = v.antichain(&[]).unwrap();
        let a = rho(&v, &empty).unwrap();
        assert_eq!(a.labels(), vec![1, 3]);
        let b = rho(&v, &a).unwrap();
        assert_eq!(b.labels(), vec![2]);
        assert_eq!(rho(&v, &b).unwrap(), empty);
        let x1 = v.antichain(&[1]).unwrap();
        assert_eq!(rho(&v, &x1).unwrap().labels(), vec![3]);
    }

    #[test]
    fn rho_hat_on_the_v() {
        let v = f("2,2");
        let empty = v.ideal(&[]).unwrap();
        let a = rho_hat(&v, &empty).unwrap();
        assert_eq!(a.labels(), vec![1, 3]);
        let b = rho_hat(&v, &a).unwrap();
        assert_eq!(b.labels(), vec![1, 2, 3]);
        assert_eq!(rho_hat(&v, &b).unwrap(), empty);
        let x1 = v.ideal(&[1]).unwrap();
        let x3 = rho_hat(&v, &x1).unwrap();
        assert_eq!(x3.labels(), vec![3]);
        assert_eq!(rho_hat(&v, &x3).unwrap(), x1);
    }

    #[test]
    fn full_poset_goes_to_empty() {
        for alpha in ["2,2", "4,3,4", "3,1,2"] {
            let g = f(alpha);
            let all = g.ideal(&(1..=g.len()).collect::<Vec<_>>()).unwrap();
            assert!(rho_hat(&g, &all).unwrap().is_empty());
        }
    }

    #[test]
    fn five_cycle_of_four_three_four() {
        let g = f("4,3,4");
        let o = orbit_of(&g, &g.antichain(&[]).unwrap()).unwrap();
        let listed: Vec<Vec<usize>> = o.members().map(|m| m.labels()).collect();
        assert_eq!(
            listed,
            vec![
                vec![],
                vec![1, 7],
                vec![2, 6, 8],
                vec![3, 5, 9],
                vec![4, 10]
            ]
        );
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(sizes(&antichain_orbits(&f("4,3,4")).unwrap()), vec![5, 17, 17, 17]);
        assert_eq!(sizes(&ideal_orbits(&f("4,3,4")).unwrap()), vec![5, 17, 17, 17]);
        assert_eq!(sizes(&antichain_orbits(&f("5,4")).unwrap()), vec![21]);
        assert_eq!(sizes(&ideal_orbits(&f("5,4")).unwrap()), vec![21]);
        assert_eq!(sizes(&antichain_orbits(&f("2,2")).unwrap()), vec![2, 3]);
        assert_eq!(sizes(&ideal_orbits(&f("2,2")).unwrap()), vec![2, 3]);
    }

    #[test]
    fn orbits_are_canonical_and_sorted() {
        let orbits = antichain_orbits(&f("4,3,4")).unwrap();
        let keys: Vec<u64> = orbits.iter().map(|o| o.bits()[0]).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        for o in &orbits {
            assert_eq!(o.bits()[0], *o.bits().iter().min().unwrap());
        }
    }

    #[test]
    fn inverses_undo_steps() {
        let g = f("3,1,2,3");
        for b in g.antichain_masks(1000).unwrap() {
            assert_eq!(rho_inverse_bits(&g, rho_bits(&g, b)), b);
        }
        for b in g.ideal_masks(1000).unwrap() {
            assert_eq!(rho_hat_inverse_bits(&g, rho_hat_bits(&g, b)), b);
        }
    }

    #[test]
    fn role_mismatch() {
        let v = f("2,2");
        let i = v.ideal(&[1]).unwrap();
        assert!(rho(&v, &i).is_err());
        let a = v.antichain(&[2]).unwrap();
        assert!(rho_hat(&v, &a).is_err());
    }

    #[test]
    fn complement_on_the_v_needs_kappa() {
        // Index reversal preserves the order of the V, so no complement map.
        let v = f("2,2");
        assert!(ideal_complement(&v, &v.ideal(&[]).unwrap()).is_err());
    }

    #[test]
    fn complement_of_empty_is_everything() {
        let g = f("3,3,3");
        let e = g.ideal(&[]).unwrap();
        assert_eq!(ideal_complement(&g, &e).unwrap().len(), g.len());
    }

    #[test]
    fn cycle_decomposition_rejects_non_permutations() {
        assert!(cycle_decomposition(&[1, 2, 3], |_| 1).is_err());
        assert!(cycle_decomposition(&[1, 2, 3], |b| b + 10).is_err());
        let c = cycle_decomposition(&[3, 1, 2], |b| if b == 3 { 1 } else { b + 1 }).unwrap();
        assert_eq!(c, vec![vec![1, 2, 3]]);
    }
}
