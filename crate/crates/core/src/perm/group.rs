use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// Something `S_n` acts on from the left: `σ.(τ.x) = (στ).x` for
/// polynomials and points.
pub trait Action: Sized {
    fn act(&self, sigma: &Permutation) -> Result<Self>;
}

impl<T: Clone> Action for Vec<T> {
    fn act(&self, sigma: &Permutation) -> Result<Self> {
        sigma.act_tuple(self)
    }
}

struct GroupData {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
}

/// A finite permutation group with its elements enumerated.
///
/// Elements are kept sorted lexicographically by image list. Cloning is
/// cheap; the element table is shared.
#[derive(Clone)]
pub struct PermGroup {
    data: Arc<GroupData>,
}

impl PermGroup {
    /// Closure of `gens` under composition. An empty list gives the trivial
    /// group of the given degree.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut members: HashSet<Permutation> = HashSet::new();
        members.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let next = &e * g;
                if members.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<Permutation> = members.iter().cloned().collect();
        elements.sort();
        let mut generators: Vec<Permutation> =
            gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        generators.dedup();
        Ok(PermGroup {
            data: Arc::new(GroupData {
                degree,
                generators,
                elements,
                members,
            }),
        })
    }

    /// Like [`generate`](Self::generate) but takes the degree from the
    /// generators.
    pub fn from_generators(gens: &[Permutation]) -> Result<Self> {
        let degree = gens.first().ok_or(Error::EmptyGenerators)?.degree();
        Self::generate(degree, gens)
    }

    /// Builds a group from a set already known to be closed; the generators
    /// are chosen greedily from the sorted elements.
    pub(crate) fn from_closed_set(
        degree: usize,
        set: impl IntoIterator<Item = Permutation>,
    ) -> Self {
        let mut elements: Vec<Permutation> = set.into_iter().collect();
        elements.sort();
        elements.dedup();
        let members: HashSet<Permutation> = elements.iter().cloned().collect();
        let generators = greedy_generators(degree, &elements);
        PermGroup {
            data: Arc::new(GroupData {
                degree,
                generators,
                elements,
                members,
            }),
        }
    }

    pub fn trivial(n: usize) -> Self {
        Self::generate(n, &[]).expect("degree is consistent")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
        }
        Self::generate(n, &gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Permutation> = (3..=n)
            .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]).unwrap())
            .collect();
        Self::generate(n, &gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        if n < 2 {
            return Self::trivial(n);
        }
        let c = Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap();
        Self::generate(n, &[c]).unwrap()
    }

    /// Dihedral group of order `2n` acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Self {
        if n < 3 {
            return Self::symmetric(n);
        }
        let rot = Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap();
        let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        Self::generate(n, &[rot, refl]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn order(&self) -> usize {
        self.data.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.data.generators
    }

    /// All elements, sorted lexicographically.
    pub fn elements(&self) -> &[Permutation] {
        &self.data.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.data.members.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && other.order().is_multiple_of(self.order())
            && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() == 0 || self.point_orbit(0).len() == self.degree()
    }

    pub fn is_even(&self) -> bool {
        self.generators().iter().all(Permutation::is_even)
    }

    /// Orbit of the 0-based point `i`, sorted.
    pub fn point_orbit(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut stack = vec![i];
        seen[i] = true;
        while let Some(j) = stack.pop() {
            for g in self.generators() {
                let k = g.image(j);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
        (0..self.degree()).filter(|&k| seen[k]).collect()
    }

    /// Orbits on points, each sorted, ordered by least point.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for i in 0..self.degree() {
            if !seen[i] {
                let orb = self.point_orbit(i);
                for &j in &orb {
                    seen[j] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn point_stabilizer(&self, i: usize) -> PermGroup {
        let set = self.elements().iter().filter(|g| g.image(i) == i).cloned();
        PermGroup::from_closed_set(self.degree(), set)
    }

    /// Orbit of `seed` in order of first appearance along the sorted
    /// element list.
    pub fn orbit<T: Action + Clone + Eq + Hash>(&self, seed: &T) -> Result<Vec<T>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in self.elements() {
            let image = seed.act(g)?;
            if seen.insert(image.clone()) {
                out.push(image);
            }
        }
        Ok(out)
    }

    pub fn stabilizer<T: Action + Eq>(&self, seed: &T) -> Result<PermGroup> {
        let mut set = Vec::new();
        for g in self.elements() {
            if &seed.act(g)? == seed {
                set.push(g.clone());
            }
        }
        Ok(PermGroup::from_closed_set(self.degree(), set))
    }

    /// `G^τ = τ G τ⁻¹`.
    pub fn conjugate(&self, tau: &Permutation) -> Result<PermGroup> {
        if tau.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: tau.degree(),
            });
        }
        let gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|g| g.conjugate_by(tau))
            .collect();
        let set = self.elements().iter().map(|g| g.conjugate_by(tau));
        let mut group = PermGroup::from_closed_set(self.degree(), set);
        if !gens.is_empty() {
            Arc::get_mut(&mut group.data)
                .expect("freshly built")
                .generators = gens;
        }
        Ok(group)
    }

    /// Normalizer in `S_n`, by exhaustive scan.
    pub fn normalizer(&self) -> PermGroup {
        let sym = PermGroup::symmetric(self.degree());
        let set = sym
            .elements()
            .iter()
            .filter(|s| {
                self.generators()
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(s)))
            })
            .cloned();
        PermGroup::from_closed_set(self.degree(), set)
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let set = self
            .elements()
            .iter()
            .filter(|g| other.contains(g))
            .cloned();
        PermGroup::from_closed_set(self.degree(), set)
    }

    /// Coset decomposition of `self` modulo the subgroup `h`.
    pub fn transversal(&self, h: &PermGroup, side: CosetSide) -> Result<CosetSystem> {
        CosetSystem::new(self, h, side)
    }

    /// Multiset of cycle types over all elements, sorted.
    pub fn cycle_type_census(&self) -> Vec<(Vec<usize>, usize)> {
        let mut census: HashMap<Vec<usize>, usize> = HashMap::new();
        for g in self.elements() {
            *census.entry(g.cycle_type()).or_default() += 1;
        }
        let mut out: Vec<_> = census.into_iter().collect();
        out.sort();
        out
    }

    pub fn has_cycle_type(&self, cycle_type: &[usize]) -> bool {
        let mut wanted = cycle_type.to_vec();
        wanted.sort_unstable();
        self.elements().iter().any(|g| g.cycle_type() == wanted)
    }

    pub fn as_set(&self) -> PermSet {
        PermSet::new(self.degree(), self.elements().iter().cloned())
    }
}

fn greedy_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure: HashSet<Permutation> = HashSet::new();
    closure.insert(Permutation::identity(degree));
    // Prefer high-order elements so small groups get few generators.
    let mut by_order: Vec<&Permutation> = elements.iter().collect();
    by_order.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.cmp(b)));
    for e in by_order {
        if closure.len() == elements.len() {
            break;
        }
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let mut queue: VecDeque<Permutation> = closure.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = &x * g;
                if closure.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.data.elements == other.data.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(order {}, gens [", self.order())?;
        for (k, g) in self.generators().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// A set of permutations that need not be a group (injectors, `Max(I, α)`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PermSet {
    degree: usize,
    members: BTreeSet<Permutation>,
}

impl PermSet {
    pub fn new(degree: usize, members: impl IntoIterator<Item = Permutation>) -> Self {
        PermSet {
            degree,
            members: members.into_iter().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.members.iter()
    }

    pub fn intersection(&self, other: &PermSet) -> PermSet {
        PermSet::new(
            self.degree,
            self.members.intersection(&other.members).cloned(),
        )
    }

    /// `left · S · right`.
    pub fn translate(&self, left: &Permutation, right: &Permutation) -> PermSet {
        PermSet::new(
            self.degree,
            self.members.iter().map(|s| &(left * s) * right),
        )
    }

    /// The set as a group, when it is one.
    pub fn as_group(&self) -> Option<PermGroup> {
        if !self.contains(&Permutation::identity(self.degree)) {
            return None;
        }
        for a in &self.members {
            for b in &self.members {
                if !self.contains(&(a * b)) {
                    return None;
                }
            }
        }
        Some(PermGroup::from_closed_set(
            self.degree,
            self.members.iter().cloned(),
        ))
    }

    pub fn is_group(&self) -> bool {
        self.as_group().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetSide {
    /// Cosets `τH`.
    Left,
    /// Cosets `Hτ`.
    Right,
}

/// Coset decomposition of `L` modulo `H`.
///
/// The representative of each coset is its lexicographically least element
/// and the transversal is sorted.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    ambient: PermGroup,
    subgroup: PermGroup,
    side: CosetSide,
    transversal: Vec<Permutation>,
    coset_index: HashMap<Permutation, usize>,
}

impl CosetSystem {
    pub fn new(ambient: &PermGroup, subgroup: &PermGroup, side: CosetSide) -> Result<Self> {
        if !subgroup.is_subgroup_of(ambient) {
            return Err(Error::NotSubgroup(format!(
                "{subgroup:?} is not contained in {ambient:?}"
            )));
        }
        let mut coset_index = HashMap::with_capacity(ambient.order());
        let mut transversal = Vec::new();
        for s in ambient.elements() {
            if coset_index.contains_key(s) {
                continue;
            }
            let k = transversal.len();
            transversal.push(s.clone());
            for h in subgroup.elements() {
                let e = match side {
                    CosetSide::Left => s * h,
                    CosetSide::Right => h * s,
                };
                coset_index.insert(e, k);
            }
        }
        Ok(CosetSystem {
            ambient: ambient.clone(),
            subgroup: subgroup.clone(),
            side,
            transversal,
            coset_index,
        })
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn side(&self) -> CosetSide {
        self.side
    }

    pub fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }

    pub fn len(&self) -> usize {
        self.transversal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transversal.is_empty()
    }

    /// Index of the coset containing `s`, if `s` lies in the ambient group.
    pub fn coset_of(&self, s: &Permutation) -> Option<usize> {
        self.coset_index.get(s).copied()
    }

    /// Elements of the `k`-th coset.
    pub fn coset(&self, k: usize) -> Vec<Permutation> {
        let t = &self.transversal[k];
        let mut out: Vec<Permutation> = self
            .subgroup
            .elements()
            .iter()
            .map(|h| match self.side {
                CosetSide::Left => t * h,
                CosetSide::Right => h * t,
            })
            .collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_one_based(images).unwrap()
    }

    #[test]
    fn generate_small_groups() {
        assert_eq!(
            PermGroup::from_generators(&[p(&[2, 1, 3])])
                .unwrap()
                .order(),
            2
        );
        let s3 = PermGroup::from_generators(&[p(&[2, 3, 1]), p(&[2, 1, 3])]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3, PermGroup::symmetric(3));
        let a3 = PermGroup::from_generators(&[p(&[2, 3, 1])]).unwrap();
        assert_eq!(a3.order(), 3);
        assert_eq!(a3, PermGroup::alternating(3));
        assert!(matches!(
            PermGroup::from_generators(&[]),
            Err(Error::EmptyGenerators)
        ));
        assert_eq!(PermGroup::dihedral(4).order(), 8);
        assert_eq!(PermGroup::alternating(5).order(), 60);
    }

    #[test]
    fn point_orbits_and_stabilizers() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.point_orbit(0), vec![0, 1, 2]);
        let t = PermGroup::from_generators(&[p(&[2, 1, 3])]).unwrap();
        assert_eq!(t.point_orbit(2), vec![2]);
        assert_eq!(s3.point_stabilizer(2).order(), 2);
    }

    #[test]
    fn transversal_counts() {
        let s3 = PermGroup::symmetric(3);
        let h = PermGroup::from_generators(&[p(&[2, 1, 3])]).unwrap();
        let cs = s3.transversal(&h, CosetSide::Left).unwrap();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs.transversal()[0], Permutation::identity(3));
        let single = s3.transversal(&s3, CosetSide::Right).unwrap();
        assert_eq!(single.transversal(), &[Permutation::identity(3)]);
        let not_sub = PermGroup::from_generators(&[p(&[2, 1, 3, 4])]).unwrap();
        assert!(PermGroup::cyclic(4)
            .transversal(&not_sub, CosetSide::Left)
            .is_err());
    }

    #[test]
    fn conjugation_and_normalizers() {
        let h = PermGroup::from_generators(&[p(&[2, 1, 3])]).unwrap();
        let tau = Permutation::parse(3, "(2 3)").unwrap();
        let expected =
            PermGroup::from_generators(&[Permutation::parse(3, "(1 3)").unwrap()]).unwrap();
        assert_eq!(h.conjugate(&tau).unwrap(), expected);
        assert_eq!(h.conjugate(&Permutation::identity(3)).unwrap(), h);
        let a3 = PermGroup::alternating(3);
        for t in PermGroup::symmetric(3).elements() {
            assert_eq!(a3.conjugate(t).unwrap(), a3);
        }
        assert_eq!(a3.normalizer(), PermGroup::symmetric(3));
        assert_eq!(h.normalizer(), h);
        assert_eq!(
            PermGroup::symmetric(4).normalizer(),
            PermGroup::symmetric(4)
        );
    }

    #[test]
    fn permset_group_detection() {
        let a3 = PermGroup::alternating(3).as_set();
        assert!(a3.is_group());
        let coset = PermSet::new(3, [p(&[2, 1, 3]), p(&[1, 3, 2])]);
        assert!(!coset.is_group());
    }
}
