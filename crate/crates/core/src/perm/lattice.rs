//! Conjugacy classes of subgroups of `S_n` by exhaustive enumeration, and
//! maximal subgroups of a given group up to conjugacy inside it.
//!
//! Everything works on element indices into the sorted element list of
//! `S_n` with a full multiplication table, so this is limited to small
//! degrees (the table for `S_6` has 518400 entries).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Largest degree for which subgroup lattices are enumerated.
pub const MAX_LATTICE_DEGREE: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    #[cfg(test)]
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// `S_n` with indexed elements and multiplication table.
struct SymmetricTable {
    n: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    cycle_type: Vec<u16>,
}

impl SymmetricTable {
    fn new(n: usize) -> Self {
        let sym = PermGroup::symmetric(n);
        let elements = sym.elements().to_vec();
        let size = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut mul = vec![0u32; size * size];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * size + j] = index[&(a * b)];
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        let mut type_ids: BTreeMap<Vec<usize>, u16> = BTreeMap::new();
        let cycle_type = elements
            .iter()
            .map(|e| {
                let next = type_ids.len() as u16;
                *type_ids.entry(e.cycle_type()).or_insert(next)
            })
            .collect();
        SymmetricTable {
            n,
            elements,
            index,
            mul,
            inv,
            cycle_type,
        }
    }

    fn size(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size() + b as usize]
    }

    #[inline]
    fn conj(&self, g: u32, tau: u32) -> u32 {
        self.mul(self.mul(tau, g), self.inv[tau as usize])
    }

    fn closure(&self, gens: &[u32]) -> (Bits, Vec<u32>) {
        let mut bits = Bits::new(self.size());
        let id = 0u32; // the identity is lexicographically least
        bits.set(id as usize);
        let mut list = vec![id];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            k += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !bits.get(y as usize) {
                    bits.set(y as usize);
                    list.push(y);
                }
            }
        }
        (bits, list)
    }

    fn group_of(&self, elements: &[u32]) -> PermGroup {
        PermGroup::from_closed_set(
            self.n,
            elements.iter().map(|&i| self.elements[i as usize].clone()),
        )
    }
}

#[derive(Clone)]
struct SubgroupRecord {
    bits: Bits,
    elements: Vec<u32>,
    gens: Vec<u32>,
    key: ClassKey,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct ClassKey {
    order: usize,
    census: Vec<(u16, u32)>,
    orbits: Vec<usize>,
}

impl SymmetricTable {
    fn record(&self, gens: Vec<u32>) -> SubgroupRecord {
        let (bits, mut elements) = self.closure(&gens);
        elements.sort_unstable();
        let key = self.key(&elements, &gens);
        SubgroupRecord {
            bits,
            elements,
            gens,
            key,
        }
    }

    fn key(&self, elements: &[u32], gens: &[u32]) -> ClassKey {
        let mut census: BTreeMap<u16, u32> = BTreeMap::new();
        for &e in elements {
            *census.entry(self.cycle_type[e as usize]).or_default() += 1;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for &g in gens {
            let p = &self.elements[g as usize];
            for i in 0..self.n {
                let (a, b) = (find(&mut parent, i), find(&mut parent, p.image(i)));
                parent[a] = b;
            }
        }
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..self.n {
            *sizes.entry(find(&mut parent, i)).or_default() += 1;
        }
        let mut orbits: Vec<usize> = sizes.into_values().collect();
        orbits.sort_unstable();
        ClassKey {
            order: elements.len(),
            census: census.into_iter().collect(),
            orbits,
        }
    }

    /// Some `τ ∈ within` with `τ A τ⁻¹ = B`.
    fn conjugator(&self, a: &SubgroupRecord, b: &SubgroupRecord, within: &[u32]) -> Option<u32> {
        if a.key != b.key {
            return None;
        }
        within.iter().copied().find(|&tau| {
            a.gens
                .iter()
                .all(|&g| b.bits.get(self.conj(g, tau) as usize))
        })
    }
}

/// Conjugacy classes of subgroups of `S_n`, one representative each,
/// sorted by order and then by a cycle-type/orbit invariant.
pub struct SubgroupClasses {
    degree: usize,
    classes: Vec<PermGroup>,
}

impl SubgroupClasses {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn classes(&self) -> &[PermGroup] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Position of the class containing `g`.
    pub fn class_of(&self, g: &PermGroup) -> Option<usize> {
        let lattice = Lattice::get(self.degree).ok()?;
        lattice.class_of(g)
    }
}

struct Lattice {
    table: SymmetricTable,
    reps: Vec<SubgroupRecord>,
}

impl Lattice {
    fn get(n: usize) -> Result<Arc<Lattice>> {
        if n == 0 || n > MAX_LATTICE_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Lattice>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(l) = cache.lock().unwrap().get(&n) {
            return Ok(l.clone());
        }
        let built = Arc::new(Lattice::build(n));
        Ok(cache.lock().unwrap().entry(n).or_insert(built).clone())
    }

    fn build(n: usize) -> Lattice {
        let table = SymmetricTable::new(n);
        let all: Vec<u32> = (0..table.size() as u32).collect();

        // One generator per cyclic subgroup.
        let mut cyclic_seen: HashSet<Bits> = HashSet::new();
        let mut cyclic_gens = Vec::new();
        for g in 1..table.size() as u32 {
            let (bits, _) = table.closure(&[g]);
            if cyclic_seen.insert(bits) {
                cyclic_gens.push(g);
            }
        }

        let mut reps: Vec<SubgroupRecord> = vec![table.record(vec![])];
        let mut by_key: HashMap<ClassKey, Vec<usize>> = HashMap::new();
        by_key.entry(reps[0].key.clone()).or_default().push(0);
        let mut k = 0;
        while k < reps.len() {
            let base = reps[k].clone();
            k += 1;
            let mut joined: HashSet<Bits> = HashSet::new();
            for &g in &cyclic_gens {
                if base.bits.get(g as usize) {
                    continue;
                }
                let mut gens = base.gens.clone();
                gens.push(g);
                let (bits, _) = table.closure(&gens);
                if !joined.insert(bits) {
                    continue;
                }
                let cand = table.record(gens);
                let known = by_key
                    .get(&cand.key)
                    .map(|ids| {
                        ids.iter()
                            .any(|&i| table.conjugator(&cand, &reps[i], &all).is_some())
                    })
                    .unwrap_or(false);
                if !known {
                    by_key.entry(cand.key.clone()).or_default().push(reps.len());
                    reps.push(cand);
                }
            }
        }
        reps.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.elements.cmp(&b.elements)));
        for r in &mut reps {
            r.gens = minimal_gens(&table, &r.elements);
        }
        Lattice { table, reps }
    }

    fn record_of(&self, g: &PermGroup) -> SubgroupRecord {
        let gens = g.generators().iter().map(|p| self.table.index[p]).collect();
        self.table.record(gens)
    }

    fn class_of(&self, g: &PermGroup) -> Option<usize> {
        let rec = self.record_of(g);
        let all: Vec<u32> = (0..self.table.size() as u32).collect();
        self.reps
            .iter()
            .position(|r| self.table.conjugator(&rec, r, &all).is_some())
    }
}

fn minimal_gens(table: &SymmetricTable, elements: &[u32]) -> Vec<u32> {
    let group = table.group_of(elements);
    group.generators().iter().map(|p| table.index[p]).collect()
}

/// Subgroup classes of `S_n` for `n ≤ 6` (cached per degree).
pub fn subgroup_classes(n: usize) -> Result<SubgroupClasses> {
    let lattice = Lattice::get(n)?;
    Ok(SubgroupClasses {
        degree: n,
        classes: lattice
            .reps
            .iter()
            .map(|r| lattice.table.group_of(&r.elements))
            .collect(),
    })
}

/// Whether `a` and `b` are conjugate by an element of `within`.
pub fn conjugate_in(
    a: &PermGroup,
    b: &PermGroup,
    within: &PermGroup,
) -> Result<Option<Permutation>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.degree() > MAX_LATTICE_DEGREE {
        return Ok(within
            .elements()
            .iter()
            .find(|t| {
                a.generators()
                    .iter()
                    .all(|g| b.contains(&g.conjugate_by(t)))
            })
            .cloned());
    }
    let lattice = Lattice::get(a.degree())?;
    let ra = lattice.record_of(a);
    let rb = lattice.record_of(b);
    let idx: Vec<u32> = within
        .elements()
        .iter()
        .map(|p| lattice.table.index[p])
        .collect();
    Ok(lattice
        .table
        .conjugator(&ra, &rb, &idx)
        .map(|t| lattice.table.elements[t as usize].clone()))
}

/// All subgroups of `l` (not up to conjugacy), as sorted element lists.
fn all_subgroups_of(lattice: &Lattice, l: &PermGroup) -> Vec<Vec<u32>> {
    let table = &lattice.table;
    let l_rec = lattice.record_of(l);
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut out = Vec::new();
    for rep in &lattice.reps {
        if !l_rec.elements.len().is_multiple_of(rep.elements.len()) {
            continue;
        }
        for tau in 0..table.size() as u32 {
            if !rep
                .gens
                .iter()
                .all(|&g| l_rec.bits.get(table.conj(g, tau) as usize))
            {
                continue;
            }
            let mut bits = Bits::new(table.size());
            let mut elems: Vec<u32> = rep.elements.iter().map(|&e| table.conj(e, tau)).collect();
            for &e in &elems {
                bits.set(e as usize);
            }
            if seen.insert(bits) {
                elems.sort_unstable();
                out.push(elems);
            }
        }
    }
    out
}

/// Maximal subgroups of `l` up to conjugacy in `l`.
///
/// Returned in ascending order of group order; ties broken by the sorted
/// element list of the representative, which is the lexicographically least
/// member of its `l`-conjugacy class.
pub fn maximal_subgroups(l: &PermGroup) -> Result<Vec<PermGroup>> {
    let lattice = Lattice::get(l.degree())?;
    let table = &lattice.table;
    let subs = all_subgroups_of(&lattice, l);
    let size = table.size();
    let l_order = l.order();
    let as_bits = |elems: &[u32]| {
        let mut b = Bits::new(size);
        for &e in elems {
            b.set(e as usize);
        }
        b
    };
    let proper: Vec<(Vec<u32>, Bits)> = subs
        .into_iter()
        .filter(|e| e.len() < l_order)
        .map(|e| {
            let b = as_bits(&e);
            (e, b)
        })
        .collect();
    let mut maximal: Vec<&(Vec<u32>, Bits)> = proper
        .iter()
        .filter(|(e, b)| {
            !proper
                .iter()
                .any(|(e2, b2)| e2.len() > e.len() && e2.len() % e.len() == 0 && b.is_subset_of(b2))
        })
        .collect();
    maximal.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));

    let l_idx: Vec<u32> = l.elements().iter().map(|p| table.index[p]).collect();
    let mut covered: HashSet<Bits> = HashSet::new();
    let mut out = Vec::new();
    for (elems, bits) in maximal {
        if covered.contains(bits) {
            continue;
        }
        for &tau in &l_idx {
            let mut cb = Bits::new(size);
            for &e in elems {
                cb.set(table.conj(e, tau) as usize);
            }
            covered.insert(cb);
        }
        out.push(table.group_of(elems));
    }
    Ok(out)
}

/// All subgroups of `l` containing `g`, used by identification helpers.
pub fn subgroups_between(g: &PermGroup, l: &PermGroup) -> Result<Vec<PermGroup>> {
    let lattice = Lattice::get(l.degree())?;
    let table = &lattice.table;
    let g_idx: Vec<u32> = g.elements().iter().map(|p| table.index[p]).collect();
    Ok(all_subgroups_of(&lattice, l)
        .into_iter()
        .filter(|elems| g_idx.iter().all(|e| elems.binary_search(e).is_ok()))
        .map(|elems| table.group_of(&elems))
        .collect())
}

/// Iterate over the element bit positions; used in tests.
#[cfg(test)]
fn popcount(b: &Bits) -> usize {
    b.ones().count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_lattices() {
        // Known counts of conjugacy classes of subgroups of S_n.
        for (n, count) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 19)] {
            assert_eq!(subgroup_classes(n).unwrap().len(), count, "S_{n}");
        }
    }

    #[test]
    fn maximal_subgroups_of_s4() {
        let max = maximal_subgroups(&PermGroup::symmetric(4)).unwrap();
        let orders: Vec<usize> = max.iter().map(PermGroup::order).collect();
        assert_eq!(orders, vec![6, 8, 12]);
    }

    #[test]
    fn maximal_subgroups_of_s5() {
        let max = maximal_subgroups(&PermGroup::symmetric(5)).unwrap();
        let orders: Vec<usize> = max.iter().map(PermGroup::order).collect();
        assert_eq!(orders, vec![12, 20, 24, 60]);
    }

    #[test]
    fn maximal_subgroups_of_d4_are_three_normal_fours() {
        let d4 = PermGroup::dihedral(4);
        let max = maximal_subgroups(&d4).unwrap();
        assert_eq!(max.len(), 3);
        assert!(max.iter().all(|m| m.order() == 4));
    }

    #[test]
    fn bits_roundtrip() {
        let mut b = Bits::new(130);
        b.set(0);
        b.set(129);
        assert_eq!(popcount(&b), 2);
        assert!(b.get(129) && !b.get(128));
    }

    #[test]
    #[ignore = "slow in debug builds"]
    fn s6_has_56_classes() {
        assert_eq!(subgroup_classes(6).unwrap().len(), 56);
        let max = maximal_subgroups(&PermGroup::symmetric(6)).unwrap();
        let orders: Vec<usize> = max.iter().map(PermGroup::order).collect();
        assert_eq!(orders, vec![48, 48, 72, 120, 120, 360]);
    }

    #[test]
    fn conjugacy_detection() {
        let s4 = PermGroup::symmetric(4);
        let a = PermGroup::from_generators(&[Permutation::parse(4, "(1 2)").unwrap()]).unwrap();
        let b = PermGroup::from_generators(&[Permutation::parse(4, "(3 4)").unwrap()]).unwrap();
        let c =
            PermGroup::from_generators(&[Permutation::parse(4, "(1 2)(3 4)").unwrap()]).unwrap();
        assert!(conjugate_in(&a, &b, &s4).unwrap().is_some());
        assert!(conjugate_in(&a, &c, &s4).unwrap().is_none());
    }
}
