//! Group and partition matrices: how a candidate group acts on the cosets
//! of a fixed subgroup.

use serde::Serialize;

use super::lattice::conjugate_in;
use super::{CosetSide, PermGroup, Permutation};
use crate::error::{Error, Result};

/// `Gr_L(G, H)`: the orbits of `G` acting by left multiplication on the left
/// cosets `L/H`, each with the group induced on it.
///
/// Points inside an orbit are numbered by the canonical transversal order.
#[derive(Clone, Debug)]
pub struct GroupMatrixEntry {
    pub orbit_groups: Vec<(usize, PermGroup)>,
    /// Orbit sizes, sorted ascending.
    pub partition: Vec<usize>,
}

pub fn group_matrix_entry(l: &PermGroup, g: &PermGroup, h: &PermGroup) -> Result<GroupMatrixEntry> {
    if !g.is_subgroup_of(l) {
        return Err(Error::NotSubgroup(format!("G = {g:?} is not in L")));
    }
    let cosets = l.transversal(h, CosetSide::Left)?;
    let s = cosets.len();
    let actions: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|x| {
            cosets
                .transversal()
                .iter()
                .map(|t| cosets.coset_of(&(x * t)).expect("g lies in L"))
                .collect()
        })
        .collect();

    let mut orbit_of = vec![usize::MAX; s];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..s {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let c = orbit[k];
            k += 1;
            for act in &actions {
                let d = act[c];
                if orbit_of[d] == usize::MAX {
                    orbit_of[d] = id;
                    orbit.push(d);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }

    let mut orbit_groups = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let local = |c: usize| orbit.binary_search(&c).expect("closed orbit");
        let gens: Vec<Permutation> = actions
            .iter()
            .map(|act| Permutation::from_images(orbit.iter().map(|&c| local(act[c])).collect()))
            .collect::<Result<_>>()?;
        orbit_groups.push((orbit.len(), PermGroup::generate(orbit.len(), &gens)?));
    }
    let mut partition: Vec<usize> = orbits.iter().map(Vec::len).collect();
    partition.sort_unstable();
    Ok(GroupMatrixEntry {
        orbit_groups,
        partition,
    })
}

/// `𝒫(L)` restricted to the given subgroup classes: rows are indexed by the
/// coset subgroup `H`, columns by the acting group `G`.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionMatrix {
    pub orders: Vec<usize>,
    pub rows: Vec<Vec<Vec<usize>>>,
}

impl PartitionMatrix {
    pub fn entry(&self, h: usize, g: usize) -> &[usize] {
        &self.rows[h][g]
    }

    pub fn rows_distinct(&self) -> bool {
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if self.rows[i] == self.rows[j] {
                    return false;
                }
            }
        }
        true
    }
}

pub fn partition_matrix(l: &PermGroup, subgroups: &[PermGroup]) -> Result<PartitionMatrix> {
    for (i, s) in subgroups.iter().enumerate() {
        if !s.is_subgroup_of(l) {
            return Err(Error::NotSubgroup(format!("entry {i} is not in L")));
        }
        for (j, t) in subgroups.iter().enumerate().take(i) {
            if conjugate_in(s, t, l)?.is_some() {
                return Err(Error::DuplicateClass(j, i));
            }
        }
    }
    let rows = subgroups
        .iter()
        .map(|h| {
            subgroups
                .iter()
                .map(|g| group_matrix_entry(l, g, h).map(|e| e.partition))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartitionMatrix {
        orders: subgroups.iter().map(PermGroup::order).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::subgroup_classes;

    fn transposition12(n: usize) -> PermGroup {
        PermGroup::from_generators(&[Permutation::parse(n, "(1 2)").unwrap()]).unwrap()
    }

    /// Orbit sizes of `G` on `L/H` by direct enumeration of coset sets.
    fn brute_partition(l: &PermGroup, g: &PermGroup, h: &PermGroup) -> Vec<usize> {
        use std::collections::BTreeSet;
        let cosets: BTreeSet<BTreeSet<Permutation>> = l
            .elements()
            .iter()
            .map(|t| h.elements().iter().map(|x| t * x).collect())
            .collect();
        let mut remaining: Vec<BTreeSet<Permutation>> = cosets.into_iter().collect();
        let mut sizes = Vec::new();
        while let Some(c) = remaining.pop() {
            let orbit: BTreeSet<BTreeSet<Permutation>> = g
                .elements()
                .iter()
                .map(|x| c.iter().map(|y| x * y).collect())
                .collect();
            remaining.retain(|r| !orbit.contains(r));
            sizes.push(orbit.len());
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn entries_for_s3() {
        let s3 = PermGroup::symmetric(3);
        let e = group_matrix_entry(&s3, &PermGroup::alternating(3), &transposition12(3)).unwrap();
        assert_eq!(e.partition, vec![3]);
        assert_eq!(e.orbit_groups[0].1.order(), 3);
        let e = group_matrix_entry(&s3, &transposition12(3), &transposition12(3)).unwrap();
        assert_eq!(e.partition, vec![1, 2]);
        let e = group_matrix_entry(&s3, &PermGroup::trivial(3), &transposition12(3)).unwrap();
        assert_eq!(e.partition, vec![1, 1, 1]);
        let e = group_matrix_entry(&s3, &s3, &s3).unwrap();
        assert_eq!(e.partition, vec![1]);
    }

    #[test]
    fn entries_agree_with_brute_force_on_s4() {
        let s4 = PermGroup::symmetric(4);
        let classes = subgroup_classes(4).unwrap();
        for h in classes.classes() {
            for g in classes.classes() {
                let e = group_matrix_entry(&s4, g, h).unwrap();
                assert_eq!(e.partition, brute_partition(&s4, g, h));
                for (size, grp) in &e.orbit_groups {
                    assert!(grp.is_transitive());
                    assert_eq!(grp.degree(), *size);
                }
            }
        }
    }

    #[test]
    fn entry_is_conjugation_invariant() {
        let s4 = PermGroup::symmetric(4);
        let classes = subgroup_classes(4).unwrap();
        for h in classes.classes() {
            for g in classes.classes() {
                let base = group_matrix_entry(&s4, g, h).unwrap().partition;
                for tau in s4.elements().iter().step_by(5) {
                    let g2 = g.conjugate(tau).unwrap();
                    let h2 = h.conjugate(&tau.inverse()).unwrap();
                    assert_eq!(group_matrix_entry(&s4, &g2, &h2).unwrap().partition, base);
                }
            }
        }
    }

    #[test]
    fn partition_matrix_rows_distinct() {
        for n in 3..=5 {
            let l = PermGroup::symmetric(n);
            let classes = subgroup_classes(n).unwrap();
            let m = partition_matrix(&l, classes.classes()).unwrap();
            assert_eq!(m.rows.len(), classes.len());
            assert!(m.rows_distinct(), "S_{n}");
        }
    }

    #[test]
    fn duplicate_classes_rejected() {
        let s3 = PermGroup::symmetric(3);
        let a = transposition12(3);
        let b = PermGroup::from_generators(&[Permutation::parse(3, "(2 3)").unwrap()]).unwrap();
        assert!(matches!(
            partition_matrix(&s3, &[a, b]),
            Err(Error::DuplicateClass(0, 1))
        ));
    }
}
