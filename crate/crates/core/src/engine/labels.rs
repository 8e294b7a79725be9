//! Standard names of the transitive groups of degree at most 5.

use crate::perm::{PermGroup, Permutation};

/// `(label, name, order, has a 4-cycle)`. Order alone separates the classes
/// except for the two groups of order 4 in degree 4.
const TABLE: &[(usize, &str, &str, usize, Option<bool>)] = &[
    (2, "2T1", "S2", 2, None),
    (3, "3T1", "A3", 3, None),
    (3, "3T2", "S3", 6, None),
    (4, "4T1", "C4", 4, Some(true)),
    (4, "4T2", "V4", 4, Some(false)),
    (4, "4T3", "D4", 8, None),
    (4, "4T4", "A4", 12, None),
    (4, "4T5", "S4", 24, None),
    (5, "5T1", "C5", 5, None),
    (5, "5T2", "D5", 10, None),
    (5, "5T3", "F20", 20, None),
    (5, "5T4", "A5", 60, None),
    (5, "5T5", "S5", 120, None),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupLabel {
    pub label: &'static str,
    pub name: &'static str,
}

impl std::fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.label, self.name)
    }
}

/// Label of a transitive group of degree 2..5; `None` otherwise.
pub fn transitive_label(g: &PermGroup) -> Option<GroupLabel> {
    if !g.is_transitive() {
        return None;
    }
    let n = g.degree();
    let four_cycle = g.has_cycle_type(&[4]);
    TABLE
        .iter()
        .find(|(d, _, _, order, fc)| {
            *d == n && *order == g.order() && fc.is_none_or(|x| x == four_cycle)
        })
        .map(|&(_, label, name, _, _)| GroupLabel { label, name })
}

fn cycles(n: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
        .expect("valid cycles")
}

/// A representative for a label (`"4T3"`) or name (`"D4"`).
pub fn group_from_label(text: &str) -> Option<PermGroup> {
    let &(n, label, _, _, _) = TABLE.iter().find(|(_, l, name, _, _)| {
        l.eq_ignore_ascii_case(text) || name.eq_ignore_ascii_case(text)
    })?;
    let g = match label {
        "2T1" => PermGroup::symmetric(2),
        "3T1" => PermGroup::alternating(3),
        "3T2" => PermGroup::symmetric(3),
        "4T1" => PermGroup::cyclic(4),
        "4T2" => PermGroup::generate(
            4,
            &[
                cycles(4, &[&[1, 2], &[3, 4]]),
                cycles(4, &[&[1, 3], &[2, 4]]),
            ],
        )
        .ok()?,
        "4T3" => PermGroup::dihedral(4),
        "4T4" => PermGroup::alternating(4),
        "4T5" => PermGroup::symmetric(4),
        "5T1" => PermGroup::cyclic(5),
        "5T2" => PermGroup::dihedral(5),
        "5T3" => PermGroup::generate(
            5,
            &[cycles(5, &[&[1, 2, 3, 4, 5]]), cycles(5, &[&[2, 3, 5, 4]])],
        )
        .ok()?,
        "5T4" => PermGroup::alternating(5),
        "5T5" => PermGroup::symmetric(5),
        _ => return None,
    };
    debug_assert_eq!(g.degree(), n);
    Some(g)
}

pub fn labels() -> impl Iterator<Item = GroupLabel> {
    TABLE
        .iter()
        .map(|&(_, label, name, _, _)| GroupLabel { label, name })
}
