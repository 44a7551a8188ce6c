#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use seabed_core::substitution::{substitute_n, SubstitutionRule, DEFAULT_BUDGET};
use seabed_core::tiles::edge_key;
use seabed_core::{builtin, Patch, ProtoId};

pub fn rule() -> &'static SubstitutionRule {
    static RULE: OnceLock<SubstitutionRule> = OnceLock::new();
    RULE.get_or_init(|| builtin::rule().expect("shipped rule"))
}

pub fn level(r: &SubstitutionRule, id: ProtoId, n: u32) -> Patch {
    substitute_n(r, id, n, DEFAULT_BUDGET).expect("within budget")
}

/// `level(rule(), id, 2)`, computed once per prototile.
pub fn level2(id: ProtoId) -> &'static Patch {
    static LEVELS: OnceLock<Vec<Patch>> = OnceLock::new();
    &LEVELS.get_or_init(|| ProtoId::ALL.iter().map(|p| level(rule(), *p, 2)).collect())[id.index()]
}

/// Up to `size` tiles of `base`, grown breadth-first across shared edges
/// from tile `start`.
pub fn piece(base: &Patch, start: usize, size: usize) -> Patch {
    let ix = base.index();
    let start = start % base.len();
    let mut taken = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        let t = base.tiles[k];
        for i in 0..4u8 {
            let (a, b) = t.edge(i);
            for &(j, _) in &ix.edges[&edge_key(a, b)] {
                if taken.len() < size && taken.insert(j) {
                    queue.push_back(j);
                }
            }
        }
    }
    Patch::new(taken.into_iter().map(|k| base.tiles[k]).collect())
}
