use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::graph::ConceptGraph;

/// Hypernyms within this many edges are expansion candidates.
pub const EXPANSION_RADIUS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Nugget {
    pub members: BTreeSet<u64>,
    pub seeds: BTreeSet<String>,
}

impl Nugget {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Seed nodes from the tags, then repeatedly add every hypernym (within the
/// radius) that at least two members share, until nothing changes.
pub fn build_nugget<S: AsRef<str>>(tags: &[S], graph: &ConceptGraph) -> Nugget {
    let seeds: BTreeSet<String> = tags
        .iter()
        .map(|t| t.as_ref().trim().to_lowercase())
        .filter(|t| !t.is_empty())
        .collect();
    let mut members: BTreeSet<u64> = seeds.iter().flat_map(|t| graph.lookup(t)).collect();
    loop {
        let mut shared: BTreeMap<u64, usize> = BTreeMap::new();
        for &m in &members {
            for a in graph.ancestors(m, EXPANSION_RADIUS) {
                *shared.entry(a).or_insert(0) += 1;
            }
        }
        let new: Vec<u64> = shared
            .into_iter()
            .filter(|&(a, c)| c >= 2 && !members.contains(&a))
            .map(|(a, _)| a)
            .collect();
        if new.is_empty() {
            break;
        }
        members.extend(new);
    }
    Nugget { members, seeds }
}

/// Union nuggets that share a node, repeated until no two share one.
/// Nuggets without nodes are dropped: they can never match anything.
pub fn merge_nuggets(nuggets: &[Nugget]) -> Vec<Nugget> {
    let mut out: Vec<Nugget> = Vec::new();
    for n in nuggets.iter().filter(|n| !n.is_empty()) {
        let mut cur = n.clone();
        loop {
            let hit = out
                .iter()
                .position(|o| !o.members.is_disjoint(&cur.members));
            match hit {
                Some(i) => {
                    let o = out.swap_remove(i);
                    cur.members.extend(o.members);
                    cur.seeds.extend(o.seeds);
                }
                None => break,
            }
        }
        out.push(cur);
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

pub fn nugget_similarity(a: &Nugget, b: &Nugget) -> usize {
    a.members.intersection(&b.members).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_expansion_and_merge() {
        let g = ConceptGraph::toy();
        let pets = build_nugget(&["dog", "cat"], &g);
        assert_eq!(pets.members, BTreeSet::from([1, 2, 3]));
        let dog = build_nugget(&["dog"], &g);
        assert_eq!(dog.members, BTreeSet::from([1]));
        let animal = build_nugget(&["animal"], &g);
        assert_eq!(nugget_similarity(&pets, &animal), 1);
        assert_eq!(nugget_similarity(&pets, &pets), 3);
        let car = build_nugget(&["car"], &g);
        assert_eq!(nugget_similarity(&pets, &car), 0);
        let merged = merge_nuggets(&[animal, car.clone(), pets]);
        assert_eq!(merged.len(), 2);
        let unknown = build_nugget(&["zzz"], &g);
        assert!(unknown.is_empty() && unknown.seeds.contains("zzz"));
    }
}
