//! Concept graph: nodes with lemma sets and hypernym edges.
//!
//! File format: a `conceptgraph v1` header, then `N <id> <lemma>[,lemma...]`
//! node lines and `H <child> <parent>` edge lines. `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use crate::error::{Error, Result};

pub const TOY_GRAPH: &str = include_str!("../../data/concept_graph/toy.txt");
pub const WORDNET_MINI: &str = include_str!("../../data/concept_graph/wordnet_mini.txt");

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConceptGraph {
    pub nodes: BTreeMap<u64, Vec<String>>,
    /// child -> parents
    pub hypernyms: BTreeMap<u64, Vec<u64>>,
    pub lemma_index: HashMap<String, Vec<u64>>,
}

impl ConceptGraph {
    pub fn parse(text: &str) -> Result<ConceptGraph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("conceptgraph v1") {
            return Err(Error::Data(
                "concept graph must start with `conceptgraph v1`".into(),
            ));
        }
        let mut g = ConceptGraph::default();
        let mut edges = Vec::new();
        for (n, line) in lines.enumerate() {
            let bad = || Error::Data(format!("concept graph line {}: {line:?}", n + 2));
            let (kind, rest) = line.split_once(' ').ok_or_else(bad)?;
            match kind {
                "N" => {
                    let (id, lemmas) = rest.trim().split_once(' ').ok_or_else(bad)?;
                    let id: u64 = id.parse().map_err(|_| bad())?;
                    let lemmas: Vec<String> = lemmas
                        .split(',')
                        .map(|l| l.trim().to_lowercase())
                        .filter(|l| !l.is_empty())
                        .collect();
                    if lemmas.is_empty() || g.nodes.insert(id, lemmas).is_some() {
                        return Err(bad());
                    }
                }
                "H" => {
                    let mut it = rest.split_whitespace();
                    let c: u64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                    let p: u64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                    edges.push((c, p));
                }
                _ => return Err(bad()),
            }
        }
        for (c, p) in edges {
            if !g.nodes.contains_key(&c) || !g.nodes.contains_key(&p) {
                return Err(Error::Data(format!(
                    "edge {c} -> {p} references a missing node"
                )));
            }
            let ps = g.hypernyms.entry(c).or_default();
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
        for (&id, lemmas) in &g.nodes {
            for l in lemmas {
                g.lemma_index.entry(l.clone()).or_default().push(id);
            }
        }
        g.check_acyclic()?;
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<ConceptGraph> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ConceptGraph::parse(&text)
    }

    pub fn toy() -> ConceptGraph {
        ConceptGraph::parse(TOY_GRAPH).expect("bundled toy graph is valid")
    }

    pub fn bundled() -> ConceptGraph {
        ConceptGraph::parse(WORDNET_MINI).expect("bundled graph is valid")
    }

    fn check_acyclic(&self) -> Result<()> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: HashMap<u64, u8> = HashMap::new();
        for &start in self.nodes.keys() {
            if state.contains_key(&start) {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state.insert(start, 1);
            while let Some((node, k)) = stack.pop() {
                let parents = self.hypernyms.get(&node).map(Vec::as_slice).unwrap_or(&[]);
                if k < parents.len() {
                    stack.push((node, k + 1));
                    let p = parents[k];
                    match state.get(&p) {
                        Some(1) => {
                            return Err(Error::Data(format!("hypernym cycle through node {p}")))
                        }
                        Some(_) => {}
                        None => {
                            state.insert(p, 1);
                            stack.push((p, 0));
                        }
                    }
                } else {
                    state.insert(node, 2);
                }
            }
        }
        Ok(())
    }

    /// Nodes carrying `tag` as a lemma; falls back to crude singular forms.
    pub fn lookup(&self, tag: &str) -> Vec<u64> {
        let t = tag.trim().to_lowercase();
        if let Some(ids) = self.lemma_index.get(&t) {
            return ids.clone();
        }
        for cand in singulars(&t) {
            if let Some(ids) = self.lemma_index.get(&cand) {
                return ids.clone();
            }
        }
        Vec::new()
    }

    /// Ancestors reachable by 1..=radius hypernym edges.
    pub fn ancestors(&self, node: u64, radius: usize) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        let mut frontier = vec![node];
        for _ in 0..radius {
            let mut next = Vec::new();
            for n in frontier {
                for &p in self.hypernyms.get(&n).map(Vec::as_slice).unwrap_or(&[]) {
                    if out.insert(p) {
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

fn singulars(w: &str) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(s) = w.strip_suffix("ies") {
        out.push(format!("{s}y"));
    }
    if let Some(s) = w.strip_suffix("es") {
        out.push(s.to_string());
    }
    if let Some(s) = w.strip_suffix('s') {
        if !s.ends_with('s') {
            out.push(s.to_string());
        }
    }
    out
}
