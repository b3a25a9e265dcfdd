//! CART decision trees (Gini impurity) and bagged random forests.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
    /// Features tried per split; None tries all of them.
    pub max_features: Option<usize>,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_depth: None,
            min_leaf: 2,
            max_features: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub bootstrap: bool,
    pub tree: TreeParams,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 100,
            bootstrap: true,
            tree: TreeParams {
                max_depth: None,
                min_leaf: 2,
                max_features: Some(4),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    /// Class probabilities indexed like `Label::index` (clickbait first).
    Leaf { probs: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeModel {
    pub nodes: Vec<Node>,
}

impl TreeModel {
    /// Probability of class 0 (clickbait) at the leaf `x` falls into.
    pub fn decision(&self, x: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { probs } => return probs[0],
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn go(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + go(nodes, *left).max(go(nodes, *right)),
            }
        }
        go(&self.nodes, 0)
    }
}

fn gini(c: [usize; 2]) -> f64 {
    let n = (c[0] + c[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let p = c[0] as f64 / n;
    2.0 * p * (1.0 - p)
}

struct Builder<'a> {
    xs: &'a [Vec<f64>],
    ys: &'a [usize],
    params: TreeParams,
    rng: ChaCha8Rng,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn build(&mut self, idx: &mut [usize], depth: usize) -> usize {
        let mut counts = [0usize; 2];
        for &i in idx.iter() {
            counts[self.ys[i]] += 1;
        }
        let n = idx.len();
        let me = self.nodes.len();
        let leaf = Node::Leaf {
            probs: [counts[0] as f64 / n as f64, counts[1] as f64 / n as f64],
        };
        self.nodes.push(leaf);
        let depth_ok = self.params.max_depth.is_none_or(|d| depth < d);
        if counts[0] == 0 || counts[1] == 0 || !depth_ok || n < 2 * self.params.min_leaf.max(1) {
            return me;
        }
        let Some((feature, threshold)) = self.best_split(idx, counts) else {
            return me;
        };
        let mid = partition(idx, |&i| self.xs[i][feature] <= threshold);
        let (l, r) = idx.split_at_mut(mid);
        let left = self.build(l, depth + 1);
        let right = self.build(r, depth + 1);
        self.nodes[me] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        me
    }

    fn best_split(&mut self, idx: &[usize], counts: [usize; 2]) -> Option<(usize, f64)> {
        let d = self.xs[0].len();
        let features: Vec<usize> = match self.params.max_features {
            Some(m) if m < d => {
                let mut f = sample(&mut self.rng, d, m).into_vec();
                f.sort_unstable();
                f
            }
            _ => (0..d).collect(),
        };
        let n = idx.len();
        let parent = gini(counts);
        let min_leaf = self.params.min_leaf.max(1);
        let mut best: Option<(f64, usize, f64)> = None;
        let mut order: Vec<usize> = idx.to_vec();
        for f in features {
            order.sort_by(|&a, &b| self.xs[a][f].total_cmp(&self.xs[b][f]));
            let mut left = [0usize; 2];
            for k in 0..n - 1 {
                left[self.ys[order[k]]] += 1;
                let (v, w) = (self.xs[order[k]][f], self.xs[order[k + 1]][f]);
                if v == w || k + 1 < min_leaf || n - k - 1 < min_leaf {
                    continue;
                }
                let right = [counts[0] - left[0], counts[1] - left[1]];
                let nl = (k + 1) as f64;
                let imp = (nl * gini(left) + (n as f64 - nl) * gini(right)) / n as f64;
                if parent - imp > 1e-12 && best.is_none_or(|(b, _, _)| imp < b) {
                    let mut t = v + (w - v) / 2.0;
                    if t >= w {
                        t = v;
                    }
                    best = Some((imp, f, t));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }
}

fn partition(idx: &mut [usize], pred: impl Fn(&usize) -> bool) -> usize {
    let mut k = 0;
    for j in 0..idx.len() {
        if pred(&idx[j]) {
            idx.swap(j, k);
            k += 1;
        }
    }
    k
}

/// `ys` holds class indices (0 = clickbait).
pub fn train_tree(
    xs: &[Vec<f64>],
    ys: &[usize],
    params: &TreeParams,
    seed: u64,
) -> Result<TreeModel> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(Error::Training(
            "tree needs a non-empty training set".into(),
        ));
    }
    let mut b = Builder {
        xs,
        ys,
        params: *params,
        rng: ChaCha8Rng::seed_from_u64(seed),
        nodes: Vec::new(),
    };
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    b.build(&mut idx, 0);
    Ok(TreeModel { nodes: b.nodes })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    pub trees: Vec<TreeModel>,
    pub seeds: Vec<u64>,
}

impl ForestModel {
    /// Mean clickbait probability over trees, in [0, 1].
    pub fn decision(&self, x: &[f64]) -> f64 {
        self.trees.iter().map(|t| t.decision(x)).sum::<f64>() / self.trees.len().max(1) as f64
    }
}

pub fn train_forest(
    xs: &[Vec<f64>],
    ys: &[usize],
    params: &ForestParams,
    seed: u64,
) -> Result<ForestModel> {
    if xs.is_empty() || xs.len() != ys.len() || params.n_trees == 0 {
        return Err(Error::Training(
            "forest needs a non-empty training set and at least one tree".into(),
        ));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..params.n_trees).map(|_| master.gen()).collect();
    let trees = seeds
        .par_iter()
        .map(|&s| {
            if !params.bootstrap {
                return train_tree(xs, ys, &params.tree, s);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x9e37_79b9_7f4a_7c15);
            let n = xs.len();
            let pick: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let bx: Vec<Vec<f64>> = pick.iter().map(|&i| xs[i].clone()).collect();
            let by: Vec<usize> = pick.iter().map(|&i| ys[i]).collect();
            train_tree(&bx, &by, &params.tree, s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ForestModel { trees, seeds })
}
