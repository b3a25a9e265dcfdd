//! Greedy arc-standard transition parser with labeled arcs.
//!
//! Trained with a static oracle and an averaged perceptron. Only legal
//! transitions are ever taken, so the output is always a projective,
//! single-rooted tree; the last item left on the stack becomes the root.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::conllu::write_conllu;
use super::perceptron::{argmax, Trainer, Weights};
use super::{AnnotatedHeadline, TaggedToken};
use crate::error::{Error, Result};
use crate::util::sha256_hex;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParserParams {
    pub epochs: usize,
    pub seed: u64,
}

impl Default for ParserParams {
    fn default() -> Self {
        ParserParams {
            epochs: 8,
            seed: 11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParserModel {
    pub version: u32,
    pub corpus_hash: String,
    pub epochs: usize,
    pub seed: u64,
    /// Relation labels; transition classes are Shift, Left(l), Right(l).
    pub labels: Vec<String>,
    pub weights: Weights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Shift,
    Left(usize),
    Right(usize),
}

impl Move {
    fn class(self, n_labels: usize) -> usize {
        match self {
            Move::Shift => 0,
            Move::Left(l) => 1 + l,
            Move::Right(l) => 1 + n_labels + l,
        }
    }

    fn from_class(c: usize, n_labels: usize) -> Move {
        if c == 0 {
            Move::Shift
        } else if c <= n_labels {
            Move::Left(c - 1)
        } else {
            Move::Right(c - 1 - n_labels)
        }
    }
}

struct State {
    stack: Vec<usize>,
    next: usize,
    heads: Vec<Option<usize>>,
    labels: Vec<Option<usize>>,
    lefts: Vec<Vec<usize>>,
    rights: Vec<Vec<usize>>,
}

impl State {
    fn new(n: usize) -> Self {
        State {
            stack: Vec::new(),
            next: 0,
            heads: vec![None; n],
            labels: vec![None; n],
            lefts: vec![Vec::new(); n],
            rights: vec![Vec::new(); n],
        }
    }

    fn n(&self) -> usize {
        self.heads.len()
    }

    fn terminal(&self) -> bool {
        self.next == self.n() && self.stack.len() <= 1
    }

    fn legal(&self, m: Move) -> bool {
        match m {
            Move::Shift => self.next < self.n(),
            Move::Left(_) | Move::Right(_) => self.stack.len() >= 2,
        }
    }

    fn apply(&mut self, m: Move) {
        match m {
            Move::Shift => {
                self.stack.push(self.next);
                self.next += 1;
            }
            Move::Left(l) => {
                let s0 = self.stack.pop().unwrap();
                let s1 = self.stack.pop().unwrap();
                self.heads[s1] = Some(s0);
                self.labels[s1] = Some(l);
                self.lefts[s0].insert(0, s1);
                self.stack.push(s0);
            }
            Move::Right(l) => {
                let s0 = self.stack.pop().unwrap();
                let s1 = *self.stack.last().unwrap();
                self.heads[s0] = Some(s1);
                self.labels[s0] = Some(l);
                self.rights[s1].push(s0);
            }
        }
    }
}

struct Sentence<'a> {
    words: Vec<String>,
    tags: Vec<&'a str>,
}

impl<'a> Sentence<'a> {
    fn from_tokens(tokens: &'a [TaggedToken]) -> Self {
        Sentence {
            words: tokens
                .iter()
                .map(|t| t.token.normalized.to_lowercase())
                .collect(),
            tags: tokens.iter().map(|t| t.tag.as_str()).collect(),
        }
    }
}

fn features(s: &Sentence, st: &State, labels: &[String], out: &mut Vec<String>) {
    out.clear();
    let stack =
        |k: usize| -> Option<usize> { st.stack.len().checked_sub(k + 1).map(|p| st.stack[p]) };
    let buf = |k: usize| -> Option<usize> { (st.next + k < st.n()).then_some(st.next + k) };
    let w = |i: Option<usize>| i.map(|i| s.words[i].as_str()).unwrap_or("<none>");
    let t = |i: Option<usize>| i.map(|i| s.tags[i]).unwrap_or("<none>");
    let lab = |i: Option<usize>| {
        i.and_then(|i| st.labels[i])
            .map(|l| labels[l].as_str())
            .unwrap_or("<none>")
    };
    let lc = |i: Option<usize>| i.and_then(|i| st.lefts[i].first().copied());
    let rc = |i: Option<usize>| i.and_then(|i| st.rights[i].last().copied());

    let (s0, s1, s2) = (stack(0), stack(1), stack(2));
    let (b0, b1, b2) = (buf(0), buf(1), buf(2));
    let dist = match (s0, s1) {
        (Some(a), Some(b)) => (a - b).min(5).to_string(),
        _ => "-".into(),
    };
    let (s0l, s0r, s1l, s1r) = (lc(s0), rc(s0), lc(s1), rc(s1));

    out.push("bias".into());
    out.push(format!("s0w={}", w(s0)));
    out.push(format!("s0t={}", t(s0)));
    out.push(format!("s0wt={}/{}", w(s0), t(s0)));
    out.push(format!("s1w={}", w(s1)));
    out.push(format!("s1t={}", t(s1)));
    out.push(format!("s1wt={}/{}", w(s1), t(s1)));
    out.push(format!("s2t={}", t(s2)));
    out.push(format!("b0w={}", w(b0)));
    out.push(format!("b0t={}", t(b0)));
    out.push(format!("b0wt={}/{}", w(b0), t(b0)));
    out.push(format!("b1w={}", w(b1)));
    out.push(format!("b1t={}", t(b1)));
    out.push(format!("b2t={}", t(b2)));
    out.push(format!("s0t_s1t={}/{}", t(s0), t(s1)));
    out.push(format!("s0w_s1w={}/{}", w(s0), w(s1)));
    out.push(format!("s0w_s1t={}/{}", w(s0), t(s1)));
    out.push(format!("s0t_s1w={}/{}", t(s0), w(s1)));
    out.push(format!("s0t_b0t={}/{}", t(s0), t(b0)));
    out.push(format!("s1t_s0t_b0t={}/{}/{}", t(s1), t(s0), t(b0)));
    out.push(format!("s2t_s1t_s0t={}/{}/{}", t(s2), t(s1), t(s0)));
    out.push(format!("s0t_b0t_b1t={}/{}/{}", t(s0), t(b0), t(b1)));
    out.push(format!("s0t_s1t_d={}/{}/{}", t(s0), t(s1), dist));
    out.push(format!("s0lt={}/{}", t(s0l), lab(s0l)));
    out.push(format!("s0rt={}/{}", t(s0r), lab(s0r)));
    out.push(format!("s1lt={}/{}", t(s1l), lab(s1l)));
    out.push(format!("s1rt={}/{}", t(s1r), lab(s1r)));
    out.push(format!("s0t_s0l_s0r={}/{}/{}", t(s0), lab(s0l), lab(s0r)));
    out.push(format!("s1t_s1l_s1r={}/{}/{}", t(s1), lab(s1l), lab(s1r)));
    out.push(format!("s0t_s1t_s1rl={}/{}/{}", t(s0), t(s1), lab(s1r)));
    let val = |i: Option<usize>| {
        i.map(|i| (st.lefts[i].len().min(3), st.rights[i].len().min(3)))
            .unwrap_or((9, 9))
    };
    out.push(format!("s0val={}/{:?}", t(s0), val(s0)));
    out.push(format!("s1val={}/{:?}", t(s1), val(s1)));
    out.push(format!("empty={}", b0.is_none()));
}

/// Static arc-standard oracle. `None` means the gold tree is non-projective here.
fn oracle(
    st: &State,
    gold_heads: &[Option<usize>],
    gold_labels: &[usize],
    gold_kids: &[usize],
) -> Option<Move> {
    if st.stack.len() >= 2 {
        let s0 = st.stack[st.stack.len() - 1];
        let s1 = st.stack[st.stack.len() - 2];
        if gold_heads[s1] == Some(s0) {
            return Some(Move::Left(gold_labels[s1]));
        }
        let attached = st.lefts[s0].len() + st.rights[s0].len();
        if gold_heads[s0] == Some(s1) && attached == gold_kids[s0] {
            return Some(Move::Right(gold_labels[s0]));
        }
    }
    if st.next < st.n() {
        Some(Move::Shift)
    } else {
        None
    }
}

impl ParserModel {
    pub fn train(treebank: &[AnnotatedHeadline], params: &ParserParams) -> Result<Self> {
        if treebank.is_empty() {
            return Err(Error::Training("empty parser training corpus".into()));
        }
        let corpus_hash = sha256_hex(write_conllu(treebank).as_bytes());
        let mut labels: Vec<String> = treebank
            .iter()
            .flat_map(|h| {
                h.arcs
                    .iter()
                    .filter(|a| a.head.is_some())
                    .map(|a| a.relation.clone())
            })
            .collect();
        labels.sort();
        labels.dedup();
        let nl = labels.len();
        let n_classes = 1 + 2 * nl;

        struct Gold {
            heads: Vec<Option<usize>>,
            labels: Vec<usize>,
            kids: Vec<usize>,
        }
        let golds: Vec<Gold> = treebank
            .iter()
            .map(|h| {
                let heads: Vec<Option<usize>> = h.arcs.iter().map(|a| a.head).collect();
                let labs = h
                    .arcs
                    .iter()
                    .map(|a| {
                        if a.head.is_none() {
                            0
                        } else {
                            labels.binary_search(&a.relation).unwrap_or(0)
                        }
                    })
                    .collect();
                let mut kids = vec![0; heads.len()];
                for hd in heads.iter().flatten() {
                    kids[*hd] += 1;
                }
                Gold {
                    heads,
                    labels: labs,
                    kids,
                }
            })
            .collect();

        let mut trainer = Trainer::new(n_classes);
        let mut order: Vec<usize> = (0..treebank.len()).collect();
        let mut feats = Vec::new();
        let mut scores = Vec::new();
        for epoch in 0..params.epochs {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(epoch as u64));
            order.shuffle(&mut rng);
            for &si in &order {
                let h = &treebank[si];
                let g = &golds[si];
                let sent = Sentence::from_tokens(&h.tokens);
                let mut st = State::new(h.len());
                while !st.terminal() {
                    let Some(gold_move) = oracle(&st, &g.heads, &g.labels, &g.kids) else {
                        break;
                    };
                    features(&sent, &st, &labels, &mut feats);
                    trainer.scores(&feats, &mut scores);
                    let guess = argmax(&scores, |c| st.legal(Move::from_class(c, nl))).unwrap_or(0);
                    trainer.update(gold_move.class(nl), guess, &feats);
                    trainer.tick();
                    st.apply(gold_move);
                }
            }
        }
        Ok(ParserModel {
            version: 1,
            corpus_hash,
            epochs: params.epochs,
            seed: params.seed,
            labels,
            weights: trainer.finish(),
        })
    }

    /// Heads (`None` = root) and relation labels, one per token.
    pub fn parse(&self, tokens: &[TaggedToken]) -> (Vec<Option<usize>>, Vec<String>) {
        let n = tokens.len();
        if n == 0 {
            return (Vec::new(), Vec::new());
        }
        let nl = self.labels.len();
        let sent = Sentence::from_tokens(tokens);
        let mut st = State::new(n);
        let mut feats = Vec::new();
        let mut scores = Vec::new();
        while !st.terminal() {
            let m = if nl == 0 {
                if st.legal(Move::Shift) {
                    Move::Shift
                } else {
                    Move::Right(0)
                }
            } else {
                features(&sent, &st, &self.labels, &mut feats);
                self.weights.scores(&feats, &mut scores);
                let c = argmax(&scores, |c| st.legal(Move::from_class(c, nl))).unwrap_or(0);
                Move::from_class(c, nl)
            };
            st.apply(m);
        }
        let root = st.stack[0];
        let mut rels: Vec<String> = st
            .labels
            .iter()
            .map(|l| {
                l.and_then(|l| self.labels.get(l).cloned())
                    .unwrap_or_else(|| "dep".to_string())
            })
            .collect();
        rels[root] = "root".to_string();
        (st.heads, rels)
    }

    /// Unlabeled and labeled attachment scores given gold tags.
    pub fn attachment_scores(&self, gold: &[AnnotatedHeadline]) -> (f64, f64) {
        let (mut uas, mut las, mut total) = (0usize, 0usize, 0usize);
        for h in gold {
            let (heads, rels) = self.parse(&h.tokens);
            for (i, arc) in h.arcs.iter().enumerate() {
                total += 1;
                if heads[i] == arc.head {
                    uas += 1;
                    if rels[i] == arc.relation {
                        las += 1;
                    }
                }
            }
        }
        let d = total.max(1) as f64;
        (uas as f64 / d, las as f64 / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotation::conllu::parse_conllu;

    const TOY: &str = "1\tbirds\t_\tNOUN\tNNS\t_\t2\tnsubj\t_\t_\n2\tfly\t_\tVERB\tVBP\t_\t0\troot\t_\t_\n\n\
                       1\tthe\t_\tDET\tDT\t_\t2\tdet\t_\t_\n2\tdog\t_\tNOUN\tNN\t_\t3\tnsubj\t_\t_\n3\tbarks\t_\tVERB\tVBZ\t_\t0\troot\t_\t_\n";

    #[test]
    fn learns_toy_trees_and_always_emits_a_tree() {
        let tb = parse_conllu(TOY).headlines;
        let m = ParserModel::train(&tb, &ParserParams { epochs: 5, seed: 1 }).unwrap();
        let (uas, las) = m.attachment_scores(&tb);
        assert_eq!((uas, las), (1.0, 1.0));
        let (heads, rels) = m.parse(&tb[0].tokens[..1]);
        assert_eq!(heads, vec![None]);
        assert_eq!(rels, vec!["root".to_string()]);
    }
}
