//! Sparse averaged perceptron shared by the tagger and the parser.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy)]
struct Slot {
    class: u16,
    weight: f64,
    total: f64,
    stamp: u64,
}

/// Training-time state. Features are strings; each carries a short list of
/// touched classes, which keeps memory proportional to actual updates.
#[derive(Debug, Default)]
pub struct Trainer {
    n_classes: usize,
    slots: HashMap<String, Vec<Slot>>,
    step: u64,
}

impl Trainer {
    pub fn new(n_classes: usize) -> Self {
        Trainer {
            n_classes,
            slots: HashMap::new(),
            step: 0,
        }
    }

    pub fn scores(&self, features: &[String], out: &mut Vec<f64>) {
        out.clear();
        out.resize(self.n_classes, 0.0);
        for f in features {
            if let Some(slots) = self.slots.get(f.as_str()) {
                for s in slots {
                    out[s.class as usize] += s.weight;
                }
            }
        }
    }

    /// Advance the clock by one example; call once per prediction.
    pub fn tick(&mut self) {
        self.step += 1;
    }

    pub fn update(&mut self, truth: usize, guess: usize, features: &[String]) {
        if truth == guess {
            return;
        }
        let step = self.step;
        for f in features {
            let slots = match self.slots.get_mut(f.as_str()) {
                Some(s) => s,
                None => self.slots.entry(f.clone()).or_default(),
            };
            for (class, delta) in [(truth, 1.0), (guess, -1.0)] {
                let slot = match slots.iter_mut().position(|s| s.class as usize == class) {
                    Some(p) => &mut slots[p],
                    None => {
                        slots.push(Slot {
                            class: class as u16,
                            weight: 0.0,
                            total: 0.0,
                            stamp: step,
                        });
                        slots.last_mut().unwrap()
                    }
                };
                slot.total += (step - slot.stamp) as f64 * slot.weight;
                slot.stamp = step;
                slot.weight += delta;
            }
        }
    }

    /// Average every weight over all steps and drop zeros.
    pub fn finish(self) -> Weights {
        let step = self.step.max(1);
        let mut table = BTreeMap::new();
        for (feat, slots) in self.slots {
            let mut row: Vec<(u16, f32)> = slots
                .iter()
                .filter_map(|s| {
                    let total = s.total + (step - s.stamp) as f64 * s.weight;
                    let avg = (total / step as f64) as f32;
                    (avg.abs() > 1e-7).then_some((s.class, avg))
                })
                .collect();
            if row.is_empty() {
                continue;
            }
            row.sort_by_key(|e| e.0);
            table.insert(feat, row);
        }
        Weights {
            n_classes: self.n_classes,
            table,
        }
    }
}

/// Frozen averaged weights: feature string to sparse (class, weight) row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub n_classes: usize,
    pub table: BTreeMap<String, Vec<(u16, f32)>>,
}

impl Weights {
    pub fn scores(&self, features: &[String], out: &mut Vec<f64>) {
        out.clear();
        out.resize(self.n_classes, 0.0);
        for f in features {
            if let Some(row) = self.table.get(f.as_str()) {
                for &(c, w) in row {
                    out[c as usize] += w as f64;
                }
            }
        }
    }

    pub fn all_finite(&self) -> bool {
        self.table.values().flatten().all(|(_, w)| w.is_finite())
    }
}

/// Highest-scoring class among `allowed`; ties go to the lowest index.
pub fn argmax(scores: &[f64], allowed: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &s) in scores.iter().enumerate() {
        if !allowed(i) {
            continue;
        }
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    best.map(|b| b.0)
}
