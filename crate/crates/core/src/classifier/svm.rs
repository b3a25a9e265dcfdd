//! RBF-kernel SVM trained with SMO (maximal-violating pair with second-order
//! working set selection).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    pub c: f64,
    /// None picks 1 / (d * mean feature variance) from the training data.
    pub gamma: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            c: 1.0,
            gamma: None,
            tol: 1e-3,
            max_iter: 10_000_000,
        }
    }
}

/// Per-feature z-scoring fit on training data; constant features get std 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Standardizer {
    pub fn fit(xs: &[Vec<f64>]) -> Standardizer {
        let d = xs.first().map_or(0, Vec::len);
        let n = xs.len().max(1) as f64;
        let mut mean = vec![0.0; d];
        for x in xs {
            for (m, v) in mean.iter_mut().zip(x) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for x in xs {
            for ((s, v), m) in var.iter_mut().zip(x).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let std = var
            .into_iter()
            .map(|s| (s / n).sqrt())
            .map(|s| if s > 1e-12 { s } else { 1.0 })
            .collect();
        Standardizer { mean, std }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.mean)
            .zip(&self.std)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportVector {
    pub x: Vec<f64>,
    pub y: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub support_vectors: Vec<SupportVector>,
    pub bias: f64,
    pub c: f64,
    pub gamma: f64,
    pub standardization: Standardizer,
    pub converged: bool,
    pub iterations: usize,
}

pub fn rbf(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

/// Default gamma for already-standardized vectors: 1 / (d * mean variance).
pub fn default_gamma(xs: &[Vec<f64>]) -> f64 {
    let d = xs.first().map_or(1, Vec::len).max(1);
    let n = xs.len().max(1) as f64;
    let mut total = 0.0;
    for j in 0..d {
        let m = xs.iter().map(|x| x[j]).sum::<f64>() / n;
        total += xs.iter().map(|x| (x[j] - m).powi(2)).sum::<f64>() / n;
    }
    let mean_var = total / d as f64;
    if mean_var > 1e-12 {
        1.0 / (d as f64 * mean_var)
    } else {
        1.0 / d as f64
    }
}

/// Raw SMO output on the given (already transformed) vectors.
#[derive(Debug, Clone)]
pub struct SmoSolution {
    pub alpha: Vec<f64>,
    pub bias: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Precomputed kernel rows below this many entries, on-the-fly rows above.
const DENSE_KERNEL_LIMIT: usize = 40_000_000;

struct Kernel<'a> {
    xs: &'a [Vec<f64>],
    gamma: f64,
    dense: Option<Vec<f64>>,
}

impl Kernel<'_> {
    fn row(&self, i: usize, buf: &mut Vec<f64>) {
        let n = self.xs.len();
        buf.clear();
        match &self.dense {
            Some(k) => buf.extend_from_slice(&k[i * n..(i + 1) * n]),
            None => buf.extend(self.xs.iter().map(|x| rbf(&self.xs[i], x, self.gamma))),
        }
    }
}

pub fn smo(
    xs: &[Vec<f64>],
    ys: &[f64],
    c: f64,
    gamma: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SmoSolution> {
    let n = xs.len();
    if n != ys.len() {
        return Err(Error::InvalidArgument(
            "vector and label counts differ".into(),
        ));
    }
    if !ys.iter().any(|&y| y > 0.0) || !ys.iter().any(|&y| y < 0.0) {
        return Err(Error::Training(
            "SVM needs at least one example of each class".into(),
        ));
    }
    if !(c > 0.0 && gamma > 0.0 && tol > 0.0) {
        return Err(Error::InvalidArgument(
            "C, gamma and tol must be positive".into(),
        ));
    }
    let dense = (n * n <= DENSE_KERNEL_LIMIT).then(|| {
        let mut k = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = rbf(&xs[i], &xs[j], gamma);
                k[i * n + j] = v;
                k[j * n + i] = v;
            }
        }
        k
    });
    let kern = Kernel { xs, gamma, dense };
    // RBF diagonal is exactly 1.
    let kdiag = 1.0;

    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let (mut ki, mut kj) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let in_up = |a: f64, y: f64| (y > 0.0 && a < c) || (y < 0.0 && a > 0.0);
    let in_low = |a: f64, y: f64| (y > 0.0 && a > 0.0) || (y < 0.0 && a < c);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        // i: maximal violator from the up set.
        let mut gmax = f64::NEG_INFINITY;
        let mut i = usize::MAX;
        for t in 0..n {
            if in_up(alpha[t], ys[t]) {
                let v = -ys[t] * grad[t];
                if v > gmax {
                    gmax = v;
                    i = t;
                }
            }
        }
        let mut gmin = f64::INFINITY;
        for t in 0..n {
            if in_low(alpha[t], ys[t]) {
                gmin = gmin.min(-ys[t] * grad[t]);
            }
        }
        if i == usize::MAX || gmax - gmin < tol {
            converged = true;
            break;
        }
        kern.row(i, &mut ki);
        // j: best second-order gain among low-set violators.
        let mut j = usize::MAX;
        let mut best = f64::INFINITY;
        for t in 0..n {
            if !in_low(alpha[t], ys[t]) {
                continue;
            }
            let b = gmax + ys[t] * grad[t];
            if b > 0.0 {
                let a = (kdiag + kdiag - 2.0 * ki[t]).max(1e-12);
                let obj = -(b * b) / a;
                if obj < best {
                    best = obj;
                    j = t;
                }
            }
        }
        if j == usize::MAX {
            converged = true;
            break;
        }
        kern.row(j, &mut kj);
        iterations += 1;

        let (yi, yj) = (ys[i], ys[j]);
        let (ai_old, aj_old) = (alpha[i], alpha[j]);
        let quad = (kdiag + kdiag - 2.0 * ki[j]).max(1e-12);
        if yi != yj {
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (dai, daj) = (alpha[i] - ai_old, alpha[j] - aj_old);
        for t in 0..n {
            grad[t] += ys[t] * (yi * ki[t] * dai + yj * kj[t] * daj);
        }
    }

    // Bias: mean over free vectors, midpoint of the feasible interval otherwise.
    let (mut sum, mut nfree) = (0.0, 0usize);
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in 0..n {
        let yg = ys[t] * grad[t];
        if alpha[t] > 0.0 && alpha[t] < c {
            sum += yg;
            nfree += 1;
        } else if (alpha[t] >= c && ys[t] < 0.0) || (alpha[t] <= 0.0 && ys[t] > 0.0) {
            ub = ub.min(yg);
        } else {
            lb = lb.max(yg);
        }
    }
    let rho = if nfree > 0 {
        sum / nfree as f64
    } else {
        (ub + lb) / 2.0
    };
    Ok(SmoSolution {
        alpha,
        bias: -rho,
        converged,
        iterations,
    })
}

pub fn train_svm_smo(xs: &[Vec<f64>], labels: &[f64], params: &SvmParams) -> Result<SvmModel> {
    let standardization = Standardizer::fit(xs);
    let zs: Vec<Vec<f64>> = xs.iter().map(|x| standardization.apply(x)).collect();
    let gamma = params.gamma.unwrap_or_else(|| default_gamma(&zs));
    let sol = smo(&zs, labels, params.c, gamma, params.tol, params.max_iter)?;
    if !sol.converged {
        tracing::warn!(
            iterations = sol.iterations,
            "SMO stopped before convergence"
        );
    }
    let support_vectors = zs
        .into_iter()
        .zip(labels)
        .zip(&sol.alpha)
        .filter(|(_, &a)| a > 0.0)
        .map(|((x, &y), &alpha)| SupportVector { x, y, alpha })
        .collect();
    Ok(SvmModel {
        support_vectors,
        bias: sol.bias,
        c: params.c,
        gamma,
        standardization,
        converged: sol.converged,
        iterations: sol.iterations,
    })
}

impl SvmModel {
    /// Decision value for a raw (unstandardized) vector.
    pub fn decision(&self, x: &[f64]) -> f64 {
        self.decision_standardized(&self.standardization.apply(x))
    }

    pub fn decision_standardized(&self, z: &[f64]) -> f64 {
        self.support_vectors
            .iter()
            .map(|sv| sv.alpha * sv.y * rbf(&sv.x, z, self.gamma))
            .sum::<f64>()
            + self.bias
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> (Vec<Vec<f64>>, Vec<f64>) {
        (
            vec![
                vec![0.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
            ],
            vec![-1.0, -1.0, 1.0, 1.0],
        )
    }

    #[test]
    fn xor_separates() {
        let (xs, ys) = xor();
        let sol = smo(&xs, &ys, 10.0, 1.0, 1e-3, 100_000).unwrap();
        assert!(sol.converged);
        let f = |x: &[f64]| {
            xs.iter()
                .zip(&ys)
                .zip(&sol.alpha)
                .map(|((xi, y), a)| a * y * rbf(xi, x, 1.0))
                .sum::<f64>()
                + sol.bias
        };
        for (x, y) in xs.iter().zip(&ys) {
            assert!(f(x) * y > 0.0);
        }
        let s: f64 = sol.alpha.iter().zip(&ys).map(|(a, y)| a * y).sum();
        assert!(s.abs() < 1e-6);
    }

    #[test]
    fn separable_pair() {
        let xs = vec![vec![0.0, 0.0], vec![1.0, 1.0]];
        let m = train_svm_smo(&xs, &[-1.0, 1.0], &SvmParams::default()).unwrap();
        assert!(m.decision(&xs[0]) < 0.0 && m.decision(&xs[1]) > 0.0);
    }

    #[test]
    fn one_class_rejected() {
        let xs = vec![vec![0.0], vec![1.0]];
        assert!(train_svm_smo(&xs, &[1.0, 1.0], &SvmParams::default()).is_err());
    }

    #[test]
    fn constant_feature_std_is_one() {
        let s = Standardizer::fit(&[vec![3.0, 1.0], vec![3.0, 2.0]]);
        assert_eq!(s.std[0], 1.0);
        assert_eq!(s.apply(&[3.0, 1.5]), vec![0.0, 0.0]);
    }
}
