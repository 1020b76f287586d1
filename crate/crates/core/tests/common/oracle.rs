//! Naive DEIM written from the textbook description: Gaussian elimination
//! with partial pivoting on the interpolation block, strict `>` argmax.

use tricur::DenseMatrix;

#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).fold(c, |best, r| {
            if a[r][c].abs() > a[best][c].abs() {
                r
            } else {
                best
            }
        });
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for j in c..n {
                a[r][j] -= f * a[c][j];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|j| a[c][j] * x[j]).sum();
        x[c] = (b[c] - s) / a[c][c];
    }
    x
}

/// Index of the largest magnitude and its relative lead over the runner-up.
fn argmax_abs(v: &[f64]) -> (usize, f64) {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    let top = v[best].abs();
    let second = v
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != best)
        .map(|(_, x)| x.abs())
        .fold(0.0, f64::max);
    (best, if top > 0.0 { (top - second) / top } else { 0.0 })
}

pub fn naive_deim(u: &DenseMatrix) -> Vec<usize> {
    naive_deim_with_margin(u).0
}

/// Also returns the smallest relative argmax lead over all steps.
pub fn naive_deim_with_margin(u: &DenseMatrix) -> (Vec<usize>, f64) {
    let (m, k) = u.shape();
    let (first, mut margin) = argmax_abs(&u.column(0));
    let mut s = vec![first];
    for j in 1..k {
        let block: Vec<Vec<f64>> = s
            .iter()
            .map(|&i| (0..j).map(|c| u[(i, c)]).collect())
            .collect();
        let rhs: Vec<f64> = s.iter().map(|&i| u[(i, j)]).collect();
        let c = solve(block, rhs);
        let r: Vec<f64> = (0..m)
            .map(|i| u[(i, j)] - (0..j).map(|t| u[(i, t)] * c[t]).sum::<f64>())
            .collect();
        let (i, lead) = argmax_abs(&r);
        s.push(i);
        margin = margin.min(lead);
    }
    (s, margin)
}
