//! Dormand–Prince 5(4) tableau.

#[cfg(test)]
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

pub(super) const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];

/// Fifth-order weights, equal to the last row of `A`; the final stage is the
/// derivative at the new point.
#[cfg(test)]
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// Difference between the fifth- and fourth-order weights.
pub(super) const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One trial step from `x` with derivative `k1 = f(x)`. Returns the new
/// state, the derivative there and the embedded error vector, or `None` if
/// a stage produced a non-finite value.
pub(super) fn step<F>(f: &F, x: &[f64], k1: &[f64], h: f64) -> Option<(Vec<f64>, Vec<f64>, Vec<f64>)>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = x.len();
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
    k.push(k1.to_vec());
    let mut stage = vec![0.0; n];
    for s in 1..7 {
        for i in 0..n {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate() {
                acc += A[s][j] * kj[i];
            }
            stage[i] = x[i] + h * acc;
        }
        let ks = f(&stage);
        if ks.iter().any(|v| !v.is_finite()) {
            return None;
        }
        k.push(ks);
    }
    // row 6 of A is B, so `stage` already holds the fifth-order solution
    let x_new = stage;
    let mut err = vec![0.0; n];
    for (i, e) in err.iter_mut().enumerate() {
        *e = h * k.iter().zip(E.iter()).map(|(kj, ej)| ej * kj[i]).sum::<f64>();
    }
    let k_new = k.pop().unwrap_or_default();
    Some((x_new, k_new, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tableau_consistency() {
        for s in 0..7 {
            let row: f64 = A[s].iter().sum();
            assert!((row - C[s]).abs() < 1e-15, "row {s}");
        }
        assert!((B.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(E.iter().sum::<f64>().abs() < 1e-15);
    }

    #[test]
    fn fifth_order_on_exponential() {
        let f = |x: &[f64]| vec![-x[0]];
        let mut errs = Vec::new();
        for h in [0.2, 0.1] {
            let (x, _, _) = step(&f, &[1.0], &[-1.0], h).unwrap();
            errs.push((x[0] - (-h).exp()).abs());
        }
        // local error O(h^6)
        let ratio = errs[0] / errs[1];
        assert!(ratio > 40.0 && ratio < 90.0, "{ratio}");
    }
}
