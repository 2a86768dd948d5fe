//! Elementary symmetric polynomials and the real roots of characteristic polynomials.

/// `e_0 .. e_n` of the given values (`e_0 = 1`).
pub fn elementary_symmetric(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (count, &x) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    e
}

/// Coefficients (ascending powers) of `prod (x - mu_i)` given `e_0 .. e_n`:
/// `x^n - e_1 x^{n-1} + e_2 x^{n-2} - ...`.
pub fn monic_from_elementary(e: &[f64]) -> Vec<f64> {
    let n = e.len() - 1;
    let mut coeffs = vec![0.0; n + 1];
    for (k, &ek) in e.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[n - k] = sign * ek;
    }
    coeffs
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Rounding-error scale of a Horner evaluation at `x`.
fn eval_scale(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// All roots of a real polynomial (ascending coefficients, nonzero leading
/// term) when every root is real, sorted ascending and repeated by
/// multiplicity; `None` when some root is not real.
///
/// The critical points (roots of the derivative, found recursively) split the
/// line into intervals each holding exactly one root of a real-rooted
/// polynomial. A critical point where the polynomial vanishes to rounding
/// accuracy is a multiple root; otherwise a sign change is bisected.
pub fn real_roots(coeffs: &[f64]) -> Option<Vec<f64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
        coeffs.pop();
    }
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[degree];
    for c in coeffs.iter_mut() {
        *c /= lead;
    }
    if degree == 1 {
        return Some(vec![-coeffs[0]]);
    }

    let critical = real_roots(&derivative(&coeffs))?;
    let bound = 1.0 + coeffs[..degree].iter().fold(0.0_f64, |m, c| m.max(c.abs()));

    // Relative rounding of the evaluation plus a floor for critical points
    // that sit a few ulps away from an exact multiple root.
    let floor = 1e-14 * coeffs.iter().fold(1.0_f64, |m, c| m.max(c.abs()));
    let is_zero = |x: f64| eval(&coeffs, x).abs() <= 64.0 * f64::EPSILON * eval_scale(&coeffs, x) + floor;

    let mut endpoints = Vec::with_capacity(degree + 1);
    endpoints.push(-bound);
    endpoints.extend(critical.iter().copied());
    endpoints.push(bound);

    let mut roots = Vec::with_capacity(degree);
    for w in endpoints.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if is_zero(hi) {
            roots.push(hi);
        } else if is_zero(lo) {
            roots.push(lo);
        } else {
            let (flo, fhi) = (eval(&coeffs, lo), eval(&coeffs, hi));
            if flo.signum() == fhi.signum() {
                return None;
            }
            roots.push(bisect(&coeffs, lo, hi, flo));
        }
    }
    roots.sort_by(f64::total_cmp);
    Some(roots)
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let lo_sign = flo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
