use super::SpecFunError;

/// Jacobi polynomial P_n^(α,β)(x) by the standard three-term recurrence.
pub fn jacobi_p(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64, SpecFunError> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(SpecFunError::Domain(format!(
            "Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(SpecFunError::Domain(format!("x = {x} outside [-1, 1]")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = (alpha + 1.0) + 0.5 * (ab + 2.0) * (x - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (s - 2.0);
        let a2 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let next = (a2 * p - a3 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        for &(a, b, x) in &[(0.3, 1.7, 0.2), (5.0, 0.0, -0.9), (-0.5, -0.5, 0.77)] {
            assert_eq!(jacobi_p(0, a, b, x).unwrap(), 1.0);
            let want = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
            assert!((jacobi_p(1, a, b, x).unwrap() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn legendre_special_case() {
        // P_3(x) = (5x³ − 3x)/2
        for &x in &[-0.7, 0.1, 0.9] {
            let want = 0.5 * (5.0 * x * x * x - 3.0 * x);
            assert!((jacobi_p(3, 0.0, 0.0, x).unwrap() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn endpoint_value_is_binomial() {
        // P_n^(α,β)(1) = C(n+α, n)
        let (n, a) = (6usize, 2.5f64);
        let mut want = 1.0;
        for j in 0..n {
            want *= (a + n as f64 - j as f64) / (j as f64 + 1.0);
        }
        let got = jacobi_p(n, a, 11.0, 1.0).unwrap();
        assert!(((got - want) / want).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(jacobi_p(2, -1.0, 0.0, 0.0).is_err());
        assert!(jacobi_p(2, 0.0, -1.5, 0.0).is_err());
        assert!(jacobi_p(2, 0.0, 0.0, 1.5).is_err());
    }
}
