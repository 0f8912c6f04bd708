//! Floating-point root finding, used only where roots are irrational.

use nalgebra::{Complex, DMatrix};

use crate::exact::Poly;

/// Complex roots of `p` with multiplicity. The polynomial is first split
/// exactly into squarefree factors, whose companion matrices have simple
/// eigenvalues; each eigenvalue is then polished by Newton steps on its
/// factor. Real roots (imaginary part below `1e-9` after polishing) are
/// returned with zero imaginary part.
pub fn poly_roots(p: &Poly) -> Vec<Complex<f64>> {
    let mut roots = Vec::new();
    for (mult, f) in squarefree_factors(p) {
        for z in simple_roots(&f) {
            roots.extend(std::iter::repeat_n(z, mult));
        }
    }
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Yun's algorithm: `p = c * prod f_i^i` with each `f_i` squarefree.
fn squarefree_factors(p: &Poly) -> Vec<(usize, Poly)> {
    if p.degree() == 0 {
        return vec![];
    }
    let d = p.derivative();
    let a = p.gcd(&d);
    let mut b = p.div_rem(&a).0;
    let mut c = d.div_rem(&a).0;
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let e = &c - &b.derivative();
        if e.is_zero() {
            if b.degree() > 0 {
                out.push((i, b.monic()));
            }
            break;
        }
        let f = b.gcd(&e);
        if f.degree() > 0 {
            out.push((i, f.monic()));
        }
        b = b.div_rem(&f).0;
        c = e.div_rem(&f).0;
        i += 1;
        if b.degree() == 0 {
            break;
        }
    }
    out
}

fn simple_roots(p: &Poly) -> Vec<Complex<f64>> {
    let n = p.degree();
    if n == 0 {
        return vec![];
    }
    let m = p.monic();
    let coeffs: Vec<f64> = m.coeffs().iter().map(|c| c.to_f64()).collect();
    if n == 1 {
        return vec![Complex::new(-coeffs[0], 0.0)];
    }
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -coeffs[i];
    }
    let deriv: Vec<f64> = m.derivative().coeffs().iter().map(|c| c.to_f64()).collect();
    let mut roots = eigenvalues(&c);
    for z in roots.iter_mut() {
        for _ in 0..8 {
            let f = horner(&coeffs, *z);
            let d = horner(&deriv, *z);
            if d.norm() == 0.0 {
                break;
            }
            let step = f / d;
            *z -= step;
            if step.norm() <= 1e-16 * z.norm().max(1.0) {
                break;
            }
        }
        if z.im.abs() < 1e-9 {
            z.im = 0.0;
        }
    }
    roots
}

/// Eigenvalues of a general real matrix.
///
/// The unguarded Francis iteration can cycle forever on matrices whose
/// eigenvalues share a modulus (the companion of `x^4 - x^2 + 9`). Each
/// attempt is capped, and failures are retried on `m + s I`, whose spectrum
/// is shifted by `s` and no longer symmetric.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex<f64>> {
    let n = m.nrows();
    let scale = (m.norm() / n.max(1) as f64).max(1.0);
    for s in [0.0, 0.5, -0.7, 1.3, -2.1, 3.7] {
        let shifted = m + DMatrix::identity(n, n) * (s * scale);
        if let Some(schur) = shifted.try_schur(f64::EPSILON, 10_000) {
            return schur.complex_eigenvalues().iter().map(|z| z - s * scale).collect();
        }
    }
    panic!("Schur iteration failed for every shift")
}

/// Real roots of `p` in descending order.
pub fn real_roots(p: &Poly) -> Vec<f64> {
    poly_roots(p).into_iter().filter(|z| z.im == 0.0).map(|z| z.re).collect()
}

fn horner(coeffs: &[f64], z: Complex<f64>) -> Complex<f64> {
    coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
}
