//! Curvature of left-invariant metrics, computed exactly from structure
//! constants. The given basis is taken to be orthonormal.

use serde::Serialize;

use crate::exact::{Mat, Poly, Rat};
use crate::liealg::LieAlgebra;

/// Christoffel symbols `gamma[i][j][k] = <nabla_{e_i} e_j, e_k>`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Connection {
    pub dim: usize,
    pub gamma: Vec<Vec<Vec<Rat>>>,
}

impl Connection {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.gamma[i][j][k]
    }

    /// `nabla_{e_i}` as a matrix whose column `j` is `nabla_{e_i} e_j`.
    pub fn operator(&self, i: usize) -> Mat {
        let n = self.dim;
        Mat::from_rows((0..n).map(|k| (0..n).map(|j| self.gamma[i][j][k].clone()).collect()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checks {
    pub metric_compatible: bool,
    pub torsion_free: bool,
    pub bianchi: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.metric_compatible && self.torsion_free && self.bianchi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub connection: Connection,
    /// `sectional[i][j] = K(e_i, e_j)`, zero on the diagonal.
    pub sectional: Vec<Vec<Rat>>,
    pub ricci: Mat,
    pub ricci_charpoly: Poly,
    /// Descending.
    pub ricci_eigenvalues: Vec<f64>,
    pub scalar: Rat,
    pub checks: Checks,
}

impl CurvatureReport {
    pub fn is_flat(&self) -> bool {
        self.sectional.iter().flatten().all(Rat::is_zero) && self.ricci.is_zero()
    }
}

/// Koszul formula in an orthonormal frame:
/// `2 <nabla_i e_j, e_k> = c_ij^k - c_jk^i + c_ki^j`.
pub fn levi_civita(l: &LieAlgebra) -> Connection {
    let n = l.dim();
    let half = Rat::new(1, 2);
    let gamma = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| &(&(l.constant(i, j, k) - l.constant(j, k, i)) + l.constant(k, i, j)) * &half)
                        .collect()
                })
                .collect()
        })
        .collect();
    Connection { dim: n, gamma }
}

/// `R(e_i, e_j)` as a matrix: `N_i N_j - N_j N_i - sum_m c_ij^m N_m`.
fn curvature_operators(l: &LieAlgebra, nabla: &[Mat]) -> Vec<Vec<Mat>> {
    let n = l.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut r = &(&nabla[i] * &nabla[j]) - &(&nabla[j] * &nabla[i]);
                    for (m, nm) in nabla.iter().enumerate() {
                        let c = l.constant(i, j, m);
                        if !c.is_zero() {
                            r = &r - &nm.scale(c);
                        }
                    }
                    r
                })
                .collect()
        })
        .collect()
}

fn check(l: &LieAlgebra, conn: &Connection, nabla: &[Mat], r: &[Vec<Mat>]) -> Checks {
    let n = l.dim();
    let triples = || (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
    let metric_compatible = triples().all(|(i, j, k)| (conn.get(i, j, k) + conn.get(i, k, j)).is_zero());
    let torsion_free = (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs: Vec<Rat> = nabla[i].col(j).iter().zip(nabla[j].col(i)).map(|(a, b)| a - b).collect();
            lhs == l.basis_bracket(i, j)
        })
    });
    let bianchi = triples().all(|(i, j, k)| {
        let (a, b, c) = (r[i][j].col(k), r[j][k].col(i), r[k][i].col(j));
        (0..n).all(|m| (&(&a[m] + &b[m]) + &c[m]).is_zero())
    });
    Checks { metric_compatible, torsion_free, bianchi }
}

pub fn curvature_report(l: &LieAlgebra) -> CurvatureReport {
    let n = l.dim();
    let connection = levi_civita(l);
    let nabla: Vec<Mat> = (0..n).map(|i| connection.operator(i)).collect();
    let r = curvature_operators(l, &nabla);
    let checks = check(l, &connection, &nabla, &r);

    // K(e_i, e_j) = <R(e_i, e_j) e_j, e_i>
    let sectional = (0..n).map(|i| (0..n).map(|j| r[i][j].get(i, j).clone()).collect()).collect();
    // Ric(e_a, e_b) = sum_i <R(e_i, e_a) e_b, e_i>
    let ricci = Mat::from_rows(
        (0..n).map(|a| (0..n).map(|b| (0..n).map(|i| r[i][a].get(i, b).clone()).sum()).collect()).collect(),
    );
    let scalar = ricci.trace();
    let ricci_charpoly = ricci.charpoly().expect("square");
    let mut ricci_eigenvalues: Vec<f64> =
        if n == 0 { Vec::new() } else { ricci.to_f64().symmetric_eigen().eigenvalues.iter().copied().collect() };
    ricci_eigenvalues.sort_by(|a, b| b.total_cmp(a));

    CurvatureReport { connection, sectional, ricci, ricci_charpoly, ricci_eigenvalues, scalar, checks }
}
