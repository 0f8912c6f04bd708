use std::fmt;
use std::ops::{Add, Mul, Sub};

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Poly, PolyError};
use super::rat::Rat;
use super::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Dense exact matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Build from a ragged-free slice of integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rat::int(x)).collect())
                .collect(),
        )
    }

    pub fn diag(entries: &[Rat]) -> Mat {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Mat::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    /// Single Jordan block `J_size(eigenvalue)`.
    pub fn jordan_block(eigenvalue: &Rat, size: usize) -> Mat {
        let mut m = Mat::diag(&vec![eigenvalue.clone(); size]);
        for i in 0..size.saturating_sub(1) {
            m.set(i, i + 1, Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn checked_mul(&self, rhs: &Mat) -> Result<Mat, MatError> {
        if self.cols != rhs.rows {
            return Err(MatError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Mat {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Mat::identity(n).scale(c);
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(self.cols, &vecs)
    }

    pub fn determinant(&self) -> Result<Rat, MatError> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatError::Singular);
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    fn require_square(&self) -> Result<(), MatError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatError::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)))
        }
    }

    /// Monic `det(xI - M)` by the Faddeev-LeVerrier trace recursion.
    pub fn charpoly(&self) -> Result<Poly, MatError> {
        self.require_square()?;
        let n = self.rows;
        let mut c = vec![Rat::zero(); n + 1];
        c[n] = Rat::one();
        let mut mk = Mat::zeros(n, n);
        for k in 1..=n {
            mk = &(self * &mk) + &Mat::identity(n).scale(&c[n - k + 1]);
            let am = self * &mk;
            c[n - k] = -(am.trace() / Rat::int(k as i64));
        }
        Ok(Poly::new(c))
    }

    /// Number of Jordan blocks over the complex numbers: `dim ker s(M)` with
    /// `s` the squarefree part of the characteristic polynomial.
    pub fn jordan_block_count(&self) -> Result<usize, MatError> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(0);
        }
        let s = self.charpoly()?.squarefree_part()?;
        Ok(self.eval_poly(&s).kernel().dim())
    }

    /// `(positive, negative, zero)` counts of a symmetric matrix's inertia.
    pub fn inertia(&self) -> Result<(usize, usize, usize), MatError> {
        self.require_square()?;
        if *self != self.transpose() {
            return Err(MatError::ShapeMismatch("inertia needs a symmetric matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if m.get(k, k).is_zero() {
                if let Some(p) = (k + 1..n).find(|&i| !m.get(i, i).is_zero()) {
                    m.congruence_swap(k, p);
                } else if let Some(j) = (k + 1..n).find(|&j| !m.get(k, j).is_zero()) {
                    // row/col k += row/col j makes the pivot 2 m[k][j]
                    m.congruence_add(k, j);
                } else {
                    continue;
                }
            }
            let piv = m.get(k, k).clone();
            if piv.signum() > 0 {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k) / &piv;
                for j in 0..n {
                    let v = m.get(i, j) - &(&f * m.get(k, j));
                    m.set(i, j, v);
                }
                for j in 0..n {
                    let v = m.get(j, i) - &(&f * m.get(j, k));
                    m.set(j, i, v);
                }
            }
        }
        Ok((pos, neg, n - pos - neg))
    }

    fn congruence_swap(&mut self, a: usize, b: usize) {
        self.swap_rows(a, b);
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn congruence_add(&mut self, k: usize, j: usize) {
        for c in 0..self.cols {
            let v = self.get(k, c) + self.get(j, c);
            self.set(k, c, v);
        }
        for r in 0..self.rows {
            let v = self.get(r, k) + self.get(r, j);
            self.set(r, k, v);
        }
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_f64())
    }

    /// Random invertible integer matrix with entries in `[-bound, bound]`.
    pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Mat {
        loop {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random_range(-bound..=bound)).collect())
                .collect();
            let m = Mat::from_ints(&rows);
            if !m.determinant().expect("square").is_zero() {
                return m;
            }
        }
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Rat::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Mat, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Mat::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_examples() {
        let x_minus_1 = Poly::from_ints(&[-1, 1]);
        let cube = &(&x_minus_1 * &x_minus_1) * &x_minus_1;
        assert_eq!(Mat::identity(3).charpoly().unwrap(), cube);

        let p = Poly::from_ints(&[-1, -2, 1, 1]);
        assert_eq!(p.companion().charpoly().unwrap(), p);

        let d = Mat::diag(&[Rat::int(1), Rat::int(2), Rat::int(3), Rat::int(-6)]);
        let expect = Poly::from_roots(&[Rat::int(1), Rat::int(2), Rat::int(3), Rat::int(-6)]);
        assert_eq!(d.charpoly().unwrap(), expect);

        assert!(matches!(Mat::zeros(2, 3).charpoly(), Err(MatError::ShapeMismatch(_))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::zeros(2, 2).kernel().dim(), 2);
        assert_eq!(Mat::identity(3).kernel().dim(), 0);
        let k = Mat::from_ints(&[[1, 2], [2, 4]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k, Subspace::span(2, &[vec![Rat::int(-2), Rat::int(1)]]));
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(Mat::identity(4).jordan_block_count().unwrap(), 4);
        let nil = Poly::from_ints(&[0, 0, 0, 0, 1]).companion();
        assert_eq!(nil.jordan_block_count().unwrap(), 1);
        let j = Mat::block_diag(&[
            Mat::jordan_block(&Rat::int(1), 2),
            Mat::jordan_block(&Rat::int(-1), 2),
        ]);
        assert_eq!(j.jordan_block_count().unwrap(), 2);
        // hand check: (M^2 - I) has rank 2
        assert_eq!((&j.pow(2) - &Mat::identity(4)).rank(), 2);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Mat::from_ints(&[[2, 1], [7, 4]]);
        assert_eq!(m.determinant().unwrap(), Rat::int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert_eq!(Mat::from_ints(&[[1, 2], [2, 4]]).inverse(), Err(MatError::Singular));
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let m = Mat::from_ints(&[[0, 1, 0], [1, 0, 0], [0, 0, 0]]);
        assert_eq!(m.inertia().unwrap(), (1, 1, 1));
        let m = Mat::from_ints(&[[2, 0], [0, 3]]);
        assert_eq!(m.inertia().unwrap(), (2, 0, 0));
    }

    #[test]
    fn json_rows_of_strings() {
        let m = Mat::from_rows(vec![vec![Rat::new(1, 2), Rat::int(0)], vec![Rat::int(-3), Rat::one()]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","0"],["-3","1"]]"#);
        assert_eq!(serde_json::from_str::<Mat>(&s).unwrap(), m);
    }
}
