use serde::Serialize;

use super::mat::Mat;
use super::rat::Rat;

/// Linear subspace of `Q^n`, stored as the RREF of a spanning set.
///
/// The RREF basis is canonical, so derived equality is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (r, pivots) = Mat::from_rows(vectors.to_vec()).rref();
        assert_eq!(r.cols(), ambient, "vector length does not match ambient dimension");
        let rows = r.row_vecs().into_iter().take(pivots.len()).collect::<Vec<_>>();
        Subspace { ambient, basis: Self::rows_to_mat(ambient, rows), pivots }
    }

    fn rows_to_mat(ambient: usize, rows: Vec<Vec<Rat>>) -> Mat {
        if rows.is_empty() {
            Mat::zeros(0, ambient)
        } else {
            Mat::from_rows(rows)
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zeros(0, ambient), pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Standard basis indices completing the basis to the ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Rat::zero(); self.ambient];
        for (c, row) in coords.iter().zip(self.basis_vectors()) {
            for (r, x) in recon.iter_mut().zip(&row) {
                *r += &(c * x);
            }
        }
        (recon.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis_vectors();
        v.extend(other.basis_vectors());
        Subspace::span(self.ambient, &v)
    }

    /// Orthogonal complement for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &Mat) -> Subspace {
        let v: Vec<Vec<Rat>> = self.basis_vectors().iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.rows(), &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::int(x)).collect()
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
        assert!(a.contains(&v(&[3, -2, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn coordinates_in_rref_basis() {
        let a = Subspace::span(3, &[v(&[1, 0, 2]), v(&[0, 1, 3])]);
        assert_eq!(a.coordinates(&v(&[2, -1, 1])), Some(v(&[2, -1])));
        assert_eq!(a.coordinates(&v(&[2, -1, 0])), None);
    }
}
