//! Real Lie algebras given by rational structure constants, and the
//! structural invariants used by the identification key.

mod json;
mod nilradical;

use std::fmt;

use serde::Serialize;

use crate::exact::{Mat, MatError, PolyError, Rat, Subspace};

pub use json::{BracketJson, LieAlgebraJson, TermJson};
pub use nilradical::{Nilradical, NilradicalMethod};

/// Iterated series stop after this many steps even without stabilizing.
const SERIES_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("vector of length {got} given for a {dim}-dimensional algebra")]
    LengthMismatch { dim: usize, got: usize },
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("wrong branch: {0}")]
    WrongBranch(String),
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("basis-change matrix is singular or has the wrong size")]
    SingularChange,
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("invalid structure constants: {0}")]
    Invalid(Violation),
    #[error("malformed Lie algebra JSON: {0}")]
    Schema(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// First failure found by [`LieAlgebra::validate`]; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Antisymmetry { i: usize, j: usize, k: usize },
    Jacobi { i: usize, j: usize, k: usize, component: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry fails: c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")
            }
            Violation::Jacobi { i, j, k, component } => {
                write!(f, "Jacobi identity fails on (e{i}, e{j}, e{k}) in component e{component}")
            }
        }
    }
}

/// Lie algebra with bracket `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    c: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub lcs_dims: Vec<usize>,
    pub ds_dims: Vec<usize>,
    pub center_dim: usize,
    pub nilpotent: bool,
    pub solvable: bool,
    pub unimodular: bool,
}

impl LieAlgebra {
    /// The abelian algebra with basis `e1..en`.
    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra {
            dim,
            basis_names: (1..=dim).map(|i| format!("e{i}")).collect(),
            c: vec![Rat::zero(); dim * dim * dim],
        }
    }

    /// Raw constructor; nothing is checked, see [`LieAlgebra::validate`].
    pub fn from_constants(dim: usize, basis_names: Vec<String>, c: Vec<Rat>) -> LieAlgebra {
        assert_eq!(basis_names.len(), dim);
        assert_eq!(c.len(), dim * dim * dim);
        LieAlgebra { dim, basis_names, c }
    }

    /// Builder from integer brackets `(i, j, [(k, coeff)])`, 0-based,
    /// setting `[e_i, e_j]` and its antisymmetric partner.
    pub fn from_int_brackets(dim: usize, brackets: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
        let mut l = LieAlgebra::abelian(dim);
        for (i, j, terms) in brackets {
            let t: Vec<(usize, Rat)> = terms.iter().map(|&(k, q)| (k, Rat::int(q))).collect();
            l.set_bracket(*i, *j, &t);
        }
        l
    }

    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> LieAlgebra {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert_eq!(names.len(), self.dim);
        self.basis_names = names;
        self
    }

    /// Sets `[e_i, e_j] = sum terms` and `[e_j, e_i]` to its negative.
    pub fn set_bracket(&mut self, i: usize, j: usize, terms: &[(usize, Rat)]) {
        assert!(i != j || terms.iter().all(|(_, q)| q.is_zero()));
        for k in 0..self.dim {
            let (ij, ji) = (self.idx(i, j, k), self.idx(j, i, k));
            self.c[ij] = Rat::zero();
            self.c[ji] = Rat::zero();
        }
        for (k, q) in terms {
            let (ij, ji) = (self.idx(i, j, *k), self.idx(j, i, *k));
            self.c[ij] += q;
            self.c[ji] -= q;
        }
    }

    /// `R^n ⋊ R^k`: an abelian ideal `e1..en` acted on by the given
    /// derivations (which must commute), complement `e_{n+1}..e_{n+k}`.
    pub fn semidirect_abelian(derivations: &[Mat]) -> LieAlgebra {
        let n = derivations.first().map_or(0, Mat::rows);
        let dim = n + derivations.len();
        let mut l = LieAlgebra::abelian(dim);
        for (a, d) in derivations.iter().enumerate() {
            assert!(d.is_square() && d.rows() == n);
            for j in 0..n {
                let terms: Vec<(usize, Rat)> = (0..n)
                    .filter(|&i| !d.get(i, j).is_zero())
                    .map(|i| (i, d.get(i, j).clone()))
                    .collect();
                l.set_bracket(n + a, j, &terms);
            }
        }
        l
    }

    /// `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut l = LieAlgebra::abelian(n);
        for (src, off) in [(self, 0), (other, self.dim)] {
            for i in 0..src.dim {
                for j in 0..src.dim {
                    for k in 0..src.dim {
                        let v = src.constant(i, j, k).clone();
                        let ix = l.idx(i + off, j + off, k + off);
                        l.c[ix] = v;
                    }
                }
            }
        }
        let mut names = self.basis_names.clone();
        names.extend(other.basis_names.iter().cloned());
        l.with_names(names)
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[self.idx(i, j, k)]
    }

    fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), LieError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(LieError::LengthMismatch { dim: self.dim, got: v.len() })
        }
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rat> {
        (0..self.dim).map(|k| self.constant(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &(&f * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad(&self, x: &[Rat]) -> Result<Mat, LieError> {
        self.check_len(x)?;
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        let v = m.get(k, j) + &(xi * c);
                        m.set(k, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Mat {
        self.ad(&self.unit(i)).expect("basis vector has the right length")
    }

    /// Checks antisymmetry and the Jacobi identity exactly.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if *self.constant(i, j, k) != -self.constant(j, i, k) {
                        return Err(Violation::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&ei, &self.basis_bracket(j, k)).expect("len");
                    let b = self.bracket(&ej, &self.basis_bracket(k, i)).expect("len");
                    let c = self.bracket(&ek, &self.basis_bracket(i, j)).expect("len");
                    for l in 0..n {
                        if !(&(&a[l] + &b[l]) + &c[l]).is_zero() {
                            return Err(Violation::Jacobi { i, j, k, component: l });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of `[a, b]` over bases of `a_space` and `b_space`.
    pub fn bracket_spaces(&self, a_space: &Subspace, b_space: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in a_space.basis_vectors() {
            for b in b_space.basis_vectors() {
                let v = self.bracket(&a, &b).expect("ambient dimension matches");
                if v.iter().any(|x| !x.is_zero()) {
                    vecs.push(v);
                }
            }
        }
        Subspace::span(self.dim, &vecs)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    pub fn derived_algebra(&self) -> Subspace {
        self.bracket_spaces(&self.full(), &self.full())
    }

    /// `g^1 = g`, `g^{k+1} = [g, g^k]`, up to stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let g = self.full();
        iterate_series(g.clone(), |s| self.bracket_spaces(&g, s))
    }

    /// `D^0 = g`, `D^{k+1} = [D^k, D^k]`, up to stabilization.
    pub fn derived_series(&self) -> Vec<Subspace> {
        iterate_series(self.full(), |s| self.bracket_spaces(s, s))
    }

    /// Lower central series of the subalgebra `s` (assumed closed).
    pub fn subalgebra_lcs(&self, s: &Subspace) -> Vec<Subspace> {
        iterate_series(s.clone(), |t| self.bracket_spaces(s, t))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    /// `{x : [x, s] = 0}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        // x -> [x, b] is -ad(b) x, so stack the ad matrices of the basis of s
        let mut rows = Vec::new();
        for b in s.basis_vectors() {
            let m = self.ad(&b).expect("len");
            rows.extend(m.row_vecs());
        }
        if rows.is_empty() {
            return self.full();
        }
        Mat::from_rows(rows).kernel()
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(&self.full(), s))
    }

    pub fn is_abelian_space(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_basis(i).trace().is_zero())
    }

    pub fn structure_report(&self) -> StructureReport {
        let lcs = self.lower_central_series();
        let ds = self.derived_series();
        StructureReport {
            nilpotent: lcs.last().is_some_and(Subspace::is_zero),
            solvable: ds.last().is_some_and(Subspace::is_zero),
            lcs_dims: lcs.iter().map(Subspace::dim).collect(),
            ds_dims: ds.iter().map(Subspace::dim).collect(),
            center_dim: self.center().dim(),
            unimodular: self.is_unimodular(),
        }
    }

    /// Matrix of `ad x` restricted to an invariant subspace, in the RREF basis of `s`.
    pub fn restricted_action(&self, x: &[Rat], s: &Subspace) -> Result<Mat, LieError> {
        let ad = self.ad(x)?;
        let basis = s.basis_vectors();
        let mut m = Mat::zeros(basis.len(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            let img = ad.mul_vec(b);
            let coords = s.coordinates(&img).ok_or(LieError::NotInvariant)?;
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// Whether some 4-dimensional abelian ideal exists; `self` must be a
    /// nilpotent 5-dimensional algebra.
    ///
    /// Every 4-dimensional subspace containing `D = [g, g]` is an ideal, so
    /// the search reduces to linear algebra on `q = dim g/D`.
    pub fn has_abelian_ideal_dim4(&self) -> Result<bool, LieError> {
        if self.dim != 5 {
            return Err(LieError::WrongDimension { expected: 5, got: self.dim });
        }
        if !self.is_nilpotent() {
            return Err(LieError::WrongBranch("abelian-ideal test needs a nilpotent algebra".into()));
        }
        let d = self.derived_algebra();
        let q = self.dim - d.dim();
        Ok(match q {
            5 => true,
            4 => {
                // D is a central line; the induced alternating form on g/D
                // needs a 3-dimensional isotropic subspace
                let line = &d.basis_vectors()[0];
                let comp = d.complement_indices();
                let mut form = Mat::zeros(comp.len(), comp.len());
                for (a, &i) in comp.iter().enumerate() {
                    for (b, &j) in comp.iter().enumerate() {
                        let v = self.basis_bracket(i, j);
                        let coeff = Subspace::span(self.dim, std::slice::from_ref(line))
                            .coordinates(&v)
                            .expect("brackets lie in D")[0]
                            .clone();
                        form.set(a, b, coeff);
                    }
                }
                form.rank() <= 2
            }
            3 => {
                if !self.is_abelian_space(&d) {
                    return Ok(false);
                }
                let s = self.centralizer(&d);
                let reps: Vec<Vec<Rat>> = quotient_reps(&s, &d);
                match reps.len() {
                    0 | 1 => false,
                    2 => self.bracket(&reps[0], &reps[1])?.iter().all(Rat::is_zero),
                    _ => {
                        // every element of Λ²(S/D) is decomposable when dim S/D = 3
                        let pairs = [(0, 1), (0, 2), (1, 2)];
                        let images: Vec<Vec<Rat>> = pairs
                            .iter()
                            .map(|&(a, b)| self.bracket(&reps[a], &reps[b]).expect("len"))
                            .collect();
                        Mat::from_rows(images).rank() < 3
                    }
                }
            }
            2 => self.is_abelian_space(&d) && !d.contains_subspace(&self.centralizer(&d)),
            _ => false,
        })
    }

    /// Transport the structure constants to the basis `f_a = sum_i P[i][a] e_i`.
    pub fn basis_change(&self, p: &Mat) -> Result<LieAlgebra, LieError> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(LieError::SingularChange);
        }
        let pinv = p.inverse().map_err(|_| LieError::SingularChange)?;
        let cols: Vec<Vec<Rat>> = (0..self.dim).map(|a| p.col(a)).collect();
        let mut out = LieAlgebra::abelian(self.dim).with_names(self.basis_names.clone());
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let v = self.bracket(&cols[a], &cols[b])?;
                let w = pinv.mul_vec(&v);
                let terms: Vec<(usize, Rat)> = w
                    .into_iter()
                    .enumerate()
                    .filter(|(_, q)| !q.is_zero())
                    .collect();
                out.set_bracket(a, b, &terms);
            }
        }
        Ok(out)
    }

    /// `B(x, y) = tr(ad x ad y)` on the basis.
    pub fn killing_form(&self) -> Mat {
        let ads: Vec<Mat> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        let mut b = Mat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let t = (&ads[i] * &ads[j]).trace();
                b.set(i, j, t.clone());
                b.set(j, i, t);
            }
        }
        b
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`, as `(i, j, [(k, c)])`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<(usize, Rat)>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let terms: Vec<(usize, Rat)> = (0..self.dim)
                    .filter(|&k| !self.constant(i, j, k).is_zero())
                    .map(|k| (k, self.constant(i, j, k).clone()))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }
}

/// Representatives of a basis of `s / d` (with `d ⊆ s`).
fn quotient_reps(s: &Subspace, d: &Subspace) -> Vec<Vec<Rat>> {
    let mut acc = d.clone();
    let mut reps = Vec::new();
    for v in s.basis_vectors() {
        if !acc.contains(&v) {
            acc = acc.sum(&Subspace::span(s.ambient(), std::slice::from_ref(&v)));
            reps.push(v);
        }
    }
    reps
}

fn iterate_series(start: Subspace, mut step: impl FnMut(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![start];
    for _ in 0..SERIES_LIMIT {
        let next = step(out.last().expect("nonempty"));
        if &next == out.last().expect("nonempty") {
            break;
        }
        out.push(next);
    }
    out
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim)?;
        for (i, j, terms) in self.nonzero_brackets() {
            let rhs: Vec<String> = terms
                .iter()
                .map(|(k, q)| format!("{q}*{}", self.basis_names[*k]))
                .collect();
            write!(f, ", [{},{}]={}", self.basis_names[i], self.basis_names[j], rhs.join("+"))?;
        }
        write!(f, ")")
    }
}
