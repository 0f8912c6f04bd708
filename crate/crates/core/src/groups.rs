//! Group laws for the Lie-group geometries, checked against their
//! structure constants.
//!
//! Solvable groups use a split model `N x| R^k`: the nilradical `N` in
//! exponential coordinates (group law by Baker-Campbell-Hausdorff, exact
//! because `N` is nilpotent of step at most 4) and an abelian complement
//! acting by `phi(t) = exp(sum t_a D_a)`. The three non-solvable group
//! geometries use a faithful matrix representation.

use nalgebra::{DMatrix, DVector};

use crate::atlas::{self, AtlasError, Factor};
use crate::classify::{GeometryLabel, Named};
use crate::exact::{Mat, Rat, Subspace};
use crate::liealg::{LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("elements belong to different models ({0} and {1})")]
    ModelMismatch(String, String),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("no split model: {0}")]
    NoSplitModel(String),
    #[error("exact arithmetic needs a nilpotent model")]
    NotExact,
    #[error("{0} is not a Heisenberg model")]
    NotHeisenberg(String),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub model: String,
    pub coords: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Split {
    /// Nilradical dimension.
    n: usize,
    /// Brackets of `N` in its basis.
    c: Vec<f64>,
    /// `ad(c_a)` restricted to `N`.
    derivations: Vec<DMatrix<f64>>,
    /// Structure constants in the model basis, for exact mode.
    exact_alg: LieAlgebra,
}

#[derive(Debug, Clone)]
struct Linear {
    rep: Vec<DMatrix<f64>>,
}

#[derive(Debug, Clone)]
enum Law {
    Split(Split),
    Linear(Linear),
}

/// A simply transitive group model paired with its Lie algebra.
#[derive(Debug, Clone)]
pub struct GroupModel {
    id: String,
    algebra: LieAlgebra,
    /// Columns: model basis in terms of the algebra basis.
    basis: DMatrix<f64>,
    basis_inv: DMatrix<f64>,
    law: Law,
}

fn to_dm(m: &Mat) -> DMatrix<f64> {
    m.to_f64()
}

impl Split {
    fn dim(&self) -> usize {
        self.n + self.derivations.len()
    }

    fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0.0 {
                    continue;
                }
                let xy = x[i] * y[j];
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += xy * self.c[base + k];
                }
            }
        }
        out
    }

    /// `log(exp X exp Y)` in `N`, exact for nilpotency step at most 4.
    fn bch(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let xy = self.bracket(x, y);
        let x_xy = self.bracket(x, &xy);
        let yx = xy.iter().map(|v| -v).collect::<Vec<_>>();
        let y_yx = self.bracket(y, &yx);
        let y_x_xy = self.bracket(y, &x_xy);
        (0..self.n)
            .map(|k| x[k] + y[k] + 0.5 * xy[k] + (x_xy[k] + y_yx[k]) / 12.0 - y_x_xy[k] / 24.0)
            .collect()
    }

    fn phi(&self, t: &[f64]) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (ti, d) in t.iter().zip(&self.derivations) {
            a += d * *ti;
        }
        a.exp()
    }

    fn act(&self, t: &[f64], v: &[f64]) -> Vec<f64> {
        if t.iter().all(|x| *x == 0.0) {
            return v.to_vec();
        }
        (self.phi(t) * DVector::from_column_slice(v)).iter().copied().collect()
    }

    fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let moved = self.act(&a[n..], &b[..n]);
        let mut out = self.bch(&a[..n], &moved);
        out.extend(a[n..].iter().zip(&b[n..]).map(|(s, t)| s + t));
        out
    }

    fn inv(&self, a: &[f64]) -> Vec<f64> {
        let n = self.n;
        let neg_t: Vec<f64> = a[n..].iter().map(|t| -t).collect();
        let mut out: Vec<f64> = self.act(&neg_t, &a[..n]).iter().map(|v| -v).collect();
        out.extend(neg_t);
        out
    }

    /// One-parameter subgroup through `y = n0 + sum d_a c_a` at time 1.
    /// Writing `exp(sy) = (gamma(s), s d)`, `gamma` solves
    /// `gamma' = gamma * phi(s d) n0`; one fourth-order Magnus step gives
    /// `exp(y / 2^m)`, which is then squared `m` times.
    fn exp(&self, y: &[f64]) -> Vec<f64> {
        let n = self.n;
        let (n0, d) = y.split_at(n);
        if d.iter().all(|x| *x == 0.0) || n0.iter().all(|x| *x == 0.0) {
            return y.to_vec();
        }
        let scale: f64 = self.derivations.iter().zip(d).map(|(m, x)| m.amax() * x.abs()).sum();
        let m = 12 + scale.max(1.0).log2().ceil() as i32;
        let h = 0.5f64.powi(m);
        let (n0, d): (Vec<f64>, Vec<f64>) = (n0.iter().map(|x| x * h).collect(), d.iter().map(|x| x * h).collect());
        let off = 3f64.sqrt() / 6.0;
        let u = |s: f64| -> Vec<f64> {
            let t: Vec<f64> = d.iter().map(|x| x * s).collect();
            self.act(&t, &n0)
        };
        let (u1, u2) = (u(0.5 - off), u(0.5 + off));
        let br = self.bracket(&u1, &u2);
        let mut g: Vec<f64> = (0..n).map(|k| 0.5 * (u1[k] + u2[k]) + 3f64.sqrt() / 12.0 * br[k]).collect();
        g.extend_from_slice(&d);
        for _ in 0..m {
            g = self.mul(&g, &g);
        }
        g
    }
}

impl Linear {
    fn size(&self) -> usize {
        self.rep[0].nrows()
    }

    fn to_matrix(&self, coords: &[f64]) -> DMatrix<f64> {
        let m = self.size();
        DMatrix::from_row_slice(m, m, coords) + DMatrix::identity(m, m)
    }

    fn coords_of(&self, mat: DMatrix<f64>) -> Vec<f64> {
        let m = self.size();
        let d = mat - DMatrix::identity(m, m);
        d.transpose().iter().copied().collect()
    }

    /// Algebra vector whose image is `v` (least squares; the
    /// representation is faithful).
    fn unrep(&self, v: &[f64]) -> Vec<f64> {
        let m = self.size();
        let cols: Vec<DVector<f64>> = self
            .rep
            .iter()
            .map(|r| DVector::from_iterator(m * m, r.transpose().iter().copied()))
            .collect();
        let a = DMatrix::from_columns(&cols);
        let b = DVector::from_column_slice(v);
        let sol = a.svd(true, true).solve(&b, 1e-14).expect("SVD solve");
        sol.iter().copied().collect()
    }
}

impl GroupModel {
    /// Split model of a solvable algebra whose nilradical has an abelian
    /// complement spanned by coordinate vectors.
    pub fn split(id: impl Into<String>, alg: &LieAlgebra) -> Result<GroupModel, GroupError> {
        let id = id.into();
        if !alg.is_solvable() {
            return Err(GroupError::NoSplitModel(format!("{id} is not solvable")));
        }
        let nil = alg.nilradical()?.space;
        let n = nil.dim();
        let dim = alg.dim();
        let comp = nil.complement_indices();
        let mut cols = nil.basis_vectors();
        for &i in &comp {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::one();
            cols.push(e);
        }
        let p = Mat::from_rows(cols).transpose();
        let model_alg = alg.basis_change(&p)?;
        for a in n..dim {
            for b in n..dim {
                if model_alg.basis_bracket(a, b).iter().any(|x| !x.is_zero()) {
                    return Err(GroupError::NoSplitModel(format!("{id}: complement is not abelian")));
                }
            }
        }
        let mut c = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[(i * n + j) * n + k] = model_alg.constant(i, j, k).to_f64();
                }
            }
        }
        let nsub = Subspace::span(dim, &(0..n).map(|i| unit(dim, i)).collect::<Vec<_>>());
        let derivations = (n..dim)
            .map(|a| model_alg.restricted_action(&unit(dim, a), &nsub).map(|m| to_dm(&m)))
            .collect::<Result<Vec<_>, _>>()?;
        let basis = to_dm(&p);
        let basis_inv = to_dm(&p.inverse().map_err(LieError::from)?);
        Ok(GroupModel {
            id,
            algebra: alg.clone(),
            basis,
            basis_inv,
            law: Law::Split(Split { n, c, derivations, exact_alg: model_alg }),
        })
    }

    fn linear(id: &str, alg: LieAlgebra, rep: Vec<DMatrix<f64>>) -> GroupModel {
        let d = alg.dim();
        GroupModel {
            id: id.to_string(),
            algebra: alg,
            basis: DMatrix::identity(d, d),
            basis_inv: DMatrix::identity(d, d),
            law: Law::Linear(Linear { rep }),
        }
    }

    /// The 3-dimensional Heisenberg group with `[e1,e2]=2e3`; its
    /// exponential coordinates obey `z+z'+xy'-x'y`.
    pub fn heis3() -> GroupModel {
        GroupModel::split("Heis3", &atlas::heis3()).expect("Heis3 is nilpotent")
    }

    /// Model for an atlas geometry with a constructor.
    pub fn for_label(label: &GeometryLabel) -> Result<GroupModel, GroupError> {
        let alg = atlas::build_algebra(label)?;
        let id = label.to_string();
        let linear_rep = match label {
            GeometryLabel::Named(Named::R2xSl2) => Some(r2_sl2_rep()),
            GeometryLabel::Product(p) if p.factors() == [Factor::S3, Factor::E(2)] => {
                Some(block_rep(&ad_rep(&crate::atlas::build_algebra(label)?, 3), 2))
            }
            GeometryLabel::Product(p) if p.factors() == [Factor::Sl2, Factor::E(2)] => Some(block_rep(&sl2_std(), 2)),
            _ => None,
        };
        match linear_rep {
            Some(rep) => Ok(GroupModel::linear(&id, alg, rep)),
            None => GroupModel::split(id, &alg),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Length of a coordinate vector.
    pub fn coord_len(&self) -> usize {
        match &self.law {
            Law::Split(s) => s.dim(),
            Law::Linear(l) => l.size() * l.size(),
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        matches!(&self.law, Law::Split(s) if s.derivations.is_empty())
    }

    pub fn identity(&self) -> GroupElement {
        self.element(vec![0.0; self.coord_len()])
    }

    fn element(&self, coords: Vec<f64>) -> GroupElement {
        GroupElement { model: self.id.clone(), coords }
    }

    pub fn make(&self, coords: Vec<f64>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.coord_len() {
            return Err(GroupError::WrongLength { expected: self.coord_len(), got: coords.len() });
        }
        Ok(self.element(coords))
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.model != self.id {
            return Err(GroupError::ModelMismatch(self.id.clone(), g.model.clone()));
        }
        if g.coords.len() != self.coord_len() {
            return Err(GroupError::WrongLength { expected: self.coord_len(), got: g.coords.len() });
        }
        Ok(())
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.element(match &self.law {
            Law::Split(s) => s.mul(&g.coords, &h.coords),
            Law::Linear(l) => l.coords_of(l.to_matrix(&g.coords) * l.to_matrix(&h.coords)),
        }))
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        Ok(self.element(match &self.law {
            Law::Split(s) => s.inv(&g.coords),
            Law::Linear(l) => {
                let m = l.to_matrix(&g.coords).try_inverse().expect("group elements are invertible");
                l.coords_of(m)
            }
        }))
    }

    /// Exponential of an algebra vector (coordinates in the algebra basis).
    pub fn exp(&self, x: &[f64]) -> Result<GroupElement, GroupError> {
        if x.len() != self.algebra.dim() {
            return Err(GroupError::WrongLength { expected: self.algebra.dim(), got: x.len() });
        }
        let y: Vec<f64> = (&self.basis_inv * DVector::from_column_slice(x)).iter().copied().collect();
        Ok(self.element(match &self.law {
            Law::Split(s) => s.exp(&y),
            Law::Linear(l) => {
                let m = l.size();
                let mut a = DMatrix::zeros(m, m);
                for (yi, r) in y.iter().zip(&l.rep) {
                    a += r * *yi;
                }
                l.coords_of(a.exp())
            }
        }))
    }

    /// Algebra vector agreeing with `log g` to second order near the
    /// identity; exact for the nilpotent models.
    fn chart(&self, g: &GroupElement) -> Vec<f64> {
        let y = match &self.law {
            Law::Split(_) => g.coords.clone(),
            Law::Linear(l) => l.unrep(&g.coords),
        };
        (&self.basis * DVector::from_vec(y)).iter().copied().collect()
    }

    /// Exact product for nilpotent models, in exponential coordinates.
    pub fn mul_exact(&self, a: &[Rat], b: &[Rat]) -> Result<Vec<Rat>, GroupError> {
        let Law::Split(s) = &self.law else { return Err(GroupError::NotExact) };
        if !s.derivations.is_empty() {
            return Err(GroupError::NotExact);
        }
        for v in [a, b] {
            if v.len() != s.n {
                return Err(GroupError::WrongLength { expected: s.n, got: v.len() });
            }
        }
        Ok(bch_exact(&s.exact_alg, a, b)?)
    }
}

fn unit(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = Rat::one();
    v
}

fn bch_exact(l: &LieAlgebra, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, LieError> {
    let xy = l.bracket(x, y)?;
    let x_xy = l.bracket(x, &xy)?;
    let yx: Vec<Rat> = xy.iter().map(|v| -v).collect();
    let y_yx = l.bracket(y, &yx)?;
    let y_x_xy = l.bracket(y, &x_xy)?;
    let (half, twelfth, twentyfourth) = (Rat::new(1, 2), Rat::new(1, 12), Rat::new(1, 24));
    Ok((0..x.len())
        .map(|k| &x[k] + &y[k] + &half * &xy[k] + &twelfth * &(&x_xy[k] + &y_yx[k]) - &twentyfourth * &y_x_xy[k])
        .collect())
}

/// `ad` restricted to the first `k` basis vectors, as `k x k` matrices.
fn ad_rep(l: &LieAlgebra, k: usize) -> Vec<DMatrix<f64>> {
    (0..k)
        .map(|i| DMatrix::from_fn(k, k, |r, c| l.constant(i, c, r).to_f64()))
        .collect()
}

fn sl2_std() -> Vec<DMatrix<f64>> {
    vec![
        DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
        DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]),
        DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]),
    ]
}

/// `rho` on the semisimple part, plus `R^k` as translations of an affine block.
fn block_rep(semisimple: &[DMatrix<f64>], k: usize) -> Vec<DMatrix<f64>> {
    let s = semisimple[0].nrows();
    let m = s + k + 1;
    let mut out: Vec<DMatrix<f64>> = semisimple
        .iter()
        .map(|r| {
            let mut big = DMatrix::zeros(m, m);
            big.view_mut((0, 0), (s, s)).copy_from(r);
            big
        })
        .collect();
    for i in 0..k {
        let mut big = DMatrix::zeros(m, m);
        big[(s + i, m - 1)] = 1.0;
        out.push(big);
    }
    out
}

/// Affine action on the plane; basis `h, e, f, u, v`.
fn r2_sl2_rep() -> Vec<DMatrix<f64>> {
    let e = |i: usize, j: usize| {
        let mut m = DMatrix::zeros(3, 3);
        m[(i, j)] = 1.0;
        m
    };
    vec![e(0, 0) - e(1, 1), e(0, 1), e(1, 0), e(0, 2), e(1, 2)]
}

/// Group commutator `g h g^-1 h^-1`.
pub fn commutator(model: &GroupModel, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
    let gh = model.mul(g, h)?;
    let gi = model.inv(g)?;
    let hi = model.inv(h)?;
    model.mul(&model.mul(&gh, &gi)?, &hi)
}

/// Largest relative deviation, over basis pairs, between the symmetric
/// second difference of the commutator path
/// `exp(h e_i) exp(h e_j) exp(-h e_i) exp(-h e_j)` and `[e_i, e_j]`.
pub fn commutator_derivative_check(model: &GroupModel, alg: &LieAlgebra, h: f64) -> Result<f64, GroupError> {
    let dim = alg.dim();
    if dim != model.algebra.dim() {
        return Err(GroupError::WrongLength { expected: model.algebra.dim(), got: dim });
    }
    let basis_exp = |i: usize, s: f64| {
        let mut x = vec![0.0; dim];
        x[i] = s;
        model.exp(&x)
    };
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut acc = vec![0.0; dim];
            for s in [h, -h] {
                let c = commutator(model, &basis_exp(i, s)?, &basis_exp(j, s)?)?;
                for (a, v) in acc.iter_mut().zip(model.chart(&c)) {
                    *a += v;
                }
            }
            let bracket: Vec<f64> = alg.basis_bracket(i, j).iter().map(Rat::to_f64).collect();
            let scale = bracket.iter().fold(1.0f64, |m, b| m.max(b.abs()));
            let dev = acc
                .iter()
                .zip(&bracket)
                .map(|(a, b)| (a / (2.0 * h * h) - b).abs())
                .fold(0.0f64, f64::max);
            worst = worst.max(dev / scale);
        }
    }
    Ok(worst)
}

/// The Heisenberg law `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy'-x'y)`, exactly.
pub fn heis3_law(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [&a[0] + &b[0], &a[1] + &b[1], &(&a[2] + &b[2]) + &(&(&a[0] * &b[1]) - &(&b[0] * &a[1]))]
}

fn require_heis(model: &GroupModel) -> Result<(), GroupError> {
    match model.id() {
        "Heis3" | "A5,4" => Ok(()),
        other => Err(GroupError::NotHeisenberg(other.to_string())),
    }
}

/// Heisenberg models use exponential coordinates, so `exp` is the identity
/// on coordinates.
pub fn heis_exp(model: &GroupModel, v: &[f64]) -> Result<GroupElement, GroupError> {
    require_heis(model)?;
    model.make(v.to_vec())
}

pub fn heis_log(model: &GroupModel, g: &GroupElement) -> Result<Vec<f64>, GroupError> {
    require_heis(model)?;
    model.check(g)?;
    Ok(g.coords.clone())
}

/// Result of `group check`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ModelReport {
    pub label: String,
    pub commutator_error: f64,
    pub associativity_error: f64,
    pub inverse_error: f64,
    pub pass: bool,
}

pub const CHECK_STEP: f64 = 1e-4;
pub const CHECK_TOL: f64 = 1e-6;

/// Consistency checks for one model on the given sample elements.
pub fn check_model(model: &GroupModel, samples: &[Vec<f64>]) -> Result<ModelReport, GroupError> {
    let commutator_error = commutator_derivative_check(model, model.algebra(), CHECK_STEP)?;
    let els: Vec<GroupElement> = samples.iter().map(|x| model.exp(x)).collect::<Result<_, _>>()?;
    let mut assoc: f64 = 0.0;
    let mut inverse: f64 = 0.0;
    for w in els.windows(3) {
        let l = model.mul(&model.mul(&w[0], &w[1])?, &w[2])?;
        let r = model.mul(&w[0], &model.mul(&w[1], &w[2])?)?;
        assoc = assoc.max(rel_diff(&l.coords, &r.coords));
    }
    for g in &els {
        let e = model.mul(g, &model.inv(g)?)?;
        inverse = inverse.max(e.coords.iter().fold(0.0f64, |m, x| m.max(x.abs())) / max_abs(&g.coords).max(1.0));
    }
    Ok(ModelReport {
        label: model.id().to_string(),
        commutator_error,
        associativity_error: assoc,
        inverse_error: inverse,
        pass: commutator_error < CHECK_TOL && assoc < 1e-10 && inverse < 1e-10,
    })
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let d = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    d / max_abs(a).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rat {
        Rat::int(x)
    }

    #[test]
    fn heis3_examples() {
        let g = GroupModel::heis3();
        let a = g.make(vec![1.0, 0.0, 0.0]).unwrap();
        let b = g.make(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(g.mul(&a, &b).unwrap().coords, vec![1.0, 1.0, 1.0]);
        assert_eq!(commutator(&g, &a, &b).unwrap().coords, vec![0.0, 0.0, 2.0]);
        assert_eq!(heis3_law(&[r(1), r(0), r(0)], &[r(0), r(1), r(0)]), [r(1), r(1), r(1)]);
    }

    #[test]
    fn coordinate_law_is_bch() {
        let g = GroupModel::heis3();
        let pts = [[r(1), r(-2), r(3)], [Rat::new(1, 2), r(5), r(-1)], [r(0), Rat::new(-3, 4), r(2)]];
        for a in &pts {
            for b in &pts {
                assert_eq!(g.mul_exact(a, b).unwrap(), heis3_law(a, b).to_vec());
            }
        }
    }

    #[test]
    fn heis_exp_bch() {
        let g = GroupModel::heis3();
        let x = heis_exp(&g, &[1.0, 0.0, 0.0]).unwrap();
        let y = heis_exp(&g, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(g.mul(&x, &y).unwrap(), heis_exp(&g, &[1.0, 1.0, 1.0]).unwrap());
        assert_eq!(heis_log(&g, &g.identity()).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn model_mismatch() {
        let a = GroupModel::heis3();
        let b = GroupModel::for_label(&"Heis5".parse().unwrap()).unwrap();
        assert!(matches!(a.mul(&a.identity(), &b.identity()), Err(GroupError::ModelMismatch(..))));
    }

    #[test]
    fn every_constructor_has_a_consistent_model() {
        let samples: Vec<Vec<f64>> = (0..6)
            .map(|i| (0..5).map(|j| ((i * 7 + j * 3) % 11) as f64 / 5.0 - 1.0).collect())
            .collect();
        for l in atlas::constructible_labels() {
            let m = GroupModel::for_label(&l).unwrap();
            let rep = check_model(&m, &samples).unwrap();
            assert!(rep.pass, "{l}: {rep:?}");
        }
    }

    #[test]
    fn one_parameter_subgroups() {
        for name in ["A5,20^{0}", "A5,15^{-1}", "Nil^4 x E", "A5,7^{2/3,1/3,-2}"] {
            let m = GroupModel::for_label(&name.parse().unwrap()).unwrap();
            let x = [0.3, -0.7, 0.5, 1.1, 0.9];
            let half: Vec<f64> = x.iter().map(|v| v / 2.0).collect();
            let h = m.exp(&half).unwrap();
            let full = m.exp(&x).unwrap();
            let sq = m.mul(&h, &h).unwrap();
            assert!(rel_diff(&sq.coords, &full.coords) < 1e-10, "{name}: {:?} vs {:?}", sq.coords, full.coords);
        }
    }

    #[test]
    fn semidirect_law() {
        let m = GroupModel::for_label(&"A5,7^{2/3,1/3,-2}".parse().unwrap()).unwrap();
        let g = m.make(vec![1.0, 1.0, 1.0, 1.0, 0.5]).unwrap();
        let h = m.make(vec![1.0, 2.0, 3.0, 4.0, 0.25]).unwrap();
        let p = m.mul(&g, &h).unwrap();
        let expect = [1.0 + 0.5f64.exp(), 1.0 + 2.0 * (0.5f64 * 2.0 / 3.0).exp(), 1.0 + 3.0 * (0.5f64 / 3.0).exp(), 1.0 + 4.0 * (-1.0f64).exp(), 0.75];
        assert!(rel_diff(&p.coords, &expect) < 1e-13, "{:?}", p.coords);
    }
}
