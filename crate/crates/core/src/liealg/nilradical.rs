use serde::Serialize;

use super::{LieAlgebra, LieError};
use crate::exact::{Mat, Poly, Rat, Subspace};

/// How the nilradical was obtained. Every route is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NilradicalMethod {
    /// The algebra is nilpotent.
    Whole,
    /// `dim g/[g,g] = 1`: one coset representative tested.
    SingleCoset,
    /// `dim g/[g,g] = 2`: rational zeros of the characteristic coefficients on the projective line.
    ProjectiveLine,
    /// Radical of the trace form on the associative hull of `ad g`.
    TraceForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nilradical {
    pub space: Subspace,
    pub method: NilradicalMethod,
}

impl Nilradical {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn status(&self) -> &'static str {
        "certified"
    }
}

impl LieAlgebra {
    /// Largest nilpotent ideal of a solvable algebra, i.e. its ad-nilpotent elements.
    pub fn nilradical(&self) -> Result<Nilradical, LieError> {
        if !self.is_solvable() {
            return Err(LieError::NotSolvable);
        }
        if self.is_nilpotent() {
            return Ok(Nilradical { space: self.full(), method: NilradicalMethod::Whole });
        }
        let d = self.derived_algebra();
        let reps: Vec<Vec<Rat>> = d.complement_indices().into_iter().map(|i| self.unit(i)).collect();
        let (extra, method) = match reps.len() {
            1 => {
                let hit = self.is_ad_nilpotent(&reps[0]);
                (if hit { reps } else { vec![] }, NilradicalMethod::SingleCoset)
            }
            2 => (self.projective_line_points(&reps[0], &reps[1])?, NilradicalMethod::ProjectiveLine),
            _ => return Ok(Nilradical { space: self.nilradical_trace_form()?, method: NilradicalMethod::TraceForm }),
        };
        Ok(Nilradical { space: d.sum(&Subspace::span(self.dim, &extra)), method })
    }

    pub fn is_ad_nilpotent(&self, x: &[Rat]) -> bool {
        self.ad(x).is_ok_and(|m| m.is_nilpotent())
    }

    /// Points of `P(span(f1, f2))` whose lift is ad-nilpotent.
    fn projective_line_points(&self, f1: &[Rat], f2: &[Rat]) -> Result<Vec<Vec<Rat>>, LieError> {
        let n = self.dim;
        let combo = |s: &Rat| -> Vec<Rat> { f1.iter().zip(f2).map(|(a, b)| &(s * a) + b).collect() };
        // c_k(s f1 + f2) has degree <= n - k in s, so n + 1 samples determine it
        let xs: Vec<Rat> = (0..=n as i64).map(Rat::int).collect();
        let charpolys: Vec<Poly> = xs
            .iter()
            .map(|s| self.ad(&combo(s))?.charpoly().map_err(LieError::from))
            .collect::<Result<_, _>>()?;
        let mut g = Poly::zero();
        for k in 0..n {
            let ys: Vec<Rat> = charpolys.iter().map(|p| p.coeff(k)).collect();
            g = g.gcd(&Poly::interpolate(&xs, &ys));
        }
        let mut points = Vec::new();
        if !g.is_zero() {
            let mut roots = g.rational_roots()?;
            roots.dedup();
            points.extend(roots.iter().map(combo));
        }
        if self.is_ad_nilpotent(f1) {
            points.push(f1.to_vec());
        }
        Ok(points)
    }

    /// Unital associative algebra generated by `ad e_i`, as a basis of matrices.
    pub fn associative_hull(&self) -> Vec<Mat> {
        let n = self.dim;
        let gens: Vec<Mat> = (0..n).map(|i| self.ad_basis(i)).collect();
        let flat = |m: &Mat| m.entries().to_vec();
        let mut space = Subspace::span(n * n, &[flat(&Mat::identity(n))]);
        let mut basis = vec![Mat::identity(n)];
        let mut frontier = basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for g in &gens {
                    let p = a * g;
                    let v = flat(&p);
                    if !space.contains(&v) {
                        space = space.sum(&Subspace::span(n * n, &[v]));
                        basis.push(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        basis
    }

    /// `{x : tr(ad x . b) = 0 for all b in the associative hull}`.
    ///
    /// For solvable `g` the hull is triangularizable, its radical is the
    /// trace-form radical, and `ad x` lies in it exactly when it is nilpotent.
    pub fn nilradical_trace_form(&self) -> Result<Subspace, LieError> {
        if !self.is_solvable() {
            return Err(LieError::NotSolvable);
        }
        let ads: Vec<Mat> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        let rows: Vec<Vec<Rat>> = self
            .associative_hull()
            .iter()
            .map(|b| ads.iter().map(|a| (a * b).trace()).collect())
            .collect();
        Ok(Mat::from_rows(rows).kernel())
    }
}
