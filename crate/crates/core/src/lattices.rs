//! Lattice constructions that can be checked at desk scale: Dirichlet units
//! of totally real cubic fields acting on `R^3`, and integer models for the
//! diagonal `R^4 x| R` and `Sol^4 x E` families.

use std::collections::HashSet;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas;
use crate::classify::{normalize_real_f64, positive_log_roots, Alpha, GeometryLabel, Named};
use crate::exact::{Mat, Poly, Rat};
use crate::groups::{GroupElement, GroupModel};
use crate::numeric;

/// Largest coefficient bound accepted by the exhaustive search.
pub const MAX_SEARCH_BOUND: i64 = 30;
/// Tolerance for matching normalized log-root vectors.
pub const MATCH_TOL: f64 = 1e-9;
/// Eigenbasis condition number above which the construction is refused.
pub const MAX_CONDITION: f64 = 1e8;
/// Minimal displacement required of nontrivial words.
pub const DISCRETENESS_THRESHOLD: f64 = 1e-3;
/// Words up to this length are enumerated by the discreteness proxy.
pub const WORD_LENGTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    NotMonicIntegerCubic,
    NotTotallyReal,
    Reducible,
    RepeatedRoots,
    NotUnit,
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rejection::NotMonicIntegerCubic => "not a monic integer cubic",
            Rejection::NotTotallyReal => "not totally real",
            Rejection::Reducible => "reducible over Q",
            Rejection::RepeatedRoots => "repeated roots",
            Rejection::NotUnit => "constant term is not +-1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("rejected: {}", .0.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "))]
    Rejected(Vec<Rejection>),
    #[error("eigenbasis condition number {0:e} exceeds the limit")]
    IllConditioned(f64),
    #[error("malformed target: {0}")]
    MalformedTarget(String),
    #[error("search bound {0} outside 1..=30")]
    BadBound(i64),
}

/// A monic integer cubic whose roots are units generating a totally real field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitCubic {
    pub poly: Poly,
}

fn integer_coeffs(p: &Poly) -> Option<Vec<i64>> {
    p.coeffs().iter().map(|c| if c.is_integer() { c.to_i64() } else { None }).collect()
}

/// All failed invariants, in a fixed order.
pub fn unit_cubic_check(p: &Poly) -> Result<UnitCubic, LatticeError> {
    if p.degree() != 3 || !p.lead().is_one() || integer_coeffs(p).is_none() {
        return Err(LatticeError::Rejected(vec![Rejection::NotMonicIntegerCubic]));
    }
    let mut reasons = Vec::new();
    let sig = p.root_signature().expect("nonzero polynomial");
    if !sig.all_real {
        reasons.push(Rejection::NotTotallyReal);
    }
    if !p.rational_roots().expect("nonzero polynomial").is_empty() {
        reasons.push(Rejection::Reducible);
    }
    if sig.distinct != 3 {
        reasons.push(Rejection::RepeatedRoots);
    }
    if p.coeff(0).abs() != Rat::one() {
        reasons.push(Rejection::NotUnit);
    }
    if reasons.is_empty() {
        Ok(UnitCubic { poly: p.clone() })
    } else {
        Err(LatticeError::Rejected(reasons))
    }
}

/// A unit `a + b x + c x^2` of `Z[x]/(p)`, as an integer matrix acting on `Z^3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Unit {
    /// Coefficients `(a, b, c)`.
    pub coeffs: [i64; 3],
    /// Power taken to make every embedding positive.
    pub power: u32,
    pub matrix: Mat,
    /// `log` of the three embeddings of the power, summing to zero.
    pub logs: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeReport {
    pub poly: Poly,
    pub companion: Mat,
    pub det: Rat,
    /// Real roots, descending.
    pub eigenvalues: Vec<f64>,
    pub eigenvalue_product: f64,
    /// Rows are the embeddings `f |-> f(lambda_i)` of `Z^3 = Z[x]/(p)`.
    pub embedding: Vec<Vec<f64>>,
    pub condition_number: f64,
    /// The companion unit (`x` itself) and, when found, a second
    /// independent unit; together they give a lattice `Z^3 x| Z^2`.
    pub units: Vec<Unit>,
    pub log_sum: f64,
    /// Generators in coordinates `(v1, v2, v3, t1, t2)` of
    /// `R^3 x| {xyz=1}^0`: three translations, then the units.
    pub generators: Vec<Vec<f64>>,
    pub relation_residual: f64,
    pub min_displacement: f64,
    pub words_checked: usize,
    pub discrete: bool,
}

fn int_matrix(m: &Mat) -> Vec<Vec<i128>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("integer unit matrix") as i128).collect())
        .collect()
}

fn apply(m: &[Vec<i128>], v: &[i128; 3]) -> [i128; 3] {
    let mut out = [0i128; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|j| m[i][j] * v[j]).sum();
    }
    out
}

fn poly_matrix(c: &Mat, coeffs: [i64; 3]) -> Mat {
    let c2 = c * c;
    let mut m = Mat::identity(3).scale(&Rat::int(coeffs[0]));
    m = &m + &c.scale(&Rat::int(coeffs[1]));
    &m + &c2.scale(&Rat::int(coeffs[2]))
}

fn make_unit(c: &Mat, lambdas: &[f64], coeffs: [i64; 3]) -> Option<Unit> {
    let u = poly_matrix(c, coeffs);
    if u.determinant().ok()?.abs() != Rat::one() {
        return None;
    }
    let emb: Vec<f64> = lambdas.iter().map(|l| coeffs[0] as f64 + coeffs[1] as f64 * l + coeffs[2] as f64 * l * l).collect();
    let power = if emb.iter().all(|x| *x > 0.0) { 1 } else { 2 };
    let logs: Vec<f64> = emb.iter().map(|x| power as f64 * x.abs().ln()).collect();
    Some(Unit { coeffs, power, matrix: u.pow(power), logs: [logs[0], logs[1], logs[2]] })
}

/// The companion unit and the first independent unit among small
/// polynomials in `x`, in lexicographic order of coefficients.
fn find_units(c: &Mat, lambdas: &[f64]) -> Vec<Unit> {
    let first = make_unit(c, lambdas, [0, 1, 0]).expect("x is a unit when the constant term is +-1");
    let mut out = vec![first];
    'search: for a in -3i64..=3 {
        for b in -3i64..=3 {
            for cc in -3i64..=3 {
                if let Some(u) = make_unit(c, lambdas, [a, b, cc]) {
                    let l = &out[0].logs;
                    let minor = l[0] * u.logs[1] - l[1] * u.logs[0];
                    if minor.abs() > 1e-6 {
                        out.push(u);
                        break 'search;
                    }
                }
            }
        }
    }
    out
}

/// Torus coordinates of a diagonal action with the given log-eigenvalues,
/// for the derivations `diag(1,-1,0)` and `diag(0,1,-1)`.
fn torus_coords(logs: &[f64; 3]) -> [f64; 2] {
    [logs[0], -logs[2]]
}

pub fn dirichlet_lattice(p: &UnitCubic) -> Result<LatticeReport, LatticeError> {
    let c = p.poly.companion();
    let det = c.determinant().expect("square");
    let lambdas = numeric::real_roots(&p.poly);
    let embedding: Vec<Vec<f64>> = lambdas.iter().map(|l| vec![1.0, *l, l * l]).collect();
    let e = DMatrix::from_fn(3, 3, |i, j| embedding[i][j]);
    let sv = e.singular_values();
    let condition_number = sv.max() / sv.min();
    if !condition_number.is_finite() || condition_number > MAX_CONDITION {
        return Err(LatticeError::IllConditioned(condition_number));
    }
    let units = find_units(&c, &lambdas);
    let log_sum = units[0].logs.iter().sum();
    let model = GroupModel::for_label(&GeometryLabel::Named(Named::A533)).expect("torus model");
    let mut generators: Vec<Vec<f64>> = (0..3).map(|j| vec![e[(0, j)], e[(1, j)], e[(2, j)], 0.0, 0.0]).collect();
    for u in &units {
        let t = torus_coords(&u.logs);
        generators.push(vec![0.0, 0.0, 0.0, t[0], t[1]]);
    }
    let gens: Vec<GroupElement> = generators.iter().map(|g| model.make(g.clone()).expect("five coordinates")).collect();

    // t v t^-1 must be the translation by the embedded integer image U v
    let mut relation_residual: f64 = 0.0;
    for (ui, u) in units.iter().enumerate() {
        let t = &gens[3 + ui];
        let ti = model.inv(t).expect("same model");
        for j in 0..3 {
            let conj = model.mul(&model.mul(t, &gens[j]).expect("same model"), &ti).expect("same model");
            let image = u.matrix.col(j);
            for i in 0..3 {
                let expect: f64 = (0..3).map(|k| embedding[i][k] * image[k].to_f64()).sum();
                relation_residual = relation_residual.max((conj.coords[i] - expect).abs());
            }
            relation_residual = relation_residual.max(conj.coords[3].abs()).max(conj.coords[4].abs());
        }
    }

    let (min_displacement, words_checked) = discreteness_proxy(&model, &gens, &units);
    Ok(LatticeReport {
        poly: p.poly.clone(),
        eigenvalue_product: lambdas.iter().product(),
        companion: c,
        det,
        eigenvalues: lambdas,
        embedding,
        condition_number,
        log_sum,
        generators,
        relation_residual,
        discrete: min_displacement > DISCRETENESS_THRESHOLD,
        min_displacement,
        words_checked,
        units,
    })
}

type Abstract = ([i128; 3], Vec<i64>);

/// Enumerates words of length at most [`WORD_LENGTH`], tracking each
/// product both in the model and in the abstract group `Z^3 x| Z^r`.
/// Returns the smallest model displacement of an abstractly nontrivial
/// element and the number of words evaluated.
fn discreteness_proxy(model: &GroupModel, gens: &[GroupElement], units: &[Unit]) -> (f64, usize) {
    let r = units.len();
    let fwd: Vec<Vec<Vec<i128>>> = units.iter().map(|u| int_matrix(&u.matrix)).collect();
    let back: Vec<Vec<Vec<i128>>> = units
        .iter()
        .map(|u| int_matrix(&u.matrix.inverse().expect("unimodular")))
        .collect();
    // letters: (abstract generator, model element)
    let mut letters: Vec<(Abstract, GroupElement)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        for sign in [1i64, -1] {
            let el = if sign == 1 { g.clone() } else { model.inv(g).expect("same model") };
            let ab = if i < 3 {
                let mut w = [0i128; 3];
                w[i] = sign as i128;
                (w, vec![0; r])
            } else {
                let mut k = vec![0; r];
                k[i - 3] = sign;
                ([0; 3], k)
            };
            letters.push((ab, el));
        }
    }
    let act = |k: &[i64], w: &[i128; 3]| -> [i128; 3] {
        let mut v = *w;
        for (a, &ka) in k.iter().enumerate().rev() {
            let m = if ka >= 0 { &fwd[a] } else { &back[a] };
            for _ in 0..ka.unsigned_abs() {
                v = apply(m, &v);
            }
        }
        v
    };
    let mut seen: HashSet<Abstract> = HashSet::new();
    let mut frontier: Vec<(Abstract, GroupElement)> = vec![(([0; 3], vec![0; r]), model.identity())];
    let mut words = 0;
    let mut min_disp = f64::INFINITY;
    for _ in 0..WORD_LENGTH {
        let mut next = Vec::new();
        for (ab, el) in &frontier {
            for (lab, lel) in &letters {
                words += 1;
                let moved = act(&ab.1, &lab.0);
                let w = [ab.0[0] + moved[0], ab.0[1] + moved[1], ab.0[2] + moved[2]];
                let k: Vec<i64> = ab.1.iter().zip(&lab.1).map(|(a, b)| a + b).collect();
                let prod = model.mul(el, lel).expect("same model");
                let key = (w, k);
                let trivial = key.0 == [0; 3] && key.1.iter().all(|x| *x == 0);
                if !trivial {
                    let disp = prod.coords.iter().map(|x| x * x).sum::<f64>().sqrt();
                    min_disp = min_disp.min(disp);
                }
                if seen.insert(key.clone()) {
                    next.push((key, prod));
                }
            }
        }
        frontier = next;
    }
    (min_disp, words)
}

/// Target of [`sol_family_model_check`]: a normalized log-root vector with
/// 3 entries (cubic, `Sol^4 x E`) or 4 entries (quartic, `R^4 x| R`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Target(pub Vec<f64>);

impl Target {
    pub fn new(v: Vec<f64>) -> Result<Target, LatticeError> {
        if !(v.len() == 3 || v.len() == 4) {
            return Err(LatticeError::MalformedTarget(format!("{} entries, expected 3 or 4", v.len())));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(LatticeError::MalformedTarget("non-finite entry".into()));
        }
        if (v[0] - 1.0).abs() > MATCH_TOL || v.windows(2).any(|w| w[0] < w[1] - MATCH_TOL) {
            return Err(LatticeError::MalformedTarget("expected descending entries starting at 1".into()));
        }
        if v.iter().sum::<f64>().abs() > 1e-6 {
            return Err(LatticeError::MalformedTarget("entries must sum to 0".into()));
        }
        Ok(Target(v))
    }

    /// Accepts a bare JSON array or an object carrying `normalized_roots`
    /// (either an array or `{"values": [...]}`), as printed by `classify`.
    pub fn from_json(v: &serde_json::Value) -> Result<Target, LatticeError> {
        let bad = || LatticeError::MalformedTarget(v.to_string());
        let arr = match v {
            serde_json::Value::Array(_) => v,
            serde_json::Value::Object(o) => {
                let inner = o
                    .get("normalized_roots")
                    .or_else(|| o.get("params").and_then(|p| p.get("normalized_roots")))
                    .ok_or_else(bad)?;
                inner.get("values").unwrap_or(inner)
            }
            _ => return Err(bad()),
        };
        let xs: Vec<f64> = arr
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_f64().ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        Target::new(xs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// `(m, n)` for `x^3 - m x^2 + n x - 1`, `(m, n, p)` for `x^4 - m x^3 + n x^2 - p x + 1`.
    pub coeffs: Vec<i64>,
    pub poly: Poly,
    pub normalized_logs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub verdict: &'static str,
    pub witness: Option<Witness>,
    pub candidates: usize,
}

fn family_poly(coeffs: &[i64]) -> Poly {
    match coeffs {
        [m, n] => Poly::from_ints(&[-1, *n, -m, 1]),
        [m, n, p] => Poly::from_ints(&[1, -p, *n, -m, 1]),
        _ => unreachable!("two or three coefficients"),
    }
}

/// Reciprocal polynomials have negated log-roots and the same normalized
/// vector; keep the member whose leading coefficient is at least its mirror.
fn canonical(coeffs: &[i64]) -> bool {
    coeffs[0] >= coeffs[coeffs.len() - 1]
}

/// Exhaustive search over positive integer coefficients up to `bound` for
/// a unimodular integer matrix whose normalized log-roots equal `target`.
/// The lexicographically smallest witness is returned.
pub fn sol_family_model_check(target: &Target, bound: i64) -> Result<SearchReport, LatticeError> {
    if !(1..=MAX_SEARCH_BOUND).contains(&bound) {
        return Err(LatticeError::BadBound(bound));
    }
    let arity = target.0.len() - 1;
    let tuples: Vec<Vec<i64>> = match arity {
        2 => (1..=bound).flat_map(|m| (1..=bound).map(move |n| vec![m, n])).collect(),
        _ => (1..=bound)
            .flat_map(|m| (1..=bound).flat_map(move |n| (1..=bound).map(move |p| vec![m, n, p])))
            .collect(),
    };
    let candidates = tuples.len();
    let mut hits: Vec<Witness> = tuples
        .into_par_iter()
        .filter(|c| canonical(c))
        .filter_map(|coeffs| {
            let poly = family_poly(&coeffs);
            let logs = positive_log_roots(&poly)?;
            let normalized = normalize_real_f64(&logs);
            let close = normalized.iter().zip(&target.0).all(|(a, b)| (a - b).abs() <= MATCH_TOL);
            close.then_some(Witness { coeffs, poly, normalized_logs: normalized })
        })
        .collect();
    hits.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    let witness = hits.into_iter().next();
    Ok(SearchReport { verdict: if witness.is_some() { "witness-found" } else { "none-in-bound" }, witness, candidates })
}

/// `SL2~ x_alpha S^3` admits compact quotients exactly when `alpha` is rational.
pub fn sl2_s3_compact_quotients(alpha: &Alpha) -> bool {
    matches!(alpha, Alpha::Rational(_))
}

/// Target for a classified family label, if it has one.
pub fn target_of(label: &GeometryLabel) -> Option<Target> {
    match label {
        GeometryLabel::Sol5Diag(r) | GeometryLabel::Sol4mnxE(r) => Target::new(r.values.clone()).ok(),
        _ => None,
    }
}

/// The torus algebra the lattice lives in.
pub fn torus_algebra() -> crate::liealg::LieAlgebra {
    atlas::build_algebra(&GeometryLabel::Named(Named::A533)).expect("constructible")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn unit_check_examples() {
        assert!(unit_cubic_check(&poly("x^3+x^2-2x-1")).is_ok());
        assert_eq!(
            unit_cubic_check(&poly("x^3-2")),
            Err(LatticeError::Rejected(vec![Rejection::NotTotallyReal, Rejection::NotUnit]))
        );
        let Err(LatticeError::Rejected(r)) = unit_cubic_check(&poly("x^3-x")) else { panic!() };
        assert!(r.contains(&Rejection::Reducible));
        assert!(matches!(unit_cubic_check(&poly("x^2-1")), Err(LatticeError::Rejected(_))));
    }

    #[test]
    fn heptagonal_lattice() {
        let u = unit_cubic_check(&poly("x^3+x^2-2x-1")).unwrap();
        let r = dirichlet_lattice(&u).unwrap();
        assert_eq!(r.det, Rat::one());
        assert!((r.eigenvalue_product - 1.0).abs() < 1e-10);
        assert!(r.log_sum.abs() < 1e-10);
        assert!(r.relation_residual < 1e-9, "{}", r.relation_residual);
        assert_eq!(r.units.len(), 2);
        assert!(r.discrete);
        assert!(r.min_displacement > 0.1);
    }

    #[test]
    fn cubic_witness() {
        let logs = positive_log_roots(&poly("x^3-6x^2+5x-1")).unwrap();
        let t = Target::new(normalize_real_f64(&logs)).unwrap();
        let rep = sol_family_model_check(&t, 10).unwrap();
        assert_eq!(rep.witness.unwrap().coeffs, vec![6, 5]);
    }

    #[test]
    fn irrational_target_has_no_witness() {
        let t = Target::new(vec![1.0, 2f64.sqrt() - 1.0, -2f64.sqrt()]).unwrap();
        assert_eq!(sol_family_model_check(&t, 12).unwrap().verdict, "none-in-bound");
    }

    #[test]
    fn malformed_targets() {
        assert!(Target::new(vec![1.0, 0.5]).is_err());
        assert!(Target::new(vec![0.5, 0.2, -0.7]).is_err());
        assert!(Target::from_json(&serde_json::json!({"x": 1})).is_err());
        assert!(Target::from_json(&serde_json::json!([1.0, 0.5, -1.5])).is_ok());
        assert!(sol_family_model_check(&Target(vec![1.0, 0.5, -1.5]), 31).is_err());
    }

    #[test]
    fn alpha_predicate() {
        assert!(sl2_s3_compact_quotients(&Alpha::Rational(Rat::new(3, 4))));
        assert!(!sl2_s3_compact_quotients(&Alpha::Irrational));
    }
}
