use std::cmp::Ordering;

use serde::Serialize;

use super::label::{GeometryLabel, LabelError, Named};
use crate::atlas::Factor;
use crate::exact::{Poly, Rat};
use crate::numeric;

/// Tolerance for comparing normalized root data that is not exact.
pub const ROOT_TOL: f64 = 1e-9;

/// Normalized root data of a diagonalizable action, scaled so the largest
/// real root is 1. Exact values are kept whenever every entry is rational.
#[derive(Debug, Clone, Serialize)]
pub struct RootData {
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Rat>>,
}

impl PartialEq for RootData {
    fn eq(&self, other: &RootData) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => {
                self.values.len() == other.values.len()
                    && self.values.iter().zip(&other.values).all(|(a, b)| (a - b).abs() <= ROOT_TOL)
            }
        }
    }
}

impl RootData {
    pub fn from_exact(v: Vec<Rat>) -> RootData {
        RootData { values: v.iter().map(Rat::to_f64).collect(), exact: Some(v) }
    }

    pub fn from_f64(v: Vec<f64>) -> RootData {
        RootData { values: v, exact: None }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn entry(&self, i: usize) -> String {
        match &self.exact {
            Some(e) => e[i].to_string(),
            None => fmt_f64(self.values[i]),
        }
    }

    /// Entries after the leading 1, comma separated.
    pub fn format_tail(&self) -> String {
        (1..self.len()).map(|i| self.entry(i)).collect::<Vec<_>>().join(",")
    }

    pub fn format_all(&self) -> String {
        (0..self.len()).map(|i| self.entry(i)).collect::<Vec<_>>().join(",")
    }

    /// `1,r,re+-i*im` for the complex-pair family.
    pub fn format_complex(&self) -> String {
        format!("{},{},{}+-i*{}", self.entry(0), self.entry(1), self.entry(2), self.entry(3))
    }

    pub fn parse_values(s: &str) -> Option<RootData> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let exact: Option<Vec<Rat>> = parts.iter().map(|p| p.parse::<Rat>().ok()).collect();
        match exact {
            Some(e) => Some(RootData::from_exact(e)),
            None => parts
                .iter()
                .map(|p| p.parse::<f64>().ok().filter(|x| x.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .map(RootData::from_f64),
        }
    }

    pub fn parse_complex(s: &str) -> Option<RootData> {
        let (head, im) = s.split_once("+-i*")?;
        RootData::parse_values(&format!("{head},{im}"))
    }
}

fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

/// Root pattern of the complement action on the nilradical `R^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootPattern {
    /// Four distinct nonzero real roots.
    DistinctReal,
    /// Two distinct nonzero real roots and a complex pair.
    RealAndComplex,
    /// `(a, a, -a, -a)`.
    Repeated,
    /// Three distinct nonzero real roots and one zero.
    OneZero,
    /// `(a, a, -2a, 0)`.
    DoubleAndZero,
    /// `(a, -a, 0, 0)`.
    TwoZeros,
    /// Anything else, including non-unimodular actions.
    Other,
}

impl RootPattern {
    pub fn of(p: &Poly) -> Result<RootPattern, crate::exact::PolyError> {
        if p.degree() != 4 || !p.coeff(3).is_zero() {
            return Ok(RootPattern::Other);
        }
        let sig = p.root_signature()?;
        let s = p.squarefree_part()?;
        let perfect_square = &s * &s == p.monic();
        Ok(match (sig.zero_mult, sig.distinct, sig.complex_pairs) {
            (0, 4, 0) => RootPattern::DistinctReal,
            (0, 4, 1) => RootPattern::RealAndComplex,
            (0, 2, 0) if perfect_square => RootPattern::Repeated,
            (1, 4, 0) => RootPattern::OneZero,
            (1, 3, 0) => RootPattern::DoubleAndZero,
            (2, 3, 0) => RootPattern::TwoZeros,
            _ => RootPattern::Other,
        })
    }

    /// The geometry a pattern names, given the normalized data.
    pub fn label(self, normalized: &RootData) -> Option<GeometryLabel> {
        match self {
            RootPattern::DistinctReal => Some(GeometryLabel::Sol5Diag(normalized.clone())),
            RootPattern::RealAndComplex => Some(GeometryLabel::Sol5Complex(normalized.clone())),
            RootPattern::Repeated => Some(GeometryLabel::Named(Named::A57Repeated)),
            RootPattern::OneZero => Some(GeometryLabel::Sol4mnxE(drop_zeros(normalized))),
            RootPattern::DoubleAndZero => Some(GeometryLabel::product(vec![Factor::Sol4Zero, Factor::E(1)])),
            RootPattern::TwoZeros => Some(GeometryLabel::product(vec![Factor::Sol3, Factor::E(2)])),
            RootPattern::Other => None,
        }
    }
}

fn drop_zeros(r: &RootData) -> RootData {
    match &r.exact {
        Some(e) => RootData::from_exact(e.iter().filter(|x| !x.is_zero()).cloned().collect()),
        None => RootData::from_f64(r.values.iter().copied().filter(|x| x.abs() > ROOT_TOL).collect()),
    }
}

/// Roots of a quartic action, exact where rational.
struct ActionRoots {
    real: Vec<f64>,
    real_exact: Option<Vec<Rat>>,
    /// Complex pair `re +- i im` with `im > 0`, if any.
    pair: Option<(f64, f64)>,
    pair_exact: Option<(Rat, Rat)>,
}

fn roots_of(p: &Poly) -> ActionRoots {
    let rational = p.rational_roots().unwrap_or_default();
    let numeric = numeric::poly_roots(p);
    let pair = numeric.iter().find(|z| z.im > 0.0).map(|z| (z.re, z.im));
    if rational.len() == p.degree() {
        return ActionRoots {
            real: rational.iter().map(Rat::to_f64).collect(),
            real_exact: Some(rational),
            pair: None,
            pair_exact: None,
        };
    }
    let real: Vec<f64> = numeric.iter().filter(|z| z.im == 0.0).map(|z| z.re).collect();
    let mut pair_exact = None;
    let mut real_exact = None;
    if pair.is_some() && rational.len() + 2 == p.degree() {
        let lin = rational.iter().fold(Poly::one(), |acc, r| &acc * &Poly::new(vec![-r, Rat::one()]));
        let q = p.monic().div_rem(&lin).0;
        let re = -(q.coeff(1) / Rat::int(2));
        let im2 = q.coeff(0) - &re * &re;
        pair_exact = rat_sqrt(&im2).map(|im| (re, im));
        real_exact = Some(rational);
    }
    ActionRoots { real, real_exact, pair, pair_exact }
}

fn rat_sqrt(q: &Rat) -> Option<Rat> {
    if q.signum() < 0 {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rat::from_bigint(n) / Rat::from_bigint(d))
}

/// Lexicographic comparison with a small tie tolerance.
fn lex_f64(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-12 {
            return x.total_cmp(y);
        }
    }
    Ordering::Equal
}

/// Scale so that the largest real root is 1, using either the largest root
/// (positive scale) or the smallest (negative scale), and keep the
/// lexicographically larger result. Real roots come first, sorted
/// descending, followed by `tail` (complex data, sign-fixed by `fix_tail`).
fn normalize_f64(real: &[f64], tail: &[f64]) -> Vec<f64> {
    let max = real.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = real.iter().copied().fold(f64::INFINITY, f64::min);
    let mut best: Option<Vec<f64>> = None;
    for d in [max, min] {
        if (d == max && d > 0.0) || (d == min && d < 0.0) {
            let mut v: Vec<f64> = real.iter().map(|x| x / d).collect();
            v.sort_by(|a, b| b.total_cmp(a));
            v.extend(fix_tail(tail.iter().map(|x| x / d).collect()));
            if best.as_ref().is_none_or(|b| lex_f64(&v, b) == Ordering::Greater) {
                best = Some(v);
            }
        }
    }
    best.unwrap_or_default()
}

fn normalize_exact(real: &[Rat], tail: &[Rat]) -> Vec<Rat> {
    let max = real.iter().max().cloned().unwrap_or_else(Rat::zero);
    let min = real.iter().min().cloned().unwrap_or_else(Rat::zero);
    let mut best: Option<Vec<Rat>> = None;
    for (d, ok) in [(&max, max.signum() > 0), (&min, min.signum() < 0)] {
        if ok {
            let mut v: Vec<Rat> = real.iter().map(|x| x / d).collect();
            v.sort_by(|a, b| b.cmp(a));
            let mut t: Vec<Rat> = tail.iter().map(|x| x / d).collect();
            if let Some(last) = t.last_mut() {
                *last = last.abs();
            }
            v.extend(t);
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
    }
    best.unwrap_or_default()
}

/// The imaginary part is only defined up to sign.
fn fix_tail(mut t: Vec<f64>) -> Vec<f64> {
    if let Some(last) = t.last_mut() {
        *last = last.abs();
    }
    t
}

/// Normalized root data of the characteristic polynomial of an action.
pub fn normalized_roots(p: &Poly) -> RootData {
    let r = roots_of(p);
    match (r.pair, r.pair_exact) {
        (None, _) => match r.real_exact {
            Some(e) => RootData::from_exact(normalize_exact(&e, &[])),
            None => RootData::from_f64(normalize_f64(&r.real, &[])),
        },
        (Some((re, im)), exact) => match (r.real_exact, exact) {
            (Some(e), Some((ere, eim))) => RootData::from_exact(normalize_exact(&e, &[ere, eim])),
            _ => RootData::from_f64(normalize_f64(&r.real, &[re, im])),
        },
    }
}

/// Label for a parsed `A5,7^{...}` vector (leading 1 included).
pub(super) fn diag_label(r: &RootData) -> Option<GeometryLabel> {
    if r.len() != 4 || r.values.iter().sum::<f64>().abs() > ROOT_TOL {
        return None;
    }
    let p = match &r.exact {
        Some(e) => Poly::from_roots(e),
        None => {
            let distinct = (0..4).all(|i| (0..i).all(|j| (r.values[i] - r.values[j]).abs() > ROOT_TOL));
            let nonzero = r.values.iter().all(|x| x.abs() > ROOT_TOL);
            return (distinct && nonzero).then(|| GeometryLabel::Sol5Diag(RootData::from_f64(normalize_f64(&r.values, &[]))));
        }
    };
    let pattern = RootPattern::of(&p).ok()?;
    match pattern {
        RootPattern::DistinctReal | RootPattern::Repeated => pattern.label(&normalized_roots(&p)),
        _ => None,
    }
}

/// Label for a parsed `Sol^4_{m,n} x E (...)` root triple.
pub(super) fn sol4_label(r: &RootData) -> Option<GeometryLabel> {
    if r.len() != 3 || r.values.iter().sum::<f64>().abs() > ROOT_TOL {
        return None;
    }
    let distinct = (0..3).all(|i| (0..i).all(|j| (r.values[i] - r.values[j]).abs() > ROOT_TOL));
    let nonzero = r.values.iter().all(|x| x.abs() > ROOT_TOL);
    if !(distinct && nonzero) {
        return None;
    }
    Some(GeometryLabel::Sol4mnxE(match &r.exact {
        Some(e) => RootData::from_exact(normalize_exact(e, &[])),
        None => RootData::from_f64(normalize_f64(&r.values, &[])),
    }))
}

/// `Sol^4_{m,n} x E` from the integer cubic `x^3 - m x^2 + n x - 1`.
pub fn sol4_from_mn(m: i64, n: i64) -> Result<GeometryLabel, LabelError> {
    let p = Poly::from_ints(&[-1, n, -m, 1]);
    let logs = positive_log_roots(&p)
        .ok_or_else(|| LabelError::OutOfRange(format!("x^3 - {m}x^2 + {n}x - 1 needs three distinct positive roots other than 1")))?;
    Ok(GeometryLabel::Sol4mnxE(RootData::from_f64(normalize_f64(&logs, &[]))))
}

/// Logarithms of the roots of `p` when all roots are real, positive,
/// distinct and different from 1 (checked exactly).
pub fn positive_log_roots(p: &Poly) -> Option<Vec<f64>> {
    use crate::exact::Bound;
    let sig = p.root_signature().ok()?;
    if !sig.all_real || sig.distinct != p.degree() || p.eval(&Rat::one()).is_zero() {
        return None;
    }
    let positive = p.sturm_count(&Bound::Finite(Rat::zero()), &Bound::PosInf).ok()?;
    if positive != p.degree() {
        return None;
    }
    Some(numeric::real_roots(p).iter().map(|x| x.ln()).collect())
}

/// Normalize an arbitrary real vector with the same convention.
pub fn normalize_real_f64(v: &[f64]) -> Vec<f64> {
    normalize_f64(v, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(xs: &[(i64, i64)]) -> Vec<Rat> {
        xs.iter().map(|&(p, q)| Rat::new(p, q)).collect()
    }

    #[test]
    fn divide_by_largest() {
        let p = Poly::from_roots(&rats(&[(1, 1), (2, 1), (3, 1), (-6, 1)]));
        let r = normalized_roots(&p);
        assert_eq!(r.exact, Some(rats(&[(1, 1), (2, 3), (1, 3), (-2, 1)])));
        assert_eq!(RootPattern::of(&p).unwrap(), RootPattern::DistinctReal);
    }

    #[test]
    fn invariant_under_negative_scaling() {
        let p = Poly::from_roots(&rats(&[(1, 1), (2, 1), (3, 1), (-6, 1)]));
        let q = Poly::from_roots(&rats(&[(-5, 2), (-5, 1), (-15, 2), (15, 1)]));
        assert_eq!(normalized_roots(&p), normalized_roots(&q));
    }

    #[test]
    fn patterns() {
        let pat = |xs: &[i64]| RootPattern::of(&Poly::from_roots(&xs.iter().map(|&x| Rat::int(x)).collect::<Vec<_>>())).unwrap();
        assert_eq!(pat(&[1, -1, 0, 0]), RootPattern::TwoZeros);
        assert_eq!(pat(&[1, 1, -1, -1]), RootPattern::Repeated);
        assert_eq!(pat(&[1, 2, -3, 0]), RootPattern::OneZero);
        assert_eq!(pat(&[1, 1, -2, 0]), RootPattern::DoubleAndZero);
        assert_eq!(pat(&[1, 1, 1, -3]), RootPattern::Other);
        assert_eq!(pat(&[1, 2, 3, 4]), RootPattern::Other);
        // (x - 1)(x + 1)(x^2 + 1)
        let c = &Poly::from_ints(&[-1, 0, 1]) * &Poly::from_ints(&[1, 0, 1]);
        assert_eq!(RootPattern::of(&c).unwrap(), RootPattern::RealAndComplex);
        let r = normalized_roots(&c);
        assert_eq!(r.exact, Some(rats(&[(1, 1), (-1, 1), (0, 1), (1, 1)])));
    }

    #[test]
    fn irrational_roots_are_numeric() {
        // x^4 - 5x^2 + 5: roots +-sqrt((5 +- sqrt 5)/2)
        let p = Poly::from_ints(&[5, 0, -5, 0, 1]);
        let r = normalized_roots(&p);
        assert!(r.exact.is_none());
        assert!((r.values[0] - 1.0).abs() < 1e-15);
        assert!((r.values.iter().sum::<f64>()).abs() < 1e-12);
    }

    #[test]
    fn labels_from_strings() {
        let l: GeometryLabel = "A5,7^{2/3,1/3,-2}".parse().unwrap();
        assert_eq!(l.to_string(), "A5,7^{2/3,1/3,-2}");
        let r: GeometryLabel = "A5,7^{1,-1,-1}".parse().unwrap();
        assert_eq!(r, GeometryLabel::Named(Named::A57Repeated));
        let s = sol4_from_mn(6, 5).unwrap();
        assert!(matches!(s, GeometryLabel::Sol4mnxE(_)));
        assert!(sol4_from_mn(3, 3).is_err());
    }
}
