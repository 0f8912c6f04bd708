use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::roots::RootData;
use crate::atlas::{Factor, ProductSpec};
use crate::exact::Rat;

/// The non-product geometries that are not members of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Named {
    E5,
    S5,
    H5,
    Sl3OverSo3,
    Su3OverSo3,
    T1H3,
    T1E12,
    U21OverU2,
    Heis3xS3,
    Heis3xSl2,
    R2xSl2,
    F5Zero,
    F5One,
    A51,
    A52,
    A53,
    A54,
    A55,
    A56,
    A57Repeated,
    A58,
    A59,
    A515,
    A520,
    A533,
}

impl Named {
    pub const ALL: [Named; 25] = [
        Named::E5,
        Named::S5,
        Named::H5,
        Named::Sl3OverSo3,
        Named::Su3OverSo3,
        Named::T1H3,
        Named::T1E12,
        Named::U21OverU2,
        Named::Heis3xS3,
        Named::Heis3xSl2,
        Named::R2xSl2,
        Named::F5Zero,
        Named::F5One,
        Named::A51,
        Named::A52,
        Named::A53,
        Named::A54,
        Named::A55,
        Named::A56,
        Named::A57Repeated,
        Named::A58,
        Named::A59,
        Named::A515,
        Named::A520,
        Named::A533,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Named::E5 => "E^5",
            Named::S5 => "S^5",
            Named::H5 => "H^5",
            Named::Sl3OverSo3 => "SL(3,R)/SO(3)",
            Named::Su3OverSo3 => "SU(3)/SO(3)",
            Named::T1H3 => "T^1(H^3)",
            Named::T1E12 => "T^1(E^{1,2})",
            Named::U21OverU2 => "U(2,1)/U(2)~",
            Named::Heis3xS3 => "Heis3 x_R S^3",
            Named::Heis3xSl2 => "Heis3 x_R SL2~",
            Named::R2xSl2 => "R^2 x| SL2~",
            Named::F5Zero => "F^5_0",
            Named::F5One => "F^5_1",
            Named::A51 => "A5,1",
            Named::A52 => "A5,2",
            Named::A53 => "A5,3",
            Named::A54 => "A5,4",
            Named::A55 => "A5,5",
            Named::A56 => "A5,6",
            Named::A57Repeated => "A5,7^{1,-1,-1}",
            Named::A58 => "A5,8^{-1}",
            Named::A59 => "A5,9^{-1,-1}",
            Named::A515 => "A5,15^{-1}",
            Named::A520 => "A5,20^{0}",
            Named::A533 => "A5,33^{-1,-1}",
        }
    }

    /// Alternative names accepted by the parser.
    pub fn aliases(self) -> &'static [&'static str] {
        match self {
            Named::A51 => &["R^4 x| (x^2, x^2)"],
            Named::A52 => &["R^4 x| x^4"],
            Named::A53 => &["(R x Heis3) x| (x3 -> x2 -> y)"],
            Named::A54 => &["Heis5"],
            Named::A55 => &["Nil^4 x| (3 -> 1)"],
            Named::A56 => &["Nil^4 x| (4 -> 3 -> 1)"],
            Named::A57Repeated => &["R^4 x| (x-1, x-1, x+1, x+1)"],
            Named::A58 => &["R^4 x| (x^2, x-1, x+1)"],
            Named::A59 => &["R^4 x| ((x-1)^2, x+1, x+1)"],
            Named::A515 => &["R^4 x| ((x-1)^2, (x+1)^2)"],
            Named::A520 => &["(R x Heis3) x| (Lorentz, y -> x1)"],
            Named::A533 => &["R^3 x| {xyz=1}^0"],
            Named::T1H3 => &["PSL(2,C)/SO(2)"],
            Named::T1E12 => &["R^3 x| SO(1,2)^0/SO(2)"],
            _ => &[],
        }
    }
}

/// Twisting parameter of the associated-bundle families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Alpha {
    Rational(Rat),
    /// Any irrational value; only its irrationality matters here.
    Irrational,
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Rational(q) => write!(f, "{q}"),
            Alpha::Irrational => write!(f, "irr"),
        }
    }
}

impl FromStr for Alpha {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Alpha, LabelError> {
        match s.trim() {
            "irr" | "irrational" => Ok(Alpha::Irrational),
            t => t.parse().map(Alpha::Rational).map_err(|_| LabelError::Parse(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LabelError {
    #[error("unknown geometry label {0:?}")]
    Parse(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// A maximal model geometry of dimension 5.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometryLabel {
    Named(Named),
    Product(ProductSpec),
    /// `L(a;1) x_{S^1} L(b;1)`, `a <= b` coprime.
    LensBundle { a: u64, b: u64 },
    /// `SL2~ x_alpha S^3`, `alpha > 0`.
    Sl2xS3(Alpha),
    /// `SL2~ x_alpha SL2~`, `0 < alpha <= 1`.
    Sl2xSl2(Alpha),
    /// `R^4 x| R` with four distinct real roots.
    Sol5Diag(RootData),
    /// `R^4 x| R` with two distinct real roots and a complex pair.
    Sol5Complex(RootData),
    /// `Sol^4_{m,n} x E`, by its normalized nonzero roots.
    Sol4mnxE(RootData),
}

impl GeometryLabel {
    pub fn lens_bundle(a: u64, b: u64) -> Result<GeometryLabel, LabelError> {
        if a == 0 || a > b || a.gcd(&b) != 1 {
            return Err(LabelError::OutOfRange(format!("L({a};1) x L({b};1) needs 0 < a <= b coprime")));
        }
        Ok(GeometryLabel::LensBundle { a, b })
    }

    pub fn sl2_s3(alpha: Alpha) -> Result<GeometryLabel, LabelError> {
        if let Alpha::Rational(q) = &alpha {
            if q.signum() <= 0 {
                return Err(LabelError::OutOfRange(format!("alpha = {q} must be positive")));
            }
        }
        Ok(GeometryLabel::Sl2xS3(alpha))
    }

    pub fn sl2_sl2(alpha: Alpha) -> Result<GeometryLabel, LabelError> {
        if let Alpha::Rational(q) = &alpha {
            if q.signum() <= 0 || q > &Rat::one() {
                return Err(LabelError::OutOfRange(format!("alpha = {q} must lie in (0, 1]")));
            }
        }
        Ok(GeometryLabel::Sl2xSl2(alpha))
    }

    pub fn product(factors: Vec<Factor>) -> GeometryLabel {
        GeometryLabel::Product(ProductSpec::new(factors).expect("valid built-in product"))
    }

    /// Parameters as JSON, empty for individual geometries.
    pub fn params(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            GeometryLabel::Named(_) | GeometryLabel::Product(_) => json!({}),
            GeometryLabel::LensBundle { a, b } => json!({ "a": a, "b": b }),
            GeometryLabel::Sl2xS3(al) | GeometryLabel::Sl2xSl2(al) => json!({ "alpha": al.to_string() }),
            GeometryLabel::Sol5Diag(r) | GeometryLabel::Sol5Complex(r) | GeometryLabel::Sol4mnxE(r) => {
                json!({ "normalized_roots": r })
            }
        }
    }
}

impl fmt::Display for GeometryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryLabel::Named(n) => write!(f, "{}", n.name()),
            GeometryLabel::Product(p) => write!(f, "{p}"),
            GeometryLabel::LensBundle { a, b } => write!(f, "L({a};1) x_S1 L({b};1)"),
            GeometryLabel::Sl2xS3(al) => write!(f, "SL2~ x_{{{al}}} S^3"),
            GeometryLabel::Sl2xSl2(al) => write!(f, "SL2~ x_{{{al}}} SL2~"),
            GeometryLabel::Sol5Diag(r) => write!(f, "A5,7^{{{}}}", r.format_tail()),
            GeometryLabel::Sol5Complex(r) => write!(f, "A5,7^{{1,-1-a,-1+a}} ({})", r.format_complex()),
            GeometryLabel::Sol4mnxE(r) => write!(f, "Sol^4_{{m,n}} x E ({})", r.format_all()),
        }
    }
}

impl Serialize for GeometryLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('×', "x")
}

fn split_args(inner: &str) -> Vec<&str> {
    inner.split(',').map(str::trim).collect()
}

impl FromStr for GeometryLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<GeometryLabel, LabelError> {
        let t = squash(s);
        let bad = || LabelError::Parse(s.to_string());
        for n in Named::ALL {
            if squash(n.name()) == t || n.aliases().iter().any(|a| squash(a) == t) {
                return Ok(GeometryLabel::Named(n));
            }
        }
        for p in crate::atlas::enumerate_products() {
            if squash(&p.to_string()) == t {
                return Ok(GeometryLabel::Product(p));
            }
        }
        if let Some(rest) = t.strip_prefix("L(") {
            let (a, rest) = rest.split_once(";1)x_S1L(").ok_or_else(bad)?;
            let b = rest.strip_suffix(";1)").ok_or_else(bad)?;
            let a: u64 = a.parse().map_err(|_| bad())?;
            let b: u64 = b.parse().map_err(|_| bad())?;
            return GeometryLabel::lens_bundle(a, b);
        }
        if let Some(rest) = t.strip_prefix("SL2~x_{") {
            let (al, tail) = rest.split_once('}').ok_or_else(bad)?;
            let al: Alpha = al.parse()?;
            return match tail {
                "S^3" => GeometryLabel::sl2_s3(al),
                "SL2~" => GeometryLabel::sl2_sl2(al),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = t.strip_prefix("A5,7^{1,-1-a,-1+a}(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let r = RootData::parse_complex(inner).ok_or_else(bad)?;
            return Ok(GeometryLabel::Sol5Complex(r));
        }
        if let Some(rest) = t.strip_prefix("A5,7^{") {
            let inner = rest.strip_suffix('}').ok_or_else(bad)?;
            let r = RootData::parse_values(&format!("1,{inner}")).ok_or_else(bad)?;
            return super::roots::diag_label(&r).ok_or_else(bad);
        }
        if let Some(rest) = t.strip_prefix("Sol^4_{m,n}xE(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let r = RootData::parse_values(inner).ok_or_else(bad)?;
            return super::roots::sol4_label(&r).ok_or_else(bad);
        }
        if let Some(rest) = t.strip_prefix("Sol^4_{") {
            // integer middle coefficients of the cubic x^3 - m x^2 + n x - 1
            let inner = rest.strip_suffix("}xE").ok_or_else(bad)?;
            let mn = split_args(inner);
            if mn.len() != 2 {
                return Err(bad());
            }
            let m: i64 = mn[0].parse().map_err(|_| bad())?;
            let n: i64 = mn[1].parse().map_err(|_| bad())?;
            return super::roots::sol4_from_mn(m, n);
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_round_trip() {
        for n in Named::ALL {
            let l = GeometryLabel::Named(n);
            assert_eq!(l.to_string().parse::<GeometryLabel>().unwrap(), l);
        }
        assert_eq!("Heis5".parse::<GeometryLabel>().unwrap(), GeometryLabel::Named(Named::A54));
    }

    #[test]
    fn family_ranges() {
        assert!(GeometryLabel::lens_bundle(2, 4).is_err());
        assert!(GeometryLabel::lens_bundle(3, 2).is_err());
        assert!(GeometryLabel::lens_bundle(2, 3).is_ok());
        assert!(GeometryLabel::sl2_sl2(Alpha::Rational(Rat::new(3, 2))).is_err());
        assert!(GeometryLabel::sl2_s3(Alpha::Rational(Rat::new(3, 2))).is_ok());
        assert!(GeometryLabel::sl2_s3(Alpha::Rational(Rat::zero())).is_err());
    }

    #[test]
    fn family_strings() {
        let l: GeometryLabel = "L(2;1) x_S1 L(3;1)".parse().unwrap();
        assert_eq!(l, GeometryLabel::LensBundle { a: 2, b: 3 });
        assert_eq!(l.to_string(), "L(2;1) x_S1 L(3;1)");
        let s: GeometryLabel = "SL2~ x_{3/4} S^3".parse().unwrap();
        assert_eq!(s, GeometryLabel::Sl2xS3(Alpha::Rational(Rat::new(3, 4))));
        let i: GeometryLabel = "SL2~ x_{irr} SL2~".parse().unwrap();
        assert_eq!(i, GeometryLabel::Sl2xSl2(Alpha::Irrational));
        let p: GeometryLabel = "Heis3 x E^2".parse().unwrap();
        assert_eq!(p.to_string(), "Heis3 x E^2");
    }
}
