use std::fmt;

use serde::{Serialize, Serializer};

use crate::isotropy::Stabilizer;

/// Lower-dimensional geometries that occur as product factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    S4,
    H4,
    CP2,
    CH2,
    F4,
    Nil4,
    Sol4Zero,
    Sol4One,
    Sol4mn,
    S3,
    H3,
    Heis3,
    Sol3,
    Sl2,
    S2,
    H2,
    /// Flat factor `E^k`.
    E(u8),
}

/// Non-Euclidean factors, in display order within each dimension.
pub const FACTORS_4: [Factor; 9] = [
    Factor::S4,
    Factor::H4,
    Factor::CP2,
    Factor::CH2,
    Factor::F4,
    Factor::Nil4,
    Factor::Sol4Zero,
    Factor::Sol4One,
    Factor::Sol4mn,
];
pub const FACTORS_3: [Factor; 5] = [Factor::S3, Factor::H3, Factor::Heis3, Factor::Sol3, Factor::Sl2];
pub const FACTORS_2: [Factor; 2] = [Factor::S2, Factor::H2];

impl Factor {
    pub fn dim(self) -> usize {
        match self {
            Factor::E(k) => k as usize,
            f if FACTORS_4.contains(&f) => 4,
            f if FACTORS_3.contains(&f) => 3,
            _ => 2,
        }
    }

    pub fn is_euclidean(self) -> bool {
        matches!(self, Factor::E(_))
    }

    /// Whether the factor is itself a Lie group acting simply transitively.
    pub fn is_lie_group(self) -> bool {
        matches!(
            self,
            Factor::E(_)
                | Factor::Nil4
                | Factor::Sol4Zero
                | Factor::Sol4One
                | Factor::Sol4mn
                | Factor::S3
                | Factor::Heis3
                | Factor::Sol3
                | Factor::Sl2
        )
    }

    /// Rank in display order: `E^3` heads the 3-dimensional list and `E^2`
    /// the 2-dimensional one.
    fn display_rank(self) -> usize {
        match self {
            Factor::E(3) => 100,
            Factor::E(2) => 200,
            Factor::E(_) => 300,
            f => {
                let pos = |list: &[Factor]| list.iter().position(|&g| g == f);
                pos(&FACTORS_4)
                    .or_else(|| pos(&FACTORS_3).map(|i| 101 + i))
                    .or_else(|| pos(&FACTORS_2).map(|i| 201 + i))
                    .expect("every factor is catalogued")
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Factor::S4 => "S^4",
            Factor::H4 => "H^4",
            Factor::CP2 => "CP^2",
            Factor::CH2 => "CH^2",
            Factor::F4 => "F^4",
            Factor::Nil4 => "Nil^4",
            Factor::Sol4Zero => "Sol^4_0",
            Factor::Sol4One => "Sol^4_1",
            Factor::Sol4mn => "Sol^4_{m,n}",
            Factor::S3 => "S^3",
            Factor::H3 => "H^3",
            Factor::Heis3 => "Heis3",
            Factor::Sol3 => "Sol^3",
            Factor::Sl2 => "SL2~",
            Factor::S2 => "S^2",
            Factor::H2 => "H^2",
            Factor::E(1) => "E",
            Factor::E(2) => "E^2",
            Factor::E(3) => "E^3",
            Factor::E(4) => "E^4",
            Factor::E(_) => "E^5",
        }
    }
}

/// The three shapes of product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    #[serde(rename = "4x1")]
    FourOne,
    #[serde(rename = "3x2")]
    ThreeTwo,
    #[serde(rename = "2x2x1")]
    TwoTwoOne,
}

/// A product geometry, factors in display order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSpec {
    factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("factor dimensions sum to {0}, not 5")]
    WrongTotal(usize),
    #[error("a product needs at least two factors")]
    TooFewFactors,
    #[error("more than one Euclidean factor")]
    MultipleEuclidean,
}

impl ProductSpec {
    /// Canonicalizes factor order; rejects anything not of the allowed form.
    pub fn new(mut factors: Vec<Factor>) -> Result<ProductSpec, ProductError> {
        let total: usize = factors.iter().map(|f| f.dim()).sum();
        if total != 5 {
            return Err(ProductError::WrongTotal(total));
        }
        if factors.len() < 2 {
            return Err(ProductError::TooFewFactors);
        }
        if factors.iter().filter(|f| f.is_euclidean()).count() > 1 {
            return Err(ProductError::MultipleEuclidean);
        }
        factors.sort_by_key(|f| f.display_rank());
        Ok(ProductSpec { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn shape(&self) -> Shape {
        match self.factors.len() {
            3 => Shape::TwoTwoOne,
            _ if self.factors.iter().any(|f| f.dim() == 4) => Shape::FourOne,
            _ => Shape::ThreeTwo,
        }
    }

    pub fn is_lie_group(&self) -> bool {
        self.factors.iter().all(|f| f.is_lie_group())
    }

    /// Point stabilizer of the product metric, as a node of the inclusion poset.
    pub fn stabilizer(&self) -> Stabilizer {
        use Factor::*;
        let f = &self.factors;
        match f[0] {
            S4 | H4 => Stabilizer::SO4,
            CP2 | CH2 => Stabilizer::U2,
            F4 => Stabilizer::CircleHalf,
            Nil4 | Sol4One | Sol4mn => Stabilizer::Trivial,
            Sol4Zero => Stabilizer::SO2,
            S3 | H3 | E(3) => Stabilizer::SO3xSO2,
            Heis3 | Sl2 => Stabilizer::Torus,
            Sol3 => Stabilizer::SO2,
            _ => Stabilizer::Torus,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim()).collect()
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.factors.iter().map(|x| x.name()).collect();
        write!(f, "{}", names.join(" x "))
    }
}

impl Serialize for ProductSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All products of lower-dimensional geometries with total dimension 5 and
/// at most one Euclidean factor, in display order (4x1, then 3x2, then 2x2x1).
pub fn enumerate_products() -> Vec<ProductSpec> {
    let mut non_flat: Vec<Vec<Factor>> = Vec::new();
    // multisets of non-Euclidean factors of total dimension 2..=5
    let all: Vec<Factor> = FACTORS_4.iter().chain(&FACTORS_3).chain(&FACTORS_2).copied().collect();
    fn extend(all: &[Factor], start: usize, cur: &mut Vec<Factor>, out: &mut Vec<Vec<Factor>>) {
        let d: usize = cur.iter().map(|f| f.dim()).sum();
        if d > 5 {
            return;
        }
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..all.len() {
            cur.push(all[i]);
            extend(all, i, cur, out);
            cur.pop();
        }
    }
    extend(&all, 0, &mut Vec::new(), &mut non_flat);
    let mut out: Vec<ProductSpec> = non_flat
        .into_iter()
        .filter_map(|mut fs| {
            let d: usize = fs.iter().map(|f| f.dim()).sum();
            if d < 5 {
                fs.push(Factor::E((5 - d) as u8));
            }
            ProductSpec::new(fs).ok()
        })
        .collect();
    let shape_rank = |p: &ProductSpec| match p.shape() {
        Shape::FourOne => 0,
        Shape::ThreeTwo => 1,
        Shape::TwoTwoOne => 2,
    };
    out.sort_by_key(|p| (shape_rank(p), p.factors.iter().map(|f| f.display_rank()).collect::<Vec<_>>()));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_nine_products() {
        let ps = enumerate_products();
        assert_eq!(ps.len(), 29);
        let count = |s: Shape| ps.iter().filter(|p| p.shape() == s).count();
        assert_eq!((count(Shape::FourOne), count(Shape::ThreeTwo), count(Shape::TwoTwoOne)), (9, 17, 3));
        assert_eq!(ps[0].to_string(), "S^4 x E");
        assert_eq!(ps[9].to_string(), "E^3 x S^2");
        assert_eq!(ps[11].to_string(), "S^3 x E^2");
        assert_eq!(ps[28].to_string(), "H^2 x H^2 x E");
    }

    #[test]
    fn flat_pairs_rejected() {
        assert_eq!(
            ProductSpec::new(vec![Factor::E(3), Factor::E(2)]),
            Err(ProductError::MultipleEuclidean)
        );
        assert_eq!(ProductSpec::new(vec![Factor::S4]), Err(ProductError::WrongTotal(4)));
    }

    #[test]
    fn factor_order_is_canonical() {
        let a = ProductSpec::new(vec![Factor::E(2), Factor::Heis3]).unwrap();
        assert_eq!(a.to_string(), "Heis3 x E^2");
        let b = ProductSpec::new(vec![Factor::E(1), Factor::H2, Factor::S2]).unwrap();
        assert_eq!(b.to_string(), "S^2 x H^2 x E");
        let c = ProductSpec::new(vec![Factor::S2, Factor::E(3)]).unwrap();
        assert_eq!(c.to_string(), "E^3 x S^2");
    }
}
