//! Closed connected subgroups of SO(5) up to conjugacy, ordered by inclusion.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::atlas::{self, AtlasEntry};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Stabilizer {
    SO5,
    SO4,
    SO3xSO2,
    /// SO(3) on its 5-dimensional irreducible representation.
    SO3Irr,
    U2,
    SU2,
    SO3,
    /// SO(2) x SO(2).
    Torus,
    /// S¹₁.
    CircleOne,
    /// S¹_{m/n} with `0 < m/n < 1`, `m/n != 1/2`, in lowest terms.
    CircleRatio(Rat),
    /// S¹₀ = SO(2).
    SO2,
    /// S¹_{1/2}.
    CircleHalf,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsotropyError {
    #[error("unknown stabilizer label {0:?}")]
    UnknownLabel(String),
    #[error("circle ratio must be a nonnegative rational, got {0}")]
    BadRatio(String),
}

/// Drawn edges of the inclusion diagram, larger group first.
const EDGES: [(usize, usize); 20] = [
    (SO5, SO4),
    (SO4, U2),
    (U2, SU2),
    (SU2, S11),
    (S11, TRIV),
    (SO5, SO3SO2),
    (SO3SO2, SO3_),
    (SO3_, SO2_),
    (SO2_, TRIV),
    (SO5, SO35),
    (SO35, S1H),
    (S1H, TRIV),
    (SO4, SO3_),
    (SO3SO2, T2),
    (T2, SO2_),
    (U2, T2),
    (T2, S11),
    (T2, S1Q),
    (S1Q, TRIV),
    (T2, S1H),
];

const SO5: usize = 0;
const SO4: usize = 1;
const SO3SO2: usize = 2;
const SO35: usize = 3;
const U2: usize = 4;
const SU2: usize = 5;
const SO3_: usize = 6;
const T2: usize = 7;
const S11: usize = 8;
const S1Q: usize = 9;
const SO2_: usize = 10;
const S1H: usize = 11;
const TRIV: usize = 12;
const NODE_COUNT: usize = 13;

impl Stabilizer {
    /// The circle S¹_{m/n}; `0`, `1` and `1/2` give the specially named nodes,
    /// and `q > 1` is replaced by `1/q` (the two summands swap).
    pub fn circle(q: &Rat) -> Result<Stabilizer, IsotropyError> {
        if q.signum() < 0 {
            return Err(IsotropyError::BadRatio(q.to_string()));
        }
        let q = if q > &Rat::one() { q.recip() } else { q.clone() };
        Ok(if q.is_zero() {
            Stabilizer::SO2
        } else if q.is_one() {
            Stabilizer::CircleOne
        } else if q == Rat::new(1, 2) {
            Stabilizer::CircleHalf
        } else {
            Stabilizer::CircleRatio(q)
        })
    }

    /// One representative per node; the parametrized circle appears as S¹_{1/3}.
    pub fn nodes() -> Vec<Stabilizer> {
        use Stabilizer::*;
        vec![
            SO5,
            SO4,
            SO3xSO2,
            SO3Irr,
            U2,
            SU2,
            SO3,
            Torus,
            CircleOne,
            CircleRatio(Rat::new(1, 3)),
            SO2,
            CircleHalf,
            Trivial,
        ]
    }

    fn node(&self) -> usize {
        match self {
            Stabilizer::SO5 => SO5,
            Stabilizer::SO4 => SO4,
            Stabilizer::SO3xSO2 => SO3SO2,
            Stabilizer::SO3Irr => SO35,
            Stabilizer::U2 => U2,
            Stabilizer::SU2 => SU2,
            Stabilizer::SO3 => SO3_,
            Stabilizer::Torus => T2,
            Stabilizer::CircleOne => S11,
            Stabilizer::CircleRatio(_) => S1Q,
            Stabilizer::SO2 => SO2_,
            Stabilizer::CircleHalf => S1H,
            Stabilizer::Trivial => TRIV,
        }
    }

    pub fn dim(&self) -> usize {
        match self.node() {
            SO5 => 10,
            SO4 => 6,
            U2 | SO3SO2 => 4,
            SO35 | SO3_ | SU2 => 3,
            T2 => 2,
            TRIV => 0,
            _ => 1,
        }
    }

    /// Whether `other` is (conjugate to) a subgroup of `self`.
    pub fn contains(&self, other: &Stabilizer) -> bool {
        if let (Stabilizer::CircleRatio(a), Stabilizer::CircleRatio(b)) = (self, other) {
            return a == b;
        }
        reachable(self.node())[other.node()]
    }

    /// Non-product geometries with this point stabilizer, in atlas order.
    pub fn geometries(&self) -> Vec<&'static AtlasEntry> {
        atlas::entries()
            .iter()
            .filter(|e| e.category != 8 && &e.stabilizer == self)
            .collect()
    }
}

fn reachable(from: usize) -> [bool; NODE_COUNT] {
    let mut seen = [false; NODE_COUNT];
    let mut stack = vec![from];
    while let Some(n) = stack.pop() {
        if !seen[n] {
            seen[n] = true;
            stack.extend(EDGES.iter().filter(|(a, _)| *a == n).map(|(_, b)| *b));
        }
    }
    seen
}

/// Group dimension of every node, keyed by its ASCII label.
pub fn dims() -> Vec<(String, usize)> {
    Stabilizer::nodes().iter().map(|s| (s.to_string(), s.dim())).collect()
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilizer::SO5 => write!(f, "SO(5)"),
            Stabilizer::SO4 => write!(f, "SO(4)"),
            Stabilizer::SO3xSO2 => write!(f, "SO(3)xSO(2)"),
            Stabilizer::SO3Irr => write!(f, "SO(3)_5"),
            Stabilizer::U2 => write!(f, "U(2)"),
            Stabilizer::SU2 => write!(f, "SU(2)"),
            Stabilizer::SO3 => write!(f, "SO(3)"),
            Stabilizer::Torus => write!(f, "SO(2)xSO(2)"),
            Stabilizer::CircleOne => write!(f, "S1_1"),
            Stabilizer::CircleRatio(q) => write!(f, "S1_{{{q}}}"),
            Stabilizer::SO2 => write!(f, "SO(2)"),
            Stabilizer::CircleHalf => write!(f, "S1_{{1/2}}"),
            Stabilizer::Trivial => write!(f, "1"),
        }
    }
}

impl FromStr for Stabilizer {
    type Err = IsotropyError;

    fn from_str(s: &str) -> Result<Stabilizer, IsotropyError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('×', "x");
        Ok(match t.as_str() {
            "SO(5)" => Stabilizer::SO5,
            "SO(4)" => Stabilizer::SO4,
            "SO(3)xSO(2)" => Stabilizer::SO3xSO2,
            "SO(3)_5" => Stabilizer::SO3Irr,
            "U(2)" => Stabilizer::U2,
            "SU(2)" => Stabilizer::SU2,
            "SO(3)" => Stabilizer::SO3,
            "SO(2)xSO(2)" | "T2" => Stabilizer::Torus,
            "SO(2)" => Stabilizer::SO2,
            "1" | "{1}" => Stabilizer::Trivial,
            _ => {
                let q = t
                    .strip_prefix("S1_")
                    .map(|r| r.trim_start_matches('{').trim_end_matches('}'))
                    .ok_or_else(|| IsotropyError::UnknownLabel(s.to_string()))?;
                let q: Rat = q.parse().map_err(|_| IsotropyError::UnknownLabel(s.to_string()))?;
                Stabilizer::circle(&q)?
            }
        })
    }
}

impl Serialize for Stabilizer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
