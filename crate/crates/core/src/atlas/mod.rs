//! Catalog of the maximal model geometries of dimension 5.
//!
//! Individual geometries are keyed by [`GeometryLabel`]; the six infinite
//! families by [`FamilyKind`]. Lie-group geometries carry a structure-constant
//! constructor, everything else records its transitive group as a string.

mod products;

use std::sync::OnceLock;

use serde::Serialize;

use crate::classify::{normalized_roots, GeometryLabel, Named, RootData};
use crate::exact::{Mat, Poly, Rat};
use crate::isotropy::Stabilizer;
use crate::liealg::{LieAlgebra, LieAlgebraJson};

pub use products::{enumerate_products, Factor, ProductError, ProductSpec, Shape, FACTORS_2, FACTORS_3, FACTORS_4};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AtlasError {
    #[error("{0} is not a Lie group geometry")]
    NotAGroup(String),
    #[error("{0} is a family; give its parameters")]
    NeedsParameters(String),
    #[error("{0} has irrational parameters and no rational structure constants")]
    Irrational(String),
    #[error("unknown geometry {0:?}")]
    UnknownLabel(String),
    #[error("unknown category {0}, expected 1 to 8")]
    UnknownCategory(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    LensBundle,
    Sl2xS3,
    Sl2xSl2,
    Sol5Diag,
    Sol5Complex,
    Sol4mnxE,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::LensBundle,
        FamilyKind::Sl2xS3,
        FamilyKind::Sl2xSl2,
        FamilyKind::Sol5Diag,
        FamilyKind::Sol5Complex,
        FamilyKind::Sol4mnxE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::LensBundle => "L(a;1) x_S1 L(b;1)",
            FamilyKind::Sl2xS3 => "SL2~ x_{alpha} S^3",
            FamilyKind::Sl2xSl2 => "SL2~ x_{alpha} SL2~",
            FamilyKind::Sol5Diag => "A5,7^{a,b,-1-a-b}",
            FamilyKind::Sol5Complex => "A5,7^{1,-1-a,-1+a}",
            FamilyKind::Sol4mnxE => "Sol^4_{m,n} x E",
        }
    }

    pub fn of(label: &GeometryLabel) -> Option<FamilyKind> {
        Some(match label {
            GeometryLabel::LensBundle { .. } => FamilyKind::LensBundle,
            GeometryLabel::Sl2xS3(_) => FamilyKind::Sl2xS3,
            GeometryLabel::Sl2xSl2(_) => FamilyKind::Sl2xSl2,
            GeometryLabel::Sol5Diag(_) => FamilyKind::Sol5Diag,
            GeometryLabel::Sol5Complex(_) => FamilyKind::Sol5Complex,
            GeometryLabel::Sol4mnxE(_) => FamilyKind::Sol4mnxE,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntryKey {
    Individual(GeometryLabel),
    Family(FamilyKind),
}

/// Column of the irreducible 4-dimensional isotropy table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Table2Column {
    Flat,
    Curved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub base: &'static str,
    pub column: Table2Column,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtlasEntry {
    pub key: EntryKey,
    pub category: u8,
    pub stabilizer: Stabilizer,
    pub is_lie_group: bool,
    pub model: bool,
    pub maximal: bool,
    /// Transitive group, written as a string.
    pub group: &'static str,
    pub table2: Option<Table2Row>,
    pub notes: &'static str,
}

impl AtlasEntry {
    pub fn name(&self) -> String {
        match &self.key {
            EntryKey::Individual(l) => l.to_string(),
            EntryKey::Family(f) => f.name().to_string(),
        }
    }

    pub fn is_family(&self) -> bool {
        matches!(self.key, EntryKey::Family(_))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name(),
            "kind": if self.is_family() { "family" } else { "individual" },
            "category": self.category,
            "stabilizer": self.stabilizer,
            "is_lie_group": self.is_lie_group,
            "model": self.model,
            "maximal": self.maximal,
            "group": self.group,
            "table2": self.table2,
            "notes": self.notes,
        })
    }
}

struct Spec {
    key: EntryKey,
    category: u8,
    stabilizer: Stabilizer,
    is_lie_group: bool,
    group: &'static str,
    notes: &'static str,
}

fn named(n: Named, category: u8, stabilizer: Stabilizer, is_lie_group: bool, group: &'static str) -> Spec {
    Spec { key: EntryKey::Individual(GeometryLabel::Named(n)), category, stabilizer, is_lie_group, group, notes: "" }
}

fn family(f: FamilyKind, category: u8, stabilizer: Stabilizer, is_lie_group: bool, group: &'static str) -> Spec {
    Spec { key: EntryKey::Family(f), category, stabilizer, is_lie_group, group, notes: "" }
}

fn with_notes(mut s: Spec, notes: &'static str) -> Spec {
    s.notes = notes;
    s
}

fn table2(key: &EntryKey) -> Option<Table2Row> {
    let EntryKey::Individual(label) = key else { return None };
    let (base, column) = match label.to_string().as_str() {
        "S^4 x E" => ("S^4", Table2Column::Flat),
        "H^4 x E" => ("H^4", Table2Column::Flat),
        "CP^2 x E" => ("CP^2", Table2Column::Flat),
        "CH^2 x E" => ("CH^2", Table2Column::Flat),
        "A5,4" => ("C^2", Table2Column::Curved),
        "U(2,1)/U(2)~" => ("CH^2", Table2Column::Curved),
        _ => return None,
    };
    Some(Table2Row { base, column })
}

fn build_entries() -> Vec<AtlasEntry> {
    use Named::*;
    use Stabilizer as S;
    let mut specs = vec![
        named(E5, 1, S::SO5, true, "R^5 x| SO(5)"),
        named(S5, 1, S::SO5, false, "SO(6)"),
        named(H5, 1, S::SO5, false, "SO(5,1)"),
        named(Sl3OverSo3, 2, S::SO3Irr, false, "SL(3,R)"),
        named(Su3OverSo3, 2, S::SO3Irr, false, "SU(3)"),
        named(T1H3, 3, S::CircleOne, false, "PSL(2,C)"),
        named(T1E12, 3, S::CircleOne, false, "R^3 x| SO(1,2)^0"),
        named(U21OverU2, 3, S::U2, false, "U(2,1)~"),
        named(Heis3xS3, 4, S::Torus, false, "(Heis3 x| SO(2)~) x S^3"),
        named(Heis3xSl2, 4, S::Torus, false, "(Heis3 x| SO(2)~) x SL2~"),
        family(FamilyKind::LensBundle, 4, S::Torus, false, "S^3 x S^3 x R"),
        with_notes(
            family(FamilyKind::Sl2xS3, 4, S::Torus, false, "SL2~ x S^3 x R"),
            "admits compact quotients if and only if alpha is rational",
        ),
        family(FamilyKind::Sl2xSl2, 4, S::Torus, false, "SL2~ x SL2~ x R"),
        with_notes(
            named(R2xSl2, 5, S::CircleHalf, true, "R^2 x| SL2~"),
            "principal R-bundle over F^4; the bundles differ by connection curvature",
        ),
        with_notes(
            named(F5Zero, 5, S::CircleHalf, false, "Heis3 x| SL2~"),
            "principal R-bundle over F^4; the bundles differ by connection curvature",
        ),
        with_notes(
            named(F5One, 5, S::CircleHalf, false, "Heis3 x| SL2~"),
            "principal R-bundle over F^4; the bundles differ by connection curvature",
        ),
        named(A51, 6, S::CircleOne, true, "A5,1"),
        named(A52, 6, S::Trivial, true, "A5,2"),
        named(A53, 6, S::CircleOne, true, "A5,3"),
        named(A54, 6, S::U2, true, "A5,4"),
        named(A55, 6, S::Trivial, true, "A5,5"),
        named(A56, 6, S::Trivial, true, "A5,6"),
        named(A57Repeated, 7, S::Torus, true, "A5,7^{1,-1,-1}"),
        named(A58, 7, S::Trivial, true, "A5,8^{-1}"),
        named(A59, 7, S::SO2, true, "A5,9^{-1,-1}"),
        named(A515, 7, S::Trivial, true, "A5,15^{-1}"),
        named(A520, 7, S::Trivial, true, "A5,20^{0}"),
        named(A533, 7, S::Trivial, true, "A5,33^{-1,-1}"),
        family(FamilyKind::Sol5Diag, 7, S::Trivial, true, "R^4 x| R"),
        family(FamilyKind::Sol5Complex, 7, S::SO2, true, "R^4 x| R"),
    ];
    for p in enumerate_products() {
        if p.factors().contains(&Factor::Sol4mn) {
            specs.push(family(FamilyKind::Sol4mnxE, 8, S::Trivial, true, "Sol^4_{m,n} x R"));
            continue;
        }
        let stabilizer = p.stabilizer();
        let is_lie_group = p.is_lie_group();
        specs.push(Spec {
            key: EntryKey::Individual(GeometryLabel::Product(p)),
            category: 8,
            stabilizer,
            is_lie_group,
            group: "product",
            notes: "",
        });
    }
    specs
        .into_iter()
        .map(|s| AtlasEntry {
            table2: table2(&s.key),
            key: s.key,
            category: s.category,
            stabilizer: s.stabilizer,
            is_lie_group: s.is_lie_group,
            model: true,
            maximal: true,
            group: s.group,
            notes: s.notes,
        })
        .collect()
}

/// The full catalog in deterministic order: by category, then as listed in
/// the classification theorem.
pub fn entries() -> &'static [AtlasEntry] {
    static ENTRIES: OnceLock<Vec<AtlasEntry>> = OnceLock::new();
    ENTRIES.get_or_init(build_entries)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Filter {
    pub category: Option<u8>,
    pub stabilizer: Option<Stabilizer>,
}

pub fn list(filter: &Filter) -> Result<Vec<&'static AtlasEntry>, AtlasError> {
    if let Some(c) = filter.category {
        if !(1..=8).contains(&c) {
            return Err(AtlasError::UnknownCategory(c));
        }
    }
    Ok(entries()
        .iter()
        .filter(|e| filter.category.is_none_or(|c| e.category == c))
        .filter(|e| filter.stabilizer.as_ref().is_none_or(|s| &e.stabilizer == s))
        .collect())
}

/// The catalog entry a label belongs to; family members map to their family.
pub fn entry_for(label: &GeometryLabel) -> Result<&'static AtlasEntry, AtlasError> {
    let fam = FamilyKind::of(label).or_else(|| match label {
        GeometryLabel::Product(p) if p.factors().contains(&Factor::Sol4mn) => Some(FamilyKind::Sol4mnxE),
        _ => None,
    });
    entries()
        .iter()
        .find(|e| match (&e.key, fam) {
            (EntryKey::Family(f), Some(g)) => *f == g,
            (EntryKey::Individual(l), None) => l == label,
            _ => false,
        })
        .ok_or_else(|| AtlasError::UnknownLabel(label.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub name: String,
    pub category: u8,
    pub stabilizer: Stabilizer,
    pub is_lie_group: bool,
    pub table2: Option<Table2Row>,
    /// Only decided for `SL2~ x_alpha S^3`.
    pub compact_quotients: Option<bool>,
    pub notes: &'static str,
}

pub fn metadata(label: &GeometryLabel) -> Result<Metadata, AtlasError> {
    let e = entry_for(label)?;
    let compact_quotients = match label {
        GeometryLabel::Sl2xS3(a) => Some(crate::lattices::sl2_s3_compact_quotients(a)),
        _ => None,
    };
    Ok(Metadata {
        name: label.to_string(),
        category: e.category,
        stabilizer: e.stabilizer.clone(),
        is_lie_group: e.is_lie_group,
        table2: e.table2,
        compact_quotients,
        notes: e.notes,
    })
}

/// JSON for `atlas show`: the entry, plus structure constants when the
/// label names a Lie group with rational parameters.
pub fn show_json(label: &GeometryLabel) -> Result<serde_json::Value, AtlasError> {
    let e = entry_for(label)?;
    let mut v = e.to_json();
    v["label"] = serde_json::Value::String(label.to_string());
    v["params"] = label.params();
    if let Ok(m) = metadata(label) {
        if let Some(cq) = m.compact_quotients {
            v["compact_quotients"] = serde_json::Value::Bool(cq);
        }
    }
    if let Ok(alg) = build_algebra(label) {
        v["algebra"] = serde_json::to_value(LieAlgebraJson::from(&alg)).expect("algebra JSON");
    }
    Ok(v)
}

fn ints(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| Rat::int(x)).collect()
}

fn diag(xs: &[i64]) -> Mat {
    Mat::diag(&ints(xs))
}

fn renumber(l: LieAlgebra) -> LieAlgebra {
    let n = l.dim();
    l.with_names((1..=n).map(|i| format!("e{i}")))
}

/// `[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2`.
fn su2() -> LieAlgebra {
    LieAlgebra::from_int_brackets(3, &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (2, 0, &[(1, 1)])])
}

/// Basis `h, e, f`: `[h,e]=2e, [h,f]=-2f, [e,f]=h`.
fn sl2() -> LieAlgebra {
    LieAlgebra::from_int_brackets(3, &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])])
        .with_names(["h", "e", "f"])
}

/// `[e1,e2]=2e3`, matching `z+z'+xy'-x'y` in exponential coordinates.
pub fn heis3() -> LieAlgebra {
    LieAlgebra::from_int_brackets(3, &[(0, 1, &[(2, 2)])])
}

/// Basis `X, Y, Z, T`: `[T,X]=X, [T,Y]=-Y, [X,Y]=Z`.
fn sol4_one() -> LieAlgebra {
    LieAlgebra::from_int_brackets(4, &[(3, 0, &[(0, 1)]), (3, 1, &[(1, -1)]), (0, 1, &[(2, 1)])])
        .with_names(["X", "Y", "Z", "T"])
}

fn factor_algebra(f: Factor) -> Option<LieAlgebra> {
    Some(match f {
        Factor::E(k) => LieAlgebra::abelian(k as usize),
        // R^3 x| (x^3): one nilpotent 3-block
        Factor::Nil4 => LieAlgebra::from_int_brackets(4, &[(3, 0, &[(1, 1)]), (3, 1, &[(2, 1)])]),
        Factor::Sol4Zero => LieAlgebra::semidirect_abelian(&[diag(&[1, 1, -2])]),
        Factor::Sol4One => sol4_one(),
        Factor::S3 => su2(),
        Factor::Heis3 => heis3(),
        Factor::Sol3 => LieAlgebra::semidirect_abelian(&[diag(&[1, -1])]),
        Factor::Sl2 => sl2(),
        _ => return None,
    })
}

/// `R^4 x| R` with the action given by real roots and optionally a
/// complex pair `re +- i im`; the complement is `e5`.
fn sol5_action(real: &[Rat], pair: Option<(&Rat, &Rat)>) -> LieAlgebra {
    let mut blocks: Vec<Mat> = real.iter().map(|r| Mat::diag(std::slice::from_ref(r))).collect();
    if let Some((re, im)) = pair {
        blocks.push(Mat::from_rows(vec![vec![re.clone(), -im], vec![im.clone(), re.clone()]]));
    }
    LieAlgebra::semidirect_abelian(&[Mat::block_diag(&blocks)])
}

/// Structure constants for a Lie-group geometry. Basis conventions are
/// 1-based in comments, 0-based in code; `e5` is the complement generator
/// for every `R^4 x| R`.
pub fn build_algebra(label: &GeometryLabel) -> Result<LieAlgebra, AtlasError> {
    let not_group = || AtlasError::NotAGroup(label.to_string());
    let exact = |r: &RootData| r.exact.clone().ok_or_else(|| AtlasError::Irrational(label.to_string()));
    match label {
        GeometryLabel::Named(n) => named_algebra(*n).ok_or_else(not_group),
        GeometryLabel::Product(p) => {
            if p.factors().contains(&Factor::Sol4mn) {
                return Err(AtlasError::NeedsParameters(label.to_string()));
            }
            let mut parts = p.factors().iter().map(|&f| factor_algebra(f));
            let first = parts.next().flatten().ok_or_else(not_group)?;
            parts
                .try_fold(first, |acc, f| f.map(|f| acc.direct_sum(&f)))
                .map(renumber)
                .ok_or_else(not_group)
        }
        GeometryLabel::Sol5Diag(r) => Ok(sol5_action(&exact(r)?, None)),
        GeometryLabel::Sol5Complex(r) => {
            let e = exact(r)?;
            Ok(sol5_action(&e[..2], Some((&e[2], &e[3]))))
        }
        GeometryLabel::Sol4mnxE(r) => {
            let mut e = exact(r)?;
            e.push(Rat::zero());
            Ok(sol5_action(&e, None))
        }
        GeometryLabel::LensBundle { .. } | GeometryLabel::Sl2xS3(_) | GeometryLabel::Sl2xSl2(_) => Err(not_group()),
    }
}

fn named_algebra(n: Named) -> Option<LieAlgebra> {
    Some(match n {
        Named::E5 => LieAlgebra::abelian(5),
        // basis h, e, f, u, v: sl2 acting on (u, v) by its standard representation
        Named::R2xSl2 => LieAlgebra::from_int_brackets(
            5,
            &[
                (0, 1, &[(1, 2)]),
                (0, 2, &[(2, -2)]),
                (1, 2, &[(0, 1)]),
                (0, 3, &[(3, 1)]),
                (0, 4, &[(4, -1)]),
                (1, 4, &[(3, 1)]),
                (2, 3, &[(4, 1)]),
            ],
        )
        .with_names(["h", "e", "f", "u", "v"]),
        // [e3,e5]=e1, [e4,e5]=e2
        Named::A51 => LieAlgebra::from_int_brackets(5, &[(2, 4, &[(0, 1)]), (3, 4, &[(1, 1)])]),
        // [e5,e1]=e2, [e5,e2]=e3, [e5,e3]=e4
        Named::A52 => LieAlgebra::from_int_brackets(5, &[(4, 0, &[(1, 1)]), (4, 1, &[(2, 1)]), (4, 2, &[(3, 1)])]),
        // [e3,e4]=e2, [e3,e5]=e1, [e4,e5]=e3
        Named::A53 => LieAlgebra::from_int_brackets(5, &[(2, 3, &[(1, 1)]), (2, 4, &[(0, 1)]), (3, 4, &[(2, 1)])]),
        // Heis5: [e1,e2]=e5, [e3,e4]=e5
        Named::A54 => LieAlgebra::from_int_brackets(5, &[(0, 1, &[(4, 1)]), (2, 3, &[(4, 1)])]),
        // [e3,e4]=e1, [e2,e5]=e1, [e3,e5]=e2
        Named::A55 => LieAlgebra::from_int_brackets(5, &[(2, 3, &[(0, 1)]), (1, 4, &[(0, 1)]), (2, 4, &[(1, 1)])]),
        // A5,5 plus [e4,e5]=e3
        Named::A56 => LieAlgebra::from_int_brackets(
            5,
            &[(2, 3, &[(0, 1)]), (1, 4, &[(0, 1)]), (2, 4, &[(1, 1)]), (3, 4, &[(2, 1)])],
        ),
        Named::A57Repeated => LieAlgebra::semidirect_abelian(&[diag(&[1, 1, -1, -1])]),
        // [e5,e2]=e1, [e5,e3]=e3, [e5,e4]=-e4
        Named::A58 => LieAlgebra::from_int_brackets(5, &[(4, 1, &[(0, 1)]), (4, 2, &[(2, 1)]), (4, 3, &[(3, -1)])]),
        // [e5,e1]=e1, [e5,e2]=e1+e2, [e5,e3]=-e3, [e5,e4]=-e4
        Named::A59 => LieAlgebra::from_int_brackets(
            5,
            &[(4, 0, &[(0, 1)]), (4, 1, &[(0, 1), (1, 1)]), (4, 2, &[(2, -1)]), (4, 3, &[(3, -1)])],
        ),
        // [e5,e1]=e1, [e5,e2]=e1+e2, [e5,e3]=-e3, [e5,e4]=e3-e4
        Named::A515 => LieAlgebra::from_int_brackets(
            5,
            &[(4, 0, &[(0, 1)]), (4, 1, &[(0, 1), (1, 1)]), (4, 2, &[(2, -1)]), (4, 3, &[(2, 1), (3, -1)])],
        ),
        // basis X, Y, Z, W, T: [T,X]=X, [T,Y]=-Y, [X,Y]=Z, [T,W]=Z
        Named::A520 => LieAlgebra::from_int_brackets(
            5,
            &[(4, 0, &[(0, 1)]), (4, 1, &[(1, -1)]), (0, 1, &[(2, 1)]), (4, 3, &[(2, 1)])],
        )
        .with_names(["X", "Y", "Z", "W", "T"]),
        Named::A533 => LieAlgebra::semidirect_abelian(&[diag(&[1, -1, 0]), diag(&[0, 1, -1])]),
        _ => return None,
    })
}

/// Reference member of the four-distinct-real-roots family: roots (1,2,3,-6).
pub fn sol5_diag_reference() -> GeometryLabel {
    GeometryLabel::Sol5Diag(normalized_roots(&Poly::from_roots(&ints(&[1, 2, 3, -6]))))
}

/// References for the sub-labels of the four-block leaf other than the
/// distinct-real family.
pub fn sub_label_references() -> Vec<GeometryLabel> {
    let complex = &Poly::from_ints(&[-1, 0, 1]) * &Poly::from_ints(&[1, 0, 1]);
    vec![
        GeometryLabel::Sol5Complex(normalized_roots(&complex)),
        GeometryLabel::Named(Named::A57Repeated),
        GeometryLabel::Sol4mnxE(normalized_roots(&Poly::from_roots(&ints(&[1, 2, -3])))),
        GeometryLabel::product(vec![Factor::Sol4Zero, Factor::E(1)]),
        GeometryLabel::product(vec![Factor::Sol3, Factor::E(2)]),
    ]
}

/// Every label with a rational constructor: individual Lie-group entries and
/// one reference member per Lie-group family.
pub fn constructible_labels() -> Vec<GeometryLabel> {
    let mut out: Vec<GeometryLabel> = entries()
        .iter()
        .filter_map(|e| match &e.key {
            EntryKey::Individual(l) if e.is_lie_group => Some(l.clone()),
            _ => None,
        })
        .collect();
    out.push(sol5_diag_reference());
    out.extend(
        sub_label_references()
            .into_iter()
            .filter(|l| matches!(l, GeometryLabel::Sol5Complex(_) | GeometryLabel::Sol4mnxE(_))),
    );
    out
}
