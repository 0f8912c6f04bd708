//! The identification key for 5-dimensional solvable Lie algebras.

mod label;
mod roots;

use std::sync::OnceLock;

use serde::Serialize;

use crate::atlas::{self, Factor};
use crate::exact::{Poly, RootSignature, Subspace};
use crate::liealg::{LieAlgebra, LieError, Violation};

pub use label::{Alpha, GeometryLabel, LabelError, Named};
pub use roots::{normalize_real_f64, normalized_roots, positive_log_roots, sol4_from_mn, RootData, RootPattern, ROOT_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("expected a 5-dimensional algebra, got dimension {0}")]
    WrongDimension(usize),
    #[error("wrong branch: {0}")]
    WrongBranch(String),
    #[error("invalid structure constants: {0}")]
    Invalid(Violation),
    #[error("NotInKey: the algebra is outside the identification key")]
    NotInKey { fingerprint: Box<Fingerprint>, trace: Trace },
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<crate::exact::PolyError> for ClassifyError {
    fn from(e: crate::exact::PolyError) -> ClassifyError {
        ClassifyError::Lie(LieError::Poly(e))
    }
}

impl From<crate::exact::MatError> for ClassifyError {
    fn from(e: crate::exact::MatError) -> ClassifyError {
        ClassifyError::Lie(LieError::Mat(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub question: String,
    pub answer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Decision nodes visited, root first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Trace(pub Vec<TraceStep>);

impl Trace {
    fn push(&mut self, question: &str, answer: impl Into<String>, witness: Option<String>) {
        self.0.push(TraceStep { question: question.into(), answer: answer.into(), witness });
    }

    pub fn answers(&self) -> Vec<(&str, &str)> {
        self.0.iter().map(|s| (s.question.as_str(), s.answer.as_str())).collect()
    }

    /// One line per node, indented by depth.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (depth, s) in self.0.iter().enumerate() {
            out.push_str(&"  ".repeat(depth));
            out.push_str(&format!("{}: {}", s.question, s.answer));
            if let Some(w) = &s.witness {
                out.push_str(&format!("  [{w}]"));
            }
            out.push('\n');
        }
        out
    }
}

/// Basis-independent invariants compared against a leaf's reference algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub lcs_dims: Vec<usize>,
    pub ds_dims: Vec<usize>,
    pub center_dim: usize,
    pub nilradical_dim: usize,
    pub nilradical_derived_dim: usize,
    pub unimodular: bool,
    /// Present when the nilradical has codimension 1 and dimension 4.
    pub root_signature: Option<RootSignature>,
    pub jordan_block_count: Option<usize>,
    /// Present for nilpotent algebras, where the other invariants do not
    /// separate `R^4 x| x^4` from `Nil^4 x| (4 -> 3 -> 1)`.
    pub abelian_ideal_4: Option<bool>,
}

/// The ten leaves of the key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Leaf {
    /// `R^4 x| x^4`
    R4X4,
    /// `R^4 x| (x^3, x) = Nil^4 x E`
    Nil4xE,
    /// `Nil^4 x| (4 -> 3 -> 1)`
    Nil4Chain431,
    /// `Nil^4 x| (3 -> 1)`
    Nil4Chain31,
    /// `R^3 x| {xyz=1}^0`
    R3Torus,
    /// `R^4 x| ((x-1)^2, (x+1)^2)`
    TwoJordan,
    /// `R^4 x| (x^2, x-1, x+1)`
    ThreeJordan,
    /// `R^4 x| (x-a, x-b, x-c, x+a+b+c)`
    FourJordan,
    /// `(R x Heis3) x| (Lorentz, y -> x1)`
    Center1,
    /// `Sol^4_1 x E`
    Center2,
}

impl Leaf {
    pub const ALL: [Leaf; 10] = [
        Leaf::R4X4,
        Leaf::Nil4xE,
        Leaf::Nil4Chain431,
        Leaf::Nil4Chain31,
        Leaf::R3Torus,
        Leaf::TwoJordan,
        Leaf::ThreeJordan,
        Leaf::FourJordan,
        Leaf::Center1,
        Leaf::Center2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Leaf::R4X4 => "R^4 x| x^4",
            Leaf::Nil4xE => "R^4 x| (x^3, x) = Nil^4 x E",
            Leaf::Nil4Chain431 => "Nil^4 x| (4 -> 3 -> 1)",
            Leaf::Nil4Chain31 => "Nil^4 x| (3 -> 1)",
            Leaf::R3Torus => "R^3 x| {xyz=1}^0",
            Leaf::TwoJordan => "R^4 x| ((x-1)^2, (x+1)^2)",
            Leaf::ThreeJordan => "R^4 x| (x^2, x-1, x+1)",
            Leaf::FourJordan => "R^4 x| (x-a, x-b, x-c, x+a+b+c)",
            Leaf::Center1 => "(R x Heis3) x| (Lorentz, y -> x1)",
            Leaf::Center2 => "Sol^4_1 x E",
        }
    }

    /// Label of the leaf's reference algebra.
    pub fn reference_label(self) -> GeometryLabel {
        match self {
            Leaf::R4X4 => GeometryLabel::Named(Named::A52),
            Leaf::Nil4xE => GeometryLabel::product(vec![Factor::Nil4, Factor::E(1)]),
            Leaf::Nil4Chain431 => GeometryLabel::Named(Named::A56),
            Leaf::Nil4Chain31 => GeometryLabel::Named(Named::A55),
            Leaf::R3Torus => GeometryLabel::Named(Named::A533),
            Leaf::TwoJordan => GeometryLabel::Named(Named::A515),
            Leaf::ThreeJordan => GeometryLabel::Named(Named::A58),
            Leaf::FourJordan => atlas::sol5_diag_reference(),
            Leaf::Center1 => GeometryLabel::Named(Named::A520),
            Leaf::Center2 => GeometryLabel::product(vec![Factor::Sol4One, Factor::E(1)]),
        }
    }

    pub fn reference_algebra(self) -> LieAlgebra {
        atlas::build_algebra(&self.reference_label()).expect("leaf references are constructible")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub label: GeometryLabel,
    pub leaf: Leaf,
    pub trace: Trace,
    pub params: Option<FamilyParams>,
}

impl Classification {
    pub fn status(&self) -> &'static str {
        "certified"
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label.to_string(),
            "params": self.label.params(),
            "trace": self.trace,
            "status": self.status(),
        })
    }
}

/// Characteristic data of the complement action on a 4-dimensional nilradical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionData {
    pub charpoly: Poly,
    pub root_signature: RootSignature,
    pub jordan_block_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyParams {
    pub pattern: RootPattern,
    pub normalized: RootData,
}

/// Action of a lift of the quotient generator on the nilradical.
pub fn action_root_data(l: &LieAlgebra) -> Result<ActionData, ClassifyError> {
    let n = l.nilradical()?;
    if n.dim() != 4 || l.dim() != 5 {
        return Err(ClassifyError::WrongBranch(format!(
            "needs a 4-dimensional nilradical of codimension 1, got dimension {} in {}",
            n.dim(),
            l.dim()
        )));
    }
    let t_index = n.space.complement_indices()[0];
    let mut t = vec![crate::exact::Rat::zero(); l.dim()];
    t[t_index] = crate::exact::Rat::one();
    let m = l.restricted_action(&t, &n.space)?;
    let charpoly = m.charpoly()?;
    Ok(ActionData {
        root_signature: charpoly.root_signature()?,
        jordan_block_count: m.jordan_block_count()?,
        charpoly,
    })
}

/// Normalized root data at the four-block leaf.
pub fn family_params(l: &LieAlgebra) -> Result<FamilyParams, ClassifyError> {
    let a = action_root_data(l)?;
    if a.jordan_block_count != 4 {
        return Err(ClassifyError::WrongBranch(format!(
            "family parameters need 4 Jordan blocks, found {}",
            a.jordan_block_count
        )));
    }
    Ok(FamilyParams { pattern: RootPattern::of(&a.charpoly)?, normalized: normalized_roots(&a.charpoly) })
}

pub fn fingerprint(l: &LieAlgebra) -> Result<Fingerprint, ClassifyError> {
    let report = l.structure_report();
    if !report.solvable {
        return Err(ClassifyError::NotSolvable);
    }
    let n = l.nilradical()?;
    let (root_signature, jordan_block_count) = if n.dim() == 4 && l.dim() == 5 {
        let a = action_root_data(l)?;
        (Some(a.root_signature), Some(a.jordan_block_count))
    } else {
        (None, None)
    };
    Ok(Fingerprint {
        lcs_dims: report.lcs_dims,
        ds_dims: report.ds_dims,
        center_dim: report.center_dim,
        nilradical_dim: n.dim(),
        nilradical_derived_dim: l.bracket_spaces(&n.space, &n.space).dim(),
        unimodular: report.unimodular,
        root_signature,
        jordan_block_count,
        abelian_ideal_4: if report.nilpotent { Some(l.has_abelian_ideal_dim4()?) } else { None },
    })
}

/// Nilradical shapes the key distinguishes.
fn nilradical_type(l: &LieAlgebra, n: &Subspace) -> &'static str {
    let derived = l.bracket_spaces(n, n).dim();
    let center_of_n = l.centralizer(n).intersect(n).dim();
    match (n.dim(), derived, center_of_n) {
        (3, 0, _) => "R^3",
        (4, 0, _) => "R^4",
        (4, 1, 2) => "R+n3",
        _ => "other",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn reference_fingerprint(label: &GeometryLabel) -> Fingerprint {
    static CACHE: OnceLock<Vec<(String, Fingerprint)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let mut labels: Vec<GeometryLabel> = Leaf::ALL.iter().map(|l| l.reference_label()).collect();
        labels.extend(atlas::sub_label_references());
        labels
            .iter()
            .map(|lab| {
                let alg = atlas::build_algebra(lab).expect("references are constructible");
                (reference_key(lab), fingerprint(&alg).expect("references are solvable"))
            })
            .collect()
    });
    let key = reference_key(label);
    cache
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, f)| f.clone())
        .expect("every reachable label has a reference")
}

/// Family members share their family's reference.
fn reference_key(label: &GeometryLabel) -> String {
    match label {
        GeometryLabel::Sol5Diag(_) => "sol5-diag".into(),
        GeometryLabel::Sol5Complex(_) => "sol5-complex".into(),
        GeometryLabel::Sol4mnxE(_) => "sol4mn-e".into(),
        other => other.to_string(),
    }
}

/// Walk the key; the reached label must match its reference fingerprint.
pub fn classify_solvable5(l: &LieAlgebra) -> Result<Classification, ClassifyError> {
    if l.dim() != 5 {
        return Err(ClassifyError::WrongDimension(l.dim()));
    }
    l.validate().map_err(ClassifyError::Invalid)?;
    let report = l.structure_report();
    if !report.solvable {
        return Err(ClassifyError::NotSolvable);
    }
    let fp = fingerprint(l)?;
    let mut trace = Trace::default();
    trace.push("Lie algebra is solvable", "yes", Some(format!("derived series dims {:?}", report.ds_dims)));
    let not_in_key = |trace: Trace| ClassifyError::NotInKey { fingerprint: Box::new(fp.clone()), trace };

    let mut params = None;
    let (leaf, label) = if report.nilpotent {
        trace.push("nilpotent", "yes", Some(format!("lower central series dims {:?}", report.lcs_dims)));
        let abelian4 = l.has_abelian_ideal_dim4()?;
        trace.push("4-D abelian ideal", yes_no(abelian4), None);
        let g4 = report.lcs_dims.get(3).is_some_and(|&d| d > 0);
        trace.push("g^4 != 0", yes_no(g4), Some(format!("dim g^4 = {}", report.lcs_dims.get(3).copied().unwrap_or(0))));
        let leaf = match (abelian4, g4) {
            (true, true) => Leaf::R4X4,
            (true, false) => Leaf::Nil4xE,
            (false, true) => Leaf::Nil4Chain431,
            (false, false) => Leaf::Nil4Chain31,
        };
        (leaf, leaf.reference_label())
    } else {
        trace.push("nilpotent", "no", Some(format!("lower central series dims {:?}", report.lcs_dims)));
        let n = l.nilradical()?;
        let kind = nilradical_type(l, &n.space);
        trace.push("nilradical", kind, Some(format!("dim {}", n.dim())));
        match kind {
            "R^3" => (Leaf::R3Torus, Leaf::R3Torus.reference_label()),
            "R^4" => {
                let a = action_root_data(l)?;
                trace.push("Jordan blocks", a.jordan_block_count.to_string(), Some(format!("charpoly {}", a.charpoly)));
                match a.jordan_block_count {
                    2 => (Leaf::TwoJordan, Leaf::TwoJordan.reference_label()),
                    3 => (Leaf::ThreeJordan, Leaf::ThreeJordan.reference_label()),
                    4 => {
                        let fpar = family_params(l)?;
                        let label = fpar.pattern.label(&fpar.normalized);
                        trace.push("root pattern", pattern_answer(fpar.pattern), None);
                        params = Some(fpar);
                        match label {
                            Some(label) => (Leaf::FourJordan, label),
                            None => return Err(not_in_key(trace)),
                        }
                    }
                    _ => return Err(not_in_key(trace)),
                }
            }
            "R+n3" => {
                trace.push("center dim", report.center_dim.to_string(), None);
                match report.center_dim {
                    1 => (Leaf::Center1, Leaf::Center1.reference_label()),
                    2 => (Leaf::Center2, Leaf::Center2.reference_label()),
                    _ => return Err(not_in_key(trace)),
                }
            }
            _ => return Err(not_in_key(trace)),
        }
    };
    if reference_fingerprint(&label) != fp {
        trace.push("fingerprint matches reference", "no", None);
        return Err(not_in_key(trace));
    }
    Ok(Classification { label, leaf, trace, params })
}

fn pattern_answer(p: RootPattern) -> &'static str {
    match p {
        RootPattern::DistinctReal => "4 distinct real roots",
        RootPattern::RealAndComplex => "2 real roots and a complex pair",
        RootPattern::Repeated => "(1,1,-1,-1)",
        RootPattern::OneZero => "one zero root",
        RootPattern::DoubleAndZero => "(a,a,-2a,0)",
        RootPattern::TwoZeros => "two zero roots",
        RootPattern::Other => "unlisted pattern",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Mat, Rat};

    fn diag(xs: &[i64]) -> Mat {
        Mat::diag(&xs.iter().map(|&x| Rat::int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn leaves_round_trip() {
        for leaf in Leaf::ALL {
            let c = classify_solvable5(&leaf.reference_algebra()).unwrap();
            assert_eq!(c.leaf, leaf);
            assert_eq!(c.label, leaf.reference_label());
        }
    }

    #[test]
    fn leaf_fingerprints_distinct() {
        let fps: Vec<Fingerprint> = Leaf::ALL.iter().map(|l| fingerprint(&l.reference_algebra()).unwrap()).collect();
        for i in 0..fps.len() {
            for j in 0..i {
                assert_ne!(fps[i], fps[j], "{:?} vs {:?}", Leaf::ALL[i], Leaf::ALL[j]);
            }
        }
    }

    #[test]
    fn rejections() {
        for name in ["Heis5", "E^5", "A5,1", "A5,3"] {
            let l = atlas::build_algebra(&name.parse().unwrap()).unwrap();
            assert!(matches!(classify_solvable5(&l), Err(ClassifyError::NotInKey { .. })), "{name}");
        }
    }

    #[test]
    fn nilpotent_path() {
        let c = classify_solvable5(&Leaf::R4X4.reference_algebra()).unwrap();
        assert_eq!(
            c.trace.answers(),
            vec![
                ("Lie algebra is solvable", "yes"),
                ("nilpotent", "yes"),
                ("4-D abelian ideal", "yes"),
                ("g^4 != 0", "yes")
            ]
        );
    }

    #[test]
    fn family_sub_labels() {
        let l = LieAlgebra::semidirect_abelian(&[diag(&[1, -1, 0, 0])]);
        let c = classify_solvable5(&l).unwrap();
        assert_eq!(c.label.to_string(), "Sol^3 x E^2");
        let l = LieAlgebra::semidirect_abelian(&[diag(&[1, 1, -1, -1])]);
        assert_eq!(classify_solvable5(&l).unwrap().label, GeometryLabel::Named(Named::A57Repeated));
        let l = LieAlgebra::semidirect_abelian(&[diag(&[3, 1, 2, -6])]);
        assert_eq!(classify_solvable5(&l).unwrap().label.to_string(), "A5,7^{2/3,1/3,-2}");
        let l = LieAlgebra::semidirect_abelian(&[diag(&[1, 1, 1, -3])]);
        assert!(matches!(classify_solvable5(&l), Err(ClassifyError::NotInKey { .. })));
        // not unimodular
        let l = LieAlgebra::semidirect_abelian(&[diag(&[1, 2, 3, 4])]);
        assert!(matches!(classify_solvable5(&l), Err(ClassifyError::NotInKey { .. })));
    }

    #[test]
    fn action_examples() {
        let l = LieAlgebra::semidirect_abelian(&[diag(&[1, 2, 3, -6])]);
        let a = action_root_data(&l).unwrap();
        assert_eq!(a.jordan_block_count, 4);
        assert_eq!(a.root_signature.real, 4);
        let j = Mat::block_diag(&[Mat::jordan_block(&Rat::one(), 2), Mat::jordan_block(&Rat::int(-1), 2)]);
        let a = action_root_data(&LieAlgebra::semidirect_abelian(&[j])).unwrap();
        assert_eq!(a.jordan_block_count, 2);
        let torus = LieAlgebra::semidirect_abelian(&[diag(&[1, -1, 0]), diag(&[0, 1, -1])]);
        assert!(matches!(action_root_data(&torus), Err(ClassifyError::WrongBranch(_))));
    }

    #[test]
    fn fingerprint_examples() {
        let f = fingerprint(&LieAlgebra::abelian(5)).unwrap();
        assert_eq!((f.lcs_dims.clone(), f.center_dim, f.unimodular), (vec![5, 0], 5, true));
        let h = LieAlgebra::from_int_brackets(3, &[(0, 1, &[(2, 1)])]).direct_sum(&LieAlgebra::abelian(2));
        let f = fingerprint(&h).unwrap();
        assert_eq!((f.lcs_dims, f.center_dim), (vec![5, 1, 0], 3));
    }
}
