//! JSON interchange for algebras, crossed systems, morphisms, and reports.
//!
//! Sparse tables travel as index rows: mult and comult entries are
//! `[i, j, k, "c"]`, antipode entries `[i, j, "c"]`, and anything omitted
//! is zero.  Unit and counit are dense coefficient lists.  Coefficients
//! are strings in the grammar of [`FieldSpec::parse_scalar`], which prints
//! and parses exactly, so a written algebra re-reads to an identical
//! structure.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{CatalogAlgebra, CatalogRef};
use crate::crossed::{trivial_action_table, trivial_cocycle_table, CrossedSystemData};
use crate::hopf::{HopfAlgebraData, HopfError};
use crate::linalg::{Matrix, Vector};
use crate::report::VerificationReport;
use crate::scalars::{FieldKind, FieldSpec, ScalarError};
use crate::sweedler::{element_label, ClassificationReport, TriState};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("{0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDto {
    Rationals,
    Prime { p: u64 },
    RationalFunctions { p: u64, vars: Vec<String> },
}

pub fn field_to_dto(spec: &FieldSpec) -> FieldDto {
    match spec.kind() {
        FieldKind::Rationals => FieldDto::Rationals,
        FieldKind::PrimeField { p } => FieldDto::Prime { p: *p },
        FieldKind::RationalFunctions { p, vars } => FieldDto::RationalFunctions {
            p: *p,
            vars: vars.clone(),
        },
    }
}

pub fn field_from_dto(dto: &FieldDto) -> Result<FieldSpec, IoError> {
    Ok(match dto {
        FieldDto::Rationals => FieldSpec::rationals(),
        FieldDto::Prime { p } => FieldSpec::prime_field(*p)?,
        FieldDto::RationalFunctions { p, vars } => {
            FieldSpec::rational_functions(*p, vars.clone())?
        }
    })
}

/// Flag grammar for fields: `q`, `fP`, or `fP(V1,...,Vn)`.
pub fn parse_field_flag(s: &str) -> Result<FieldSpec, IoError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::rationals());
    }
    let body = s
        .strip_prefix('f')
        .or_else(|| s.strip_prefix('F'))
        .ok_or_else(|| IoError::Malformed(format!("unrecognized field {s:?}")))?;
    if let Some(open) = body.find('(') {
        let close = body
            .strip_suffix(')')
            .ok_or_else(|| IoError::Malformed(format!("unbalanced parentheses in {s:?}")))?;
        let p: u64 = close[..open]
            .parse()
            .map_err(|_| IoError::Malformed(format!("bad prime in {s:?}")))?;
        let vars: Vec<String> = close[open + 1..]
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if vars.is_empty() {
            return Err(IoError::Malformed(format!("no variables listed in {s:?}")));
        }
        return Ok(FieldSpec::rational_functions(p, vars)?);
    }
    let p: u64 = body
        .parse()
        .map_err(|_| IoError::Malformed(format!("bad prime in {s:?}")))?;
    Ok(FieldSpec::prime_field(p)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDto {
    pub field: FieldDto,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub counit: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mult: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comult: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub antipode: Vec<(usize, usize, String)>,
}

pub fn algebra_to_dto(alg: &HopfAlgebraData) -> AlgebraDto {
    let field = alg.field();
    let n = alg.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in alg.mul_basis(i, j).entries().iter().enumerate() {
                if !c.is_zero() {
                    mult.push((i, j, k, field.format_scalar(c)));
                }
            }
        }
    }
    let mut comult = Vec::new();
    for i in 0..n {
        for (j, k, c) in alg.comult_basis(i) {
            comult.push((i, *j, *k, field.format_scalar(c)));
        }
    }
    // antipode column j holds the coordinates of S(e_j)
    let mut antipode = Vec::new();
    for j in 0..n {
        let img = alg.antipode(&alg.basis_vector(j));
        for (i, c) in img.entries().iter().enumerate() {
            if !c.is_zero() {
                antipode.push((i, j, field.format_scalar(c)));
            }
        }
    }
    AlgebraDto {
        field: field_to_dto(field),
        dim: n,
        basis: alg.labels().to_vec(),
        unit: alg
            .unit_vector()
            .entries()
            .iter()
            .map(|c| field.format_scalar(c))
            .collect(),
        counit: alg
            .counit_table()
            .iter()
            .map(|c| field.format_scalar(c))
            .collect(),
        mult,
        comult,
        antipode,
    }
}

pub fn algebra_from_dto(dto: &AlgebraDto) -> Result<HopfAlgebraData, IoError> {
    let field = field_from_dto(&dto.field)?;
    let n = dto.dim;
    if dto.basis.len() != n {
        return Err(IoError::Malformed(format!(
            "dim is {n} but basis lists {} labels",
            dto.basis.len()
        )));
    }
    if dto.unit.len() != n || dto.counit.len() != n {
        return Err(IoError::Malformed(
            "unit and counit must list one coefficient per basis element".into(),
        ));
    }
    let bound = |idx: usize, what: &str| -> Result<(), IoError> {
        if idx >= n {
            Err(IoError::Malformed(format!(
                "{what} entry references index {idx}, dimension is {n}"
            )))
        } else {
            Ok(())
        }
    };
    let unit_entries = dto
        .unit
        .iter()
        .map(|s| field.parse_scalar(s))
        .collect::<Result<Vec<_>, _>>()?;
    let unit = Vector::new(field.clone(), unit_entries);
    let counit = dto
        .counit
        .iter()
        .map(|s| field.parse_scalar(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut mult = vec![vec![Vector::zero(&field, n); n]; n];
    for (i, j, k, c) in &dto.mult {
        bound(*i, "mult")?;
        bound(*j, "mult")?;
        bound(*k, "mult")?;
        let c = field.parse_scalar(c)?;
        let cur = mult[*i][*j].get(*k) + &c;
        mult[*i][*j].set(*k, cur);
    }
    let mut comult: Vec<Vec<(usize, usize, crate::scalars::Scalar)>> = vec![Vec::new(); n];
    for (i, j, k, c) in &dto.comult {
        bound(*i, "comult")?;
        bound(*j, "comult")?;
        bound(*k, "comult")?;
        comult[*i].push((*j, *k, field.parse_scalar(c)?));
    }
    let mut antipode = Matrix::zero(&field, n, n);
    for (i, j, c) in &dto.antipode {
        bound(*i, "antipode")?;
        bound(*j, "antipode")?;
        let c = field.parse_scalar(c)?;
        let cur = antipode.get(*i, *j) + &c;
        antipode.set(*i, *j, cur);
    }
    Ok(HopfAlgebraData::new(
        field,
        dto.basis.clone(),
        mult,
        unit,
        comult,
        counit,
        antipode,
    )?)
}

pub fn write_algebra_json(alg: &HopfAlgebraData) -> String {
    serde_json::to_string_pretty(&algebra_to_dto(alg)).expect("algebra DTOs always serialize")
}

pub fn read_algebra_json(text: &str) -> Result<HopfAlgebraData, IoError> {
    algebra_from_dto(&serde_json::from_str::<AlgebraDto>(text)?)
}

/// Parses a linear combination of basis elements, written against the
/// algebra's own labels: "y", "2*y", "2*y + 1", "X1*y", "0".  Terms are
/// split on + and - outside parentheses; each term is a basis label, a
/// scalar followed by "*label", or a bare scalar (taken as a multiple of
/// the basis element labeled "1").
pub fn parse_element(alg: &HopfAlgebraData, s: &str) -> Result<Vector, IoError> {
    let field = alg.field();
    let mut out = Vector::zero(field, alg.dim());
    if s.trim().is_empty() {
        return Err(IoError::Malformed("empty element expression".into()));
    }

    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && cur.trim().is_empty() => {
                if ch == '-' {
                    neg = !neg;
                }
            }
            '+' | '-' if depth == 0 => {
                terms.push((neg, cur.trim().to_string()));
                cur = String::new();
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(IoError::Malformed(format!("no terms in {s:?}")));
    }

    let labels = alg.labels();
    for (negated, term) in terms {
        let (idx, coeff) = if let Some(i) = labels.iter().position(|l| l == &term) {
            (i, field.one())
        } else if let Some((i, label)) = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| term.len() > l.len() + 1 && term.ends_with(l.as_str()))
            .max_by_key(|(_, l)| l.len())
            .map(|(i, l)| (i, l.clone()))
        {
            let head = &term[..term.len() - label.len()];
            let head = head
                .strip_suffix('*')
                .ok_or_else(|| IoError::Malformed(format!("cannot read term {term:?}")))?;
            (i, field.parse_scalar(head)?)
        } else {
            let c = field.parse_scalar(&term)?;
            if c.is_zero() {
                continue;
            }
            let i = labels.iter().position(|l| l == "1").ok_or_else(|| {
                IoError::Malformed(format!(
                    "term {term:?} is a bare scalar but no basis element is labeled \"1\""
                ))
            })?;
            (i, c)
        };
        let signed = if negated { -&coeff } else { coeff };
        let cur = out.get(idx) + &signed;
        out.set(idx, cur);
    }
    Ok(out)
}

/// A factor of a crossed system: a catalog reference string or an inline
/// algebra document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRefDto {
    Catalog(String),
    Inline(Box<AlgebraDto>),
}

impl AlgebraRefDto {
    pub fn resolve(&self, spec: &FieldSpec) -> Result<Arc<HopfAlgebraData>, IoError> {
        match self {
            AlgebraRefDto::Catalog(s) => {
                Ok(Arc::clone(&CatalogRef::parse(s)?.build(spec)?.algebra))
            }
            AlgebraRefDto::Inline(dto) => {
                let alg = algebra_from_dto(dto)?;
                if alg.field() != spec {
                    return Err(IoError::Malformed(format!(
                        "inline algebra over {}, expected {}",
                        alg.field().describe(),
                        spec.describe()
                    )));
                }
                Ok(Arc::new(alg))
            }
        }
    }
}

/// An action or cocycle table: the literal string "trivial" or sparse
/// `[i, j, k, "c"]` rows.  Action rows read as (e_i of H) acting on
/// (e_j of A) with coefficient c at e_k of A; cocycle rows as f(e_i, e_j)
/// with coefficient c at e_k of A.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableDto {
    Named(String),
    Entries(Vec<(usize, usize, usize, String)>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemDto {
    #[serde(rename = "A")]
    pub a: AlgebraRefDto,
    #[serde(rename = "H")]
    pub h: AlgebraRefDto,
    pub action: TableDto,
    pub cocycle: TableDto,
}

enum TableKind {
    Action,
    Cocycle,
}

fn table_from_dto(
    dto: &TableDto,
    a: &Arc<HopfAlgebraData>,
    h: &Arc<HopfAlgebraData>,
    kind: TableKind,
) -> Result<Vec<Vec<Vector>>, IoError> {
    let (cols, what) = match kind {
        TableKind::Action => (a.dim(), "action"),
        TableKind::Cocycle => (h.dim(), "cocycle"),
    };
    match dto {
        TableDto::Named(name) if name == "trivial" => Ok(match kind {
            TableKind::Action => trivial_action_table(a, h),
            TableKind::Cocycle => trivial_cocycle_table(a, h),
        }),
        TableDto::Named(other) => Err(IoError::Malformed(format!(
            "unknown {what} table {other:?}; expected \"trivial\" or entry rows"
        ))),
        TableDto::Entries(entries) => {
            let field = a.field();
            let mut table = vec![vec![Vector::zero(field, a.dim()); cols]; h.dim()];
            for (i, j, k, c) in entries {
                if *i >= h.dim() || *j >= cols || *k >= a.dim() {
                    return Err(IoError::Malformed(format!(
                        "{what} entry ({i}, {j}, {k}) is out of range"
                    )));
                }
                let c = field.parse_scalar(c)?;
                let cur = table[*i][*j].get(*k) + &c;
                table[*i][*j].set(*k, cur);
            }
            Ok(table)
        }
    }
}

fn table_to_dto(table: &[Vec<Vector>], trivial: &[Vec<Vector>], field: &FieldSpec) -> TableDto {
    if table == trivial {
        return TableDto::Named("trivial".into());
    }
    let mut entries = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            for (k, c) in v.entries().iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, field.format_scalar(c)));
                }
            }
        }
    }
    TableDto::Entries(entries)
}

pub fn system_from_dto(dto: &SystemDto, spec: &FieldSpec) -> Result<CrossedSystemData, IoError> {
    let a = dto.a.resolve(spec)?;
    let h = dto.h.resolve(spec)?;
    let action = table_from_dto(&dto.action, &a, &h, TableKind::Action)?;
    let cocycle = table_from_dto(&dto.cocycle, &a, &h, TableKind::Cocycle)?;
    Ok(CrossedSystemData::new(a, h, action, cocycle)?)
}

pub fn system_to_dto(sys: &CrossedSystemData) -> SystemDto {
    let a = sys.a();
    let h = sys.h();
    let field = a.field();
    SystemDto {
        a: AlgebraRefDto::Inline(Box::new(algebra_to_dto(a))),
        h: AlgebraRefDto::Inline(Box::new(algebra_to_dto(h))),
        action: table_to_dto(sys.action(), &trivial_action_table(a, h), field),
        cocycle: table_to_dto(sys.cocycle(), &trivial_cocycle_table(a, h), field),
    }
}

/// Morphism data as matrices of coefficient strings, keyed u, p, r, v.
/// Quadruples carry all four; triples omit p.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismDto {
    pub u: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Vec<String>>>,
    pub r: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
}

pub fn matrix_from_rows(spec: &FieldSpec, rows: &[Vec<String>]) -> Result<Matrix, IoError> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    if nrows == 0 || ncols == 0 {
        return Err(IoError::Malformed("matrix must be nonempty".into()));
    }
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(IoError::Malformed("matrix rows have uneven lengths".into()));
    }
    let mut m = Matrix::zero(spec, nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, spec.parse_scalar(s)?);
        }
    }
    Ok(m)
}

pub fn matrix_to_rows(spec: &FieldSpec, m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| spec.format_scalar(m.get(i, j)))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDto {
    pub subject: String,
    pub passed: bool,
    pub checks: Vec<CheckDto>,
}

pub fn report_to_dto(report: &VerificationReport) -> ReportDto {
    ReportDto {
        subject: report.subject.clone(),
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckDto {
                name: c.name.clone(),
                passed: c.passed,
                witness: c.witness.clone(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TriStateDto {
    Equivalent {
        alpha: String,
        beta: String,
        relation: String,
    },
    NotEquivalent {
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

pub fn tristate_to_dto(t: &TriState, spec: &FieldSpec) -> TriStateDto {
    match t {
        TriState::Equivalent(w) => TriStateDto::Equivalent {
            alpha: spec.format_scalar(&w.alpha),
            beta: spec.format_scalar(&w.beta),
            relation: w.relation.clone(),
        },
        TriState::NotEquivalent(r) => TriStateDto::NotEquivalent { reason: r.clone() },
        TriState::Unknown(r) => TriStateDto::Unknown { reason: r.clone() },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AutDto {
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    pub elements: Vec<(String, String)>,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberDto {
    pub parameter: String,
    pub alpha: String,
    pub beta: String,
    pub relation: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassDto {
    pub representative: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<u64>,
    pub members: Vec<MemberDto>,
    pub aut: AutDto,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationDto {
    pub first_class: usize,
    pub second_class: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationDto {
    pub algebra: String,
    pub field: String,
    pub parameter_space_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2_size: Option<u128>,
    pub h2_description: String,
    pub cocentral_triviality: bool,
    pub class_count: usize,
    pub classes: Vec<ClassDto>,
    pub separations: Vec<SeparationDto>,
    pub complete: bool,
    pub notes: Vec<String>,
}

pub fn classification_to_dto(
    cat: &CatalogAlgebra,
    report: &ClassificationReport,
) -> ClassificationDto {
    let alg = &cat.algebra;
    let field = alg.field();
    ClassificationDto {
        algebra: report.algebra.clone(),
        field: field.describe(),
        parameter_space_dim: report.zp_dim,
        h2_size: report.h2_size,
        h2_description: report.h2_description.clone(),
        cocentral_triviality: report.cocentral_triviality,
        class_count: report.classes.len(),
        classes: report
            .classes
            .iter()
            .map(|c| ClassDto {
                representative: c.representative_label.clone(),
                orbit_size: c.orbit_size,
                members: c
                    .members
                    .iter()
                    .map(|(v, w)| MemberDto {
                        parameter: element_label(alg, v),
                        alpha: field.format_scalar(&w.alpha),
                        beta: field.format_scalar(&w.beta),
                        relation: w.relation.clone(),
                    })
                    .collect(),
                aut: AutDto {
                    condition: c.aut.condition.clone(),
                    order: c.aut.order,
                    elements: c.aut.elements.clone(),
                    exhaustive: c.aut.exhaustive,
                },
            })
            .collect(),
        separations: report
            .separations
            .iter()
            .map(|(i, j, r)| SeparationDto {
                first_class: *i,
                second_class: *j,
                reason: r.clone(),
            })
            .collect(),
        complete: report.complete,
        notes: report.notes.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify_hopf;
    use crate::sweedler::{classification_report, cocycle_from_param, H4CocycleParam};

    fn f3() -> FieldSpec {
        FieldSpec::prime_field(3).unwrap()
    }

    fn round_trip(alg: &HopfAlgebraData) {
        let text = write_algebra_json(alg);
        let back = read_algebra_json(&text).unwrap();
        assert!(back.same_structure(alg), "structure survives the trip");
        assert_eq!(back.labels(), alg.labels());
        assert_eq!(back.field(), alg.field());
    }

    #[test]
    fn algebras_survive_json_round_trips() {
        round_trip(&CatalogRef::Sweedler4.build(&f3()).unwrap().algebra);
        round_trip(&CatalogRef::Sweedler4.build(&FieldSpec::rationals()).unwrap().algebra);
        round_trip(&CatalogRef::Cyclic(4).build(&FieldSpec::rationals()).unwrap().algebra);
        let ratfn = FieldSpec::rational_functions(3, vec!["T".into()]).unwrap();
        round_trip(&CatalogRef::LineNilpotent(3).build(&ratfn).unwrap().algebra);
        let big = CatalogRef::parse("catalog:tensor(catalog:line1:3,catalog:sweedler4)")
            .unwrap()
            .build(&f3())
            .unwrap();
        round_trip(&big.algebra);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(
            read_algebra_json("{not json"),
            Err(IoError::Json(_))
        ));

        let good = algebra_to_dto(&CatalogRef::Sweedler4.build(&f3()).unwrap().algebra);

        let mut bad = good.clone();
        bad.mult.push((0, 0, 9, "1".into()));
        assert!(matches!(
            algebra_from_dto(&bad),
            Err(IoError::Malformed(_))
        ));

        let mut bad = good.clone();
        bad.unit[0] = "1/2".into();
        assert!(matches!(algebra_from_dto(&bad), Err(IoError::Scalar(_))));

        let mut bad = good.clone();
        bad.basis[1] = bad.basis[0].clone();
        assert!(matches!(algebra_from_dto(&bad), Err(IoError::Hopf(_))));

        let mut bad = good;
        bad.dim = 5;
        assert!(matches!(
            algebra_from_dto(&bad),
            Err(IoError::Malformed(_))
        ));
    }

    #[test]
    fn field_flags_parse() {
        assert_eq!(parse_field_flag("q").unwrap(), FieldSpec::rationals());
        assert_eq!(parse_field_flag("f5").unwrap(), FieldSpec::prime_field(5).unwrap());
        assert_eq!(
            parse_field_flag("f3(X1, X2)").unwrap(),
            FieldSpec::rational_functions(3, vec!["X1".into(), "X2".into()]).unwrap()
        );
        assert!(parse_field_flag("r7").is_err());
        assert!(parse_field_flag("f3(").is_err());
        assert!(parse_field_flag("f4").is_err());
    }

    #[test]
    fn element_expressions_parse_against_basis_labels() {
        let field = f3();
        let alg = CatalogRef::LineNilpotent(3).build(&field).unwrap().algebra;
        let e = |i: usize| alg.basis_vector(i);

        assert_eq!(parse_element(&alg, "y").unwrap(), e(1));
        assert_eq!(parse_element(&alg, "0").unwrap(), Vector::zero(&field, 3));
        let two_y = parse_element(&alg, "2*y").unwrap();
        assert_eq!(e(1).add(&e(1)), two_y);
        let combo = parse_element(&alg, "2*y + 1").unwrap();
        assert_eq!(two_y.add(&e(0)), combo);
        assert_eq!(parse_element(&alg, "-y").unwrap(), two_y);
        assert_eq!(parse_element(&alg, "3*1").unwrap(), Vector::zero(&field, 3));
        assert_eq!(parse_element(&alg, "y^2").unwrap(), e(2));
        let mixed = parse_element(&alg, "y - y^2").unwrap();
        assert_eq!(e(1).sub(&e(2)), mixed);

        let ratfn = FieldSpec::rational_functions(3, vec!["X1".into()]).unwrap();
        let alg = CatalogRef::LineNilpotent(3).build(&ratfn).unwrap().algebra;
        let v = parse_element(&alg, "X1*y").unwrap();
        assert_eq!(v.get(1), &ratfn.parse_scalar("X1").unwrap());
        assert!(v.get(0).is_zero());

        assert!(parse_element(&alg, "z").is_err());
        assert!(parse_element(&alg, "").is_err());
    }

    #[test]
    fn systems_survive_json_round_trips() {
        let field = f3();
        let cat = CatalogRef::LineNilpotent(3).build(&field).unwrap();
        let y = cat.algebra.basis_vector(1);
        let param = H4CocycleParam::new(Arc::clone(&cat.algebra), y).unwrap();
        let sys = cocycle_from_param(&param).unwrap();

        let dto = system_to_dto(&sys);
        assert!(matches!(dto.action, TableDto::Named(ref n) if n == "trivial"));
        let text = serde_json::to_string(&dto).unwrap();
        let back: SystemDto = serde_json::from_str(&text).unwrap();
        let sys2 = system_from_dto(&back, &field).unwrap();
        assert_eq!(sys2.action(), sys.action());
        assert_eq!(sys2.cocycle(), sys.cocycle());
    }

    #[test]
    fn systems_accept_catalog_references() {
        let field = f3();
        let text = r#"{
            "A": "catalog:line0:3",
            "H": "catalog:sweedler4",
            "action": "trivial",
            "cocycle": [
                [0, 0, 0, "1"], [0, 1, 0, "1"], [1, 0, 0, "1"], [1, 1, 0, "1"],
                [2, 2, 1, "1"], [2, 3, 1, "2"], [3, 2, 1, "1"], [3, 3, 1, "2"]
            ]
        }"#;
        let dto: SystemDto = serde_json::from_str(text).unwrap();
        let sys = system_from_dto(&dto, &field).unwrap();
        let y = sys.a().basis_vector(1);
        let param = H4CocycleParam::new(Arc::clone(sys.a()), y).unwrap();
        let expected = cocycle_from_param(&param).unwrap();
        assert_eq!(sys.cocycle(), expected.cocycle());
        assert_eq!(sys.action(), expected.action());

        let bad = r#"{"A": "catalog:line0:3", "H": "catalog:sweedler4",
                      "action": "smash", "cocycle": "trivial"}"#;
        let dto: SystemDto = serde_json::from_str(bad).unwrap();
        assert!(matches!(
            system_from_dto(&dto, &field),
            Err(IoError::Malformed(_))
        ));
    }

    #[test]
    fn matrices_and_reports_serialize() {
        let field = f3();
        let rows = vec![
            vec!["1".to_string(), "2".to_string()],
            vec!["0".to_string(), "1".to_string()],
        ];
        let m = matrix_from_rows(&field, &rows).unwrap();
        assert_eq!(matrix_to_rows(&field, &m), rows);
        assert!(matrix_from_rows(&field, &[]).is_err());
        assert!(matrix_from_rows(&field, &[vec!["1".into()], vec![]]).is_err());

        let alg = CatalogRef::Sweedler4.build(&field).unwrap().algebra;
        let dto = report_to_dto(&verify_hopf(&alg));
        assert!(dto.passed);
        assert!(dto.checks.iter().all(|c| c.passed && c.witness.is_none()));
        let value = serde_json::to_value(&dto).unwrap();
        assert!(value["checks"].as_array().unwrap().len() >= 8);
    }

    #[test]
    fn classification_reports_serialize() {
        let field = f3();
        let cat = CatalogRef::LineSemisimple(3).build(&field).unwrap();
        let report = classification_report(&cat, 50_000).unwrap();
        let dto = classification_to_dto(&cat, &report);
        let value = serde_json::to_value(&dto).unwrap();
        assert_eq!(value["class_count"], 2);
        assert_eq!(value["h2_size"], 3);
        assert_eq!(value["complete"], true);
        assert_eq!(value["classes"][1]["members"][0]["alpha"], "2");
    }
}
