//! Stock Hopf algebras with canonical bases, plus the metadata the rest of
//! the crate uses to search and classify them: known group-likes, a
//! generating set with coalgebra types, a word basis expressing every basis
//! element as a product of generators, and the shape of the automorphism
//! group where it is known.
//!
//! Available:
//!
//! - `sweedler4`: the 4-dimensional algebra ⟨g, x | g² = 1, x² = 0,
//!   xg = −gx⟩ with g group-like and Δ(x) = x⊗1 + g⊗x
//! - `line_nilpotent`: k⟨y | y^p = 0⟩ with y primitive, char k = p
//! - `line_semisimple`: k⟨y | y^p = y⟩ with y primitive, char k = p
//! - `cyclic_group_algebra`: k[C_n]
//! - tensor products of any of the above
//!
//! [`CatalogRef`] is the string form used by the command line and by
//! serialized files: `catalog:sweedler4`, `catalog:line0:3`,
//! `catalog:line1:5`, `catalog:cyclic:4`, `catalog:tensor(ref,ref)`.

use crate::hopf::{tensor_hopf, HopfAlgebraData, HopfError};
use crate::linalg::{Matrix, Vector};
use crate::scalars::{FieldSpec, Scalar};
use std::sync::Arc;

/// Coalgebra shape of a generator, used to bound candidate images during
/// morphism search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    GroupLike,
    /// Δ(z) = z⊗1 + 1⊗z.
    Primitive,
    /// Δ(z) = z⊗tail + head⊗z, where each frame is 1 or another
    /// (group-like) generator.
    SkewPrimitive { tail: SkewFrame, head: SkewFrame },
}

/// One leg of a skew-primitive frame: the unit, or a reference into the
/// generator list (by position, not basis index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewFrame {
    Unit,
    Generator(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub basis_index: usize,
    pub kind: GeneratorKind,
}

/// A generating set plus one word per basis element. `words[i]` lists
/// generator positions whose product (left to right) equals basis element
/// i; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorData {
    pub generators: Vec<GeneratorSpec>,
    pub words: Vec<Vec<usize>>,
}

/// Which scalars a scaling automorphism may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaRange {
    /// All of k*.
    FullUnits,
    /// Only the units of the prime subfield 𝔽_p ⊆ k.
    PrimeSubfieldUnits,
}

/// Known shape of the Hopf automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutModel {
    /// Every automorphism fixes all generators except one, which it
    /// scales by a unit from `range`.
    Scaling { generator: usize, range: AlphaRange },
    /// No closed form known here; enumerate (finite fields only).
    FiniteSearch,
}

/// A catalog algebra bundled with its search metadata.
#[derive(Debug, Clone)]
pub struct CatalogAlgebra {
    pub name: String,
    pub algebra: Arc<HopfAlgebraData>,
    /// Complete list of group-like elements, when known in closed form
    /// over every supported field.
    pub group_likes: Option<Vec<Vector>>,
    pub generators: Option<GeneratorData>,
    pub aut_model: AutModel,
}

/// Sweedler's 4-dimensional Hopf algebra on the basis {1, g, x, gx}.
pub fn sweedler4(spec: &FieldSpec) -> HopfAlgebraData {
    let f = spec.clone();
    let e = |i: usize| Vector::unit(&f, 4, i);
    let zero = Vector::zero(&f, 4);

    // g² = 1, x² = 0, xg = −gx, and the products they force
    let mult = vec![
        vec![e(0), e(1), e(2), e(3)],
        vec![e(1), e(0), e(3), e(2)],
        vec![e(2), e(3).neg(), zero.clone(), zero.clone()],
        vec![e(3), e(2).neg(), zero.clone(), zero],
    ];

    let comult = vec![
        vec![(0, 0, f.one())],
        vec![(1, 1, f.one())],
        vec![(2, 0, f.one()), (1, 2, f.one())],
        vec![(3, 1, f.one()), (0, 3, f.one())],
    ];

    let counit = vec![f.one(), f.one(), f.zero(), f.zero()];

    // S(g) = g, S(x) = −gx, S(gx) = x
    let mut antipode = Matrix::zero(&f, 4, 4);
    antipode.set(0, 0, f.one());
    antipode.set(1, 1, f.one());
    antipode.set(3, 2, f.integer(-1));
    antipode.set(2, 3, f.one());

    let unit = e(0);
    HopfAlgebraData::new(
        f,
        vec!["1".into(), "g".into(), "x".into(), "gx".into()],
        mult,
        unit,
        comult,
        counit,
        antipode,
    )
    .expect("sweedler4 tables are well formed")
}

fn power_label(sym: &str, j: usize) -> String {
    match j {
        0 => "1".into(),
        1 => sym.into(),
        _ => format!("{sym}^{j}"),
    }
}

/// Binomial coefficients C(j, t) for j < p, computed in the field by the
/// Pascal recurrence.
fn binomials(f: &FieldSpec, rows: usize) -> Vec<Vec<Scalar>> {
    let mut table: Vec<Vec<Scalar>> = Vec::with_capacity(rows);
    for j in 0..rows {
        let mut row = vec![f.one(); j + 1];
        for t in 1..j {
            row[t] = &table[j - 1][t - 1] + &table[j - 1][t];
        }
        table.push(row);
    }
    table
}

fn require_char(p: u64, spec: &FieldSpec) -> Result<(), HopfError> {
    if spec.characteristic() != p {
        return Err(HopfError::CharMismatch(format!(
            "algebra needs characteristic {p}, field {} has characteristic {}",
            spec.describe(),
            spec.characteristic()
        )));
    }
    Ok(())
}

/// Common scaffold of the two p-dimensional line algebras: basis
/// {1, y, …, y^{p−1}} with y primitive. `reduce` maps an exponent ≥ p back
/// into range, or returns None when the power is zero.
fn line_algebra(
    p: u64,
    spec: &FieldSpec,
    reduce: impl Fn(usize) -> Option<usize>,
) -> Result<HopfAlgebraData, HopfError> {
    require_char(p, spec)?;
    let f = spec.clone();
    let n = p as usize;

    let labels: Vec<String> = (0..n).map(|j| power_label("y", j)).collect();

    let mut mult = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let v = match reduce(i + j) {
                Some(k) => Vector::unit(&f, n, k),
                None => Vector::zero(&f, n),
            };
            row.push(v);
        }
        mult.push(row);
    }

    let binom = binomials(&f, n);
    let mut comult = Vec::with_capacity(n);
    for j in 0..n {
        let mut terms = Vec::new();
        for t in 0..=j {
            terms.push((t, j - t, binom[j][t].clone()));
        }
        comult.push(terms);
    }

    let counit: Vec<Scalar> = (0..n)
        .map(|j| if j == 0 { f.one() } else { f.zero() })
        .collect();

    // S(y^j) = (−1)^j y^j
    let mut antipode = Matrix::zero(&f, n, n);
    for j in 0..n {
        let sign = if j % 2 == 0 { f.one() } else { f.integer(-1) };
        antipode.set(j, j, sign);
    }

    HopfAlgebraData::new(f, labels, mult, Vector::unit(spec, n, 0), comult, counit, antipode)
}

/// k⟨y | y^p = 0⟩ over a field of characteristic p, y primitive.
pub fn line_nilpotent(p: u64, spec: &FieldSpec) -> Result<HopfAlgebraData, HopfError> {
    let n = p as usize;
    line_algebra(p, spec, move |e| if e < n { Some(e) } else { None })
}

/// k⟨y | y^p = y⟩ over a field of characteristic p, y primitive.
pub fn line_semisimple(p: u64, spec: &FieldSpec) -> Result<HopfAlgebraData, HopfError> {
    let n = p as usize;
    line_algebra(p, spec, move |mut e| {
        // y^p = y collapses exponents mod p−1 on the nonzero range
        while e >= n {
            e -= n - 1;
        }
        Some(e)
    })
}

/// Group algebra k[C_n] on the group-like basis {1, g, …, g^{n−1}}.
pub fn cyclic_group_algebra(n: usize, spec: &FieldSpec) -> Result<HopfAlgebraData, HopfError> {
    if n == 0 {
        return Err(HopfError::MalformedData(
            "cyclic group algebra needs n >= 1".into(),
        ));
    }
    let f = spec.clone();
    let labels: Vec<String> = (0..n).map(|j| power_label("g", j)).collect();

    let mut mult = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(Vector::unit(&f, n, (i + j) % n));
        }
        mult.push(row);
    }

    let comult = (0..n).map(|i| vec![(i, i, f.one())]).collect();
    let counit = vec![f.one(); n];

    let mut antipode = Matrix::zero(&f, n, n);
    for j in 0..n {
        antipode.set((n - j) % n, j, f.one());
    }

    HopfAlgebraData::new(f, labels, mult, Vector::unit(spec, n, 0), comult, counit, antipode)
}

/// Parsed form of a `catalog:` reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogRef {
    Sweedler4,
    LineNilpotent(u64),
    LineSemisimple(u64),
    Cyclic(usize),
    Tensor(Box<CatalogRef>, Box<CatalogRef>),
}

impl CatalogRef {
    /// Parses `catalog:NAME[:param]` with `tensor(lhs,rhs)` nesting.
    pub fn parse(s: &str) -> Result<CatalogRef, HopfError> {
        let s = s.trim();
        let body = s
            .strip_prefix("catalog:")
            .ok_or_else(|| HopfError::MalformedData(format!("not a catalog reference: {s:?}")))?;
        Self::parse_body(body)
    }

    fn parse_body(body: &str) -> Result<CatalogRef, HopfError> {
        let body = body.trim();
        if body == "sweedler4" {
            return Ok(CatalogRef::Sweedler4);
        }
        if let Some(rest) = body.strip_prefix("line0:") {
            let p = rest
                .trim()
                .parse::<u64>()
                .map_err(|_| HopfError::MalformedData(format!("bad prime in {body:?}")))?;
            return Ok(CatalogRef::LineNilpotent(p));
        }
        if let Some(rest) = body.strip_prefix("line1:") {
            let p = rest
                .trim()
                .parse::<u64>()
                .map_err(|_| HopfError::MalformedData(format!("bad prime in {body:?}")))?;
            return Ok(CatalogRef::LineSemisimple(p));
        }
        if let Some(rest) = body.strip_prefix("cyclic:") {
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| HopfError::MalformedData(format!("bad order in {body:?}")))?;
            return Ok(CatalogRef::Cyclic(n));
        }
        if let Some(rest) = body.strip_prefix("tensor(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| {
                HopfError::MalformedData(format!("unbalanced parentheses in {body:?}"))
            })?;
            // split on the comma at paren depth zero
            let mut depth = 0usize;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth = depth.checked_sub(1).ok_or_else(|| {
                            HopfError::MalformedData(format!(
                                "unbalanced parentheses in {body:?}"
                            ))
                        })?;
                    }
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| {
                HopfError::MalformedData(format!("tensor needs two arguments in {body:?}"))
            })?;
            let lhs = Self::parse(&inner[..i])?;
            let rhs = Self::parse(&inner[i + 1..])?;
            return Ok(CatalogRef::Tensor(Box::new(lhs), Box::new(rhs)));
        }
        Err(HopfError::MalformedData(format!(
            "unknown catalog entry {body:?}"
        )))
    }

    pub fn canonical_name(&self) -> String {
        match self {
            CatalogRef::Sweedler4 => "catalog:sweedler4".into(),
            CatalogRef::LineNilpotent(p) => format!("catalog:line0:{p}"),
            CatalogRef::LineSemisimple(p) => format!("catalog:line1:{p}"),
            CatalogRef::Cyclic(n) => format!("catalog:cyclic:{n}"),
            CatalogRef::Tensor(a, b) => format!(
                "catalog:tensor({},{})",
                a.canonical_name(),
                b.canonical_name()
            ),
        }
    }

    /// Builds the algebra with metadata over the given field.
    pub fn build(&self, spec: &FieldSpec) -> Result<CatalogAlgebra, HopfError> {
        match self {
            CatalogRef::Sweedler4 => {
                let alg = Arc::new(sweedler4(spec));
                let group_likes = Some(vec![alg.basis_vector(0), alg.basis_vector(1)]);
                let generators = Some(GeneratorData {
                    generators: vec![
                        GeneratorSpec {
                            basis_index: 1,
                            kind: GeneratorKind::GroupLike,
                        },
                        GeneratorSpec {
                            basis_index: 2,
                            kind: GeneratorKind::SkewPrimitive {
                                tail: SkewFrame::Unit,
                                head: SkewFrame::Generator(0),
                            },
                        },
                    ],
                    words: vec![vec![], vec![0], vec![1], vec![0, 1]],
                });
                Ok(CatalogAlgebra {
                    name: self.canonical_name(),
                    algebra: alg,
                    group_likes,
                    generators,
                    aut_model: AutModel::Scaling {
                        generator: 1,
                        range: AlphaRange::FullUnits,
                    },
                })
            }
            CatalogRef::LineNilpotent(p) => {
                let alg = Arc::new(line_nilpotent(*p, spec)?);
                Ok(CatalogAlgebra {
                    name: self.canonical_name(),
                    group_likes: Some(vec![alg.basis_vector(0)]),
                    generators: Some(line_generators(*p as usize)),
                    algebra: alg,
                    aut_model: AutModel::Scaling {
                        generator: 0,
                        range: AlphaRange::FullUnits,
                    },
                })
            }
            CatalogRef::LineSemisimple(p) => {
                let alg = Arc::new(line_semisimple(*p, spec)?);
                Ok(CatalogAlgebra {
                    name: self.canonical_name(),
                    group_likes: None,
                    generators: Some(line_generators(*p as usize)),
                    algebra: alg,
                    aut_model: AutModel::Scaling {
                        generator: 0,
                        range: AlphaRange::PrimeSubfieldUnits,
                    },
                })
            }
            CatalogRef::Cyclic(n) => {
                let alg = Arc::new(cyclic_group_algebra(*n, spec)?);
                let group_likes = Some((0..*n).map(|i| alg.basis_vector(i)).collect());
                let generators = if *n >= 2 {
                    Some(GeneratorData {
                        generators: vec![GeneratorSpec {
                            basis_index: 1,
                            kind: GeneratorKind::GroupLike,
                        }],
                        words: (0..*n).map(|j| vec![0; j]).collect(),
                    })
                } else {
                    Some(GeneratorData {
                        generators: vec![],
                        words: vec![vec![]],
                    })
                };
                Ok(CatalogAlgebra {
                    name: self.canonical_name(),
                    algebra: alg,
                    group_likes,
                    generators,
                    aut_model: AutModel::FiniteSearch,
                })
            }
            CatalogRef::Tensor(a, b) => {
                let left = a.build(spec)?;
                let right = b.build(spec)?;
                tensor_catalog(&left, &right)
            }
        }
    }
}

fn line_generators(p: usize) -> GeneratorData {
    GeneratorData {
        generators: vec![GeneratorSpec {
            basis_index: 1,
            kind: GeneratorKind::Primitive,
        }],
        words: (0..p).map(|j| vec![0; j]).collect(),
    }
}

/// Tensor product of two catalog algebras, composing metadata where it
/// survives: group-likes multiply pairwise, generators embed through
/// a ↦ a⊗1 and b ↦ 1⊗b (frames keep their relative positions, right-hand
/// frames shift past the left-hand generator list).
pub fn tensor_catalog(
    a: &CatalogAlgebra,
    b: &CatalogAlgebra,
) -> Result<CatalogAlgebra, HopfError> {
    let alg = Arc::new(tensor_hopf(&a.algebra, &b.algebra)?);
    let nb = b.algebra.dim();

    let group_likes = match (&a.group_likes, &b.group_likes) {
        (Some(ga), Some(gb)) => {
            let mut out = Vec::with_capacity(ga.len() * gb.len());
            for va in ga {
                for vb in gb {
                    out.push(va.kron(vb));
                }
            }
            Some(out)
        }
        _ => None,
    };

    let generators = match (&a.generators, &b.generators) {
        (Some(ga), Some(gb)) => {
            let offset = ga.generators.len();
            let shift_frame = |fr: &SkewFrame, off: usize| match fr {
                SkewFrame::Unit => SkewFrame::Unit,
                SkewFrame::Generator(i) => SkewFrame::Generator(i + off),
            };
            let shift_kind = |k: &GeneratorKind, off: usize| match k {
                GeneratorKind::SkewPrimitive { tail, head } => GeneratorKind::SkewPrimitive {
                    tail: shift_frame(tail, off),
                    head: shift_frame(head, off),
                },
                other => *other,
            };
            let mut generators = Vec::with_capacity(offset + gb.generators.len());
            for g in &ga.generators {
                generators.push(GeneratorSpec {
                    basis_index: g.basis_index * nb,
                    kind: shift_kind(&g.kind, 0),
                });
            }
            for g in &gb.generators {
                generators.push(GeneratorSpec {
                    basis_index: g.basis_index,
                    kind: shift_kind(&g.kind, offset),
                });
            }
            let mut words = Vec::with_capacity(alg.dim());
            for x in 0..alg.dim() {
                let (i, j) = (x / nb, x % nb);
                let mut w = ga.words[i].clone();
                w.extend(gb.words[j].iter().map(|k| k + offset));
                words.push(w);
            }
            Some(GeneratorData { generators, words })
        }
        _ => None,
    };

    Ok(CatalogAlgebra {
        name: format!("catalog:tensor({},{})", a.name, b.name),
        algebra: alg,
        group_likes,
        generators,
        aut_model: AutModel::FiniteSearch,
    })
}
