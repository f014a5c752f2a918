//! Finite-dimensional Hopf algebras presented by structure constants, and
//! linear maps between them.
//!
//! The data of an algebra of dimension n over a field k:
//!
//! - `mult[i][j]`: the product e_i e_j as a vector of length n
//! - `unit`: the element 1 as a vector
//! - `comult[i]`: Δ(e_i) as sparse triples (j, k, c) meaning c · e_j ⊗ e_k
//! - `counit[i]`: ε(e_i)
//! - `antipode`: the matrix of S, column j holding S(e_j)
//!
//! Comultiplication is stored sparse because every structure map in this
//! crate is evaluated by expanding Sweedler legs, and the catalog algebras
//! have two or three terms per basis element. Multiplication is stored
//! dense by basis pair.
//!
//! [`verify_hopf`] checks all Hopf axioms exhaustively on basis tuples and
//! reports the first failing tuple per named check.

use crate::linalg::{Matrix, Vector};
use crate::report::VerificationReport;
use crate::scalars::{FieldSpec, Scalar};
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("malformed algebra data: {0}")]
    MalformedData(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("characteristic mismatch: {0}")]
    CharMismatch(String),
}

/// Sparse element of A ⊗ A, keyed by basis pair.
pub type SparsePair = BTreeMap<(usize, usize), Scalar>;

/// Sparse element of a higher tensor power, keyed by basis multi-index.
pub type SparseTensor = BTreeMap<Vec<usize>, Scalar>;

pub(crate) fn tensor_insert<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, value: Scalar) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(value);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &value;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// A Hopf algebra over one of the supported exact fields, given by
/// structure constants on a fixed labeled basis. Instances are immutable
/// after construction; the constructor validates shapes only, not the Hopf
/// axioms (that is [`verify_hopf`]'s job).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfAlgebraData {
    field: FieldSpec,
    dim: usize,
    basis_labels: Vec<String>,
    mult: Vec<Vec<Vector>>,
    unit: Vector,
    comult: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    antipode: Matrix,
}

impl HopfAlgebraData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: FieldSpec,
        basis_labels: Vec<String>,
        mult: Vec<Vec<Vector>>,
        unit: Vector,
        comult: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self, HopfError> {
        let dim = basis_labels.len();
        if dim == 0 {
            return Err(HopfError::MalformedData("empty basis".into()));
        }
        for (i, l) in basis_labels.iter().enumerate() {
            if l.is_empty() {
                return Err(HopfError::MalformedData(format!("basis label {i} is empty")));
            }
            if basis_labels[..i].contains(l) {
                return Err(HopfError::MalformedData(format!(
                    "duplicate basis label {l:?}"
                )));
            }
        }
        if mult.len() != dim || mult.iter().any(|row| row.len() != dim) {
            return Err(HopfError::MalformedData(
                "multiplication table must be dim x dim".into(),
            ));
        }
        for row in &mult {
            for v in row {
                if v.len() != dim {
                    return Err(HopfError::MalformedData(
                        "product vector has wrong length".into(),
                    ));
                }
                if *v.field() != field {
                    return Err(HopfError::FieldMismatch(
                        "product vector over wrong field".into(),
                    ));
                }
            }
        }
        if unit.len() != dim || *unit.field() != field {
            return Err(HopfError::MalformedData("unit vector has wrong shape".into()));
        }
        if comult.len() != dim {
            return Err(HopfError::MalformedData(
                "comultiplication table must have one entry per basis element".into(),
            ));
        }
        let mut canon_comult = Vec::with_capacity(dim);
        for (i, terms) in comult.iter().enumerate() {
            let mut merged: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (j, k, c) in terms {
                if *j >= dim || *k >= dim {
                    return Err(HopfError::MalformedData(format!(
                        "comultiplication of basis {i} references index out of range"
                    )));
                }
                if !field.contains(c) {
                    return Err(HopfError::FieldMismatch(
                        "comultiplication coefficient over wrong field".into(),
                    ));
                }
                tensor_insert(&mut merged, (*j, *k), c.clone());
            }
            canon_comult.push(
                merged
                    .into_iter()
                    .map(|((j, k), c)| (j, k, c))
                    .collect::<Vec<_>>(),
            );
        }
        if counit.len() != dim || counit.iter().any(|c| !field.contains(c)) {
            return Err(HopfError::MalformedData("counit has wrong shape".into()));
        }
        if antipode.rows() != dim || antipode.cols() != dim || *antipode.field() != field {
            return Err(HopfError::MalformedData(
                "antipode matrix has wrong shape".into(),
            ));
        }
        Ok(HopfAlgebraData {
            field,
            dim,
            basis_labels,
            mult,
            unit,
            comult: canon_comult,
            counit,
            antipode,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    pub fn unit_vector(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(&self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zero(&self.field, self.dim)
    }

    pub fn mult_table(&self) -> &Vec<Vec<Vector>> {
        &self.mult
    }

    pub fn comult_table(&self) -> &Vec<Vec<(usize, usize, Scalar)>> {
        &self.comult
    }

    pub fn counit_table(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i][j]
    }

    /// Product of two elements, bilinear extension of the basis table.
    pub fn mul(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = self.zero_vector();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.axpy(&(a * b), &self.mult[i][j]);
            }
        }
        out
    }

    /// Product of several factors, left to right; the empty product is 1.
    pub fn mul_many(&self, factors: &[&Vector]) -> Vector {
        let mut acc = self.unit.clone();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow_element(&self, v: &Vector, n: usize) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.mul(&acc, v);
        }
        acc
    }

    pub fn counit(&self, v: &Vector) -> Scalar {
        let mut acc = self.field.zero();
        for (i, a) in v.iter().enumerate() {
            if !a.is_zero() {
                acc = &acc + &(a * &self.counit[i]);
            }
        }
        acc
    }

    pub fn antipode(&self, v: &Vector) -> Vector {
        self.antipode.mul_vec(v)
    }

    pub fn comult_basis(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[i]
    }

    /// Δ of an arbitrary element, merged sparse.
    pub fn comult(&self, v: &Vector) -> SparsePair {
        let mut out = SparsePair::new();
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comult[i] {
                tensor_insert(&mut out, (*j, *k), a * c);
            }
        }
        out
    }

    /// Δ of an element as a dense vector over the tensor-square basis,
    /// indexed by j * dim + k.
    pub fn comult_dense(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero(&self.field, self.dim * self.dim);
        for ((j, k), c) in self.comult(v) {
            out.set(j * self.dim + k, c);
        }
        out
    }

    /// The iterated comultiplication with `parts` tensor legs
    /// (parts = 1 is the identity, parts = 2 is Δ, parts = 3 is (Δ⊗id)Δ,
    /// and so on; coassociativity makes the bracketing immaterial for
    /// valid algebras, and this fixed left expansion makes it
    /// deterministic for invalid ones).
    pub fn iterated_comult(&self, v: &Vector, parts: usize) -> SparseTensor {
        assert!(parts >= 1);
        let mut out = SparseTensor::new();
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (key, c) in self.iterated_comult_basis(i, parts) {
                tensor_insert(&mut out, key, &c * a);
            }
        }
        out
    }

    pub fn iterated_comult_basis(&self, i: usize, parts: usize) -> SparseTensor {
        let mut out = SparseTensor::new();
        if parts == 1 {
            out.insert(vec![i], self.field.one());
            return out;
        }
        // Expand the first leg one step, then recurse on the left factor.
        for (j, k, c) in &self.comult[i] {
            for (key, d) in self.iterated_comult_basis(*j, parts - 1) {
                let mut full = key.clone();
                full.push(*k);
                tensor_insert(&mut out, full, c * &d);
            }
        }
        out
    }

    /// Left-multiplication matrix L_v with L_v x = v x.
    pub fn left_mult_matrix(&self, v: &Vector) -> Matrix {
        let mut m = Matrix::zero(&self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(v, &self.basis_vector(j));
            for r in 0..self.dim {
                m.set(r, j, col.get(r).clone());
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, v: &Vector) -> Matrix {
        let mut m = Matrix::zero(&self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(&self.basis_vector(j), v);
            for r in 0..self.dim {
                m.set(r, j, col.get(r).clone());
            }
        }
        m
    }

    /// Two-sided inverse of an element, when it exists.
    pub fn invert_element(&self, v: &Vector) -> Option<Vector> {
        let l = self.left_mult_matrix(v);
        let inv = crate::linalg::invert_matrix(&l).ok()?;
        let candidate = inv.mul_vec(&self.unit);
        // left solve gives v * candidate = 1; confirm the other side
        if self.mul(&candidate, v) == self.unit {
            Some(candidate)
        } else {
            None
        }
    }

    /// Structure-constant equality, ignoring basis labels.
    pub fn same_structure(&self, other: &HopfAlgebraData) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    fn tuple_label(&self, idx: &[usize]) -> String {
        let parts: Vec<&str> = idx.iter().map(|&i| self.label(i)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Product inside the tensor square, extended bilinearly from
/// (a⊗b)(c⊗d) = ac ⊗ bd, returned dense over the pair basis.
pub fn tensor_square_mul(alg: &HopfAlgebraData, x: &SparsePair, y: &SparsePair) -> Vector {
    let n = alg.dim();
    let mut out = Vector::zero(alg.field(), n * n);
    for ((a, b), s) in x {
        for ((c, d), t) in y {
            let st = s * t;
            let left = alg.mul_basis(*a, *c);
            let right = alg.mul_basis(*b, *d);
            for (i, li) in left.iter().enumerate() {
                if li.is_zero() {
                    continue;
                }
                let sl = &st * li;
                for (j, rj) in right.iter().enumerate() {
                    if !rj.is_zero() {
                        let idx = i * n + j;
                        let cur = out.get(idx) + &(&sl * rj);
                        out.set(idx, cur);
                    }
                }
            }
        }
    }
    out
}

/// Runs every Hopf-algebra axiom over all basis tuples, in a fixed order,
/// recording the first failing tuple per check.
pub fn verify_hopf(alg: &HopfAlgebraData) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "hopf algebra (dim {}, field {})",
        alg.dim(),
        alg.field().describe()
    ));
    let n = alg.dim();

    // associativity: (e_i e_j) e_k = e_i (e_j e_k)
    let mut witness = None;
    'assoc: for i in 0..n {
        for j in 0..n {
            let ij = alg.mul_basis(i, j).clone();
            for k in 0..n {
                let lhs = alg.mul(&ij, &alg.basis_vector(k));
                let rhs = alg.mul(&alg.basis_vector(i), alg.mul_basis(j, k));
                if lhs != rhs {
                    witness = Some(alg.tuple_label(&[i, j, k]));
                    break 'assoc;
                }
            }
        }
    }
    report.record("associativity", witness);

    // unit: 1 e_i = e_i = e_i 1
    let mut witness = None;
    for i in 0..n {
        let b = alg.basis_vector(i);
        if alg.mul(alg.unit_vector(), &b) != b || alg.mul(&b, alg.unit_vector()) != b {
            witness = Some(alg.tuple_label(&[i]));
            break;
        }
    }
    report.record("unit", witness);

    // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ on each basis element
    let mut witness = None;
    for i in 0..n {
        let mut left = SparseTensor::new();
        let mut right = SparseTensor::new();
        for (j, k, c) in alg.comult_basis(i) {
            for (a, b, d) in alg.comult_basis(*j) {
                tensor_insert(&mut left, vec![*a, *b, *k], c * d);
            }
            for (a, b, d) in alg.comult_basis(*k) {
                tensor_insert(&mut right, vec![*j, *a, *b], c * d);
            }
        }
        if left != right {
            witness = Some(alg.tuple_label(&[i]));
            break;
        }
    }
    report.record("coassociativity", witness);

    // counit: (ε⊗id)Δ(e_i) = e_i = (id⊗ε)Δ(e_i)
    let mut witness = None;
    for i in 0..n {
        let mut left = alg.zero_vector();
        let mut right = alg.zero_vector();
        for (j, k, c) in alg.comult_basis(i) {
            left.axpy(&(c * &alg.counit_table()[*j]), &alg.basis_vector(*k));
            right.axpy(&(c * &alg.counit_table()[*k]), &alg.basis_vector(*j));
        }
        let b = alg.basis_vector(i);
        if left != b || right != b {
            witness = Some(alg.tuple_label(&[i]));
            break;
        }
    }
    report.record("counit", witness);

    // Δ is multiplicative: Δ(e_i e_j) = Δ(e_i) Δ(e_j)
    let mut witness = None;
    'bialg: for i in 0..n {
        let di: SparsePair = alg
            .comult_basis(i)
            .iter()
            .map(|(j, k, c)| ((*j, *k), c.clone()))
            .collect();
        for j in 0..n {
            let dj: SparsePair = alg
                .comult_basis(j)
                .iter()
                .map(|(a, b, c)| ((*a, *b), c.clone()))
                .collect();
            let lhs = alg.comult_dense(alg.mul_basis(i, j));
            let rhs = tensor_square_mul(alg, &di, &dj);
            if lhs != rhs {
                witness = Some(alg.tuple_label(&[i, j]));
                break 'bialg;
            }
        }
    }
    report.record("comult-multiplicative", witness);

    // Δ(1) = 1 ⊗ 1
    let lhs = alg.comult_dense(alg.unit_vector());
    let rhs = alg.unit_vector().kron(alg.unit_vector());
    report.record(
        "comult-unit",
        if lhs == rhs {
            None
        } else {
            Some("(1)".into())
        },
    );

    // ε is multiplicative
    let mut witness = None;
    'eps: for i in 0..n {
        for j in 0..n {
            let lhs = alg.counit(alg.mul_basis(i, j));
            let rhs = &alg.counit_table()[i] * &alg.counit_table()[j];
            if lhs != rhs {
                witness = Some(alg.tuple_label(&[i, j]));
                break 'eps;
            }
        }
    }
    report.record("counit-multiplicative", witness);

    // ε(1) = 1
    report.record(
        "counit-unit",
        if alg.counit(alg.unit_vector()).is_one() {
            None
        } else {
            Some("(1)".into())
        },
    );

    // antipode axiom, both legs: m(S⊗id)Δ(e_i) = ε(e_i) 1 = m(id⊗S)Δ(e_i)
    let mut left_witness = None;
    let mut right_witness = None;
    for i in 0..n {
        let target = alg.unit_vector().scale(&alg.counit_table()[i]);
        let mut left = alg.zero_vector();
        let mut right = alg.zero_vector();
        for (j, k, c) in alg.comult_basis(i) {
            let sj = alg.antipode(&alg.basis_vector(*j));
            left.axpy(c, &alg.mul(&sj, &alg.basis_vector(*k)));
            let sk = alg.antipode(&alg.basis_vector(*k));
            right.axpy(c, &alg.mul(&alg.basis_vector(*j), &sk));
        }
        if left_witness.is_none() && left != target {
            left_witness = Some(alg.tuple_label(&[i]));
        }
        if right_witness.is_none() && right != target {
            right_witness = Some(alg.tuple_label(&[i]));
        }
        if left_witness.is_some() && right_witness.is_some() {
            break;
        }
    }
    report.record("antipode-left", left_witness);
    report.record("antipode-right", right_witness);

    report
}

/// Tensor product Hopf algebra A ⊗ B: componentwise product with no sign,
/// tensor coalgebra, S_A ⊗ S_B. Basis pairs are indexed i * dim(B) + j and
/// labeled "a⊗b".
pub fn tensor_hopf(
    a: &HopfAlgebraData,
    b: &HopfAlgebraData,
) -> Result<HopfAlgebraData, HopfError> {
    if a.field() != b.field() {
        return Err(HopfError::FieldMismatch(
            "tensor factors over different fields".into(),
        ));
    }
    let field = a.field().clone();
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let pair = |i: usize, j: usize| i * nb + j;

    let labels: Vec<String> = (0..n)
        .map(|x| format!("{}⊗{}", a.label(x / nb), b.label(x % nb)))
        .collect();

    let mut mult = vec![vec![Vector::zero(&field, n); n]; n];
    #[allow(clippy::needless_range_loop)]
    for x in 0..n {
        let (i1, j1) = (x / nb, x % nb);
        for y in 0..n {
            let (i2, j2) = (y / nb, y % nb);
            mult[x][y] = a.mul_basis(i1, i2).kron(b.mul_basis(j1, j2));
        }
    }

    let unit = a.unit_vector().kron(b.unit_vector());

    let mut comult = Vec::with_capacity(n);
    for x in 0..n {
        let (i, j) = (x / nb, x % nb);
        let mut terms = Vec::new();
        for (a1, a2, ca) in a.comult_basis(i) {
            for (b1, b2, cb) in b.comult_basis(j) {
                terms.push((pair(*a1, *b1), pair(*a2, *b2), ca * cb));
            }
        }
        comult.push(terms);
    }

    let counit: Vec<Scalar> = (0..n)
        .map(|x| &a.counit_table()[x / nb] * &b.counit_table()[x % nb])
        .collect();

    let antipode = {
        let mut m = Matrix::zero(&field, n, n);
        for x in 0..n {
            let (i, j) = (x / nb, x % nb);
            let sa = a.antipode(&a.basis_vector(i));
            let sb = b.antipode(&b.basis_vector(j));
            let col = sa.kron(&sb);
            for r in 0..n {
                m.set(r, x, col.get(r).clone());
            }
        }
        m
    };

    HopfAlgebraData::new(field, labels, mult, unit, comult, counit, antipode)
}

/// Cached structural properties of a linear map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapFlags {
    /// Δ ∘ f = (f ⊗ f) ∘ Δ and ε ∘ f = ε.
    pub coalgebra_map: bool,
    /// f(xy) = f(x) f(y) and f(1) = 1.
    pub algebra_map: bool,
    /// f(1) = 1.
    pub unitary: bool,
    /// Coalgebra and algebra map; antipode compatibility S∘f = f∘S is
    /// verified as well (it is automatic for genuine Hopf algebras, so a
    /// failure means the surrounding data is inconsistent).
    pub hopf_map: bool,
}

/// A linear map between two structure-constant algebras, as a
/// target-dim × source-dim matrix over their common field.
#[derive(Debug)]
pub struct LinearMapData {
    source: Arc<HopfAlgebraData>,
    target: Arc<HopfAlgebraData>,
    matrix: Matrix,
    flags: OnceLock<MapFlags>,
}

impl Clone for LinearMapData {
    fn clone(&self) -> Self {
        let flags = OnceLock::new();
        if let Some(f) = self.flags.get() {
            let _ = flags.set(*f);
        }
        LinearMapData {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            matrix: self.matrix.clone(),
            flags,
        }
    }
}

impl PartialEq for LinearMapData {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_structure(&other.source)
            && self.target.same_structure(&other.target)
            && self.matrix == other.matrix
    }
}

impl Eq for LinearMapData {}

impl LinearMapData {
    pub fn new(
        source: Arc<HopfAlgebraData>,
        target: Arc<HopfAlgebraData>,
        matrix: Matrix,
    ) -> Result<Self, HopfError> {
        if source.field() != target.field() {
            return Err(HopfError::FieldMismatch(
                "map between algebras over different fields".into(),
            ));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(HopfError::ShapeMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if *matrix.field() != *source.field() {
            return Err(HopfError::FieldMismatch(
                "map matrix over wrong field".into(),
            ));
        }
        Ok(LinearMapData {
            source,
            target,
            matrix,
            flags: OnceLock::new(),
        })
    }

    pub fn identity(alg: &Arc<HopfAlgebraData>) -> Self {
        LinearMapData {
            source: Arc::clone(alg),
            target: Arc::clone(alg),
            matrix: Matrix::identity(alg.field(), alg.dim()),
            flags: OnceLock::new(),
        }
    }

    /// The trivial map h ↦ ε(h) 1.
    pub fn trivial(source: &Arc<HopfAlgebraData>, target: &Arc<HopfAlgebraData>) -> Self {
        let mut m = Matrix::zero(source.field(), target.dim(), source.dim());
        for c in 0..source.dim() {
            let col = target.unit_vector().scale(&source.counit_table()[c]);
            for r in 0..target.dim() {
                m.set(r, c, col.get(r).clone());
            }
        }
        LinearMapData {
            source: Arc::clone(source),
            target: Arc::clone(target),
            matrix: m,
            flags: OnceLock::new(),
        }
    }

    /// Builds the map with prescribed images of the source basis.
    pub fn from_images(
        source: &Arc<HopfAlgebraData>,
        target: &Arc<HopfAlgebraData>,
        images: &[Vector],
    ) -> Result<Self, HopfError> {
        if images.len() != source.dim() {
            return Err(HopfError::ShapeMismatch(
                "one image per source basis element required".into(),
            ));
        }
        let m = Matrix::from_columns(source.field(), target.dim(), images);
        LinearMapData::new(Arc::clone(source), Arc::clone(target), m)
    }

    pub fn source(&self) -> &Arc<HopfAlgebraData> {
        &self.source
    }

    pub fn target(&self) -> &Arc<HopfAlgebraData> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.mul_vec(v)
    }

    pub fn apply_basis(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &LinearMapData) -> Result<LinearMapData, HopfError> {
        if !inner.target.same_structure(&self.source) {
            return Err(HopfError::ShapeMismatch(
                "composition: inner target differs from outer source".into(),
            ));
        }
        LinearMapData::new(
            Arc::clone(&inner.source),
            Arc::clone(&self.target),
            self.matrix.mul_mat(&inner.matrix),
        )
    }

    /// Inverse map when the matrix is invertible (source and target swap).
    pub fn inverse(&self) -> Option<LinearMapData> {
        let inv = crate::linalg::invert_matrix(&self.matrix).ok()?;
        Some(LinearMapData {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            matrix: inv,
            flags: OnceLock::new(),
        })
    }

    /// Structural properties, computed once and cached.
    pub fn flags(&self) -> MapFlags {
        *self.flags.get_or_init(|| check_map_properties(self))
    }

    pub fn is_hopf_map(&self) -> bool {
        self.flags().hopf_map
    }
}

/// Recomputes the structural flags of a map from scratch.
pub fn check_map_properties(f: &LinearMapData) -> MapFlags {
    let src = f.source();
    let tgt = f.target();
    let n = src.dim();

    let unitary = f.apply(src.unit_vector()) == *tgt.unit_vector();

    let mut coalgebra_map = true;
    for i in 0..n {
        // ε_B(f(e_i)) = ε_A(e_i)
        if tgt.counit(&f.apply_basis(i)) != src.counit_table()[i] {
            coalgebra_map = false;
            break;
        }
        // Δ_B(f(e_i)) = (f⊗f)(Δ_A(e_i))
        let lhs = tgt.comult_dense(&f.apply_basis(i));
        let mut rhs = Vector::zero(tgt.field(), tgt.dim() * tgt.dim());
        for (j, k, c) in src.comult_basis(i) {
            let fj = f.apply_basis(*j);
            let fk = f.apply_basis(*k);
            rhs.axpy(c, &fj.kron(&fk));
        }
        if lhs != rhs {
            coalgebra_map = false;
            break;
        }
    }

    let mut algebra_map = unitary;
    if algebra_map {
        'alg: for i in 0..n {
            for j in 0..n {
                let lhs = f.apply(src.mul_basis(i, j));
                let rhs = tgt.mul(&f.apply_basis(i), &f.apply_basis(j));
                if lhs != rhs {
                    algebra_map = false;
                    break 'alg;
                }
            }
        }
    }

    let mut hopf_map = coalgebra_map && algebra_map;
    if hopf_map {
        for i in 0..n {
            let lhs = tgt.antipode(&f.apply_basis(i));
            let rhs = f.apply(&src.antipode(&src.basis_vector(i)));
            if lhs != rhs {
                hopf_map = false;
                break;
            }
        }
    }

    MapFlags {
        coalgebra_map,
        algebra_map,
        unitary,
        hopf_map,
    }
}

/// Convolution product of two maps C → A with a common source coalgebra
/// and a common target algebra: (f * g)(c) = f(c_(1)) g(c_(2)).
pub fn convolution(f: &LinearMapData, g: &LinearMapData) -> Result<LinearMapData, HopfError> {
    if !f.source().same_structure(g.source()) {
        return Err(HopfError::ShapeMismatch(
            "convolution: sources differ".into(),
        ));
    }
    if !f.target().same_structure(g.target()) {
        return Err(HopfError::ShapeMismatch(
            "convolution: targets differ".into(),
        ));
    }
    let src = f.source();
    let tgt = f.target();
    let mut m = Matrix::zero(src.field(), tgt.dim(), src.dim());
    for i in 0..src.dim() {
        let mut col = tgt.zero_vector();
        for (j, k, c) in src.comult_basis(i) {
            col.axpy(c, &tgt.mul(&f.apply_basis(*j), &g.apply_basis(*k)));
        }
        for r in 0..tgt.dim() {
            m.set(r, i, col.get(r).clone());
        }
    }
    LinearMapData::new(Arc::clone(f.source()), Arc::clone(f.target()), m)
}

/// The unit of the convolution algebra Hom(C, A): c ↦ ε(c) 1.
pub fn convolution_unit(
    source: &Arc<HopfAlgebraData>,
    target: &Arc<HopfAlgebraData>,
) -> LinearMapData {
    LinearMapData::trivial(source, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Group algebra k[C2] over F5, basis [1, g], built by hand so these
    /// tests do not depend on the catalog module.
    fn c2_group_algebra() -> Arc<HopfAlgebraData> {
        let f = FieldSpec::prime_field(5).unwrap();
        let e0 = Vector::unit(&f, 2, 0);
        let e1 = Vector::unit(&f, 2, 1);
        let mult = vec![
            vec![e0.clone(), e1.clone()],
            vec![e1.clone(), e0.clone()],
        ];
        let comult = vec![
            vec![(0, 0, f.one())],
            vec![(1, 1, f.one())],
        ];
        let counit = vec![f.one(), f.one()];
        let antipode = Matrix::identity(&f, 2);
        Arc::new(
            HopfAlgebraData::new(
                f,
                vec!["1".into(), "g".into()],
                mult,
                e0,
                comult,
                counit,
                antipode,
            )
            .unwrap(),
        )
    }

    #[test]
    fn group_algebra_passes_all_checks() {
        let alg = c2_group_algebra();
        let report = verify_hopf(&alg);
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.checks.len(), 10);
    }

    #[test]
    fn perturbed_mult_fails_associativity_or_unit() {
        let alg = c2_group_algebra();
        let f = alg.field().clone();
        let mut mult = alg.mult_table().clone();
        // break g*g
        mult[1][1] = Vector::unit(&f, 2, 1);
        let bad = HopfAlgebraData::new(
            f,
            alg.labels().to_vec(),
            mult,
            alg.unit_vector().clone(),
            alg.comult_table().clone(),
            alg.counit_table().to_vec(),
            alg.antipode_matrix().clone(),
        )
        .unwrap();
        let report = verify_hopf(&bad);
        assert!(!report.passed());
        // g*g = g makes S fail too (S(g) g = g, not 1), and Δ stays fine
        assert!(report.check("coassociativity").unwrap().passed);
        assert!(!report.check("antipode-left").unwrap().passed);
    }

    #[test]
    fn perturbed_comult_fails_the_right_checks() {
        let alg = c2_group_algebra();
        let f = alg.field().clone();

        // Δ(g) = g⊗1 stays coassociative but loses the counit axiom
        let mut comult = alg.comult_table().clone();
        comult[1] = vec![(1, 0, f.one())];
        let bad = HopfAlgebraData::new(
            f.clone(),
            alg.labels().to_vec(),
            alg.mult_table().clone(),
            alg.unit_vector().clone(),
            comult,
            alg.counit_table().to_vec(),
            alg.antipode_matrix().clone(),
        )
        .unwrap();
        let report = verify_hopf(&bad);
        assert!(!report.passed());
        assert!(report.check("coassociativity").unwrap().passed);
        let cu = report.check("counit").unwrap();
        assert!(!cu.passed);
        assert_eq!(cu.witness.as_deref(), Some("(g)"));

        // Δ(g) = g⊗g + g⊗1 is not coassociative
        let mut comult = alg.comult_table().clone();
        comult[1] = vec![(1, 1, f.one()), (1, 0, f.one())];
        let bad = HopfAlgebraData::new(
            f,
            alg.labels().to_vec(),
            alg.mult_table().clone(),
            alg.unit_vector().clone(),
            comult,
            alg.counit_table().to_vec(),
            alg.antipode_matrix().clone(),
        )
        .unwrap();
        let report = verify_hopf(&bad);
        let co = report.check("coassociativity").unwrap();
        assert!(!co.passed);
        assert_eq!(co.witness.as_deref(), Some("(g)"));
    }

    #[test]
    fn malformed_data_is_rejected() {
        let f = FieldSpec::prime_field(5).unwrap();
        let e0 = Vector::unit(&f, 2, 0);
        let err = HopfAlgebraData::new(
            f.clone(),
            vec!["1".into(), "1".into()],
            vec![vec![e0.clone(), e0.clone()], vec![e0.clone(), e0.clone()]],
            e0.clone(),
            vec![vec![], vec![]],
            vec![f.one(), f.one()],
            Matrix::identity(&f, 2),
        )
        .unwrap_err();
        assert!(matches!(err, HopfError::MalformedData(_)));

        let err = HopfAlgebraData::new(
            f.clone(),
            vec!["1".into(), "g".into()],
            vec![vec![e0.clone(), e0.clone()], vec![e0.clone(), e0.clone()]],
            e0.clone(),
            vec![vec![(0, 7, f.one())], vec![]],
            vec![f.one(), f.one()],
            Matrix::identity(&f, 2),
        )
        .unwrap_err();
        assert!(matches!(err, HopfError::MalformedData(_)));
    }

    #[test]
    fn comult_terms_are_merged_and_zero_dropped() {
        let f = FieldSpec::prime_field(5).unwrap();
        let e0 = Vector::unit(&f, 2, 0);
        let e1 = Vector::unit(&f, 2, 1);
        let alg = HopfAlgebraData::new(
            f.clone(),
            vec!["1".into(), "g".into()],
            vec![vec![e0.clone(), e1.clone()], vec![e1, e0.clone()]],
            e0,
            vec![
                vec![(0, 0, f.integer(3)), (0, 0, f.integer(-2))],
                vec![(1, 1, f.one()), (0, 1, f.integer(2)), (0, 1, f.integer(-2))],
            ],
            vec![f.one(), f.one()],
            Matrix::identity(&f, 2),
        )
        .unwrap();
        assert_eq!(alg.comult_basis(0), &[(0, 0, f.one())]);
        assert_eq!(alg.comult_basis(1), &[(1, 1, f.one())]);
    }

    #[test]
    fn element_operations() {
        let alg = c2_group_algebra();
        let f = alg.field().clone();
        let g = alg.basis_vector(1);
        assert_eq!(alg.pow_element(&g, 2), *alg.unit_vector());
        assert_eq!(alg.pow_element(&g, 0), *alg.unit_vector());
        assert_eq!(alg.counit(&g), f.one());

        // (1 + g) has ε = 2, Δ dense check
        let mut v = alg.basis_vector(0);
        v.axpy(&f.one(), &g);
        assert_eq!(alg.counit(&v), f.integer(2));
        let d = alg.comult(&v);
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(&(0, 0)), Some(&f.one()));
        assert_eq!(d.get(&(1, 1)), Some(&f.one()));

        // iterated comult with 3 legs
        let t = alg.iterated_comult(&g, 3);
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&vec![1, 1, 1]), Some(&f.one()));

        // g is invertible; 1+g is a zero divisor ((1+g)(1-g) = 0)
        assert_eq!(alg.invert_element(&g), Some(g.clone()));
        assert_eq!(alg.invert_element(&v), None);
    }

    #[test]
    fn mult_matrices_agree_with_mul() {
        let alg = c2_group_algebra();
        let g = alg.basis_vector(1);
        let l = alg.left_mult_matrix(&g);
        let r = alg.right_mult_matrix(&g);
        for i in 0..2 {
            let b = alg.basis_vector(i);
            assert_eq!(l.mul_vec(&b), alg.mul(&g, &b));
            assert_eq!(r.mul_vec(&b), alg.mul(&b, &g));
        }
    }

    #[test]
    fn tensor_of_group_algebras() {
        let a = c2_group_algebra();
        let t = tensor_hopf(&a, &a).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.label(0), "1⊗1");
        assert_eq!(t.label(3), "g⊗g");
        let report = verify_hopf(&t);
        assert!(report.passed(), "{}", report.render());
        // (g⊗1)(1⊗g) = g⊗g
        let lhs = t.mul(&t.basis_vector(2), &t.basis_vector(1));
        assert_eq!(lhs, t.basis_vector(3));
    }

    #[test]
    fn map_flags_and_convolution() {
        let alg = c2_group_algebra();
        let id = LinearMapData::identity(&alg);
        let flags = id.flags();
        assert!(flags.coalgebra_map && flags.algebra_map && flags.unitary && flags.hopf_map);

        let triv = LinearMapData::trivial(&alg, &alg);
        assert!(triv.flags().coalgebra_map);
        assert!(triv.flags().algebra_map);

        // the antipode as a map; S * id = unit of the convolution algebra
        let s = LinearMapData::new(
            Arc::clone(&alg),
            Arc::clone(&alg),
            alg.antipode_matrix().clone(),
        )
        .unwrap();
        let conv = convolution(&s, &id).unwrap();
        assert_eq!(conv, convolution_unit(&alg, &alg));

        // swap 1↦g, g↦1: a coalgebra map (both are group-like) but it
        // sends 1 to g, so it is not unitary
        let f = alg.field().clone();
        let mut m = Matrix::zero(&f, 2, 2);
        m.set(0, 1, f.one());
        m.set(1, 0, f.one());
        let swap = LinearMapData::new(Arc::clone(&alg), Arc::clone(&alg), m).unwrap();
        assert!(swap.flags().coalgebra_map);
        assert!(!swap.flags().unitary);
        assert!(!swap.flags().hopf_map);
    }

    #[test]
    fn compose_and_inverse() {
        let alg = c2_group_algebra();
        let s = LinearMapData::new(
            Arc::clone(&alg),
            Arc::clone(&alg),
            alg.antipode_matrix().clone(),
        )
        .unwrap();
        let ss = s.compose(&s).unwrap();
        assert_eq!(ss, LinearMapData::identity(&alg));
        let sinv = s.inverse().unwrap();
        assert_eq!(sinv, s);
    }
}
