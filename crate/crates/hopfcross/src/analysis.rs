//! Distinguished subsets of a Hopf algebra: group-likes G(A),
//! skew-primitives P_{g,h}(A), the center Z(A), central primitives ZP(A),
//! and cocentral maps CoZ¹(H, A).
//!
//! Everything linear is solved exactly with [`crate::linalg`]. The two
//! genuinely quadratic problems, group-likes and the coalgebra-map residue
//! of cocentral maps, are enumerated over prime fields within an explicit
//! budget; over infinite fields they refuse instead of guessing.

use crate::hopf::{HopfAlgebraData, LinearMapData};
use crate::linalg::{kernel_basis, solve_linear, LinearSolution, Matrix, Subspace, Vector};
use crate::scalars::{FieldKind, Scalar};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("element is not group-like: {0}")]
    NotGroupLike(String),
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("operation needs a finite prime field: {0}")]
    WrongField(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceKind {
    Primitives,
    SkewPrimitives { g: Vector, h: Vector },
    Center,
    CentralPrimitives,
    /// Right coinvariants of a comodule structure induced by a projection.
    Coinvariants,
}

/// Solution space of one of the defining linear systems, with a canonical
/// echelon basis.
#[derive(Debug, Clone)]
pub struct ElementSubspace {
    algebra: Arc<HopfAlgebraData>,
    kind: SubspaceKind,
    space: Subspace,
}

impl ElementSubspace {
    pub(crate) fn from_parts(
        algebra: Arc<HopfAlgebraData>,
        kind: SubspaceKind,
        space: Subspace,
    ) -> Self {
        ElementSubspace { algebra, kind, space }
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebraData> {
        &self.algebra
    }

    pub fn kind(&self) -> &SubspaceKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        self.space.basis()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.space.contains(v)
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }
}

/// All group-like elements found by enumeration.
#[derive(Debug, Clone)]
pub struct GroupLikeSet {
    pub algebra: Arc<HopfAlgebraData>,
    pub elements: Vec<Vector>,
}

pub fn is_group_like(alg: &HopfAlgebraData, v: &Vector) -> bool {
    alg.counit(v).is_one() && alg.comult_dense(v) == v.kron(v)
}

/// Matrix of the linear map x ↦ Δ(x) − x⊗g − h⊗x on coefficient columns.
fn skew_primitive_matrix(alg: &HopfAlgebraData, g: &Vector, h: &Vector) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zero(alg.field(), n * n, n);
    for i in 0..n {
        let e = alg.basis_vector(i);
        let mut col = alg.comult_dense(&e);
        col.axpy(&alg.field().integer(-1), &e.kron(g));
        col.axpy(&alg.field().integer(-1), &h.kron(&e));
        for r in 0..n * n {
            m.set(r, i, col.get(r).clone());
        }
    }
    m
}

/// Matrix of x ↦ (e_j x − x e_j) for all j, stacked.
fn center_matrix(alg: &HopfAlgebraData) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zero(alg.field(), n * n, n);
    for i in 0..n {
        let e = alg.basis_vector(i);
        for j in 0..n {
            let b = alg.basis_vector(j);
            let bracket = alg.mul(&b, &e).sub(&alg.mul(&e, &b));
            for r in 0..n {
                m.set(j * n + r, i, bracket.get(r).clone());
            }
        }
    }
    m
}

fn stack(top: &Matrix, bottom: &Matrix) -> Matrix {
    let field = top.field().clone();
    let cols = top.cols();
    let mut m = Matrix::zero(&field, top.rows() + bottom.rows(), cols);
    for r in 0..top.rows() {
        for c in 0..cols {
            m.set(r, c, top.get(r, c).clone());
        }
    }
    for r in 0..bottom.rows() {
        for c in 0..cols {
            m.set(top.rows() + r, c, bottom.get(r, c).clone());
        }
    }
    m
}

/// The space P_{g,h}(A) = {x : Δ(x) = x⊗g + h⊗x}. g and h must be
/// group-like.
pub fn skew_primitives(
    alg: &Arc<HopfAlgebraData>,
    g: &Vector,
    h: &Vector,
) -> Result<ElementSubspace, AnalysisError> {
    for (name, v) in [("first", g), ("second", h)] {
        if !is_group_like(alg, v) {
            return Err(AnalysisError::NotGroupLike(format!(
                "{name} frame of a skew-primitive space"
            )));
        }
    }
    let m = skew_primitive_matrix(alg, g, h);
    let basis = kernel_basis(&m);
    let kind = if g == alg.unit_vector() && h == alg.unit_vector() {
        SubspaceKind::Primitives
    } else {
        SubspaceKind::SkewPrimitives {
            g: g.clone(),
            h: h.clone(),
        }
    };
    Ok(ElementSubspace {
        algebra: Arc::clone(alg),
        kind,
        space: Subspace::from_spanning(alg.field(), alg.dim(), &basis),
    })
}

/// P(A) = P_{1,1}(A).
pub fn primitives(alg: &Arc<HopfAlgebraData>) -> Result<ElementSubspace, AnalysisError> {
    skew_primitives(alg, alg.unit_vector(), alg.unit_vector())
}

pub fn center(alg: &Arc<HopfAlgebraData>) -> ElementSubspace {
    let m = center_matrix(alg);
    let basis = kernel_basis(&m);
    ElementSubspace {
        algebra: Arc::clone(alg),
        kind: SubspaceKind::Center,
        space: Subspace::from_spanning(alg.field(), alg.dim(), &basis),
    }
}

/// ZP(A) = P(A) ∩ Z(A), solved as one joint linear system.
pub fn zp(alg: &Arc<HopfAlgebraData>) -> ElementSubspace {
    let unit = alg.unit_vector();
    let m = stack(
        &skew_primitive_matrix(alg, unit, unit),
        &center_matrix(alg),
    );
    let basis = kernel_basis(&m);
    ElementSubspace {
        algebra: Arc::clone(alg),
        kind: SubspaceKind::CentralPrimitives,
        space: Subspace::from_spanning(alg.field(), alg.dim(), &basis),
    }
}

/// Coalgebra structure constants lowered to u64 residues for the
/// enumeration loops.
pub(crate) struct PrimeTables {
    pub p: u64,
    pub dim: usize,
    pub comult: Vec<Vec<(usize, usize, u64)>>,
    pub counit: Vec<u64>,
}

impl PrimeTables {
    pub fn new(alg: &HopfAlgebraData) -> Option<PrimeTables> {
        let p = match alg.field().kind() {
            FieldKind::PrimeField { p } => *p,
            _ => return None,
        };
        let n = alg.dim();
        let raw = |s: &Scalar| s.prime_value().expect("prime field scalar");
        let comult = (0..n)
            .map(|i| {
                alg.comult_basis(i)
                    .iter()
                    .map(|(j, k, c)| (*j, *k, raw(c)))
                    .collect()
            })
            .collect();
        let counit = alg.counit_table().iter().map(raw).collect();
        Some(PrimeTables {
            p,
            dim: n,
            comult,
            counit,
        })
    }
}

/// Advances a base-p odometer; false when it wraps back to all zeros.
pub(crate) fn next_digits(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

pub(crate) fn checked_pow(p: u64, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(p as u128);
    }
    acc
}

/// Complete scan for group-like elements over a prime field: all p^dim
/// vectors are tested against ε(c) = 1 and Δ(c) = c⊗c.
pub fn group_likes_bruteforce(
    alg: &Arc<HopfAlgebraData>,
    budget: u64,
) -> Result<GroupLikeSet, AnalysisError> {
    let tables = PrimeTables::new(alg).ok_or_else(|| {
        AnalysisError::WrongField(format!(
            "group-like enumeration over {}",
            alg.field().describe()
        ))
    })?;
    let (p, n) = (tables.p, tables.dim);
    if p > i64::MAX as u64 {
        return Err(AnalysisError::WrongField("prime too large".into()));
    }
    let needed = checked_pow(p, n);
    if needed > budget as u128 {
        return Err(AnalysisError::BudgetExceeded { needed, budget });
    }

    let field = alg.field().clone();
    let mut elements = Vec::new();
    let mut c = vec![0u64; n];
    let mut delta = vec![0u64; n * n];
    loop {
        let eps = c
            .iter()
            .zip(&tables.counit)
            .fold(0u64, |acc, (ci, ei)| (acc + ci * ei) % p);
        if eps == 1 {
            delta.iter_mut().for_each(|x| *x = 0);
            for (i, &ci) in c.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for &(j, k, v) in &tables.comult[i] {
                    let cell = &mut delta[j * n + k];
                    *cell = (*cell + ci * v) % p;
                }
            }
            let mut ok = true;
            'cmp: for j in 0..n {
                for k in 0..n {
                    if delta[j * n + k] != (c[j] * c[k]) % p {
                        ok = false;
                        break 'cmp;
                    }
                }
            }
            if ok {
                let entries: Vec<Scalar> = c.iter().map(|&v| field.integer(v as i64)).collect();
                elements.push(Vector::new(field.clone(), entries));
            }
        }
        if !next_digits(&mut c, p) {
            break;
        }
    }
    Ok(GroupLikeSet {
        algebra: Arc::clone(alg),
        elements,
    })
}

/// The cocentrality identity r(h₍₁₎) ⊗ h₍₂₎ = r(h₍₂₎) ⊗ h₍₁₎, checked on
/// every basis element of the source.
pub fn is_cocentral(r: &LinearMapData) -> bool {
    let h = r.source();
    let a = r.target();
    let (nh, na) = (h.dim(), a.dim());
    for i in 0..nh {
        let mut lhs = Vector::zero(a.field(), na * nh);
        let mut rhs = Vector::zero(a.field(), na * nh);
        for (j, k, c) in h.comult_basis(i) {
            let rj = r.apply_basis(*j);
            let rk = r.apply_basis(*k);
            for t in 0..na {
                if !rj.get(t).is_zero() {
                    let idx = t * nh + k;
                    let cur = lhs.get(idx) + &(c * rj.get(t));
                    lhs.set(idx, cur);
                }
                if !rk.get(t).is_zero() {
                    let idx = t * nh + j;
                    let cur = rhs.get(idx) + &(c * rk.get(t));
                    rhs.set(idx, cur);
                }
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Enumerates CoZ¹(H, A): unitary cocentral coalgebra maps r: H → A.
///
/// All linear constraints (cocentrality, r(1) = 1, ε∘r = ε) are imposed
/// first by one exact solve; the coalgebra-map condition is quadratic and
/// is checked pointwise on the residual affine space. Complete over prime
/// fields within budget, and over any field when the residual space is
/// zero-dimensional.
pub fn cocentral_maps(
    h: &Arc<HopfAlgebraData>,
    a: &Arc<HopfAlgebraData>,
    budget: u64,
) -> Result<Vec<LinearMapData>, AnalysisError> {
    assert_eq!(h.field(), a.field(), "cocentral maps need a common field");
    let (nh, na) = (h.dim(), a.dim());
    let field = h.field().clone();
    let unknowns = na * nh; // r entry (t, j) at index t * nh + j

    // rows: cocentrality per (source basis i, A-coord t, H-coord s),
    // then unitarity per A-coord, then counit compatibility per H-basis
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for i in 0..nh {
        let mut block = vec![Vector::zero(&field, unknowns); na * nh];
        for (j, k, c) in h.comult_basis(i) {
            for t in 0..na {
                // + c at (t, j) for the lhs term landing on H-coord k
                let row = &mut block[t * nh + k];
                let cur = row.get(t * nh + j) + c;
                row.set(t * nh + j, cur);
                // − c at (t, k) for the rhs term landing on H-coord j
                let row = &mut block[t * nh + j];
                let cur = row.get(t * nh + k) - c;
                row.set(t * nh + k, cur);
            }
        }
        for row in block {
            if !row.is_zero() {
                rows.push(row);
                rhs.push(field.zero());
            }
        }
    }
    // unitarity: sum_j (1_H)_j r_{t,j} = (1_A)_t
    for t in 0..na {
        let mut row = Vector::zero(&field, unknowns);
        for j in 0..nh {
            row.set(t * nh + j, h.unit_vector().get(j).clone());
        }
        rows.push(row);
        rhs.push(a.unit_vector().get(t).clone());
    }
    // counit: sum_t ε_A(e_t) r_{t,j} = ε_H(e_j)
    for j in 0..nh {
        let mut row = Vector::zero(&field, unknowns);
        for t in 0..na {
            row.set(t * nh + j, a.counit_table()[t].clone());
        }
        rows.push(row);
        rhs.push(h.counit_table()[j].clone());
    }

    let m = Matrix::from_rows(&field, unknowns, &rows);
    let b = Vector::new(field.clone(), rhs);
    let (particular, kernel) = match solve_linear(&m, &b).expect("well-shaped system") {
        LinearSolution::Solution { particular, kernel } => (particular, kernel),
        LinearSolution::Inconsistent => return Ok(Vec::new()),
    };

    let d = kernel.len();
    let from_flat = |flat: &Vector| -> LinearMapData {
        let mut mat = Matrix::zero(&field, na, nh);
        for t in 0..na {
            for j in 0..nh {
                mat.set(t, j, flat.get(t * nh + j).clone());
            }
        }
        LinearMapData::new(Arc::clone(h), Arc::clone(a), mat).expect("shape by construction")
    };
    let keep = |r: &LinearMapData| -> bool {
        let flags = r.flags();
        flags.coalgebra_map && flags.unitary && is_cocentral(r)
    };

    if d == 0 {
        let r = from_flat(&particular);
        return Ok(if keep(&r) { vec![r] } else { Vec::new() });
    }

    let p = match field.kind() {
        FieldKind::PrimeField { p } => *p,
        _ => {
            return Err(AnalysisError::WrongField(format!(
                "residual space has dimension {d} over {}",
                field.describe()
            )))
        }
    };
    let needed = checked_pow(p, d);
    if needed > budget as u128 {
        return Err(AnalysisError::BudgetExceeded { needed, budget });
    }

    let mut out = Vec::new();
    let mut digits = vec![0u64; d];
    loop {
        let mut flat = particular.clone();
        for (t, k) in digits.iter().zip(&kernel) {
            flat.axpy(&field.integer(*t as i64), k);
        }
        let r = from_flat(&flat);
        if keep(&r) {
            out.push(r);
        }
        if !next_digits(&mut digits, p) {
            break;
        }
    }
    Ok(out)
}

/// Convolution inverse of a cocentral map: S_A ∘ r.
pub fn cocentral_inverse(r: &LinearMapData) -> LinearMapData {
    let a = r.target();
    let s = LinearMapData::new(
        Arc::clone(a),
        Arc::clone(a),
        a.antipode_matrix().clone(),
    )
    .expect("antipode shape");
    s.compose(r).expect("composable by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic_group_algebra, line_nilpotent, line_semisimple, sweedler4};
    use crate::hopf::{convolution, tensor_hopf};
    use crate::scalars::FieldSpec;

    fn f3() -> FieldSpec {
        FieldSpec::prime_field(3).unwrap()
    }

    /// Substitutes every basis vector of a subspace back into its
    /// defining equations.
    fn assert_subspace_sound(s: &ElementSubspace) {
        let alg = s.algebra();
        for v in s.basis() {
            match s.kind() {
                SubspaceKind::Primitives => {
                    let mut expect = v.kron(alg.unit_vector());
                    expect.axpy(&alg.field().one(), &alg.unit_vector().kron(v));
                    assert_eq!(alg.comult_dense(v), expect);
                }
                SubspaceKind::SkewPrimitives { g, h } => {
                    let mut expect = v.kron(g);
                    expect.axpy(&alg.field().one(), &h.kron(v));
                    assert_eq!(alg.comult_dense(v), expect);
                }
                SubspaceKind::Center => {
                    for i in 0..alg.dim() {
                        let b = alg.basis_vector(i);
                        assert_eq!(alg.mul(&b, v), alg.mul(v, &b));
                    }
                }
                SubspaceKind::CentralPrimitives => {
                    let mut expect = v.kron(alg.unit_vector());
                    expect.axpy(&alg.field().one(), &alg.unit_vector().kron(v));
                    assert_eq!(alg.comult_dense(v), expect);
                    for i in 0..alg.dim() {
                        let b = alg.basis_vector(i);
                        assert_eq!(alg.mul(&b, v), alg.mul(v, &b));
                    }
                }
                SubspaceKind::Coinvariants => {
                    unreachable!("coinvariants are not produced by this module")
                }
            }
        }
    }

    #[test]
    fn h4_has_no_primitives() {
        for f in [FieldSpec::rationals(), f3()] {
            let alg = Arc::new(sweedler4(&f));
            let p = primitives(&alg).unwrap();
            assert_eq!(p.dim(), 0);
        }
    }

    #[test]
    fn h4_skew_primitives_between_one_and_g() {
        let alg = Arc::new(sweedler4(&FieldSpec::prime_field(5).unwrap()));
        let one = alg.basis_vector(0);
        let g = alg.basis_vector(1);
        let s = skew_primitives(&alg, &one, &g).unwrap();
        assert_eq!(s.dim(), 2);
        assert_subspace_sound(&s);
        // x and 1−g span it
        assert!(s.contains(&alg.basis_vector(2)));
        let one_minus_g = one.sub(&g);
        assert!(s.contains(&one_minus_g));
        assert!(!s.contains(&alg.basis_vector(1)));
    }

    #[test]
    fn skew_primitives_reject_non_group_like() {
        let alg = Arc::new(sweedler4(&f3()));
        let x = alg.basis_vector(2);
        let err = skew_primitives(&alg, &x, alg.unit_vector()).unwrap_err();
        assert!(matches!(err, AnalysisError::NotGroupLike(_)));
    }

    #[test]
    fn line_primitives_are_spanned_by_y() {
        let f = f3();
        for alg in [
            Arc::new(line_nilpotent(3, &f).unwrap()),
            Arc::new(line_semisimple(3, &f).unwrap()),
        ] {
            let p = primitives(&alg).unwrap();
            assert_eq!(p.dim(), 1);
            assert!(p.contains(&alg.basis_vector(1)));
            assert_subspace_sound(&p);
        }
    }

    #[test]
    fn centers() {
        let alg = Arc::new(sweedler4(&f3()));
        let z = center(&alg);
        assert_eq!(z.dim(), 1);
        assert!(z.contains(alg.unit_vector()));
        assert_subspace_sound(&z);

        let line = Arc::new(line_semisimple(3, &f3()).unwrap());
        assert_eq!(center(&line).dim(), 3);

        // center(A)⊗center(B) ⊆ center(A⊗B) spot-check: 1⊗y for
        // A = H₄, B = k⟨y | y³ = 0⟩
        let b = Arc::new(line_nilpotent(3, &f3()).unwrap());
        let t = Arc::new(tensor_hopf(&alg, &b).unwrap());
        let zt = center(&t);
        let one_tensor_y = alg.unit_vector().kron(&b.basis_vector(1));
        assert!(zt.contains(&one_tensor_y));
        assert_subspace_sound(&zt);
    }

    #[test]
    fn central_primitives() {
        let f = f3();
        let line = Arc::new(line_nilpotent(3, &f).unwrap());
        let s = zp(&line);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&line.basis_vector(1)));
        assert_subspace_sound(&s);

        let c2 = Arc::new(cyclic_group_algebra(2, &FieldSpec::rationals()).unwrap());
        assert_eq!(zp(&c2).dim(), 0);

        let h4 = Arc::new(sweedler4(&f));
        assert_eq!(zp(&h4).dim(), 0);
    }

    #[test]
    fn dimensions_survive_basis_permutation() {
        // rebuild H₄ with basis order [gx, 1, x, g]
        let alg = sweedler4(&f3());
        let f = alg.field().clone();
        let perm = [3usize, 0, 2, 1]; // new position -> old index
        let inv = {
            let mut inv = [0usize; 4];
            for (new, &old) in perm.iter().enumerate() {
                inv[old] = new;
            }
            inv
        };
        let relabel = |v: &Vector| {
            let mut w = Vector::zero(&f, 4);
            for (old, s) in v.iter().enumerate() {
                w.set(inv[old], s.clone());
            }
            w
        };
        let mult: Vec<Vec<Vector>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| relabel(alg.mul_basis(perm[i], perm[j])))
                    .collect()
            })
            .collect();
        let comult: Vec<Vec<(usize, usize, Scalar)>> = (0..4)
            .map(|i| {
                alg.comult_basis(perm[i])
                    .iter()
                    .map(|(j, k, c)| (inv[*j], inv[*k], c.clone()))
                    .collect()
            })
            .collect();
        let counit: Vec<Scalar> = (0..4)
            .map(|i| alg.counit_table()[perm[i]].clone())
            .collect();
        let mut antipode = Matrix::zero(&f, 4, 4);
        for j in 0..4 {
            let col = relabel(&alg.antipode(&alg.basis_vector(perm[j])));
            for r in 0..4 {
                antipode.set(r, j, col.get(r).clone());
            }
        }
        let unit = relabel(alg.unit_vector());
        let permuted = Arc::new(
            HopfAlgebraData::new(
                f,
                vec!["gx".into(), "1".into(), "x".into(), "g".into()],
                mult,
                unit,
                comult,
                counit,
                antipode,
            )
            .unwrap(),
        );
        assert!(crate::hopf::verify_hopf(&permuted).passed());

        assert_eq!(primitives(&permuted).unwrap().dim(), 0);
        assert_eq!(center(&permuted).dim(), 1);
        let one = permuted.basis_vector(1);
        let g = permuted.basis_vector(3);
        let s = skew_primitives(&permuted, &one, &g).unwrap();
        assert_eq!(s.dim(), 2);
        assert_subspace_sound(&s);
    }

    #[test]
    fn group_like_scans() {
        let h4 = Arc::new(sweedler4(&f3()));
        let gl = group_likes_bruteforce(&h4, DEFAULT_BUDGET).unwrap();
        assert_eq!(gl.elements.len(), 2);
        assert!(gl.elements.contains(h4.unit_vector()));
        assert!(gl.elements.contains(&h4.basis_vector(1)));

        let line = Arc::new(line_nilpotent(3, &f3()).unwrap());
        let gl = group_likes_bruteforce(&line, DEFAULT_BUDGET).unwrap();
        assert_eq!(gl.elements.len(), 1);

        let c4 = Arc::new(cyclic_group_algebra(4, &f3()).unwrap());
        let gl = group_likes_bruteforce(&c4, DEFAULT_BUDGET).unwrap();
        assert_eq!(gl.elements.len(), 4);
        for i in 0..4 {
            assert!(gl.elements.contains(&c4.basis_vector(i)));
        }
    }

    #[test]
    fn group_like_sets_are_groups() {
        for alg in [
            Arc::new(sweedler4(&f3())),
            Arc::new(line_semisimple(3, &f3()).unwrap()),
            Arc::new(cyclic_group_algebra(4, &f3()).unwrap()),
        ] {
            let gl = group_likes_bruteforce(&alg, DEFAULT_BUDGET).unwrap();
            assert!(gl.elements.contains(alg.unit_vector()));
            for a in &gl.elements {
                for b in &gl.elements {
                    let ab = alg.mul(a, b);
                    assert!(gl.elements.contains(&ab));
                }
                let inv = alg.invert_element(a).expect("group-likes are invertible");
                assert!(gl.elements.contains(&inv));
            }
        }
    }

    #[test]
    fn group_like_scan_refusals() {
        let h4_q = Arc::new(sweedler4(&FieldSpec::rationals()));
        assert!(matches!(
            group_likes_bruteforce(&h4_q, DEFAULT_BUDGET),
            Err(AnalysisError::WrongField(_))
        ));

        let h4_f5 = Arc::new(sweedler4(&FieldSpec::prime_field(5).unwrap()));
        match group_likes_bruteforce(&h4_f5, 100) {
            Err(AnalysisError::BudgetExceeded { needed, budget }) => {
                assert_eq!(needed, 625);
                assert_eq!(budget, 100);
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn identity_on_h4_is_not_cocentral() {
        let h4 = Arc::new(sweedler4(&f3()));
        let id = LinearMapData::identity(&h4);
        assert!(!is_cocentral(&id));
        let trivial = LinearMapData::trivial(&h4, &h4);
        assert!(is_cocentral(&trivial));
    }

    #[test]
    fn cocentral_maps_from_h4_are_only_trivial() {
        let f = f3();
        let h4 = Arc::new(sweedler4(&f));
        let targets: Vec<Arc<HopfAlgebraData>> = vec![
            Arc::clone(&h4),
            Arc::new(line_nilpotent(3, &f).unwrap()),
            Arc::new(line_semisimple(3, &f).unwrap()),
            Arc::new(cyclic_group_algebra(2, &f).unwrap()),
        ];
        for a in targets {
            let maps = cocentral_maps(&h4, &a, DEFAULT_BUDGET).unwrap();
            assert_eq!(maps.len(), 1, "target dim {}", a.dim());
            assert_eq!(maps[0], LinearMapData::trivial(&h4, &a));
        }
    }

    #[test]
    fn cocentral_maps_from_group_algebra_form_a_group() {
        let f = f3();
        let c2 = Arc::new(cyclic_group_algebra(2, &f).unwrap());
        let maps = cocentral_maps(&c2, &c2, DEFAULT_BUDGET).unwrap();
        // r(g) may be any group-like: 1 or g
        assert_eq!(maps.len(), 2);
        let trivial = LinearMapData::trivial(&c2, &c2);
        assert!(maps.contains(&trivial));
        assert!(maps.contains(&LinearMapData::identity(&c2)));

        // convolution closure, identity, and inverse inside the set
        for r in &maps {
            for s in &maps {
                let rs = convolution(r, s).unwrap();
                assert!(maps.contains(&rs));
            }
            let inv = cocentral_inverse(r);
            assert!(maps.contains(&inv));
            assert_eq!(convolution(r, &inv).unwrap(), trivial);
            assert_eq!(convolution(r, &trivial).unwrap(), *r);
        }
    }

    #[test]
    fn cocentral_maps_over_rationals_when_rigid() {
        // residual dimension is 0 here, so completeness survives ℚ
        let q = FieldSpec::rationals();
        let h4 = Arc::new(sweedler4(&q));
        let c2 = Arc::new(cyclic_group_algebra(2, &q).unwrap());
        let maps = cocentral_maps(&h4, &c2, DEFAULT_BUDGET).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0], LinearMapData::trivial(&h4, &c2));
    }
}
