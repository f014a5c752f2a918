//! Acceptance gate: one test per contract criterion, numbered c01..c10 so
//! the harness prints one pass/fail line for each. Every assertion here is
//! exact; there are no tolerances anywhere. Expected values were derived by
//! hand before the library existed and are frozen below.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hopfcross::analysis::cocentral_maps;
use hopfcross::catalog::{AlphaRange, CatalogRef};
use hopfcross::crossed::{
    build_crossed_product, check_crossed_system, cohomologous_transform, coinvariants,
    extract_from_splitting, CrossedProduct, CrossedSystemData,
};
use hopfcross::hopf::{verify_hopf, HopfAlgebraData, LinearMapData};
use hopfcross::io::parse_element;
use hopfcross::linalg::{Matrix, Subspace, Vector};
use hopfcross::morphism::{
    endo_search_by_generators, quadruple_to_map, stabilization_check, triple_to_map,
    MorphismQuadruple,
};
use hopfcross::report::VerificationReport;
use hopfcross::sweedler::{
    build_twisted_product, classification_report, cocycle_from_param, decide_orbit,
    enumerate_h4_systems, primitively_generated, sweedler_over, twisted_generator_data,
    H4CocycleParam,
};
use hopfcross::{FieldSpec, Scalar};

fn f3() -> FieldSpec {
    FieldSpec::prime_field(3).unwrap()
}

fn f5() -> FieldSpec {
    FieldSpec::prime_field(5).unwrap()
}

fn ratfn3(vars: &[&str]) -> FieldSpec {
    FieldSpec::rational_functions(3, vars.iter().map(|v| v.to_string()).collect()).unwrap()
}

fn sc(spec: &FieldSpec, s: &str) -> Scalar {
    spec.parse_scalar(s).unwrap()
}

fn alg(r: &CatalogRef, spec: &FieldSpec) -> Arc<HopfAlgebraData> {
    r.build(spec).unwrap().algebra
}

fn twisted(base: &Arc<HopfAlgebraData>, param: &str) -> CrossedProduct {
    let v = parse_element(base, param).unwrap();
    let p = H4CocycleParam::new(Arc::clone(base), v).unwrap();
    build_twisted_product(&p).unwrap()
}

fn failing(rep: &VerificationReport) -> String {
    rep.failures()
        .map(|c| c.name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// All p^dim vectors of a prime-field coordinate space, in base-p order.
fn all_vectors(field: &FieldSpec, dim: usize) -> Vec<Vector> {
    let p = field.characteristic() as usize;
    assert!(p > 0, "exhaustive sweeps need a prime field");
    let total = p.pow(dim as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut v = Vector::zero(field, dim);
        for i in 0..dim {
            let digit = code % p;
            code /= p;
            if digit != 0 {
                v.set(i, sc(field, &digit.to_string()));
            }
        }
        out.push(v);
    }
    out
}

/// Copies the structure tables and bumps exactly one entry by 1 or 2.
/// Construction cannot fail: the constructor checks shapes, not laws.
fn perturbed(alg: &HopfAlgebraData, rng: &mut StdRng) -> HopfAlgebraData {
    let field = alg.field().clone();
    let n = alg.dim();
    let mut mult: Vec<Vec<Vector>> = (0..n)
        .map(|i| (0..n).map(|j| alg.mul_basis(i, j).clone()).collect())
        .collect();
    let mut comult: Vec<Vec<(usize, usize, Scalar)>> =
        (0..n).map(|i| alg.comult_basis(i).to_vec()).collect();
    let mut counit = alg.counit_table().to_vec();
    let mut antipode = alg.antipode_matrix().clone();

    let one = field.one();
    let delta = if rng.gen_bool(0.5) {
        one.clone()
    } else {
        &one + &one
    };
    let i = rng.gen_range(0..n);
    let j = rng.gen_range(0..n);
    let k = rng.gen_range(0..n);
    match rng.gen_range(0..4u8) {
        0 => {
            let cur = mult[i][j].get(k).clone();
            mult[i][j].set(k, &cur + &delta);
        }
        1 => comult[i].push((j, k, delta)),
        2 => counit[k] = &counit[k] + &delta,
        _ => {
            let cur = antipode.column(j).get(i).clone();
            antipode.set(i, j, &cur + &delta);
        }
    }
    HopfAlgebraData::new(
        field,
        alg.labels().to_vec(),
        mult,
        alg.unit_vector().clone(),
        comult,
        counit,
        antipode,
    )
    .expect("a value perturbation keeps the shape valid")
}

#[test]
fn c01_catalog_algebras_verify_and_any_single_entry_perturbation_fails() {
    let everywhere = [
        FieldSpec::rationals(),
        f3(),
        f5(),
        ratfn3(&["X1"]),
    ];
    for spec in &everywhere {
        for r in [
            CatalogRef::Sweedler4,
            CatalogRef::Cyclic(2),
            CatalogRef::Cyclic(4),
        ] {
            let a = alg(&r, spec);
            let rep = verify_hopf(&a);
            assert!(
                rep.passed(),
                "{} over {}: {}",
                r.canonical_name(),
                spec.describe(),
                failing(&rep)
            );
        }
    }
    // the line algebras only exist in characteristic 3
    for spec in [f3(), ratfn3(&["X1"])] {
        for r in [CatalogRef::LineNilpotent(3), CatalogRef::LineSemisimple(3)] {
            let a = alg(&r, &spec);
            let rep = verify_hopf(&a);
            assert!(
                rep.passed(),
                "{} over {}: {}",
                r.canonical_name(),
                spec.describe(),
                failing(&rep)
            );
        }
    }
    // tensor products verify too
    let tensor_cases: Vec<(CatalogRef, CatalogRef, FieldSpec)> = vec![
        (CatalogRef::Sweedler4, CatalogRef::Cyclic(2), FieldSpec::rationals()),
        (CatalogRef::Sweedler4, CatalogRef::Cyclic(2), f3()),
        (CatalogRef::Sweedler4, CatalogRef::Cyclic(2), f5()),
        (CatalogRef::Sweedler4, CatalogRef::Cyclic(2), ratfn3(&["X1"])),
        (CatalogRef::LineSemisimple(3), CatalogRef::Sweedler4, f3()),
        (CatalogRef::LineSemisimple(3), CatalogRef::Sweedler4, ratfn3(&["X1"])),
        (CatalogRef::Cyclic(4), CatalogRef::Cyclic(2), FieldSpec::rationals()),
        (CatalogRef::LineNilpotent(3), CatalogRef::LineSemisimple(3), f3()),
    ];
    for (l, r, spec) in tensor_cases {
        let t = CatalogRef::Tensor(Box::new(l), Box::new(r));
        let a = alg(&t, &spec);
        let rep = verify_hopf(&a);
        assert!(
            rep.passed(),
            "{} over {}: {}",
            t.canonical_name(),
            spec.describe(),
            failing(&rep)
        );
    }

    // seeded sweep: 100 single-entry perturbations, every one refuted
    let targets = [
        ("sweedler4/f3", alg(&CatalogRef::Sweedler4, &f3())),
        ("line1:3/f3", alg(&CatalogRef::LineSemisimple(3), &f3())),
        ("cyclic:4/f5", alg(&CatalogRef::Cyclic(4), &f5())),
    ];
    let mut rng = StdRng::seed_from_u64(0x5eed_2026);
    for k in 0..100 {
        let (name, base) = &targets[k % targets.len()];
        let broken = perturbed(base, &mut rng);
        let rep = verify_hopf(&broken);
        assert!(
            !rep.passed(),
            "perturbation {k} of {name} slipped past every law"
        );
    }
}

#[test]
fn c02_sweedler_systems_are_exactly_the_central_primitive_family() {
    let spec = f3();
    for r in [CatalogRef::LineNilpotent(3), CatalogRef::LineSemisimple(3)] {
        let a = alg(&r, &spec);
        let y = a.basis_vector(1);

        // every parameter in the family yields a verified crossed system
        for s in ["0", "y", "2*y"] {
            let v = parse_element(&a, s).unwrap();
            let param = H4CocycleParam::new(Arc::clone(&a), v).unwrap();
            let sys = cocycle_from_param(&param).unwrap();
            let rep = check_crossed_system(&sys);
            assert!(
                rep.passed(),
                "{} at parameter {s}: {}",
                r.canonical_name(),
                failing(&rep)
            );
            build_crossed_product(&sys).unwrap();
        }

        // the derivation certificate and the independent brute-force sweep
        let family = enumerate_h4_systems(&a, Some(600_000)).unwrap();
        assert!(
            family.certificate.passed(),
            "{}: {}",
            r.canonical_name(),
            failing(&family.certificate)
        );
        let residual = family
            .certificate
            .check("exhaustive-residual")
            .expect("residual sweep must run over a prime field with budget");
        assert!(residual.passed, "residual sweep found an extra system");
        assert_eq!(family.parameter_space.dim(), 1);
        assert!(family.parameter_space.contains(&y));
        assert_eq!(family.basis_params.len(), 1);
        assert_eq!(family.basis_params[0].element(), &y);
        assert_eq!(family.family_size(), Some(3));
    }

    // characteristic zero: the trivial system is the only one
    let q = FieldSpec::rationals();
    for a in [sweedler_over(&q), alg(&CatalogRef::Cyclic(2), &q)] {
        let family = enumerate_h4_systems(&a, None).unwrap();
        assert!(family.certificate.passed(), "{}", failing(&family.certificate));
        assert_eq!(family.parameter_space.dim(), 0);
        assert_eq!(family.family_size(), Some(1));

        let zero = H4CocycleParam::new(Arc::clone(&a), a.zero_vector()).unwrap();
        let sys = cocycle_from_param(&zero).unwrap();
        let trivial = CrossedSystemData::trivial(Arc::clone(&a), sweedler_over(&q)).unwrap();
        assert_eq!(sys.action(), trivial.action());
        assert_eq!(sys.cocycle(), trivial.cocycle());
    }
}

#[test]
fn c03_twisted_products_satisfy_their_presentations() {
    let spec = f3();
    let minus_one = -&spec.one();

    // nilpotent base at parameter y: g^2 = 1, x^2 = y, xg = -gx,
    // y central, x^6 = 0
    let a0 = alg(&CatalogRef::LineNilpotent(3), &spec);
    let prod = twisted(&a0, "y");
    let e = prod.product();
    let g = e.basis_vector(1);
    let x = e.basis_vector(2);
    let gx = e.basis_vector(3);
    let y_emb = prod.i_a().apply(&a0.basis_vector(1));

    assert_eq!(&e.mul(&g, &g), e.unit_vector());
    assert_eq!(e.mul(&x, &x), y_emb);
    assert_eq!(e.mul(&x, &g), e.mul(&g, &x).scale(&minus_one));
    assert_eq!(e.mul(&g, &x), gx);
    assert_eq!(e.mul(&g, &y_emb), e.mul(&y_emb, &g));
    assert_eq!(e.mul(&x, &y_emb), e.mul(&y_emb, &x));
    let x6 = e.mul_many(&[&x, &x, &x, &x, &x, &x]);
    assert!(x6.is_zero(), "x^6 must vanish over the nilpotent base");

    // semisimple base at parameter q*y: x^6 = q^2 x^2
    let a1 = alg(&CatalogRef::LineSemisimple(3), &spec);
    for qs in ["1", "2"] {
        let qv = sc(&spec, qs);
        let prod = twisted(&a1, &format!("{qs}*y"));
        let e = prod.product();
        let x = e.basis_vector(2);
        let x2 = e.mul(&x, &x);
        let x6 = e.mul_many(&[&x, &x, &x, &x, &x, &x]);
        assert_eq!(x6, x2.scale(&(&qv * &qv)), "x^6 = q^2 x^2 at q = {qs}");
    }
}

#[test]
fn c04_classification_finds_two_classes_over_f3() {
    let spec = f3();
    let two = sc(&spec, "2");
    for r in [CatalogRef::LineNilpotent(3), CatalogRef::LineSemisimple(3)] {
        let cat = r.build(&spec).unwrap();
        let report = classification_report(&cat, 600_000).unwrap();
        let a = &cat.algebra;

        assert_eq!(report.zp_dim, 1, "{}", r.canonical_name());
        assert_eq!(report.h2_size, Some(3));
        assert!(report.cocentral_triviality);
        assert!(report.complete, "an equivalence question was left open");
        assert_eq!(report.classes.len(), 2);

        let zero_class = &report.classes[0];
        assert_eq!(zero_class.representative, a.zero_vector());
        assert!(zero_class.members.is_empty());
        assert_eq!(zero_class.orbit_size, Some(1));
        assert_eq!(zero_class.aut.order, Some(4));

        let y_class = &report.classes[1];
        assert_eq!(y_class.representative, a.basis_vector(1));
        assert_eq!(y_class.orbit_size, Some(2));
        assert_eq!(y_class.aut.order, Some(2));
        assert_eq!(y_class.members.len(), 1);
        let (member, w) = &y_class.members[0];
        assert_eq!(member, &a.basis_vector(1).scale(&two));
        // witness really solves alpha * 1 = beta^2 * 2
        assert_eq!(w.alpha, &(&w.beta * &w.beta) * &two);

        assert_eq!(report.separations.len(), 1);
        let (lo, hi, reason) = &report.separations[0];
        assert_eq!((*lo, *hi), (0, 1));
        assert!(!reason.is_empty());
    }
}

fn hopf_automorphisms(
    algebra: &Arc<HopfAlgebraData>,
    gens: &hopfcross::catalog::GeneratorData,
    budget: u64,
) -> Vec<LinearMapData> {
    let outcome = endo_search_by_generators(algebra, gens, budget).unwrap();
    assert!(outcome.endomorphisms.len() >= outcome.automorphisms.len());
    for m in &outcome.automorphisms {
        assert!(m.is_hopf_map());
        assert!(m.inverse().is_some());
    }
    outcome.automorphisms
}

fn assert_closed_group(autos: &[LinearMapData]) {
    let contains = |m: &LinearMapData| autos.iter().any(|a| a.matrix() == m.matrix());
    for a in autos {
        let inv = a.inverse().expect("automorphisms invert");
        assert!(contains(&inv), "inverse left the automorphism set");
        for b in autos {
            let c = a.compose(b).unwrap();
            assert!(contains(&c), "composite left the automorphism set");
        }
    }
}

#[test]
fn c05_automorphism_groups_match_exhaustive_search() {
    // Sweedler algebra over F5: the scalings x -> beta x, so 4 of them
    let s5 = CatalogRef::Sweedler4.build(&f5()).unwrap();
    let autos = hopf_automorphisms(&s5.algebra, s5.generators.as_ref().unwrap(), 10_000);
    assert_eq!(autos.len(), 4);
    assert_closed_group(&autos);

    // semisimple line over F3: y -> y and y -> 2y
    let l1 = CatalogRef::LineSemisimple(3).build(&f3()).unwrap();
    let autos = hopf_automorphisms(&l1.algebra, l1.generators.as_ref().unwrap(), 1_000);
    assert_eq!(autos.len(), 2);
    assert_closed_group(&autos);

    // twisted products over that base: the untwisted product keeps both
    // scalings independent (order 4), the twist at y locks them together
    // (order 2)
    let base_gens = l1.generators.as_ref().unwrap();
    for (param, expected) in [("0", 4usize), ("y", 2)] {
        let prod = twisted(&l1.algebra, param);
        let gens = twisted_generator_data(&prod, base_gens);
        let autos = hopf_automorphisms(prod.product(), &gens, 1_000_000);
        assert_eq!(autos.len(), expected, "parameter {param}");
        assert_closed_group(&autos);
    }
}

#[test]
fn c06_parameter_orbits_over_rational_function_fields() {
    let vars = ["X1", "X2", "X3", "X4", "X5"];
    let spec = ratfn3(&vars);
    let range = AlphaRange::PrimeSubfieldUnits;

    // distinct indeterminates never collide, in either direction
    for i in 0..vars.len() {
        for j in (i + 1)..vars.len() {
            let qi = sc(&spec, vars[i]);
            let qj = sc(&spec, vars[j]);
            let forward = decide_orbit(&qi, &qj, range, &spec).unwrap();
            assert!(
                forward.is_not_equivalent(),
                "{} vs {} was not separated",
                vars[i],
                vars[j]
            );
            let backward = decide_orbit(&qj, &qi, range, &spec).unwrap();
            assert!(backward.is_not_equivalent());
        }
    }

    // each X and 2X are equivalent, and the witness solves its equation
    for v in vars {
        let q = sc(&spec, v);
        let q2 = sc(&spec, &format!("2*{v}"));
        let verdict = decide_orbit(&q, &q2, range, &spec).unwrap();
        let w = verdict
            .witness()
            .unwrap_or_else(|| panic!("{v} vs 2*{v} must be equivalent"));
        assert_eq!(&w.alpha * &q, &(&w.beta * &w.beta) * &q2);
    }
}

fn pick<'a, T>(rng: &mut StdRng, pool: &'a [T]) -> &'a T {
    &pool[rng.gen_range(0..pool.len())]
}

#[test]
fn c07_morphism_checkers_agree_with_direct_evaluation() {
    let spec = f3();
    let l1 = alg(&CatalogRef::LineSemisimple(3), &spec);
    let h4 = sweedler_over(&spec);
    assert!(primitively_generated(&l1));

    let prods: Vec<CrossedProduct> =
        ["0", "y", "2*y"].iter().map(|s| twisted(&l1, s)).collect();

    // exhaustive pools of typed component maps; the first column of every
    // candidate is pinned to the unit, which is what unitarity demands
    let a_vecs = all_vectors(&spec, 3);
    let h_vecs = all_vectors(&spec, 4);

    let mut u_pool: Vec<LinearMapData> = Vec::new();
    for im1 in &a_vecs {
        for im2 in &a_vecs {
            let m = LinearMapData::from_images(
                &l1,
                &l1,
                &[l1.unit_vector().clone(), im1.clone(), im2.clone()],
            )
            .unwrap();
            let fl = m.flags();
            if fl.coalgebra_map && fl.unitary {
                u_pool.push(m);
            }
        }
    }
    // u(y) in P = <y> (3 ways) and u(y^2) = a^2 y^2 + d y, so 9 maps
    assert_eq!(u_pool.len(), 9);

    let mut r_pool: Vec<LinearMapData> = Vec::new();
    for img in &a_vecs {
        for imx in &a_vecs {
            for imgx in &a_vecs {
                let m = LinearMapData::from_images(
                    &h4,
                    &l1,
                    &[
                        l1.unit_vector().clone(),
                        img.clone(),
                        imx.clone(),
                        imgx.clone(),
                    ],
                )
                .unwrap();
                let fl = m.flags();
                if fl.coalgebra_map && fl.unitary {
                    r_pool.push(m);
                }
            }
        }
    }
    // r(g) = 1 is forced (the base has no other group-like) and r sends
    // both skew primitives into <y>, so 9 maps again
    assert_eq!(r_pool.len(), 9);

    // a coalgebra map must send the group-like g to a group-like, so the
    // g column only ranges over those; the x and gx columns stay free
    let group_likes: Vec<Vector> = h_vecs
        .iter()
        .filter(|z| h4.counit(z) == spec.one() && h4.comult_dense(z) == z.kron(z))
        .cloned()
        .collect();
    assert_eq!(group_likes.len(), 2);
    let mut v_pool: Vec<LinearMapData> = Vec::new();
    for zg in &group_likes {
        for imx in &h_vecs {
            for imgx in &h_vecs {
                let m = LinearMapData::from_images(
                    &h4,
                    &h4,
                    &[
                        h4.unit_vector().clone(),
                        zg.clone(),
                        imx.clone(),
                        imgx.clone(),
                    ],
                )
                .unwrap();
                let fl = m.flags();
                if fl.coalgebra_map && fl.unitary {
                    v_pool.push(m);
                }
            }
        }
    }
    // 81 maps fixing g (two free skew-primitive columns of dimension 2)
    // plus the collapse through the counit
    assert_eq!(v_pool.len(), 82);

    let mut p_pool: Vec<LinearMapData> = Vec::new();
    for imy in &h_vecs {
        for imy2 in &h_vecs {
            let m = LinearMapData::from_images(
                &l1,
                &h4,
                &[h4.unit_vector().clone(), imy.clone(), imy2.clone()],
            )
            .unwrap();
            if m.is_hopf_map() {
                p_pool.push(m);
            }
        }
    }
    // the Sweedler algebra has no nonzero primitives, so only the trivial map
    assert_eq!(p_pool.len(), 1);
    assert_eq!(
        p_pool[0].matrix(),
        LinearMapData::trivial(&l1, &h4).matrix()
    );

    let u_hopf: Vec<LinearMapData> =
        u_pool.iter().filter(|m| m.is_hopf_map()).cloned().collect();
    let v_hopf: Vec<LinearMapData> =
        v_pool.iter().filter(|m| m.is_hopf_map()).cloned().collect();
    assert_eq!(u_hopf.len(), 3);
    assert_eq!(v_hopf.len(), 4);

    let id12 = Matrix::identity(&spec, 12);
    let mut rng = StdRng::seed_from_u64(20_260_816);
    let mut checked = 0usize;
    let mut passes = 0usize;
    let mut fails = 0usize;

    // identity quadruples and triples pass on every product
    for pr in &prods {
        let out = quadruple_to_map(&MorphismQuadruple::identity(pr), pr, pr).unwrap();
        assert!(out.report.passed(), "{}", failing(&out.report));
        assert!(out.map.is_hopf_map());
        checked += 1;
        passes += 1;

        let out = triple_to_map(
            &LinearMapData::identity(&l1),
            &LinearMapData::trivial(&h4, &l1),
            &LinearMapData::identity(&h4),
            pr,
            pr,
            true,
        )
        .unwrap();
        assert!(out.report.passed(), "{}", failing(&out.report));
        assert!(out.is_isomorphism);
        let inv = out.inverse.as_ref().expect("identity inverts");
        assert_eq!(inv.compose(&out.map).unwrap().matrix(), &id12);
        checked += 1;
        passes += 1;
    }

    // random quadruples: the report must equal the direct evaluation
    for _ in 0..110 {
        let u = pick(&mut rng, &u_pool);
        let r = pick(&mut rng, &r_pool);
        let v = pick(&mut rng, &v_pool);
        let src = pick(&mut rng, &prods);
        let dst = pick(&mut rng, &prods);
        let quad =
            MorphismQuadruple::new(u.clone(), p_pool[0].clone(), r.clone(), v.clone()).unwrap();
        let out = quadruple_to_map(&quad, src, dst).unwrap();
        assert_eq!(
            out.report.passed(),
            out.map.is_hopf_map(),
            "quadruple checker disagrees with the assembled map"
        );
        checked += 1;
        if out.report.passed() {
            passes += 1;
        } else {
            fails += 1;
        }
    }

    // random triples: same agreement, plus inverse bookkeeping
    for _ in 0..110 {
        let u = pick(&mut rng, &u_hopf);
        let r = pick(&mut rng, &r_pool);
        let v = pick(&mut rng, &v_hopf);
        let src = pick(&mut rng, &prods);
        let dst = pick(&mut rng, &prods);
        let out = triple_to_map(u, r, v, src, dst, true).unwrap();
        assert_eq!(
            out.report.passed(),
            out.map.is_hopf_map(),
            "triple checker disagrees with the assembled map"
        );
        if out.report.passed() {
            assert_eq!(out.is_isomorphism, out.map.inverse().is_some());
            if out.is_isomorphism {
                let inv = out.inverse.as_ref().expect("isomorphism inverts");
                assert_eq!(inv.compose(&out.map).unwrap().matrix(), &id12);
                assert_eq!(out.map.compose(inv).unwrap().matrix(), &id12);
                stabilization_check(&out.map, src, dst).unwrap();
            }
            passes += 1;
        } else {
            fails += 1;
        }
        checked += 1;
    }
    assert!(checked >= 200, "only {checked} candidates were exercised");
    assert!(passes >= 6 && fails >= 1, "passes {passes}, fails {fails}");

    // the four scaling isomorphisms between twists at y and 2y land in the
    // expected stabilization quadrants: u = id keeps the base pointwise,
    // beta = 1 keeps the projection
    let two = sc(&spec, "2");
    let u_id = LinearMapData::identity(&l1);
    let u_two = LinearMapData::from_images(
        &l1,
        &l1,
        &[
            l1.unit_vector().clone(),
            l1.basis_vector(1).scale(&two),
            l1.basis_vector(2),
        ],
    )
    .unwrap();
    let v_id = LinearMapData::identity(&h4);
    let v_two = LinearMapData::from_images(
        &h4,
        &h4,
        &[
            h4.basis_vector(0),
            h4.basis_vector(1),
            h4.basis_vector(2).scale(&two),
            h4.basis_vector(3).scale(&two),
        ],
    )
    .unwrap();
    let r_triv = LinearMapData::trivial(&h4, &l1);
    for (u, dst, keeps_base) in [(&u_id, &prods[1], true), (&u_two, &prods[2], false)] {
        for (v, keeps_projection) in [(&v_id, true), (&v_two, false)] {
            let out = triple_to_map(u, &r_triv, v, &prods[1], dst, true).unwrap();
            assert!(out.report.passed(), "{}", failing(&out.report));
            assert!(out.is_isomorphism);
            let st = stabilization_check(&out.map, &prods[1], dst).unwrap();
            assert_eq!(st.stabilizes_a, keeps_base);
            assert_eq!(st.costabilizes_h, keeps_projection);
        }
    }
}

#[test]
fn c08_splitting_extraction_recovers_the_system() {
    let spec = f3();
    for r in [CatalogRef::LineNilpotent(3), CatalogRef::LineSemisimple(3)] {
        let a = alg(&r, &spec);
        let y = a.basis_vector(1);
        let param = H4CocycleParam::new(Arc::clone(&a), y).unwrap();
        let sys = cocycle_from_param(&param).unwrap();
        let prod = build_crossed_product(&sys).unwrap();

        let extraction =
            extract_from_splitting(prod.product(), prod.pi_h(), prod.i_h()).unwrap();
        let got = extraction.product.system();
        assert_eq!(got.action(), sys.action(), "{}", r.canonical_name());
        assert_eq!(got.cocycle(), sys.cocycle(), "{}", r.canonical_name());

        let psi = &extraction.iso;
        assert!(psi.is_hopf_map());
        assert!(psi.inverse().is_some());
        let st = stabilization_check(psi, &extraction.product, &prod).unwrap();
        assert!(st.stabilizes_a);
        assert!(st.costabilizes_h);
    }
}

#[test]
fn c09_the_only_cocentral_map_is_trivial_and_twists_by_it_do_nothing() {
    let spec = f3();
    let h4 = sweedler_over(&spec);
    let bases = [
        ("line0:3", alg(&CatalogRef::LineNilpotent(3), &spec)),
        ("line1:3", alg(&CatalogRef::LineSemisimple(3), &spec)),
        ("sweedler4", Arc::clone(&h4)),
    ];
    for (name, a) in &bases {
        let maps = cocentral_maps(&h4, a, 100_000).unwrap();
        assert_eq!(maps.len(), 1, "{name}: unexpected cocentral maps");
        assert_eq!(
            maps[0].matrix(),
            LinearMapData::trivial(&h4, a).matrix(),
            "{name}"
        );
    }

    // twisting a system by the trivial map returns identical tables and
    // the identity isomorphism
    let a0 = alg(&CatalogRef::LineNilpotent(3), &spec);
    let param = H4CocycleParam::new(Arc::clone(&a0), a0.basis_vector(1)).unwrap();
    let sys = cocycle_from_param(&param).unwrap();
    let r = LinearMapData::trivial(&h4, &a0);
    let t = cohomologous_transform(&sys, &r).unwrap();
    assert_eq!(t.transformed.system().action(), sys.action());
    assert_eq!(t.transformed.system().cocycle(), sys.cocycle());
    assert_eq!(t.iso.matrix(), &Matrix::identity(&spec, 12));
}

#[test]
fn c10_coinvariants_equal_the_embedded_base() {
    let mut items: Vec<(String, CrossedProduct)> = Vec::new();
    let spec3 = f3();
    for r in [CatalogRef::LineNilpotent(3), CatalogRef::LineSemisimple(3)] {
        let a = alg(&r, &spec3);
        for s in ["0", "y", "2*y"] {
            items.push((format!("{} @ {s}", r.canonical_name()), twisted(&a, s)));
        }
    }
    let q = FieldSpec::rationals();
    items.push(("sweedler4/Q @ 0".into(), twisted(&sweedler_over(&q), "0")));
    items.push((
        "cyclic:2/Q @ 0".into(),
        twisted(&alg(&CatalogRef::Cyclic(2), &q), "0"),
    ));
    let rf = ratfn3(&["X1"]);
    items.push((
        "line0:3/f3(X1) @ X1*y".into(),
        twisted(&alg(&CatalogRef::LineNilpotent(3), &rf), "X1*y"),
    ));

    for (name, prod) in &items {
        let e = prod.product();
        let sub = coinvariants(e, prod.pi_h()).unwrap();
        let a_dim = prod.system().a().dim();
        assert_eq!(sub.dim(), a_dim, "{name}");

        let image: Vec<Vector> = (0..a_dim).map(|j| prod.i_a().apply_basis(j)).collect();
        for (j, col) in image.iter().enumerate() {
            assert!(sub.contains(col), "{name}: embedded basis column {j}");
        }
        let span = Subspace::from_spanning(e.field(), e.dim(), &image);
        for b in sub.basis() {
            assert!(span.contains(b), "{name}: coinvariant outside the base");
        }
    }
}
