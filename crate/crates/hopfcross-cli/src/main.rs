//! `hopf`: command line front end for the hopfcross library.
//!
//! Exit codes are uniform across subcommands: 0 = pass/decided,
//! 1 = refuted/failed, 2 = undecided, 3 = input or resolution error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hopfcross::catalog::{AlphaRange, AutModel, CatalogAlgebra, CatalogRef};
use hopfcross::crossed::{build_crossed_product, check_crossed_system, CrossedProduct};
use hopfcross::hopf::{verify_hopf, HopfAlgebraData, LinearMapData};
use hopfcross::io::{
    classification_to_dto, matrix_from_rows, parse_element, parse_field_flag, read_algebra_json,
    report_to_dto, system_from_dto, tristate_to_dto, write_algebra_json, ClassificationDto,
    MorphismDto, SystemDto,
};
use hopfcross::morphism::{
    endo_search_by_generators, quadruple_to_map, triple_to_map, MorphismError, MorphismQuadruple,
    MorphismWarning,
};
use hopfcross::sweedler::{
    build_twisted_product, classification_report, decide_orbit, primitively_generated,
    H4CocycleParam, TriState,
};
use hopfcross::FieldSpec;

#[derive(Parser)]
#[command(
    name = "hopf",
    version,
    about = "Exact computations with Hopf algebras and their crossed products"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Hopf algebra axioms of an algebra
    Verify(VerifyArgs),
    /// Classify crossed products with the Sweedler algebra over a base algebra
    Classify(ClassifyArgs),
    /// Build or check crossed-product structures
    #[command(subcommand)]
    Crossed(CrossedCmd),
    /// Enumerate the Hopf automorphism group of a catalog algebra
    Aut(AutArgs),
    /// Decide whether two cocycle parameters give isomorphic products
    Equiv(EquivArgs),
    /// Check morphism data between two crossed products
    #[command(subcommand)]
    Morphism(MorphismCmd),
}

#[derive(Args)]
struct VerifyArgs {
    /// catalog:NAME[:params] or a path to an algebra JSON file
    algebra: String,
    /// Base field: q, fP, or fP(V1,...,Vn)
    #[arg(long)]
    field: String,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// catalog:NAME[:params] or a path to an algebra JSON file
    algebra: String,
    /// Base field: q, fP, or fP(V1,...,Vn)
    #[arg(long)]
    field: String,
    /// Override the automorphism model used for orbit decisions
    #[arg(long, value_enum)]
    aut_model: Option<AutModelFlag>,
    /// Candidate ceiling for exhaustive searches
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Do not verify the resolved algebra before classifying
    #[arg(long)]
    skip_verify: bool,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AutModelFlag {
    /// Single-generator scaling model (catalog algebras that define one)
    Scaling,
    /// Exhaustive enumeration over a finite field
    FiniteSearch,
}

#[derive(Subcommand)]
enum CrossedCmd {
    /// Build the crossed product of a base algebra with the Sweedler algebra
    Build(CrossedBuildArgs),
    /// Check the crossed-system axioms of a system JSON file
    Check(CrossedCheckArgs),
}

#[derive(Args)]
struct CrossedBuildArgs {
    /// Base algebra A: catalog reference or algebra JSON path
    #[arg(long)]
    base: String,
    /// Base field: q, fP, or fP(V1,...,Vn)
    #[arg(long)]
    field: String,
    /// Cocycle parameter, a central primitive element of A, e.g. "y" or "2*y"
    #[arg(long)]
    param: String,
    /// Write the product algebra JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Do not verify the resolved base algebra first
    #[arg(long)]
    skip_verify: bool,
}

#[derive(Args)]
struct CrossedCheckArgs {
    /// Crossed-system JSON file: {"A": ..., "H": ..., "action": ..., "cocycle": ...}
    #[arg(long)]
    system: PathBuf,
    /// Base field: q, fP, or fP(V1,...,Vn)
    #[arg(long)]
    field: String,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AutArgs {
    /// Catalog algebra whose Hopf automorphisms to enumerate
    #[arg(long)]
    algebra: String,
    /// Base field: q, fP, or fP(V1,...,Vn)
    #[arg(long)]
    field: String,
    /// Candidate ceiling for the exhaustive search
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Emit the counts as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EquivArgs {
    /// Base field: q, fP, or fP(V1,...,Vn)
    #[arg(long)]
    field: String,
    /// First cocycle parameter (a scalar in the field's grammar)
    #[arg(long)]
    q: String,
    /// Second cocycle parameter
    #[arg(long)]
    qprime: String,
    /// Which scalars the base automorphism may scale by
    #[arg(long, value_enum, default_value = "full")]
    scalars: ScalarsFlag,
    /// Emit the verdict as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScalarsFlag {
    /// Any unit of the field
    Full,
    /// Units of the prime subfield only
    PrimeSubfield,
}

#[derive(Subcommand)]
enum MorphismCmd {
    /// Check quadruple or triple morphism data between two crossed products
    Check(MorphismCheckArgs),
}

#[derive(Args)]
struct MorphismCheckArgs {
    /// Source crossed-system JSON file
    #[arg(long)]
    src: PathBuf,
    /// Target crossed-system JSON file
    #[arg(long)]
    dst: PathBuf,
    /// Morphism JSON file: matrices keyed "u", "r", "v" and optionally "p"
    #[arg(long)]
    map: PathBuf,
    /// Base field: q, fP, or fP(V1,...,Vn)
    #[arg(long)]
    field: String,
    /// Emit the outcome as JSON
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Classify(a) => cmd_classify(a),
        Cmd::Crossed(CrossedCmd::Build(a)) => cmd_crossed_build(a),
        Cmd::Crossed(CrossedCmd::Check(a)) => cmd_crossed_check(a),
        Cmd::Aut(a) => cmd_aut(a),
        Cmd::Equiv(a) => cmd_equiv(a),
        Cmd::Morphism(MorphismCmd::Check(a)) => cmd_morphism_check(a),
    }
}

struct Resolved {
    catalog: Option<CatalogAlgebra>,
    algebra: Arc<HopfAlgebraData>,
}

fn resolve_algebra(r: &str, spec: &FieldSpec, verify: bool) -> Result<Resolved> {
    let resolved = if r.starts_with("catalog:") {
        let cat = CatalogRef::parse(r)?
            .build(spec)
            .with_context(|| format!("building {r} over {}", spec.describe()))?;
        Resolved {
            algebra: Arc::clone(&cat.algebra),
            catalog: Some(cat),
        }
    } else {
        let text = fs::read_to_string(r).with_context(|| format!("reading {r}"))?;
        let alg = read_algebra_json(&text).with_context(|| format!("parsing {r}"))?;
        if alg.field() != spec {
            bail!(
                "{r} is an algebra over {}, but --field says {}",
                alg.field().describe(),
                spec.describe()
            );
        }
        Resolved {
            algebra: Arc::new(alg),
            catalog: None,
        }
    };
    if verify {
        let report = verify_hopf(&resolved.algebra);
        if !report.passed() {
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            bail!("{r} fails the Hopf axioms: {}", failed.join(", "));
        }
    }
    Ok(resolved)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    let spec = parse_field_flag(&a.field)?;
    let resolved = resolve_algebra(&a.algebra, &spec, false)?;
    let report = verify_hopf(&resolved.algebra);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report_to_dto(&report))?);
    } else {
        print!("{}", report.render());
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_classify(a: ClassifyArgs) -> Result<u8> {
    let spec = parse_field_flag(&a.field)?;
    let resolved = resolve_algebra(&a.algebra, &spec, !a.skip_verify)?;
    let mut cat = resolved.catalog.unwrap_or_else(|| CatalogAlgebra {
        name: a.algebra.clone(),
        algebra: Arc::clone(&resolved.algebra),
        group_likes: None,
        generators: None,
        aut_model: AutModel::FiniteSearch,
    });
    match a.aut_model {
        Some(AutModelFlag::Scaling) => {
            if !matches!(cat.aut_model, AutModel::Scaling { .. }) {
                bail!(
                    "{} defines no scaling automorphism model; use --aut-model finite-search",
                    cat.name
                );
            }
        }
        Some(AutModelFlag::FiniteSearch) => cat.aut_model = AutModel::FiniteSearch,
        None => {}
    }
    let report = classification_report(&cat, a.budget)?;
    let dto = classification_to_dto(&cat, &report);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&dto)?);
    } else {
        print!("{}", render_classification(&dto));
    }
    Ok(if report.complete { 0 } else { 2 })
}

fn render_classification(dto: &ClassificationDto) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "crossed products with the Sweedler algebra over {} ({})",
        dto.algebra, dto.field
    );
    let _ = writeln!(
        out,
        "cocycle parameter space dimension: {}",
        dto.parameter_space_dim
    );
    let _ = writeln!(out, "cohomology classes: {}", dto.h2_description);
    let _ = writeln!(out, "isomorphism classes: {}", dto.class_count);
    for (i, c) in dto.classes.iter().enumerate() {
        let orbit = match c.orbit_size {
            Some(n) => format!(", orbit size {n}"),
            None => String::new(),
        };
        let aut = match c.aut.order {
            Some(n) => format!("automorphism group order {n}"),
            None => c.aut.condition.clone(),
        };
        let _ = writeln!(
            out,
            "  class {}: parameter {}{orbit}; {aut}",
            i + 1,
            c.representative
        );
        for m in &c.members {
            let _ = writeln!(
                out,
                "    {} via alpha = {}, beta = {} ({})",
                m.parameter, m.alpha, m.beta, m.relation
            );
        }
    }
    for s in &dto.separations {
        let _ = writeln!(
            out,
            "  classes {} and {} differ: {}",
            s.first_class + 1,
            s.second_class + 1,
            s.reason
        );
    }
    for n in &dto.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    let _ = writeln!(
        out,
        "classification complete: {}",
        if dto.complete { "yes" } else { "no" }
    );
    out
}

fn cmd_crossed_build(a: CrossedBuildArgs) -> Result<u8> {
    let spec = parse_field_flag(&a.field)?;
    let resolved = resolve_algebra(&a.base, &spec, !a.skip_verify)?;
    let elem = parse_element(&resolved.algebra, &a.param)
        .with_context(|| format!("parsing --param {:?}", a.param))?;
    let param = H4CocycleParam::new(Arc::clone(&resolved.algebra), elem)?;
    let product = build_twisted_product(&param)?;
    let text = write_algebra_json(product.product());
    match &a.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            println!(
                "wrote {} (dimension {})",
                path.display(),
                product.product().dim()
            );
        }
        None => println!("{text}"),
    }
    Ok(0)
}

fn cmd_crossed_check(a: CrossedCheckArgs) -> Result<u8> {
    let spec = parse_field_flag(&a.field)?;
    let text = fs::read_to_string(&a.system)
        .with_context(|| format!("reading {}", a.system.display()))?;
    let dto: SystemDto = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", a.system.display()))?;
    let sys = system_from_dto(&dto, &spec)?;
    let report = check_crossed_system(&sys);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report_to_dto(&report))?);
    } else {
        print!("{}", report.render());
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_aut(a: AutArgs) -> Result<u8> {
    let spec = parse_field_flag(&a.field)?;
    let resolved = resolve_algebra(&a.algebra, &spec, false)?;
    let cat = resolved.catalog.ok_or_else(|| {
        anyhow!("automorphism enumeration needs a catalog algebra with generator data")
    })?;
    let gens = cat
        .generators
        .as_ref()
        .ok_or_else(|| anyhow!("{} ships no generator data", cat.name))?;
    let outcome = endo_search_by_generators(&cat.algebra, gens, a.budget)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "algebra": cat.name,
                "order": outcome.automorphisms.len(),
                "endomorphisms": outcome.endomorphisms.len(),
                "candidates_scanned": outcome.candidates_scanned,
            }))?
        );
    } else {
        println!(
            "automorphism group order: {}",
            outcome.automorphisms.len()
        );
        println!(
            "hopf endomorphisms: {} (candidates scanned: {})",
            outcome.endomorphisms.len(),
            outcome.candidates_scanned
        );
    }
    Ok(0)
}

fn cmd_equiv(a: EquivArgs) -> Result<u8> {
    let spec = parse_field_flag(&a.field)?;
    let q = spec
        .parse_scalar(&a.q)
        .with_context(|| format!("parsing --q {:?}", a.q))?;
    let qp = spec
        .parse_scalar(&a.qprime)
        .with_context(|| format!("parsing --qprime {:?}", a.qprime))?;
    let range = match a.scalars {
        ScalarsFlag::Full => AlphaRange::FullUnits,
        ScalarsFlag::PrimeSubfield => AlphaRange::PrimeSubfieldUnits,
    };
    let verdict = decide_orbit(&q, &qp, range, &spec)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&tristate_to_dto(&verdict, &spec))?
        );
    } else {
        match &verdict {
            TriState::Equivalent(w) => println!(
                "Equivalent: alpha = {}, beta = {} ({})",
                spec.format_scalar(&w.alpha),
                spec.format_scalar(&w.beta),
                w.relation
            ),
            TriState::NotEquivalent(reason) => println!("NotEquivalent: {reason}"),
            TriState::Unknown(reason) => println!("Unknown: {reason}"),
        }
    }
    Ok(if verdict.is_unknown() { 2 } else { 0 })
}

fn load_product(path: &Path, spec: &FieldSpec) -> Result<CrossedProduct> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let dto: SystemDto =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let sys = system_from_dto(&dto, spec)?;
    build_crossed_product(&sys)
        .with_context(|| format!("{} is not a valid crossed system", path.display()))
}

fn reject_or_raise(e: MorphismError, json: bool) -> Result<u8> {
    match e {
        MorphismError::NotHopfMap(_) | MorphismError::NotCoalgebraMap(_) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "accepted": false,
                        "reason": e.to_string(),
                    }))?
                );
            } else {
                println!("rejected: {e}");
            }
            Ok(1)
        }
        other => Err(other.into()),
    }
}

fn cmd_morphism_check(a: MorphismCheckArgs) -> Result<u8> {
    let spec = parse_field_flag(&a.field)?;
    let src = load_product(&a.src, &spec)?;
    let dst = load_product(&a.dst, &spec)?;
    let text =
        fs::read_to_string(&a.map).with_context(|| format!("reading {}", a.map.display()))?;
    let m: MorphismDto =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", a.map.display()))?;

    let map_between = |rows: &[Vec<String>],
                       s: &Arc<HopfAlgebraData>,
                       t: &Arc<HopfAlgebraData>,
                       key: &str|
     -> Result<LinearMapData> {
        let matrix =
            matrix_from_rows(&spec, rows).with_context(|| format!("reading matrix {key:?}"))?;
        LinearMapData::new(Arc::clone(s), Arc::clone(t), matrix)
            .with_context(|| format!("matrix {key:?} has the wrong shape"))
    };

    let sa = src.system().a();
    let sh = src.system().h();
    let da = dst.system().a();
    let dh = dst.system().h();
    let u = map_between(&m.u, sa, da, "u")?;
    let r = map_between(&m.r, sh, da, "r")?;
    let v = map_between(&m.v, sh, dh, "v")?;

    match &m.p {
        Some(p_rows) => {
            let p = map_between(p_rows, sa, dh, "p")?;
            let quad = match MorphismQuadruple::new(u, p, r, v) {
                Ok(q) => q,
                Err(e) => return reject_or_raise(e, a.json),
            };
            let outcome = quadruple_to_map(&quad, &src, &dst)?;
            if a.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "kind": "quadruple",
                        "accepted": true,
                        "report": serde_json::to_value(report_to_dto(&outcome.report))?,
                    }))?
                );
            } else {
                print!("{}", outcome.report.render());
            }
            Ok(if outcome.report.passed() { 0 } else { 1 })
        }
        None => {
            let certified = primitively_generated(sa);
            let outcome = match triple_to_map(&u, &r, &v, &src, &dst, certified) {
                Ok(o) => o,
                Err(e) => return reject_or_raise(e, a.json),
            };
            let warnings: Vec<&str> = outcome
                .warnings
                .iter()
                .map(|w| match w {
                    MorphismWarning::HypothesisUnchecked => "hypothesis-unchecked",
                })
                .collect();
            if a.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "kind": "triple",
                        "accepted": true,
                        "report": serde_json::to_value(report_to_dto(&outcome.report))?,
                        "is_isomorphism": outcome.is_isomorphism,
                        "warnings": warnings,
                    }))?
                );
            } else {
                print!("{}", outcome.report.render());
                if outcome.report.passed() {
                    println!(
                        "isomorphism: {}",
                        if outcome.is_isomorphism { "yes" } else { "no" }
                    );
                }
                if !outcome.warnings.is_empty() {
                    println!(
                        "warning: the assumption that every Hopf algebra map from the base \
                         to the Sweedler factor is trivial was not certified"
                    );
                }
            }
            Ok(if outcome.report.passed() { 0 } else { 1 })
        }
    }
}
