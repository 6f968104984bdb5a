use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use recollement::analyzer::{make_context, triangular_verdicts};
use recollement::fixtures::build_over;
use recollement::hochschild::{center_dim_oracle, hh_compare, hh_dims_capped};
use recollement::report::{analyze as run_analysis, to_canonical_json, AnalysisOptions};
use recollement::resolution::{projective_dimension, resolve as resolve_module};
use recollement::{Field, FieldSpec, ModuleRep, QuiverPresentation};

use crate::error::{io, CliError};
use crate::input::{load, load_triangular, part_loader};
use crate::summary;
use crate::{AnalyzeArgs, HochschildArgs, ResolveArgs, TriangularArgs};

/// Binds `$f` to the concrete field for `$spec` and evaluates `$body`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            recollement::FieldSpec::Prime(p) => {
                let $f = recollement::PrimeField::new(p)?;
                $body
            }
            recollement::FieldSpec::Rational => {
                let $f = recollement::Rationals::new();
                $body
            }
        }
    };
}
pub(crate) use with_field;

pub fn write_json(path: &Path, json: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(json.as_bytes()).map_err(io(path))
    } else {
        std::fs::write(path, json).map_err(io(path))
    }
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let input = load(&args.source.file, args.source.field)?;
    let opts = AnalysisOptions {
        cutoff: args.cutoff,
        maxlen: args.source.maxlen,
        hh_degree: (!args.no_hh).then_some(args.hh_degree),
        timings: args.timings,
    };
    let qp = &input.presentation;
    let report = with_field!(qp.field, |f| run_analysis(&input.name, &input.text, qp, &args.idempotent, &f, &opts)?);
    let to_stdout = args.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        print!("{}", summary::analysis(&report));
    }
    if let Some(path) = &args.json {
        write_json(path, &to_canonical_json(&report)?)?;
    }
    Ok(())
}

enum ModuleKind {
    Simple(usize),
    Projective(usize),
    Injective(usize),
    Regular,
}

fn parse_module(spec: &str, qp: &QuiverPresentation) -> Result<ModuleKind, CliError> {
    if spec == "regular" {
        return Ok(ModuleKind::Regular);
    }
    let (kind, v) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("module '{spec}' is not KIND:VERTEX or regular")))?;
    let v = qp
        .vertex_index(v)
        .ok_or_else(|| CliError::Usage(format!("no vertex '{v}' (vertices: {})", qp.vertices.join(" "))))?;
    match kind {
        "simple" => Ok(ModuleKind::Simple(v)),
        "projective" => Ok(ModuleKind::Projective(v)),
        "injective" => Ok(ModuleKind::Injective(v)),
        _ => Err(CliError::Usage(format!("unknown module kind '{kind}'"))),
    }
}

pub fn resolve(args: &ResolveArgs) -> Result<(), CliError> {
    let input = load(&args.source.file, args.source.field)?;
    let qp = &input.presentation;
    let kind = parse_module(&args.module, qp)?;
    with_field!(qp.field, |f| print_resolution(qp, &f, args, &kind))
}

fn print_resolution<F: Field>(qp: &QuiverPresentation, f: &F, args: &ResolveArgs, kind: &ModuleKind) -> Result<(), CliError> {
    let lambda = build_over(qp, f, args.source.maxlen)?;
    let m = match *kind {
        ModuleKind::Simple(v) => ModuleRep::simple(&lambda, v),
        ModuleKind::Projective(v) => ModuleRep::projective(&lambda, v),
        ModuleKind::Injective(v) => ModuleRep::injective(&lambda, v),
        ModuleKind::Regular => ModuleRep::regular(&lambda),
    };
    let pd = projective_dimension(&m, args.degree);
    let r = resolve_module(&m, args.degree + 1);
    println!("{} over {}, dim {}", args.module, qp.field, m.dim());
    println!("stage  {}", qp.vertices.iter().map(|v| format!("{v:>4}")).collect::<String>());
    for j in 0..r.stages().len().min(args.degree + 1) {
        let mult = r.multiplicities(j);
        println!("{j:>5}  {}", mult.iter().map(|c| format!("{c:>4}")).collect::<String>());
    }
    match r.length() {
        Some(n) => println!("terminates at stage {n}"),
        None => println!("does not terminate within {} stages", args.degree),
    }
    println!("pd = {pd}");
    if let Some(p) = pd.periodic {
        println!("infinite: syzygies {} and {} are isomorphic, so the resolution is periodic", p.from, p.to);
    }
    println!("minimal: {}", if r.is_minimal() { "yes (no differential entry is a unit)" } else { "NO" });
    Ok(())
}

pub fn hochschild(args: &HochschildArgs) -> Result<(), CliError> {
    let input = load(&args.file, None)?;
    let fields = if args.fields.is_empty() { vec![input.presentation.field] } else { args.fields.clone() };
    for (i, spec) in fields.into_iter().enumerate() {
        if i > 0 {
            println!();
        }
        let qp = input.presentation.with_field(spec);
        with_field!(spec, |f| hochschild_over(&qp, &f, args)?);
    }
    Ok(())
}

fn hochschild_over<F: Field>(qp: &QuiverPresentation, f: &F, args: &HochschildArgs) -> Result<(), CliError> {
    let lambda = build_over(qp, f, args.maxlen)?;
    match &args.idempotent {
        None => {
            let dims = hh_dims_capped(&lambda, args.max_degree, args.dim_cap)?;
            println!("HH^j over {} (dim Z = {} by direct computation)", qp.field, center_dim_oracle(&lambda));
            println!("{:>4}  {:>6}", "j", "HH^j");
            for (j, d) in dims.iter().enumerate() {
                println!("{j:>4}  {d:>6}");
            }
        }
        Some(name) => {
            let ctx = make_context(&lambda, qp.idempotent(name)?)?;
            let corner: Arc<_> = ctx.corner().clone();
            let r = hh_compare(&ctx, args.max_degree, args.cutoff)?;
            println!(
                "HH^j over {}: Λ (dim Z = {}) against aΛa (dim Z = {})",
                qp.field,
                center_dim_oracle(&lambda),
                center_dim_oracle(&corner)
            );
            print!("{}", summary::hh_table(&r));
        }
    }
    Ok(())
}

pub fn triangular(args: &TriangularArgs) -> Result<(), CliError> {
    let (spec, dir) = load_triangular(&args.spec)?;
    let field = args.field.unwrap_or(FieldSpec::Prime(101));
    let report = with_field!(field, |f| {
        let data = spec.build(&f, part_loader(dir.clone()))?;
        triangular_verdicts(&data, args.cutoff)?
    });
    let to_stdout = args.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        print!("{}", summary::triangular(&report, field));
    }
    if let Some(path) = &args.json {
        write_json(path, &to_canonical_json(&report)?)?;
    }
    Ok(())
}
