//! Command-line front end for the Galois kernel.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use galois_core::engine::{
    dedekind_cycle_types, dedekind_default, discriminant_is_square, galois_group, group_from_label,
    transitive_label, GaloisConfig, DEFAULT_DEDEKIND_PRIMES,
};
use galois_core::gideal::QuotientAlgebra;
use galois_core::invres::{resolvent, InvariantSpec};
use galois_core::perm::{conjugate_in, partition_matrix, subgroup_classes, PermGroup, Permutation};
use galois_core::poly::{factor_rationals, parse_multivariate, parse_univariate, UniPoly};
use galois_core::symcauchy::cauchy_modules;
use galois_core::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "galois",
    version,
    about = "Galois groups by resolvents and ideals of relations"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Working precision in bits for root enclosures.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision: u32,
    /// Largest accepted polynomial degree.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: usize,
    /// Primes for the Frobenius cycle-type oracle, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the Galois group, the ideal of relations and its triangular generators.
    Group { poly: String },
    /// Print the Cauchy modules.
    Cauchy { poly: String },
    /// Resolvent of an invariant relative to the symmetric group.
    Resolvent {
        poly: String,
        /// Invariant polynomial in x1..xn.
        #[arg(long)]
        invariant: String,
        /// Group label (4T3, D4) or generators such as "(1 2 3 4);(1 3)".
        /// Defaults to the stabilizer of the invariant.
        #[arg(long)]
        group: Option<String>,
    },
    /// Partition matrix of S_n over its subgroup classes.
    Matrices {
        #[arg(long)]
        degree: usize,
    },
    /// Oracle-only report: factorization, discriminant, Frobenius cycle types.
    Check { poly: String },
}

/// Exit status and text produced by one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Obstruction(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidPermutation(_)
            | Error::DegreeMismatch { .. }
            | Error::Arity { .. }
            | Error::UnsupportedDegree(_)
            | Error::ZeroPolynomial => Failure::Usage(e.to_string()),
            other => Failure::Obstruction(other.to_string()),
        }
    }
}

/// Parses arguments and runs; usage errors exit with 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Group { poly } => group(&cli.global, poly),
        Command::Cauchy { poly } => cauchy(&cli.global, poly),
        Command::Resolvent {
            poly,
            invariant,
            group,
        } => resolvent_cmd(&cli.global, poly, invariant, group.as_deref()),
        Command::Matrices { degree } => matrices(&cli.global, *degree),
        Command::Check { poly } => check(&cli.global, poly),
    };
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Obstruction(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("obstruction: {m}\n"),
        },
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn parse_poly(text: &str, opts: &GlobalOpts) -> Result<UniPoly, Failure> {
    let f = parse_univariate(text)?;
    if f.is_zero() {
        return Err(Failure::Usage("zero polynomial".into()));
    }
    if f.degree() > opts.max_degree {
        return Err(Failure::Usage(format!(
            "degree {} exceeds --max-degree {}",
            f.degree(),
            opts.max_degree
        )));
    }
    Ok(f)
}

fn config(opts: &GlobalOpts) -> GaloisConfig {
    GaloisConfig {
        precision: opts.precision.max(32),
        max_degree: opts.max_degree,
        primes: opts.primes.clone(),
        ..GaloisConfig::default()
    }
}

fn group(opts: &GlobalOpts, text: &str) -> Result<String, Failure> {
    let f = parse_poly(text, opts)?;
    if f.degree() < 2 {
        return Err(Failure::Usage("degree must be at least 2".into()));
    }
    let r = galois_group(&f, &config(opts))?;
    if opts.json {
        return Ok(render_json(&to_value(&r)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "polynomial: {}", r.f);
    let _ = writeln!(out, "degree: {}", r.f.degree());
    let _ = writeln!(out, "order: {}", r.order());
    match r.label {
        Some(l) => {
            let _ = writeln!(out, "label: {l}");
        }
        None if !r.group.is_transitive() => {
            let _ = writeln!(out, "label: none (intransitive)");
        }
        None => {
            let _ = writeln!(out, "label: none");
        }
    }
    let gens: Vec<String> = r
        .group
        .generators()
        .iter()
        .map(Permutation::to_string)
        .collect();
    let _ = writeln!(
        out,
        "generators: {}",
        if gens.is_empty() {
            "()".to_string()
        } else {
            gens.join(" ")
        }
    );
    let _ = writeln!(out, "chain:");
    for node in &r.chain {
        match &node.invariant_used {
            None => {
                let _ = writeln!(out, "  dim {:>3}  symmetric relations", node.algebra.dim());
            }
            Some(rel) => {
                let _ = writeln!(out, "  dim {:>3}  + {}", node.algebra.dim(), rel);
            }
        }
    }
    let _ = writeln!(out, "fundamental modules:");
    for g in r.triangular.gens() {
        let _ = writeln!(out, "  {g}");
    }
    let _ = writeln!(
        out,
        "discriminant square: {}",
        if r.oracles.discriminant_square {
            "yes"
        } else {
            "no"
        }
    );
    let _ = writeln!(
        out,
        "frobenius cycle types: {}",
        fmt_types(&r.oracles.dedekind.cycle_types())
    );
    Ok(out)
}

fn fmt_types(types: &[Vec<usize>]) -> String {
    types
        .iter()
        .map(|t| t.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .map(|t| format!("[{t}]"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cauchy(opts: &GlobalOpts, text: &str) -> Result<String, Failure> {
    let f = parse_poly(text, opts)?;
    let mods = cauchy_modules(&f)?;
    if opts.json {
        let v: Vec<String> = mods.iter().map(ToString::to_string).collect();
        return Ok(render_json(
            &json!({ "polynomial": f.to_string(), "modules": v }),
        ));
    }
    let mut out = String::new();
    for (i, m) in mods.iter().enumerate() {
        let _ = writeln!(out, "C{} = {}", i + 1, m);
    }
    Ok(out)
}

/// A labelled group is only defined up to conjugacy; explicit generators
/// must give the stabilizer of the invariant exactly.
fn check_group(n: usize, text: &str, stab: PermGroup) -> Result<PermGroup, Failure> {
    let sn = PermGroup::symmetric(n);
    if let Some(g) = group_from_label(text.trim()) {
        if g.degree() != n {
            return Err(Failure::Usage(format!(
                "{text} has degree {}, polynomial has degree {n}",
                g.degree()
            )));
        }
        if g.order() == stab.order() && conjugate_in(&g, &stab, &sn)?.is_some() {
            return Ok(stab);
        }
        return Err(Failure::Obstruction(format!(
            "the stabilizer of the invariant (order {}) is not conjugate to {text}",
            stab.order()
        )));
    }
    let gens = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Permutation::parse(n, s))
        .collect::<Result<Vec<_>, _>>()?;
    let h = PermGroup::generate(n, &gens)?;
    if h != stab {
        return Err(Failure::Obstruction(format!(
            "the stabilizer of the invariant (order {}) is not the given group (order {})",
            stab.order(),
            h.order()
        )));
    }
    Ok(h)
}

fn resolvent_cmd(
    opts: &GlobalOpts,
    text: &str,
    invariant: &str,
    group: Option<&str>,
) -> Result<String, Failure> {
    let f = parse_poly(text, opts)?;
    let n = f.degree();
    let theta = parse_multivariate(invariant, n)?;
    let sn = PermGroup::symmetric(n);
    let stab = sn.stabilizer(&theta)?;
    let h = match group {
        Some(g) => check_group(n, g, stab)?,
        None => stab,
    };
    let a = QuotientAlgebra::symmetric_ideal(&f.monic())?;
    let r = resolvent(&InvariantSpec::new(theta, h, sn), &a)?;
    if opts.json {
        return Ok(render_json(&to_value(&r)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "invariant: {}", r.theta.theta);
    let _ = writeln!(out, "stabilizer order: {}", r.cofactor_exponent);
    let _ = writeln!(out, "resolvent: {}", r.resolvent);
    let _ = writeln!(out, "separable: {}", if r.separable { "yes" } else { "no" });
    let _ = writeln!(out, "factors:");
    for (g, k) in &r.factors.factors {
        if *k == 1 {
            let _ = writeln!(out, "  {g}");
        } else {
            let _ = writeln!(out, "  ({g})^{k}");
        }
    }
    Ok(out)
}

fn matrices(opts: &GlobalOpts, n: usize) -> Result<String, Failure> {
    if !(1..=5).contains(&n) {
        return Err(Failure::Usage(
            "partition matrices are available for degrees 1 to 5".into(),
        ));
    }
    let classes = subgroup_classes(n)?;
    let reps = classes.classes().to_vec();
    let m = partition_matrix(&PermGroup::symmetric(n), &reps)?;
    let names: Vec<String> = reps
        .iter()
        .map(|g| match transitive_label(g) {
            Some(l) => format!("{} {}", g.order(), l.name),
            None => g.order().to_string(),
        })
        .collect();
    if opts.json {
        return Ok(render_json(&json!({
            "degree": n,
            "classes": names,
            "orders": m.orders,
            "rows": m.rows,
            "rows_distinct": m.rows_distinct(),
        })));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "partition matrix of S{n}: rows H, columns G, entries orbit sizes of G on S{n}/H"
    );
    let _ = writeln!(out, "classes: {}", names.join(", "));
    for (h, row) in m.rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|p| p.iter().map(usize::to_string).collect::<Vec<_>>().join("+"))
            .collect();
        let _ = writeln!(out, "{:>8} | {}", names[h], cells.join("  "));
    }
    let _ = writeln!(
        out,
        "rows distinct: {}",
        if m.rows_distinct() { "yes" } else { "no" }
    );
    Ok(out)
}

fn check(opts: &GlobalOpts, text: &str) -> Result<String, Failure> {
    let f = parse_poly(text, opts)?;
    let fac = factor_rationals(&f)?;
    let report = match &opts.primes {
        Some(p) => dedekind_cycle_types(&f, p),
        None => dedekind_default(&f, DEFAULT_DEDEKIND_PRIMES),
    };
    let disc = f.discriminant();
    let square = discriminant_is_square(&f);
    if opts.json {
        let factors: Vec<Value> = fac
            .factors
            .iter()
            .map(|(g, k)| json!({ "factor": g.to_string(), "multiplicity": k }))
            .collect();
        return Ok(render_json(&json!({
            "polynomial": f.to_string(),
            "factors": factors,
            "discriminant": galois_core::poly::Rational::to_string(&disc),
            "discriminant_square": square,
            "dedekind": to_value(&report),
            "cycle_types": report.cycle_types(),
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "polynomial: {f}");
    let parts: Vec<String> = fac
        .factors
        .iter()
        .map(|(g, k)| {
            if *k == 1 {
                format!("({g})")
            } else {
                format!("({g})^{k}")
            }
        })
        .collect();
    let _ = writeln!(out, "factorization: {} {}", fac.unit, parts.join(" "));
    let _ = writeln!(out, "discriminant: {disc}");
    let _ = writeln!(
        out,
        "discriminant square: {}",
        if square { "yes" } else { "no" }
    );
    for (p, d) in &report.observed {
        let _ = writeln!(out, "  mod {p:>3}: {}", fmt_types(std::slice::from_ref(d)));
    }
    if !report.skipped.is_empty() {
        let s: Vec<String> = report.skipped.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "skipped primes: {}", s.join(" "));
    }
    let _ = writeln!(
        out,
        "frobenius cycle types: {}",
        fmt_types(&report.cycle_types())
    );
    Ok(out)
}
