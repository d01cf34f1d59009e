//! Command line for the cohomology engine: compute Hochschild and simplicial
//! cohomology tables and run the verification suites on JSON-specified
//! groups, posets and amalgams.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hochsim::algebra::{
    amalgam_algebra, group_ring, poset_algebra, AmalgamCategory, BasedAlgebra, FiniteGroup,
};
use hochsim::coeff::{CohomologyGroup, Ring};
use hochsim::engine::{
    hochschild_cohomology, ring_label, simplicial_cohomology, verify_amalgam_theorem,
    verify_einfty_identities, verify_splitting, Report,
};
use hochsim::hochschild::Variant;
use hochsim::input::{parse_any, AlgebraInput};
use hochsim::simplicial::{bar, cyclic_bar, cyclic_bar_unit, nerve, SimplicialSlice};

#[derive(Parser)]
#[command(name = "hochsim", version, about = "Hochschild and simplicial cohomology engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of a Hochschild complex variant
    Hochschild(HochschildArgs),
    /// Cohomology of a simplicial model (bar, cyclic bar, nerve)
    Simplicial(SimplicialArgs),
    /// Compare H(Full) with H(AP) ⊕ H(NP) for a group ring
    Split(SplitArgs),
    /// Compare the E-relative complex of an amalgam with nerve ⊕ NP parts
    Amalgam(AmalgamArgs),
    /// Randomized exact checks of the cochain-level identities
    Check(CheckArgs),
}

#[derive(Args)]
struct AlgebraSource {
    /// JSON file holding a group, poset or amalgam spec
    #[arg(long, conflicts_with = "group")]
    input: Option<PathBuf>,
    /// Inline group spec, e.g. cyclic:4
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args)]
struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct HochschildArgs {
    #[command(flatten)]
    source: AlgebraSource,
    /// Coefficient ring: Z, Q or Z/m
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Complex variant: full, ap, np or relative
    #[arg(long, default_value = "full")]
    variant: String,
    /// Number of reported degrees (0 .. max-degree-1)
    #[arg(long = "max-degree", default_value_t = 4)]
    max_degree: usize,
    /// Explicit matrix-cell budget, overriding the degree guard
    #[arg(long)]
    budget: Option<usize>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct SimplicialArgs {
    /// Simplicial model: bar, cyclic, cyclic-unit or nerve
    #[arg(long)]
    model: String,
    #[command(flatten)]
    source: AlgebraSource,
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long = "max-degree", default_value_t = 4)]
    max_degree: usize,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct SplitArgs {
    #[command(flatten)]
    source: AlgebraSource,
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long = "max-degree", default_value_t = 3)]
    max_degree: usize,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct AmalgamArgs {
    #[command(flatten)]
    source: AlgebraSource,
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long = "max-degree", default_value_t = 3)]
    max_degree: usize,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: AlgebraSource,
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Cap on the random cochain degrees
    #[arg(long = "max-degree", default_value_t = 3)]
    max_degree: usize,
    #[command(flatten)]
    out: OutputOpts,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Hochschild(a) => cmd_hochschild(a),
        Command::Simplicial(a) => cmd_simplicial(a),
        Command::Split(a) => cmd_split(a),
        Command::Amalgam(a) => cmd_amalgam(a),
        Command::Check(a) => cmd_check(a),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn parse_ring(s: &str) -> Result<Ring> {
    match s {
        "Z" => Ok(Ring::Integers),
        "Q" => Ok(Ring::Rationals),
        _ => {
            let m = s
                .strip_prefix("Z/")
                .ok_or_else(|| anyhow!("ring must be Z, Q or Z/m, got '{s}'"))?;
            let m: u64 = m.parse().with_context(|| format!("bad modulus '{m}'"))?;
            Ok(Ring::modular(m)?)
        }
    }
}

fn load_input(source: &AlgebraSource) -> Result<AlgebraInput> {
    if let Some(spec) = &source.group {
        let n = spec
            .strip_prefix("cyclic:")
            .ok_or_else(|| anyhow!("inline group must be cyclic:N, got '{spec}'"))?;
        let n: usize = n.parse().with_context(|| format!("bad cyclic order '{n}'"))?;
        if n == 0 || n > 256 {
            bail!("cyclic order must be in 1..=256");
        }
        return Ok(AlgebraInput::Group(FiniteGroup::cyclic(n)));
    }
    let path = source
        .input
        .as_ref()
        .ok_or_else(|| anyhow!("provide either --group cyclic:N or --input FILE"))?;
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(parse_any(&text)?)
}

fn build_algebra(input: &AlgebraInput, ring: Ring) -> BasedAlgebra {
    match input {
        AlgebraInput::Group(g) => group_ring(g, ring),
        AlgebraInput::Poset(p) => poset_algebra(p, ring),
        AlgebraInput::Amalgam(c) => amalgam_algebra(c, ring),
    }
}

fn emit(out: &OutputOpts, text: String) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render_table(
    out: &OutputOpts,
    label: &str,
    ring: Ring,
    groups: &[CohomologyGroup],
) -> Result<()> {
    let text = match out.format {
        Format::Text => {
            let mut s = format!("{label} over {}\n", ring_label(ring));
            s.push_str("degree  cohomology\n");
            for (n, g) in groups.iter().enumerate() {
                s.push_str(&format!("{n:<7} {g}\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("degree,free_rank,torsion\n");
            for (n, g) in groups.iter().enumerate() {
                let torsion: Vec<String> = g.torsion.iter().map(u64::to_string).collect();
                s.push_str(&format!("{n},{},{}\n", g.free_rank, torsion.join(";")));
            }
            s
        }
        Format::Json => {
            let value = serde_json::json!({
                "check": label,
                "ring": ring_label(ring),
                "groups": groups,
            });
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
    };
    emit(out, text)
}

fn render_report(out: &OutputOpts, report: &Report) -> Result<()> {
    let text = match out.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(report)?),
        Format::Csv => {
            let mut s = String::from("degree,lhs,rhs,match\n");
            for row in &report.per_degree {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    row.degree, row.lhs, row.rhs, row.is_match
                ));
            }
            for id in &report.identities {
                s.push_str(&format!("{},{} trials,{} failures,{}\n", id.name, id.trials, id.failures, id.pass));
            }
            s
        }
        Format::Text => {
            let mut s = format!("check: {}\n", report.check);
            for row in &report.per_degree {
                s.push_str(&format!(
                    "degree {}: {} | {}  {}\n",
                    row.degree,
                    row.lhs,
                    row.rhs,
                    if row.is_match { "match" } else { "MISMATCH" }
                ));
            }
            for id in &report.identities {
                s.push_str(&format!(
                    "{}: {}/{} trials failed  {}\n",
                    id.name,
                    id.failures,
                    id.trials,
                    if id.pass { "ok" } else { "FAIL" }
                ));
            }
            s.push_str(if report.pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    emit(out, text)
}

fn cmd_hochschild(a: HochschildArgs) -> Result<bool> {
    let ring = parse_ring(&a.ring)?;
    let variant = Variant::parse(&a.variant)?;
    let input = load_input(&a.source)?;
    let alg = build_algebra(&input, ring);
    let groups = hochschild_cohomology(&alg, variant, a.max_degree, a.budget)?;
    render_table(&a.out, &format!("hochschild {}", a.variant), ring, &groups)?;
    Ok(true)
}

fn build_slice(model: &str, input: &AlgebraInput, max_degree: usize) -> Result<SimplicialSlice> {
    let need_group = || -> Result<&FiniteGroup> {
        match input {
            AlgebraInput::Group(g) => Ok(g),
            _ => bail!("model '{model}' needs a group input"),
        }
    };
    match model {
        "bar" => Ok(bar(need_group()?, max_degree)),
        "cyclic" => Ok(cyclic_bar(need_group()?, max_degree)),
        "cyclic-unit" => Ok(cyclic_bar_unit(need_group()?, max_degree)),
        "nerve" => {
            let cat = match input {
                AlgebraInput::Amalgam(c) => c.clone(),
                AlgebraInput::Poset(p) => AmalgamCategory::from_poset(p.clone()),
                AlgebraInput::Group(g) => AmalgamCategory::single_object(g.clone()),
            };
            Ok(nerve(&cat, max_degree))
        }
        other => bail!("unknown model '{other}' (bar, cyclic, cyclic-unit, nerve)"),
    }
}

fn cmd_simplicial(a: SimplicialArgs) -> Result<bool> {
    let ring = parse_ring(&a.ring)?;
    let input = load_input(&a.source)?;
    let slice = build_slice(&a.model, &input, a.max_degree)?;
    let groups = simplicial_cohomology(&slice, ring, a.max_degree)?;
    render_table(&a.out, &format!("simplicial {}", a.model), ring, &groups)?;
    Ok(true)
}

fn cmd_split(a: SplitArgs) -> Result<bool> {
    let ring = parse_ring(&a.ring)?;
    let input = load_input(&a.source)?;
    let AlgebraInput::Group(g) = input else {
        bail!("split expects a group input");
    };
    let report = verify_splitting(&g, ring, a.max_degree)?;
    render_report(&a.out, &report)?;
    Ok(report.pass)
}

fn cmd_amalgam(a: AmalgamArgs) -> Result<bool> {
    let ring = parse_ring(&a.ring)?;
    let input = load_input(&a.source)?;
    let cat = match input {
        AlgebraInput::Amalgam(c) => c,
        AlgebraInput::Poset(p) => AmalgamCategory::from_poset(p),
        AlgebraInput::Group(g) => AmalgamCategory::single_object(g),
    };
    let report = verify_amalgam_theorem(&cat, ring, a.max_degree)?;
    render_report(&a.out, &report)?;
    Ok(report.pass)
}

fn cmd_check(a: CheckArgs) -> Result<bool> {
    let ring = parse_ring(&a.ring)?;
    let input = load_input(&a.source)?;
    let alg = build_algebra(&input, ring);
    let report = verify_einfty_identities(&alg, a.trials, a.seed, a.max_degree)?;
    render_report(&a.out, &report)?;
    Ok(report.pass)
}
