//! Command-line frontend: parse algebra and chain specifications, run the
//! subsystem constructions, censuses, classifications, and verifications,
//! and emit machine-readable reports.
//!
//! Exit codes: 0 on success, 1 on a domain error (a reported precondition
//! violation), 2 on a usage error. Verification verdicts live in the
//! report's `verdict` field and only affect the exit code under
//! `--strict`.

mod chain;
mod json;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use maxrank_core::abelian::{HomomorphismData, Subgroup};
use maxrank_core::brackets::{
    admissible_coefficients, check_coefficient_equation, constructive_existence_crosscheck,
    existence, phi_bracket, poisson_bracket, BracketSpec,
};
use maxrank_core::multivec::{bivector_from_spec, check_k_invariance, kappa0, verify_bracket};
use maxrank_core::rootsys::{RootSystem, TypeLabel};
use maxrank_core::subsystems::{
    apply_chain, brute_force_closed_subsets, check_torsion_statements, enumerate_subsystems,
    gamma_of_set, EnumerateOptions, GammaTable, Subsystem,
};
use num_traits::Zero;

use crate::chain::{chain_to_string, parse_chain_spec};
use crate::json::{
    cycq_to_json, element_to_json, gamma_to_json, group_to_json, multivector_to_json,
    ordering_from_data, parse_construction_data, project_gens, root_set_json, spec_to_json,
    ConstructionData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Parser)]
#[command(
    name = "maxrank",
    version,
    about = "Reductive maximal-rank subalgebras, root-lattice quotients, and invariant brackets on G/K"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed recorded in reports (all commands here are deterministic;
    /// randomized suites live in the test suite)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Make verification failures fatal (exit 1)
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads for census subcommands
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct AlgebraArg {
    /// Simple type, e.g. A3, B6, G2
    #[arg(long)]
    algebra: String,
}

#[derive(Args)]
struct ChainArg {
    /// Chain specification in the step mini-language.
    #[arg(long, default_value = "", help = "Chain specification, e.g. \"dynkin[1,n=2];levi[0]\"")]
    chain: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots of a simple type
    Roots(AlgebraArg),
    /// Apply a chain and report the subsystem
    Subsys {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        chain: ChainArg,
    },
    /// Enumerate chain-reachable subsystems
    Enumerate {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        max_steps: Option<u32>,
        #[arg(long)]
        max_n: Option<u32>,
        /// Skip the per-step simple-system re-choices (faster, incomplete)
        #[arg(long)]
        no_orbits: bool,
    },
    /// Quotient group of the root lattice by a subsystem, with root images
    Gamma {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        chain: ChainArg,
    },
    /// Existence classification and constructive crosscheck; with --data,
    /// also construct that bracket
    Classify {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        data: Option<std::path::PathBuf>,
    },
    /// Construct a bracket from a data file and verify it against the
    /// coefficient equation and the Schouten oracle
    Verify {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        data: std::path::PathBuf,
    },
    /// Torsion census over the subsystems of a type
    Census {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        max_steps: Option<u32>,
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Structural torsion checks over enumerated subsystems
    Prop2 {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        max_steps: Option<u32>,
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Canned search: the rank-6 odd orthogonal algebra modulo six
    /// commuting rank-1 subalgebras
    ExampleSo13,
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe instead of panicking
    // mid-report
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn conventions(seed: u64) -> Value {
    json!({
        "base_order": "height, then lexicographic on simple-root coordinates",
        "bivector_sum": "one term per positive representative",
        "kappa0": cycq_to_json(&kappa0()),
        "ordering": "lexicographic on the free quotient (permutation and sign tags supported)",
        "r_matrix": "sum over positive roots of E_a ^ E_{-a}, with (E_a, E_{-a}) = 1 for the Killing form",
        "seed": seed,
    })
}

fn report_shell(
    cli: &Cli,
    verb: &str,
    algebra: Option<&str>,
    chain: Option<&str>,
) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert(
        "tool".into(),
        json!({"name": "maxrank", "version": env!("CARGO_PKG_VERSION")}),
    );
    m.insert("conventions".into(), conventions(cli.seed));
    let mut cmd = Map::new();
    cmd.insert("verb".into(), Value::String(verb.into()));
    if let Some(a) = algebra {
        cmd.insert("algebra".into(), Value::String(a.into()));
    }
    cmd.insert("chain".into(), chain.map(|c| Value::String(c.into())).unwrap_or(Value::Null));
    m.insert("command".into(), Value::Object(cmd));
    m
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("usage error: {msg}");
    ExitCode::from(2)
}

fn build_algebra(s: &str) -> Result<Arc<RootSystem>, String> {
    let label = TypeLabel::parse(s).map_err(|e| e.to_string())?;
    RootSystem::build(label).map(Arc::new).map_err(|e| e.to_string())
}

fn build_subsystem(
    rs: &Arc<RootSystem>,
    chain_text: &str,
) -> Result<(Subsystem, GammaTable), String> {
    let steps = parse_chain_spec(chain_text).map_err(|e| e.to_string())?;
    let sub = apply_chain(rs.clone(), &steps).map_err(|e| e.to_string())?;
    let gamma = sub.gamma();
    Ok((sub, gamma))
}

fn enumerate_opts(
    rs: &RootSystem,
    max_steps: Option<u32>,
    max_n: Option<u32>,
    orbits: bool,
) -> EnumerateOptions {
    let mut opts = EnumerateOptions::new(rs);
    if let Some(s) = max_steps {
        opts.max_steps = s;
    }
    if let Some(n) = max_n {
        opts.max_n = n;
    }
    opts.orbits = orbits;
    opts
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Roots(a) => cmd_roots(cli, &a.algebra),
        Command::Subsys { algebra, chain } => cmd_subsys(cli, &algebra.algebra, &chain.chain),
        Command::Enumerate { algebra, max_steps, max_n, no_orbits } => {
            cmd_enumerate(cli, &algebra.algebra, *max_steps, *max_n, !*no_orbits)
        }
        Command::Gamma { algebra, chain } => cmd_gamma(cli, &algebra.algebra, &chain.chain),
        Command::Classify { algebra, chain, data } => {
            cmd_classify(cli, &algebra.algebra, &chain.chain, data.as_deref())
        }
        Command::Verify { algebra, chain, data } => {
            cmd_verify(cli, &algebra.algebra, &chain.chain, data)
        }
        Command::Census { algebra, max_steps, max_n } => {
            cmd_census(cli, &algebra.algebra, *max_steps, *max_n)
        }
        Command::Prop2 { algebra, chain, max_steps, max_n } => {
            cmd_prop2(cli, &algebra.algebra, &chain.chain, *max_steps, *max_n)
        }
        Command::ExampleSo13 => cmd_example_so13(cli),
    }
}

fn cmd_roots(cli: &Cli, algebra: &str) -> Result<ExitCode, String> {
    let rs = build_algebra(algebra)?;
    match cli.format {
        Format::Tsv => {
            for i in 0..rs.num_roots() {
                let row: Vec<String> = rs.root(i).coords.iter().map(|c| c.to_string()).collect();
                println!("{}", row.join("\t"));
            }
        }
        Format::Pretty => {
            println!("{}: {} roots ({} positive)", rs.label(), rs.num_roots(), rs.num_positive());
            for i in 0..rs.num_positive() {
                println!("  +{:?}", rs.root(i).coords);
            }
        }
        Format::Json => {
            let mut m = report_shell(cli, "roots", Some(algebra), None);
            m.insert("count".into(), json!(rs.num_roots()));
            m.insert("positive_count".into(), json!(rs.num_positive()));
            m.insert(
                "roots".into(),
                json!((0..rs.num_roots()).map(|i| rs.root(i).coords.clone()).collect::<Vec<_>>()),
            );
            emit(&Value::Object(m));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_subsys(cli: &Cli, algebra: &str, chain_text: &str) -> Result<ExitCode, String> {
    if cli.format == Format::Tsv {
        return Ok(usage_error("tsv output is supported for roots and census only"));
    }
    let rs = build_algebra(algebra)?;
    let (sub, gamma) = build_subsystem(&rs, chain_text)?;
    if cli.format == Format::Pretty {
        println!(
            "{} subsystem with {} roots; gamma: free rank {}, factors {:?}",
            rs.label(),
            sub.roots().len(),
            gamma.group.free_rank(),
            gamma.group.invariant_factors()
        );
        return Ok(ExitCode::SUCCESS);
    }
    let mut m = report_shell(cli, "subsys", Some(algebra), Some(chain_text));
    for (k, v) in json::subsystem_to_json(&sub, chain_text) {
        m.insert(k, v);
    }
    m.insert("gamma".into(), group_to_json(&gamma.group));
    emit(&Value::Object(m));
    Ok(ExitCode::SUCCESS)
}

fn cmd_gamma(cli: &Cli, algebra: &str, chain_text: &str) -> Result<ExitCode, String> {
    if cli.format == Format::Tsv {
        return Ok(usage_error("tsv output is supported for roots and census only"));
    }
    let rs = build_algebra(algebra)?;
    let (sub, gamma) = build_subsystem(&rs, chain_text)?;
    if cli.format == Format::Pretty {
        println!(
            "gamma: free rank {}, invariant factors {:?}",
            gamma.group.free_rank(),
            gamma.group.invariant_factors()
        );
        for r in sub.complement() {
            println!("  image of {:?}: {:?}", rs.root(r).coords, gamma.images[r]);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut m = report_shell(cli, "gamma", Some(algebra), Some(chain_text));
    for (k, v) in json::subsystem_to_json(&sub, chain_text) {
        m.insert(k, v);
    }
    if let Value::Object(extra) = gamma_to_json(&sub, &gamma) {
        for (k, v) in extra {
            m.insert(k, v);
        }
    }
    emit(&Value::Object(m));
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    cli: &Cli,
    algebra: &str,
    max_steps: Option<u32>,
    max_n: Option<u32>,
    orbits: bool,
) -> Result<ExitCode, String> {
    if cli.format == Format::Tsv {
        return Ok(usage_error("tsv output is supported for roots and census only"));
    }
    let rs = build_algebra(algebra)?;
    let opts = enumerate_opts(&rs, max_steps, max_n, orbits);
    let en = enumerate_subsystems(&rs, &opts);
    let records: Vec<Value> = en
        .records
        .values()
        .map(|rec| {
            let gamma = gamma_of_set(&rs, &rec.roots);
            json!({
                "roots": root_set_json(&rs, &rec.roots),
                "chain": chain_to_string(&rec.witness),
                "min_dynkin_steps": rec.min_dynkin,
                "steps": rec.steps,
                "gamma": group_to_json(&gamma.group),
            })
        })
        .collect();
    if cli.format == Format::Pretty {
        println!(
            "{}: {} subsystems within max_steps={} max_n={} (truncated: {})",
            rs.label(),
            records.len(),
            en.max_steps,
            en.max_n,
            en.truncated
        );
        return Ok(ExitCode::SUCCESS);
    }
    let mut m = report_shell(cli, "enumerate", Some(algebra), None);
    m.insert(
        "budget".into(),
        json!({"max_steps": en.max_steps, "max_n": en.max_n, "orbits": orbits}),
    );
    m.insert("truncated".into(), json!(en.truncated));
    m.insert("subsystems".into(), Value::Array(records));
    emit(&Value::Object(m));
    Ok(ExitCode::SUCCESS)
}

fn spec_from_data(
    sub: &Subsystem,
    gamma: &GammaTable,
    data: &ConstructionData,
) -> Result<BracketSpec, String> {
    let rs = sub.root_system();
    match data {
        ConstructionData::Phi { psi_gens, chi, ordering } => {
            let gens = project_gens(&gamma.group, rs.rank(), psi_gens)?;
            let psi = Subgroup::new(&gamma.group, gens);
            let chi = HomomorphismData::chi(chi.clone());
            let dim = psi.quotient_group().free_rank();
            let ordering = ordering_from_data(ordering.clone(), dim);
            phi_bracket(sub, gamma, &psi, &chi, &ordering).map_err(|e| e.to_string())
        }
        ConstructionData::Poisson { psi_gens, lambda } => {
            let gens = project_gens(&gamma.group, rs.rank(), psi_gens)?;
            let psi = Subgroup::new(&gamma.group, gens);
            let lambda = HomomorphismData::lambda(lambda.clone());
            poisson_bracket(sub, gamma, &psi, &lambda).map_err(|e| e.to_string())
        }
        ConstructionData::Explicit { coeffs, kappa2 } => {
            let mut map = std::collections::BTreeMap::new();
            for (root, c) in coeffs {
                let idx = rs
                    .root_index(root)
                    .ok_or_else(|| format!("{root:?} is not a root of {}", rs.label()))?;
                if sub.contains(idx) {
                    return Err(format!("{root:?} lies in the subsystem"));
                }
                let class = gamma.images[idx].clone();
                let neg_class = gamma.group.neg(&class);
                if let Some(old) = map.insert(class.clone(), c.clone()) {
                    if &old != c {
                        return Err(format!(
                            "conflicting coefficients for the class of {root:?}"
                        ));
                    }
                }
                if neg_class != class {
                    map.entry(neg_class).or_insert_with(|| -c.clone());
                }
            }
            BracketSpec::explicit(sub, gamma, map, kappa2.clone()).map_err(|e| e.to_string())
        }
    }
}

fn cmd_classify(
    cli: &Cli,
    algebra: &str,
    chain_text: &str,
    data: Option<&std::path::Path>,
) -> Result<ExitCode, String> {
    if cli.format == Format::Tsv {
        return Ok(usage_error("tsv output is supported for roots and census only"));
    }
    let rs = build_algebra(algebra)?;
    let (sub, gamma) = build_subsystem(&rs, chain_text)?;
    let verdicts = existence(&gamma);
    let crosscheck = constructive_existence_crosscheck(&sub, &gamma).map_err(|e| e.to_string())?;
    let mut m = report_shell(cli, "classify", Some(algebra), Some(chain_text));
    m.insert("gamma".into(), group_to_json(&gamma.group));
    m.insert(
        "existence".into(),
        json!({
            "phi_bracket": verdicts.phi_exists,
            "nonzero_poisson": verdicts.nonzero_poisson_exists,
            "admissible": verdicts.admissible_exists,
        }),
    );
    m.insert(
        "crosscheck".into(),
        json!({
            "matches_existence": crosscheck.matches_existence,
            "phi_witness": crosscheck
                .phi_witness
                .as_ref()
                .map(|s| spec_to_json(s, &sub, &gamma, chain_text)),
            "poisson_witness": crosscheck
                .poisson_witness
                .as_ref()
                .map(|s| spec_to_json(s, &sub, &gamma, chain_text)),
        }),
    );
    if let Some(spec) = &crosscheck.phi_witness {
        let nu = admissible_coefficients(spec, &sub, &gamma).map_err(|e| e.to_string())?;
        m.insert(
            "admissible_bracket".into(),
            json!(nu
                .iter()
                .map(|(r, c)| json!({"root": rs.root(*r).coords, "coefficient": cycq_to_json(c)}))
                .collect::<Vec<_>>()),
        );
    }
    if let Some(path) = data {
        let raw =
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let parsed = parse_construction_data(&raw)?;
        let spec = spec_from_data(&sub, &gamma, &parsed)?;
        m.insert("constructed".into(), spec_to_json(&spec, &sub, &gamma, chain_text));
    }
    if cli.format == Format::Pretty {
        println!(
            "existence: phi {}, nonzero poisson {}, admissible {} (crosscheck agrees: {})",
            verdicts.phi_exists,
            verdicts.nonzero_poisson_exists,
            verdicts.admissible_exists,
            crosscheck.matches_existence
        );
        return Ok(ExitCode::SUCCESS);
    }
    emit(&Value::Object(m));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    cli: &Cli,
    algebra: &str,
    chain_text: &str,
    data: &std::path::Path,
) -> Result<ExitCode, String> {
    if cli.format == Format::Tsv {
        return Ok(usage_error("tsv output is supported for roots and census only"));
    }
    let rs = build_algebra(algebra)?;
    let (sub, gamma) = build_subsystem(&rs, chain_text)?;
    let raw = std::fs::read_to_string(data).map_err(|e| format!("{}: {e}", data.display()))?;
    let parsed = parse_construction_data(&raw)?;
    let spec = spec_from_data(&sub, &gamma, &parsed)?;
    let eq = check_coefficient_equation(&spec, &gamma.group, &spec.kappa2);
    let oracle = verify_bracket(&spec, &sub, &gamma).map_err(|e| e.to_string())?;
    let s = bivector_from_spec(&spec, &sub, &gamma).map_err(|e| e.to_string())?;
    let invariance = check_k_invariance(&s, &sub);
    let ok = eq.holds && oracle.ok && invariance.invariant;
    if cli.format == Format::Pretty {
        println!(
            "verdict: {} (equation: {}, residual zero: {}, invariant: {})",
            if ok { "pass" } else { "fail" },
            eq.holds,
            oracle.ok,
            invariance.invariant
        );
    } else {
        let mut m = report_shell(cli, "verify", Some(algebra), Some(chain_text));
        m.insert("spec".into(), spec_to_json(&spec, &sub, &gamma, chain_text));
        m.insert(
            "coefficient_equation".into(),
            json!({
                "holds": eq.holds,
                "violations": eq
                    .violations
                    .iter()
                    .map(|(x, y)| json!([element_to_json(x), element_to_json(y)]))
                    .collect::<Vec<_>>(),
            }),
        );
        m.insert(
            "oracle".into(),
            json!({
                "residual_zero": oracle.ok,
                "kappa0": cycq_to_json(&oracle.kappa0),
                "residual": multivector_to_json(&oracle.residual, &rs),
            }),
        );
        m.insert("invariant".into(), json!(invariance.invariant));
        m.insert(
            "verdict".into(),
            Value::String(if ok { "pass".into() } else { "fail".into() }),
        );
        emit(&Value::Object(m));
    }
    if cli.strict && !ok {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_census(
    cli: &Cli,
    algebra: &str,
    max_steps: Option<u32>,
    max_n: Option<u32>,
) -> Result<ExitCode, String> {
    let rs = build_algebra(algebra)?;
    // collect the subsystem sets (brute force when small, chains otherwise)
    let (sets, source, truncated): (Vec<BTreeSet<usize>>, &str, bool) = if rs.num_roots() <= 18 {
        (brute_force_closed_subsets(&rs).map_err(|e| e.to_string())?, "brute-force", false)
    } else {
        let opts = enumerate_opts(&rs, max_steps, max_n, true);
        let en = enumerate_subsystems(&rs, &opts);
        let sets = en.sets().map(|k| k.iter().copied().collect()).collect();
        (sets, "chains", en.truncated)
    };
    // tally torsion types, optionally across worker threads
    let jobs = cli.jobs.max(1);
    let tally = |chunk: &[BTreeSet<usize>]| {
        let mut local: std::collections::BTreeMap<Vec<u64>, usize> = Default::default();
        for set in chunk {
            let gamma = gamma_of_set(&rs, set);
            let key: Vec<u64> = gamma
                .group
                .invariant_factors()
                .iter()
                .map(|d| d.to_string().parse().unwrap_or(0))
                .collect();
            *local.entry(key).or_insert(0) += 1;
        }
        local
    };
    let mut counts: std::collections::BTreeMap<Vec<u64>, usize> = Default::default();
    if jobs == 1 || sets.len() < 2 * jobs {
        counts = tally(&sets);
    } else {
        let chunk_size = sets.len().div_ceil(jobs);
        let partials: Vec<std::collections::BTreeMap<Vec<u64>, usize>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = sets
                    .chunks(chunk_size)
                    .map(|chunk| scope.spawn(|| tally(chunk)))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("census worker")).collect()
            });
        for partial in partials {
            for (k, v) in partial {
                *counts.entry(k).or_insert(0) += v;
            }
        }
    }
    match cli.format {
        Format::Tsv => {
            for (factors, count) in &counts {
                let label: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
                println!("{}\t{}", label.join(","), count);
            }
        }
        Format::Pretty => {
            println!("{}: {} subsystems by torsion type ({source})", rs.label(), sets.len());
            for (factors, count) in &counts {
                println!("  {factors:?}: {count}");
            }
        }
        Format::Json => {
            let mut m = report_shell(cli, "census", Some(algebra), None);
            m.insert("source".into(), Value::String(source.into()));
            m.insert("truncated".into(), json!(truncated));
            m.insert("total".into(), json!(sets.len()));
            m.insert(
                "counts".into(),
                json!(counts
                    .iter()
                    .map(|(f, c)| json!({"invariant_factors": f, "count": c}))
                    .collect::<Vec<_>>()),
            );
            emit(&Value::Object(m));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_prop2(
    cli: &Cli,
    algebra: &str,
    chain_text: &str,
    max_steps: Option<u32>,
    max_n: Option<u32>,
) -> Result<ExitCode, String> {
    if cli.format == Format::Tsv {
        return Ok(usage_error("tsv output is supported for roots and census only"));
    }
    let rs = build_algebra(algebra)?;
    let opts = enumerate_opts(&rs, max_steps, max_n, true);
    let en = enumerate_subsystems(&rs, &opts);
    let report_one = |sub: &Subsystem, chain: &str| -> Result<Value, String> {
        let rep = check_torsion_statements(sub, Some(&en)).map_err(|e| e.to_string())?;
        Ok(json!({
            "chain": chain,
            "roots": root_set_json(&rs, sub.roots()),
            "torsion_free": rep.torsion_free,
            "levi_iff_torsion_free": rep.levi_iff_free,
            "torsion_cyclic": rep.cyclic,
            "cyclic_iff_at_most_one_dynkin": rep.cyclic_iff_one_dynkin,
            "nonzero_torsion_elements_are_root_images": rep.nonzero_torsion_covered,
            "characters_kill_a_root_image": rep.characters_kill_root_image,
        }))
    };
    let mut m = report_shell(cli, "prop2", Some(algebra), Some(chain_text));
    m.insert(
        "budget".into(),
        json!({"max_steps": en.max_steps, "max_n": en.max_n, "note":
            "chain-witness verdicts are relative to this enumeration budget"}),
    );
    if chain_text.is_empty() {
        let mut reports = Vec::new();
        for rec in en.records.values() {
            let sub = apply_chain(rs.clone(), &rec.witness).map_err(|e| e.to_string())?;
            reports.push(report_one(&sub, &chain_to_string(&rec.witness))?);
        }
        m.insert("subsystems".into(), Value::Array(reports));
    } else {
        let (sub, _) = build_subsystem(&rs, chain_text)?;
        m.insert("subsystem".into(), report_one(&sub, chain_text)?);
    }
    if cli.format == Format::Pretty {
        println!("checked {} subsystem(s) against the torsion statements", en.records.len());
        return Ok(ExitCode::SUCCESS);
    }
    emit(&Value::Object(m));
    Ok(ExitCode::SUCCESS)
}

fn cmd_example_so13(cli: &Cli) -> Result<ExitCode, String> {
    if cli.format == Format::Tsv {
        return Ok(usage_error("tsv output is supported for roots and census only"));
    }
    let rs = build_algebra("B6")?;
    let opts = EnumerateOptions { max_steps: 3, max_n: 2, orbits: false, node_budget: 500_000 };
    let en = enumerate_subsystems(&rs, &opts);
    let mut found = None;
    for (key, rec) in &en.records {
        if key.len() != 12 {
            continue;
        }
        let positives: Vec<usize> =
            key.iter().copied().filter(|&r| r < rs.num_positive()).collect();
        if positives.len() != 6 {
            continue;
        }
        let orthogonal = positives
            .iter()
            .all(|&a| positives.iter().all(|&b| a == b || rs.inner_product(a, b).is_zero()));
        if orthogonal {
            found = Some(rec);
            break;
        }
    }
    let Some(rec) = found else {
        return Err("no subsystem of six pairwise-orthogonal root pairs found".into());
    };
    let sub = apply_chain(rs.clone(), &rec.witness).map_err(|e| e.to_string())?;
    let gamma = sub.gamma();
    let verdicts = existence(&gamma);
    let chain_str = chain_to_string(&rec.witness);
    if cli.format == Format::Pretty {
        println!(
            "found six commuting rank-1 subalgebras via `{chain_str}`; gamma: free rank {}, \
             factors {:?}; phi {}, nonzero poisson {}, admissible {}",
            gamma.group.free_rank(),
            gamma.group.invariant_factors(),
            verdicts.phi_exists,
            verdicts.nonzero_poisson_exists,
            verdicts.admissible_exists
        );
        return Ok(ExitCode::SUCCESS);
    }
    let mut m = report_shell(cli, "example-so13", Some("B6"), Some(&chain_str));
    for (k, v) in json::subsystem_to_json(&sub, &chain_str) {
        m.insert(k, v);
    }
    if let Value::Object(extra) = gamma_to_json(&sub, &gamma) {
        for (k, v) in extra {
            m.insert(k, v);
        }
    }
    m.insert(
        "existence".into(),
        json!({
            "phi_bracket": verdicts.phi_exists,
            "nonzero_poisson": verdicts.nonzero_poisson_exists,
            "admissible": verdicts.admissible_exists,
        }),
    );
    emit(&Value::Object(m));
    Ok(ExitCode::SUCCESS)
}
