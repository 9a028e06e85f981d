//! `jurylab`: closed-form jury reliabilities, Monte Carlo ordering studies,
//! claim verification and comparison-table reproduction, with deterministic
//! seeding and CSV/JSON output.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use jurylab_core::boundary::boundary_scan;
use jurylab_core::sim::{
    ado_improvement_study, compare_orderings, estimate_reliability, exhaustive_order_search,
    JuryOrdering, NatureSelect, OrderingRule, SearchMode, SimConfig,
};
use jurylab_core::trio::{
    classify_region, diversity_reliability, optimize_strategic, reliability_sequential,
    reliability_simultaneous, RegionTag, TrioOrder,
};
use jurylab_core::verify::{check_infos, run_all, run_check, CheckConfig, CheckReport};
use jurylab_core::{Ability, Belief, Error as ModelError, NatureState};
use output::{csv_field, join_abilities, write_output, Envelope, Format};

#[derive(Parser)]
#[command(
    name = "jurylab",
    version,
    about = "Sequential-jury reliability toolkit: exact trio formulas, ordering studies, claim checks"
)]
struct Cli {
    /// Worker threads (default: JURYLAB_THREADS, else all cores). Results
    /// never depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Master seed; all randomness derives from it.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// fast keeps runs in seconds; paper uses the million-count study sizes.
    #[arg(long, global = true, value_enum, default_value_t = Profile::Fast)]
    profile: Profile,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Profile {
    Fast,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    /// Honest sequential majority voting (closed form).
    Seq,
    /// Simultaneous (secret-ballot) honest voting.
    Sim,
    /// Jointly optimised thresholds (strategic benchmark).
    Str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderChoice {
    /// Evaluate the abilities in the order given.
    Given,
    /// Re-order to (median, best, worst) first.
    Optimal,
    /// Evaluate all six orders.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    #[value(name = "ADO", alias = "ado")]
    Ado,
    #[value(name = "SO", alias = "so")]
    So,
    #[value(name = "AO", alias = "ao")]
    Ao,
    #[value(name = "given")]
    Given,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NatureArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "symmetric")]
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairArg {
    /// Ascending vs descending ability; R = share of disagreements won by
    /// the descending order.
    #[value(name = "AO:SO", alias = "ao-so")]
    AoSo,
    /// Ascending-descending vs descending; R = share won by ADO.
    #[value(name = "ADO:SO", alias = "ado-so")]
    AdoSo,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form reliability of a three-member jury.
    Reliability {
        /// Exactly three abilities, comma-separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        abilities: Vec<f64>,
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[arg(long, value_enum, default_value_t = OrderChoice::Given)]
        order: OrderChoice,
        /// Prior probability of the first state.
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
    },
    /// Monte Carlo reliability of one voting order.
    Simulate {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        abilities: Vec<f64>,
        #[arg(long, value_enum, default_value_t = OrderingArg::Given)]
        ordering: OrderingArg,
        /// Trials (default 1e5; 1e6 under --profile paper).
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, value_enum, default_value_t = NatureArg::A)]
        nature: NatureArg,
        #[arg(long, default_value_t = 0.5)]
        theta0: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Paired ordering comparison over random juries (one row per size).
    Compare {
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Random juries per size (default 1e5; 1e6 under --profile paper).
        #[arg(long)]
        juries: Option<u64>,
        #[arg(long, value_enum)]
        pair: PairArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the claim-check catalog (exit code 3 on any violation).
    Theorems {
        /// A check id, or "all".
        #[arg(long, default_value = "all")]
        which: String,
        /// Grid step override for grid-based checks.
        #[arg(long)]
        grid: Option<f64>,
        /// Target accepted quasi-random points for sampled checks.
        #[arg(long)]
        points: Option<usize>,
        /// List the registered checks and exit.
        #[arg(long)]
        list: bool,
    },
    /// Sequential-vs-simultaneous comparison map for a fixed middle ability.
    Boundary {
        #[arg(long, default_value_t = 0.5)]
        b: f64,
        #[arg(long, default_value_t = 0.01)]
        grid: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Reliability as a function of the heterogeneity index at fixed mean.
    Diversity {
        #[arg(long)]
        mean: f64,
        /// lo:hi:step, e.g. 1:2:0.01.
        #[arg(long)]
        mu_range: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Score every voting order of an ability set, best first.
    Search {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        abilities: Vec<f64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Keep only orders whose last two abilities descend.
        #[arg(long)]
        constrain_last_two: bool,
        /// Closed-form scoring (three abilities only).
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Improvement from re-ordering random juries into ADO.
    AdoStudy {
        #[arg(long, default_value_t = 7)]
        size: usize,
        #[arg(long, default_value_t = 500)]
        juries: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) | CliError::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Domain(msg) => write!(f, "{msg}"),
            CliError::Io(err) => write!(f, "io: {err}"),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        CliError::Domain(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("JURYLAB_THREADS").ok().and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let threads = resolve_threads(cli.threads);
    if threads > 0 {
        // Results are thread-count independent; this only sizes the pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let seed = cli.seed;
    let profile = cli.profile;
    let out = cli.out.clone();
    match cli.command {
        Command::Reliability { abilities, scheme, order, theta } => {
            cmd_reliability(&out, seed, &abilities, scheme, order, theta)
        }
        Command::Simulate { abilities, ordering, trials, nature, theta0, format } => {
            let trials = trials.unwrap_or(default_trials(profile));
            cmd_simulate(&out, seed, &abilities, ordering, trials, nature, theta0, format)
        }
        Command::Compare { sizes, juries, pair, format } => {
            let juries = juries.unwrap_or(default_trials(profile));
            cmd_compare(&out, seed, &sizes, juries, pair, format)
        }
        Command::Theorems { which, grid, points, list } => {
            cmd_theorems(&out, seed, profile, &which, grid, points, list)
        }
        Command::Boundary { b, grid, format } => cmd_boundary(&out, b, grid, format),
        Command::Diversity { mean, mu_range, format } => {
            cmd_diversity(&out, mean, &mu_range, format)
        }
        Command::Search { abilities, trials, constrain_last_two, exact, format } => {
            let trials = trials.unwrap_or(default_trials(profile));
            cmd_search(&out, seed, &abilities, trials, constrain_last_two, exact, format)
        }
        Command::AdoStudy { size, juries, trials, format } => {
            cmd_ado_study(&out, seed, size, juries, trials, format)
        }
    }
}

fn default_trials(profile: Profile) -> u64 {
    match profile {
        Profile::Fast => 100_000,
        Profile::Paper => 1_000_000,
    }
}

fn region_code(tag: RegionTag) -> &'static str {
    match tag {
        RegionTag::SecondHerds => "second-herds",
        RegionTag::ThirdHerds => "third-herds",
        RegionTag::NoHerding => "no-herding",
    }
}

fn parse_abilities(raw: &[f64]) -> Result<Vec<Ability>, CliError> {
    raw.iter().map(|&v| Ability::new(v).map_err(CliError::from)).collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_reliability(
    out: &Option<PathBuf>,
    seed: u64,
    abilities: &[f64],
    scheme: Scheme,
    order: OrderChoice,
    theta: f64,
) -> Result<ExitCode, CliError> {
    if abilities.len() != 3 {
        return Err(CliError::Usage(format!(
            "--abilities needs exactly three values for closed-form schemes, got {}",
            abilities.len()
        )));
    }
    let parsed = parse_abilities(abilities)?;
    let theta_belief = Belief::new(theta)?;
    let scheme_code = match scheme {
        Scheme::Seq => "seq",
        Scheme::Sim => "sim",
        Scheme::Str => "str",
    };
    let order_code = match order {
        OrderChoice::Given => "given",
        OrderChoice::Optimal => "optimal",
        OrderChoice::All => "all",
    };
    if theta != 0.5 && matches!(scheme, Scheme::Str | Scheme::Seq) {
        return Err(CliError::Domain(format!(
            "scheme '{scheme_code}' is defined for the neutral prior only; got theta = {theta}"
        )));
    }

    let orders: Vec<Vec<f64>> = match order {
        OrderChoice::Given => vec![abilities.to_vec()],
        OrderChoice::Optimal => {
            let mut sorted = abilities.to_vec();
            sorted.sort_by(f64::total_cmp);
            vec![vec![sorted[1], sorted[2], sorted[0]]]
        }
        OrderChoice::All => {
            let mut all = Vec::new();
            let idx = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            for perm in idx {
                all.push(perm.iter().map(|&i| abilities[i]).collect());
            }
            all
        }
    };

    let mut results = Vec::new();
    for ordering in &orders {
        let trio = TrioOrder::from_values(ordering[0], ordering[1], ordering[2])?;
        let row = match scheme {
            Scheme::Seq => json!({
                "order": ordering,
                "region": region_code(classify_region(trio)),
                "value": reliability_sequential(trio),
            }),
            Scheme::Sim => json!({
                "order": ordering,
                "value": reliability_simultaneous(theta_belief, parsed[0], parsed[1], parsed[2]),
            }),
            Scheme::Str => {
                let (value, profile) = optimize_strategic(
                    theta_belief,
                    trio.first(),
                    trio.second(),
                    trio.third(),
                )?;
                json!({
                    "order": ordering,
                    "value": value,
                    "thresholds": {
                        "first": profile.first.value(),
                        "second_after_a": profile.second_after_a.value(),
                        "second_after_b": profile.second_after_b.value(),
                        "third_after_ab": profile.third_after_ab.value(),
                        "third_after_ba": profile.third_after_ba.value(),
                    },
                })
            }
        };
        results.push(row);
    }

    let envelope = Envelope {
        schema: "reliability",
        command: format!(
            "jurylab reliability --abilities {} --scheme {scheme_code} --order {order_code} --theta {theta}",
            join_abilities(abilities)
        ),
        seed: None,
    };
    let payload = json!({
        "theta": theta,
        "scheme": scheme_code,
        "order_mode": order_code,
        "results": results,
    });
    write_output(out, &envelope.json(payload))?;
    let _ = seed;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    out: &Option<PathBuf>,
    seed: u64,
    abilities: &[f64],
    ordering: OrderingArg,
    trials: u64,
    nature: NatureArg,
    theta0: f64,
    format: Format,
) -> Result<ExitCode, CliError> {
    if abilities.len() % 2 == 0 {
        return Err(CliError::Domain(format!(
            "majority voting needs an odd jury, got size {}",
            abilities.len()
        )));
    }
    Belief::new(theta0)?;
    let jury = match ordering {
        OrderingArg::Ado => JuryOrdering::ascending_descending(abilities)?,
        OrderingArg::So => JuryOrdering::seniority(abilities)?,
        OrderingArg::Ao => JuryOrdering::anti_seniority(abilities)?,
        OrderingArg::Given => JuryOrdering::custom(abilities)?,
    };
    let (ordering_code, nature_code) = (
        match ordering {
            OrderingArg::Ado => "ADO",
            OrderingArg::So => "SO",
            OrderingArg::Ao => "AO",
            OrderingArg::Given => "given",
        },
        match nature {
            NatureArg::A => "A",
            NatureArg::B => "B",
            NatureArg::Symmetric => "symmetric",
        },
    );
    let cfg = SimConfig {
        trials,
        seed,
        threads: 0,
        theta0,
        nature: match nature {
            NatureArg::A => NatureSelect::Fixed(NatureState::A),
            NatureArg::B => NatureSelect::Fixed(NatureState::B),
            NatureArg::Symmetric => NatureSelect::Symmetric,
        },
    };
    let est = estimate_reliability(&jury, &cfg)?;

    let envelope = Envelope {
        schema: "simulate",
        command: format!(
            "jurylab simulate --abilities {} --ordering {ordering_code} --trials {trials} --nature {nature_code} --theta0 {theta0} --seed {seed}",
            join_abilities(abilities)
        ),
        seed: Some(seed),
    };
    let content = match format {
        Format::Json => envelope.json(json!({
            "abilities": abilities,
            "ordering": ordering_code,
            "voting_order": jury.abilities(),
            "trials": est.trials,
            "correct": est.correct,
            "nature": nature_code,
            "theta0": theta0,
            "estimate": est.estimate,
            "half_width_90": est.half_width_90,
        })),
        Format::Csv => envelope.csv(
            "voting_order,label,trials,correct,nature,theta0,estimate,half_width_90",
            &[format!(
                "{},{},{},{},{},{},{},{}",
                csv_field(&join_abilities(jury.abilities())),
                ordering_code,
                est.trials,
                est.correct,
                nature_code,
                theta0,
                est.estimate,
                est.half_width_90
            )],
        ),
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(
    out: &Option<PathBuf>,
    seed: u64,
    sizes: &[usize],
    juries: u64,
    pair: PairArg,
    format: Format,
) -> Result<ExitCode, CliError> {
    if sizes.is_empty() {
        return Err(CliError::Usage("--sizes needs at least one jury size".into()));
    }
    // (X, Y) oriented so R = n_BA/(n_BA + n_AB) is the share of
    // disagreements won by the ordering each published table reports on:
    // SO against AO, ADO against SO.
    let ((x_rule, y_rule), pair_code) = match pair {
        PairArg::AoSo => ((OrderingRule::AntiSeniority, OrderingRule::Seniority), "AO:SO"),
        PairArg::AdoSo => ((OrderingRule::Seniority, OrderingRule::AscendingDescending), "ADO:SO"),
    };
    let cfg = SimConfig { seed, ..SimConfig::default() };
    let mut rows_json = Vec::new();
    let mut rows_csv = Vec::new();
    for &size in sizes {
        let table = compare_orderings(size, juries, (x_rule, y_rule), &cfg)?;
        rows_json.push(json!({
            "size": size,
            "n_BB": table.n_bb,
            "n_AA": table.n_aa,
            "n_AB": table.n_ab,
            "n_BA": table.n_ba,
            "R": table.r(),
        }));
        rows_csv.push(format!(
            "{},{},{},{},{},{}",
            size,
            table.n_bb,
            table.n_aa,
            table.n_ab,
            table.n_ba,
            table.r()
        ));
    }
    let envelope = Envelope {
        schema: "compare",
        command: format!(
            "jurylab compare --sizes {} --juries {juries} --pair {pair_code} --seed {seed}",
            sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
        ),
        seed: Some(seed),
    };
    let content = match format {
        Format::Json => envelope.json(json!({
            "pair": pair_code,
            "x": x_rule.code(),
            "y": y_rule.code(),
            "juries": juries,
            "rows": rows_json,
        })),
        Format::Csv => envelope.csv("size,n_BB,n_AA,n_AB,n_BA,R", &rows_csv),
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_theorems(
    out: &Option<PathBuf>,
    seed: u64,
    profile: Profile,
    which: &str,
    grid: Option<f64>,
    points: Option<usize>,
    list: bool,
) -> Result<ExitCode, CliError> {
    if list {
        let mut text = String::new();
        for info in check_infos() {
            text.push_str(&format!("{:32} {}\n", info.id, info.claim));
        }
        write_output(out, &text)?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut cfg = match profile {
        Profile::Fast => CheckConfig::fast(),
        Profile::Paper => CheckConfig::thorough(),
    };
    cfg.seed = seed;
    cfg.grid_step = grid;
    if let Some(points) = points {
        cfg.sample_points = points;
    }
    let reports: Vec<CheckReport> = if which == "all" {
        run_all(&cfg)
    } else {
        vec![run_check(which, &cfg)?]
    };
    let passed = reports.iter().all(|r| r.passed());
    let envelope = Envelope {
        schema: "theorems",
        command: format!(
            "jurylab theorems --which {which} --seed {seed} --profile {}",
            match profile {
                Profile::Fast => "fast",
                Profile::Paper => "paper",
            }
        ),
        seed: Some(seed),
    };
    let payload = json!({
        "passed": passed,
        "reports": reports,
    });
    write_output(out, &envelope.json(payload))?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn cmd_boundary(
    out: &Option<PathBuf>,
    b: f64,
    grid: f64,
    format: Format,
) -> Result<ExitCode, CliError> {
    Ability::new(b)?;
    if !(grid > 0.0 && grid <= 0.5) {
        return Err(CliError::Usage(format!("--grid must be in (0, 0.5], got {grid}")));
    }
    let data = boundary_scan(b, grid);
    let envelope = Envelope {
        schema: "boundary",
        command: format!("jurylab boundary --b {b} --grid {grid}"),
        seed: None,
    };
    let content = match format {
        Format::Json => {
            envelope.json(serde_json::to_value(&data).expect("serialisable boundary data"))
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for p in &data.grid {
                rows.push(format!("grid,{},{},{}", p.a, p.c, p.sign));
            }
            for p in &data.crossing {
                rows.push(format!("crossing,{},{},{}", p.a, p.c, p.residual));
            }
            let sim = data.simultaneous_rect;
            let seq = data.sequential_rect;
            rows.push(format!("rect_simultaneous_lo,{},{},0", sim.a_min, sim.c_min));
            rows.push(format!("rect_simultaneous_hi,{},{},0", sim.a_max, sim.c_max));
            rows.push(format!("rect_sequential_lo,{},{},0", seq.a_min, seq.c_min));
            rows.push(format!("rect_sequential_hi,{},{},0", seq.a_max, seq.c_max));
            envelope.csv("kind,a,c,value", &rows)
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_mu_range(raw: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("--mu-range wants lo:hi:step, got {raw:?}")));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--mu-range component {s:?} is not a number")))
    };
    let (lo, hi, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if !(lo >= 1.0 && hi >= lo && step > 0.0) {
        return Err(CliError::Usage(format!(
            "--mu-range needs 1 <= lo <= hi and step > 0, got {raw:?}"
        )));
    }
    Ok((lo, hi, step))
}

fn cmd_diversity(
    out: &Option<PathBuf>,
    mean: f64,
    mu_range: &str,
    format: Format,
) -> Result<ExitCode, CliError> {
    let (lo, hi, step) = parse_mu_range(mu_range)?;
    let mut rows_csv = Vec::new();
    let mut rows_json = Vec::new();
    let mut mu = lo;
    while mu <= hi + 1e-12 {
        let q = diversity_reliability(mean, mu)?;
        rows_csv.push(format!("{mu},{q}"));
        rows_json.push(json!({ "mu": mu, "qbar": q }));
        mu += step;
    }
    let envelope = Envelope {
        schema: "diversity",
        command: format!("jurylab diversity --mean {mean} --mu-range {mu_range}"),
        seed: None,
    };
    let content = match format {
        Format::Json => envelope.json(json!({ "mean": mean, "rows": rows_json })),
        Format::Csv => envelope.csv("mu,qbar", &rows_csv),
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    out: &Option<PathBuf>,
    seed: u64,
    abilities: &[f64],
    trials: u64,
    constrain_last_two: bool,
    exact: bool,
    format: Format,
) -> Result<ExitCode, CliError> {
    let cfg = SimConfig { seed, ..SimConfig::default() };
    let mode = if exact { SearchMode::Exact } else { SearchMode::MonteCarlo };
    let ranked = exhaustive_order_search(abilities, mode, trials, constrain_last_two, &cfg)?;
    let envelope = Envelope {
        schema: "search",
        command: format!(
            "jurylab search --abilities {} --trials {trials}{}{} --seed {seed}",
            join_abilities(abilities),
            if constrain_last_two { " --constrain-last-two" } else { "" },
            if exact { " --exact" } else { "" }
        ),
        seed: Some(seed),
    };
    let content = match format {
        Format::Json => {
            let rows: Vec<_> = ranked
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "rank": i + 1,
                        "ordering": e.ordering,
                        "estimate": e.estimate,
                        "half_width_90": e.half_width_90,
                    })
                })
                .collect();
            envelope.json(json!({
                "mode": if exact { "exact" } else { "monte-carlo" },
                "orderings": ranked.len(),
                "rows": rows,
            }))
        }
        Format::Csv => {
            let rows: Vec<String> = ranked
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    format!(
                        "{},{},{},{}",
                        i + 1,
                        csv_field(&join_abilities(&e.ordering)),
                        e.estimate,
                        e.half_width_90
                    )
                })
                .collect();
            envelope.csv("rank,ordering,estimate,half_width_90", &rows)
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ado_study(
    out: &Option<PathBuf>,
    seed: u64,
    size: usize,
    juries: u64,
    trials: u64,
    format: Format,
) -> Result<ExitCode, CliError> {
    let cfg = SimConfig { seed, ..SimConfig::default() };
    let study = ado_improvement_study(size, juries, trials, &cfg)?;
    let envelope = Envelope {
        schema: "ado-study",
        command: format!(
            "jurylab ado-study --size {size} --juries {juries} --trials {trials} --seed {seed}"
        ),
        seed: Some(seed),
    };
    let content = match format {
        Format::Json => {
            let hist: Vec<_> = study
                .histogram
                .iter()
                .map(|b| json!({ "lo": b.lo, "hi": b.hi, "count": b.count }))
                .collect();
            let per_jury: Vec<_> = study
                .per_jury
                .iter()
                .map(|d| {
                    json!({
                        "abilities": d.abilities,
                        "rho_as_generated": d.rho_as_generated,
                        "rho_ado": d.rho_ado,
                        "delta": d.delta,
                    })
                })
                .collect();
            envelope.json(json!({
                "size": size,
                "juries": juries,
                "trials_per_jury": trials,
                "mean": study.mean,
                "min": study.min,
                "max": study.max,
                "histogram": hist,
                "per_jury": per_jury,
            }))
        }
        Format::Csv => {
            let rows: Vec<String> = study
                .per_jury
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    format!(
                        "{},{},{},{},{}",
                        i,
                        d.delta,
                        d.rho_ado,
                        d.rho_as_generated,
                        csv_field(&join_abilities(&d.abilities))
                    )
                })
                .collect();
            let mut content = envelope.csv("jury,delta,rho_ado,rho_as_generated,abilities", &rows);
            content.push_str(&format!(
                "# summary mean={} min={} max={}\n",
                study.mean, study.min, study.max
            ));
            content
        }
    };
    write_output(out, &content)?;
    Ok(ExitCode::SUCCESS)
}
