//! `fknlab`: analysis, inequality checks, sweeps and example generation.
//!
//! Exit codes: 0 when every check holds, 1 on usage or input errors, 2 when
//! an inequality is violated.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fknlab::bounds::{
    claim8_check, claim9_bound, corollary2_apply, lemma4_bound, lemma5_bound, lemma7_bound, theorem1_check,
    BoundReport, PaperConstants,
};
use fknlab::constructions::{claim6_example, tribes_example};
use fknlab::exact::{parse_rational, render};
use fknlab::format::{
    parse_partition, parse_rv, parse_truth_table, report_key_values, write_partition, write_rv, write_truth_table,
};
use fknlab::harness::{conjecture_probe, run_sweep, tightness_scan, SweepConfig, Target};
use fknlab::{BigRational, BooleanFunction, DiscreteRV, TwoPointBalancedRV};
use num_traits::Zero;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fknlab", version, about = "Fourier analysis on the Boolean cube and exact FKN-type inequality checks")]
struct Cli {
    /// Print numbers as 15-significant-digit decimals instead of exact fractions.
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier summary of a truth table against a partition, with the
    /// partition corollary's verdict.
    Analyze {
        table: PathBuf,
        /// Blocks of 1-based variable indices, e.g. `1,2|3,4`.
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        constants: ConstantFlags,
    },
    /// Two-point balanced decomposition of a mean-zero random variable.
    Decompose {
        rv: PathBuf,
        /// Center the variable first.
        #[arg(long)]
        center: bool,
    },
    /// Evaluate one inequality on random-variable files.
    Check {
        /// lemma4 | lemma5 | lemma7 | claim8 | claim9 | theorem1
        inequality: String,
        rvs: Vec<PathBuf>,
        /// Shift `E` for lemma7 and claim9.
        #[arg(long = "E", default_value = "0")]
        e: String,
        /// First evaluation point for claim8.
        #[arg(long, allow_hyphen_values = true)]
        x1: Option<String>,
        /// Second evaluation point for claim8.
        #[arg(long, allow_hyphen_values = true)]
        x2: Option<String>,
        #[command(flatten)]
        constants: ConstantFlags,
    },
    /// Randomized or exhaustive sweep of one target.
    Sweep(SweepArgs),
    /// Write one of the tightness constructions to files.
    Example {
        /// tribes | claim6
        name: String,
        /// Block size for tribes.
        #[arg(long)]
        m: Option<usize>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Print the tribes scan for block sizes 1..=N instead of writing files.
        #[arg(long)]
        scan: Option<usize>,
    },
    /// Experimental search for a composition g(h_1, ..., h_n) close to f.
    Probe {
        table: PathBuf,
        #[arg(long)]
        partition: String,
    },
}

#[derive(Args)]
struct ConstantFlags {
    /// Override K0; K1 and K2 are rederived unless also given.
    #[arg(long = "K0")]
    k0: Option<String>,
    #[arg(long = "K1")]
    k1: Option<String>,
    #[arg(long = "K2")]
    k2: Option<String>,
}

impl ConstantFlags {
    fn apply(&self, mut c: PaperConstants) -> Result<PaperConstants> {
        if let Some(k0) = &self.k0 {
            c = PaperConstants::from_k0(rational(k0, "K0")?);
        }
        if let Some(k1) = &self.k1 {
            c = c.with_k1(rational(k1, "K1")?);
        }
        if let Some(k2) = &self.k2 {
            c = c.with_k2(rational(k2, "K2")?);
        }
        for k in [&c.k0, &c.k1, &c.k2] {
            if *k <= BigRational::zero() {
                bail!("constants must be positive");
            }
        }
        Ok(c)
    }

    fn resolve(&self) -> Result<PaperConstants> {
        self.apply(PaperConstants::paper())
    }
}

#[derive(Args)]
struct SweepArgs {
    /// key=value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    target: Option<String>,
    /// Number of random instances.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    constants: ConstantFlags,
    /// Add the two-variable tightness pair (lemma5, lemma7).
    #[arg(long)]
    include_claim6: bool,
    /// corollary2 only: every function on M variables, every two-block partition.
    #[arg(long)]
    exhaustive_m: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Write one CSV row per instance.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn rational(text: &str, what: &str) -> Result<BigRational> {
    parse_rational(text).with_context(|| format!("invalid {what} `{text}`"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_table(path: &Path) -> Result<BooleanFunction> {
    parse_truth_table(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_rv(path: &Path) -> Result<DiscreteRV> {
    parse_rv(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn verdict(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn analyze(table: &Path, partition: &str, constants: &ConstantFlags, decimal: bool) -> Result<ExitCode> {
    let f = load_table(table)?;
    let p = parse_partition(partition, f.vars()).context("invalid --partition")?;
    let r = corollary2_apply(&f, &p, &constants.resolve()?)?;
    let show = |v: &BigRational| render(v, decimal).to_string();
    println!("m={}", f.vars());
    println!("partition={}", write_partition(&p));
    println!("mean={}", show(&r.mean));
    println!("variance={}", show(&r.variance));
    println!("cross_weight={}", show(&r.cross_weight));
    println!("epsilon={}", show(&r.epsilon));
    for (j, d) in r.block_distances.iter().enumerate() {
        println!("block_dist_{}={}", j + 1, show(d));
    }
    println!("k={}", r.k + 1);
    println!("dist={}", show(&r.dist));
    println!("dist_fourier={}", show(&r.dist_fourier));
    println!("bound={}", show(&r.bound));
    println!("holds={}", r.holds);
    Ok(verdict(r.holds && r.dist == r.dist_fourier))
}

fn decompose(path: &Path, center: bool, decimal: bool) -> Result<ExitCode> {
    let mut rv = load_rv(path)?;
    if center {
        rv = rv.center();
    }
    let parts = rv.two_point_decompose()?;
    let show = |v: &BigRational| render(v, decimal).to_string();
    println!("components={}", parts.len());
    for (i, (w, t)) in parts.iter().enumerate() {
        let atoms = t
            .atoms()
            .iter()
            .map(|(v, p)| format!("{}:{}", show(v), show(p)))
            .collect::<Vec<_>>()
            .join(" ");
        println!("component_{}: weight={} d={} p={} atoms={}", i + 1, show(w), show(t.d()), show(t.p()), atoms);
    }
    Ok(ExitCode::SUCCESS)
}

fn check(
    inequality: &str,
    rvs: &[PathBuf],
    e: &str,
    x1: Option<&str>,
    x2: Option<&str>,
    constants: &ConstantFlags,
    decimal: bool,
) -> Result<ExitCode> {
    let constants = constants.resolve()?;
    let arity = |n: usize| -> Result<Vec<DiscreteRV>> {
        if rvs.len() != n {
            bail!("{inequality} takes {n} random-variable file(s), got {}", rvs.len());
        }
        rvs.iter().map(|p| load_rv(p)).collect()
    };
    let report: BoundReport = match inequality {
        "lemma4" => {
            let v = arity(2)?;
            lemma4_bound(&v[0], &v[1], &constants)?
        }
        "lemma5" => {
            let v = arity(2)?;
            lemma5_bound(&v[0], &v[1], &constants)?
        }
        "lemma7" => {
            let v = arity(2)?;
            lemma7_bound(&v[0], &v[1], &rational(e, "--E")?, &constants)?
        }
        "claim9" => {
            let v = arity(2)?;
            claim9_bound(&v[0], &v[1], &rational(e, "--E")?)?
        }
        "claim8" => {
            let v = arity(1)?;
            let y = TwoPointBalancedRV::from_rv(&v[0])?;
            let x1 = rational(x1.context("claim8 needs --x1")?, "--x1")?;
            let x2 = rational(x2.context("claim8 needs --x2")?, "--x2")?;
            claim8_check(&x1, &x2, &y)
        }
        "theorem1" => {
            if rvs.len() < 2 {
                bail!("theorem1 takes at least 2 random-variable files, got {}", rvs.len());
            }
            let v: Vec<DiscreteRV> = rvs.iter().map(|p| load_rv(p)).collect::<Result<_>>()?;
            theorem1_check(&v, &constants)?
        }
        other => bail!("unknown inequality `{other}` (expected lemma4, lemma5, lemma7, claim8, claim9 or theorem1)"),
    };
    print!("{}", report_key_values(&report, decimal));
    Ok(verdict(report.holds))
}

fn sweep(args: &SweepArgs, decimal: bool) -> Result<ExitCode> {
    let mut cfg = match (&args.config, &args.target) {
        (Some(path), _) => SweepConfig::from_key_values(&read(path)?).with_context(|| format!("{}", path.display()))?,
        (None, Some(t)) => SweepConfig::new(t.parse::<Target>()?),
        (None, None) => bail!("sweep needs --target or --config"),
    };
    if let (Some(_), Some(t)) = (&args.config, &args.target) {
        cfg.target = t.parse::<Target>()?;
    }
    if let Some(n) = args.n {
        cfg.instances = n;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.constants = args.constants.apply(cfg.constants)?;
    cfg.include_claim6 |= args.include_claim6;
    if args.exhaustive_m.is_some() {
        cfg.exhaustive_m = args.exhaustive_m;
    }
    if args.workers.is_some() {
        cfg.workers = args.workers;
    }
    let result = run_sweep(&cfg)?;
    print!("{}", result.summary(decimal));
    if let Some(path) = &args.csv {
        fs::write(path, result.to_csv(decimal)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if !result.violations.is_empty() {
        Ok(ExitCode::from(2))
    } else if !result.errors.is_empty() {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn example(name: &str, m: Option<usize>, out: &Path, scan: Option<usize>, decimal: bool) -> Result<ExitCode> {
    match name {
        "tribes" => {
            if let Some(max_m) = scan {
                let show = |v: &BigRational| render(v, decimal).to_string();
                println!("m,variance,cross_weight,linear_distance,min_dist,scaled_epsilon,scaled_dist,in_bracket,table_checked");
                let rows = tightness_scan(max_m)?;
                for r in &rows {
                    println!(
                        "{},{},{},{},{},{},{},{},{}",
                        r.m,
                        show(&r.variance),
                        show(&r.cross_weight),
                        show(&r.linear_distance),
                        show(&r.min_dist),
                        show(&r.scaled_epsilon),
                        show(&r.scaled_dist),
                        r.in_bracket,
                        r.table_checked
                    );
                }
                return Ok(verdict(rows.iter().all(|r| r.in_bracket)));
            }
            let m = m.context("tribes needs --m")?;
            let (f, p) = tribes_example(m).with_context(|| format!("invalid --m {m}"))?;
            fs::create_dir_all(out)?;
            let header = format!("tribes example, block size {m}: f = AND(x_1..x_{m}) OR AND(x_{}..x_{})\ngenerated by: fknlab example tribes --m {m}", m + 1, 2 * m);
            write_file(out, &format!("tribes_m{m}.tt"), &write_truth_table(&f, Some(&header)))?;
            write_file(out, &format!("tribes_m{m}.partition"), &format!("# generated by: fknlab example tribes --m {m}\n{}\n", write_partition(&p)))?;
        }
        "claim6" => {
            let (x, y) = claim6_example();
            fs::create_dir_all(out)?;
            let header = "two-variable example: Var|X+Y| = 3/4 while Var|X| = 1\ngenerated by: fknlab example claim6";
            write_file(out, "claim6_X.rv", &write_rv(&x, Some(header)))?;
            write_file(out, "claim6_Y.rv", &write_rv(&y, Some(header)))?;
        }
        other => bail!("unknown example `{other}` (expected tribes or claim6)"),
    }
    Ok(ExitCode::SUCCESS)
}

fn probe(table: &Path, partition: &str, decimal: bool) -> Result<ExitCode> {
    let f = load_table(table)?;
    let p = parse_partition(partition, f.vars()).context("invalid --partition")?;
    let r = conjecture_probe(&f, &p)?;
    println!("# experimental search; the outcome proves nothing either way");
    println!("combinations={}", r.combinations);
    println!("dist={}", render(&r.dist, decimal));
    let row = |g: &BooleanFunction| g.table().iter().map(|v| if *v == 1 { '+' } else { '-' }).collect::<String>();
    println!("g={}", row(&r.g));
    for (j, h) in r.hs.iter().enumerate() {
        println!("h_{}={}", j + 1, row(h));
    }
    if r.dist.is_zero() {
        println!("exact composition found");
    } else {
        println!("no exact composition found");
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let decimal = cli.decimal;
    match cli.command {
        Command::Analyze { table, partition, constants } => analyze(&table, &partition, &constants, decimal),
        Command::Decompose { rv, center } => decompose(&rv, center, decimal),
        Command::Check { inequality, rvs, e, x1, x2, constants } => {
            check(&inequality, &rvs, &e, x1.as_deref(), x2.as_deref(), &constants, decimal)
        }
        Command::Sweep(args) => sweep(&args, decimal),
        Command::Example { name, m, out, scan } => example(&name, m, &out, scan, decimal),
        Command::Probe { table, partition } => probe(&table, &partition, decimal),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
