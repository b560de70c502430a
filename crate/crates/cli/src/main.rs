use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use equicount::cache::{Cache, CacheEntry};
use equicount::formats::{character_table_csv, cohomology_csv, cohomology_json, parse_polynomials};
use equicount::parallel::{run_parallel, RunOptions, THREADS_ENV};
use equicount::verify::{Tier, Verifier, VerifyConfig};
use equicount_core::partition::partitions;
use equicount_core::polynomial::moduli_dimension;
use equicount_core::{
    builtin_table1, cohomology_table, interpolate, CharacterTable, CountError, CountPlan, CountPolynomial,
    CountRecord, CycleType, Engine, GeneralityCondition, DEFAULT_BUDGET,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "equicount", version, about = "Frobenius-twisted point counts of plane configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineChoice {
    /// Frame normalization when the class has four fixed points.
    Auto,
    Twisted,
    Frame,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Builtin,
    Cache,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Number of points.
    #[arg(long, default_value_t = 7)]
    m: u32,
    /// Generality condition: glp or gp8.
    #[arg(long, default_value = "glp")]
    condition: String,
    #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
    engine: EngineChoice,
    #[arg(long, env = THREADS_ENV)]
    threads: Option<usize>,
    /// Refuse runs whose estimated iteration count exceeds this.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, default_value = "results")]
    cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long)]
    no_cache: bool,
    /// Suppress progress lines on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count tuples fixed by F∘σ for one class at one prime.
    Count {
        /// Cycle type, dotted (2.2.1.1.1) with kxn shorthand (1x7).
        #[arg(long = "class")]
        class: String,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Interpolate the count polynomial of one class from several primes.
    Interpolate {
        #[arg(long = "class")]
        class: String,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13,17,19")]
        primes: Vec<u64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the character table of S_m as CSV.
    Characters {
        #[arg(long, default_value_t = 7)]
        m: u32,
    },
    /// Decompose each cohomology degree into irreducibles of S_m.
    Decompose {
        #[arg(long, default_value_t = 7)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Source::Builtin)]
        source: Source,
        /// Polynomial file for --source file.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value = "glp")]
        condition: String,
        #[arg(long, default_value = "results")]
        cache_dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "fast")]
        tier: String,
        #[arg(long, env = THREADS_ENV)]
        threads: Option<usize>,
        #[arg(long)]
        quiet: bool,
    },
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn bad_input(e: impl std::fmt::Display) -> Failure {
    fail(EXIT_INPUT, e.to_string())
}

fn count_failure(e: CountError) -> Failure {
    match e {
        CountError::Infeasible { estimate, budget } => fail(
            EXIT_INFEASIBLE,
            format!("infeasible: feasibility estimate {estimate} exceeds budget {budget}"),
        ),
        CountError::Indivisible { .. } => fail(EXIT_VERIFY, e.to_string()),
        other => bad_input(other),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("equicount: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Count { class, p, run } => {
            let (cond, class) = parse_target(&run, &class)?;
            let record = count_one(&run, &class, p, cond)?;
            println!("m,cycle_type,p,condition,engine,raw_fixed_count,quotient_count");
            println!(
                "{},{},{},{},{},{},{}",
                record.m,
                record.cycle_type.dotted(),
                record.p,
                record.condition,
                record.engine,
                record.raw_fixed_count,
                record.quotient_count
            );
            Ok(())
        }
        Command::Interpolate { class, primes, run } => {
            let (cond, class) = parse_target(&run, &class)?;
            let mut samples = Vec::new();
            for &p in &primes {
                let r = count_one(&run, &class, p, cond)?;
                samples.push((p, r.quotient_count as i128));
            }
            let line: Vec<String> = samples.iter().map(|(p, v)| format!("{p}={v}")).collect();
            println!("samples: {}", line.join(" "));
            let d = moduli_dimension(run.m);
            let poly = interpolate(&samples, d)
                .map_err(|e| fail(EXIT_VERIFY, format!("interpolation failed, counts are suspect: {e}")))?;
            println!("polynomial: {poly}");
            let coeffs: Vec<String> = poly.high_first(d).iter().map(i128::to_string).collect();
            println!("coefficients: {}", coeffs.join(","));
            if run.m == 7 && cond == GeneralityCondition::glp(7).expect("m = 7") {
                if builtin_table1()[&class] == poly {
                    println!("reference: match");
                } else {
                    println!("reference: mismatch ({})", builtin_table1()[&class]);
                    return Err(fail(EXIT_VERIFY, "interpolated polynomial differs from the builtin table"));
                }
            }
            Ok(())
        }
        Command::Characters { m } => {
            let t = CharacterTable::new(m).map_err(bad_input)?;
            print!("{}", character_table_csv(&t));
            Ok(())
        }
        Command::Decompose {
            m,
            source,
            file,
            condition,
            cache_dir,
            format,
        } => {
            let polys = match source {
                Source::Builtin if m == 7 => builtin_table1(),
                Source::Builtin => return Err(bad_input("builtin polynomials exist only for m = 7")),
                Source::File => {
                    let path = file.ok_or_else(|| bad_input("--source file needs --file"))?;
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
                    let (file_m, polys) = parse_polynomials(&text).map_err(bad_input)?;
                    if file_m != m {
                        return Err(bad_input(format!("file is for m = {file_m}, not {m}")));
                    }
                    polys
                }
                Source::Cache => polynomials_from_cache(&Cache::new(cache_dir), m, &condition)?,
            };
            let table = cohomology_table(&polys, m).map_err(|e| fail(EXIT_VERIFY, format!("decomposition failed: {e}")))?;
            match format {
                Format::Csv => print!("{}", cohomology_csv(&table)),
                Format::Json => print!("{}", cohomology_json(&table)),
            }
            Ok(())
        }
        Command::Verify { tier, threads, quiet } => {
            let tier: Tier = tier.parse().map_err(bad_input)?;
            let cfg = VerifyConfig {
                tier,
                threads: threads.unwrap_or_else(equicount::parallel::default_threads).max(2),
                progress: !quiet,
                ..VerifyConfig::default()
            };
            let outcomes = Verifier::new(cfg).run_all();
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(fail(EXIT_VERIFY, format!("{failed} criteria failed")));
            }
            Ok(())
        }
    }
}

fn parse_target(run: &RunArgs, class: &str) -> Result<(GeneralityCondition, CycleType), Failure> {
    let cond = GeneralityCondition::from_name(&run.condition, run.m).map_err(bad_input)?;
    let class = CycleType::parse_for(class, run.m).map_err(bad_input)?;
    Ok((cond, class))
}

fn count_one(run: &RunArgs, class: &CycleType, p: u64, cond: GeneralityCondition) -> Result<CountRecord, Failure> {
    let cache = Cache::new(&run.cache_dir);
    if !run.no_cache {
        if let Some(hit) = cache.lookup(run.m, class, p, cond.name()).map_err(bad_input)? {
            if !run.quiet {
                eprintln!("cached: {} at p = {p}", class.dotted());
            }
            return hit.to_record().map_err(bad_input);
        }
    }
    let engine = match run.engine {
        EngineChoice::Twisted => Engine::Twisted,
        EngineChoice::Frame => Engine::Frame,
        EngineChoice::Auto if class.multiplicity(1) >= 4 => Engine::Frame,
        EngineChoice::Auto => Engine::Twisted,
    };
    let plan = CountPlan::new(class, p, cond, engine, run.budget).map_err(count_failure)?;
    let opts = RunOptions {
        threads: run.threads.unwrap_or_else(equicount::parallel::default_threads),
        progress: !run.quiet,
    };
    if !run.quiet {
        eprintln!(
            "counting {} at p = {p} with the {engine} engine, estimate {} iterations, {} workers",
            class.dotted(),
            plan.estimate(),
            opts.threads
        );
    }
    let out = run_parallel(&plan, opts).map_err(count_failure)?;
    if !run.quiet {
        eprintln!("done: {} iterations in {:.2}s", out.tally.iterations, out.elapsed.as_secs_f64());
    }
    if !run.no_cache {
        cache
            .store(&CacheEntry::from_record(&out.record, out.elapsed.as_secs_f64()))
            .map_err(|e| fail(EXIT_VERIFY, e.to_string()))?;
    }
    Ok(out.record)
}

fn polynomials_from_cache(cache: &Cache, m: u32, condition: &str) -> Result<BTreeMap<CycleType, CountPolynomial>, Failure> {
    let mut samples: BTreeMap<CycleType, Vec<(u64, i128)>> = BTreeMap::new();
    for r in cache.records(m, condition).map_err(bad_input)? {
        samples.entry(r.cycle_type).or_default().push((r.p, r.quotient_count as i128));
    }
    let d = moduli_dimension(m);
    let mut out = BTreeMap::new();
    for class in partitions(m) {
        let s = samples
            .get(&class)
            .ok_or_else(|| bad_input(format!("cache has no counts for class {}", class.dotted())))?;
        let poly = interpolate(s, d).map_err(|e| fail(EXIT_VERIFY, format!("class {}: {e}", class.dotted())))?;
        out.insert(class, poly);
    }
    Ok(out)
}
