use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orbicheck::cache::{CacheError, SignatureCache};
use orbicheck::enumeration::{enumerate_covers, enumerate_signatures, EnumOptions};
use orbicheck::model::{harer_vcd, Signature};
use orbicheck::oracle::{brute_signatures, OracleBudget};
use orbicheck::verification::{
    check_eq5_consistency, check_gendec, count_verdicts, find_vcd_exceptions, recheck,
    verify_claim_uno, verify_prop5, Certificate, VerifyError, CSV_HEADER,
};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CACHE: u8 = 3;

const CACHE_DIR_ENV: &str = "ORBICHECK_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "orbicheck",
    about = "Exact vcd computations, orbifold signature enumeration, and inequality checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct EnumFlags {
    /// Largest subgroup order searched (default: the Hurwitz bound 84(g-1))
    #[arg(long)]
    max_order: Option<u64>,
    /// Drop the requirement that quotient periods divide the subgroup order
    #[arg(long)]
    no_divisor_constraint: bool,
    /// Largest r reported for the (1,r)/(0,r+3) exceptional family
    #[arg(long, default_value_t = 16)]
    max_exception_r: u32,
}

impl EnumFlags {
    fn to_options(&self) -> EnumOptions {
        EnumOptions {
            periods_divide_order: !self.no_divisor_constraint,
            max_order: self.max_order,
            max_exception_r: self.max_exception_r,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the vcd of the mapping class group of genus g with n marked points
    Vcd {
        #[arg(short, long)]
        genus: u32,
        #[arg(short = 'n', long, default_value_t = 0)]
        punctures: u32,
    },
    /// Enumerate admissible quotient signatures for one (genus, order) pair
    Signatures {
        /// Ambient genus (at least 2)
        #[arg(short, long)]
        genus: u32,
        /// Subgroup order
        #[arg(short = 'd', long)]
        order: u64,
        #[command(flatten)]
        enum_flags: EnumFlags,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Cache directory (defaults to $ORBICHECK_CACHE_DIR when set)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Cross-check the pruned enumeration against the brute-force oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate covers over a base signature at a fixed degree
    Covers {
        /// Base signature in the grammar `<genus>;<p1>,<p2>,...`
        #[arg(short, long)]
        base: Signature,
        /// Cover degree (at least 2)
        #[arg(short = 'd', long)]
        order: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite, emitting one certificate per instance
    Check {
        #[command(subcommand)]
        claim: CheckCommand,
    },
    /// Re-check serialized certificates; exits nonzero on any disagreement
    Recheck {
        /// Certificate file (text or json lines); `-` for stdin
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Inspect, clear, or re-validate the enumeration cache
    Cache {
        #[command(subcommand)]
        action: CacheCommand,
    },
}

#[derive(Args)]
struct CheckFlags {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for the node/edge scans (output order is canonical
    /// regardless)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Genus monotonicity on every cover edge, ambient genus 2..=genus-max
    Gendec {
        #[arg(long, default_value_t = 4)]
        genus_max: u32,
        #[command(flatten)]
        enum_flags: EnumFlags,
        #[command(flatten)]
        check_flags: CheckFlags,
    },
    /// Weyl-vcd comparison with its two exceptional families
    Prop4 {
        #[arg(long, default_value_t = 5)]
        genus_max: u32,
        #[command(flatten)]
        enum_flags: EnumFlags,
        #[command(flatten)]
        check_flags: CheckFlags,
    },
    /// vcd(WT) + lambda + 1 <= vcd(ambient) over positive-genus nodes (g >= 3)
    ClaimUno {
        #[arg(short, long)]
        genus: u32,
        #[command(flatten)]
        enum_flags: EnumFlags,
        #[command(flatten)]
        check_flags: CheckFlags,
    },
    /// vcd(WT) + tower length <= vcd(ambient) over every node (g >= 3)
    Prop5 {
        #[arg(short, long)]
        genus: u32,
        #[command(flatten)]
        enum_flags: EnumFlags,
        #[command(flatten)]
        check_flags: CheckFlags,
    },
    /// Piecewise Weyl-vcd formula against Harer's theorem on a (g, k) grid
    Eq5 {
        #[arg(long, default_value_t = 10)]
        genus_max: u32,
        /// Largest cone-point count in the grid
        #[arg(short = 'n', long = "punctures", default_value_t = 20)]
        k_max: u32,
        #[command(flatten)]
        check_flags: CheckFlags,
    },
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Report record count and paths
    Info {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Delete every record
    Clear {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Re-validate every record against fresh enumeration
    Verify {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Cache(_) => EXIT_CACHE,
            CliError::Other(_) => EXIT_FAIL,
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::GenusTooSmall(g) => CliError::Usage(format!(
                "genus {g} is below the hypothesis g >= 3 of this check"
            )),
            other => CliError::Other(other.to_string()),
        }
    }
}

fn cache_dir_or_env(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Vcd { genus, punctures } => {
            println!("{}", harer_vcd(genus, punctures));
            Ok(EXIT_PASS)
        }
        Command::Signatures {
            genus,
            order,
            enum_flags,
            format,
            cache_dir,
            oracle,
        } => cmd_signatures(
            genus,
            order,
            &enum_flags.to_options(),
            format,
            cache_dir_or_env(cache_dir),
            oracle,
        ),
        Command::Covers {
            base,
            order,
            format,
        } => cmd_covers(&base, order, format),
        Command::Check { claim } => cmd_check(claim),
        Command::Recheck { file, format } => cmd_recheck(&file, format),
        Command::Cache { action } => cmd_cache(action),
    }
}

fn cmd_signatures(
    genus: u32,
    order: u64,
    opts: &EnumOptions,
    format: Format,
    cache_dir: Option<PathBuf>,
    oracle: bool,
) -> Result<u8, CliError> {
    if genus < 2 {
        return Err(CliError::Usage(format!(
            "ambient genus must be at least 2, got {genus}"
        )));
    }
    if order < 1 {
        return Err(CliError::Usage("order must be positive".into()));
    }
    let sigs = match cache_dir {
        Some(dir) => SignatureCache::open(dir)?.get_or_compute(genus, order, opts)?,
        None => enumerate_signatures(genus, order, opts),
    };
    if oracle {
        let max_terms = 4 * genus + 4;
        let budget = OracleBudget::new(
            u32::try_from(order).unwrap_or(u32::MAX).max(12),
            max_terms,
            order,
        );
        let brute = brute_signatures(genus, order, opts.periods_divide_order, &budget);
        let budgeted: Vec<&Signature> = sigs
            .iter()
            .filter(|s| {
                s.period_count() <= max_terms
                    && s.periods().iter().all(|&p| p <= budget.max_period)
            })
            .collect();
        if budgeted.iter().map(|s| (*s).clone()).collect::<Vec<_>>() != brute {
            eprintln!("oracle mismatch: pruned enumeration disagrees with brute force");
            return Ok(EXIT_FAIL);
        }
        eprintln!("oracle agreement: {} signatures", brute.len());
    }
    match format {
        Format::Text => {
            for s in &sigs {
                println!("{s}");
            }
        }
        Format::Json => {
            let strings: Vec<String> = sigs.iter().map(|s| s.to_string()).collect();
            println!("{}", serde_json::to_string(&strings).unwrap());
        }
        Format::Csv => {
            println!("signature");
            for s in &sigs {
                println!("{s}");
            }
        }
    }
    Ok(EXIT_PASS)
}

fn cmd_covers(base: &Signature, degree: u64, format: Format) -> Result<u8, CliError> {
    if degree < 2 {
        return Err(CliError::Usage("cover degree must be at least 2".into()));
    }
    let covers = enumerate_covers(base, degree);
    match format {
        Format::Json => println!("{}", serde_json::to_string(&covers).unwrap()),
        Format::Text | Format::Csv => {
            if format == Format::Csv {
                println!("total,branch_data");
            }
            for c in &covers {
                let branch = c
                    .branch_data
                    .iter()
                    .map(|b| {
                        let qs = b
                            .upstairs_orders
                            .iter()
                            .map(|q| q.to_string())
                            .collect::<Vec<_>>()
                            .join(".");
                        format!("{}:[{}]", b.base_period, qs)
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                match format {
                    Format::Text => println!("{}\tbranch {}", c.total, branch),
                    _ => println!("{},\"{}\"", c.total, branch),
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

fn emit_certificates(certs: &[Certificate], format: Format) {
    match format {
        Format::Text => {
            for c in certs {
                println!("{}", c.to_text_line());
            }
        }
        Format::Json => {
            for c in certs {
                println!("{}", c.to_json_line());
            }
        }
        Format::Csv => {
            println!("{CSV_HEADER}");
            for c in certs {
                println!("{}", c.to_csv_line());
            }
        }
    }
}

fn finish_check(
    name: &str,
    certs: &[Certificate],
    format: Format,
    scope: &str,
    started: Instant,
) -> u8 {
    emit_certificates(certs, format);
    let (pass, fail, exception) = count_verdicts(certs);
    eprintln!(
        "{name}: {total} checked, {pass} pass, {fail} fails, {exception} exceptions, {scope}, {elapsed:.2}s",
        total = certs.len(),
        elapsed = started.elapsed().as_secs_f64(),
    );
    if fail == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn describe_scope(opts: &EnumOptions) -> String {
    match opts.max_order {
        Some(m) => format!("max_order={m}"),
        None => "max_order=84(g-1)".to_string(),
    }
}

fn cmd_check(claim: CheckCommand) -> Result<u8, CliError> {
    let started = Instant::now();
    match claim {
        CheckCommand::Gendec {
            genus_max,
            enum_flags,
            check_flags,
        } => {
            let opts = enum_flags.to_options();
            let certs = with_workers(check_flags.workers, || check_gendec(genus_max, &opts))?;
            Ok(finish_check(
                "gendec",
                &certs,
                check_flags.format,
                &describe_scope(&opts),
                started,
            ))
        }
        CheckCommand::Prop4 {
            genus_max,
            enum_flags,
            check_flags,
        } => {
            let opts = enum_flags.to_options();
            let scan = with_workers(check_flags.workers, || find_vcd_exceptions(genus_max, &opts))?;
            let code = finish_check(
                "prop4",
                &scan.certificates,
                check_flags.format,
                &describe_scope(&opts),
                started,
            );
            match check_flags.format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string(&serde_json::json!({
                            "exceptions": scan.exceptions
                        }))
                        .unwrap()
                    );
                }
                Format::Text => {
                    for p in &scan.exceptions {
                        println!(
                            "# exception upper=({},{}) lower=({},{}) witness: {} over {} d={}",
                            p.upper.0,
                            p.upper.1,
                            p.lower.0,
                            p.lower.1,
                            p.witness.total,
                            p.witness.base,
                            p.witness.degree
                        );
                    }
                }
                Format::Csv => {}
            }
            Ok(code)
        }
        CheckCommand::ClaimUno {
            genus,
            enum_flags,
            check_flags,
        } => {
            let opts = enum_flags.to_options();
            let certs = with_workers(check_flags.workers, || verify_claim_uno(genus, &opts))?;
            Ok(finish_check(
                "claim_uno",
                &certs,
                check_flags.format,
                &describe_scope(&opts),
                started,
            ))
        }
        CheckCommand::Prop5 {
            genus,
            enum_flags,
            check_flags,
        } => {
            let opts = enum_flags.to_options();
            let certs = with_workers(check_flags.workers, || verify_prop5(genus, &opts))?;
            Ok(finish_check(
                "prop5",
                &certs,
                check_flags.format,
                &describe_scope(&opts),
                started,
            ))
        }
        CheckCommand::Eq5 {
            genus_max,
            k_max,
            check_flags,
        } => {
            let certs = check_eq5_consistency(genus_max, k_max);
            Ok(finish_check(
                "eq5",
                &certs,
                check_flags.format,
                &format!("grid g<={genus_max} k<={k_max}"),
                started,
            ))
        }
    }
}

fn cmd_recheck(file: &PathBuf, format: Format) -> Result<u8, CliError> {
    let body = if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Other(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| CliError::Other(e.to_string()))?
    };
    let mut certs = Vec::new();
    for line in body.lines() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cert = match format {
            Format::Text => Certificate::from_text_line(line),
            Format::Json => {
                // tolerate the trailing exceptions summary object
                if line.starts_with("{\"exceptions\"") {
                    continue;
                }
                Certificate::from_json_line(line)
            }
            Format::Csv => {
                return Err(CliError::Usage(
                    "recheck consumes text or json certificates, not csv".into(),
                ))
            }
        };
        certs.push(cert.map_err(|e| CliError::Other(e.to_string()))?);
    }
    let report = recheck(&certs);
    if report.all_agree() {
        eprintln!("recheck: {}/{} certificates agree", report.total, report.total);
        Ok(EXIT_PASS)
    } else {
        for i in &report.disagreements {
            eprintln!("recheck: certificate {} disagrees: {}", i, certs[*i].to_text_line());
        }
        Ok(EXIT_FAIL)
    }
}

fn cmd_cache(action: CacheCommand) -> Result<u8, CliError> {
    match action {
        CacheCommand::Info { cache_dir } => {
            let cache = open_cache(cache_dir)?;
            let records = cache.records()?;
            println!("{} records", records.len());
            for r in &records {
                println!("{}", r.display());
            }
            Ok(EXIT_PASS)
        }
        CacheCommand::Clear { cache_dir } => {
            let cache = open_cache(cache_dir)?;
            println!("cleared {} records", cache.clear()?);
            Ok(EXIT_PASS)
        }
        CacheCommand::Verify { cache_dir } => {
            let cache = open_cache(cache_dir)?;
            let report = cache.verify()?;
            println!("{}/{} records valid", report.valid, report.checked);
            Ok(EXIT_PASS)
        }
    }
}

fn open_cache(flag: Option<PathBuf>) -> Result<SignatureCache, CliError> {
    let dir = cache_dir_or_env(flag).ok_or_else(|| {
        CliError::Usage(format!(
            "no cache directory: pass --cache-dir or set {CACHE_DIR_ENV}"
        ))
    })?;
    Ok(SignatureCache::open(dir)?)
}
