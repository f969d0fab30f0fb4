use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cclab::ar::ClusterObject;
use cclab::character::cc;
use cclab::corpus::finite_type_indecomposables;
use cclab::grass::{euler_char_grassmannian, grassmannian_profile};
use cclab::multiplication::{verify_unified, verify_xx1, verify_xx2, VerificationReport};
use cclab::mutation::{enumerate_cluster_variables, Seed};
use cclab::primes::SamplePrimes;
use cclab::rep::direct_sum_all;
use cclab::{DimVector, Error, Quiver, RawModule, RawQuiver, Representation};

#[derive(Parser)]
#[command(name = "cclab", version, about = "Cluster characters of acyclic quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Quiver file: {"vertices": n, "arrows": [[s, t], ...]}, 1-indexed.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,

    /// Sample primes, comma separated (default: chosen automatically).
    #[arg(long, global = true, env = "CCLAB_PRIMES")]
    primes: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster character of a direct sum of modules and shifted projectives.
    Cc {
        #[arg(long = "module")]
        modules: Vec<PathBuf>,
        /// Multiplicities of P_i[1], comma separated.
        #[arg(long)]
        shifted: Option<String>,
    },
    /// Euler characteristics of quiver Grassmannians.
    Grass {
        #[arg(long = "module")]
        modules: Vec<PathBuf>,
        /// A single dimension vector e, comma separated; all e if omitted.
        #[arg(long)]
        dim: Option<String>,
    },
    /// Check a multiplication formula. Objects are module files, or
    /// `shifted:a,b,...` for a sum of shifted projectives.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        first: String,
        second: String,
    },
    /// Apply a sequence of mutations (1-based directions) to the initial seed.
    Mutate { directions: Vec<usize> },
    /// Cluster variables reachable within `--depth` mutations.
    ListVariables {
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Compare mutation variables with characters of rigid indecomposables.
    Compare {
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Xx1,
    Xx2,
    Unified,
}

enum Failure {
    Validation(String),
    Counting(String),
    Verdict,
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPolynomialCount(_)
            | Error::StratumSum { .. }
            | Error::NotLaurent(_)
            | Error::Calibration(_) => Failure::Counting(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn load_quiver(path: &Option<PathBuf>) -> Result<Quiver, Failure> {
    let path = path.as_ref().ok_or_else(|| Failure::Validation("--quiver is required".into()))?;
    let raw: RawQuiver = read_json(path)?;
    Ok(Quiver::validate(&raw)?)
}

fn load_module(q: &Quiver, path: &Path) -> Result<Representation, Failure> {
    let raw: RawModule = read_json(path)?;
    Representation::from_raw(q, &raw)
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn parse_csv(q: &Quiver, s: &str) -> Result<Vec<usize>, Failure> {
    let v = s
        .split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| Failure::Validation(format!("bad entry `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != q.n() {
        return Err(Error::LengthMismatch { expected: q.n(), got: v.len() }.into());
    }
    Ok(v)
}

fn load_object(q: &Quiver, spec: &str) -> Result<ClusterObject, Failure> {
    match spec.strip_prefix("shifted:") {
        Some(csv) => Ok(ClusterObject::shifted_projective(q, parse_csv(q, csv)?)?),
        None => Ok(ClusterObject::module(load_module(q, Path::new(spec))?)),
    }
}

fn sum_of_modules(q: &Quiver, paths: &[PathBuf]) -> Result<Representation, Failure> {
    let parts = paths.iter().map(|p| load_module(q, p)).collect::<Result<Vec<_>, _>>()?;
    Ok(direct_sum_all(q, &parts))
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Outcome {
    let primes = match &cli.primes {
        Some(s) => SamplePrimes::parse_csv(s)?,
        None => SamplePrimes::Auto,
    };
    let q = load_quiver(&cli.quiver)?;
    let structured = cli.format == Format::Structured;
    match cli.command {
        Command::Cc { modules, shifted } => {
            let module = sum_of_modules(&q, &modules)?;
            let shifted = match shifted {
                Some(s) => parse_csv(&q, &s)?,
                None => vec![0; q.n()],
            };
            let value = cc(&q, &primes, &ClusterObject { module, shifted })?;
            if structured {
                print_json(&value);
            } else {
                println!("{}", value.value);
            }
            Ok(())
        }
        Command::Grass { modules, dim } => {
            let m = sum_of_modules(&q, &modules)?;
            match dim {
                Some(e) => {
                    let e = DimVector(parse_csv(&q, &e)?);
                    let chi = euler_char_grassmannian(&q, &primes, &m, &e)?;
                    if structured {
                        print_json(&serde_json::json!({ "dim": e, "chi": chi.to_string() }));
                    } else {
                        println!("{chi}");
                    }
                }
                None => {
                    let profile = grassmannian_profile(&q, &primes, &m)?;
                    if structured {
                        let entries: Vec<_> = profile
                            .iter()
                            .map(|(e, chi)| serde_json::json!({ "dim": e, "chi": chi.to_string() }))
                            .collect();
                        print_json(&entries);
                    } else {
                        for (e, chi) in &profile {
                            println!("{e}: {chi}");
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Verify { kind, first, second } => {
            let (a, b) = (load_object(&q, &first)?, load_object(&q, &second)?);
            let report = match kind {
                VerifyKind::Xx1 => verify_xx1(&q, &primes, module_part(&a)?, module_part(&b)?)?,
                VerifyKind::Xx2 => verify_xx2(&q, &primes, module_part(&a)?, module_part(&b)?)?,
                VerifyKind::Unified => verify_unified(&q, &primes, &a, &b)?,
            };
            emit_report(&report, structured);
            if report.verdict {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Mutate { directions } => {
            let mut seed = Seed::initial(&q);
            for k in directions {
                if k == 0 || k > q.n() {
                    return Err(Error::InvalidDirection { k, n: q.n() }.into());
                }
                seed = seed.mutate(k - 1)?;
            }
            let cluster: Vec<String> = seed.cluster.iter().map(|v| v.to_string()).collect();
            if structured {
                print_json(&serde_json::json!({ "exchange_matrix": seed.b, "cluster": cluster }));
            } else {
                for (i, v) in cluster.iter().enumerate() {
                    println!("x{}' = {v}", i + 1);
                }
                for row in &seed.b {
                    let row: Vec<String> = row.iter().map(i64::to_string).collect();
                    println!("[{}]", row.join(" "));
                }
            }
            Ok(())
        }
        Command::ListVariables { depth } => {
            let closure = enumerate_cluster_variables(&q, depth)?;
            let vars: Vec<String> = closure.variables.iter().map(|v| v.to_string()).collect();
            if structured {
                print_json(&serde_json::json!({
                    "depth": depth,
                    "stabilized": closure.stabilized(),
                    "counts_by_depth": closure.counts,
                    "variables": vars,
                }));
            } else {
                vars.iter().for_each(|v| println!("{v}"));
                println!("{} variables", vars.len());
            }
            Ok(())
        }
        Command::Compare { depth } => compare(&q, &primes, depth, structured),
    }
}

fn module_part(o: &ClusterObject) -> Result<&Representation, Failure> {
    if o.shifted.iter().any(|&s| s > 0) {
        return Err(Failure::Validation("this check takes modules, not shifted projectives".into()));
    }
    Ok(&o.module)
}

fn emit_report(report: &VerificationReport, structured: bool) {
    if structured {
        print_json(report);
    } else {
        println!("{report}");
    }
}

fn compare(q: &Quiver, primes: &SamplePrimes, depth: usize, structured: bool) -> Outcome {
    if !q.is_finite_type() {
        return Err(Failure::Refused("quiver is not of finite type; closure is infinite".into()));
    }
    let closure = enumerate_cluster_variables(q, depth)?;
    if !closure.stabilized() {
        return Err(Failure::Refused(format!(
            "mutation closure still growing at depth {depth}: counts {:?}",
            closure.counts
        )));
    }
    let oracle: BTreeSet<String> = closure.variables.iter().map(|v| v.to_string()).collect();
    let mut characters = BTreeSet::new();
    for m in finite_type_indecomposables(q)? {
        characters.insert(cc(q, primes, &ClusterObject::module(m))?.value.to_string());
    }
    for i in 0..q.n() {
        let mut s = vec![0; q.n()];
        s[i] = 1;
        characters.insert(cc(q, primes, &ClusterObject::shifted_projective(q, s)?)?.value.to_string());
    }
    let only_oracle: Vec<&String> = oracle.difference(&characters).collect();
    let only_cc: Vec<&String> = characters.difference(&oracle).collect();
    if structured {
        print_json(&serde_json::json!({
            "oracle_variables": oracle.len(),
            "characters": characters.len(),
            "only_in_oracle": only_oracle,
            "only_in_characters": only_cc,
        }));
    } else {
        println!("{} oracle variables, {} characters", oracle.len(), characters.len());
        only_oracle.iter().for_each(|v| println!("- {v}"));
        only_cc.iter().for_each(|v| println!("+ {v}"));
    }
    if only_oracle.is_empty() && only_cc.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Counting(msg)) => {
            eprintln!("counting failure: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verdict) => {
            eprintln!("identity does not hold");
            ExitCode::from(3)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(4)
        }
    }
}
