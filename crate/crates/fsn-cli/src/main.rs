//! Command-line front door: loads JSON inputs, runs the exact
//! computations, and prints deterministic reports.
//!
//! Exit codes: 0 success or decided verdict, 1 domain failure (valid input,
//! failed computation or validation), 2 input failure (unreadable or
//! malformed files, depth above the global cap), 3 undetermined verdict
//! under `--strict`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fsn_core::counterexample::{gap_demo, WeightFn};
use fsn_core::diagonal::{verify_carry_bound, Enumeration};
use fsn_core::exactq::Rational;
use fsn_core::fincat::{Element, PresentedCategory};
use fsn_core::homology::{
    homology_basis, l1_simplicial, ChainData, HomologyClass, SimplicialComplex,
};
use fsn_core::locus::{carries, universal_locus, CarriesVerdict, LocusInput, LocusStatus};
use fsn_core::seminorm::{
    effective_depth_cap, eval_generated, EvalError, GeneratingFamily, SeminormHandle,
    TruncatedValue, Value, SEMINORM_MAX_DEPTH_VAR,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fsn",
    version,
    about = "Exact workbench for functorial semi-norms on presented categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Truncation depth for morphism and representation enumeration.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Largest index scanned in counterexample reports.
    #[arg(long, global = true, default_value_t = 64)]
    m_max: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with status 3 when the verdict is undetermined at this depth.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for deterministic sample generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a category file for structural defects.
    Validate {
        /// Category JSON file.
        category: PathBuf,
    },
    /// Evaluate the generated semi-norm of an element.
    Eval {
        #[arg(long)]
        category: PathBuf,
        /// Generating family JSON file (elements with weights).
        #[arg(long)]
        family: PathBuf,
        /// Element JSON file ({"object": ..., "vector": [...]}).
        #[arg(long)]
        element: PathBuf,
    },
    /// Compute universal vanishing loci with eigen certificates.
    Locus {
        #[arg(long)]
        category: PathBuf,
        /// Depth for the quotient stabilization probe.
        #[arg(long, default_value_t = 64)]
        quotient_depth: usize,
    },
    /// Decide whether one generated semi-norm carries another.
    Carry {
        #[arg(long)]
        category: PathBuf,
        /// Family file of the semi-norm expected to carry.
        #[arg(long)]
        sigma: PathBuf,
        /// Family file of the semi-norm expected to be carried.
        #[arg(long)]
        tau: PathBuf,
    },
    /// Diagonalize a family list and verify the carrying bound on samples.
    Diagonal {
        #[arg(long)]
        category: PathBuf,
        /// Enumeration JSON file ({"elements": [...]}).
        #[arg(long)]
        enumeration: PathBuf,
        /// JSON list of weight vectors, one per family.
        #[arg(long)]
        families: PathBuf,
        /// Family index to bound against (defaults to the last family).
        #[arg(long)]
        m: Option<usize>,
        /// Number of random sample elements to verify.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Build the separating counterexample report for a weight function.
    Counterexample {
        /// Weight function JSON file ({"prefix": [...], "tail": "1"});
        /// the constant function 1 when omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Homology ranks and the simplicial l1-value of a class.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        /// Chain JSON file ({"degree": d, "coefficients": {...}}).
        #[arg(long)]
        class: Option<PathBuf>,
        /// Single degree to report (defaults to the class degree, or all).
        #[arg(long)]
        degree: Option<usize>,
    },
}

/// A finished run: what to print, and whether the verdict is determined.
struct Outcome {
    lines: Vec<String>,
    json: serde_json::Value,
    determined: bool,
}

enum Failure {
    /// Exit 2: unreadable or malformed input, depth above the cap.
    Input(String),
    /// Exit 1: well-formed input on which the computation fails.
    Domain(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.config.format {
                Format::Text => println!("{}", outcome.lines.join("\n")),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("serializable report")
                ),
            }
            if !outcome.determined && cli.config.strict {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let cap = effective_depth_cap();
    if cli.config.depth > cap {
        return Err(Failure::Input(format!(
            "depth {} exceeds the global cap {cap} ({SEMINORM_MAX_DEPTH_VAR})",
            cli.config.depth
        )));
    }
    match &cli.command {
        Command::Validate { category } => cmd_validate(category),
        Command::Eval {
            category,
            family,
            element,
        } => cmd_eval(category, family, element, &cli.config),
        Command::Locus {
            category,
            quotient_depth,
        } => cmd_locus(category, *quotient_depth, &cli.config),
        Command::Carry {
            category,
            sigma,
            tau,
        } => cmd_carry(category, sigma, tau, &cli.config),
        Command::Diagonal {
            category,
            enumeration,
            families,
            m,
            samples,
        } => cmd_diagonal(category, enumeration, families, *m, *samples, &cli.config),
        Command::Counterexample { weights } => cmd_counterexample(weights.as_deref(), &cli.config),
        Command::Homology {
            complex,
            class,
            degree,
        } => cmd_homology(complex, class.as_deref(), *degree),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Loads a category and requires it to be structurally valid.
fn load_category(path: &Path) -> Result<PresentedCategory, Failure> {
    let cat: PresentedCategory = read_json(path)?;
    let report = cat.validate();
    if report.is_valid() {
        Ok(cat)
    } else {
        let mut message = format!("{} is not a valid category:", path.display());
        for e in &report.errors {
            message.push_str(&format!("\n  {e}"));
        }
        Err(Failure::Domain(message))
    }
}

fn eval_failure(e: EvalError) -> Failure {
    match e {
        EvalError::DepthOverflow { .. } => Failure::Input(e.to_string()),
        other => Failure::Domain(other.to_string()),
    }
}

fn value_text(v: &TruncatedValue) -> String {
    match (&v.upper_bound, v.exact) {
        (Value::Infinite, true) => "infinity (exact)".into(),
        (Value::Infinite, false) => format!("infinity at depth {}", v.depth),
        (Value::Finite(x), true) => format!("{x} (exact)"),
        (Value::Finite(x), false) => format!("{x} (upper bound, not exact)"),
    }
}

fn cmd_validate(category: &Path) -> Result<Outcome, Failure> {
    let cat = load_category(category)?;
    Ok(Outcome {
        lines: vec![format!(
            "valid: {} objects, {} generators, {} relations",
            cat.objects.len(),
            cat.generators.len(),
            cat.relations.len()
        )],
        json: json!({
            "valid": true,
            "objects": cat.objects.len(),
            "generators": cat.generators.len(),
            "relations": cat.relations.len(),
        }),
        determined: true,
    })
}

fn cmd_eval(
    category: &Path,
    family: &Path,
    element: &Path,
    config: &RunConfig,
) -> Result<Outcome, Failure> {
    let cat = load_category(category)?;
    let fam: GeneratingFamily = read_json(family)?;
    let elem: Element = read_json(element)?;
    let evaluation = eval_generated(&cat, &fam, &elem, config.depth).map_err(eval_failure)?;
    let mut lines = vec![value_text(&evaluation.value)];
    for term in &evaluation.witness {
        let word = if term.word.is_empty() {
            "identity".to_string()
        } else {
            term.word.join(".")
        };
        lines.push(format!(
            "  term: {} * image of entry {} under {}",
            term.coefficient, term.entry_index, word
        ));
    }
    let determined = evaluation.value.exact;
    Ok(Outcome {
        json: serde_json::to_value(&evaluation).expect("serializable"),
        lines,
        determined,
    })
}

fn cmd_locus(
    category: &Path,
    quotient_depth: usize,
    config: &RunConfig,
) -> Result<Outcome, Failure> {
    let cap = effective_depth_cap();
    if quotient_depth > cap {
        return Err(Failure::Input(format!(
            "quotient depth {quotient_depth} exceeds the global cap {cap} ({SEMINORM_MAX_DEPTH_VAR})"
        )));
    }
    let cat = load_category(category)?;
    let report = universal_locus(&cat, config.depth, quotient_depth);
    let mut lines = Vec::new();
    let mut determined = true;
    for (name, locus) in &report.loci {
        let shape = if locus.space.is_full() {
            format!("N({name}) = F({name})")
        } else if locus.space.is_zero() {
            format!("N({name}) = 0")
        } else {
            format!(
                "N({name}) = {}-dimensional subspace of F({name})",
                locus.space.dim()
            )
        };
        let status = match locus.status {
            LocusStatus::Exact => "exact",
            LocusStatus::InnerBound => "inner bound",
            LocusStatus::OuterBound => "outer bound",
        };
        determined &= locus.status == LocusStatus::Exact;
        lines.push(format!("{shape}, {status}"));
    }
    for c in &report.certificates {
        lines.push(format!(
            "  certificate at {}: word {} has eigenvalue {}",
            c.object,
            c.witness_word.join("."),
            c.eigenvalue
        ));
    }
    lines.push(match report.quotient_stabilization_depth {
        Some(d) if report.quotient_stabilized => format!("quotient stabilized at depth {d}"),
        _ => format!("quotient not stabilized within depth {quotient_depth}"),
    });
    Ok(Outcome {
        json: serde_json::to_value(&report).expect("serializable"),
        lines,
        determined,
    })
}

fn cmd_carry(
    category: &Path,
    sigma: &Path,
    tau: &Path,
    config: &RunConfig,
) -> Result<Outcome, Failure> {
    let cat = load_category(category)?;
    let sigma_fam: GeneratingFamily = read_json(sigma)?;
    let tau_fam: GeneratingFamily = read_json(tau)?;
    let reflexive = sigma_fam == tau_fam;
    let sigma_handle = SeminormHandle::generated(sigma_fam);
    let tau_handle = SeminormHandle::generated(tau_fam);
    let verdict = carries(
        &cat,
        LocusInput::Handle(&sigma_handle),
        LocusInput::Handle(&tau_handle),
        config.depth,
    )
    .map_err(eval_failure)?;
    let (line, determined) = match &verdict {
        CarriesVerdict::Carries if reflexive => ("carries (reflexive)".to_string(), true),
        CarriesVerdict::Carries => ("carries".to_string(), true),
        CarriesVerdict::Violated { object, witness } => {
            let vector = witness
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            (format!("does not carry: witness at {object}: [{vector}]"), true)
        }
        CarriesVerdict::Undetermined { .. } => {
            (format!("undetermined at depth {}", config.depth), false)
        }
    };
    Ok(Outcome {
        json: json!({
            "verdict": serde_json::to_value(&verdict).expect("serializable"),
            "reflexive": reflexive,
        }),
        lines: vec![line],
        determined,
    })
}

fn cmd_diagonal(
    category: &Path,
    enumeration: &Path,
    families: &Path,
    m: Option<usize>,
    samples: usize,
    config: &RunConfig,
) -> Result<Outcome, Failure> {
    let cat = load_category(category)?;
    let en: Enumeration = read_json(enumeration)?;
    let family_weights: Vec<Vec<Rational>> = read_json(families)?;
    if family_weights.is_empty() {
        return Err(Failure::Input(format!(
            "{}: lists no families",
            families.display()
        )));
    }
    let m = m.unwrap_or(family_weights.len() - 1);
    if m >= family_weights.len() {
        return Err(Failure::Input(format!(
            "family index {m} out of range; {} families given",
            family_weights.len()
        )));
    }
    for (j, w) in family_weights.iter().enumerate() {
        if w.len() > en.len() {
            return Err(Failure::Input(format!(
                "family {j} lists {} weights, the enumeration has {} elements",
                w.len(),
                en.len()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sample_elements: Vec<Element> = (0..samples)
        .map(|_| {
            let o = &cat.objects[rng.random_range(0..cat.objects.len())];
            Element {
                object: o.name.clone(),
                vector: (0..o.dim)
                    .map(|_| {
                        Rational::from_ratio(rng.random_range(-2..=2), rng.random_range(1..=2))
                    })
                    .collect(),
            }
        })
        .collect();
    let report = verify_carry_bound(
        &cat,
        &en,
        &family_weights,
        m,
        &sample_elements,
        config.depth,
    )
    .map_err(eval_failure)?;
    let passed = report.verified_samples.iter().filter(|s| s.pass).count();
    let lines = vec![
        format!(
            "diagonal weights: [{}]",
            report
                .v
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        format!(
            "Q = {} ({})",
            report.q,
            if report.exact { "certified" } else { "truncated bounds" }
        ),
        format!(
            "samples passing |alpha|_v >= Q * |alpha|_v{}: {passed}/{}",
            report.m,
            report.verified_samples.len()
        ),
    ];
    let determined = report.exact;
    Ok(Outcome {
        json: serde_json::to_value(&report).expect("serializable"),
        lines,
        determined,
    })
}

fn cmd_counterexample(weights: Option<&Path>, config: &RunConfig) -> Result<Outcome, Failure> {
    let v = match weights {
        Some(path) => read_json(path)?,
        None => WeightFn::constant(Rational::one()).expect("one is nonnegative"),
    };
    let report = gap_demo(&v, config.m_max);
    let shown = report.upper_bounds_v.iter().take(9).collect::<Vec<_>>();
    let lines = vec![
        format!(
            "derived object: w(m) = m*v(m) + 1, linear tail with slope {} from m = {}",
            report.tail_coefficient, report.tail_start
        ),
        format!(
            "lower bound: |1_w|_w >= {}{}",
            report.lower_bound_w,
            if report.exact_lower {
                " (exact infimum)"
            } else {
                " (symbolic bound)"
            }
        ),
        format!(
            "upper bounds for |1_w|_v at m = 0..{}: [{}]{}",
            shown.len() - 1,
            shown
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            if report.upper_bounds_v.len() > shown.len() {
                ", ..."
            } else {
                ""
            }
        ),
        "every finite functorial semi-norm is beaten: the bounds fall below 1/m".to_string(),
    ];
    let determined = report.exact_lower;
    Ok(Outcome {
        json: serde_json::to_value(&report).expect("serializable"),
        lines,
        determined,
    })
}

fn cmd_homology(
    complex: &Path,
    class: Option<&Path>,
    degree: Option<usize>,
) -> Result<Outcome, Failure> {
    let k: SimplicialComplex = read_json(complex)?;
    let parsed_class = class
        .map(|path| {
            let data: ChainData = read_json(path)?;
            HomologyClass::from_chain_data(&k, &data)
                .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
        })
        .transpose()?;
    let degrees: Vec<usize> = match (degree, &parsed_class) {
        (Some(d), _) => vec![d],
        (None, Some(c)) => vec![c.degree],
        (None, None) => (0..=k.dimension().unwrap_or(0)).collect(),
    };
    let mut lines = Vec::new();
    let mut degree_reports = Vec::new();
    for d in &degrees {
        let h = homology_basis(&k, *d);
        lines.push(format!(
            "H_{d}: dimension {} (cycle rank {}, boundary rank {})",
            h.dim(),
            h.cycle_rank,
            h.boundary_rank
        ));
        degree_reports.push(json!({
            "degree": d,
            "dimension": h.dim(),
            "cycle_rank": h.cycle_rank,
            "boundary_rank": h.boundary_rank,
        }));
    }
    let mut json = json!({ "homology": degree_reports });
    if let Some(c) = &parsed_class {
        let value = l1_simplicial(&k, &c);
        lines.push(format!("l1 value of the class: {value}"));
        json["l1_value"] = serde_json::to_value(&value).expect("serializable");
    }
    Ok(Outcome {
        lines,
        json,
        determined: true,
    })
}
