//! Command-line front end.
//!
//! Every subcommand renders its result as JSON (default), CSV or plain text.
//! Domain errors exit with status 1 (and a `{"error", "message"}` object on
//! stdout in JSON mode); usage errors exit with status 2.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::complexity::{figure4_csv, figure4_data, runtime_approx, runtime_compare, runtime_exact};
use crate::distribution::PhotonDistribution;
use crate::error::Error;
use crate::estimator::{
    error_bound, error_bound_entropy, error_bound_stirling, generalized_estimate_with,
    gurvits_estimate_with, samples_for_epsilon, EstimateResult, Sampling,
};
use crate::majorization::{
    build_lattice, canonicalize, compare, majorization_difference, schur_report,
};
use crate::matrix::{random_unitary, ComplexMatrix};
use crate::permanent::{
    amplitude_with, output_distribution_with, scattering_permanent, Algorithm, Options,
    UNITARITY_WARN,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundMethod {
    Exact,
    Entropy,
    Stirling,
}

#[derive(Debug, Parser)]
#[command(
    name = "bosonperm",
    version,
    about = "Permanents, scattering amplitudes and majorization tools for linear optics"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the exponential sums and the estimators.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: u64,
    /// Seed for every randomized operation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Input distribution, e.g. `2,1,0`.
    #[arg(long)]
    pub n: PhotonDistribution,
    /// Output distribution.
    #[arg(long)]
    pub m: PhotonDistribution,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Permanent of a matrix, or of its submatrix with repeated rows/columns.
    Perm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        algo: Algorithm,
        #[arg(long, requires = "m")]
        n: Option<PhotonDistribution>,
        #[arg(long, requires = "n")]
        m: Option<PhotonDistribution>,
    },
    /// Transition amplitude ⟨m|U|n⟩.
    Amplitude {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = Algorithm::RootsOfUnity)]
        algo: Algorithm,
    },
    /// Probabilities of every output distribution.
    Distribution {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: PhotonDistribution,
    },
    /// Schur-concave/convex statistics of a distribution.
    Schur {
        #[arg(long)]
        n: PhotonDistribution,
    },
    /// Majorization relation between two distributions.
    Compare {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Dominance lattice of the partitions of N.
    Lattice {
        #[arg(long = "N", value_name = "N")]
        size: usize,
        /// Emit Graphviz DOT instead of the selected format.
        #[arg(long)]
        dot: bool,
    },
    /// Cover-step distance between two comparable distributions.
    Diff {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Exact runtime model, optionally compared with a second pair.
    Runtime {
        #[command(flatten)]
        pair: PairArgs,
        /// Second pair `N2 M2`, e.g. `--compare 2,2 3,1`.
        #[arg(long, num_args = 2, value_names = ["N2", "M2"])]
        compare: Option<Vec<PhotonDistribution>>,
        /// Also report the randomized runtime at this precision.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Randomized additive-error estimate of a permanent.
    Estimate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, requires = "m")]
        n: Option<PhotonDistribution>,
        #[arg(long, requires = "n")]
        m: Option<PhotonDistribution>,
        #[arg(long, conflicts_with_all = ["epsilon", "exhaustive"])]
        samples: Option<u64>,
        /// Target precision; sets the sample count.
        #[arg(long, conflicts_with = "exhaustive")]
        epsilon: Option<f64>,
        /// Visit every point of the domain instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Additive error bound for estimating ⟨m|U|n⟩.
    Bound {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = BoundMethod::Exact)]
        method: BoundMethod,
    },
    /// Multinomial and runtime along a chain of six-photon outputs.
    Figure4,
    /// Seeded Haar-random unitary in the matrix file format.
    Unitary {
        #[arg(long)]
        dim: usize,
    },
}

/// Rendered result of one command.
struct Payload {
    json: Value,
    csv: String,
    text: String,
}

impl Payload {
    fn render(self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Csv => self.csv,
            Format::Text => self.text,
        }
    }
}

/// A value rendered the same way in every format.
fn verbatim(body: String) -> Payload {
    Payload {
        json: Value::String(body.clone()),
        csv: body.clone(),
        text: body,
    }
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Formats `x` to 12 significant digits, shortest form.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("float round-trips");
    format!("{rounded}")
}

/// `re+imi` with 12 significant digits per part.
pub fn complex_text(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", sig12(z.re), sign, sig12(z.im.abs()))
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn occupations_csv(d: &PhotonDistribution) -> String {
    let parts: Vec<String> = d.occupations().iter().map(|x| x.to_string()).collect();
    format!("\"{}\"", parts.join(","))
}

fn read_matrix(path: &Path) -> std::result::Result<ComplexMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(ComplexMatrix::from_json(&text)?)
}

fn warn_non_unitary(u: &ComplexMatrix, err: &mut dyn Write) {
    let defect = u.unitarity_defect();
    if defect > UNITARITY_WARN {
        let _ = writeln!(
            err,
            "warning: matrix is not unitary (defect {defect:.3e}); amplitudes are not normalized"
        );
    }
}

fn estimate_payload(r: &EstimateResult) -> Payload {
    Payload {
        json: json!({
            "estimate": complex_json(r.estimate),
            "amplitude": complex_json(r.amplitude()),
            "samples": r.samples,
            "seed": r.seed,
            "epsilon": r.epsilon,
            "bound": r.bound,
            "permanent_bound": r.permanent_bound(),
        }),
        csv: format!(
            "estimate_re,estimate_im,samples,seed,epsilon,bound,permanent_bound\n{},{},{},{},{},{},{}\n",
            r.estimate.re,
            r.estimate.im,
            r.samples,
            r.seed,
            r.epsilon,
            r.bound,
            r.permanent_bound()
        ),
        text: format!(
            "estimate  {}\nsamples   {}\nseed      {}\nepsilon   {}\nbound     {} (permanent scale {})\n",
            complex_text(r.estimate),
            r.samples,
            r.seed,
            sig12(r.epsilon),
            sig12(r.bound),
            sig12(r.permanent_bound())
        ),
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> std::result::Result<Payload, Failure> {
    let opts = Options {
        threads: cli.threads as usize,
    };
    let payload = match &cli.command {
        Command::Perm { input, algo, n, m } => {
            let u = read_matrix(input)?;
            let (n, m) = match (n, m) {
                (Some(n), Some(m)) => (n.clone(), m.clone()),
                _ => {
                    let ones = PhotonDistribution::unbunched(u.dim());
                    (ones.clone(), ones)
                }
            };
            let p = scattering_permanent(&u, &n, &m, *algo, &opts)?;
            Payload {
                json: json!({
                    "value": complex_json(p.value),
                    "algorithm": p.algorithm,
                    "term_count": p.term_count,
                }),
                csv: format!(
                    "value_re,value_im,algorithm,term_count\n{},{},{},{}\n",
                    p.value.re, p.value.im, p.algorithm, p.term_count
                ),
                text: format!(
                    "{} ({}, {} terms)\n",
                    complex_text(p.value),
                    p.algorithm,
                    p.term_count
                ),
            }
        }
        Command::Amplitude { input, pair, algo } => {
            let u = read_matrix(input)?;
            warn_non_unitary(&u, err);
            let a = amplitude_with(&u, &pair.n, &pair.m, *algo, &opts)?;
            Payload {
                json: json!({
                    "amplitude": complex_json(a.value),
                    "probability": a.probability(),
                    "permanent": complex_json(a.permanent.value),
                    "normalization": a.normalization,
                    "algorithm": a.permanent.algorithm,
                    "term_count": a.permanent.term_count,
                }),
                csv: format!(
                    "amplitude_re,amplitude_im,probability,algorithm,term_count\n{},{},{},{},{}\n",
                    a.value.re,
                    a.value.im,
                    a.probability(),
                    a.permanent.algorithm,
                    a.permanent.term_count
                ),
                text: format!(
                    "amplitude    {}\nprobability  {}\npermanent    {}\n",
                    complex_text(a.value),
                    sig12(a.probability()),
                    complex_text(a.permanent.value)
                ),
            }
        }
        Command::Distribution { input, n } => {
            let u = read_matrix(input)?;
            warn_non_unitary(&u, err);
            let dist = output_distribution_with(&u, n, &opts)?;
            let total: f64 = dist.iter().map(|(_, p)| p).sum();
            let mut csv = String::from("output,probability\n");
            let mut text = String::new();
            for (m, p) in &dist {
                csv.push_str(&format!("{},{}\n", occupations_csv(m), p));
                text.push_str(&format!("{m}  {}\n", sig12(*p)));
            }
            text.push_str(&format!("total  {}\n", sig12(total)));
            Payload {
                json: json!({
                    "input": n,
                    "outputs": dist
                        .iter()
                        .map(|(m, p)| json!({"m": m, "probability": p}))
                        .collect::<Vec<_>>(),
                    "total": total,
                }),
                csv,
                text,
            }
        }
        Command::Schur { n } => {
            let r = schur_report(n)?;
            let x: Vec<String> = r.x.iter().map(|x| x.to_string()).collect();
            Payload {
                json: r.to_json(),
                csv: format!(
                    "partition,X,alpha,Q,v,H,S_B,delta_S\n{},{},{},{},{},{},{},{}\n",
                    r.partition.plus_joined(),
                    x.join(" "),
                    r.alpha,
                    r.q,
                    r.v,
                    r.h,
                    r.s_b,
                    r.delta_s
                ),
                text: format!(
                    "partition  {}\nX          {}\nalpha      {}\nQ          {}\nv          {}\nH          {}\nS_B        {}\ndelta_S    {}\n",
                    r.partition,
                    x.join(" "),
                    r.alpha,
                    r.q,
                    sig12(r.v),
                    sig12(r.h),
                    sig12(r.s_b),
                    sig12(r.delta_s)
                ),
            }
        }
        Command::Compare { pair } => {
            let (a, b) = (canonicalize(&pair.n)?, canonicalize(&pair.m)?);
            let rel = compare(&a, &b)?;
            let name = format!("{rel:?}");
            Payload {
                json: json!({"relation": name, "n": a, "m": b}),
                csv: format!("n,m,relation\n{},{},{name}\n", a.plus_joined(), b.plus_joined()),
                text: format!("{a} vs {b}: {name}\n"),
            }
        }
        Command::Lattice { size, dot } => {
            let lattice = build_lattice(*size)?;
            if *dot {
                verbatim(lattice.to_dot())
            } else {
                let mut csv = String::from("lower,upper\n");
                let mut text = format!("{} partitions, {} covers\n", lattice.nodes().len(), lattice.edges().len());
                for &(lo, hi) in lattice.edges() {
                    let (l, h) = (&lattice.nodes()[lo], &lattice.nodes()[hi]);
                    csv.push_str(&format!("{},{}\n", l.plus_joined(), h.plus_joined()));
                    text.push_str(&format!("{l} -> {h}\n"));
                }
                Payload {
                    json: lattice.to_json(),
                    csv,
                    text,
                }
            }
        }
        Command::Diff { pair } => {
            let d = majorization_difference(&canonicalize(&pair.n)?, &canonicalize(&pair.m)?)?;
            Payload {
                json: json!({"difference": d}),
                csv: format!("difference\n{d}\n"),
                text: format!("{d}\n"),
            }
        }
        Command::Runtime {
            pair,
            compare: second,
            epsilon,
        } => {
            let r = runtime_exact(&pair.n, &pair.m)?;
            let mut json = r.to_json();
            let mut csv_head = vec!["t_min", "prod_n", "prod_m", "alpha_n", "alpha_m"];
            let mut csv_row = vec![
                r.t_min.to_string(),
                r.prod_n.to_string(),
                r.prod_m.to_string(),
                r.alpha_n.to_string(),
                r.alpha_m.to_string(),
            ];
            let mut text = format!(
                "t_min  {}  (min({}, {}) x {} x {})\n",
                r.t_min, r.prod_n, r.prod_m, r.alpha_n, r.alpha_m
            );
            if let Some(eps) = epsilon {
                let approx = runtime_approx(&pair.n, &pair.m, *eps)?;
                json["t_approx"] = json!(approx);
                csv_head.push("t_approx");
                csv_row.push(approx.to_string());
                text.push_str(&format!("t_approx  {}\n", sig12(approx)));
            }
            if let Some(second) = second {
                let (n2, m2) = (&second[0], &second[1]);
                let rel = runtime_compare(&pair.n, &pair.m, n2, m2)?;
                let r2 = runtime_exact(n2, m2)?;
                let name = format!("{rel:?}");
                json["compare"] = json!({"relation": name, "t_min_2": r2.t_min.to_string()});
                csv_head.extend(["relation", "t_min_2"]);
                csv_row.extend([name.clone(), r2.t_min.to_string()]);
                text.push_str(&format!("t_min_2  {}\nrelation  {name}\n", r2.t_min));
            }
            Payload {
                json,
                csv: format!("{}\n{}\n", csv_head.join(","), csv_row.join(",")),
                text,
            }
        }
        Command::Estimate {
            input,
            n,
            m,
            samples,
            epsilon,
            exhaustive,
        } => {
            let u = read_matrix(input)?;
            let sampling = if *exhaustive {
                Sampling::Exhaustive
            } else if let Some(eps) = epsilon {
                Sampling::Random {
                    samples: samples_for_epsilon(*eps)?,
                }
            } else {
                Sampling::Random {
                    samples: samples.unwrap_or(10_000),
                }
            };
            let r = match (n, m) {
                (Some(n), Some(m)) => {
                    generalized_estimate_with(&u, n, m, sampling, cli.seed, opts.threads)?
                }
                _ => gurvits_estimate_with(&u, sampling, cli.seed, opts.threads)?,
            };
            estimate_payload(&r)
        }
        Command::Bound {
            pair,
            epsilon,
            method,
        } => {
            let b = match method {
                BoundMethod::Exact => error_bound(&pair.n, &pair.m, *epsilon)?,
                BoundMethod::Entropy => error_bound_entropy(&pair.n, &pair.m, *epsilon)?,
                BoundMethod::Stirling => error_bound_stirling(&pair.n, &pair.m, *epsilon)?,
            };
            let name = format!("{method:?}").to_lowercase();
            Payload {
                json: json!({"bound": b, "method": name, "epsilon": epsilon}),
                csv: format!("bound,method,epsilon\n{b},{name},{epsilon}\n"),
                text: format!("{}\n", sig12(b)),
            }
        }
        Command::Figure4 => {
            let rows = figure4_data();
            let mut text = String::from("index  partition      Q  Tmin/6\n");
            for r in &rows {
                text.push_str(&format!(
                    "{:>5}  {:<11} {:>4}  {:>6}\n",
                    r.index,
                    r.partition.plus_joined(),
                    r.q,
                    r.t_min_over_6
                ));
            }
            Payload {
                json: Value::Array(
                    rows.iter()
                        .map(|r| {
                            json!({
                                "index": r.index,
                                "partition": r.partition,
                                "Q": r.q.to_string().parse::<u64>().unwrap_or(u64::MAX),
                                "Tmin_over_6": r.t_min_over_6.to_string().parse::<u64>().unwrap_or(u64::MAX),
                            })
                        })
                        .collect(),
                ),
                csv: figure4_csv(&rows),
                text,
            }
        }
        Command::Unitary { dim } => {
            if *dim == 0 {
                return Err(Error::InvalidParameter("dimension must be positive".into()).into());
            }
            let u = random_unitary(*dim, cli.seed);
            let body = format!("{}\n", u.to_json());
            Payload {
                json: serde_json::from_str(&body).expect("emitted JSON parses"),
                csv: body.clone(),
                text: body,
            }
        }
    };
    Ok(payload)
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let lattice_dot = matches!(cli.command, Command::Lattice { dot: true, .. });
    match execute(&cli, err) {
        Ok(payload) => {
            let body = if lattice_dot {
                payload.text
            } else {
                payload.render(cli.format)
            };
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Domain(e) => (e.code(), e.to_string()),
                Failure::Io(msg) => ("Io", msg),
            };
            if cli.format == Format::Json {
                let _ = writeln!(out, "{}", json!({"error": code, "message": message}));
            }
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}
