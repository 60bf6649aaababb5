use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use piso_lab_core::bp::{qa_decomposition, sup_norm, NormMethod};
use piso_lab_core::covariance::{run_checks, RepresentationKind};
use piso_lab_core::crossed::{parse_bp_function, parse_element_list, CrossedProductElement, System};
use piso_lab_core::padic::{self, CyclicContext, GroupAlgebraElement, OdometerPoint};
use piso_lab_core::{BpFunction, CheckReport, Element, Error, WindowSpec};

const TOOL: &str = "piso-lab";

#[derive(Parser, Debug)]
#[command(name = TOOL, version, about = "Exact checks for partial-isometric representations of LCM semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled product tables.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Left and right least common multiples of two elements.
    Lcm {
        #[arg(long)]
        semigroup: String,
        /// Two comma separated elements.
        #[arg(long)]
        set: String,
    },
    /// Iterated right lcm of a finite family.
    Sigma {
        #[arg(long)]
        semigroup: String,
        #[arg(long)]
        set: String,
    },
    /// Run covariance checks for a built-in representation.
    Check {
        #[arg(long)]
        semigroup: String,
        #[arg(long, default_value = "canonical_W")]
        rep: String,
        /// Comma separated: piso_rep, right_nica, left_nica, covariant_pair,
        /// action_left_nica, audit_free_right, audit_free_left,
        /// audit_ntimes_bicov, audit_n2_bicov.
        #[arg(long, default_value = "piso_rep,right_nica")]
        checks: String,
        /// Generators 1_u for covariant_pair; defaults to the whole window.
        #[arg(long)]
        set: Option<String>,
    },
    /// The projections Q_A for a finite family F.
    Qa {
        #[arg(long)]
        semigroup: String,
        #[arg(long)]
        set: String,
    },
    /// Sup norm of a B_P function, by formula and on the window.
    Norm {
        #[arg(long)]
        semigroup: String,
        /// For example "1_1 - 2/3*1_2".
        #[arg(long)]
        function: String,
    },
    /// Multiply crossed-product elements, or sample a product table.
    CpMul {
        #[arg(long)]
        semigroup: String,
        /// Monomials `x | f | y`, separated by `;`.
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
        #[arg(long, value_enum, default_value_t = SystemArg::Diagonal)]
        system: SystemArg,
        /// Number of sampled pairs when no operands are given.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Bunce-Deddens invariants of the pair (p, q).
    Bd {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Iterate the truncated odometer.
    Odometer {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        steps: u64,
        /// Comma separated digits; defaults to zero.
        #[arg(long)]
        start: Option<String>,
    },
    /// Apply the averaging action on the group algebra of Z/(p^k q^l).
    Beta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Terms `r:coeff`, comma separated; `r` alone means coefficient 1.
        #[arg(long, default_value = "0")]
        elem: String,
        /// Also run the Fourier conjugacy probe.
        #[arg(long)]
        probe: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Diagonal,
    Scalar,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Usage(_) | Error::Descriptor(_) | Error::Shape { .. } => {
                Failure::Usage(e.to_string())
            }
            Error::Carrier(_) | Error::Resource(_) | Error::Domain(_) => Failure::Domain(e.to_string()),
        }
    }
}

struct Outcome {
    result: Value,
    csv: Option<String>,
    passed: bool,
}

impl Outcome {
    fn ok(result: Value) -> Outcome {
        Outcome {
            result,
            csv: None,
            passed: true,
        }
    }
}

fn window(spec: &str) -> Result<(WindowSpec, Vec<Element>), Failure> {
    let w: WindowSpec = spec.parse()?;
    let elements = w.enumerate()?;
    Ok((w, elements))
}

fn show(elements: &[Element]) -> Vec<String> {
    elements.iter().map(Element::to_string).collect()
}

fn run_lcm(semigroup: &str, set: &str) -> Result<Outcome, Failure> {
    let (w, _) = window(semigroup)?;
    let d = w.semigroup();
    let elements = d.parse_elements(set)?;
    let [x, y] = elements.as_slice() else {
        return Err(Failure::Usage("lcm takes exactly two elements".into()));
    };
    let text = |z: Option<Element>| z.map(|z| z.to_string());
    Ok(Outcome::ok(json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "left_lcm": text(d.left_lcm(x, y)?),
        "right_lcm": text(d.right_lcm(x, y)?),
    })))
}

fn run_sigma(semigroup: &str, set: &str) -> Result<Outcome, Failure> {
    let (w, _) = window(semigroup)?;
    let d = w.semigroup();
    let family = d.parse_elements(set)?;
    let sigma = d.sigma(&family)?;
    Ok(Outcome::ok(json!({
        "family": show(&family),
        "sigma": sigma.map(|s| s.to_string()),
    })))
}

fn run_check(semigroup: &str, rep: &str, checks: &str, set: Option<&str>) -> Result<Outcome, Failure> {
    let w: WindowSpec = semigroup.parse()?;
    let kind: RepresentationKind = rep.parse()?;
    let generators = match set {
        Some(s) => Some(w.semigroup().parse_elements(s)?),
        None => None,
    };
    let names: Vec<&str> = checks.split(',').map(str::trim).collect();
    let reports = run_checks(&w, kind, &names, generators.as_deref())?;
    let passed = reports.iter().all(CheckReport::passed);
    let mut csv = String::from("check,semigroup,status,witnesses\n");
    for r in &reports {
        let status = if r.passed() { "pass" } else { "fail" };
        writeln!(csv, "{},{},{},{}", r.check, r.semigroup, status, r.witnesses.len()).expect("string write");
    }
    Ok(Outcome {
        result: json!({
            "status": if passed { "pass" } else { "fail" },
            "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        }),
        csv: Some(csv),
        passed,
    })
}

fn run_qa(semigroup: &str, set: &str) -> Result<Outcome, Failure> {
    let (w, _) = window(semigroup)?;
    let d = w.semigroup();
    let report = qa_decomposition(&d, &d.parse_elements(set)?)?;
    Ok(Outcome::ok(report.to_json()))
}

fn run_norm(semigroup: &str, function: &str) -> Result<Outcome, Failure> {
    let (w, elements) = window(semigroup)?;
    let f = parse_bp_function(&w.semigroup(), function)?;
    let formula = sup_norm(&f, NormMethod::Formula)?;
    let windowed = sup_norm(&f, NormMethod::Window(&elements))?;
    Ok(Outcome {
        result: json!({
            "function": f.to_json(),
            "formula": formula.to_string(),
            "window": windowed.to_string(),
            "agree": formula == windowed,
        }),
        csv: None,
        passed: formula == windowed,
    })
}

fn run_cp_mul(
    semigroup: &str,
    left: Option<&str>,
    right: Option<&str>,
    system: SystemArg,
    samples: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let (w, elements) = window(semigroup)?;
    let d = w.semigroup();
    let system = match system {
        SystemArg::Diagonal => System::Diagonal,
        SystemArg::Scalar => System::Scalar,
    };
    let pairs = match (left, right) {
        (Some(l), Some(r)) => vec![(parse_element_list(&d, system, l)?, parse_element_list(&d, system, r)?)],
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pick = |rng: &mut ChaCha8Rng| -> Result<CrossedProductElement, Failure> {
                let x = elements.choose(rng).expect("nonempty window");
                let y = elements.choose(rng).expect("nonempty window");
                let f = match system {
                    System::Diagonal => BpFunction::indicator(&d, elements.choose(rng).expect("nonempty window"))?,
                    System::Scalar => BpFunction::unit(&d),
                };
                let m = piso_lab_core::SpanningMonomial::new(x, &f, y)?;
                Ok(CrossedProductElement::from_monomial(&m, system)?)
            };
            (0..samples)
                .map(|_| Ok((pick(&mut rng)?, pick(&mut rng)?)))
                .collect::<Result<Vec<_>, Failure>>()?
        }
    };
    let table = pairs
        .iter()
        .map(|(u, v)| -> Result<Value, Failure> {
            let product = u.multiply(v)?;
            Ok(json!({
                "left": u.to_json(),
                "right": v.to_json(),
                "product": product.to_json(),
            }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::ok(json!({
        "system": format!("{system:?}").to_lowercase(),
        "products": table,
    })))
}

fn run_bd(p: u64, q: u64) -> Result<Outcome, Failure> {
    let bd = padic::bd_invariants(p, q)?;
    let csv = format!(
        "p,q,ord,L,count,supernatural\n{},{},{},{},{},{}\n",
        bd.p, bd.q, bd.ord, bd.l, bd.count, bd.supernatural
    );
    Ok(Outcome {
        result: bd.to_json(),
        csv: Some(csv),
        passed: true,
    })
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|_| Failure::Usage(format!("bad {what} `{s}`")))
        })
        .collect()
}

fn run_odometer(d: u64, p: u64, depth: usize, steps: u64, start: Option<&str>) -> Result<Outcome, Failure> {
    let mut point = match start {
        Some(s) => OdometerPoint::new(d, p, depth, &parse_list::<u64>(s, "digit")?)
            .map_err(|e| Failure::Usage(format!("bad --start: {e}")))?,
        None => OdometerPoint::zero(d, p, depth)?,
    };
    let mut orbit = vec![point.to_string()];
    let mut csv = String::from("step,digits\n");
    writeln!(csv, "0,\"{point}\"").expect("string write");
    for i in 1..=steps {
        point = point.step();
        writeln!(csv, "{i},\"{point}\"").expect("string write");
        orbit.push(point.to_string());
    }
    Ok(Outcome {
        result: json!({"period": point.period().to_string(), "orbit": orbit}),
        csv: Some(csv),
        passed: true,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_beta(p: u64, q: u64, k: u32, l: u32, m: u32, n: u32, elem: &str, probe: bool) -> Result<Outcome, Failure> {
    let ctx = CyclicContext::new(p, q, k, l)?;
    let mut terms = Vec::new();
    for piece in elem.split(',') {
        let (r, c) = piece.split_once(':').unwrap_or((piece, "1"));
        let r: u64 = r
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad index `{r}`")))?;
        let c: BigRational = c
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad coefficient `{c}`")))?;
        terms.push((r, c));
    }
    let input = GroupAlgebraElement::from_coeffs(ctx.modulus(), terms);
    let output = padic::beta_apply(&ctx, (m, n), &input)?;
    let mut result = json!({
        "modulus": ctx.modulus(),
        "input": input.to_json(),
        "output": output.to_json(),
    });
    let mut passed = true;
    if probe {
        let report = padic::fourier_probe(&ctx, (m, n))?;
        passed = report.passes(1e-9);
        result["probe"] = json!({
            "max_error": format!("{:.3e}", report.max_error),
            "support_matches": report.support_matches,
            "fiber_constant_agree": report.fiber_constant_agree,
            "status": if passed { "pass" } else { "fail" },
        });
    }
    Ok(Outcome {
        result,
        csv: None,
        passed,
    })
}

fn config_echo(command: &Command, common: &Common) -> Value {
    let mut config = match command {
        Command::Lcm { semigroup, set } => json!({"command": "lcm", "semigroup": semigroup, "set": set}),
        Command::Sigma { semigroup, set } => json!({"command": "sigma", "semigroup": semigroup, "set": set}),
        Command::Check {
            semigroup,
            rep,
            checks,
            set,
        } => {
            json!({"command": "check", "semigroup": semigroup, "rep": rep, "checks": checks, "set": set})
        }
        Command::Qa { semigroup, set } => json!({"command": "qa", "semigroup": semigroup, "set": set}),
        Command::Norm { semigroup, function } => {
            json!({"command": "norm", "semigroup": semigroup, "function": function})
        }
        Command::CpMul {
            semigroup,
            left,
            right,
            system,
            samples,
        } => json!({
            "command": "cp-mul", "semigroup": semigroup, "left": left, "right": right,
            "system": format!("{system:?}").to_lowercase(), "samples": samples,
        }),
        Command::Bd { p, q } => json!({"command": "bd", "p": p, "q": q}),
        Command::Odometer {
            d,
            p,
            depth,
            steps,
            start,
        } => {
            json!({"command": "odometer", "d": d, "p": p, "depth": depth, "steps": steps, "start": start})
        }
        Command::Beta {
            p,
            q,
            k,
            l,
            m,
            n,
            elem,
            probe,
        } => json!({
            "command": "beta", "p": p, "q": q, "k": k, "l": l, "m": m, "n": n, "elem": elem, "probe": probe,
        }),
    };
    config["seed"] = json!(common.seed);
    config["format"] = json!(format!("{:?}", common.format).to_lowercase());
    config
}

fn dispatch(command: &Command, seed: u64) -> Result<Outcome, Failure> {
    match command {
        Command::Lcm { semigroup, set } => run_lcm(semigroup, set),
        Command::Sigma { semigroup, set } => run_sigma(semigroup, set),
        Command::Check {
            semigroup,
            rep,
            checks,
            set,
        } => run_check(semigroup, rep, checks, set.as_deref()),
        Command::Qa { semigroup, set } => run_qa(semigroup, set),
        Command::Norm { semigroup, function } => run_norm(semigroup, function),
        Command::CpMul {
            semigroup,
            left,
            right,
            system,
            samples,
        } => run_cp_mul(semigroup, left.as_deref(), right.as_deref(), *system, *samples, seed),
        Command::Bd { p, q } => run_bd(*p, *q),
        Command::Odometer {
            d,
            p,
            depth,
            steps,
            start,
        } => run_odometer(*d, *p, *depth, *steps, start.as_deref()),
        Command::Beta {
            p,
            q,
            k,
            l,
            m,
            n,
            elem,
            probe,
        } => run_beta(*p, *q, *k, *l, *m, *n, elem, *probe),
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(value) = std::env::var("PISO_LAB_THREADS") {
        let threads: usize = value
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("PISO_LAB_THREADS must be a positive integer, got `{value}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Domain(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let outcome = dispatch(&cli.command, cli.common.seed)?;
    let text = match cli.common.format {
        Format::Json => {
            let report = json!({
                "tool": TOOL,
                "version": env!("CARGO_PKG_VERSION"),
                "config": config_echo(&cli.command, &cli.common),
                "result": outcome.result,
            });
            serde_json::to_string_pretty(&report).expect("serializable") + "\n"
        }
        Format::Csv => outcome
            .csv
            .ok_or_else(|| Failure::Usage("csv output is available for bd, check and odometer".into()))?,
    };
    match &cli.common.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("{TOOL}: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{TOOL}: {msg}");
            ExitCode::from(2)
        }
    }
}
