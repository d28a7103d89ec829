use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tks_core::alpha::{alpha, alpha_gate};
use tks_core::lattice::rat_string;
use tks_core::polytope::factorial;
use tks_core::valuation::oracle_budget;
use tks_core::workbench::report::{lattice_json, piecewise_json, screen_json};
use tks_core::workbench::{analyze, csv, load_fan, parse_w, screen, suite, DEFAULT_RADIUS};
use tks_core::{Error, Rat, Result, ToricFano, ToricValuation};

/// Exact K-stability invariants of toric Fano varieties.
#[derive(Parser)]
#[command(name = "tks", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full stability report over the valuation battery.
    Analyze {
        fanspec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: u32,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariants of one toric valuation.
    Beta {
        fanspec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Also estimate S by counting lattice points at this level.
        #[arg(long)]
        lattice_k: Option<u64>,
    },
    /// Alpha invariant and its witness divisor.
    Alpha { fanspec: PathBuf },
    /// Volume function and restricted volume of one valuation.
    Volfn {
        fanspec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 13)]
        samples: usize,
        /// Write sampled values as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Projective-space screen over the valuation battery.
    Screen {
        fanspec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: u32,
    },
    /// Run the built-in regression suite.
    Verify,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn check_radius(radius: u32) -> Result<()> {
    if radius == 0 {
        return Err(Error::Parse("radius must be at least 1".into()));
    }
    Ok(())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Analyze { fanspec, radius, out } => {
            check_radius(radius)?;
            let (spec, x) = load_fan(&fanspec)?;
            let text = analyze(&spec.name, &x, radius)?.to_json_string();
            match out {
                Some(path) => {
                    std::fs::write(&path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    eprintln!("wrote {}", path.display());
                }
                None => println!("{text}"),
            }
        }
        Command::Beta { fanspec, w, lattice_k } => {
            let (_, x) = load_fan(&fanspec)?;
            let v = ToricValuation::new(&x, parse_w(&w)?)?;
            let p = v.profile();
            let closed = v.beta_from_barycenter();
            if closed != p.beta {
                return Err(Error::Inconsistent(format!(
                    "beta = {} by integration but {} from the barycenter",
                    rat_string(&p.beta),
                    rat_string(&closed)
                )));
            }
            let mut out = json!({
                "w": lattice_json(&p.w),
                "primitive": p.primitive,
                "A": rat_string(&p.a),
                "tau": rat_string(&p.tau),
                "eps": rat_string(&p.eps),
                "S": rat_string(&p.s),
                "beta": rat_string(&p.beta),
                "beta_barycenter": rat_string(&closed),
                "degree": rat_string(&p.degree),
                "center_codim": p.center_codim,
            });
            if let Some(k) = lattice_k {
                out["S_lattice"] = json!({ "k": k, "value": rat_string(&lattice_s(&x, &v, k)?) });
            }
            print_json(&out);
        }
        Command::Alpha { fanspec } => {
            let (_, x) = load_fan(&fanspec)?;
            let a = alpha(&x);
            if !a.witness_is_valid(x.fan()) {
                return Err(Error::Inconsistent("alpha witness divisor is not valid".into()));
            }
            let gate = alpha_gate(&x);
            print_json(&json!({
                "alpha": rat_string(&a.alpha),
                "witness_ray_index": a.witness_ray_index,
                "witness_m": a.witness_m.to_strings(),
                "witness_divisor": a.witness_divisor.iter().map(rat_string).collect::<Vec<_>>(),
                "ray_thresholds": a.ray_thresholds.iter().map(rat_string).collect::<Vec<_>>(),
                "gate": gate.label(),
            }));
        }
        Command::Volfn { fanspec, w, samples, csv: csv_path } => {
            let (_, x) = load_fan(&fanspec)?;
            let w = parse_w(&w)?;
            let v = ToricValuation::new(&x, w.clone())?;
            let p = v.profile();
            print_json(&json!({
                "w": lattice_json(&p.w),
                "vol": piecewise_json(&p.vol_fn),
                "Q": piecewise_json(&p.q_fn),
            }));
            if let Some(path) = csv_path {
                csv::export_volume_csv(&x, &w, samples, &path)?;
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Screen { fanspec, radius } => {
            check_radius(radius)?;
            let (spec, x) = load_fan(&fanspec)?;
            let s = screen(&x, radius);
            let mut out = screen_json(&s);
            out["fan"] = json!(spec.name);
            out["radius"] = json!(radius);
            print_json(&out);
        }
        Command::Verify => {
            let outcome = suite::run_builtin_suite();
            print!("{}", outcome.log);
            return Ok(outcome.exit_code as u8);
        }
    }
    Ok(0)
}

/// Riemann sum `n!/k^(n+1) · Σ_{j>=1} h0(k, j)`, which tends to `S` as `k` grows.
fn lattice_s(x: &ToricFano, v: &ToricValuation, k: u64) -> Result<Rat> {
    let budget = oracle_budget();
    let mut total: u128 = 0;
    let mut j = 1;
    loop {
        let c = v.h0_count(k, j, budget)?;
        if c == 0 {
            break;
        }
        total += c;
        j += 1;
    }
    let kn1 = Rat::from_integer(k.into()).pow(x.dim() as i32 + 1);
    Ok(Rat::from_integer(total.into()) * factorial(x.dim()) / kn1)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}
