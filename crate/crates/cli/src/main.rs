//! Command-line front end for the `lsmult` library.

mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Outcome;

/// Tensor product and invariant multiplicities via Lakshmibai-Seshadri
/// chains, with renormalization inequality checks.
///
/// Weights are comma-separated fundamental-weight coordinates (`1,0,2`) or
/// epsilon coordinates prefixed with `eps:` (`eps:1,1/2`). Types are labels
/// such as `A2`, `B3`, `G2`, `F4`. Set LSMULT_THREADS to cap worker threads.
#[derive(Debug, Parser)]
#[command(name = "lsmult", version)]
struct Cli {
    /// Emit a JSON document instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for sweeps; overrides LSMULT_THREADS.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cartan matrix, symmetrizer and positive roots.
    Roots { r#type: String },
    /// Enumerate the LS chains of a dominant shape.
    Chains {
        r#type: String,
        #[arg(allow_hyphen_values = true)]
        shape: String,
    },
    /// Multiplicity of V(lambda) in V(mu) (x) V(nu): `mult A1 2 -- 1 1`.
    Mult {
        r#type: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(last = true, required = true, num_args = 2, value_names = ["MU", "NU"])]
        factors: Vec<String>,
        /// Cross-check against the character oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Decompose V(mu) (x) V(nu).
    Tensor {
        r#type: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        nu: String,
        /// Cross-check against the character oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Dimension of invariants in V(l1) (x) ... (x) V(ln).
    Invdim {
        r#type: String,
        #[arg(required = true, allow_hyphen_values = true)]
        weights: Vec<String>,
        /// Cross-check against folding with the character oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Built-in renormalizations.
    Renorm {
        #[command(subcommand)]
        action: RenormAction,
    },
    /// Check [l'_1..l'_n] <= [phi(l'_1)..phi(l'_n)] for a renormalization.
    Verify {
        /// Built-in such as `g2` or `so_to_sp:2`.
        name: String,
        /// A single tuple to check instead of a sweep.
        #[arg(allow_hyphen_values = true)]
        weights: Vec<String>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Check [l_1..l_n] <= [p l_1..p l_n].
    Frobenius {
        r#type: String,
        #[arg(long, short)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        weights: Vec<String>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Compare the tensor semigroups of Spin(2l+1) and Sp(2l).
    Saturation {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        bound: i64,
        #[arg(long)]
        oracle: bool,
    },
    /// Run the acceptance suite.
    Accept {
        /// Replace every sweep bound.
        #[arg(long)]
        bound: Option<i64>,
        /// Comma-separated criterion ids to run.
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<u8>>,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Subcommand)]
enum RenormAction {
    /// List built-in renormalizations and their parameter syntax.
    List,
    /// Run every structural check on a built-in.
    Check { name: String },
    /// Image of a dominant weight.
    Map {
        name: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
}

#[derive(Debug, Clone, clap::Args)]
struct SweepArgs {
    /// Sweep over dominant weights with coordinates at most this bound.
    #[arg(long, default_value_t = 1)]
    bound: i64,
    /// Tuple length of the sweep.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Compute with the character oracle instead of chains.
    #[arg(long)]
    oracle: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match commands::dispatch(&cli.command) {
        Ok(outcome) => emit(&cli, &outcome),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input() { 1 } else { 2 })
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), String> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("LSMULT_THREADS") {
            Ok(v) => Some(v.parse().map_err(|_| format!("LSMULT_THREADS must be a positive integer, got `{v}`"))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err("thread count must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn emit(cli: &Cli, outcome: &Outcome) -> ExitCode {
    let text = if cli.json {
        let mut doc = serde_json::json!({ "schema": 1, "command": outcome.command });
        doc.as_object_mut().expect("object").extend(outcome.json.as_object().cloned().unwrap_or_default());
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else {
        outcome.text.clone()
    };
    print!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(if outcome.violation { 2 } else { 0 })
}
