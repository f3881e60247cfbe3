use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hfk_concordance_cli::{
    cmd_alexander, cmd_dinv, cmd_obstruct, cmd_vk, render, CliError, Format, Method, OutputRecord,
};

const GRAMMAR: &str = "\
Knot expressions:
  T(p,q)          torus knot, also written `torus p q`
  C(p,q; expr)    (p,q) cable of expr, also `cable p q (expr)`
  Kn(n)           T(2,2n+1;2,4n-1), also `Kn n`
  k*expr          connected sum of k copies
  a # b           connected sum
  -T(2,5)         the mirror of T(2,5), the only mirror accepted

Exit status: 0 computed, 1 usage or parse error, 2 internal or oracle mismatch.";

#[derive(Parser)]
#[command(name = "hfkc", version, about = "Knot Floer concordance invariants of L-space knots", after_help = GRAMMAR)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Alexander polynomial, and the staircase when it has L-space form.
    Alexander {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// V_k of a connected sum of L-space knots, optionally with -T(2,5).
    Vk {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// k or a..b (inclusive); defaults to 0..genus.
        #[arg(long)]
        k: Option<String>,
        /// Use the full tensor product complex instead of the reduced path.
        #[arg(long, conflicts_with = "check_oracle")]
        brute: bool,
        /// Run both paths and report agreement.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Correction terms of p/q surgery on a knot (the unknot if omitted).
    Dinv {
        p: u64,
        q: u64,
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        /// A single label 0 <= i < p.
        #[arg(long, conflicts_with = "all_labels")]
        label: Option<u64>,
        /// Every label (the default).
        #[arg(long)]
        all_labels: bool,
    },
    /// The metabolizer obstruction for the family, n or a..b.
    Obstruct {
        #[arg(long, default_value = "1")]
        n: String,
    },
}

fn run(cli: Cli, args: Vec<String>) -> Result<OutputRecord, CliError> {
    let out = match &cli.cmd {
        Cmd::Alexander { expr } => cmd_alexander(expr)?,
        Cmd::Vk {
            expr,
            k,
            brute,
            check_oracle,
        } => {
            let method = match (brute, check_oracle) {
                (true, _) => Method::Tensor,
                (_, true) => Method::Both,
                _ => Method::Reduced,
            };
            cmd_vk(expr, k.as_deref(), method)?
        }
        Cmd::Dinv {
            p, q, expr, label, ..
        } => cmd_dinv(*p, *q, expr.as_deref(), *label)?,
        Cmd::Obstruct { n } => cmd_obstruct(n)?,
    };
    Ok(OutputRecord::new(args, out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    let args = std::env::args().skip(1).collect();
    let result = run(cli, args).and_then(|rec| Ok((render(&rec, format)?, rec.consistent())));
    match result {
        Ok((text, consistent)) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            if consistent {
                ExitCode::SUCCESS
            } else {
                eprintln!("hfkc: reduced and tensor paths disagree");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("hfkc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
