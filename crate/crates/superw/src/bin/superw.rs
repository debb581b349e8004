use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use superw::brst::Flavor;
use superw::cli::{evaluate, verify_paper, AlgebraSource, CliError, Evaluation, ExprError, RunConfig};

#[derive(Parser)]
#[command(name = "superw", version, about = "Exact checks for W-algebras, their SUSY versions and finite counterparts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Built-in algebra: osp12, sl21 or all.
    #[arg(long, global = true, conflicts_with = "spec_file")]
    algebra: Option<String>,
    /// Algebra specification file.
    #[arg(long, global = true)]
    spec_file: Option<PathBuf>,
    #[arg(long, global = true, value_parser = ["susy", "nonsusy"])]
    flavor: Option<String>,
    /// Twice the largest conformal weight examined.
    #[arg(long, global = true, default_value_t = 6)]
    cutoff: i64,
    /// Levels at which symbolic identities are also checked numerically.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,2,5")]
    sample_k: Vec<i64>,
    #[arg(long, global = true)]
    json: bool,
    /// Break one axiom of the algebra before running: jacobi, skew or form.
    #[arg(long, global = true)]
    corrupt: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every acceptance check.
    VerifyPaper,
    /// Evaluate an expression.
    Compute { expr: String },
    /// A bracket expression, or the bracket of two fields.
    Bracket {
        a: String,
        b: Option<String>,
    },
    /// The Miura image of a field.
    Miura { x: String },
}

impl Opts {
    fn config(&self) -> Result<RunConfig, CliError> {
        let algebra = match (&self.spec_file, self.algebra.as_deref()) {
            (Some(p), _) => AlgebraSource::File(p.clone()),
            (None, None | Some("all")) => AlgebraSource::All,
            (None, Some(n)) => AlgebraSource::Builtin(n.to_string()),
        };
        let flavor = self.flavor.as_deref().map(|f| f.parse::<Flavor>()).transpose().map_err(|e| CliError::Usage(e.to_string()))?;
        let cfg = RunConfig {
            algebra,
            flavor,
            two_cutoff: self.cutoff,
            sample_k: self.sample_k.clone(),
            json: self.json,
            corrupt: self.corrupt.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn report_expr(cfg: &RunConfig, text: &str, res: Result<Evaluation, ExprError>) -> ExitCode {
    match res {
        Ok(ev) if cfg.json => {
            println!("{}", serde_json::to_string_pretty(&ev).expect("serializable"));
            ExitCode::SUCCESS
        }
        Ok(ev) => {
            println!("{}", ev.result);
            ExitCode::SUCCESS
        }
        Err(e) if e.is_setup() => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            eprintln!("  {}", text);
            eprintln!("  {}^", " ".repeat(e.pos.min(text.len())));
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match cli.opts.config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    match cli.command {
        Command::VerifyPaper => match verify_paper(&cfg) {
            Ok(rep) => {
                if cfg.json {
                    println!("{}", serde_json::to_string_pretty(&rep).expect("serializable"));
                } else {
                    print!("{}", rep.text());
                }
                if rep.pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {}", e);
                ExitCode::from(2)
            }
        },
        Command::Compute { expr } => report_expr(&cfg, &expr, evaluate(&cfg, &expr)),
        Command::Bracket { a, b: None } if !a.trim_start().starts_with("lambda(") && !a.trim_start().starts_with("Lambda(") => {
            eprintln!("error: expected lambda(A, B), Lambda(A, B) or two fields");
            ExitCode::from(2)
        }
        Command::Bracket { a, b: None } => report_expr(&cfg, &a, evaluate(&cfg, &a)),
        Command::Bracket { a, b: Some(b) } => {
            let susy = format!("Lambda({}, {})", a, b);
            let plain = format!("lambda({}, {})", a, b);
            match cfg.flavor {
                Some(Flavor::Susy) => report_expr(&cfg, &susy, evaluate(&cfg, &susy)),
                Some(Flavor::NonSusy) => report_expr(&cfg, &plain, evaluate(&cfg, &plain)),
                None => match evaluate(&RunConfig { flavor: Some(Flavor::Susy), ..cfg.clone() }, &susy) {
                    Err(e) if !e.is_setup() => {
                        let res = evaluate(&RunConfig { flavor: Some(Flavor::NonSusy), ..cfg.clone() }, &plain);
                        match res {
                            Ok(_) => report_expr(&cfg, &plain, res),
                            Err(_) => report_expr(&cfg, &susy, Err(e)),
                        }
                    }
                    res => report_expr(&cfg, &susy, res),
                },
            }
        }
        Command::Miura { x } => {
            let text = format!("miura({})", x);
            report_expr(&cfg, &text, evaluate(&cfg, &text))
        }
    }
}
