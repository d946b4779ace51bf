use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lineal::check::{check_barycentric, check_f, infer_f, infer_scalar, Derivation, Forgetter};
use lineal::harness::{run_suite, GenConfig, Suite};
use lineal::rewrite::{normalize, weight, Mode, RewriteError, DEFAULT_FUEL};
use lineal::source::{context_of, load, resugar_term, resugar_type};
use lineal::syntax::SourceFile;
use lineal::types::{type_equiv, Type};

const EXIT_TYPE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_FUEL: u8 = 3;
const EXIT_SUITE: u8 = 4;

#[derive(Parser)]
#[command(name = "lineal", version, about = "Typecheck, reduce and test terms of the linear-algebraic lambda calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Scalar,
    F,
    Bary,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Restricted,
    Unrestricted,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Restricted => Mode::Restricted,
            ModeArg::Unrestricted => Mode::Unrestricted,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Typecheck the main term of a file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "scalar")]
        system: System,
        /// Print the derivation in the export format.
        #[arg(long)]
        derivation: bool,
        /// Print the derivation as an indented tree.
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        prelude: bool,
    },
    /// Reduce the erased main term to normal form.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "restricted")]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        prelude: bool,
    },
    /// Print the weight of the main term.
    Weight {
        file: PathBuf,
        #[arg(long)]
        after_reduce: bool,
        #[arg(long, value_enum, default_value = "unrestricted")]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long)]
        prelude: bool,
    },
    /// Run a property suite and print its report.
    Suite {
        /// subject-reduction, sn, confluence, weight1, correspondence, uniqueness or no-cloning
        name: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CliResult = Result<(), (u8, String)>;

fn read(path: &PathBuf, prelude: bool) -> Result<SourceFile, (u8, String)> {
    let src = fs::read_to_string(path).map_err(|e| (EXIT_PARSE, format!("{}: {e}", path.display())))?;
    load(&src, prelude).map_err(|e| (EXIT_PARSE, format!("{}:{e}", path.display())))
}

fn type_err(e: impl std::fmt::Display) -> (u8, String) {
    (EXIT_TYPE, e.to_string())
}

fn run(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::Check { file, system, derivation, tree, prelude } => {
            let file = read(&file, prelude)?;
            check(&file, system, derivation, tree)
        }
        Cmd::Reduce { file, mode, fuel, trace, prelude } => {
            let file = read(&file, prelude)?;
            reduce(&file, mode.into(), fuel, trace)
        }
        Cmd::Weight { file, after_reduce, mode, fuel, prelude } => {
            let file = read(&file, prelude)?;
            let mut t = file.main.erase();
            if after_reduce {
                t = normalize(&t, mode.into(), fuel).map_err(fuel_err)?.term;
            }
            println!("{}", weight(&t));
            Ok(())
        }
        Cmd::Suite { name, seed, cases, max_size, mode } => {
            let mut cfg = GenConfig::with_seed(seed);
            if let Some(n) = max_size {
                cfg.max_term_size = n;
            }
            if let Some(m) = mode {
                cfg.mode = m.into();
            }
            let report = run_suite(name, &cfg, cases);
            print!("{}", report.render());
            if report.failures() > 0 {
                return Err((EXIT_SUITE, format!("{} of {} cases failed", report.failures(), report.cases.len())));
            }
            Ok(())
        }
    }
}

fn print_derivation(d: &Derivation, export: bool, tree: bool) {
    if export {
        print!("{}", d.export());
    }
    if tree {
        print!("{}", d.pretty());
    }
}

fn check(file: &SourceFile, system: System, export: bool, tree: bool) -> CliResult {
    let ctx = context_of(file).map_err(type_err)?;
    let show = |ty: &Type| resugar_type(ty, &file.scope).to_string();
    match system {
        System::Scalar => {
            let (c, d) = infer_scalar(&ctx, &file.main).map_err(type_err)?;
            let ty = c.to_type();
            ascribe(file, &ty, &show)?;
            println!("OK : {}", show(&ty));
            print_derivation(&d, export, tree);
        }
        System::Bary => {
            let (ok, c, d) = check_barycentric(&ctx, &file.main).map_err(type_err)?;
            let ty = c.to_type();
            if !ok {
                return Err((EXIT_TYPE, format!("not barycentric: type {} is not a classical type with scalar 1", show(&ty))));
            }
            ascribe(file, &ty, &show)?;
            println!("OK : {}", show(&ty));
            print_derivation(&d, export, tree);
        }
        System::F => {
            let mut fg = Forgetter::default();
            let fctx = ctx.map(|ty| fg.forget(ty)).map_err(type_err)?;
            let t = fg.forget_term(&file.main);
            let ty = match &file.ascription {
                Some(a) => {
                    let a = fg.forget(a);
                    check_f(&fctx, &t, &a).map_err(type_err)?;
                    a
                }
                None => infer_f(&fctx, &t).map_err(type_err)?,
            };
            println!("OK : {}", show(&ty));
        }
    }
    Ok(())
}

fn ascribe(file: &SourceFile, ty: &Type, show: &dyn Fn(&Type) -> String) -> CliResult {
    match &file.ascription {
        Some(a) if !type_equiv(a, ty) => {
            Err((EXIT_TYPE, format!("type mismatch: inferred {} but the file declares {}", show(ty), show(a))))
        }
        _ => Ok(()),
    }
}

fn fuel_err(e: RewriteError) -> (u8, String) {
    (EXIT_FUEL, e.to_string())
}

fn reduce(file: &SourceFile, mode: Mode, fuel: usize, trace: bool) -> CliResult {
    let t = file.main.erase();
    let show = |t: &lineal::Term| resugar_term(t, &file.scope).to_string();
    match normalize(&t, mode, fuel) {
        Ok(n) => {
            if trace {
                print!("{}", n.trace.render(show));
            }
            println!("{}", show(&n.term));
            Ok(())
        }
        Err(RewriteError::FuelExhausted { fuel, last, trace: partial }) => {
            if let (true, Some(tr)) = (trace, partial) {
                print!("{}", tr.render(show));
            }
            Err((EXIT_FUEL, format!("FuelExhausted: no normal form within {fuel} steps; last term {}", show(&last))))
        }
        Err(e) => Err(fuel_err(e)),
    }
}
