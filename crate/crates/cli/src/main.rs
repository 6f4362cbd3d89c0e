use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ColorChoice, Parser, Subcommand, ValueEnum};
use modspec::algebra::{
    and_dmts, and_naa_with_limit, compose_naa, or_dmts, or_naa, prune_dmts, prune_naa, reach_dmts, reach_naa,
    single_initial,
};
use modspec::oracle::{EnumBound, Universe};
use modspec::quotient::{quotient_mts, quotient_naa, QuotientOptions};
use modspec::refine::{hml_check, refine_dmts, refine_naa, Counterexample, Verdict};
use modspec::translate::{bh, db_with_limit, MAX_SUBSET_BASE};
use modspec::{export_dot, parse_with, serialize, Dmts, Lts, Naa, Spec, SupportMode};

#[derive(Parser)]
#[command(name = "modspec", version, about = "Check, translate and combine modal specifications", color = ColorChoice::Never)]
struct Cli {
    /// Add may-transitions missing under must-transitions instead of rejecting the input.
    #[arg(long, global = true)]
    repair: bool,
    /// Largest may-successor set whose subsets are enumerated when converting to
    /// acceptance automata, and largest candidate set in acceptance conjunction.
    #[arg(long, global = true, default_value_t = MAX_SUBSET_BASE)]
    max_subsets: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and report its kind and size.
    Validate { file: PathBuf },
    /// Convert a specification to another formalism.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        file: PathBuf,
    },
    /// Decide modal refinement of the first specification by the second.
    Refine { left: PathBuf, right: PathBuf },
    /// Decide whether an LTS implements a specification.
    Implements { implementation: PathBuf, spec: PathBuf },
    /// Model-check an LTS against an HML declaration (other kinds are translated).
    Mc { implementation: PathBuf, formula: PathBuf },
    /// Conjunction.
    And { left: PathBuf, right: PathBuf },
    /// Disjunction.
    Or { left: PathBuf, right: PathBuf },
    /// Parallel composition.
    Compose { left: PathBuf, right: PathBuf },
    /// The quotient of the first specification by the second.
    Quotient {
        dividend: PathBuf,
        divisor: PathBuf,
        /// Keep inconsistent and unreachable states.
        #[arg(long)]
        no_prune: bool,
        /// Largest number of possible transitions of one quotient state.
        #[arg(long, default_value_t = QuotientOptions::default().max_postran)]
        max_postran: usize,
    },
    /// Remove inconsistent states.
    Prune { file: PathBuf },
    /// Merge the initial states of an acceptance automaton into one.
    SingleInitial { file: PathBuf },
    /// Compare implementation sets up to a number of states.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        max_states: usize,
        /// Allow bounds beyond the default enumeration limits.
        #[arg(long)]
        i_know_this_is_exponential: bool,
    },
    /// List the implementations with at most the given number of states.
    Impls {
        file: PathBuf,
        #[arg(long)]
        max_states: usize,
        /// Allow bounds beyond the default enumeration limits.
        #[arg(long)]
        i_know_this_is_exponential: bool,
    },
    /// Render a specification as a Graphviz graph.
    Dot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Naa,
    Dmts,
    Hml,
}

/// A failure that maps to exit code 2.
struct Fatal(String);

impl From<modspec::Error> for Fatal {
    fn from(e: modspec::Error) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<bool, Fatal>;

struct Ctx {
    mode: SupportMode,
    max_subsets: usize,
    out: String,
    verdict: Option<String>,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<Spec, Fatal> {
        let text = std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
        parse_with(&text, self.mode).map_err(|e| Fatal(format!("{}: {e}", path.display())))
    }

    fn load_lts(&self, path: &Path) -> Result<Lts, Fatal> {
        match self.load(path)? {
            Spec::Lts(l) => Ok(l),
            other => Err(Fatal(format!(
                "{}: expected an lts document, found {}",
                path.display(),
                other.kind().keyword()
            ))),
        }
    }

    fn naa(&self, spec: &Spec) -> Result<Naa, Fatal> {
        Ok(match spec {
            Spec::Mts(d) | Spec::Dmts(d) => db_with_limit(d, self.max_subsets)?,
            other => other.to_naa()?,
        })
    }

    fn emit(&mut self, spec: &Spec) {
        self.out.push_str(&serialize(spec));
    }

    fn comment(&mut self, text: &str) {
        for line in text.lines() {
            self.out.push_str("// ");
            self.out.push_str(line);
            self.out.push('\n');
        }
    }
}

fn is_transition_system(s: &Spec) -> bool {
    matches!(s, Spec::Lts(_) | Spec::Mts(_) | Spec::Dmts(_))
}

/// Emits the left side, restricted to the offending initial state, with the
/// removal trace as comments.
fn report_refinement(ctx: &mut Ctx, verdict: Verdict, left: Side, right_names: &[String]) -> bool {
    let cex: Counterexample = match verdict {
        Verdict::Refines(_) => return true,
        Verdict::Fails(c) => c,
    };
    let (alphabet, names) = match &left {
        Side::Dmts(d) => (d.alphabet().clone(), d.states().to_vec()),
        Side::Naa(n) => (n.alphabet().clone(), n.states().to_vec()),
    };
    ctx.comment(&cex.describe(&alphabet, &names, right_names));
    let witness = match left {
        Side::Dmts(d) => Spec::Dmts(reach_dmts(&d.with_initials(&[cex.left_initial]).expect("valid initial"))),
        Side::Naa(n) => Spec::Naa(reach_naa(&n.with_initials(&[cex.left_initial]).expect("valid initial"))),
    };
    ctx.emit(&witness);
    false
}

enum Side {
    Dmts(Dmts),
    Naa(Naa),
}

fn refine_specs(ctx: &mut Ctx, a: &Spec, b: &Spec) -> Outcome {
    let holds = if is_transition_system(a) && is_transition_system(b) {
        let (l, r) = (a.to_dmts()?, b.to_dmts()?);
        let v = refine_dmts(&l, &r)?;
        report_refinement(ctx, v, Side::Dmts(l), r.states())
    } else {
        let (l, r) = (ctx.naa(a)?, ctx.naa(b)?);
        let v = refine_naa(&l, &r)?;
        report_refinement(ctx, v, Side::Naa(l), r.states())
    };
    ctx.verdict = Some(if holds { "refines" } else { "does not refine" }.into());
    Ok(holds)
}

fn universe(spec: &Spec, max_states: usize, large: bool) -> Result<Universe, Fatal> {
    let mut bound = EnumBound::new(max_states, spec.alphabet().clone());
    if large {
        bound = bound.allowing_large();
    }
    Ok(Universe::new(bound)?)
}

fn run(cli: Cli, ctx: &mut Ctx) -> Outcome {
    match cli.command {
        Command::Validate { file } => {
            let spec = ctx.load(&file)?;
            let (states, initials) = match &spec {
                Spec::Lts(l) => (l.num_states(), 1),
                Spec::Mts(d) | Spec::Dmts(d) => (d.num_states(), d.initials().len()),
                Spec::Naa(n) => (n.num_states(), n.initials().len()),
                Spec::Hml(h) => (h.vars().len(), h.initials().len()),
            };
            ctx.comment(&format!(
                "valid {} (states: {states}, initial: {initials})",
                spec.kind().keyword()
            ));
            if ctx.mode == SupportMode::Repair {
                ctx.emit(&spec);
            }
            Ok(true)
        }
        Command::Translate { to, file } => {
            let spec = ctx.load(&file)?;
            let out = match to {
                Target::Naa => Spec::Naa(ctx.naa(&spec)?),
                Target::Dmts => Spec::Dmts(spec.to_dmts()?),
                Target::Hml => match &spec {
                    Spec::Hml(h) => Spec::Hml(h.clone()),
                    other => Spec::Hml(bh(&ctx.naa(other)?)),
                },
            };
            ctx.emit(&out);
            Ok(true)
        }
        Command::Refine { left, right } => {
            let (a, b) = (ctx.load(&left)?, ctx.load(&right)?);
            refine_specs(ctx, &a, &b)
        }
        Command::Implements { implementation, spec } => {
            let imp = ctx.load_lts(&implementation)?;
            let spec = ctx.load(&spec)?;
            match &spec {
                Spec::Hml(h) => mc(ctx, &imp, h),
                other => refine_specs(ctx, &Spec::Lts(imp), other),
            }
        }
        Command::Mc { implementation, formula } => {
            let imp = ctx.load_lts(&implementation)?;
            let decl = ctx.load(&formula)?.to_hml()?;
            mc(ctx, &imp, &decl)
        }
        Command::And { left, right } => {
            let (a, b) = (ctx.load(&left)?, ctx.load(&right)?);
            let out = if is_transition_system(&a) && is_transition_system(&b) {
                Spec::Dmts(and_dmts(&a.to_dmts()?, &b.to_dmts()?)?)
            } else {
                Spec::Naa(and_naa_with_limit(&ctx.naa(&a)?, &ctx.naa(&b)?, ctx.max_subsets)?)
            };
            ctx.emit(&out);
            Ok(true)
        }
        Command::Or { left, right } => {
            let (a, b) = (ctx.load(&left)?, ctx.load(&right)?);
            let out = if is_transition_system(&a) && is_transition_system(&b) {
                Spec::Dmts(or_dmts(&a.to_dmts()?, &b.to_dmts()?)?)
            } else {
                Spec::Naa(or_naa(&ctx.naa(&a)?, &ctx.naa(&b)?)?)
            };
            ctx.emit(&out);
            Ok(true)
        }
        Command::Compose { left, right } => {
            let (a, b) = (ctx.load(&left)?, ctx.load(&right)?);
            let out = compose_naa(&ctx.naa(&a)?, &ctx.naa(&b)?)?;
            ctx.emit(&Spec::Naa(out));
            Ok(true)
        }
        Command::Quotient { dividend, divisor, no_prune, max_postran } => {
            let (s, t) = (ctx.load(&dividend)?, ctx.load(&divisor)?);
            let opts = QuotientOptions {
                max_postran,
                prune: !no_prune,
                ..QuotientOptions::default()
            };
            let mts_pair = is_transition_system(&s) && is_transition_system(&t);
            let (sd, td) = (s.to_dmts()?, t.to_dmts()?);
            let out = match (mts_pair, sd.as_mts(), td.as_mts()) {
                (true, Ok(sv), Ok(tv)) => Spec::Dmts(quotient_mts(sv, tv, &opts)?),
                _ => Spec::Naa(quotient_naa(&ctx.naa(&s)?, &ctx.naa(&t)?, &opts)?),
            };
            ctx.emit(&out);
            Ok(true)
        }
        Command::Prune { file } => {
            let out = match ctx.load(&file)? {
                Spec::Mts(d) | Spec::Dmts(d) => Spec::Dmts(prune_dmts(&d)),
                Spec::Lts(l) => Spec::Lts(l),
                other => Spec::Naa(prune_naa(&ctx.naa(&other)?)),
            };
            ctx.emit(&out);
            Ok(true)
        }
        Command::SingleInitial { file } => {
            let spec = ctx.load(&file)?;
            let out = single_initial(&ctx.naa(&spec)?);
            ctx.emit(&Spec::Naa(out));
            Ok(true)
        }
        Command::Equiv { left, right, max_states, i_know_this_is_exponential } => {
            let (a, b) = (ctx.load(&left)?, ctx.load(&right)?);
            a.alphabet().ensure_same(b.alphabet())?;
            let u = universe(&a, max_states, i_know_this_is_exponential)?;
            match u.first_difference(&a, &b)? {
                None => {
                    ctx.verdict = Some("equivalent within the bound".into());
                    ctx.comment(&format!(
                        "same implementations among {} systems with at most {max_states} states",
                        u.len()
                    ));
                    Ok(true)
                }
                Some(l) => {
                    let l = l.clone();
                    let (yes, no) = if a.implemented_by(&l)? { (&left, &right) } else { (&right, &left) };
                    ctx.comment(&format!("implements {} but not {}", yes.display(), no.display()));
                    ctx.emit(&Spec::Lts(l));
                    ctx.verdict = Some("implementation sets differ".into());
                    Ok(false)
                }
            }
        }
        Command::Impls { file, max_states, i_know_this_is_exponential } => {
            let spec = ctx.load(&file)?;
            let u = universe(&spec, max_states, i_know_this_is_exponential)?;
            let members = u.membership(&spec)?;
            let found: Vec<&Lts> = u.systems().iter().zip(&members).filter(|(_, &m)| m).map(|(l, _)| l).collect();
            ctx.comment(&format!(
                "{} of {} systems with at most {max_states} states",
                found.len(),
                u.len()
            ));
            for l in found {
                ctx.out.push('\n');
                ctx.emit(&Spec::Lts(l.clone()));
            }
            Ok(true)
        }
        Command::Dot { file } => {
            let spec = ctx.load(&file)?;
            ctx.out.push_str(&export_dot(&spec));
            Ok(true)
        }
    }
}

fn mc(ctx: &mut Ctx, imp: &Lts, decl: &modspec::HmlDecl) -> Outcome {
    let outcome = hml_check(imp, decl)?;
    if outcome.holds {
        ctx.verdict = Some("holds".into());
        return Ok(true);
    }
    ctx.verdict = Some("does not hold".into());
    ctx.comment("no initial variable holds in the initial state");
    ctx.emit(&Spec::Lts(imp.clone()));
    Ok(false)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        mode: if cli.repair { SupportMode::Repair } else { SupportMode::Strict },
        max_subsets: cli.max_subsets,
        out: String::new(),
        verdict: None,
    };
    let result = run(cli, &mut ctx);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(ctx.out.as_bytes());
    let _ = stdout.flush();
    let color = std::io::stderr().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    let paint = |code: &str, text: &str| {
        if color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    };
    match result {
        Ok(true) => {
            if let Some(v) = ctx.verdict.take() {
                eprintln!("{}", paint("32", &v));
            }
            ExitCode::SUCCESS
        }
        Ok(false) => {
            eprintln!("{}", paint("31", ctx.verdict.as_deref().unwrap_or("fails")));
            ExitCode::from(1)
        }
        Err(Fatal(msg)) => {
            eprintln!("{}: {msg}", paint("31", "error"));
            ExitCode::from(2)
        }
    }
}
