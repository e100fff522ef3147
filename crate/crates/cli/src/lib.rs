//! The `improv` command line: counting, feasibility, synthesis, verification,
//! factor oracles and the SAT-backed symbolic engine.

pub mod error;
pub mod input;

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use improv_core::factor_oracle::{window_admissibility_dfa, FactorOracle, WindowSpec};
use improv_core::improvise::{
    feasibility, synthesize, verify_improviser, Admissibility, Audit, CIInstance, FeasibilityVerdict,
    Improviser, Synthesis, SynthesisOptions,
};
use improv_core::json::automaton_to_string;
use improv_core::rational::{parse_lenient, to_f64};
use improv_core::{count_words, Alphabet, Automaton, Dfa, ListSampler, Sampler, Symbol, Word, DEFAULT_DETERMINIZE_CAP};
use improv_sat::{ExternalSolver, SolverBackend};
use improv_symbolic::scheme::DEFAULT_DIAMETER_CAP;
use improv_symbolic::{approx_count, diameter, synthesize_symbolic, DiameterMethod, SymbolicOptions};
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

pub use error::CliError;
use input::{load_instance, load_side, Instance, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(name = "improv", version, about = "Control improvisation over finite automata")]
pub struct Cli {
    /// Seed for the ChaCha8 generator behind every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `internal`, or the path of a DIMACS solver executable.
    #[arg(long, global = true, default_value = "internal")]
    pub solver: String,
    /// Conflicts the internal solver may spend per query.
    #[arg(long, global = true)]
    pub conflict_limit: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Largest subset construction allowed when an NFA must be determinized.
    #[arg(long, global = true, default_value_t = DEFAULT_DETERMINIZE_CAP)]
    pub determinize_cap: usize,
    /// Longest path length explored when searching for a symbolic diameter.
    #[arg(long, global = true, default_value_t = DEFAULT_DIAMETER_CAP)]
    pub diameter_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct SymbolicArgs {
    /// Use the SAT-backed approximate scheme.
    #[arg(long)]
    pub symbolic: bool,
    /// Counting tolerance; estimates are within a factor 1 + tau.
    #[arg(long, default_value = "7")]
    pub tau: String,
    /// Allowed failure probability of the estimates.
    #[arg(long, default_value_t = 0.2)]
    pub delta: f64,
    /// Known bound on path lengths; skips the diameter search.
    #[arg(long)]
    pub diameter_bound: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of words an automaton accepts, or `inf`.
    Count { file: PathBuf },
    /// Decide feasibility: verdict, |I|, |A|, 1/rho and (1-eps)/rho.
    Feasible { instance: PathBuf },
    /// Synthesize an improviser and print words drawn from it.
    Improvise {
        instance: PathBuf,
        #[arg(short, long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        symbolic: SymbolicArgs,
    },
    /// Synthesize an improviser and audit it analytically and by sampling.
    Verify {
        instance: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        draws: usize,
        /// Audit a point mass on one drawn word instead of the improviser.
        #[arg(long)]
        negative_control: bool,
        #[command(flatten)]
        symbolic: SymbolicArgs,
    },
    /// Factor oracle of a reference word, or its window-admissibility DFA.
    Oracle {
        /// Space-separated labels, or one character per symbol.
        reference: String,
        /// Comma-separated alphabet; defaults to the sorted labels of the reference.
        #[arg(long)]
        alphabet: Option<String>,
        /// Window length and bounds on non-direct transitions.
        #[arg(long, num_args = 3, value_names = ["K", "L", "H"])]
        window: Option<Vec<u32>>,
    },
    /// Approximate count of a symbolic (or encoded explicit) automaton.
    SymbolicCount {
        file: PathBuf,
        #[arg(long, default_value = "0.5")]
        tau: String,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long)]
        diameter_bound: Option<usize>,
    },
    /// Longest simple accepting path of a symbolic automaton.
    SymbolicDiameter { file: PathBuf },
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn backend(&self) -> SolverBackend {
        match self.cli.solver.as_str() {
            "internal" => SolverBackend::Internal {
                conflict_limit: self.cli.conflict_limit,
            },
            path => SolverBackend::External(ExternalSolver::new(path)),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cli.seed)
    }

    fn json(&self) -> bool {
        self.cli.format == OutputFormat::JsonLines
    }

    fn line(&mut self, text: impl AsRef<str>) -> Result<(), CliError> {
        writeln!(self.out, "{}", text.as_ref())?;
        Ok(())
    }

    fn record(&mut self, value: serde_json::Value) -> Result<(), CliError> {
        self.line(value.to_string())
    }

    fn warn(&mut self, text: impl AsRef<str>) -> Result<(), CliError> {
        writeln!(self.err, "warning: {}", text.as_ref())?;
        Ok(())
    }

    fn symbolic_options(&self, bound: Option<usize>) -> SymbolicOptions {
        SymbolicOptions {
            backend: self.backend(),
            diameter_cap: self.cli.diameter_cap,
            diameter_bound: bound,
        }
    }
}

/// Compact labels when every label is one character, else space-separated.
pub fn show_word(alphabet: &Alphabet, word: &[Symbol]) -> String {
    if !word.is_empty() && alphabet.all_single_chars() {
        alphabet.format_compact(word)
    } else {
        alphabet.format_word(word)
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut ctx = Ctx { cli, out, err };
    match &cli.command {
        Command::Count { file } => cmd_count(&mut ctx, file),
        Command::Feasible { instance } => cmd_feasible(&mut ctx, instance),
        Command::Improvise { instance, n, symbolic } => cmd_improvise(&mut ctx, instance, *n, symbolic),
        Command::Verify {
            instance,
            draws,
            negative_control,
            symbolic,
        } => cmd_verify(&mut ctx, instance, *draws, *negative_control, symbolic),
        Command::Oracle {
            reference,
            alphabet,
            window,
        } => cmd_oracle(&mut ctx, reference, alphabet.as_deref(), window.as_deref()),
        Command::SymbolicCount {
            file,
            tau,
            delta,
            diameter_bound,
        } => cmd_symbolic_count(&mut ctx, file, tau, *delta, *diameter_bound),
        Command::SymbolicDiameter { file } => cmd_symbolic_diameter(&mut ctx, file),
    }
}

fn explicit_dfa(ctx: &Ctx, side: &Side, what: &str) -> Result<Dfa, CliError> {
    let a = side.explicit().ok_or_else(|| {
        CliError::Usage(format!("{what} is a symbolic automaton; use the symbolic commands or --symbolic"))
    })?;
    Ok(a.to_dfa(ctx.cli.determinize_cap)?.into_owned())
}

fn cmd_count(ctx: &mut Ctx, file: &PathBuf) -> Result<(), CliError> {
    let side = load_side(file)?;
    let count = count_words(&explicit_dfa(ctx, &side, "the automaton")?);
    if ctx.json() {
        ctx.record(json!({ "count": count.to_string() }))
    } else {
        ctx.line(count.to_string())
    }
}

fn verdict_line(ctx: &mut Ctx, v: &FeasibilityVerdict, estimated: bool) -> Result<(), CliError> {
    let word = if v.feasible { "feasible" } else { "infeasible" };
    if ctx.json() {
        ctx.record(json!({
            "verdict": word,
            "size_i": v.size_i.to_string(),
            "size_a": v.size_a.to_string(),
            "min_improvisations": v.min_improvisations.to_string(),
            "min_admissible": v.min_admissible.to_string(),
            "estimated": estimated,
        }))
    } else {
        ctx.line(format!(
            "{word} {} {} {} {}",
            v.size_i, v.size_a, v.min_improvisations, v.min_admissible
        ))
    }
}

fn explicit_instance(inst: &Instance) -> Result<CIInstance, CliError> {
    let (Side::Explicit(improv), Side::Explicit(admiss)) = (&inst.improv, &inst.admiss) else {
        return Err(CliError::Usage("instance contains a symbolic automaton; pass --symbolic".into()));
    };
    Ok(CIInstance::new(
        improv.clone(),
        Admissibility::Automaton(admiss.clone()),
        inst.epsilon.clone(),
        inst.rho.clone(),
    )?)
}

fn cmd_feasible(ctx: &mut Ctx, path: &PathBuf) -> Result<(), CliError> {
    let inst = load_instance(path)?;
    let improv = explicit_dfa(ctx, &inst.improv, "improv")?;
    let admiss = explicit_dfa(ctx, &inst.admiss, "admiss")?;
    let product = Dfa::product(&improv, &admiss)?;
    let verdict = feasibility(count_words(&improv), count_words(&product), &inst.epsilon, &inst.rho)?;
    verdict_line(ctx, &verdict, false)?;
    if verdict.feasible {
        Ok(())
    } else {
        Err(CliError::Infeasible)
    }
}

/// Explicit scheme unless `--symbolic` is given or a side is symbolic.
fn synthesize_for(ctx: &mut Ctx, inst: &Instance, args: &SymbolicArgs) -> Result<Improviser, CliError> {
    let synthesis = if args.symbolic || inst.is_symbolic() {
        let tau = parse_lenient(&args.tau)?;
        let options = ctx.symbolic_options(args.diameter_bound);
        let mut rng = ctx.rng();
        let result = synthesize_symbolic(
            &inst.improv.to_symbolic()?,
            &inst.admiss.to_symbolic()?,
            &inst.epsilon,
            &inst.rho,
            &tau,
            args.delta,
            &options,
            &mut rng,
        )?;
        for w in &result.warnings {
            ctx.warn(w)?;
        }
        if let Synthesis::Infeasible(v) = &result.synthesis {
            verdict_line(ctx, v, true)?;
            return Err(CliError::Infeasible);
        }
        result.synthesis
    } else {
        let instance = explicit_instance(inst)?;
        let options = SynthesisOptions {
            determinize_cap: ctx.cli.determinize_cap,
            ..SynthesisOptions::default()
        };
        synthesize(&instance, &options)?
    };
    match synthesis {
        Synthesis::Improviser(imp) => Ok(imp),
        Synthesis::Infeasible(v) => {
            verdict_line(ctx, &v, false)?;
            Err(CliError::Infeasible)
        }
        Synthesis::NotApplicable(why) => Err(CliError::NotApplicable(why)),
        Synthesis::BudgetExhausted {
            language_exhausted: true,
            ..
        } => Err(CliError::Infeasible),
        Synthesis::BudgetExhausted { examined, .. } => Err(CliError::Resource(format!(
            "enumeration budget exhausted after {examined} words"
        ))),
    }
}

fn cmd_improvise(ctx: &mut Ctx, path: &PathBuf, n: usize, args: &SymbolicArgs) -> Result<(), CliError> {
    let inst = load_instance(path)?;
    let imp = synthesize_for(ctx, &inst, args)?;
    let alphabet = inst.improv.alphabet().clone();
    let mut rng = ctx.rng();
    for _ in 0..n {
        let w = imp.draw(&mut rng)?;
        let shown = show_word(&alphabet, &w);
        if ctx.json() {
            ctx.record(json!({ "word": shown }))?;
        } else {
            ctx.line(shown)?;
        }
    }
    if ctx.json() {
        ctx.record(certificate_json(&imp))
    } else {
        writeln!(ctx.err, "{}", imp.certificate())?;
        Ok(())
    }
}

fn certificate_json(imp: &Improviser) -> serde_json::Value {
    let g = imp.guarantee();
    json!({
        "certificate": {
            "case": imp.case().to_string(),
            "epsilon": g.epsilon.to_string(),
            "rho": g.rho.to_string(),
            "weights": imp.weights().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "admissible_mass": imp.admissible_mass().to_string(),
        }
    })
}

/// Ground truth for audits, answered by whichever representation each side has.
struct SideAudit<'a> {
    inst: &'a Instance,
    backend: SolverBackend,
}

impl Audit for SideAudit<'_> {
    fn in_improvisations(&self, word: &[Symbol]) -> bool {
        self.inst.improv.accepts(word, &self.backend).unwrap_or(false)
    }

    fn admissible(&self, word: &[Symbol]) -> bool {
        self.in_improvisations(word) && self.inst.admiss.accepts(word, &self.backend).unwrap_or(false)
    }
}

fn cmd_verify(
    ctx: &mut Ctx,
    path: &PathBuf,
    draws: usize,
    negative_control: bool,
    args: &SymbolicArgs,
) -> Result<(), CliError> {
    let inst = load_instance(path)?;
    let mut imp = synthesize_for(ctx, &inst, args)?;
    let mut rng = ctx.rng();
    if negative_control {
        let word: Word = imp.draw(&mut rng)?;
        imp = Improviser::new(
            vec![(BigRational::one(), Arc::new(ListSampler::new(vec![word])?) as Arc<dyn Sampler>)],
            imp.guarantee().clone(),
            imp.case(),
            imp.admissible_mass().clone(),
        )?;
    }
    let audit = SideAudit {
        inst: &inst,
        backend: ctx.backend(),
    };
    let report = verify_improviser(&imp, &audit, &inst.epsilon, &inst.rho, draws, &mut rng)?;
    let (lo, hi) = report.wilson();
    let value = json!({
        "case": imp.case().to_string(),
        "certified_epsilon": imp.guarantee().epsilon.to_string(),
        "certified_rho": imp.guarantee().rho.to_string(),
        "epsilon": inst.epsilon.to_string(),
        "rho": inst.rho.to_string(),
        "max_prob": report.max_prob.to_string(),
        "max_prob_exact": report.max_prob_exact,
        "analytic_admissible_mass": report.analytic_admissible_mass.as_ref().map(ToString::to_string),
        "draws": report.draws,
        "admissible_draws": report.admissible_draws,
        "empirical_admissible": report.empirical_admissible(),
        "wilson_low": lo,
        "wilson_high": hi,
        "membership_violations": report.membership_violations,
        "support_violations": report.support_violations,
        "rho_ok": report.rho_ok(),
        "epsilon_ok": report.epsilon_ok(),
        "passed": report.passed(),
    });
    if ctx.json() {
        ctx.record(value)
    } else {
        ctx.line(serde_json::to_string_pretty(&value).unwrap())
    }
}

fn cmd_oracle(
    ctx: &mut Ctx,
    reference: &str,
    alphabet: Option<&str>,
    window: Option<&[u32]>,
) -> Result<(), CliError> {
    let labels: Vec<String> = if reference.contains(char::is_whitespace) {
        reference.split_whitespace().map(String::from).collect()
    } else {
        reference.chars().map(String::from).collect()
    };
    if labels.is_empty() {
        return Err(CliError::Usage("the reference word must not be empty".into()));
    }
    let alphabet = match alphabet {
        Some(list) => Alphabet::new(list.split(',').map(|s| s.trim().to_string()))?,
        None => {
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.dedup();
            Alphabet::new(sorted)?
        }
    };
    let word: Word = labels.iter().map(|l| alphabet.symbol(l)).collect::<Result<_, _>>()?;
    let oracle = FactorOracle::build(alphabet, &word)?;
    let automaton: Automaton = match window {
        Some(&[k, l, h]) => window_admissibility_dfa(&oracle, WindowSpec::new(k, l, h)?).into(),
        Some(_) => return Err(CliError::Usage("--window takes K L H".into())),
        None => oracle.as_nfa(true).into(),
    };
    let text = automaton_to_string(&automaton);
    if ctx.json() {
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        ctx.record(value)
    } else {
        ctx.line(text)
    }
}

fn cmd_symbolic_count(
    ctx: &mut Ctx,
    file: &PathBuf,
    tau: &str,
    delta: f64,
    bound: Option<usize>,
) -> Result<(), CliError> {
    let sa = load_side(file)?.to_symbolic()?;
    let tau = to_f64(&parse_lenient(tau)?);
    let options = ctx.symbolic_options(bound);
    let bounds = options.bounds(&sa)?;
    let mut rng = ctx.rng();
    let estimate = approx_count(&sa, options.backend.build().as_mut(), tau, delta, &bounds, &mut rng)?;
    let kind = if estimate.exact { "exact" } else { "estimate" };
    if ctx.json() {
        ctx.record(json!({
            "count": estimate.value.to_string(),
            "exact": estimate.exact,
            "repetitions": estimate.samples.len(),
            "diameter": bounds.diameter,
        }))
    } else {
        ctx.line(format!("{} {kind}", estimate.value))
    }
}

fn cmd_symbolic_diameter(ctx: &mut Ctx, file: &PathBuf) -> Result<(), CliError> {
    let sa = load_side(file)?.to_symbolic()?;
    let backend = ctx.backend();
    let d = diameter(&sa, backend.build().as_mut(), ctx.cli.diameter_cap)?;
    let method = match d.method {
        DiameterMethod::Exhausted => "exhausted",
        DiameterMethod::UserSupplied => "supplied",
    };
    if ctx.json() {
        ctx.record(json!({
            "diameter": d.diameter,
            "reach": d.reach,
            "nonempty": d.nonempty,
            "method": method,
        }))
    } else {
        ctx.line(format!(
            "diameter={} reach={} nonempty={} method={method}",
            d.diameter, d.reach, d.nonempty
        ))
    }
}
