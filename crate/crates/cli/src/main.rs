use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tw_hierarchy::itl::{
    self, definable_in_itl_m, distinguishing_formula, parse_formula, ranker_equivalent,
};
use tw_hierarchy::lang::{parse_dfa, parse_regex, regex_to_dfa, syntactic_monoid, Dfa};
use tw_hierarchy::omega::{family_identities, parse_identity, satisfies_identity, Verdict};
use tw_hierarchy::ranker::Ranker;
use tw_hierarchy::variety::{classify, HierarchyProfile};
use tw_hierarchy::witness::{verify_separation, witness_words, WitnessSpec};
use tw_hierarchy::{content, Error, Limits, Monoid};

#[derive(Parser)]
#[command(
    name = "twh",
    version,
    about = "Decide levels of the Trotter-Weil hierarchy"
)]
struct Cli {
    /// Maximum number of assignments an identity scan may visit.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Extra letters added to the alphabet of every input.
    #[arg(long, global = true, default_value = "")]
    alphabet: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for identity scans.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Keyvalue,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the syntactic monoid of a regular language.
    ClassifyLanguage {
        regex: Option<String>,
        #[arg(long, conflicts_with = "regex")]
        dfa: Option<PathBuf>,
    },
    /// Classify a monoid given as a .mon file.
    ClassifyMonoid { file: PathBuf },
    /// Check an omega-identity, or a named family, on a monoid.
    CheckIdentity {
        file: PathBuf,
        identity: Option<String>,
        #[arg(long, conflicts_with = "identity")]
        family: Option<String>,
    },
    #[command(subcommand)]
    Ranker(RankerCommand),
    /// Decide u ≡_{m,n} v; print a distinguishing formula otherwise.
    Equiv {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        u: String,
        v: String,
    },
    #[command(subcommand)]
    Itl(ItlCommand),
    /// Print, and optionally verify, the separating language at level m.
    Witness {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum RankerCommand {
    /// Position reached by the ranker, or `undefined`.
    Eval { ranker: String, word: String },
    /// Whether the ranker is condensed on the word.
    Condensed { ranker: String, word: String },
}

#[derive(Subcommand)]
enum ItlCommand {
    Eval {
        formula: String,
        word: String,
    },
    /// Whether the language is definable in ITL_m.
    Definable {
        #[arg(long)]
        m: usize,
        regex: String,
    },
}

/// Ordered `key`/`value` lines; `summary` replaces them in text output.
#[derive(Default)]
struct Report {
    summary: Option<String>,
    lines: Vec<(String, String)>,
}

impl Report {
    fn summary(text: impl Into<String>) -> Report {
        Report {
            summary: Some(text.into()),
            lines: Vec::new(),
        }
    }

    fn push(&mut self, key: &str, value: impl ToString) -> &mut Report {
        self.lines.push((key.to_string(), value.to_string()));
        self
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match (format, &self.summary) {
            (Format::Text, Some(s)) => {
                out.push_str(s);
                out.push('\n');
            }
            (Format::Text, None) => {
                let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k:width$}  {v}\n"));
                }
            }
            (Format::Keyvalue, _) => {
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k}\t{v}\n"));
                }
            }
        }
        out
    }
}

fn level(x: Option<usize>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn profile_lines(report: &mut Report, p: &HierarchyProfile) {
    report
        .push("size", p.size)
        .push("in_da", p.in_da)
        .push("min_r", level(p.min_r))
        .push("min_l", level(p.min_l))
        .push("min_join", level(p.min_join))
        .push("min_intersection", level(p.min_intersection));
    let trace: Vec<String> = p
        .tower_trace
        .iter()
        .map(|s| format!("{}{}:{}", s.chain, s.kind, s.size))
        .collect();
    report.push("tower", trace.join(" "));
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_monoid(path: &Path) -> Result<Monoid, Error> {
    Ok(Monoid::parse_mon(&read(path)?)?.monoid)
}

fn extra_letters(cli: &Cli) -> Vec<char> {
    let mut letters: Vec<char> = cli
        .alphabet
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    letters.sort_unstable();
    letters.dedup();
    letters
}

fn regex_dfa(text: &str, extra: &[char], limits: &Limits) -> Result<Dfa, Error> {
    Ok(regex_to_dfa(&parse_regex(text)?, extra, limits)?.minimize())
}

fn verdict_lines(report: &mut Report, monoid: &Monoid, identity: &str, verdict: &Verdict) {
    report.push("identity", identity);
    match verdict {
        Verdict::Holds => {
            report.push("holds", true);
        }
        Verdict::Fails {
            assignment,
            lhs,
            rhs,
        } => {
            report
                .push("holds", false)
                .push("counterexample", assignment.render(monoid))
                .push("lhs", monoid.label(*lhs))
                .push("rhs", monoid.label(*rhs));
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let mut limits = Limits::default().with_jobs(cli.jobs.max(1));
    if let Some(cap) = cli.cap {
        limits = limits.with_search_cap(cap);
    }
    let extra = extra_letters(cli);
    let mut report = Report::default();
    match &cli.command {
        Command::ClassifyLanguage { regex, dfa } => {
            let automaton = match (regex, dfa) {
                (Some(r), None) => regex_dfa(r, &extra, &limits)?,
                (None, Some(path)) => parse_dfa(&read(path)?)?.with_alphabet(&extra).minimize(),
                _ => {
                    return Err(Error::InvalidArgument(
                        "give a regex or --dfa <file>".into(),
                    ))
                }
            };
            let phi = syntactic_monoid(&automaton, &limits)?;
            report.push("states", phi.minimal.states());
            let profile = classify(&phi.morphism.monoid, &limits)?;
            profile_lines(&mut report, &profile);
        }
        Command::ClassifyMonoid { file } => {
            let monoid = load_monoid(file)?;
            profile_lines(&mut report, &classify(&monoid, &limits)?);
        }
        Command::CheckIdentity {
            file,
            identity,
            family,
        } => {
            let monoid = load_monoid(file)?;
            let ids = match (identity, family) {
                (Some(text), None) => vec![parse_identity(text)?],
                (None, Some(name)) => family_identities(name)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "give an identity or --family <name>".into(),
                    ))
                }
            };
            let mut failed = None;
            for id in &ids {
                let verdict = satisfies_identity(&monoid, id, &limits)?;
                if !verdict.holds() {
                    failed = Some((id, verdict));
                    break;
                }
            }
            match failed {
                Some((id, verdict)) => verdict_lines(&mut report, &monoid, &id.render(), &verdict),
                None => {
                    let shown = if ids.len() == 1 {
                        ids[0].render()
                    } else {
                        family.clone().unwrap_or_default()
                    };
                    verdict_lines(&mut report, &monoid, &shown, &Verdict::Holds);
                }
            }
        }
        Command::Ranker(RankerCommand::Eval { ranker, word }) => {
            let r: Ranker = ranker.parse()?;
            let value = r
                .eval(word)
                .map_or_else(|| "undefined".to_string(), |p| p.to_string());
            report = Report::summary(value.clone());
            report.push("position", value);
        }
        Command::Ranker(RankerCommand::Condensed { ranker, word }) => {
            let r: Ranker = ranker.parse()?;
            let value = r.is_condensed(word);
            report = Report::summary(value.to_string());
            report.push("condensed", value);
        }
        Command::Equiv { m, n, u, v } => {
            if *m == 0 || *n < *m {
                return Err(Error::InvalidArgument(format!(
                    "need 1 <= m <= n, got m={m}, n={n}"
                )));
            }
            let mut alphabet: Vec<char> = content(u)
                .union(&content(v))
                .copied()
                .chain(extra.iter().copied())
                .collect();
            alphabet.sort_unstable();
            alphabet.dedup();
            if ranker_equivalent(u, v, &alphabet, *m, *n) {
                report = Report::summary("equivalent");
                report.push("equivalent", true);
            } else {
                let formula = distinguishing_formula(u, v, *m, *n).ok_or_else(|| {
                    Error::Inconsistent("words differ on a ranker but no formula was found".into())
                })?;
                let text = itl::render_formula(&formula);
                report = Report::summary(format!("not equivalent; distinguishing formula: {text}"));
                report.push("equivalent", false).push("formula", text);
            }
        }
        Command::Itl(ItlCommand::Eval { formula, word }) => {
            let value = parse_formula(formula)?.eval(word);
            report = Report::summary(value.to_string());
            report.push("value", value);
        }
        Command::Itl(ItlCommand::Definable { m, regex }) => {
            if *m < 2 {
                return Err(Error::InvalidArgument(format!(
                    "definability needs m >= 2, got {m}"
                )));
            }
            let value = definable_in_itl_m(&regex_dfa(regex, &extra, &limits)?, *m, &limits)?;
            report = Report::summary(value.to_string());
            report.push("definable", value);
        }
        Command::Witness { m, verify } => {
            let spec = WitnessSpec::new(*m, *m)?;
            let alphabet: String = spec.alphabet.iter().collect();
            report
                .push("regex", spec.regex())
                .push("alphabet", alphabet);
            if *verify {
                let r = verify_separation(*m, &limits)?;
                let monoid = &r.syntactic.morphism.monoid;
                report
                    .push("syntactic_size", r.monoid_size)
                    .push(&format!("in_r{}", m + 1), r.in_r_next)
                    .push(&format!("in_l{}", m + 1), r.in_l_next)
                    .push(&format!("in_w{m}"), r.in_wm)
                    .push("counterexample", r.counterexample.render(monoid))
                    .push("counterexample_lhs", monoid.label(r.counterexample_sides.0))
                    .push("counterexample_rhs", monoid.label(r.counterexample_sides.1))
                    .push("exponent", r.exponent)
                    .push("u", &r.u)
                    .push("v", &r.v)
                    .push("u_in_language", r.u_in_language)
                    .push("v_in_language", r.v_in_language)
                    .push("images_differ", r.images_differ)
                    .push("verified", r.passed());
            } else {
                let dfa = spec.dfa(&limits)?;
                let n = syntactic_monoid(&dfa, &limits)?
                    .morphism
                    .monoid
                    .global_exponent();
                let (u, v) = witness_words(*m, n)?;
                report.push("exponent", n).push("u", u).push("v", v);
            }
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap_exceeded() { 3 } else { 2 })
        }
    }
}
